//! `polyconj`: normal forms, conjugacy decisions, oracles, critical pairs
//! and benchmarks from the command line.
//!
//! Exit status is 0 whenever a result was computed (YES and NO alike), 2 for
//! usage errors and 3 for violated preconditions.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use polyconj::bench::{self, BenchConfig};
use polyconj::conjugacy::oracle::{
    oracle_conj_c, oracle_conj_c_pn, oracle_conj_o, oracle_conj_p, oracle_conj_p_pn, OracleOutcome,
};
use polyconj::conjugacy::Relation;
use polyconj::zoo::{self, ZooMonoid};
use polyconj::{Error, Polycyclic, RewriteSystem, Word};

#[derive(Parser)]
#[command(
    name = "polyconj",
    version,
    about = "Conjugacy in polycyclic monoids and friends"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word.
    Reduce {
        #[command(flatten)]
        target: TargetArgs,
        word: String,
    },
    /// Normal form of a product.
    Mul {
        #[command(flatten)]
        target: TargetArgs,
        a: String,
        b: String,
    },
    /// Decide a conjugacy relation.
    Conj {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, default_value = "p")]
        rel: Relation,
        a: String,
        b: String,
    },
    /// Bounded brute-force witness search.
    Oracle {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, default_value = "p")]
        rel: Relation,
        /// Witness length bound; defaults to the sum of the input lengths.
        #[arg(long)]
        bound: Option<usize>,
        /// Multiplier length bound for conjugator-set membership (c only).
        #[arg(long, default_value_t = 4)]
        probe_bound: usize,
        a: String,
        b: String,
    },
    /// Critical pairs and local confluence.
    Critpairs {
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Separation experiment on example22 with a zero adjoined.
    Zoo {
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long, default_value_t = 3)]
        probe_bound: usize,
        #[arg(long, default_value_t = 2)]
        sample_len: usize,
    },
    /// Time reduction and conjugacy on random words.
    Bench {
        #[arg(long, default_value_t = 2)]
        rank: u32,
        #[arg(long, value_delimiter = ',', default_values_t = [10_000, 20_000, 40_000])]
        lengths: Vec<usize>,
        #[arg(long, default_value_t = 7)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Minimum time per trial in milliseconds.
        #[arg(long, default_value_t = 20)]
        min_trial_ms: u64,
    },
}

#[derive(Args)]
struct TargetArgs {
    /// pn, example22, example22-zero, onerel, onerel-<k> or tin1-trivial.
    #[arg(long, conflicts_with = "rules")]
    preset: Option<String>,
    /// Rank for the pn preset.
    #[arg(long, default_value_t = 2)]
    rank: u32,
    /// Exponent for the onerel preset.
    #[arg(long)]
    k: Option<usize>,
    /// Rule file (`LHS -> RHS` per line, `#` comments, optional `alphabet:`).
    #[arg(long)]
    rules: Option<PathBuf>,
}

enum Target {
    Pn(Polycyclic),
    Zoo(ZooMonoid),
    Rules(RewriteSystem),
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownToken(_)
            | Error::EmptyInput
            | Error::MisplacedEmpty
            | Error::EmptyLhs
            | Error::RuleSyntax { .. }
            | Error::UnknownPreset(_)
            | Error::InvalidParameter(_)
            | Error::RankTooSmall(_) => 2,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = Result<Report, Failure>;

/// What a subcommand prints.
struct Report {
    text: String,
    json: Value,
}

#[derive(Serialize)]
struct Timings {
    elapsed_us: u128,
}

fn timings(start: Instant) -> Timings {
    Timings {
        elapsed_us: start.elapsed().as_micros(),
    }
}

impl TargetArgs {
    fn resolve(&self) -> Result<Target, Failure> {
        if let Some(path) = &self.rules {
            let text = fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            return Ok(Target::Rules(RewriteSystem::parse_rules(&text)?));
        }
        match self.preset.as_deref().unwrap_or("pn") {
            "pn" => Ok(Target::Pn(Polycyclic::new(self.rank)?)),
            "onerel" => {
                let k = self.k.ok_or_else(|| usage("the onerel preset needs --k"))?;
                Ok(Target::Zoo(zoo::make_one_relator_power(k)?))
            }
            name => Ok(Target::Zoo(zoo::preset(name)?)),
        }
    }
}

impl Target {
    fn system(&self) -> &RewriteSystem {
        match self {
            Target::Pn(pn) => pn.system(),
            Target::Zoo(m) => &m.system,
            Target::Rules(sys) => sys,
        }
    }

    fn parse(&self, text: &str) -> Result<Word, Failure> {
        let w = match self {
            Target::Pn(pn) => Word::parse(text, pn.rank())?,
            Target::Zoo(m) => m.parse(text)?,
            Target::Rules(sys) => {
                let w = Word::parse_symbols(text, None)?;
                sys.check_word(&w)?;
                w
            }
        };
        Ok(w)
    }

    fn normalize(&self, w: &Word) -> Result<Word, Failure> {
        Ok(match self {
            Target::Pn(pn) => pn.reduce(w)?.to_word(),
            Target::Zoo(m) => m.normalize(w)?,
            Target::Rules(sys) => sys.normalize(w)?,
        })
    }
}

fn verdict_report(
    related: bool,
    yes: &str,
    no: &str,
    witness: Option<Value>,
    witness_text: Option<String>,
    normal_forms: &[Word],
    start: Instant,
) -> Report {
    let verdict = if related { yes } else { no };
    let mut text = verdict.to_string();
    if let Some(w) = witness_text {
        text.push_str(&format!("\nwitness: {w}"));
    }
    let mut json = json!({
        "verdict": verdict,
        "normal_forms": normal_forms.iter().map(Word::to_string).collect::<Vec<_>>(),
        "timings": timings(start),
    });
    if let Some(w) = witness {
        json["witness"] = w;
    }
    Report { text, json }
}

fn reduce(target: &TargetArgs, word: &str) -> Outcome {
    let start = Instant::now();
    let t = target.resolve()?;
    let nf = t.normalize(&t.parse(word)?)?;
    Ok(Report {
        text: nf.to_string(),
        json: json!({ "normal_forms": [nf.to_string()], "timings": timings(start) }),
    })
}

fn mul(target: &TargetArgs, a: &str, b: &str) -> Outcome {
    let start = Instant::now();
    let t = target.resolve()?;
    let (a, b) = (t.parse(a)?, t.parse(b)?);
    let product = match &t {
        Target::Pn(pn) => pn.multiply(&pn.reduce(&a)?, &pn.reduce(&b)?)?.to_word(),
        _ => t.normalize(&a.concat(&b))?,
    };
    Ok(Report {
        text: product.to_string(),
        json: json!({ "normal_forms": [product.to_string()], "timings": timings(start) }),
    })
}

fn conj(target: &TargetArgs, rel: Relation, a: &str, b: &str) -> Outcome {
    let start = Instant::now();
    let t = target.resolve()?;
    let (a, b) = (t.parse(a)?, t.parse(b)?);
    match &t {
        Target::Pn(pn) => {
            let (ea, eb) = (pn.reduce(&a)?, pn.reduce(&b)?);
            let v = pn.decide(rel, &ea, &eb)?;
            let forms = [ea.to_word(), eb.to_word()];
            Ok(verdict_report(
                v.related,
                "YES",
                "NO",
                v.witness.as_ref().map(|w| json!(w)),
                v.witness.as_ref().map(|w| w.to_string()),
                &forms,
                start,
            ))
        }
        Target::Zoo(m) => {
            if !m.relations().contains(&rel) {
                return Err(usage(format!(
                    "relation `{rel}` is not available for `{}` (available: {})",
                    m.name,
                    list(m.relations())
                )));
            }
            let v = m.decide(rel, &a, &b)?;
            let forms = [t.normalize(&a)?, t.normalize(&b)?];
            Ok(verdict_report(
                v.related,
                "YES",
                "NO",
                v.witness.as_ref().map(|w| json!(w)),
                v.witness.as_ref().map(|(x, y)| pair_text(rel, x, y)),
                &forms,
                start,
            ))
        }
        Target::Rules(_) => Err(usage("rule files have no deciders; use `oracle`")),
    }
}

fn list(rels: &[Relation]) -> String {
    if rels.is_empty() {
        return "none".into();
    }
    rels.iter()
        .map(Relation::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn pair_text(rel: Relation, x: &impl ToString, y: &impl ToString) -> String {
    match rel {
        Relation::P | Relation::PStar => format!("u = {}, v = {}", x.to_string(), y.to_string()),
        Relation::C | Relation::O => format!("g = {}, h = {}", x.to_string(), y.to_string()),
    }
}

fn outcome_report<T: Serialize + ToString>(
    rel: Relation,
    out: OracleOutcome<(T, T)>,
    bound: usize,
    forms: &[Word],
    start: Instant,
) -> Report {
    let witness = out.witness();
    verdict_report(
        out.is_yes(),
        "YES",
        &format!("NO-AT-BOUND {bound}"),
        witness.map(|w| json!(w)),
        witness.map(|(x, y)| pair_text(rel, x, y)),
        forms,
        start,
    )
}

fn oracle(
    target: &TargetArgs,
    rel: Relation,
    bound: Option<usize>,
    probe_bound: usize,
    a: &str,
    b: &str,
) -> Outcome {
    let start = Instant::now();
    let t = target.resolve()?;
    let (a, b) = (t.parse(a)?, t.parse(b)?);
    let forms = [t.normalize(&a)?, t.normalize(&b)?];
    let bound = bound.unwrap_or(forms[0].len() + forms[1].len());
    let sys = t.system();
    let report = match (&t, rel) {
        (_, Relation::PStar) => return Err(usage("no oracle for pstar")),
        (Target::Pn(pn), Relation::P) => {
            let out = oracle_conj_p_pn(pn, &pn.reduce(&a)?, &pn.reduce(&b)?, bound)?;
            outcome_report(rel, out, bound, &forms, start)
        }
        (Target::Pn(pn), Relation::C) => {
            let out = oracle_conj_c_pn(pn, &pn.reduce(&a)?, &pn.reduce(&b)?, bound)?;
            outcome_report(rel, out, bound, &forms, start)
        }
        (_, Relation::P) => outcome_report(
            rel,
            oracle_conj_p(sys, &a, &b, bound)?,
            bound,
            &forms,
            start,
        ),
        (_, Relation::C) => outcome_report(
            rel,
            oracle_conj_c(sys, &a, &b, bound, probe_bound)?,
            bound,
            &forms,
            start,
        ),
        (_, Relation::O) => outcome_report(
            rel,
            oracle_conj_o(sys, &a, &b, bound)?,
            bound,
            &forms,
            start,
        ),
    };
    Ok(report)
}

fn critpairs(target: &TargetArgs) -> Outcome {
    let start = Instant::now();
    let t = target.resolve()?;
    let sys = t.system();
    let class = sys.classify();
    let confluent = sys.is_locally_confluent()?;
    let pairs = sys.critical_pairs();
    let mut rows = Vec::new();
    let mut text = format!(
        "special: {}\nmonadic: {}\nlength-reducing: {}\nlocally confluent: {confluent}\ncritical pairs: {}",
        class.special,
        class.monadic,
        class.length_reducing,
        pairs.len()
    );
    for cp in &pairs {
        let (l, r) = (sys.normalize(&cp.left)?, sys.normalize(&cp.right)?);
        let joinable = l == r;
        text.push_str(&format!(
            "\n  {}: {} / {} ({})",
            cp.overlap,
            cp.left,
            cp.right,
            if joinable { "joinable" } else { "not joinable" }
        ));
        rows.push(json!({
            "overlap": cp.overlap,
            "left": cp.left,
            "right": cp.right,
            "rules": [cp.rules.0, cp.rules.1],
            "joinable": joinable,
        }));
    }
    Ok(Report {
        text,
        json: json!({
            "class": class,
            "locally_confluent": confluent,
            "critical_pairs": rows,
            "timings": timings(start),
        }),
    })
}

fn zoo_report(bound: usize, probe_bound: usize, sample_len: usize) -> Outcome {
    let r = zoo::separation_report(bound, probe_bound, sample_len)?;
    let mut text = format!(
        "{}: bound {}, probe bound {}, {} sampled elements",
        r.monoid, r.bound, r.probe_bound, r.sample_size
    );
    for e in &r.bac_ba {
        let verdict = match e.outcome.witness() {
            Some((x, y)) => format!("YES ({})", pair_text(e.relation, x, y)),
            None => format!("NO-AT-BOUND {}", r.bound),
        };
        text.push_str(&format!("\n{} ~{} {}: {verdict}", e.a, e.relation, e.b));
    }
    let zero_class: Vec<String> = r.zero_class_c.iter().map(Word::to_string).collect();
    text.push_str(&format!(
        "\nc-class of 0 in sample: {{{}}}",
        zero_class.join(", ")
    ));
    text.push_str(&format!(
        "\no universal on sample: {}",
        r.o_universal_on_sample
    ));
    for s in &r.separations {
        text.push_str(&format!(
            "\n{} but not {}: ({}, {}) with {}; refuted up to bound {}",
            s.holds,
            s.fails,
            s.a,
            s.b,
            pair_text(s.holds, &s.witness.0, &s.witness.1),
            s.refuted_up_to
        ));
    }
    for (holds, fails) in &r.not_separated {
        text.push_str(&format!("\nno sampled pair in {holds} but not {fails}"));
    }
    Ok(Report {
        text,
        json: json!(r),
    })
}

fn bench_report(config: BenchConfig) -> Outcome {
    let r = bench::run(&config)?;
    let mut text = format!(
        "rank {}, {} trials, seed {}\nlength\treduce_us\tconj_p_us\tconj_c_us",
        r.rank, r.trials, r.seed
    );
    for row in &r.rows {
        text.push_str(&format!(
            "\n{}\t{:.1}\t{:.1}\t{:.1}",
            row.length,
            row.reduce_ns / 1e3,
            row.conj_p_ns / 1e3,
            row.conj_c_ns / 1e3
        ));
    }
    for (w, g) in r.rows.windows(2).zip(&r.ratios) {
        text.push_str(&format!(
            "\nratio {} -> {}: reduce {:.2}, conj_p {:.2}, conj_c {:.2}",
            w[0].length, w[1].length, g.reduce, g.conj_p, g.conj_c
        ));
    }
    if let Some(e) = &r.exponents {
        text.push_str(&format!(
            "\nexponent: reduce {:.2}, conj_p {:.2}, conj_c {:.2}",
            e.reduce, e.conj_p, e.conj_c
        ));
    }
    Ok(Report {
        text,
        json: json!(r),
    })
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Reduce { target, word } => reduce(target, word),
        Command::Mul { target, a, b } => mul(target, a, b),
        Command::Conj { target, rel, a, b } => conj(target, *rel, a, b),
        Command::Oracle {
            target,
            rel,
            bound,
            probe_bound,
            a,
            b,
        } => oracle(target, *rel, *bound, *probe_bound, a, b),
        Command::Critpairs { target } => critpairs(target),
        Command::Zoo {
            bound,
            probe_bound,
            sample_len,
        } => zoo_report(*bound, *probe_bound, *sample_len),
        Command::Bench {
            rank,
            lengths,
            trials,
            seed,
            min_trial_ms,
        } => bench_report(BenchConfig {
            rank: *rank,
            lengths: lengths.clone(),
            trials: *trials,
            seed: *seed,
            min_trial_time: Duration::from_millis(*min_trial_ms),
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.json);
            } else {
                println!("{}", report.text);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
