//! Timing of reduction and conjugacy decisions on random words.

use std::hint::black_box;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polycyclic::Polycyclic;
use crate::word::{Letter, Word};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub rank: u32,
    pub lengths: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Each trial repeats the operation until at least this much time has
    /// passed, then reports the mean.
    pub min_trial_time: Duration,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            rank: 2,
            lengths: vec![10_000, 20_000, 40_000],
            trials: 7,
            seed: 0,
            min_trial_time: Duration::from_millis(20),
        }
    }
}

/// Median nanoseconds per operation at one length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub length: usize,
    pub reduce_ns: f64,
    pub conj_p_ns: f64,
    pub conj_c_ns: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Growth {
    pub reduce: f64,
    pub conj_p: f64,
    pub conj_c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub rank: u32,
    pub trials: usize,
    pub seed: u64,
    pub rows: Vec<BenchRow>,
    /// Time ratios between consecutive lengths.
    pub ratios: Vec<Growth>,
    /// Least-squares slope of log time against log length; absent with
    /// fewer than two lengths.
    pub exponents: Option<Growth>,
}

fn random_letter(rng: &mut ChaCha8Rng, rank: u32) -> Letter {
    let i = rng.gen_range(1..=rank);
    if rng.gen_bool(0.5) {
        Letter::Gen(i)
    } else {
        Letter::Inv(i)
    }
}

/// A uniform random word over the generators and their inverses.
pub fn random_word(rng: &mut ChaCha8Rng, rank: u32, len: usize) -> Word {
    (0..len).map(|_| random_letter(rng, rank)).collect()
}

fn random_positive(rng: &mut ChaCha8Rng, rank: u32, len: usize) -> Vec<Letter> {
    (0..len)
        .map(|_| Letter::Gen(rng.gen_range(1..=rank)))
        .collect()
}

fn inverse_of(positive: &[Letter]) -> Vec<Letter> {
    positive
        .iter()
        .rev()
        .map(|l| l.inverse().expect("generator"))
        .collect()
}

/// Words `r t r^{-1}` and `s t' s^{-1}` of length about `len`, with `t'` a
/// rotation of `t`, so the rotation test runs over half the input.
pub fn conjugate_pair(rng: &mut ChaCha8Rng, rank: u32, len: usize) -> (Word, Word) {
    let t = random_positive(rng, rank, len / 2);
    let k = if t.is_empty() {
        0
    } else {
        rng.gen_range(0..t.len())
    };
    let rotated: Vec<Letter> = t[k..].iter().chain(&t[..k]).copied().collect();
    let r = random_positive(rng, rank, len / 4);
    let s = random_positive(rng, rank, len / 4);
    let wrap = |outer: &[Letter], inner: &[Letter]| -> Word {
        outer
            .iter()
            .chain(inner)
            .copied()
            .chain(inverse_of(outer))
            .collect()
    };
    (wrap(&r, &t), wrap(&s, &rotated))
}

fn time_per_op(min_time: Duration, mut op: impl FnMut()) -> f64 {
    let start = Instant::now();
    let mut reps = 0u64;
    loop {
        op();
        reps += 1;
        let elapsed = start.elapsed();
        if elapsed >= min_time {
            return elapsed.as_nanos() as f64 / reps as f64;
        }
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fit_exponent(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

pub fn run(config: &BenchConfig) -> Result<BenchReport> {
    if config.lengths.is_empty() {
        return Err(Error::InvalidParameter("empty length schedule".into()));
    }
    if config.lengths.contains(&0) {
        return Err(Error::InvalidParameter("lengths must be positive".into()));
    }
    if config.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let pn = Polycyclic::new(config.rank)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rows = Vec::with_capacity(config.lengths.len());
    for &len in &config.lengths {
        let (mut reduce, mut conj_p, mut conj_c) = (Vec::new(), Vec::new(), Vec::new());
        for _ in 0..config.trials {
            let w = random_word(&mut rng, config.rank, len);
            reduce.push(time_per_op(config.min_trial_time, || {
                black_box(pn.reduce(black_box(&w)).expect("valid word"));
            }));
            let (u, v) = conjugate_pair(&mut rng, config.rank, len);
            conj_p.push(time_per_op(config.min_trial_time, || {
                let a = pn.reduce(black_box(&u)).expect("valid word");
                let b = pn.reduce(black_box(&v)).expect("valid word");
                black_box(pn.conj_p(&a, &b).expect("same rank"));
            }));
            conj_c.push(time_per_op(config.min_trial_time, || {
                let a = pn.reduce(black_box(&u)).expect("valid word");
                let b = pn.reduce(black_box(&v)).expect("valid word");
                black_box(pn.conj_c(&a, &b).expect("same rank"));
            }));
        }
        rows.push(BenchRow {
            length: len,
            reduce_ns: median(reduce),
            conj_p_ns: median(conj_p),
            conj_c_ns: median(conj_c),
        });
    }
    let ratios = rows
        .windows(2)
        .map(|w| Growth {
            reduce: w[1].reduce_ns / w[0].reduce_ns,
            conj_p: w[1].conj_p_ns / w[0].conj_p_ns,
            conj_c: w[1].conj_c_ns / w[0].conj_c_ns,
        })
        .collect();
    let exponents = (rows.len() >= 2).then(|| {
        let xs: Vec<f64> = rows.iter().map(|r| r.length as f64).collect();
        let fit =
            |f: fn(&BenchRow) -> f64| fit_exponent(&xs, &rows.iter().map(f).collect::<Vec<_>>());
        Growth {
            reduce: fit(|r| r.reduce_ns),
            conj_p: fit(|r| r.conj_p_ns),
            conj_c: fit(|r| r.conj_c_ns),
        }
    });
    Ok(BenchReport {
        rank: config.rank,
        trials: config.trials,
        seed: config.seed,
        rows,
        ratios,
        exponents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_of_power_laws() {
        let xs = [1.0, 2.0, 4.0, 8.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(1.5)).collect();
        assert!((fit_exponent(&xs, &ys) - 1.5).abs() < 1e-9);
    }

    #[test]
    fn conjugate_pairs_are_p_conjugate() {
        let pn = Polycyclic::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for len in [0, 1, 5, 40, 101] {
            let (u, v) = conjugate_pair(&mut rng, 2, len);
            let (a, b) = (pn.reduce(&u).unwrap(), pn.reduce(&v).unwrap());
            assert!(pn.conj_p(&a, &b).unwrap().related, "{u} / {v}");
        }
    }

    #[test]
    fn schedule_validation() {
        let quick = BenchConfig {
            lengths: vec![16],
            trials: 1,
            min_trial_time: Duration::from_micros(50),
            ..BenchConfig::default()
        };
        let report = run(&quick).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert!(report.ratios.is_empty() && report.exponents.is_none());
        let empty = BenchConfig {
            lengths: vec![],
            ..quick.clone()
        };
        assert!(matches!(run(&empty), Err(Error::InvalidParameter(_))));
        let no_trials = BenchConfig { trials: 0, ..quick };
        assert!(matches!(run(&no_trials), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn seeded_words_repeat() {
        let a = random_word(&mut ChaCha8Rng::seed_from_u64(3), 2, 50);
        let b = random_word(&mut ChaCha8Rng::seed_from_u64(3), 2, 50);
        assert_eq!(a, b);
        assert!(a.iter().all(|l| *l != Letter::Zero));
    }
}
