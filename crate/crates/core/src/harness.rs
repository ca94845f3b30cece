//! Property suites that can be run on demand (the CLI `check` verb).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::chord_diagram::FramedChordDiagram;
use crate::generate::{all_diagrams, all_positive_diagrams, random_diagram};
use crate::genus::is_planar;
use crate::invariants::{
    check_relation, four_term_quadruples, gen_fun_f, gen_fun_f_normalized, weight_system_gl, Exponent,
};
use crate::surgery::circle_count_after_mask;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Soboleva,
    FourTerm,
    Degree,
    Multiplicativity,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "soboleva" => Ok(Suite::Soboleva),
            "fourterm" | "4t" => Ok(Suite::FourTerm),
            "degree" => Ok(Suite::Degree),
            "multiplicativity" => Ok(Suite::Multiplicativity),
            _ => Err(format!("unknown suite {s:?} (soboleva, fourterm, degree, multiplicativity)")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Soboleva => "soboleva",
            Suite::FourTerm => "fourterm",
            Suite::Degree => "degree",
            Suite::Multiplicativity => "multiplicativity",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CheckOptions {
    /// Largest number of chords tested.
    pub max_k: usize,
    /// Sizes up to this are tested exhaustively, larger ones by sampling.
    pub exhaustive_k: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { max_k: 6, exhaustive_k: 5, samples: 1000, seed: 0 }
    }
}

#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub cases: u64,
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn merge(mut self, other: CheckReport) -> CheckReport {
        self.cases += other.cases;
        self.violations.extend(other.violations);
        self
    }

    pub fn to_json(&self, suite: Suite) -> Value {
        json!({
            "suite": suite.to_string(),
            "cases": self.cases,
            "violations": self.violations,
            "passed": self.passed(),
        })
    }
}

pub fn run(suite: Suite, opts: &CheckOptions) -> CheckReport {
    match suite {
        Suite::Soboleva => soboleva(opts),
        Suite::FourTerm => four_term(opts),
        Suite::Degree => degree(opts),
        Suite::Multiplicativity => multiplicativity(opts),
    }
}

/// Exhaustive framed diagrams up to `exhaustive_k`, then `samples` random
/// ones with `exhaustive_k < k <= max_k`.
fn corpus(opts: &CheckOptions, positive_only: bool) -> Vec<FramedChordDiagram> {
    let top = opts.exhaustive_k.min(opts.max_k);
    let mut out: Vec<FramedChordDiagram> = (0..=top)
        .flat_map(|k| if positive_only { all_positive_diagrams(k) } else { all_diagrams(k) })
        .collect();
    if opts.max_k > top {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let p = if positive_only { 0.0 } else { 0.3 };
        for _ in 0..opts.samples {
            let k = rng.gen_range(top + 1..=opts.max_k);
            out.push(random_diagram(&mut rng, k, p));
        }
    }
    out
}

fn over<F>(diagrams: &[FramedChordDiagram], check: F) -> CheckReport
where
    F: Fn(&FramedChordDiagram) -> CheckReport + Sync + Send,
{
    diagrams.par_iter().map(check).reduce(CheckReport::default, CheckReport::merge)
}

/// Circles after surgery along every chord subset equal 1 + corank.
fn soboleva(opts: &CheckOptions) -> CheckReport {
    over(&corpus(opts, false), |d| {
        let m = d.interlacement_matrix();
        let mut r = CheckReport::default();
        for mask in 0..1u64 << d.k() {
            r.cases += 1;
            let corank = mask.count_ones() as usize - m.principal_rank(mask);
            let circles = circle_count_after_mask(d, mask);
            if circles != 1 + corank {
                r.violations.push(format!("{d}: subset {mask:#b} gives {circles} circles, corank {corank}"));
            }
        }
        r
    })
}

/// `f` satisfies 4T on positive diagrams and generalized 4T on framed ones.
fn four_term(opts: &CheckOptions) -> CheckReport {
    let f = |x: &FramedChordDiagram| gen_fun_f::<BigInt>(x, Exponent::Circles).expect("small diagram");
    let positive = over(&corpus(opts, true), |d| {
        let mut r = CheckReport::default();
        for q in four_term_quadruples(d, false) {
            r.cases += 1;
            if !check_relation(&q, f) {
                r.violations.push(format!("4T fails:\n{q}"));
            }
        }
        r
    });
    let framed_opts = CheckOptions { max_k: opts.max_k.min(5), ..opts.clone() };
    let framed = over(&corpus(&framed_opts, false), |d| {
        let mut r = CheckReport::default();
        for q in four_term_quadruples(d, true) {
            r.cases += 1;
            if !check_relation(&q, f) {
                r.violations.push(format!("generalized 4T fails:\n{q}"));
            }
        }
        r
    });
    positive.merge(framed)
}

/// `deg_n W <= k + 2`, with equality exactly on d-diagrams.
fn degree(opts: &CheckOptions) -> CheckReport {
    let capped = CheckOptions { max_k: opts.max_k.min(7), ..opts.clone() };
    over(&corpus(&capped, true), |d| {
        let w = weight_system_gl::<BigInt>(d, 31).expect("positive diagram");
        let deg = w.degree().unwrap_or(i64::MIN);
        let top = d.k() as i64 + 2;
        let mut r = CheckReport { cases: 1, violations: Vec::new() };
        if deg > top || (deg == top) != is_planar(d) {
            r.violations.push(format!("{d}: W = {w}, degree {deg}, planar {}", is_planar(d)));
        }
        r
    })
}

/// `f / x^2` is multiplicative under connected sum.
fn multiplicativity(opts: &CheckOptions) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let pairs: Vec<(FramedChordDiagram, FramedChordDiagram)> = (0..opts.samples)
        .map(|_| {
            let total = rng.gen_range(0..=opts.max_k);
            let k1 = rng.gen_range(0..=total);
            (random_diagram(&mut rng, k1, 0.3), random_diagram(&mut rng, total - k1, 0.3))
        })
        .collect();
    pairs
        .par_iter()
        .map(|(a, b)| {
            let f = |x: &FramedChordDiagram| gen_fun_f_normalized::<BigInt>(x).expect("small diagram");
            let sum = a.connected_sum(b);
            let (fs, fa, fb) = (f(&sum), f(a), f(b));
            let mut r = CheckReport { cases: 1, violations: Vec::new() };
            if fs != &fa * &fb {
                r.violations.push(format!("{a} # {b}: {fs} != ({fa})({fb})"));
            }
            r
        })
        .reduce(CheckReport::default, CheckReport::merge)
}
