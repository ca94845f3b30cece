//! Polynomial invariants of framed chord diagrams and the four-term
//! relations they satisfy.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::chord_diagram::{FramedChordDiagram, Label, Sign};
use crate::genus::{genus_or_crosscap, orientability_class};
use crate::gf2::Gf2Matrix;
use crate::poly::{Coefficient, LaurentPoly, Var};
use crate::surgery::{assignment_trace_mask, circle_count_after_mask};

/// Default bound on `k` for sums over all `2^(2k)` endpoint assignments.
pub const DEFAULT_ASSIGNMENT_CAP: usize = 14;
/// Sums over chord subsets use bitmasks.
pub const MAX_SUBSET_CHORDS: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("{k} chords exceeds the enumeration cap of {cap}")]
    CapExceeded { k: usize, cap: usize },
    #[error("chord {0} is negative; the gl(n) weight system needs positive chords")]
    NegativeChord(Label),
    #[error("chord {0} is not in the diagram")]
    UnknownLabel(Label),
    #[error("alpha and beta must be different chords")]
    SameChord,
    #[error("chord {beta} has no endpoint next to an endpoint of chord {alpha}")]
    NotAdjacent { alpha: Label, beta: Label },
    #[error("chord {0} is negative; use the generalized relation")]
    NegativeAlpha(Label),
}

fn check_cap(k: usize, cap: usize) -> Result<(), InvariantError> {
    if k > cap {
        Err(InvariantError::CapExceeded { k, cap })
    } else {
        Ok(())
    }
}

fn full(k: usize) -> u64 {
    (1u64 << k) - 1
}

/// Parallel histogram over `0..count` of `f(i)`, which must be `< len`.
fn histogram(count: u64, len: usize, f: impl Fn(u64) -> usize + Sync) -> Vec<i64> {
    const CHUNK: u64 = 1 << 10;
    (0..count.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut h = vec![0i64; len];
            for i in c * CHUNK..((c + 1) * CHUNK).min(count) {
                h[f(i)] += 1;
            }
            h
        })
        .reduce(
            || vec![0i64; len],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// `(-a^2 - a^-2)`
fn loop_value<C: Coefficient>() -> LaurentPoly<C> {
    LaurentPoly::from_terms(Var::A, [(2, C::from(-1)), (-2, C::from(-1))])
}

fn bracket_from_counts<C: Coefficient>(k: usize, counts: &[i64]) -> LaurentPoly<C> {
    // counts[s * (k + 1) + c]: subsets of size s with corank c
    let delta = loop_value::<C>();
    let mut total = LaurentPoly::zero(Var::A);
    for s in 0..=k {
        for c in 0..=k {
            let n = counts[s * (k + 1) + c];
            if n != 0 {
                let term = delta.pow(c as u32).shift(2 * s as i64 - k as i64);
                total += &(&term * &LaurentPoly::constant(Var::A, C::from(n)));
            }
        }
    }
    total
}

/// Sum over chord subsets `G'` of `a^(2|G'| - k) (-a^2 - a^-2)^corank(M_G')`.
pub fn kauffman_bracket<C: Coefficient>(d: &FramedChordDiagram) -> Result<LaurentPoly<C>, InvariantError> {
    let k = d.k();
    check_cap(k, MAX_SUBSET_CHORDS)?;
    let m = d.interlacement_matrix();
    let counts = histogram(1 << k, (k + 1) * (k + 1), |mask| {
        let s = mask.count_ones() as usize;
        s * (k + 1) + (s - m.principal_rank(mask))
    });
    Ok(bracket_from_counts(k, &counts))
}

/// The same state sum with each corank read off from the number of circles
/// left after surgery along the subset.
pub fn kauffman_bracket_by_surgery<C: Coefficient>(d: &FramedChordDiagram) -> Result<LaurentPoly<C>, InvariantError> {
    let k = d.k();
    check_cap(k, MAX_SUBSET_CHORDS)?;
    let counts = histogram(1 << k, (k + 1) * (k + 1), |mask| {
        let s = mask.count_ones() as usize;
        s * (k + 1) + circle_count_after_mask(d, mask) - 1
    });
    Ok(bracket_from_counts(k, &counts))
}

/// Exponent used for each splitting in the generating function `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exponent {
    /// Number of state circles, `k + 2 - rank sum`.
    #[default]
    Circles,
    /// `k + 2 - g` with `g` the genus (orientable) or crosscap number.
    Genus,
}

/// Sum over all `2^k` splittings `I | J` of `x^e`, `e` per [`Exponent`].
pub fn gen_fun_f<C: Coefficient>(d: &FramedChordDiagram, exponent: Exponent) -> Result<LaurentPoly<C>, InvariantError> {
    let k = d.k();
    check_cap(k, MAX_SUBSET_CHORDS)?;
    let m = d.interlacement_matrix();
    let by_rank = histogram(1 << k, k + 1, |mask| rank_sum(&m, k, mask));
    let orientability = orientability_class(d);
    let mut f = LaurentPoly::zero(Var::X);
    for (r, &n) in by_rank.iter().enumerate() {
        if n != 0 {
            let lowered = match exponent {
                Exponent::Circles => r,
                Exponent::Genus => genus_or_crosscap(orientability, r),
            };
            f.add_term((k + 2 - lowered) as i64, C::from(n));
        }
    }
    Ok(f)
}

fn rank_sum(m: &Gf2Matrix, k: usize, mask: u64) -> usize {
    m.principal_rank(mask) + m.principal_rank(full(k) & !mask)
}

/// `f / x^2`, multiplicative under connected sum.
pub fn gen_fun_f_normalized<C: Coefficient>(d: &FramedChordDiagram) -> Result<LaurentPoly<C>, InvariantError> {
    Ok(gen_fun_f::<C>(d, Exponent::Circles)?.shift(-2))
}

/// Sum over all `2^(2k)` ways to put each chord endpoint on the left or
/// right circle of `x^(circles)`, circles counted by
/// [`assignment_trace_mask`]. Diagrams with negative chords are accepted
/// (overtwisted bands).
pub fn gen_fun_f_tilde<C: Coefficient>(d: &FramedChordDiagram, cap: usize) -> Result<LaurentPoly<C>, InvariantError> {
    check_cap(d.k(), cap.min(31))?;
    let n = d.word().len();
    let h = histogram(1 << n, n + 3, |right| assignment_trace_mask(d, right).1);
    Ok(LaurentPoly::from_histogram(Var::X, 0, &h))
}

/// The part of [`gen_fun_f_tilde`] over "good" assignments, where both ends
/// of every chord are on the same side.
pub fn gen_fun_f_tilde_good<C: Coefficient>(d: &FramedChordDiagram) -> Result<LaurentPoly<C>, InvariantError> {
    let k = d.k();
    check_cap(k, MAX_SUBSET_CHORDS)?;
    let ends = d.endpoints();
    let h = histogram(1 << k, 2 * k + 3, |chords| {
        let right = ends
            .iter()
            .enumerate()
            .filter(|(i, _)| chords >> i & 1 == 1)
            .fold(0u64, |acc, (_, &(a, b))| acc | 1 << a | 1 << b);
        assignment_trace_mask(d, right).1
    });
    Ok(LaurentPoly::from_histogram(Var::X, 0, &h))
}

/// The gl(n) weight system as a polynomial in `n`: the signed sum over all
/// endpoint assignments of `n^(circles)`.
pub fn weight_system_gl<C: Coefficient>(d: &FramedChordDiagram, cap: usize) -> Result<LaurentPoly<C>, InvariantError> {
    if let Some(&l) = d.negative_labels().first() {
        return Err(InvariantError::NegativeChord(l));
    }
    check_cap(d.k(), cap.min(31))?;
    let n = d.word().len();
    let len = n + 3;
    // index 0..len: positive terms, len..2len: negative terms
    let h = histogram(1 << n, 2 * len, |right| {
        let (sign, circles) = assignment_trace_mask(d, right);
        if sign > 0 {
            circles
        } else {
            len + circles
        }
    });
    let signed: Vec<i64> = (0..len).map(|c| h[c] - h[len + c]).collect();
    Ok(LaurentPoly::from_histogram(Var::N, 0, &signed))
}

/// Four diagrams related by sliding one end of `beta` around the ends of
/// `alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourTermQuadruple {
    pub a: FramedChordDiagram,
    pub b: FramedChordDiagram,
    pub c: FramedChordDiagram,
    pub d: FramedChordDiagram,
    pub alpha: Label,
    pub beta: Label,
    /// Set for the generalized relation with a negative `alpha`: `beta`
    /// changes sign in `c` and `d`, and the relation is `A - B = D - C`.
    pub sign_flipped: bool,
}

impl fmt::Display for FourTermQuadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.sign_flipped { "A - B = D - C" } else { "A - B = C - D" };
        write!(f, "alpha={} beta={} [{rel}]\n  A: {}\n  B: {}\n  C: {}\n  D: {}", self.alpha, self.beta, self.a, self.b, self.c, self.d)
    }
}

/// Builds the quadruple with `A = d`.
///
/// The end of `beta` next to an end of `alpha` is removed. Call `alpha`'s
/// ends `a1, a2` so that going forward from `a1` to `a2` does not pass
/// `beta`'s other end. Putting the free end just before `a1`, just after
/// `a1`, just before `a2` and just after `a2` gives `D1..D4`; `D2, D3` link
/// `alpha` and `beta`, `D1, D4` do not, and the relation is
/// `D1 - D2 = D4 - D3`.
pub fn four_term_quadruple(
    d: &FramedChordDiagram,
    alpha: Label,
    beta: Label,
    generalized: bool,
) -> Result<FourTermQuadruple, InvariantError> {
    if alpha == beta {
        return Err(InvariantError::SameChord);
    }
    let alpha_sign = d.sign(alpha).ok_or(InvariantError::UnknownLabel(alpha))?;
    d.sign(beta).ok_or(InvariantError::UnknownLabel(beta))?;
    if alpha_sign == Sign::Neg && !generalized {
        return Err(InvariantError::NegativeAlpha(alpha));
    }
    let w = d.word();
    let n = w.len();
    let (p, q) = d.endpoints_of(beta).expect("beta is a chord");
    let next_to_alpha = |i: usize| w[(i + 1) % n] == alpha || w[(i + n - 1) % n] == alpha;
    let moving = [p, q].into_iter().find(|&i| next_to_alpha(i)).ok_or(InvariantError::NotAdjacent { alpha, beta })?;

    let mut rest = w.to_vec();
    rest.remove(moving);
    let len = rest.len();
    let fixed = rest.iter().position(|&l| l == beta).unwrap();
    let x = rest.iter().position(|&l| l == alpha).unwrap();
    let y = rest.iter().rposition(|&l| l == alpha).unwrap();
    let (a1, a2) = if x < fixed && fixed < y { (y, x) } else { (x, y) };
    let slots = [a1, a1 + 1, a2, a2 + 1];
    let words: Vec<Vec<Label>> = slots
        .iter()
        .map(|&s| {
            let mut v = rest.clone();
            v.insert(s, beta);
            v
        })
        .collect();
    let j = slots.iter().position(|&s| s % len == moving % len).expect("the removed end sits next to alpha");
    // (B, C, D) for A = D1..D4
    let (bj, cj, dj) = [(1, 3, 2), (0, 2, 3), (3, 1, 0), (2, 0, 1)][j];
    let flip = generalized && alpha_sign == Sign::Neg;
    let make = |i: usize, flip_beta: bool| {
        let mut signs = d.signs().clone();
        if flip_beta {
            let s = signs.get_mut(&beta).unwrap();
            *s = s.flip();
        }
        FramedChordDiagram::new(words[i].clone(), signs).expect("same chords as d")
    };
    Ok(FourTermQuadruple {
        a: d.clone(),
        b: make(bj, false),
        c: make(cj, flip),
        d: make(dj, flip),
        alpha,
        beta,
        sign_flipped: flip,
    })
}

/// Every quadruple obtainable from `d` over ordered pairs of chords. With
/// `generalized` unset, negative `alpha` is skipped.
pub fn four_term_quadruples(d: &FramedChordDiagram, generalized: bool) -> Vec<FourTermQuadruple> {
    let labels = d.labels();
    let mut out = Vec::new();
    for &alpha in &labels {
        for &beta in &labels {
            if let Ok(q) = four_term_quadruple(d, alpha, beta, generalized) {
                out.push(q);
            }
        }
    }
    out
}

/// Evaluates `f` on the quadruple and checks the relation.
pub fn check_relation<C, F>(q: &FourTermQuadruple, f: F) -> bool
where
    C: Coefficient,
    F: Fn(&FramedChordDiagram) -> LaurentPoly<C>,
{
    let (fa, fb, fc, fd) = (f(&q.a), f(&q.b), f(&q.c), f(&q.d));
    if q.sign_flipped {
        &fa - &fb == &fd - &fc
    } else {
        &fa - &fb == &fc - &fd
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = LaurentPoly<BigInt>;

    fn cd(s: &str) -> FramedChordDiagram {
        s.parse().unwrap()
    }

    fn bracket(s: &str) -> String {
        kauffman_bracket::<BigInt>(&cd(s)).unwrap().to_string()
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(""), "1");
        assert_eq!(bracket("1 1 ; +"), "-a^3");
        assert_eq!(bracket("1 2 1 2 ; ++"), "-a^2-a^-2");
    }

    #[test]
    fn bracket_routes_agree() {
        for s in ["1 1 ; -", "1 2 1 2 ; +-", "1 2 3 1 3 2 ; 2:-", "1 2 3 1 2 3"] {
            let d = cd(s);
            assert_eq!(kauffman_bracket::<i64>(&d).unwrap(), kauffman_bracket_by_surgery::<i64>(&d).unwrap());
        }
    }

    #[test]
    fn f_examples() {
        let f = |s: &str, e| gen_fun_f::<BigInt>(&cd(s), e).unwrap().to_string();
        assert_eq!(f("", Exponent::Circles), "x^2");
        assert_eq!(f("1 1 ; +", Exponent::Circles), "2x^3");
        assert_eq!(f("1 2 1 2 ; ++", Exponent::Circles), "2x^4+2x^2");
        assert_eq!(f("1 2 1 2 ; ++", Exponent::Genus), "2x^4+2x^3");
        assert_eq!(f("1 1 ; -", Exponent::Genus), "2x^2");
    }

    #[test]
    fn f_tilde_examples() {
        let f = |s: &str| gen_fun_f_tilde::<BigInt>(&cd(s), DEFAULT_ASSIGNMENT_CAP).unwrap().to_string();
        assert_eq!(f(""), "x^2");
        assert_eq!(f("1 1 ; +"), "2x^3+2x");
        assert_eq!(f("1 1 ; -"), "2x^2+2x");
        assert_eq!(
            gen_fun_f_tilde::<BigInt>(&cd("1 1 2 2 3 3"), 2),
            Err(InvariantError::CapExceeded { k: 3, cap: 2 })
        );
    }

    #[test]
    fn weight_system_examples() {
        let w = |s: &str| weight_system_gl::<BigInt>(&cd(s), DEFAULT_ASSIGNMENT_CAP);
        assert_eq!(w("").unwrap().to_string(), "n^2");
        let p = w("1 1").unwrap();
        assert_eq!(p.to_string(), "2n^3-2n");
        assert_eq!(p.evaluate(&BigInt::from(2)), Some(BigInt::from(12)));
        assert_eq!(w("1 1 ; -"), Err(InvariantError::NegativeChord(1)));
    }

    #[test]
    fn good_summands_give_f() {
        for s in ["1 1", "1 2 1 2", "1 2 3 1 2 3", "1 2 3 3 1 2"] {
            let d = cd(s);
            let good: P = gen_fun_f_tilde_good(&d).unwrap();
            assert_eq!(good, gen_fun_f(&d, Exponent::Circles).unwrap(), "{s}");
        }
    }

    #[test]
    fn quadruple_examples() {
        let d = cd("1 2 1 2 ; ++");
        let q = four_term_quadruple(&d, 1, 2, false).unwrap();
        assert_eq!(q.a, d);
        assert!(!q.sign_flipped);
        for x in [&q.b, &q.c, &q.d] {
            assert_eq!(x.k(), 2);
        }
        assert!(check_relation(&q, |x| gen_fun_f::<i64>(x, Exponent::Circles).unwrap()));
        assert_eq!(four_term_quadruple(&d, 1, 1, false), Err(InvariantError::SameChord));
        assert_eq!(four_term_quadruple(&d, 1, 9, false), Err(InvariantError::UnknownLabel(9)));

        let d = cd("1 2 1 2 ; 1:- 2:+");
        assert_eq!(four_term_quadruple(&d, 1, 2, false), Err(InvariantError::NegativeAlpha(1)));
        let q = four_term_quadruple(&d, 1, 2, true).unwrap();
        assert!(q.sign_flipped);
        assert_eq!(q.c.sign(2), Some(Sign::Neg));
        assert_eq!(q.d.sign(2), Some(Sign::Neg));
        assert_eq!(q.b.sign(2), Some(Sign::Pos));
    }

    #[test]
    fn not_adjacent() {
        let d = cd("1 1 2 3 2 3 4 4");
        assert_eq!(four_term_quadruple(&d, 1, 3, false), Err(InvariantError::NotAdjacent { alpha: 1, beta: 3 }));
    }
}
