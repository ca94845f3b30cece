//! Checkerboard embeddings of a framed chord diagram, via splittings of its
//! chords into two sides `I | J`.
//!
//! A splitting determines a cellular embedding of Euler characteristic
//! `2 - rank M_I - rank M_J`. The surface is orientable exactly when every
//! chord is positive. "Embeds in S" means some splitting gives exactly the
//! Euler characteristic and orientability of S.

use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::chord_diagram::{FramedChordDiagram, Label};
use crate::gf2::Gf2Matrix;

/// Largest `k` handled by exhaustive enumeration unless overridden.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 24;
/// Splittings are bitmasks, so diagrams are limited to 64 chords.
pub const MAX_CHORDS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenusError {
    #[error("{k} chords is more than the supported {max}")]
    TooManyChords { k: usize, max: usize },
    #[error("unknown chord label {0}")]
    UnknownLabel(Label),
    #[error("mask {mask:#x} has bits beyond {k} chords")]
    MaskOutOfRange { mask: u64, k: usize },
}

fn full_mask(k: usize) -> u64 {
    if k == 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

fn check_size(d: &FramedChordDiagram) -> Result<(), GenusError> {
    if d.k() > MAX_CHORDS {
        Err(GenusError::TooManyChords { k: d.k(), max: MAX_CHORDS })
    } else {
        Ok(())
    }
}

/// Chords (by index) on the first side `I`; the rest form `J`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Splitting {
    k: usize,
    mask: u64,
}

impl Splitting {
    pub fn new(k: usize, mask: u64) -> Result<Self, GenusError> {
        if k > MAX_CHORDS {
            return Err(GenusError::TooManyChords { k, max: MAX_CHORDS });
        }
        if mask & !full_mask(k) != 0 {
            return Err(GenusError::MaskOutOfRange { mask, k });
        }
        Ok(Splitting { k, mask })
    }

    pub fn from_labels(d: &FramedChordDiagram, first: &[Label]) -> Result<Self, GenusError> {
        check_size(d)?;
        let mut mask = 0;
        for &l in first {
            let i = d.index_of(l).ok_or(GenusError::UnknownLabel(l))?;
            mask |= 1 << i;
        }
        Ok(Splitting { k: d.k(), mask })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn second_mask(&self) -> u64 {
        full_mask(self.k) & !self.mask
    }

    pub fn swapped(&self) -> Splitting {
        Splitting { k: self.k, mask: self.second_mask() }
    }

    pub fn first_labels(&self, d: &FramedChordDiagram) -> Vec<Label> {
        labels_of(d, self.mask)
    }

    pub fn second_labels(&self, d: &FramedChordDiagram) -> Vec<Label> {
        labels_of(d, self.second_mask())
    }
}

impl fmt::Debug for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Splitting({:0width$b})", self.mask, width = self.k.max(1))
    }
}

fn labels_of(d: &FramedChordDiagram, mask: u64) -> Vec<Label> {
    d.labels().into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, l)| l).collect()
}

fn rank_sum_of(m: &Gf2Matrix, k: usize, mask: u64) -> usize {
    m.principal_rank(mask) + m.principal_rank(full_mask(k) & !mask)
}

pub fn rank_sum(d: &FramedChordDiagram, s: &Splitting) -> usize {
    assert_eq!(d.k(), s.k, "splitting is for a different number of chords");
    rank_sum_of(&d.interlacement_matrix(), s.k, s.mask)
}

pub fn euler_characteristic(d: &FramedChordDiagram, s: &Splitting) -> i64 {
    2 - rank_sum(d, s) as i64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientability {
    Orientable,
    NonOrientable,
}

impl fmt::Display for Orientability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientability::Orientable => "orientable",
            Orientability::NonOrientable => "non-orientable",
        })
    }
}

pub fn orientability_class(d: &FramedChordDiagram) -> Orientability {
    if d.is_all_positive() {
        Orientability::Orientable
    } else {
        Orientability::NonOrientable
    }
}

/// Genus (orientable) or crosscap number (non-orientable) for a rank sum.
pub fn genus_or_crosscap(orientability: Orientability, rank_sum: usize) -> usize {
    match orientability {
        Orientability::Orientable => rank_sum / 2,
        Orientability::NonOrientable => rank_sum,
    }
}

pub fn surface_name(orientability: Orientability, rank_sum: usize) -> String {
    let g = genus_or_crosscap(orientability, rank_sum);
    match (orientability, g) {
        (Orientability::Orientable, 0) => "sphere".into(),
        (Orientability::Orientable, 1) => "torus".into(),
        (Orientability::Orientable, g) => format!("orientable-genus-{g}"),
        (Orientability::NonOrientable, 1) => "RP2".into(),
        (Orientability::NonOrientable, 2) => "klein-bottle".into(),
        (Orientability::NonOrientable, g) => format!("nonorientable-genus-{g}"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplittingRecord {
    pub splitting: Splitting,
    pub rank_sum: usize,
    pub euler_characteristic: i64,
}

/// Every splitting with its rank sum, in mask order. Requires `k < 64`.
pub fn splitting_records(d: &FramedChordDiagram) -> impl Iterator<Item = SplittingRecord> {
    let k = d.k();
    assert!(k < 64, "cannot enumerate 2^{k} splittings");
    let m = d.interlacement_matrix();
    (0..1u64 << k).map(move |mask| {
        let r = rank_sum_of(&m, k, mask);
        SplittingRecord { splitting: Splitting { k, mask }, rank_sum: r, euler_characteristic: 2 - r as i64 }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusReport {
    pub k: usize,
    pub orientability: Orientability,
    pub min_rank_sum: usize,
    pub max_rank_sum: usize,
    pub witness_min: Splitting,
    pub witness_max: Splitting,
    pub witness_min_labels: Vec<Label>,
    pub witness_max_labels: Vec<Label>,
    /// Number of splittings per rank sum; absent when branch and bound was
    /// used.
    pub histogram: Option<Vec<u64>>,
}

impl GenusReport {
    pub fn is_orientable(&self) -> bool {
        self.orientability == Orientability::Orientable
    }

    pub fn min_genus_or_crosscap(&self) -> usize {
        genus_or_crosscap(self.orientability, self.min_rank_sum)
    }

    pub fn max_genus_or_crosscap(&self) -> usize {
        genus_or_crosscap(self.orientability, self.max_rank_sum)
    }

    /// Surfaces realised by some splitting. Without a histogram only the two
    /// extremes are known.
    pub fn surfaces(&self) -> Vec<String> {
        let sums: Vec<usize> = match &self.histogram {
            Some(h) => (0..h.len()).filter(|&r| h[r] > 0).collect(),
            None if self.min_rank_sum == self.max_rank_sum => vec![self.min_rank_sum],
            None => vec![self.min_rank_sum, self.max_rank_sum],
        };
        sums.into_iter().map(|r| surface_name(self.orientability, r)).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "orientable": self.is_orientable(),
            "min_rank_sum": self.min_rank_sum,
            "max_rank_sum": self.max_rank_sum,
            "min_genus_or_crosscap": self.min_genus_or_crosscap(),
            "max_genus_or_crosscap": self.max_genus_or_crosscap(),
            "witness_min": self.witness_min_labels,
            "witness_max": self.witness_max_labels,
            "surfaces": self.surfaces(),
        })
    }
}

impl fmt::Display for GenusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "chords: {}", self.k)?;
        writeln!(f, "orientability: {}", self.orientability)?;
        writeln!(
            f,
            "min rank sum: {} ({}), I = {:?}",
            self.min_rank_sum,
            surface_name(self.orientability, self.min_rank_sum),
            self.witness_min_labels
        )?;
        writeln!(
            f,
            "max rank sum: {} ({}), I = {:?}",
            self.max_rank_sum,
            surface_name(self.orientability, self.max_rank_sum),
            self.witness_max_labels
        )?;
        write!(f, "surfaces: {}", self.surfaces().join(", "))
    }
}

pub fn genus_spectrum(d: &FramedChordDiagram) -> Result<GenusReport, GenusError> {
    genus_spectrum_with(d, DEFAULT_EXHAUSTIVE_LIMIT)
}

/// Exhaustive enumeration for `k <= exhaustive_limit`, branch and bound
/// otherwise.
pub fn genus_spectrum_with(d: &FramedChordDiagram, exhaustive_limit: usize) -> Result<GenusReport, GenusError> {
    check_size(d)?;
    let k = d.k();
    let m = d.interlacement_matrix();
    let (min, max, histogram) = if k <= exhaustive_limit.min(63) {
        let (min, max, h) = exhaustive(&m, k);
        (min, max, Some(h))
    } else {
        let bb = BranchAndBound::new(&m);
        (bb.minimum(), bb.maximum(), None)
    };
    let witness_min = Splitting { k, mask: min.1 };
    let witness_max = Splitting { k, mask: max.1 };
    Ok(GenusReport {
        k,
        orientability: orientability_class(d),
        min_rank_sum: min.0,
        max_rank_sum: max.0,
        witness_min_labels: witness_min.first_labels(d),
        witness_max_labels: witness_max.first_labels(d),
        witness_min,
        witness_max,
        histogram,
    })
}

#[derive(Clone)]
struct Tally {
    min: (usize, u64),
    max: (usize, u64),
    histogram: Vec<u64>,
}

impl Tally {
    fn new(k: usize) -> Self {
        Tally { min: (usize::MAX, 0), max: (0, u64::MAX), histogram: vec![0; k + 1] }
    }

    fn add(&mut self, r: usize, mask: u64) {
        self.histogram[r] += 1;
        if (r, mask) < self.min {
            self.min = (r, mask);
        }
        if r > self.max.0 || (r == self.max.0 && mask < self.max.1) {
            self.max = (r, mask);
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.histogram.iter_mut().zip(other.histogram) {
            *a += b;
        }
        self.min = self.min.min(other.min);
        if other.max.0 > self.max.0 || (other.max.0 == self.max.0 && other.max.1 < self.max.1) {
            self.max = other.max;
        }
        self
    }
}

/// Masks with the top chord on the `J` side cover every splitting up to
/// swapping sides, which leaves the rank sum unchanged. The lowest mask
/// achieving a value is always in that half.
fn exhaustive(m: &Gf2Matrix, k: usize) -> ((usize, u64), (usize, u64), Vec<u64>) {
    if k == 0 {
        return ((0, 0), (0, 0), vec![1]);
    }
    let half = 1u64 << (k - 1);
    const CHUNK: u64 = 1 << 12;
    let chunks = half.div_ceil(CHUNK);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut t = Tally::new(k);
            for mask in c * CHUNK..((c + 1) * CHUNK).min(half) {
                t.add(rank_sum_of(m, k, mask), mask);
            }
            t
        })
        .reduce(|| Tally::new(k), Tally::merge);
    let histogram = tally.histogram.into_iter().map(|c| 2 * c).collect();
    (tally.min, tally.max, histogram)
}

/// Depth-first search over side assignments, chords in order of decreasing
/// interlacement degree. Partial ranks only grow as chords are added, so
/// `rank I + rank J` bounds the minimum from below and
/// `rank(I + rest) + rank(J + rest)` bounds the maximum from above.
struct BranchAndBound<'a> {
    m: &'a Gf2Matrix,
    order: Vec<usize>,
    /// `rest[i]`: chords placed at depth `i` or later.
    rest: Vec<u64>,
}

impl<'a> BranchAndBound<'a> {
    fn new(m: &'a Gf2Matrix) -> Self {
        let k = m.dim();
        let mut order: Vec<usize> = (0..k).collect();
        let degree = |i: usize| (0..k).filter(|&j| j != i && m.get(i, j)).count();
        order.sort_by_key(|&i| (std::cmp::Reverse(degree(i)), i));
        let mut rest = vec![0u64; k + 1];
        for i in (0..k).rev() {
            rest[i] = rest[i + 1] | 1 << order[i];
        }
        BranchAndBound { m, order, rest }
    }

    fn k(&self) -> usize {
        self.order.len()
    }

    fn greedy(&self, maximise: bool) -> (usize, u64) {
        let (mut a, mut b) = (0u64, 0u64);
        for &c in &self.order {
            let ra = self.m.principal_rank(a | 1 << c) + self.m.principal_rank(b);
            let rb = self.m.principal_rank(a) + self.m.principal_rank(b | 1 << c);
            if (ra <= rb) != maximise || ra == rb {
                a |= 1 << c;
            } else {
                b |= 1 << c;
            }
        }
        (rank_sum_of(self.m, self.k(), a), a)
    }

    fn minimum(&self) -> (usize, u64) {
        let mut best = self.greedy(false);
        if self.k() > 0 {
            self.search_min(1, 1 << self.order[0], 0, &mut best);
        }
        best
    }

    fn search_min(&self, depth: usize, a: u64, b: u64, best: &mut (usize, u64)) {
        let bound = self.m.principal_rank(a) + self.m.principal_rank(b);
        if bound >= best.0 {
            return;
        }
        if depth == self.k() {
            *best = (bound, a);
            return;
        }
        let c = 1u64 << self.order[depth];
        self.search_min(depth + 1, a | c, b, best);
        self.search_min(depth + 1, a, b | c, best);
    }

    fn maximum(&self) -> (usize, u64) {
        let mut best = self.greedy(true);
        if self.k() > 0 {
            self.search_max(1, 1 << self.order[0], 0, &mut best);
        }
        best
    }

    fn search_max(&self, depth: usize, a: u64, b: u64, best: &mut (usize, u64)) {
        let rest = self.rest[depth];
        let bound = self.m.principal_rank(a | rest) + self.m.principal_rank(b | rest);
        if bound <= best.0 {
            return;
        }
        if depth == self.k() {
            *best = (bound, a);
            return;
        }
        let c = 1u64 << self.order[depth];
        self.search_max(depth + 1, a | c, b, best);
        self.search_max(depth + 1, a, b | c, best);
    }
}

/// Sphere test: all chords positive and a bipartite interlacement graph.
/// Quadratic in the number of chords and not limited to 64 chords.
pub fn is_planar(d: &FramedChordDiagram) -> bool {
    d.is_d_diagram().is_some()
}

/// Lowest-mask splitting with exactly the given rank sum, by enumeration.
pub fn splitting_with_rank_sum(d: &FramedChordDiagram, target: usize) -> Result<Option<Splitting>, GenusError> {
    check_size(d)?;
    let k = d.k();
    if k >= 64 {
        return Err(GenusError::TooManyChords { k, max: 63 });
    }
    let m = d.interlacement_matrix();
    let hit = (0..1u64 << k).into_par_iter().find_first(|&mask| rank_sum_of(&m, k, mask) == target);
    Ok(hit.map(|mask| Splitting { k, mask }))
}

/// Splits the chords of a matrix into two "families". Inside a family the
/// block is `v v^T`: chords with diagonal 1 ("dashed") are pairwise linked,
/// and every other chord is linked to nothing in its family. Such a block has
/// rank 1 if it holds a dashed chord and 0 otherwise.
///
/// `forced_first[i]` pins chord `i` to family 0. `accept(h0, h1)` is asked
/// whether a decomposition where family 0 (resp. 1) contains a dashed chord
/// is wanted. Returns the family-0 mask of an accepted decomposition.
fn two_families(m: &Gf2Matrix, forced_first: &[bool], accept: impl Fn(bool, bool) -> bool) -> Option<u64> {
    let k = m.dim();
    let dashed: Vec<bool> = (0..k).map(|i| m.get(i, i)).collect();
    let conflict = |i: usize, j: usize| m.get(i, j) != (dashed[i] && dashed[j]);

    // 2-colour the "must be in different families" graph, one component at
    // a time, and record for each component what its two orientations give.
    let mut colour: Vec<Option<bool>> = vec![None; k];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for root in 0..k {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(false);
        let mut members = vec![root];
        let mut next = 0;
        while next < members.len() {
            let u = members[next];
            next += 1;
            let cu = colour[u].unwrap();
            for v in 0..k {
                if v == u || !conflict(u, v) {
                    continue;
                }
                match colour[v] {
                    None => {
                        colour[v] = Some(!cu);
                        members.push(v);
                    }
                    Some(cv) if cv == cu => return None,
                    Some(_) => {}
                }
            }
        }
        components.push(members);
    }

    // reachable[(h0, h1)] = orientation choices so far
    let mut reachable: [Option<Vec<bool>>; 4] = [Some(Vec::new()), None, None, None];
    let state = |h0: bool, h1: bool| (h0 as usize) | (h1 as usize) << 1;
    for members in &components {
        let mut next: [Option<Vec<bool>>; 4] = [None, None, None, None];
        for flip in [false, true] {
            let family = |i: usize| colour[i].unwrap() ^ flip;
            if members.iter().any(|&i| forced_first[i] && family(i)) {
                continue;
            }
            let h0 = members.iter().any(|&i| dashed[i] && !family(i));
            let h1 = members.iter().any(|&i| dashed[i] && family(i));
            for s in 0..4 {
                if let Some(choices) = &reachable[s] {
                    let t = state(s & 1 == 1 || h0, s & 2 == 2 || h1);
                    if next[t].is_none() {
                        let mut c = choices.clone();
                        c.push(flip);
                        next[t] = Some(c);
                    }
                }
            }
        }
        reachable = next;
    }
    let choices = (0..4).find_map(|s| reachable[s].as_ref().filter(|_| accept(s & 1 == 1, s & 2 == 2)))?;
    let mut mask = 0u64;
    for (members, &flip) in components.iter().zip(choices) {
        for &i in members {
            if !(colour[i].unwrap() ^ flip) {
                mask |= 1 << i;
            }
        }
    }
    Some(mask)
}

/// Projective-plane test: rank sum exactly 1. All negative chords must sit
/// on one side as a pairwise linked block, with every other chord unlinked
/// from its side. Polynomial time.
pub fn embeds_in_rp2(d: &FramedChordDiagram) -> Result<Option<Splitting>, GenusError> {
    check_size(d)?;
    if d.is_all_positive() {
        return Ok(None);
    }
    let m = d.interlacement_matrix();
    let mask = two_families(&m, &vec![false; d.k()], |h0, h1| h0 != h1);
    Ok(mask.map(|mask| Splitting { k: d.k(), mask }))
}

/// Klein-bottle test: rank sum exactly 2 with a negative chord. Polynomial
/// time.
///
/// Either both sides have rank 1, which is a two-family decomposition of
/// `D` with a dashed chord in each family, or one side `I` has rank 2 and
/// `J` rank 0. In the second case `I` holds a negative chord `c`, and by the
/// Schur complement at `c`, `rank M_I = 1 + rank M'_{I-c}` where `M'` is the
/// matrix of the surgery of `D` along `c`. Surgery adds `u u^T` (`u` = the
/// neighbours of `c`), so `J` has rank 0 in `D` exactly when it is a family
/// of `M'` made of chords that were positive in `D`. So we look for a
/// two-family decomposition of `M'` whose first family has a dashed chord and
/// holds every originally negative chord.
pub fn embeds_in_klein(d: &FramedChordDiagram) -> Result<Option<Splitting>, GenusError> {
    check_size(d)?;
    if d.is_all_positive() {
        return Ok(None);
    }
    let k = d.k();
    let m = d.interlacement_matrix();
    if let Some(mask) = two_families(&m, &vec![false; k], |h0, h1| h0 && h1) {
        return Ok(Some(Splitting { k, mask }));
    }
    let labels = d.labels();
    for c in d.negative_labels() {
        let reduced = d.surgery_along(c).expect("c is a chord of d");
        let rm = reduced.interlacement_matrix();
        let reduced_labels = reduced.labels();
        let forced: Vec<bool> = reduced_labels.iter().map(|&l| d.sign(l).is_some_and(|s| s.is_neg())).collect();
        if let Some(sub) = two_families(&rm, &forced, |h0, _| h0) {
            let mut mask = 1u64 << labels.binary_search(&c).unwrap();
            for (i, l) in reduced_labels.iter().enumerate() {
                if sub >> i & 1 == 1 {
                    mask |= 1 << labels.binary_search(l).unwrap();
                }
            }
            return Ok(Some(Splitting { k, mask }));
        }
    }
    Ok(None)
}

/// Reference versions by enumeration of all splittings.
pub fn embeds_in_rp2_brute(d: &FramedChordDiagram) -> Result<Option<Splitting>, GenusError> {
    if d.is_all_positive() {
        return Ok(None);
    }
    splitting_with_rank_sum(d, 1)
}

pub fn embeds_in_klein_brute(d: &FramedChordDiagram) -> Result<Option<Splitting>, GenusError> {
    if d.is_all_positive() {
        return Ok(None);
    }
    splitting_with_rank_sum(d, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(s: &str) -> FramedChordDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn euler_characteristic_examples() {
        let d = cd("1 2 1 2 ; ++");
        assert_eq!(euler_characteristic(&d, &Splitting::from_labels(&d, &[1]).unwrap()), 2);
        assert_eq!(euler_characteristic(&d, &Splitting::from_labels(&d, &[1, 2]).unwrap()), 0);
        let d = cd("1 1 ; 1:-");
        assert_eq!(euler_characteristic(&d, &Splitting::from_labels(&d, &[1]).unwrap()), 1);
        assert_eq!(Splitting::from_labels(&d, &[7]), Err(GenusError::UnknownLabel(7)));
        assert_eq!(Splitting::new(2, 4), Err(GenusError::MaskOutOfRange { mask: 4, k: 2 }));
    }

    #[test]
    fn spectrum_examples() {
        let r = genus_spectrum(&cd("1 2 1 2 ; ++")).unwrap();
        assert_eq!((r.min_rank_sum, r.max_rank_sum), (0, 2));
        assert_eq!(r.surfaces(), vec!["sphere", "torus"]);
        assert_eq!(r.histogram, Some(vec![2, 0, 2]));
        assert_eq!(r.witness_min_labels, vec![1]);
        assert_eq!(r.witness_max_labels, Vec::<Label>::new());

        let r = genus_spectrum(&cd("1 2 3 1 2 3 ; +++")).unwrap();
        assert_eq!(r.min_rank_sum, 2);
        assert!(r.is_orientable());
        assert!(r.surfaces().contains(&"torus".to_string()));

        let r = genus_spectrum(&cd("1 1 ; 1:-")).unwrap();
        assert_eq!((r.min_rank_sum, r.max_rank_sum), (1, 1));
        assert_eq!(r.surfaces(), vec!["RP2"]);

        let r = genus_spectrum(&FramedChordDiagram::empty()).unwrap();
        assert_eq!(r.surfaces(), vec!["sphere"]);
        assert_eq!(r.histogram, Some(vec![1]));
    }

    #[test]
    fn report_json_shape() {
        let r = genus_spectrum(&cd("1 1 2 2 ; 1:- 2:-")).unwrap();
        let v = r.to_json();
        assert_eq!(v["orientable"], false);
        assert_eq!(v["min_rank_sum"], 2);
        assert_eq!(v["min_genus_or_crosscap"], 2);
        assert_eq!(v["surfaces"], json!(["klein-bottle"]));
        assert_eq!(v.as_object().unwrap().len(), 9);
    }

    #[test]
    fn surface_names() {
        use Orientability::*;
        assert_eq!(surface_name(Orientable, 4), "orientable-genus-2");
        assert_eq!(surface_name(NonOrientable, 3), "nonorientable-genus-3");
        assert_eq!(orientability_class(&FramedChordDiagram::empty()), Orientable);
    }

    #[test]
    fn planarity_examples() {
        assert!(is_planar(&cd("1 2 1 2 ; ++")));
        assert!(!is_planar(&cd("1 2 3 1 2 3 ; +++")));
        assert!(!is_planar(&cd("1 1 ; 1:-")));
    }

    #[test]
    fn recognizer_examples() {
        let d = cd("1 1 ; 1:-");
        assert_eq!(embeds_in_rp2(&d).unwrap().map(|s| s.first_labels(&d)), Some(vec![1]));
        assert_eq!(embeds_in_klein(&d).unwrap(), None);
        let d = cd("1 1 2 2 ; 1:- 2:-");
        assert_eq!(embeds_in_rp2(&d).unwrap(), None);
        let w = embeds_in_klein(&d).unwrap().unwrap();
        assert_eq!((w.first_labels(&d), w.second_labels(&d)), (vec![1], vec![2]));
        for s in ["1 2 1 2", "1 2 3 1 2 3", ""] {
            assert_eq!(embeds_in_rp2(&cd(s)).unwrap(), None);
            assert_eq!(embeds_in_klein(&cd(s)).unwrap(), None);
        }
        // rank 2 on one side: a negative chord linked with a positive one
        let d = cd("1 2 1 2 ; 1:- 2:+");
        assert_eq!(embeds_in_klein(&d).unwrap().is_some(), embeds_in_klein_brute(&d).unwrap().is_some());
    }

    #[test]
    fn branch_and_bound_matches_enumeration() {
        for s in ["1 2 3 1 2 3", "1 2 3 4 1 2 3 4 ; 2:-", "1 2 1 3 4 3 2 4 5 5 ; 5:-", "1 1", ""] {
            let d = cd(s);
            let a = genus_spectrum_with(&d, 64).unwrap();
            let b = genus_spectrum_with(&d, 0).unwrap();
            assert_eq!((a.min_rank_sum, a.max_rank_sum), (b.min_rank_sum, b.max_rank_sum), "{s}");
            assert_eq!(rank_sum(&d, &b.witness_min), b.min_rank_sum);
            assert_eq!(rank_sum(&d, &b.witness_max), b.max_rank_sum);
            assert_eq!(b.histogram.is_none(), d.k() > 0);
        }
    }

    #[test]
    fn records_cover_all_splittings() {
        let d = cd("1 2 3 1 2 3");
        let records: Vec<_> = splitting_records(&d).collect();
        assert_eq!(records.len(), 8);
        let r = genus_spectrum(&d).unwrap();
        let h = r.histogram.unwrap();
        for (sum, &n) in h.iter().enumerate() {
            assert_eq!(records.iter().filter(|x| x.rank_sum == sum).count() as u64, n);
        }
        assert!(records.iter().all(|x| x.euler_characteristic == 2 - x.rank_sum as i64));
    }
}
