//! Band surgery on 1-manifolds, traced directly.
//!
//! This module is the geometric side of every circle count in the crate.
//! It shares no code with [`crate::gf2`]: counts come from splicing circles,
//! not from ranks.
//!
//! A [`OneManifold`] is a list of circles, each a cyclic sequence of marked
//! points. Every point remembers whether the current circle runs through it
//! in the point's original direction. Bands are always interpreted against
//! the original directions: a plain band joins the incoming side of one
//! endpoint to the outgoing side of the other, an overtwisted band joins
//! incoming to incoming and outgoing to outgoing.

use std::collections::HashMap;

use thiserror::Error;

use crate::chord_diagram::{FramedChordDiagram, Label, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("marked point {0} is not on the manifold")]
    UnknownPoint(usize),
    #[error("band endpoints must be distinct (got {0} twice)")]
    DegenerateBand(usize),
    #[error("unknown chord label {0}")]
    UnknownLabel(Label),
    #[error("label {0} is on both sides of the splitting")]
    Overlap(Label),
    #[error("label {0} is on neither side of the splitting")]
    Incomplete(Label),
    #[error("assignment has {got} sides for {want} endpoints")]
    IncompleteAssignment { got: usize, want: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MarkedPoint {
    pub id: usize,
    /// The circle passes through the point along its original direction.
    pub forward: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Twist {
    Plain,
    Overtwisted,
}

impl From<Sign> for Twist {
    fn from(s: Sign) -> Twist {
        match s {
            Sign::Pos => Twist::Plain,
            Sign::Neg => Twist::Overtwisted,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BandAttachment {
    pub ends: (usize, usize),
    pub twist: Twist,
}

impl BandAttachment {
    pub fn new(a: usize, b: usize, twist: Twist) -> Result<Self, SurgeryError> {
        if a == b {
            return Err(SurgeryError::DegenerateBand(a));
        }
        Ok(BandAttachment { ends: (a, b), twist })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OneManifold {
    circles: Vec<Vec<MarkedPoint>>,
}

impl OneManifold {
    /// One circle per inner list, points in the given (original) direction.
    pub fn from_circles(circles: Vec<Vec<usize>>) -> Self {
        OneManifold {
            circles: circles
                .into_iter()
                .map(|c| c.into_iter().map(|id| MarkedPoint { id, forward: true }).collect())
                .collect(),
        }
    }

    pub fn circle(points: Vec<usize>) -> Self {
        Self::from_circles(vec![points])
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn marked_points(&self) -> usize {
        self.circles.iter().map(Vec::len).sum()
    }

    pub fn circles(&self) -> &[Vec<MarkedPoint>] {
        &self.circles
    }

    fn locate(&self, id: usize) -> Option<(usize, usize)> {
        self.circles
            .iter()
            .enumerate()
            .find_map(|(c, pts)| pts.iter().position(|p| p.id == id).map(|i| (c, i)))
    }

    pub fn surgery(&self, band: &BandAttachment) -> Result<OneManifold, SurgeryError> {
        let mut out = self.clone();
        out.apply(band)?;
        Ok(out)
    }

    /// In-place surgery. The two endpoints stop being marked points.
    pub fn apply(&mut self, band: &BandAttachment) -> Result<(), SurgeryError> {
        let (p, q) = band.ends;
        if p == q {
            return Err(SurgeryError::DegenerateBand(p));
        }
        let (cp, ip) = self.locate(p).ok_or(SurgeryError::UnknownPoint(p))?;
        let (cq, iq) = self.locate(q).ok_or(SurgeryError::UnknownPoint(q))?;
        let fp = self.circles[cp][ip].forward;
        let fq = self.circles[cq][iq].forward;
        // Entering p is joined to leaving q (and vice versa) exactly when the
        // band is plain and both points are traversed the same way, or it is
        // overtwisted and they are traversed oppositely.
        let crossing = (band.twist == Twist::Plain) == (fp == fq);

        if cp == cq {
            let mut circle = std::mem::take(&mut self.circles[cp]);
            circle.rotate_left(ip);
            let iq = (iq + circle.len() - ip) % circle.len();
            // circle = [p, A.., q, B..]
            let b: Vec<MarkedPoint> = circle.split_off(iq + 1);
            circle.truncate(iq);
            let a: Vec<MarkedPoint> = circle.split_off(1);
            if crossing {
                self.circles[cp] = a;
                self.circles.push(b);
            } else {
                let mut merged = b;
                merged.extend(reversed(a));
                self.circles[cp] = merged;
            }
        } else {
            let (lo, hi) = if cp < cq { (cp, cq) } else { (cq, cp) };
            let second = self.circles.swap_remove(hi);
            let first = std::mem::take(&mut self.circles[lo]);
            let (mut c1, mut c2) = if cp < cq { (first, second) } else { (second, first) };
            // c1 = [p, A..], c2 = [q, B..]
            c1.rotate_left(ip);
            c2.rotate_left(iq);
            c1.remove(0);
            c2.remove(0);
            let mut merged = c1;
            if crossing {
                merged.extend(c2);
            } else {
                merged.extend(reversed(c2));
            }
            self.circles[lo] = merged;
        }
        Ok(())
    }
}

fn reversed(mut arc: Vec<MarkedPoint>) -> impl Iterator<Item = MarkedPoint> {
    arc.reverse();
    arc.into_iter().map(|p| MarkedPoint { id: p.id, forward: !p.forward })
}

/// Circles after surgery along the chords selected by `mask` (bit `i` =
/// chord index `i`), starting from a single circle carrying their endpoints.
pub fn circle_count_after_mask(d: &FramedChordDiagram, mask: u64) -> usize {
    let ends = d.endpoints();
    let signs = d.sign_vec();
    let mut chord_at = vec![0usize; d.word().len()];
    for (i, &(a, b)) in ends.iter().enumerate() {
        chord_at[a] = i;
        chord_at[b] = i;
    }
    let points: Vec<usize> = (0..chord_at.len()).filter(|&p| mask >> chord_at[p] & 1 == 1).collect();
    let mut m = OneManifold::circle(points);
    for (i, &(a, b)) in ends.iter().enumerate() {
        if mask >> i & 1 == 1 {
            m.apply(&BandAttachment { ends: (a, b), twist: signs[i].into() })
                .expect("chord endpoints are on the circle");
        }
    }
    m.circle_count()
}

pub fn circle_count_after(d: &FramedChordDiagram, chords: &[Label]) -> Result<usize, SurgeryError> {
    Ok(circle_count_after_mask(d, label_mask(d, chords)?))
}

fn label_mask(d: &FramedChordDiagram, chords: &[Label]) -> Result<u64, SurgeryError> {
    let index: HashMap<Label, usize> = d.labels().into_iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mut mask = 0u64;
    for l in chords {
        let i = index.get(l).ok_or(SurgeryError::UnknownLabel(*l))?;
        mask |= 1 << i;
    }
    Ok(mask)
}

/// Circle counts on both sides of the splitting `first | second`. Their sum
/// is the face count of the checkerboard embedding it describes.
pub fn state_circle_counts(
    d: &FramedChordDiagram,
    first: &[Label],
    second: &[Label],
) -> Result<(usize, usize), SurgeryError> {
    let a = label_mask(d, first)?;
    let b = label_mask(d, second)?;
    let labels = d.labels();
    if a & b != 0 {
        return Err(SurgeryError::Overlap(labels[(a & b).trailing_zeros() as usize]));
    }
    if let Some(i) = (0..labels.len()).find(|&i| (a | b) >> i & 1 == 0) {
        return Err(SurgeryError::Incomplete(labels[i]));
    }
    Ok((circle_count_after_mask(d, a), circle_count_after_mask(d, b)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One term of the commutator expansion of the gl(n) weight system.
///
/// Endpoints assigned `Left` are placed on one circle in word order, those
/// assigned `Right` on a second circle in reversed order, and every chord is
/// then surgered (plain for positive chords, overtwisted for negative ones)
/// relative to those two circles. Returns `(-1)^{#right}` and the number of
/// circles left.
pub fn assignment_trace(d: &FramedChordDiagram, sides: &[Side]) -> Result<(i8, usize), SurgeryError> {
    if sides.len() != d.word().len() {
        return Err(SurgeryError::IncompleteAssignment { got: sides.len(), want: d.word().len() });
    }
    let mask = sides
        .iter()
        .enumerate()
        .fold(0u64, |m, (i, s)| if *s == Side::Right { m | 1 << i } else { m });
    Ok(assignment_trace_mask(d, mask))
}

/// As [`assignment_trace`], with bit `p` of `right` set when word position
/// `p` goes to the right circle.
pub fn assignment_trace_mask(d: &FramedChordDiagram, right: u64) -> (i8, usize) {
    let n = d.word().len();
    let left: Vec<usize> = (0..n).filter(|p| right >> p & 1 == 0).collect();
    let right_pts: Vec<usize> = (0..n).rev().filter(|p| right >> p & 1 == 1).collect();
    let sign = if right_pts.len() % 2 == 0 { 1 } else { -1 };
    let mut m = OneManifold::from_circles(vec![left, right_pts]);
    for (&(a, b), s) in d.endpoints().iter().zip(d.sign_vec()) {
        m.apply(&BandAttachment { ends: (a, b), twist: s.into() })
            .expect("chord endpoints are marked");
    }
    (sign, m.circle_count())
}
