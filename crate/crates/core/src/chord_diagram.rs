//! Framed chord diagrams as signed double-occurrence words.
//!
//! A diagram with `k` chords is a cyclic word of length `2k` in which every
//! label occurs exactly twice, plus a sign per label. Chord indices used by
//! matrices and splittings follow ascending label order.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::gf2::Gf2Matrix;

pub type Label = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn is_neg(self) -> bool {
        self == Sign::Neg
    }

    fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("label {label} occurs {count} time(s), expected 2")]
    BadOccurrence { label: Label, count: usize },
    #[error("no sign given for label {0}")]
    MissingSign(Label),
    #[error("sign given for label {0}, which is not in the word")]
    UnknownSignLabel(Label),
    #[error("unknown chord label {0}")]
    UnknownLabel(Label),
    #[error("bad token {0:?}")]
    BadToken(String),
    #[error("empty token")]
    EmptyToken,
    #[error("sign string {given:?} has {len} signs for {k} chords")]
    SignCount { given: String, len: usize, k: usize },
    #[error("more than one ';' separator")]
    ExtraSeparator,
    #[error("chord {label} straddles the arc boundary")]
    StraddlingChord { label: Label },
    #[error("arc {start}..{end} is not inside a word of length {len}")]
    BadArc { start: usize, end: usize, len: usize },
}

/// Two-colouring of the chords witnessing a d-diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub left: Vec<Label>,
    pub right: Vec<Label>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FramedChordDiagram {
    word: Vec<Label>,
    signs: BTreeMap<Label, Sign>,
}

impl FramedChordDiagram {
    pub fn empty() -> Self {
        FramedChordDiagram { word: Vec::new(), signs: BTreeMap::new() }
    }

    pub fn new(word: Vec<Label>, signs: BTreeMap<Label, Sign>) -> Result<Self, DiagramError> {
        let mut counts: BTreeMap<Label, usize> = BTreeMap::new();
        for &l in &word {
            *counts.entry(l).or_default() += 1;
        }
        if let Some((&label, &count)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(DiagramError::BadOccurrence { label, count });
        }
        if let Some(&l) = counts.keys().find(|l| !signs.contains_key(l)) {
            return Err(DiagramError::MissingSign(l));
        }
        if let Some(&l) = signs.keys().find(|l| !counts.contains_key(l)) {
            return Err(DiagramError::UnknownSignLabel(l));
        }
        Ok(FramedChordDiagram { word, signs })
    }

    /// All chords positive.
    pub fn from_word(word: Vec<Label>) -> Result<Self, DiagramError> {
        let signs = word.iter().map(|&l| (l, Sign::Pos)).collect();
        Self::new(word, signs)
    }

    pub fn with_negatives(word: Vec<Label>, negative: &[Label]) -> Result<Self, DiagramError> {
        let mut d = Self::from_word(word)?;
        for l in negative {
            match d.signs.get_mut(l) {
                Some(s) => *s = Sign::Neg,
                None => return Err(DiagramError::UnknownSignLabel(*l)),
            }
        }
        Ok(d)
    }

    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        text.parse()
    }

    /// Number of chords.
    pub fn k(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[Label] {
        &self.word
    }

    pub fn signs(&self) -> &BTreeMap<Label, Sign> {
        &self.signs
    }

    /// Labels in ascending order; position in this list is the chord index.
    pub fn labels(&self) -> Vec<Label> {
        self.signs.keys().copied().collect()
    }

    pub fn sign(&self, label: Label) -> Option<Sign> {
        self.signs.get(&label).copied()
    }

    /// Signs in chord-index order.
    pub fn sign_vec(&self) -> Vec<Sign> {
        self.signs.values().copied().collect()
    }

    pub fn is_all_positive(&self) -> bool {
        self.signs.values().all(|s| *s == Sign::Pos)
    }

    pub fn negative_labels(&self) -> Vec<Label> {
        self.signs.iter().filter(|(_, s)| s.is_neg()).map(|(&l, _)| l).collect()
    }

    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.signs.keys().position(|&l| l == label)
    }

    /// Word positions `(first, second)` of each chord, in chord-index order.
    pub fn endpoints(&self) -> Vec<(usize, usize)> {
        let index: HashMap<Label, usize> =
            self.signs.keys().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut ends = vec![(usize::MAX, usize::MAX); self.k()];
        for (pos, l) in self.word.iter().enumerate() {
            let e = &mut ends[index[l]];
            if e.0 == usize::MAX {
                e.0 = pos;
            } else {
                e.1 = pos;
            }
        }
        ends
    }

    /// Word positions of the chord with this label.
    pub fn endpoints_of(&self, label: Label) -> Option<(usize, usize)> {
        let mut it = self.word.iter().enumerate().filter(|(_, &l)| l == label).map(|(p, _)| p);
        Some((it.next()?, it.next()?))
    }

    /// Symmetric matrix with off-diagonal 1 for linked chords and diagonal 1
    /// for negative chords, indexed by ascending label.
    pub fn interlacement_matrix(&self) -> Gf2Matrix {
        let ends = self.endpoints();
        let signs = self.sign_vec();
        let k = ends.len();
        let mut m = Gf2Matrix::zeros(k);
        for i in 0..k {
            if signs[i].is_neg() {
                m.set(i, i, true);
            }
            let (a, b) = ends[i];
            for j in i + 1..k {
                let (c, d) = ends[j];
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    m.set_sym(i, j, true);
                }
            }
        }
        m
    }

    /// Interlacement neighbours of every chord (by index), ascending.
    pub fn interlacement_lists(&self) -> Vec<Vec<usize>> {
        let m = self.interlacement_matrix();
        (0..m.dim()).map(|i| (0..m.dim()).filter(|&j| j != i && m.get(i, j)).collect()).collect()
    }

    /// A d-diagram has only positive chords and a bipartite interlacement
    /// graph. Returns the 2-colouring found by breadth-first search from the
    /// lowest label of each component.
    pub fn is_d_diagram(&self) -> Option<Bipartition> {
        if !self.is_all_positive() {
            return None;
        }
        let adj = self.interlacement_lists();
        let k = adj.len();
        let mut colour: Vec<Option<bool>> = vec![None; k];
        let mut queue = VecDeque::new();
        for root in 0..k {
            if colour[root].is_some() {
                continue;
            }
            colour[root] = Some(false);
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for &v in &adj[u] {
                    match colour[v] {
                        None => {
                            colour[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let labels = self.labels();
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (i, c) in colour.into_iter().enumerate() {
            if c == Some(false) {
                left.push(labels[i]);
            } else {
                right.push(labels[i]);
            }
        }
        Some(Bipartition { left, right })
    }

    /// Word concatenation. If the label sets overlap, `other` is shifted past
    /// the largest label of `self`.
    pub fn connected_sum(&self, other: &FramedChordDiagram) -> FramedChordDiagram {
        let clash = other.signs.keys().any(|l| self.signs.contains_key(l));
        let offset = if clash { self.signs.keys().next_back().copied().unwrap_or(0) } else { 0 };
        let mut word = self.word.clone();
        word.extend(other.word.iter().map(|l| l + offset));
        let mut signs = self.signs.clone();
        signs.extend(other.signs.iter().map(|(l, s)| (l + offset, *s)));
        FramedChordDiagram { word, signs }
    }

    /// Keeps only the chords whose labels are in `keep`.
    pub fn subdiagram(&self, keep: &[Label]) -> Result<FramedChordDiagram, DiagramError> {
        let keep: BTreeSet<Label> = keep.iter().copied().collect();
        if let Some(&l) = keep.iter().find(|l| !self.signs.contains_key(l)) {
            return Err(DiagramError::UnknownLabel(l));
        }
        Ok(self.subdiagram_unchecked(&keep))
    }

    fn subdiagram_unchecked(&self, keep: &BTreeSet<Label>) -> FramedChordDiagram {
        FramedChordDiagram {
            word: self.word.iter().copied().filter(|l| keep.contains(l)).collect(),
            signs: self.signs.iter().filter(|(l, _)| keep.contains(l)).map(|(&l, &s)| (l, s)).collect(),
        }
    }

    /// Subdiagram on the chords whose index bit is set in `mask`.
    pub fn subdiagram_mask(&self, mask: u64) -> FramedChordDiagram {
        let keep = self
            .signs
            .keys()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &l)| l)
            .collect();
        self.subdiagram_unchecked(&keep)
    }

    /// Reverses the subword at positions `start..end`. Every chord must have
    /// both endpoints inside the arc or both outside.
    pub fn interval_mutation(&self, start: usize, end: usize) -> Result<FramedChordDiagram, DiagramError> {
        if start > end || end > self.word.len() {
            return Err(DiagramError::BadArc { start, end, len: self.word.len() });
        }
        let mut inside: HashMap<Label, usize> = HashMap::new();
        for &l in &self.word[start..end] {
            *inside.entry(l).or_default() += 1;
        }
        if let Some(label) = self.word[start..end].iter().copied().find(|l| inside[l] == 1) {
            return Err(DiagramError::StraddlingChord { label });
        }
        let mut word = self.word.clone();
        word[start..end].reverse();
        Ok(FramedChordDiagram { word, signs: self.signs.clone() })
    }

    /// Surgery along one chord at the word level: the arc strictly between
    /// its endpoints is reversed, the chord is removed, and every chord with
    /// exactly one endpoint in that arc changes sign.
    ///
    /// On interlacement matrices this is the GF(2) Schur complement at the
    /// chord when the chord is negative.
    pub fn surgery_along(&self, label: Label) -> Result<FramedChordDiagram, DiagramError> {
        let (a, b) = self.endpoints_of(label).ok_or(DiagramError::UnknownLabel(label))?;
        let mut in_arc: HashMap<Label, usize> = HashMap::new();
        for &l in &self.word[a + 1..b] {
            *in_arc.entry(l).or_default() += 1;
        }
        let mut word = self.word.clone();
        word[a + 1..b].reverse();
        word.retain(|&l| l != label);
        let mut signs = self.signs.clone();
        signs.remove(&label);
        for (l, n) in in_arc {
            if n == 1 {
                let s = signs.get_mut(&l).expect("label in word has a sign");
                *s = s.flip();
            }
        }
        Ok(FramedChordDiagram { word, signs })
    }

    /// Cyclic rotation so the word starts at position `by`.
    pub fn rotate(&self, by: usize) -> FramedChordDiagram {
        let mut word = self.word.clone();
        if !word.is_empty() {
            let by = by % word.len();
            word.rotate_left(by);
        }
        FramedChordDiagram { word, signs: self.signs.clone() }
    }

    /// Same diagram with labels renamed `1..=k` in order of first occurrence.
    pub fn relabel_by_occurrence(&self) -> FramedChordDiagram {
        let mut map: HashMap<Label, Label> = HashMap::new();
        let mut word = Vec::with_capacity(self.word.len());
        for &l in &self.word {
            let next = map.len() as Label + 1;
            word.push(*map.entry(l).or_insert(next));
        }
        let signs = self.signs.iter().map(|(l, s)| (map[l], *s)).collect();
        FramedChordDiagram { word, signs }
    }

    /// Word rotated to start at the first endpoint of the smallest label.
    pub fn canonical_word(&self) -> Vec<Label> {
        match self.signs.keys().next() {
            None => Vec::new(),
            Some(&min) => {
                let start = self.word.iter().position(|&l| l == min).unwrap();
                let mut w = self.word.clone();
                w.rotate_left(start);
                w
            }
        }
    }

    pub fn canonical(&self) -> FramedChordDiagram {
        FramedChordDiagram { word: self.canonical_word(), signs: self.signs.clone() }
    }
}

impl fmt::Display for FramedChordDiagram {
    /// Canonical text: rotated word, ` ; `, then `label:sign` in ascending
    /// label order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word: Vec<String> = self.canonical_word().iter().map(|l| l.to_string()).collect();
        let signs: Vec<String> = self.signs.iter().map(|(l, s)| format!("{l}:{}", s.symbol())).collect();
        match (word.is_empty(), signs.is_empty()) {
            (true, _) => f.write_str(";"),
            _ => write!(f, "{} ; {}", word.join(" "), signs.join(" ")),
        }
    }
}

impl fmt::Debug for FramedChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word: Vec<String> = self.word.iter().map(|l| l.to_string()).collect();
        let signs: String = self.signs.values().map(|s| s.symbol()).collect();
        write!(f, "[{} ; {}]", word.join(" "), signs)
    }
}

fn parse_label(tok: &str) -> Result<Label, DiagramError> {
    if tok.is_empty() {
        return Err(DiagramError::EmptyToken);
    }
    tok.parse().map_err(|_| DiagramError::BadToken(tok.to_string()))
}

fn parse_sign(tok: &str) -> Result<Sign, DiagramError> {
    match tok {
        "+" | "+1" => Ok(Sign::Pos),
        "-" | "-1" => Ok(Sign::Neg),
        "" => Err(DiagramError::EmptyToken),
        _ => Err(DiagramError::BadToken(tok.to_string())),
    }
}

impl FromStr for FramedChordDiagram {
    type Err = DiagramError;

    /// Accepts `word ; signs` where `signs` is either a list of `label:+` /
    /// `label:-` entries or one compact string like `+-+` read in ascending
    /// label order. Unlisted chords are positive.
    fn from_str(text: &str) -> Result<Self, DiagramError> {
        let mut parts = text.split(';');
        let word_part = parts.next().unwrap_or("");
        let sign_part = parts.next().unwrap_or("");
        if parts.next().is_some() {
            return Err(DiagramError::ExtraSeparator);
        }
        let word = word_part.split_whitespace().map(parse_label).collect::<Result<Vec<_>, _>>()?;
        let mut d = FramedChordDiagram::from_word(word)?;
        let tokens: Vec<&str> = sign_part.split_whitespace().collect();
        let compact = tokens.len() == 1 && tokens[0].chars().all(|c| c == '+' || c == '-');
        if compact {
            let given = tokens[0];
            if given.len() != d.k() {
                return Err(DiagramError::SignCount { given: given.to_string(), len: given.len(), k: d.k() });
            }
            for (s, c) in d.signs.values_mut().zip(given.chars()) {
                *s = if c == '-' { Sign::Neg } else { Sign::Pos };
            }
            return Ok(d);
        }
        for tok in tokens {
            let (l, s) = tok.split_once(':').ok_or_else(|| DiagramError::BadToken(tok.to_string()))?;
            let label = parse_label(l)?;
            let sign = match parse_sign(s) {
                Err(DiagramError::EmptyToken) => return Err(DiagramError::MissingSign(label)),
                other => other?,
            };
            match d.signs.get_mut(&label) {
                Some(slot) => *slot = sign,
                None => return Err(DiagramError::UnknownSignLabel(label)),
            }
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(s: &str) -> FramedChordDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let d = cd("1 2 1 2 ; 1:+ 2:+");
        assert_eq!(d.k(), 2);
        assert!(d.is_all_positive());
        let n = cd("1 1 ; 1:-");
        assert_eq!(n.sign(1), Some(Sign::Neg));
        assert_eq!(
            FramedChordDiagram::parse("1 2 1 ; 1:+"),
            Err(DiagramError::BadOccurrence { label: 2, count: 1 })
        );
    }

    #[test]
    fn parse_compact_and_default_signs() {
        assert_eq!(cd("1 2 1 2 ; ++"), cd("1 2 1 2"));
        assert_eq!(cd("1 1 2 2 ; -+"), cd("1 1 2 2 ; 1:-"));
        assert_eq!(cd(";"), FramedChordDiagram::empty());
        assert_eq!(cd(""), FramedChordDiagram::empty());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(FramedChordDiagram::parse("1 1 ; 1:"), Err(DiagramError::MissingSign(1)));
        assert_eq!(FramedChordDiagram::parse("1 1 ; :+"), Err(DiagramError::EmptyToken));
        assert_eq!(FramedChordDiagram::parse("1 1 ; 2:+"), Err(DiagramError::UnknownSignLabel(2)));
        assert!(matches!(FramedChordDiagram::parse("1 1 ; +-"), Err(DiagramError::SignCount { .. })));
        assert!(matches!(FramedChordDiagram::parse("1 x 1 x"), Err(DiagramError::BadToken(_))));
        assert_eq!(FramedChordDiagram::parse("1 1 ; + ; +"), Err(DiagramError::ExtraSeparator));
        assert!(matches!(FramedChordDiagram::parse("1 1 ; 1=+"), Err(DiagramError::BadToken(_))));
    }

    #[test]
    fn serialization_is_canonical() {
        assert_eq!(cd("2 1 2 1 ; 2:-").to_string(), "1 2 1 2 ; 1:+ 2:-");
        assert_eq!(cd("1 1 ; -").to_string(), "1 1 ; 1:-");
        assert_eq!(FramedChordDiagram::empty().to_string(), ";");
        for t in ["3 1 2 3 1 2 ; 2:-", "1 2 1 2", "5 5 ; +"] {
            let d = cd(t);
            assert_eq!(cd(&d.to_string()), d.canonical());
            assert_eq!(cd(&d.to_string()).to_string(), d.to_string());
        }
    }

    #[test]
    fn interlacement_examples() {
        assert_eq!(
            cd("1 2 1 2 ; ++").interlacement_matrix(),
            Gf2Matrix::from_rows(&[[0u8, 1], [1, 0]]).unwrap()
        );
        assert_eq!(cd("1 1 2 2 ; ++").interlacement_matrix(), Gf2Matrix::zeros(2));
        assert_eq!(cd("1 1 ; 1:-").interlacement_matrix(), Gf2Matrix::from_rows(&[[1u8]]).unwrap());
        assert!(cd("1 2 3 1 3 2 ; 2:-").interlacement_matrix().is_symmetric());
    }

    #[test]
    fn d_diagram_examples() {
        let w = cd("1 2 1 2 ; ++").is_d_diagram().unwrap();
        assert_eq!(w, Bipartition { left: vec![1], right: vec![2] });
        assert!(cd("1 2 3 1 2 3 ; +++").is_d_diagram().is_none());
        assert!(cd("1 1 ; 1:-").is_d_diagram().is_none());
        assert!(FramedChordDiagram::empty().is_d_diagram().is_some());
    }

    #[test]
    fn connected_sum_examples() {
        assert_eq!(cd("1 1 ; +").connected_sum(&cd("2 2 ; +")), cd("1 1 2 2 ; ++"));
        let d = cd("1 2 1 2 ; 2:-");
        assert_eq!(FramedChordDiagram::empty().connected_sum(&d), d);
        assert_eq!(cd("1 2 1 2").connected_sum(&cd("3 3")).word(), &[1, 2, 1, 2, 3, 3]);
        // clashing labels are shifted
        assert_eq!(cd("1 1").connected_sum(&cd("1 1 ; -")), cd("1 1 2 2 ; 2:-"));
    }

    #[test]
    fn connected_sum_matrix_is_block_diagonal() {
        let a = cd("1 2 3 1 2 3 ; 2:-");
        let b = cd("1 2 1 2 ; 1:-");
        let s = a.connected_sum(&b);
        let (ma, mb, ms) = (a.interlacement_matrix(), b.interlacement_matrix(), s.interlacement_matrix());
        for i in 0..5 {
            for j in 0..5 {
                let want = match (i < 3, j < 3) {
                    (true, true) => ma.get(i, j),
                    (false, false) => mb.get(i - 3, j - 3),
                    _ => false,
                };
                assert_eq!(ms.get(i, j), want);
            }
        }
    }

    #[test]
    fn subdiagram_examples() {
        let d = cd("1 2 3 1 2 3");
        assert_eq!(d.subdiagram(&[1, 2]).unwrap(), cd("1 2 1 2"));
        assert_eq!(d.subdiagram(&[]).unwrap(), FramedChordDiagram::empty());
        assert_eq!(d.subdiagram(&[1, 2, 3]).unwrap(), d);
        assert_eq!(d.subdiagram(&[4]), Err(DiagramError::UnknownLabel(4)));
    }

    #[test]
    fn interval_mutation_examples() {
        let d = cd("1 2 1 2 3 3");
        assert_eq!(d.interval_mutation(4, 6).unwrap(), d);
        let e = cd("1 1 2 3 2 3");
        assert_eq!(e.interval_mutation(2, 6).unwrap().word(), &[1, 1, 3, 2, 3, 2]);
        assert_eq!(d.interval_mutation(1, 3), Err(DiagramError::StraddlingChord { label: 2 }));
        assert!(matches!(d.interval_mutation(3, 9), Err(DiagramError::BadArc { .. })));
    }

    #[test]
    fn surgery_along_reverses_and_flips() {
        // 1 [2 3 2 4] 1 4 3 : reversed arc, 3 and 4 have one end inside
        let d = cd("1 2 3 2 4 1 4 3 ; 1:-");
        let s = d.surgery_along(1).unwrap();
        assert_eq!(s.word(), &[4, 2, 3, 2, 4, 3]);
        assert_eq!(s.sign(2), Some(Sign::Pos));
        assert_eq!(s.sign(3), Some(Sign::Neg));
        assert_eq!(s.sign(4), Some(Sign::Neg));
        assert_eq!(d.surgery_along(9), Err(DiagramError::UnknownLabel(9)));
    }

    #[test]
    fn relabel_and_rotate() {
        let d = cd("7 3 7 3 ; 3:-");
        let r = d.relabel_by_occurrence();
        assert_eq!(r.word(), &[1, 2, 1, 2]);
        assert_eq!(r.sign(2), Some(Sign::Neg));
        assert_eq!(d.rotate(1).word(), &[3, 7, 3, 7]);
    }
}
