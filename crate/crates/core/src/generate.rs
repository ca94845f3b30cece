//! Exhaustive and seeded random generators for diagrams and graphs.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::chord_diagram::{FramedChordDiagram, Label, Sign};
use crate::framed_graph::{plane_point, FramedFourGraph, PlaneGraph};

/// Word rotated by `by` and relabelled by first occurrence, with the signs
/// listed in the new label order.
fn rotation_key(word: &[Label], signs: &BTreeMap<Label, Sign>, by: usize) -> (Vec<Label>, Vec<bool>) {
    let n = word.len();
    let mut map: BTreeMap<Label, Label> = BTreeMap::new();
    let mut out = Vec::with_capacity(n);
    let mut neg = Vec::new();
    for i in 0..n {
        let l = word[(i + by) % n];
        let next = map.len() as Label + 1;
        let new = *map.entry(l).or_insert_with(|| {
            neg.push(signs.get(&l).is_some_and(|s| s.is_neg()));
            next
        });
        out.push(new);
    }
    (out, neg)
}

/// Smallest relabelled rotation; equal for diagrams that differ by rotation
/// and renaming of chords.
pub fn rotation_class(d: &FramedChordDiagram) -> (Vec<Label>, Vec<bool>) {
    let n = d.word().len().max(1);
    (0..n).map(|r| rotation_key(d.word(), d.signs(), r)).min().unwrap()
}

/// Double-occurrence words on `1..=k` labelled by first occurrence, one per
/// class under rotation.
pub fn all_words(k: usize) -> Vec<Vec<Label>> {
    let mut words = Vec::new();
    let mut word = vec![0 as Label; 2 * k];
    fill(&mut word, 0, 1, &mut words);
    let none = BTreeMap::new();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for w in words {
        let n = w.len().max(1);
        let key = (0..n).map(|r| rotation_key(&w, &none, r).0).min().unwrap();
        if seen.insert(key.clone()) {
            out.push(key);
        }
    }
    out.sort();
    out
}

fn fill(word: &mut [Label], from: usize, next: Label, out: &mut Vec<Vec<Label>>) {
    let Some(first) = (from..word.len()).find(|&i| word[i] == 0) else {
        out.push(word.to_vec());
        return;
    };
    word[first] = next;
    for second in first + 1..word.len() {
        if word[second] == 0 {
            word[second] = next;
            fill(word, first + 1, next + 1, out);
            word[second] = 0;
        }
    }
    word[first] = 0;
}

/// Every framed diagram with `k` chords, one per rotation class.
pub fn all_diagrams(k: usize) -> Vec<FramedChordDiagram> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for w in all_words(k) {
        for pattern in 0..1u32 << k {
            let negative: Vec<Label> = (0..k as Label).filter(|i| pattern >> i & 1 == 1).map(|i| i + 1).collect();
            let d = FramedChordDiagram::with_negatives(w.clone(), &negative).expect("valid word");
            if seen.insert(rotation_class(&d)) {
                out.push(d);
            }
        }
    }
    out
}

pub fn all_positive_diagrams(k: usize) -> Vec<FramedChordDiagram> {
    all_words(k).into_iter().map(|w| FramedChordDiagram::from_word(w).expect("valid word")).collect()
}

/// Uniform random word with `k` chords; each chord is negative with
/// probability `p_negative`.
pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, k: usize, p_negative: f64) -> FramedChordDiagram {
    let mut word: Vec<Label> = (1..=k as Label).flat_map(|l| [l, l]).collect();
    word.shuffle(rng);
    let negative: Vec<Label> = (1..=k as Label).filter(|_| rng.gen_bool(p_negative)).collect();
    FramedChordDiagram::with_negatives(word, &negative).expect("valid word").relabel_by_occurrence()
}

/// Random connected framed 4-graph: a uniform matching of the half-edges,
/// with components then joined by exchanging edge ends.
pub fn random_framed_graph<R: Rng + ?Sized>(rng: &mut R, vertices: usize) -> FramedFourGraph {
    let n = 4 * vertices;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut mate = vec![0; n];
    for pair in order.chunks(2) {
        mate[pair[0]] = pair[1];
        mate[pair[1]] = pair[0];
    }
    loop {
        let comp = components(&mate, vertices);
        let Some(v) = (0..vertices).find(|&v| comp[v] != comp[0]) else { break };
        // edges (0, mate 0) and (4v, mate 4v) become (0, 4v), (mate 0, mate 4v)
        let (a, b) = (0, 4 * v);
        let (ma, mb) = (mate[a], mate[b]);
        mate[a] = b;
        mate[b] = a;
        mate[ma] = mb;
        mate[mb] = ma;
    }
    FramedFourGraph::from_mates(mate).expect("connected perfect matching")
}

fn components(mate: &[usize], vertices: usize) -> Vec<usize> {
    let mut comp = vec![usize::MAX; vertices];
    for root in 0..vertices {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = root;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for h in 4 * v..4 * v + 4 {
                let w = mate[h] / 4;
                if comp[w] == usize::MAX {
                    comp[w] = root;
                    stack.push(w);
                }
            }
        }
    }
    comp
}

/// Random connected plane graph with `edges` edges, grown from a point by
/// adding pendant edges and edges across a face (loops and multiple edges
/// included).
pub fn random_plane_graph<R: Rng + ?Sized>(rng: &mut R, edges: usize) -> PlaneGraph {
    let mut p = plane_point();
    for _ in 0..edges {
        let darts = 2 * p.edge_count();
        p = if darts == 0 || rng.gen_bool(0.4) {
            let (vertex, after) = if darts == 0 {
                (0, None)
            } else {
                let d = rng.gen_range(0..darts);
                (0, Some(d))
            };
            p.with_leaf_after(vertex, after)
        } else {
            let faces = p.face_corners();
            let face = &faces[rng.gen_range(0..faces.len())];
            let x = face[rng.gen_range(0..face.len())];
            let y = face[rng.gen_range(0..face.len())];
            p.with_edge_after(x, y)
        }
        .expect("growth keeps the graph plane");
    }
    p
}
