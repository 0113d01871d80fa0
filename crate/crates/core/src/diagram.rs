//! Semigroup diagrams in a canonical layered form.
//!
//! A diagram over a presentation is a planar rewrite history from a top word
//! to a bottom word; cells are single relation applications. Two histories
//! that differ only in the order of independent (disjoint-support) cells are
//! the same diagram. We store the left-greedy layering — every cell sits in
//! the earliest layer where something from the previous layer feeds it — so
//! structural equality of the encoding is equality of diagrams.
//!
//! * [`Diagram::concatenate`] stacks diagrams vertically (unreduced),
//!   [`Diagram::sum`] side by side, [`Diagram::invert`] mirrors.
//! * A dipole is a cell immediately undone by its mirror image;
//!   [`Diagram::reduce`] cancels dipoles until none remain. The result is
//!   independent of cancellation order, so reduced diagrams with
//!   concatenate-then-reduce form a groupoid, and the spherical ones over a
//!   fixed word form the diagram group of that word.
//! * Prefix order: `d1` is a prefix of `d2` when `d2 = d1 . q` without
//!   cancellation. Reduced diagrams over a word are the vertices of the
//!   Farley complex built in [`crate::farley`]; the prefix machinery here
//!   (quotients, meets, pivots) is its geometry.

use serde_json::{json, Value};
use thiserror::Error;

use crate::presentation::{Direction, Presentation, Word};
use crate::rewrite::one_step_rewrites;

/// One cell, placed at `offset` within the word it rewrites.
///
/// Inside a [`Diagram`] layer the offset is relative to the layer's top word.
/// In a flat derivation (see [`Diagram::flatten`]) offsets are sequential:
/// each is relative to the word produced by the preceding atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlacedAtom {
    pub offset: usize,
    pub relation: usize,
    pub direction: Direction,
}

impl PlacedAtom {
    pub fn new(offset: usize, relation: usize, direction: Direction) -> Self {
        PlacedAtom {
            offset,
            relation,
            direction,
        }
    }
}

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("relation {relation} does not apply at offset {offset} of {word:?}")]
    Misapplied {
        relation: usize,
        offset: usize,
        word: String,
    },
    #[error("unknown relation index {0}")]
    UnknownRelation(usize),
    #[error("boundary mismatch: {left:?} vs {right:?}")]
    BoundaryMismatch { left: String, right: String },
    #[error("malformed diagram data: {0}")]
    Malformed(String),
}

/// A diagram in canonical (left-greedy) layered form.
///
/// Invariants: `words.len() == layers.len() + 1`; layer `j` is a non-empty,
/// offset-sorted family of disjoint cells rewriting `words[j]` into
/// `words[j+1]`; for `j >= 1` every cell of layer `j` overlaps the output of
/// some cell of layer `j-1`. All constructors preserve this, so `==` on the
/// encoding is diagram equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    words: Vec<Word>,
    layers: Vec<Vec<PlacedAtom>>,
}

fn side_lens(p: &Presentation, a: &PlacedAtom) -> (usize, usize) {
    let r = &p.relations[a.relation];
    (
        r.from_side(a.direction).len(),
        r.to_side(a.direction).len(),
    )
}

fn apply_layer(p: &Presentation, w: &Word, layer: &[PlacedAtom]) -> Word {
    let mut v = Vec::new();
    let mut pos = 0;
    for a in layer {
        let rel = &p.relations[a.relation];
        v.extend_from_slice(&w.letters()[pos..a.offset]);
        v.extend_from_slice(rel.to_side(a.direction).letters());
        pos = a.offset + rel.from_side(a.direction).len();
    }
    v.extend_from_slice(&w.letters()[pos..]);
    Word(v)
}

/// Output intervals of a layer's cells, in the layer's bottom word.
fn layer_residues(p: &Presentation, layer: &[PlacedAtom]) -> Vec<(isize, isize)> {
    let mut shift = 0isize;
    let mut out = Vec::with_capacity(layer.len());
    for a in layer {
        let (f, t) = side_lens(p, a);
        let s = a.offset as isize + shift;
        out.push((s, s + t as isize));
        shift += t as isize - f as isize;
    }
    out
}

impl Diagram {
    /// The trivial diagram on `w`: no cells, top = bottom = `w`.
    pub fn identity(w: Word) -> Self {
        Diagram {
            words: vec![w],
            layers: Vec::new(),
        }
    }

    /// Single-cell diagram applying `atom` to `w`.
    pub fn atom(p: &Presentation, w: &Word, atom: PlacedAtom) -> Result<Self, DiagramError> {
        let mut d = Diagram::identity(w.clone());
        d.push_atom(p, atom)?;
        Ok(d)
    }

    /// Replay a sequential derivation from `top`; offsets of each atom refer
    /// to the word produced by the atoms before it.
    pub fn from_derivation(
        p: &Presentation,
        top: &Word,
        atoms: &[PlacedAtom],
    ) -> Result<Self, DiagramError> {
        let mut d = Diagram::identity(top.clone());
        for &a in atoms {
            d.push_atom(p, a)?;
        }
        Ok(d)
    }

    /// Internal unchecked variant of [`Diagram::from_derivation`].
    pub(crate) fn from_flat(p: &Presentation, top: Word, flat: Vec<PlacedAtom>) -> Self {
        let mut d = Diagram::identity(top);
        for a in flat {
            d.push_atom(p, a)
                .expect("flat derivation must replay cleanly");
        }
        d
    }

    pub fn top(&self) -> &Word {
        &self.words[0]
    }

    pub fn bottom(&self) -> &Word {
        self.words.last().unwrap()
    }

    pub fn is_spherical(&self) -> bool {
        self.top() == self.bottom()
    }

    pub fn cells(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[Vec<PlacedAtom>] {
        &self.layers
    }

    /// Cells of the first layer; exactly the single-cell prefixes of a
    /// reduced diagram.
    pub fn first_layer(&self) -> &[PlacedAtom] {
        self.layers.first().map(Vec::as_slice).unwrap_or(&[])
    }

    /// The word after each layer, starting with the top.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Append one cell at the bottom, re-canonicalizing incrementally: the
    /// cell floats up past every layer whose outputs it does not touch, then
    /// joins the first layer it depends on.
    pub fn push_atom(&mut self, p: &Presentation, atom: PlacedAtom) -> Result<(), DiagramError> {
        let rel = p
            .relations
            .get(atom.relation)
            .ok_or(DiagramError::UnknownRelation(atom.relation))?;
        let from = rel.from_side(atom.direction).clone();
        let to = rel.to_side(atom.direction).clone();
        if !self.bottom().occurs_at(atom.offset, &from) {
            return Err(DiagramError::Misapplied {
                relation: atom.relation,
                offset: atom.offset,
                word: p.render_word(self.bottom()),
            });
        }
        let flen = from.len();
        let delta = to.len() as isize - flen as isize;
        let nl = self.layers.len();

        // Support start of the new cell at each level it floats through;
        // t_stack[i] is the offset at level nl - i.
        let mut t_stack = vec![atom.offset];
        let mut t = atom.offset;
        let mut level = nl;
        while level > 0 {
            let mut blocked = false;
            let mut left_delta = 0isize;
            let mut shift = 0isize;
            for a in &self.layers[level - 1] {
                let (f, tl) = side_lens(p, a);
                let rs = a.offset as isize + shift;
                let re = rs + tl as isize;
                shift += tl as isize - f as isize;
                let ts = t as isize;
                if rs < ts + flen as isize && ts < re {
                    blocked = true;
                    break;
                }
                if re <= ts {
                    left_delta += tl as isize - f as isize;
                }
            }
            if blocked {
                break;
            }
            t = (t as isize - left_delta) as usize;
            level -= 1;
            t_stack.push(t);
        }

        let new_atom = PlacedAtom::new(t, atom.relation, atom.direction);
        if level == nl {
            let nb = self.words[nl].splice(atom.offset, &from, &to);
            self.layers.push(vec![new_atom]);
            self.words.push(nb);
        } else {
            // Words below the insertion level gain the new cell's output.
            for k in (level + 1)..=nl {
                let tk = t_stack[nl - k];
                let spliced = self.words[k].splice(tk, &from, &to);
                self.words[k] = spliced;
            }
            let lay = &mut self.layers[level];
            let pos = lay.partition_point(|a| a.offset < t);
            lay.insert(pos, new_atom);
            // Cells in lower layers sitting right of the splice point shift.
            for j in (level + 1)..nl {
                let tj = t_stack[nl - j];
                for a in &mut self.layers[j] {
                    if a.offset >= tj + flen {
                        a.offset = (a.offset as isize + delta) as usize;
                    }
                }
            }
        }
        debug_assert_eq!(self.validate(p), Ok(()));
        Ok(())
    }

    /// Full invariant check; used by tests and debug assertions.
    pub fn validate(&self, p: &Presentation) -> Result<(), String> {
        if self.words.len() != self.layers.len() + 1 {
            return Err("word chain length mismatch".to_string());
        }
        for (j, layer) in self.layers.iter().enumerate() {
            if layer.is_empty() {
                return Err(format!("layer {j} is empty"));
            }
            let mut prev_end = 0usize;
            for a in layer {
                let rel = p
                    .relations
                    .get(a.relation)
                    .ok_or_else(|| format!("layer {j}: unknown relation {}", a.relation))?;
                let from = rel.from_side(a.direction);
                if a.offset < prev_end {
                    return Err(format!("layer {j}: cells overlap or are unordered"));
                }
                if !self.words[j].occurs_at(a.offset, from) {
                    return Err(format!("layer {j}: cell does not match its word"));
                }
                prev_end = a.offset + from.len();
            }
            if apply_layer(p, &self.words[j], layer) != self.words[j + 1] {
                return Err(format!("layer {j}: output word mismatch"));
            }
            if j > 0 {
                let residues = layer_residues(p, &self.layers[j - 1]);
                for a in layer {
                    let (f, _) = side_lens(p, a);
                    let s = a.offset as isize;
                    let e = s + f as isize;
                    if !residues.iter().any(|&(rs, re)| rs < e && s < re) {
                        return Err(format!("layer {j}: cell not anchored on layer {}", j - 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// The cells as one sequential derivation: layers top-down, left to
    /// right, offsets adjusted to apply one after another.
    pub fn flatten(&self, p: &Presentation) -> Vec<PlacedAtom> {
        let mut out = Vec::with_capacity(self.cells());
        for layer in &self.layers {
            let mut shift = 0isize;
            for a in layer {
                let (f, t) = side_lens(p, a);
                out.push(PlacedAtom::new(
                    (a.offset as isize + shift) as usize,
                    a.relation,
                    a.direction,
                ));
                shift += t as isize - f as isize;
            }
        }
        out
    }

    /// Diagram formed by the first `k` cells of the flattened derivation.
    pub fn flat_prefix(&self, p: &Presentation, k: usize) -> Diagram {
        let flat = self.flatten(p);
        Diagram::from_flat(p, self.top().clone(), flat[..k].to_vec())
    }

    /// Vertical stacking; requires `self.bottom() == other.top()`. No dipole
    /// cancellation is performed.
    pub fn concatenate(&self, p: &Presentation, other: &Diagram) -> Result<Diagram, DiagramError> {
        if self.bottom() != other.top() {
            return Err(DiagramError::BoundaryMismatch {
                left: p.render_word(self.bottom()),
                right: p.render_word(other.top()),
            });
        }
        let mut d = self.clone();
        for a in other.flatten(p) {
            d.push_atom(p, a)?;
        }
        Ok(d)
    }

    /// Groupoid composition: concatenate, then cancel dipoles.
    pub fn compose_reduced(
        &self,
        p: &Presentation,
        other: &Diagram,
    ) -> Result<Diagram, DiagramError> {
        Ok(self.concatenate(p, other)?.reduce(p))
    }

    /// Horizontal composition: `self` on the left of `other`.
    pub fn sum(&self, p: &Presentation, other: &Diagram) -> Diagram {
        let top = self.top().concat(other.top());
        let mut d = Diagram::identity(top);
        for a in self.flatten(p) {
            d.push_atom(p, a).expect("left summand replays");
        }
        let off = self.bottom().len();
        for a in other.flatten(p) {
            d.push_atom(p, PlacedAtom::new(a.offset + off, a.relation, a.direction))
                .expect("right summand replays");
        }
        d
    }

    /// Mirror image: swaps top and bottom, flips every cell.
    pub fn invert(&self, p: &Presentation) -> Diagram {
        let inv: Vec<PlacedAtom> = self
            .flatten(p)
            .iter()
            .rev()
            .map(|a| PlacedAtom::new(a.offset, a.relation, a.direction.flip()))
            .collect();
        Diagram::from_flat(p, self.bottom().clone(), inv)
    }

    /// All dipoles, as pairs of indices into the flattened derivation: the
    /// first cell's output is consumed, untouched and in full, by the second
    /// cell applying the same relation backwards.
    pub fn all_dipoles(&self, p: &Presentation) -> Vec<(usize, usize)> {
        flat_dipoles(p, &self.flatten(p))
    }

    pub fn is_reduced(&self, p: &Presentation) -> bool {
        self.all_dipoles(p).is_empty()
    }

    /// Cancel dipoles until none remain, choosing the first one each round.
    /// The normal form does not depend on the choice; see
    /// [`Diagram::reduce_with`] for exercising other orders.
    pub fn reduce(&self, p: &Presentation) -> Diagram {
        self.reduce_with(p, |_| 0)
    }

    /// Dipole cancellation with an explicit choice function: `pick` receives
    /// the current dipole list and returns the index of the one to cancel.
    pub fn reduce_with(
        &self,
        p: &Presentation,
        mut pick: impl FnMut(&[(usize, usize)]) -> usize,
    ) -> Diagram {
        let mut flat = self.flatten(p);
        loop {
            let dips = flat_dipoles(p, &flat);
            if dips.is_empty() {
                break;
            }
            let choice = pick(&dips).min(dips.len() - 1);
            let (s, t) = dips[choice];
            flat_remove_dipole(p, &mut flat, s, t);
        }
        Diagram::from_flat(p, self.top().clone(), flat)
    }

    /// Cells whose output reaches the bottom untouched, as
    /// `(flat index, offset of the output in the bottom word)`.
    pub fn bottom_maximal_atoms(&self, p: &Presentation) -> Vec<(usize, usize)> {
        let flat = self.flatten(p);
        let mut out = Vec::new();
        for s in 0..flat.len() {
            let (_, ta) = side_lens(p, &flat[s]);
            let mut start = flat[s].offset as isize;
            let mut end = start + ta as isize;
            let mut alive = true;
            for b in &flat[s + 1..] {
                let (fb, tb) = side_lens(p, b);
                let bs = b.offset as isize;
                let be = bs + fb as isize;
                if bs < end && start < be {
                    alive = false;
                    break;
                }
                if be <= start {
                    let d = tb as isize - fb as isize;
                    start += d;
                    end += d;
                }
            }
            if alive {
                out.push((s, start as usize));
            }
        }
        out
    }

    /// Split off the thin bottom layer: the diagram minus its bottom-maximal
    /// cells, plus those cells re-addressed against the stem's bottom word.
    /// `self = stem . (sum of the returned cells)`.
    pub fn stem_and_thin_layer(&self, p: &Presentation) -> (Diagram, Vec<PlacedAtom>) {
        let flat = self.flatten(p);
        let maximal = self.bottom_maximal_atoms(p);
        let mut work = flat.clone();
        for &(idx, _) in maximal.iter().rev() {
            let ok = remove_flat_atom(p, &mut work, idx);
            debug_assert!(ok, "bottom-maximal cell must be removable");
        }
        let stem = Diagram::from_flat(p, self.top().clone(), work);
        let mut by_pos: Vec<(usize, usize)> = maximal.iter().map(|&(i, o)| (o, i)).collect();
        by_pos.sort_unstable();
        let mut acc = 0isize;
        let mut thin = Vec::with_capacity(by_pos.len());
        for (o, i) in by_pos {
            let a = flat[i];
            let (f, t) = side_lens(p, &a);
            thin.push(PlacedAtom::new(
                (o as isize - acc) as usize,
                a.relation,
                a.direction,
            ));
            acc += t as isize - f as isize;
        }
        (stem, thin)
    }

    /// A diagram is minimal when exactly one cell touches the bottom; that
    /// cell is its pivot.
    pub fn is_minimal(&self, p: &Presentation) -> bool {
        self.cells() > 0 && self.bottom_maximal_atoms(p).len() == 1
    }

    /// For a minimal diagram: the stem (everything above the pivot) and the
    /// pivot cell addressed against the stem's bottom word.
    pub fn split_pivot(&self, p: &Presentation) -> Option<(Diagram, PlacedAtom)> {
        if !self.is_minimal(p) {
            return None;
        }
        let (stem, thin) = self.stem_and_thin_layer(p);
        debug_assert_eq!(thin.len(), 1);
        Some((stem, thin[0]))
    }

    /// Smallest prefix of `self . atom` containing the new cell: the
    /// transitive closure of the cells feeding it. Requires that the atom
    /// does not cancel against `self` (the extension is itself reduced).
    pub fn extension_closure(&self, p: &Presentation, atom: PlacedAtom) -> Diagram {
        let mut flat = self.flatten(p);
        flat.push(atom);
        debug_assert!(flat_dipoles(p, &flat).is_empty());
        loop {
            let mut removed = false;
            for i in (0..flat.len() - 1).rev() {
                if remove_flat_atom(p, &mut flat, i) {
                    removed = true;
                    break;
                }
            }
            if !removed {
                break;
            }
        }
        Diagram::from_flat(p, self.top().clone(), flat)
    }

    /// `reduce(self^{-1} . other)` for diagrams with a common top word.
    pub fn reduced_quotient(
        &self,
        p: &Presentation,
        other: &Diagram,
    ) -> Result<Diagram, DiagramError> {
        if self.top() != other.top() {
            return Err(DiagramError::BoundaryMismatch {
                left: p.render_word(self.top()),
                right: p.render_word(other.top()),
            });
        }
        Ok(self.invert(p).concatenate(p, other)?.reduce(p))
    }

    /// Exact quotient when `self` is a prefix of `other`: the `q` with
    /// `other = self . q` and no cancellation. Both diagrams must be reduced
    /// with a common top.
    pub fn left_quotient(&self, p: &Presentation, other: &Diagram) -> Option<Diagram> {
        let q = self.reduced_quotient(p, other).ok()?;
        if other.cells() == self.cells() + q.cells() {
            Some(q)
        } else {
            None
        }
    }

    pub fn is_prefix_of(&self, p: &Presentation, other: &Diagram) -> bool {
        self.left_quotient(p, other).is_some()
    }

    /// Greatest common prefix of two reduced diagrams with the same top.
    pub fn prefix_meet(p: &Presentation, d1: &Diagram, d2: &Diagram) -> Diagram {
        debug_assert_eq!(d1.top(), d2.top());
        let mut m = Diagram::identity(d1.top().clone());
        loop {
            let q1 = m.left_quotient(p, d1).expect("meet stays a prefix");
            let q2 = m.left_quotient(p, d2).expect("meet stays a prefix");
            let f2: std::collections::BTreeSet<PlacedAtom> =
                q2.first_layer().iter().copied().collect();
            let common: Vec<PlacedAtom> = q1
                .first_layer()
                .iter()
                .filter(|a| f2.contains(a))
                .copied()
                .collect();
            if common.is_empty() {
                return m;
            }
            // Disjoint cells of one layer, pushed left to right with the
            // accumulated length change.
            let mut shift = 0isize;
            for a in common {
                let (f, t) = side_lens(p, &a);
                m.push_atom(
                    p,
                    PlacedAtom::new((a.offset as isize + shift) as usize, a.relation, a.direction),
                )
                .expect("common prefix cell applies");
                shift += t as isize - f as isize;
            }
        }
    }

    /// Cut the diagram along a vertical line `cut` letters into the top
    /// word; `None` when some cell straddles the line.
    pub fn split_sum(&self, p: &Presentation, cut: usize) -> Option<(Diagram, Diagram)> {
        if cut > self.top().len() {
            return None;
        }
        let mut c = cut as isize;
        let mut left = Vec::new();
        let mut right = Vec::new();
        for a in self.flatten(p) {
            let (f, t) = side_lens(p, &a);
            let s = a.offset as isize;
            if s + f as isize <= c {
                left.push(a);
                c += t as isize - f as isize;
            } else if s >= c {
                right.push(PlacedAtom::new((s - c) as usize, a.relation, a.direction));
            } else {
                return None;
            }
        }
        let lt = self.top().slice(0, cut);
        let rt = self.top().slice(cut, self.top().len());
        Some((
            Diagram::from_flat(p, lt, left),
            Diagram::from_flat(p, rt, right),
        ))
    }

    pub fn to_json(&self, p: &Presentation) -> Value {
        json!({
            "top": p.render_word(self.top()),
            "bottom": p.render_word(self.bottom()),
            "cells": self.cells(),
            "atoms": self
                .flatten(p)
                .iter()
                .map(|a| json!([a.offset, a.relation, a.direction.as_str()]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(p: &Presentation, v: &Value) -> Result<Diagram, DiagramError> {
        let top_text = v
            .get("top")
            .and_then(Value::as_str)
            .ok_or_else(|| DiagramError::Malformed("missing top".to_string()))?;
        let top = p
            .parse_word(top_text)
            .map_err(|e| DiagramError::Malformed(e.to_string()))?;
        let atoms_v = v
            .get("atoms")
            .and_then(Value::as_array)
            .ok_or_else(|| DiagramError::Malformed("missing atoms".to_string()))?;
        let mut atoms = Vec::with_capacity(atoms_v.len());
        for item in atoms_v {
            let triple = item
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| DiagramError::Malformed("atom must be [offset, relation, direction]".to_string()))?;
            let offset = triple[0]
                .as_u64()
                .ok_or_else(|| DiagramError::Malformed("bad atom offset".to_string()))?;
            let relation = triple[1]
                .as_u64()
                .ok_or_else(|| DiagramError::Malformed("bad atom relation".to_string()))?;
            let direction = match triple[2].as_str() {
                Some("fwd") => Direction::Forward,
                Some("bwd") => Direction::Backward,
                _ => return Err(DiagramError::Malformed("bad atom direction".to_string())),
            };
            atoms.push(PlacedAtom::new(offset as usize, relation as usize, direction));
        }
        let d = Diagram::from_derivation(p, &top, &atoms)?;
        if let Some(b) = v.get("bottom").and_then(Value::as_str) {
            if p.render_word(d.bottom()) != b {
                return Err(DiagramError::Malformed("bottom word mismatch".to_string()));
            }
        }
        Ok(d)
    }
}

/// The single-cell rewrites applicable to `w`, in rewrite order.
pub fn atoms_on(p: &Presentation, w: &Word) -> Vec<PlacedAtom> {
    one_step_rewrites(p, w)
        .iter()
        .map(|e| PlacedAtom::new(e.offset(), e.relation, e.direction))
        .collect()
}

/// Dipoles of a flat derivation: for each cell, its output interval is
/// traced downward; the first later cell to touch it forms a dipole exactly
/// when it consumes the whole interval with the reverse rewrite.
fn flat_dipoles(p: &Presentation, flat: &[PlacedAtom]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for s in 0..flat.len() {
        let a = flat[s];
        let (_, ta) = side_lens(p, &a);
        let mut start = a.offset as isize;
        let mut end = start + ta as isize;
        for (off, b) in flat[s + 1..].iter().enumerate() {
            let (fb, tb) = side_lens(p, b);
            let bs = b.offset as isize;
            let be = bs + fb as isize;
            if bs < end && start < be {
                if bs == start
                    && b.relation == a.relation
                    && b.direction == a.direction.flip()
                {
                    debug_assert_eq!(be, end);
                    out.push((s, s + 1 + off));
                }
                break;
            }
            if be <= start {
                let d = tb as isize - fb as isize;
                start += d;
                end += d;
            }
        }
    }
    out
}

/// Remove the dipole `(s, t)` from a flat derivation, re-addressing the
/// cells in between.
fn flat_remove_dipole(p: &Presentation, flat: &mut Vec<PlacedAtom>, s: usize, t: usize) {
    let a = flat[s];
    let (fa, ta) = side_lens(p, &a);
    let ds = ta as isize - fa as isize;
    let mut start = a.offset as isize;
    let mut end = start + ta as isize;
    for j in s + 1..t {
        let b = flat[j];
        let (fb, tb) = side_lens(p, &b);
        let bs = b.offset as isize;
        let be = bs + fb as isize;
        debug_assert!(!(bs < end && start < be), "dipole interval touched");
        if be <= start {
            let d = tb as isize - fb as isize;
            start += d;
            end += d;
        } else {
            flat[j].offset = (bs - ds) as usize;
        }
    }
    debug_assert_eq!(flat[t].offset as isize, start);
    debug_assert_eq!(flat[t].relation, a.relation);
    debug_assert_eq!(flat[t].direction, a.direction.flip());
    flat.remove(t);
    flat.remove(s);
}

/// Remove cell `k` from a flat derivation when nothing below depends on it;
/// returns `false` (leaving the derivation untouched) otherwise.
pub(crate) fn remove_flat_atom(p: &Presentation, flat: &mut Vec<PlacedAtom>, k: usize) -> bool {
    let a = flat[k];
    let (fa, ta) = side_lens(p, &a);
    let dk = ta as isize - fa as isize;
    let mut start = a.offset as isize;
    let mut end = start + ta as isize;
    let mut shifted = Vec::new();
    for j in k + 1..flat.len() {
        let b = flat[j];
        let (fb, tb) = side_lens(p, &b);
        let bs = b.offset as isize;
        let be = bs + fb as isize;
        if bs < end && start < be {
            return false;
        }
        if be <= start {
            let d = tb as isize - fb as isize;
            start += d;
            end += d;
        } else {
            shifted.push(j);
        }
    }
    for j in shifted {
        flat[j].offset = (flat[j].offset as isize - dk) as usize;
    }
    flat.remove(k);
    true
}

/// Swap two adjacent independent cells of a flat derivation in place;
/// returns `false` (no change) when the second depends on the first.
pub fn swap_flat_adjacent(p: &Presentation, flat: &mut [PlacedAtom], i: usize) -> bool {
    let a = flat[i];
    let b = flat[i + 1];
    let (fa, ta) = side_lens(p, &a);
    let (fb, tb) = side_lens(p, &b);
    let da = ta as isize - fa as isize;
    let db = tb as isize - fb as isize;
    let astart = a.offset as isize;
    let aend = astart + ta as isize;
    let bs = b.offset as isize;
    let be = bs + fb as isize;
    if bs < aend && astart < be {
        return false;
    }
    if be <= astart {
        flat[i] = b;
        flat[i + 1] = PlacedAtom::new((astart + db) as usize, a.relation, a.direction);
    } else {
        flat[i] = PlacedAtom::new((bs - da) as usize, b.relation, b.direction);
        flat[i + 1] = a;
    }
    true
}
