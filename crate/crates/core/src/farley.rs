//! Bounded balls of the cube complex of reduced diagrams.
//!
//! For a fixed top word `w`, the reduced diagrams with top `w` form the
//! vertex set of a CAT(0) cube complex: edges join diagrams differing by one
//! atomic cell at the bottom, and a family of pairwise-disjoint atoms spans a
//! cube. This module enumerates the radius-`r` ball around the trivial
//! diagram, computes the combinatorial metric (distance between two vertices
//! is the cell count of the reduced quotient), geodesics and medians through
//! the prefix lattice, and realizes hyperplanes concretely: each one is dual
//! to a unique *minimal* diagram, its positive halfspace is that diagram's
//! prefix up-set, and its carrier factors through the minimal diagram's stem
//! and pivot cell.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::budget::Budget;
use crate::diagram::{atoms_on, Diagram, DiagramError, PlacedAtom};
use crate::freeness::AnalysisSession;
use crate::presentation::{Presentation, Word};
use crate::rewrite::enumerate_word_class;
use crate::verdict::{Status, Verdict};

/// Edge of the ball: `upper = reduce(lower . atom)` with one more cell.
/// The atom is addressed against the lower vertex's bottom word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BallEdge {
    pub lower: usize,
    pub upper: usize,
    pub atom: PlacedAtom,
}

/// Cube spanned by a corner vertex and pairwise-disjoint atoms on its
/// bottom word; the `2^dim` corners are the reduced pushes of the subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallCube {
    pub corner: usize,
    /// Ascending by offset; length is the cube's dimension.
    pub atoms: Vec<PlacedAtom>,
}

#[derive(Clone, Debug)]
pub struct FarleyBall {
    pub base: Word,
    pub radius: usize,
    /// Breadth-first by cell count; index 0 is the trivial diagram.
    pub vertices: Vec<Diagram>,
    pub edges: Vec<BallEdge>,
    /// `cubes[d]` holds the d-cubes; entries 0 and 1 stay empty (vertices
    /// and edges have their own fields).
    pub cubes: Vec<Vec<BallCube>>,
    /// True when the vertex cap cut the enumeration short of the radius.
    pub truncated: bool,
    pub budget_used: Budget,
    index: HashMap<Diagram, usize>,
}

impl FarleyBall {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn contains(&self, d: &Diagram) -> bool {
        self.index.contains_key(d)
    }

    /// Cube counts per dimension, starting at dimension 2.
    pub fn cube_counts(&self) -> Vec<usize> {
        self.cubes.iter().skip(2).map(Vec::len).collect()
    }

    pub fn to_json(&self, p: &Presentation) -> Value {
        let atom_json =
            |a: &PlacedAtom| json!([a.offset, a.relation, a.direction.as_str()]);
        json!({
            "base": p.render_word(&self.base),
            "radius": self.radius,
            "truncated": self.truncated,
            "vertices": self.vertices.iter().map(|d| d.to_json(p)).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "lower": e.lower,
                "upper": e.upper,
                "atom": atom_json(&e.atom),
            })).collect::<Vec<_>>(),
            "cubes": self.cubes.iter().skip(2).map(|per_dim| {
                per_dim.iter().map(|c| json!({
                    "corner": c.corner,
                    "atoms": c.atoms.iter().map(atom_json).collect::<Vec<_>>(),
                })).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "budget": self.budget_used.to_json(),
        })
    }
}

fn side_lens(p: &Presentation, a: &PlacedAtom) -> (usize, usize) {
    let r = &p.relations[a.relation];
    (r.from_side(a.direction).len(), r.to_side(a.direction).len())
}

/// Push pairwise-disjoint atoms (ascending by offset, addressed against
/// `d`'s bottom word) onto `d`, shifting later offsets by the accumulated
/// length change, and reduce.
fn apply_thin(p: &Presentation, d: &Diagram, atoms: &[PlacedAtom]) -> Diagram {
    let mut out = d.clone();
    let mut shift = 0isize;
    for a in atoms {
        let (f, t) = side_lens(p, a);
        out.push_atom(
            p,
            PlacedAtom::new((a.offset as isize + shift) as usize, a.relation, a.direction),
        )
        .expect("disjoint atoms apply in order");
        shift += t as isize - f as isize;
    }
    out.reduce(p)
}

fn collect_cubes(
    p: &Presentation,
    index: &HashMap<Diagram, usize>,
    corner_idx: usize,
    corner: &Diagram,
    ups: &[PlacedAtom],
    start: usize,
    chosen: &mut Vec<PlacedAtom>,
    max_dim: usize,
    cubes: &mut Vec<Vec<BallCube>>,
) {
    for i in start..ups.len() {
        let a = ups[i];
        if let Some(last) = chosen.last() {
            let (f, _) = side_lens(p, last);
            if last.offset + f > a.offset {
                continue;
            }
        }
        // every corner using the new atom must already be a ball vertex
        let m = chosen.len();
        let mut all_present = true;
        for mask in 0u32..(1 << m) {
            let mut subset: Vec<PlacedAtom> = chosen
                .iter()
                .enumerate()
                .filter(|(j, _)| mask & (1 << j) != 0)
                .map(|(_, x)| *x)
                .collect();
            subset.push(a);
            if !index.contains_key(&apply_thin(p, corner, &subset)) {
                all_present = false;
                break;
            }
        }
        if !all_present {
            continue;
        }
        chosen.push(a);
        let dim = chosen.len();
        if dim >= 2 {
            while cubes.len() <= dim {
                cubes.push(Vec::new());
            }
            cubes[dim].push(BallCube {
                corner: corner_idx,
                atoms: chosen.clone(),
            });
        }
        if dim < max_dim {
            collect_cubes(p, index, corner_idx, corner, ups, i + 1, chosen, max_dim, cubes);
        }
        chosen.pop();
    }
}

/// Enumerate the ball of reduced diagrams with top `w` and at most `radius`
/// cells, breadth-first by atomic extension with immediate reduction.
/// `b.max_words` caps the vertex count; hitting it marks the ball truncated.
pub fn build_ball(p: &Presentation, w: &Word, radius: usize, b: &Budget) -> FarleyBall {
    let mut vertices = vec![Diagram::identity(w.clone())];
    let mut index: HashMap<Diagram, usize> = HashMap::new();
    index.insert(vertices[0].clone(), 0);
    let mut truncated = false;
    let mut qi = 0;
    while qi < vertices.len() {
        let d = vertices[qi].clone();
        qi += 1;
        let k = d.cells();
        if k >= radius {
            continue;
        }
        for atom in atoms_on(p, d.bottom()) {
            let mut ext = d.clone();
            ext.push_atom(p, atom).expect("enumerated atom applies");
            let r = ext.reduce(p);
            // cancellations lead to an earlier stratum; the edge is found
            // from its lower endpoint
            if r.cells() != k + 1 || index.contains_key(&r) {
                continue;
            }
            if vertices.len() >= b.max_words {
                truncated = true;
                continue;
            }
            index.insert(r.clone(), vertices.len());
            vertices.push(r);
        }
    }

    let mut edges = Vec::new();
    let mut ups: Vec<Vec<PlacedAtom>> = vec![Vec::new(); vertices.len()];
    for (vi, d) in vertices.iter().enumerate() {
        let k = d.cells();
        if k >= radius {
            continue;
        }
        for atom in atoms_on(p, d.bottom()) {
            let mut ext = d.clone();
            ext.push_atom(p, atom).expect("enumerated atom applies");
            let r = ext.reduce(p);
            if r.cells() != k + 1 {
                continue;
            }
            if let Some(&ui) = index.get(&r) {
                edges.push(BallEdge {
                    lower: vi,
                    upper: ui,
                    atom,
                });
                ups[vi].push(atom);
            }
        }
    }

    let mut cubes: Vec<Vec<BallCube>> = vec![Vec::new(), Vec::new()];
    let mut chosen = Vec::new();
    for (vi, d) in vertices.iter().enumerate() {
        collect_cubes(
            p,
            &index,
            vi,
            d,
            &ups[vi],
            0,
            &mut chosen,
            b.max_cells,
            &mut cubes,
        );
    }

    FarleyBall {
        base: w.clone(),
        radius,
        vertices,
        edges,
        cubes,
        truncated,
        budget_used: *b,
        index,
    }
}

/// Cell count of the reduced quotient: the graph distance in the (possibly
/// unbounded) complex, computable without building any ball.
pub fn combinatorial_distance(
    p: &Presentation,
    a: &Diagram,
    b: &Diagram,
) -> Result<usize, DiagramError> {
    Ok(a.reduced_quotient(p, b)?.cells())
}

/// A geodesic from `a` to `b`: the reduced quotient is peeled off one atom
/// at a time in its canonical flat order.
pub fn geodesic_between(
    p: &Presentation,
    a: &Diagram,
    b: &Diagram,
) -> Result<Vec<Diagram>, DiagramError> {
    let q = a.reduced_quotient(p, b)?;
    let n = q.cells();
    let mut path = Vec::with_capacity(n + 1);
    for i in 0..=n {
        path.push(a.concatenate(p, &q.flat_prefix(p, i))?.reduce(p));
    }
    debug_assert_eq!(path.first(), Some(a));
    debug_assert_eq!(path.last(), Some(b));
    Ok(path)
}

/// The median of three reduced diagrams with a common top: transport `b`
/// and `c` into `a`'s coordinates, meet them in the prefix lattice, and
/// transport back. The three median equations are re-checked exactly; a
/// violation is a fatal internal error.
pub fn median_diagram(p: &Presentation, a: &Diagram, b: &Diagram, c: &Diagram) -> Diagram {
    assert_eq!(a.top(), b.top(), "median needs a common top word");
    assert_eq!(a.top(), c.top(), "median needs a common top word");
    let qb = a.reduced_quotient(p, b).expect("common top");
    let qc = a.reduced_quotient(p, c).expect("common top");
    let meet = Diagram::prefix_meet(p, &qb, &qc);
    let m = a
        .concatenate(p, &meet)
        .expect("meet starts at a's bottom")
        .reduce(p);
    for (x, y) in [(a, b), (a, c), (b, c)] {
        let direct = combinatorial_distance(p, x, y).unwrap();
        let through = combinatorial_distance(p, x, &m).unwrap()
            + combinatorial_distance(p, &m, y).unwrap();
        assert_eq!(
            direct, through,
            "median equation failed between two of the inputs"
        );
    }
    m
}

/// All reduced minimal diagrams with top `w` and at most `max_cells` cells:
/// exactly one cell touches the bottom. Each is dual to one hyperplane.
pub fn enumerate_minimal_diagrams(
    p: &Presentation,
    w: &Word,
    max_cells: usize,
    b: &Budget,
) -> Vec<Diagram> {
    let ball = build_ball(p, w, max_cells, b);
    ball.vertices
        .into_iter()
        .filter(|d| d.is_minimal(p))
        .collect()
}

/// A hyperplane of the complex over `minimal.top()`, presented through its
/// unique minimal diagram: `minimal = stem . (id(left) + pivot + id(right))`
/// where the pivot is the one cell touching the bottom and `label` is the
/// segment of the stem's bottom word it consumes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub minimal: Diagram,
    pub stem: Diagram,
    /// Addressed against the stem's bottom word.
    pub pivot: PlacedAtom,
    pub left: Word,
    pub label: Word,
    pub right: Word,
}

impl Hyperplane {
    pub fn from_minimal(p: &Presentation, d: &Diagram) -> Option<Hyperplane> {
        let (stem, pivot) = d.split_pivot(p)?;
        let bottom = stem.bottom();
        let from = p.relations[pivot.relation].from_side(pivot.direction);
        let left = bottom.slice(0, pivot.offset);
        let label = bottom.slice(pivot.offset, pivot.offset + from.len());
        let right = bottom.slice(pivot.offset + from.len(), bottom.len());
        debug_assert_eq!(&label, from);
        Some(Hyperplane {
            minimal: d.clone(),
            stem,
            pivot,
            left,
            label,
            right,
        })
    }

    /// The hyperplane dual to the edge `lower -> reduce(lower . atom)`: the
    /// smallest prefix of the extension containing the new cell is minimal.
    pub fn of_edge(p: &Presentation, lower: &Diagram, atom: PlacedAtom) -> Hyperplane {
        let closure = lower.extension_closure(p, atom);
        Hyperplane::from_minimal(p, &closure).expect("extension closure is minimal")
    }

    /// The pivot as a standalone diagram over the label word.
    pub fn pivot_diagram(&self, p: &Presentation) -> Diagram {
        Diagram::atom(
            p,
            &self.label,
            PlacedAtom::new(0, self.pivot.relation, self.pivot.direction),
        )
        .expect("pivot applies to its own label")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// The plus side is the prefix up-set of the minimal diagram; the minus side
/// is its complement and contains the trivial diagram.
pub fn halfspace_contains(
    p: &Presentation,
    h: &Hyperplane,
    sign: Side,
    d: &Diagram,
) -> bool {
    let plus = h.minimal.is_prefix_of(p, d);
    match sign {
        Side::Plus => plus,
        Side::Minus => !plus,
    }
}

#[derive(Clone, Debug)]
pub struct Halfspace {
    pub hyperplane: Hyperplane,
    pub sign: Side,
}

impl Halfspace {
    pub fn contains(&self, p: &Presentation, d: &Diagram) -> bool {
        halfspace_contains(p, &self.hyperplane, self.sign, d)
    }
}

/// A carrier vertex with its factorization through the hyperplane's stem:
/// the vertex equals `stem . (left + mid + right)` where `mid` is the label
/// identity (minus side) or the pivot diagram (plus side).
#[derive(Clone, Debug)]
pub struct BoundaryMember {
    pub vertex: usize,
    pub left: Diagram,
    pub right: Diagram,
}

#[derive(Clone, Debug)]
pub struct HyperplaneBoundaries {
    pub minus: Vec<BoundaryMember>,
    pub plus: Vec<BoundaryMember>,
}

/// Intersect the two carrier sets with the ball. Every reported member
/// factors exactly; the factors are returned so the product can be re-checked.
pub fn hyperplane_boundaries(
    p: &Presentation,
    h: &Hyperplane,
    ball: &FarleyBall,
) -> Result<HyperplaneBoundaries, String> {
    if !ball.contains(&h.minimal) {
        return Err("the hyperplane's minimal diagram is outside the ball".into());
    }
    let pivot_d = h.pivot_diagram(p);
    let label_id = Diagram::identity(h.label.clone());
    let mut minus = Vec::new();
    let mut plus = Vec::new();
    for (i, v) in ball.vertices.iter().enumerate() {
        let Some(q) = h.stem.left_quotient(p, v) else {
            continue;
        };
        let Some((left, rest)) = q.split_sum(p, h.left.len()) else {
            continue;
        };
        let Some((mid, right)) = rest.split_sum(p, h.label.len()) else {
            continue;
        };
        let member = BoundaryMember {
            vertex: i,
            left,
            right,
        };
        if mid == label_id {
            minus.push(member);
        } else if mid == pivot_d {
            plus.push(member);
        }
    }
    Ok(HyperplaneBoundaries { minus, plus })
}

/// What the bounded stabilizer check saw.
#[derive(Clone, Debug)]
pub struct StabilizerEvidence {
    pub left: Word,
    pub label: Word,
    pub right: Word,
    /// Hypothesis scan: members of the left context's class found so far.
    pub class_size: usize,
    pub class_complete: bool,
    pub class_sample: Vec<Word>,
    /// A class member of the form `left . label . tail` with non-empty
    /// tail, which defeats the context-splitting hypothesis.
    pub violating_extension: Option<Word>,
    pub left_status: Status,
    pub right_status: Status,
}

/// The stabilizer of a hyperplane is the conjugate of the product of the
/// two context groups, provided the left context never re-absorbs the label
/// (no class member extends `left . label`). Proved-trivial requires the
/// hypothesis to hold over the complete class and both context groups to be
/// certified trivial; anything less is Unknown with the partial evidence.
pub fn stabilizer_is_trivial(
    p: &Presentation,
    h: &Hyperplane,
    b: &Budget,
) -> Verdict<StabilizerEvidence> {
    let class = enumerate_word_class(p, &h.left, b);
    let prefix = h.left.concat(&h.label);
    let mut violating = None;
    for m in &class.words {
        if m.len() > prefix.len() && m.starts_with(&prefix) {
            violating = Some(m.clone());
            break;
        }
    }
    let mut session = AnalysisSession::new(p, *b);
    let left_status = session.group_status(&h.left);
    let right_status = session.group_status(&h.right);
    let evidence = StabilizerEvidence {
        left: h.left.clone(),
        label: h.label.clone(),
        right: h.right.clone(),
        class_size: class.words.len(),
        class_complete: class.complete,
        class_sample: class.words.iter().take(32).cloned().collect(),
        violating_extension: violating.clone(),
        left_status,
        right_status,
    };
    let hypothesis_holds = class.complete && violating.is_none();
    if hypothesis_holds && left_status == Status::Refuted && right_status == Status::Refuted {
        Verdict::proved(evidence, *b)
    } else {
        Verdict::unknown_with(evidence, *b)
    }
}
