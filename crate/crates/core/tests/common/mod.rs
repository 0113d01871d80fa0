//! Shared fixtures and independent oracles for the integration suites.
//!
//! The oracles deliberately avoid the library's own computation paths:
//! Betti numbers are recomputed by integer Smith reduction, balls by
//! exhaustive derivation enumeration, distances by graph search. The only
//! library services they lean on are index lookups and the canonical edge
//! orientation, never the quantity under test.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use diagram_groups::diagram::atoms_on;
use diagram_groups::farley::FarleyBall;
use diagram_groups::squier::{canonical_edge, SquierComponent};
use diagram_groups::{Diagram, Direction, Presentation, RewriteEdge, Word};
use num::{BigInt, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn commuting() -> Presentation {
    Presentation::new(
        &["a", "b", "c"],
        &[("ab", "ba"), ("ac", "ca"), ("bc", "cb")],
    )
    .unwrap()
}

pub fn one_square() -> Presentation {
    Presentation::new(&["a", "b"], &[("ab", "ba")]).unwrap()
}

pub fn absorbing_pair() -> Presentation {
    Presentation::new(&["a", "b"], &[("ab", "a"), ("abb", "a")]).unwrap()
}

pub fn interior_letter() -> Presentation {
    Presentation::new(
        &["a", "b", "c", "p"],
        &[("ap", "a"), ("pc", "c"), ("bp", "b"), ("pb", "b")],
    )
    .unwrap()
}

pub fn chain_of_contexts() -> Presentation {
    Presentation::new(
        &["a", "c", "p", "x"],
        &[("ap", "a"), ("pc", "c"), ("ax", "a"), ("xp", "p")],
    )
    .unwrap()
}

pub fn doubled_relation() -> Presentation {
    Presentation::new(
        &["a", "b", "p", "q"],
        &[("ap", "a"), ("pb", "b"), ("q", "p"), ("aqqb", "appb")],
    )
    .unwrap()
}

pub fn folded_pair() -> Presentation {
    Presentation::new(&["a", "x", "y"], &[("ax", "a"), ("ay", "a"), ("y", "x")]).unwrap()
}

pub fn w(p: &Presentation, s: &str) -> Word {
    p.parse_word(s).unwrap()
}

/// Rank of an integer matrix by Smith reduction: pick the smallest pivot,
/// shrink its row and column by Euclidean steps until both are clear, then
/// recurse on the submatrix. Exact over `BigInt`.
pub fn smith_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut t = 0;
    loop {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j].is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| m[i][j].magnitude() < m[bi][bj].magnitude()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else {
            return t;
        };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        let mut dirty = false;
        for i in (t + 1)..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let q = &m[i][t] / &m[t][t];
            if !q.is_zero() {
                for j in t..cols {
                    let s = &q * &m[t][j];
                    m[i][j] -= s;
                }
            }
            dirty |= !m[i][t].is_zero();
        }
        for j in (t + 1)..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let q = &m[t][j] / &m[t][t];
            if !q.is_zero() {
                for i in t..rows {
                    let s = &q * &m[i][t];
                    m[i][j] -= s;
                }
            }
            dirty |= !m[t][j].is_zero();
        }
        if !dirty {
            t += 1;
        }
    }
}

fn forward_edge(p: &Presentation, word: &Word, offset: usize, relation: usize) -> RewriteEdge {
    let lhs_len = p.relations[relation].lhs.len();
    RewriteEdge {
        left: word.slice(0, offset),
        relation,
        direction: Direction::Forward,
        right: word.slice(offset + lhs_len, word.len()),
    }
}

/// First Betti number recomputed from scratch: boundary matrices assembled
/// directly from the component's cells, ranks by integer Smith reduction.
pub fn smith_betti(p: &Presentation, c: &SquierComponent) -> usize {
    let ne = c.edges.len();
    let mut d1 = vec![vec![BigInt::zero(); c.vertices.len()]; ne];
    for (i, e) in c.edges.iter().enumerate() {
        let s = c.index_of(&e.source(p)).expect("edge source in component");
        let t = c.index_of(&e.target(p)).expect("edge target in component");
        d1[i][t] += 1;
        d1[i][s] -= 1;
    }
    let mut d2 = Vec::new();
    for sq in c.squares() {
        let [(o1, r1), (o2, r2)] = sq.placements[..] else {
            panic!("square with {} placements", sq.placements.len());
        };
        let e_a = forward_edge(p, &sq.word, o1, r1);
        let e_b = forward_edge(p, &sq.word, o2, r2);
        let shift = p.relations[r1].rhs.len() + o2 - p.relations[r1].lhs.len();
        let e_b_after = forward_edge(p, &e_a.target(p), shift, r2);
        let e_a_after = forward_edge(p, &e_b.target(p), o1, r1);
        let mut row = vec![BigInt::zero(); ne];
        for (e, sgn) in [(&e_a, 1), (&e_b_after, 1), (&e_b, -1), (&e_a_after, -1)] {
            let canon = canonical_edge(e);
            let flip = if canon == *e { 1 } else { -1 };
            let idx = c.edge_index(&canon).expect("square edge in component");
            row[idx] += sgn * flip;
        }
        d2.push(row);
    }
    for row in &d2 {
        for v in 0..c.vertices.len() {
            let mut acc = BigInt::zero();
            for (j, coef) in row.iter().enumerate() {
                if !coef.is_zero() {
                    acc += coef * &d1[j][v];
                }
            }
            assert!(acc.is_zero(), "square boundary is not a cycle");
        }
    }
    let rank1 = smith_rank(d1);
    let rank2 = smith_rank(d2);
    (ne - rank1) - rank2
}

/// Every reduced diagram with the given top and at most `radius` cells,
/// by enumerating all derivations of that length and filtering.
pub fn exhaustive_ball(p: &Presentation, top: &Word, radius: usize) -> BTreeSet<Diagram> {
    let mut out = BTreeSet::new();
    let mut frontier = vec![Diagram::identity(top.clone())];
    out.insert(frontier[0].clone());
    for _ in 0..radius {
        let mut next = Vec::new();
        for d in &frontier {
            for a in atoms_on(p, d.bottom()) {
                let mut e = d.clone();
                e.push_atom(p, a).unwrap();
                if e.is_reduced(p) {
                    out.insert(e.clone());
                }
                next.push(e);
            }
        }
        frontier = next;
    }
    out
}

/// Undirected adjacency of the ball's 1-skeleton, minus the listed edges.
pub fn ball_adjacency(ball: &FarleyBall, skip: &HashSet<usize>) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); ball.vertex_count()];
    for (i, e) in ball.edges.iter().enumerate() {
        if skip.contains(&i) {
            continue;
        }
        adj[e.lower].push(e.upper);
        adj[e.upper].push(e.lower);
    }
    adj
}

pub fn graph_distances(adj: &[Vec<usize>], from: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[from] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &u in &adj[v] {
            if dist[u].is_none() {
                dist[u] = Some(d + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Connected-component id per vertex.
pub fn graph_components(adj: &[Vec<usize>]) -> Vec<usize> {
    let mut comp = vec![usize::MAX; adj.len()];
    let mut next = 0;
    for start in 0..adj.len() {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if comp[u] == usize::MAX {
                    comp[u] = next;
                    queue.push_back(u);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Random derivation stack: up to `steps` uniformly chosen rewrites, no
/// dipole cancellation along the way.
pub fn random_stack(p: &Presentation, rng: &mut ChaCha8Rng, top: &Word, steps: usize) -> Diagram {
    let mut d = Diagram::identity(top.clone());
    for _ in 0..steps {
        let atoms = atoms_on(p, d.bottom());
        if atoms.is_empty() {
            break;
        }
        let a = atoms[rng.gen_range(0..atoms.len())];
        d.push_atom(p, a).unwrap();
    }
    d
}

/// A varied pool of (presentation, base word) pairs for randomized tests.
pub fn derivation_pool() -> Vec<(Presentation, Word)> {
    let mut pool = Vec::new();
    for s in ["abc", "aabbcc", "bca", "abcabc"] {
        let p = commuting();
        let word = w(&p, s);
        pool.push((p, word));
    }
    for s in ["a", "ab", "abb"] {
        let p = absorbing_pair();
        let word = w(&p, s);
        pool.push((p, word));
    }
    for s in ["abab", "aabb"] {
        let p = one_square();
        let word = w(&p, s);
        pool.push((p, word));
    }
    let p = interior_letter();
    let word = w(&p, "abc");
    pool.push((p, word));
    pool
}

pub fn cells_of(d: &Diagram) -> usize {
    d.cells()
}

/// The one attached atom of each ball edge, readdressed to nothing: check
/// a candidate up-neighbour relation directly from diagram arithmetic.
pub fn covers(p: &Presentation, lower: &Diagram, upper: &Diagram) -> bool {
    upper.cells() == lower.cells() + 1 && lower.is_prefix_of(p, upper)
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}
