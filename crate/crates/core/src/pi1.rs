//! Fundamental group of a rewriting complex.
//!
//! A spanning tree of the component turns the complex into a group
//! presentation: each non-tree edge is a generator, each square contributes
//! the relator obtained by reading its boundary loop and dropping tree
//! edges. A bounded Tietze simplification pass then eliminates generators
//! that occur exactly once in some relator; when everything cancels the
//! group is certified trivial.

use std::collections::{HashMap, HashSet};

use crate::budget::Budget;
use crate::homology::{rational_rank, SparseRow};
use crate::presentation::{Direction, Presentation};
use crate::rewrite::one_step_rewrites;
use crate::squier::{canonical_edge, SquierComponent};
use num::rational::BigRational;
use num::BigInt;

/// Breadth-first spanning tree of a component, rooted at the base word.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    /// `parent[v] = (parent vertex, edge index, direction traversed
    /// parent -> v)`; `None` exactly at the root.
    pub parent: Vec<Option<(usize, usize, Direction)>>,
    pub tree_edges: HashSet<usize>,
    /// Edge indices not in the tree, ascending.
    pub non_tree: Vec<usize>,
}

impl SpanningTree {
    /// Oriented edges from the root to `v`: `(edge index, direction)` where
    /// `Forward` means the canonical orientation is traversed source to
    /// target.
    pub fn path_from_root(&self, mut v: usize) -> Vec<(usize, Direction)> {
        let mut path = Vec::new();
        while let Some((up, edge, dir)) = self.parent[v] {
            path.push((edge, dir));
            v = up;
        }
        path.reverse();
        path
    }
}

pub fn spanning_tree(p: &Presentation, c: &SquierComponent) -> SpanningTree {
    let n = c.vertices.len();
    let mut parent: Vec<Option<(usize, usize, Direction)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut tree_edges = HashSet::new();
    seen[0] = true;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for e in one_step_rewrites(p, &c.vertices[v]) {
            let Some(t) = c.index_of(&e.target(p)) else {
                continue;
            };
            if seen[t] {
                continue;
            }
            seen[t] = true;
            let idx = c
                .edge_index(&canonical_edge(&e))
                .expect("induced edge missing from component");
            parent[t] = Some((v, idx, e.direction));
            tree_edges.insert(idx);
            queue.push(t);
        }
    }
    assert!(
        seen.iter().all(|&s| s),
        "component vertices are connected by construction"
    );
    let non_tree = (0..c.edges.len())
        .filter(|i| !tree_edges.contains(i))
        .collect();
    SpanningTree {
        parent,
        tree_edges,
        non_tree,
    }
}

/// A group presentation with unnamed generators; a relator is a word in
/// `(generator, inverted)` letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Vec<(usize, bool)>>,
}

impl GroupPresentation {
    /// Trivial as presented: no generators left at all.
    pub fn is_trivial_presentation(&self) -> bool {
        self.generators == 0
    }

    /// Rank of the abelianization's free part: generators minus the rank of
    /// the exponent-sum matrix.
    pub fn abelianized_rank(&self) -> usize {
        let rows = self.relators.iter().map(|r| {
            let mut row: HashMap<usize, i64> = HashMap::new();
            for &(g, inv) in r {
                *row.entry(g).or_insert(0) += if inv { -1 } else { 1 };
            }
            row.into_iter()
                .filter(|&(_, v)| v != 0)
                .map(|(g, v)| (g, BigRational::from_integer(BigInt::from(v))))
                .collect::<SparseRow>()
        });
        self.generators - rational_rank(rows)
    }

    pub fn render(&self) -> String {
        let gens: Vec<String> = (0..self.generators).map(|g| format!("g{g}")).collect();
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| {
                if r.is_empty() {
                    "1".to_string()
                } else {
                    r.iter()
                        .map(|&(g, inv)| {
                            if inv {
                                format!("g{g}^-1")
                            } else {
                                format!("g{g}")
                            }
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            })
            .collect();
        format!("< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

/// Presentation of the fundamental group of the component at its base word.
pub fn pi1_presentation(p: &Presentation, c: &SquierComponent) -> GroupPresentation {
    let tree = spanning_tree(p, c);
    let gen_of: HashMap<usize, usize> = tree
        .non_tree
        .iter()
        .enumerate()
        .map(|(g, &e)| (e, g))
        .collect();
    let mut relators = Vec::new();
    for sq in c.squares() {
        let sides = c.square_boundary(p, sq);
        let mut relator = Vec::new();
        for (edge, coeff) in sides {
            if let Some(&g) = gen_of.get(&edge) {
                relator.push((g, coeff < 0));
            }
        }
        relators.push(relator);
    }
    GroupPresentation {
        generators: tree.non_tree.len(),
        relators,
    }
}

fn invert_word(w: &[(usize, bool)]) -> Vec<(usize, bool)> {
    w.iter().rev().map(|&(g, i)| (g, !i)).collect()
}

fn free_reduce(w: &[(usize, bool)]) -> Vec<(usize, bool)> {
    let mut out: Vec<(usize, bool)> = Vec::with_capacity(w.len());
    for &(g, i) in w {
        if out.last() == Some(&(g, !i)) {
            out.pop();
        } else {
            out.push((g, i));
        }
    }
    out
}

fn cyclic_reduce(mut w: Vec<(usize, bool)>) -> Vec<(usize, bool)> {
    while w.len() >= 2 {
        let (g, i) = w[0];
        if *w.last().unwrap() == (g, !i) {
            w.remove(0);
            w.pop();
        } else {
            break;
        }
    }
    w
}

/// Bounded Tietze simplification: repeatedly free/cyclically reduce, drop
/// empty relators, and eliminate a generator that occurs exactly once in
/// some relator (shortest relator first, then lowest generator index). The
/// number of eliminations is capped by the budget's depth.
pub fn simplify_presentation(g: &GroupPresentation, b: &Budget) -> GroupPresentation {
    let mut gens = g.generators;
    let mut rels: Vec<Vec<(usize, bool)>> = g
        .relators
        .iter()
        .map(|r| cyclic_reduce(free_reduce(r)))
        .filter(|r| !r.is_empty())
        .collect();
    for _ in 0..b.max_depth {
        let mut best: Option<(usize, usize, usize)> = None;
        for (ri, r) in rels.iter().enumerate() {
            let mut counts: HashMap<usize, usize> = HashMap::new();
            for &(gen, _) in r {
                *counts.entry(gen).or_insert(0) += 1;
            }
            for (&gen, &cnt) in &counts {
                if cnt == 1 {
                    let cand = (r.len(), gen, ri);
                    if best.map_or(true, |cur| cand < cur) {
                        best = Some(cand);
                    }
                }
            }
        }
        let Some((_, gx, ri)) = best else {
            break;
        };
        let r = rels.remove(ri);
        let pos = r.iter().position(|&(gen, _)| gen == gx).unwrap();
        let (pre, rest) = r.split_at(pos);
        let (&(_, inverted), suf) = rest.split_first().unwrap();
        // pre . gx^e . suf = 1 solves to gx = pre^-1 suf^-1 (e = 1) or
        // gx = suf . pre (e = -1)
        let sub: Vec<(usize, bool)> = if !inverted {
            let mut s = invert_word(pre);
            s.extend(invert_word(suf));
            s
        } else {
            let mut s = suf.to_vec();
            s.extend_from_slice(pre);
            s
        };
        let inv_sub = invert_word(&sub);
        rels = rels
            .iter()
            .map(|r| {
                let mut out = Vec::new();
                for &(gen, i) in r {
                    if gen != gx {
                        out.push((gen, i));
                    } else if !i {
                        out.extend_from_slice(&sub);
                    } else {
                        out.extend_from_slice(&inv_sub);
                    }
                }
                cyclic_reduce(free_reduce(&out))
            })
            .filter(|r| !r.is_empty())
            .collect();
        // drop gx and close the index gap
        let fix = |gen: usize| if gen > gx { gen - 1 } else { gen };
        rels = rels
            .iter()
            .map(|r| r.iter().map(|&(gen, i)| (fix(gen), i)).collect())
            .collect();
        gens -= 1;
    }
    GroupPresentation {
        generators: gens,
        relators: rels,
    }
}
