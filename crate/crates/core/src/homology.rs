//! Rational homology of a rewriting complex.
//!
//! Only the first Betti number is needed: `b1 = dim ker d1 - rank d2` where
//! `d1` sends an edge to `target - source` and `d2` sends a square to its
//! boundary loop. Ranks are computed over the rationals with exact
//! arithmetic; the integer Smith-form refinement is only interesting for
//! torsion, which `b1` ignores.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num::rational::BigRational;
use num::traits::{One, Zero};
use num::BigInt;

use crate::presentation::Presentation;
use crate::squier::SquierComponent;

pub type SparseRow = BTreeMap<usize, BigRational>;

/// Rank over the rationals of a matrix given as sparse rows, by incremental
/// elimination against normalized pivot rows.
pub fn rational_rank<I>(rows: I) -> usize
where
    I: IntoIterator<Item = SparseRow>,
{
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for mut row in rows {
        row.retain(|_, v| !v.is_zero());
        while let Some((&col, _)) = row.iter().next() {
            match pivots.get(&col) {
                Some(pivot) => {
                    let factor = row[&col].clone();
                    for (c, v) in pivot {
                        let delta = &factor * v;
                        match row.entry(*c) {
                            Entry::Occupied(mut o) => {
                                let next = o.get().clone() - delta;
                                if next.is_zero() {
                                    o.remove();
                                } else {
                                    *o.get_mut() = next;
                                }
                            }
                            Entry::Vacant(slot) => {
                                slot.insert(-delta);
                            }
                        }
                    }
                    debug_assert!(!row.contains_key(&col));
                }
                None => {
                    let lead = row[&col].clone();
                    let normalized: SparseRow =
                        row.iter().map(|(c, v)| (*c, v / &lead)).collect();
                    pivots.insert(col, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn ratio(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rows of the vertex boundary: one row per edge, `target - source`.
pub fn edge_boundary_rows(p: &Presentation, c: &SquierComponent) -> Vec<SparseRow> {
    c.edges
        .iter()
        .map(|e| {
            let s = c
                .index_of(&e.source(p))
                .expect("edge endpoint missing from component");
            let t = c
                .index_of(&e.target(p))
                .expect("edge endpoint missing from component");
            let mut row = SparseRow::new();
            if s != t {
                row.insert(t, BigRational::one());
                row.insert(s, -BigRational::one());
            }
            row
        })
        .collect()
}

/// Rows of the edge boundary: one row per square, the signed boundary loop.
pub fn square_boundary_rows(p: &Presentation, c: &SquierComponent) -> Vec<SparseRow> {
    c.squares()
        .iter()
        .map(|sq| {
            let mut row = SparseRow::new();
            for (ei, coeff) in c.square_boundary(p, sq) {
                match row.entry(ei) {
                    Entry::Occupied(mut o) => {
                        let next = o.get().clone() + ratio(coeff);
                        if next.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = next;
                        }
                    }
                    Entry::Vacant(slot) => {
                        slot.insert(ratio(coeff));
                    }
                }
            }
            row
        })
        .collect()
}

/// First Betti number of the (possibly truncated) complex: the rank of its
/// first rational homology group.
pub fn first_betti_number(p: &Presentation, c: &SquierComponent) -> usize {
    let rank1 = rational_rank(edge_boundary_rows(p, c));
    let rank2 = rational_rank(square_boundary_rows(p, c));
    (c.edges.len() - rank1) - rank2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::squier::build_component;

    fn commuting() -> Presentation {
        Presentation::new(
            &["a", "b", "c"],
            &[("ab", "ba"), ("ac", "ca"), ("bc", "cb")],
        )
        .unwrap()
    }

    #[test]
    fn rank_of_small_matrices() {
        let row = |entries: &[(usize, i64)]| -> SparseRow {
            entries.iter().map(|&(c, v)| (c, ratio(v))).collect()
        };
        assert_eq!(rational_rank(vec![]), 0);
        assert_eq!(rational_rank(vec![row(&[])]), 0);
        assert_eq!(rational_rank(vec![row(&[(0, 2)]), row(&[(0, -3)])]), 1);
        assert_eq!(
            rational_rank(vec![
                row(&[(0, 1), (1, 1)]),
                row(&[(1, 1), (2, 1)]),
                row(&[(0, 1), (2, -1)]),
            ]),
            2
        );
        assert_eq!(
            rational_rank(vec![
                row(&[(0, 2), (1, 4)]),
                row(&[(0, 1), (1, 3)]),
                row(&[(1, 7)]),
            ]),
            2
        );
    }

    #[test]
    fn boundary_of_a_boundary_vanishes() {
        let p = commuting();
        let w = p.parse_word("aabbcc").unwrap();
        let c = build_component(&p, &w, &Budget::default());
        assert!(c.complete);
        let d1 = edge_boundary_rows(&p, &c);
        for sq_row in square_boundary_rows(&p, &c) {
            let mut total: SparseRow = SparseRow::new();
            for (ei, coeff) in &sq_row {
                for (v, val) in &d1[*ei] {
                    let next = total.remove(v).unwrap_or_else(BigRational::zero)
                        + coeff * val;
                    if !next.is_zero() {
                        total.insert(*v, next);
                    }
                }
            }
            assert!(total.is_empty());
        }
    }

    #[test]
    fn hexagon_has_one_loop() {
        let p = commuting();
        let w = p.parse_word("abc").unwrap();
        let c = build_component(&p, &w, &Budget::default());
        assert_eq!(first_betti_number(&p, &c), 1);
    }

    #[test]
    fn filled_square_kills_the_loop() {
        let p = commuting();
        let w = p.parse_word("bbcc").unwrap();
        let c = build_component(&p, &w, &Budget::default());
        assert_eq!(first_betti_number(&p, &c), 0);
    }

    #[test]
    fn truncated_ladder_betti_grows_linearly() {
        let p = Presentation::new(&["a", "b"], &[("ab", "a"), ("abb", "a")]).unwrap();
        let w = p.parse_word("a").unwrap();
        for n in 2..=6usize {
            // words a, ab, ..., ab^n: the class truncated by word length
            let b = Budget {
                max_word_length: n + 1,
                ..Budget::default()
            };
            let c = build_component(&p, &w, &b);
            assert_eq!(c.vertex_count(), n + 1);
            assert_eq!(c.edge_count(), 2 * n - 1);
            assert_eq!(first_betti_number(&p, &c), n - 1);
        }
    }
}
