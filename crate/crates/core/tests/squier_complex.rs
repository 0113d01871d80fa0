//! Squier complex invariants: independence from relation order, agreement
//! between homology and the fundamental group, parallelism classes, and
//! cube face closure.

mod common;

use common::*;
use diagram_groups::homology::first_betti_number;
use diagram_groups::pi1::{pi1_presentation, simplify_presentation, spanning_tree};
use diagram_groups::squier::{build_component, edge_parallelism_classes, square_edges};
use diagram_groups::{Budget, Presentation};
use itertools::Itertools;

#[test]
fn counts_do_not_depend_on_relation_order() {
    let rels = [("ab", "ba"), ("ac", "ca"), ("bc", "cb")];
    let b = Budget::default();
    for base in ["abc", "bbcc", "abbc"] {
        let mut seen = Vec::new();
        for perm in rels.iter().permutations(3) {
            let ordered: Vec<(&str, &str)> = perm.into_iter().copied().collect();
            let p = Presentation::new(&["a", "b", "c"], &ordered).unwrap();
            let c = build_component(&p, &w(&p, base), &b);
            assert!(c.complete);
            let stats = (
                c.vertex_count(),
                c.edge_count(),
                c.cube_counts(),
                c.euler_characteristic(),
                first_betti_number(&p, &c),
            );
            seen.push(stats);
        }
        assert!(
            seen.iter().all(|s| *s == seen[0]),
            "relation order changed the complex over {base}: {seen:?}"
        );
    }
}

#[test]
fn abelianized_fundamental_group_matches_homology() {
    let b = Budget::default();
    let cases = [
        (commuting(), "abc"),
        (commuting(), "abbc"),
        (commuting(), "bbcc"),
        (commuting(), "aabbcc"),
        (one_square(), "aabb"),
    ];
    for (p, base) in &cases {
        let c = build_component(p, &w(p, base), &b);
        assert!(c.complete, "component of {base} should be finite");
        let betti = first_betti_number(p, &c);
        assert_eq!(betti, smith_betti(p, &c), "rational vs integer homology over {base}");
        let raw = pi1_presentation(p, &c);
        assert_eq!(raw.abelianized_rank(), betti, "abelianization over {base}");
        let slim = simplify_presentation(&raw, &b);
        assert_eq!(slim.abelianized_rank(), betti, "simplification changed H1 over {base}");
    }
}

#[test]
fn parallelism_classes_carry_one_relation() {
    let b = Budget::default();
    let cases = [
        (commuting(), "abc"),
        (commuting(), "abbc"),
        (commuting(), "aabbcc"),
        (one_square(), "aabb"),
    ];
    for (p, base) in &cases {
        let c = build_component(p, &w(p, base), &b);
        let classes = edge_parallelism_classes(p, &c);
        for class in &classes {
            let rel = c.edges[class[0].0].relation;
            for &(i, _) in class {
                assert_eq!(c.edges[i].relation, rel, "mixed labels in one class over {base}");
            }
        }
        let oriented: usize = classes.iter().map(Vec::len).sum();
        assert_eq!(oriented, 2 * c.edge_count());
    }
}

#[test]
fn squares_have_their_faces_in_the_complex() {
    let b = Budget::default();
    let cases = [(commuting(), "aabbcc"), (commuting(), "abbc"), (one_square(), "aabb")];
    let mut squares_seen = 0usize;
    for (p, base) in &cases {
        let c = build_component(p, &w(p, base), &b);
        for sq in c.squares() {
            squares_seen += 1;
            for mask in 0..4usize {
                let corner = sq.corner(p, mask);
                assert!(c.contains(&corner), "missing corner of a square over {base}");
            }
            for e in square_edges(p, sq) {
                assert!(
                    c.edge_index(&diagram_groups::squier::canonical_edge(&e)).is_some(),
                    "missing face edge over {base}"
                );
            }
            let boundary = c.square_boundary(p, sq);
            for (idx, coef) in boundary {
                assert!(idx < c.edge_count());
                assert!(coef == 1 || coef == -1);
            }
        }
        let chi = c.vertex_count() as i64 - c.edge_count() as i64
            + c.cube_counts()
                .iter()
                .enumerate()
                .map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) })
                .sum::<i64>();
        assert_eq!(chi, c.euler_characteristic());
    }
    assert!(squares_seen > 0, "the chosen components should contain squares");
}

#[test]
fn spanning_tree_reaches_every_vertex() {
    let b = Budget::default();
    for (p, base) in [(commuting(), "aabbcc"), (commuting(), "abbc")] {
        let c = build_component(&p, &w(&p, base), &b);
        let tree = spanning_tree(&p, &c);
        for v in 0..c.vertex_count() {
            let path = tree.path_from_root(v);
            let mut cur = c.vertices[0].clone();
            for (edge, dir) in path {
                let e = &c.edges[edge];
                let (from, to) = match dir {
                    diagram_groups::Direction::Forward => (e.source(&p), e.target(&p)),
                    diagram_groups::Direction::Backward => (e.target(&p), e.source(&p)),
                };
                assert_eq!(cur, from);
                cur = to;
            }
            assert_eq!(cur, c.vertices[v], "tree path misses vertex {v} over {base}");
        }
    }
}
