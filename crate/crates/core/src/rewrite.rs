//! Single rewriting steps and bounded word-class searches.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::budget::Budget;
use crate::presentation::{Direction, Presentation, RewriteEdge, Word};
use crate::verdict::Verdict;

/// All rewrites applicable to `w`, ordered by (position, relation index,
/// direction) with `Forward` before `Backward`. The order is part of the
/// crate's determinism contract: breadth-first searches expand in exactly
/// this order.
pub fn one_step_rewrites(p: &Presentation, w: &Word) -> Vec<RewriteEdge> {
    let mut out = Vec::new();
    for pos in 0..=w.len() {
        for (ri, rel) in p.relations.iter().enumerate() {
            for dir in [Direction::Forward, Direction::Backward] {
                let from = rel.from_side(dir);
                if w.occurs_at(pos, from) {
                    out.push(RewriteEdge {
                        left: w.slice(0, pos),
                        relation: ri,
                        direction: dir,
                        right: w.slice(pos + from.len(), w.len()),
                    });
                }
            }
        }
    }
    out
}

/// Result of a bounded class enumeration: the words found and whether the
/// closure was exhausted within the budget.
#[derive(Clone, Debug)]
pub struct ClassEnumeration {
    pub words: BTreeSet<Word>,
    pub complete: bool,
}

pub(crate) struct ClassSearch {
    /// Words in breadth-first discovery order.
    pub order: Vec<Word>,
    /// word -> (parent word, edge applied at the parent).
    pub parents: HashMap<Word, (Word, RewriteEdge)>,
    pub complete: bool,
    pub found_target: bool,
}

impl ClassSearch {
    /// Breadth-first closure of `start` under rewrites, bounded by `b`.
    /// Stops early when `target` is reached. `complete` is only claimed when
    /// every discovered word had all its neighbors discovered.
    pub fn run(p: &Presentation, start: &Word, b: &Budget, target: Option<&Word>) -> ClassSearch {
        let mut out = ClassSearch {
            order: vec![start.clone()],
            parents: HashMap::new(),
            complete: true,
            found_target: Some(start) == target,
        };
        if out.found_target {
            return out;
        }
        let mut seen: HashMap<Word, usize> = HashMap::new();
        seen.insert(start.clone(), 0);
        let mut queue: VecDeque<(Word, usize)> = VecDeque::new();
        queue.push_back((start.clone(), 0));
        while let Some((w, depth)) = queue.pop_front() {
            if depth >= b.max_depth {
                out.complete = false;
                continue;
            }
            for edge in one_step_rewrites(p, &w) {
                let next = edge.target(p);
                if seen.contains_key(&next) {
                    continue;
                }
                if next.len() > b.max_word_length {
                    out.complete = false;
                    continue;
                }
                if out.order.len() >= b.max_words {
                    out.complete = false;
                    continue;
                }
                seen.insert(next.clone(), depth + 1);
                out.order.push(next.clone());
                out.parents.insert(next.clone(), (w.clone(), edge));
                if Some(&next) == target {
                    out.found_target = true;
                    out.complete = false;
                    return out;
                }
                queue.push_back((next, depth + 1));
            }
        }
        out
    }

    /// Derivation from the search's start to `to` (which must have been
    /// discovered), as a sequence of forward-applied edges.
    pub fn path_to(&self, p: &Presentation, to: &Word) -> Vec<RewriteEdge> {
        let mut edges = Vec::new();
        let mut cur = to.clone();
        while let Some((parent, edge)) = self.parents.get(&cur) {
            edges.push(edge.clone());
            cur = parent.clone();
        }
        edges.reverse();
        debug_assert_eq!(replay_derivation(p, &cur, &edges).as_ref(), Ok(to));
        edges
    }
}

/// Bounded enumeration of the word class of `w`.
pub fn enumerate_word_class(p: &Presentation, w: &Word, b: &Budget) -> ClassEnumeration {
    let search = ClassSearch::run(p, w, b, None);
    ClassEnumeration {
        words: search.order.into_iter().collect(),
        complete: search.complete,
    }
}

/// Certificate for a definite answer to `words_equal_mod_p`.
#[derive(Clone, Debug)]
pub enum EqualityCertificate {
    /// `Proved`: a derivation from `from` to `to`.
    Derivation {
        from: Word,
        to: Word,
        edges: Vec<RewriteEdge>,
    },
    /// `Refuted`: the full class of `enumerated_from`, which is closed under
    /// rewrites and does not contain `missing`.
    DisjointClasses {
        enumerated_from: Word,
        class: BTreeSet<Word>,
        missing: Word,
    },
}

/// Apply `edges` starting at `from`, checking each step, and return the final
/// word.
pub fn replay_derivation(
    p: &Presentation,
    from: &Word,
    edges: &[RewriteEdge],
) -> Result<Word, String> {
    let mut cur = from.clone();
    for (i, e) in edges.iter().enumerate() {
        if e.source(p) != cur {
            return Err(format!(
                "step {i}: edge source {:?} does not match current word {:?}",
                p.render_word(&e.source(p)),
                p.render_word(&cur)
            ));
        }
        cur = e.target(p);
    }
    Ok(cur)
}

/// Check an [`EqualityCertificate`] against the claim it certifies.
pub fn verify_equality_certificate(
    p: &Presentation,
    w1: &Word,
    w2: &Word,
    cert: &EqualityCertificate,
) -> Result<(), String> {
    match cert {
        EqualityCertificate::Derivation { from, to, edges } => {
            if !((from == w1 && to == w2) || (from == w2 && to == w1)) {
                return Err("derivation endpoints do not match the claim".to_string());
            }
            let end = replay_derivation(p, from, edges)?;
            if &end != to {
                return Err("derivation does not reach its stated endpoint".to_string());
            }
            Ok(())
        }
        EqualityCertificate::DisjointClasses {
            enumerated_from,
            class,
            missing,
        } => {
            if !((enumerated_from == w1 && missing == w2)
                || (enumerated_from == w2 && missing == w1))
            {
                return Err("class certificate words do not match the claim".to_string());
            }
            if !class.contains(enumerated_from) {
                return Err("class does not contain its own base word".to_string());
            }
            if class.contains(missing) {
                return Err("class contains the word it claims to exclude".to_string());
            }
            for w in class {
                for e in one_step_rewrites(p, w) {
                    if !class.contains(&e.target(p)) {
                        return Err(format!(
                            "class is not closed: {} rewrites to {}",
                            p.render_word(w),
                            p.render_word(&e.target(p))
                        ));
                    }
                }
            }
            Ok(())
        }
    }
}

/// Are `w1` and `w2` equal modulo the presentation? Both classes are probed:
/// a meeting point proves equality; either class closing without meeting the
/// other word refutes it.
pub fn words_equal_mod_p(
    p: &Presentation,
    w1: &Word,
    w2: &Word,
    b: &Budget,
) -> Verdict<EqualityCertificate> {
    if w1 == w2 {
        return Verdict::proved(
            EqualityCertificate::Derivation {
                from: w1.clone(),
                to: w2.clone(),
                edges: Vec::new(),
            },
            *b,
        );
    }
    let fwd = ClassSearch::run(p, w1, b, Some(w2));
    if fwd.found_target {
        return Verdict::proved(
            EqualityCertificate::Derivation {
                from: w1.clone(),
                to: w2.clone(),
                edges: fwd.path_to(p, w2),
            },
            *b,
        );
    }
    if fwd.complete {
        return Verdict::refuted(
            EqualityCertificate::DisjointClasses {
                enumerated_from: w1.clone(),
                class: fwd.order.into_iter().collect(),
                missing: w2.clone(),
            },
            *b,
        );
    }
    let bwd = ClassSearch::run(p, w2, b, Some(w1));
    if bwd.found_target {
        let mut edges: Vec<RewriteEdge> = bwd.path_to(p, w1).iter().map(|e| e.reversed()).collect();
        edges.reverse();
        return Verdict::proved(
            EqualityCertificate::Derivation {
                from: w1.clone(),
                to: w2.clone(),
                edges,
            },
            *b,
        );
    }
    if bwd.complete {
        return Verdict::refuted(
            EqualityCertificate::DisjointClasses {
                enumerated_from: w2.clone(),
                class: bwd.order.into_iter().collect(),
                missing: w1.clone(),
            },
            *b,
        );
    }
    Verdict::unknown(*b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Presentation;

    fn ex_ab() -> Presentation {
        // <a,b | ab=a, ab^2=a>: the class of "a" is {a b^n}.
        Presentation::new(&["a", "b"], &[("ab", "a"), ("abb", "a")]).unwrap()
    }

    fn commuting() -> Presentation {
        Presentation::new(
            &["a", "b", "c"],
            &[("ab", "ba"), ("ac", "ca"), ("bc", "cb")],
        )
        .unwrap()
    }

    #[test]
    fn one_step_order_and_targets() {
        let p = ex_ab();
        let w = p.parse_word("abb").unwrap();
        let edges = one_step_rewrites(&p, &w);
        let targets: Vec<String> = edges.iter().map(|e| p.render_word(&e.target(&p))).collect();
        // Position 0 first; per position relation 0 before 1, forward before
        // backward.
        assert_eq!(targets, vec!["ab", "abbb", "a", "abbbb"]);
        for e in &edges {
            assert_eq!(e.source(&p), w);
        }
    }

    #[test]
    fn class_of_a_truncates_to_short_words() {
        let p = ex_ab();
        let a = p.parse_word("a").unwrap();
        let b = Budget {
            max_word_length: 5,
            ..Budget::default()
        };
        let c = enumerate_word_class(&p, &a, &b);
        let words: Vec<String> = c.words.iter().map(|w| p.render_word(w)).collect();
        assert_eq!(words, vec!["a", "ab", "abb", "abbb", "abbbb"]);
        assert!(!c.complete);
    }

    #[test]
    fn complete_class_is_closed() {
        let p = commuting();
        let w = p.parse_word("abc").unwrap();
        let c = enumerate_word_class(&p, &w, &Budget::default());
        assert!(c.complete);
        assert_eq!(c.words.len(), 6);
        for w in &c.words {
            for e in one_step_rewrites(&p, w) {
                assert!(c.words.contains(&e.target(&p)));
            }
        }
    }

    #[test]
    fn equality_reflexive_is_proved_empty() {
        let p = commuting();
        let w = p.parse_word("abc").unwrap();
        let v = words_equal_mod_p(&p, &w, &w, &Budget::default());
        assert!(v.is_proved());
        match v.certificate.unwrap() {
            EqualityCertificate::Derivation { edges, .. } => assert!(edges.is_empty()),
            _ => panic!("expected a derivation"),
        }
    }

    #[test]
    fn commuting_derivation_has_minimal_length_four() {
        let p = commuting();
        let w1 = p.parse_word("aabc").unwrap();
        let w2 = p.parse_word("caba").unwrap();
        let v = words_equal_mod_p(&p, &w1, &w2, &Budget::default());
        assert!(v.is_proved());
        let cert = v.certificate.unwrap();
        verify_equality_certificate(&p, &w1, &w2, &cert).unwrap();
        match cert {
            EqualityCertificate::Derivation { edges, .. } => assert_eq!(edges.len(), 4),
            _ => panic!("expected a derivation"),
        }
    }

    #[test]
    fn refutation_through_the_other_class() {
        // [a] is infinite, but [b] = {b}: the refutation must come from the
        // second enumeration.
        let p = ex_ab();
        let a = p.parse_word("a").unwrap();
        let b = p.parse_word("b").unwrap();
        let v = words_equal_mod_p(&p, &a, &b, &Budget::default());
        assert!(v.is_refuted());
        let cert = v.certificate.unwrap();
        verify_equality_certificate(&p, &a, &b, &cert).unwrap();
        match cert {
            EqualityCertificate::DisjointClasses {
                enumerated_from,
                class,
                ..
            } => {
                assert_eq!(enumerated_from, b);
                assert_eq!(class.len(), 1);
            }
            _ => panic!("expected a class certificate"),
        }
    }

    #[test]
    fn definite_answers_stable_across_budgets() {
        let p = ex_ab();
        let a = p.parse_word("a").unwrap();
        let ab4 = p.parse_word("abbbb").unwrap();
        let b = p.parse_word("b").unwrap();
        let mut seen_eq = Vec::new();
        let mut seen_neq = Vec::new();
        for max_words in [2, 8, 64, 512] {
            let budget = Budget {
                max_words,
                max_word_length: 12,
                ..Budget::default()
            };
            seen_eq.push(words_equal_mod_p(&p, &a, &ab4, &budget).status);
            seen_neq.push(words_equal_mod_p(&p, &a, &b, &budget).status);
        }
        use crate::verdict::Status::*;
        for s in &seen_eq {
            assert_ne!(*s, Refuted);
        }
        for s in &seen_neq {
            assert_ne!(*s, Proved);
        }
        assert_eq!(*seen_eq.last().unwrap(), Proved);
        assert_eq!(*seen_neq.last().unwrap(), Refuted);
    }
}
