//! Freeness analysis of diagram groups.
//!
//! The group of a word `w` is free exactly when no member of `w`'s class
//! splits into two factors with non-trivial groups; conversely such a split
//! yields a commuting pair of independent non-trivial elements and hence a
//! Z x Z subgroup, which no free group contains. This module hunts for
//! splits whose factors it can certify non-trivial (an explicit reduced
//! spherical diagram), certifies factors trivial where the class is finite
//! (complete component with collapsing fundamental group), and assembles
//! the verdict:
//!
//! * `NotFree` always ships a replayable commuting-pair witness;
//! * `Free` requires the whole class to be enumerated and every split of
//!   every member to have a certified-trivial side;
//! * anything else is `Unknown`, with the strongest partial evidence found.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::budget::Budget;
use crate::diagram::{Diagram, PlacedAtom};
use crate::homology::first_betti_number;
use crate::pi1::{pi1_presentation, simplify_presentation, spanning_tree, SpanningTree};
use crate::presentation::{Direction, Presentation, RewriteEdge, Word};
use crate::rewrite::ClassSearch;
use crate::squier::{build_component, edge_from_json, edge_json, SquierComponent};
use crate::verdict::{Status, Verdict};

/// Why a group is trivial: its whole class was enumerated and the complex's
/// fundamental group collapses under Tietze moves.
#[derive(Clone, Debug)]
pub struct TrivialityCertificate {
    pub word: Word,
    pub vertices: usize,
    pub edges: usize,
    pub squares: usize,
    /// Generators of the raw presentation before simplification.
    pub generators: usize,
}

#[derive(Clone, Debug)]
pub enum NontrivialityEvidence {
    /// A reduced spherical diagram with at least one cell: a non-identity
    /// group element, checkable by re-reducing.
    NonTrivialElement { base: Word, diagram: Diagram },
    /// The group is trivial (this refutes non-triviality).
    TrivialGroup(TrivialityCertificate),
}

fn oriented_atom(c: &SquierComponent, edge: usize, dir: Direction) -> PlacedAtom {
    let e = &c.edges[edge];
    PlacedAtom::new(e.offset(), e.relation, dir)
}

/// The loop diagram of a non-tree edge: tree path to its source, the edge,
/// tree path back from its target. Spherical over the component base.
fn loop_diagram(
    p: &Presentation,
    c: &SquierComponent,
    tree: &SpanningTree,
    nt_edge: usize,
) -> Diagram {
    let e = &c.edges[nt_edge];
    let s = c.index_of(&e.source(p)).expect("edge source in component");
    let t = c.index_of(&e.target(p)).expect("edge target in component");
    let mut steps = tree.path_from_root(s);
    steps.push((nt_edge, Direction::Forward));
    let back = tree.path_from_root(t);
    steps.extend(back.iter().rev().map(|&(i, d)| (i, d.flip())));
    let atoms: Vec<PlacedAtom> = steps
        .iter()
        .map(|&(i, d)| oriented_atom(c, i, d))
        .collect();
    Diagram::from_derivation(p, &c.vertices[0], &atoms).expect("tree loop replays")
}

/// Bounded decision of "is the group of `w` non-trivial", returning the
/// component it explored so callers can reuse it.
pub fn group_nontrivial_with_component(
    p: &Presentation,
    w: &Word,
    b: &Budget,
) -> (Verdict<NontrivialityEvidence>, SquierComponent) {
    let c = build_component(p, w, b);
    let tree = spanning_tree(p, &c);
    for &nt in &tree.non_tree {
        let d = loop_diagram(p, &c, &tree, nt).reduce(p);
        if d.cells() > 0 {
            let v = Verdict::proved(
                NontrivialityEvidence::NonTrivialElement {
                    base: w.clone(),
                    diagram: d,
                },
                *b,
            );
            return (v, c);
        }
    }
    if c.complete {
        let raw = pi1_presentation(p, &c);
        let simplified = simplify_presentation(&raw, b);
        if simplified.is_trivial_presentation() {
            let cert = TrivialityCertificate {
                word: w.clone(),
                vertices: c.vertex_count(),
                edges: c.edge_count(),
                squares: c.squares().len(),
                generators: raw.generators,
            };
            let v = Verdict::refuted(NontrivialityEvidence::TrivialGroup(cert), *b);
            return (v, c);
        }
    }
    (Verdict::unknown(*b), c)
}

pub fn group_nontrivial(
    p: &Presentation,
    w: &Word,
    b: &Budget,
) -> Verdict<NontrivialityEvidence> {
    group_nontrivial_with_component(p, w, b).0
}

/// Memoized non-triviality oracle. Statuses transfer across class members
/// (the group only depends on the class), witnesses are kept per base word,
/// and all inner searches run under a capped "quick" budget so that a large
/// outer budget cannot make one factor query explode.
pub struct AnalysisSession<'a> {
    p: &'a Presentation,
    pub budget: Budget,
    quick: Budget,
    status: HashMap<Word, Status>,
    witnesses: HashMap<Word, Diagram>,
}

impl<'a> AnalysisSession<'a> {
    pub fn new(p: &'a Presentation, budget: Budget) -> Self {
        let quick = Budget {
            max_word_length: budget.max_word_length.min(24),
            max_words: budget.max_words.min(512),
            max_cells: budget.max_cells,
            max_depth: budget.max_depth.min(32),
        };
        AnalysisSession {
            p,
            budget,
            quick,
            status: HashMap::new(),
            witnesses: HashMap::new(),
        }
    }

    /// `Proved` = non-trivial, `Refuted` = trivial. The empty word has the
    /// trivial group.
    pub fn group_status(&mut self, w: &Word) -> Status {
        if w.is_empty() {
            return Status::Refuted;
        }
        if let Some(&s) = self.status.get(w) {
            return s;
        }
        let (v, c) = group_nontrivial_with_component(self.p, w, &self.quick);
        for m in &c.vertices {
            self.status.insert(m.clone(), v.status);
        }
        if let Some(NontrivialityEvidence::NonTrivialElement { diagram, .. }) = v.certificate {
            self.witnesses.insert(w.clone(), diagram);
        }
        v.status
    }

    /// A reduced non-trivial spherical diagram based exactly at `w`, if the
    /// bounded search finds one.
    pub fn nontrivial_witness(&mut self, w: &Word) -> Option<Diagram> {
        if let Some(d) = self.witnesses.get(w) {
            return Some(d.clone());
        }
        let (v, _) = group_nontrivial_with_component(self.p, w, &self.quick);
        match v.certificate {
            Some(NontrivialityEvidence::NonTrivialElement { diagram, .. }) => {
                self.witnesses.insert(w.clone(), diagram.clone());
                Some(diagram)
            }
            _ => None,
        }
    }
}

/// A member of the class splitting into factors with non-trivial groups.
#[derive(Clone, Debug)]
pub struct SplitWitness {
    pub base: Word,
    pub member: Word,
    /// Rewrites carrying `base` to `member`.
    pub derivation: Vec<RewriteEdge>,
    /// Concatenates to `member`; every factor's group is non-trivial.
    pub factors: Vec<Word>,
    /// One reduced non-trivial spherical diagram per factor.
    pub certificates: Vec<Diagram>,
}

#[derive(Clone, Debug)]
pub struct DimensionAnalysis {
    /// Lower bound for the algebraic dimension: the largest number of
    /// jointly non-trivial factors found, floored at 1.
    pub bound: usize,
    pub witness: Option<SplitWitness>,
    pub members_scanned: usize,
    pub class_complete: bool,
}

fn dimension_over_members(
    session: &mut AnalysisSession,
    base: &Word,
    class: &ClassSearch,
) -> DimensionAnalysis {
    let p = session.p;
    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    for (mi, member) in class.order.iter().enumerate() {
        let len = member.len();
        // dp[i] = best factor count covering the prefix of length i
        let mut dp: Vec<Option<(usize, usize)>> = vec![None; len + 1];
        dp[0] = Some((0, 0));
        for i in 1..=len {
            for j in 0..i {
                let Some((cnt, _)) = dp[j] else { continue };
                let factor = member.slice(j, i);
                if session.group_status(&factor) == Status::Proved {
                    let cand = cnt + 1;
                    if dp[i].map_or(true, |(c, _)| cand > c) {
                        dp[i] = Some((cand, j));
                    }
                }
            }
        }
        if let Some((n, _)) = dp[len] {
            if best.as_ref().map_or(true, |&(bn, _, _)| n > bn) {
                let mut cuts = Vec::new();
                let mut i = len;
                cuts.push(i);
                while i > 0 {
                    i = dp[i].unwrap().1;
                    cuts.push(i);
                }
                cuts.reverse();
                best = Some((n, mi, cuts));
            }
        }
    }
    let bound = best.as_ref().map_or(1, |&(n, _, _)| n.max(1));
    let witness = best.and_then(|(n, mi, cuts)| {
        if n < 2 {
            return None;
        }
        let member = &class.order[mi];
        let factors: Vec<Word> = cuts
            .windows(2)
            .map(|pair| member.slice(pair[0], pair[1]))
            .collect();
        let mut certificates = Vec::with_capacity(factors.len());
        for f in &factors {
            certificates.push(session.nontrivial_witness(f)?);
        }
        Some(SplitWitness {
            base: base.clone(),
            member: member.clone(),
            derivation: class.path_to(p, member),
            factors,
            certificates,
        })
    });
    DimensionAnalysis {
        bound,
        witness,
        members_scanned: class.order.len(),
        class_complete: class.complete,
    }
}

fn scan_budget(b: &Budget) -> Budget {
    Budget {
        max_words: b.max_words.min(2048),
        ..*b
    }
}

/// Largest `n` such that some class member splits into `n` factors whose
/// groups are all certified non-trivial; `n >= 2` rules freeness out.
pub fn algebraic_dimension_lower_bound(
    p: &Presentation,
    w: &Word,
    b: &Budget,
) -> DimensionAnalysis {
    let mut session = AnalysisSession::new(p, *b);
    let class = ClassSearch::run(p, w, &scan_budget(b), None);
    dimension_over_members(&mut session, w, &class)
}

/// Two commuting independent non-trivial elements of the group of `base`,
/// with everything needed to replay the construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Z2Witness {
    pub base: Word,
    /// The split class member, `left_word . right_word`.
    pub ambient: Word,
    pub derivation: Vec<RewriteEdge>,
    pub left_word: Word,
    pub right_word: Word,
    pub left_cert: Diagram,
    pub right_cert: Diagram,
    /// Conjugates of `left_cert + identity` and `identity + right_cert`
    /// back to the base word.
    pub a: Diagram,
    pub b: Diagram,
}

fn z2_from_parts(
    p: &Presentation,
    base: &Word,
    derivation: &[RewriteEdge],
    left_word: Word,
    right_word: Word,
    left_cert: Diagram,
    right_cert: Diagram,
) -> Result<Z2Witness, String> {
    if left_word.is_empty() || right_word.is_empty() {
        return Err("split factors must be non-empty".into());
    }
    let ambient = left_word.concat(&right_word);
    let atoms: Vec<PlacedAtom> = derivation
        .iter()
        .map(|e| PlacedAtom::new(e.offset(), e.relation, e.direction))
        .collect();
    let gamma =
        Diagram::from_derivation(p, base, &atoms).map_err(|e| format!("derivation: {e}"))?;
    if gamma.bottom() != &ambient {
        return Err("derivation does not reach the split member".into());
    }
    for (name, cert, word) in [
        ("left", &left_cert, &left_word),
        ("right", &right_cert, &right_word),
    ] {
        if cert.top() != word || cert.bottom() != word {
            return Err(format!("{name} certificate is not spherical over its factor"));
        }
        if !cert.is_reduced(p) || cert.cells() == 0 {
            return Err(format!("{name} certificate is not a reduced non-trivial diagram"));
        }
    }
    let a0 = left_cert.sum(p, &Diagram::identity(right_word.clone()));
    let b0 = Diagram::identity(left_word.clone()).sum(p, &right_cert);
    let inv = gamma.invert(p);
    let conjugate = |d: &Diagram| -> Result<Diagram, String> {
        Ok(gamma
            .concatenate(p, d)
            .map_err(|e| e.to_string())?
            .concatenate(p, &inv)
            .map_err(|e| e.to_string())?
            .reduce(p))
    };
    let a = conjugate(&a0)?;
    let b = conjugate(&b0)?;
    let prod = |x: &Diagram, y: &Diagram| -> Result<Diagram, String> {
        x.compose_reduced(p, y).map_err(|e| e.to_string())
    };
    if a.cells() == 0 || b.cells() == 0 {
        return Err("a conjugated factor element collapsed to the identity".into());
    }
    if prod(&a, &b)? != prod(&b, &a)? {
        return Err("the two factor elements do not commute".into());
    }
    if prod(&a, &b.invert(p))?.cells() == 0 {
        return Err("the two factor elements coincide".into());
    }
    if prod(&a, &a)?.cells() == 0 {
        return Err("a factor element squares to the identity".into());
    }
    Ok(Z2Witness {
        base: base.clone(),
        ambient,
        derivation: derivation.to_vec(),
        left_word,
        right_word,
        left_cert,
        right_cert,
        a,
        b,
    })
}

/// Assemble a commuting-pair witness from a split with `>= 2` factors,
/// grouping all factors after the first into the right-hand side.
pub fn build_z2_witness(p: &Presentation, s: &SplitWitness) -> Result<Z2Witness, String> {
    if s.factors.len() < 2 || s.certificates.len() != s.factors.len() {
        return Err("split witness needs at least two certified factors".into());
    }
    let left_word = s.factors[0].clone();
    let mut right_word = Word::empty();
    for f in &s.factors[1..] {
        right_word = right_word.concat(f);
    }
    let left_cert = s.certificates[0].clone();
    let right_cert = if s.factors.len() == 2 {
        s.certificates[1].clone()
    } else {
        let mut rest = Word::empty();
        for f in &s.factors[2..] {
            rest = rest.concat(f);
        }
        s.certificates[1].sum(p, &Diagram::identity(rest))
    };
    z2_from_parts(p, &s.base, &s.derivation, left_word, right_word, left_cert, right_cert)
}

/// Re-run the whole construction from the witness's raw parts and compare.
pub fn verify_z2_witness(p: &Presentation, z: &Z2Witness) -> Result<(), String> {
    let rebuilt = z2_from_parts(
        p,
        &z.base,
        &z.derivation,
        z.left_word.clone(),
        z.right_word.clone(),
        z.left_cert.clone(),
        z.right_cert.clone(),
    )?;
    if rebuilt.ambient != z.ambient {
        return Err("ambient word does not match the factors".into());
    }
    if rebuilt.a != z.a || rebuilt.b != z.b {
        return Err("stored commuting pair does not match its construction".into());
    }
    Ok(())
}

impl Z2Witness {
    pub fn to_json(&self, p: &Presentation) -> Value {
        json!({
            "kind": "z2",
            "base": p.render_word(&self.base),
            "ambient": p.render_word(&self.ambient),
            "derivation": self.derivation.iter().map(|e| edge_json(p, e)).collect::<Vec<_>>(),
            "left_word": p.render_word(&self.left_word),
            "right_word": p.render_word(&self.right_word),
            "left_cert": self.left_cert.to_json(p),
            "right_cert": self.right_cert.to_json(p),
            "a": self.a.to_json(p),
            "b": self.b.to_json(p),
        })
    }

    pub fn from_json(p: &Presentation, v: &Value) -> Result<Z2Witness, String> {
        if v.get("kind").and_then(Value::as_str) != Some("z2") {
            return Err("not a commuting-pair witness (kind != \"z2\")".into());
        }
        let word = |k: &str| -> Result<Word, String> {
            let s = v
                .get(k)
                .and_then(Value::as_str)
                .ok_or_else(|| format!("witness field '{k}' missing or not a string"))?;
            p.parse_word(s).map_err(|e| e.to_string())
        };
        let diagram = |k: &str| -> Result<Diagram, String> {
            let dv = v
                .get(k)
                .ok_or_else(|| format!("witness field '{k}' missing"))?;
            Diagram::from_json(p, dv).map_err(|e| format!("{k}: {e}"))
        };
        let derivation = v
            .get("derivation")
            .and_then(Value::as_array)
            .ok_or("witness derivation missing or not an array")?
            .iter()
            .map(|ev| edge_from_json(p, ev))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Z2Witness {
            base: word("base")?,
            ambient: word("ambient")?,
            derivation,
            left_word: word("left_word")?,
            right_word: word("right_word")?,
            left_cert: diagram("left_cert")?,
            right_cert: diagram("right_cert")?,
            a: diagram("a")?,
            b: diagram("b")?,
        })
    }
}

impl SplitWitness {
    pub fn to_json(&self, p: &Presentation) -> Value {
        json!({
            "kind": "split",
            "base": p.render_word(&self.base),
            "member": p.render_word(&self.member),
            "derivation": self.derivation.iter().map(|e| edge_json(p, e)).collect::<Vec<_>>(),
            "factors": self.factors.iter().map(|f| p.render_word(f)).collect::<Vec<_>>(),
            "certificates": self.certificates.iter().map(|d| d.to_json(p)).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreenessVerdict {
    Free,
    NotFree,
    Unknown,
}

impl FreenessVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            FreenessVerdict::Free => "free",
            FreenessVerdict::NotFree => "not-free",
            FreenessVerdict::Unknown => "unknown",
        }
    }
}

/// One split whose sides could not both be handled.
#[derive(Clone, Debug)]
pub struct CutEvidence {
    pub member: Word,
    pub cut: usize,
    pub left_status: Status,
    pub right_status: Status,
}

/// Split-by-split accounting over the scanned members: a cut is *certified*
/// when at least one side's group is certified trivial.
#[derive(Clone, Debug)]
pub struct DimensionOneEvidence {
    pub members: usize,
    pub cuts: usize,
    pub certified_cuts: usize,
    /// Bounded sample of the cuts that are not certified.
    pub uncertified: Vec<CutEvidence>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankEstimate {
    /// First Betti number of the complete complex.
    Exact(usize),
    /// Betti numbers of length-truncated complexes, for extrapolation.
    Truncations(Vec<TruncationPoint>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationPoint {
    pub max_word_length: usize,
    pub vertices: usize,
    pub edges: usize,
    pub betti: usize,
}

#[derive(Clone, Debug)]
pub struct FreenessReport {
    pub word: Word,
    pub verdict: FreenessVerdict,
    pub dimension_lower_bound: usize,
    pub class_complete: bool,
    pub members_scanned: usize,
    pub split_witness: Option<SplitWitness>,
    pub z2_witness: Option<Z2Witness>,
    pub dimension_one: Option<DimensionOneEvidence>,
    pub rank_estimate: RankEstimate,
    pub notes: Vec<String>,
    pub budget_used: Budget,
}

fn rank_estimate(p: &Presentation, w: &Word, b: &Budget, complete: bool) -> RankEstimate {
    if complete {
        let c = build_component(p, w, b);
        return RankEstimate::Exact(first_betti_number(p, &c));
    }
    let mut points = Vec::new();
    let mut len = w.len() + 2;
    for _ in 0..4 {
        if len > b.max_word_length {
            break;
        }
        let tb = Budget {
            max_word_length: len,
            max_words: b.max_words.min(4000),
            ..*b
        };
        let c = build_component(p, w, &tb);
        points.push(TruncationPoint {
            max_word_length: len,
            vertices: c.vertex_count(),
            edges: c.edge_count(),
            betti: first_betti_number(p, &c),
        });
        len += 2;
    }
    RankEstimate::Truncations(points)
}

/// Full bounded analysis of the group of `w`.
pub fn freeness_verdict(p: &Presentation, w: &Word, b: &Budget) -> FreenessReport {
    let mut session = AnalysisSession::new(p, *b);
    let class = ClassSearch::run(p, w, &scan_budget(b), None);
    let dim = dimension_over_members(&mut session, w, &class);
    let mut notes = Vec::new();
    let mut z2 = None;
    if dim.bound >= 2 {
        match &dim.witness {
            Some(s) => match build_z2_witness(p, s) {
                Ok(witness) => z2 = Some(witness),
                Err(e) => notes.push(format!("commuting-pair construction failed: {e}")),
            },
            None => notes.push(
                "a multi-factor split was detected but its certificates could not be rebuilt"
                    .into(),
            ),
        }
    }

    let mut dimension_one = None;
    let mut all_certified = false;
    if z2.is_none() {
        let mut cuts = 0usize;
        let mut certified = 0usize;
        let mut uncertified = Vec::new();
        for member in &class.order {
            for cut in 1..member.len() {
                cuts += 1;
                let ls = session.group_status(&member.slice(0, cut));
                let rs = session.group_status(&member.slice(cut, member.len()));
                if ls == Status::Refuted || rs == Status::Refuted {
                    certified += 1;
                } else if uncertified.len() < 12 {
                    uncertified.push(CutEvidence {
                        member: member.clone(),
                        cut,
                        left_status: ls,
                        right_status: rs,
                    });
                }
            }
        }
        all_certified = certified == cuts;
        dimension_one = Some(DimensionOneEvidence {
            members: class.order.len(),
            cuts,
            certified_cuts: certified,
            uncertified,
        });
    }

    let verdict = if z2.is_some() {
        FreenessVerdict::NotFree
    } else if dim.bound == 1 && class.complete && all_certified {
        FreenessVerdict::Free
    } else {
        FreenessVerdict::Unknown
    };
    if !class.complete {
        notes.push(
            "class enumeration truncated by the budget (the class may be infinite); a complete freeness proof needs a manual class-shape lemma"
                .into(),
        );
    }
    if verdict == FreenessVerdict::Unknown && dim.bound == 1 && !all_certified {
        notes.push("some splits have no certified-trivial side within budget".into());
    }

    FreenessReport {
        word: w.clone(),
        verdict,
        dimension_lower_bound: dim.bound,
        class_complete: class.complete,
        members_scanned: dim.members_scanned,
        split_witness: dim.witness,
        z2_witness: z2,
        dimension_one,
        rank_estimate: rank_estimate(p, w, b, class.complete),
        notes,
        budget_used: *b,
    }
}

impl FreenessReport {
    pub fn to_json(&self, p: &Presentation) -> Value {
        let rank = match &self.rank_estimate {
            RankEstimate::Exact(r) => json!({ "exact": r }),
            RankEstimate::Truncations(points) => json!({
                "truncations": points.iter().map(|t| json!({
                    "max_word_length": t.max_word_length,
                    "vertices": t.vertices,
                    "edges": t.edges,
                    "betti": t.betti,
                })).collect::<Vec<_>>(),
            }),
        };
        let dim_one = self.dimension_one.as_ref().map(|d| {
            json!({
                "members": d.members,
                "cuts": d.cuts,
                "certified_cuts": d.certified_cuts,
                "uncertified_samples": d.uncertified.iter().map(|c| json!({
                    "member": p.render_word(&c.member),
                    "cut": c.cut,
                    "left_status": c.left_status.as_str(),
                    "right_status": c.right_status.as_str(),
                })).collect::<Vec<_>>(),
            })
        });
        json!({
            "word": p.render_word(&self.word),
            "verdict": self.verdict.as_str(),
            "dimension_lower_bound": self.dimension_lower_bound,
            "class_complete": self.class_complete,
            "members_scanned": self.members_scanned,
            "split_witness": self.split_witness.as_ref().map(|s| s.to_json(p)),
            "z2_witness": self.z2_witness.as_ref().map(|z| z.to_json(p)),
            "dimension_one": dim_one,
            "rank_estimate": rank,
            "notes": self.notes,
            "budget": self.budget_used.to_json(),
        })
    }

    pub fn render_text(&self, p: &Presentation) -> String {
        let mut out = String::new();
        let push = |out: &mut String, line: String| {
            out.push_str(&line);
            out.push('\n');
        };
        push(&mut out, format!("word: {}", p.render_word(&self.word)));
        push(&mut out, format!("verdict: {}", self.verdict.as_str()));
        push(
            &mut out,
            format!(
                "class: {} member(s) scanned ({})",
                self.members_scanned,
                if self.class_complete {
                    "complete"
                } else {
                    "truncated"
                }
            ),
        );
        push(
            &mut out,
            format!("dimension lower bound: {}", self.dimension_lower_bound),
        );
        match &self.rank_estimate {
            RankEstimate::Exact(r) => push(&mut out, format!("rank: {r} (exact)")),
            RankEstimate::Truncations(points) => {
                let ladder: Vec<String> = points
                    .iter()
                    .map(|t| format!("len<={} -> b1={}", t.max_word_length, t.betti))
                    .collect();
                push(&mut out, format!("rank ladder: {}", ladder.join(", ")));
            }
        }
        if let Some(z) = &self.z2_witness {
            push(
                &mut out,
                format!(
                    "commuting pair over {} = {} * {}",
                    p.render_word(&z.ambient),
                    p.render_word(&z.left_word),
                    p.render_word(&z.right_word)
                ),
            );
        }
        if let Some(d) = &self.dimension_one {
            push(
                &mut out,
                format!(
                    "splits: {} checked, {} with a certified-trivial side",
                    d.cuts, d.certified_cuts
                ),
            );
        }
        for n in &self.notes {
            push(&mut out, format!("note: {n}"));
        }
        out
    }
}
