//! Certificate replay and budget behaviour of the freeness analyzer: every
//! Proved/Refuted answer must survive independent re-checking and must never
//! flip as the search is given more room.

mod common;

use common::*;
use diagram_groups::freeness::{
    freeness_verdict, group_nontrivial, verify_z2_witness, AnalysisSession, FreenessVerdict,
    NontrivialityEvidence, Z2Witness,
};
use diagram_groups::rewrite::replay_derivation;
use diagram_groups::{Budget, Presentation, Status, Word};
use serde_json::json;

fn small() -> Budget {
    Budget { max_word_length: 8, max_words: 300, ..Budget::default() }
}

fn mid() -> Budget {
    Budget { max_word_length: 12, max_words: 1500, ..Budget::default() }
}

fn big() -> Budget {
    Budget { max_word_length: 26, max_words: 30_000, ..Budget::default() }
}

#[test]
fn nontriviality_witnesses_replay() {
    let b = Budget::default();
    let proved = [
        (commuting(), "abc"),
        (commuting(), "aabbcc"),
        (absorbing_pair(), "a"),
        (interior_letter(), "abc"),
    ];
    for (p, base) in &proved {
        let base = w(p, base);
        let v = group_nontrivial(p, &base, &b);
        assert_eq!(v.status, Status::Proved, "expected a loop over {}", p.render_word(&base));
        let Some(NontrivialityEvidence::NonTrivialElement { base: wb, diagram }) = v.certificate
        else {
            panic!("Proved without an element");
        };
        assert_eq!(wb, base);
        diagram.validate(p).unwrap();
        assert!(diagram.is_reduced(p));
        assert!(diagram.is_spherical());
        assert_eq!(diagram.top(), &base);
        assert!(diagram.cells() > 0, "the witness must not be the identity");

        let mut session = AnalysisSession::new(p, b);
        assert_eq!(session.group_status(&base), Status::Proved);
        let d = session.nontrivial_witness(&base).unwrap();
        assert!(d.is_reduced(p) && d.is_spherical() && d.cells() > 0);
    }

    let p = commuting();
    let base = w(&p, "bbcc");
    let v = group_nontrivial(&p, &base, &b);
    assert_eq!(v.status, Status::Refuted);
    let Some(NontrivialityEvidence::TrivialGroup(cert)) = v.certificate else {
        panic!("Refuted without a certificate");
    };
    assert_eq!(cert.word, base);
    assert_eq!(cert.vertices, 6);
    assert!(cert.edges >= cert.squares);
}

#[test]
fn z2_witnesses_replay_and_survive_json() {
    let p = commuting();
    let report = freeness_verdict(&p, &w(&p, "aabbcc"), &Budget::default());
    assert_eq!(report.verdict, FreenessVerdict::NotFree);
    let z = report.z2_witness.expect("NotFree must carry a witness");
    verify_z2_witness(&p, &z).unwrap();

    let a = &z.a;
    let b = &z.b;
    assert!(a.is_spherical() && b.is_spherical());
    assert_eq!(a.top(), &z.base);
    let ab = a.compose_reduced(&p, b).unwrap();
    let ba = b.compose_reduced(&p, a).unwrap();
    assert_eq!(ab, ba, "the pair must commute");
    assert!(a.cells() > 0 && b.cells() > 0);
    assert_ne!(a.compose_reduced(&p, &b.invert(&p)).unwrap().cells(), 0, "a and b must differ");

    let round = Z2Witness::from_json(&p, &z.to_json(&p)).unwrap();
    verify_z2_witness(&p, &round).unwrap();

    let mut tampered = z.to_json(&p);
    tampered["left_word"] = json!("ab");
    let rejected = match Z2Witness::from_json(&p, &tampered) {
        Err(_) => true,
        Ok(zz) => verify_z2_witness(&p, &zz).is_err(),
    };
    assert!(rejected, "a forged witness must not replay");
}

#[test]
fn split_witnesses_replay() {
    let p = commuting();
    let report = freeness_verdict(&p, &w(&p, "aabbcc"), &Budget::default());
    let s = report.split_witness.expect("a dimension witness must accompany NotFree");
    assert_eq!(s.base, w(&p, "aabbcc"));
    assert_eq!(replay_derivation(&p, &s.base, &s.derivation).unwrap(), s.member);
    let mut joined = Word::empty();
    for f in &s.factors {
        joined = joined.concat(f);
    }
    assert_eq!(joined, s.member);
    assert!(s.factors.len() >= 2);
    assert_eq!(s.factors.len(), s.certificates.len());
    for (f, cert) in s.factors.iter().zip(&s.certificates) {
        cert.validate(&p).unwrap();
        assert!(cert.is_reduced(&p) && cert.is_spherical());
        assert_eq!(cert.top(), f);
        assert!(cert.cells() > 0);
    }
}

fn family() -> Vec<(Presentation, Word, bool)> {
    // (presentation, word, cheap enough for the large budget)
    let mut out = Vec::new();
    for (p, s, cheap) in [
        (commuting(), "abc", true),
        (commuting(), "bbcc", true),
        (commuting(), "aabbcc", true),
        (absorbing_pair(), "a", true),
        (interior_letter(), "abc", true),
        (chain_of_contexts(), "ac", false),
        (doubled_relation(), "ab", false),
        (folded_pair(), "a", false),
    ] {
        let word = w(&p, s);
        out.push((p, word, cheap));
    }
    out
}

#[test]
fn verdicts_never_flip_as_budgets_grow() {
    for (p, base, cheap) in family() {
        let mut budgets = vec![small(), mid()];
        if cheap {
            budgets.push(Budget::default());
            budgets.push(big());
        }
        let mut last_status: Option<Status> = None;
        let mut last_verdict: Option<FreenessVerdict> = None;
        for b in &budgets {
            let status = group_nontrivial(&p, &base, b).status;
            if let Some(prev) = last_status {
                if prev != Status::Unknown {
                    assert_eq!(status, prev, "status flipped over {}", p.render_word(&base));
                }
            }
            last_status = Some(status);

            let verdict = freeness_verdict(&p, &base, b).verdict;
            if let Some(prev) = &last_verdict {
                if *prev != FreenessVerdict::Unknown {
                    assert_eq!(&verdict, prev, "verdict flipped over {}", p.render_word(&base));
                }
            }
            last_verdict = Some(verdict);
        }
    }
}

#[test]
fn no_case_claims_freeness_both_ways() {
    for (p, base, cheap) in family() {
        let b = if cheap { Budget::default() } else { mid() };
        let report = freeness_verdict(&p, &base, &b);
        assert!(
            !(report.z2_witness.is_some() && report.verdict == FreenessVerdict::Free),
            "contradictory report over {}",
            p.render_word(&base)
        );
        if report.z2_witness.is_some() {
            assert_eq!(report.verdict, FreenessVerdict::NotFree);
            assert!(report.dimension_lower_bound >= 2);
        }
        if report.verdict == FreenessVerdict::Free {
            assert_eq!(report.dimension_lower_bound, 1);
            assert!(report.class_complete);
            assert!(report.z2_witness.is_none());
            assert!(report.dimension_one.is_some());
        }
        if report.verdict == FreenessVerdict::NotFree {
            let z = report.z2_witness.as_ref().expect("NotFree carries its pair");
            verify_z2_witness(&p, z).unwrap();
        }
    }
}

#[test]
fn triviality_needs_a_complete_class() {
    // The letter "a" absorbs p on the right: its class is an infinite ray,
    // so the analyzer must stay agnostic rather than certify triviality.
    let p = interior_letter();
    let base = w(&p, "a");
    let v = group_nontrivial(&p, &base, &Budget::default());
    assert_eq!(v.status, Status::Unknown);

    let mut session = AnalysisSession::new(&p, Budget::default());
    assert_eq!(session.group_status(&base), Status::Unknown);
    assert!(session.nontrivial_witness(&base).is_none());
}
