//! Tri-state verdicts with certificates.
//!
//! Budget-bounded searches answer `Proved`, `Refuted`, or `Unknown`. The two
//! definite answers are final: enlarging the budget may turn `Unknown` into
//! either, but never flips one definite answer into the other. Each definite
//! answer carries a certificate that can be checked without re-running the
//! search that produced it.

use crate::budget::Budget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Proved,
    Refuted,
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Proved => "proved",
            Status::Refuted => "refuted",
            Status::Unknown => "unknown",
        }
    }
}

/// Outcome of one bounded query; `C` is the query's certificate type.
#[derive(Clone, Debug)]
pub struct Verdict<C> {
    pub status: Status,
    /// Present when the query has evidence worth replaying: always for a
    /// definite status, and for `Unknown` when a partial search still found
    /// something concrete (e.g. a counterexample to a stronger claim).
    pub certificate: Option<C>,
    pub budget_used: Budget,
}

impl<C> Verdict<C> {
    pub fn proved(certificate: C, budget_used: Budget) -> Self {
        Verdict {
            status: Status::Proved,
            certificate: Some(certificate),
            budget_used,
        }
    }

    pub fn refuted(certificate: C, budget_used: Budget) -> Self {
        Verdict {
            status: Status::Refuted,
            certificate: Some(certificate),
            budget_used,
        }
    }

    pub fn unknown(budget_used: Budget) -> Self {
        Verdict {
            status: Status::Unknown,
            certificate: None,
            budget_used,
        }
    }

    pub fn unknown_with(certificate: C, budget_used: Budget) -> Self {
        Verdict {
            status: Status::Unknown,
            certificate: Some(certificate),
            budget_used,
        }
    }

    pub fn is_proved(&self) -> bool {
        self.status == Status::Proved
    }

    pub fn is_refuted(&self) -> bool {
        self.status == Status::Refuted
    }

    pub fn is_unknown(&self) -> bool {
        self.status == Status::Unknown
    }
}
