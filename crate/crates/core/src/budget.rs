//! Search budgets.
//!
//! The word problem behind most queries here is undecidable in general, so
//! every search is bounded. A budget never affects the *meaning* of an
//! answer: `Proved` and `Refuted` come with certificates valid at any budget;
//! only `Unknown` depends on how far the search was allowed to go.

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Longest word the class enumerator may keep.
    pub max_word_length: usize,
    /// Most words a single class enumeration may hold.
    pub max_words: usize,
    /// Cell-count radius for diagram searches.
    pub max_cells: usize,
    /// Depth bound for breadth-first searches and iterative simplification.
    pub max_depth: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_word_length: 24,
            max_words: 20_000,
            max_cells: 8,
            max_depth: 64,
        }
    }
}

impl Budget {
    /// All fields strictly positive.
    pub fn validate(&self) -> Result<(), String> {
        for (name, v) in [
            ("max_word_length", self.max_word_length),
            ("max_words", self.max_words),
            ("max_cells", self.max_cells),
            ("max_depth", self.max_depth),
        ] {
            if v == 0 {
                return Err(format!("budget field {name} must be positive"));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "max_word_length": self.max_word_length,
            "max_words": self.max_words,
            "max_cells": self.max_cells,
            "max_depth": self.max_depth,
        })
    }
}
