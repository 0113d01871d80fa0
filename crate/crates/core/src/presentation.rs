//! Semigroup presentations: alphabets, words, relations, and single rewrites.
//!
//! A presentation is a finite alphabet together with a finite set of
//! relations `lhs = rhs` between non-empty words. Relations are kept once per
//! unordered pair and applied symmetrically, so a rewrite step carries an
//! explicit [`Direction`].

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Index of a letter in the presentation's alphabet.
pub type LetterId = u32;

/// A word over the alphabet, possibly empty. Empty words never name group
/// elements; they only appear as contexts of rewrites and pivots.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<LetterId>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[LetterId] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// Does `piece` occur at position `at`?
    pub fn occurs_at(&self, at: usize, piece: &Word) -> bool {
        at + piece.len() <= self.len() && self.0[at..at + piece.len()] == piece.0[..]
    }

    /// Replace the `from.len()` letters at `at` (which must spell `from`)
    /// with `to`.
    pub fn splice(&self, at: usize, from: &Word, to: &Word) -> Word {
        debug_assert!(self.occurs_at(at, from), "splice source mismatch");
        let mut v = Vec::with_capacity(self.len() - from.len() + to.len());
        v.extend_from_slice(&self.0[..at]);
        v.extend_from_slice(&to.0);
        v.extend_from_slice(&self.0[at + from.len()..]);
        Word(v)
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.occurs_at(0, prefix)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// One relation `lhs = rhs`; both sides non-empty and distinct as sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    /// The side a rewrite in `dir` consumes.
    pub fn from_side(&self, dir: Direction) -> &Word {
        match dir {
            Direction::Forward => &self.lhs,
            Direction::Backward => &self.rhs,
        }
    }

    /// The side a rewrite in `dir` produces.
    pub fn to_side(&self, dir: Direction) -> &Word {
        match dir {
            Direction::Forward => &self.rhs,
            Direction::Backward => &self.lhs,
        }
    }
}

/// Orientation of a rewrite relative to the stored relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Forward => "fwd",
            Direction::Backward => "bwd",
        }
    }
}

/// A single rewriting step `left . from . right -> left . to . right`.
///
/// Identity of an edge of the rewriting graph is exactly this data; the same
/// unordered edge is represented by the two mutually [`RewriteEdge::reversed`]
/// orientations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RewriteEdge {
    pub left: Word,
    pub relation: usize,
    pub direction: Direction,
    pub right: Word,
}

impl RewriteEdge {
    pub fn source(&self, p: &Presentation) -> Word {
        let rel = &p.relations[self.relation];
        self.left
            .concat(rel.from_side(self.direction))
            .concat(&self.right)
    }

    pub fn target(&self, p: &Presentation) -> Word {
        let rel = &p.relations[self.relation];
        self.left
            .concat(rel.to_side(self.direction))
            .concat(&self.right)
    }

    pub fn reversed(&self) -> RewriteEdge {
        RewriteEdge {
            left: self.left.clone(),
            relation: self.relation,
            direction: self.direction.flip(),
            right: self.right.clone(),
        }
    }

    /// Offset of the rewritten subword.
    pub fn offset(&self) -> usize {
        self.left.len()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("duplicate letter id {0:?}")]
    DuplicateLetter(String),
    #[error("relation {0} has an empty side")]
    EmptyRelationSide(usize),
    #[error("relation {0} has equal sides")]
    TrivialRelation(usize),
    #[error("relations {0} and {1} are the same unordered pair")]
    DuplicateRelation(usize, usize),
    #[error("letter {0:?} used but not declared")]
    UndeclaredLetter(String),
}

/// A finite semigroup presentation.
#[derive(Clone, Debug)]
pub struct Presentation {
    letters: Vec<String>,
    by_name: HashMap<String, LetterId>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    /// Build a presentation from letter names and relations given as word
    /// strings. Convenient for tests and fixtures; validation is the same as
    /// for the file format.
    pub fn new(letters: &[&str], relations: &[(&str, &str)]) -> Result<Self, PresentationError> {
        let mut p = Presentation {
            letters: Vec::new(),
            by_name: HashMap::new(),
            relations: Vec::new(),
        };
        if letters.is_empty() {
            return Err(PresentationError::EmptyAlphabet);
        }
        for name in letters {
            p.add_letter(name)?;
        }
        for (l, r) in relations {
            let lhs = p.parse_word(l)?;
            let rhs = p.parse_word(r)?;
            p.add_relation(lhs, rhs)?;
        }
        Ok(p)
    }

    fn add_letter(&mut self, name: &str) -> Result<LetterId, PresentationError> {
        if self.by_name.contains_key(name) {
            return Err(PresentationError::DuplicateLetter(name.to_string()));
        }
        let id = self.letters.len() as LetterId;
        self.letters.push(name.to_string());
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    fn add_relation(&mut self, lhs: Word, rhs: Word) -> Result<(), PresentationError> {
        let idx = self.relations.len();
        if lhs.is_empty() || rhs.is_empty() {
            return Err(PresentationError::EmptyRelationSide(idx));
        }
        if lhs == rhs {
            return Err(PresentationError::TrivialRelation(idx));
        }
        for (i, r) in self.relations.iter().enumerate() {
            if (r.lhs == lhs && r.rhs == rhs) || (r.lhs == rhs && r.rhs == lhs) {
                return Err(PresentationError::DuplicateRelation(i, idx));
            }
        }
        self.relations.push(Relation { lhs, rhs });
        Ok(())
    }

    pub fn alphabet_len(&self) -> usize {
        self.letters.len()
    }

    pub fn letter_name(&self, id: LetterId) -> &str {
        &self.letters[id as usize]
    }

    pub fn letter(&self, name: &str) -> Option<LetterId> {
        self.by_name.get(name).copied()
    }

    /// True when some letter id needs a `.` separator in rendered words.
    fn multichar(&self) -> bool {
        self.letters.iter().any(|l| l.chars().count() > 1)
    }

    /// Parse a word: `.`-separated letter ids, or one letter per character
    /// when the text contains no dot.
    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty());
        }
        let mut out = Vec::new();
        if text.contains('.') {
            for part in text.split('.') {
                let id = self
                    .letter(part)
                    .ok_or_else(|| PresentationError::UndeclaredLetter(part.to_string()))?;
                out.push(id);
            }
        } else {
            for ch in text.chars() {
                let s = ch.to_string();
                let id = self
                    .letter(&s)
                    .ok_or(PresentationError::UndeclaredLetter(s))?;
                out.push(id);
            }
        }
        Ok(Word(out))
    }

    /// Render a word; multi-character alphabets are `.`-joined.
    pub fn render_word(&self, w: &Word) -> String {
        let sep = if self.multichar() { "." } else { "" };
        w.0.iter()
            .map(|&l| self.letter_name(l))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Parse the presentation file format:
    ///
    /// ```text
    /// # comment
    /// letters: a b c
    /// rel: ab = ba
    /// rel: ac = ca
    /// ```
    ///
    /// Exactly one `letters:` line; any number of `rel:` lines after it.
    pub fn parse(input: &str) -> Result<Self, PresentationError> {
        let mut p: Option<Presentation> = None;
        for (n, raw) in input.lines().enumerate() {
            let line = n + 1;
            let text = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if text.is_empty() {
                continue;
            }
            if let Some(rest) = text.strip_prefix("letters:") {
                if p.is_some() {
                    return Err(PresentationError::Parse {
                        line,
                        msg: "second letters: line".to_string(),
                    });
                }
                let names: Vec<&str> = rest.split_whitespace().collect();
                if names.is_empty() {
                    return Err(PresentationError::EmptyAlphabet);
                }
                let mut fresh = Presentation {
                    letters: Vec::new(),
                    by_name: HashMap::new(),
                    relations: Vec::new(),
                };
                for name in names {
                    fresh.add_letter(name)?;
                }
                p = Some(fresh);
            } else if let Some(rest) = text.strip_prefix("rel:") {
                let p = p.as_mut().ok_or(PresentationError::Parse {
                    line,
                    msg: "rel: before letters:".to_string(),
                })?;
                let mut sides = rest.splitn(2, '=');
                let l = sides.next().unwrap_or("");
                let r = sides.next().ok_or_else(|| PresentationError::Parse {
                    line,
                    msg: "rel: line without '='".to_string(),
                })?;
                let lhs = p.parse_word(l)?;
                let rhs = p.parse_word(r)?;
                p.add_relation(lhs, rhs)?;
            } else {
                return Err(PresentationError::Parse {
                    line,
                    msg: format!("unrecognized line {text:?}"),
                });
            }
        }
        p.ok_or(PresentationError::EmptyAlphabet)
    }
}
