//! Words in free groups and finite group presentations.

mod parse;
mod word;

use std::fmt;
use std::str::FromStr;

pub use word::{reduce_word, Word, WordDisplay};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown generator '{name}' at byte {pos}")]
    UnknownGenerator { pos: usize, name: String },
    #[error("duplicate generator '{name}' at byte {pos}")]
    DuplicateGenerator { pos: usize, name: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::UnknownGenerator { pos, .. }
            | ParseError::DuplicateGenerator { pos, .. } => *pos,
        }
    }
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("generator name {0:?} is not a valid identifier")]
    InvalidName(String),
    #[error("duplicate generator name '{0}'")]
    DuplicateGenerator(String),
    #[error("word uses generator index {index} but only {rank} generators exist")]
    GeneratorOutOfRange { index: usize, rank: usize },
}

/// A finite presentation `⟨g_1, …, g_n | r_1, …, r_m⟩`.
///
/// Relators are stored cyclically reduced; a relator that reduces to the
/// empty word is kept (it prints as `1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

fn valid_ident(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic()) && chars.all(char::is_alphanumeric)
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for (i, name) in generators.iter().enumerate() {
            if !valid_ident(name) {
                return Err(PresentationError::InvalidName(name.clone()));
            }
            if generators[..i].contains(name) {
                return Err(PresentationError::DuplicateGenerator(name.clone()));
            }
        }
        let rank = generators.len();
        let relators = relators
            .into_iter()
            .map(|r| {
                check_word_rank(&r, rank)?;
                Ok(r.cyclic_reduce().0)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Presentation { generators, relators })
    }

    /// Parses the text format, e.g. `<a,b | [a,b]>`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let (generators, relators) = parse::parse_presentation_parts(text)?;
        let relators = relators.into_iter().map(|r| r.cyclic_reduce().0).collect();
        Ok(Presentation { generators, relators })
    }

    /// Parses a single word over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word, ParseError> {
        parse::parse_word_with(text, &self.generators)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn check_word(&self, w: &Word) -> Result<(), PresentationError> {
        check_word_rank(w, self.rank())
    }

    /// Product of two words over this presentation, checking both.
    pub fn multiply(&self, u: &Word, v: &Word) -> Result<Word, PresentationError> {
        self.check_word(u)?;
        self.check_word(v)?;
        Ok(u.multiply(v))
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        w.display(&self.generators).to_string()
    }
}

fn check_word_rank(w: &Word, rank: usize) -> Result<(), PresentationError> {
    match w.max_generator() {
        Some(index) if index >= rank => Err(PresentationError::GeneratorOutOfRange { index, rank }),
        _ => Ok(()),
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} |", self.generators.join(","))?;
        for (i, r) in self.relators.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            write!(f, "{}", r.display(&self.generators))?;
        }
        f.write_str(">")
    }
}

impl FromStr for Presentation {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Presentation::parse(s)
    }
}
