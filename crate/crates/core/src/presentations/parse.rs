//! Recursive-descent parser for the presentation grammar:
//!
//! ```text
//! presentation := '<' gens '|' relators '>'
//! gens         := ident (',' ident)*
//! relators     := ε | word (',' word)*
//! word         := '1' | term+
//! term         := ident ('^' signed-integer)? | '[' word ',' word ']'
//! ident        := letter alphanumeric*
//! ```
//!
//! Whitespace between tokens is ignored. Positions in errors are byte offsets.

use super::word::{reduce_word, Word};
use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LAngle,
    RAngle,
    Bar,
    Comma,
    LBracket,
    RBracket,
    Caret,
    Plus,
    Minus,
    Ident(String),
    Int(String),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::LAngle => "'<'".into(),
            Tok::RAngle => "'>'".into(),
            Tok::Bar => "'|'".into(),
            Tok::Comma => "','".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Int(s) => format!("integer '{s}'"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let single = match c {
            '<' => Some(Tok::LAngle),
            '>' => Some(Tok::RAngle),
            '|' => Some(Tok::Bar),
            ',' => Some(Tok::Comma),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '^' => Some(Tok::Caret),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            out.push((pos, tok));
        } else if c.is_alphabetic() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_alphanumeric() {
                    s.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((pos, Tok::Ident(s)));
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_digit() {
                    s.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((pos, Tok::Int(s)));
        } else {
            return Err(ParseError::Syntax {
                pos,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
    gens: Vec<String>,
}

impl Parser {
    fn new(text: &str, gens: Vec<String>) -> Result<Self, ParseError> {
        Ok(Parser { toks: tokenize(text)?, idx: 0, end: text.len(), gens })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |(p, _)| *p)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let found = self.peek().map_or("end of input".to_string(), Tok::describe);
        ParseError::Syntax { pos: self.pos(), message: format!("expected {wanted}, found {found}") }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.idx += 1;
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn ident(&mut self) -> Result<(usize, String), ParseError> {
        match self.toks.get(self.idx) {
            Some((pos, Tok::Ident(s))) => {
                let out = (*pos, s.clone());
                self.idx += 1;
                Ok(out)
            }
            _ => Err(self.unexpected("identifier")),
        }
    }

    fn presentation(&mut self) -> Result<(Vec<String>, Vec<Word>), ParseError> {
        self.expect(Tok::LAngle)?;
        let mut gens: Vec<String> = Vec::new();
        loop {
            let (pos, name) = self.ident()?;
            if gens.contains(&name) {
                return Err(ParseError::DuplicateGenerator { pos, name });
            }
            gens.push(name);
            if self.peek() == Some(&Tok::Comma) {
                self.idx += 1;
            } else {
                break;
            }
        }
        self.expect(Tok::Bar)?;
        self.gens = gens;
        let mut relators = Vec::new();
        if self.peek() != Some(&Tok::RAngle) {
            loop {
                relators.push(self.word()?);
                if self.peek() == Some(&Tok::Comma) {
                    self.idx += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RAngle)?;
        if self.idx < self.toks.len() {
            return Err(self.unexpected("end of input"));
        }
        Ok((std::mem::take(&mut self.gens), relators))
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        if let Some(Tok::Int(s)) = self.peek() {
            if s == "1" {
                self.idx += 1;
                return Ok(Word::identity());
            }
            return Err(self.unexpected("word"));
        }
        if !matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::LBracket)) {
            return Err(self.unexpected("word"));
        }
        let mut raw: Vec<(usize, i64)> = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Ident(_)) => {
                    let (pos, name) = self.ident()?;
                    let g = self.resolve(pos, &name)?;
                    let e = if self.peek() == Some(&Tok::Caret) {
                        self.idx += 1;
                        self.signed_integer()?
                    } else {
                        1
                    };
                    raw.push((g, e));
                }
                Some(Tok::LBracket) => {
                    self.idx += 1;
                    let u = self.word()?;
                    self.expect(Tok::Comma)?;
                    let v = self.word()?;
                    self.expect(Tok::RBracket)?;
                    let c = u.multiply(&v).multiply(&u.inverse()).multiply(&v.inverse());
                    raw.extend(c.syllables().iter().copied());
                }
                _ => break,
            }
        }
        Ok(reduce_word(raw))
    }

    fn signed_integer(&mut self) -> Result<i64, ParseError> {
        let mut negative = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negative = true;
                self.idx += 1;
            }
            Some(Tok::Plus) => self.idx += 1,
            _ => {}
        }
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Int(s)) => {
                let value: i64 = s.parse().map_err(|_| ParseError::Syntax {
                    pos,
                    message: format!("exponent '{s}' out of range"),
                })?;
                self.idx += 1;
                Ok(if negative { -value } else { value })
            }
            _ => Err(self.unexpected("integer exponent")),
        }
    }

    fn resolve(&self, pos: usize, name: &str) -> Result<usize, ParseError> {
        self.gens
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| ParseError::UnknownGenerator { pos, name: name.to_string() })
    }
}

pub(super) fn parse_presentation_parts(text: &str) -> Result<(Vec<String>, Vec<Word>), ParseError> {
    Parser::new(text, Vec::new())?.presentation()
}

pub(super) fn parse_word_with(text: &str, gens: &[String]) -> Result<Word, ParseError> {
    let mut p = Parser::new(text, gens.to_vec())?;
    let w = p.word()?;
    if p.idx < p.toks.len() {
        return Err(p.unexpected("end of word"));
    }
    Ok(w)
}
