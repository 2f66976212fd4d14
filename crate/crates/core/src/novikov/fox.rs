use std::collections::BTreeMap;
use std::fmt;

use crate::abelianize::{Character, CharacterError};
use crate::presentations::Word;

use super::laurent::LaurentPoly;

/// A finite `ℤ`-linear combination of free-group elements, an element of the
/// integral group ring `ℤF`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeGroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl FreeGroupRingElement {
    pub fn zero() -> Self {
        FreeGroupRingElement::default()
    }

    pub fn one() -> Self {
        FreeGroupRingElement::from_word(Word::identity(), 1)
    }

    pub fn from_word(w: Word, coefficient: i64) -> Self {
        let mut e = FreeGroupRingElement::zero();
        e.add_term(w, coefficient);
        e
    }

    pub fn add_term(&mut self, w: Word, coefficient: i64) {
        if coefficient == 0 {
            return;
        }
        let entry = self.terms.entry(w).or_insert(0);
        *entry += coefficient;
        if *entry == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coefficient(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Ring product, extending word multiplication bilinearly.
    pub fn multiply(&self, other: &FreeGroupRingElement) -> FreeGroupRingElement {
        let mut out = FreeGroupRingElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.multiply(v), a * b);
            }
        }
        out
    }

    pub fn add(&self, other: &FreeGroupRingElement) -> FreeGroupRingElement {
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> impl fmt::Display + 'a {
        RingDisplay { e: self, names }
    }
}

struct RingDisplay<'a, S> {
    e: &'a FreeGroupRingElement,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for RingDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Word, i64)> = self.e.terms().collect();
        terms.sort_by(|a, b| a.0.shortlex_cmp(b.0));
        for (i, (w, c)) in terms.into_iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.unsigned_abs();
            match (mag, w.is_identity()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => write!(f, "{}", w.display(self.names))?,
                _ => write!(f, "{mag}*{}", w.display(self.names))?,
            }
        }
        Ok(())
    }
}

/// Fox derivative `∂w/∂g`.
///
/// Walking the letters of `w` with running prefix `u`, a letter `g`
/// contributes `+u` and a letter `g⁻¹` contributes `−u·g⁻¹`; this is the
/// product rule `∂(uv) = ∂u + u·∂v` unrolled.
pub fn fox_derivative(w: &Word, g: usize) -> FreeGroupRingElement {
    let mut out = FreeGroupRingElement::zero();
    let mut prefix = Word::identity();
    for (h, e) in w.letters() {
        let letter = Word::power_of(h, e);
        if h == g {
            if e > 0 {
                out.add_term(prefix.clone(), 1);
            } else {
                out.add_term(prefix.multiply(&letter), -1);
            }
        }
        prefix = prefix.multiply(&letter);
    }
    out
}

/// The ring map `ℤF → ℤ[t, t⁻¹]` sending a word `w` to `t^{φ(w)}`.
pub fn specialize(e: &FreeGroupRingElement, c: &Character) -> Result<LaurentPoly, CharacterError> {
    let mut out = LaurentPoly::zero();
    for (w, coefficient) in e.terms() {
        out.add_term(c.evaluate(w)?, coefficient.into());
    }
    Ok(out)
}
