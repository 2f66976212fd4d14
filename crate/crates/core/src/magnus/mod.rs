//! Magnus rewriting into fake HNN form.
//!
//! Given an epimorphism `φ: G ↠ ℤ`, the rewriting produces a presentation
//!
//! ```text
//! ⟨ s, d_i, c_j | r_k(d, c) = 1,  s c_j s⁻¹ = w_j(d, c) ⟩
//! ```
//!
//! with `φ(s) = 1` and `φ(d_i) = φ(c_j) = 0`. Setting `A = ⟨c_j⟩` and
//! `B = ⟨d_i, c_j⟩` exhibits `G` as an HNN extension with stable letter `s`,
//! so the number of `d` generators bounds the group rank from above, and a
//! count of zero certifies an ascending extension.

mod rewrite;
mod tietze;

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::abelianize::{Character, CharacterError};
use crate::novikov::NovikovReport;
use crate::presentations::{Presentation, Word};

pub use rewrite::magnus_rewrite;
pub use tietze::{tietze_simplify, DEFAULT_MAX_PASSES};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum MagnusError {
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error("character {0} is not primitive (gcd of values is {1}); divide it out first")]
    NotPrimitive(Character, i64),
}

/// One Tietze transformation applied during rewriting or simplification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum TraceStep {
    /// New generator together with the relation `name = definition`.
    AddGenerator { name: String, definition: String },
    /// Generator removed by substituting `replacement` everywhere; the relation
    /// it was solved from is consumed.
    EliminateGenerator { name: String, replacement: String, solved_from: String },
    /// Relator that is a consequence of the current relations.
    AddRelator { relator: String },
    /// Relator replaced by one equivalent to it modulo the other relations.
    ReplaceRelator { index: usize, from: String, to: String },
    /// Relator that became trivial.
    RemoveRelator { index: usize, relator: String },
}

/// How the stable letter was chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RewriteCase {
    /// Some generator maps to `±1`; `s` is that generator or its inverse.
    UnitGenerator { generator: String },
    /// No generator maps to `±1`; `s` is a product of powers of generators
    /// whose exponents form a Bezout combination of their values.
    Bezout { combination: Vec<(String, i64)> },
}

/// Outcome of [`tietze_simplify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplifyOutcome {
    pub passes: usize,
    pub eliminated: Vec<String>,
    pub pass_limit_reached: bool,
}

/// A presentation in fake HNN form together with the audit trail that links
/// it to the input presentation.
///
/// Generator indices refer to a working list that starts with the original
/// generators (all eliminated by the rewrite) followed by the stable letter
/// and the `d` and `c` generators in creation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FakeHnn {
    pub(crate) original: Presentation,
    pub(crate) character: Character,
    pub(crate) names: Vec<String>,
    pub(crate) definitions: Vec<Word>,
    pub(crate) stable: usize,
    pub(crate) d_gens: Vec<usize>,
    pub(crate) c_gens: Vec<usize>,
    pub(crate) relators: Vec<Word>,
    /// `(c_j, w_j)` encoding `s c_j s⁻¹ = w_j`, in the order of `c_gens`.
    pub(crate) conj: Vec<(usize, Word)>,
    pub(crate) trace: Vec<TraceStep>,
    pub(crate) case: RewriteCase,
    pub(crate) simplification: Option<SimplifyOutcome>,
}

impl FakeHnn {
    pub fn original(&self) -> &Presentation {
        &self.original
    }

    /// The primitive character the rewrite was run for.
    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn stable(&self) -> usize {
        self.stable
    }

    pub fn d_gens(&self) -> &[usize] {
        &self.d_gens
    }

    pub fn c_gens(&self) -> &[usize] {
        &self.c_gens
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn conj_relations(&self) -> &[(usize, Word)] {
        &self.conj
    }

    pub fn trace(&self) -> &[TraceStep] {
        &self.trace
    }

    pub fn case(&self) -> &RewriteCase {
        &self.case
    }

    pub fn simplification(&self) -> Option<&SimplifyOutcome> {
        self.simplification.as_ref()
    }

    pub fn d_count(&self) -> usize {
        self.d_gens.len()
    }

    /// The generator as a word in the original presentation.
    pub fn definition(&self, g: usize) -> &Word {
        &self.definitions[g]
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        w.display(&self.names).to_string()
    }

    /// `φ` on the working generators: `1` on `s`, `0` on every `d` and `c`,
    /// and the original values on the (eliminated) original generators.
    pub fn extended_character(&self) -> Character {
        let mut values = vec![0; self.names.len()];
        values[..self.character.len()].copy_from_slice(self.character.values());
        values[self.stable] = 1;
        Character::new(values)
    }

    /// Live generators in presentation order: `s`, then `d`s, then `c`s.
    pub fn live_generators(&self) -> Vec<usize> {
        std::iter::once(self.stable).chain(self.d_gens.iter().copied()).chain(self.c_gens.iter().copied()).collect()
    }

    /// The fake HNN form as an ordinary presentation on `s, d_i, c_j`, with
    /// each conjugation relation written as the relator `s c_j s⁻¹ w_j⁻¹`.
    pub fn to_presentation(&self) -> Presentation {
        let live = self.live_generators();
        let index_of = |g: usize| live.iter().position(|&h| h == g).expect("word uses a live generator");
        let names = live.iter().map(|&g| self.names[g].clone()).collect();
        let s = Word::generator(self.stable);
        let relators = self
            .relators
            .iter()
            .cloned()
            .chain(self.conj.iter().map(|(c, w)| s.multiply(&Word::generator(*c)).multiply(&s.inverse()).multiply(&w.inverse())))
            .map(|r| r.reindex(index_of))
            .collect();
        Presentation::new(names, relators).expect("fake HNN presentation is well formed")
    }

    /// Checks the structural invariants of the fake HNN form.
    pub fn check_invariants(&self) -> Result<(), String> {
        let live_body: BTreeSet<usize> = self.d_gens.iter().chain(&self.c_gens).copied().collect();
        if live_body.len() != self.d_gens.len() + self.c_gens.len() || live_body.contains(&self.stable) {
            return Err("generator lists overlap".into());
        }
        let phi = self.extended_character();
        let check_word = |w: &Word, what: &str| -> Result<(), String> {
            if w.contains_generator(self.stable) {
                return Err(format!("{what} {} contains the stable letter", self.word_to_string(w)));
            }
            if let Some((g, _)) = w.syllables().iter().find(|(g, _)| !live_body.contains(g)) {
                return Err(format!("{what} {} uses dead generator {}", self.word_to_string(w), self.names[*g]));
            }
            match phi.evaluate(w) {
                Ok(0) => Ok(()),
                Ok(v) => Err(format!("character is {v} on {what} {}", self.word_to_string(w))),
                Err(e) => Err(e.to_string()),
            }
        };
        for r in &self.relators {
            check_word(r, "relator")?;
        }
        if self.conj.len() != self.c_gens.len() || self.conj.iter().zip(&self.c_gens).any(|((c, _), g)| c != g) {
            return Err("conjugation relations do not match the c generators".into());
        }
        for (_, w) in &self.conj {
            check_word(w, "conjugation image")?;
        }
        for &g in self.live_generators().iter() {
            let expected = i64::from(g == self.stable);
            let value = self.character.evaluate(&self.definitions[g]).map_err(|e| e.to_string())?;
            if value != expected {
                return Err(format!("generator {} has character value {value}, expected {expected}", self.names[g]));
            }
        }
        Ok(())
    }
}

impl Serialize for FakeHnn {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let names = |gs: &[usize]| gs.iter().map(|&g| self.names[g].clone()).collect::<Vec<_>>();
        let definitions: Vec<(String, String)> = self
            .live_generators()
            .into_iter()
            .map(|g| (self.names[g].clone(), self.original.word_to_string(&self.definitions[g])))
            .collect();
        let mut st = s.serialize_struct("FakeHnn", 9)?;
        st.serialize_field("stable", &self.names[self.stable])?;
        st.serialize_field("d_gens", &names(&self.d_gens))?;
        st.serialize_field("c_gens", &names(&self.c_gens))?;
        st.serialize_field("relators", &self.relators.iter().map(|r| self.word_to_string(r)).collect::<Vec<_>>())?;
        st.serialize_field("conj_relations", &self.conj.iter().map(|(_, w)| self.word_to_string(w)).collect::<Vec<_>>())?;
        st.serialize_field("definitions", &definitions)?;
        st.serialize_field("case", &self.case)?;
        st.serialize_field("simplification", &self.simplification)?;
        st.serialize_field("trace", &self.trace)?;
        st.end()
    }
}

impl fmt::Display for FakeHnn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let live = self.live_generators();
        let gens: Vec<&str> = live.iter().map(|&g| self.names[g].as_str()).collect();
        write!(f, "<{} |", gens.join(","))?;
        let s = &self.names[self.stable];
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            let out = f.write_str(if first { " " } else { ", " });
            first = false;
            out
        };
        for r in &self.relators {
            sep(f)?;
            write!(f, "{}", self.word_to_string(r))?;
        }
        for (c, w) in &self.conj {
            sep(f)?;
            write!(f, "{s} {} {s}^-1 = {}", self.names[*c], self.word_to_string(w))?;
        }
        f.write_str(">")
    }
}

/// Number of `d` generators: `grank(B, A) ≤ |{d_i}|`.
pub fn grank_upper(f: &FakeHnn) -> usize {
    f.d_count()
}

/// A named generator of `A` or `B`, with its expression in the original
/// generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupGenerator {
    pub name: String,
    pub word: String,
}

/// The HNN splitting `G = ⟨s, B | A = s⁻¹ α(A) s⟩` read off a fake HNN form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HnnData {
    /// The stable letter as a word in the original generators.
    pub stable: String,
    pub a_gens: Vec<SubgroupGenerator>,
    pub b_gens: Vec<SubgroupGenerator>,
    /// `α(c_j) = s c_j s⁻¹`, written in the generators of `B`.
    pub alpha_images: Vec<String>,
    pub ascending: bool,
}

pub fn hnn_data(f: &FakeHnn) -> HnnData {
    let named = |g: usize| SubgroupGenerator {
        name: f.names[g].clone(),
        word: f.original.word_to_string(&f.definitions[g]),
    };
    HnnData {
        stable: f.original.word_to_string(&f.definitions[f.stable]),
        a_gens: f.c_gens.iter().map(|&g| named(g)).collect(),
        b_gens: f.d_gens.iter().chain(&f.c_gens).map(|&g| named(g)).collect(),
        alpha_images: f.conj.iter().map(|(_, w)| f.word_to_string(w)).collect(),
        ascending: f.d_gens.is_empty(),
    }
}

/// Certificate status for `[φ] ∈ Σ(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// No `d` generators remain, so `A = B`: the splitting is ascending and
    /// `[φ] ∈ Σ(G)`.
    SigmaMember,
    /// Leftover `d` generators prove nothing either way.
    Inconclusive,
}

pub fn detect_ascending(f: &FakeHnn) -> Verdict {
    if f.d_gens.is_empty() {
        Verdict::SigmaMember
    } else {
        Verdict::Inconclusive
    }
}

/// Certified interval for the tropical rank of `[φ]`.
#[derive(Clone, Debug, Serialize)]
pub struct RankBounds {
    pub character: Character,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub lower_certificate: NovikovReport,
    pub upper_certificate: FakeHnn,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn simplified(p: &Presentation, values: &[i64]) -> FakeHnn {
        let c = Character::on(p, values.to_vec()).unwrap();
        tietze_simplify(&magnus_rewrite(p, &c).unwrap(), DEFAULT_MAX_PASSES)
    }

    #[test]
    fn hnn_data_bs12() {
        let f = simplified(&corpus::p3(), &[0, 1]);
        let h = hnn_data(&f);
        assert_eq!(h.a_gens.iter().map(|g| g.name.as_str()).collect::<Vec<_>>(), ["c1"]);
        assert_eq!(h.b_gens, h.a_gens);
        assert_eq!(h.alpha_images, ["c1^2"]);
        assert_eq!(h.stable, "t");
        assert!(h.ascending);
    }

    #[test]
    fn hnn_data_torus() {
        let f = simplified(&corpus::p2(), &[1, 0]);
        let h = hnn_data(&f);
        assert_eq!(h.b_gens, h.a_gens);
        assert_eq!(h.alpha_images, ["c1"]);
        assert_eq!(detect_ascending(&f), Verdict::SigmaMember);
    }

    #[test]
    fn hnn_data_free_group() {
        let f = simplified(&corpus::p1(), &[1, 0]);
        let h = hnn_data(&f);
        assert!(h.a_gens.is_empty());
        assert_eq!(h.b_gens.len(), 1);
        assert_eq!(h.b_gens[0].word, "b");
        assert_eq!(detect_ascending(&f), Verdict::Inconclusive);
        assert_eq!(grank_upper(&f), 1);
    }

    #[test]
    fn json_has_required_fields() {
        let f = simplified(&corpus::p3(), &[0, 1]);
        let v = serde_json::to_value(&f).unwrap();
        for key in ["stable", "d_gens", "c_gens", "relators", "conj_relations", "trace"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["stable"], "s");
        assert_eq!(v["conj_relations"][0], "c1^2");
        assert_eq!(f.to_string(), "<s,c1 | s c1 s^-1 = c1^2>");
    }
}
