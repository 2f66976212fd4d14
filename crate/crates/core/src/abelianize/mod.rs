//! Integer linear algebra over the abelianization `G/G'`.
//!
//! The relation matrix of a presentation records exponent sums; its Smith
//! normal form gives `H_1(G) ≅ ℤ^k ⊕ torsion`, and the integer kernel is the
//! lattice `Hom(G, ℤ)` of characters.

mod matrix;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

pub use matrix::{hermite_rows, smith_normal_form, IntMatrix, SmithForm};

use crate::presentations::{Presentation, Word};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error("character has {found} values but the presentation has {expected} generators")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero character has no direction")]
    ZeroCharacter,
    #[error("character takes value {value} on relator {relator}; it must vanish on every relator")]
    NotAHomomorphism { relator: usize, value: i64 },
    #[error("invalid character spec: {0}")]
    InvalidSpec(String),
    #[error("character value does not fit in 64 bits")]
    Overflow,
}

/// `H_1` as `ℤ^free_rank ⊕ ⊕ ℤ/d_i` with `d_1 | d_2 | …`, each `d_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(serialize_with = "crate::json::serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Exponent-sum matrix: entry `(k, i)` is the exponent sum of generator `i`
/// in relator `k`.
pub fn relation_matrix(p: &Presentation) -> IntMatrix {
    let rows: Vec<Vec<i64>> = p
        .relators()
        .iter()
        .map(|r| (0..p.rank()).map(|g| r.exponent_sum(g)).collect())
        .collect();
    IntMatrix::from_rows(p.rank(), &rows)
}

pub fn abelianization(p: &Presentation) -> AbelianGroup {
    let snf = smith_normal_form(&relation_matrix(p));
    let diag = snf.diagonal();
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion = diag.into_iter().filter(|d| *d > BigInt::one()).collect();
    AbelianGroup { free_rank: p.rank() - nonzero, torsion }
}

/// A basis of the character lattice `{v ∈ ℤ^n : M v = 0}`.
///
/// The basis comes from the trailing columns of the Smith transform `V` and
/// is then put in Hermite normal form, so the output is canonical: e.g. the
/// trefoil gives the single character `x=1, y=1`.
pub fn character_lattice(p: &Presentation) -> Result<Vec<Character>, CharacterError> {
    let snf = smith_normal_form(&relation_matrix(p));
    let rank = snf.rank();
    let kernel: Vec<Vec<BigInt>> = (rank..p.rank()).map(|j| snf.v.column(j)).collect();
    hermite_rows(kernel)
        .into_iter()
        .map(|row| {
            row.iter()
                .map(|x| x.to_i64().ok_or(CharacterError::Overflow))
                .collect::<Result<Vec<_>, _>>()
                .map(Character::new)
        })
        .collect()
}

/// A homomorphism `G → ℤ`, given by its values on the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Character {
    values: Vec<i64>,
}

impl Character {
    /// Wraps raw generator values without validation.
    pub fn new(values: Vec<i64>) -> Self {
        Character { values }
    }

    /// Validates that `values` has one entry per generator and vanishes on
    /// every relator.
    pub fn on(p: &Presentation, values: Vec<i64>) -> Result<Self, CharacterError> {
        let c = Character::new(values);
        c.check_against(p)?;
        Ok(c)
    }

    pub fn check_against(&self, p: &Presentation) -> Result<(), CharacterError> {
        if self.values.len() != p.rank() {
            return Err(CharacterError::DimensionMismatch { expected: p.rank(), found: self.values.len() });
        }
        for (k, r) in p.relators().iter().enumerate() {
            let value = self.evaluate(r)?;
            if value != 0 {
                return Err(CharacterError::NotAHomomorphism { relator: k, value });
            }
        }
        Ok(())
    }

    /// Parses the inline form `a=1,b=0`; every generator must be assigned
    /// exactly once.
    pub fn parse_spec(p: &Presentation, spec: &str) -> Result<Self, CharacterError> {
        let mut values: Vec<Option<i64>> = vec![None; p.rank()];
        for part in spec.split(',') {
            let part = part.trim();
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| CharacterError::InvalidSpec(format!("expected name=value, got {part:?}")))?;
            let (name, value) = (name.trim(), value.trim());
            let g = p
                .generator_index(name)
                .ok_or_else(|| CharacterError::InvalidSpec(format!("unknown generator '{name}'")))?;
            let v: i64 = value
                .parse()
                .map_err(|_| CharacterError::InvalidSpec(format!("value for '{name}' is not an integer: {value:?}")))?;
            if values[g].replace(v).is_some() {
                return Err(CharacterError::InvalidSpec(format!("generator '{name}' assigned twice")));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(g, v)| {
                v.ok_or_else(|| CharacterError::InvalidSpec(format!("generator '{}' is not assigned", p.generators()[g])))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Character::on(p, values)
    }

    /// Renders as `a=1,b=0`.
    pub fn to_spec<S: AsRef<str>>(&self, names: &[S]) -> String {
        self.values
            .iter()
            .zip(names)
            .map(|(v, n)| format!("{}={v}", n.as_ref()))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, g: usize) -> i64 {
        self.values[g]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn gcd(&self) -> i64 {
        self.values.iter().fold(0i64, |acc, &v| acc.gcd(&v))
    }

    pub fn scaled(&self, k: i64) -> Character {
        Character::new(self.values.iter().map(|v| v * k).collect())
    }

    pub fn negated(&self) -> Character {
        self.scaled(-1)
    }

    /// `Σ value(g) · exponent` over the syllables of `w`.
    pub fn evaluate(&self, w: &Word) -> Result<i64, CharacterError> {
        if let Some(g) = w.max_generator() {
            if g >= self.values.len() {
                return Err(CharacterError::DimensionMismatch { expected: g + 1, found: self.values.len() });
            }
        }
        w.syllables().iter().try_fold(0i64, |acc, &(g, e)| {
            self.values[g]
                .checked_mul(e)
                .and_then(|x| acc.checked_add(x))
                .ok_or(CharacterError::Overflow)
        })
    }

    /// Divides by the gcd of the entries, keeping the direction (and hence
    /// the sign pattern).
    pub fn primitive(&self) -> Result<Character, CharacterError> {
        let g = self.gcd();
        if g == 0 {
            return Err(CharacterError::ZeroCharacter);
        }
        Ok(Character::new(self.values.iter().map(|v| v / g).collect()))
    }

    /// True iff the image is all of `ℤ`, i.e. the entries are coprime.
    pub fn is_epimorphism_to_z(&self) -> Result<bool, CharacterError> {
        match self.gcd() {
            0 => Err(CharacterError::ZeroCharacter),
            g => Ok(g == 1),
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn rows(m: &IntMatrix) -> Vec<Vec<i64>> {
        m.to_rows().iter().map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect()).collect()
    }

    #[test]
    fn relation_matrices_of_corpus() {
        assert_eq!(rows(&relation_matrix(&corpus::p2())), vec![vec![0, 0]]);
        assert_eq!(rows(&relation_matrix(&corpus::p3())), vec![vec![-1, 0]]);
        assert_eq!(rows(&relation_matrix(&corpus::p4())), vec![vec![1, -1]]);
        let m = relation_matrix(&corpus::p1());
        assert_eq!((m.rows(), m.cols()), (0, 2));
    }

    #[test]
    fn abelianization_of_corpus() {
        let free = |k| AbelianGroup { free_rank: k, torsion: vec![] };
        assert_eq!(abelianization(&corpus::p1()), free(2));
        assert_eq!(abelianization(&corpus::p2()), free(2));
        assert_eq!(abelianization(&corpus::p3()), free(1));
        assert_eq!(abelianization(&corpus::p4()), free(1));
        assert_eq!(abelianization(&corpus::p5()), free(4));
    }

    #[test]
    fn torsion_is_reported() {
        let p = Presentation::parse("<a,b | a^4 b^6, a^2 b^-2>").unwrap();
        // [[4,6],[2,-2]]: d1 = 2, d1*d2 = |det| = 20
        let ab = abelianization(&p);
        assert_eq!(ab.free_rank, 0);
        assert_eq!(ab.torsion, vec![BigInt::from(2), BigInt::from(10)]);
        assert_eq!(ab.to_string(), "Z/2 + Z/10");
    }

    #[test]
    fn character_lattices_of_corpus() {
        let lat = |p: &Presentation| -> Vec<Vec<i64>> {
            character_lattice(p).unwrap().into_iter().map(|c| c.values().to_vec()).collect()
        };
        assert_eq!(lat(&corpus::p2()), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(lat(&corpus::p3()), vec![vec![0, 1]]);
        assert_eq!(lat(&corpus::p4()), vec![vec![1, 1]]);
    }

    #[test]
    fn evaluate_words() {
        let p2 = corpus::p2();
        let phi = Character::new(vec![1, 0]);
        assert_eq!(phi.evaluate(&p2.parse_word("a b").unwrap()).unwrap(), 1);
        assert_eq!(phi.evaluate(&p2.relators()[0]).unwrap(), 0);
        let p3 = corpus::p3();
        let t = Character::new(vec![0, 1]);
        assert_eq!(t.evaluate(&p3.relators()[0]).unwrap(), 0);
        assert!(matches!(
            Character::new(vec![1]).evaluate(&p2.parse_word("b").unwrap()),
            Err(CharacterError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn primitive_keeps_sign() {
        assert_eq!(Character::new(vec![2, 4]).primitive().unwrap().values(), &[1, 2]);
        assert_eq!(Character::new(vec![0, -3]).primitive().unwrap().values(), &[0, -1]);
        assert_eq!(Character::new(vec![1, 0]).primitive().unwrap().values(), &[1, 0]);
        assert_eq!(Character::new(vec![0, 0]).primitive(), Err(CharacterError::ZeroCharacter));
    }

    #[test]
    fn epimorphism_check() {
        assert_eq!(Character::new(vec![1, 2]).is_epimorphism_to_z(), Ok(true));
        assert_eq!(Character::new(vec![2, 4]).is_epimorphism_to_z(), Ok(false));
        assert_eq!(Character::new(vec![0, 1]).is_epimorphism_to_z(), Ok(true));
        assert!(Character::new(vec![0, 0]).is_epimorphism_to_z().is_err());
    }

    #[test]
    fn parse_spec_validation() {
        let p3 = corpus::p3();
        assert_eq!(Character::parse_spec(&p3, "a=0, t=1").unwrap().values(), &[0, 1]);
        assert!(matches!(
            Character::parse_spec(&p3, "a=1,t=0"),
            Err(CharacterError::NotAHomomorphism { relator: 0, value: -1 })
        ));
        assert!(Character::parse_spec(&p3, "a=0").is_err());
        assert!(Character::parse_spec(&p3, "a=0,t=1,a=0").is_err());
        assert!(Character::parse_spec(&p3, "a=0,t=x").is_err());
        assert!(Character::parse_spec(&p3, "a=0,u=1").is_err());
        let c = Character::new(vec![0, -1]);
        assert_eq!(c.to_spec(p3.generators()), "a=0,t=-1");
    }
}
