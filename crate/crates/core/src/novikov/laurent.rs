use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::json::bigint_value;

/// An integer Laurent polynomial in one variable `t`.
///
/// Stored sparsely; zero coefficients are never kept, so the zero polynomial
/// is the empty map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    /// `c · t^e`
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentPoly { coeffs }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `max_exponent - min_exponent`, or `None` for zero.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exponent()? - self.min_exponent()?)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> LaurentPoly {
        if k.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * k)).collect() }
    }

    /// Exact division of every coefficient by `k`. Panics if `k` does not
    /// divide some coefficient.
    pub fn div_exact(&self, k: &BigInt) -> LaurentPoly {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| {
                    let (q, r) = c.div_rem(k);
                    assert!(r.is_zero(), "inexact division");
                    (e, q)
                })
                .collect(),
        }
    }

    /// Gcd of the coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Substitutes `t ↦ t⁻¹`.
    pub fn invert_variable(&self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    /// Value at a nonzero rational point.
    pub fn evaluate(&self, t: &BigRational) -> BigRational {
        assert!(!t.is_zero(), "Laurent polynomials are undefined at t = 0");
        self.coeffs.iter().fold(BigRational::zero(), |acc, (&e, c)| {
            let pow = if e >= 0 { t.pow(e as i32) } else { t.recip().pow((-e) as i32) };
            acc + BigRational::from_integer(c.clone()) * pow
        })
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }
}

/// Renders as e.g. `-2*t^-1 + 1 + 3*t^2`: ascending exponents, explicit
/// signs between terms, `0` for the zero polynomial.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let var = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            match (magnitude.is_one(), var.is_empty()) {
                (_, true) => write!(f, "{magnitude}")?,
                (true, false) => f.write_str(&var)?,
                (false, false) => write!(f, "{magnitude}*{var}")?,
            }
        }
        Ok(())
    }
}

/// JSON form: a list of `[exponent, coefficient]` pairs sorted by exponent.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for (&e, c) in &self.coeffs {
            seq.serialize_element(&(e, bigint_value(c)))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn display_format() {
        assert_eq!(lp(&[(-1, -2), (0, 1), (2, 3)]).to_string(), "-2*t^-1 + 1 + 3*t^2");
        assert_eq!(lp(&[(0, 1), (1, -1), (2, 1)]).to_string(), "1 - t + t^2");
        assert_eq!(lp(&[(-1, -1)]).to_string(), "-t^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_format() {
        let p = lp(&[(2, 3), (-1, -2), (0, 1)]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[-1,-2],[0,1],[2,3]]");
    }

    #[test]
    fn arithmetic() {
        let t_minus_1 = lp(&[(1, 1), (0, -1)]);
        let t_plus_1 = lp(&[(1, 1), (0, 1)]);
        assert_eq!(&t_minus_1 * &t_plus_1, lp(&[(2, 1), (0, -1)]));
        assert!((&t_minus_1 - &t_minus_1).is_zero());
        assert_eq!(&t_minus_1 + &t_plus_1, lp(&[(1, 2)]));
        assert_eq!(t_minus_1.invert_variable(), lp(&[(-1, 1), (0, -1)]));
        assert_eq!(lp(&[(3, 4), (5, 6)]).content(), BigInt::from(2));
    }

    #[test]
    fn evaluation() {
        let p = lp(&[(-1, 2), (1, 3)]);
        let half = BigRational::new(1.into(), 2.into());
        // 2*2 + 3/2
        assert_eq!(p.evaluate(&half), BigRational::new(11.into(), 2.into()));
    }
}
