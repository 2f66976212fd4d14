//! Fox calculus and the first Novikov Betti number.
//!
//! The presentation 2-complex of `G` has one 0-cell, a 1-cell per generator
//! and a 2-cell per relator. Twisting its cellular chains along `φ` gives
//!
//! ```text
//! ℚ(t)^m --d2--> ℚ(t)^n --d1--> ℚ(t)
//! ```
//!
//! with `d2` built from Fox derivatives and `d1 = (t^{φ(g_i)} − 1)`. The rank
//! of a matrix is unchanged under field extension, so working over `ℚ(t)`
//! gives the Novikov Betti number `b1 = n − rank d1 − rank d2`, a lower bound
//! for the tropical rank of `[φ]`.

mod fox;
mod laurent;
mod matrix;

use serde::Serialize;

use crate::abelianize::{Character, CharacterError};
use crate::magnus::{grank_upper, magnus_rewrite, tietze_simplify, MagnusError, RankBounds};
use crate::presentations::Presentation;

pub use fox::{fox_derivative, specialize, FreeGroupRingElement};
pub use laurent::LaurentPoly;
pub use matrix::{laurent_rank, laurent_rank_with, LaurentMatrix, PivotScan};

/// Boundary maps `(d1, d2)` of the presentation complex twisted along `c`:
/// `d1` is `1 × n`, `d2` is `n × m` with `d2[i][k]` the specialized Fox
/// derivative `∂r_k/∂g_i`.
pub fn boundary_matrices(p: &Presentation, c: &Character) -> Result<(LaurentMatrix, LaurentMatrix), CharacterError> {
    c.check_against(p)?;
    if c.is_zero() {
        return Err(CharacterError::ZeroCharacter);
    }
    let n = p.rank();
    let d1 = LaurentMatrix::from_rows(
        n,
        vec![c.values().iter().map(|&v| &LaurentPoly::monomial(1, v) - &LaurentPoly::one()).collect()],
    );
    let d2 = (0..n)
        .map(|i| p.relators().iter().map(|r| specialize(&fox_derivative(r, i), c)).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    Ok((d1, LaurentMatrix::from_rows(p.relators().len(), d2)))
}

/// The full computation behind `b1`, kept as the lower-bound certificate.
#[derive(Clone, Debug, Serialize)]
pub struct NovikovReport {
    pub character: Character,
    pub generators: usize,
    pub rank_d1: usize,
    pub rank_d2: usize,
    pub b1: usize,
    pub d1: LaurentMatrix,
    pub d2: LaurentMatrix,
}

pub fn novikov_report(p: &Presentation, c: &Character) -> Result<NovikovReport, CharacterError> {
    let (d1, d2) = boundary_matrices(p, c)?;
    let rank_d1 = laurent_rank(&d1);
    let rank_d2 = laurent_rank(&d2);
    Ok(NovikovReport {
        character: c.clone(),
        generators: p.rank(),
        rank_d1,
        rank_d2,
        b1: p.rank() - rank_d1 - rank_d2,
        d1,
        d2,
    })
}

pub fn novikov_b1(p: &Presentation, c: &Character) -> Result<usize, CharacterError> {
    Ok(novikov_report(p, c)?.b1)
}

/// Certified bounds `b1(φ) ≤ rank[φ] ≤ #d` for the primitive direction of `c`.
pub fn rank_bounds(p: &Presentation, c: &Character, max_passes: usize) -> Result<RankBounds, MagnusError> {
    c.check_against(p)?;
    let c = c.primitive()?;
    let lower_certificate = novikov_report(p, &c)?;
    let upper_certificate = tietze_simplify(&magnus_rewrite(p, &c)?, max_passes);
    let (lower, upper) = (lower_certificate.b1, grank_upper(&upper_certificate));
    Ok(RankBounds { character: c, lower, upper, exact: lower == upper, lower_certificate, upper_certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::magnus::DEFAULT_MAX_PASSES;

    fn b1(p: &Presentation, values: &[i64]) -> usize {
        novikov_b1(p, &Character::on(p, values.to_vec()).unwrap()).unwrap()
    }

    fn bounds(p: &Presentation, values: &[i64]) -> (usize, usize, bool) {
        let r = rank_bounds(p, &Character::new(values.to_vec()), DEFAULT_MAX_PASSES).unwrap();
        (r.lower, r.upper, r.exact)
    }

    #[test]
    fn torus_boundaries() {
        let p = corpus::p2();
        let (d1, d2) = boundary_matrices(&p, &Character::new(vec![1, 0])).unwrap();
        assert_eq!(d1.to_string(), "[-1 + t, 0]");
        assert_eq!(d2.to_string(), "[0; -1 + t]");
    }

    #[test]
    fn trefoil_column() {
        let p = corpus::p4();
        let (_, d2) = boundary_matrices(&p, &Character::new(vec![1, 1])).unwrap();
        assert_eq!(d2.to_string(), "[1 - t + t^2; -1 + t - t^2]");
    }

    #[test]
    fn free_group_has_empty_d2() {
        let (d1, d2) = boundary_matrices(&corpus::p1(), &Character::new(vec![0, 1])).unwrap();
        assert_eq!((d2.rows(), d2.cols()), (2, 0));
        assert_eq!(laurent_rank(&d1), 1);
    }

    #[test]
    fn betti_numbers_on_corpus() {
        assert_eq!(b1(&corpus::p1(), &[1, 0]), 1);
        assert_eq!(b1(&corpus::p1(), &[2, -3]), 1);
        assert_eq!(b1(&corpus::p2(), &[1, 1]), 0);
        assert_eq!(b1(&corpus::p3(), &[0, 1]), 0);
        assert_eq!(b1(&corpus::p3(), &[0, -1]), 0);
        assert_eq!(b1(&corpus::p4(), &[1, 1]), 0);
        assert_eq!(b1(&corpus::p5(), &[1, 0, 0, 0]), 2);
        assert_eq!(b1(&corpus::p5(), &[1, -2, 0, 1]), 2);
    }

    #[test]
    fn zero_character_is_rejected() {
        assert_eq!(novikov_b1(&corpus::p2(), &Character::new(vec![0, 0])), Err(CharacterError::ZeroCharacter));
    }

    #[test]
    fn bounds_on_corpus() {
        assert_eq!(bounds(&corpus::p2(), &[1, 0]), (0, 0, true));
        assert_eq!(bounds(&corpus::p2(), &[2, 0]), (0, 0, true));
        assert_eq!(bounds(&corpus::p1(), &[1, 0]), (1, 1, true));
        assert_eq!(bounds(&corpus::p3(), &[0, 1]), (0, 0, true));
        assert_eq!(bounds(&corpus::p3(), &[0, -1]), (0, 1, false));
        assert_eq!(bounds(&corpus::p4(), &[1, 1]), (0, 0, true));
    }
}
