//! Property checks that run an algorithm under test and compare its output
//! against the references in the crate root. Each returns a description of
//! the first violation found.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use tropical_rank::abelianize::{abelianization, smith_normal_form};
use tropical_rank::magnus::{magnus_rewrite, tietze_simplify, DEFAULT_MAX_PASSES};
use tropical_rank::novikov::{boundary_matrices, laurent_rank_with, PivotScan};
use tropical_rank::{Character, IntMatrix, LaurentMatrix, LaurentPoly, Presentation};

use crate::{abs_product, evaluated_rank, integer_rank, minor_gcd};

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// `U·M·V = D`, unimodular `U` and `V`, a nonnegative diagonal with the
/// divisibility chain, and (optionally) determinantal divisors equal to the
/// minor gcds.
pub fn smith_form(m: &IntMatrix, with_minors: bool) -> Result<(), String> {
    let f = smith_normal_form(m);
    ensure!(f.u.mul(m).mul(&f.v) == f.d, "U·M·V ≠ D for {m}");
    ensure!(f.u.determinant().abs().is_one(), "U not unimodular for {m}");
    ensure!(f.v.determinant().abs().is_one(), "V not unimodular for {m}");
    for i in 0..f.d.rows() {
        for j in 0..f.d.cols() {
            ensure!(i == j || f.d[(i, j)].is_zero(), "D not diagonal for {m}");
        }
    }
    let diag = f.diagonal();
    ensure!(diag.iter().all(|d| !d.is_negative()), "negative diagonal entry for {m}");
    for w in diag.windows(2) {
        let divides = (w[0].is_zero() && w[1].is_zero()) || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero());
        ensure!(divides, "divisibility fails for {m}: {diag:?}");
    }
    ensure!(f.rank() == integer_rank(m), "rank {} but elimination gives {} for {m}", f.rank(), integer_rank(m));
    if with_minors {
        for k in 1..=f.rank() {
            let (got, want) = (abs_product(&diag[..k]), minor_gcd(m, k));
            ensure!(got == want, "determinantal divisor {k} of {m}: {got} vs {want}");
        }
        ensure!(
            f.rank() == m.rows().min(m.cols()) || minor_gcd(m, f.rank() + 1).is_zero(),
            "nonzero minors beyond rank for {m}"
        );
    }
    Ok(())
}

/// Both pivot orders agree, and no rational evaluation exceeds the rank.
/// Returns the best evaluated rank seen over `points` random points.
pub fn laurent_rank_agreement<R: Rng>(rng: &mut R, m: &LaurentMatrix, points: usize) -> Result<usize, String> {
    let rank = laurent_rank_with(m, PivotScan::RowMajor);
    let other = laurent_rank_with(m, PivotScan::ColumnMajor);
    ensure!(other == rank, "pivot orders disagree on {m}: {rank} vs {other}");
    ensure!(rank <= m.rows().min(m.cols()), "rank {rank} exceeds the shape of {m}");
    let mut best = 0;
    for _ in 0..points {
        let num: i64 = loop {
            let x = rng.gen_range(-40..=40);
            if x != 0 {
                break x;
            }
        };
        let t = BigRational::new(BigInt::from(num), BigInt::from(rng.gen_range(1..30)));
        let r = evaluated_rank(m, &t);
        ensure!(r <= rank, "evaluation at {t} has rank {r} > {rank} for {m}");
        best = best.max(r);
    }
    Ok(best)
}

/// `Σ_i ∂₂(i,k) · (t^{φ(g_i)} − 1) = 0` for every relator `k`.
pub fn fox_row_identity(p: &Presentation, c: &Character) -> Result<(), String> {
    let (d1, d2) = boundary_matrices(p, c).map_err(|e| e.to_string())?;
    for k in 0..d2.cols() {
        let defect = (0..p.rank()).fold(LaurentPoly::zero(), |acc, i| &acc + &(d2.get(i, k) * d1.get(0, i)));
        ensure!(defect.is_zero(), "{p} along {c}: relator {k} leaves {defect}");
    }
    Ok(())
}

/// Invariants of the raw and simplified Magnus rewrites: structural checks,
/// the abelianization of the rewritten presentation, the extended character
/// and the `d`-count bound.
pub fn magnus_soundness(p: &Presentation, c: &Character) -> Result<(), String> {
    let raw = magnus_rewrite(p, c).map_err(|e| format!("{p} along {c}: {e}"))?;
    raw.check_invariants().map_err(|e| format!("{p} along {c}: {e}"))?;
    if c.values().iter().any(|v| v.abs() == 1) {
        ensure!(raw.d_count() < p.rank(), "{p} along {c}: raw d-count {}", raw.d_count());
    }
    let f = tietze_simplify(&raw, DEFAULT_MAX_PASSES);
    f.check_invariants().map_err(|e| format!("{p} along {c}: {e}"))?;
    ensure!(f.d_count() <= raw.d_count(), "{p} along {c}: simplification added d generators");
    ensure!(f.d_count() < p.rank(), "{p} along {c}: d-count {} after simplification\n{f}", f.d_count());
    let ab = abelianization(p);
    for fake in [&raw, &f] {
        let q = fake.to_presentation();
        ensure!(abelianization(&q) == ab, "{p} along {c} rewrote to {q} with a different abelianization");
        let phi = fake.extended_character();
        ensure!(phi.value(fake.stable()) == 1, "{p} along {c}: stable letter maps to {}", phi.value(fake.stable()));
        ensure!(
            fake.d_gens().iter().chain(fake.c_gens()).all(|&g| phi.value(g) == 0),
            "{p} along {c}: a d or c generator is outside the kernel"
        );
    }
    Ok(())
}
