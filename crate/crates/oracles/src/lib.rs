//! Slow reference implementations and random input generators for tests.
//!
//! Nothing here shares code with the algorithms under test: determinants
//! come from cofactor expansion, ranks from Gaussian elimination over `ℚ`,
//! pieces from explicit enumeration of cyclic subwords.

pub mod checks;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use tropical_rank::abelianize::character_lattice;
use tropical_rank::{Character, IntMatrix, LaurentMatrix, LaurentPoly, Presentation, Word};

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
            let term = &m[0][j] * cofactor_determinant(&minor);
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Gcd of all `k × k` minors (the `k`-th determinantal divisor).
pub fn minor_gcd(m: &IntMatrix, k: usize) -> BigInt {
    let rows = m.to_rows();
    let mut g = BigInt::zero();
    for rs in subsets(m.rows(), k) {
        for cs in subsets(m.cols(), k) {
            let sub: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect()).collect();
            g = g.gcd(&cofactor_determinant(&sub));
        }
    }
    g
}

/// Rank over `ℚ` by textbook Gaussian elimination.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for j in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][j].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][j].clone();
        for i in 0..a.len() {
            if i != rank && !a[i][j].is_zero() {
                let f = &a[i][j] / &pivot;
                for k in 0..cols {
                    let delta = &f * &a[rank][k];
                    a[i][k] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of an integer matrix over `ℚ`.
pub fn integer_rank(m: &IntMatrix) -> usize {
    let rows: Vec<Vec<BigRational>> =
        m.to_rows().into_iter().map(|r| r.into_iter().map(BigRational::from_integer).collect()).collect();
    rational_rank(&rows)
}

pub fn random_int_matrix<R: Rng>(rng: &mut R, max_dim: usize, bound: i64) -> IntMatrix {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    IntMatrix::from_rows(cols, &data)
}

pub fn random_laurent_poly<R: Rng>(rng: &mut R, span: i64) -> LaurentPoly {
    if rng.gen_bool(0.25) {
        return LaurentPoly::zero();
    }
    let low = rng.gen_range(-span..=0);
    let width = rng.gen_range(0..=span);
    LaurentPoly::from_terms((low..=low + width).map(|e| (e, rng.gen_range(-3i64..=3))))
}

pub fn random_laurent_matrix<R: Rng>(rng: &mut R, max_dim: usize, span: i64) -> LaurentMatrix {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    // a low-rank product now and then, so rank deficiency is exercised
    if rng.gen_bool(0.4) {
        let inner = rng.gen_range(1..=rows.min(cols));
        let a = (0..rows).map(|_| (0..inner).map(|_| random_laurent_poly(rng, span / 2)).collect()).collect();
        let b = (0..inner).map(|_| (0..cols).map(|_| random_laurent_poly(rng, span / 2)).collect()).collect();
        return laurent_product(&LaurentMatrix::from_rows(inner, a), &LaurentMatrix::from_rows(cols, b));
    }
    LaurentMatrix::from_rows(cols, (0..rows).map(|_| (0..cols).map(|_| random_laurent_poly(rng, span)).collect()).collect())
}

pub fn laurent_product(a: &LaurentMatrix, b: &LaurentMatrix) -> LaurentMatrix {
    assert_eq!(a.cols(), b.rows());
    let rows = (0..a.rows())
        .map(|i| {
            (0..b.cols())
                .map(|j| (0..a.cols()).fold(LaurentPoly::zero(), |acc, k| &acc + &(a.get(i, k) * b.get(k, j))))
                .collect()
        })
        .collect();
    LaurentMatrix::from_rows(b.cols(), rows)
}

/// Rank of the matrix evaluated at `t`, over `ℚ`.
pub fn evaluated_rank(m: &LaurentMatrix, t: &BigRational) -> usize {
    rational_rank(&m.evaluate(t))
}

/// A freely reduced word of exactly `len` letters over `n` generators.
pub fn random_word<R: Rng>(rng: &mut R, n: usize, len: usize) -> Word {
    let mut letters: Vec<(usize, i64)> = Vec::with_capacity(len);
    while letters.len() < len {
        let letter = (rng.gen_range(0..n), if rng.gen_bool(0.5) { 1 } else { -1 });
        if letters.last().is_some_and(|&(g, e)| g == letter.0 && e == -letter.1) {
            continue;
        }
        letters.push(letter);
    }
    Word::from_syllables(letters)
}

/// A presentation with `1..=max_gens` generators and `0..=max_rels`
/// relators of length `1..=max_len` (cyclic reduction may shorten them).
pub fn random_presentation<R: Rng>(rng: &mut R, max_gens: usize, max_rels: usize, max_len: usize) -> Presentation {
    let n = rng.gen_range(1..=max_gens);
    let names: Vec<String> = (0..n).map(|i| ["a", "b", "c", "d", "e"][i % 5].repeat(i / 5 + 1)).collect();
    let m = rng.gen_range(0..=max_rels);
    let relators = (0..m)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            random_word(rng, n, len)
        })
        .collect();
    Presentation::new(names, relators).expect("generated names are distinct")
}

/// A random primitive character of `p`, or `None` when `H^1(G; ℤ) = 0`.
pub fn random_primitive_character<R: Rng>(rng: &mut R, p: &Presentation, bound: i64) -> Option<Character> {
    let basis = character_lattice(p).ok()?;
    if basis.is_empty() {
        return None;
    }
    loop {
        let coeffs: Vec<i64> = basis.iter().map(|_| rng.gen_range(-bound..=bound)).collect();
        let values: Vec<i64> =
            (0..p.rank()).map(|g| basis.iter().zip(&coeffs).map(|(c, k)| c.value(g) * k).sum()).collect();
        let c = Character::new(values);
        if !c.is_zero() {
            return Some(c.primitive().expect("nonzero"));
        }
    }
}

fn cyclic_words(p: &Presentation) -> Vec<Vec<(usize, i64)>> {
    let mut out = Vec::new();
    for r in p.relators() {
        let letters = r.letter_vec();
        let inverse: Vec<(usize, i64)> = letters.iter().rev().map(|&(g, e)| (g, -e)).collect();
        out.push(letters);
        out.push(inverse);
    }
    out
}

/// The longest piece of `p`, by listing every cyclic subword of every
/// relator and its inverse together with where it starts, and keeping those
/// that start in two places that read different cyclic words.
pub fn longest_piece(p: &Presentation) -> usize {
    let words = cyclic_words(p);
    let rotated = |k: usize, s: usize| -> Vec<(usize, i64)> {
        let w = &words[k];
        w[s..].iter().chain(&w[..s]).copied().collect()
    };
    let mut best = 0;
    let starts: Vec<(usize, usize)> = (0..words.len()).flat_map(|k| (0..words[k].len()).map(move |s| (k, s))).collect();
    for (x, &(k1, s1)) in starts.iter().enumerate() {
        for &(k2, s2) in &starts[x + 1..] {
            let (r1, r2) = (rotated(k1, s1), rotated(k2, s2));
            if r1 == r2 {
                continue;
            }
            let mut len = 0;
            while len < r1.len().min(r2.len()) && r1[len] == r2[len] {
                len += 1;
            }
            best = best.max(len);
        }
    }
    best
}

/// `C'(λ)` with `λ = num/den`, through [`longest_piece`] and the shortest
/// relator. Only correct when every relator has the same length or the
/// longest piece fits the shortest relator, which covers the test inputs.
pub fn small_cancellation_brute(p: &Presentation, num: usize, den: usize) -> bool {
    let shortest = p.relators().iter().map(Word::len).min();
    match shortest {
        None => true,
        Some(len) => longest_piece(p) * den < num * len,
    }
}

/// Number of freely reduced words of length at most `radius` on `k`
/// generators, by listing them.
pub fn free_ball_size(k: usize, radius: usize) -> usize {
    let mut layer: Vec<Vec<(usize, i64)>> = vec![Vec::new()];
    let mut total = 1;
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..k {
                for e in [1, -1] {
                    if w.last() == Some(&(g, -e)) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push((g, e));
                    next.push(v);
                }
            }
        }
        total += next.len();
        layer = next;
    }
    total
}

/// Number of points of `ℤ^k` with `|x|_1 ≤ radius`, by listing them.
pub fn lattice_ball_size(k: usize, radius: i64) -> usize {
    let mut points: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0; k]]);
    for _ in 0..radius {
        let mut next = points.clone();
        for p in &points {
            for i in 0..k {
                for d in [1, -1] {
                    let mut q = p.clone();
                    q[i] += d;
                    next.insert(q);
                }
            }
        }
        points = next;
    }
    points.len()
}

/// Product of absolute values.
pub fn abs_product(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::one(), |acc, v| acc * v.abs())
}
