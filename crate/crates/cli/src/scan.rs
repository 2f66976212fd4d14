//! Enumeration of primitive lattice characters in a max-norm box.

use tropical_rank::Character;

/// Every primitive character `v = Σ x_i b_i` with `max |v_j| ≤ height`,
/// sorted lexicographically.
///
/// `basis` must be in row echelon form with positive pivots (as returned by
/// `character_lattice`). Pivot column `i` only sees rows `0..=i`, so once
/// `x_0 … x_{i-1}` are fixed the admissible `x_i` form an interval.
pub fn primitive_characters(basis: &[Character], n: usize, height: i64) -> Vec<Character> {
    let pivots: Vec<usize> =
        basis.iter().map(|b| b.values().iter().position(|&v| v != 0).expect("basis rows are nonzero")).collect();
    debug_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
    let mut out = Vec::new();
    let mut coeffs = Vec::with_capacity(basis.len());
    descend(basis, &pivots, height, &mut vec![0; n], &mut coeffs, &mut out);
    out.sort();
    out
}

fn descend(
    basis: &[Character],
    pivots: &[usize],
    height: i64,
    acc: &mut Vec<i64>,
    coeffs: &mut Vec<i64>,
    out: &mut Vec<Character>,
) {
    let i = coeffs.len();
    if i == basis.len() {
        let c = Character::new(acc.clone());
        if !c.is_zero() && c.gcd() == 1 && acc.iter().all(|v| v.abs() <= height) {
            out.push(c);
        }
        return;
    }
    let (row, pivot) = (basis[i].values(), basis[i].value(pivots[i]));
    let partial = acc[pivots[i]];
    // |partial + x·pivot| ≤ height
    let lo = (-height - partial).div_euclid(pivot) + i64::from((-height - partial).rem_euclid(pivot) != 0);
    let hi = (height - partial).div_euclid(pivot);
    for x in lo..=hi {
        for (a, b) in acc.iter_mut().zip(row) {
            *a += x * b;
        }
        coeffs.push(x);
        descend(basis, pivots, height, acc, coeffs, out);
        coeffs.pop();
        for (a, b) in acc.iter_mut().zip(row) {
            *a -= x * b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scan(rows: &[&[i64]], height: i64) -> Vec<Vec<i64>> {
        let basis: Vec<Character> = rows.iter().map(|r| Character::new(r.to_vec())).collect();
        let n = rows.first().map_or(0, |r| r.len());
        primitive_characters(&basis, n, height).into_iter().map(|c| c.values().to_vec()).collect()
    }

    #[test]
    fn full_lattice_height_one() {
        let rows = scan(&[&[1, 0], &[0, 1]], 1);
        assert_eq!(rows, [[-1, -1], [-1, 0], [-1, 1], [0, -1], [0, 1], [1, -1], [1, 0], [1, 1]]);
    }

    #[test]
    fn full_lattice_height_three_counts_primitive_vectors() {
        // 48 nonzero vectors in [-3,3]^2 minus (±2,0),(0,±2),(±2,±2),(±3,0),(0,±3),(±3,±3)
        assert_eq!(scan(&[&[1, 0], &[0, 1]], 3).len(), 32);
    }

    #[test]
    fn sublattice_with_large_pivot() {
        assert_eq!(scan(&[&[0, 1]], 1), [[0, -1], [0, 1]]);
        assert_eq!(scan(&[&[1, 1]], 2), [[-1, -1], [1, 1]]);
        assert_eq!(scan(&[&[2, 1]], 2), [[-2, -1], [2, 1]]);
        assert_eq!(scan(&[&[1, 0, 1], &[0, 1, 1]], 1), [[-1, 0, -1], [-1, 1, 0], [0, -1, -1], [0, 1, 1], [1, -1, 0], [1, 0, 1]]);
    }

    #[test]
    fn agrees_with_brute_force() {
        let basis = [Character::new(vec![1, 0, 2]), Character::new(vec![0, 3, 1])];
        let got = primitive_characters(&basis, 3, 4);
        let mut want = Vec::new();
        for x in -10..=10i64 {
            for y in -10..=10i64 {
                let c = Character::new(vec![x, 3 * y, 2 * x + y]);
                if !c.is_zero() && c.gcd() == 1 && c.values().iter().all(|v| v.abs() <= 4) {
                    want.push(c);
                }
            }
        }
        want.sort();
        assert_eq!(got, want);
    }
}
