use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use super::laurent::LaurentPoly;

/// A dense matrix of Laurent polynomials, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix { rows, cols, entries: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<LaurentPoly>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            entries.extend(row);
        }
        LaurentMatrix { rows: n, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: LaurentPoly) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<LaurentPoly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> LaurentMatrix {
        LaurentMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> LaurentMatrix {
        let mut t = LaurentMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Entrywise `t ↦ t⁻¹`.
    pub fn invert_variable(&self) -> LaurentMatrix {
        self.map(LaurentPoly::invert_variable)
    }

    /// The matrix of values at a nonzero rational `t`.
    pub fn evaluate(&self, t: &BigRational) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|p| p.evaluate(t)).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, p) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{p}")?;
            }
        }
        f.write_str("]")
    }
}

/// JSON form: list of rows, each a list of polynomials.
impl Serialize for LaurentMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

/// Order in which the elimination looks for its next pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotScan {
    /// Entry of lowest degree, ties broken in row-major order.
    RowMajor,
    /// First nonzero entry scanning column by column.
    ColumnMajor,
}

/// Divides out the integer content and the common power of `t`. Both are
/// units over `ℚ(t)`, so the row space is unchanged.
fn normalize_row(row: &mut [LaurentPoly]) {
    let content = row.iter().fold(BigInt::zero(), |acc, p| acc.gcd(&p.content()));
    if content.is_zero() {
        return;
    }
    let min_exp = row.iter().filter_map(LaurentPoly::min_exponent).min().unwrap_or(0);
    for p in row.iter_mut() {
        if p.is_zero() {
            continue;
        }
        let mut q = p.shift(-min_exp);
        if !content.is_one() {
            q = q.div_exact(&content);
        }
        *p = q;
    }
}

/// Rank over the field of rational functions `ℚ(t)`.
pub fn laurent_rank(m: &LaurentMatrix) -> usize {
    laurent_rank_with(m, PivotScan::RowMajor)
}

/// Fraction-free elimination over `ℤ[t]`: every row operation replaces a row
/// by `pivot · row − a · pivot_row`, which multiplies it by a nonzero scalar
/// of `ℚ(t)` and so preserves rank.
pub fn laurent_rank_with(m: &LaurentMatrix, scan: PivotScan) -> usize {
    let mut rows = m.to_rows();
    rows.iter_mut().for_each(|r| normalize_row(r));
    let mut row_live = vec![true; m.rows];
    let mut col_live = vec![true; m.cols];
    let mut rank = 0;

    loop {
        let pivot = match scan {
            PivotScan::RowMajor => (0..m.rows)
                .filter(|&i| row_live[i])
                .flat_map(|i| (0..m.cols).map(move |j| (i, j)))
                .filter(|&(i, j)| col_live[j] && !rows[i][j].is_zero())
                .min_by_key(|&(i, j)| (rows[i][j].max_exponent(), rows[i][j].span(), i, j)),
            PivotScan::ColumnMajor => (0..m.cols)
                .filter(|&j| col_live[j])
                .flat_map(|j| (0..m.rows).map(move |i| (i, j)))
                .find(|&(i, j)| row_live[i] && !rows[i][j].is_zero()),
        };
        let Some((pr, pc)) = pivot else { break };
        rank += 1;
        row_live[pr] = false;
        col_live[pc] = false;

        let pivot_row = rows[pr].clone();
        let a = pivot_row[pc].clone();
        for i in 0..m.rows {
            if !row_live[i] || rows[i][pc].is_zero() {
                continue;
            }
            let b = rows[i][pc].clone();
            for j in 0..m.cols {
                if !col_live[j] && j != pc {
                    continue;
                }
                rows[i][j] = &(&a * &rows[i][j]) - &(&b * &pivot_row[j]);
            }
            debug_assert!(rows[i][pc].is_zero());
            normalize_row(&mut rows[i]);
        }
    }
    rank
}
