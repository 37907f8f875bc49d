//! Square integer matrices with overflow-checked arithmetic and exact
//! invariants (determinant, rank, characteristic polynomial).

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl IntegerMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntegerMatrix { dim, entries: vec![0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch);
        }
        Ok(IntegerMatrix { dim, entries: rows.concat() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.dim.max(1)).map(<[i64]>::to_vec).take(self.dim).collect()
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn trace(&self) -> i64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn count_zeros(&self) -> usize {
        self.entries.iter().filter(|&&x| x == 0).count()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&x| x >= 0)
    }

    /// Checked product `self · rhs`.
    pub fn mul(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch);
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let term = a.checked_mul(rhs[(k, j)]).ok_or(Error::Overflow)?;
                    let slot = &mut out[(i, j)];
                    *slot = slot.checked_add(term).ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    /// Checked power by repeated squaring; `pow(0)` is the identity.
    pub fn pow(&self, mut exp: u32) -> Result<IntegerMatrix> {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Matrix-vector product `self · v`.
    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch);
        }
        (0..self.dim)
            .map(|i| {
                self.row(i).iter().zip(v).try_fold(0i64, |acc, (&a, &b)| {
                    a.checked_mul(b).and_then(|t| acc.checked_add(t)).ok_or(Error::Overflow)
                })
            })
            .collect()
    }

    /// Characteristic polynomial `det(xI − M)`, coefficients from the leading
    /// (monic) term down to the constant term. Computed exactly with the
    /// Faddeev–LeVerrier recurrence over big integers.
    pub fn char_poly(&self) -> Vec<BigInt> {
        let n = self.dim;
        let a: Vec<Vec<BigInt>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        let mut coeffs = vec![BigInt::one()];
        let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
        for k in 1..=n {
            // M_k = A·M_{k-1} + c_{n-k+1}·I
            let prev_c = coeffs.last().unwrap().clone();
            let mut next = big_mul(&a, &m);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += &prev_c;
            }
            m = next;
            let am = big_mul(&a, &m);
            let tr: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
            let k_big = BigInt::from(k);
            debug_assert!((&tr % &k_big).is_zero());
            coeffs.push(-(tr / k_big));
        }
        coeffs
    }

    /// Exact determinant.
    pub fn det(&self) -> BigInt {
        let poly = self.char_poly();
        let c0 = poly.last().cloned().unwrap_or_else(BigInt::one);
        if self.dim % 2 == 0 {
            c0
        } else {
            -c0
        }
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        exact::rank(&self.to_rows())
    }

    /// Rank of `M^dim`, i.e. the rank on which the powers of `M` stabilise.
    /// Equal to the dimension minus the algebraic multiplicity of eigenvalue 0.
    pub fn stable_rank(&self) -> usize {
        let poly = self.char_poly();
        let zero_multiplicity = poly.iter().rev().take_while(|c| c.is_zero()).count();
        self.dim - zero_multiplicity
    }
}

/// Converts characteristic polynomial coefficients to `i64` when they fit.
pub fn poly_to_i64(poly: &[BigInt]) -> Option<Vec<i64>> {
    poly.iter().map(ToPrimitive::to_i64).collect()
}

/// Renders a polynomial given by coefficients (highest degree first).
pub fn format_poly(poly: &[BigInt]) -> String {
    let deg = poly.len().saturating_sub(1);
    let mut out = String::new();
    for (i, c) in poly.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let power = deg - i;
        let sign = if c.is_negative() { "-" } else { "+" };
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let show_coeff = !mag.is_one() || power == 0;
        if show_coeff {
            out.push_str(&mag.to_string());
        }
        match power {
            0 => {}
            1 => out.push('x'),
            p => out.push_str(&format!("x^{p}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn big_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

impl Index<(usize, usize)> for IntegerMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for i in 0..self.dim {
            let row: Vec<String> =
                self.row(i).iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn char_poly_small() {
        let fib = m(&[&[0, 1], &[1, 1]]);
        assert_eq!(poly_to_i64(&fib.char_poly()).unwrap(), [1, -1, -1]);
        assert_eq!(fib.det(), BigInt::from(-1));
        let tm_ap = m(&[&[0, 0, 0], &[1, 0, 2], &[1, 1, 1]]);
        assert_eq!(poly_to_i64(&tm_ap.char_poly()).unwrap(), [1, -1, -2, 0]);
        assert_eq!(IntegerMatrix::zeros(0).char_poly(), vec![BigInt::one()]);
    }

    #[test]
    fn stable_rank_matches_rank_of_power() {
        let tm = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(tm.stable_rank(), 1);
        let nil = m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(nil.rank(), 2);
        assert_eq!(nil.stable_rank(), 0);
        assert_eq!(nil.pow(3).unwrap().rank(), 0);
        assert_eq!(IntegerMatrix::identity(1).stable_rank(), 1);
    }

    #[test]
    fn overflow_is_detected() {
        let big = m(&[&[i64::MAX / 2, 1], &[1, 1]]);
        assert_eq!(big.mul(&big), Err(Error::Overflow));
    }

    #[test]
    fn poly_formatting() {
        let p: Vec<BigInt> = [1, -1, -2, 0].into_iter().map(BigInt::from).collect();
        assert_eq!(format_poly(&p), "x^3 - x^2 - 2x");
    }
}
