//! Exact rational elimination on small integer matrices: rank, integer
//! kernel bases and coordinates with respect to a basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

type Rows = Vec<Vec<BigRational>>;

fn to_rational(rows: &[Vec<i64>]) -> Rows {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect()
}

/// Reduced row echelon form in place; returns the pivot column of each pivot row.
fn rref(a: &mut Rows, cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in 0..cols {
                    let t = &factor * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<i64>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut a = to_rational(rows);
    rref(&mut a, cols).len()
}

/// A basis of the kernel of the `rows × cols` matrix, one primitive integer
/// vector per free column. Each vector has a positive entry at its free
/// column and zeros at the other free columns.
pub fn integer_kernel_basis(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let mut a = to_rational(rows);
    let pivots = rref(&mut a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            primitive_integer_vector(&v)
        })
        .collect()
}

/// Scales a rational vector to a primitive integer vector (gcd of entries 1).
fn primitive_integer_vector(v: &[BigRational]) -> Vec<i64> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let gcd = if gcd.is_zero() { BigInt::one() } else { gcd };
    ints.iter()
        .map(|x| (x / &gcd).to_i64().expect("kernel entries fit in i64"))
        .collect()
}

/// Coordinates `c` with `Σ c_j basis_j = target`, if `target` lies in the
/// rational span of the (linearly independent) basis vectors.
pub fn solve_in_basis(basis: &[Vec<i64>], target: &[i64]) -> Option<Vec<BigRational>> {
    let n = target.len();
    let k = basis.len();
    // augmented system: n equations, k unknowns plus the right-hand side
    let mut a: Rows = (0..n)
        .map(|i| {
            basis
                .iter()
                .map(|b| BigRational::from_integer(BigInt::from(b[i])))
                .chain(std::iter::once(BigRational::from_integer(BigInt::from(target[i]))))
                .collect()
        })
        .collect();
    let pivots = rref(&mut a, k + 1);
    if pivots.contains(&k) || pivots.len() < k {
        return None;
    }
    let mut coords = vec![BigRational::zero(); k];
    for (r, &pc) in pivots.iter().enumerate() {
        coords[pc] = a[r][k].clone();
    }
    Some(coords)
}

/// Like [`solve_in_basis`] but requires integer coordinates.
pub fn solve_in_basis_integer(basis: &[Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    solve_in_basis(basis, target)?
        .into_iter()
        .map(|c| c.is_integer().then(|| c.to_integer().to_i64()).flatten())
        .collect()
}

/// Sign-normalised copy: makes the first nonzero entry positive.
pub fn normalise_sign(v: &mut [i64]) {
    if v.iter().find(|x| **x != 0).is_some_and(|x| x.is_negative()) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(rows: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
        rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    #[test]
    fn rank_of_examples() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank(&[vec![2, 1, 0], vec![0, 1, 1], vec![1, 0, 3]]), 3);
    }

    #[test]
    fn kernel_is_annihilated_and_primitive() {
        let rows = vec![vec![2, 4, 6, 0], vec![1, 2, 0, 3]];
        let basis = integer_kernel_basis(&rows, 4);
        assert_eq!(basis.len(), 2);
        for g in &basis {
            assert!(mul(&rows, g).iter().all(|&x| x == 0));
            let gcd = g.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            assert_eq!(gcd, 1);
        }
    }

    #[test]
    fn solve_coordinates() {
        let basis = vec![vec![1, 0, 1], vec![0, 1, 1]];
        assert_eq!(solve_in_basis_integer(&basis, &[2, -3, -1]), Some(vec![2, -3]));
        assert_eq!(solve_in_basis_integer(&basis, &[1, 1, 0]), None);
        let half = vec![vec![2, 0], vec![0, 2]];
        assert_eq!(solve_in_basis_integer(&half, &[1, 0]), None);
    }
}
