//! Primitivity, eigenvalues and Perron–Frobenius data of substitution matrices.

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;

/// Sweep cap for the QR iteration.
pub const QR_MAX_ITERATIONS: usize = 10_000;
/// Deflation threshold, relative to the matrix norm.
pub const QR_TOLERANCE: f64 = 1e-12;
/// Relative change at which power iteration is considered converged.
pub const POWER_TOLERANCE: f64 = 1e-12;
pub const POWER_MAX_ITERATIONS: usize = 1_000_000;

/// Decides primitivity by repeated squaring of the zero pattern.
///
/// Entries are clamped to 0/1 after each squaring; only the zero pattern is
/// inspected. Halts with `true` once no zeros remain, and with `false` when a
/// squaring leaves a nonzero zero count unchanged.
pub fn is_primitive(m: &IntegerMatrix) -> Result<bool> {
    let n = m.dim();
    for i in 0..n {
        for j in 0..n {
            if m[(i, j)] < 0 {
                return Err(Error::NegativeEntry { row: i, col: j });
            }
        }
    }
    if n == 0 {
        return Ok(false);
    }
    let mut pattern: Vec<bool> = (0..n * n).map(|k| m[(k / n, k % n)] > 0).collect();
    loop {
        let before = pattern.iter().filter(|p| !**p).count();
        pattern = square_pattern(&pattern, n);
        let after = pattern.iter().filter(|p| !**p).count();
        if after == 0 {
            return Ok(true);
        }
        if before == after {
            return Ok(false);
        }
    }
}

fn square_pattern(p: &[bool], n: usize) -> Vec<bool> {
    let mut out = vec![false; n * n];
    for i in 0..n {
        for k in 0..n {
            if !p[i * n + k] {
                continue;
            }
            for j in 0..n {
                out[i * n + j] |= p[k * n + j];
            }
        }
    }
    out
}

/// One eigenvalue `re + i·im`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
}

impl Eigenvalue {
    pub fn modulus(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn is_real(&self) -> bool {
        self.im == 0.0
    }
}

/// An eigenvalue as displayed: real values as themselves, complex conjugate
/// pairs once, by absolute value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportedEigenvalue {
    pub value: f64,
    pub complex_pair: bool,
}

/// All eigenvalues of `m` by Hessenberg reduction and shifted QR iteration,
/// ordered by decreasing modulus (ties by decreasing real part).
pub fn eigenvalues(m: &IntegerMatrix) -> Result<Vec<Eigenvalue>> {
    let n = m.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    // 1-indexed working copy
    let mut a = vec![vec![0.0f64; n + 1]; n + 1];
    for i in 0..n {
        for j in 0..n {
            a[i + 1][j + 1] = m[(i, j)] as f64;
        }
    }
    reduce_to_hessenberg(&mut a, n);
    let mut values = hessenberg_qr(&mut a, n)?;
    values.sort_by(|x, y| {
        y.modulus()
            .total_cmp(&x.modulus())
            .then(y.re.total_cmp(&x.re))
            .then(y.im.total_cmp(&x.im))
    });
    Ok(values)
}

/// Collapses conjugate pairs into single entries carrying their modulus.
pub fn report_eigenvalues(values: &[Eigenvalue]) -> Vec<ReportedEigenvalue> {
    values
        .iter()
        .filter(|e| e.im >= 0.0)
        .map(|e| {
            if e.is_real() {
                ReportedEigenvalue { value: e.re, complex_pair: false }
            } else {
                ReportedEigenvalue { value: e.modulus(), complex_pair: true }
            }
        })
        .collect()
}

/// Gaussian elimination with pivoting to upper Hessenberg form.
fn reduce_to_hessenberg(a: &mut [Vec<f64>], n: usize) {
    for m in 2..n {
        let mut x = 0.0f64;
        let mut i = m;
        for j in m..=n {
            if a[j][m - 1].abs() > x.abs() {
                x = a[j][m - 1];
                i = j;
            }
        }
        if i != m {
            for j in (m - 1)..=n {
                let t = a[i][j];
                a[i][j] = a[m][j];
                a[m][j] = t;
            }
            for row in a.iter_mut().take(n + 1).skip(1) {
                row.swap(i, m);
            }
        }
        if x != 0.0 {
            for i in (m + 1)..=n {
                let mut y = a[i][m - 1];
                if y != 0.0 {
                    y /= x;
                    a[i][m - 1] = y;
                    for j in m..=n {
                        a[i][j] -= y * a[m][j];
                    }
                    for j in 1..=n {
                        a[j][m] += y * a[j][i];
                    }
                }
            }
        }
    }
    for i in 3..=n {
        for j in 1..i - 1 {
            a[i][j] = 0.0;
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (1-indexed).
#[allow(clippy::many_single_char_names)]
fn hessenberg_qr(a: &mut [Vec<f64>], n: usize) -> Result<Vec<Eigenvalue>> {
    let mut wr = vec![0.0; n + 1];
    let mut wi = vec![0.0; n + 1];
    let mut anorm = 0.0;
    for i in 1..=n {
        for j in (i.max(2) - 1)..=n {
            anorm += a[i][j].abs();
        }
    }
    let threshold = QR_TOLERANCE * anorm;
    let mut nn = n;
    let mut t = 0.0;
    let mut total_iterations = 0usize;
    let (mut p, mut q, mut r, mut s, mut w, mut x, mut y, mut z);
    while nn >= 1 {
        let mut its = 0;
        loop {
            let mut l = nn;
            while l >= 2 {
                let sub = a[l][l - 1].abs();
                let diag = a[l - 1][l - 1].abs() + a[l][l].abs();
                if sub <= threshold || sub + diag == diag {
                    a[l][l - 1] = 0.0;
                    break;
                }
                l -= 1;
            }
            x = a[nn][nn];
            if l == nn {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                nn -= 1;
                break;
            }
            y = a[nn - 1][nn - 1];
            w = a[nn][nn - 1] * a[nn - 1][nn];
            if l == nn - 1 {
                p = 0.5 * (y - x);
                q = p * p + w;
                z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + sign(z, p);
                    wr[nn - 1] = x + z;
                    wr[nn] = x + z;
                    if z != 0.0 {
                        wr[nn] = x - w / z;
                    }
                    wi[nn - 1] = 0.0;
                    wi[nn] = 0.0;
                } else {
                    wr[nn - 1] = x + p;
                    wr[nn] = x + p;
                    wi[nn - 1] = -z;
                    wi[nn] = z;
                }
                nn -= 2;
                break;
            }
            if total_iterations >= QR_MAX_ITERATIONS {
                return Err(Error::NumericalFailure(format!(
                    "QR iteration did not converge in {QR_MAX_ITERATIONS} sweeps"
                )));
            }
            if its > 0 && its % 10 == 0 {
                // exceptional shift
                t += x;
                for i in 1..=nn {
                    a[i][i] -= x;
                }
                s = a[nn][nn - 1].abs() + a[nn - 1][nn - 2].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            total_iterations += 1;
            let mut m = nn - 2;
            loop {
                z = a[m][m];
                r = x - z;
                s = y - z;
                p = (r * s - w) / a[m + 1][m] + a[m][m + 1];
                q = a[m + 1][m + 1] - z - r - s;
                r = a[m + 2][m + 1];
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nn {
                a[i][i - 2] = 0.0;
                if i != m + 2 {
                    a[i][i - 3] = 0.0;
                }
            }
            let mut k = m;
            while k < nn {
                if k != m {
                    p = a[k][k - 1];
                    q = a[k + 1][k - 1];
                    r = 0.0;
                    if k != nn - 1 {
                        r = a[k + 2][k - 1];
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                s = sign((p * p + q * q + r * r).sqrt(), p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            a[k][k - 1] = -a[k][k - 1];
                        }
                    } else {
                        a[k][k - 1] = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nn {
                        p = a[k][j] + q * a[k + 1][j];
                        if k != nn - 1 {
                            p += r * a[k + 2][j];
                            a[k + 2][j] -= p * z;
                        }
                        a[k + 1][j] -= p * y;
                        a[k][j] -= p * x;
                    }
                    let mmin = nn.min(k + 3);
                    for i in l..=mmin {
                        p = x * a[i][k] + y * a[i][k + 1];
                        if k != nn - 1 {
                            p += z * a[i][k + 2];
                            a[i][k + 2] -= p * r;
                        }
                        a[i][k + 1] -= p * q;
                        a[i][k] -= p;
                    }
                }
                k += 1;
            }
        }
    }
    Ok((1..=n).map(|i| Eigenvalue { re: wr[i], im: wi[i] }).collect())
}

/// Perron–Frobenius eigenvalue and its normalised eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct PfData {
    pub pf_eigenvalue: f64,
    /// Left eigenvector, scaled so its smallest entry is 1.
    pub tile_lengths: Vec<f64>,
    /// Right eigenvector, scaled so its entries sum to 1.
    pub frequencies: Vec<f64>,
    pub eigenvalues: Vec<ReportedEigenvalue>,
}

pub fn pf_data(m: &IntegerMatrix) -> Result<PfData> {
    if !is_primitive(m)? {
        return Err(Error::NotPrimitive);
    }
    let (lambda, right) = power_iteration(m)?;
    let (_, left) = power_iteration(&m.transpose())?;
    let min = left.iter().copied().fold(f64::INFINITY, f64::min);
    let tile_lengths = left.iter().map(|x| x / min).collect();
    let all = eigenvalues(m)?;
    Ok(PfData {
        pf_eigenvalue: lambda,
        tile_lengths,
        frequencies: right,
        eigenvalues: report_eigenvalues(&all),
    })
}

/// Power iteration from the all-ones vector; returns the dominant eigenvalue
/// and its eigenvector normalised to sum 1.
fn power_iteration(m: &IntegerMatrix) -> Result<(f64, Vec<f64>)> {
    let n = m.dim();
    let mut v = vec![1.0 / n as f64; n];
    for _ in 0..POWER_MAX_ITERATIONS {
        let mut next: Vec<f64> = (0..n)
            .map(|i| m.row(i).iter().zip(&v).map(|(&a, &b)| a as f64 * b).sum())
            .collect();
        let total: f64 = next.iter().sum();
        if !(total > 0.0) || !total.is_finite() {
            return Err(Error::NumericalFailure("power iteration collapsed".into()));
        }
        next.iter_mut().for_each(|x| *x /= total);
        let change = next
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).abs() / a.abs().max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max);
        v = next;
        if change < POWER_TOLERANCE {
            let mv: f64 = (0..n)
                .map(|i| m.row(i).iter().zip(&v).map(|(&a, &b)| a as f64 * b).sum::<f64>())
                .sum();
            return Ok((mv, v));
        }
    }
    Err(Error::NumericalFailure("power iteration did not converge".into()))
}
