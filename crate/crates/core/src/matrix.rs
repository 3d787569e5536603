//! Small exact linear algebra: dense rational matrices for the period lattices
//! (sizes up to the genus, so single digits) and an integer Smith normal form
//! used to enumerate lattice quotients when brute-force boxes get too large.

use num::bigint::BigInt;
use num::{Integer, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Dense column-major-agnostic rational matrix. Row index first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMat {
    pub rows: Vec<Vec<Rational>>,
}

impl RatMat {
    pub fn new(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == n), "ragged matrix");
        RatMat { rows }
    }

    pub fn zero(n: usize, m: usize) -> Self {
        RatMat {
            rows: vec![vec![Rational::zero(); m]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMat::zero(n, n);
        for i in 0..n {
            m.rows[i][i] = Rational::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ncols());
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Exact determinant by fraction-free-ish Gaussian elimination (the sizes
    /// here are tiny, so plain rational pivoting is fine).
    pub fn det(&self) -> Rational {
        let n = self.nrows();
        assert_eq!(n, self.ncols(), "determinant of a non-square matrix");
        let mut a = self.rows.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero());
            let Some(p) = pivot else {
                return Rational::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pv = a[col][col].clone();
            det = det * pv.clone();
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &pv;
                for c in col..n {
                    let sub = &factor * &a[col][c];
                    a[r][c] = &a[r][c] - &sub;
                }
            }
        }
        det
    }

    /// Solve `self * x = b` exactly. Errors if the matrix is singular.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.nrows();
        assert_eq!(n, self.ncols(), "solve needs a square matrix");
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.len(),
            });
        }
        let mut a = self.rows.clone();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero());
            let Some(p) = pivot else {
                return Err(Error::SingularMatrix {
                    detail: format!("no pivot in column {col}"),
                });
            };
            a.swap(p, col);
            rhs.swap(p, col);
            let pv = a[col][col].clone();
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &pv;
                for c in col..n {
                    let sub = &factor * &a[col][c];
                    a[r][c] = &a[r][c] - &sub;
                }
                let sub = &factor * &rhs[col];
                rhs[r] = &rhs[r] - &sub;
            }
        }
        Ok((0..n).map(|i| &rhs[i] / &a[i][i]).collect())
    }

    /// All entries integral?
    pub fn is_integer(&self) -> bool {
        self.rows.iter().flatten().all(Rational::is_integer)
    }

    /// Convert to a BigInt matrix; errors if any entry is non-integral.
    pub fn to_bigint(&self) -> Result<Vec<Vec<BigInt>>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        x.as_integer().ok_or_else(|| Error::Invalid(format!(
                            "matrix entry {x} is not an integer"
                        )))
                    })
                    .collect()
            })
            .collect()
    }
}

/// Smith normal form of a square integer matrix `m`:
/// returns `(u, d, v)` with `u * m * v = d`, `u`, `v` unimodular and `d`
/// diagonal with `d[0] | d[1] | ...` (entries nonnegative).
pub fn smith_normal_form(
    m: &[Vec<BigInt>],
) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "SNF needs a square matrix");
    let mut d: Vec<Vec<BigInt>> = m.to_vec();
    let mut u = ident_big(n);
    let mut v = ident_big(n);

    for t in 0..n {
        loop {
            // Find the smallest nonzero entry in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if d[i][j].is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if d[i][j].abs() < d[bi][bj].abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break; // trailing block is zero
            };
            swap_rows(&mut d, &mut u, t, pi);
            swap_cols(&mut d, &mut v, t, pj);

            let mut dirty = false;
            let pivot = d[t][t].clone();
            for i in t + 1..n {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = div_round(&d[i][t], &pivot);
                if !q.is_zero() {
                    row_axpy(&mut d, &mut u, i, t, &q);
                }
                if !d[i][t].is_zero() {
                    dirty = true;
                }
            }
            let pivot = d[t][t].clone();
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = div_round(&d[t][j], &pivot);
                if !q.is_zero() {
                    col_axpy(&mut d, &mut v, j, t, &q);
                }
                if !d[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let pivot = d[t][t].clone();
            let offender = (t + 1..n)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&d[i][j] % &pivot).is_zero());
            match offender {
                Some((i, _)) => {
                    // Fold the offending row into row t and reduce again.
                    add_row(&mut d, &mut u, t, i);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            negate_row(&mut d, &mut u, t);
        }
    }
    (u, d, v)
}

fn ident_big(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn swap_rows(d: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        d.swap(a, b);
        u.swap(a, b);
    }
}

fn swap_cols(d: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in d.iter_mut() {
        row.swap(a, b);
    }
    for row in v.iter_mut() {
        row.swap(a, b);
    }
}

/// row_i -= q * row_t (tracked in u).
fn row_axpy(d: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt) {
    let n = d[0].len();
    for c in 0..n {
        let s = q * &d[t][c];
        d[i][c] -= s;
        let s = q * &u[t][c];
        u[i][c] -= s;
    }
}

/// col_j -= q * col_t (tracked in v).
fn col_axpy(d: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], j: usize, t: usize, q: &BigInt) {
    for row in d.iter_mut() {
        let s = q * &row[t];
        row[j] -= s;
    }
    for row in v.iter_mut() {
        let s = q * &row[t];
        row[j] -= s;
    }
}

fn add_row(d: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], t: usize, i: usize) {
    let n = d[0].len();
    for c in 0..n {
        let s = d[i][c].clone();
        d[t][c] += s;
        let s = u[i][c].clone();
        u[t][c] += s;
    }
}

fn negate_row(d: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], t: usize) {
    for x in d[t].iter_mut() {
        *x = -x.clone();
    }
    for x in u[t].iter_mut() {
        *x = -x.clone();
    }
}

/// Round-to-nearest integer division (ties toward zero), used to shrink
/// remainders fast in the SNF reduction.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

pub fn big_det(m: &[Vec<BigInt>]) -> BigInt {
    let rm = RatMat::new(
        m.iter()
            .map(|r| r.iter().map(|x| Rational::from(x.clone())).collect())
            .collect(),
    );
    rm.det().as_integer().expect("integer determinant")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rm(rows: &[&[i64]]) -> RatMat {
        RatMat::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn det_and_solve() {
        let m = rm(&[&[12, -3], &[-3, 6]]);
        assert_eq!(m.det(), Rational::from_int(63));
        let x = m.solve(&[Rational::from_int(9), Rational::from_int(3)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![Rational::from_int(9), Rational::from_int(3)]);
    }

    #[test]
    fn singular_solve_errors() {
        let m = rm(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.det(), Rational::zero());
        assert!(m.solve(&[Rational::one(), Rational::one()]).is_err());
    }

    fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let n = a.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn snf_reconstructs() {
        let cases: Vec<Vec<Vec<BigInt>>> = vec![
            vec![
                vec![BigInt::from(12), BigInt::from(-3)],
                vec![BigInt::from(-3), BigInt::from(6)],
            ],
            vec![
                vec![BigInt::from(2), BigInt::from(4), BigInt::from(4)],
                vec![BigInt::from(-6), BigInt::from(6), BigInt::from(12)],
                vec![BigInt::from(10), BigInt::from(4), BigInt::from(16)],
            ],
        ];
        for m in cases {
            let (u, d, v) = smith_normal_form(&m);
            let umv = mat_mul(&mat_mul(&u, &m), &v);
            assert_eq!(umv, d, "u*m*v == d");
            let n = m.len();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        assert!(d[i][j].is_zero(), "diagonal");
                    }
                }
                assert!(!d[i][i].is_negative());
                if i + 1 < n && !d[i + 1][i + 1].is_zero() {
                    assert!(
                        (&d[i + 1][i + 1] % &d[i][i]).is_zero(),
                        "divisibility chain"
                    );
                }
            }
            assert_eq!(big_det(&u).abs(), BigInt::from(1), "u unimodular");
            assert_eq!(big_det(&v).abs(), BigInt::from(1), "v unimodular");
        }
    }
}
