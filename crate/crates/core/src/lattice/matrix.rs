use std::fmt;
use std::ops::{Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntMatrix {
    #[serde(with = "crate::serde_big::matrix")]
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension { expected: cols, got: bad.len() });
        }
        Ok(IntMatrix { rows })
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        IntMatrix { rows: vec![vec![BigInt::zero(); n_cols]; n_rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn is_square(&self) -> bool {
        self.n_rows() == self.n_cols()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.rows[r][c]
    }

    pub(crate) fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.rows[r][c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        self.rows.iter().map(|r| r[c].clone()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.rows.iter().enumerate().all(|(i, row)| {
                row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
            })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.n_cols(), v.len(), "matrix-vector dimension mismatch");
        self.rows.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn pow(&self, mut e: u32) -> IntMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.n_rows());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n_rows().min(self.n_cols())).map(|i| &self.rows[i][i]).sum()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.n_rows();
        let mut a = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * prev
    }

    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let (n_rows, n_cols) = (self.n_rows(), self.n_cols());
        let mut a = self.rows.clone();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..n_cols {
            if rank == n_rows {
                break;
            }
            let Some(p) = (rank..n_rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(p, rank);
            for i in rank + 1..n_rows {
                for j in col + 1..n_cols {
                    let v = (&a[i][j] * &a[rank][col] - &a[i][col] * &a[rank][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        rank
    }

    /// Characteristic polynomial `det(xI − A)`, coefficients from the
    /// constant term up, via the Faddeev–LeVerrier recurrence (its divisions
    /// are exact over the integers).
    pub fn characteristic_polynomial(&self) -> Vec<BigInt> {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.n_rows();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut aux = IntMatrix::zeros(n, n);
        for step in 1..=n {
            aux = self * &aux;
            for i in 0..n {
                aux.rows[i][i] += &coeffs[n - step + 1];
            }
            let t = (self * &aux).trace();
            coeffs[n - step] = -t / BigInt::from(step);
        }
        coeffs
    }
}

/// Divides by `(x − root)`; returns the quotient and the remainder.
fn divide_linear(poly: &[BigInt], root: &BigInt) -> (Vec<BigInt>, BigInt) {
    let mut quotient = vec![BigInt::zero(); poly.len().saturating_sub(1)];
    let mut carry = BigInt::zero();
    for i in (0..poly.len()).rev() {
        carry = &poly[i] + &carry * root;
        if i > 0 {
            quotient[i - 1] = carry.clone();
        }
    }
    (quotient, carry)
}

fn trimmed(poly: &[BigInt]) -> Vec<BigInt> {
    let mut p = poly.to_vec();
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Multiplicity of `root` as a zero of the polynomial (coefficients from the
/// constant term up). The zero polynomial reports 0.
pub fn root_multiplicity(poly: &[BigInt], root: &BigInt) -> usize {
    let mut p = trimmed(poly);
    let mut mult = 0;
    while p.len() > 1 {
        let (q, r) = divide_linear(&p, root);
        if !r.is_zero() {
            break;
        }
        p = q;
        mult += 1;
    }
    mult
}

/// The polynomial with every factor `(x − root)` removed.
pub fn deflate_root(poly: &[BigInt], root: &BigInt) -> Vec<BigInt> {
    let mut p = trimmed(poly);
    for _ in 0..root_multiplicity(&p, root) {
        p = divide_linear(&p, root).0;
    }
    p
}

impl IntMatrix {
    /// `p(A)` by Horner's rule.
    pub fn eval_polynomial(&self, poly: &[BigInt]) -> IntMatrix {
        assert!(self.is_square());
        let n = self.n_rows();
        let mut acc = IntMatrix::zeros(n, n);
        for c in poly.iter().rev() {
            acc = &acc * self;
            for i in 0..n {
                acc.rows[i][i] += c;
            }
        }
        acc
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n_cols(), rhs.n_rows(), "matrix product dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|row| {
                (0..rhs.n_cols())
                    .map(|j| {
                        row.iter()
                            .zip(&rhs.rows)
                            .filter(|(a, _)| !a.is_zero())
                            .map(|(a, r)| a * &r[j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        IntMatrix { rows }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.n_rows(), self.n_cols()), (rhs.n_rows(), rhs.n_cols()));
        let rows = self
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        IntMatrix { rows }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}
