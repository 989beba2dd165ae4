//! Integer 4×4 determinant and adjugate, the only dense linear algebra the
//! geometric side needs.

use num_bigint::BigInt;
use num_traits::Zero;

pub(crate) type Mat4 = [[BigInt; 4]; 4];

fn det3(m: &Mat4, rows: [usize; 3], cols: [usize; 3]) -> BigInt {
    let a = |r: usize, c: usize| &m[rows[r]][cols[c]];
    a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
        - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
        + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
}

fn others(skip: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut j = 0;
    for i in 0..4 {
        if i != skip {
            out[j] = i;
            j += 1;
        }
    }
    out
}

pub(crate) fn det4(m: &Mat4) -> BigInt {
    let rows = others(0);
    let mut acc = BigInt::zero();
    for c in 0..4 {
        if m[0][c].is_zero() {
            continue;
        }
        let minor = &m[0][c] * det3(m, rows, others(c));
        if c % 2 == 0 {
            acc += minor;
        } else {
            acc -= minor;
        }
    }
    acc
}

/// Classical adjugate: `adj(m) * m = det(m) * I`.
pub(crate) fn adjugate4(m: &Mat4) -> Mat4 {
    let mut out: Mat4 = Default::default();
    for i in 0..4 {
        for j in 0..4 {
            let cof = det3(m, others(j), others(i));
            out[i][j] = if (i + j) % 2 == 0 { cof } else { -cof };
        }
    }
    out
}

pub(crate) fn mat_vec(m: &Mat4, v: &[BigInt; 4]) -> [BigInt; 4] {
    std::array::from_fn(|i| (0..4).map(|j| &m[i][j] * &v[j]).sum())
}

/// Matrix whose columns are the given vectors.
pub(crate) fn from_columns(cols: [&[BigInt; 4]; 4]) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()))
}
