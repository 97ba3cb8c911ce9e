//! Small dense exact linear algebra over `Q`.
//!
//! Matrices are row-major `Vec<Vec<Q>>`. Dimensions in this crate stay in the
//! single digits, so nothing here is blocked or cache-aware.

use num_traits::{One, Signed, Zero};

use crate::rational::Q;

pub type QMat = Vec<Vec<Q>>;

pub fn zeros(rows: usize, cols: usize) -> QMat {
    vec![vec![Q::zero(); cols]; rows]
}

pub fn identity(n: usize) -> QMat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn diagonal(d: &[Q]) -> QMat {
    let mut m = zeros(d.len(), d.len());
    for (i, x) in d.iter().enumerate() {
        m[i][i] = x.clone();
    }
    m
}

pub fn from_i64(rows: &[Vec<i64>]) -> QMat {
    rows.iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect())
        .collect()
}

pub fn is_square(m: &QMat) -> bool {
    m.iter().all(|r| r.len() == m.len())
}

pub fn transpose(m: &QMat) -> QMat {
    if m.is_empty() {
        return Vec::new();
    }
    let (r, c) = (m.len(), m[0].len());
    (0..c).map(|j| (0..r).map(|i| m[i][j].clone()).collect()).collect()
}

pub fn mul(a: &QMat, b: &QMat) -> QMat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "matrix shape mismatch");
            (0..cols)
                .map(|j| {
                    let mut s = Q::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &QMat, v: &[Q]) -> Vec<Q> {
    a.iter().map(|row| dot(row, v)).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// `uᵀ G v`.
pub fn bilinear(g: &QMat, u: &[Q], v: &[Q]) -> Q {
    dot(u, &mat_vec(g, v))
}

pub fn scale(m: &QMat, s: &Q) -> QMat {
    m.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

pub fn is_symmetric(m: &QMat) -> bool {
    is_square(m) && (0..m.len()).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn det(m: &QMat) -> Q {
    assert!(is_square(m), "determinant of a non-square matrix");
    let n = m.len();
    let mut a = m.clone();
    let mut d = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        let p = a[col][col].clone();
        d *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    d
}

/// Inverse by Gauss–Jordan; `None` when singular.
pub fn inverse(m: &QMat) -> Option<QMat> {
    assert!(is_square(m), "inverse of a non-square matrix");
    let n = m.len();
    let mut a = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        inv.swap(piv, col);
        let p = a[col][col].clone();
        for c in 0..n {
            a[col][c] /= &p;
            inv[col][c] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let s1 = &f * &a[col][c];
                a[r][c] -= s1;
                let s2 = &f * &inv[col][c];
                inv[r][c] -= s2;
            }
        }
    }
    Some(inv)
}

/// Leading principal minors, all of which must be positive for a positive-definite matrix.
pub fn leading_minors(m: &QMat) -> Vec<Q> {
    (1..=m.len())
        .map(|k| det(&m[..k].iter().map(|r| r[..k].to_vec()).collect()))
        .collect()
}

pub fn is_positive_definite(m: &QMat) -> bool {
    is_symmetric(m) && leading_minors(m).iter().all(Q::is_positive)
}

/// Quadratic completion of a positive-definite Gram matrix.
///
/// Returns `q` with `q[i][i] > 0` and, for `j > i`, `q[i][j]` such that
/// `xᵀ G x = Σ_i q[i][i] (x_i + Σ_{j>i} q[i][j] x_j)²`. Entries below the
/// diagonal are unspecified.
pub fn quadratic_completion(g: &QMat) -> QMat {
    let n = g.len();
    let mut q = g.clone();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            let v = &q[i][j] / &q[i][i];
            q[i][j] = v;
        }
        for k in i + 1..n {
            for l in k..n {
                let s = &q[k][i] * &q[i][l];
                q[k][l] -= s;
            }
        }
    }
    q
}
