//! Fincke–Pohst enumeration of integer points in an ellipsoid.

use num_traits::{Signed, Zero};

use crate::linalg::{quadratic_completion, QMat};
use crate::rational::{floor_i64, qi, Q};

/// Calls `visit(x, value)` for every integer vector `x` with
/// `(x - center)ᵀ G (x - center) <= radius`, where `value` is the exact left-hand side.
///
/// `gram` must be positive definite. Points are visited in lexicographic order of
/// `(x_{n-1}, ..., x_0)`; callers that need a different order sort afterwards.
pub fn for_each_in_ellipsoid<F>(gram: &QMat, center: &[Q], radius: &Q, mut visit: F)
where
    F: FnMut(&[i64], &Q),
{
    let n = gram.len();
    assert_eq!(center.len(), n);
    if radius.is_negative() {
        return;
    }
    if n == 0 {
        visit(&[], &Q::zero());
        return;
    }
    let qc = quadratic_completion(gram);
    let mut x = vec![0i64; n];
    recurse(&qc, center, n - 1, radius, &Q::zero(), &mut x, &mut visit);
}

fn recurse<F>(qc: &QMat, center: &[Q], level: usize, budget: &Q, used: &Q, x: &mut [i64], visit: &mut F)
where
    F: FnMut(&[i64], &Q),
{
    let n = qc.len();
    // Shifted center for coordinate `level` given the already-fixed higher coordinates.
    let mut z = center[level].clone();
    for j in level + 1..n {
        z -= &qc[level][j] * (qi(x[j]) - &center[j]);
    }
    let d = &qc[level][level];
    let cost = |v: i64| -> Q {
        let t = qi(v) - &z;
        d * &t * &t
    };

    let mut candidates: Vec<(i64, Q)> = Vec::new();
    let start = floor_i64(&z);
    let mut v = start;
    loop {
        let c = cost(v);
        if &c > budget {
            break;
        }
        candidates.push((v, c));
        v -= 1;
    }
    candidates.reverse();
    let mut v = start + 1;
    loop {
        let c = cost(v);
        if &c > budget {
            break;
        }
        candidates.push((v, c));
        v += 1;
    }

    for (v, c) in candidates {
        x[level] = v;
        let total = used + &c;
        if level == 0 {
            visit(x, &total);
        } else {
            let rest = budget - &c;
            recurse(qc, center, level - 1, &rest, &total, x, visit);
        }
    }
    x[level] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{bilinear, from_i64};

    fn brute(gram: &QMat, radius: i64, r: i64) -> Vec<Vec<i64>> {
        let n = gram.len();
        let mut out = Vec::new();
        let total = (2 * r + 1).pow(n as u32);
        for mut idx in 0..total {
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push(idx % (2 * r + 1) - r);
                idx /= 2 * r + 1;
            }
            let qv: Vec<Q> = v.iter().map(|&a| qi(a)).collect();
            if bilinear(gram, &qv, &qv) <= qi(radius) {
                out.push(v);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn matches_box_search() {
        let g = from_i64(&[vec![3, 1, 0], vec![1, 2, -1], vec![0, -1, 4]]);
        let mut got = Vec::new();
        for_each_in_ellipsoid(&g, &vec![Q::zero(); 3], &qi(9), |x, v| {
            let qx: Vec<Q> = x.iter().map(|&a| qi(a)).collect();
            assert_eq!(*v, bilinear(&g, &qx, &qx));
            got.push(x.to_vec());
        });
        got.sort();
        assert_eq!(got, brute(&g, 9, 6));
    }

    #[test]
    fn off_center() {
        let g = from_i64(&[vec![1, 0], vec![0, 1]]);
        let c = vec![crate::rational::q(1, 2), crate::rational::q(1, 2)];
        let mut got = Vec::new();
        for_each_in_ellipsoid(&g, &c, &crate::rational::q(1, 2), |x, _| got.push(x.to_vec()));
        got.sort();
        assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
