//! Basis reduction: greedy (Minkowski) for m ≤ 4, LLL above.

use num_traits::{One, Zero};

use super::{for_each_in_ellipsoid, Lattice};
use crate::linalg::{self, QMat};
use crate::rational::{q, qi, Q};

/// LLL parameter δ used for dimensions above 4.
pub fn lll_delta() -> Q {
    q(99, 100)
}

/// Returns a reduced basis of the same lattice.
///
/// For `m <= 4` the greedy algorithm yields a Minkowski-reduced basis, so the first
/// vector realizes the systole. Above that, the basis is LLL-reduced with δ = 99/100.
pub fn reduce_basis(l: &Lattice) -> Lattice {
    reduce_with_transform(l).0
}

/// As [`reduce_basis`], also returning the unimodular change of basis `U`
/// (new Gram = `Uᵀ · Gram · U`).
pub fn reduce_with_transform(l: &Lattice) -> (Lattice, QMat) {
    let m = l.dim();
    let mut vs: Vec<Vec<Q>> = linalg::identity(m);
    if m <= 4 {
        greedy(l.gram(), &mut vs, m);
    } else {
        lll(l.gram(), &mut vs, &lll_delta());
    }
    let u = linalg::transpose(&vs);
    (l.transformed(&u), u)
}

fn ip(g: &QMat, a: &[Q], b: &[Q]) -> Q {
    linalg::bilinear(g, a, b)
}

/// Greedy reduction of the first `k` vectors (Nguyen–Stehlé).
fn greedy(g: &QMat, vs: &mut Vec<Vec<Q>>, k: usize) {
    if k <= 1 {
        return;
    }
    loop {
        greedy(g, vs, k - 1);
        let c = closest_in_span(g, &vs[..k - 1], &vs[k - 1]);
        for (t, ci) in vs[k - 1].iter_mut().zip(&c) {
            *t -= ci;
        }
        let nk = ip(g, &vs[k - 1], &vs[k - 1]);
        if nk >= ip(g, &vs[k - 2], &vs[k - 2]) {
            return;
        }
        let pos = (0..k - 1)
            .find(|&j| ip(g, &vs[j], &vs[j]) > nk)
            .expect("shorter than its predecessor");
        let v = vs.remove(k - 1);
        vs.insert(pos, v);
    }
}

/// Closest vector to `target` in the lattice spanned by `sub`, returned in ambient coordinates.
fn closest_in_span(g: &QMat, sub: &[Vec<Q>], target: &[Q]) -> Vec<Q> {
    let k = sub.len();
    let h: QMat = (0..k).map(|i| (0..k).map(|j| ip(g, &sub[i], &sub[j])).collect()).collect();
    let rhs: Vec<Q> = sub.iter().map(|s| ip(g, s, target)).collect();
    let hinv = linalg::inverse(&h).expect("independent vectors");
    let center = linalg::mat_vec(&hinv, &rhs);
    let rounded: Vec<Q> = center.iter().map(|c| c.round()).collect();
    let diff: Vec<Q> = rounded.iter().zip(&center).map(|(a, b)| a - b).collect();
    let radius = linalg::bilinear(&h, &diff, &diff);

    let mut best: Option<(Q, Vec<i64>)> = None;
    for_each_in_ellipsoid(&h, &center, &radius, |x, v| {
        let better = match &best {
            None => true,
            Some((bv, bx)) => v < bv || (v == bv && x < bx.as_slice()),
        };
        if better {
            best = Some((v.clone(), x.to_vec()));
        }
    });
    let (_, x) = best.expect("rounded center lies inside the search ellipsoid");
    let mut out = vec![Q::zero(); target.len()];
    for (xi, s) in x.iter().zip(sub) {
        for (o, sj) in out.iter_mut().zip(s) {
            *o += qi(*xi) * sj;
        }
    }
    out
}

/// Gram–Schmidt data `(μ, B)` of the current basis, from inner products only.
fn gram_schmidt(g: &QMat, vs: &[Vec<Q>]) -> (QMat, Vec<Q>) {
    let n = vs.len();
    let mut mu = linalg::zeros(n, n);
    let mut b = vec![Q::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = ip(g, &vs[i], &vs[j]);
            for k in 0..j {
                s -= &mu[j][k] * &mu[i][k] * &b[k];
            }
            mu[i][j] = s / &b[j];
        }
        let mut s = ip(g, &vs[i], &vs[i]);
        for k in 0..i {
            s -= &mu[i][k] * &mu[i][k] * &b[k];
        }
        b[i] = s;
        mu[i][i] = Q::one();
    }
    (mu, b)
}

fn lll(g: &QMat, vs: &mut [Vec<Q>], delta: &Q) {
    let n = vs.len();
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(g, vs);
            let r = mu[k][j].round();
            if !r.is_zero() {
                let sub: Vec<Q> = vs[j].iter().map(|x| x * &r).collect();
                for (t, s) in vs[k].iter_mut().zip(sub) {
                    *t -= s;
                }
            }
        }
        let (mu, b) = gram_schmidt(g, vs);
        let lhs = &b[k];
        let rhs = (delta - &mu[k][k - 1] * &mu[k][k - 1]) * &b[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            vs.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
}

/// Checks the LLL conditions (size reduction and Lovász) on a Gram matrix.
#[cfg(test)]
pub(crate) fn is_lll_reduced(gram: &QMat, delta: &Q) -> bool {
    use num_traits::Signed;
    let vs = linalg::identity(gram.len());
    let (mu, b) = gram_schmidt(gram, &vs);
    let n = gram.len();
    for i in 0..n {
        for j in 0..i {
            if mu[i][j].abs() > q(1, 2) {
                return false;
            }
        }
    }
    (1..n).all(|k| b[k] >= (delta - &mu[k][k - 1] * &mu[k][k - 1]) * &b[k - 1])
}
