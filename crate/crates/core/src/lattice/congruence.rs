//! Deciding whether two lattices are congruent (related by an orthogonal map).

use std::collections::BTreeMap;

use super::{reduce_basis, Lattice, LatticeVector};
use crate::error::{Error, Result};
use crate::rational::Q;

pub const MAX_CONGRUENCE_DIM: usize = 8;

/// True iff some orthogonal map carries `a` onto `b`.
///
/// `a` is reduced first; an isometry exists iff `b` contains vectors `v_1..v_m`
/// whose Gram matrix equals that of the reduced basis of `a` (the determinant
/// check then forces them to generate all of `b`). Candidates come from the
/// short vectors of `b`, and the search backtracks on exact inner products.
pub fn congruent(a: &Lattice, b: &Lattice) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::Domain(format!("dimension mismatch: {} vs {}", a.dim(), b.dim())));
    }
    let m = a.dim();
    if m > MAX_CONGRUENCE_DIM {
        return Err(Error::UnsupportedDimension { dim: m, max: MAX_CONGRUENCE_DIM });
    }
    if a.volume_squared() != b.volume_squared() {
        return Ok(false);
    }
    let ra = reduce_basis(a);
    let target = ra.gram();
    let bound = (0..m).map(|i| target[i][i].clone()).max().expect("dim >= 1");

    // Fingerprint: counts of vectors per squared length up to the bound.
    if ra.norm_counts(&bound) != b.norm_counts(&bound) {
        return Ok(false);
    }

    let short = b.short_vectors(&bound)?;
    let mut by_norm: BTreeMap<&Q, Vec<&LatticeVector>> = BTreeMap::new();
    for v in &short {
        by_norm.entry(&v.norm).or_default().push(v);
    }
    let candidates: Vec<Vec<&LatticeVector>> = (0..m)
        .map(|i| by_norm.get(&target[i][i]).cloned().unwrap_or_default())
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return Ok(false);
    }
    let mut chosen: Vec<&LatticeVector> = Vec::with_capacity(m);
    Ok(backtrack(b, target, &candidates, &mut chosen))
}

fn backtrack<'a>(
    b: &Lattice,
    target: &[Vec<Q>],
    candidates: &[Vec<&'a LatticeVector>],
    chosen: &mut Vec<&'a LatticeVector>,
) -> bool {
    let i = chosen.len();
    if i == candidates.len() {
        return true;
    }
    for &v in &candidates[i] {
        // -1 is an isometry, so the first image can be fixed up to sign.
        if i == 0 && v.coords.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
            continue;
        }
        let fits = chosen
            .iter()
            .enumerate()
            .all(|(j, w)| inner(b, &v.coords, &w.coords) == target[i][j]);
        if fits {
            chosen.push(v);
            if backtrack(b, target, candidates, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn inner(l: &Lattice, x: &[i64], y: &[i64]) -> Q {
    let g = l.gram();
    let mut s = Q::from_integer(0.into());
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            if yj != 0 {
                s += &g[i][j] * Q::from_integer((xi * yj).into());
            }
        }
    }
    s
}
