//! Spectral invariants and isolation tooling: `γ` vectors, neighborhood scans of
//! naturally reductive metrics, the finiteness window, the homothety invariant, and the
//! reconstruction search for flat tori.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::lattice::{congruent, Lattice};
use crate::linalg;
use crate::natred::{natred_spectrum, NatRedMetric};
use crate::rational::{fmt_q, pow, qi, ser_q, ser_q_opt, ser_q_vec, Q};
use crate::spectrum::SpectrumTable;

/// Complete spectral invariants of a bi-invariant metric (one entry per simple factor)
/// or of a marked flat torus (`b_j`, then `c_jk` for `j < k`, in units of 4π²).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GammaVector {
    Semisimple {
        #[serde(serialize_with = "ser_q_vec")]
        lambda1: Vec<Q>,
    },
    Torus {
        #[serde(serialize_with = "ser_q_vec")]
        b: Vec<Q>,
        #[serde(serialize_with = "ser_q_vec")]
        c: Vec<Q>,
    },
}

impl GammaVector {
    pub fn entries(&self) -> Vec<Q> {
        match self {
            GammaVector::Semisimple { lambda1 } => lambda1.clone(),
            GammaVector::Torus { b, c } => b.iter().chain(c).cloned().collect(),
        }
    }
}

/// `b_j = Q*(δ_j)` and `c_jk = Q*(δ_j + δ_k)` for the dual form `Q*` in the given basis.
pub fn lattice_gamma(lat: &Lattice) -> GammaVector {
    let d = lat.dual();
    let q = d.gram();
    let m = lat.dim();
    let b: Vec<Q> = (0..m).map(|j| q[j][j].clone()).collect();
    let mut c = Vec::with_capacity(m * (m - 1) / 2);
    for j in 0..m {
        for k in j + 1..m {
            c.push(&q[j][j] + &q[k][k] + qi(2) * &q[j][k]);
        }
    }
    GammaVector::Torus { b, c }
}

/// Per-factor `λ₁` of a bi-invariant metric.
pub fn group_gamma(gs: &GroupSpec) -> GammaVector {
    GammaVector::Semisimple { lambda1: (0..gs.factors().len()).map(|i| gs.factor_lambda1(i)).collect() }
}

/// Inverse of [`lattice_gamma`]: the dual Gram matrix with `q_jj = b_j`,
/// `q_jk = (c_jk − b_j − b_k)/2`.
pub fn dual_gram_from_gamma(b: &[Q], c: &[Q]) -> Result<linalg::QMat> {
    let m = b.len();
    if c.len() != m * (m.saturating_sub(1)) / 2 {
        return Err(Error::RankMismatch { expected: m * (m.saturating_sub(1)) / 2, got: c.len() });
    }
    let mut q = linalg::zeros(m, m);
    let mut at = 0;
    for j in 0..m {
        q[j][j] = b[j].clone();
        for k in j + 1..m {
            let v = (&c[at] - &b[j] - &b[k]) / qi(2);
            q[j][k] = v.clone();
            q[k][j] = v;
            at += 1;
        }
    }
    Ok(q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalePoint {
    #[serde(serialize_with = "ser_q")]
    pub t: Q,
    #[serde(serialize_with = "ser_q_vec")]
    pub t_i: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedPoint {
    pub point: ScalePoint,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanGrid {
    #[serde(serialize_with = "ser_q")]
    pub radius: Q,
    pub steps: usize,
    #[serde(serialize_with = "ser_q_vec")]
    pub factors: Vec<Q>,
    pub evaluated: usize,
    pub skipped: Vec<SkippedPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub center: ScalePoint,
    pub grid: ScanGrid,
    #[serde(serialize_with = "ser_q")]
    pub cutoff: Q,
    pub isospectral_neighbors: Vec<ScalePoint>,
    pub min_table_distance: Option<usize>,
}

/// Multiplicative grid factors `1 − r + 2r k/(steps − 1)`, `k = 0..steps`.
pub fn grid_factors(radius: &Q, steps: usize) -> Vec<Q> {
    if steps == 1 {
        return vec![qi(1)];
    }
    let den = qi(steps as i64 - 1);
    (0..steps)
        .map(|k| qi(1) - radius + qi(2) * radius * qi(k as i64) / &den)
        .collect()
}

/// Compares the truncated spectrum at every grid point around `m` with that of `m`.
///
/// Grid points with `t_i' = t'` are skipped, as are points describing the same metric as the
/// center (when `K = G` only the fiber scales matter).
pub fn isolation_scan(m: &NatRedMetric, radius: &Q, steps: usize, cutoff: &Q) -> Result<ScanReport> {
    if steps == 0 {
        return Err(Error::Domain("steps must be at least 1".into()));
    }
    if radius.is_negative() || *radius >= qi(1) {
        return Err(Error::Domain(format!("radius {radius} must lie in [0, 1)")));
    }
    let factors = grid_factors(radius, steps);
    let r = m.t_i().len();
    let fills_group = m.embedding().dim_k() == m.embedding().ambient().dim_g();

    let mut points = Vec::new();
    let mut skipped = Vec::new();
    let mut idx = vec![0usize; r + 1];
    loop {
        let t = m.t() * &factors[idx[0]];
        let t_i: Vec<Q> = (0..r).map(|i| &m.t_i()[i] * &factors[idx[i + 1]]).collect();
        let center_t = factors[idx[0]] == qi(1);
        let center_k = idx[1..].iter().all(|&k| factors[k] == qi(1));
        let point = ScalePoint { t: t.clone(), t_i: t_i.clone() };
        if center_k && (center_t || fills_group) {
            if !center_t {
                skipped.push(SkippedPoint { point, reason: "same metric as the center".into() });
            }
        } else if let Some(i) = t_i.iter().position(|x| *x == t) {
            skipped.push(SkippedPoint { point, reason: format!("t_{} equals t", i + 1) });
        } else {
            points.push(point);
        }
        // Odometer over the (r + 1)-dimensional grid.
        let mut d = 0;
        loop {
            if d == idx.len() {
                break;
            }
            idx[d] += 1;
            if idx[d] < factors.len() {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
        if d == idx.len() {
            break;
        }
    }

    let center_table = natred_spectrum(m, cutoff)?;
    let tables = points
        .par_iter()
        .map(|p| natred_spectrum(&m.with_scales(p.t.clone(), p.t_i.clone())?, cutoff))
        .collect::<Vec<_>>();
    let mut neighbors = Vec::new();
    let mut min_distance: Option<usize> = None;
    for (p, table) in points.iter().zip(tables) {
        let table = table?;
        if table.same_entries(&center_table) {
            neighbors.push(p.clone());
        } else {
            let d = table.table_distance(&center_table);
            min_distance = Some(min_distance.map_or(d, |x| x.min(d)));
        }
    }
    Ok(ScanReport {
        center: ScalePoint { t: m.t().clone(), t_i: m.t_i().to_vec() },
        grid: ScanGrid { radius: radius.clone(), steps, factors, evaluated: points.len(), skipped },
        cutoff: cutoff.clone(),
        isospectral_neighbors: neighbors,
        min_table_distance: min_distance,
    })
}

/// `A = C / (λⁿ v²)`.
pub fn finiteness_window(lambda: &Q, v: &Q, n: u32, c: &Q) -> Result<Q> {
    for (name, x) in [("lambda", lambda), ("v", v), ("C", c)] {
        if !x.is_positive() {
            return Err(Error::Domain(format!("{name} = {x} must be positive")));
        }
    }
    Ok(c / (pow(lambda, n) * v * v))
}

/// Volume of the subject, either exactly or through its square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Volume {
    Exact(Q),
    Squared(Q),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomothetyInvariant {
    #[serde(serialize_with = "ser_q")]
    pub lambda1: Q,
    pub n: u32,
    /// `λ₁ⁿ vol²`.
    #[serde(serialize_with = "ser_q")]
    pub power_form: Q,
    /// `λ₁^{n/2} vol`, when `n` is even and the volume is known exactly.
    #[serde(serialize_with = "ser_q_opt")]
    pub direct: Option<Q>,
}

/// `λ₁^{n/2} vol`, reported through `λ₁ⁿ vol²`. `None` when the table has no nonzero eigenvalue.
pub fn homothety_invariant(spec: &SpectrumTable, n: u32, vol: &Volume) -> Result<Option<HomothetyInvariant>> {
    if n == 0 {
        return Err(Error::Domain("dimension must be positive".into()));
    }
    let (v2, exact) = match vol {
        Volume::Exact(v) => (v * v, Some(v)),
        Volume::Squared(v2) => (v2.clone(), None),
    };
    if !v2.is_positive() || exact.is_some_and(|v| !v.is_positive()) {
        return Err(Error::Domain("volume must be positive".into()));
    }
    let Some(l1) = spec.lambda1() else {
        return Ok(None);
    };
    let direct = match (n % 2, exact) {
        (0, Some(v)) => Some(pow(l1, n / 2) * v),
        _ => None,
    };
    Ok(Some(HomothetyInvariant { lambda1: l1.clone(), n, power_form: pow(l1, n) * v2, direct }))
}

/// Largest dimension for which [`torus_search`] runs.
pub const MAX_SEARCH_DIM: usize = 4;

/// Every flat torus of dimension `n` whose invariants `b_j, c_jk` all lie in `values`, with
/// `λ₁ >= lambda_min` and `vol >= vol_min`, one per congruence class (first found kept).
/// The returned lattices are the tori's own lattices, marked so that [`lattice_gamma`]
/// reproduces the chosen invariants.
pub fn torus_search(values: &[Q], n: usize, lambda_min: &Q, vol_min: &Q) -> Result<Vec<Lattice>> {
    if n > MAX_SEARCH_DIM {
        return Err(Error::UnsupportedDimension { dim: n, max: MAX_SEARCH_DIM });
    }
    if n == 0 {
        return Err(Error::Domain("dimension must be positive".into()));
    }
    if lambda_min.is_negative() || vol_min.is_negative() {
        return Err(Error::Domain("lower bounds must be nonnegative".into()));
    }
    let mut e: Vec<Q> = values.iter().filter(|x| x.is_positive()).cloned().collect();
    e.sort();
    e.dedup();
    if e.is_empty() {
        return Ok(Vec::new());
    }
    let slots = n + n * (n - 1) / 2;
    let total = e.len().checked_pow(slots as u32).ok_or_else(|| Error::Domain("search space too large".into()))?;
    // vol² = 1/det(Q*) >= vol_min²  ⇔  det(Q*) vol_min² <= 1
    let vol_min_sq = vol_min * vol_min;

    let candidates: Vec<Lattice> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut code = code;
            let pick: Vec<Q> = (0..slots)
                .map(|_| {
                    let v = e[code % e.len()].clone();
                    code /= e.len();
                    v
                })
                .collect();
            let q = dual_gram_from_gamma(&pick[..n], &pick[n..]).ok()?;
            if !linalg::is_positive_definite(&q) {
                return None;
            }
            let dual = Lattice::from_gram(q).ok()?;
            if &dual.systole() < lambda_min {
                return None;
            }
            if !vol_min_sq.is_zero() && dual.volume_squared() * &vol_min_sq > qi(1) {
                return None;
            }
            Some(dual.dual())
        })
        .collect();

    let mut kept: Vec<Lattice> = Vec::new();
    for c in candidates {
        let mut seen = false;
        for k in &kept {
            if congruent(k, &c)? {
                seen = true;
                break;
            }
        }
        if !seen {
            kept.push(c);
        }
    }
    Ok(kept)
}

/// Text form of a scale point, used in logs.
pub fn describe_point(p: &ScalePoint) -> String {
    format!("t={} t_i=[{}]", fmt_q(&p.t), p.t_i.iter().map(fmt_q).collect::<Vec<_>>().join(","))
}
