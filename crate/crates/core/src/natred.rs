//! Spectra of naturally reductive metrics `t(−B)|𝔭 ⊕ Σ t_i(−B)|𝔨_i` on a compact simple `G`,
//! the fiber factors `β_i`, the `F`-map on bi-invariant operators, and the containment check.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::branching::{EmbeddingSpec, KTuple};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_vec, qi, ser_q, ser_q_opt, ser_q_vec, RatLit, Q};
use crate::roots::Weight;
use crate::spectrum::{SpectrumBuilder, SpectrumTable, Unit};
use crate::weights;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Every `t_i < t`.
    RiemannianFibers,
    /// Some `t_i > t`.
    SemiRiemannian,
}

#[derive(Clone, Debug)]
pub struct NatRedMetric {
    emb: Arc<EmbeddingSpec>,
    t: Q,
    t_i: Vec<Q>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NatRedWire {
    pub group: String,
    pub embedding: String,
    pub t: RatLit,
    pub t_i: Vec<RatLit>,
}

impl NatRedMetric {
    pub fn new(emb: Arc<EmbeddingSpec>, t: Q, t_i: Vec<Q>) -> Result<Self> {
        if t_i.len() != emb.factors().len() {
            return Err(Error::RankMismatch { expected: emb.factors().len(), got: t_i.len() });
        }
        if let Some(x) = std::iter::once(&t).chain(&t_i).find(|x| !x.is_positive()) {
            return Err(Error::Domain(format!("scale {x} is not positive")));
        }
        if let Some(i) = t_i.iter().position(|x| *x == t) {
            return Err(Error::Inadmissible(format!("fiber scale t_{} equals t = {t}", i + 1)));
        }
        Ok(NatRedMetric { emb, t, t_i })
    }

    /// Builds a metric from its file form; `resolve` maps the embedding field to a spec.
    pub fn from_wire(w: &NatRedWire, resolve: impl FnOnce(&str) -> Result<Arc<EmbeddingSpec>>) -> Result<Self> {
        let emb = resolve(&w.embedding)?;
        let g: crate::roots::RootSystem = w.group.parse()?;
        if g != **emb.ambient() {
            return Err(Error::MalformedEmbedding(format!(
                "embedding {} lives in {}, metric is on {}",
                emb.name(),
                emb.ambient(),
                g
            )));
        }
        NatRedMetric::new(emb, w.t.parse()?, parse_vec(&w.t_i)?)
    }

    pub fn to_wire(&self) -> NatRedWire {
        NatRedWire {
            group: self.emb.ambient().label(),
            embedding: self.emb.name().to_string(),
            t: RatLit::from(&self.t),
            t_i: self.t_i.iter().map(RatLit::from).collect(),
        }
    }

    pub fn embedding(&self) -> &Arc<EmbeddingSpec> {
        &self.emb
    }
    pub fn t(&self) -> &Q {
        &self.t
    }
    pub fn t_i(&self) -> &[Q] {
        &self.t_i
    }

    /// Same embedding, new scales.
    pub fn with_scales(&self, t: Q, t_i: Vec<Q>) -> Result<Self> {
        NatRedMetric::new(self.emb.clone(), t, t_i)
    }

    pub fn mode(&self) -> Mode {
        if self.t_i.iter().all(|x| *x < self.t) {
            Mode::RiemannianFibers
        } else {
            Mode::SemiRiemannian
        }
    }

    /// `β_i = t_i t / (t − t_i)`.
    pub fn beta_factors(&self) -> Vec<Q> {
        self.t_i.iter().map(|ti| ti * &self.t / (&self.t - ti)).collect()
    }

    /// Operator of the fiber metric relative to `−B_G`: `a_i = t_i`.
    pub fn fiber_operator(&self) -> BiInvariantOperator {
        BiInvariantOperator { a: self.t_i.clone() }
    }

    /// `(1/t)(c(λ) + Σ_i (t/t_i − 1) c_i(τ_i)/j_i)`.
    pub fn eigenvalue(&self, lambda: &Weight, tau: &[Weight]) -> Q {
        let g = self.emb.ambient();
        let mut s = g.casimir_unchecked(lambda);
        for (((f, w), j), ti) in self.emb.factors().iter().zip(tau).zip(self.emb.killing_ratios()).zip(&self.t_i) {
            s += (&self.t / ti - qi(1)) * f.casimir_unchecked(w) / j;
        }
        s / &self.t
    }

    /// Largest `c(λ)` that can contribute an eigenvalue `<= cutoff`.
    ///
    /// On each isotypic block `Σ c_i(τ_i)/j_i <= c(λ)` (the complement of `𝔨` contributes a
    /// nonnegative operator), so the eigenvalue is at least `c(λ)(1 + min(0, min_i w_i))/t`
    /// with `w_i = t/t_i − 1 > −1`.
    pub fn casimir_budget(&self, cutoff: &Q) -> Q {
        let w_min = self
            .t_i
            .iter()
            .map(|ti| &self.t / ti - qi(1))
            .fold(Q::zero(), |m, w| if w < m { w } else { m });
        &self.t * cutoff / (qi(1) + w_min)
    }
}

/// One isotypic block `V_λ ⊗ V_τ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NatRedTerm {
    pub lambda: Weight,
    /// `τ` with `[V_λ|_K : τ̄] = branch_mult`.
    pub tau: KTuple,
    pub branch_mult: u64,
    #[serde(serialize_with = "ser_q")]
    pub eigenvalue: Q,
    pub multiplicity: u128,
}

/// All blocks with eigenvalue `<= cutoff`, ordered by `(λ, τ)`.
pub fn natred_terms(m: &NatRedMetric, cutoff: &Q) -> Result<Vec<NatRedTerm>> {
    if cutoff.is_negative() {
        return Err(Error::Domain(format!("negative cutoff {cutoff}")));
    }
    let g = m.emb.ambient();
    let lambdas = weights::dominant_weights_up_to(g, &m.casimir_budget(cutoff))?;
    let per_lambda = lambdas
        .par_iter()
        .map(|lambda| -> Result<Vec<NatRedTerm>> {
            let dim = weights::weyl_dim_unchecked(g, lambda);
            let lambda_c = g.casimir_unchecked(lambda);
            let branch = m.emb.branch(lambda)?;
            let mut out = Vec::new();
            for (t, &bm) in &branch.terms {
                let tau: KTuple = m.emb.factors().iter().zip(t).map(|(f, w)| f.apply_minus_w0(w)).collect();
                debug_assert!(m.emb.factors().iter().zip(t).zip(&tau).all(|((f, a), b)| f.casimir_unchecked(a) == f.casimir_unchecked(b)));
                let k: Q = m
                    .emb
                    .factors()
                    .iter()
                    .zip(&tau)
                    .zip(m.emb.killing_ratios())
                    .fold(Q::zero(), |acc, ((f, w), j)| acc + f.casimir_unchecked(w) / j);
                if k > lambda_c {
                    return Err(Error::MalformedEmbedding(format!(
                        "{}: K-Casimir {k} exceeds c({lambda}) = {lambda_c}",
                        m.emb.name()
                    )));
                }
                let e = m.eigenvalue(lambda, &tau);
                if e <= *cutoff {
                    let tau_dim = m.emb.data().tuple_dim(&tau);
                    out.push(NatRedTerm {
                        lambda: lambda.clone(),
                        tau,
                        branch_mult: bm,
                        eigenvalue: e,
                        multiplicity: dim * bm as u128 * tau_dim,
                    });
                }
            }
            Ok(out)
        })
        .collect::<Vec<_>>();
    let mut terms = Vec::new();
    for r in per_lambda {
        terms.extend(r?);
    }
    Ok(terms)
}

/// Truncated spectrum of a naturally reductive metric. Always complete (see
/// [`NatRedMetric::casimir_budget`]).
pub fn natred_spectrum(m: &NatRedMetric, cutoff: &Q) -> Result<SpectrumTable> {
    let mut b = SpectrumBuilder::new();
    for t in natred_terms(m, cutoff)? {
        b.add(t.eigenvalue, t.multiplicity);
    }
    Ok(b.finish(Unit::Raw, cutoff.clone(), true))
}

/// Bi-invariant operator `A_h` on `𝔨`, one positive scalar per simple factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiInvariantOperator {
    #[serde(serialize_with = "ser_q_vec")]
    pub a: Vec<Q>,
}

impl BiInvariantOperator {
    pub fn new(a: Vec<Q>) -> Result<Self> {
        if let Some(x) = a.iter().find(|x| !x.is_positive()) {
            return Err(Error::Domain(format!("operator eigenvalue {x} is not positive")));
        }
        Ok(BiInvariantOperator { a })
    }

    /// `ã_i = a_i b / (b − a_i)`; requires `b > max a_i`.
    pub fn f_map(&self, b: &Q) -> Result<Self> {
        if let Some(x) = self.a.iter().find(|x| *x >= b) {
            return Err(Error::Inadmissible(format!("b = {b} does not exceed operator eigenvalue {x}")));
        }
        Ok(BiInvariantOperator { a: self.a.iter().map(|x| x * b / (b - x)).collect() })
    }

    /// `a_i = ã_i b / (b + ã_i)`.
    pub fn f_inverse(&self, b: &Q) -> Result<Self> {
        if !b.is_positive() {
            return Err(Error::Inadmissible(format!("b = {b} is not positive")));
        }
        Ok(BiInvariantOperator { a: self.a.iter().map(|x| x * b / (b + x)).collect() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContainmentStatus {
    Witnessed,
    Inconclusive,
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentWitness {
    pub lambda: Weight,
    pub tau: KTuple,
    #[serde(serialize_with = "ser_q")]
    pub zeta: Q,
    #[serde(serialize_with = "ser_q")]
    pub value: Q,
    pub multiplicity_in_spectrum: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    pub status: ContainmentStatus,
    pub factor: usize,
    #[serde(serialize_with = "ser_q")]
    pub b: Q,
    #[serde(serialize_with = "ser_q")]
    pub cutoff: Q,
    #[serde(serialize_with = "ser_q_vec")]
    pub a_tilde: Vec<Q>,
    /// `λ₁` of factor `p` under `h̃`.
    #[serde(serialize_with = "ser_q_opt")]
    pub gamma: Option<Q>,
    pub witness: Option<ContainmentWitness>,
}

/// For factor `p` and `b > max t_i`: finds `λ` whose restriction contains `τ̄` with `τ`
/// supported on factor `p` and realizing `γ_p(h̃)`, then checks that
/// `ζ_p + γ_p(h̃)` is an eigenvalue of `m`, where
/// `ζ_p = c(λ)/t + (1/b − 1/t) c_p(τ_p)/j_p` is the eigenvalue of the same block under
/// the metric with fiber scale `b`.
pub fn containment_check(m: &NatRedMetric, p: usize, b: &Q, cutoff: &Q) -> Result<ContainmentReport> {
    let r = m.emb.factors().len();
    let mut report = ContainmentReport {
        status: ContainmentStatus::Vacuous,
        factor: p,
        b: b.clone(),
        cutoff: cutoff.clone(),
        a_tilde: Vec::new(),
        gamma: None,
        witness: None,
    };
    if r == 0 {
        return Ok(report);
    }
    if p >= r {
        return Err(Error::Domain(format!("factor index {p} out of range (r = {r})")));
    }
    if cutoff.is_negative() {
        return Err(Error::Domain(format!("negative cutoff {cutoff}")));
    }
    let tilde = m.fiber_operator().f_map(b)?;
    let f = &m.emb.factors()[p];
    let j = &m.emb.killing_ratios()[p];
    let scale = &tilde.a[p] * j;
    // The bi-invariant metric ã_p(−B_G)|𝔨_p is ã_p j_p (−B_{K_p}).
    let candidates = weights::dominant_weights_up_to(f, &qi(1))?;
    let c_min = candidates
        .iter()
        .filter(|w| !w.is_zero())
        .map(|w| f.casimir_unchecked(w))
        .min()
        .expect("adjoint has Casimir 1");
    let gamma = &c_min / &scale;
    let minimizers: Vec<&Weight> = candidates.iter().filter(|w| !w.is_zero() && f.casimir_unchecked(w) == c_min).collect();
    report.a_tilde = tilde.a.clone();
    report.gamma = Some(gamma.clone());
    report.status = ContainmentStatus::Inconclusive;

    let g = m.emb.ambient();
    let mut best: Option<ContainmentWitness> = None;
    for lambda in weights::dominant_weights_up_to(g, &m.casimir_budget(cutoff))? {
        let branch = m.emb.branch(&lambda)?;
        for &tp in &minimizers {
            let tau: KTuple = m
                .emb
                .factors()
                .iter()
                .enumerate()
                .map(|(i, fi)| if i == p { tp.clone() } else { Weight::zero(fi.rank()) })
                .collect();
            let tau_bar: KTuple = m.emb.factors().iter().zip(&tau).map(|(fi, w)| fi.apply_minus_w0(w)).collect();
            if branch.multiplicity(&tau_bar) == 0 {
                continue;
            }
            let zeta = g.casimir_unchecked(&lambda) / &m.t + (qi(1) / b - qi(1) / &m.t) * &c_min / j;
            let value = &zeta + &gamma;
            if value > *cutoff || best.as_ref().is_some_and(|w| w.value <= value) {
                continue;
            }
            best = Some(ContainmentWitness { lambda: lambda.clone(), tau, zeta, value, multiplicity_in_spectrum: 0 });
        }
    }
    if let Some(mut w) = best {
        let spec = natred_spectrum(m, cutoff)?;
        w.multiplicity_in_spectrum = spec.multiplicity(&w.value);
        if w.multiplicity_in_spectrum == 0 {
            return Err(Error::Domain(format!(
                "containment value {} for {} is missing from the spectrum",
                fmt_q(&w.value),
                w.lambda
            )));
        }
        report.status = ContainmentStatus::Witnessed;
        report.witness = Some(w);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::library;
    use crate::rational::{q, to_f64};
    use nalgebra::{Complex, DMatrix};
    use proptest::prelude::*;

    fn metric(name: &str, t: Q, ti: Vec<Q>) -> NatRedMetric {
        NatRedMetric::new(Arc::new(library::embedding(name).unwrap()), t, ti).unwrap()
    }

    #[test]
    fn beta_and_modes() {
        let m = metric("a1-in-a2-standard", qi(1), vec![q(1, 2)]);
        assert_eq!(m.beta_factors(), vec![qi(1)]);
        assert_eq!(m.mode(), Mode::RiemannianFibers);
        let s = metric("a1-in-a2-standard", qi(1), vec![qi(2)]);
        assert_eq!(s.beta_factors(), vec![qi(-2)]);
        assert_eq!(s.mode(), Mode::SemiRiemannian);
        let e = Arc::new(library::embedding("a1-in-a2-standard").unwrap());
        assert!(matches!(NatRedMetric::new(e.clone(), q(5, 2), vec![q(5, 2)]), Err(Error::Inadmissible(_))));
        assert!(NatRedMetric::new(e.clone(), qi(1), vec![]).is_err());
        assert!(NatRedMetric::new(e, qi(0), vec![qi(1)]).is_err());
    }

    #[test]
    fn f_map_examples() {
        let a = BiInvariantOperator::new(vec![qi(1)]).unwrap();
        assert_eq!(a.f_map(&qi(2)).unwrap().a, vec![qi(2)]);
        let half = BiInvariantOperator::new(vec![q(3, 2)]).unwrap();
        assert_eq!(half.f_map(&qi(3)).unwrap().a, vec![qi(3)]);
        assert!(matches!(a.f_map(&qi(1)), Err(Error::Inadmissible(_))));
        assert!(BiInvariantOperator::new(vec![qi(0)]).is_err());
    }

    proptest! {
        #[test]
        fn f_map_round_trip(nums in proptest::collection::vec(1i64..50, 1..4), den in 1i64..20, extra in 1i64..30) {
            let a: Vec<Q> = nums.iter().map(|&n| q(n, den)).collect();
            let b = a.iter().max().unwrap() + q(extra, 7);
            let op = BiInvariantOperator::new(a.clone()).unwrap();
            let fwd = op.f_map(&b).unwrap();
            prop_assert!(fwd.a.iter().all(|x| x.is_positive()));
            prop_assert_eq!(fwd.f_inverse(&b).unwrap().a, a);
        }
    }

    #[test]
    fn standard_example() {
        let m = metric("a1-in-a2-standard", qi(1), vec![q(1, 2)]);
        let terms = natred_terms(&m, &qi(1)).unwrap();
        let w1 = terms
            .iter()
            .find(|t| t.lambda == Weight(vec![1, 0]) && t.tau == vec![Weight(vec![1])])
            .unwrap();
        // j = 3/2 for this embedding: 4/9 + (2 − 1)(3/8)/(3/2).
        assert_eq!(w1.eigenvalue, q(25, 36));
        assert_eq!(w1.multiplicity, 6);
        let s = natred_spectrum(&m, &qi(1)).unwrap();
        assert_eq!(s.multiplicity(&q(25, 36)), 12);
        assert_eq!(s.multiplicity(&q(4, 9)), 6);
        assert_eq!(s.entries[0], (qi(0), 1));
        assert!(s.complete);
    }

    fn gell_mann() -> Vec<DMatrix<Complex<f64>>> {
        let c = |re: f64, im: f64| Complex::new(re, im);
        let z = c(0.0, 0.0);
        let mk = |e: [[Complex<f64>; 3]; 3]| DMatrix::from_fn(3, 3, |i, j| e[i][j]);
        let o = c(1.0, 0.0);
        let i = c(0.0, 1.0);
        let s = 1.0 / 3f64.sqrt();
        vec![
            mk([[z, o, z], [o, z, z], [z, z, z]]),
            mk([[z, -i, z], [i, z, z], [z, z, z]]),
            mk([[o, z, z], [z, -o, z], [z, z, z]]),
            mk([[z, z, o], [z, z, z], [o, z, z]]),
            mk([[z, z, -i], [z, z, z], [i, z, z]]),
            mk([[z, z, z], [z, z, o], [z, o, z]]),
            mk([[z, z, z], [z, z, -i], [z, i, z]]),
            mk([[c(s, 0.0), z, z], [z, c(s, 0.0), z], [z, z, c(-2.0 * s, 0.0)]]),
        ]
    }

    /// Eigenvalues of `−Σ_a X_a²/g_a` on a representation, with `X_a` orthonormal for `−B`.
    fn laplace_on_rep(rep: &[DMatrix<Complex<f64>>], scales: &[f64]) -> Vec<f64> {
        let n = rep[0].nrows();
        let mut l = DMatrix::<Complex<f64>>::zeros(n, n);
        for (x, g) in rep.iter().zip(scales) {
            l -= x * x * Complex::new(1.0 / g, 0.0);
        }
        let mut ev: Vec<f64> = l.symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ev
    }

    fn su3_basis() -> Vec<DMatrix<Complex<f64>>> {
        // X_a = iλ_a/2 has −B(X_a, X_a) = −6 tr(X_a²) = 3.
        gell_mann()
            .into_iter()
            .map(|m| m * Complex::new(0.0, 0.5 / 3f64.sqrt()))
            .collect()
    }

    fn adjoint(basis: &[DMatrix<Complex<f64>>]) -> Vec<DMatrix<Complex<f64>>> {
        // Coordinates w.r.t. the basis via the trace form (the basis is trace-orthogonal).
        let norms: Vec<Complex<f64>> = basis.iter().map(|b| (b * b).trace()).collect();
        basis
            .iter()
            .map(|x| {
                DMatrix::from_fn(8, 8, |i, j| {
                    let br = x * &basis[j] - &basis[j] * x;
                    (&br * &basis[i]).trace() / norms[i]
                })
            })
            .collect()
    }

    #[test]
    fn matches_numeric_laplacian_on_su3() {
        // Upper-left su(2) spanned by λ1, λ2, λ3; complement λ4..λ8.
        let basis = su3_basis();
        let ad = adjoint(&basis);
        for (t, t1) in [(qi(1), q(1, 2)), (qi(2), q(1, 3)), (q(3, 2), qi(4))] {
            let scales: Vec<f64> = (0..8).map(|a| to_f64(if a < 3 { &t1 } else { &t })).collect();
            let m = metric("a1-in-a2-standard", t.clone(), vec![t1.clone()]);
            let terms = natred_terms(&m, &qi(20)).unwrap();
            for (lambda, rep) in [(vec![1, 0], basis.clone()), (vec![1, 1], ad.clone())] {
                let mut exact: Vec<f64> = Vec::new();
                for term in terms.iter().filter(|x| x.lambda.0 == lambda) {
                    let tau_dim = (term.multiplicity / weights::weyl_dim_unchecked(m.emb.ambient(), &term.lambda)) as usize;
                    exact.extend(std::iter::repeat(to_f64(&term.eigenvalue)).take(tau_dim));
                }
                exact.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let numeric = laplace_on_rep(&rep, &scales);
                assert_eq!(exact.len(), numeric.len());
                for (a, b) in exact.iter().zip(&numeric) {
                    assert!((a - b).abs() < 1e-9, "λ={lambda:?} t={t} t1={t1}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn identity_collapses_to_scaled_biinvariant() {
        let g = Arc::new(library::embedding("a2-identity").unwrap());
        for (t, t1) in [(qi(1), q(1, 2)), (qi(1), qi(3)), (q(2, 3), q(5, 7))] {
            let m = NatRedMetric::new(g.clone(), t, vec![t1.clone()]).unwrap();
            let s = natred_spectrum(&m, &qi(4)).unwrap();
            let bi = GroupSpec::simple(g.ambient().clone(), t1).unwrap().biinvariant_spectrum(&qi(4)).unwrap();
            assert_eq!(s.entries, bi.entries);
            assert!(s.complete);
        }
    }

    #[test]
    fn trivial_subgroup_gives_biinvariant() {
        let e = Arc::new(library::embedding("trivial:A2").unwrap());
        let m = NatRedMetric::new(e.clone(), q(3, 2), vec![]).unwrap();
        let s = natred_spectrum(&m, &qi(3)).unwrap();
        let bi = GroupSpec::simple(e.ambient().clone(), q(3, 2)).unwrap().biinvariant_spectrum(&qi(3)).unwrap();
        assert_eq!(s.entries, bi.entries);
    }

    #[test]
    fn closed_form_reproduced_independently() {
        for name in library::EMBEDDINGS {
            let e = Arc::new(library::embedding(name).unwrap());
            let r = e.factors().len();
            let ti: Vec<Q> = (0..r).map(|i| q(1, 2 + i as i64)).collect();
            let m = NatRedMetric::new(e.clone(), qi(1), ti.clone()).unwrap();
            for term in natred_terms(&m, &qi(4)).unwrap() {
                // −B_G-Casimir of the block split into the 𝔨_i parts and the complement.
                let g = e.ambient();
                let c = g.casimir(&term.lambda).unwrap();
                let ks: Vec<Q> = e
                    .factors()
                    .iter()
                    .zip(&term.tau)
                    .zip(e.killing_ratios())
                    .map(|((f, w), j)| f.casimir(w).unwrap() / j)
                    .collect();
                let complement = &c - ks.iter().fold(Q::zero(), |a, x| a + x);
                let expected = complement / qi(1) + ks.iter().zip(&ti).fold(Q::zero(), |a, (k, t)| a + k / t);
                assert_eq!(term.eigenvalue, expected, "{name}");
            }
        }
    }

    #[test]
    fn semi_riemannian_is_complete() {
        // Compare a cutoff-c table with the truncation of a much larger one.
        let m = metric("a1-in-a2-principal", qi(1), vec![qi(5)]);
        let small = natred_spectrum(&m, &qi(2)).unwrap();
        let big = natred_spectrum(&m, &qi(8)).unwrap();
        assert_eq!(small.entries, big.truncate(&qi(2)).entries);
        assert!(small.all_nonnegative());
        assert_eq!(small.entries[0], (qi(0), 1));
    }

    #[test]
    fn quotient_contained() {
        let e = Arc::new(library::embedding("a1-in-a2-standard").unwrap());
        let m = NatRedMetric::new(e.clone(), qi(1), vec![q(1, 2)]).unwrap();
        let total = natred_spectrum(&m, &qi(4)).unwrap();
        let quot = crate::group::normal_quotient_spectrum(&e, &qi(1), &qi(4)).unwrap();
        for (ev, mult) in &quot.entries {
            assert!(total.multiplicity(ev) >= *mult);
        }
    }

    #[test]
    fn containment() {
        for t1 in [q(1, 2), q(1, 3)] {
            let m = metric("a1-in-a2-standard", qi(1), vec![t1.clone()]);
            for b in [qi(1), qi(2), q(3, 4)] {
                let r = containment_check(&m, 0, &b, &qi(8)).unwrap();
                assert_eq!(r.status, ContainmentStatus::Witnessed);
                let w = r.witness.unwrap();
                assert_eq!(w.value, m.eigenvalue(&w.lambda, &w.tau));
            }
            assert!(matches!(containment_check(&m, 0, &q(1, 4), &qi(8)), Err(Error::Inadmissible(_))));
            let none = containment_check(&m, 0, &qi(2), &q(1, 10)).unwrap();
            assert_eq!(none.status, ContainmentStatus::Inconclusive);
        }
        let triv = NatRedMetric::new(Arc::new(library::embedding("trivial:A2").unwrap()), qi(1), vec![]).unwrap();
        assert_eq!(containment_check(&triv, 0, &qi(2), &qi(8)).unwrap().status, ContainmentStatus::Vacuous);
        let id = metric("a2-identity", qi(1), vec![q(1, 2)]);
        let r = containment_check(&id, 0, &qi(1), &qi(8)).unwrap();
        assert_eq!(r.status, ContainmentStatus::Witnessed);
        // ζ_p is the eigenvalue of the same block with fiber scale b.
        let w = r.witness.unwrap();
        assert_eq!(w.zeta + r.gamma.unwrap(), w.value);
    }

    #[test]
    fn zeta_is_an_eigenvalue_of_the_fiber_scaled_metric() {
        let m = metric("a1-in-a2-standard", qi(1), vec![q(1, 2)]);
        let b = qi(2);
        let r = containment_check(&m, 0, &b, &qi(8)).unwrap();
        let w = r.witness.unwrap();
        let g_tilde = metric("a1-in-a2-standard", qi(1), vec![b]);
        assert_eq!(g_tilde.eigenvalue(&w.lambda, &w.tau), w.zeta);
        assert!(natred_spectrum(&g_tilde, &qi(8)).unwrap().contains(&w.zeta));
    }
}
