//! Bi-invariant spectra of compact semisimple groups `K̃/Γ` and normal spectra of `G/K`.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::branching::EmbeddingSpec;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_vec, pow, qi, RatLit, Q};
use crate::roots::{RootSystem, Weight};
use crate::spectrum::{SpectrumBuilder, SpectrumTable, Unit};
use crate::weights;

/// `K̃ = K_1 × ⋯ × K_r` simply connected, divided by central elements, with metric
/// `Σ t_i (−B_{K_i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    factors: Vec<Arc<RootSystem>>,
    scales: Vec<Q>,
    /// Central elements; entry `[e][i]` holds fundamental-coweight coordinates on factor `i`.
    gamma: Vec<Vec<Vec<Q>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupWire {
    pub factors: Vec<String>,
    pub scales: Vec<RatLit>,
    #[serde(default)]
    pub gamma: Vec<Vec<Vec<RatLit>>>,
}

impl GroupSpec {
    pub fn new(factors: Vec<Arc<RootSystem>>, scales: Vec<Q>, gamma: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        if scales.len() != factors.len() {
            return Err(Error::RankMismatch { expected: factors.len(), got: scales.len() });
        }
        if let Some(t) = scales.iter().find(|t| !t.is_positive()) {
            return Err(Error::Domain(format!("scale {t} is not positive")));
        }
        for z in &gamma {
            if z.len() != factors.len() {
                return Err(Error::RankMismatch { expected: factors.len(), got: z.len() });
            }
            for (f, zi) in factors.iter().zip(z) {
                if zi.len() != f.rank() {
                    return Err(Error::RankMismatch { expected: f.rank(), got: zi.len() });
                }
                // ⟨α_j, z⟩ = Σ_k a_jk z_k must be integral for every simple root.
                for row in f.cartan() {
                    let p = row.iter().zip(zi).fold(Q::zero(), |acc, (&a, x)| acc + qi(a) * x);
                    if !p.is_integer() {
                        return Err(Error::Domain(format!(
                            "central element {:?} pairs to {p} with a root of {f}",
                            zi.iter().map(fmt_q).collect::<Vec<_>>()
                        )));
                    }
                }
            }
        }
        Ok(GroupSpec { factors, scales, gamma })
    }

    /// Simply connected `K` with metric `t (−B)`.
    pub fn simple(rs: Arc<RootSystem>, t: Q) -> Result<Self> {
        GroupSpec::new(vec![rs], vec![t], Vec::new())
    }

    pub fn from_wire(w: &GroupWire) -> Result<Self> {
        let factors = w
            .factors
            .iter()
            .map(|f| f.parse::<RootSystem>().map(Arc::new))
            .collect::<Result<Vec<_>>>()?;
        let gamma = w
            .gamma
            .iter()
            .map(|z| z.iter().map(|c| parse_vec(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        GroupSpec::new(factors, parse_vec(&w.scales)?, gamma)
    }

    pub fn to_wire(&self) -> GroupWire {
        GroupWire {
            factors: self.factors.iter().map(|f| f.label()).collect(),
            scales: self.scales.iter().map(RatLit::from).collect(),
            gamma: self
                .gamma
                .iter()
                .map(|z| z.iter().map(|c| c.iter().map(RatLit::from).collect()).collect())
                .collect(),
        }
    }

    pub fn factors(&self) -> &[Arc<RootSystem>] {
        &self.factors
    }
    pub fn scales(&self) -> &[Q] {
        &self.scales
    }
    pub fn gamma(&self) -> &[Vec<Vec<Q>>] {
        &self.gamma
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim_g()).sum()
    }

    /// Same group with every scale multiplied by `s`.
    pub fn rescaled(&self, s: &Q) -> Result<Self> {
        GroupSpec::new(self.factors.clone(), self.scales.iter().map(|t| t * s).collect(), self.gamma.clone())
    }

    /// Same group with new per-factor scales.
    pub fn with_scales(&self, scales: Vec<Q>) -> Result<Self> {
        GroupSpec::new(self.factors.clone(), scales, self.gamma.clone())
    }

    /// `vol² / vol²_{−B}` = `Π t_i^{dim K_i}`.
    pub fn volume_scale_squared(&self) -> Q {
        self.factors
            .iter()
            .zip(&self.scales)
            .fold(qi(1), |acc, (f, t)| acc * pow(t, f.dim_g() as u32))
    }

    /// Whether every listed central element acts trivially on `V_{λ_1} ⊗ ⋯ ⊗ V_{λ_r}`.
    pub fn center_admissible(&self, tuple: &[Weight]) -> bool {
        self.gamma.iter().all(|z| {
            let s = z.iter().zip(tuple).fold(Q::zero(), |acc, (zi, w)| {
                zi.iter().zip(&w.0).fold(acc, |a, (x, &c)| a + x * qi(c))
            });
            s.is_integer()
        })
    }

    /// Eigenvalues `Σ c_i(λ_i)/t_i` over admissible tuples, multiplicity `(Π dim λ_i)²`.
    pub fn biinvariant_spectrum(&self, cutoff: &Q) -> Result<SpectrumTable> {
        if cutoff.is_negative() {
            return Err(Error::Domain(format!("negative cutoff {cutoff}")));
        }
        // Each summand is nonnegative, so every factor can be truncated on its own.
        let per_factor = self
            .factors
            .iter()
            .zip(&self.scales)
            .map(|(f, t)| {
                let ws = weights::dominant_weights_up_to(f, &(cutoff * t))?;
                Ok(ws
                    .into_iter()
                    .map(|w| {
                        let e = f.casimir_unchecked(&w) / t;
                        let d = weights::weyl_dim_unchecked(f, &w);
                        (w, e, d)
                    })
                    .collect::<Vec<_>>())
            })
            .collect::<Result<Vec<_>>>()?;
        let mut b = SpectrumBuilder::new();
        let mut tuple = Vec::with_capacity(self.factors.len());
        self.collect(&per_factor, cutoff, &mut tuple, Q::zero(), 1, &mut b);
        Ok(b.finish(Unit::Raw, cutoff.clone(), true))
    }

    fn collect(
        &self,
        per_factor: &[Vec<(Weight, Q, u128)>],
        cutoff: &Q,
        tuple: &mut Vec<Weight>,
        acc: Q,
        dim: u128,
        out: &mut SpectrumBuilder,
    ) {
        let i = tuple.len();
        if i == per_factor.len() {
            if self.center_admissible(tuple) {
                out.add(acc, dim * dim);
            }
            return;
        }
        for (w, e, d) in &per_factor[i] {
            let next = &acc + e;
            if next > *cutoff {
                continue;
            }
            tuple.push(w.clone());
            self.collect(per_factor, cutoff, tuple, next, dim * d, out);
            tuple.pop();
        }
    }

    /// Least nonzero eigenvalue among admissible classes supported on factor `i` alone.
    pub fn factor_lambda1(&self, i: usize) -> Q {
        let f = &self.factors[i];
        // The adjoint class is always admissible and has Casimir 1.
        let ws = weights::dominant_weights_up_to(f, &qi(1)).expect("nonnegative budget");
        ws.into_iter()
            .filter(|w| !w.is_zero())
            .filter(|w| {
                let tuple: Vec<Weight> = self
                    .factors
                    .iter()
                    .enumerate()
                    .map(|(j, g)| if j == i { w.clone() } else { Weight::zero(g.rank()) })
                    .collect();
                self.center_admissible(&tuple)
            })
            .map(|w| f.casimir_unchecked(&w))
            .min()
            .expect("adjoint is admissible")
            / &self.scales[i]
    }
}

/// Spectrum of `G/K` with the normal metric induced by `t (−B_G)`:
/// eigenvalues `c(λ)/t` over `K`-spherical `λ`, multiplicity `dim λ · [V_λ|_K : 1]`.
pub fn normal_quotient_spectrum(emb: &EmbeddingSpec, t: &Q, cutoff: &Q) -> Result<SpectrumTable> {
    if !t.is_positive() {
        return Err(Error::Domain(format!("scale {t} is not positive")));
    }
    if cutoff.is_negative() {
        return Err(Error::Domain(format!("negative cutoff {cutoff}")));
    }
    let g = emb.ambient();
    let mut b = SpectrumBuilder::new();
    for w in weights::dominant_weights_up_to(g, &(cutoff * t))? {
        let m = emb.spherical_mult(&w)?;
        if m > 0 {
            b.add(g.casimir_unchecked(&w) / t, weights::weyl_dim_unchecked(g, &w) * m as u128);
        }
    }
    Ok(b.finish(Unit::Raw, cutoff.clone(), true))
}
