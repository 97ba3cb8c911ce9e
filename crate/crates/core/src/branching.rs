//! Restriction of irreducible representations of a simple `G` to a semisimple
//! subgroup `K = K_1 ⋯ K_r`, described by a rational matrix sending
//! fundamental-weight coordinates of `G` to the concatenated fundamental-weight
//! coordinates of the factors.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, QMat};
use crate::rational::{fmt_q, parse_mat, qi, RatLit, Q};
use crate::roots::{RootSystem, Weight};
use crate::weights::{self, RepCache};

/// Highest weights of the factors `(λ_1, …, λ_r)`.
pub type KTuple = Vec<Weight>;

/// Unvalidated description of `K ≤ G`.
#[derive(Clone, Debug)]
pub struct EmbeddingData {
    pub name: String,
    pub ambient: Arc<RootSystem>,
    pub factors: Vec<Arc<RootSystem>>,
    /// `Σ rank(K_i)` rows by `rank(G)` columns.
    pub restriction: QMat,
}

/// Embedding file schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EmbeddingWire {
    pub ambient: String,
    pub factors: Vec<String>,
    pub restriction: Vec<Vec<RatLit>>,
    #[serde(default)]
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingResult {
    pub source: Weight,
    pub terms: BTreeMap<KTuple, u64>,
}

impl BranchingResult {
    pub fn multiplicity(&self, t: &[Weight]) -> u64 {
        self.terms.get(t).copied().unwrap_or(0)
    }
}

impl EmbeddingData {
    pub fn new(
        name: impl Into<String>,
        ambient: Arc<RootSystem>,
        factors: Vec<Arc<RootSystem>>,
        restriction: QMat,
    ) -> Result<Self> {
        let k_rank: usize = factors.iter().map(|f| f.rank()).sum();
        if restriction.len() != k_rank || restriction.iter().any(|r| r.len() != ambient.rank()) {
            return Err(Error::MalformedEmbedding(format!(
                "restriction must be {}x{}, got {}x{}",
                k_rank,
                ambient.rank(),
                restriction.len(),
                restriction.first().map_or(0, Vec::len)
            )));
        }
        Ok(EmbeddingData { name: name.into(), ambient, factors, restriction })
    }

    pub fn from_wire(w: &EmbeddingWire) -> Result<Self> {
        let ambient = Arc::new(w.ambient.parse::<RootSystem>()?);
        let factors = w
            .factors
            .iter()
            .map(|f| f.parse::<RootSystem>().map(Arc::new))
            .collect::<Result<Vec<_>>>()?;
        let name = w.name.clone().unwrap_or_else(|| "unnamed".into());
        EmbeddingData::new(name, ambient, factors, parse_mat(&w.restriction)?)
    }

    pub fn to_wire(&self) -> EmbeddingWire {
        EmbeddingWire {
            ambient: self.ambient.label(),
            factors: self.factors.iter().map(|f| f.label()).collect(),
            restriction: self.restriction.iter().map(|r| r.iter().map(RatLit::from).collect()).collect(),
            name: Some(self.name.clone()),
        }
    }

    /// Canonical JSON text, used as a cache key.
    pub fn canonical_json(&self) -> String {
        serde_json::json!({
            "ambient": self.ambient.label(),
            "factors": self.factors.iter().map(|f| f.label()).collect::<Vec<_>>(),
            "restriction": self.restriction.iter().map(|r| r.iter().map(fmt_q).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
        .to_string()
    }

    fn factor_caches(&self) -> Vec<RepCache> {
        self.factors.iter().map(|f| RepCache::new(f.clone())).collect()
    }

    /// Restriction of one `G`-weight, or an error when it is not integral.
    pub fn restrict(&self, w: &Weight) -> Result<Vec<i64>> {
        self.restriction
            .iter()
            .map(|row| {
                let v = row.iter().zip(&w.0).fold(Q::zero(), |acc, (r, &c)| acc + r * qi(c));
                v.is_integer()
                    .then(|| v.to_integer().to_i64())
                    .flatten()
                    .ok_or_else(|| Error::MalformedEmbedding(format!("{}: weight {w} restricts to non-integral {v}", self.name)))
            })
            .collect()
    }

    /// Splits concatenated factor coordinates into a tuple.
    pub fn split(&self, coords: &[i64]) -> KTuple {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut at = 0;
        for f in &self.factors {
            out.push(Weight(coords[at..at + f.rank()].to_vec()));
            at += f.rank();
        }
        out
    }

    /// `Σ_i c_i(λ_i)` against each factor's own Killing form.
    pub fn tuple_casimir(&self, t: &[Weight]) -> Q {
        self.factors.iter().zip(t).fold(Q::zero(), |acc, (f, w)| acc + f.casimir_unchecked(w))
    }

    pub fn tuple_dim(&self, t: &[Weight]) -> u128 {
        self.factors.iter().zip(t).map(|(f, w)| weights::weyl_dim_unchecked(f, w)).product()
    }

    /// Branches `V_σ` without caching.
    pub fn branch(&self, sigma: &Weight) -> Result<BranchingResult> {
        branch_with(self, &self.factor_caches(), sigma)
    }

    /// Upper bound `N` on `‖Rμ‖² / ‖μ‖²` (normalized forms), from Gershgorin discs of
    /// `F_G⁻¹ Rᵀ F_K R`.
    pub fn norm_sq_bound(&self) -> Q {
        let k_rank = self.restriction.len();
        let mut fk = linalg::zeros(k_rank, k_rank);
        let mut at = 0;
        for f in &self.factors {
            for i in 0..f.rank() {
                for j in 0..f.rank() {
                    fk[at + i][at + j] = f.fundamental_form()[i][j].clone();
                }
            }
            at += f.rank();
        }
        let fg_inv = linalg::inverse(self.ambient.fundamental_form()).expect("positive definite form");
        let rt = linalg::transpose(&self.restriction);
        let m = linalg::mul(&linalg::mul(&fg_inv, &rt), &linalg::mul(&fk, &self.restriction));
        m.iter()
            .map(|row| row.iter().fold(Q::zero(), |acc, x| acc + x.abs()))
            .max()
            .unwrap_or_else(Q::zero)
    }

    /// Checks `‖λ_i+ρ_i‖ <= √N ‖σ+ρ‖ + ‖ρ_i‖` on every term, exactly.
    pub fn casimir_compatible(&self, result: &BranchingResult) -> bool {
        let n = self.norm_sq_bound();
        let g = &self.ambient;
        let sr = result.source.add(g.rho());
        let b = &n * g.ip(&sr, &sr);
        result.terms.keys().all(|t| {
            self.factors.iter().zip(t).all(|(f, w)| {
                let wr = w.add(f.rho());
                let a = f.ip(&wr, &wr);
                let r = f.ip(f.rho(), f.rho());
                // √a ≤ √b + √r  ⇔  a − b − r ≤ 0  or  (a − b − r)² ≤ 4br
                let s = &a - &b - &r;
                !s.is_positive() || &s * &s <= qi(4) * &b * &r
            })
        })
    }
}

/// Dynkin-type index of a representation: `dim · ⟨λ,λ+2ρ⟩ / (2 dim g)`.
pub fn rep_index(rs: &RootSystem, w: &Weight) -> Q {
    qi(weights::weyl_dim_unchecked(rs, w) as i64) * rs.casimir_normalized(w) / qi(2 * rs.dim_g() as i64)
}

fn graded_key(v: &[i64]) -> (i64, &[i64]) {
    (v.iter().sum(), v)
}

fn branch_with(data: &EmbeddingData, caches: &[RepCache], sigma: &Weight) -> Result<BranchingResult> {
    let g = &data.ambient;
    if sigma.rank() != g.rank() {
        return Err(Error::RankMismatch { expected: g.rank(), got: sigma.rank() });
    }
    if !sigma.is_dominant() {
        return Err(Error::NotDominant(sigma.0.clone()));
    }
    let diagram = weights::freudenthal(g, sigma)?;

    // Only the K-dominant part of the restricted character is needed for peeling.
    let mut residue: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (w, &m) in &diagram.mults {
        let r = data.restrict(w)?;
        if r.iter().all(|&c| c >= 0) {
            *residue.entry(r).or_insert(0) += m as i64;
        }
    }

    let mut terms: BTreeMap<KTuple, u64> = BTreeMap::new();
    loop {
        residue.retain(|_, m| *m != 0);
        if residue.is_empty() {
            break;
        }
        if let Some((k, m)) = residue.iter().find(|(_, m)| **m < 0) {
            return Err(Error::MalformedEmbedding(format!(
                "{}: negative residue {m} at {k:?} while branching {sigma}",
                data.name
            )));
        }
        let top = residue
            .keys()
            .max_by(|a, b| {
                let ca = data.tuple_casimir(&data.split(a));
                let cb = data.tuple_casimir(&data.split(b));
                ca.cmp(&cb).then_with(|| graded_key(a).cmp(&graded_key(b)))
            })
            .expect("nonempty residue")
            .clone();
        let m = residue[&top];
        let tuple = data.split(&top);

        // Dominant part of the product diagram of the factors.
        let mut product: Vec<(Vec<i64>, i64)> = vec![(Vec::new(), 1)];
        for (cache, w) in caches.iter().zip(&tuple) {
            let table = cache.dominant(w)?;
            let mut next = Vec::with_capacity(product.len() * table.len());
            for (prefix, pm) in &product {
                for (v, vm) in table.iter() {
                    let mut key = prefix.clone();
                    key.extend_from_slice(&v.0);
                    next.push((key, pm * *vm as i64));
                }
            }
            product = next;
        }
        for (key, pm) in product {
            *residue.entry(key).or_insert(0) -= m * pm;
        }
        terms.insert(tuple, m as u64);
    }

    let total: u128 = terms.iter().map(|(t, m)| *m as u128 * data.tuple_dim(t)).sum();
    if total != diagram.dim() {
        return Err(Error::MalformedEmbedding(format!(
            "{}: branching {sigma} gives dimension {total}, expected {}",
            data.name,
            diagram.dim()
        )));
    }
    Ok(BranchingResult { source: sigma.clone(), terms })
}

/// Per-factor index of `K_i` computed from the branching of `V_σ`:
/// `Σ_τ m_τ I(τ_i) Π_{j≠i} dim τ_j / I(σ)`.
pub fn index_via(data: &EmbeddingData, result: &BranchingResult) -> Vec<Q> {
    let g_index = rep_index(&data.ambient, &result.source);
    (0..data.factors.len())
        .map(|i| {
            let mut s = Q::zero();
            for (t, &m) in &result.terms {
                let others: u128 = data
                    .factors
                    .iter()
                    .zip(t)
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, (f, w))| weights::weyl_dim_unchecked(f, w))
                    .product();
                s += qi(m as i64) * qi(others as i64) * rep_index(&data.factors[i], &t[i]);
            }
            s / &g_index
        })
        .collect()
}

/// A validated embedding with its indices and branching caches.
#[derive(Debug)]
pub struct EmbeddingSpec {
    data: EmbeddingData,
    indices: Vec<Q>,
    killing_ratios: Vec<Q>,
    caches: Vec<RepCache>,
    results: Mutex<HashMap<Weight, Arc<BranchingResult>>>,
}

impl EmbeddingSpec {
    /// Validates `data` by branching the adjoint representation and computing the indices.
    pub fn new(data: EmbeddingData) -> Result<Self> {
        let caches = data.factor_caches();
        let adjoint = branch_with(&data, &caches, data.ambient.highest_root())?;
        let indices = index_via(&data, &adjoint);
        if let Some((i, ind)) = indices.iter().enumerate().find(|(_, x)| !x.is_positive()) {
            return Err(Error::MalformedEmbedding(format!("{}: factor {i} has index {ind}", data.name)));
        }
        let h = qi(data.ambient.dual_coxeter());
        let killing_ratios = indices
            .iter()
            .zip(&data.factors)
            .map(|(ind, f)| ind * &h / qi(f.dual_coxeter()))
            .collect();
        let spec = EmbeddingSpec { data, indices, killing_ratios, caches, results: Mutex::new(HashMap::new()) };
        spec.results
            .lock()
            .unwrap()
            .insert(adjoint.source.clone(), Arc::new(adjoint));
        Ok(spec)
    }

    pub fn from_wire(w: &EmbeddingWire) -> Result<Self> {
        EmbeddingSpec::new(EmbeddingData::from_wire(w)?)
    }

    /// `K = G` through the identity restriction.
    pub fn identity(g: Arc<RootSystem>) -> Self {
        let n = g.rank();
        let data = EmbeddingData::new(format!("{g}-identity"), g.clone(), vec![g], linalg::identity(n))
            .expect("square identity");
        EmbeddingSpec::new(data).expect("identity embedding is valid")
    }

    /// Trivial `K` (no factors).
    pub fn trivial(g: Arc<RootSystem>) -> Self {
        let data = EmbeddingData::new(format!("{g}-trivial"), g, Vec::new(), Vec::new()).expect("empty restriction");
        EmbeddingSpec::new(data).expect("trivial embedding is valid")
    }

    pub fn data(&self) -> &EmbeddingData {
        &self.data
    }
    pub fn name(&self) -> &str {
        &self.data.name
    }
    pub fn ambient(&self) -> &Arc<RootSystem> {
        &self.data.ambient
    }
    pub fn factors(&self) -> &[Arc<RootSystem>] {
        &self.data.factors
    }

    /// Per-factor index `ind_i` (normalized form of `G` restricts to `ind_i` times that of `K_i`).
    pub fn embedding_index(&self) -> &[Q] {
        &self.indices
    }

    /// `j_i = ind_i h^∨_G / h^∨_{K_i}`: minus the Killing form of `G` restricted to `𝔨_i`
    /// equals `j_i` times minus the Killing form of `𝔨_i`.
    pub fn killing_ratios(&self) -> &[Q] {
        &self.killing_ratios
    }

    /// `dim K`.
    pub fn dim_k(&self) -> usize {
        self.data.factors.iter().map(|f| f.dim_g()).sum()
    }

    /// Cached branching of `V_σ`.
    pub fn branch(&self, sigma: &Weight) -> Result<Arc<BranchingResult>> {
        if let Some(r) = self.results.lock().unwrap().get(sigma) {
            return Ok(r.clone());
        }
        let r = Arc::new(branch_with(&self.data, &self.caches, sigma)?);
        self.results.lock().unwrap().insert(sigma.clone(), r.clone());
        Ok(r)
    }

    /// Multiplicity of the trivial `K`-type in `V_σ`.
    pub fn spherical_mult(&self, sigma: &Weight) -> Result<u64> {
        let zero: KTuple = self.data.factors.iter().map(|f| Weight::zero(f.rank())).collect();
        Ok(self.branch(sigma)?.multiplicity(&zero))
    }

    /// Snapshot of all cached branchings, sorted by source weight.
    pub fn cached_results(&self) -> Vec<Arc<BranchingResult>> {
        let mut v: Vec<_> = self.results.lock().unwrap().values().cloned().collect();
        v.sort_by(|a, b| a.source.cmp(&b.source));
        v
    }

    /// Seeds the cache with externally stored results after checking the dimension identity.
    pub fn preload(&self, results: Vec<BranchingResult>) -> Result<()> {
        for r in results {
            let dim = weights::weyl_dim(&self.data.ambient, &r.source)?;
            let total: u128 = r.terms.iter().map(|(t, m)| *m as u128 * self.data.tuple_dim(t)).sum();
            if total != dim || r.terms.values().any(|&m| m == 0) {
                return Err(Error::MalformedEmbedding(format!("cached branching of {} is inconsistent", r.source)));
            }
            self.results.lock().unwrap().insert(r.source.clone(), Arc::new(r));
        }
        Ok(())
    }
}

/// Outcome of [`validate_embedding`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub name: String,
    pub valid: bool,
    pub failures: Vec<String>,
    pub indices: Vec<String>,
    pub killing_ratios: Vec<String>,
}

/// Largest representation used as an additional probe during validation.
const PROBE_DIM_LIMIT: u128 = 5000;

/// Checks integrality and peeling on the adjoint and on small fundamental representations,
/// positivity of the indices, and agreement of the index computed from every probe.
pub fn validate_embedding(data: &EmbeddingData) -> ValidationReport {
    let mut failures = Vec::new();
    let mut indices = Vec::new();
    let mut killing_ratios = Vec::new();
    match EmbeddingSpec::new(data.clone()) {
        Err(e) => failures.push(e.to_string()),
        Ok(spec) => {
            indices = spec.embedding_index().iter().map(fmt_q).collect();
            killing_ratios = spec.killing_ratios().iter().map(fmt_q).collect();
            let g = data.ambient.clone();
            for i in 0..g.rank() {
                let w = Weight::fundamental(g.rank(), i);
                if weights::weyl_dim_unchecked(&g, &w) > PROBE_DIM_LIMIT {
                    continue;
                }
                match spec.branch(&w) {
                    Err(e) => failures.push(e.to_string()),
                    Ok(r) => {
                        let via = index_via(data, &r);
                        if via != spec.embedding_index() {
                            failures.push(format!(
                                "index from {w} is {:?}, from the adjoint {:?}",
                                via.iter().map(fmt_q).collect::<Vec<_>>(),
                                indices
                            ));
                        }
                        if !data.casimir_compatible(&r) {
                            failures.push(format!("branching of {w} violates the restriction norm bound"));
                        }
                    }
                }
            }
        }
    }
    ValidationReport { name: data.name.clone(), valid: failures.is_empty(), failures, indices, killing_ratios }
}
