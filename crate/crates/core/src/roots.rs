//! Root-system data for the compact simple types.
//!
//! Conventions: Bourbaki numbering of simple roots, Cartan entries
//! `a_ij = ⟨α_i, α_j^∨⟩`, so the simple root `α_i` has fundamental-weight
//! coordinates equal to row `i` of the Cartan matrix. The invariant form is
//! normalized by `⟨θ, θ⟩ = 2` for the highest root `θ`; the form dual to minus
//! the Killing form is that one divided by `2h^∨`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, QMat};
use crate::rational::{qi, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SimpleType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// Highest weight, or any integral weight, in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = vec![0; rank];
        w[i] = 1;
        Weight(w)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scaled(-1)
    }

    pub fn as_q(&self) -> Vec<Q> {
        self.0.iter().map(|&c| qi(c)).collect()
    }

    /// Parses `"1,0,2"` (whitespace tolerant).
    pub fn parse(s: &str) -> Result<Weight> {
        s.split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad weight `{s}`"))))
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    kind: SimpleType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// Squared lengths of simple roots, long roots having length² 2.
    root_lengths: Vec<Q>,
    simple_roots: Vec<Weight>,
    /// Positive roots in simple-root coordinates, sorted by height.
    positive_simple: Vec<Vec<i64>>,
    positive_roots: Vec<Weight>,
    rho: Weight,
    fundamental_form: QMat,
    inverse_cartan: QMat,
    dual_coxeter: i64,
    highest_root: Weight,
    minus_w0: Vec<usize>,
    dim_g: usize,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.rank == other.rank
    }
}

impl Eq for RootSystem {}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

impl FromStr for RootSystem {
    type Err = Error;

    /// Accepts labels such as `"A1"`, `"e8"`, `"G2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => SimpleType::A,
            Some('B') => SimpleType::B,
            Some('C') => SimpleType::C,
            Some('D') => SimpleType::D,
            Some('E') => SimpleType::E,
            Some('F') => SimpleType::F,
            Some('G') => SimpleType::G,
            _ => return Err(Error::Parse(format!("unknown simple type `{s}`"))),
        };
        let rank = chars
            .as_str()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad rank in `{s}`")))?;
        RootSystem::new(kind, rank)
    }
}

fn cartan_matrix(kind: SimpleType, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match kind {
        SimpleType::A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
        SimpleType::B => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n - 1, -2, -1);
        }
        SimpleType::C => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n - 1, -1, -2);
        }
        SimpleType::D => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 3, n - 1, -1, -1);
        }
        SimpleType::E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
        }
        SimpleType::F => {
            link(0, 1, -1, -1);
            link(1, 2, -2, -1);
            link(2, 3, -1, -1);
        }
        SimpleType::G => link(0, 1, -1, -3),
    }
    a
}

fn expected_dual_coxeter(kind: SimpleType, n: usize) -> i64 {
    let n = n as i64;
    match kind {
        SimpleType::A => n + 1,
        SimpleType::B => 2 * n - 1,
        SimpleType::C => n + 1,
        SimpleType::D => 2 * n - 2,
        SimpleType::E => match n {
            6 => 12,
            7 => 18,
            _ => 30,
        },
        SimpleType::F => 9,
        SimpleType::G => 4,
    }
}

/// Diagram involution realizing `-w₀` on fundamental-weight coordinates.
fn diagram_involution(kind: SimpleType, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    match kind {
        SimpleType::A => p.reverse(),
        SimpleType::D if n % 2 == 1 => p.swap(n - 2, n - 1),
        SimpleType::E if n == 6 => {
            p.swap(0, 5);
            p.swap(2, 4);
        }
        _ => {}
    }
    p
}

impl RootSystem {
    pub fn new(kind: SimpleType, rank: usize) -> Result<Self> {
        let valid = match kind {
            SimpleType::A => rank >= 1,
            SimpleType::B => rank >= 2,
            SimpleType::C => rank >= 3,
            SimpleType::D => rank >= 4,
            SimpleType::E => (6..=8).contains(&rank),
            SimpleType::F => rank == 4,
            SimpleType::G => rank == 2,
        };
        if !valid {
            return Err(Error::Domain(format!("{kind:?}{rank} is not a simple type")));
        }
        let n = rank;
        let cartan = cartan_matrix(kind, n);

        // Symmetrize: a_ij |α_j|² = a_ji |α_i|², starting from |α_0|² = 1.
        let mut lens: Vec<Option<Q>> = vec![None; n];
        lens[0] = Some(qi(1));
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && cartan[i][j] != 0 && lens[j].is_none() {
                    let li = lens[i].clone().unwrap();
                    lens[j] = Some(li * qi(cartan[j][i]) / qi(cartan[i][j]));
                    stack.push(j);
                }
            }
        }
        let lens: Vec<Q> = lens.into_iter().map(|l| l.expect("connected diagram")).collect();
        let longest = lens.iter().max().unwrap().clone();
        let root_lengths: Vec<Q> = lens.iter().map(|l| l * qi(2) / &longest).collect();

        let positive_simple = positive_roots_simple_coords(&cartan);
        let to_fund = |c: &[i64]| -> Weight {
            Weight((0..n).map(|i| (0..n).map(|j| c[j] * cartan[j][i]).sum()).collect())
        };
        let simple_roots: Vec<Weight> = (0..n).map(|i| Weight(cartan[i].clone())).collect();
        let positive_roots: Vec<Weight> = positive_simple.iter().map(|c| to_fund(c)).collect();
        let highest_root = positive_roots.last().unwrap().clone();

        let inverse_cartan = linalg::inverse(&linalg::from_i64(&cartan)).expect("Cartan matrix is invertible");
        // ⟨ω_i, ω_j⟩ = (A⁻¹)_{ji} |α_i|² / 2.
        let fundamental_form: QMat = (0..n)
            .map(|i| (0..n).map(|j| &inverse_cartan[j][i] * &root_lengths[i] / qi(2)).collect())
            .collect();

        let mut rs = RootSystem {
            kind,
            rank: n,
            cartan,
            root_lengths,
            simple_roots,
            dim_g: n + 2 * positive_simple.len(),
            positive_simple,
            positive_roots,
            rho: Weight(vec![1; n]),
            fundamental_form,
            inverse_cartan,
            dual_coxeter: expected_dual_coxeter(kind, n),
            highest_root,
            minus_w0: diagram_involution(kind, n),
        };
        rs.verify()?;
        Ok(rs)
    }

    /// Build-time consistency checks on the derived data.
    fn verify(&mut self) -> Result<()> {
        let theta = self.highest_root.clone();
        if self.ip(&theta, &theta) != qi(2) {
            return Err(Error::Domain(format!("{self}: highest root not normalized")));
        }
        if !linalg::is_symmetric(&self.fundamental_form) {
            return Err(Error::Domain(format!("{self}: fundamental form not symmetric")));
        }
        let h = self.dual_coxeter_from_roots();
        if h != qi(self.dual_coxeter) {
            return Err(Error::Domain(format!("{self}: dual Coxeter number {h} != {}", self.dual_coxeter)));
        }
        let sigma = &self.minus_w0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                if self.cartan[sigma[i]][sigma[j]] != self.cartan[i][j] {
                    return Err(Error::Domain(format!("{self}: -w0 is not a diagram automorphism")));
                }
            }
            // -w₀ ω_i is the dominant element of the orbit of -ω_i.
            let (d, _) = self.dominant_rep(&Weight::fundamental(self.rank, i).neg());
            if d != Weight::fundamental(self.rank, sigma[i]) {
                return Err(Error::Domain(format!("{self}: -w0 disagrees with the Weyl orbit of -ω_{i}")));
            }
        }
        let pos: HashSet<&Weight> = self.positive_roots.iter().collect();
        if self.positive_roots.iter().any(|a| !pos.contains(&self.apply_minus_w0(a))) {
            return Err(Error::Domain(format!("{self}: -w0 does not preserve positive roots")));
        }
        Ok(())
    }

    pub fn kind(&self) -> SimpleType {
        self.kind
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn label(&self) -> String {
        self.to_string()
    }
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }
    pub fn root_lengths(&self) -> &[Q] {
        &self.root_lengths
    }
    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }
    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }
    pub fn positive_roots_simple_coords(&self) -> &[Vec<i64>] {
        &self.positive_simple
    }
    pub fn rho(&self) -> &Weight {
        &self.rho
    }
    pub fn fundamental_form(&self) -> &QMat {
        &self.fundamental_form
    }
    pub fn dual_coxeter(&self) -> i64 {
        self.dual_coxeter
    }
    pub fn highest_root(&self) -> &Weight {
        &self.highest_root
    }
    pub fn dim_g(&self) -> usize {
        self.dim_g
    }

    /// `-w₀` as a permutation of fundamental-weight indices.
    pub fn minus_w0_permutation(&self) -> &[usize] {
        &self.minus_w0
    }

    /// `-w₀` as an integer matrix acting on fundamental coordinates (column vectors).
    pub fn minus_w0_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut m = vec![vec![0; n]; n];
        for i in 0..n {
            m[self.minus_w0[i]][i] = 1;
        }
        m
    }

    pub fn apply_minus_w0(&self, w: &Weight) -> Weight {
        let mut out = vec![0; self.rank];
        for (i, &c) in w.0.iter().enumerate() {
            out[self.minus_w0[i]] = c;
        }
        Weight(out)
    }

    /// `⟨ρ, θ^∨⟩ + 1` computed from the roots.
    pub fn dual_coxeter_from_roots(&self) -> Q {
        let theta = &self.highest_root;
        qi(2) * self.ip(&self.rho, theta) / self.ip(theta, theta) + qi(1)
    }

    fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: w.rank() });
        }
        Ok(())
    }

    /// The invariant form normalized by `⟨θ,θ⟩ = 2`.
    pub fn ip(&self, a: &Weight, b: &Weight) -> Q {
        let mut s = Q::zero();
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if y != 0 {
                    s += &self.fundamental_form[i][j] * qi(x * y);
                }
            }
        }
        s
    }

    /// Inner product dual to minus the Killing form: `⟨λ,μ⟩_norm / (2h^∨)`.
    pub fn killing_dual_ip(&self, a: &Weight, b: &Weight) -> Result<Q> {
        self.check_rank(a)?;
        self.check_rank(b)?;
        Ok(self.ip(a, b) / qi(2 * self.dual_coxeter))
    }

    /// `⟨λ, λ + 2ρ⟩` in the normalized form, valid for any integral weight.
    pub fn casimir_normalized(&self, w: &Weight) -> Q {
        self.ip(w, &w.add(&self.rho.scaled(2)))
    }

    /// `c(λ) = ‖λ+ρ‖² − ‖ρ‖²` with the norm dual to minus the Killing form.
    pub fn casimir(&self, w: &Weight) -> Result<Q> {
        self.check_rank(w)?;
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.0.clone()));
        }
        Ok(self.casimir_unchecked(w))
    }

    pub(crate) fn casimir_unchecked(&self, w: &Weight) -> Q {
        self.casimir_normalized(w) / qi(2 * self.dual_coxeter)
    }

    /// Simple reflection `s_i`.
    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let k = w.0[i];
        if k == 0 {
            return w.clone();
        }
        w.sub(&self.simple_roots[i].scaled(k))
    }

    /// Dominant element of the Weyl orbit of `w`, with the number of reflections used.
    pub fn dominant_rep(&self, w: &Weight) -> (Weight, usize) {
        let mut cur = w.clone();
        let mut steps = 0;
        while let Some(i) = cur.0.iter().position(|&c| c < 0) {
            cur = self.reflect(&cur, i);
            steps += 1;
        }
        (cur, steps)
    }

    /// Coordinates of `w` on the simple roots.
    pub fn simple_coords(&self, w: &Weight) -> Vec<Q> {
        // f_i = Σ_j c_j a_ji, so c = (Aᵀ)⁻¹ f.
        (0..self.rank)
            .map(|j| (0..self.rank).fold(Q::zero(), |acc, i| acc + &self.inverse_cartan[i][j] * qi(w.0[i])))
            .collect()
    }

    /// Whole Weyl orbit of `w`, sorted.
    pub fn orbit(&self, w: &Weight) -> Vec<Weight> {
        let mut seen: BTreeSet<Weight> = BTreeSet::new();
        let mut stack = vec![w.clone()];
        seen.insert(w.clone());
        while let Some(v) = stack.pop() {
            for i in 0..self.rank {
                let r = self.reflect(&v, i);
                if seen.insert(r.clone()) {
                    stack.push(r);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// `(λ + ρ, α)` for every positive root, used by the Weyl dimension formula.
    pub(crate) fn root_pairings(&self, w: &Weight) -> Vec<Q> {
        let shifted = w.add(&self.rho);
        self.positive_roots.iter().map(|a| self.ip(&shifted, a)).collect()
    }

    #[cfg(test)]
    pub(crate) fn is_positive_definite_form(&self) -> bool {
        linalg::is_positive_definite(&self.fundamental_form)
            && self.fundamental_form.iter().flatten().all(|x| *x > Q::zero())
    }
}

fn positive_roots_simple_coords(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut all: Vec<Vec<i64>> = Vec::new();
    let mut known: HashSet<Vec<i64>> = HashSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    while !layer.is_empty() {
        for r in &layer {
            known.insert(r.clone());
        }
        all.extend(layer.iter().cloned());
        let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        layer = next.into_iter().collect();
    }
    all
}
