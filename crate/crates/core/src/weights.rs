//! Irreducible representations: Weyl dimensions, Freudenthal weight
//! multiplicities, dominant-weight enumeration under a Casimir budget and
//! contragredients.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use crate::roots::{RootSystem, Weight};

/// All weights of an irreducible representation with their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDiagram {
    pub highest: Weight,
    pub mults: BTreeMap<Weight, u64>,
}

impl WeightDiagram {
    pub fn dim(&self) -> u128 {
        self.mults.values().map(|&m| m as u128).sum()
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.mults.get(w).copied().unwrap_or(0)
    }
}

fn check(rs: &RootSystem, w: &Weight) -> Result<()> {
    if w.rank() != rs.rank() {
        return Err(Error::RankMismatch { expected: rs.rank(), got: w.rank() });
    }
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.0.clone()));
    }
    Ok(())
}

/// Weyl dimension formula `Π_{α>0} (λ+ρ, α) / (ρ, α)`.
pub fn weyl_dim(rs: &RootSystem, w: &Weight) -> Result<u128> {
    check(rs, w)?;
    Ok(weyl_dim_unchecked(rs, w))
}

pub(crate) fn weyl_dim_unchecked(rs: &RootSystem, w: &Weight) -> u128 {
    let top = rs.root_pairings(w);
    let bottom = rs.root_pairings(&Weight::zero(rs.rank()));
    let d = top.iter().zip(&bottom).fold(Q::one(), |acc, (a, b)| acc * a / b);
    assert!(d.is_integer(), "Weyl dimension must be an integer");
    d.to_integer().to_u128().expect("dimension fits in u128")
}

/// `-w₀ λ`, the highest weight of the dual representation.
pub fn contragredient(rs: &RootSystem, w: &Weight) -> Result<Weight> {
    check(rs, w)?;
    Ok(rs.apply_minus_w0(w))
}

/// Height of `λ - μ` on the simple roots; `None` if it is not a nonnegative integer combination.
fn depth(rs: &RootSystem, top: &Weight, w: &Weight) -> Option<i64> {
    let mut h = 0;
    for c in rs.simple_coords(&top.sub(w)) {
        if !c.is_integer() || c < Q::zero() {
            return None;
        }
        h += c.to_integer().to_i64()?;
    }
    Some(h)
}

/// Multiplicities of the dominant weights of `V_λ` by Freudenthal's recursion.
pub fn dominant_multiplicities(rs: &RootSystem, w: &Weight) -> Result<BTreeMap<Weight, u64>> {
    check(rs, w)?;
    Ok(dominant_multiplicities_unchecked(rs, w))
}

fn dominant_multiplicities_unchecked(rs: &RootSystem, top: &Weight) -> BTreeMap<Weight, u64> {
    // Dominant weights below λ are connected to λ by subtracting positive roots
    // through dominant weights only, so a search restricted to the chamber finds all of them.
    let mut dominant: BTreeSet<Weight> = BTreeSet::new();
    let mut stack = vec![top.clone()];
    dominant.insert(top.clone());
    while let Some(v) = stack.pop() {
        for a in rs.positive_roots() {
            let u = v.sub(a);
            if u.is_dominant() && !dominant.contains(&u) {
                dominant.insert(u.clone());
                stack.push(u);
            }
        }
    }
    let mut order: Vec<(i64, Weight)> = dominant
        .iter()
        .map(|u| (depth(rs, top, u).expect("dominant weight below the highest"), u.clone()))
        .collect();
    order.sort();

    let rho2 = rs.rho().scaled(2);
    let norm_shift = |u: &Weight| rs.ip(u, &u.add(&rho2));
    let top_level = norm_shift(top);

    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    for (_, mu) in order {
        if &mu == top {
            mult.insert(mu, 1);
            continue;
        }
        let mut num = Q::zero();
        for a in rs.positive_roots() {
            let mut shifted = mu.add(a);
            loop {
                let (d, _) = rs.dominant_rep(&shifted);
                let Some(&m) = mult.get(&d) else { break };
                num += qi(m as i64) * rs.ip(&shifted, a);
                shifted = shifted.add(a);
            }
        }
        num *= qi(2);
        let den = &top_level - norm_shift(&mu);
        let m = num / den;
        assert!(m.is_integer(), "Freudenthal multiplicity must be an integer");
        let m = m.to_integer().to_u64().expect("multiplicity fits in u64");
        assert!(m > 0, "dominant weight below the highest has positive multiplicity");
        mult.insert(mu, m);
    }
    mult
}

/// Full weight diagram of `V_λ`: Freudenthal on the dominant chamber, then Weyl orbits.
pub fn freudenthal(rs: &RootSystem, w: &Weight) -> Result<WeightDiagram> {
    let dom = dominant_multiplicities(rs, w)?;
    let mut mults = BTreeMap::new();
    for (mu, m) in dom {
        for v in rs.orbit(&mu) {
            mults.insert(v, m);
        }
    }
    Ok(WeightDiagram { highest: w.clone(), mults })
}

/// Every dominant `λ` with `c(λ) <= c_max`, in graded-lexicographic order.
///
/// `c` increases strictly along every coordinate direction in the dominant chamber
/// (the inverse Cartan matrix of a simple type has positive entries), so the search
/// can stop a coordinate as soon as the value with all later coordinates zero exceeds the budget.
pub fn dominant_weights_up_to(rs: &RootSystem, c_max: &Q) -> Result<Vec<Weight>> {
    if *c_max < Q::zero() {
        return Err(Error::Domain(format!("negative Casimir budget {c_max}")));
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64; rs.rank()];
    enumerate_coords(rs, c_max, 0, &mut cur, &mut out);
    out.sort_by(|a, b| {
        let sa: i64 = a.0.iter().sum();
        let sb: i64 = b.0.iter().sum();
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
    Ok(out)
}

fn enumerate_coords(rs: &RootSystem, c_max: &Q, i: usize, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
    if i == cur.len() {
        out.push(Weight(cur.clone()));
        return;
    }
    loop {
        if rs.casimir_unchecked(&Weight(cur.clone())) > *c_max {
            break;
        }
        enumerate_coords(rs, c_max, i + 1, cur, out);
        cur[i] += 1;
    }
    cur[i] = 0;
}

/// Memo of dominant multiplicity tables for one root system. Safe to share across threads.
#[derive(Debug)]
pub struct RepCache {
    rs: Arc<RootSystem>,
    tables: Mutex<HashMap<Weight, Arc<BTreeMap<Weight, u64>>>>,
}

impl RepCache {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        RepCache { rs, tables: Mutex::new(HashMap::new()) }
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn dominant(&self, w: &Weight) -> Result<Arc<BTreeMap<Weight, u64>>> {
        check(&self.rs, w)?;
        if let Some(t) = self.tables.lock().unwrap().get(w) {
            return Ok(t.clone());
        }
        let t = Arc::new(dominant_multiplicities_unchecked(&self.rs, w));
        self.tables.lock().unwrap().insert(w.clone(), t.clone());
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn rs(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    #[test]
    fn weyl_dim_examples() {
        let a1 = rs("A1");
        for n in 0..12 {
            assert_eq!(weyl_dim(&a1, &Weight(vec![n])).unwrap(), (n + 1) as u128);
        }
        assert_eq!(weyl_dim(&rs("A2"), &Weight(vec![1, 1])).unwrap(), 8);
        for r in ["B3", "E6", "E8", "F4", "G2"] {
            let r = rs(r);
            assert_eq!(weyl_dim(&r, &Weight::zero(r.rank())).unwrap(), 1);
            assert_eq!(weyl_dim(&r, r.highest_root()).unwrap() as usize, r.dim_g());
        }
        // Smallest nontrivial representations of the exceptional algebras.
        assert_eq!(weyl_dim(&rs("G2"), &Weight(vec![1, 0])).unwrap(), 7);
        assert_eq!(weyl_dim(&rs("E6"), &Weight::fundamental(6, 0)).unwrap(), 27);
        assert_eq!(weyl_dim(&rs("E7"), &Weight::fundamental(7, 6)).unwrap(), 56);
        assert!(weyl_dim(&a1, &Weight(vec![-1])).is_err());
    }

    #[test]
    fn freudenthal_examples() {
        let a1 = rs("A1");
        let d = freudenthal(&a1, &Weight(vec![2])).unwrap();
        let expect: BTreeMap<Weight, u64> =
            [(Weight(vec![2]), 1), (Weight(vec![0]), 1), (Weight(vec![-2]), 1)].into_iter().collect();
        assert_eq!(d.mults, expect);
        let a2 = rs("A2");
        let adj = freudenthal(&a2, &Weight(vec![1, 1])).unwrap();
        assert_eq!(adj.multiplicity(&Weight(vec![0, 0])), 2);
        assert_eq!(adj.dim(), 8);
        let triv = freudenthal(&a2, &Weight(vec![0, 0])).unwrap();
        assert_eq!(triv.mults.len(), 1);
        assert_eq!(triv.multiplicity(&Weight(vec![0, 0])), 1);
    }

    #[test]
    fn freudenthal_total_is_weyl_dim() {
        for (r, ws) in [
            ("A2", vec![vec![3, 1], vec![2, 2], vec![0, 4]]),
            ("B2", vec![vec![1, 1], vec![2, 0], vec![0, 3]]),
            ("G2", vec![vec![1, 0], vec![0, 1], vec![1, 1]]),
            ("A3", vec![vec![1, 1, 1], vec![2, 0, 1]]),
            ("C3", vec![vec![1, 0, 1]]),
            ("F4", vec![vec![0, 0, 0, 1]]),
        ] {
            let r = rs(r);
            for w in ws {
                let w = Weight(w);
                let d = freudenthal(&r, &w).unwrap();
                assert_eq!(d.dim(), weyl_dim(&r, &w).unwrap(), "{r} {w}");
                assert_eq!(d.multiplicity(&w), 1);
            }
        }
    }

    #[test]
    fn diagram_symmetries() {
        let r = rs("A3");
        let w = Weight(vec![2, 1, 0]);
        let d = freudenthal(&r, &w).unwrap();
        let dual = freudenthal(&r, &contragredient(&r, &w).unwrap()).unwrap();
        for (v, m) in &d.mults {
            // Simple reflections preserve the diagram.
            for i in 0..r.rank() {
                assert_eq!(d.multiplicity(&r.reflect(v, i)), *m);
            }
            // Weights of the dual are the negatives.
            assert_eq!(dual.multiplicity(&v.neg()), *m);
        }
    }

    #[test]
    fn second_moment_identity() {
        // Σ_ν ⟨ν,ν⟩ mult(ν) = dim · ⟨λ,λ+2ρ⟩ · rank / dim_g.
        for (r, w) in [("A2", vec![2, 1]), ("B2", vec![1, 1]), ("G2", vec![1, 0]), ("A1", vec![5])] {
            let r = rs(r);
            let w = Weight(w);
            let d = freudenthal(&r, &w).unwrap();
            let lhs = d.mults.iter().fold(Q::zero(), |acc, (v, m)| acc + r.ip(v, v) * qi(*m as i64));
            let rhs = qi(d.dim() as i64) * r.casimir_normalized(&w) * qi(r.rank() as i64) / qi(r.dim_g() as i64);
            assert_eq!(lhs, rhs, "{r} {w}");
        }
    }

    #[test]
    fn dominant_enumeration_examples() {
        let a1 = rs("A1");
        assert_eq!(
            dominant_weights_up_to(&a1, &qi(1)).unwrap(),
            vec![Weight(vec![0]), Weight(vec![1]), Weight(vec![2])]
        );
        assert_eq!(dominant_weights_up_to(&a1, &qi(0)).unwrap(), vec![Weight(vec![0])]);
        let a2 = rs("A2");
        assert_eq!(
            dominant_weights_up_to(&a2, &q(4, 9)).unwrap(),
            vec![Weight(vec![0, 0]), Weight(vec![0, 1]), Weight(vec![1, 0])]
        );
        assert!(dominant_weights_up_to(&a2, &qi(-1)).is_err());
    }

    #[test]
    fn dominant_enumeration_is_complete() {
        let b3 = rs("B3");
        let budget = qi(3);
        let got = dominant_weights_up_to(&b3, &budget).unwrap();
        let mut brute = Vec::new();
        for a in 0..12 {
            for b in 0..12 {
                for c in 0..12 {
                    let w = Weight(vec![a, b, c]);
                    if b3.casimir(&w).unwrap() <= budget {
                        brute.push(w);
                    }
                }
            }
        }
        let mut g = got.clone();
        g.sort();
        brute.sort();
        assert_eq!(g, brute);
    }

    #[test]
    fn contragredient_examples() {
        assert_eq!(contragredient(&rs("A1"), &Weight(vec![3])).unwrap(), Weight(vec![3]));
        assert_eq!(contragredient(&rs("A2"), &Weight(vec![1, 0])).unwrap(), Weight(vec![0, 1]));
        assert_eq!(contragredient(&rs("E6"), &Weight::zero(6)).unwrap(), Weight::zero(6));
        let r = rs("D5");
        let w = Weight(vec![0, 0, 0, 1, 0]);
        let c = contragredient(&r, &w).unwrap();
        assert_eq!(c, Weight(vec![0, 0, 0, 0, 1]));
        assert_eq!(weyl_dim(&r, &c).unwrap(), weyl_dim(&r, &w).unwrap());
    }

    #[test]
    fn cache_agrees_with_direct() {
        let r = Arc::new(rs("B2"));
        let cache = RepCache::new(r.clone());
        let w = Weight(vec![2, 1]);
        assert_eq!(*cache.dominant(&w).unwrap(), dominant_multiplicities(&r, &w).unwrap());
        assert!(Arc::ptr_eq(&cache.dominant(&w).unwrap(), &cache.dominant(&w).unwrap()));
    }
}
