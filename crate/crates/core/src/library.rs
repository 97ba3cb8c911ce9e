//! Named builtin lattices, groups and embeddings.

use std::sync::Arc;

use crate::branching::{EmbeddingData, EmbeddingSpec};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::lattice::Lattice;
use crate::linalg;
use crate::rational::{q, qi};
use crate::roots::RootSystem;

pub const LATTICES: &[&str] = &["identity1", "identity2", "identity3", "identity4", "hexagonal"];
pub const GROUPS: &[&str] = &["su2", "su3", "so3"];
pub const EMBEDDINGS: &[&str] = &["a1-in-a2-standard", "a1-in-a2-principal", "a2-identity", "a1xa1-in-a3"];

fn rs(label: &str) -> Arc<RootSystem> {
    Arc::new(label.parse().expect("builtin root system"))
}

/// `identity<m>` (the lattice ℤ^m, `1 <= m <= 8`) or `hexagonal`.
pub fn lattice(name: &str) -> Result<Lattice> {
    if name == "hexagonal" {
        return Ok(Lattice::hexagonal());
    }
    if let Some(m) = name.strip_prefix("identity").and_then(|m| m.parse::<usize>().ok()) {
        if (1..=8).contains(&m) {
            return Ok(Lattice::integer(m));
        }
    }
    Err(Error::Parse(format!("unknown builtin lattice {name:?}")))
}

pub fn group(name: &str) -> Result<GroupSpec> {
    match name {
        "su2" => GroupSpec::simple(rs("A1"), qi(1)),
        "su3" => GroupSpec::simple(rs("A2"), qi(1)),
        "so3" => GroupSpec::new(vec![rs("A1")], vec![qi(1)], vec![vec![vec![q(1, 2)]]]),
        _ => Err(Error::Parse(format!("unknown builtin group {name:?}"))),
    }
}

/// A builtin name, `identity:<type>` or `trivial:<type>`.
pub fn embedding(name: &str) -> Result<EmbeddingSpec> {
    if let Some(t) = name.strip_prefix("identity:") {
        return Ok(EmbeddingSpec::identity(Arc::new(t.parse()?)));
    }
    if let Some(t) = name.strip_prefix("trivial:") {
        return Ok(EmbeddingSpec::trivial(Arc::new(t.parse()?)));
    }
    let (g, ks, r): (&str, &[&str], Vec<Vec<i64>>) = match name {
        "a1-in-a2-standard" => ("A2", &["A1"], vec![vec![1, 1]]),
        "a1-in-a2-principal" => ("A2", &["A1"], vec![vec![2, 2]]),
        "a2-identity" => ("A2", &["A2"], vec![vec![1, 0], vec![0, 1]]),
        "a1xa1-in-a3" => ("A3", &["A1", "A1"], vec![vec![1, 0, 0], vec![0, 0, 1]]),
        _ => return Err(Error::Parse(format!("unknown builtin embedding {name:?}"))),
    };
    let data = EmbeddingData::new(name, rs(g), ks.iter().map(|k| rs(k)).collect(), linalg::from_i64(&r))?;
    EmbeddingSpec::new(data)
}
