//! Truncated spectra: sorted exact eigenvalues with multiplicities.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, Q};

/// Unit in which eigenvalues are reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Unit {
    /// Eigenvalues are the literal values.
    Raw,
    /// A stored value `q` stands for the eigenvalue `4π² q`.
    FourPiSquared,
}

impl Unit {
    pub fn as_str(self) -> &'static str {
        match self {
            Unit::Raw => "raw",
            Unit::FourPiSquared => "four-pi-squared",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumTable {
    pub unit: Unit,
    /// Strictly increasing eigenvalues, each with a positive multiplicity.
    pub entries: Vec<(Q, u128)>,
    pub cutoff: Q,
    /// Whether every eigenvalue `<= cutoff` is guaranteed present.
    pub complete: bool,
}

/// Accumulates `(eigenvalue, multiplicity)` contributions and merges equal values exactly.
#[derive(Clone, Debug, Default)]
pub struct SpectrumBuilder {
    acc: BTreeMap<Q, u128>,
}

impl SpectrumBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, eigenvalue: Q, mult: u128) {
        if mult == 0 {
            return;
        }
        let slot = self.acc.entry(eigenvalue).or_insert(0);
        *slot = slot.checked_add(mult).expect("multiplicity overflow");
    }

    pub fn merge(&mut self, other: SpectrumBuilder) {
        for (e, m) in other.acc {
            self.add(e, m);
        }
    }

    pub fn finish(self, unit: Unit, cutoff: Q, complete: bool) -> SpectrumTable {
        SpectrumTable {
            unit,
            entries: self.acc.into_iter().filter(|(e, _)| *e <= cutoff).collect(),
            cutoff,
            complete,
        }
    }
}

impl SpectrumTable {
    /// Checks the table invariants: strictly increasing, bounded by the cutoff, positive multiplicities.
    pub fn check(&self) -> Result<()> {
        for w in self.entries.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::Domain("eigenvalues not strictly increasing".into()));
            }
        }
        for (e, m) in &self.entries {
            if *m == 0 {
                return Err(Error::Domain(format!("zero multiplicity at {e}")));
            }
            if *e > self.cutoff {
                return Err(Error::Domain(format!("eigenvalue {e} above cutoff {}", self.cutoff)));
            }
        }
        Ok(())
    }

    pub fn multiplicity(&self, eigenvalue: &Q) -> u128 {
        self.entries
            .binary_search_by(|(e, _)| e.cmp(eigenvalue))
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    pub fn contains(&self, eigenvalue: &Q) -> bool {
        self.multiplicity(eigenvalue) > 0
    }

    /// Smallest nonzero eigenvalue, if below the cutoff.
    pub fn lambda1(&self) -> Option<&Q> {
        self.entries.iter().map(|(e, _)| e).find(|e| !e.is_zero())
    }

    pub fn total_multiplicity(&self) -> u128 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// Restricts to eigenvalues `<= cutoff` (which must not exceed the current cutoff).
    pub fn truncate(&self, cutoff: &Q) -> SpectrumTable {
        let cutoff = cutoff.min(&self.cutoff).clone();
        SpectrumTable {
            unit: self.unit,
            entries: self.entries.iter().filter(|(e, _)| *e <= cutoff).cloned().collect(),
            cutoff,
            complete: self.complete,
        }
    }

    /// Every entry of `self` appears in `other` with at least the same multiplicity.
    pub fn is_contained_in(&self, other: &SpectrumTable) -> bool {
        self.entries.iter().all(|(e, m)| other.multiplicity(e) >= *m)
    }

    /// Number of `(eigenvalue, multiplicity)` pairs present in exactly one of the two tables.
    pub fn table_distance(&self, other: &SpectrumTable) -> usize {
        let a: std::collections::BTreeSet<_> = self.entries.iter().collect();
        let b: std::collections::BTreeSet<_> = other.entries.iter().collect();
        a.symmetric_difference(&b).count()
    }

    /// Same multiset of eigenvalues (units and cutoffs ignored).
    pub fn same_entries(&self, other: &SpectrumTable) -> bool {
        self.entries == other.entries
    }

    pub fn all_nonnegative(&self) -> bool {
        self.entries.iter().all(|(e, _)| !e.is_negative())
    }

    pub fn to_wire(&self) -> SpectrumWire {
        SpectrumWire {
            complete: self.complete,
            cutoff: fmt_q(&self.cutoff),
            entries: self
                .entries
                .iter()
                .map(|(e, m)| [fmt_q(e), m.to_string()])
                .collect(),
            unit: self.unit,
        }
    }

    pub fn from_wire(w: &SpectrumWire) -> Result<Self> {
        let entries = w
            .entries
            .iter()
            .map(|[e, m]| {
                let m = m
                    .parse::<u128>()
                    .map_err(|_| Error::Parse(format!("bad multiplicity `{m}`")))?;
                Ok((parse_q(e)?, m))
            })
            .collect::<Result<Vec<_>>>()?;
        let t = SpectrumTable {
            unit: w.unit,
            entries,
            cutoff: parse_q(&w.cutoff)?,
            complete: w.complete,
        };
        t.check()?;
        Ok(t)
    }

    /// Canonical JSON: sorted keys, rationals as strings.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire()).expect("spectrum serialization")
    }

    /// `eigenvalue,multiplicity` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("eigenvalue,multiplicity\n");
        for (e, m) in &self.entries {
            let _ = writeln!(s, "{},{}", fmt_q(e), m);
        }
        s
    }

    /// Column-aligned human-readable table.
    pub fn to_pretty(&self) -> String {
        let rows: Vec<(String, String)> =
            self.entries.iter().map(|(e, m)| (fmt_q(e), m.to_string())).collect();
        let w0 = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max("eigenvalue".len());
        let w1 = rows.iter().map(|r| r.1.len()).max().unwrap_or(0).max("multiplicity".len());
        let mut s = String::new();
        let _ = writeln!(
            s,
            "# unit={} cutoff={} complete={}",
            self.unit.as_str(),
            fmt_q(&self.cutoff),
            self.complete
        );
        let _ = writeln!(s, "{:>w0$}  {:>w1$}", "eigenvalue", "multiplicity");
        for (e, m) in rows {
            let _ = writeln!(s, "{e:>w0$}  {m:>w1$}");
        }
        s
    }
}

/// JSON schema of an exported table. Field order is alphabetical so output keys are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumWire {
    pub complete: bool,
    pub cutoff: String,
    pub entries: Vec<[String; 2]>,
    pub unit: Unit,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn table() -> SpectrumTable {
        let mut b = SpectrumBuilder::new();
        b.add(qi(0), 1);
        b.add(q(3, 8), 4);
        b.add(q(6, 16), 0);
        b.add(qi(1), 9);
        b.add(qi(2), 5);
        b.finish(Unit::Raw, qi(1), true)
    }

    #[test]
    fn builder_merges_and_truncates() {
        let t = table();
        assert_eq!(t.entries, vec![(qi(0), 1), (q(3, 8), 4), (qi(1), 9)]);
        t.check().unwrap();
        assert_eq!(t.lambda1(), Some(&q(3, 8)));
        assert_eq!(t.multiplicity(&q(6, 16)), 4);
    }

    #[test]
    fn json_is_canonical() {
        let t = table();
        assert_eq!(
            t.to_json(),
            r#"{"complete":true,"cutoff":"1","entries":[["0","1"],["3/8","4"],["1","9"]],"unit":"raw"}"#
        );
        let back = SpectrumTable::from_wire(&serde_json::from_str(&t.to_json()).unwrap()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn csv_and_pretty() {
        let t = table();
        assert_eq!(t.to_csv(), "eigenvalue,multiplicity\n0,1\n3/8,4\n1,9\n");
        let p = t.to_pretty();
        let lines: Vec<&str> = p.lines().skip(1).collect();
        assert!(lines.iter().all(|l| l.len() == lines[0].len()));
    }

    #[test]
    fn distance_counts_differing_pairs() {
        let a = table();
        let mut b = a.clone();
        b.entries[1].1 = 5;
        assert_eq!(a.table_distance(&b), 2);
        assert_eq!(a.table_distance(&a), 0);
    }
}
