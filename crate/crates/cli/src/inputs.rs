//! Resolution of lattices, groups, embeddings and metrics from files or builtin names,
//! plus the on-disk branching cache.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use natspec_core::branching::{BranchingResult, EmbeddingData, EmbeddingSpec, EmbeddingWire};
use natspec_core::group::{GroupSpec, GroupWire};
use natspec_core::lattice::{Lattice, LatticeWire};
use natspec_core::library;
use natspec_core::natred::{NatRedMetric, NatRedWire};
use natspec_core::roots::Weight;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const CACHE_ENV: &str = "NATSPEC_CACHE_DIR";

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = read(path)?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Core(natspec_core::Error::Parse(format!("{}: {e}", path.display()))))
}

/// Names containing a path separator or a `.json` suffix are always treated as files.
fn looks_like_path(s: &str) -> bool {
    s.contains('/') || s.contains(std::path::MAIN_SEPARATOR) || s.ends_with(".json")
}

pub fn lattice(file: Option<&PathBuf>, name: Option<&str>) -> Result<Lattice, CliError> {
    match (file, name) {
        (Some(p), _) => Ok(Lattice::from_wire(&parse_json::<LatticeWire>(p)?)?),
        (None, Some(n)) => Ok(library::lattice(n)?),
        (None, None) => Err(CliError::Usage("a lattice file or builtin name is required".into())),
    }
}

pub fn group(file: Option<&PathBuf>, name: Option<&str>) -> Result<GroupSpec, CliError> {
    match (file, name) {
        (Some(p), _) => Ok(GroupSpec::from_wire(&parse_json::<GroupWire>(p)?)?),
        (None, Some(n)) if looks_like_path(n) => group(Some(&PathBuf::from(n)), None),
        (None, Some(n)) => Ok(library::group(n)?),
        (None, None) => Err(CliError::Usage("a group file or builtin name is required".into())),
    }
}

pub fn embedding_data(arg: &str) -> Result<EmbeddingData, CliError> {
    let path = Path::new(arg);
    if looks_like_path(arg) || path.is_file() {
        return Ok(EmbeddingData::from_wire(&parse_json::<EmbeddingWire>(path)?)?);
    }
    Ok(library::embedding(arg)?.data().clone())
}

/// Loads an embedding, seeding its branching cache from `$NATSPEC_CACHE_DIR` when set.
pub fn embedding(arg: &str) -> Result<Arc<EmbeddingSpec>, CliError> {
    let path = Path::new(arg);
    let spec = if looks_like_path(arg) || path.is_file() {
        EmbeddingSpec::from_wire(&parse_json::<EmbeddingWire>(path)?)?
    } else {
        library::embedding(arg)?
    };
    if let Some(file) = cache_file(&spec) {
        if file.is_file() {
            let entries: Vec<CachedBranch> = parse_json(&file)?;
            spec.preload(entries.into_iter().map(CachedBranch::into_result).collect())?;
        }
    }
    Ok(Arc::new(spec))
}

pub fn metric(
    file: Option<&PathBuf>,
    embedding_arg: Option<&str>,
    t: Option<&str>,
    t_i: &[String],
) -> Result<NatRedMetric, CliError> {
    if let Some(p) = file {
        let wire: NatRedWire = parse_json(p)?;
        // Relative embedding paths are resolved against the metric file's directory.
        let base = p.parent().map(Path::to_path_buf).unwrap_or_default();
        return Ok(NatRedMetric::from_wire(&wire, |e| {
            let candidate = base.join(e);
            let arg = if looks_like_path(e) && candidate.is_file() { candidate.to_string_lossy().into_owned() } else { e.to_string() };
            embedding(&arg).map_err(|err| match err {
                CliError::Core(c) => c,
                other => natspec_core::Error::Parse(other.to_string()),
            })
        })?);
    }
    let (Some(e), Some(t)) = (embedding_arg, t) else {
        return Err(CliError::Usage("either --metric or both --embedding and --t are required".into()));
    };
    let t_i = t_i
        .iter()
        .map(|x| natspec_core::rational::parse_q(x))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(NatRedMetric::new(embedding(e)?, natspec_core::rational::parse_q(t)?, t_i)?)
}

#[derive(Serialize, Deserialize)]
struct CachedBranch {
    source: Vec<i64>,
    terms: Vec<(Vec<Vec<i64>>, u64)>,
}

impl CachedBranch {
    fn from_result(r: &BranchingResult) -> Self {
        CachedBranch {
            source: r.source.0.clone(),
            terms: r.terms.iter().map(|(t, m)| (t.iter().map(|w| w.0.clone()).collect(), *m)).collect(),
        }
    }

    fn into_result(self) -> BranchingResult {
        BranchingResult {
            source: Weight(self.source),
            terms: self.terms.into_iter().map(|(t, m)| (t.into_iter().map(Weight).collect(), m)).collect(),
        }
    }
}

fn cache_file(spec: &EmbeddingSpec) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    let digest = Sha256::digest(spec.data().canonical_json().as_bytes());
    Some(PathBuf::from(dir).join(format!("branch-{digest:x}.json")))
}

/// Writes every cached branching of `spec` back to `$NATSPEC_CACHE_DIR`, if set.
pub fn store_cache(spec: &EmbeddingSpec) -> Result<(), CliError> {
    let Some(file) = cache_file(spec) else { return Ok(()) };
    if let Some(dir) = file.parent() {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    }
    let entries: Vec<CachedBranch> = spec.cached_results().iter().map(|r| CachedBranch::from_result(r)).collect();
    let text = serde_json::to_string(&entries).expect("cache entries serialize");
    // Write then rename so concurrent readers never see a partial file.
    let tmp = file.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, text).map_err(|e| CliError::Io(format!("{}: {e}", tmp.display())))?;
    fs::rename(&tmp, &file).map_err(|e| CliError::Io(format!("{}: {e}", file.display())))
}
