//! Acceptance suite: one PASS/FAIL line per criterion; exits nonzero if any fails.

use std::sync::Arc;
use std::time::Instant;

use natspec_core::branching::EmbeddingSpec;
use natspec_core::group::GroupSpec;
use natspec_core::isolation::{homothety_invariant, isolation_scan, lattice_gamma, torus_search, Volume};
use natspec_core::lattice::{congruent, Lattice};
use natspec_core::library;
use natspec_core::linalg;
use natspec_core::natred::{containment_check, natred_spectrum, BiInvariantOperator, ContainmentStatus, NatRedMetric};
use natspec_core::rational::{q, qi};
use natspec_core::roots::Weight;
use natspec_core::weights;
use natspec_core::Q;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_scale(r: &mut ChaCha8Rng) -> Q {
    q(r.gen_range(1..=9), r.gen_range(1..=6))
}

/// Counts `x` with `xᵀ G x <= cutoff` by scanning the box `|x_i| <= sqrt(cutoff (G⁻¹)_ii)`.
fn box_oracle(gram: &linalg::QMat, cutoff: &Q) -> Option<Vec<(Q, u128)>> {
    let n = gram.len();
    let inv = linalg::inverse(gram)?;
    let bounds: Vec<i64> = (0..n)
        .map(|i| ((cutoff * &inv[i][i]).to_f64().unwrap().sqrt() + 1.0).floor() as i64)
        .collect();
    if bounds.iter().map(|b| (2 * b + 1) as u128).product::<u128>() > 400_000 {
        return None;
    }
    // Exact integer arithmetic after clearing denominators.
    let den = natspec_core::rational::lcm_of_denominators(gram.iter().flatten());
    let dq = Q::from_integer(den.clone());
    let gi: Vec<Vec<i128>> = gram.iter().map(|r| r.iter().map(|x| (x * &dq).to_integer().to_i128().unwrap()).collect()).collect();
    let limit = (cutoff * &dq).floor().to_integer().to_i128().unwrap();
    let mut counts = std::collections::BTreeMap::<i128, u128>::new();
    let mut x: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        let mut s: i128 = 0;
        for i in 0..n {
            for j in 0..n {
                s += gi[i][j] * x[i] as i128 * x[j] as i128;
            }
        }
        if s <= limit {
            *counts.entry(s).or_insert(0) += 1;
        }
        let mut d = 0;
        while d < n {
            x[d] += 1;
            if x[d] <= bounds[d] {
                break;
            }
            x[d] = -bounds[d];
            d += 1;
        }
        if d == n {
            break;
        }
    }
    Some(counts.into_iter().map(|(k, m)| (Q::new(k.into(), den.clone()), m)).collect())
}

fn random_lattice(r: &mut ChaCha8Rng) -> Lattice {
    loop {
        let m = r.gen_range(1..=4usize);
        let den = r.gen_range(1..=3i64);
        let basis: Vec<Vec<Q>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let base = if i == j { r.gen_range(1..=3i64) } else { r.gen_range(-2..=2i64) };
                        q(base, den)
                    })
                    .collect()
            })
            .collect();
        if let Ok(l) = Lattice::from_basis(basis) {
            let v2 = l.volume_squared();
            if v2 >= q(1, 16) && v2 <= qi(9) {
                return l;
            }
        }
    }
}

fn c1_torus_oracle() -> Outcome {
    let mut r = rng(1);
    let cutoff = qi(50);
    let mut done = 0;
    while done < 200 {
        let lat = random_lattice(&mut r);
        let dual = lat.dual();
        let Some(oracle) = box_oracle(dual.gram(), &cutoff) else { continue };
        let table = lat.torus_spectrum(&cutoff).map_err(|e| e.to_string())?;
        ensure!(table.entries == oracle, "lattice {:?}: spectrum differs from box oracle", lat.gram());
        let syst = dual.systole();
        ensure!(table.lambda1() == oracle.get(1).map(|e| &e.0), "lambda1 mismatch with oracle");
        if syst <= cutoff {
            ensure!(table.lambda1() == Some(&syst) && lat.lambda1() == syst, "lambda1 != systole of dual");
        }
        done += 1;
    }
    Ok("200 random lattices, cutoff 50, exact".into())
}

fn c2_casimir() -> Outcome {
    // Round S³ of radius R: eigenvalues k(k+2)/R², multiplicity (k+1)²; SU(2) with −B has R² = 8.
    let su2 = library::group("su2").unwrap().biinvariant_spectrum(&qi(10)).map_err(|e| e.to_string())?;
    let r2 = qi(8);
    let oracle: Vec<(Q, u128)> = (0i64..)
        .map(|k| (qi(k * (k + 2)) / &r2, ((k + 1) * (k + 1)) as u128))
        .take_while(|(e, _)| *e <= qi(10))
        .collect();
    ensure!(su2.entries == oracle, "SU(2) table differs from the sphere oracle");
    ensure!(su2.lambda1() == Some(&q(3, 8)), "SU(2) lambda1");
    let su3 = library::group("su3").unwrap().biinvariant_spectrum(&qi(1)).map_err(|e| e.to_string())?;
    ensure!(su3.lambda1() == Some(&q(4, 9)) && su3.multiplicity(&q(4, 9)) == 18, "SU(3) lambda1 = 4/9 x18");
    Ok(format!("SU(2) {} levels match, SU(3) lambda1 = 4/9 x18", oracle.len()))
}

fn c3_quotient() -> Outcome {
    let so3 = library::group("so3").unwrap().biinvariant_spectrum(&qi(10)).map_err(|e| e.to_string())?;
    let su2 = library::group("su2").unwrap().biinvariant_spectrum(&qi(10)).map_err(|e| e.to_string())?;
    let even: Vec<(Q, u128)> = (0i64..)
        .step_by(2)
        .map(|n| (q(n * (n + 2), 8), ((n + 1) * (n + 1)) as u128))
        .take_while(|(e, _)| *e <= qi(10))
        .collect();
    ensure!(so3.entries == even, "SO(3) is not the even-n part");
    ensure!(so3.lambda1() == Some(&qi(1)) && so3.multiplicity(&qi(1)) == 9, "SO(3) lambda1");
    ensure!(so3.is_contained_in(&su2), "Spec(SO(3)) not contained in Spec(SU(2))");
    Ok("even classes only, lambda1 = 1 x9, contained".into())
}

fn c4_degenerate() -> Outcome {
    let mut r = rng(4);
    let a2: Arc<_> = Arc::new("A2".parse().unwrap());
    let id = Arc::new(EmbeddingSpec::identity(Arc::clone(&a2)));
    let triv = Arc::new(EmbeddingSpec::trivial(Arc::clone(&a2)));
    let cutoff = qi(10);
    for _ in 0..3 {
        let t = random_scale(&mut r);
        let mut t1 = random_scale(&mut r);
        while t1 == t {
            t1 = random_scale(&mut r);
        }
        let m = NatRedMetric::new(id.clone(), t.clone(), vec![t1.clone()]).map_err(|e| e.to_string())?;
        let bi = GroupSpec::simple(a2.clone(), t1.clone()).unwrap().biinvariant_spectrum(&cutoff).unwrap();
        ensure!(natred_spectrum(&m, &cutoff).unwrap().entries == bi.entries, "K=G at t={t}, t1={t1}");
        let m0 = NatRedMetric::new(triv.clone(), t.clone(), vec![]).unwrap();
        let bi0 = GroupSpec::simple(a2.clone(), t.clone()).unwrap().biinvariant_spectrum(&cutoff).unwrap();
        ensure!(natred_spectrum(&m0, &cutoff).unwrap().entries == bi0.entries, "r=0 at t={t}");
    }
    Ok("K=G and r=0 collapse at 3 random scale choices".into())
}

fn c5_branching() -> Outcome {
    let std = library::embedding("a1-in-a2-standard").unwrap();
    let dims = |w: &[i64]| -> Vec<(u128, u64)> {
        let r = std.branch(&Weight(w.to_vec())).unwrap();
        let mut v: Vec<(u128, u64)> = r.terms.iter().map(|(t, m)| (t[0].0[0] as u128 + 1, *m)).collect();
        v.sort();
        v
    };
    ensure!(dims(&[1, 0]) == vec![(1, 1), (2, 1)], "3 -> 2+1");
    ensure!(dims(&[1, 1]) == vec![(1, 1), (2, 2), (3, 1)], "8 -> 3+2+2+1");
    let g = std.ambient().clone();
    let mut r = rng(5);
    let mut n = 0;
    while n < 50 {
        let w = Weight(vec![r.gen_range(0..=15), r.gen_range(0..=15)]);
        let d = weights::weyl_dim(&g, &w).unwrap();
        if d > 2000 {
            continue;
        }
        let res = std.branch(&w).map_err(|e| e.to_string())?;
        let total: u128 = res.terms.iter().map(|(t, m)| (t[0].0[0] as u128 + 1) * *m as u128).sum();
        ensure!(total == d, "dimension identity fails at {w}");
        n += 1;
    }
    let pr = library::embedding("a1-in-a2-principal").unwrap();
    ensure!(std.embedding_index() == [qi(1)], "standard index");
    ensure!(pr.embedding_index() == [qi(4)], "principal index");
    Ok("3 and 8 branch correctly, 50 dimension identities, indices 1 and 4".into())
}

fn c6_containment() -> Outcome {
    let e = Arc::new(library::embedding("a1-in-a2-standard").unwrap());
    let mut lines = Vec::new();
    for t1 in [q(1, 2), q(1, 3)] {
        let m = NatRedMetric::new(e.clone(), qi(1), vec![t1.clone()]).unwrap();
        let spec = natred_spectrum(&m, &qi(8)).unwrap();
        for b in [q(3, 4), qi(2)] {
            let r = containment_check(&m, 0, &b, &qi(8)).map_err(|e| e.to_string())?;
            ensure!(r.status == ContainmentStatus::Witnessed, "t1={t1} b={b}: not witnessed");
            let w = r.witness.unwrap();
            ensure!(&w.zeta + r.gamma.as_ref().unwrap() == w.value, "zeta + gamma != value");
            ensure!(spec.contains(&w.value), "value {} missing from spectrum", w.value);
            lines.push(format!("t1={t1},b={b}:{}", w.value));
        }
    }
    Ok(lines.join(" "))
}

fn c7_fmap() -> Outcome {
    let mut r = rng(7);
    for _ in 0..1000 {
        let a = q(r.gen_range(1..=1000), r.gen_range(1..=97));
        let b = &a + q(r.gen_range(1..=1000), r.gen_range(1..=97));
        let op = BiInvariantOperator::new(vec![a.clone()]).unwrap();
        let back = op.f_map(&b).and_then(|f| f.f_inverse(&b)).map_err(|e| e.to_string())?;
        ensure!(back.a == vec![a.clone()], "round trip failed at a={a}, b={b}");
        let bad = &a - q(r.gen_range(0..=1000), r.gen_range(1..=97));
        if bad <= a {
            ensure!(op.f_map(&bad).is_err(), "inadmissible b={bad} accepted for a={a}");
        }
    }
    Ok("1000 admissible pairs round-trip; inadmissible rejected".into())
}

fn c8_isolation() -> Outcome {
    let e = Arc::new(library::embedding("a1-in-a2-standard").unwrap());
    let m = NatRedMetric::new(e, qi(1), vec![q(1, 2)]).unwrap();
    let rep = isolation_scan(&m, &q(1, 10), 9, &qi(6)).map_err(|e| e.to_string())?;
    ensure!(rep.isospectral_neighbors.is_empty(), "isospectral neighbors found");
    let d = rep.min_table_distance.unwrap_or(0);
    ensure!(d >= 1, "min table distance {d}");
    Ok(format!("{} grid points (9x9 over t, t1), min distance {d}", rep.grid.evaluated))
}

fn c9_torus_search() -> Outcome {
    let start = Instant::now();
    let z2 = Lattice::integer(2);
    let e = lattice_gamma(&z2).entries();
    let found = torus_search(&e, 2, &Q::zero(), &Q::zero()).map_err(|e| e.to_string())?;
    ensure!(found.iter().any(|l| congruent(l, &z2).unwrap()), "Z^2 missing");
    let cutoff = qi(20);
    let tables: Vec<_> = found.iter().map(|l| l.torus_spectrum(&cutoff).unwrap()).collect();
    for i in 0..found.len() {
        for j in i + 1..found.len() {
            if tables[i].entries == tables[j].entries {
                ensure!(congruent(&found[i], &found[j]).unwrap(), "isospectral non-congruent pair");
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 60.0, "took {secs:.1}s");
    Ok(format!("{} candidates, {secs:.2}s", found.len()))
}

fn c10_homothety() -> Outcome {
    let mut r = rng(10);
    let lat = loop {
        let l = random_lattice(&mut r);
        if l.dim() == 3 {
            break l;
        }
    };
    let mut torus_values = Vec::new();
    for s in [q(1, 2), qi(1), q(3, 2), qi(2), q(7, 3)] {
        let ls = lat.scaled(&s).unwrap();
        let cutoff = ls.lambda1();
        let h = homothety_invariant(&ls.torus_spectrum(&cutoff).unwrap(), 3, &Volume::Squared(ls.volume_squared()))
            .unwrap()
            .ok_or("torus lambda1 missing")?;
        torus_values.push(h.power_form);
    }
    ensure!(torus_values.windows(2).all(|w| w[0] == w[1]), "torus invariant varies");
    let su2 = library::group("su2").unwrap();
    let mut group_values = Vec::new();
    for s in [q(1, 3), qi(1), qi(2), q(5, 2), qi(4)] {
        let g = su2.rescaled(&s).unwrap();
        let h = homothety_invariant(&g.biinvariant_spectrum(&g.factor_lambda1(0)).unwrap(), 3, &Volume::Squared(g.volume_scale_squared()))
            .unwrap()
            .ok_or("SU(2) lambda1 missing")?;
        group_values.push(h.power_form);
    }
    ensure!(group_values.windows(2).all(|w| w[0] == w[1]), "SU(2) invariant varies");
    Ok(format!("torus {}, SU(2) {}", torus_values[0], group_values[0]))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 flat-torus oracle equivalence", c1_torus_oracle),
        ("2 Casimir ground truth", c2_casimir),
        ("3 quotient filter", c3_quotient),
        ("4 degenerate reductions", c4_degenerate),
        ("5 branching correctness", c5_branching),
        ("6 containment", c6_containment),
        ("7 F-map round trip", c7_fmap),
        ("8 isolation at cutoff", c8_isolation),
        ("9 torus finiteness", c9_torus_search),
        ("10 homothety invariant", c10_homothety),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {name} ({secs:.2}s): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.2}s): {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
