//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Random draws are seeded by `CMKL_SEED`; set `CMKL_UPDATE_SNAPSHOTS=1` to
//! rewrite the regression snapshots.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use common::*;
use cmkl_core::cells::{cells, left_preorder};
use cmkl_core::cherednik::{
    cm_multiplicities, inertia_and_cells, kappa_equality_blocks, orbits, verify_presentation, Rank1Algebra,
    Rank1Params,
};
use cmkl_core::conjecture::{b2_regime_report, check_rank1_vs_a1, Regime, SnapshotOutcome, SnapshotStore, Verdict};
use cmkl_core::{
    analyze, BigRational, CellKind, CharacterTable, CoxeterGroup, CoxeterMatrix, CoxeterType, Cyclotomic, Hecke,
    KlCache,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(rng.random_range(-9i64..=9).into(), rng.random_range(1i64..=6).into())
}

fn kl_defining_properties() -> Outcome {
    let instances = kl_instances();
    for (label, g, w) in &instances {
        let table = Hecke::new(g, w.clone()).kl_basis();
        check_kl_table(g, &table).map_err(|e| format!("{label}: {e}"))?;
    }
    Ok(format!("{} (W, L) instances", instances.len()))
}

fn type_a_oracle() -> Outcome {
    let mut counts = Vec::new();
    for (n, expected) in [(2, 4), (3, 10)] {
        let g = CoxeterGroup::from_type(CoxeterType::A(n)).unwrap();
        let table = Hecke::new(&g, cmkl_core::WeightFunction::rational(&vec![(1, 1); n])).kl_basis();
        let graph = left_preorder(&table);
        let left = as_partition(&cells(&g, &graph, CellKind::Left).blocks);
        let right = as_partition(&cells(&g, &graph, CellKind::Right).blocks);
        let by_p = partition_by(&g, |w| robinson_schensted(&one_line(&g, w)).0);
        let by_q = partition_by(&g, |w| robinson_schensted(&one_line(&g, w)).1);
        let matches = (left == by_q && right == by_p) || (left == by_p && right == by_q);
        if !matches || left.len() != expected {
            return Err(format!("S{}: {} left cells, RS classes differ", n + 1, left.len()));
        }
        counts.push(left.len());
    }
    Ok(format!("S3: {} cells, S4: {} cells", counts[0], counts[1]))
}

fn cell_character_sum() -> Outcome {
    let instances = kl_instances();
    for (label, g, w) in &instances {
        let table = Hecke::new(g, w.clone()).kl_basis();
        let a = analyze(g, &table).map_err(|e| format!("{label}: {e}"))?;
        let chars = &a.characters;
        let k = chars.classes().len();
        let mut sum = vec![0i64; k];
        for ch in &a.cell_characters {
            for (s, x) in sum.iter_mut().zip(&ch.values) {
                *s += x;
            }
            // Σ_i m_i χ_i must reproduce the cell character
            let mut rebuilt = vec![Cyclotomic::zero(&chars.field()); k];
            for (i, &m) in ch.multiplicities.iter().enumerate() {
                for (r, x) in rebuilt.iter_mut().zip(&chars.rows()[i]) {
                    *r = &*r + &x.scale(&BigRational::from_integer((m as i64).into()));
                }
            }
            let expect: Vec<Cyclotomic> = ch.values.iter().map(|&x| Cyclotomic::from_int(&chars.field(), x)).collect();
            if rebuilt != expect {
                return Err(format!("{label}: cell {} decomposition does not rebuild its character", ch.block));
            }
        }
        let id_class = chars.classes().class_of(0);
        for (j, &s) in sum.iter().enumerate() {
            let want = if j == id_class { g.len() as i64 } else { 0 };
            if s != want {
                return Err(format!("{label}: cell characters sum to {s} on class {j}, expected {want}"));
            }
        }
    }
    Ok(format!("{} (W, L) instances", instances.len()))
}

fn rank1_presentation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let mut points = 0;
    for d in 2..=4usize {
        for _ in 0..20 {
            let c: Vec<BigRational> = (1..d).map(|_| random_rational(&mut rng)).collect();
            let params = Rank1Params::from_rational_c(d, &c).map_err(|e| e.to_string())?;
            if let Err(residual) = verify_presentation(&params) {
                return Err(format!("d={d}, c={c:?}: residual {residual}"));
            }
            let alg = Rank1Algebra::new(params);
            let du = d as u32;
            for (name, z) in [
                ("eu", alg.euler_element()),
                ("x^d", alg.x_pow(du)),
                ("xi^d", alg.xi_pow(du)),
            ] {
                if !alg.is_central(&z) {
                    return Err(format!("d={d}, c={c:?}: {name} is not central"));
                }
            }
            points += 1;
        }
    }
    Ok(format!("{points} parameter points, seed {}", seed()))
}

fn rank1_cells() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed() ^ 0xce11);
    let mut params = Vec::new();
    for d in 2..=6usize {
        for _ in 0..20 {
            let c: Vec<BigRational> = (1..d).map(|_| random_rational(&mut rng)).collect();
            params.push(Rank1Params::from_rational_c(d, &c).map_err(|e| e.to_string())?);
        }
        // κ with forced coincidences
        let palette = [(0, 1), (1, 1), (-1, 2), (2, 3)];
        for _ in 0..20 {
            let mut kappa: Vec<BigRational> = (1..d)
                .map(|_| {
                    let (n, m) = palette[rng.random_range(0..palette.len())];
                    BigRational::new(n.into(), m.into())
                })
                .collect();
            let s: BigRational = kappa.iter().sum();
            kappa.push(-s);
            params.push(Rank1Params::from_rational_kappa(d, &kappa).map_err(|e| e.to_string())?);
        }
    }
    let mut merged = 0;
    for p in &params {
        let d = p.d();
        let data = inertia_and_cells(p);
        let by_orbit = orbits(d, &data.inertia);
        let by_kappa = kappa_equality_blocks(p.kappa());
        if by_orbit != by_kappa {
            return Err(format!("d={d}: orbits {by_orbit:?} vs κ-classes {by_kappa:?}"));
        }
        let distinct: BTreeSet<String> = p.kappa().iter().map(|k| k.to_string()).collect();
        if data.cells.len() != data.fiber.len() || data.fiber.len() != distinct.len() {
            return Err(format!("d={d}: {} cells, fiber of size {}", data.cells.len(), data.fiber.len()));
        }
        let m = cm_multiplicities(&data);
        for j in 0..d {
            let total: u32 = m.iter().map(|row| row[j] as u32).sum();
            if total != 1 {
                return Err(format!("d={d}: det^{j} has total multiplicity {total}"));
            }
        }
        if data.cells.len() < d {
            merged += 1;
        }
    }
    Ok(format!("{} parameter points, {merged} with merged cells, seed {}", params.len(), seed()))
}

fn conjecture_rank1() -> Outcome {
    let cache = KlCache::disabled();
    let mut out = Vec::new();
    for (n, m) in [(0, 1), (1, 2), (1, 1), (3, 1), (7, 5)] {
        let c = BigRational::new(n.into(), m.into());
        let r = check_rank1_vs_a1(&c, &cache).map_err(|e| e.to_string())?;
        if r.verdict() != Verdict::Match {
            return Err(format!("c={c}: MISMATCH {:?}", r.components));
        }
        out.push(format!("c={c} MATCH"));
    }
    Ok(out.join(", "))
}

fn snapshot_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/snapshots/b2")
}

fn b2_regimes() -> Outcome {
    let cache = KlCache::disabled();
    let update = std::env::var_os("CMKL_UPDATE_SNAPSHOTS").is_some_and(|v| v != "0");
    let store = SnapshotStore::new(snapshot_dir(), update);
    let mut summary = Vec::new();
    let mut created = 0;
    for regime in Regime::ALL {
        let mut partitions = BTreeSet::new();
        let mut two_sided = BTreeSet::new();
        for (a, b) in regime.samples() {
            let r = b2_regime_report(&a, &b, &cache).map_err(|e| format!("a={a}, b={b}: {e}"))?;
            if !r.refinement_holds() {
                return Err(format!("a={a}, b={b}: left cells do not refine two-sided cells"));
            }
            match store.check(&r.key, &r.to_json()).map_err(|e| e.to_string())? {
                SnapshotOutcome::Created => created += 1,
                SnapshotOutcome::Matched => {}
                SnapshotOutcome::Changed { path } => {
                    return Err(format!("a={a}, b={b}: output differs from snapshot {}", path.display()))
                }
            }
            partitions.insert(r.left_partition());
            two_sided.insert(r.analysis.two_sided.len());
        }
        if regime.is_open() && (partitions.len() != 1 || two_sided.len() != 1) {
            return Err(format!("{}: cell partition varies inside the regime", regime.name()));
        }
        let left = partitions.iter().next().map_or(0, |p| p.len());
        summary.push(format!("{}: {left} left/{} two-sided", regime.name(), two_sided.iter().next().unwrap()));
    }
    Ok(format!("{}; {created} snapshots written", summary.join(", ")))
}

fn orthogonality(t: &CharacterTable) -> Result<(), String> {
    let field = t.field();
    let order = Cyclotomic::from_int(&field, t.group_order() as i64);
    let k = t.classes().len();
    let rows = t.rows();
    for i in 0..k {
        for j in 0..k {
            let mut s = Cyclotomic::zero(&field);
            for c in 0..k {
                let term = &rows[i][c] * &rows[j][c].conj();
                s = &s + &term.scale(&BigRational::from_integer((t.classes().size(c) as i64).into()));
            }
            let want = if i == j { order.clone() } else { Cyclotomic::zero(&field) };
            if s != want {
                return Err(format!("row relation ({i},{j}) gives {s}"));
            }
            let mut col = Cyclotomic::zero(&field);
            for row in rows {
                col = &col + &(&row[i] * &row[j].conj());
            }
            let want = if i == j {
                Cyclotomic::from_int(&field, (t.group_order() / t.classes().size(i)) as i64)
            } else {
                Cyclotomic::zero(&field)
            };
            if col != want {
                return Err(format!("column relation ({i},{j}) gives {col}"));
            }
        }
    }
    Ok(())
}

fn character_tables() -> Outcome {
    let mut groups: Vec<(String, CoxeterGroup)> = [
        CoxeterType::A(1),
        CoxeterType::A(2),
        CoxeterType::A(3),
        CoxeterType::A(4),
        CoxeterType::B(2),
        CoxeterType::B(3),
        CoxeterType::B(4),
        CoxeterType::D(4),
    ]
    .into_iter()
    .chain((3..=8).map(CoxeterType::I2))
    .map(|ty| (ty.to_string(), CoxeterGroup::from_type(ty).unwrap()))
    .collect();
    let h3 = CoxeterMatrix::new(vec![vec![1, 5, 2], vec![5, 1, 3], vec![2, 3, 1]]).unwrap();
    groups.push(("H3".into(), CoxeterGroup::build(&h3, 10_000).unwrap()));
    for (name, g) in &groups {
        let t = CharacterTable::compute(g);
        if t.num_characters() != t.classes().len() {
            return Err(format!("{name}: table is not square"));
        }
        orthogonality(&t).map_err(|e| format!("{name}: {e}"))?;
    }
    for n in 1..=3 {
        check_type_a_table(n)?;
    }
    Ok(format!("{} tables orthogonal; A1–A3 match Murnaghan–Nakayama", groups.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("KL defining properties", kl_defining_properties),
        ("type-A Robinson–Schensted oracle", type_a_oracle),
        ("cell characters sum to the regular character", cell_character_sum),
        ("rank-1 center presentation", rank1_presentation),
        ("rank-1 Calogero–Moser cells", rank1_cells),
        ("d = 2 against A1", conjecture_rank1),
        ("B2 parameter regimes", b2_regimes),
        ("character tables", character_tables),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} [{detail}] ({secs} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {e} ({secs} ms)", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
