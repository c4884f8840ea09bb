use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cmkl_core::cherednik::{verify_presentation, Rank1Params};
use cmkl_core::{analyze, BigRational, CharacterTable, CoxeterGroup, CoxeterType, Hecke, WeightFunction};

fn kl_basis(c: &mut Criterion) {
    let mut group = c.benchmark_group("kl_basis");
    let cases = [
        ("B3 equal", CoxeterType::B(3), WeightFunction::rational(&[(1, 1); 3])),
        ("B3 2,1,1", CoxeterType::B(3), WeightFunction::rational(&[(2, 1), (1, 1), (1, 1)])),
        ("A4 equal", CoxeterType::A(4), WeightFunction::rational(&[(1, 1); 4])),
        ("I2(8) 3/2,1", CoxeterType::I2(8), WeightFunction::rational(&[(3, 2), (1, 1)])),
    ];
    for (name, ty, w) in cases {
        let g = CoxeterGroup::from_type(ty).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &w, |b, w| {
            b.iter(|| Hecke::new(&g, w.clone()).kl_basis())
        });
    }
    group.finish();
}

fn cells_and_characters(c: &mut Criterion) {
    let g = CoxeterGroup::from_type(CoxeterType::B(3)).unwrap();
    let table = Hecke::new(&g, WeightFunction::rational(&[(2, 1), (1, 1), (1, 1)])).kl_basis();
    c.bench_function("analyze B3 2,1,1", |b| b.iter(|| analyze(&g, &table).unwrap()));
    let d4 = CoxeterGroup::from_type(CoxeterType::D(4)).unwrap();
    c.bench_function("character table D4", |b| b.iter(|| CharacterTable::compute(&d4)));
}

fn rank1(c: &mut Criterion) {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let p = Rank1Params::from_rational_c(4, &[q(1, 2), q(-3, 1), q(2, 5)]).unwrap();
    c.bench_function("presentation d=4", |b| b.iter(|| verify_presentation(&p).unwrap()));
}

criterion_group!(benches, kl_basis, cells_and_characters, rank1);
criterion_main!(benches);
