use criterion::{black_box, criterion_group, criterion_main, Criterion};

use cpa_core::catalog::{load_builtin_catalog, verify_entry, CatalogEntry};
use cpa_core::invariants::{solve, InvariantKind};
use cpa_core::operators::{exhaustive_solutions_mod_p, FamilyKind, OperatorKind, DEFAULT_LIMIT};

fn entry(pred: impl Fn(&CatalogEntry) -> bool) -> CatalogEntry {
    load_builtin_catalog().unwrap().into_iter().find(pred).unwrap()
}

fn nullspace(c: &mut Criterion) {
    let d4 = entry(|e| e.pair.dim() == 4 && e.pair.vars().is_empty());
    let rational = d4.pair.to_rational().unwrap();
    c.bench_function("derivations/d4/rational", |b| {
        b.iter(|| solve(InvariantKind::Derivation, black_box(&rational)))
    });
    let param = entry(|e| !e.pair.vars().is_empty());
    c.bench_function("quasi-centroid/parametric", |b| {
        b.iter(|| solve(InvariantKind::QuasiCentroid, black_box(&param.pair)))
    });
}

fn oracle(c: &mut Criterion) {
    let d3 = entry(|e| e.pair.dim() == 3 && e.pair.vars().is_empty()).pair.to_rational().unwrap();
    let kind = FamilyKind::Operator(OperatorKind::RotaBaxter);
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    g.bench_function("rota-baxter/d3/p3", |b| {
        b.iter(|| exhaustive_solutions_mod_p(kind, black_box(&d3), 3, DEFAULT_LIMIT).unwrap())
    });
    g.finish();
}

fn verify(c: &mut Criterion) {
    let d4 = entry(|e| e.pair.dim() == 4);
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    g.bench_function("entry/d4", |b| b.iter(|| verify_entry(black_box(&d4))));
    g.finish();
}

criterion_group!(benches, nullspace, oracle, verify);
criterion_main!(benches);
