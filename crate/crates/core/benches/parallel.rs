use std::collections::BTreeMap;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qdiff_core::exec::Exec;
use qdiff_core::fdist::{check_gf_identity, identity_params, IDENTITIES};
use qdiff_core::fuzz::run_fuzz;
use qdiff_core::liealg::BasisKey;
use qdiff_core::pbwmod::phi_intertwiner_check;
use qdiff_core::QLaurent;

const MODES: [(Exec, &str); 2] = [(Exec::Sequential, "sequential"), (Exec::Parallel, "parallel")];

fn fuzz(c: &mut Criterion) {
    let mut g = c.benchmark_group("fuzz-jacobi-vq");
    g.sample_size(10);
    for (exec, name) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| run_fuzz("jacobi", "vq", 4, 400, 7, exec, None).unwrap())
        });
    }
    g.finish();
}

fn gf_sweep(c: &mut Criterion) {
    let tuples: Vec<(&str, BTreeMap<String, i64>)> = IDENTITIES
        .iter()
        .flat_map(|name| {
            (-2..=2).map(move |k| {
                let ps = identity_params(name)
                    .unwrap()
                    .iter()
                    .map(|p| (p.to_string(), if *p == "r" { -k } else if *p == "k" { k } else { 1 }))
                    .collect();
                (*name, ps)
            })
        })
        .collect();
    let mut g = c.benchmark_group("gf-sweep");
    g.sample_size(10);
    for (exec, name) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                exec.map(&tuples, |(id, ps)| check_gf_identity(id, ps, (-5, 5)).unwrap().passed())
            })
        });
    }
    g.finish();
}

fn phi(c: &mut Criterion) {
    let gens = [BasisKey::G(0, 2), BasisKey::G(0, -1), BasisKey::G(1, 0), BasisKey::G(-1, 1)];
    let xs: Vec<BasisKey> = (-2..=2)
        .flat_map(|i| [BasisKey::loop_of(BasisKey::G(1, 1), i), BasisKey::loop_of(BasisKey::G(0, 2), i)])
        .collect();
    let mut g = c.benchmark_group("phi");
    g.sample_size(10);
    for (exec, name) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| phi_intertwiner_check(QLaurent::from_int(2), QLaurent::one(), &gens, 3, &xs, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, fuzz, gf_sweep, phi);
criterion_main!(benches);
