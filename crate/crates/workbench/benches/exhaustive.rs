//! Exhaustive workloads on the sequential and the rayon path.

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use hofib_core::exec;
use hofib_core::instances::{m_omega, xm_cyclic_conjugation};
use hofib_core::nerve::{geometric_nerve, NerveVariant};
use hofib_core::xmod::compare_nerves;

fn both(c: &mut Criterion, name: &str, mut f: impl FnMut()) {
    let mut g = c.benchmark_group(name);
    g.sample_size(10);
    for (label, on) in [("sequential", false), ("parallel", true)] {
        exec::set_parallel(on);
        g.bench_function(label, |b| b.iter(&mut f));
    }
    exec::set_parallel(true);
    g.finish();
}

fn benches(c: &mut Criterion) {
    let b = m_omega().delooping();
    both(c, "lax nerve of ΣMω to dimension 4", || {
        geometric_nerve(&b, NerveVariant::Lax, 4).unwrap();
    });
    both(c, "bicategory axioms of ΣMω", || {
        assert!(b.validate().is_valid());
    });
    let x = xm_cyclic_conjugation(3);
    both(c, "cocycle nerve of (Z3,Z3,id) against β to dimension 4", || {
        compare_nerves(&Arc::clone(&x), 4).unwrap();
    });
}

criterion_group!(exhaustive, benches);
criterion_main!(exhaustive);
