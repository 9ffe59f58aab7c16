use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use kron_core::oracle::kronecker;
use kron_core::partition::dense;
use kron_core::pointset::{count_t_with, lattice_permutation_triple, Marginals};
use kron_core::{Exec, PartitionTriple};

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn count_t(c: &mut Criterion) {
    let cases = [
        ("lattice r=3", lattice_permutation_triple(3, &[1, 0, 1, 0, 1, 0, 1]).unwrap()),
        ("size 12", PartitionTriple::from_parts(&[4, 3, 3, 2], &[3, 3, 2, 2, 1, 1], &[5, 4, 2, 1]).unwrap()),
    ];
    let mut g = c.benchmark_group("count_t");
    g.sample_size(10);
    for (name, t) in &cases {
        let m = Marginals::of_triple(t).unwrap();
        for (policy, exec) in POLICIES {
            g.bench_with_input(BenchmarkId::new(*name, policy), &m, |b, m| b.iter(|| count_t_with(black_box(m), exec).unwrap()));
        }
    }
    g.finish();
}

fn kronecker_sweep(c: &mut Criterion) {
    let ps: Vec<_> = dense::partitions_of(7).iter().map(|p| kron_core::Partition::from_dense(p).unwrap()).collect();
    let mut triples = Vec::new();
    for l in &ps {
        for m in &ps {
            for p in &ps {
                triples.push(PartitionTriple::new(l.clone(), m.clone(), p.clone()).unwrap());
            }
        }
    }
    let mut g = c.benchmark_group("kronecker sweep n=7");
    g.sample_size(10);
    for (policy, exec) in POLICIES {
        g.bench_function(policy, |b| b.iter(|| exec.map(&triples, |t| kronecker(t).unwrap())));
    }
    g.finish();
}

criterion_group!(benches, count_t, kronecker_sweep);
criterion_main!(benches);
