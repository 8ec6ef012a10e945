use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use diracbound::berger::{Berger, ReductiveBlocks};
use diracbound::catalog::build_space;
use diracbound::lie::CasimirQueue;
use diracbound::spin::{dirac_block, lambda1, random_mu, vafa_witten_batch, SearchOptions, TwistData};
use diracbound::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn bench_lambda1(c: &mut Criterion) {
    let mut g = c.benchmark_group("lambda1");
    for id in ["CP3", "S6"] {
        let space = build_space(id).unwrap();
        for (name, exec) in MODES {
            let opts = SearchOptions { exec, ..SearchOptions::default() };
            g.bench_with_input(BenchmarkId::new(name, id), &space, |b, s| b.iter(|| lambda1(s, opts).unwrap()));
        }
    }
    g.finish();
}

fn bench_vafa_witten(c: &mut Criterion) {
    let mut g = c.benchmark_group("vafa_witten_1000");
    for id in ["S4", "CP3"] {
        let space = build_space(id).unwrap();
        let r = lambda1(&space, SearchOptions::default()).unwrap();
        let twist = TwistData::new(&space, &r.minimizers[0], r.value).unwrap();
        let mus = random_mu(space.dim(), 7, 1000);
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, id), &mus, |b, m| b.iter(|| vafa_witten_batch(&twist, m, exec).unwrap()));
        }
    }
    g.finish();
}

fn bench_dirac_blocks(c: &mut Criterion) {
    let mut g = c.benchmark_group("dirac_blocks");
    let space = build_space("CP3").unwrap();
    let weights: Vec<_> = CasimirQueue::new(space.g())
        .take(30)
        .map(|(w, _)| w)
        .filter(|w| !space.admissible_components(w).unwrap().is_empty())
        .collect();
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "CP3"), |b| {
            b.iter(|| weights.iter().map(|w| dirac_block(&space, w, exec).unwrap().hom_dim).sum::<usize>())
        });
    }
    g.finish();
}

fn bench_berger(c: &mut Criterion) {
    let mut g = c.benchmark_group("berger_blocks");
    let b = Berger::shipped().unwrap();
    let sp = b.spinors().unwrap();
    for (name, exec) in MODES {
        g.bench_function(name, |bn| bn.iter(|| ReductiveBlocks::new(&b, &sp, exec).unwrap()));
    }
    g.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10).measurement_time(Duration::from_secs(5)).warm_up_time(Duration::from_secs(1));
    targets = bench_lambda1, bench_vafa_witten, bench_dirac_blocks, bench_berger
}
criterion_main!(benches);
