use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use psm_core::calculus::{normalize, Atom, Order2Sym, Term};
use psm_core::{build, capture_free_paths, paper_scenario, paper_vocabulary, seed_paths, BuildOptions};

fn random_terms(n: usize, max_len: usize) -> Vec<Term> {
    let v = paper_vocabulary();
    let effectus = v.validity_set();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..n)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            Term::new(
                (0..len)
                    .map(|_| {
                        if rng.gen_bool(0.3) {
                            Atom::Order2(*Order2Sym::ALL.choose(&mut rng).unwrap())
                        } else {
                            Atom::Effectus(effectus.choose(&mut rng).unwrap().clone())
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}

fn bench_normalize(c: &mut Criterion) {
    let v = paper_vocabulary();
    for len in [8, 32] {
        let terms = random_terms(256, len);
        c.bench_function(&format!("normalize/256 terms up to {len}"), |b| {
            b.iter(|| terms.iter().map(|t| normalize(t, &v).len()).sum::<usize>())
        });
    }
}

fn bench_build(c: &mut Criterion) {
    let sc = paper_scenario();
    let opts = BuildOptions::default();
    c.bench_function("build/intersection", |b| b.iter(|| build(&sc, &opts).unwrap()));
    let pruned = BuildOptions {
        prune: true,
        ..BuildOptions::default()
    };
    c.bench_function("build/intersection pruned", |b| {
        b.iter(|| build(&sc, &pruned).unwrap())
    });
}

fn bench_paths(c: &mut Criterion) {
    let g = build(&paper_scenario(), &BuildOptions::default()).unwrap();
    let braking = g.id_of(&Term::action("0B")).unwrap().clone();
    let collision = g.id_of(&Term::action("00")).unwrap().clone();
    c.bench_function("paths/seeds to 0B", |b| {
        b.iter_batched(|| braking.clone(), |t| seed_paths(&g, &t).unwrap(), BatchSize::SmallInput)
    });
    c.bench_function("paths/capture-free to 00", |b| {
        b.iter(|| capture_free_paths(&g, &collision).unwrap())
    });
}

criterion_group!(benches, bench_normalize, bench_build, bench_paths);
criterion_main!(benches);
