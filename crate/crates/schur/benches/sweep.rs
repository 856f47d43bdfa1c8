use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use schur::curve_model::{word_to_z, z_to_word};
use schur::psi_engine::{OrientationMode, PsiContext};
use schur::root_lattice::Word;
use schur::sweep::{ordered_map, Execution};

fn words(max_len: usize) -> Vec<Word> {
    Word::all_up_to(3, max_len).into_iter().filter(|w| !w.is_empty()).collect()
}

fn psi_against_tropical(c: &mut Criterion) {
    let ctx = PsiContext::two_complete(OrientationMode::Corrected);
    let mut group = c.benchmark_group("psi_vs_tropical");
    group.sample_size(10);
    for max_len in [8usize, 10] {
        let ws = words(max_len);
        for (name, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel { workers: 0 })] {
            group.bench_with_input(BenchmarkId::new(name, max_len), &ws, |b, ws| {
                b.iter(|| {
                    ordered_map(ws, exec, |w| ctx.psi(w).unwrap() == ctx.tropical_last(w).unwrap())
                        .unwrap()
                        .into_iter()
                        .all(|ok| ok)
                })
            });
        }
    }
    group.finish();
}

fn round_trip(c: &mut Criterion) {
    let ctx = PsiContext::two_complete(OrientationMode::Corrected);
    let ws = words(9);
    let mut group = c.benchmark_group("round_trip");
    group.sample_size(10);
    for (name, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel { workers: 0 })] {
        group.bench_function(name, |b| {
            b.iter(|| {
                ordered_map(&ws, exec, |w| z_to_word(&ctx, &word_to_z(&ctx, w).unwrap()).unwrap() == *w)
                    .unwrap()
                    .into_iter()
                    .all(|ok| ok)
            })
        });
    }
    group.finish();
}

criterion_group!(benches, psi_against_tropical, round_trip);
criterion_main!(benches);
