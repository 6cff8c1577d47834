use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dmagic_core::families::{cycle_power, harary};
use dmagic_core::products::direct_product;
use dmagic_core::{families::cal_g, search, Graph, SearchSpec, Target};

fn instances() -> Vec<(&'static str, Graph, Target)> {
    let magic = Target::Magic { c: None };
    vec![
        ("harary_3_13_magic", harary(3, 13).unwrap(), magic),
        ("cpow_12_2_magic", cycle_power(12, 2).unwrap(), magic),
        (
            "harary_4_12_prog1",
            harary(4, 12).unwrap(),
            Target::Progression { d: Some(1) },
        ),
        (
            "calg3_x_c4_magic",
            direct_product(&cal_g(3).unwrap(), &cycle_power(4, 1).unwrap()),
            magic,
        ),
    ]
}

fn decide(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide");
    group.sample_size(10);
    for (name, g, target) in instances() {
        for (mode, threads) in [("sequential", 1), ("parallel", 0)] {
            let spec = SearchSpec::decide(target).with_threads(threads);
            group.bench_with_input(BenchmarkId::new(mode, name), &g, |b, g| {
                b.iter(|| search(g, &spec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, decide);
criterion_main!(benches);
