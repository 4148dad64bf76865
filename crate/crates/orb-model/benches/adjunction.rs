use criterion::{criterion_group, criterion_main, Criterion};
use gpd_core::{construct::delooping, Budget, Exec, FinGroup, MapMode};
use orb_model::{adjunction_check_with, build_orb, delta, free_orbspace};

fn adjunction(c: &mut Criterion) {
    let family = [FinGroup::cyclic(2), FinGroup::cyclic(3)];
    let orb = build_orb(&family, MapMode::All).expect("orbit category");
    let x = free_orbspace(&orb, &delta(2, 0));
    let w = delooping(&FinGroup::symmetric(3));
    let mut group = c.benchmark_group("adjunction free Z2 -> BS3");
    group.sample_size(10);
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        group.bench_function(name, |b| {
            b.iter(|| adjunction_check_with(&orb, &x.space, &w, Budget::unlimited(), exec).expect("finite"))
        });
    }
    group.finish();
}

criterion_group!(benches, adjunction);
criterion_main!(benches);
