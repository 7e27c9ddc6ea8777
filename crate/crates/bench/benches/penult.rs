use criterion::{black_box, criterion_group, criterion_main, Criterion};

use penult_core::constructions::tak_snake;
use penult_core::enumerate::Enumeration;
use penult_core::solver::solve;
use penult_core::strategy::{validate_strategy, Axis, MirrorStrategy, Opening, Role};
use penult_core::{canonical_form, classify, RuleSet, SymTable};

fn classification(c: &mut Criterion) {
    let snake = tak_snake(18).unwrap();
    c.bench_function("classify snake n=18", |b| b.iter(|| classify(black_box(&snake))));
    c.bench_function("canonical_form snake n=18", |b| b.iter(|| canonical_form(black_box(&snake))));
    let table = SymTable::new(RuleSet::Tak, 8);
    c.bench_function("lookup canonical n=8", |b| b.iter(|| table.canonical(black_box(0x0123_4567_89ab_cdef))));
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("enumerate tak n=4", |b| b.iter(|| Enumeration::new(RuleSet::Tak, 4).workers(1).run().unwrap()));
    g.bench_function("enumerate dualtic n=4", |b| {
        b.iter(|| Enumeration::new(RuleSet::DualTic, 4).workers(1).run().unwrap())
    });
    g.bench_function("solve tak n=4", |b| b.iter(|| solve(RuleSet::Tak, 4).unwrap()));
    g.bench_function("solve db 4 dots", |b| b.iter(|| solve(RuleSet::DotsBoxes, 4).unwrap()));
    let s = MirrorStrategy::new(Axis::Origin, Opening::Center, Role::First);
    g.bench_function("validate tak n=5 centre+origin", |b| b.iter(|| validate_strategy(RuleSet::Tak, 5, &s).unwrap()));
    g.finish();
}

criterion_group!(benches, classification, search);
criterion_main!(benches);
