use criterion::{criterion_group, criterion_main, Criterion};
use ringsum::arith::{Const, Cyc, KPoly, RatFun};
use ringsum::builder::{parse, rewrite_product, Builder};
use ringsum::pflde::telescope;
use ringsum::pmt::pmt_solve;
use ringsum::tower::{BaseField, GenKind, PGElem, Tower};
use std::hint::black_box;

fn builder(zeta: u32, params: &[&str], exprs: &[&str]) -> Builder {
    let params = params.iter().map(|p| p.to_string()).collect();
    let mut b = Builder::new(BaseField { zeta, params, ..BaseField::default() }).unwrap();
    for e in exprs {
        b.compile(&parse(e).unwrap()).unwrap();
    }
    b
}

fn double_sum(c: &mut Criterion) {
    let extra = "Sum(j,1,k,(-1)^Binom(j+1,2)/j)";
    let summand = "(-1)^Binom(k+1,2)*k^2*Sum(j,1,k,(-1)^j/j)";
    let mut b = builder(1, &[], &[extra]);
    let f = b.compile(&parse(summand).unwrap()).unwrap();
    c.bench_function("telescope alternating double sum", |bn| {
        bn.iter(|| telescope(b.tower(), black_box(&f)).unwrap().unwrap())
    });
    c.bench_function("compile and telescope harmonic sum", |bn| {
        bn.iter(|| {
            let mut b = builder(1, &[], &[]);
            let f = b.compile(&parse("k*Sum(j,1,k,1/j)").unwrap()).unwrap();
            telescope(b.tower(), &f).unwrap().unwrap()
        })
    });
}

fn product(c: &mut Criterion) {
    let mut b = builder(4, &[], &["Prod(j,1,k-1,j*I^j)"]);
    let a = b.compile(&parse("-(I^k)/(1+k)").unwrap()).unwrap();
    let t = b.tower().clone();
    let pg = t.as_pg(&a).unwrap();
    c.bench_function("rewrite product over Q(I)", |bn| {
        bn.iter(|| rewrite_product(&t, black_box(&pg), b.options()).unwrap().unwrap())
    });
}

fn lattices(c: &mut Criterion) {
    let iota = Const::cyc(Cyc::zeta(4));
    let t = Tower::new(BaseField::with_zeta(4))
        .adjoin("x", GenKind::Root { alpha: PGElem::from_const(iota.clone()), order: 4 }, iota)
        .unwrap();
    let shifted = RatFun::new(KPoly::from_coeffs(vec![Const::int(-1)]), KPoly::from_coeffs(vec![Const::int(1), Const::int(1)]));
    let f = [PGElem::new(RatFun::var(), vec![1]), PGElem::new(shifted, vec![1])];
    c.bench_function("PMT over a root block", |bn| bn.iter(|| pmt_solve(&t, black_box(&f)).unwrap()));
}

fn recurrence(c: &mut Criterion) {
    let f = parse("Binom(n,k)").unwrap();
    let mut group = c.benchmark_group("creative telescoping");
    group.sample_size(20);
    group.bench_function("Binom(n,k)", |bn| {
        bn.iter(|| builder(1, &["n"], &[]).creative_telescope(&f, "n", 4).unwrap().unwrap())
    });
    group.bench_function("Binom(n,k)^2", |bn| {
        let f = parse("Binom(n,k)^2").unwrap();
        bn.iter(|| builder(1, &["n"], &[]).creative_telescope(&f, "n", 4).unwrap().unwrap())
    });
    group.finish();
}

criterion_group!(benches, double_sum, product, lattices, recurrence);
criterion_main!(benches);
