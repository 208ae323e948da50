//! Randomized property suites. Shared by the `properties` test target and the
//! CLI acceptance target, which runs them with an explicit case count.

#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use ringsum::arith::lattice::hnf;
use ringsum::arith::{Const, Cyc, Field, KPoly, Lattice, RatFun};
use ringsum::builder::{parse, Expr, ExprEval};
use ringsum::error::Error;
use ringsum::pflde::{pflde_solve, telescope, verify_row, PfldeOptions};
use ringsum::pmt::{pmt_solve, verify_witness};
use ringsum::tower::{BaseField, Evaluator, GenKind, PGElem, SeqContext, Tower, TowerElem};

pub type Suite = fn(u32) -> Result<(), String>;

/// Every suite with its name, in a fixed order.
pub const SUITES: [(&str, Suite); 8] = [
    ("automorphism laws", automorphism_laws),
    ("PMT witness soundness", pmt_witnesses),
    ("PFLDE witness soundness and dim V <= n+1", pflde_witnesses),
    ("HNF idempotence", hnf_idempotence),
    ("PMT box equivalence over Q(k)[x]", pmt_box_equivalence),
    ("telescoping certificates against direct evaluation", telescoping_oracle),
    ("expression printing round trip", expr_round_trip),
    ("expression tidying keeps values", expr_tidy),
];

/// Seeded, so a failure reproduces on every run.
fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(cases: u32, s: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&s, test).map_err(|e| e.to_string())
}

fn iota() -> Const {
    Const::cyc(Cyc::zeta(4))
}

fn kpoly(c: &[i64]) -> KPoly {
    KPoly::from_coeffs(c.iter().map(|&x| Const::int(x)).collect())
}

fn k_plus(a: i64) -> RatFun {
    RatFun::from_poly(kpoly(&[a, 1]))
}

fn root(zeta: u32, alpha: Const, order: u64) -> Tower {
    Tower::new(BaseField::with_zeta(zeta))
        .adjoin("x", GenKind::Root { alpha: PGElem::from_const(alpha.clone()), order }, alpha)
        .unwrap()
}

/// The small towers the suites draw from.
fn tower(i: usize) -> Tower {
    match i % 7 {
        0 => Tower::new(BaseField::default()),
        // (-1)^k
        1 => root(1, Const::int(-1), 2),
        // ι^k
        2 => root(4, iota(), 4),
        // H_k
        3 => Tower::new(BaseField::default())
            .adjoin("S", GenKind::Sigma { beta: TowerElem::from_ratfun(RatFun::new(kpoly(&[1]), kpoly(&[1, 1]))) }, Const::int(1))
            .unwrap(),
        // k!
        4 => Tower::new(BaseField::default())
            .adjoin("t", GenKind::Pi { alpha: PGElem::from_ratfun(k_plus(1)) }, Const::int(1))
            .unwrap(),
        // ι^k and Prod(j,1,k-1, j ι^j)
        5 => root(4, iota(), 4).adjoin("t", GenKind::Pi { alpha: PGElem::new(RatFun::var(), vec![1]) }, Const::int(1)).unwrap(),
        // (-1)^k and Sum(j,1,k,(-1)^j/j)
        _ => {
            let beta = TowerElem::monomial(vec![1], RatFun::new(kpoly(&[-1]), kpoly(&[1, 1])));
            root(1, Const::int(-1), 2).adjoin("s", GenKind::Sigma { beta }, Const::int(-1)).unwrap()
        }
    }
}

/// Allowed exponent range per generator: [0, λ) for roots, [-2, 2] for
/// products and [0, 2] for sums.
fn exp_range(t: &Tower, i: usize) -> (i64, i64) {
    let g = t.gen(i);
    match &g.kind {
        GenKind::Root { order, .. } => (0, *order as i64 - 1),
        GenKind::Pi { .. } => (-2, 2),
        GenKind::Sigma { .. } => (0, 2),
    }
}

/// Raw material for one term: exponent seeds, a numerator and denominator shifts.
type TermSeed = (Vec<u8>, Vec<i8>, Vec<u8>, i8);

fn term_seed() -> impl Strategy<Value = TermSeed> {
    (
        prop::collection::vec(any::<u8>(), 3),
        prop::collection::vec(-4i8..=4, 1..=3),
        prop::collection::vec(1u8..=4, 0..=2),
        -2i8..=2,
    )
}

fn elem_seed() -> impl Strategy<Value = Vec<TermSeed>> {
    prop::collection::vec(term_seed(), 0..=3)
}

fn pick(seed: u8, (lo, hi): (i64, i64)) -> i64 {
    lo + (seed as i64).rem_euclid(hi - lo + 1)
}

/// Coefficient a + bι when ι is available, else a.
fn constant(t: &Tower, a: i64, b: i64) -> Const {
    let c = Const::int(a);
    if t.base.zeta % 4 == 0 {
        c.plus(&iota().times(&Const::int(b)))
    } else {
        c
    }
}

/// Element of `t` whose denominators are products of k + a with a >= 1, so it
/// has no pole at k >= 1.
fn build(t: &Tower, seed: &[TermSeed]) -> TowerElem {
    let mut e = TowerElem::zero();
    for (exps, num, den, b) in seed {
        let x: Vec<i64> = (0..t.len()).map(|i| pick(exps[i % exps.len()], exp_range(t, i))).collect();
        let mut numer = KPoly::from_coeffs(num.iter().map(|&c| Const::int(c as i64)).collect());
        numer = numer.mul(&KPoly::from_coeffs(vec![constant(t, 1, *b as i64)]));
        let mut denom = kpoly(&[1]);
        for &a in den {
            denom = denom.mul(&kpoly(&[a as i64, 1]));
        }
        e.add_term(x, RatFun::new(numer, denom));
    }
    t.normalize(&e)
}

/// Product-group element: a root of unity, a product of (k + a)^e and a
/// monomial in the product and root generators.
fn build_pg(t: &Tower, seed: &(u8, Vec<(u8, i8)>, Vec<u8>)) -> PGElem {
    let (c, factors, exps) = seed;
    let unit_const = if t.base.zeta % 4 == 0 { iota().powi(*c as i64 % 4) } else { Const::int(if c % 2 == 0 { 1 } else { -1 }) };
    let mut unit = RatFun::constant(unit_const);
    for &(a, e) in factors {
        let f = k_plus(a as i64 % 4);
        let f = if a as i64 % 4 == 0 { RatFun::var() } else { f };
        unit = unit.times(&f.powi(e as i64));
    }
    let x: Vec<i64> = (0..t.len())
        .map(|i| if t.gen(i).is_sigma() { 0 } else { pick(exps[i % exps.len()], exp_range(t, i)) })
        .collect();
    PGElem::new(unit, x)
}

fn pg_seed() -> impl Strategy<Value = (u8, Vec<(u8, i8)>, Vec<u8>)> {
    (any::<u8>(), prop::collection::vec((any::<u8>(), -2i8..=2), 0..=2), prop::collection::vec(any::<u8>(), 3))
}

/// At most one linear factor, to the power ±1.
fn small_pg_seed() -> impl Strategy<Value = (u8, Vec<(u8, i8)>, Vec<u8>)> {
    (any::<u8>(), prop::collection::vec((any::<u8>(), -1i8..=1), 0..=1), prop::collection::vec(any::<u8>(), 3))
}

fn values(t: &Tower, e: &TowerElem, ks: std::ops::RangeInclusive<i64>) -> Result<Vec<Const>, Error> {
    let mut ev = Evaluator::new(t, SeqContext::from_tower(t));
    ks.map(|k| ev.eval(e, k)).collect()
}

/// σ is a ring automorphism, σ^-1 undoes it, σ fixes constants and σ(a) at k
/// is a at k + 1.
pub fn automorphism_laws(cases: u32) -> Result<(), String> {
    run(cases, (0usize..7, elem_seed(), elem_seed(), -3i64..=3), |(ti, sa, sb, c)| {
        let t = tower(ti);
        let (a, b) = (build(&t, &sa), build(&t, &sb));
        let s = |e: &TowerElem, n| t.sigma(e, n);
        prop_assert_eq!(s(&a.add(&b), 1), s(&a, 1).add(&s(&b, 1)));
        prop_assert_eq!(s(&t.mul(&a, &b), 1), t.mul(&s(&a, 1), &s(&b, 1)));
        prop_assert_eq!(s(&s(&a, 1), -1), a.clone());
        prop_assert_eq!(s(&s(&a, 1), 1), s(&a, 2));
        let cst = TowerElem::from_const(constant(&t, c, 1));
        prop_assert_eq!(s(&cst, 1), cst);
        let now = values(&t, &a, 2..=6).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let shifted = values(&t, &s(&a, 1), 1..=5).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(now, shifted);
        Ok(())
    })
}

/// Every PMT basis row comes with a nonzero g solving σ(g) = f^m g.
pub fn pmt_witnesses(cases: u32) -> Result<(), String> {
    run(cases, (0usize..7, prop::collection::vec(pg_seed(), 1..=3)), |(ti, fs)| {
        let t = tower(ti);
        let f: Vec<PGElem> = fs.iter().map(|s| build_pg(&t, s)).collect();
        let b = pmt_solve(&t, &f).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(b.witnesses.len(), b.lattice.rank());
        for (row, g) in b.lattice.rows().iter().zip(&b.witnesses) {
            prop_assert!(verify_witness(&t, &f, row, g), "row {:?} witness {:?}", row, g);
        }
        Ok(())
    })
}

/// Every PFLDE basis row solves σ(g) - u g = Σ c_i f_i, and there are at most n + 1 rows.
pub fn pflde_witnesses(cases: u32) -> Result<(), String> {
    run(cases, (0usize..7, pg_seed(), prop::collection::vec(elem_seed(), 1..=2)), |(ti, us, fs)| {
        let t = tower(ti);
        let u = build_pg(&t, &us);
        let f: Vec<TowerElem> = fs.iter().map(|s| build(&t, s)).collect();
        let b = pflde_solve(&t, &u, &f, &PfldeOptions::default()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(b.dim() <= f.len() + 1, "dim {} for n = {}", b.dim(), f.len());
        for r in &b.rows {
            prop_assert!(verify_row(&t, &u, &f, r), "row {:?}", r);
        }
        Ok(())
    })
}

/// hnf(hnf(M)) = hnf(M), with the same row lattice as M.
pub fn hnf_idempotence(cases: u32) -> Result<(), String> {
    run(cases, (1usize..=4).prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(-20i64..=20, n), 0..=5))), |(n, rows)| {
        let m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let h = hnf(m.clone(), n);
        prop_assert_eq!(hnf(h.clone(), n), h.clone());
        let lat = Lattice::from_rows(n, h.clone());
        for r in &m {
            prop_assert!(lat.contains(r));
        }
        let back = Lattice::from_rows(n, m);
        for r in &h {
            prop_assert!(back.contains(r));
        }
        Ok(())
    })
}

/// Over Q(k)[x], m is in the PMT lattice exactly when σ(g) = f^m g has a
/// nonzero solution, decided separately for each m in [-3, 3]^n by the
/// PFLDE solver with u = f^m and right-hand side 0.
pub fn pmt_box_equivalence(cases: u32) -> Result<(), String> {
    run(cases, (1usize..=2, prop::collection::vec(small_pg_seed(), 2)), |(ti, fs)| {
        let t = tower(ti);
        let f: Vec<PGElem> = fs.iter().map(|s| build_pg(&t, s)).collect();
        let lat = pmt_solve(&t, &f).map_err(|e| TestCaseError::fail(e.to_string()))?.lattice;
        for m0 in -3i64..=3 {
            for m1 in -3i64..=3 {
                let u = t.pg_mul(&t.pg_pow(&f[0], m0), &t.pg_pow(&f[1], m1));
                let v = pflde_solve(&t, &u, &[TowerElem::zero()], &PfldeOptions::default()).map_err(|e| TestCaseError::fail(e.to_string()))?;
                let solvable = v.rows.iter().any(|r| !r.g.is_zero());
                prop_assert_eq!(lat.contains_i64(&[m0, m1]), solvable, "m = ({}, {})", m0, m1);
            }
        }
        Ok(())
    })
}

/// A certificate g for f satisfies g(k+1) - g(k) = f(k) for k in [1, 50], and
/// f = σ(h) - h always has one.
pub fn telescoping_oracle(cases: u32) -> Result<(), String> {
    run(cases, (0usize..7, elem_seed(), elem_seed(), any::<bool>()), |(ti, sh, sf, exact)| {
        let t = tower(ti);
        let f = if exact {
            let h = build(&t, &sh);
            t.sigma(&h, 1).sub(&h)
        } else {
            build(&t, &sf)
        };
        let g = telescope(&t, &f).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let Some(g) = g else {
            prop_assert!(!exact, "no certificate for a difference");
            return Ok(());
        };
        let gv = values(&t, &g, 1..=51).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let fv = values(&t, &f, 1..=50).map_err(|e| TestCaseError::fail(e.to_string()))?;
        for k in 0..50 {
            prop_assert_eq!(gv[k + 1].minus(&gv[k]), fv[k].clone(), "k = {}", k + 1);
        }
        Ok(())
    })
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..=12).prop_map(Expr::int),
        Just(Expr::Imag),
        Just(Expr::Zeta),
        prop_oneof![Just("k"), Just("n")].prop_map(Expr::var),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Expr::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::sub(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::mul(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::div(a, b)),
            (inner.clone(), -3i64..=3).prop_map(|(a, e)| Expr::pow(a, Expr::int(e))),
            (inner.clone(), 0i64..=3).prop_map(|(a, b)| Expr::binom(a, Expr::int(b))),
            (0i64..=2, inner.clone()).prop_map(|(lo, body)| Expr::sum("j", Expr::int(lo), Expr::var("k"), Expr::add(body, Expr::var("j")))),
            (1i64..=2, inner).prop_map(|(lo, body)| Expr::prod("j", Expr::int(lo), Expr::var("k"), Expr::add(body, Expr::var("j")))),
        ]
    })
}

/// parse(print(e)) = e.
pub fn expr_round_trip(cases: u32) -> Result<(), String> {
    run(cases, expr_strategy(), |e| {
        let text = e.to_string();
        let back = parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(back, e, "printed as {}", text);
        Ok(())
    })
}

/// tidy() changes neither values nor where evaluation fails.
pub fn expr_tidy(cases: u32) -> Result<(), String> {
    let ev = ExprEval::symbolic(4, &["n".to_string()]);
    run(cases, expr_strategy(), |e| {
        let t = e.tidy();
        prop_assert_eq!(parse(&t.to_string()).ok(), Some(t.clone()));
        for k in 0..=3 {
            let at = [("k".to_string(), k)];
            match (ev.eval(&e, &at), ev.eval(&t, &at)) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a, b, "{} vs {} at k = {}", e, t, k),
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "{} gives {:?} but {} gives {:?} at k = {}", e, a, t, b, k),
            }
        }
        Ok(())
    })
}
