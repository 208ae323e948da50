use super::*;
use crate::arith::field::rat;
use crate::arith::Cyc;
use crate::pflde::{VBasis, VRow};
use crate::tower::eval_sequence;

fn q(n: i64, d: i64) -> Const {
    Const::rat(rat(n, d))
}

fn iota() -> Const {
    Const::cyc(Cyc::zeta(4))
}

fn kpoly(c: &[i64]) -> KPoly {
    KPoly::from_coeffs(c.iter().map(|&x| Const::int(x)).collect())
}

fn rf(n: &[i64], d: &[i64]) -> RatFun {
    RatFun::new(kpoly(n), kpoly(d))
}

fn elem(terms: &[(Vec<i64>, RatFun)]) -> TowerElem {
    let mut e = TowerElem::zero();
    for (x, c) in terms {
        e.add_term(x.clone(), c.clone());
    }
    e
}

fn constants_only(t: &Tower) -> bool {
    pflde_solve(t, &PGElem::one(), &[], &PfldeOptions::default()).unwrap().dim() == 1
}

fn extended(o: AdjoinOutcome) -> Tower {
    match o {
        AdjoinOutcome::Extended { tower, .. } => {
            assert!(constants_only(&tower));
            tower
        }
        other => panic!("expected an extension, got {other:?}"),
    }
}

fn base(zeta: u32) -> BaseField {
    BaseField::with_zeta(zeta)
}

#[test]
fn adjoining_roots_and_products() {
    let t = Tower::new(base(4));
    let o = adjoin_product(&t, &PGElem::from_const(iota()), "x", iota()).unwrap();
    let t = extended(o);
    assert_eq!(t.gen(0).order(), Some(4));
    let xk = PGElem::new(RatFun::var(), vec![1]);
    let t = extended(adjoin_product(&t, &xk, "t", Const::one()).unwrap());
    assert!(t.gen(1).is_pi());
}

#[test]
fn adjoining_sums_over_sign_towers() {
    let t = Tower::new(base(1));
    let minus_one = PGElem::from_const(Const::int(-1));
    let t = extended(adjoin_product(&t, &minus_one, "x", Const::int(-1)).unwrap());
    let y_alpha = PGElem::new(RatFun::constant(Const::int(-1)), vec![1]);
    let t = extended(adjoin_product(&t, &y_alpha, "y", Const::int(-1)).unwrap());
    assert_eq!(t.gen(1).order(), Some(2));
    // σ(x/k) = -x/(k+1)
    let beta = TowerElem::monomial(vec![1], rf(&[-1], &[1, 1]));
    let t = extended(adjoin_sigma(&t, &beta, "s", Const::int(-1)).unwrap());
    let beta = TowerElem::monomial(vec![1, 1], rf(&[-1], &[1, 1]));
    let t = extended(adjoin_sigma(&t, &beta, "S", Const::int(-1)).unwrap());
    assert!(verify_tower(&t, &PfldeOptions::default()).ok());
}

#[test]
fn collapsing_objects() {
    let t = Tower::new(base(1));
    match adjoin_sigma(&t, &TowerElem::int(1), "s", Const::one()).unwrap() {
        AdjoinOutcome::Collapsed { witness, constant } => {
            assert_eq!(witness.add(&TowerElem::from_const(constant)), TowerElem::k());
        }
        other => panic!("{other:?}"),
    }
    let alpha = PGElem::from_ratfun(rf(&[1, 1], &[0, 1]));
    match adjoin_product(&t, &alpha, "t", Const::one()).unwrap() {
        AdjoinOutcome::Collapsed { witness, constant } => {
            assert_eq!(witness.scale_const(&constant), TowerElem::k());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn algebraic_products_are_rejected() {
    let t = Tower::new(base(1));
    let sq = PGElem::from_ratfun(rf(&[1, 2, 1], &[1]));
    let t = extended(adjoin_product(&t, &sq, "t", Const::one()).unwrap());
    let alpha = PGElem::from_ratfun(rf(&[1, 1], &[1]));
    match adjoin_product(&t, &alpha, "u", Const::one()).unwrap() {
        AdjoinOutcome::Rejected { m, witness } => {
            assert_eq!(m, 2);
            assert!(crate::pmt::verify_witness(&t, &[alpha], &[2.into()], &witness));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn compiling_nested_sums() {
    let mut b = Builder::new(base(1)).unwrap();
    let s = b.compile(&parse("Sum(j,1,k,(-1)^j/j)").unwrap()).unwrap();
    let t = b.tower().clone();
    assert_eq!(t.names(), vec!["x1", "s1"]);
    assert_eq!(s, TowerElem::gen(1));
    assert_eq!(t.gen(1).beta().unwrap(), &TowerElem::monomial(vec![1], rf(&[-1], &[1, 1])));
    assert_eq!(b.meaning(0).to_string(), "(-1)^k");

    let e = b.compile(&parse("Sum(j,1,k,1)").unwrap()).unwrap();
    assert_eq!(e, TowerElem::k());
    assert_eq!(b.tower().len(), 2);
    let c = b.compile(&parse("3/2").unwrap()).unwrap();
    assert_eq!(c, TowerElem::from_const(q(3, 2)));
    // The same sum under another bound variable is recognised.
    assert_eq!(b.compile(&parse("Sum(i,1,k,(-1)^i/i)").unwrap()).unwrap(), s);
    // A different lower bound only shifts by a constant.
    let s2 = b.compile(&parse("Sum(j,2,k,(-1)^j/j)").unwrap()).unwrap();
    assert_eq!(s2, s.add(&TowerElem::int(1)));
}

#[test]
fn compiling_products() {
    let mut b = Builder::new(base(4)).unwrap();
    let p = b.compile(&parse("Prod(j,1,k-1, j*I^j)").unwrap()).unwrap();
    let t = b.tower();
    assert_eq!(t.names(), vec!["x1", "t1"]);
    assert_eq!(t.gen(0).alpha().unwrap(), &PGElem::from_const(iota()));
    assert_eq!(t.gen(1).alpha().unwrap(), &PGElem::new(RatFun::var(), vec![1]));
    assert_eq!(p, TowerElem::gen(1));
    let vals = eval_sequence(t, &p, SeqContext::from_tower(t), 1, 4).unwrap();
    let ev = b.evaluator();
    for (i, v) in vals.iter().enumerate() {
        let direct = ev.eval(&parse("Prod(j,1,k-1, j*I^j)").unwrap(), &[("k".into(), i as i64 + 1)]).unwrap();
        assert_eq!(*v, direct);
    }
    assert!(matches!(
        Builder::new(base(1)).unwrap().compile(&parse("I^k").unwrap()),
        Err(Error::RootGeneratorsUnavailable { r: 4, n: 1 })
    ));
}

#[test]
fn triangular_exponents() {
    let mut b = Builder::new(base(1)).unwrap();
    let y = b.compile(&parse("(-1)^Binom(k+1,2)").unwrap()).unwrap();
    let t = b.tower().clone();
    assert_eq!(t.len(), 2);
    assert_eq!(y, TowerElem::gen(1));
    assert_eq!(t.gen(1).alpha().unwrap(), &PGElem::new(RatFun::constant(Const::int(-1)), vec![1]));
    let same = b.compile(&parse("(-1)^(k*(k+1)/2)").unwrap()).unwrap();
    assert_eq!(same, y);
    assert_eq!(b.tower().len(), 2);
    // (-1)^(k^2) = (-1)^k
    assert_eq!(b.compile(&parse("(-1)^(k^2)").unwrap()).unwrap(), TowerElem::gen(0));
    assert!(b.compile(&parse("(-1)^(k/2)").unwrap()).is_err());
}

/// Tower Q(k)[x][y][S][s] of identity (5) and the summand y k² s.
fn identity_five() -> (Builder, TowerElem) {
    let mut b = Builder::new(base(1)).unwrap();
    b.compile(&parse("Sum(j,1,k,(-1)^Binom(j+1,2)/j)").unwrap()).unwrap();
    let f = b.compile(&parse("(-1)^Binom(k+1,2)*k^2*Sum(j,1,k,(-1)^j/j)").unwrap()).unwrap();
    (b, f)
}

/// g = s y (½(k−1)(k+1)x − ½(k−2)k) + y (¼(1−2k) − ¼x) + ½S over generators x, y, S, s.
fn dfsol() -> TowerElem {
    elem(&[
        (vec![1, 1, 0, 1], RatFun::new(KPoly::from_coeffs(vec![q(-1, 2), q(0, 1), q(1, 2)]), KPoly::one())),
        (vec![0, 1, 0, 1], RatFun::new(KPoly::from_coeffs(vec![q(0, 1), q(1, 1), q(-1, 2)]), KPoly::one())),
        (vec![0, 1], RatFun::new(KPoly::from_coeffs(vec![q(1, 4), q(-1, 2)]), KPoly::one())),
        (vec![1, 1], RatFun::constant(q(-1, 4))),
        (vec![0, 0, 1], RatFun::constant(q(1, 2))),
    ])
}

#[test]
fn identity_five_certificate() {
    let (b, f) = identity_five();
    let t = b.tower();
    assert_eq!(t.names(), vec!["x1", "x2", "s1", "s2"]);
    assert_eq!(f, TowerElem::monomial(vec![0, 1, 0, 1], rf(&[0, 0, 1], &[1])));
    let basis = pflde_solve(t, &PGElem::one(), std::slice::from_ref(&f), &PfldeOptions::default()).unwrap();
    let expect = VBasis {
        n: 1,
        rows: vec![VRow { c: vec![Const::one()], g: dfsol() }, VRow { c: vec![Const::zero()], g: TowerElem::int(1) }],
    };
    assert!(basis.same_span(&expect), "{basis:?}");
    let g = telescope(t, &f).unwrap().unwrap();
    assert!(g.sub(&dfsol()).as_const().is_some());
}

#[test]
fn identity_five_numerically() {
    let (b, f) = identity_five();
    let g = telescope(b.tower(), &f).unwrap().unwrap();
    let ev = b.evaluator();
    let lhs = Expr::sum("k", Expr::int(1), Expr::var("b"), parse("(-1)^Binom(k+1,2)*k^2*Sum(j,1,k,(-1)^j/j)").unwrap());
    let gx = b.to_expr(&g);
    assert_eq!(parse(&gx.to_string()).unwrap(), gx);
    let rhs = Expr::sub(gx.subst("k", &Expr::offset("b", 1)), gx.subst("k", &Expr::int(1)));
    let check = verify_identity(&ev, &lhs, &rhs, "b", 1, 40).unwrap();
    assert!(check.passed(), "{check:?}");
    assert_eq!(check.checked, 40);
    let closed = parse(
        "1/2*Sum(j,1,b,(-1)^Binom(j+1,2)/j) - 1/4*(-1)^Binom(b+1,2)*(-1+(-1)^b+2*b) \
         + (-1)^Binom(b+1,2)*1/2*(b*(b+2)+(-1)^b*(b^2-1))*Sum(j,1,b,(-1)^j/j)",
    )
    .unwrap();
    assert!(verify_identity(&ev, &lhs, &closed, "b", 1, 40).unwrap().passed());
    // The certificate read back through the parser is the same tower element.
    let mut b2 = b.clone();
    assert_eq!(b2.compile(&gx).unwrap(), g);
}

#[test]
fn identity_six_rewrite() {
    let mut b = Builder::new(base(4)).unwrap();
    b.compile(&parse("Prod(j,1,k-1, j*I^j)").unwrap()).unwrap();
    let body = b.compile(&parse("-(I^k)/(1+k)").unwrap()).unwrap();
    let t = b.tower().clone();
    assert_eq!(t.len(), 2);
    let alpha = t.as_pg(&body).unwrap();
    let g = rewrite_product(&t, &alpha, &PfldeOptions::default()).unwrap().unwrap();
    // x(ι + x²)/(k t)
    let expect = elem(&[
        (vec![1, -1], RatFun::new(KPoly::constant(iota()), kpoly(&[0, 1]))),
        (vec![3, -1], rf(&[1], &[0, 1])),
    ]);
    let ratio = t.as_pg(&expect).map(|_| ()).is_none();
    assert!(ratio, "the certificate is a sum of two monomials");
    let basis = pflde_solve(&t, &alpha, &[TowerElem::zero()], &PfldeOptions::default()).unwrap();
    let span = VBasis {
        n: 1,
        rows: vec![VRow { c: vec![Const::zero()], g: expect.clone() }, VRow { c: vec![Const::one()], g: TowerElem::zero() }],
    };
    assert!(basis.same_span(&span));
    assert!(g.scale_const(&Const::one()).sub(&expect).is_zero() || VBasis { n: 1, rows: vec![VRow { c: vec![Const::zero()], g }] }.contains(&span.rows[0]));

    let ev = b.evaluator();
    let lhs = parse("Prod(k,1,b, -(I^k)/(1+k))").unwrap();
    let gx = b.to_expr(&expect);
    let rhs = Expr::div(gx.subst("k", &Expr::offset("b", 1)), gx.subst("k", &Expr::int(1)));
    assert!(verify_identity(&ev, &lhs, &rhs, "b", 1, 40).unwrap().passed());
    // With I^j/j in place of 1/(j*I^j) the sign is off by (-1)^binom(b,2).
    let quoted = parse("(-I/2 - 1/2)*(-(-1)^b + I)/(b*(b+1))*Prod(j,1,b-1,I^j/j)").unwrap();
    let off = verify_identity(&ev, &lhs, &quoted, "b", 1, 40).unwrap();
    assert_eq!(off.mismatch.map(|m| m.0), Some(2));
    let closed = parse("(-I/2 - 1/2)*(-(-1)^b + I)/(b*(b+1))*Prod(j,1,b-1,1/(j*I^j))").unwrap();
    let direct = verify_identity(&ev, &lhs, &closed, "b", 1, 40).unwrap();
    assert!(direct.passed(), "{direct:?}");
}

#[test]
fn trivial_rewrites() {
    let t = Tower::new(base(1));
    let g = rewrite_product(&t, &PGElem::one(), &PfldeOptions::default()).unwrap().unwrap();
    assert!(g.as_const().is_some());
    let alpha = PGElem::from_ratfun(rf(&[1, 1], &[0, 1]));
    let g = rewrite_product(&t, &alpha, &PfldeOptions::default()).unwrap().unwrap();
    let ev = Evaluator::new(&t, SeqContext::from_tower(&t));
    let g1 = ev.ratfun_at(&g.as_ratfun().unwrap(), 1).unwrap();
    for n in 1..=20 {
        let gb = ev.ratfun_at(&g.as_ratfun().unwrap(), n + 1).unwrap();
        assert_eq!(gb.over(&g1), Const::int(n + 1));
    }
    assert!(rewrite_product(&t, &PGElem::from_ratfun(RatFun::var()), &PfldeOptions::default()).unwrap().is_none());
}

fn with_n() -> BaseField {
    BaseField { params: vec!["n".into()], ..BaseField::default() }
}

fn binomial_sum(n: i64, square: bool) -> Const {
    let ev = ExprEval::symbolic(1, &[]);
    let body = if square { "Binom(m,k)^2" } else { "Binom(m,k)" };
    ev.eval(&parse(&format!("Sum(k,0,m,{body})")).unwrap(), &[("m".into(), n)]).unwrap()
}

#[test]
fn binomial_recurrence() {
    let mut b = Builder::new(with_n()).unwrap();
    let rec = b.creative_telescope(&parse("Binom(n,k)").unwrap(), "n", 3).unwrap().unwrap();
    assert_eq!(rec.order, 1);
    assert_eq!(rec.coeffs[1].over(&rec.coeffs[0]), q(-1, 2));
    let t = b.tower().clone();
    assert_eq!(t.len(), 1);
    for n in 1..=10i64 {
        assert!(rec.check(&t, &[rat(n, 1)], 0, n - 1).unwrap(), "n = {n}");
    }
    for n in 0..=12i64 {
        let s = binomial_sum(n, false);
        assert_eq!(s, Const::int(1 << n));
        let c: Vec<Const> = rec.coeffs.iter().map(|c| Const::cyc(c.specialize(&[rat(n, 1)]).unwrap())).collect();
        assert!(c[0].times(&s).plus(&c[1].times(&binomial_sum(n + 1, false))).is_zero());
    }
}

#[test]
fn squared_binomial_recurrence() {
    let mut b = Builder::new(with_n()).unwrap();
    let rec = b.creative_telescope(&parse("Binom(n,k)^2").unwrap(), "n", 2).unwrap().unwrap();
    assert_eq!(rec.order, 1);
    let t = b.tower().clone();
    for n in 1..=10i64 {
        assert!(rec.check(&t, &[rat(n, 1)], 0, n - 1).unwrap(), "n = {n}");
        let c: Vec<Const> = rec.coeffs.iter().map(|c| Const::cyc(c.specialize(&[rat(n, 1)]).unwrap())).collect();
        let s0 = binomial_sum(n, true);
        assert_eq!(s0, ExprEval::symbolic(1, &[]).eval(&parse("Binom(2*m,m)").unwrap(), &[("m".into(), n)]).unwrap());
        assert!(c[0].times(&s0).plus(&c[1].times(&binomial_sum(n + 1, true))).is_zero());
    }
}

#[test]
fn summand_free_of_the_parameter() {
    let mut b = Builder::new(with_n()).unwrap();
    let rec = b.creative_telescope(&parse("1/k").unwrap(), "n", 2).unwrap().unwrap();
    assert_eq!(rec.order, 1);
    assert_eq!(rec.coeffs, vec![Const::one(), Const::int(-1)]);
    assert!(rec.certificate.as_const().is_some());
}

#[test]
fn unrepresentable_shift() {
    let mut b = Builder::new(with_n()).unwrap();
    let err = b.creative_telescope(&parse("n^k").unwrap(), "n", 2).unwrap_err();
    assert_eq!(err, Error::NotRepresentable { index: 1 });
}

#[test]
fn tower_reports() {
    let mut b = Builder::new(base(4)).unwrap();
    b.compile(&parse("Prod(j,1,k-1, j*I^j)").unwrap()).unwrap();
    let report = verify_tower(b.tower(), &PfldeOptions::default());
    assert!(report.ok(), "{report:?}");

    let broken = Tower::new(base(1))
        .adjoin("x", GenKind::Root { alpha: PGElem::one(), order: 2 }, Const::int(1))
        .unwrap();
    let report = verify_tower(&broken, &PfldeOptions::default());
    assert!(!report.ok());
    assert!(!report.gens[0].ok);
}

#[test]
fn identity_checks_report_mismatches() {
    let ev = ExprEval::symbolic(1, &[]);
    let check = verify_identity(&ev, &parse("k").unwrap(), &parse("k+1").unwrap(), "k", 1, 1).unwrap();
    assert_eq!(check.mismatch, Some((1, Const::int(1), Const::int(2))));
}

#[test]
fn certificates_round_trip() {
    let (b, f) = identity_five();
    let g = telescope(b.tower(), &f).unwrap().unwrap();
    for e in [&g, &f, &dfsol()] {
        let x = b.to_expr(e);
        let back = parse(&x.to_string()).unwrap();
        assert_eq!(back, x);
        assert_eq!(b.clone().compile(&back).unwrap(), b.tower().normalize(e));
    }
    let c = Const::param(0).plus(&iota()).over(&Const::param(0).minus(&Const::int(2)));
    let bf = BaseField { zeta: 8, params: vec!["n".into()], ..BaseField::default() };
    let x = const_expr(&c, &bf);
    assert_eq!(ExprEval::symbolic(8, &bf.params).eval(&x, &[]).unwrap(), c);
    let z = Const::cyc(Cyc::zeta(8)).plus(&Const::int(3));
    assert_eq!(ExprEval::symbolic(8, &[]).eval(&const_expr(&z, &bf), &[]).unwrap(), z);
}
