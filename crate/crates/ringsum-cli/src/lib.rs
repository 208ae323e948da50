//! Command-line front end: parses expressions, builds towers, runs the
//! telescoping solvers and checks every result against direct evaluation.

pub mod args;
pub mod doc;
mod text;

pub use args::{Cli, Command, Options};
pub use doc::ResultDoc;
pub use text::render_text;

use doc::{elem_doc, tower_doc, CheckDoc, CommandEcho, Mismatch, RowDoc, Solution, Timings, Verification};
use ringsum::arith::Field;
use ringsum::builder::{parse, rewrite_product, verify_identity, verify_tower, Builder, Expr, ExprEval, TOWER_VAR};
use ringsum::pflde::{pflde_solve, telescope, PfldeOptions, VBasis};
use ringsum::tower::{BaseField, PGElem, TowerElem};
use ringsum::{Error, Result};
use std::collections::BTreeSet;
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_SOLUTION: i32 = 1;
pub const EXIT_USER_ERROR: i32 = 2;
pub const EXIT_CAP_EXCEEDED: i32 = 3;

/// A failed command: the message for stderr and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(err: Error, origin: &str, src: Option<&str>) -> Self {
        let code = match err {
            Error::LambdaOverflow { .. } | Error::PeriodCapExceeded { .. } => EXIT_CAP_EXCEEDED,
            _ => EXIT_USER_ERROR,
        };
        let mut message = format!("{origin}: {err}");
        if let (Error::Syntax { line, col, .. }, Some(src)) = (&err, src) {
            if let Some(text) = src.lines().nth(line - 1) {
                message.push_str(&format!("\n  {text}\n  {}^", " ".repeat(col - 1)));
            }
        }
        Failure { code, message }
    }
}

/// The exit code that goes with a finished document.
pub fn exit_code(doc: &ResultDoc) -> i32 {
    match doc.status.as_str() {
        "ok" => EXIT_OK,
        _ => EXIT_NO_SOLUTION,
    }
}

/// Runs one command.
pub fn run(cli: &Cli) -> std::result::Result<ResultDoc, Failure> {
    let start = Instant::now();
    let opts = &cli.opts;
    let mut b = setup(opts)?;
    let inputs = cli.cmd.inputs();
    let mut exprs = Vec::with_capacity(inputs.len());
    for (i, src) in inputs.iter().enumerate() {
        let origin = if inputs.len() == 1 { "input".to_string() } else { format!("input {}", i + 1) };
        exprs.push(parse(src).map_err(|e| Failure::new(e, &origin, Some(src)))?);
    }
    let mut out = Outcome::default();
    let res = match &cli.cmd {
        Command::Telescope { .. } => cmd_telescope(&mut b, &exprs[0], opts, &mut out),
        Command::Zeilberger { .. } => cmd_zeilberger(&mut b, &exprs[0], opts, &mut out),
        Command::RewriteProduct { .. } => cmd_rewrite(&mut b, &exprs[0], opts, &mut out),
        Command::Order { .. } => cmd_order(&mut b, &exprs[0], &mut out),
        Command::Verify { .. } => cmd_verify(&b, &exprs[0], &exprs[1], opts, &mut out),
        Command::DescribeTower { .. } => cmd_describe(&mut b, &exprs, &mut out),
    };
    res.map_err(|e| Failure::new(e, cli.cmd.name(), None))?;
    let status = match (&out.solution, &out.verification) {
        (Some(Solution::DescribeTower { .. }), _) if !out.found => "check_failed",
        (_, Some(v)) if v.status != "passed" => {
            if matches!(cli.cmd, Command::Verify { .. }) {
                "mismatch"
            } else {
                "verification_failed"
            }
        }
        _ if out.found => "ok",
        _ => "no_solution",
    };
    let echo = CommandEcho {
        name: cli.cmd.name().into(),
        inputs,
        extra: opts.extra.clone(),
        zeta: opts.zeta,
        params: opts.params.clone(),
        max_order: opts.max_order,
        lambda_cap: opts.lambda_cap,
        verify_range: [opts.verify_range.0, opts.verify_range.1],
    };
    Ok(ResultDoc {
        command: echo,
        status: status.into(),
        tower: tower_doc(&b),
        solution: out.solution,
        verification: out.verification,
        timings: Timings { solve_ms: out.solve_ms, verify_ms: out.verify_ms, total_ms: ms(start) },
    })
}

#[derive(Default)]
struct Outcome {
    found: bool,
    solution: Option<Solution>,
    verification: Option<Verification>,
    solve_ms: f64,
    verify_ms: f64,
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn setup(opts: &Options) -> std::result::Result<Builder, Failure> {
    if opts.zeta == 0 {
        return Err(Failure { code: EXIT_USER_ERROR, message: "--zeta must be a positive integer".into() });
    }
    let base = BaseField { zeta: opts.zeta, params: opts.params.clone(), ..BaseField::default() };
    let mut b = Builder::new(base)
        .map_err(|e| Failure::new(e, "--params", None))?
        .with_options(PfldeOptions { lambda_cap: opts.lambda_cap });
    for (i, src) in opts.extra.iter().enumerate() {
        let origin = format!("--extra #{}", i + 1);
        let e = parse(src).map_err(|e| Failure::new(e, &origin, Some(src)))?;
        b.compile(&e).map_err(|e| Failure::new(e, &origin, None))?;
    }
    Ok(b)
}

/// A variable name not used in any of `exprs` and not a parameter.
fn fresh_var(b: &Builder, exprs: &[&Expr]) -> String {
    let mut used: BTreeSet<String> = b.tower().base.params.iter().cloned().collect();
    used.insert(TOWER_VAR.to_string());
    for e in exprs {
        collect_names(e, &mut used);
    }
    ["b", "N", "M", "B"]
        .iter()
        .map(|s| s.to_string())
        .chain((1..).map(|i| format!("b{i}")))
        .find(|v| !used.contains(v))
        .expect("an unused name exists")
}

fn collect_names(e: &Expr, out: &mut BTreeSet<String>) {
    match e {
        Expr::Int(_) | Expr::Imag | Expr::Zeta => {}
        Expr::Var(v) => {
            out.insert(v.clone());
        }
        Expr::Neg(a) => collect_names(a, out),
        Expr::Add(a, c) | Expr::Sub(a, c) | Expr::Mul(a, c) | Expr::Div(a, c) | Expr::Pow(a, c) | Expr::Binom(a, c) => {
            collect_names(a, out);
            collect_names(c, out);
        }
        Expr::Sum { var, lo, hi, body } | Expr::Prod { var, lo, hi, body } => {
            out.insert(var.clone());
            collect_names(lo, out);
            collect_names(hi, out);
            collect_names(body, out);
        }
    }
}

fn rows_doc(b: &Builder, basis: &VBasis) -> Vec<RowDoc> {
    let t = b.tower();
    basis
        .rows
        .iter()
        .map(|r| RowDoc { c: r.c.iter().map(|c| doc::const_text(c, t)).collect(), g: elem_doc(b, &r.g) })
        .collect()
}

/// Parameter assignments a parametric identity is checked under.
const PARAM_RUNS: usize = 10;

/// Compares `lhs` and `rhs` exactly for `var` over `range` and records the
/// outcome. Parameters are replaced by j + 1/(i+2) for parameter i in run j:
/// non-integer values keep certificate denominators such as k - n - 1 away
/// from zero, and a run that still meets a pole is replaced by the next j.
fn check_identity(b: &Builder, out: &mut Outcome, lhs: &Expr, rhs: &Expr, var: &str, range: (i64, i64)) -> Result<()> {
    let t = Instant::now();
    let (a, hi) = range;
    let params = &b.tower().base.params;
    let text = |c: &ringsum::arith::Const| doc::const_text(c, b.tower());
    let mut runs: Vec<Vec<String>> = Vec::new();
    let mut checked = 0;
    let mut mismatch = None;
    if params.is_empty() {
        let c = verify_identity(&b.evaluator(), lhs, rhs, var, a, hi)?;
        checked = c.checked;
        mismatch = c.mismatch.map(|(at, l, r)| Mismatch { at, parameter_values: vec![], lhs: text(&l), rhs: text(&r) });
    } else {
        let ev = ExprEval::symbolic(b.tower().base.zeta, &[]);
        for j in 1..=(3 * PARAM_RUNS) as i64 {
            if runs.len() == PARAM_RUNS || mismatch.is_some() {
                break;
            }
            let vals: Vec<Expr> = (0..params.len() as i64).map(|i| Expr::div(Expr::int(j * (i + 2) + 1), Expr::int(i + 2))).collect();
            let (mut l, mut r) = (lhs.clone(), rhs.clone());
            for (p, v) in params.iter().zip(&vals) {
                l = l.subst(p, v);
                r = r.subst(p, v);
            }
            let names: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
            let c = match verify_identity(&ev, &l, &r, var, a, hi) {
                Err(Error::PoleAtPoint { .. }) => continue,
                res => res?,
            };
            checked += c.checked;
            if let Some((at, lv, rv)) = c.mismatch {
                mismatch = Some(Mismatch { at, parameter_values: names.clone(), lhs: text(&lv), rhs: text(&rv) });
            }
            runs.push(names);
        }
        if runs.len() < PARAM_RUNS && mismatch.is_none() {
            return Err(Error::Invalid(format!("found only {} parameter values without poles on the range", runs.len())));
        }
    }
    out.verification = Some(Verification {
        var: var.into(),
        range: [a, hi],
        parameter_values: runs,
        checked,
        status: if mismatch.is_none() { "passed" } else { "failed" }.into(),
        mismatch,
    });
    out.verify_ms = ms(t);
    Ok(())
}

/// `e` with the free variable renamed to `k`.
fn in_k(b: &Builder, e: &Expr) -> Result<Expr> {
    let var = b.free_var(e)?;
    Ok(if var == TOWER_VAR { e.clone() } else { e.subst(&var, &Expr::var(TOWER_VAR)) })
}

fn cmd_telescope(b: &mut Builder, f: &Expr, opts: &Options, out: &mut Outcome) -> Result<()> {
    let t0 = Instant::now();
    let f = in_k(b, f)?;
    let fe = b.compile(&f)?;
    let t = b.tower().clone();
    let basis = pflde_solve(&t, &PGElem::one(), std::slice::from_ref(&fe), b.options())?;
    let g = telescope(&t, &fe)?;
    out.solve_ms = ms(t0);
    out.found = g.is_some();
    let (mut certificate, mut identity) = (None, None);
    if let Some(g) = &g {
        let a = opts.verify_range.0;
        let gx = b.to_expr(g);
        let v = fresh_var(b, &[&f, &gx]);
        let lhs = Expr::sum(TOWER_VAR, Expr::int(a), Expr::var(&v), f.clone()).tidy();
        let rhs = Expr::sub(gx.subst(TOWER_VAR, &Expr::offset(&v, 1)), gx.subst(TOWER_VAR, &Expr::int(a))).tidy();
        identity = Some(format!("{lhs} = {rhs}"));
        certificate = Some(elem_doc(b, g));
        check_identity(b, out, &lhs, &rhs, &v, opts.verify_range)?;
    }
    out.solution = Some(Solution::Telescope { summand: elem_doc(b, &fe), basis: rows_doc(b, &basis), certificate, identity });
    Ok(())
}

fn cmd_zeilberger(b: &mut Builder, f: &Expr, opts: &Options, out: &mut Outcome) -> Result<()> {
    let Some(param) = opts.params.first().cloned() else {
        return Err(Error::Invalid("zeilberger needs a parameter; declare it with --params".into()));
    };
    let t0 = Instant::now();
    let f = in_k(b, f)?;
    let rec = b.creative_telescope(&f, &param, opts.max_order)?;
    out.solve_ms = ms(t0);
    out.found = rec.is_some();
    let Some(rec) = rec else {
        out.solution = Some(Solution::Zeilberger {
            parameter: param,
            order: None,
            coefficients: vec![],
            summands: vec![],
            certificate: None,
            relation: None,
            identity: None,
        });
        return Ok(());
    };
    let t = b.tower().clone();
    let coeffs: Vec<Expr> = rec.coeffs.iter().map(|c| ringsum::builder::const_expr(c, &t.base)).collect();
    // sum_i c_i F(n+i, k)
    let mut combo: Option<Expr> = None;
    for (i, c) in coeffs.iter().enumerate() {
        if rec.coeffs[i].is_zero() {
            continue;
        }
        let term = Expr::mul(c.clone(), f.subst(&param, &Expr::offset(&param, i as i64)));
        combo = Some(match combo {
            None => term,
            Some(s) => Expr::add(s, term),
        });
    }
    let combo = combo.unwrap_or_else(|| Expr::int(0)).tidy();
    let gx = b.to_expr(&rec.certificate);
    let relation = format!("{combo} = {}", Expr::sub(gx.subst(TOWER_VAR, &Expr::offset(TOWER_VAR, 1)), gx.clone()).tidy());
    let a = opts.verify_range.0;
    let v = fresh_var(b, &[&combo, &gx]);
    let lhs = Expr::sum(TOWER_VAR, Expr::int(a), Expr::var(&v), combo.clone()).tidy();
    let rhs = Expr::sub(gx.subst(TOWER_VAR, &Expr::offset(&v, 1)), gx.subst(TOWER_VAR, &Expr::int(a))).tidy();
    check_identity(b, out, &lhs, &rhs, &v, opts.verify_range)?;
    out.solution = Some(Solution::Zeilberger {
        parameter: param,
        order: Some(rec.order),
        coefficients: coeffs.iter().map(|c| c.tidy().to_string()).collect(),
        summands: rec.summands.iter().map(|s| elem_doc(b, s)).collect(),
        certificate: Some(elem_doc(b, &rec.certificate)),
        relation: Some(relation),
        identity: Some(format!("{lhs} = {rhs}")),
    });
    Ok(())
}

fn cmd_rewrite(b: &mut Builder, alpha: &Expr, opts: &Options, out: &mut Outcome) -> Result<()> {
    let t0 = Instant::now();
    let alpha = in_k(b, alpha)?;
    let ae = b.compile(&alpha)?;
    let t = b.tower().clone();
    let pg = t.as_pg(&ae).ok_or_else(|| Error::NotInProductGroup(alpha.to_string()))?;
    let basis = pflde_solve(&t, &pg, &[TowerElem::zero()], b.options())?;
    let g = rewrite_product(&t, &pg, b.options())?;
    out.solve_ms = ms(t0);
    out.found = g.is_some();
    let (mut certificate, mut identity) = (None, None);
    if let Some(g) = &g {
        let a = opts.verify_range.0;
        let gx = b.to_expr(g);
        let ev = b.evaluator();
        if ev.eval(&gx, &[(TOWER_VAR.to_string(), a)])?.is_zero() {
            return Err(Error::Invalid(format!("the certificate vanishes at k = {a}; start --verify-range elsewhere")));
        }
        let v = fresh_var(b, &[&alpha, &gx]);
        let lhs = Expr::prod(TOWER_VAR, Expr::int(a), Expr::var(&v), alpha.clone()).tidy();
        let rhs = Expr::div(gx.subst(TOWER_VAR, &Expr::offset(&v, 1)), gx.subst(TOWER_VAR, &Expr::int(a))).tidy();
        identity = Some(format!("{lhs} = {rhs}"));
        certificate = Some(elem_doc(b, g));
        check_identity(b, out, &lhs, &rhs, &v, opts.verify_range)?;
    }
    out.solution = Some(Solution::RewriteProduct { factor: elem_doc(b, &ae), basis: rows_doc(b, &basis), certificate, identity });
    Ok(())
}

fn cmd_order(b: &mut Builder, e: &Expr, out: &mut Outcome) -> Result<()> {
    let t0 = Instant::now();
    let x = b.compile(e)?;
    let t = b.tower().clone();
    let a = t.as_pg(&x).ok_or_else(|| Error::NotInProductGroup(e.to_string()))?;
    let (ord, per, ford) = (t.ord(&a), t.per(&a)?, t.ford(&a)?);
    out.solve_ms = ms(t0);
    out.found = true;
    out.solution = Some(Solution::Order { element: elem_doc(b, &x), ord, per, ford });
    Ok(())
}

fn cmd_verify(b: &Builder, lhs: &Expr, rhs: &Expr, opts: &Options, out: &mut Outcome) -> Result<()> {
    let params = &b.tower().base.params;
    let free: BTreeSet<String> = lhs.free_vars().union(&rhs.free_vars()).filter(|v| !params.contains(v)).cloned().collect();
    if free.len() > 1 {
        let names: Vec<String> = free.into_iter().collect();
        return Err(Error::Invalid(format!("the two sides have several free variables: {}", names.join(", "))));
    }
    let var = free.into_iter().next().unwrap_or_else(|| TOWER_VAR.to_string());
    check_identity(b, out, lhs, rhs, &var, opts.verify_range)?;
    out.found = true;
    out.solution = Some(Solution::Verify { identity: format!("{lhs} = {rhs}") });
    Ok(())
}

fn cmd_describe(b: &mut Builder, exprs: &[Expr], out: &mut Outcome) -> Result<()> {
    let t0 = Instant::now();
    let mut elems = Vec::with_capacity(exprs.len());
    for e in exprs {
        elems.push(b.compile(e)?);
    }
    let report = verify_tower(b.tower(), b.options());
    out.solve_ms = ms(t0);
    out.found = report.ok();
    let checks = report
        .gens
        .iter()
        .map(|g| CheckDoc { name: g.name.clone(), kind: gen_kind(g.kind).into(), ok: g.ok, detail: g.detail.clone() })
        .collect();
    out.solution = Some(Solution::DescribeTower {
        elements: elems.iter().map(|x| elem_doc(b, x)).collect(),
        checks,
        constants_dim: report.constants_dim,
    });
    Ok(())
}

/// Generator kind as written in the result document.
fn gen_kind(label: &str) -> &'static str {
    match label {
        "root" => "R",
        "pi" => "Pi",
        _ => "Sigma",
    }
}
