//! Problem PFLDE: a K-basis of all `(c_1, ..., c_n, g)` with
//! `σ(g) - u g = c_1 f_1 + ... + c_n f_n`, and the telescoping problems built on it.

pub mod linear;
pub mod rational;
pub mod reduce;

use crate::arith::{Const, Field, RatFun};
use crate::error::{Error, Result};
use crate::tower::{PGElem, Tower, TowerElem};
use reduce::Solver;
pub use reduce::{sigma_window, NestedLift};

/// One solution `(c, g)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VRow {
    pub c: Vec<Const>,
    pub g: TowerElem,
}

/// K-basis of a solution space, in reduced echelon form with the c-part leading.
#[derive(Clone, Debug, PartialEq)]
pub struct VBasis {
    pub n: usize,
    pub rows: Vec<VRow>,
}

impl VBasis {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// True if both bases span the same K-space.
    pub fn same_span(&self, o: &VBasis) -> bool {
        self.n == o.n && linear::canonical_rows(self.n, &self.rows) == linear::canonical_rows(o.n, &o.rows)
    }

    /// True if `row` lies in the span.
    pub fn contains(&self, row: &VRow) -> bool {
        let mut rows = self.rows.clone();
        rows.push(row.clone());
        linear::canonical_rows(self.n, &rows).len() == linear::canonical_rows(self.n, &self.rows).len()
    }
}

/// Interval `[a, b]` of exponents of the top generator that a solution can use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeWindow {
    pub a: i64,
    pub b: i64,
    /// `max(b, b + m)` bounds the top exponent of every `f_i`.
    pub technical_cond: bool,
}

impl DegreeWindow {
    pub fn is_empty(&self) -> bool {
        self.b < self.a
    }
}

#[derive(Clone, Debug)]
pub struct PfldeOptions {
    /// Largest λ accepted by the σ^λ lift over a root block.
    pub lambda_cap: u64,
}

impl Default for PfldeOptions {
    fn default() -> Self {
        PfldeOptions { lambda_cap: 4096 }
    }
}

/// Checks `σ(g) - u g = sum c_i f_i` exactly.
pub fn verify_row(t: &Tower, u: &PGElem, f: &[TowerElem], row: &VRow) -> bool {
    let mut r = t.sigma(&row.g, 1).sub(&t.mul(&u.to_elem(), &row.g));
    for (ci, fi) in row.c.iter().zip(f) {
        r = r.sub(&t.normalize(fi).scale_const(ci));
    }
    r.is_zero()
}

fn check_input(t: &Tower, u: &PGElem, f: &[TowerElem]) -> Result<()> {
    if !t.in_product_group(u, t.len()) {
        return Err(Error::NotInProductGroup("u".into()));
    }
    if let Some(i) = f.iter().position(|x| x.level() > t.len()) {
        return Err(Error::Invalid(format!("entry {i} involves generators outside the tower")));
    }
    Ok(())
}

/// Runs `run` on a tower whose root generators come first, translating the
/// inputs and mapping the solutions back.
fn with_roots_first(
    t: &Tower,
    u: &PGElem,
    f: &[TowerElem],
    run: impl FnOnce(&Tower, &PGElem, &[TowerElem]) -> Result<Vec<VRow>>,
) -> Result<Vec<VRow>> {
    let f: Vec<TowerElem> = f.iter().map(|x| t.normalize(x)).collect();
    match t.roots_first()? {
        None => run(t, u, &f),
        Some((tw, perm)) => {
            let mut inv = vec![0; perm.len()];
            for (old, &new) in perm.iter().enumerate() {
                inv[new] = old;
            }
            let fw: Vec<TowerElem> = f.iter().map(|x| x.permute(&perm)).collect();
            let rows = run(&tw, &u.permute(&perm), &fw)?;
            Ok(rows.into_iter().map(|r| VRow { c: r.c, g: r.g.permute(&inv) }).collect())
        }
    }
}

/// Solves Problem PFLDE for `u` in the product group and `f` in the tower.
pub fn pflde_solve(t: &Tower, u: &PGElem, f: &[TowerElem], opts: &PfldeOptions) -> Result<VBasis> {
    check_input(t, u, f)?;
    let rows = with_roots_first(t, u, f, |tw, uw, fw| Solver { t: tw, opts }.solve(tw.len(), uw, fw))?;
    Ok(VBasis { n: f.len(), rows: linear::canonical_rows(f.len(), &rows) })
}

/// Problem PFLDE over K(k) with `σ(k) = k + s`.
pub fn pflde_base_rational(u: &RatFun, f: &[RatFun], s: i64) -> VBasis {
    let rows: Vec<VRow> = rational::solve_base(u, f, s)
        .into_iter()
        .map(|(c, g)| VRow { c, g: TowerElem::from_ratfun(g) })
        .collect();
    VBasis { n: f.len(), rows: linear::canonical_rows(f.len(), &rows) }
}

fn top_index(t: &Tower) -> Result<usize> {
    t.len().checked_sub(1).ok_or_else(|| Error::Invalid("tower has no generators".into()))
}

/// Degree window for a Σ-generator on top of `t`.
pub fn degree_bound_sigma(t: &Tower, f: &[TowerElem]) -> Result<DegreeWindow> {
    let top = top_index(t)?;
    if !t.gen(top).is_sigma() {
        return Err(Error::Invalid("top generator is not a sum generator".into()));
    }
    Ok(sigma_window(f, top))
}

/// Degree window for a Π-generator on top of `t`.
pub fn degree_bound_pi(t: &Tower, u: &PGElem, f: &[TowerElem], opts: &PfldeOptions) -> Result<DegreeWindow> {
    let top = top_index(t)?;
    if !t.gen(top).is_pi() {
        return Err(Error::Invalid("top generator is not a product generator".into()));
    }
    check_input(t, u, f)?;
    Solver { t, opts }.pi_window(t.len(), u, f)
}

/// Solutions with the top exponent of `g` restricted to the window.
pub fn degree_reduce(
    t: &Tower,
    u: &PGElem,
    f: &[TowerElem],
    window: &DegreeWindow,
    opts: &PfldeOptions,
) -> Result<VBasis> {
    let top = top_index(t)?;
    if t.gen(top).is_root() {
        return Err(Error::Invalid("top generator is a root generator".into()));
    }
    check_input(t, u, f)?;
    let f: Vec<TowerElem> = f.iter().map(|x| t.normalize(x)).collect();
    if t.roots_first()?.is_some() {
        return Err(Error::UnsupportedBase("root generators must come first".into()));
    }
    let rows = Solver { t, opts }.degree_reduce(t.len(), u, &f, window)?;
    Ok(VBasis { n: f.len(), rows: linear::canonical_rows(f.len(), &rows) })
}

/// Root generator on top of `t` whose quotient does not involve `u`'s top exponent.
pub fn pflde_root_single(t: &Tower, u: &PGElem, f: &[TowerElem], opts: &PfldeOptions) -> Result<VBasis> {
    let top = top_index(t)?;
    if !t.gen(top).is_root() || u.exp(top) != 0 {
        return Err(Error::Invalid("expects a root generator on top and u free of it".into()));
    }
    pflde_solve(t, u, f, opts)
}

/// Tower consisting of root generators only, with `u` involving them.
pub fn pflde_root_nested(t: &Tower, u: &PGElem, f: &[TowerElem], opts: &PfldeOptions) -> Result<VBasis> {
    check_nested(t, u, f)?;
    let f: Vec<TowerElem> = f.iter().map(|x| t.normalize(x)).collect();
    let rows = Solver { t, opts }.root_nested(t.len(), u, &f)?;
    Ok(VBasis { n: f.len(), rows: linear::canonical_rows(f.len(), &rows) })
}

/// The intermediate data of [`pflde_root_nested`].
pub fn nested_lift(t: &Tower, u: &PGElem, f: &[TowerElem], opts: &PfldeOptions) -> Result<NestedLift> {
    check_nested(t, u, f)?;
    let f: Vec<TowerElem> = f.iter().map(|x| t.normalize(x)).collect();
    Solver { t, opts }.nested_lift(t.len(), u, &f)
}

fn check_nested(t: &Tower, u: &PGElem, f: &[TowerElem]) -> Result<()> {
    check_input(t, u, f)?;
    if !t.gens().iter().all(|g| g.is_root()) {
        return Err(Error::UnsupportedBase("expects a tower of root generators over K(k)".into()));
    }
    Ok(())
}

/// Problem T: `g` with `σ(g) - g = f`, if one exists.
pub fn telescope(t: &Tower, f: &TowerElem) -> Result<Option<TowerElem>> {
    let basis = pflde_solve(t, &PGElem::one(), std::slice::from_ref(f), &PfldeOptions::default())?;
    Ok(basis.rows.iter().find(|r| !r.c[0].is_zero()).map(|r| r.g.scale_const(&r.c[0].recip())))
}

/// Problem PT: constants `c`, not all zero, and `g` with `σ(g) - g = sum c_i f_i`.
/// Rows whose `c` only touches zero entries of `f` do not count. Rows with
/// `c_1 != 0` are preferred, then rows with fewer nonzero `c_i`.
pub fn para_telescope(t: &Tower, f: &[TowerElem], opts: &PfldeOptions) -> Result<Option<(Vec<Const>, TowerElem)>> {
    let basis = pflde_solve(t, &PGElem::one(), f, opts)?;
    let best = basis
        .rows
        .iter()
        .filter(|r| r.c.iter().zip(f).any(|(c, fi)| !c.is_zero() && !fi.is_zero()))
        .min_by_key(|r| (r.c[0].is_zero(), r.c.iter().filter(|c| !c.is_zero()).count()));
    Ok(best.map(|r| {
        let lead = r.c.iter().find(|c| !c.is_zero()).expect("nonzero row").recip();
        (r.c.iter().map(|c| c.times(&lead)).collect(), r.g.scale_const(&lead))
    }))
}
