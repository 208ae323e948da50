//! The result document printed by every command.

use ringsum::arith::{Const, KPoly};
use ringsum::builder::{const_expr, Builder};
use ringsum::tower::{Tower, TowerElem};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ResultDoc {
    pub command: CommandEcho,
    /// `ok`, `no_solution`, `mismatch`, `verification_failed` or `check_failed`.
    pub status: String,
    pub tower: TowerDoc,
    pub solution: Option<Solution>,
    pub verification: Option<Verification>,
    pub timings: Timings,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CommandEcho {
    pub name: String,
    pub inputs: Vec<String>,
    pub extra: Vec<String>,
    pub zeta: u32,
    pub params: Vec<String>,
    pub max_order: usize,
    pub lambda_cap: u64,
    pub verify_range: [i64; 2],
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TowerDoc {
    pub base: String,
    pub generators: Vec<GenDoc>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct GenDoc {
    pub name: String,
    /// `R`, `Pi` or `Sigma`.
    pub kind: String,
    /// σ(x)/x for R and Π generators, σ(s) - s for Σ generators.
    pub shift: String,
    /// λ with x^λ = 1 for R generators.
    pub order: Option<u64>,
    /// Value at the start index k₀.
    pub init: String,
    /// The object the generator stands for, as an expression in k.
    pub meaning: String,
}

/// A tower element in three forms: with generator names, as a parser-compatible
/// expression, and term by term.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ElemDoc {
    pub text: String,
    pub expr: String,
    pub terms: Vec<TermDoc>,
}

/// `numerator(k) / denominator(k)` times the generator monomial; polynomial
/// coefficients are listed from degree 0 upward.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TermDoc {
    pub exponents: Vec<i64>,
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct RowDoc {
    pub c: Vec<String>,
    pub g: ElemDoc,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Solution {
    Telescope {
        summand: ElemDoc,
        /// Basis of all (c, g) with g(k+1) - g(k) = c f(k).
        basis: Vec<RowDoc>,
        certificate: Option<ElemDoc>,
        identity: Option<String>,
    },
    Zeilberger {
        parameter: String,
        order: Option<usize>,
        coefficients: Vec<String>,
        summands: Vec<ElemDoc>,
        certificate: Option<ElemDoc>,
        /// `sum_i c_i F(n+i, k) = g(k+1) - g(k)`.
        relation: Option<String>,
        identity: Option<String>,
    },
    RewriteProduct {
        factor: ElemDoc,
        /// Basis of all (c, g) with g(k+1) - α(k) g(k) = 0 c.
        basis: Vec<RowDoc>,
        certificate: Option<ElemDoc>,
        identity: Option<String>,
    },
    Order {
        element: ElemDoc,
        ord: u64,
        per: u64,
        ford: u64,
    },
    Verify {
        identity: String,
    },
    DescribeTower {
        elements: Vec<ElemDoc>,
        checks: Vec<CheckDoc>,
        /// Dimension of the solutions of g(k+1) = g(k); 1 when only constants remain.
        constants_dim: Option<usize>,
    },
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CheckDoc {
    pub name: String,
    pub kind: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Verification {
    /// Variable running over `range`.
    pub var: String,
    pub range: [i64; 2],
    /// Parameter assignments the check ran under, one list of values per run;
    /// empty when the tower has no parameters.
    pub parameter_values: Vec<Vec<String>>,
    /// Number of exact comparisons made.
    pub checked: usize,
    /// `passed` or `failed`.
    pub status: String,
    pub mismatch: Option<Mismatch>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub at: i64,
    pub parameter_values: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Timings {
    pub solve_ms: f64,
    pub verify_ms: f64,
    pub total_ms: f64,
}

/// Parser-compatible text of a constant.
pub fn const_text(c: &Const, t: &Tower) -> String {
    const_expr(c, &t.base).to_string()
}

fn poly_doc(p: &KPoly, t: &Tower) -> Vec<String> {
    p.coeffs().iter().map(|c| const_text(c, t)).collect()
}

pub fn elem_doc(b: &Builder, g: &TowerElem) -> ElemDoc {
    let t = b.tower();
    let terms = g
        .terms()
        .iter()
        .map(|(exps, f)| TermDoc { exponents: exps.to_vec(), numerator: poly_doc(f.num(), t), denominator: poly_doc(f.den(), t) })
        .collect();
    ElemDoc { text: b.to_text(g), expr: b.to_expr(g).tidy().to_string(), terms }
}

pub fn tower_doc(b: &Builder) -> TowerDoc {
    let t = b.tower();
    let field = match t.base.zeta {
        1 | 2 => "Q".to_string(),
        4 => "Q(I)".to_string(),
        n => format!("Q(zeta_{n})"),
    };
    let params: String = t.base.params.iter().map(|p| format!("({p})")).collect();
    let generators = t
        .gens()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let (kind, shift) = match (g.alpha(), g.beta()) {
                (Some(a), _) => (if g.is_root() { "R" } else { "Pi" }, b.to_text(&a.to_elem())),
                (None, Some(beta)) => ("Sigma", b.to_text(beta)),
                (None, None) => unreachable!("every generator has a quotient or a summand"),
            };
            GenDoc {
                name: g.name.clone(),
                kind: kind.into(),
                shift,
                order: g.order(),
                init: const_text(&g.init, t),
                meaning: b.meaning(i).to_string(),
            }
        })
        .collect();
    TowerDoc { base: format!("{field}{params}(k)"), generators }
}
