//! Command-line arguments.

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug, Clone)]
#[command(name = "ringsum", version, about = "Exact telescoping and creative telescoping over towers of sums, products and roots of unity")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Options,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Cyclotomic order N of the constant field Q(zeta_N); I needs N divisible by 4.
    #[arg(long, global = true, env = "RINGSUM_ZETA", default_value_t = 1)]
    pub zeta: u32,
    /// Comma-separated parameter names, e.g. `--params n,m`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub params: Vec<String>,
    /// Largest recurrence order tried by `zeilberger`.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_order: usize,
    /// Largest λ accepted when lifting over root-of-unity generators.
    #[arg(long, global = true, default_value_t = 4096)]
    pub lambda_cap: u64,
    /// Range `a..b` of upper limits checked against the direct evaluation.
    #[arg(long, global = true, default_value = "1..40", value_parser = parse_range)]
    pub verify_range: (i64, i64),
    /// Helper expression compiled into the tower first (repeatable).
    #[arg(long, global = true)]
    pub extra: Vec<String>,
    /// Print the result document as JSON.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Find g with g(k+1) - g(k) = f(k), so that Sum(k,a,b,f) = g(b+1) - g(a).
    Telescope {
        /// The summand f, an expression in one free variable.
        #[arg(allow_hyphen_values = true)]
        summand: String,
    },
    /// Find a recurrence in the first parameter for Sum(k, a, b, F(n, k)).
    Zeilberger {
        /// The summand F(n, k).
        #[arg(allow_hyphen_values = true)]
        summand: String,
    },
    /// Find g with g(k+1) = α(k) g(k), so that Prod(k,a,b,α) = g(b+1) / g(a).
    RewriteProduct {
        /// The factor α(k).
        #[arg(allow_hyphen_values = true)]
        factor: String,
    },
    /// Order, period and factorial order of a product-group element.
    Order {
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Compare two expressions exactly over the verification range.
    Verify {
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
    },
    /// Compile expressions and re-check every generator of the resulting tower.
    DescribeTower {
        /// Expressions to compile; put `--` before one that starts with a minus sign.
        #[arg(required = true)]
        exprs: Vec<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Telescope { .. } => "telescope",
            Command::Zeilberger { .. } => "zeilberger",
            Command::RewriteProduct { .. } => "rewrite-product",
            Command::Order { .. } => "order",
            Command::Verify { .. } => "verify",
            Command::DescribeTower { .. } => "describe-tower",
        }
    }

    pub fn inputs(&self) -> Vec<String> {
        match self {
            Command::Telescope { summand } | Command::Zeilberger { summand } => vec![summand.clone()],
            Command::RewriteProduct { factor } => vec![factor.clone()],
            Command::Order { element } => vec![element.clone()],
            Command::Verify { lhs, rhs } => vec![lhs.clone(), rhs.clone()],
            Command::DescribeTower { exprs } => exprs.clone(),
        }
    }
}

/// Parses `a..b` (inclusive, a <= b).
pub fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a range a..b, got {s:?}"))?;
    let a: i64 = a.trim().parse().map_err(|_| format!("invalid range start {a:?}"))?;
    let b: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| format!("invalid range end {b:?}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}
