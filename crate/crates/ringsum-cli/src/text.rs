//! Plain-text rendering of a result document.

use crate::doc::{ElemDoc, ResultDoc, RowDoc, Solution};
use std::fmt::Write;

fn rows(out: &mut String, label: &str, rows: &[RowDoc]) {
    let _ = writeln!(out, "{label} ({} rows):", rows.len());
    for r in rows {
        let _ = writeln!(out, "  c = ({}), g = {}", r.c.join(", "), r.g.text);
    }
}

fn elem(out: &mut String, label: &str, e: &ElemDoc) {
    let _ = writeln!(out, "{label}: {}", e.text);
    if e.expr != e.text {
        let _ = writeln!(out, "{:width$}  = {}", "", e.expr, width = label.len());
    }
}

pub fn render_text(doc: &ResultDoc) -> String {
    let mut out = String::new();
    let gens: Vec<&str> = doc.tower.generators.iter().map(|g| g.name.as_str()).collect();
    let _ = writeln!(out, "tower: {} with generators [{}]", doc.tower.base, gens.join(", "));
    for g in &doc.tower.generators {
        let rel = match g.kind.as_str() {
            "Sigma" => format!("σ({0}) = {0} + {1}", g.name, g.shift),
            _ => format!("σ({0}) = ({1})·{0}", g.name, g.shift),
        };
        let order = g.order.map(|l| format!(", {}^{l} = 1", g.name)).unwrap_or_default();
        let _ = writeln!(out, "  {:<4} {:<5} {rel}{order}; stands for {}", g.name, g.kind, g.meaning);
    }
    match &doc.solution {
        Some(Solution::Telescope { summand, basis, certificate, identity }) => {
            elem(&mut out, "summand", summand);
            rows(&mut out, "solutions of g(k+1) - g(k) = c f(k)", basis);
            match certificate {
                Some(g) => elem(&mut out, "certificate g", g),
                None => out.push_str("no telescoping certificate exists in this tower\n"),
            }
            if let Some(id) = identity {
                let _ = writeln!(out, "identity: {id}");
            }
        }
        Some(Solution::Zeilberger { parameter, order, coefficients, certificate, relation, identity, .. }) => match order {
            Some(r) => {
                let _ = writeln!(out, "recurrence of order {r} in {parameter}, coefficients [{}]", coefficients.join(", "));
                if let Some(g) = certificate {
                    elem(&mut out, "certificate g", g);
                }
                if let Some(rel) = relation {
                    let _ = writeln!(out, "relation: {rel}");
                }
                if let Some(id) = identity {
                    let _ = writeln!(out, "identity: {id}");
                }
            }
            None => {
                let _ = writeln!(out, "no recurrence in {parameter} up to order {}", doc.command.max_order);
            }
        },
        Some(Solution::RewriteProduct { factor, basis, certificate, identity }) => {
            elem(&mut out, "factor", factor);
            rows(&mut out, "solutions of g(k+1) = α(k) g(k)", basis);
            match certificate {
                Some(g) => elem(&mut out, "certificate g", g),
                None => out.push_str("the product has no closed form in this tower\n"),
            }
            if let Some(id) = identity {
                let _ = writeln!(out, "identity: {id}");
            }
        }
        Some(Solution::Order { element, ord, per, ford }) => {
            elem(&mut out, "element", element);
            let _ = writeln!(out, "ord = {ord}, per = {per}, ford = {ford}");
        }
        Some(Solution::Verify { identity }) => {
            let _ = writeln!(out, "identity: {identity}");
        }
        Some(Solution::DescribeTower { elements, checks, constants_dim }) => {
            for (i, e) in elements.iter().enumerate() {
                elem(&mut out, &format!("element {}", i + 1), e);
            }
            for c in checks {
                let _ = writeln!(out, "check {}: {}", c.name, c.detail);
            }
            match constants_dim {
                Some(d) => {
                    let _ = writeln!(out, "constants: dimension {d}");
                }
                None => out.push_str("constants: could not be determined\n"),
            }
        }
        None => {}
    }
    if let Some(v) = &doc.verification {
        let _ = write!(out, "verification over {} = {}..{}: {} ({} values)", v.var, v.range[0], v.range[1], v.status, v.checked);
        if let Some(m) = &v.mismatch {
            let _ = write!(out, ", first mismatch at {} = {}: {} vs {}", v.var, m.at, m.lhs, m.rhs);
        }
        out.push('\n');
    }
    let _ = writeln!(out, "status: {} ({:.1} ms)", doc.status, doc.timings.total_ms);
    out
}
