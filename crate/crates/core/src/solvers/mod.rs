//! Feasibility of the linear and boolean systems.

mod boolean;
mod presolve;
mod simplex;

pub use boolean::{bool_solve, BoolResult};
pub use presolve::{presolve_zero, Presolved, Strength};
pub use simplex::{lp_feasible, FeasibilityResult, Status};

use crate::matrix::{Rational, Semiring};
use crate::systems::{Assignment, VarIndex};
use std::fmt::Write;

/// `status feasible|infeasible` and one `x <key> <p>/<q>` line per
/// supported variable, in key order.
pub fn render_result<V: Semiring + Clone>(vars: &VarIndex, point: Option<&Assignment<V>>) -> String {
    let mut out = String::new();
    match point {
        None => out.push_str("status infeasible\n"),
        Some(x) => {
            out.push_str("status feasible\n");
            for p in vars.keys() {
                let v = x.get(p);
                if !v.is_zero() {
                    let _ = writeln!(out, "x {} {}", p, v.to_rational().to_ratio_string());
                }
            }
        }
    }
    out
}

/// Inverse of `render_result`: the status and the listed values.
pub fn parse_result(text: &str) -> Option<(Status, Vec<(String, Rational)>)> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let status = match lines.next()? {
        "status feasible" => Status::Feasible,
        "status infeasible" => Status::Infeasible,
        _ => return None,
    };
    let mut values = Vec::new();
    for l in lines {
        let mut t = l.split_whitespace();
        if t.next()? != "x" {
            return None;
        }
        let key = t.next()?.to_string();
        let v: Rational = t.next()?.parse().ok()?;
        values.push((key, v));
    }
    Some((status, values))
}
