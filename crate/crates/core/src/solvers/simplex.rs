//! Exact phase-I simplex for `Mx = c, x ≥ 0`.
//!
//! Rows are first brought to reduced row echelon form by exact sparse
//! elimination, which removes redundant equations and yields a starting
//! basis; artificial variables are only needed for rows with a negative
//! right-hand side. Pivoting uses Bland's least-index rule.

use crate::matrix::Rational;
use crate::systems::{Assignment, LinearSystem};

type Row = Vec<(usize, Rational)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Status {
    Feasible,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityResult {
    pub status: Status,
    pub point: Option<Assignment<Rational>>,
    /// Multipliers per equation proving infeasibility. Not produced yet.
    pub certificate: Option<Vec<Rational>>,
    pub pivots: usize,
}

impl FeasibilityResult {
    pub fn feasible(&self) -> bool {
        self.status == Status::Feasible
    }
}

/// `r -= f * s` on sorted sparse rows.
fn axpy(r: &Row, f: &Rational, s: &Row) -> Row {
    let mut out = Vec::with_capacity(r.len() + s.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < s.len() {
        if j == s.len() || (i < r.len() && r[i].0 < s[j].0) {
            out.push(r[i].clone());
            i += 1;
        } else if i == r.len() || s[j].0 < r[i].0 {
            out.push((s[j].0, -(f * &s[j].1)));
            j += 1;
        } else {
            let v = &r[i].1 - &(f * &s[j].1);
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn coeff(r: &Row, col: usize) -> Option<&Rational> {
    r.binary_search_by_key(&col, |e| e.0).ok().map(|i| &r[i].1)
}

/// Reduced row echelon form; `None` if some combination reads `0 = c ≠ 0`.
fn echelon(mut input: Vec<(Row, Rational)>) -> Option<Vec<(usize, Row, Rational)>> {
    let mut rows: Vec<(usize, Row, Rational)> = Vec::new();
    let mut pivot_row: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for (mut r, mut b) in input.drain(..) {
        let hits: Vec<(usize, Rational)> = r.iter().filter(|(c, _)| pivot_row.contains_key(c)).cloned().collect();
        for (c, f) in hits {
            let (_, pr, pb) = &rows[pivot_row[&c]];
            r = axpy(&r, &f, pr);
            b = &b - &(&f * pb);
        }
        let Some((col, lead)) = r.first().cloned() else {
            if b.is_zero() {
                continue;
            }
            return None;
        };
        let inv = lead.recip();
        for e in &mut r {
            e.1 = &e.1 * &inv;
        }
        b = &b * &inv;
        for (_, other, ob) in rows.iter_mut() {
            if let Some(f) = coeff(other, col).cloned() {
                *other = axpy(other, &f, &r);
                *ob = &*ob - &(&f * &b);
            }
        }
        pivot_row.insert(col, rows.len());
        rows.push((col, r, b));
    }
    Some(rows)
}

pub fn lp_feasible(sys: &LinearSystem) -> FeasibilityResult {
    let nv = sys.num_vars();
    let mut input: Vec<(Vec<(usize, i64)>, i64)> =
        sys.equations.iter().map(|e| (e.difference().into_iter().collect(), e.constant)).collect();
    input.sort();
    input.dedup();
    let input = input
        .into_iter()
        .map(|(t, c)| (t.into_iter().map(|(v, k)| (v, Rational::from_int(k))).collect(), Rational::from_int(c)))
        .collect();
    let infeasible = |pivots| FeasibilityResult { status: Status::Infeasible, point: None, certificate: None, pivots };
    let Some(rows) = echelon(input) else { return infeasible(0) };

    // tableau columns: structural variables, then one artificial per negative row
    let negative: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].2.is_negative()).collect();
    let width = nv + negative.len();
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(rows.len());
    let mut rhs: Vec<Rational> = Vec::with_capacity(rows.len());
    let mut basis: Vec<usize> = Vec::with_capacity(rows.len());
    for (i, (col, r, b)) in rows.iter().enumerate() {
        let mut dense = vec![Rational::zero(); width];
        let flip = b.is_negative();
        for (c, v) in r {
            dense[*c] = if flip { -v.clone() } else { v.clone() };
        }
        if flip {
            let art = nv + negative.iter().position(|&x| x == i).expect("listed");
            dense[art] = Rational::one();
            basis.push(art);
            rhs.push(-b.clone());
        } else {
            basis.push(*col);
            rhs.push(b.clone());
        }
        t.push(dense);
    }
    // reduced costs of the phase-I objective Σ artificials
    let mut cost = vec![Rational::zero(); width];
    let mut value = Rational::zero();
    for &i in &negative {
        for j in 0..nv {
            if !t[i][j].is_zero() {
                cost[j] = &cost[j] - &t[i][j];
            }
        }
        value = &value + &rhs[i];
    }
    let mut pivots = 0;
    while value.is_positive() {
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else { break };
        let mut leave: Option<usize> = None;
        for i in 0..t.len() {
            if !t[i][enter].is_positive() {
                continue;
            }
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let ri = &rhs[i] / &t[i][enter];
                    let rl = &rhs[l] / &t[l][enter];
                    if ri < rl || (ri == rl && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        let l = leave.expect("phase-I objective is bounded below");
        pivots += 1;
        let inv = t[l][enter].recip();
        let nz: Vec<usize> = (0..width).filter(|&j| !t[l][j].is_zero()).collect();
        for &j in &nz {
            t[l][j] = &t[l][j] * &inv;
        }
        rhs[l] = &rhs[l] * &inv;
        let (pivot_row, pivot_rhs) = (t[l].clone(), rhs[l].clone());
        for i in 0..t.len() {
            if i == l || t[i][enter].is_zero() {
                continue;
            }
            let f = t[i][enter].clone();
            for &j in &nz {
                t[i][j] = &t[i][j] - &(&f * &pivot_row[j]);
            }
            rhs[i] = &rhs[i] - &(&f * &pivot_rhs);
        }
        let f = cost[enter].clone();
        for &j in &nz {
            cost[j] = &cost[j] - &(&f * &pivot_row[j]);
        }
        value = &value + &(&f * &pivot_rhs);
        basis[l] = enter;
    }
    if value.is_positive() {
        return infeasible(pivots);
    }
    let mut point = Assignment::new();
    for (i, &v) in basis.iter().enumerate() {
        if v < nv {
            point.set(sys.vars.key(v).clone(), rhs[i].clone());
        }
    }
    FeasibilityResult { status: Status::Feasible, point: Some(point), certificate: None, pivots }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[(usize, i64)]) -> Row {
        v.iter().map(|&(c, x)| (c, Rational::from_int(x))).collect()
    }

    #[test]
    fn axpy_cancels() {
        let r = row(&[(0, 1), (2, 3)]);
        let s = row(&[(0, 1), (1, 1)]);
        assert_eq!(axpy(&r, &Rational::one(), &s), row(&[(1, -1), (2, 3)]));
    }

    #[test]
    fn echelon_detects_inconsistency() {
        let rows = vec![(row(&[(0, 1)]), Rational::from_int(1)), (row(&[(0, 1)]), Rational::from_int(2))];
        assert!(echelon(rows).is_none());
        let rows = vec![(row(&[(0, 1), (1, 1)]), Rational::from_int(1)), (row(&[(0, 2), (1, 2)]), Rational::from_int(2))];
        assert_eq!(echelon(rows).unwrap().len(), 1);
    }
}
