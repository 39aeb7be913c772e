use super::{build_sa_half, verify_solution, Assignment, BuildOptions, PartialMap, SystemError};
use crate::graph::Graph;
use crate::matrix::{is_good_symmetric, structure::good_exponent, RatMatrix, Rational};

/// `Y = (X_{p^ab} / X_p)_{ab}`.
fn slice(x: &Assignment<Rational>, p: &PartialMap, m: usize, n: usize) -> RatMatrix {
    let xp = x.get(p);
    RatMatrix::from_fn(m, n, |a, b| &x.get(&p.with(a, b)) / &xp)
}

fn good_matrix(y: &RatMatrix) -> bool {
    let yt = y.transpose();
    let (Ok(z), Ok(z2)) = (y.mul(&yt), yt.mul(y)) else { return false };
    matches!((is_good_symmetric(&z), is_good_symmetric(&z2)), (Ok(true), Ok(true)))
}

/// Whether `Y_p` is good for every supported `p` with `|p| < k`.
pub fn is_good_solution(x: &Assignment<Rational>, k: usize, m: usize, n: usize) -> bool {
    x.support().filter(|(p, _)| p.len() < k).all(|(p, _)| good_matrix(&slice(x, p, m, n)))
}

/// Replaces each `Y_p` by `(Y_p Y_p^t)^ℓ Y_p` along the decomposition of a
/// map into its prefix and its largest pair, with `ℓ` the least power of two
/// that is at least `n - 1`. The result is checked against the half-level
/// system; the decomposition is a choice, so the check can fail.
pub fn goodify_solution(x: &Assignment<Rational>, ga: &Graph, gb: &Graph, k: usize) -> Result<Assignment<Rational>, SystemError> {
    let n = ga.n();
    if n != gb.n() {
        return Err(SystemError::SizeMismatch(n, gb.n()));
    }
    let sys = build_sa_half(k, ga, gb, &BuildOptions::structural())?;
    let before = verify_solution(&sys, x);
    if !before.is_empty() {
        return Err(SystemError::Infeasible(before.len()));
    }
    let ell = good_exponent(n);
    let mut out = Assignment::new();
    out.set(PartialMap::empty(), Rational::one());
    let mut layer = vec![PartialMap::empty()];
    for _ in 0..k {
        let mut next = Vec::new();
        for q in &layer {
            if x.get(q).is_zero() {
                continue;
            }
            let y = slice(x, q, n, n);
            let z = y.mul(&y.transpose()).expect("square").pow(ell).expect("square");
            let w = z.mul(&y).expect("square");
            let base = out.get(q);
            for a in 0..n {
                for b in 0..n {
                    if q.last().is_some_and(|l| (a, b) <= l) || w.get(a, b).is_zero() {
                        continue;
                    }
                    let p = q.with(a, b);
                    out.set(p.clone(), &base * w.get(a, b));
                    next.push(p);
                }
            }
        }
        layer = next;
    }
    let after = verify_solution(&sys, &out);
    if !after.is_empty() {
        return Err(SystemError::NotWellDefined(after.len()));
    }
    Ok(out)
}
