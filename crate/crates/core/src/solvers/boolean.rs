use crate::systems::{Assignment, BoolShape, BooleanSystem, SystemError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolResult {
    /// The greatest solution, if any.
    pub point: Option<Assignment<bool>>,
    /// An equation that fails at the fixpoint.
    pub violated: Option<usize>,
}

impl BoolResult {
    pub fn feasible(&self) -> bool {
        self.point.is_some()
    }
}

/// Greatest solution by zero propagation from the all-ones assignment.
/// Solutions are closed under `∨`, so the fixpoint is the greatest one
/// whenever any solution exists.
pub fn bool_solve(sys: &BooleanSystem) -> Result<BoolResult, SystemError> {
    let shapes = sys.equations.iter().enumerate().map(|(i, e)| e.shape().ok_or(SystemError::Shape(i))).collect::<Result<Vec<_>, _>>()?;
    let nv = sys.num_vars();
    let mut value = vec![true; nv];
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (i, e) in sys.equations.iter().enumerate() {
        for &v in e.lhs.iter().chain(&e.rhs) {
            occurs[v].push(i);
        }
    }
    let mut queue: Vec<usize> = (0..sys.equations.len()).rev().collect();
    let mut queued = vec![true; sys.equations.len()];
    let clear = |vars: &[usize], value: &mut Vec<bool>, queue: &mut Vec<usize>, queued: &mut Vec<bool>| {
        for &v in vars {
            if value[v] {
                value[v] = false;
                for &j in &occurs[v] {
                    if !queued[j] {
                        queued[j] = true;
                        queue.push(j);
                    }
                }
            }
        }
    };
    while let Some(i) = queue.pop() {
        queued[i] = false;
        let e = &sys.equations[i];
        let any = |vs: &[usize], value: &[bool]| vs.iter().any(|&v| value[v]);
        match shapes[i] {
            BoolShape::Zero => clear(&e.lhs, &mut value, &mut queue, &mut queued),
            BoolShape::One => {}
            BoolShape::Equal => {
                if !any(&e.lhs, &value) {
                    clear(&e.rhs, &mut value, &mut queue, &mut queued);
                }
                if !any(&e.rhs, &value) {
                    clear(&e.lhs, &mut value, &mut queue, &mut queued);
                }
            }
        }
    }
    if let Some(i) = sys.equations.iter().position(|e| !e.holds(|v| value[v])) {
        return Ok(BoolResult { point: None, violated: Some(i) });
    }
    let point = sys.vars.keys().iter().zip(&value).filter(|(_, &x)| x).map(|(p, _)| (p.clone(), true)).collect();
    Ok(BoolResult { point: Some(point), violated: None })
}
