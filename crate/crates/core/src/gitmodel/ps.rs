use serde::{Deserialize, Serialize};

use super::{GITProblem, ModelError, VarKind};

/// Exponents of a diagonal one-parameter subgroup: two slots for `V`, then
/// one per row of each factor in registry order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OnePS(pub Vec<i64>);

impl OnePS {
    pub fn new(problem: &GITProblem, r: Vec<i64>) -> Result<Self, ModelError> {
        let expected = problem.slot_count();
        if r.len() != expected {
            return Err(ModelError::SlotCount { got: r.len(), expected });
        }
        Ok(OnePS(r))
    }

    pub fn zero(problem: &GITProblem) -> Self {
        OnePS(vec![0; problem.slot_count()])
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

/// Exponent of `t` by which `lambda_r(t)` scales the variable.
pub fn ps_weight_of_variable(problem: &GITProblem, var: usize, r: &OnePS) -> i64 {
    match problem.kinds()[var] {
        VarKind::Psi { factor, row, col } => {
            let f = &problem.factors()[factor];
            r.0[f.slot + row] - r.0[col]
        }
        VarKind::Nil { factor, row, col, .. } => {
            let f = &problem.factors()[factor];
            r.0[f.slot + row] - r.0[f.slot + col]
        }
    }
}

/// `<chi, lambda_r>`: minus twice the `V` slots plus all remaining slots.
pub fn pairing(problem: &GITProblem, r: &OnePS) -> Result<i64, ModelError> {
    let expected = problem.slot_count();
    if r.0.len() != expected {
        return Err(ModelError::SlotCount { got: r.0.len(), expected });
    }
    Ok(-2 * (r.0[0] + r.0[1]) + r.0[2..].iter().sum::<i64>())
}
