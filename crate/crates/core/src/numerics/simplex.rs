use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result, DEFAULT_TOL};

const PIVOT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    /// A point `x ≥ 0` with `A x = b`.
    Feasible(Vec<f64>),
    Infeasible,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible(_))
    }
}

/// Decides whether `{x ≥ 0 : A x = b}` is nonempty.
///
/// Phase-one simplex on a dense tableau with one artificial per row and
/// Bland's smallest-index rule for both the entering and leaving choice, so
/// the method cannot cycle. The system is declared feasible when the optimal
/// artificial sum is at most `1e-9 · max(1, Σ|bᵢ|)`.
pub fn lp_feasible(equalities: &[(Vec<f64>, f64)], num_vars: usize) -> Result<LpOutcome> {
    for (row, _) in equalities {
        if row.len() != num_vars {
            return Err(Error::DimensionMismatch { expected: num_vars, found: row.len() });
        }
    }
    let m = equalities.len();
    let n = num_vars;
    if m == 0 {
        return Ok(LpOutcome::Feasible(vec![0.0; n]));
    }

    // Columns: n structural, m artificial, then rhs.
    let width = n + m + 1;
    let mut tab = vec![0.0; m * width];
    for (i, (row, rhs)) in equalities.iter().enumerate() {
        let sign = if *rhs < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            tab[i * width + j] = sign * row[j];
        }
        tab[i * width + n + i] = 1.0;
        tab[i * width + n + m] = sign * rhs;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of minimizing the artificial sum.
    let mut cost = vec![0.0; width];
    for i in 0..m {
        for j in 0..n {
            cost[j] -= tab[i * width + j];
        }
        cost[n + m] -= tab[i * width + n + m];
    }

    loop {
        let Some(enter) = (0..n).find(|&j| cost[j] < -PIVOT_EPS) else {
            break;
        };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            let a = tab[i * width + enter];
            if a > PIVOT_EPS {
                let ratio = tab[i * width + n + m] / a;
                let better = match leave {
                    None => true,
                    Some(l) => {
                        ratio < best - PIVOT_EPS
                            || (ratio <= best + PIVOT_EPS && basis[i] < basis[l])
                    }
                };
                if better {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        // Phase one is bounded below by zero, so an entering column always
        // has a positive entry; guard anyway against roundoff.
        let Some(r) = leave else { break };

        let piv = tab[r * width + enter];
        for j in 0..width {
            tab[r * width + j] /= piv;
        }
        for i in 0..m {
            if i == r {
                continue;
            }
            let f = tab[i * width + enter];
            if f != 0.0 {
                for j in 0..width {
                    tab[i * width + j] -= f * tab[r * width + j];
                }
            }
        }
        let f = cost[enter];
        for j in 0..width {
            cost[j] -= f * tab[r * width + j];
        }
        basis[r] = enter;
    }

    let scale = equalities.iter().map(|(_, b)| b.abs()).sum::<f64>().max(1.0);
    let artificial_sum = -cost[n + m];
    if artificial_sum > DEFAULT_TOL * scale {
        return Ok(LpOutcome::Infeasible);
    }

    let mut x = vec![0.0; n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = tab[i * width + n + m].max(0.0);
        }
    }
    Ok(LpOutcome::Feasible(x))
}
