//! Exact rational linear feasibility by Fourier–Motzkin elimination.
//!
//! Systems are tiny (one variable per monomial-ideal generator), so the
//! doubly-exponential worst case never bites. Multipliers over the original
//! rows are tracked, so infeasibility comes with a Farkas certificate.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// One inequality `coeffs · x ≤ rhs`, remembered as a nonnegative combination
/// of the original rows.
#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<BigRational>,
    rhs: BigRational,
    multipliers: Vec<BigRational>,
}

/// Outcome of a feasibility check for `A x ≤ b`.
#[derive(Clone, Debug)]
pub enum LpResult {
    /// A rational point satisfying every inequality.
    Feasible(Vec<BigRational>),
    /// Farkas certificate: `y ≥ 0` with `yᵀA = 0` and `yᵀb < 0`.
    Infeasible(Vec<BigRational>),
}

/// Decides `∃ x ∈ ℚ^n : A x ≤ b` exactly.
pub fn feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> LpResult {
    let nrows = a.len();
    let ncols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut rows: Vec<Row> = (0..nrows)
        .map(|i| {
            let mut multipliers = vec![BigRational::zero(); nrows];
            multipliers[i] = BigRational::from_integer(1.into());
            Row {
                coeffs: a[i].clone(),
                rhs: b[i].clone(),
                multipliers,
            }
        })
        .collect();

    // snapshots of each elimination stage for back-substitution
    let mut stages: Vec<Vec<Row>> = Vec::with_capacity(ncols);

    for col in 0..ncols {
        stages.push(rows.clone());
        let mut lowers: Vec<Row> = Vec::new(); // coefficient < 0: gives lower bounds
        let mut uppers: Vec<Row> = Vec::new(); // coefficient > 0: gives upper bounds
        let mut rest: Vec<Row> = Vec::new();
        for r in rows.drain(..) {
            let c = &r.coeffs[col];
            if c.is_zero() {
                rest.push(r);
            } else if c.is_positive() {
                uppers.push(r);
            } else {
                lowers.push(r);
            }
        }
        for lo in &lowers {
            for up in &uppers {
                // scale both to coefficient ±1 in `col` and add
                let ls = -lo.coeffs[col].recip(); // > 0
                let us = up.coeffs[col].recip(); // > 0
                let coeffs: Vec<BigRational> = lo
                    .coeffs
                    .iter()
                    .zip(&up.coeffs)
                    .map(|(l, u)| l * &ls + u * &us)
                    .collect();
                let rhs = &lo.rhs * &ls + &up.rhs * &us;
                let multipliers: Vec<BigRational> = lo
                    .multipliers
                    .iter()
                    .zip(&up.multipliers)
                    .map(|(l, u)| l * &ls + u * &us)
                    .collect();
                rest.push(Row {
                    coeffs,
                    rhs,
                    multipliers,
                });
            }
        }
        rows = rest;
    }

    // variable-free rows: 0 ≤ rhs must hold
    for r in &rows {
        if r.rhs.is_negative() {
            return LpResult::Infeasible(r.multipliers.clone());
        }
    }

    // back-substitute a feasible point, last eliminated variable first
    let mut point = vec![BigRational::zero(); ncols];
    for col in (0..ncols).rev() {
        let stage = &stages[col];
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for r in stage {
            let c = &r.coeffs[col];
            if c.is_zero() {
                continue;
            }
            // c * x_col ≤ rhs - Σ_{k > col} coeffs[k] * point[k]
            let mut slack = r.rhs.clone();
            for k in col + 1..ncols {
                slack -= &r.coeffs[k] * &point[k];
            }
            let bound = slack / c.clone();
            if c.is_positive() {
                upper = Some(match upper {
                    None => bound,
                    Some(u) => {
                        if bound < u {
                            bound
                        } else {
                            u
                        }
                    }
                });
            } else {
                lower = Some(match lower {
                    None => bound,
                    Some(l) => {
                        if bound > l {
                            bound
                        } else {
                            l
                        }
                    }
                });
            }
        }
        point[col] = match (lower, upper) {
            (None, None) => BigRational::zero(),
            (Some(l), None) => l,
            (None, Some(u)) => u,
            (Some(l), Some(u)) => {
                debug_assert!(l <= u, "elimination guaranteed a nonempty interval");
                (l + u) / BigRational::from_integer(2.into())
            }
        };
    }
    LpResult::Feasible(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn square_is_feasible() {
        // 0 ≤ x,y ≤ 1
        let a = vec![
            vec![q(1), q(0)],
            vec![q(-1), q(0)],
            vec![q(0), q(1)],
            vec![q(0), q(-1)],
        ];
        let b = vec![q(1), q(0), q(1), q(0)];
        match feasible(&a, &b) {
            LpResult::Feasible(p) => {
                for (row, rhs) in a.iter().zip(&b) {
                    let lhs: BigRational = row.iter().zip(&p).map(|(c, x)| c * x).sum();
                    assert!(lhs <= *rhs);
                }
            }
            LpResult::Infeasible(_) => panic!("square should be feasible"),
        }
    }

    #[test]
    fn contradiction_produces_farkas_certificate() {
        // x ≤ 0 and -x ≤ -1 (x ≥ 1)
        let a = vec![vec![q(1)], vec![q(-1)]];
        let b = vec![q(0), q(-1)];
        match feasible(&a, &b) {
            LpResult::Infeasible(y) => {
                assert!(y.iter().all(|v| !v.is_negative()));
                let combo: BigRational = y.iter().zip(a.iter()).map(|(yi, row)| yi * &row[0]).sum();
                assert!(combo.is_zero());
                let value: BigRational = y.iter().zip(&b).map(|(yi, bi)| yi * bi).sum();
                assert!(value.is_negative());
            }
            LpResult::Feasible(_) => panic!("system is contradictory"),
        }
    }
}
