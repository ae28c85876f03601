//! Branching vectors and their branching factors.

use serde::Serialize;
use thiserror::Error;

use crate::solve::Rule;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FactorError {
    #[error("a branching vector needs at least two entries, got {0}")]
    TooShort(usize),
    #[error("branching vector entries must be at least 1")]
    ZeroEntry,
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
}

/// Per-child decreases `(t_1, ..., t_r)` of the number of free vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchVector(Vec<usize>);

impl BranchVector {
    pub fn new(decreases: Vec<usize>) -> Result<Self, FactorError> {
        if decreases.len() < 2 {
            return Err(FactorError::TooShort(decreases.len()));
        }
        if decreases.contains(&0) {
            return Err(FactorError::ZeroEntry);
        }
        Ok(BranchVector(decreases))
    }

    pub fn decreases(&self) -> &[usize] {
        &self.0
    }
}

/// The unique root in `(1, r]` of `sum_i x^(-t_i) = 1`, to within `tol`.
pub fn branching_factor(t: &[usize], tol: f64) -> Result<f64, FactorError> {
    let v = BranchVector::new(t.to_vec())?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(FactorError::BadTolerance(tol));
    }
    // sum x^-t_i is strictly decreasing in x, equals r at 1 and <= 1 at r.
    let f = |x: f64| v.0.iter().map(|&ti| x.powi(-(ti as i32))).sum::<f64>() - 1.0;
    let (mut lo, mut hi) = (1.0, v.0.len() as f64);
    while hi - lo > tol / 2.0 {
        let mid = (lo + hi) / 2.0;
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / 2.0)
}

/// Worst-case child decreases guaranteed by each branching rule, for the
/// parameters it was applied with.
pub fn rule_minimum_vector(rule: Rule, params: &[usize]) -> Option<Vec<usize>> {
    Some(match (rule, params) {
        (Rule::B1, []) | (Rule::B2, []) => vec![3, 3],
        (Rule::B3, []) => vec![4, 2],
        (Rule::B4, &[r]) if r >= 2 => vec![r + 2; r],
        (Rule::B5, &[p, q]) if q >= 2 => {
            let r = p + q;
            let mut v = vec![r + 2 * q; p];
            v.extend(vec![r + 2 * (q - 1); q]);
            v
        }
        (Rule::B6, &[r, s]) if r >= 2 && s >= 2 => vec![r + s + 1, r + 1],
        (Rule::B7, &[r, s]) if r >= 2 && s >= 2 => vec![r + s + 2; r + s],
        _ => return None,
    })
}

/// Largest worst-case branching factor of `rule` over all parameter
/// choices with `r + s` (or `p + q`) at most `max_width`.
pub fn rule_worst_factor(rule: Rule, max_width: usize, tol: f64) -> Result<(f64, Vec<usize>), FactorError> {
    let params: Vec<Vec<usize>> = match rule {
        Rule::B1 | Rule::B2 | Rule::B3 => vec![vec![]],
        Rule::B4 => (2..=max_width).map(|r| vec![r]).collect(),
        Rule::B5 => (2..=max_width)
            .flat_map(|q| (0..=max_width.saturating_sub(q)).map(move |p| vec![p, q]))
            .filter(|v| v[0] + v[1] >= 3)
            .collect(),
        Rule::B6 | Rule::B7 => (2..=max_width)
            .flat_map(|r| (2..=max_width.saturating_sub(r)).map(move |s| vec![r, s]))
            .collect(),
        _ => vec![],
    };
    let mut best: Option<(f64, Vec<usize>)> = None;
    for p in params {
        let Some(vec) = rule_minimum_vector(rule, &p) else { continue };
        let f = branching_factor(&vec, tol)?;
        if best.as_ref().is_none_or(|(b, _)| f > *b) {
            best = Some((f, vec));
        }
    }
    Ok(best.unwrap_or((1.0, vec![])))
}
