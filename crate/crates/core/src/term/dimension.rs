//! Dimension counts.
//!
//! `MSB(m, d, X)` is counted as `(n + 1)·C(m + d, m) - (m + 1)^2`: a map
//! from `P^m` is `n + 1` forms of degree `d` up to a common scalar, taken
//! modulo `Aut(P^m)`. For `m = 1` this is the usual `(n + 1)(d + 1) - 4` of
//! genus-0 stable maps, and for `d = 1` it is the Grassmannian count
//! `(m + 1)(n - m)`.

use thiserror::Error;

use super::VarietyTerm;
use crate::arith::binomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimensionError {
    /// `M0bar(X, 2)` with `dim X = 1`. Only the coarse space `Sym^2(X)` has a
    /// well-defined count, carried here.
    #[error("exceptional case M0bar(X, 2) with dim X = 1 (coarse space has dimension {coarse})")]
    Exceptional { coarse: u64 },
    #[error("degenerate count for `{0}`")]
    Degenerate(String),
    #[error("dimension overflow")]
    Overflow,
}

fn mul(a: u64, b: u64) -> Result<u64, DimensionError> {
    a.checked_mul(b).ok_or(DimensionError::Overflow)
}

fn add(a: u64, b: u64) -> Result<u64, DimensionError> {
    a.checked_add(b).ok_or(DimensionError::Overflow)
}

pub(super) fn dimension(t: &VarietyTerm) -> Result<u64, DimensionError> {
    match t {
        VarietyTerm::Proj(n) => Ok(*n),
        VarietyTerm::Base(v) | VarietyTerm::Sb(v) => Ok(v.dim()),
        VarietyTerm::Dual(x) => dimension(x),
        VarietyTerm::Sym(d, x) => mul(*d, dimension(x)?),
        VarietyTerm::Grass(m, x) => {
            let n = dimension(x)?;
            if *m > n {
                return Err(DimensionError::Degenerate(t.to_string()));
            }
            mul(m + 1, n - m)
        }
        VarietyTerm::M0bar(d, x) => {
            let n = dimension(x)?;
            match (n, *d) {
                (0, _) | (_, 0) => Err(DimensionError::Degenerate(t.to_string())),
                (1, 2) => Err(DimensionError::Exceptional { coarse: 2 }),
                _ => Ok(mul(add(n, 1)?, add(*d, 1)?)? - 4),
            }
        }
        VarietyTerm::Msb(m, d, x) => {
            let n = dimension(x)?;
            if *m > n || *d == 0 {
                return Err(DimensionError::Degenerate(t.to_string()));
            }
            let sections = binomial(add(*m, *d)?, *m).ok_or(DimensionError::Overflow)?;
            let ambient = mul(add(n, 1)?, sections)?;
            let group = mul(m + 1, m + 1)?;
            Ok(ambient - group)
        }
        VarietyTerm::Maps(d, q, p) => {
            let m = dimension(q)?;
            let n = dimension(p)?;
            let sections = binomial(add(m, *d)?, m).ok_or(DimensionError::Overflow)?;
            Ok(mul(sections, add(n, 1)?)? - 1)
        }
        VarietyTerm::Product(fs) => fs.iter().try_fold(0u64, |acc, f| add(acc, dimension(f)?)),
    }
}
