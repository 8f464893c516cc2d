//! Brauer classes in a finite cyclic model.
//!
//! The relevant part of the Brauer group of the ground field is modeled by
//! `Z/N`. A class is a residue `a`; its period is the order of `a`, and by
//! default its index equals its period. A model may instead carry an explicit
//! index table, subject to `period(a) | index(a) | N`.
//!
//! A [`SeveriBrauer`] variety is a class together with a projective dimension
//! `n` such that `index | n + 1`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::arith::gcd;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrauerError {
    #[error("model order must be at least 1")]
    ZeroOrder,
    #[error("class {value} is not a residue modulo {order}")]
    ResidueOutOfRange { value: u64, order: u64 },
    #[error("classes belong to different models (Z/{left} vs Z/{right})")]
    ModelMismatch { left: u64, right: u64 },
    #[error("index {index} does not divide dim + 1 = {dim_plus_one}")]
    IndexDoesNotDivide { index: u64, dim_plus_one: u64 },
    #[error("P_r requires r >= 1, got {0}")]
    NonPositiveMultiple(u64),
    #[error("index table has {len} entries, expected {order}")]
    IndexTableLength { len: usize, order: u64 },
    #[error("index table entry for class {value} is {index}; need period {period} | index | {order}")]
    IndexTableEntry {
        value: u64,
        index: u64,
        period: u64,
        order: u64,
    },
    #[error("index table must give classes {value} and its dual the same index")]
    IndexTableAsymmetric { value: u64 },
    #[error("dimension overflow")]
    Overflow,
}

#[derive(Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct ModelInner {
    order: u64,
    index_table: Option<Vec<u64>>,
}

/// The cyclic group `Z/N` standing in for the Brauer group.
///
/// Cloning is cheap. Two models compare equal when they have the same order
/// and the same index table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrauerModel(Arc<ModelInner>);

impl BrauerModel {
    /// A period-equals-index model of order `order`.
    pub fn new(order: u64) -> Result<Self, BrauerError> {
        if order == 0 {
            return Err(BrauerError::ZeroOrder);
        }
        Ok(BrauerModel(Arc::new(ModelInner {
            order,
            index_table: None,
        })))
    }

    /// A model with a user-supplied index for every residue.
    ///
    /// Each entry must satisfy `period(a) | index(a) | N`, the trivial class
    /// must have index 1, and a class and its dual must share an index.
    pub fn with_index_table(order: u64, table: Vec<u64>) -> Result<Self, BrauerError> {
        if order == 0 {
            return Err(BrauerError::ZeroOrder);
        }
        if table.len() as u64 != order {
            return Err(BrauerError::IndexTableLength {
                len: table.len(),
                order,
            });
        }
        for (value, &index) in table.iter().enumerate() {
            let value = value as u64;
            let period = order / gcd(value, order);
            if index == 0 || index % period != 0 || order % index != 0 || (value == 0 && index != 1) {
                return Err(BrauerError::IndexTableEntry {
                    value,
                    index,
                    period,
                    order,
                });
            }
            let dual = (order - value) % order;
            if table[dual as usize] != index {
                return Err(BrauerError::IndexTableAsymmetric { value });
            }
        }
        Ok(BrauerModel(Arc::new(ModelInner {
            order,
            index_table: Some(table),
        })))
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn has_index_table(&self) -> bool {
        self.0.index_table.is_some()
    }

    pub fn class(&self, value: u64) -> Result<BrauerClass, BrauerError> {
        if value >= self.order() {
            return Err(BrauerError::ResidueOutOfRange {
                value,
                order: self.order(),
            });
        }
        Ok(BrauerClass {
            model: self.clone(),
            value,
        })
    }

    pub fn trivial(&self) -> BrauerClass {
        BrauerClass {
            model: self.clone(),
            value: 0,
        }
    }

    /// Every class of the model, in residue order.
    pub fn classes(&self) -> impl Iterator<Item = BrauerClass> + '_ {
        (0..self.order()).map(move |value| BrauerClass {
            model: self.clone(),
            value,
        })
    }
}

/// A Brauer-equivalence class: a residue in its model.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrauerClass {
    model: BrauerModel,
    value: u64,
}

impl BrauerClass {
    pub fn model(&self) -> &BrauerModel {
        &self.model
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_trivial(&self) -> bool {
        self.value == 0
    }

    fn same_model(&self, other: &BrauerClass) -> Result<(), BrauerError> {
        if self.model != other.model {
            return Err(BrauerError::ModelMismatch {
                left: self.model.order(),
                right: other.model.order(),
            });
        }
        Ok(())
    }

    fn with_value(&self, value: u64) -> BrauerClass {
        BrauerClass {
            model: self.model.clone(),
            value,
        }
    }

    /// Tensor product of the corresponding varieties: `(a + b) mod N`.
    pub fn compose(&self, other: &BrauerClass) -> Result<BrauerClass, BrauerError> {
        self.same_model(other)?;
        let n = self.model.order();
        Ok(self.with_value(((self.value as u128 + other.value as u128) % n as u128) as u64))
    }

    /// The dual variety's class, `-a mod N`.
    pub fn dual(&self) -> BrauerClass {
        let n = self.model.order();
        self.with_value((n - self.value) % n)
    }

    /// `t`-fold tensor power; negative `t` takes powers of the dual.
    pub fn power(&self, t: i64) -> BrauerClass {
        let n = self.model.order() as i128;
        let v = (t as i128 * self.value as i128).rem_euclid(n);
        self.with_value(v as u64)
    }

    /// Order of the class in `Z/N`.
    pub fn period(&self) -> u64 {
        let n = self.model.order();
        n / gcd(self.value, n)
    }

    pub fn index(&self) -> u64 {
        match &self.model.0.index_table {
            Some(table) => table[self.value as usize],
            None => self.period(),
        }
    }

    /// Whether `other` lies in the cyclic subgroup generated by `self`, i.e.
    /// whether the variety of class `self` maps rationally to one of class
    /// `other`.
    pub fn generates(&self, other: &BrauerClass) -> Result<bool, BrauerError> {
        self.same_model(other)?;
        // <a> = <gcd(a, N)> in Z/N
        let g = gcd(self.value, self.model.order());
        Ok(other.value % g == 0)
    }
}

impl fmt::Display for BrauerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.model.order())
    }
}

/// A Severi-Brauer variety, recorded as its Brauer class and dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeveriBrauer {
    class: BrauerClass,
    dim: u64,
}

impl SeveriBrauer {
    /// Accepts `(c, n)` when `index(c) | n + 1`.
    pub fn new(class: BrauerClass, dim: u64) -> Result<Self, BrauerError> {
        let index = class.index();
        let dim_plus_one = dim.checked_add(1).ok_or(BrauerError::Overflow)?;
        if dim_plus_one % index != 0 {
            return Err(BrauerError::IndexDoesNotDivide {
                index,
                dim_plus_one,
            });
        }
        Ok(SeveriBrauer { class, dim })
    }

    /// The minimal twisted linear subvariety, of dimension `index - 1`.
    pub fn minimal(class: BrauerClass) -> Self {
        let dim = class.index() - 1;
        SeveriBrauer { class, dim }
    }

    /// `P_r`: the variety of dimension `r * index - 1` in the class.
    pub fn multiple(class: BrauerClass, r: u64) -> Result<Self, BrauerError> {
        if r == 0 {
            return Err(BrauerError::NonPositiveMultiple(r));
        }
        let dim = r
            .checked_mul(class.index())
            .ok_or(BrauerError::Overflow)?
            - 1;
        Ok(SeveriBrauer { class, dim })
    }

    pub fn class(&self) -> &BrauerClass {
        &self.class
    }

    pub fn dim(&self) -> u64 {
        self.dim
    }

    pub fn index(&self) -> u64 {
        self.class.index()
    }

    pub fn is_trivial(&self) -> bool {
        self.class.is_trivial()
    }

    pub fn dual(&self) -> SeveriBrauer {
        SeveriBrauer {
            class: self.class.dual(),
            dim: self.dim,
        }
    }

    /// Whether there is a rational map from `self` to `target`.
    pub fn maps_rationally_to(&self, target: &SeveriBrauer) -> Result<bool, BrauerError> {
        self.class.generates(&target.class)
    }
}

/// Class of `Maps_d(Q, P)`: `(Q^dual)^{⊗d} ⊗ P`, i.e. `-d·q + p`.
pub fn maps_class(d: u64, q: &SeveriBrauer, p: &SeveriBrauer) -> Result<BrauerClass, BrauerError> {
    let n = q.class.model.order();
    let d_mod = (d % n) as i64;
    q.class.dual().power(d_mod).compose(&p.class)
}

/// Plain data view of a class, for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub order: u64,
    pub value: u64,
    pub period: u64,
    pub index: u64,
}

impl From<&BrauerClass> for ClassSummary {
    fn from(c: &BrauerClass) -> Self {
        ClassSummary {
            order: c.model().order(),
            value: c.value(),
            period: c.period(),
            index: c.index(),
        }
    }
}
