//! Variety expressions: the AST, its context, validation and dimension
//! counts. Parsing lives in [`parse`], rendering in the `Display` impl of
//! [`VarietyTerm`] and random generation in [`gen`].
//!
//! `Grass(m, X)` takes the dimension `m` of the twisted linear subspaces, so
//! the rule layer works with `m + 1` where the classification speaks of
//! `Grass(P^{d-1}, P)`.

mod dimension;
pub mod gen;
pub mod parse;
mod render;
mod validate;

use thiserror::Error;

use crate::arith::binomial;
use crate::brauer::{maps_class, BrauerError, BrauerModel, SeveriBrauer};

pub use dimension::DimensionError;
pub use parse::{parse, ParseError, SyntaxError};

/// The distinguished variety `P` that the symbol `P` refers to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Context {
    base: SeveriBrauer,
}

impl Context {
    pub fn new(base: SeveriBrauer) -> Self {
        Context { base }
    }

    /// Builds `Z/order`, picks the class `class` and checks `index | dim + 1`.
    pub fn from_parts(order: u64, class: u64, dim: u64) -> Result<Self, BrauerError> {
        let model = BrauerModel::new(order)?;
        let base = SeveriBrauer::new(model.class(class)?, dim)?;
        Ok(Context { base })
    }

    /// Generator class of `Z/index`, minimal dimension `index - 1`.
    pub fn with_index(index: u64) -> Result<Self, BrauerError> {
        let model = BrauerModel::new(index)?;
        let class = if index == 1 { 0 } else { 1 };
        Ok(Context {
            base: SeveriBrauer::minimal(model.class(class)?),
        })
    }

    pub fn base(&self) -> &SeveriBrauer {
        &self.base
    }

    pub fn model(&self) -> &BrauerModel {
        self.base.class().model()
    }

    pub fn index(&self) -> u64 {
        self.base.index()
    }

    pub fn dim(&self) -> u64 {
        self.base.dim()
    }

    /// The base variety as a term.
    pub fn p(&self) -> VarietyTerm {
        VarietyTerm::Base(self.base.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VarietyTerm {
    /// Projective space `P^n`.
    Proj(u64),
    /// The context's base variety, written `P`.
    Base(SeveriBrauer),
    /// Any other Severi-Brauer variety of the model, written `SB(a, n)`.
    Sb(SeveriBrauer),
    Dual(Box<VarietyTerm>),
    Sym(u64, Box<VarietyTerm>),
    /// `Grass(m, X)`: twisted linear `P^m`s in `X`.
    Grass(u64, Box<VarietyTerm>),
    M0bar(u64, Box<VarietyTerm>),
    /// `MSB(m, d, X)`: maps from `m`-dimensional Severi-Brauer varieties `Q`
    /// with `O_X(1)` pulling back to `O_Q(d)`.
    Msb(u64, u64, Box<VarietyTerm>),
    /// `Maps_d(Q, X)`.
    Maps(u64, Box<VarietyTerm>, Box<VarietyTerm>),
    Product(Vec<VarietyTerm>),
}

impl VarietyTerm {
    pub fn sym(d: u64, t: VarietyTerm) -> Self {
        VarietyTerm::Sym(d, Box::new(t))
    }

    pub fn grass(m: u64, t: VarietyTerm) -> Self {
        VarietyTerm::Grass(m, Box::new(t))
    }

    pub fn m0bar(d: u64, t: VarietyTerm) -> Self {
        VarietyTerm::M0bar(d, Box::new(t))
    }

    pub fn msb(m: u64, d: u64, t: VarietyTerm) -> Self {
        VarietyTerm::Msb(m, d, Box::new(t))
    }

    pub fn maps(d: u64, q: VarietyTerm, p: VarietyTerm) -> Self {
        VarietyTerm::Maps(d, Box::new(q), Box::new(p))
    }

    pub fn dual(t: VarietyTerm) -> Self {
        VarietyTerm::Dual(Box::new(t))
    }

    /// Product of the factors, flattening nested products. A single factor
    /// is returned as is.
    pub fn product(factors: impl IntoIterator<Item = VarietyTerm>) -> Self {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                VarietyTerm::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            VarietyTerm::Product(flat)
        }
    }

    /// The constructor name as written in the grammar.
    pub fn head(&self) -> &'static str {
        match self {
            VarietyTerm::Proj(_) => "Proj",
            VarietyTerm::Base(_) => "P",
            VarietyTerm::Sb(_) => "SB",
            VarietyTerm::Dual(_) => "Dual",
            VarietyTerm::Sym(..) => "Sym",
            VarietyTerm::Grass(..) => "Grass",
            VarietyTerm::M0bar(..) => "M0bar",
            VarietyTerm::Msb(..) => "MSB",
            VarietyTerm::Maps(..) => "Maps",
            VarietyTerm::Product(_) => "Product",
        }
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        1 + self.children().map(VarietyTerm::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().map(VarietyTerm::depth).max().unwrap_or(0)
    }

    pub fn children(&self) -> Box<dyn Iterator<Item = &VarietyTerm> + '_> {
        match self {
            VarietyTerm::Proj(_) | VarietyTerm::Base(_) | VarietyTerm::Sb(_) => {
                Box::new(std::iter::empty())
            }
            VarietyTerm::Dual(t)
            | VarietyTerm::Sym(_, t)
            | VarietyTerm::Grass(_, t)
            | VarietyTerm::M0bar(_, t)
            | VarietyTerm::Msb(_, _, t) => Box::new(std::iter::once(&**t)),
            VarietyTerm::Maps(_, q, p) => Box::new([&**q, &**p].into_iter()),
            VarietyTerm::Product(fs) => Box::new(fs.iter()),
        }
    }

    /// The Severi-Brauer variety this term denotes, if it denotes one.
    ///
    /// `Proj(n)` is the trivial class in dimension `n`, `Dual` takes the
    /// inverse class and `Maps_d(Q, X)` is the variety of class
    /// `-d·q + x` and dimension `C(m + d, m)·(n + 1) - 1`.
    pub fn as_severi_brauer(&self, ctx: &Context) -> Result<SeveriBrauer, TermError> {
        match self {
            VarietyTerm::Proj(n) => Ok(SeveriBrauer::new(ctx.model().trivial(), *n)?),
            VarietyTerm::Base(v) | VarietyTerm::Sb(v) => Ok(v.clone()),
            VarietyTerm::Dual(t) => Ok(t.as_severi_brauer(ctx)?.dual()),
            VarietyTerm::Maps(d, q, p) => {
                let q = q.as_severi_brauer(ctx)?;
                let p = p.as_severi_brauer(ctx)?;
                let class = maps_class(*d, &q, &p)?;
                let sections = binomial(q.dim() + d, q.dim()).ok_or(TermError::Overflow)?;
                let dim = sections
                    .checked_mul(p.dim() + 1)
                    .ok_or(TermError::Overflow)?
                    - 1;
                Ok(SeveriBrauer::new(class, dim)?)
            }
            other => Err(TermError::NotSeveriBrauer {
                found: other.to_string(),
            }),
        }
    }

    /// Whether the term denotes a Severi-Brauer variety (structurally).
    pub fn is_severi_brauer_shaped(&self) -> bool {
        match self {
            VarietyTerm::Proj(_) | VarietyTerm::Base(_) | VarietyTerm::Sb(_) => true,
            VarietyTerm::Dual(t) => t.is_severi_brauer_shaped(),
            VarietyTerm::Maps(_, q, p) => q.is_severi_brauer_shaped() && p.is_severi_brauer_shaped(),
            _ => false,
        }
    }

    pub fn validate(&self, ctx: &Context) -> Result<VarietyTerm, TermError> {
        validate::validate(self, ctx)
    }

    /// Dimension of the variety. See [`DimensionError`] for the cases that do
    /// not produce a number.
    pub fn dimension(&self) -> Result<u64, DimensionError> {
        dimension::dimension(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("expected a Severi-Brauer variety, found `{found}`")]
    NotSeveriBrauer { found: String },
    #[error("Grass({m}, X) needs m <= dim X = {n}")]
    GrassBound { m: u64, n: u64 },
    #[error("MSB({m}, d, X) needs 0 <= m <= dim X = {n}")]
    MsbBound { m: u64, n: u64 },
    #[error("{constructor} needs degree d >= 1")]
    ZeroDegree { constructor: &'static str },
    #[error("M0bar(X, d) needs a positive-dimensional X")]
    PointTarget,
    #[error("empty product")]
    EmptyProduct,
    #[error("`P` refers to a different base than the context's")]
    ForeignBase,
    #[error("invalid Severi-Brauer data: {0}")]
    Brauer(#[from] BrauerError),
    #[error("dimension overflow")]
    Overflow,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_flattens_and_unwraps() {
        let ctx = Context::with_index(4).unwrap();
        let inner = VarietyTerm::product([ctx.p(), VarietyTerm::Proj(2)]);
        let outer = VarietyTerm::product([inner, VarietyTerm::Proj(1)]);
        assert_eq!(
            outer,
            VarietyTerm::Product(vec![ctx.p(), VarietyTerm::Proj(2), VarietyTerm::Proj(1)])
        );
        assert_eq!(VarietyTerm::product([ctx.p()]), ctx.p());
    }

    #[test]
    fn severi_brauer_views() {
        let ctx = Context::from_parts(6, 1, 5).unwrap();
        let dual = VarietyTerm::dual(ctx.p()).as_severi_brauer(&ctx).unwrap();
        assert_eq!(dual.class().value(), 5);
        assert_eq!(dual.dim(), 5);

        // Maps_3(P, P): class -3 + 1 = 4 mod 6, dim C(8, 5) * 6 - 1
        let maps = VarietyTerm::maps(3, ctx.p(), ctx.p())
            .as_severi_brauer(&ctx)
            .unwrap();
        assert_eq!(maps.class().value(), 4);
        assert_eq!(maps.index(), 3);
        assert_eq!(maps.dim(), 56 * 6 - 1);

        let proj = VarietyTerm::Proj(3).as_severi_brauer(&ctx).unwrap();
        assert!(proj.is_trivial());
        assert!(VarietyTerm::sym(2, ctx.p()).as_severi_brauer(&ctx).is_err());
    }
}
