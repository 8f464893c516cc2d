//! The tree the rules rewrite: a [`VarietyTerm`] whose subterms may already
//! have been replaced by their stable classes.

use std::fmt;

use super::class::StableClass;
use crate::brauer::SeveriBrauer;
use crate::term::{Context, VarietyTerm};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Proj(u64),
    Base(SeveriBrauer),
    Sb(SeveriBrauer),
    Dual(Box<Node>),
    Sym(u64, Box<Node>),
    Grass(u64, Box<Node>),
    M0bar(u64, Box<Node>),
    Msb(u64, u64, Box<Node>),
    Maps(u64, Box<Node>, Box<Node>),
    Product(Vec<Node>),
    Class(StableClass),
}

impl From<&VarietyTerm> for Node {
    fn from(t: &VarietyTerm) -> Self {
        let b = |x: &VarietyTerm| Box::new(Node::from(x));
        match t {
            VarietyTerm::Proj(n) => Node::Proj(*n),
            VarietyTerm::Base(v) => Node::Base(v.clone()),
            VarietyTerm::Sb(v) => Node::Sb(v.clone()),
            VarietyTerm::Dual(x) => Node::Dual(b(x)),
            VarietyTerm::Sym(d, x) => Node::Sym(*d, b(x)),
            VarietyTerm::Grass(m, x) => Node::Grass(*m, b(x)),
            VarietyTerm::M0bar(d, x) => Node::M0bar(*d, b(x)),
            VarietyTerm::Msb(m, d, x) => Node::Msb(*m, *d, b(x)),
            VarietyTerm::Maps(d, q, p) => Node::Maps(*d, b(q), b(p)),
            VarietyTerm::Product(fs) => Node::Product(fs.iter().map(Node::from).collect()),
        }
    }
}

impl Node {
    /// Back to a term, when no class leaves remain.
    pub fn to_term(&self) -> Option<VarietyTerm> {
        let b = |x: &Node| x.to_term().map(Box::new);
        Some(match self {
            Node::Proj(n) => VarietyTerm::Proj(*n),
            Node::Base(v) => VarietyTerm::Base(v.clone()),
            Node::Sb(v) => VarietyTerm::Sb(v.clone()),
            Node::Dual(x) => VarietyTerm::Dual(b(x)?),
            Node::Sym(d, x) => VarietyTerm::Sym(*d, b(x)?),
            Node::Grass(m, x) => VarietyTerm::Grass(*m, b(x)?),
            Node::M0bar(d, x) => VarietyTerm::M0bar(*d, b(x)?),
            Node::Msb(m, d, x) => VarietyTerm::Msb(*m, *d, b(x)?),
            Node::Maps(d, q, p) => VarietyTerm::Maps(*d, b(q)?, b(p)?),
            Node::Product(fs) => {
                VarietyTerm::Product(fs.iter().map(Node::to_term).collect::<Option<_>>()?)
            }
            Node::Class(_) => return None,
        })
    }

    pub fn as_class(&self) -> Option<&StableClass> {
        match self {
            Node::Class(k) => Some(k),
            _ => None,
        }
    }

    /// The Severi-Brauer variety a class-free subtree denotes.
    pub fn severi_brauer(&self, ctx: &Context) -> Option<SeveriBrauer> {
        self.to_term()?.as_severi_brauer(ctx).ok()
    }

    pub fn child_mut(&mut self, k: usize) -> Option<&mut Node> {
        match (self, k) {
            (Node::Dual(x), 0)
            | (Node::Sym(_, x), 0)
            | (Node::Grass(_, x), 0)
            | (Node::M0bar(_, x), 0)
            | (Node::Msb(_, _, x), 0)
            | (Node::Maps(_, x, _), 0)
            | (Node::Maps(_, _, x), 1) => Some(x),
            (Node::Product(fs), k) => fs.get_mut(k),
            _ => None,
        }
    }

    pub fn children(&self) -> Vec<&Node> {
        match self {
            Node::Dual(x)
            | Node::Sym(_, x)
            | Node::Grass(_, x)
            | Node::M0bar(_, x)
            | Node::Msb(_, _, x) => vec![x],
            Node::Maps(_, q, p) => vec![q, p],
            Node::Product(fs) => fs.iter().collect(),
            _ => Vec::new(),
        }
    }

    pub fn at(&self, path: &[usize]) -> Option<&Node> {
        match path.split_first() {
            None => Some(self),
            Some((&k, rest)) => self.children().get(k)?.at(rest),
        }
    }

    pub fn at_mut(&mut self, path: &[usize]) -> Option<&mut Node> {
        match path.split_first() {
            None => Some(self),
            Some((&k, rest)) => self.child_mut(k)?.at_mut(rest),
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Proj(n) => write!(f, "Proj({n})"),
            Node::Base(_) => f.write_str("P"),
            Node::Sb(v) => write!(f, "SB({}, {})", v.class().value(), v.dim()),
            Node::Dual(x) => write!(f, "Dual({x})"),
            Node::Sym(d, x) => write!(f, "Sym^{d}({x})"),
            Node::Grass(m, x) => write!(f, "Grass({m}, {x})"),
            Node::M0bar(d, x) => write!(f, "M0bar({x}, {d})"),
            Node::Msb(m, d, x) => write!(f, "MSB({m}, {d}, {x})"),
            Node::Maps(d, q, p) => write!(f, "Maps_{d}({q}, {p})"),
            Node::Product(fs) => {
                for (k, x) in fs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" * ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            Node::Class(k) => write!(f, "{k}"),
        }
    }
}
