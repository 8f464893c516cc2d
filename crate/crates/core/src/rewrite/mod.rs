//! Normalization of variety terms to stable birational classes.
//!
//! [`Engine::stable_class`] rewrites a term bottom-up until it collapses to a
//! single [`StableClass`] leaf, recording every step in a [`Derivation`].
//! The order in which redexes are contracted is chosen by a [`Strategy`];
//! every strategy reaches the same class.

mod class;
mod derivation;
mod expand;
mod node;
mod rules;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{divisors, gcd};
use crate::brauer::SeveriBrauer;
use crate::term::{Context, TermError, VarietyTerm};

pub use class::{ClassReport, EntryReport, Exceptional, StableClass, Status, Unresolved};
pub use derivation::{Derivation, ReplayError, Step, StepReport};
pub use node::Node;
pub use rules::{RuleId, RuleTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("term is not valid in this context: {0}")]
    Invalid(#[from] TermError),
    #[error("term is not in validated form (nested or singleton products)")]
    NotValidated,
    #[error("no canonical representative for {0}")]
    NoCanonicalRepresentative(StableClass),
    #[error("no birational rule applies")]
    NoBirationalRule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

/// Which redex to contract next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Deepest redex first, leftmost among equals.
    Innermost,
    /// Shallowest redex first, leftmost among equals.
    Outermost,
    /// Last redex in pre-order.
    Rightmost,
    /// Uniformly random redex from a seeded generator.
    Random(u64),
}

impl Strategy {
    /// Five orders used by the confluence sweep.
    pub fn sweep(seed: u64) -> [Strategy; 5] {
        [
            Strategy::Innermost,
            Strategy::Outermost,
            Strategy::Rightmost,
            Strategy::Random(seed),
            Strategy::Random(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1)),
        ]
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Engine {
    rules: RuleTable,
}

impl Engine {
    pub fn new(rules: RuleTable) -> Self {
        Engine { rules }
    }

    pub fn rules(&self) -> &RuleTable {
        &self.rules
    }

    fn check(&self, t: &VarietyTerm, ctx: &Context) -> Result<(), EngineError> {
        if &t.validate(ctx)? != t {
            return Err(EngineError::NotValidated);
        }
        Ok(())
    }

    pub fn stable_class(
        &self,
        t: &VarietyTerm,
        ctx: &Context,
    ) -> Result<(StableClass, Derivation), EngineError> {
        self.stable_class_with(t, ctx, Strategy::Innermost)
    }

    /// Rewrites to a fixpoint under `strategy`.
    pub fn stable_class_with(
        &self,
        t: &VarietyTerm,
        ctx: &Context,
        strategy: Strategy,
    ) -> Result<(StableClass, Derivation), EngineError> {
        self.check(t, ctx)?;
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut cur = Node::from(t);
        let mut derivation = Derivation::new(cur.clone());
        loop {
            let candidates = rules::redexes(&cur, ctx);
            let redex = match strategy {
                Strategy::Innermost => candidates
                    .iter()
                    .enumerate()
                    .max_by_key(|(k, r)| (r.path.len(), std::cmp::Reverse(*k)))
                    .map(|(_, r)| r),
                Strategy::Outermost => candidates
                    .iter()
                    .enumerate()
                    .min_by_key(|(k, r)| (r.path.len(), *k))
                    .map(|(_, r)| r),
                Strategy::Rightmost => candidates.last(),
                Strategy::Random(_) => candidates.choose(rng.as_mut().expect("seeded")),
            };
            let Some(redex) = redex else { break };
            let slot = cur.at_mut(&redex.path).expect("redex path exists");
            let before = slot.clone();
            let after = self.rules.contract(&before, redex, ctx);
            *slot = after.clone();
            derivation.push(Step {
                rule: redex.rule,
                path: redex.path.clone(),
                before,
                after,
            });
        }
        match cur {
            Node::Class(k) => Ok((k, derivation)),
            other => unreachable!("rewriting stopped at `{other}`"),
        }
    }

    /// The canonical representative `Grass(P^{g-1}, P)` of the class of `t`,
    /// `P` itself for `g = 1`, or `Proj(0)` for the identity.
    pub fn normal_form(
        &self,
        t: &VarietyTerm,
        ctx: &Context,
    ) -> Result<(VarietyTerm, Derivation), EngineError> {
        let (class, mut derivation) = self.stable_class(t, ctx)?;
        let rep = representative(&class, ctx)?;
        derivation.push(Step {
            rule: RuleId::NormalForm,
            path: Vec::new(),
            before: Node::Class(class),
            after: Node::from(&rep),
        });
        Ok((rep, derivation))
    }

    pub fn is_stably_rational(&self, t: &VarietyTerm, ctx: &Context) -> Result<Verdict, EngineError> {
        let (class, _) = self.stable_class(t, ctx)?;
        Ok(rationality(&class))
    }

    pub fn stably_equivalent(
        &self,
        a: &VarietyTerm,
        b: &VarietyTerm,
        ctx: &Context,
    ) -> Result<Verdict, EngineError> {
        let (x, _) = self.stable_class(a, ctx)?;
        let (y, _) = self.stable_class(b, ctx)?;
        Ok(equivalence(&x, &y))
    }

    /// One birational rewrite at the outermost applicable position.
    pub fn birational_expand(
        &self,
        t: &VarietyTerm,
        ctx: &Context,
    ) -> Result<(VarietyTerm, Derivation), EngineError> {
        self.check(t, ctx)?;
        expand::expand(t, ctx)
    }
}

/// Canonical representative of a resolved single-base class.
pub fn representative(class: &StableClass, ctx: &Context) -> Result<VarietyTerm, EngineError> {
    if !class.is_resolved() || class.len() > 1 {
        return Err(EngineError::NoCanonicalRepresentative(class.clone()));
    }
    let Some((c, g)) = class.entries().next() else {
        return Ok(VarietyTerm::Proj(0));
    };
    let base = if c == ctx.base().class() {
        ctx.p()
    } else {
        VarietyTerm::Sb(SeveriBrauer::minimal(c.clone()))
    };
    Ok(if g == 1 {
        base
    } else {
        VarietyTerm::grass(g - 1, base)
    })
}

pub fn rationality(class: &StableClass) -> Verdict {
    match class.status() {
        Status::Resolved if class.is_identity() => Verdict::Yes,
        Status::Resolved => Verdict::No,
        _ => Verdict::Unknown,
    }
}

/// Equivalence of two classes.
///
/// Equal resolved classes are equivalent. Over a single base, distinct
/// divisors are never equivalent, and a nontrivial class is never equivalent
/// to a point. Single factors over bases of coprime index are equivalent
/// only when both are trivial. Everything else is undecided.
pub fn equivalence(x: &StableClass, y: &StableClass) -> Verdict {
    if !x.is_resolved() || !y.is_resolved() {
        return Verdict::Unknown;
    }
    if x == y {
        return Verdict::Yes;
    }
    if x.is_identity() || y.is_identity() {
        return Verdict::No;
    }
    let bases_x: Vec<_> = x.entries().map(|(c, _)| c).collect();
    let bases_y: Vec<_> = y.entries().map(|(c, _)| c).collect();
    if let ([bx], [by]) = (bases_x.as_slice(), bases_y.as_slice()) {
        if bx == by || gcd(bx.index(), by.index()) == 1 {
            return Verdict::No;
        }
    }
    Verdict::Unknown
}

/// One class per divisor of the base index, identity included, in
/// increasing divisor order.
pub fn msym_enumerate(ctx: &Context) -> Vec<StableClass> {
    divisors(ctx.index())
        .into_iter()
        .map(|g| StableClass::entry(ctx.base().class().clone(), g))
        .collect()
}

pub fn stable_class(t: &VarietyTerm, ctx: &Context) -> Result<(StableClass, Derivation), EngineError> {
    Engine::default().stable_class(t, ctx)
}

pub fn normal_form(t: &VarietyTerm, ctx: &Context) -> Result<(VarietyTerm, Derivation), EngineError> {
    Engine::default().normal_form(t, ctx)
}

pub fn is_stably_rational(t: &VarietyTerm, ctx: &Context) -> Result<Verdict, EngineError> {
    Engine::default().is_stably_rational(t, ctx)
}

pub fn stably_equivalent(
    a: &VarietyTerm,
    b: &VarietyTerm,
    ctx: &Context,
) -> Result<Verdict, EngineError> {
    Engine::default().stably_equivalent(a, b, ctx)
}

pub fn birational_expand(
    t: &VarietyTerm,
    ctx: &Context,
) -> Result<(VarietyTerm, Derivation), EngineError> {
    Engine::default().birational_expand(t, ctx)
}

#[cfg(test)]
mod tests;
