//! Rule identifiers, their citations, and the contraction of each redex.

use std::fmt;

use super::class::{Exceptional, StableClass, Unresolved};
use super::node::Node;
use crate::arith::gcd;
use crate::brauer::SeveriBrauer;
use crate::term::Context;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    ProjectiveSpace,
    SeveriBrauer,
    SymmetricPower,
    Grassmannian,
    ConicsEven,
    ConicsOdd,
    SubvarietyMaps,
    Maps,
    Dual,
    Product,
    NormalForm,
    SymToGrassmannian,
    SymOfProduct,
    MinimalSplit,
}

impl RuleId {
    pub const ALL: [RuleId; 14] = [
        RuleId::ProjectiveSpace,
        RuleId::SeveriBrauer,
        RuleId::SymmetricPower,
        RuleId::Grassmannian,
        RuleId::ConicsEven,
        RuleId::ConicsOdd,
        RuleId::SubvarietyMaps,
        RuleId::Maps,
        RuleId::Dual,
        RuleId::Product,
        RuleId::NormalForm,
        RuleId::SymToGrassmannian,
        RuleId::SymOfProduct,
        RuleId::MinimalSplit,
    ];

    pub fn id(self) -> &'static str {
        match self {
            RuleId::ProjectiveSpace => "R1",
            RuleId::SeveriBrauer => "R2",
            RuleId::SymmetricPower => "R3",
            RuleId::Grassmannian => "R4",
            RuleId::ConicsEven => "R5",
            RuleId::ConicsOdd => "R6",
            RuleId::SubvarietyMaps => "R7",
            RuleId::Maps => "R8",
            RuleId::Dual => "R9",
            RuleId::Product => "R10",
            RuleId::NormalForm => "NF",
            RuleId::SymToGrassmannian => "B1",
            RuleId::SymOfProduct => "B2",
            RuleId::MinimalSplit => "B3",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RuleId::ProjectiveSpace => "projective space",
            RuleId::SeveriBrauer => "Severi-Brauer variety",
            RuleId::SymmetricPower => "symmetric power",
            RuleId::Grassmannian => "Grassmannian",
            RuleId::ConicsEven => "stable maps, even degree",
            RuleId::ConicsOdd => "stable maps, odd degree",
            RuleId::SubvarietyMaps => "Severi-Brauer subvariety maps",
            RuleId::Maps => "space of maps",
            RuleId::Dual => "dual",
            RuleId::Product => "product",
            RuleId::NormalForm => "canonical representative",
            RuleId::SymToGrassmannian => "symmetric power to Grassmannian",
            RuleId::SymOfProduct => "symmetric power of a product with P^r",
            RuleId::MinimalSplit => "split off the minimal subvariety",
        }
    }

    /// The statement the rule implements.
    pub fn citation(self) -> &'static str {
        match self {
            RuleId::ProjectiveSpace => "P^n ~s P^0",
            RuleId::SeveriBrauer => {
                "P_r ≃b P^min × P^m, so P ~s P^min = Grass(P^0, P); P trivial iff P(k) ≠ ∅"
            }
            RuleId::SymmetricPower => {
                "Sym^d(P) ~s Sym^(d,i)(P) for every d ≥ 0; Sym^d(P) ≃b Grass(P^(d-1), P) × P^(d(d-1)) \
                 for d ≤ n+1; U ~s V ⇒ Sym^m(U) ~s Sym^m(V)"
            }
            RuleId::Grassmannian => "Grass(P^(d-1), P) ~s Grass(P^((d,i)-1), P)",
            RuleId::ConicsEven => "M0bar(P, 2e) ~s P unless dim P = e = 1",
            RuleId::ConicsOdd => "M0bar(P, 2e+1) ~s Grass(P^1, P)",
            RuleId::SubvarietyMaps => {
                "M°(P^m; P, d) ~s M°(P^m; P', d') when P ~ P' and d ≡ d' mod (m+1); \
                 ~s Grass(P^m, P) if d ≡ 1 mod (m+1); ~s P if d ≡ 0 mod (m+1) and (m+1) | 420; \
                 ~s Grass(P^m, P) if (m+1, d·per(P)) = 1"
            }
            RuleId::Maps => "Maps_d(Q, P) ~ (Q^∨)^⊗d ⊗ P",
            RuleId::Dual => "P^∨ = |O_P(1)| is the inverse class",
            RuleId::Product => {
                "Grass(P^(d-1), P) × Grass(P^(e-1), P) ~s Grass(P^((d,e)-1), P); \
                 Grass(P^(i-1), P) ~s P^0"
            }
            RuleId::NormalForm => "MSym(P) = {Grass(P^(d-1), P) : d | i(P)}",
            RuleId::SymToGrassmannian => "Sym^d(P) ≃b Grass(P^(d-1), P) × P^(d(d-1)) for d ≤ n+1",
            RuleId::SymOfProduct => "Sym^m(U × P^r) ≃b Sym^m(U) × P^(rm)",
            RuleId::MinimalSplit => "P_r ≃b P^min × P^m, m = (r-1)(dim P^min + 1)",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.id(), self.name())
    }
}

/// The arithmetic the classification rules use. Fields are public so that
/// test fixtures can swap in a wrong rule and watch the sweeps catch it.
#[derive(Debug, Clone, Copy)]
pub struct RuleTable {
    /// Divisor attached to `Sym^d` over a class of index `i`: `(d, i)`.
    pub sym_divisor: fn(u64, u64) -> u64,
    /// Divisor attached to `Grass(P^{k-1}, P)` over index `i`: `(k, i)`.
    pub grass_divisor: fn(u64, u64) -> u64,
    /// Product of two factors over the same base: `(g, h)`.
    pub merge: fn(u64, u64) -> u64,
    /// `MSB(m, d, P) ~s P` for `d ≡ 0 mod (m+1)` is used only when
    /// `(m+1)` divides this.
    pub msb_rational_quotient_modulus: u64,
}

impl Default for RuleTable {
    fn default() -> Self {
        RuleTable {
            sym_divisor: gcd,
            grass_divisor: gcd,
            merge: gcd,
            msb_rational_quotient_modulus: 420,
        }
    }
}

/// A rewritable position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Redex {
    pub rule: RuleId,
    pub path: Vec<usize>,
    /// For products: the two class leaves to merge.
    pub pair: Option<(usize, usize)>,
}

/// Collects every redex in pre-order. Inside a Severi-Brauer argument slot
/// (of `Dual`, `Grass`, `M0bar`, `MSB`, `Maps`) a variety is kept as a
/// variety, so only `Dual` and `Maps` may fire there.
pub(crate) fn redexes(root: &Node, ctx: &Context) -> Vec<Redex> {
    let mut out = Vec::new();
    collect(root, &mut Vec::new(), false, ctx, &mut out);
    out
}

fn collect(node: &Node, path: &mut Vec<usize>, slot: bool, ctx: &Context, out: &mut Vec<Redex>) {
    let here = |rule: RuleId, out: &mut Vec<Redex>| {
        out.push(Redex {
            rule,
            path: path.clone(),
            pair: None,
        })
    };
    match node {
        Node::Proj(_) if !slot => here(RuleId::ProjectiveSpace, out),
        Node::Base(_) | Node::Sb(_) if !slot => here(RuleId::SeveriBrauer, out),
        Node::Proj(_) | Node::Base(_) | Node::Sb(_) | Node::Class(_) => {}
        Node::Dual(x) => {
            if x.severi_brauer(ctx).is_some() {
                here(RuleId::Dual, out);
            }
            descend(x, 0, path, true, ctx, out);
        }
        Node::Maps(_, q, p) => {
            if q.severi_brauer(ctx).is_some() && p.severi_brauer(ctx).is_some() {
                here(RuleId::Maps, out);
            }
            descend(q, 0, path, true, ctx, out);
            descend(p, 1, path, true, ctx, out);
        }
        Node::Sym(d, x) => {
            if *d == 0 || matches!(**x, Node::Class(_)) {
                here(RuleId::SymmetricPower, out);
            }
            descend(x, 0, path, false, ctx, out);
        }
        Node::Grass(_, x) => {
            here(RuleId::Grassmannian, out);
            descend(x, 0, path, true, ctx, out);
        }
        Node::M0bar(d, x) => {
            let rule = if d % 2 == 0 {
                RuleId::ConicsEven
            } else {
                RuleId::ConicsOdd
            };
            here(rule, out);
            descend(x, 0, path, true, ctx, out);
        }
        Node::Msb(_, _, x) => {
            here(RuleId::SubvarietyMaps, out);
            descend(x, 0, path, true, ctx, out);
        }
        Node::Product(fs) => {
            let classes: Vec<usize> = fs
                .iter()
                .enumerate()
                .filter(|(_, f)| matches!(f, Node::Class(_)))
                .map(|(k, _)| k)
                .collect();
            for (a, &j) in classes.iter().enumerate() {
                for &k in &classes[a + 1..] {
                    out.push(Redex {
                        rule: RuleId::Product,
                        path: path.clone(),
                        pair: Some((j, k)),
                    });
                }
            }
            for (k, f) in fs.iter().enumerate() {
                descend(f, k, path, false, ctx, out);
            }
        }
    }
}

fn descend(
    node: &Node,
    k: usize,
    path: &mut Vec<usize>,
    slot: bool,
    ctx: &Context,
    out: &mut Vec<Redex>,
) {
    path.push(k);
    collect(node, path, slot, ctx, out);
    path.pop();
}

fn severi_brauer(x: &Node, ctx: &Context) -> SeveriBrauer {
    x.severi_brauer(ctx)
        .expect("validated terms have Severi-Brauer arguments here")
}

fn class_node(k: StableClass) -> Node {
    Node::Class(k)
}

/// Wraps a Severi-Brauer variety back into a node, as `P` when it is the
/// context's base.
fn sb_node(v: SeveriBrauer, ctx: &Context) -> Node {
    if &v == ctx.base() {
        Node::Base(v)
    } else {
        Node::Sb(v)
    }
}

impl RuleTable {
    /// Contracts `redex`, whose subtree is `node`.
    pub(crate) fn contract(&self, node: &Node, redex: &Redex, ctx: &Context) -> Node {
        match (redex.rule, node) {
            (RuleId::ProjectiveSpace, Node::Proj(_)) => class_node(StableClass::identity()),
            (RuleId::SeveriBrauer, Node::Base(v) | Node::Sb(v)) => {
                class_node(StableClass::entry(v.class().clone(), 1))
            }
            (RuleId::Dual, Node::Dual(x)) => sb_node(severi_brauer(x, ctx).dual(), ctx),
            (RuleId::Maps, Node::Maps(..)) => sb_node(severi_brauer(node, ctx), ctx),
            (RuleId::SymmetricPower, Node::Sym(d, x)) => class_node(self.sym(*d, x)),
            (RuleId::Grassmannian, Node::Grass(m, x)) => {
                let v = severi_brauer(x, ctx);
                let g = (self.grass_divisor)(m + 1, v.index());
                class_node(StableClass::entry(v.class().clone(), g))
            }
            (RuleId::ConicsEven | RuleId::ConicsOdd, Node::M0bar(d, x)) => {
                class_node(self.m0bar(*d, &severi_brauer(x, ctx)))
            }
            (RuleId::SubvarietyMaps, Node::Msb(m, d, x)) => {
                class_node(self.msb(*m, *d, &severi_brauer(x, ctx)))
            }
            (RuleId::Product, Node::Product(fs)) => {
                let (j, k) = redex.pair.expect("product redexes name a pair");
                let a = fs[j].as_class().expect("class leaf");
                let b = fs[k].as_class().expect("class leaf");
                let merged = a.merge_with(b, self.merge);
                if fs.len() == 2 {
                    return class_node(merged);
                }
                let mut rest = fs.clone();
                rest[j] = class_node(merged);
                rest.remove(k);
                Node::Product(rest)
            }
            (rule, node) => unreachable!("rule {rule} does not match `{node}`"),
        }
    }

    fn sym(&self, d: u64, x: &Node) -> StableClass {
        if d == 0 {
            return StableClass::identity();
        }
        let k = x.as_class().expect("Sym fires on a class leaf");
        if !k.is_resolved() {
            return k.markers_only();
        }
        if k.is_identity() {
            return StableClass::identity();
        }
        let mut entries = k.entries();
        match (entries.next(), entries.next()) {
            (Some((c, 1)), None) => {
                StableClass::entry(c.clone(), (self.sym_divisor)(d, c.index()))
            }
            _ => StableClass::unresolved(Unresolved::SymmetricPower {
                d,
                of: k.to_string(),
            }),
        }
    }

    fn m0bar(&self, d: u64, v: &SeveriBrauer) -> StableClass {
        let c = v.class().clone();
        let i = v.index();
        if d % 2 == 0 {
            if v.dim() == 1 && d == 2 {
                return StableClass::exceptional(Exceptional::DoubleCoversOfConic {
                    base: c.value(),
                    coarse_divisor: (self.sym_divisor)(2, i),
                });
            }
            StableClass::entry(c, 1)
        } else {
            StableClass::entry(c, (self.grass_divisor)(2, i))
        }
    }

    fn msb(&self, m: u64, d: u64, v: &SeveriBrauer) -> StableClass {
        let c = v.class().clone();
        let i = v.index();
        let period = c.period();
        let k = m + 1;
        let d0 = (d - 1) % k + 1;
        if d0 == 1 {
            StableClass::entry(c, (self.grass_divisor)(k, i))
        } else if d0 == k && self.msb_rational_quotient_modulus % k == 0 {
            StableClass::entry(c, 1)
        } else if gcd(k, d0) == 1 && gcd(k, period) == 1 {
            StableClass::entry(c, (self.grass_divisor)(k, i))
        } else {
            StableClass::unresolved(Unresolved::Msb { m, d0, period })
        }
    }
}
