//! Birational (not just stable) rewrites. Each one preserves dimension.

use super::derivation::{Derivation, Step};
use super::node::Node;
use super::rules::RuleId;
use super::EngineError;
use crate::brauer::SeveriBrauer;
use crate::term::{Context, VarietyTerm};

/// A birational replacement for `t` itself, if one applies at the root.
/// `slot` is true when `t` must stay a Severi-Brauer variety.
fn at_root(t: &VarietyTerm, ctx: &Context, slot: bool) -> Option<(RuleId, VarietyTerm)> {
    match t {
        VarietyTerm::Sym(d, x) if *d >= 1 => {
            if let Ok(v) = x.as_severi_brauer(ctx) {
                if let (true, Some(extra)) = (*d <= v.dim() + 1, d.checked_mul(d - 1)) {
                    let replacement = VarietyTerm::product([
                        VarietyTerm::grass(d - 1, (**x).clone()),
                        VarietyTerm::Proj(extra),
                    ]);
                    return Some((RuleId::SymToGrassmannian, replacement));
                }
            }
            if let VarietyTerm::Product(fs) = &**x {
                for (k, f) in fs.iter().enumerate() {
                    let VarietyTerm::Proj(r) = f else { continue };
                    let mut rest = fs.clone();
                    rest.remove(k);
                    let u = VarietyTerm::product(rest);
                    let Some(rd) = r.checked_mul(*d) else { continue };
                    if matches!(u.dimension(), Ok(dim) if dim >= 1) {
                        let replacement =
                            VarietyTerm::product([VarietyTerm::sym(*d, u), VarietyTerm::Proj(rd)]);
                        return Some((RuleId::SymOfProduct, replacement));
                    }
                }
            }
            None
        }
        VarietyTerm::Base(v) | VarietyTerm::Sb(v) if !slot && !v.is_trivial() => {
            let min = SeveriBrauer::minimal(v.class().clone());
            if v.dim() <= min.dim() {
                return None;
            }
            let extra = v.dim() - min.dim();
            let min_term = if &min == ctx.base() {
                ctx.p()
            } else {
                VarietyTerm::Sb(min)
            };
            Some((
                RuleId::MinimalSplit,
                VarietyTerm::Product(vec![min_term, VarietyTerm::Proj(extra)]),
            ))
        }
        _ => None,
    }
}

/// Pre-order search. Returns the rule, the path of the rewritten subtree and
/// its replacement. When the replacement is a product landing inside a
/// product, the parent is reported instead, already flattened.
fn search(
    t: &VarietyTerm,
    ctx: &Context,
    slot: bool,
    path: &mut Vec<usize>,
) -> Option<(RuleId, Vec<usize>, VarietyTerm)> {
    if let Some((rule, replacement)) = at_root(t, ctx, slot) {
        return Some((rule, path.clone(), replacement));
    }
    let child_slot = !matches!(t, VarietyTerm::Sym(..) | VarietyTerm::Product(_));
    for (k, child) in t.children().enumerate() {
        path.push(k);
        let found = search(child, ctx, child_slot, path);
        path.pop();
        if let Some((rule, child_path, replacement)) = found {
            if let (VarietyTerm::Product(fs), VarietyTerm::Product(_)) = (t, &replacement) {
                if child_path.len() == path.len() + 1 {
                    let mut out = fs.clone();
                    out[k] = replacement;
                    return Some((rule, path.clone(), VarietyTerm::product(out)));
                }
            }
            return Some((rule, child_path, replacement));
        }
    }
    None
}

fn replace(t: &VarietyTerm, path: &[usize], with: VarietyTerm) -> VarietyTerm {
    let Some((&k, rest)) = path.split_first() else {
        return with;
    };
    let sub = |x: &VarietyTerm| Box::new(replace(x, rest, with.clone()));
    match (t, k) {
        (VarietyTerm::Dual(x), 0) => VarietyTerm::Dual(sub(x)),
        (VarietyTerm::Sym(d, x), 0) => VarietyTerm::Sym(*d, sub(x)),
        (VarietyTerm::Grass(m, x), 0) => VarietyTerm::Grass(*m, sub(x)),
        (VarietyTerm::M0bar(d, x), 0) => VarietyTerm::M0bar(*d, sub(x)),
        (VarietyTerm::Msb(m, d, x), 0) => VarietyTerm::Msb(*m, *d, sub(x)),
        (VarietyTerm::Maps(d, q, p), 0) => VarietyTerm::Maps(*d, sub(q), p.clone()),
        (VarietyTerm::Maps(d, q, p), 1) => VarietyTerm::Maps(*d, q.clone(), sub(p)),
        (VarietyTerm::Product(fs), k) => {
            let mut fs = fs.clone();
            fs[k] = replace(&fs[k], rest, with);
            VarietyTerm::Product(fs)
        }
        _ => unreachable!("path leaves the term"),
    }
}

pub(super) fn expand(
    t: &VarietyTerm,
    ctx: &Context,
) -> Result<(VarietyTerm, Derivation), EngineError> {
    let (rule, path, replacement) =
        search(t, ctx, false, &mut Vec::new()).ok_or(EngineError::NoBirationalRule)?;
    let before = Node::from(&replace_lookup(t, &path));
    let after = Node::from(&replacement);
    let out = replace(t, &path, replacement);
    debug_assert_eq!(out.validate(ctx).as_ref(), Ok(&out));
    let mut derivation = Derivation::new(Node::from(t));
    derivation.push(Step {
        rule,
        path,
        before,
        after,
    });
    Ok((out, derivation))
}

fn replace_lookup(t: &VarietyTerm, path: &[usize]) -> VarietyTerm {
    match path.split_first() {
        None => t.clone(),
        Some((&k, rest)) => replace_lookup(t.children().nth(k).expect("valid path"), rest),
    }
}
