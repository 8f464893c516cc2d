//! Brute-force checks of the arithmetic the rewrite rules rest on.
//!
//! Each sweep enumerates a fixed parameter range in a fixed order and
//! recomputes expected values from raw integer formulas, so a report is a
//! pure function of its ranges and seed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::brauer::{maps_class, BrauerModel, SeveriBrauer};
use crate::rewrite::{msym_enumerate, Engine, StableClass, Strategy};
use crate::term::gen::TermGenerator;
use crate::term::{Context, VarietyTerm};

/// Failures kept per report; `failures_total` counts all of them.
pub const MAX_RECORDED_FAILURES: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub inputs: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub suite: String,
    pub ranges: BTreeMap<String, u64>,
    pub cases_checked: u64,
    pub failures_total: u64,
    pub failures: Vec<Failure>,
}

impl SweepReport {
    pub fn new(suite: &str, ranges: &[(&str, u64)]) -> Self {
        SweepReport {
            suite: suite.to_owned(),
            ranges: ranges.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            cases_checked: 0,
            failures_total: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }

    /// Counts one case and records it if `expected != actual`.
    pub fn check<T: PartialEq + Display>(&mut self, inputs: impl FnOnce() -> String, expected: T, actual: T) {
        self.cases_checked += 1;
        if expected != actual {
            self.fail(inputs(), expected, actual);
        }
    }

    pub fn fail(&mut self, inputs: String, expected: impl Display, actual: impl Display) {
        self.failures_total += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(Failure {
                inputs,
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    /// Concatenates another report's cases into this one.
    pub fn absorb(&mut self, other: SweepReport) {
        self.cases_checked += other.cases_checked;
        self.failures_total += other.failures_total;
        let room = MAX_RECORDED_FAILURES - self.failures.len();
        self.failures.extend(other.failures.into_iter().take(room));
    }
}

fn brute_divisors(i: u64) -> Vec<u64> {
    (1..=i).filter(|d| i % d == 0).collect()
}

fn euclid(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        euclid(b, a % b)
    }
}

/// Divisor a resolved single-base class assigns to the base of `ctx`.
fn divisor_of(k: &StableClass, ctx: &Context) -> Option<u64> {
    if !k.is_resolved() || k.entries().any(|(c, _)| c != ctx.base().class()) {
        return None;
    }
    Some(k.divisor_for(ctx.base().class()).unwrap_or(ctx.index()))
}

fn show(d: Option<u64>) -> String {
    d.map_or_else(|| "none".to_owned(), |d| d.to_string())
}

/// Divisors of `i` under gcd form a commutative idempotent monoid with
/// identity `i`, the enumeration lists exactly those classes, and the engine
/// multiplies representatives by gcd.
pub fn check_monoid(i: u64, engine: &Engine) -> SweepReport {
    let mut r = SweepReport::new("monoid", &[("index", i)]);
    let ds = brute_divisors(i);
    let set: BTreeSet<u64> = ds.iter().copied().collect();

    for &a in &ds {
        r.check(|| format!("i={i} ({a}, {a})"), a, euclid(a, a));
        r.check(|| format!("i={i} identity with {a}"), a, euclid(a, i));
        for &b in &ds {
            let ab = euclid(a, b);
            r.check(|| format!("i={i} closure ({a}, {b})"), true, set.contains(&ab));
            r.check(|| format!("i={i} commutes ({a}, {b})"), ab, euclid(b, a));
            for &c in &ds {
                r.check(
                    || format!("i={i} associates ({a}, {b}, {c})"),
                    euclid(ab, c),
                    euclid(a, euclid(b, c)),
                );
            }
        }
    }

    let ctx = match Context::with_index(i) {
        Ok(ctx) => ctx,
        Err(e) => {
            r.fail(format!("i={i} context"), "valid", e);
            return r;
        }
    };
    let base = ctx.base().class().clone();
    let listed: Vec<Option<u64>> = msym_enumerate(&ctx).iter().map(|k| divisor_of(k, &ctx)).collect();
    r.check(|| format!("i={i} enumeration size"), ds.len(), listed.len());
    let listed_set: BTreeSet<u64> = listed.iter().flatten().copied().collect();
    r.check(
        || format!("i={i} enumeration is bijective"),
        format!("{set:?}"),
        if listed_set.len() == listed.len() {
            format!("{listed_set:?}")
        } else {
            format!("{listed:?}")
        },
    );

    // the rule table's merge on triples, and the engine on pairs of terms
    let merge = engine.rules().merge;
    let entry = |g| StableClass::entry(base.clone(), g);
    for &a in &ds {
        for &b in &ds {
            let ab = entry(a).merge_with(&entry(b), merge);
            r.check(|| format!("i={i} merge ({a}, {b})"), show(Some(euclid(a, b))), show(divisor_of(&ab, &ctx)));
            if ds.len() <= 12 {
                for &c in &ds {
                    let abc = ab.merge_with(&entry(c), merge);
                    r.check(
                        || format!("i={i} merge ({a}, {b}, {c})"),
                        show(Some(euclid(euclid(a, b), c))),
                        show(divisor_of(&abc, &ctx)),
                    );
                }
            }
            let t = VarietyTerm::product([
                VarietyTerm::grass(a - 1, ctx.p()),
                VarietyTerm::grass(b - 1, ctx.p()),
            ]);
            let got = engine.stable_class(&t, &ctx).ok().and_then(|(k, _)| divisor_of(&k, &ctx));
            let expected = Some(euclid(a, b));
            r.cases_checked += 1;
            if got != expected {
                r.fail(format!("i={i} {t}"), show(expected), show(got));
            }
        }
    }
    r
}

/// Every generated term reaches the same class under five rewrite orders.
pub fn check_confluence(ctx: &Context, samples: u64, seed: u64, engine: &Engine) -> SweepReport {
    let mut r = SweepReport::new(
        "confluence",
        &[("order", ctx.model().order()), ("dim", ctx.dim()), ("samples", samples), ("seed", seed)],
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gen = TermGenerator::new(ctx);
    for k in 0..samples {
        let t = gen.generate(&mut rng);
        let mut first: Option<StableClass> = None;
        for strategy in Strategy::sweep(seed ^ k) {
            let got = match engine.stable_class_with(&t, ctx, strategy) {
                Ok((got, _)) => got,
                Err(e) => {
                    r.fail(format!("{t} under {strategy:?}"), "a class", e);
                    break;
                }
            };
            match &first {
                None => first = Some(got),
                Some(want) => r.check(|| format!("{t} under {strategy:?}"), want, &got),
            }
        }
    }
    r
}

// Raw dimension formulas, kept apart from the term module on purpose.

fn pascal(rows: u64) -> Vec<Vec<u128>> {
    let mut t: Vec<Vec<u128>> = Vec::new();
    for n in 0..=rows as usize {
        let mut row = vec![1u128; n + 1];
        for k in 1..n {
            row[k] = t[n - 1][k - 1] + t[n - 1][k];
        }
        t.push(row);
    }
    t
}

fn raw_m0bar(n: u128, d: u128) -> u128 {
    (n + 1) * (d + 1) - 4
}

/// Top dimension of the Schubert decomposition of `m`-planes in `P^n`:
/// the largest `Σ (a_k − k)` over increasing `a_0 < … < a_m ≤ n`, found by
/// walking all subsets. Also returns the number of cells.
fn schubert_top(m: u64, n: u64) -> (u64, u64) {
    let (mut top, mut cells) = (0, 0);
    for mask in 0u64..(1 << (n + 1)) {
        if u64::from(mask.count_ones()) != m + 1 {
            continue;
        }
        cells += 1;
        let dim: u64 = (0..=n)
            .filter(|b| mask >> b & 1 == 1)
            .enumerate()
            .map(|(k, a)| a - k as u64)
            .sum();
        top = top.max(dim);
    }
    (top, cells)
}

/// Number of exponent vectors of total degree `d` in `vars` variables.
fn count_monomials(vars: u64, d: u64) -> u64 {
    if vars == 1 {
        return 1;
    }
    (0..=d).map(|e| count_monomials(vars - 1, d - e)).sum()
}

fn term_dim(t: &VarietyTerm) -> String {
    match t.dimension() {
        Ok(d) => d.to_string(),
        Err(e) => e.to_string(),
    }
}

/// Dimension bookkeeping behind the birational constructions, computed from
/// raw formulas and compared against `VarietyTerm::dimension`.
pub fn check_dimension_identities(n_max: u64) -> SweepReport {
    let mut r = SweepReport::new("dims", &[("n_max", n_max)]);
    let binom = pascal(n_max + 20);
    let c = |a: u64, b: u64| binom[a as usize][b as usize];

    for n in 1..=n_max {
        let ctx = Context::from_parts(1, 0, n).expect("split model");
        let p = ctx.p();
        let nn = u128::from(n);

        // (a) Sym^d(P) against Grass(d−1, P) × P^{d(d−1)}
        for d in 1..=n + 1 {
            let dd = u128::from(d);
            r.check(|| format!("(a) n={n} d={d}"), dd * nn, dd * (nn + 1 - dd) + dd * (dd - 1));
            let lhs = VarietyTerm::sym(d, p.clone());
            let rhs = VarietyTerm::product([
                VarietyTerm::grass(d - 1, p.clone()),
                VarietyTerm::Proj(d * (d - 1)),
            ]);
            r.check(|| format!("(a) terms n={n} d={d}"), term_dim(&lhs), term_dim(&rhs));
            r.check(|| format!("(a) value n={n} d={d}"), (dd * nn).to_string(), term_dim(&lhs));
        }

        // (b) two fibrations of the space of conics
        if n >= 2 {
            r.check(|| format!("(b) n={n}"), nn + (2 * nn + 3), raw_m0bar(nn, 2) + 4);
            r.check(
                || format!("(b) term n={n}"),
                raw_m0bar(nn, 2).to_string(),
                term_dim(&VarietyTerm::m0bar(2, p.clone())),
            );
        }

        // (c) slice of the vector fields on P: sl_{n+1} modulo the fields
        // vanishing on n+1 general points, which are the traceless diagonals
        let fields = (nn + 1) * (nn + 1) - 1;
        let vanishing = (nn + 1) - 1;
        r.check(|| format!("(c) n={n}"), nn * (nn + 1), fields - vanishing);
        r.check(
            || format!("(c) term n={n}"),
            (nn * (nn + 1)).to_string(),
            term_dim(&VarietyTerm::sym(n + 1, p.clone())),
        );

        // (d) pulling a projective factor out of a symmetric power
        for u in [1, n.div_ceil(2), n] {
            for rr in 1..=3u64 {
                for m in 1..=4u64 {
                    let (uu, rrr, mm) = (u128::from(u), u128::from(rr), u128::from(m));
                    r.check(|| format!("(d) u={u} r={rr} m={m}"), mm * (uu + rrr), mm * uu + rrr * mm);
                    let lhs = VarietyTerm::sym(m, VarietyTerm::product([VarietyTerm::Proj(u), VarietyTerm::Proj(rr)]));
                    let rhs = VarietyTerm::product([
                        VarietyTerm::sym(m, VarietyTerm::Proj(u)),
                        VarietyTerm::Proj(rr * m),
                    ]);
                    r.check(|| format!("(d) terms u={u} r={rr} m={m}"), term_dim(&lhs), term_dim(&rhs));
                }
            }
        }

        // (e) stable maps of degree d against conic-source maps
        for d in 1..=10u64 {
            let dd = u128::from(d);
            let msb = (nn + 1) * c(1 + d, 1) - 4;
            r.check(|| format!("(e) n={n} d={d}"), raw_m0bar(nn, dd), msb);
            let lhs = term_dim(&VarietyTerm::m0bar(d, p.clone()));
            let rhs = term_dim(&VarietyTerm::msb(1, d, p.clone()));
            if (n, d) == (1, 2) {
                // only the coarse space exists; it has the expected dimension
                r.check(|| "(e) coarse n=1 d=2".to_owned(), format!("exceptional case M0bar(X, 2) with dim X = 1 (coarse space has dimension {msb})"), lhs);
            } else {
                r.check(|| format!("(e) terms n={n} d={d}"), lhs, rhs);
            }
        }

        // Grassmannian dimension as a chart count and a Schubert walk
        for m in 0..=n {
            let (mm, nn1) = (u128::from(m), nn + 1);
            let free = (0..=m)
                .flat_map(|_| (0..=n).filter(move |col| *col > m))
                .count() as u128;
            r.check(|| format!("chart m={m} n={n}"), (mm + 1) * (nn - mm), free);
            r.check(
                || format!("chart-minus-gauge m={m} n={n}"),
                (mm + 1) * nn1 - (mm + 1) * (mm + 1),
                free,
            );
            r.check(
                || format!("grass term m={m} n={n}"),
                free.to_string(),
                term_dim(&VarietyTerm::grass(m, p.clone())),
            );
            if n <= 12 {
                let (top, cells) = schubert_top(m, n);
                r.check(|| format!("schubert top m={m} n={n}"), free, u128::from(top));
                r.check(|| format!("schubert cells m={m} n={n}"), c(n + 1, m + 1), u128::from(cells));
            }
        }

        // spaces of maps from Severi-Brauer sources: count of sections
        if n <= 8 {
            for m in 0..=n.min(3) {
                for d in 1..=6u64 {
                    let sections = count_monomials(m + 1, d);
                    r.check(|| format!("monomials m={m} d={d}"), c(m + d, m), u128::from(sections));
                    let want = (nn + 1) * u128::from(sections) - u128::from((m + 1) * (m + 1));
                    r.check(
                        || format!("msb term m={m} d={d} n={n}"),
                        want.to_string(),
                        term_dim(&VarietyTerm::msb(m, d, p.clone())),
                    );
                    let q = VarietyTerm::Proj(m);
                    let want = u128::from(sections) * (nn + 1) - 1;
                    r.check(
                        || format!("maps term m={m} d={d} n={n}"),
                        want.to_string(),
                        term_dim(&VarietyTerm::maps(d, q, p.clone())),
                    );
                }
            }
        }
    }
    r
}

/// Group laws of the cyclic models, `i·c = 0`, and the class of spaces of
/// maps: `Q^{⊗(m+1)}` is trivial whenever `index(Q) | m+1`, so degree `m+1`
/// maps land in the class of `P`, and the class depends on `d` only mod `m+1`.
pub fn check_maps_lemma(n_max: u64, m_max: u64) -> SweepReport {
    let mut r = SweepReport::new("maps", &[("max_order", n_max), ("max_m", m_max)]);
    for n in 1..=n_max {
        let model = BrauerModel::new(n).expect("positive order");
        let classes: Vec<_> = model.classes().collect();
        let nn = i128::from(n);
        let residue = |x: i128| x.rem_euclid(nn) as u64;

        for a in &classes {
            let av = i128::from(a.value());
            r.check(|| format!("N={n} {a} + 0"), a.value(), a.compose(&model.trivial()).map_or(n, |x| x.value()));
            r.check(|| format!("N={n} {a} + dual"), 0, a.compose(&a.dual()).map_or(n, |x| x.value()));
            let order = (1..=n).find(|k| residue(i128::from(*k) * av) == 0).expect("finite order");
            r.check(|| format!("N={n} period of {a}"), order, a.period());
            r.check(|| format!("N={n} index kills {a}"), 0, a.power(a.index() as i64).value());
            r.check(|| format!("N={n} period | index for {a}"), 0, a.index() % a.period());
            for b in &classes {
                let bv = i128::from(b.value());
                let ab = a.compose(b).map_or(n, |x| x.value());
                r.check(|| format!("N={n} {a} + {b}"), residue(av + bv), ab);
                r.check(|| format!("N={n} {a} + {b} commutes"), ab, b.compose(a).map_or(n, |x| x.value()));
                if n <= 30 {
                    for c in &classes {
                        let left = a.compose(b).and_then(|x| x.compose(c)).map_or(n, |x| x.value());
                        let right = b.compose(c).and_then(|x| a.compose(&x)).map_or(n, |x| x.value());
                        r.check(|| format!("N={n} ({a} + {b}) + {c}"), left, right);
                    }
                }
            }
        }

        for m in 0..=m_max {
            let k = i128::from(m) + 1;
            for q in classes.iter().filter(|q| (m + 1) % q.index() == 0) {
                let qv = i128::from(q.value());
                let source = match SeveriBrauer::new(q.clone(), m) {
                    Ok(s) => s,
                    Err(e) => {
                        r.fail(format!("N={n} m={m} Q={q}"), "valid source", e);
                        continue;
                    }
                };
                r.check(|| format!("N={n} m={m} Q={q}: raw (m+1)q"), 0, residue(k * qv));
                r.check(|| format!("N={n} m={m} Q={q}: power"), 0, q.power(m as i64 + 1).value());
                for p in &classes {
                    let target = SeveriBrauer::minimal(p.clone());
                    let pv = i128::from(p.value());
                    let class = |d: u64| maps_class(d, &source, &target).map_or(n, |x| x.value());
                    r.check(|| format!("N={n} m={m} Q={q} P={p}: degree m+1"), p.value(), class(m + 1));
                    for d in 1..=m + 1 {
                        let dd = i128::from(d);
                        let want = residue(pv - dd * qv);
                        r.check(|| format!("N={n} m={m} Q={q} P={p} d={d}"), want, class(d));
                        r.check(
                            || format!("N={n} m={m} Q={q} P={p} d={d} vs d+m+1"),
                            class(d),
                            class(d + m + 1),
                        );
                    }
                }
            }
        }
    }
    r
}
