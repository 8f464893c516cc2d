use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::arith::gcd;
use crate::brauer::{BrauerClass, ClassSummary};

/// Why a class could not be determined.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unresolved {
    /// `MSB(m, d, X)` with `d` reduced to `d0` in `1..=m+1`, outside the
    /// congruence and coprimality cases.
    Msb { m: u64, d0: u64, period: u64 },
    /// A symmetric power of something that is not stably a Severi-Brauer
    /// variety or a point.
    SymmetricPower { d: u64, of: String },
}

impl fmt::Display for Unresolved {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unresolved::Msb { m, d0, period } => {
                write!(f, "MSB with m = {m}, reduced degree {d0}, period {period} is not covered")
            }
            Unresolved::SymmetricPower { d, of } => {
                write!(f, "Sym^{d} of class {of} is not covered")
            }
        }
    }
}

/// Cases excluded from the classification.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exceptional {
    /// `M0bar(X, 2)` with `dim X = 1`. The coarse space `Sym^2(X)` has the
    /// computed divisor `coarse_divisor = gcd(2, index)` over `base`.
    DoubleCoversOfConic { base: u64, coarse_divisor: u64 },
}

impl fmt::Display for Exceptional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exceptional::DoubleCoversOfConic {
                base,
                coarse_divisor,
            } => write!(
                f,
                "M0bar(X, 2) with dim X = 1 over class {base}; every double cover has an \
                 automorphism. The coarse space Sym^2(X) has divisor {coarse_divisor}"
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Resolved,
    Unresolved,
    Exceptional,
}

/// A stable birational class: a multiset of `Grass(P^{g-1}, P_c)` factors,
/// one per base class `c`, with `g | index(c)` and `g < index(c)`.
///
/// The empty resolved class is the class of a point. Unresolved and
/// exceptional markers accumulate through products, so merging is
/// associative and commutative on every component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct StableClass {
    entries: BTreeMap<BrauerClass, u64>,
    unresolved: BTreeSet<Unresolved>,
    exceptional: BTreeSet<Exceptional>,
}

impl StableClass {
    pub fn identity() -> Self {
        StableClass::default()
    }

    /// The class of `Grass(P^{g-1}, P_c)`. Dropped to the identity when
    /// `g = index(c)`.
    ///
    /// Panics unless `g` divides `index(c)`.
    pub fn entry(base: BrauerClass, g: u64) -> Self {
        let index = base.index();
        assert!(
            g >= 1 && index % g == 0,
            "divisor {g} does not divide index {index}"
        );
        let mut out = StableClass::identity();
        if g != index {
            out.entries.insert(base, g);
        }
        out
    }

    pub fn unresolved(reason: Unresolved) -> Self {
        let mut out = StableClass::identity();
        out.unresolved.insert(reason);
        out
    }

    pub fn exceptional(case: Exceptional) -> Self {
        let mut out = StableClass::identity();
        out.exceptional.insert(case);
        out
    }

    /// Product of classes. Entries over the same base combine with
    /// `combine` (the gcd for the true rule).
    pub fn merge_with(&self, other: &StableClass, combine: fn(u64, u64) -> u64) -> StableClass {
        let mut out = self.clone();
        for (base, &g) in &other.entries {
            let merged = match out.entries.get(base) {
                Some(&h) => combine(h, g),
                None => g,
            };
            if merged == base.index() {
                out.entries.remove(base);
            } else {
                out.entries.insert(base.clone(), merged);
            }
        }
        out.unresolved.extend(other.unresolved.iter().cloned());
        out.exceptional.extend(other.exceptional.iter().cloned());
        out
    }

    pub fn merge(&self, other: &StableClass) -> StableClass {
        self.merge_with(other, gcd)
    }

    /// The same markers with the entries dropped.
    pub fn markers_only(&self) -> StableClass {
        StableClass {
            entries: BTreeMap::new(),
            unresolved: self.unresolved.clone(),
            exceptional: self.exceptional.clone(),
        }
    }

    pub fn status(&self) -> Status {
        if !self.unresolved.is_empty() {
            Status::Unresolved
        } else if !self.exceptional.is_empty() {
            Status::Exceptional
        } else {
            Status::Resolved
        }
    }

    pub fn is_resolved(&self) -> bool {
        self.status() == Status::Resolved
    }

    /// Resolved and empty: stably rational.
    pub fn is_identity(&self) -> bool {
        self.is_resolved() && self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&BrauerClass, u64)> {
        self.entries.iter().map(|(c, &g)| (c, g))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn divisor_for(&self, base: &BrauerClass) -> Option<u64> {
        self.entries.get(base).copied()
    }

    pub fn unresolved_reasons(&self) -> impl Iterator<Item = &Unresolved> {
        self.unresolved.iter()
    }

    pub fn exceptional_cases(&self) -> impl Iterator<Item = &Exceptional> {
        self.exceptional.iter()
    }

    pub fn summary(&self) -> ClassReport {
        ClassReport {
            status: self.status(),
            entries: self
                .entries()
                .map(|(c, g)| EntryReport {
                    base: ClassSummary::from(c),
                    divisor: g,
                })
                .collect(),
            unresolved: self.unresolved.iter().map(ToString::to_string).collect(),
            exceptional: self.exceptional.iter().map(ToString::to_string).collect(),
        }
    }
}

impl fmt::Display for StableClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        if self.entries.is_empty() && self.is_resolved() {
            f.write_str("identity")?;
        }
        for (k, (c, g)) in self.entries().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}: g={g}")?;
        }
        let mut first = self.entries.is_empty();
        for reason in &self.unresolved {
            if !first {
                f.write_str("; ")?;
            }
            first = false;
            write!(f, "unresolved: {reason}")?;
        }
        for case in &self.exceptional {
            if !first {
                f.write_str("; ")?;
            }
            first = false;
            write!(f, "exceptional: {case}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub base: ClassSummary,
    pub divisor: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub status: Status,
    pub entries: Vec<EntryReport>,
    pub unresolved: Vec<String>,
    pub exceptional: Vec<String>,
}
