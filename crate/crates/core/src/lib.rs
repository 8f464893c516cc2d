//! Stable birational classes of products of symmetric powers, Grassmannians
//! of twisted linear subspaces and spaces of maps into a Severi-Brauer
//! variety `P`.
//!
//! Every such product is stably birational to a product of Grassmannians
//! `Grass(P^{g-1}, P_c)` with `g | index(c)`; over a single base the classes
//! form the monoid of divisors of the index under gcd. The crate parses
//! expressions ([`term`]), rewrites them to these classes with a cited trace
//! ([`rewrite`]) and checks the underlying arithmetic by brute force
//! ([`oracle`]).
//!
//! ```
//! use msym_core::term::{parse, Context};
//! use msym_core::rewrite::normal_form;
//!
//! let ctx = Context::from_parts(6, 1, 5).unwrap();
//! let t = parse("Sym^4(P)", &ctx).unwrap();
//! let (nf, _) = normal_form(&t, &ctx).unwrap();
//! assert_eq!(nf.to_string(), "Grass(1, P)");
//! ```

pub mod arith;
pub mod brauer;
pub mod oracle;
pub mod rewrite;
pub mod term;

pub use brauer::{BrauerClass, BrauerError, BrauerModel, SeveriBrauer};
pub use rewrite::{Engine, StableClass, Verdict};
pub use term::{Context, VarietyTerm};
