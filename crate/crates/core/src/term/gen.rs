//! Random valid terms for property tests and the confluence sweep.

use rand::Rng;

use super::{Context, VarietyTerm};
use crate::brauer::SeveriBrauer;

#[derive(Debug, Clone)]
pub struct TermGenerator<'a> {
    ctx: &'a Context,
    pub max_depth: usize,
    pub max_degree: u64,
    pub max_factors: usize,
}

impl<'a> TermGenerator<'a> {
    pub fn new(ctx: &'a Context) -> Self {
        TermGenerator {
            ctx,
            max_depth: 6,
            max_degree: 40,
            max_factors: 4,
        }
    }

    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> VarietyTerm {
        let depth = rng.random_range(1..=self.max_depth.max(1));
        let t = self.term(rng, depth);
        match t.validate(self.ctx) {
            Ok(t) => t,
            Err(e) => panic!("generator produced an invalid term `{t}`: {e}"),
        }
    }

    fn degree<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(1..=self.max_degree.max(1))
    }

    fn term<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> VarietyTerm {
        if depth <= 1 {
            return match rng.random_range(0..3) {
                0 => VarietyTerm::Proj(rng.random_range(0..6)),
                _ => self.sb_term(rng, 1),
            };
        }
        match rng.random_range(0..9) {
            0 | 1 => {
                let k = rng.random_range(2..=self.max_factors.max(2));
                VarietyTerm::product((0..k).map(|_| self.term(rng, depth - 1)))
            }
            2 | 3 => {
                let d = rng.random_range(0..=self.max_degree);
                VarietyTerm::sym(d, self.term(rng, depth - 1))
            }
            4 => {
                let x = self.sb_term(rng, depth - 1);
                let n = self.sb_dim(&x);
                let m = if rng.random_bool(0.2) {
                    n.min(12)
                } else {
                    rng.random_range(0..=n.min(12))
                };
                VarietyTerm::grass(m, x)
            }
            5 => {
                let mut x = self.sb_term(rng, depth - 1);
                if self.sb_dim(&x) == 0 {
                    x = VarietyTerm::Proj(rng.random_range(1..4));
                }
                VarietyTerm::m0bar(self.degree(rng), x)
            }
            6 => {
                let x = self.sb_term(rng, depth - 1);
                let n = self.sb_dim(&x);
                let m = rng.random_range(0..=n.min(6));
                VarietyTerm::msb(m, self.degree(rng), x)
            }
            _ => self.sb_term(rng, depth - 1),
        }
    }

    fn sb_dim(&self, t: &VarietyTerm) -> u64 {
        t.as_severi_brauer(self.ctx)
            .expect("generated Severi-Brauer slot")
            .dim()
    }

    fn small_sb<R: Rng + ?Sized>(&self, rng: &mut R) -> VarietyTerm {
        let model = self.ctx.model();
        let class = model
            .class(rng.random_range(0..model.order()))
            .expect("residue in range");
        let r = rng.random_range(1..=3);
        VarietyTerm::Sb(SeveriBrauer::multiple(class, r).expect("r >= 1"))
    }

    fn sb_term<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> VarietyTerm {
        if depth <= 1 {
            return match rng.random_range(0..5) {
                0 => VarietyTerm::Proj(rng.random_range(0..6)),
                1 => self.small_sb(rng),
                _ => self.ctx.p(),
            };
        }
        match rng.random_range(0..4) {
            0 => VarietyTerm::dual(self.sb_term(rng, depth - 1)),
            1 => {
                // keep Maps sources small so the dimension stays in range
                let q = match rng.random_range(0..3) {
                    0 => VarietyTerm::Proj(rng.random_range(0..4)),
                    1 if self.ctx.dim() <= 4 => self.ctx.p(),
                    _ => {
                        let c = self.ctx.base().class().clone();
                        if c.index() <= 5 {
                            VarietyTerm::Sb(SeveriBrauer::minimal(c))
                        } else {
                            VarietyTerm::Proj(1)
                        }
                    }
                };
                let p = match rng.random_range(0..3) {
                    0 => self.small_sb(rng),
                    _ => self.ctx.p(),
                };
                VarietyTerm::maps(rng.random_range(1..=3), q, p)
            }
            _ => self.sb_term(rng, 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_terms_are_valid_and_bounded() {
        for index in [1, 2, 6, 12] {
            let ctx = Context::from_parts(index, 1 % index, 2 * index - 1).unwrap();
            let gen = TermGenerator::new(&ctx);
            let mut rng = ChaCha8Rng::seed_from_u64(index);
            for _ in 0..500 {
                let t = gen.generate(&mut rng);
                assert!(t.depth() <= 2 * gen.max_depth + 1, "{t}");
                assert_eq!(t.validate(&ctx).unwrap(), t);
            }
        }
    }
}
