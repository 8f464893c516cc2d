use std::fmt;

use super::VarietyTerm;

impl fmt::Display for VarietyTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyTerm::Proj(n) => write!(f, "Proj({n})"),
            VarietyTerm::Base(_) => f.write_str("P"),
            VarietyTerm::Sb(v) => write!(f, "SB({}, {})", v.class().value(), v.dim()),
            VarietyTerm::Dual(x) => write!(f, "Dual({x})"),
            VarietyTerm::Sym(d, x) => write!(f, "Sym^{d}({x})"),
            VarietyTerm::Grass(m, x) => write!(f, "Grass({m}, {x})"),
            VarietyTerm::M0bar(d, x) => write!(f, "M0bar({x}, {d})"),
            VarietyTerm::Msb(m, d, x) => write!(f, "MSB({m}, {d}, {x})"),
            VarietyTerm::Maps(d, q, p) => write!(f, "Maps_{d}({q}, {p})"),
            VarietyTerm::Product(fs) => {
                for (k, factor) in fs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" * ")?;
                    }
                    write!(f, "{factor}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::term::{Context, VarietyTerm};

    #[test]
    fn canonical_spacing() {
        let ctx = Context::with_index(6).unwrap();
        assert_eq!(VarietyTerm::sym(0, ctx.p()).to_string(), "Sym^0(P)");
        let t = VarietyTerm::product([VarietyTerm::sym(4, ctx.p()), VarietyTerm::grass(1, ctx.p())]);
        assert_eq!(t.to_string(), "Sym^4(P) * Grass(1, P)");
        assert_eq!(VarietyTerm::m0bar(2, ctx.p()).to_string(), "M0bar(P, 2)");
        assert_eq!(
            VarietyTerm::maps(3, VarietyTerm::dual(ctx.p()), VarietyTerm::Proj(2)).to_string(),
            "Maps_3(Dual(P), Proj(2))"
        );
        assert_eq!(VarietyTerm::msb(1, 4, ctx.p()).to_string(), "MSB(1, 4, P)");
    }
}
