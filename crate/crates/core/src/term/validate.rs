use super::{Context, TermError, VarietyTerm};

pub(super) fn validate(t: &VarietyTerm, ctx: &Context) -> Result<VarietyTerm, TermError> {
    Ok(match t {
        VarietyTerm::Proj(n) => VarietyTerm::Proj(*n),
        VarietyTerm::Base(v) => {
            if v != ctx.base() {
                return Err(TermError::ForeignBase);
            }
            VarietyTerm::Base(v.clone())
        }
        VarietyTerm::Sb(v) => {
            if v.class().model() != ctx.model() {
                return Err(crate::brauer::BrauerError::ModelMismatch {
                    left: v.class().model().order(),
                    right: ctx.model().order(),
                }
                .into());
            }
            VarietyTerm::Sb(v.clone())
        }
        VarietyTerm::Dual(x) => {
            let x = validate(x, ctx)?;
            x.as_severi_brauer(ctx)?;
            VarietyTerm::dual(x)
        }
        VarietyTerm::Sym(d, x) => VarietyTerm::sym(*d, validate(x, ctx)?),
        VarietyTerm::Grass(m, x) => {
            let x = validate(x, ctx)?;
            let n = x.as_severi_brauer(ctx)?.dim();
            if *m > n {
                return Err(TermError::GrassBound { m: *m, n });
            }
            VarietyTerm::grass(*m, x)
        }
        VarietyTerm::M0bar(d, x) => {
            if *d == 0 {
                return Err(TermError::ZeroDegree { constructor: "M0bar" });
            }
            let x = validate(x, ctx)?;
            if x.as_severi_brauer(ctx)?.dim() == 0 {
                return Err(TermError::PointTarget);
            }
            VarietyTerm::m0bar(*d, x)
        }
        VarietyTerm::Msb(m, d, x) => {
            if *d == 0 {
                return Err(TermError::ZeroDegree { constructor: "MSB" });
            }
            let x = validate(x, ctx)?;
            let n = x.as_severi_brauer(ctx)?.dim();
            if *m > n {
                return Err(TermError::MsbBound { m: *m, n });
            }
            VarietyTerm::msb(*m, *d, x)
        }
        VarietyTerm::Maps(d, q, p) => {
            if *d == 0 {
                return Err(TermError::ZeroDegree { constructor: "Maps" });
            }
            let out = VarietyTerm::maps(*d, validate(q, ctx)?, validate(p, ctx)?);
            out.as_severi_brauer(ctx)?;
            out
        }
        VarietyTerm::Product(fs) => {
            if fs.is_empty() {
                return Err(TermError::EmptyProduct);
            }
            let fs = fs
                .iter()
                .map(|f| validate(f, ctx))
                .collect::<Result<Vec<_>, _>>()?;
            VarietyTerm::product(fs)
        }
    })
}
