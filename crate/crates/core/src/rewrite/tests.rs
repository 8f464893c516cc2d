use super::*;
use crate::term::parse;

fn ctx(order: u64, class: u64, dim: u64) -> Context {
    Context::from_parts(order, class, dim).unwrap()
}

fn class_of(text: &str, ctx: &Context) -> StableClass {
    stable_class(&parse(text, ctx).unwrap(), ctx).unwrap().0
}

fn nf(text: &str, ctx: &Context) -> String {
    normal_form(&parse(text, ctx).unwrap(), ctx).unwrap().0.to_string()
}

fn base_divisor(k: &StableClass, ctx: &Context) -> u64 {
    assert!(k.is_resolved(), "{k}");
    assert!(k.len() <= 1, "{k}");
    k.divisor_for(ctx.base().class()).unwrap_or(ctx.index())
}

#[test]
fn sym_examples() {
    let c6 = ctx(6, 1, 5);
    assert_eq!(base_divisor(&class_of("Sym^4(P)", &c6), &c6), 2);
    assert_eq!(base_divisor(&class_of("Sym^4(P) * Grass(2, P)", &c6), &c6), 1);
    for (order, dim) in [(1, 0), (4, 3), (7, 13)] {
        let c = ctx(order, 1 % order, dim);
        assert!(class_of("Sym^0(P)", &c).is_identity());
    }
}

#[test]
fn m0bar_examples() {
    let c4 = ctx(4, 1, 3);
    assert_eq!(base_divisor(&class_of("M0bar(P, 7)", &c4), &c4), 2);

    let c2 = ctx(2, 1, 1);
    let k = class_of("M0bar(P, 2)", &c2);
    assert_eq!(k.status(), Status::Exceptional);
    let cases: Vec<_> = k.exceptional_cases().cloned().collect();
    assert_eq!(
        cases,
        vec![Exceptional::DoubleCoversOfConic {
            base: 1,
            coarse_divisor: 2
        }]
    );
    // higher even degrees on a conic are not exceptional
    assert_eq!(base_divisor(&class_of("M0bar(P, 4)", &c2), &c2), 1);
}

#[test]
fn normal_form_examples() {
    assert_eq!(nf("Sym^4(P)", &ctx(6, 1, 5)), "Grass(1, P)");
    assert_eq!(nf("Sym^10(P)", &ctx(5, 1, 4)), "Proj(0)");
    assert_eq!(nf("Grass(3, P)", &ctx(4, 1, 3)), "Proj(0)");
    assert_eq!(nf("Sym^1(P) * Proj(4)", &ctx(4, 1, 7)), "P");
    // another base of the model gets its minimal representative
    assert_eq!(nf("Dual(P)", &ctx(6, 1, 5)), "SB(5, 5)");
    assert_eq!(nf("Sym^3(Dual(P))", &ctx(6, 1, 5)), "Grass(2, SB(5, 5))");
}

#[test]
fn normal_form_rejects_unresolved_and_multibase() {
    let c6 = ctx(6, 1, 5);
    let t = parse("MSB(3, 2, P)", &c6).unwrap();
    assert!(matches!(
        normal_form(&t, &c6),
        Err(EngineError::NoCanonicalRepresentative(_))
    ));
    let t = parse("P * Dual(P)", &c6).unwrap();
    assert!(matches!(
        normal_form(&t, &c6),
        Err(EngineError::NoCanonicalRepresentative(_))
    ));
    let c2 = ctx(2, 1, 1);
    let t = parse("M0bar(P, 2)", &c2).unwrap();
    assert!(matches!(
        normal_form(&t, &c2),
        Err(EngineError::NoCanonicalRepresentative(_))
    ));
}

#[test]
fn rationality_examples() {
    let c3 = ctx(3, 1, 2);
    let verdict = |s: &str, c: &Context| is_stably_rational(&parse(s, c).unwrap(), c).unwrap();
    assert_eq!(verdict("Sym^6(P)", &c3), Verdict::Yes);
    assert_eq!(verdict("Sym^2(P)", &c3), Verdict::No);
    let c6 = ctx(6, 1, 5);
    assert_eq!(verdict("MSB(3, 2, P)", &c6), Verdict::Unknown);
    assert_eq!(verdict("Proj(7) * Sym^12(P)", &c6), Verdict::Yes);
}

#[test]
fn equivalence_examples() {
    let eq = |a: &str, b: &str, c: &Context| {
        stably_equivalent(&parse(a, c).unwrap(), &parse(b, c).unwrap(), c).unwrap()
    };
    let c12 = ctx(12, 1, 11);
    assert_eq!(eq("Sym^8(P)", "Grass(3, P)", &c12), Verdict::Yes);
    let c4 = ctx(4, 1, 3);
    assert_eq!(eq("Sym^2(P)", "Sym^4(P)", &c4), Verdict::No);

    // Z/6 with P of index 6: SB(3, 1) has index 2 and SB(2, 2) index 3.
    let c6 = ctx(6, 1, 5);
    assert_eq!(eq("Sym^1(SB(3, 1))", "Sym^1(SB(2, 2))", &c6), Verdict::No);
    // the same bases reached through spaces of maps
    assert_eq!(eq("Sym^1(Maps_4(P, P))", "Sym^1(Maps_3(P, P))", &c6), Verdict::No);
    assert_eq!(eq("Sym^2(SB(3, 1))", "Sym^3(SB(2, 2))", &c6), Verdict::Yes);
    // non-coprime distinct bases stay open
    assert_eq!(eq("P", "Dual(P)", &c6), Verdict::Unknown);
    assert_eq!(eq("P", "MSB(3, 2, P)", &c6), Verdict::Unknown);
}

#[test]
fn coprimality_branch_of_msb() {
    // i = 5, m = 2: d = 2 is neither 1 nor 0 mod 3 but (3, 2·5) = 1
    let c5 = ctx(5, 1, 4);
    assert_eq!(base_divisor(&class_of("MSB(2, 2, P)", &c5), &c5), 1);
    // i = 6, m = 2, d = 2: (3, 2·6) = 3, not covered
    let c6 = ctx(6, 1, 5);
    let k = class_of("MSB(2, 2, P)", &c6);
    assert_eq!(
        k.unresolved_reasons().cloned().collect::<Vec<_>>(),
        vec![Unresolved::Msb {
            m: 2,
            d0: 2,
            period: 6
        }]
    );
    // (m+1) = 8 does not divide 420, so d ≡ 0 mod 8 is open
    let c8 = ctx(8, 1, 7);
    assert_eq!(class_of("MSB(7, 16, P)", &c8).status(), Status::Unresolved);
    assert_eq!(base_divisor(&class_of("MSB(6, 14, P)", &c8), &c8), 1);
}

#[test]
fn sym_of_grassmannian_is_unresolved() {
    let c6 = ctx(6, 1, 5);
    let k = class_of("Sym^2(Grass(1, P))", &c6);
    assert_eq!(k.status(), Status::Unresolved);
    // a point or a stably rational argument is fine
    assert!(class_of("Sym^5(Grass(5, P))", &c6).is_identity());
    assert!(class_of("Sym^3(Sym^0(P))", &c6).is_identity());
    // Sym of a variety stably birational to P
    assert_eq!(base_divisor(&class_of("Sym^4(P * Proj(2))", &c6), &c6), 2);
    assert_eq!(base_divisor(&class_of("Sym^9(M0bar(P, 4))", &c6), &c6), 3);
}

#[test]
fn derivations_cite_rules_and_replay() {
    let c6 = ctx(6, 1, 5);
    let t = parse("Sym^4(P) * Grass(2, Dual(P)) * Proj(3)", &c6).unwrap();
    for strategy in Strategy::sweep(7) {
        let (k, derivation) = Engine::default().stable_class_with(&t, &c6, strategy).unwrap();
        assert_eq!(derivation.input(), &Node::from(&t));
        assert_eq!(derivation.replay().unwrap(), Node::Class(k));
        for step in derivation.report() {
            assert!(!step.citation.is_empty());
        }
    }
    let (rep, derivation) = normal_form(&parse("Sym^4(P)", &c6).unwrap(), &c6).unwrap();
    assert_eq!(derivation.replay().unwrap(), Node::from(&rep));
    let rules: Vec<_> = derivation.steps().iter().map(|s| s.rule.id()).collect();
    assert_eq!(rules, vec!["R2", "R3", "NF"]);
}

#[test]
fn tampered_derivation_fails_replay() {
    let c6 = ctx(6, 1, 5);
    let (_, derivation) = stable_class(&parse("Sym^4(P) * P", &c6).unwrap(), &c6).unwrap();
    let mut steps = derivation.steps().to_vec();
    let last = steps.len() - 1;
    steps.swap(0, last);
    let mut bad = Derivation::new(derivation.input().clone());
    for s in steps {
        bad.push(s);
    }
    assert!(bad.replay().is_err());
}

#[test]
fn unvalidated_terms_are_rejected() {
    let c6 = ctx(6, 1, 5);
    let nested = VarietyTerm::Product(vec![
        c6.p(),
        VarietyTerm::Product(vec![c6.p(), VarietyTerm::Proj(1)]),
    ]);
    assert_eq!(stable_class(&nested, &c6).unwrap_err(), EngineError::NotValidated);
    let bad = VarietyTerm::grass(9, c6.p());
    assert!(matches!(stable_class(&bad, &c6), Err(EngineError::Invalid(_))));
}

#[test]
fn birational_expand_examples() {
    let c = ctx(4, 1, 3);
    let t = parse("Sym^2(P)", &c).unwrap();
    let (out, derivation) = birational_expand(&t, &c).unwrap();
    assert_eq!(out.to_string(), "Grass(1, P) * Proj(2)");
    assert_eq!(out.dimension(), Ok(6));
    assert_eq!(derivation.steps()[0].rule, RuleId::SymToGrassmannian);
    assert_eq!(derivation.replay().unwrap(), Node::from(&out));

    // U = Grass(1, P), dim 4
    let t = parse("Sym^2(Grass(1, P) * Proj(3))", &c).unwrap();
    let (out, _) = birational_expand(&t, &c).unwrap();
    assert_eq!(out.to_string(), "Sym^2(Grass(1, P)) * Proj(6)");
    assert_eq!(out.dimension(), t.dimension());

    let c = ctx(2, 1, 5);
    let (out, derivation) = birational_expand(&c.p(), &c).unwrap();
    assert_eq!(out.to_string(), "SB(1, 1) * Proj(4)");
    assert_eq!(derivation.steps()[0].rule, RuleId::MinimalSplit);
}

#[test]
fn birational_expand_side_conditions() {
    let c = ctx(4, 1, 3);
    // d > n + 1: the outer rule does not apply; the inner P is minimal
    let t = parse("Sym^5(P)", &c).unwrap();
    assert_eq!(birational_expand(&t, &c).unwrap_err(), EngineError::NoBirationalRule);
    // inside a Grassmannian slot P stays a variety
    let c = ctx(2, 1, 5);
    let t = parse("Grass(2, P)", &c).unwrap();
    assert_eq!(birational_expand(&t, &c).unwrap_err(), EngineError::NoBirationalRule);
    // but a bare factor splits, flattened into the product
    let t = parse("Grass(2, P) * P", &c).unwrap();
    let (out, derivation) = birational_expand(&t, &c).unwrap();
    assert_eq!(out.to_string(), "Grass(2, P) * SB(1, 1) * Proj(4)");
    assert_eq!(derivation.replay().unwrap(), Node::from(&out));
    // U must be positive-dimensional
    let c = ctx(1, 0, 0);
    let t = parse("Sym^3(Proj(0) * Proj(2))", &c).unwrap();
    let (out, _) = birational_expand(&t, &c).unwrap();
    assert_eq!(out.to_string(), "Sym^3(Proj(2)) * Proj(0)");
}

#[test]
fn birational_expand_preserves_dimension_for_all_small_n() {
    for n in 0..=50u64 {
        let c = ctx(1, 0, n);
        for d in 1..=n + 1 {
            let t = VarietyTerm::sym(d, c.p());
            let (out, _) = birational_expand(&t, &c).unwrap();
            assert_eq!(out.dimension(), t.dimension(), "{t}");
        }
        for r in 0..5 {
            for d in 1..6 {
                let t = VarietyTerm::sym(d, VarietyTerm::product([c.p(), VarietyTerm::Proj(r)]));
                if let Ok((out, _)) = birational_expand(&t, &c) {
                    assert_eq!(out.dimension(), t.dimension(), "{t}");
                }
            }
        }
    }
    for i in [2u64, 3, 4, 6] {
        for r in 1..6 {
            let c = ctx(i, 1, r * i - 1);
            match birational_expand(&c.p(), &c) {
                Ok((out, _)) => assert_eq!(out.dimension(), Ok(r * i - 1)),
                Err(e) => {
                    assert_eq!(r, 1);
                    assert_eq!(e, EngineError::NoBirationalRule);
                }
            }
        }
    }
}

#[test]
fn msym_enumeration_sizes() {
    assert_eq!(msym_enumerate(&Context::with_index(4).unwrap()).len(), 3);
    let trivial = msym_enumerate(&Context::with_index(1).unwrap());
    assert_eq!(trivial, vec![StableClass::identity()]);
    assert_eq!(msym_enumerate(&Context::with_index(12).unwrap()).len(), 6);
}

#[test]
fn grass_line_note() {
    for i in 1..=100u64 {
        let c = Context::with_index(i).unwrap();
        let line = if c.dim() >= 1 {
            VarietyTerm::grass(1, c.p())
        } else {
            continue;
        };
        let rational = is_stably_rational(&line, &c).unwrap() == Verdict::Yes;
        assert_eq!(rational, i <= 2, "i = {i}");
        let like_p = stably_equivalent(&line, &c.p(), &c).unwrap() == Verdict::Yes;
        assert_eq!(like_p, i % 2 == 1, "i = {i}");
    }
}

#[test]
fn verdict_consistency_on_examples() {
    let c = ctx(12, 1, 11);
    for text in ["Sym^12(P)", "Sym^8(P)", "MSB(4, 3, P)", "P * Dual(P)", "Grass(11, P)"] {
        let t = parse(text, &c).unwrap();
        let rational = is_stably_rational(&t, &c).unwrap() == Verdict::Yes;
        let point = stably_equivalent(&t, &VarietyTerm::Proj(0), &c).unwrap() == Verdict::Yes;
        assert_eq!(rational, point, "{text}");
    }
}
