use msym_core::rewrite::{
    birational_expand, is_stably_rational, normal_form, stable_class, stably_equivalent, Engine,
    Node, Status, Strategy, Verdict,
};
use msym_core::term::gen::TermGenerator;
use msym_core::{Context, VarietyTerm};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn term(ctx: &Context, seed: u64) -> VarietyTerm {
    TermGenerator::new(ctx).generate(&mut ChaCha8Rng::seed_from_u64(seed))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn every_strategy_reaches_the_same_class(i in 1u64..=24, seed in any::<u64>()) {
        let ctx = Context::with_index(i).unwrap();
        let t = term(&ctx, seed);
        let (want, _) = stable_class(&t, &ctx).unwrap();
        for s in Strategy::sweep(seed) {
            let (got, d) = Engine::default().stable_class_with(&t, &ctx, s).unwrap();
            prop_assert_eq!(&got, &want);
            prop_assert_eq!(d.replay().unwrap(), Node::Class(got));
        }
    }

    #[test]
    fn products_merge_classes(i in 1u64..=24, a in any::<u64>(), b in any::<u64>()) {
        let ctx = Context::with_index(i).unwrap();
        let (x, y) = (term(&ctx, a), term(&ctx, b));
        let (kx, _) = stable_class(&x, &ctx).unwrap();
        let (ky, _) = stable_class(&y, &ctx).unwrap();
        let (kxy, _) = stable_class(&VarietyTerm::product([x, y]), &ctx).unwrap();
        prop_assert_eq!(kxy, kx.merge(&ky));
    }

    #[test]
    fn sym_of_index_is_a_unit(i in 1u64..=24, seed in any::<u64>()) {
        let ctx = Context::with_index(i).unwrap();
        let t = term(&ctx, seed);
        let unit = VarietyTerm::product([t.clone(), VarietyTerm::sym(i, ctx.p())]);
        prop_assert_eq!(stable_class(&unit, &ctx).unwrap().0, stable_class(&t, &ctx).unwrap().0);
    }

    #[test]
    fn normal_form_is_idempotent(i in 1u64..=24, seed in any::<u64>()) {
        let ctx = Context::with_index(i).unwrap();
        let t = term(&ctx, seed);
        if let Ok((nf, d)) = normal_form(&t, &ctx) {
            prop_assert_eq!(&normal_form(&nf, &ctx).unwrap().0, &nf);
            prop_assert_eq!(stable_class(&nf, &ctx).unwrap().0, stable_class(&t, &ctx).unwrap().0);
            prop_assert_eq!(d.replay().unwrap(), Node::from(&nf));
        }
    }

    #[test]
    fn verdicts_agree(i in 1u64..=24, a in any::<u64>(), b in any::<u64>()) {
        let ctx = Context::with_index(i).unwrap();
        let (x, y) = (term(&ctx, a), term(&ctx, b));
        let rational = is_stably_rational(&x, &ctx).unwrap();
        let point = stably_equivalent(&x, &VarietyTerm::Proj(0), &ctx).unwrap();
        prop_assert_eq!(rational, point);
        prop_assert_eq!(stably_equivalent(&x, &y, &ctx).unwrap(), stably_equivalent(&y, &x, &ctx).unwrap());
        let (k, _) = stable_class(&x, &ctx).unwrap();
        let reflexive = stably_equivalent(&x, &x, &ctx).unwrap();
        prop_assert_eq!(reflexive == Verdict::Yes, k.status() == Status::Resolved);
    }

    #[test]
    fn expansion_keeps_dimension(n in 0u64..=50, seed in any::<u64>()) {
        let ctx = Context::from_parts(1, 0, n).unwrap();
        let t = term(&ctx, seed);
        if let Ok((out, d)) = birational_expand(&t, &ctx) {
            prop_assert_eq!(out.dimension(), t.dimension());
            prop_assert_eq!(d.replay().unwrap(), Node::from(&out));
            prop_assert_eq!(stable_class(&out, &ctx).unwrap().0, stable_class(&t, &ctx).unwrap().0);
        }
    }

    #[test]
    fn symmetric_powers_reduce_by_gcd(i in 1u64..=48, d in 0u64..=96, e in 0u64..=96) {
        let ctx = Context::with_index(i).unwrap();
        let base = ctx.base().class();
        let g = |k: &msym_core::StableClass| k.divisor_for(base).unwrap_or(i);
        let (k, _) = stable_class(&VarietyTerm::sym(d, ctx.p()), &ctx).unwrap();
        prop_assert_eq!(g(&k), gcd(d, i));
        let both = VarietyTerm::product([VarietyTerm::sym(d, ctx.p()), VarietyTerm::sym(e, ctx.p())]);
        prop_assert_eq!(g(&stable_class(&both, &ctx).unwrap().0), gcd(gcd(d, e), i));
    }

    #[test]
    fn stable_maps_follow_parity(i in 1u64..=48, r in 1u64..=3, d in 1u64..=40) {
        let ctx = Context::from_parts(i, 1 % i, r * i - 1).unwrap();
        prop_assume!(ctx.dim() >= 2);
        let (k, _) = stable_class(&VarietyTerm::m0bar(d, ctx.p()), &ctx).unwrap();
        let want = if d % 2 == 0 { 1 } else { gcd(2, i) };
        prop_assert_eq!(k.divisor_for(ctx.base().class()).unwrap_or(i), want);
    }
}
