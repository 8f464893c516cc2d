//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use msym_core::oracle::{check_confluence, check_dimension_identities, check_maps_lemma, check_monoid};
use msym_core::rewrite::{is_stably_rational, msym_enumerate, stable_class, Status, Verdict};
use msym_core::term::gen::TermGenerator;
use msym_core::term::parse;
use msym_core::{Context, Engine, StableClass, VarietyTerm};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn divisor(k: &StableClass, ctx: &Context) -> Option<u64> {
    (k.status() == Status::Resolved && k.len() <= 1)
        .then(|| k.divisor_for(ctx.base().class()).unwrap_or(ctx.index()))
}

/// Outcome of one criterion: first problem found, cases checked.
struct Outcome {
    cases: u64,
    problem: Option<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { cases: 0, problem: None }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.problem.is_none() {
            self.problem = Some(what());
        }
    }
}

struct Ledger {
    failed: usize,
}

impl Ledger {
    fn criterion(&mut self, id: u32, name: &str, limit: Option<Duration>, body: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = body();
        let took = start.elapsed();
        let slow = limit.is_some_and(|l| took > l);
        let pass = outcome.problem.is_none() && !slow;
        if !pass {
            self.failed += 1;
        }
        let timing = match limit {
            Some(l) => format!("{:.2}s, limit {}s", took.as_secs_f64(), l.as_secs()),
            None => format!("{:.2}s", took.as_secs_f64()),
        };
        println!(
            "{} criterion {id}: {name} ({} cases, {timing})",
            if pass { "PASS" } else { "FAIL" },
            outcome.cases
        );
        if let Some(p) = outcome.problem {
            println!("     first problem: {p}");
        }
        if slow {
            println!("     over the time limit");
        }
    }
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    for i in 1..=360u64 {
        let tau = (1..=i).filter(|d| i % d == 0).count();
        let listed = msym_enumerate(&Context::with_index(i).unwrap()).len();
        o.expect(listed == tau, || format!("i={i}: {listed} classes, expected {tau}"));
        let r = check_monoid(i, &Engine::default());
        o.cases += r.cases_checked;
        o.expect(r.passed(), || format!("i={i}: {:?}", r.first_failure()));
    }
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    for i in 1..=48u64 {
        let ctx = Context::with_index(i).unwrap();
        let sym = |d| VarietyTerm::sym(d, ctx.p());
        for d in 0..=96u64 {
            let (k, _) = stable_class(&sym(d), &ctx).unwrap();
            o.expect(divisor(&k, &ctx) == Some(gcd(d, i)), || format!("i={i} Sym^{d}: {k}"));
            let rational = is_stably_rational(&sym(d), &ctx).unwrap() == Verdict::Yes;
            o.expect(rational == (d % i == 0), || format!("i={i} Sym^{d} rational: {rational}"));
            for e in 0..=96u64 {
                let t = VarietyTerm::product([sym(d), sym(e)]);
                let (k, _) = stable_class(&t, &ctx).unwrap();
                let want = gcd(gcd(d, e), i);
                o.expect(divisor(&k, &ctx) == Some(want), || format!("i={i} {t}: {k}, expected g={want}"));
            }
        }
    }
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    for i in 1..=48u64 {
        for r in 1..=3u64 {
            let n = r * i - 1;
            let ctx = Context::from_parts(i, 1 % i, n).unwrap();
            for d in 1..=40u64 {
                let (k, _) = stable_class(&VarietyTerm::m0bar(if n == 0 { continue } else { d }, ctx.p()), &ctx).unwrap();
                let exceptional = k.status() == Status::Exceptional;
                o.expect(exceptional == (n == 1 && d == 2), || format!("i={i} n={n} d={d}: {k}"));
                if n >= 2 {
                    let want = if d % 2 == 0 { 1 } else { gcd(2, i) };
                    o.expect(divisor(&k, &ctx) == Some(want), || format!("i={i} n={n} d={d}: {k}, expected g={want}"));
                }
            }
        }
    }
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    for i in 1..=24u64 {
        for m in 0..=10u64 {
            // smallest admissible dimension that fits an m-dimensional source
            let n = (1..).map(|r| r * i - 1).find(|n| *n >= m).unwrap();
            let ctx = Context::from_parts(i, 1 % i, n).unwrap();
            let period = ctx.base().class().period();
            let k1 = m + 1;
            for d in 1..=60u64 {
                let want = if d % k1 == 1 % k1 {
                    Some(gcd(k1, i))
                } else if d % k1 == 0 && 420 % k1 == 0 {
                    Some(1)
                } else if gcd(k1, d * period) == 1 {
                    Some(gcd(k1, i))
                } else {
                    None
                };
                let (k, _) = stable_class(&VarietyTerm::msb(m, d, ctx.p()), &ctx).unwrap();
                let got = match k.status() {
                    Status::Unresolved => None,
                    _ => Some(divisor(&k, &ctx)),
                };
                o.expect(got == want.map(Some), || format!("i={i} m={m} d={d}: {k}, expected {want:?}"));
            }
        }
    }
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let r = check_dimension_identities(100);
    o.cases += r.cases_checked;
    o.expect(r.passed(), || format!("{:?}", r.first_failure()));
    for n in 1..=100u64 {
        o.expect((n + 1) * 3 - 4 + 4 == 3 * n + 3, || format!("conics n={n}"));
        for d in 1..=n + 1 {
            o.expect(d * n == d * (n + 1 - d) + d * (d - 1), || format!("n={n} d={d}"));
        }
    }
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let r = check_maps_lemma(100, 12);
    o.cases += r.cases_checked;
    o.expect(r.passed(), || format!("{:?}", r.first_failure()));
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    for i in 1..=24u64 {
        let ctx = Context::with_index(i).unwrap();
        let r = check_confluence(&ctx, 10_000, 7_000 + i, &Engine::default());
        o.cases += r.cases_checked;
        o.expect(r.passed(), || format!("i={i}: {:?}", r.first_failure()));
    }
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    let ctxs: Vec<Context> = (1..=12).map(|i| Context::with_index(i).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 0..10_000 {
        let ctx = &ctxs[k % ctxs.len()];
        let t = TermGenerator::new(ctx).generate(&mut rng);
        let text = t.to_string();
        let back = parse(&text, ctx);
        o.expect(back.as_ref() == Ok(&t), || format!("`{text}` parsed as {back:?}"));
    }
    let golden: [&[&str]; 3] = [
        &["--format", "json", "normalize", "--order", "6", "--class", "1", "--dim", "5", "Sym^4(P)"],
        &["--format", "json", "normalize", "--order", "5", "--class", "1", "--dim", "4", "Sym^10(P)"],
        &["--format", "json", "normalize", "--order", "2", "--class", "1", "--dim", "1", "M0bar(P,2)"],
    ];
    for args in golden {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_msym"))
                .args(args)
                .env_remove("MSYM_FORMAT")
                .output()
                .expect("binary runs")
                .stdout
        };
        let first = run();
        o.expect(!first.is_empty(), || format!("{args:?} printed nothing"));
        for _ in 0..3 {
            o.expect(run() == first, || format!("{args:?} output changed between runs"));
        }
    }
    o
}

fn main() {
    let mut ledger = Ledger { failed: 0 };
    let secs = |s| Some(Duration::from_secs(s));
    ledger.criterion(1, "monoid classification, i <= 360", secs(10), criterion_1);
    ledger.criterion(2, "symmetric-power reduction, i <= 48, d, e <= 96", secs(5), criterion_2);
    ledger.criterion(3, "M0bar parity and the single exceptional case", None, criterion_3);
    ledger.criterion(4, "MSB coverage, m <= 10, d <= 60, i <= 24", None, criterion_4);
    ledger.criterion(5, "dimension identities, n <= 100", None, criterion_5);
    ledger.criterion(6, "Brauer arithmetic and maps sweep, N <= 100, m <= 12", None, criterion_6);
    ledger.criterion(7, "confluence, 10000 terms per index 1..=24, 5 orders", secs(60), criterion_7);
    ledger.criterion(8, "round trip of 10000 terms, byte-stable JSON", None, criterion_8);
    if ledger.failed > 0 {
        println!("{} criteria failed", ledger.failed);
        std::process::exit(1);
    }
}
