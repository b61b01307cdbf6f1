mod common;

use common::*;
use palg_core::algebra::{AlgElement, Inversion, SymbolAlgebra};
use palg_core::cli;
use palg_core::field::Scalar;
use palg_core::laurent::LaurentScalar;
use palg_core::linkage::{self, SymbolPresentation};
use palg_core::ratfunc::RatFunc;
use palg_core::sample::{self, SampleRng};
use palg_core::valuation::ValuedAlgebra;
use palg_core::value::Value;
use proptest::prelude::*;
use proptest::sample::select;

fn prime() -> impl Strategy<Value = u64> {
    select(vec![2u64, 3, 5])
}

fn seeded() -> impl Strategy<Value = (u64, SampleRng)> {
    (prime(), any::<u64>()).prop_map(|(p, seed)| (p, sample::rng(seed)))
}

fn scalars(rng: &mut SampleRng, p: u64, n: usize) -> Vec<RatFunc> {
    (0..n).map(|_| sample::scalar(rng, &rational(p), WITH_DENOMINATORS)).collect()
}

const PRIMES: [u64; 3] = [2, 3, 5];

/// One generator per prime from a single proptest seed.
fn per_prime(seed: u64) -> impl Iterator<Item = (u64, SampleRng)> {
    PRIMES.into_iter().map(move |p| (p, sample::rng(seed.wrapping_mul(31).wrapping_add(p))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ratfunc_is_a_field(seed in any::<u64>()) {
        for (p, mut rng) in per_prime(seed) {
            let f = rational(p);
            let v = scalars(&mut rng, p, 3);
            let (s, t, u) = (&v[0], &v[1], &v[2]);
            prop_assert_eq!(s.add(t), t.add(s));
            prop_assert_eq!(s.mul(t), t.mul(s));
            prop_assert_eq!(s.add(t).add(u), s.add(&t.add(u)));
            prop_assert_eq!(s.mul(t).mul(u), s.mul(&t.mul(u)));
            prop_assert_eq!(s.mul(&t.add(u)), s.mul(t).add(&s.mul(u)));
            prop_assert_eq!(s.sub(s), RatFunc::zero(&f));
            if s.is_zero() {
                prop_assert!(s.inv().is_err());
            } else {
                prop_assert_eq!(s.mul(&s.inv().unwrap()), RatFunc::one(&f));
                prop_assert_eq!(t.div(s).unwrap().mul(s), t.clone());
                // same function, different route: canonical forms agree
                prop_assert_eq!(t.mul(s).div(s).unwrap(), t.clone());
            }
        }
    }

    #[test]
    fn product_matches_generator_action(seed in any::<u64>()) {
        for (p, mut rng) in per_prime(seed) {
            let alg = random_algebra(&mut rng, p, WITH_DENOMINATORS);
            let oracle = Oracle::new(&alg);
            let [s, t, u] = [0, 1, 2].map(|_| sample::element(&mut rng, &alg, SMALL, 0.3));
            prop_assert_eq!(s.mul(&t), oracle.product(&s, &t));
            prop_assert_eq!(s.mul(&t).mul(&u), s.mul(&t.mul(&u)));
            prop_assert_eq!(s.mul(&t.add(&u)), s.mul(&t).add(&s.mul(&u)));
            prop_assert_eq!(s.add(&t).mul(&u), s.mul(&u).add(&t.mul(&u)));
            prop_assert_eq!(alg.one().mul(&s), s.clone());
            prop_assert_eq!(s.mul(&alg.one()), s.clone());
            let c = alg.scalar(sample::scalar(&mut rng, alg.field(), WITH_DENOMINATORS));
            prop_assert_eq!(c.mul(&s), s.mul(&c));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn norm_gives_the_pth_power_and_is_multiplicative(seed in any::<u64>()) {
        for (p, mut rng) in per_prime(seed) {
            let alg = random_algebra(&mut rng, p, SMALL);
            let u = sample::in_fx(&mut rng, &alg, SMALL);
            let v = sample::in_fx(&mut rng, &alg, SMALL);
            let (nu, nv) = (u.norm_fx().unwrap(), v.norm_fx().unwrap());
            let uy = u.mul(&alg.y());
            prop_assert_eq!(uy.power(p), alg.scalar(nu.mul(alg.beta())));
            let uv = u.mul(&v);
            if uv.is_zero() {
                // only in a split algebra, where both norms cannot be units
                prop_assert!(nu.mul(&nv).is_zero());
            } else {
                prop_assert_eq!(uv.norm_fx().unwrap(), nu.mul(&nv));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn frobenius_is_the_pth_power_and_additive((p, mut rng) in seeded()) {
        let v = scalars(&mut rng, p, 2);
        let (s, t) = (&v[0], &v[1]);
        prop_assert_eq!(s.frobenius(), s.pow(p));
        prop_assert_eq!(s.add(t).frobenius(), s.frobenius().add(&t.frobenius()));
        prop_assert_eq!(s.mul(t).frobenius(), s.frobenius().mul(&t.frobenius()));
    }

    #[test]
    fn laurent_valuation_is_additive_and_inverse_cancels(
        p in prime(),
        s_terms in prop::collection::vec((-2i64..4, -2i64..3, 1i64..5), 1..4),
        t_terms in prop::collection::vec((-2i64..4, -2i64..3, 1i64..5), 1..4),
    ) {
        let f = laurent(p, 16);
        let s = LaurentScalar::from_terms(&f, s_terms);
        let t = LaurentScalar::from_terms(&f, t_terms);
        prop_assume!(!s.is_zero() && !t.is_zero());
        prop_assert_eq!(s.mul(&t).valuation().unwrap(), s.valuation().unwrap() + t.valuation().unwrap());
        prop_assert!(s.mul(&t).sub(&t.mul(&s)).is_zero());
        let inv = s.inv().unwrap();
        prop_assert_eq!(inv.valuation().unwrap(), Value::zero() - s.valuation().unwrap());
        prop_assert!(s.mul(&inv).sub(&LaurentScalar::one(&f)).is_zero());
    }

    #[test]
    fn decomposition_recovers_planted_eigencomponents((p, mut rng) in seeded()) {
        let alg = random_algebra(&mut rng, p, SMALL);
        let planted: Vec<AlgElement<RatFunc>> = (0..p)
            .map(|i| {
                let coeffs: Vec<RatFunc> = (0..p).map(|_| sample::scalar(&mut rng, alg.field(), SMALL)).collect();
                alg.poly_in_x(&coeffs).mul(&alg.y().power(i))
            })
            .collect();
        let t = planted.iter().fold(alg.zero(), |acc, e| acc.add(e));
        let parts = t.ad_decompose(&alg.x()).unwrap().parts;
        prop_assert_eq!(parts, planted);
    }

    #[test]
    fn printing_then_parsing_is_the_identity((p, mut rng) in seeded()) {
        let alg = random_algebra(&mut rng, p, WITH_DENOMINATORS);
        let t = sample::element(&mut rng, &alg, WITH_DENOMINATORS, 0.5);
        let again = alg.parse(&t.to_string()).unwrap();
        prop_assert_eq!(again, t);
        let back: SymbolAlgebra<RatFunc> = algebra(p, &alg.alpha().to_string(), &alg.beta().to_string(), rational(p));
        prop_assert_eq!(back, alg);
    }

    #[test]
    fn lambda_balances_both_slots((p, mut rng) in seeded()) {
        let f = rational(p);
        let alpha: RatFunc = sample::scalar(&mut rng, &f, WITH_DENOMINATORS);
        let gamma: RatFunc = sample::scalar(&mut rng, &f, WITH_DENOMINATORS);
        let beta: RatFunc = sample::nonzero_scalar(&mut rng, &f, WITH_DENOMINATORS);
        let lambda = linkage::solve_lambda(&alpha, &gamma, &beta).unwrap();
        prop_assert_eq!(alpha.add(&beta.mul(&alpha.sub(&lambda))), gamma.clone());
        let lp = lambda.pow(p);
        let norm = alpha.add(&lp).sub(&lambda);
        prop_assert_eq!(alpha.add(&norm.mul(&beta)), gamma.add(&lp.mul(&beta)));
    }

    #[test]
    fn chain_identity_cycles_with_period_p((p, mut rng) in seeded()) {
        let alg = random_algebra(&mut rng, p, SMALL);
        let start = SymbolPresentation::of(&alg);
        let mut pres = start.clone();
        for step in 1..=p {
            let (next, wit) = linkage::chain_identity(&pres).unwrap();
            prop_assert_eq!(&next.left, &pres.left.add(&pres.right));
            prop_assert_eq!(&next.right, &start.right);
            prop_assert_eq!(wit.z.power(p).sub(&wit.z), pres.algebra().unwrap().scalar(next.left.clone()));
            prop_assert_eq!(step == p, next == start);
            pres = next;
        }
    }

    #[test]
    fn lemma_holds_on_the_shifted_family((p, mut rng) in seeded(), k in 1u32..5) {
        let k = 1 + (k - 1) % (p as u32 - 1).max(1);
        prop_assume!(k < p as u32);
        let alg = random_algebra(&mut rng, p, SMALL);
        let lambda: RatFunc = sample::scalar(&mut rng, alg.field(), SMALL);
        let x_el = alg.x().add_scalar(&lambda);
        let y_el = sample::in_fx(&mut rng, &alg, SMALL).mul(&alg.y().power(k as u64));
        let r = linkage::verify_lemma(&alg, &x_el, &y_el).unwrap();
        prop_assert_eq!(r.k, k);
        prop_assert!(r.holds());
        let oracle = Oracle::new(&alg);
        let s = x_el.add(&y_el);
        prop_assert_eq!(&r.lhs, &oracle.power(&s, p).sub(&s));
        prop_assert_eq!(&r.rhs, &oracle.power(&x_el, p).sub(&x_el).add(&oracle.power(&y_el, p)));
    }
}

// exact inverses of dense p = 5 elements run to tens of kilobytes, so fewer cases here
proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn inverse_is_two_sided_or_witnesses_a_zero_divisor((p, mut rng) in seeded()) {
        let alg = random_algebra(&mut rng, p, SMALL);
        let t = sample::element(&mut rng, &alg, SMALL, 0.3);
        prop_assume!(!t.is_zero());
        match t.try_inverse().unwrap() {
            Inversion::Inverse(i) => {
                prop_assert_eq!(t.mul(&i), alg.one());
                prop_assert_eq!(i.mul(&t), alg.one());
            }
            Inversion::ZeroDivisor(s) => {
                prop_assert!(!s.is_zero());
                prop_assert!(s.mul(&t).is_zero());
            }
        }
    }

    #[test]
    fn scaling_twice_multiplies_by_both_norms((p, mut rng) in seeded()) {
        let alg = random_algebra(&mut rng, p, SMALL);
        let pres = SymbolPresentation::of(&alg);
        let u = sample::in_fx(&mut rng, &alg, SMALL);
        // a vanishing norm would empty the right slot
        prop_assume!(!u.norm_fx().unwrap().is_zero());
        let (once, _) = linkage::scale_slot_by_norm(&pres, &u).unwrap();
        let alg2 = once.algebra().unwrap();
        let w = sample::in_fx(&mut rng, &alg2, SMALL);
        prop_assume!(!w.norm_fx().unwrap().is_zero());
        let (twice, wit) = linkage::scale_slot_by_norm(&once, &w).unwrap();
        let expected = w.norm_fx().unwrap().mul(&u.norm_fx().unwrap()).mul(alg.beta());
        prop_assert_eq!(&twice.right, &expected);
        prop_assert_eq!(&twice.left, alg.alpha());
        prop_assert_eq!(wit.w.power(p), alg2.scalar(expected));
    }
}

/// `[1, a)` or `[1, b)` with a window large enough for the products below.
fn valued(p: u64, outer: bool) -> ValuedAlgebra {
    let beta = if outer { "b" } else { "a" };
    ValuedAlgebra::new(laurent_algebra(p, 24, "1", beta)).unwrap()
}

/// Product in F_p[xbar] / (xbar^p - xbar - c), by schoolbook multiplication and folding.
fn residue_product(p: u32, c: u32, s: &[u32], t: &[u32]) -> Vec<u32> {
    let n = p as usize;
    let mut full = vec![0u32; 2 * n];
    for (i, a) in s.iter().enumerate() {
        for (j, b) in t.iter().enumerate() {
            full[i + j] = (full[i + j] + a * b) % p;
        }
    }
    for d in (n..2 * n).rev() {
        let top = std::mem::take(&mut full[d]);
        full[d - n + 1] = (full[d - n + 1] + top) % p;
        full[d - n] = (full[d - n] + top * c) % p;
    }
    full.truncate(n);
    full
}

fn unit_element(rng: &mut SampleRng, va: &ValuedAlgebra, constants: &[u32]) -> AlgElement<LaurentScalar> {
    let alg = &va.algebra;
    let f = *alg.field();
    let t = sample::element(rng, alg, SMALL, 0.4);
    let shift: Vec<LaurentScalar> = constants.iter().map(|&c| LaurentScalar::from_int(&f, c as i64)).collect();
    t.add(&alg.poly_in_x(&shift))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gauss_value_is_a_valuation((p, mut rng) in seeded(), outer in any::<bool>()) {
        let va = valued(p, outer);
        let alg = &va.algebra;
        let s = sample::element(&mut rng, alg, SMALL, 0.3);
        let t = sample::element(&mut rng, alg, SMALL, 0.3);
        prop_assume!(!s.is_zero() && !t.is_zero());
        let (vs, vt) = (va.gauss_value(&s).unwrap(), va.gauss_value(&t).unwrap());
        prop_assert_eq!(va.gauss_value(&s.mul(&t)).unwrap(), vs + vt);
        prop_assert_eq!(va.gauss_value(&s.power(p)).unwrap(), vs * p as i64);
        let sum = s.add(&t);
        if !sum.is_zero() {
            prop_assert!(va.gauss_value(&sum).unwrap() >= vs.min(vt));
        }
    }

    #[test]
    fn residue_map_is_multiplicative(
        (p, mut rng) in seeded(),
        outer in any::<bool>(),
        cs in prop::collection::vec(0u32..5, 5),
        ct in prop::collection::vec(0u32..5, 5),
    ) {
        let va = valued(p, outer);
        let n = p as usize;
        let cs: Vec<u32> = cs[..n].iter().map(|c| c % p as u32).collect();
        let ct: Vec<u32> = ct[..n].iter().map(|c| c % p as u32).collect();
        let s = unit_element(&mut rng, &va, &cs);
        let t = unit_element(&mut rng, &va, &ct);
        prop_assume!(va.gauss_value(&s).ok() == Some(Value::zero()) && va.gauss_value(&t).ok() == Some(Value::zero()));
        let (rs, rt) = (va.residue(&s).unwrap(), va.residue(&t).unwrap());
        let rst = va.residue(&s.mul(&t)).unwrap();
        prop_assert_eq!(rst.coeffs, residue_product(p as u32, va.residue_of_left_slot(), &rs.coeffs, &rt.coeffs));
    }
}

const WORDS: &[&str] = &[
    "link", "verify-lemma", "decompose", "identity", "scale", "counterexample", "eval", "frobnicate",
    "-p", "--field", "--precision", "--let", "--json", "--alpha", "--beta", "--gamma", "--x", "--t",
    "--samples", "--seed", "--help", "-q",
    "0", "1", "2", "3", "4", "7", "-1", "a", "b", "x", "y", "x*y", "a+", "(", "1/0", "y^-1", "x^2 + y",
    "rational", "laurent", "c", "c=a+b", "=a", "", "a/(a+1)",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cli_never_panics_and_usage_errors_say_so(argv in prop::collection::vec(select(WORDS), 0..8)) {
        let out = cli::run(argv.iter().copied());
        prop_assert!(matches!(out.code, 0..=2), "exit code {}", out.code);
        if out.code == 2 {
            prop_assert!(out.stderr.contains("Usage"), "stderr: {}", out.stderr);
        }
        if out.code == 0 {
            prop_assert!(!out.stdout.is_empty());
        }
    }

    #[test]
    fn malformed_elements_are_usage_errors(bad in select(vec!["x +", "(x", "x**y", "z", "x^", "1/", "@"])) {
        let out = cli::run(["eval", "-p", "3", "--t", bad]);
        prop_assert_eq!(out.code, 2);
        prop_assert!(out.stderr.contains("Usage"));
    }
}

fn text_section(text: &str, title: &str) -> Vec<(String, String)> {
    text.lines()
        .skip_while(|l| *l != format!("{title}:"))
        .skip(1)
        .take_while(|l| l.starts_with("  "))
        .filter_map(|l| l.trim_start().split_once(" = "))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn json_and_text_reports_agree((p, mut rng) in seeded()) {
        let f = rational(p);
        let [alpha, gamma, beta]: [RatFunc; 3] = [
            sample::scalar(&mut rng, &f, SMALL),
            sample::scalar(&mut rng, &f, SMALL),
            sample::nonzero_scalar(&mut rng, &f, SMALL),
        ];
        let (alpha, gamma, beta) = (alpha.to_string(), gamma.to_string(), beta.to_string());
        let p = p.to_string();
        let args = ["link", "-p", &p, "--alpha", &alpha, "--gamma", &gamma, "--beta", &beta];
        let text = cli::run(args);
        let json = cli::run(args.iter().copied().chain(["--json"]));
        prop_assert_eq!(text.code, json.code);
        prop_assume!(text.code == 0);
        let doc: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
        let keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
        prop_assert_eq!(keys, vec!["command", "inputs", "results", "records", "checks", "notes", "passed"]);
        for title in ["inputs", "results"] {
            let from_json: Vec<(String, String)> = doc[title]
                .as_object()
                .unwrap()
                .iter()
                .map(|(k, v)| (k.clone(), v.as_str().unwrap().to_string()))
                .collect();
            prop_assert_eq!(from_json, text_section(&text.stdout, title));
        }
        let checks = doc["checks"].as_array().unwrap();
        prop_assert_eq!(checks.len(), text.stdout.lines().filter(|l| l.starts_with("  PASS") || l.starts_with("  FAIL")).count());
        prop_assert_eq!(doc["passed"].as_bool().unwrap(), text.stdout.contains("\nstatus: ok"));
    }
}
