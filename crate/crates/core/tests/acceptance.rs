//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and fails if any criterion fails.
//!
//!     cargo test -p arith-monoid --test acceptance -- --nocapture

mod common;

use std::collections::HashMap;
use std::time::Instant;

use arith_monoid::arith::{compose_chain, factor_into_prime_generators};
use arith_monoid::classical::{BicyclicElement, LeechElement};
use arith_monoid::oracle::{agree_on_core, check_compose, FinitePartialInjection};
use arith_monoid::padic::{self, CantorPoint, DigitOrder};
use arith_monoid::polycyclic::{self, kbn_cancel, kbn_compose, k_residue, mu, PolyElement};
use arith_monoid::{ArithElement, Natural};
use common::nat;
use rand::Rng;

const SEED: u64 = 0x5eed_a817;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// 1. Normal-form composition against window composition, N = 2000.
fn crt_ground_truth() -> Outcome {
    const PAIRS: usize = 1000;
    const WINDOW: u64 = 2000;
    let mut rng = common::rng(SEED);
    let mut compared = 0u64;
    let mut nonzero = 0usize;
    for _ in 0..PAIRS {
        let f = common::random_normal_form(&mut rng, 30);
        let g = common::random_normal_form(&mut rng, 30);
        let check = check_compose(&f, &g, WINDOW).map_err(|e| e.to_string())?;
        ensure(check.margin <= 60, || format!("margin {} exceeds 2·30", check.margin))?;
        ensure(check.agrees(), || {
            format!("{f} ∘ {g}: mismatch at n = {:?}", check.first_disagreement)
        })?;
        compared += check.compared;
        nonzero += usize::from(!f.compose(&g).is_zero());
    }
    Ok(format!(
        "{PAIRS} pairs ({nonzero} non-zero products), {compared} points compared, 0 mismatches"
    ))
}

/// 2. Inverse-monoid axioms in 𝒜, ℬ, ℒ and P_k.
fn inverse_monoid_axioms() -> Outcome {
    const TRIPLES: usize = 1000;
    let mut rng = common::rng(SEED + 2);

    for _ in 0..TRIPLES {
        let (f, g, h) = (
            common::random_arith(&mut rng, 50),
            common::random_arith(&mut rng, 50),
            common::random_arith(&mut rng, 50),
        );
        let d = f.dagger();
        ensure(f.compose(&d).compose(&f) == f, || format!("𝒜: a a‡ a ≠ a for {f}"))?;
        ensure(d.compose(&f).compose(&d) == d, || format!("𝒜: a‡ a a‡ ≠ a‡ for {f}"))?;
        ensure(f.compose(&g).compose(&h) == f.compose(&g.compose(&h)), || {
            format!("𝒜: associativity fails on {f}, {g}, {h}")
        })?;
        let (e1, e2) = (
            common::random_idempotent(&mut rng, 50),
            common::random_idempotent(&mut rng, 50),
        );
        ensure(e1.compose(&e2) == e2.compose(&e1), || format!("𝒜: {e1}, {e2} do not commute"))?;
    }

    for _ in 0..TRIPLES {
        let (x, y, z) = (
            common::random_bicyclic(&mut rng, 40),
            common::random_bicyclic(&mut rng, 40),
            common::random_bicyclic(&mut rng, 40),
        );
        let d = x.dagger();
        ensure(x.compose(&d).compose(&x) == x, || format!("ℬ: a a‡ a ≠ a for {x}"))?;
        ensure(d.compose(&x).compose(&d) == d, || format!("ℬ: a‡ a a‡ ≠ a‡ for {x}"))?;
        ensure(x.compose(&y).compose(&z) == x.compose(&y.compose(&z)), || {
            format!("ℬ: associativity fails on {x}, {y}, {z}")
        })?;
        let b = rng.gen_range(0..40u64);
        let (e1, e2) = (x.compose(&d), BicyclicElement::new(b, b));
        ensure(e1.compose(&e2) == e2.compose(&e1), || format!("ℬ: {e1}, {e2} do not commute"))?;
    }

    for _ in 0..TRIPLES {
        let (x, y, z) = (
            common::random_leech(&mut rng, 1000),
            common::random_leech(&mut rng, 1000),
            common::random_leech(&mut rng, 1000),
        );
        let d = x.dagger();
        ensure(x.compose(&d).compose(&x) == x, || format!("ℒ: a a‡ a ≠ a for {x}"))?;
        ensure(d.compose(&x).compose(&d) == d, || format!("ℒ: a‡ a a‡ ≠ a‡ for {x}"))?;
        ensure(x.compose(&y).compose(&z) == x.compose(&y.compose(&z)), || {
            format!("ℒ: associativity fails on {x}, {y}, {z}")
        })?;
        let (e1, e2) = (x.compose(&d), y.dagger().compose(&y));
        ensure(e1.compose(&e2) == e2.compose(&e1), || format!("ℒ: {e1}, {e2} do not commute"))?;
    }

    for k in 2..=7u32 {
        for _ in 0..TRIPLES {
            let (x, y) = common::random_poly_pair(&mut rng, k, 5);
            let z = common::random_poly(&mut rng, k, 5);
            let c = |a: &PolyElement, b: &PolyElement| a.compose(b).unwrap();
            let d = x.dagger();
            ensure(c(&c(&x, &d), &x) == x, || format!("P_{k}: a a‡ a ≠ a for {x}"))?;
            ensure(c(&c(&d, &x), &d) == d, || format!("P_{k}: a‡ a a‡ ≠ a‡ for {x}"))?;
            ensure(c(&c(&x, &y), &z) == c(&x, &c(&y, &z)), || {
                format!("P_{k}: associativity fails on {x}, {y}, {z}")
            })?;
            let (e1, e2) = (c(&x, &d), c(&y.dagger(), &y));
            ensure(c(&e1, &e2) == c(&e2, &e1), || format!("P_{k}: {e1}, {e2} do not commute"))?;
        }
    }
    Ok(format!("{TRIPLES} triples each for 𝒜, ℬ, ℒ and P_k (k = 2..7)"))
}

/// 3. Closed mixed-radix formula against iterated composition.
fn mixed_radix_lemma() -> Outcome {
    const CHAINS: usize = 500;
    let mut rng = common::rng(SEED + 3);
    for _ in 0..CHAINS {
        let len = rng.gen_range(1..=6);
        let pairs: Vec<(Natural, Natural)> = (0..len)
            .map(|_| {
                let a = rng.gen_range(1..=10u64);
                (nat(a), nat(rng.gen_range(0..a)))
            })
            .collect();
        let closed = compose_chain(&pairs).map_err(|e| e.to_string())?;
        let iterated = pairs.iter().fold(ArithElement::identity(), |acc, (a, b)| {
            acc.compose(&ArithElement::generator(a.clone(), b.clone()).unwrap())
        });
        ensure(closed == iterated, || format!("{pairs:?}: {closed} vs {iterated}"))?;
    }
    Ok(format!("{CHAINS} chains of length 1..6 with bases ≤ 10"))
}

/// 4. Factor into prime generators and recompose.
fn prime_factorisation() -> Outcome {
    let mut count = 0;
    for a in 2..=200u64 {
        for b in 0..a {
            let factors = factor_into_prime_generators(a, b).map_err(|e| e.to_string())?;
            ensure(factors.iter().all(|(p, q)| arith_monoid::numtheory::is_prime(p) && q < p), || {
                format!("R({a},{b}): non-prime factor in {factors:?}")
            })?;
            let back = compose_chain(&factors).map_err(|e| e.to_string())?;
            ensure(back == ArithElement::generator(a, b).unwrap(), || {
                format!("R({a},{b}) recomposes to {back}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} generators R(a,b), 2 ≤ a ≤ 200"))
}

/// 5. gcd and lcm composition formulas; Leech embedding is homomorphic.
fn leech_equivalence() -> Outcome {
    const LIMIT: u64 = 500;
    let mut rng = common::rng(SEED + 5);
    // The formulas differ only in how the inner components n, p meet, so those
    // range over every pair; the outer components are drawn at random.
    for n in 1..=LIMIT {
        for p in 1..=LIMIT {
            let x = LeechElement::new(rng.gen_range(1..=LIMIT), n).unwrap();
            let y = LeechElement::new(p, rng.gen_range(1..=LIMIT)).unwrap();
            ensure(x.compose(&y) == x.compose_lcm(&y), || format!("{x}{y}: gcd and lcm forms differ"))?;
        }
    }
    const PAIRS: usize = 1000;
    let mut embedded = HashMap::new();
    for _ in 0..PAIRS {
        let (x, y) = (common::random_leech(&mut rng, LIMIT), common::random_leech(&mut rng, LIMIT));
        ensure(x.compose(&y).embed() == x.embed().compose(&y.embed()), || {
            format!("embedding not homomorphic on {x}, {y}")
        })?;
        for e in [&x, &y] {
            if let Some(prev) = embedded.insert(e.embed(), e.clone()) {
                ensure(&prev == e, || format!("{prev} and {e} embed to the same element"))?;
            }
        }
    }
    Ok(format!(
        "{} inner pairs ≤ {LIMIT}; {PAIRS} homomorphism pairs",
        LIMIT * LIMIT
    ))
}

/// 6. Nivat–Perot composition against the arithmetic monoid.
fn nivat_perot_vs_arith() -> Outcome {
    const PAIRS: usize = 1000;
    let mut rng = common::rng(SEED + 6);
    let mut nonzero = 0;
    for k in [2u32, 3, 5] {
        let theta = |e: &PolyElement| polycyclic::theta(k, e).unwrap();
        for _ in 0..PAIRS {
            let (x, y) = common::random_poly_pair(&mut rng, k, 6);
            let product = x.compose(&y).map_err(|e| e.to_string())?;
            let generic = theta(&x).compose(&theta(&y));
            ensure(theta(&product) == generic, || format!("θ_{k} not homomorphic on {x}, {y}"))?;
            let residues = polycyclic::poly_compose_arith(k, &theta(&x), &theta(&y))
                .map_err(|e| e.to_string())?;
            ensure(residues == generic, || format!("residue route differs on {x}, {y}"))?;
            nonzero += usize::from(product != PolyElement::Zero);
        }
    }
    for k in 2..=7u32 {
        for x in 0..k {
            for y in 0..k {
                let gx = PolyElement::generator(k, x).unwrap();
                let gy = PolyElement::generator(k, y).unwrap();
                let product = gx.compose(&gy.dagger()).unwrap();
                let expected = if x == y {
                    PolyElement::identity(k).unwrap()
                } else {
                    PolyElement::Zero
                };
                ensure(product == expected, || format!("P_{k}: {x}·{y}‡ = {product}"))?;
                let arith = gx.theta().compose(&gy.theta().dagger());
                let arith_expected = if x == y { ArithElement::identity() } else { ArithElement::Zero };
                ensure(arith == arith_expected, || format!("θ_{k}: {x}·{y}‡ = {arith}"))?;
            }
        }
    }
    Ok(format!(
        "{} pairs over k ∈ {{2,3,5}} ({nonzero} non-zero); generator relations for k ≤ 7",
        3 * PAIRS
    ))
}

/// 7. μ_k is a monoid isomorphism; cancellation inverts composition.
fn kbn_isomorphism() -> Outcome {
    let mut checked = 0u64;
    for k in [2u32, 3] {
        let words = common::all_words(k, 6);
        let images: Vec<_> = words.iter().map(mu).collect();
        for (w, mw) in words.iter().zip(&images) {
            for (v, mv) in words.iter().zip(&images) {
                let joined = mu(&w.concat(v).unwrap());
                let composed = kbn_compose(k, mw, mv).map_err(|e| e.to_string())?;
                ensure(joined == composed, || format!("k={k}: μ({w}·{v}) ≠ μ({w})·μ({v})"))?;
                ensure(kbn_cancel(k, &composed, mv).as_ref() == Ok(mw), || {
                    format!("k={k}: ({w}·{v}) \\ {v} ≠ {w}")
                })?;
                if !v.is_empty() && !w.is_empty() {
                    let suffix = w.strip_suffix(v);
                    ensure(k_residue(k, mw, mv) == suffix.is_some(), || {
                        format!("k={k}: residue test disagrees with suffix test for {w}, {v}")
                    })?;
                    if let Some(r) = suffix {
                        let cancelled = kbn_cancel(k, mw, mv).map_err(|e| e.to_string())?;
                        ensure(cancelled == mu(&r), || format!("k={k}: {w} \\ {v} ≠ μ({r})"))?;
                    }
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} word pairs of length ≤ 6, k ∈ {{2,3}}"))
}

/// 8. p-adic norm through θ_p and through the constant-zero Cantor point.
fn padic_characterisation() -> Outcome {
    for p in [2u32, 3, 5, 7] {
        let zero = CantorPoint::constant_zero(p).unwrap();
        for n in 1..=10_000u64 {
            let n = nat(n);
            let direct = padic::norm(p, &n).map_err(|e| e.to_string())?;
            let via_theta = padic::norm_via_polycyclic(p, &n).map_err(|e| e.to_string())?;
            ensure(direct == via_theta, || format!("p={p} n={n}: {direct} vs {via_theta}"))?;
            let via_eval = padic::eval_gamma(&zero, &n).map_err(|e| e.to_string())?;
            ensure(direct == via_eval, || format!("p={p} n={n}: {direct} vs eval {via_eval}"))?;
        }
    }
    const TRIPLES: usize = 1000;
    let mut rng = common::rng(SEED + 8);
    for _ in 0..TRIPLES {
        let p = [2u32, 3, 5, 7][rng.gen_range(0..4)];
        let (a, b, c) = (
            nat(rng.gen_range(0..1_000_000)),
            nat(rng.gen_range(0..1_000_000)),
            nat(rng.gen_range(0..1_000_000)),
        );
        let d = |x: &Natural, y: &Natural| padic::distance(p, x, y).unwrap();
        ensure(d(&a, &c) <= d(&a, &b).max(d(&b, &c)), || {
            format!("p={p}: ultrametric fails on {a}, {b}, {c}")
        })?;
    }
    Ok(format!("n ≤ 10^4, p ∈ {{2,3,5,7}}; {TRIPLES} ultrametric triples"))
}

/// 9. Audit of eval_cant(a)(n) = ‖n − a‖_p; reported, not asserted.
fn corollary_audit() -> Outcome {
    let report = padic::corollary_audit(&[2, 3], 20, 200).map_err(|e| e.to_string())?;
    print!("{report}");
    let expected_cases: u64 = (1..=20u64).map(|a| 200 - a).sum();
    ensure(report.cells.len() == 4, || "expected four (p, order) cells".into())?;
    for cell in &report.cells {
        ensure(cell.cases == expected_cases, || {
            format!("p={} {}: {} cases, expected {expected_cases}", cell.prime, cell.order, cell.cases)
        })?;
    }
    let msb2 = report
        .cells
        .iter()
        .find(|c| c.prime == 2 && c.order == DigitOrder::MsbFirst)
        .expect("p=2 msb cell");
    ensure(msb2.counterexamples.iter().any(|(a, n, ..)| (*a, *n) == (1, 3)), || {
        "recorded counterexample p=2, a=1, n=3 missing".into()
    })?;
    let summary: Vec<String> = report
        .cells
        .iter()
        .map(|c| format!("p={} {} {}/{}", c.prime, c.order, c.holds, c.cases))
        .collect();
    Ok(format!("report emitted: {}", summary.join(", ")))
}

/// 10. Bicyclic monus formula against window composition, N = 200.
fn bicyclic_oracle() -> Outcome {
    const WINDOW: u64 = 200;
    const MAX: u64 = 20;
    let elements: Vec<BicyclicElement> = (0..=MAX)
        .flat_map(|b| (0..=MAX).map(move |a| BicyclicElement::new(b, a)))
        .collect();
    let windows: HashMap<(u64, u64), FinitePartialInjection> = (0..=2 * MAX)
        .flat_map(|b| (0..=2 * MAX).map(move |a| (b, a)))
        .map(|(b, a)| ((b, a), BicyclicElement::new(b, a).to_window(WINDOW)))
        .collect();
    let key = |e: &BicyclicElement| {
        use num_traits::ToPrimitive;
        (e.b.to_u64().unwrap(), e.a.to_u64().unwrap())
    };
    let margin = 2 * MAX;
    let mut pairs = 0u64;
    for x in &elements {
        for y in &elements {
            let oracle = windows[&key(x)].compose(&windows[&key(y)]).map_err(|e| e.to_string())?;
            let symbolic = &windows[&key(&x.compose(y))];
            let ok = agree_on_core(symbolic, &oracle, margin).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{x}{y} = {} disagrees with the window", x.compose(y)))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs with components ≤ {MAX}, N = {WINDOW}, margin {margin}"))
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("C1 CRT composition ground truth", crt_ground_truth),
        ("C2 inverse-monoid axioms", inverse_monoid_axioms),
        ("C3 mixed-radix chains", mixed_radix_lemma),
        ("C4 prime-generator factorisation", prime_factorisation),
        ("C5 Leech gcd/lcm and embedding", leech_equivalence),
        ("C6 Nivat-Perot vs arithmetic monoid", nivat_perot_vs_arith),
        ("C7 KBN isomorphism", kbn_isomorphism),
        ("C8 p-adic characterisation", padic_characterisation),
        ("C9 Cantor-point corollary audit", corollary_audit),
        ("C10 bicyclic window oracle", bicyclic_oracle),
    ];
    let mut failures = Vec::new();
    for (name, run) in criteria {
        let started = Instant::now();
        let outcome = run();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name} ({secs:.2}s): {detail}"),
            Err(detail) => {
                println!("FAIL {name} ({secs:.2}s): {detail}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
