#![allow(dead_code)]

use arith_monoid::classical::{BicyclicElement, LeechElement};
use arith_monoid::polycyclic::{PolyElement, Word};
use arith_monoid::{ArithElement, CongruenceClass, Natural};
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn nat(v: u64) -> Natural {
    Natural::from(v)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn random_class(rng: &mut ChaCha8Rng, max_modulus: u64) -> CongruenceClass {
    let m = rng.gen_range(1..=max_modulus);
    CongruenceClass::new(m, rng.gen_range(0..m)).unwrap()
}

pub fn random_normal_form(rng: &mut ChaCha8Rng, max_modulus: u64) -> ArithElement {
    ArithElement::between(random_class(rng, max_modulus), random_class(rng, max_modulus))
}

/// Mostly normal forms, occasionally zero or a partial identity.
pub fn random_arith(rng: &mut ChaCha8Rng, max_modulus: u64) -> ArithElement {
    match rng.gen_range(0..20) {
        0 => ArithElement::Zero,
        1..=3 => ArithElement::partial_identity(random_class(rng, max_modulus)),
        _ => random_normal_form(rng, max_modulus),
    }
}

pub fn random_idempotent(rng: &mut ChaCha8Rng, max_modulus: u64) -> ArithElement {
    if rng.gen_range(0..20) == 0 {
        ArithElement::Zero
    } else {
        ArithElement::partial_identity(random_class(rng, max_modulus))
    }
}

pub fn random_bicyclic(rng: &mut ChaCha8Rng, max: u64) -> BicyclicElement {
    BicyclicElement::new(rng.gen_range(0..=max), rng.gen_range(0..=max))
}

pub fn random_leech(rng: &mut ChaCha8Rng, max: u64) -> LeechElement {
    LeechElement::new(rng.gen_range(1..=max), rng.gen_range(1..=max)).unwrap()
}

pub fn random_word(rng: &mut ChaCha8Rng, k: u32, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new(k, (0..len).map(|_| rng.gen_range(0..k)).collect()).unwrap()
}

pub fn random_poly(rng: &mut ChaCha8Rng, k: u32, max_len: usize) -> PolyElement {
    if rng.gen_range(0..20) == 0 {
        return PolyElement::Zero;
    }
    PolyElement::new(random_word(rng, k, max_len), random_word(rng, k, max_len)).unwrap()
}

/// A pair `(lhs, rhs)` whose middle words are related by a suffix with
/// probability about one half, so that products are often non-zero.
pub fn random_poly_pair(rng: &mut ChaCha8Rng, k: u32, max_len: usize) -> (PolyElement, PolyElement) {
    let lhs = random_poly(rng, k, max_len);
    let rhs = random_poly(rng, k, max_len);
    let (PolyElement::Pair { up: x, down: w }, PolyElement::Pair { down: u, .. }) = (&lhs, &rhs) else {
        return (lhs, rhs);
    };
    if !rng.gen_bool(0.5) {
        return (lhs, rhs);
    }
    let extra = random_word(rng, k, 2);
    let v = if rng.gen_bool(0.5) {
        // suffix of w
        let cut = rng.gen_range(0..=w.len());
        Word::new(k, w.digits()[cut..].to_vec()).unwrap()
    } else {
        extra.concat(w).unwrap()
    };
    (
        PolyElement::new(x.clone(), w.clone()).unwrap(),
        PolyElement::new(v, u.clone()).unwrap(),
    )
}

/// Composition by pullback, using only pointwise evaluation and direct
/// enumeration: find the meet of `img(g)` and `dom(f)` by scanning, then
/// transport its first two points back along `g` and forward along `f`.
pub fn pullback_compose(f: &ArithElement, g: &ArithElement) -> ArithElement {
    let (Some(f_dom), Some(g_img)) = (f.domain(), g.image()) else {
        return ArithElement::Zero;
    };
    let (c, e) = (g_img.modulus().to_u64().unwrap(), f_dom.modulus().to_u64().unwrap());
    let period = (1..=c * e).find(|m| m % c == 0 && m % e == 0).unwrap();
    let Some(r) = (0..period).find(|m| g_img.member(&nat(*m)) && f_dom.member(&nat(*m))) else {
        return ArithElement::Zero;
    };
    let g_back = g.dagger();
    let (r0, r1) = (nat(r), nat(r + period));
    let (d0, d1) = (g_back.apply(&r0).unwrap(), g_back.apply(&r1).unwrap());
    let (i0, i1) = (f.apply(&r0).unwrap(), f.apply(&r1).unwrap());
    ArithElement::between(
        CongruenceClass::new(&d1 - &d0, d0).unwrap(),
        CongruenceClass::new(&i1 - &i0, i0).unwrap(),
    )
}

/// Every word over `{0,…,k−1}` of length at most `max_len`.
pub fn all_words(k: u32, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty(k).unwrap()];
    let mut layer = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for x in 0..k {
                next.push(w.concat(&Word::new(k, vec![x]).unwrap()).unwrap());
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
