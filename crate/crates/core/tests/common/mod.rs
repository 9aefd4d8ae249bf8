#![allow(dead_code)]

use qgha_core::{Algebra, AlgebraSpec, Field, FieldElement, PbwElement, Poly};
use rand::rngs::StdRng;
use rand::Rng;

pub fn algebra(field: &Field, q: &str, f: &str, g: &str) -> Algebra {
    Algebra::new(AlgebraSpec::parse(field, q, f, g).unwrap())
}

/// Ten parameter sets over Q, GF(5) and GF(49), with q both a root of unity
/// and not.
pub fn parameter_sets() -> Vec<Algebra> {
    let q = Field::rationals();
    let f5 = Field::prime(5).unwrap();
    let f49 = Field::parse("GF(7^2)").unwrap();
    vec![
        algebra(&q, "2", "h^2", "h"),
        algebra(&q, "-1", "h^3 - h + 1", "h^2 + 1"),
        algebra(&q, "1/2", "2*h + 1", "h^3"),
        algebra(&q, "1", "h^2 + h", "h^2 - h"),
        algebra(&f5, "2", "h^2", "h"),
        algebra(&f5, "4", "h^3 + 2*h", "h^2 + 3"),
        algebra(&f5, "3", "h + 1", "2*h^3 + h"),
        algebra(&f49, "u", "h^2", "u*h + 1"),
        algebra(&f49, "6", "u*h^3 + h", "h^2 + u"),
        algebra(&f49, "u + 3", "h^2 + u", "h^3 + 2"),
    ]
}

pub fn random_element(field: &Field, rng: &mut StdRng) -> FieldElement {
    match field.order() {
        Some(order) => field.element(rng.gen_range(0..order)),
        None => {
            let num = field.from_i64(rng.gen_range(-6..=6));
            let den = field.from_i64(rng.gen_range(1..=4));
            num.checked_div(&den).unwrap()
        }
    }
}

pub fn random_poly(field: &Field, rng: &mut StdRng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    Poly::from_coeffs(field, (0..=deg).map(|_| random_element(field, rng)).collect())
}

/// A sum of up to `terms` monomials `x^i p(h) y^k` with `i, k <= max_exp`.
pub fn random_pbw(alg: &Algebra, rng: &mut StdRng, terms: usize, max_exp: u32, max_deg: usize) -> PbwElement {
    let mut u = alg.zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let i = rng.gen_range(0..=max_exp);
        let k = rng.gen_range(0..=max_exp);
        u = u.add(&alg.monomial(i, random_poly(alg.field(), rng, max_deg), k));
    }
    u
}

/// `sum_{i<k} q^i sigma^{k-1-i}(g)`, composing f by hand.
pub fn theta_oracle(alg: &Algebra, k: usize) -> Poly {
    let field = alg.field();
    let mut total = Poly::zero(field);
    for i in 0..k {
        let mut term = alg.g().clone();
        for _ in 0..(k - 1 - i) {
            term = term.compose(alg.f());
        }
        total = &total + &term.scale(&alg.q().pow(i as u64));
    }
    total
}
