mod common;

use qgha_core::spectra::{enumerate_lambda_orbits, mu_period, nu_table};
use qgha_core::{Field, FieldElement, LambdaOrbit, Poly};

/// Number of blocks of length l until the recurrence returns to mu(0).
fn cycle_length(orbit: &LambdaOrbit, q: &FieldElement, g: &Poly, beta: &FieldElement) -> u64 {
    let order = orbit.field().order().unwrap();
    let mut cur = beta.clone();
    for blocks in 1..=order {
        for v in orbit.values() {
            cur = &(q * &cur) + &g.eval(v);
        }
        if &cur == beta {
            return blocks;
        }
    }
    0
}

fn small_fields() -> Vec<Field> {
    let mut out: Vec<Field> = [2u64, 3, 5, 7, 11].iter().map(|&p| Field::prime(p).unwrap()).collect();
    for spec in ["GF(2^2)", "GF(2^3)", "GF(3^2)", "GF(5^2)", "GF(3^3)", "GF(5^3)"] {
        out.push(Field::parse(spec).unwrap());
    }
    out
}

#[test]
fn mu_period_matches_cycle_detection_on_small_fields() {
    for field in small_fields() {
        let u = field.generator().unwrap_or_else(|_| field.one());
        let fs = [
            Poly::h(&field),
            Poly::from_coeffs(&field, vec![field.zero(), field.zero(), field.one()]),
            Poly::from_coeffs(&field, vec![u.clone(), field.one()]),
            Poly::from_coeffs(&field, vec![field.one(), field.zero(), field.zero(), field.one()]),
        ];
        let gs = [
            Poly::one(&field),
            Poly::h(&field),
            Poly::from_coeffs(&field, vec![u.clone(), field.zero(), field.one()]),
        ];
        let qs: Vec<FieldElement> = field.elements().unwrap().filter(|q| !q.is_zero()).take(6).collect();
        for f in &fs {
            let orbits = enumerate_lambda_orbits(&field, f, field.order().unwrap() as usize).unwrap();
            for orbit in &orbits {
                for g in &gs {
                    for q in &qs {
                        for beta in field.elements().unwrap() {
                            assert_eq!(
                                mu_period(orbit, q, g, &beta).unwrap(),
                                cycle_length(orbit, q, g, &beta),
                                "{field} f={f} g={g} q={q} beta={beta} orbit={:?}",
                                orbit.values()
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn orbits_match_functional_graph_brute_force() {
    for field in small_fields() {
        let f = Poly::from_coeffs(&field, vec![field.one(), field.zero(), field.one()]);
        let orbits = enumerate_lambda_orbits(&field, &f, usize::MAX).unwrap();
        // a point is periodic iff iterating |F| times from its image returns to it
        let order = field.order().unwrap();
        let periodic: Vec<_> = field
            .elements()
            .unwrap()
            .filter(|a| {
                let mut cur = f.eval(a);
                for _ in 0..order {
                    if &cur == a {
                        return true;
                    }
                    cur = f.eval(&cur);
                }
                false
            })
            .collect();
        let mut covered: Vec<_> = orbits.iter().flat_map(|o| o.values().to_vec()).collect();
        covered.sort();
        assert_eq!(covered, periodic);
        for o in &orbits {
            assert_eq!(LambdaOrbit::new(&f, o.values().to_vec()).unwrap(), *o);
            assert_eq!(&o.values()[0], o.values().iter().min().unwrap());
        }
    }
}

#[test]
fn nu_is_the_sum_formula() {
    let q = Field::rationals();
    let f = Poly::from_i64s(&q, &[1, 0, 1]);
    let g = Poly::from_i64s(&q, &[-1, 2]);
    let qv = q.from_i64(3);
    let alpha = q.from_i64(-2);
    let table = nu_table(&alpha, &qv, &f, &g, 5);
    for i in 0..=5usize {
        let mut sum = q.zero();
        for j in 0..i {
            let mut point = alpha.clone();
            for _ in 0..(i - 1 - j) {
                point = f.eval(&point);
            }
            sum = &sum + &(&qv.pow(j as u64) * &g.eval(&point));
        }
        assert_eq!(table.value(i), &sum);
    }
}
