mod common;

use common::algebra;
use qgha_core::modules::{
    build_matrix_rep, enumerate_simples, is_simple_bruteforce, is_simple_structural, iso_bruteforce,
    iso_structural, verify_relations, DEFAULT_ISO_SEARCH_BOUND, DEFAULT_SIMPLE_SEARCH_BOUND,
};
use qgha_core::{Algebra, Family, Field, Matrix, ModuleSpec};

fn grid() -> Vec<Algebra> {
    let f5 = Field::prime(5).unwrap();
    let f7 = Field::prime(7).unwrap();
    vec![
        algebra(&f5, "2", "h^2", "h"),
        algebra(&f5, "4", "h^3", "h^2"),
        algebra(&f5, "1", "h", "1"),
        algebra(&f5, "1", "h + 1", "h"),
        algebra(&f7, "2", "h^2 + 1", "h - 3"),
        algebra(&f7, "6", "h^3", "h^2 + h"),
    ]
}

#[test]
fn enumerated_modules_are_valid_simple_and_distinct() {
    for alg in grid() {
        for n in 1..=3 {
            let specs = enumerate_simples(&alg, n).unwrap();
            for s in &specs {
                assert_eq!(s.dim(), n);
                let rep = build_matrix_rep(s).unwrap();
                assert!(verify_relations(&rep, &alg).unwrap().all_zero(), "{s}");
                assert!(is_simple_structural(s).is_simple());
                assert!(is_simple_bruteforce(&rep, DEFAULT_SIMPLE_SEARCH_BOUND).unwrap(), "{s}");
                let id = Matrix::identity(alg.field(), n);
                let nn = n as u64;
                match s.family() {
                    Family::A => assert_eq!(rep.x.pow(nn), id.scale(s.gamma().unwrap())),
                    Family::B => {
                        assert_eq!(rep.y.pow(nn), id.scale(&s.gamma().unwrap().inverse().unwrap()));
                        assert!(rep.x.pow(nn).is_zero());
                    }
                    Family::C => assert!(rep.x.pow(nn).is_zero() && rep.y.pow(nn).is_zero()),
                }
            }
            for (i, a) in specs.iter().enumerate() {
                for b in &specs[i + 1..] {
                    assert!(!iso_structural(a, b).unwrap(), "{a} ~ {b}");
                }
            }
        }
    }
}

#[test]
fn iso_structural_is_an_equivalence_and_matches_brute_force() {
    for alg in grid().into_iter().take(4) {
        for n in 1..=3 {
            let mut specs = enumerate_simples(&alg, n).unwrap();
            // add every shifted presentation of the quotient modules
            let extra: Vec<ModuleSpec> = specs
                .iter()
                .filter_map(|s| s.mu().map(|mu| (s, mu)))
                .flat_map(|(s, mu)| {
                    (1..n as i64).map(move |k| {
                        let shifted = mu.rotated(k).unwrap();
                        ModuleSpec::quotient(
                            s.algebra(),
                            s.family(),
                            shifted.orbit().values().to_vec(),
                            shifted.anchor(),
                            s.gamma().unwrap(),
                        )
                        .unwrap()
                    })
                })
                .collect();
            specs.extend(extra);
            let reps: Vec<_> = specs.iter().map(|s| build_matrix_rep(s).unwrap()).collect();
            let iso: Vec<Vec<bool>> = specs
                .iter()
                .map(|a| specs.iter().map(|b| iso_structural(a, b).unwrap()).collect())
                .collect();
            let m = specs.len();
            for i in 0..m {
                assert!(iso[i][i]);
                for j in 0..m {
                    assert_eq!(iso[i][j], iso[j][i]);
                    assert_eq!(
                        iso[i][j],
                        iso_bruteforce(&reps[i], &reps[j], DEFAULT_ISO_SEARCH_BOUND).unwrap(),
                        "{} vs {}",
                        specs[i],
                        specs[j]
                    );
                    for k in 0..m {
                        if iso[i][j] && iso[j][k] {
                            assert!(iso[i][k]);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    for alg in grid() {
        let a: Vec<String> = enumerate_simples(&alg, 2).unwrap().iter().map(|s| s.to_string()).collect();
        let b: Vec<String> = enumerate_simples(&alg, 2).unwrap().iter().map(|s| s.to_string()).collect();
        assert_eq!(a, b);
    }
}

#[test]
fn trivial_module_appears_once_for_monomial_parameters() {
    let f5 = Field::prime(5).unwrap();
    for a in 1..=3 {
        for b in 1..=3 {
            for q in ["1", "2", "3", "4"] {
                let alg = algebra(&f5, q, &format!("h^{a}"), &format!("h^{b}"));
                let trivial = enumerate_simples(&alg, 1)
                    .unwrap()
                    .into_iter()
                    .filter(|s| {
                        let rep = build_matrix_rep(s).unwrap();
                        rep.x.is_zero() && rep.y.is_zero() && rep.h.is_zero()
                    })
                    .count();
                assert_eq!(trivial, 1);
            }
        }
    }
}
