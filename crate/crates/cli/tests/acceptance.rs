//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use qgha_core::modules::{
    build_matrix_rep, enumerate_simples, is_simple_bruteforce, iso_bruteforce, iso_structural, verify_relations,
    DEFAULT_ISO_SEARCH_BOUND, DEFAULT_SIMPLE_SEARCH_BOUND,
};
use qgha_core::parse::parse_poly;
use qgha_core::pbw::{commutator, theta};
use qgha_core::spectra::{enumerate_lambda_orbits, mu_period};
use qgha_core::structure::{center_basis_truncated, conformal_witness, domain_check, Conformality, DomainReport};
use qgha_core::{
    Algebra, AlgebraSpec, Family, Field, FieldElement, LambdaOrbit, Matrix, ModuleSpec, MuSeq, PbwElement, Poly,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SEED: u64 = 0x5eed_0001;
const ASSOCIATIVITY_TRIPLES: usize = 500;
const ASSOCIATIVITY_LIMIT: Duration = Duration::from_secs(60);
const DEFAULT_LIMIT: Duration = Duration::from_secs(30);
const MODULE_LIMIT: Duration = Duration::from_secs(300);
const THETA_MAX_K: usize = 6;
const MU_ANCHORS: usize = 20;
const CLI_RUNS: usize = 3;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: qgha_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn algebra(field: &Field, q: &str, f: &str, g: &str) -> Algebra {
    Algebra::new(AlgebraSpec::parse(field, q, f, g).expect("valid parameters"))
}

fn parameter_sets() -> Vec<Algebra> {
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

fn random_element(field: &Field, rng: &mut StdRng) -> FieldElement {
    match field.order() {
        Some(order) => field.element(rng.gen_range(0..order)),
        None => field.from_i64(rng.gen_range(-5..=5)).checked_div(&field.from_i64(rng.gen_range(1..=3))).unwrap(),
    }
}

fn random_pbw(alg: &Algebra, rng: &mut StdRng) -> PbwElement {
    let field = alg.field();
    let mut u = alg.zero();
    for _ in 0..rng.gen_range(1..=3) {
        let deg = rng.gen_range(0..=1);
        let p = Poly::from_coeffs(field, (0..=deg).map(|_| random_element(field, rng)).collect());
        u = u.add(&alg.monomial(rng.gen_range(0..=2), p, rng.gen_range(0..=2)));
    }
    u
}

/// sum_{i<k} q^i sigma^{k-1-i}(g), composing f by hand.
fn theta_oracle(alg: &Algebra, k: usize) -> Poly {
    let mut total = Poly::zero(alg.field());
    for i in 0..k {
        let mut term = alg.g().clone();
        for _ in 0..(k - 1 - i) {
            term = term.compose(alg.f());
        }
        total = &total + &term.scale(&alg.q().pow(i as u64));
    }
    total
}

fn associativity() -> Check {
    let mut rng = StdRng::seed_from_u64(SEED);
    let sets = parameter_sets();
    for alg in &sets {
        for _ in 0..ASSOCIATIVITY_TRIPLES {
            let (a, b, c) = (random_pbw(alg, &mut rng), random_pbw(alg, &mut rng), random_pbw(alg, &mut rng));
            let left = lib(lib(a.mul(&b))?.mul(&c))?;
            let right = lib(a.mul(&lib(b.mul(&c))?))?;
            ensure(left == right, || format!("(ab)c != a(bc) for a={a}, b={b}, c={c}"))?;
        }
    }
    Ok(format!("{} triples on each of {} parameter sets", ASSOCIATIVITY_TRIPLES, sets.len()))
}

fn theta_identities() -> Check {
    for alg in parameter_sets() {
        for k in 0..=THETA_MAX_K {
            let t = lib(theta(k, &alg))?;
            ensure(t == theta_oracle(&alg, k), || format!("theta_{k} mismatch for {:?}", alg.spec()))?;
            if k == 0 {
                continue;
            }
            let qk = Poly::constant(alg.q().pow(k as u64));
            // y x^k = q^k x^k y + x^(k-1) theta_k
            let xk = lib(alg.x().pow(k as u32))?;
            let lhs = lib(alg.y().mul(&xk))?;
            let rhs = alg.monomial(k as u32, qk.clone(), 1).add(&alg.monomial(k as u32 - 1, t.clone(), 0));
            ensure(lhs == rhs, || format!("y x^{k} straightening mismatch"))?;
            // y^k x = q^k x y^k + theta_k y^(k-1)
            let yk = lib(alg.y().pow(k as u32))?;
            let lhs = lib(yk.mul(&alg.x()))?;
            let rhs = alg
                .monomial(1, qk, k as u32)
                .add(&alg.monomial(0, t.clone(), k as u32 - 1));
            ensure(lhs == rhs, || format!("y^{k} x straightening mismatch"))?;
            if k == THETA_MAX_K {
                continue;
            }
            // theta_{k+1} = sigma(theta_k) + q^k g
            let next = &lib(alg.sigma(&t, 1))? + &alg.g().scale(&alg.q().pow(k as u64));
            ensure(next == lib(theta(k + 1, &alg))?, || format!("theta recursion fails at k={k}"))?;
        }
    }
    Ok(format!("k <= {THETA_MAX_K} on 10 parameter sets"))
}

fn domain_grid() -> Check {
    let field = Field::rationals();
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut cells = 0;
    for q in ["0", "1", "2"] {
        for f in ["3", "h", "h^2"] {
            for g in ["h", "1", "0"] {
                let alg = algebra(&field, q, f, g);
                let expected = q != "0" && f != "3";
                match lib(domain_check(&alg))? {
                    DomainReport::IsDomain => {
                        ensure(expected, || format!("q={q} f={f} g={g} reported as a domain"))?;
                        for _ in 0..20 {
                            let (a, b) = (random_pbw(&alg, &mut rng), random_pbw(&alg, &mut rng));
                            if !a.is_zero() && !b.is_zero() {
                                ensure(!lib(a.mul(&b))?.is_zero(), || format!("{a} * {b} = 0 in a domain"))?;
                            }
                        }
                    }
                    DomainReport::ZeroDivisor(w) => {
                        ensure(!expected, || format!("q={q} f={f} g={g} reported zero divisors"))?;
                        ensure(lib(w.verify())?, || format!("bad witness {} * {}", w.left, w.right))?;
                    }
                }
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} grid cells"))
}

fn is_central(alg: &Algebra, z: &PbwElement) -> Result<bool, String> {
    for gen in [alg.x(), alg.y(), alg.h()] {
        if !lib(commutator(z, &gen))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn center() -> Check {
    let rationals = Field::rationals();
    let generic = algebra(&rationals, "2", "h^2", "h");
    let basis = lib(center_basis_truncated(&generic, 4, 8))?;
    ensure(basis.len() == 1 && basis[0].terms().keys().all(|&k| k == (0, 0)) && basis[0].max_h_degree() == Some(0), || {
        format!("expected span(1) over Q, got {} elements", basis.len())
    })?;

    let f5 = Field::prime(5).unwrap();
    let alg = algebra(&f5, "2", "h^2", "h^2 - 2*h");
    let Conformality::Conformal(w) = lib(conformal_witness(&alg))? else {
        return Err("GF(5) example should be conformal".into());
    };
    let z4 = lib(w.z.pow(4))?;
    ensure(is_central(&alg, &z4)?, || "Z^4 is not central".into())?;
    ensure(!is_central(&alg, &w.z)?, || "Z itself should not be central".into())?;
    let basis = lib(center_basis_truncated(&alg, 4, 8))?;
    ensure(basis.len() == 2, || format!("expected a 2-dimensional center, got {}", basis.len()))?;
    let top = |u: &PbwElement| u.coefficient(4, 4).leading_coeff().cloned();
    let z_top = top(&z4).ok_or("Z^4 has no (4,4) term")?;
    for b in &basis {
        ensure(is_central(&alg, b)?, || format!("{b} is not central"))?;
        let c = match top(b) {
            Some(t) => lib(t.checked_div(&z_top))?,
            None => f5.zero(),
        };
        let rest = b.sub(&z4.scale(&c));
        ensure(rest.terms().iter().all(|(&k, p)| k == (0, 0) && p.is_constant()), || {
            format!("{b} is not in span(1, Z^4)")
        })?;
    }
    Ok("Q: span(1); GF(5): span(1, Z^4) at max_xy=4, max_h=8".into())
}

/// Blocks of length l until the recurrence returns to the anchor.
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

fn mu_periods() -> Check {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut checked = 0;
    for p in [2u64, 3, 5, 7] {
        let field = Field::prime(p).unwrap();
        let mut hit_p = false;
        let fs = ["h", "h^2", "h + 1", "h^3 + 1"];
        let gs = ["1", "h", "h^2 + 1"];
        for f in fs {
            for g in gs {
                let fp = lib(parse_poly(f, &field))?;
                let gp = lib(parse_poly(g, &field))?;
                for orbit in lib(enumerate_lambda_orbits(&field, &fp, p as usize))? {
                    for qi in 1..p {
                        let q = field.element(qi);
                        for _ in 0..MU_ANCHORS {
                            let beta = field.element(rng.gen_range(0..p));
                            let got = lib(mu_period(&orbit, &q, &gp, &beta))?;
                            let want = cycle_length(&orbit, &q, &gp, &beta);
                            ensure(got == want, || {
                                format!("GF({p}) f={f} g={g} q={q} beta={beta}: {got} != {want}")
                            })?;
                            let mu = lib(MuSeq::new(&orbit, &q, &gp, &beta))?;
                            if got == p && q.pow(orbit.period() as u64).is_one() && !mu.xi().is_zero() {
                                hit_p = true;
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
        ensure(hit_p, || format!("no anchor with |mu| = {p} over GF({p})"))?;
    }
    Ok(format!("{checked} anchors; |mu| = p reached for every p"))
}

fn power_identities(spec: &ModuleSpec) -> Result<(), String> {
    let rep = lib(build_matrix_rep(spec))?;
    let field = rep.field().clone();
    let n = spec.dim();
    let id = Matrix::identity(&field, n);
    let nn = n as u64;
    let (xn, yn) = (rep.x.pow(nn), rep.y.pow(nn));
    match spec.family() {
        Family::A => {
            let gamma = spec.gamma().unwrap();
            let prod = spec.mu_product().unwrap();
            ensure(xn == id.scale(gamma), || format!("{spec}: X^n != gamma"))?;
            ensure(yn == id.scale(&(&prod * &lib(gamma.inverse())?)), || format!("{spec}: Y^n mismatch"))?;
        }
        Family::B => {
            let gamma = spec.gamma().unwrap();
            ensure(yn == id.scale(&lib(gamma.inverse())?), || format!("{spec}: Y^n != 1/gamma"))?;
            ensure(xn.is_zero(), || format!("{spec}: X^n should vanish"))?;
        }
        Family::C => ensure(xn.is_zero() && yn.is_zero(), || format!("{spec}: X^n, Y^n should vanish"))?,
    }
    // H is diagonal and XY, YX are diagonal in the weight basis
    for m in [&rep.h, &rep.x.mul(&rep.y), &rep.y.mul(&rep.x)] {
        for i in 0..n {
            for j in 0..n {
                ensure(i == j || m[(i, j)].is_zero(), || format!("{spec}: off-diagonal entry"))?;
            }
        }
    }
    Ok(())
}

fn module_family() -> Check {
    let field = Field::prime(5).unwrap();
    let mut count = 0;
    for f in ["h^2", "h^3"] {
        for g in ["h", "h^2"] {
            for q in ["2", "3", "4"] {
                let alg = algebra(&field, q, f, g);
                for n in 1..=4 {
                    for spec in lib(enumerate_simples(&alg, n))? {
                        let rep = lib(build_matrix_rep(&spec))?;
                        ensure(lib(verify_relations(&rep, &alg))?.all_zero(), || format!("{spec}: relations fail"))?;
                        ensure(lib(is_simple_bruteforce(&rep, DEFAULT_SIMPLE_SEARCH_BOUND))?, || {
                            format!("{spec}: has a proper submodule")
                        })?;
                        power_identities(&spec)?;
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{count} modules over GF(5) with n <= 4"))
}

type Triple = (FieldElement, FieldElement, FieldElement);

fn one_dimensional() -> Check {
    let mut grids = 0;
    for p in [5u64, 7] {
        let field = Field::prime(p).unwrap();
        for f in ["h^2", "h^3", "h + 1", "2*h"] {
            for g in ["h", "1", "h^2 - 1"] {
                for qi in 1..p {
                    let q = field.element(qi).to_string();
                    let alg = algebra(&field, &q, f, g);
                    let (fp, gp, qv) = (alg.f().clone(), alg.g().clone(), alg.q().clone());
                    let elems: Vec<FieldElement> = lib(field.elements())?.collect();
                    let mut brute: BTreeSet<Triple> = BTreeSet::new();
                    for x in &elems {
                        for y in &elems {
                            for h in &elems {
                                let fh = fp.eval(h);
                                let ok = (h * x) == (x * &fh)
                                    && (y * h) == (&fh * y)
                                    && (&(y * x) - &(&qv * &(x * y))) == gp.eval(h);
                                if ok {
                                    brute.insert((x.clone(), y.clone(), h.clone()));
                                }
                            }
                        }
                    }
                    let mut listed: BTreeSet<Triple> = BTreeSet::new();
                    let specs = lib(enumerate_simples(&alg, 1))?;
                    for s in &specs {
                        let r = lib(build_matrix_rep(s))?;
                        let t = (r.x[(0, 0)].clone(), r.y[(0, 0)].clone(), r.h[(0, 0)].clone());
                        ensure(listed.insert(t), || format!("GF({p}) q={q} f={f} g={g}: {s} listed twice"))?;
                    }
                    ensure(listed == brute, || {
                        format!("GF({p}) q={q} f={f} g={g}: {} listed vs {} solutions", listed.len(), brute.len())
                    })?;
                    grids += 1;
                }
            }
        }
    }
    Ok(format!("{grids} parameter choices over GF(5) and GF(7)"))
}

/// Enumerated modules plus every shifted presentation and the B-form of
/// each A-module with invertible mu product.
fn presentations(alg: &Algebra, n: usize) -> Result<Vec<ModuleSpec>, String> {
    let mut out = Vec::new();
    for s in lib(enumerate_simples(alg, n))? {
        if let (Some(mu), Some(gamma)) = (s.mu(), s.gamma()) {
            for k in 0..n as i64 {
                let shifted = lib(mu.rotated(k))?;
                let values = shifted.orbit().values().to_vec();
                out.push(lib(ModuleSpec::quotient(alg, s.family(), values.clone(), shifted.anchor(), gamma))?);
                let prod = s.mu_product().unwrap();
                if s.family() == Family::A && !prod.is_zero() {
                    let gamma_b = lib(gamma.checked_div(&prod))?;
                    out.push(lib(ModuleSpec::quotient(alg, Family::B, values, shifted.anchor(), &gamma_b))?);
                }
            }
        } else {
            out.push(s);
        }
    }
    Ok(out)
}

fn isomorphism() -> Check {
    let field = Field::prime(5).unwrap();
    let mut pairs = 0usize;
    let mut isomorphic = 0usize;
    for (q, f, g) in [("2", "h^2", "h"), ("4", "h^3", "h^2"), ("3", "h^2", "h^2 + 1"), ("1", "h + 1", "h")] {
        let alg = algebra(&field, q, f, g);
        for n in 1..=4 {
            let specs = presentations(&alg, n)?;
            let reps = specs.iter().map(|s| lib(build_matrix_rep(s))).collect::<Result<Vec<_>, _>>()?;
            for i in 0..specs.len() {
                for j in i..specs.len() {
                    let s = lib(iso_structural(&specs[i], &specs[j]))?;
                    let b = lib(iso_bruteforce(&reps[i], &reps[j], DEFAULT_ISO_SEARCH_BOUND))?;
                    ensure(s == b, || format!("{} vs {}: structural {s}, brute force {b}", specs[i], specs[j]))?;
                    pairs += 1;
                    isomorphic += usize::from(s && i != j);
                }
            }
        }
    }
    ensure(isomorphic > 0, || "no nontrivial isomorphic pair exercised".into())?;
    Ok(format!("{pairs} pairs, {isomorphic} nontrivially isomorphic"))
}

fn cli_determinism() -> Check {
    let gf5 = ["--field", "GF(5)", "--q", "2", "--f", "h^2", "--g", "h", "--json"];
    let verbs: [&[&str]; 5] = [
        &["enumerate", "--dim", "2"],
        &["center", "--max-xy", "2", "--max-h", "4"],
        &["orbits"],
        &["mu", "--lambda", "[1]", "--beta", "3"],
        &["check-iso", "--module", "A(lambda=[0],beta=0,gamma=1)", "--other", "B(lambda=[0],beta=0,gamma=1)"],
    ];
    for verb in verbs {
        let runs: Vec<_> = (0..CLI_RUNS)
            .map(|_| Command::new(env!("CARGO_BIN_EXE_qgha")).args(gf5).args(verb).output())
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure(runs[0].status.success(), || format!("{verb:?} failed: {}", String::from_utf8_lossy(&runs[0].stderr)))?;
        ensure(runs.iter().all(|r| r.stdout == runs[0].stdout && r.status == runs[0].status), || {
            format!("{verb:?} output differs between runs")
        })?;
    }
    Ok(format!("{} verbs x {CLI_RUNS} runs byte-identical", verbs.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("associativity of the PBW product", associativity, ASSOCIATIVITY_LIMIT),
        ("theta identities", theta_identities, DEFAULT_LIMIT),
        ("domain criterion grid", domain_grid, DEFAULT_LIMIT),
        ("truncated center", center, DEFAULT_LIMIT),
        ("mu periods vs cycle detection", mu_periods, DEFAULT_LIMIT),
        ("finite-dimensional module families", module_family, MODULE_LIMIT),
        ("one-dimensional classification", one_dimensional, MODULE_LIMIT),
        ("structural vs brute-force isomorphism", isomorphism, MODULE_LIMIT),
        ("CLI determinism", cli_determinism, DEFAULT_LIMIT),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| {
            if elapsed > *limit {
                Err(format!("took {elapsed:.1?}, limit {limit:?} ({detail})"))
            } else {
                Ok(detail)
            }
        });
        match result {
            Ok(detail) => println!("criterion {}: PASS {name} [{elapsed:.2?}] {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {}: FAIL {name} [{elapsed:.2?}] {reason}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
