//! Periodic f-trajectories (lambda orbits), the affine sequences mu attached
//! to them, and the nilpotent-case sequence nu.

use crate::error::{Error, Result};
use crate::field::{roots_in_field, Field, FieldElement, FieldKind};
use crate::poly::{compositional_power, Poly};

/// Largest field order scanned when enumerating orbits.
pub const ORBIT_SCAN_BOUND: u64 = 1 << 20;

/// A periodic sequence with `f(lambda(i)) = lambda(i+1)`, stored as one
/// period `lambda(0..l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaOrbit {
    f: Poly,
    values: Vec<FieldElement>,
}

impl LambdaOrbit {
    /// Validates that `values` is a full cycle of `f` with minimal period.
    pub fn new(f: &Poly, values: Vec<FieldElement>) -> Result<LambdaOrbit> {
        if values.is_empty() {
            return Err(Error::InvalidSpec("lambda orbit must be nonempty".into()));
        }
        if let Some(v) = values.iter().find(|v| v.field() != f.field()) {
            return Err(Error::FieldMismatch(v.field().to_string(), f.field().to_string()));
        }
        let l = values.len();
        for i in 0..l {
            if f.eval(&values[i]) != values[(i + 1) % l] {
                return Err(Error::InvalidSpec(format!(
                    "f({}) != {}: not an orbit of f",
                    values[i],
                    values[(i + 1) % l]
                )));
            }
        }
        let mut sorted = values.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != l {
            return Err(Error::InvalidSpec("lambda orbit period is not minimal".into()));
        }
        Ok(LambdaOrbit { f: f.clone(), values })
    }

    /// The orbit through `alpha` if `alpha` is periodic with period at most
    /// `max_len`.
    pub fn from_point(f: &Poly, alpha: &FieldElement, max_len: usize) -> Option<LambdaOrbit> {
        let mut values = vec![alpha.clone()];
        let mut cur = f.eval(alpha);
        while &cur != alpha {
            if values.len() >= max_len {
                return None;
            }
            values.push(cur.clone());
            cur = f.eval(&cur);
        }
        Some(LambdaOrbit { f: f.clone(), values })
    }

    pub fn field(&self) -> &Field {
        self.f.field()
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    /// `|lambda|`.
    pub fn period(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    /// `lambda(i)` for any integer i.
    pub fn value(&self, i: i64) -> &FieldElement {
        &self.values[i.rem_euclid(self.values.len() as i64) as usize]
    }

    /// The orbit `k -> lambda(k + s)`.
    pub fn rotated(&self, s: i64) -> LambdaOrbit {
        let values = (0..self.period() as i64).map(|k| self.value(k + s).clone()).collect();
        LambdaOrbit { f: self.f.clone(), values }
    }

    /// The rotation starting at the least value, and the shift `r` with
    /// `canonical(k) = lambda(k + r)`.
    pub fn canonical(&self) -> (LambdaOrbit, usize) {
        let r = (0..self.period()).min_by(|&a, &b| self.values[a].cmp(&self.values[b])).unwrap_or(0);
        (self.rotated(r as i64), r)
    }

    /// The index `s` in `0..l` with `lambda(s) = v`, if any.
    pub fn position(&self, v: &FieldElement) -> Option<usize> {
        self.values.iter().position(|x| x == v)
    }
}

/// All cycles of `alpha -> f(alpha)` of length at most `max_len`, each in
/// canonical rotation, sorted by period and then by values. Over Q only
/// fixed points (`max_len = 1`) are supported.
pub fn enumerate_lambda_orbits(field: &Field, f: &Poly, max_len: usize) -> Result<Vec<LambdaOrbit>> {
    if f.field() != field {
        return Err(Error::FieldMismatch(f.field().to_string(), field.to_string()));
    }
    let mut orbits = match field.kind() {
        FieldKind::Rationals => {
            if max_len > 1 {
                return Err(Error::UnsupportedField(
                    "over Q only fixed points (max length 1) are enumerated".into(),
                ));
            }
            if max_len == 0 {
                return Ok(Vec::new());
            }
            let fixed = f - &Poly::h(field);
            if fixed.is_zero() {
                return Err(Error::UnsupportedField("every rational is a fixed point of f = h".into()));
            }
            roots_in_field(&fixed, field)?
                .into_iter()
                .map(|r| LambdaOrbit { f: f.clone(), values: vec![r] })
                .collect()
        }
        _ => finite_cycles(field, f, max_len)?,
    };
    orbits.sort_by(|a, b| a.period().cmp(&b.period()).then_with(|| a.values.cmp(&b.values)));
    Ok(orbits)
}

fn finite_cycles(field: &Field, f: &Poly, max_len: usize) -> Result<Vec<LambdaOrbit>> {
    let order = field.order().expect("finite field");
    if order > ORBIT_SCAN_BOUND {
        return Err(Error::SearchSpaceTooLarge { size: order as u128, bound: ORBIT_SCAN_BOUND as u128 });
    }
    let n = order as usize;
    let next: Vec<usize> = (0..order)
        .map(|i| f.eval(&field.element(i)).index().expect("finite field element") as usize)
        .collect();
    // 0 = unvisited, 1 = on the current path, 2 = finished
    let mut state = vec![0u8; n];
    let mut out = Vec::new();
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut v = start;
        while state[v] == 0 {
            state[v] = 1;
            path.push(v);
            v = next[v];
        }
        if state[v] == 1 {
            let from = path.iter().position(|&u| u == v).expect("on path");
            let cycle = &path[from..];
            if cycle.len() <= max_len {
                let orbit = LambdaOrbit {
                    f: f.clone(),
                    values: cycle.iter().map(|&i| field.element(i as u64)).collect(),
                };
                out.push(orbit.canonical().0);
            }
        }
        for u in path {
            state[u] = 2;
        }
    }
    Ok(out)
}

/// A sequence with `mu(i+1) = q mu(i) + g(lambda(i))`, determined by its
/// anchor `mu(0)`. The period `|mu|` (0 when infinite) is computed on
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuSeq {
    orbit: LambdaOrbit,
    q: FieldElement,
    g: Poly,
    anchor: FieldElement,
    period: u64,
    g_on_orbit: Vec<FieldElement>,
}

impl MuSeq {
    pub fn new(orbit: &LambdaOrbit, q: &FieldElement, g: &Poly, anchor: &FieldElement) -> Result<MuSeq> {
        let field = orbit.field();
        for other in [q.field(), g.field(), anchor.field()] {
            if other != field {
                return Err(Error::FieldMismatch(other.to_string(), field.to_string()));
            }
        }
        let period = mu_period(orbit, q, g, anchor)?;
        Ok(MuSeq {
            orbit: orbit.clone(),
            q: q.clone(),
            g: g.clone(),
            anchor: anchor.clone(),
            period,
            g_on_orbit: orbit.values.iter().map(|v| g.eval(v)).collect(),
        })
    }

    pub fn orbit(&self) -> &LambdaOrbit {
        &self.orbit
    }

    pub fn q(&self) -> &FieldElement {
        &self.q
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    /// `mu(0)`.
    pub fn anchor(&self) -> &FieldElement {
        &self.anchor
    }

    /// `|mu|`, with 0 meaning infinite.
    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn value(&self, i: i64) -> Result<FieldElement> {
        mu_value(self, i)
    }

    /// `Xi = nu_{lambda(0)}(l)`, so that `mu((k+1) l) = q^l mu(k l) + Xi`.
    pub fn xi(&self) -> FieldElement {
        xi(&self.orbit, &self.q, &self.g)
    }

    /// The same sequence re-indexed: `k -> mu(k + s)` over `k -> lambda(k + s)`.
    pub fn rotated(&self, s: i64) -> Result<MuSeq> {
        let anchor = self.value(s)?;
        MuSeq::new(&self.orbit.rotated(s), &self.q, &self.g, &anchor)
    }

    fn g_at(&self, i: i64) -> &FieldElement {
        &self.g_on_orbit[i.rem_euclid(self.g_on_orbit.len() as i64) as usize]
    }
}

/// `mu(i)` from the closed form, valid for every integer i.
pub fn mu_value(mu: &MuSeq, i: i64) -> Result<FieldElement> {
    let q = &mu.q;
    if i >= 0 {
        let mut acc = &q.pow(i as u64) * &mu.anchor;
        let mut qj = q.field().one();
        for j in 0..i {
            acc = &acc + &(&qj * mu.g_at(i - j - 1));
            qj = &qj * q;
        }
        Ok(acc)
    } else {
        if q.is_zero() {
            return Err(Error::QZero);
        }
        let mut acc = &q.powi(i)? * &mu.anchor;
        for j in i..0 {
            acc = &acc - &(&q.powi(j)? * mu.g_at(i - j - 1));
        }
        Ok(acc)
    }
}

fn xi(orbit: &LambdaOrbit, q: &FieldElement, g: &Poly) -> FieldElement {
    nu_value(&orbit.values[0], q, orbit.f(), g, orbit.period())
}

/// `|mu|` for the sequence over `orbit` with `mu(0) = beta`, by the closed
/// form of the affine map `beta -> q^l beta + Xi`; 0 means infinite.
pub fn mu_period(orbit: &LambdaOrbit, q: &FieldElement, g: &Poly, beta: &FieldElement) -> Result<u64> {
    if q.is_zero() {
        return Err(Error::QZero);
    }
    let field = orbit.field();
    let ql = q.pow(orbit.period() as u64);
    let xi = xi(orbit, q, g);
    if ql.is_one() {
        return Ok(if xi.is_zero() { 1 } else { field.characteristic() });
    }
    let fixed = xi.checked_div(&(&field.one() - &ql))?;
    if beta == &fixed {
        Ok(1)
    } else {
        ql.multiplicative_order()
    }
}

/// `nu_alpha(i) = sum_{j<i} q^j g(f^[i-1-j](alpha))` for `0 <= i <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuTable {
    pub alpha: FieldElement,
    pub values: Vec<FieldElement>,
}

impl NuTable {
    pub fn value(&self, i: usize) -> &FieldElement {
        &self.values[i]
    }
}

pub fn nu_table(alpha: &FieldElement, q: &FieldElement, f: &Poly, g: &Poly, n: usize) -> NuTable {
    // nu(i+1) = q nu(i) + g(f^[i](alpha))
    let mut values = Vec::with_capacity(n + 1);
    let mut nu = alpha.field().zero();
    let mut point = alpha.clone();
    values.push(nu.clone());
    for _ in 0..n {
        nu = &(q * &nu) + &g.eval(&point);
        point = f.eval(&point);
        values.push(nu.clone());
    }
    NuTable { alpha: alpha.clone(), values }
}

pub fn nu_value(alpha: &FieldElement, q: &FieldElement, f: &Poly, g: &Poly, i: usize) -> FieldElement {
    nu_table(alpha, q, f, g, i).values.pop().expect("nonempty table")
}

/// Eigenvalues of h and xy on `x^k v`, where `h v = alpha v` and
/// `xy v = beta v`.
pub fn weight_propagation(
    alpha: &FieldElement,
    beta: &FieldElement,
    q: &FieldElement,
    f: &Poly,
    g: &Poly,
    k: usize,
) -> (FieldElement, FieldElement) {
    let h_eigen = compositional_power(f, k).eval(alpha);
    let xy_eigen = &(&q.pow(k as u64) * beta) + &nu_value(alpha, q, f, g, k);
    (h_eigen, xy_eigen)
}
