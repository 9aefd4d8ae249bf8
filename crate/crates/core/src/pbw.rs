//! PBW normal forms for H_q(f,g) = F<x, y, h> / (hx = x f(h), yh = f(h) y,
//! yx - q xy = g(h)).
//!
//! Elements are stored as finite sums `sum x^i p_{i,k}(h) y^k`. Products are
//! straightened with three rewrite rules only:
//!
//! * `p(h) x = x sigma(p)(h)` (push h-parts right past x),
//! * `y p(h) = sigma(p)(h) y` (push y right past h-parts),
//! * `y x = q x y + g(h)` (remove inversions).
//!
//! The word `y^b x^c` is normalized once per `(b, c)` and cached. None of the
//! closed forms for `theta_k` are used here, so they can be tested against
//! the engine.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::parse::{parse_expr, Evaluator};
use crate::poly::{self, Poly};

/// Default cap on intermediate h-degrees.
pub const DEFAULT_DEGREE_CAP: usize = 512;

/// Parameters (F, q, f, g) of H_q(f,g).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    pub field: Field,
    pub q: FieldElement,
    pub f: Poly,
    pub g: Poly,
}

impl AlgebraSpec {
    pub fn new(field: &Field, q: FieldElement, f: Poly, g: Poly) -> Result<AlgebraSpec> {
        for other in [q.field(), f.field(), g.field()] {
            if other != field {
                return Err(Error::FieldMismatch(field.to_string(), other.to_string()));
            }
        }
        Ok(AlgebraSpec { field: field.clone(), q, f, g })
    }

    /// Parses q, f and g from text over `field`.
    pub fn parse(field: &Field, q: &str, f: &str, g: &str) -> Result<AlgebraSpec> {
        let q = crate::field::parse_element(q, field)?;
        let f = crate::parse::parse_poly(f, field)?;
        let g = crate::parse::parse_poly(g, field)?;
        AlgebraSpec::new(field, q, f, g)
    }
}

type Terms = BTreeMap<(u32, u32), Poly>;

struct Engine {
    spec: AlgebraSpec,
    degree_cap: usize,
    /// f^[k] for k = 0, 1, ...
    f_powers: Mutex<Vec<Poly>>,
    /// powers (f^[k])^j for j = 0, 1, ..., keyed by k
    inner_powers: Mutex<HashMap<usize, Vec<Arc<Poly>>>>,
    /// normal form of y^b x^c
    words: Mutex<HashMap<(u32, u32), Arc<Terms>>>,
}

/// Shared handle to an algebra together with its normal-form caches.
#[derive(Clone)]
pub struct Algebra(Arc<Engine>);

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.0.spec;
        write!(f, "H_{}({}, {}) over {}", s.q, s.f, s.g, s.field)
    }
}

impl Algebra {
    pub fn new(spec: AlgebraSpec) -> Algebra {
        Algebra::with_degree_cap(spec, DEFAULT_DEGREE_CAP)
    }

    pub fn with_degree_cap(spec: AlgebraSpec, degree_cap: usize) -> Algebra {
        let h = Poly::h(&spec.field);
        Algebra(Arc::new(Engine {
            spec,
            degree_cap,
            f_powers: Mutex::new(vec![h]),
            inner_powers: Mutex::new(HashMap::new()),
            words: Mutex::new(HashMap::new()),
        }))
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.0.spec
    }

    pub fn field(&self) -> &Field {
        &self.0.spec.field
    }

    pub fn q(&self) -> &FieldElement {
        &self.0.spec.q
    }

    pub fn f(&self) -> &Poly {
        &self.0.spec.f
    }

    pub fn g(&self) -> &Poly {
        &self.0.spec.g
    }

    pub fn degree_cap(&self) -> usize {
        self.0.degree_cap
    }

    fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.0.degree_cap {
            Err(Error::DegreeOverflow { degree, cap: self.0.degree_cap })
        } else {
            Ok(())
        }
    }

    /// f^[k](h), cached.
    pub fn f_power(&self, k: usize) -> Result<Poly> {
        let mut cache = self.0.f_powers.lock().expect("cache lock");
        while cache.len() <= k {
            let last = cache.last().expect("seeded with h");
            let deg = last.degree().unwrap_or(0) * self.f().degree().unwrap_or(0);
            self.check_degree(deg)?;
            let next = self.f().compose(last);
            cache.push(next);
        }
        Ok(cache[k].clone())
    }

    /// sigma^k(p) = p(f^[k](h)), subject to the degree cap.
    pub fn sigma(&self, p: &Poly, k: usize) -> Result<Poly> {
        if k == 0 || p.is_constant() {
            return Ok(p.clone());
        }
        let inner = self.f_power(k)?;
        let d = p.degree().unwrap_or(0);
        self.check_degree(d * inner.degree().unwrap_or(0))?;
        let powers: Vec<Arc<Poly>> = {
            let mut cache = self.0.inner_powers.lock().expect("cache lock");
            let list = cache.entry(k).or_insert_with(|| vec![Arc::new(Poly::one(self.field()))]);
            while list.len() <= d {
                let next = list.last().expect("seeded with 1").as_ref() * &inner;
                list.push(Arc::new(next));
            }
            list[..=d].to_vec()
        };
        let field = self.field();
        let mut acc = vec![field.zero(); powers[d].coeffs().len()];
        for (c, power) in p.coeffs().iter().zip(&powers) {
            if c.is_zero() {
                continue;
            }
            for (slot, a) in acc.iter_mut().zip(power.coeffs()) {
                *slot = &*slot + &(c * a);
            }
        }
        Ok(Poly::from_coeffs(field, acc))
    }

    fn mul_poly(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
            self.check_degree(da + db)?;
        }
        Ok(a * b)
    }

    /// Normal form of the word y^b x^c.
    fn word(&self, b: u32, c: u32) -> Result<Arc<Terms>> {
        if let Some(t) = self.0.words.lock().expect("cache lock").get(&(b, c)) {
            return Ok(t.clone());
        }
        let one = Poly::one(self.field());
        let terms: Terms = if b == 0 || c == 0 {
            BTreeMap::from([((c, b), one)])
        } else if b == 1 {
            // y x^c = (q x y + g) x^(c-1) = q x (y x^(c-1)) + x^(c-1) sigma^(c-1)(g)
            let prev = self.word(1, c - 1)?;
            let mut acc: Terms = BTreeMap::new();
            for (&(i, k), p) in prev.iter() {
                add_term(&mut acc, (i + 1, k), p.scale(self.q()));
            }
            add_term(&mut acc, (c - 1, 0), self.sigma(self.g(), (c - 1) as usize)?);
            acc
        } else {
            // y^b x^c = y^(b-1) (y x^c)
            let inner = self.word(1, c)?;
            let mut acc: Terms = BTreeMap::new();
            for (&(i, k), s) in inner.iter() {
                let left = self.word(b - 1, i)?;
                for (&(i2, k2), s2) in left.iter() {
                    let coeff = self.mul_poly(s2, &self.sigma(s, k2 as usize)?)?;
                    add_term(&mut acc, (i2, k2 + k), coeff);
                }
            }
            acc
        };
        let terms = Arc::new(terms);
        self.0.words.lock().expect("cache lock").insert((b, c), terms.clone());
        Ok(terms)
    }

    pub fn zero(&self) -> PbwElement {
        PbwElement { algebra: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> PbwElement {
        self.scalar(self.field().one())
    }

    pub fn scalar(&self, c: FieldElement) -> PbwElement {
        self.poly(Poly::constant(c))
    }

    pub fn poly(&self, p: Poly) -> PbwElement {
        self.monomial(0, p, 0)
    }

    /// x^i p(h) y^k.
    pub fn monomial(&self, i: u32, p: Poly, k: u32) -> PbwElement {
        let mut terms = BTreeMap::new();
        add_term(&mut terms, (i, k), p);
        PbwElement { algebra: self.clone(), terms }
    }

    pub fn x(&self) -> PbwElement {
        self.monomial(1, Poly::one(self.field()), 0)
    }

    pub fn y(&self) -> PbwElement {
        self.monomial(0, Poly::one(self.field()), 1)
    }

    pub fn h(&self) -> PbwElement {
        self.poly(Poly::h(self.field()))
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = ((u32, u32), Poly)>) -> PbwElement {
        let mut acc = BTreeMap::new();
        for (key, p) in terms {
            add_term(&mut acc, key, p);
        }
        PbwElement { algebra: self.clone(), terms: acc }
    }

    /// Parses an element: sums and products of `x`, `y`, `h`, constants
    /// (and `u` over extension fields), normalized through the engine.
    pub fn parse_element(&self, text: &str) -> Result<PbwElement> {
        parse_expr(text)?.evaluate(self)
    }
}

fn add_term(terms: &mut Terms, key: (u32, u32), p: Poly) {
    if p.is_zero() {
        return;
    }
    match terms.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(p);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get() + &p;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// An element of H_q(f,g) in PBW normal form.
#[derive(Clone)]
pub struct PbwElement {
    algebra: Algebra,
    terms: Terms,
}

impl PartialEq for PbwElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.algebra == other.algebra
    }
}

impl Eq for PbwElement {}

impl PbwElement {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// Terms `(i, k) -> p` of `sum x^i p(h) y^k`, sorted by `(i, k)`.
    pub fn terms(&self) -> &BTreeMap<(u32, u32), Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The h-part of the `x^i ... y^k` term (zero if absent).
    pub fn coefficient(&self, i: u32, k: u32) -> Poly {
        self.terms.get(&(i, k)).cloned().unwrap_or_else(|| Poly::zero(self.algebra.field()))
    }

    pub fn max_h_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(Poly::degree).max()
    }

    fn same_algebra(&self, other: &PbwElement) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &PbwElement) -> PbwElement {
        let mut terms = self.terms.clone();
        for (&key, p) in &other.terms {
            add_term(&mut terms, key, p.clone());
        }
        PbwElement { algebra: self.algebra.clone(), terms }
    }

    pub fn sub(&self, other: &PbwElement) -> PbwElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PbwElement {
        let terms = self.terms.iter().map(|(&k, p)| (k, -p)).collect();
        PbwElement { algebra: self.algebra.clone(), terms }
    }

    pub fn scale(&self, c: &FieldElement) -> PbwElement {
        self.algebra.from_terms(self.terms.iter().map(|(&k, p)| (k, p.scale(c))))
    }

    /// Product in normal form:
    /// (x^a p y^b)(x^c r y^d) = sum over (y^b x^c = sum x^i s y^k) of
    /// x^(a+i) sigma^i(p) s sigma^k(r) y^(k+d).
    pub fn mul(&self, other: &PbwElement) -> Result<PbwElement> {
        self.same_algebra(other)?;
        let alg = &self.algebra;
        let mut acc: Terms = BTreeMap::new();
        // sigma images are reused across many word terms
        let mut shifted: HashMap<(bool, (u32, u32), u32), Poly> = HashMap::new();
        let mut sigma = |side: bool, key: (u32, u32), p: &Poly, n: u32| -> Result<Poly> {
            if let Some(v) = shifted.get(&(side, key, n)) {
                return Ok(v.clone());
            }
            let v = alg.sigma(p, n as usize)?;
            shifted.insert((side, key, n), v.clone());
            Ok(v)
        };
        for (&(a, b), p) in &self.terms {
            for (&(c, d), r) in &other.terms {
                let word = alg.word(b, c)?;
                for (&(i, k), s) in word.iter() {
                    let left = alg.mul_poly(&sigma(false, (a, b), p, i)?, s)?;
                    let coeff = alg.mul_poly(&left, &sigma(true, (c, d), r, k)?)?;
                    add_term(&mut acc, (a + i, k + d), coeff);
                }
            }
        }
        Ok(PbwElement { algebra: alg.clone(), terms: acc })
    }

    pub fn pow(&self, e: u32) -> Result<PbwElement> {
        let mut acc = self.algebra.one();
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// The anti-automorphism fixing h and swapping x and y:
    /// x^i p(h) y^k maps to x^k p(h) y^i, which is already normal.
    pub fn iota(&self) -> PbwElement {
        let terms = self.terms.iter().map(|(&(i, k), p)| ((k, i), p.clone())).collect();
        PbwElement { algebra: self.algebra.clone(), terms }
    }

    /// Components by weight i - k.
    pub fn weight_decompose(&self) -> BTreeMap<i64, PbwElement> {
        let mut out: BTreeMap<i64, PbwElement> = BTreeMap::new();
        for (&(i, k), p) in &self.terms {
            let w = i as i64 - k as i64;
            out.entry(w)
                .or_insert_with(|| self.algebra.zero())
                .terms
                .insert((i, k), p.clone());
        }
        out
    }

    /// Some(w) if every term has weight w; None for zero or mixed weights.
    pub fn weight(&self) -> Option<i64> {
        let mut weights = self.terms.keys().map(|&(i, k)| i as i64 - k as i64);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }
}

pub fn multiply(u: &PbwElement, v: &PbwElement) -> Result<PbwElement> {
    u.mul(v)
}

pub fn iota(u: &PbwElement) -> PbwElement {
    u.iota()
}

pub fn weight_decompose(u: &PbwElement) -> BTreeMap<i64, PbwElement> {
    u.weight_decompose()
}

/// uv - vu.
pub fn commutator(u: &PbwElement, v: &PbwElement) -> Result<PbwElement> {
    Ok(u.mul(v)?.sub(&v.mul(u)?))
}

/// uv - s vu.
pub fn q_commutator(u: &PbwElement, v: &PbwElement, s: &FieldElement) -> Result<PbwElement> {
    Ok(u.mul(v)?.sub(&v.mul(u)?.scale(s)))
}

/// theta_k = sum_{i<k} q^i sigma^(k-1-i)(g); theta_0 = 0.
pub fn theta(k: usize, alg: &Algebra) -> Result<Poly> {
    let mut acc = Poly::zero(alg.field());
    for i in 0..k {
        let term = alg.sigma(alg.g(), k - 1 - i)?.scale(&alg.q().pow(i as u64));
        acc = &acc + &term;
    }
    Ok(acc)
}

pub use poly::sigma_power;

impl Evaluator for Algebra {
    type Value = PbwElement;

    fn number(&self, num: &BigInt, den: &BigInt) -> Result<PbwElement> {
        Ok(self.scalar(self.field().from_ratio(num, den)?))
    }

    fn variable(&self, name: char, offset: usize) -> Result<PbwElement> {
        match name {
            'x' => Ok(self.x()),
            'y' => Ok(self.y()),
            'h' => Ok(self.h()),
            'u' => self.field().generator().map(|u| self.scalar(u)).map_err(|_| Error::Syntax {
                offset,
                message: format!("'u' is not defined over {}", self.field()),
            }),
            other => Err(Error::Syntax { offset, message: format!("unknown variable '{other}'") }),
        }
    }

    fn add(&self, a: PbwElement, b: PbwElement) -> Result<PbwElement> {
        Ok(PbwElement::add(&a, &b))
    }

    fn sub(&self, a: PbwElement, b: PbwElement) -> Result<PbwElement> {
        Ok(PbwElement::sub(&a, &b))
    }

    fn neg(&self, a: PbwElement) -> Result<PbwElement> {
        Ok(PbwElement::neg(&a))
    }

    fn mul(&self, a: PbwElement, b: PbwElement) -> Result<PbwElement> {
        a.mul(&b)
    }

    fn one(&self) -> PbwElement {
        Algebra::one(self)
    }
}

fn is_simple_factor(text: &str) -> bool {
    !text.contains([' ', '+']) && !text.starts_with('-')
}

/// Canonical rendering, terms sorted by (i, k): `x^2*(h^2 + 2*h)*y + h`.
impl fmt::Display for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, k), p)| {
                let mut factors = Vec::new();
                match i {
                    0 => {}
                    1 => factors.push("x".to_string()),
                    _ => factors.push(format!("x^{i}")),
                }
                let bare = i == 0 && k == 0;
                let ptext = p.to_string();
                if bare {
                    factors.push(ptext);
                } else if !p.is_one() {
                    factors.push(if is_simple_factor(&ptext) { ptext } else { format!("({ptext})") });
                }
                match k {
                    0 => {}
                    1 => factors.push("y".to_string()),
                    _ => factors.push(format!("y^{k}")),
                }
                factors.join("*")
            })
            .collect();
        f.write_str(&rendered.join(" + "))
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
