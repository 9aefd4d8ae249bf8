//! Exact scalar fields: the rationals, prime fields GF(p) and extension
//! fields GF(p^k) = GF(p)[u]/(m(u)).
//!
//! Every element is stored in canonical form (reduced fraction, least
//! nonnegative residue, or reduced polynomial of degree < k), so structural
//! equality is mathematical equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Default bound on the extension degree accepted when parsing field specs.
pub const DEFAULT_EXTENSION_BOUND: u32 = 6;

/// Finite fields must have fewer than this many elements so that element
/// indices fit comfortably in a `u64`.
const MAX_FIELD_ORDER: u128 = 1 << 62;

/// Rational root search gives up when the extreme coefficients exceed this.
const RATIONAL_ROOT_LIMIT: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    PrimeField,
    ExtensionField,
}

/// Description of a field: characteristic, extension degree and, for
/// extension fields, the monic irreducible modulus (coefficients low to high).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    kind: FieldKind,
    characteristic: u64,
    degree: u32,
    modulus: Vec<u64>,
}

impl FieldSpec {
    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Monic modulus, low to high. Empty unless this is an extension field.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn is_finite(&self) -> bool {
        self.kind != FieldKind::Rationals
    }

    /// Number of elements, or `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self.kind {
            FieldKind::Rationals => None,
            _ => Some(self.characteristic.pow(self.degree)),
        }
    }
}

/// Shared handle to a [`FieldSpec`].
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl std::ops::Deref for Field {
    type Target = FieldSpec;

    fn deref(&self) -> &FieldSpec {
        &self.0
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::PrimeField => write!(f, "GF({})", self.characteristic),
            FieldKind::ExtensionField => {
                write!(f, "GF({}^{}) mod=", self.characteristic, self.degree)?;
                f.write_str(&render_u_poly(&self.modulus))
            }
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldSpec {
            kind: FieldKind::Rationals,
            characteristic: 0,
            degree: 1,
            modulus: Vec::new(),
        }))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(Field::prime_unchecked(p))
    }

    fn prime_unchecked(p: u64) -> Field {
        Field(Arc::new(FieldSpec {
            kind: FieldKind::PrimeField,
            characteristic: p,
            degree: 1,
            modulus: Vec::new(),
        }))
    }

    /// GF(p^k). Without a modulus, the first monic irreducible polynomial of
    /// degree k in index order is used. `k = 1` yields the prime field.
    pub fn extension(p: u64, k: u32, modulus: Option<Vec<u64>>) -> Result<Field> {
        let base = Field::prime(p)?;
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        if (p as u128).checked_pow(k).is_none_or(|n| n >= MAX_FIELD_ORDER) {
            return Err(Error::InvalidField(format!("GF({p}^{k}) is too large")));
        }
        if k == 1 && modulus.is_none() {
            return Ok(base);
        }
        let modulus = match modulus {
            Some(mut m) => {
                for c in m.iter_mut() {
                    *c %= p;
                }
                while m.last() == Some(&0) {
                    m.pop();
                }
                if m.len() != k as usize + 1 || m[k as usize] != 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus must be monic of degree {k}"
                    )));
                }
                if !gfp::is_irreducible(&m, p) {
                    return Err(Error::InvalidField(format!(
                        "modulus {} is reducible over GF({p})",
                        render_u_poly(&m)
                    )));
                }
                m
            }
            None => gfp::find_irreducible(p, k as usize),
        };
        Ok(Field(Arc::new(FieldSpec {
            kind: FieldKind::ExtensionField,
            characteristic: p,
            degree: k,
            modulus,
        })))
    }

    /// Parses `Q`, `GF(p)`, `GF(p^k)` with an optional `mod=<poly in u>`
    /// suffix, using the default extension bound.
    pub fn parse(text: &str) -> Result<Field> {
        Field::parse_with_bound(text, DEFAULT_EXTENSION_BOUND)
    }

    pub fn parse_with_bound(text: &str, ext_bound: u32) -> Result<Field> {
        let text = text.trim();
        let (head, modulus_text) = match text.find("mod=") {
            Some(pos) => {
                let head = text[..pos].trim_end_matches([' ', ',', ';']).trim();
                (head, Some(text[pos + 4..].trim()))
            }
            None => (text, None),
        };
        if head == "Q" || head == "QQ" {
            if modulus_text.is_some() {
                return Err(Error::InvalidField("Q takes no modulus".into()));
            }
            return Ok(Field::rationals());
        }
        let inner = head
            .strip_prefix("GF(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidField(format!("cannot parse field spec '{text}'")))?;
        let bad = || Error::InvalidField(format!("cannot parse field spec '{text}'"));
        let (p, k) = match inner.split_once('^') {
            Some((p, k)) => (
                p.trim().parse::<u64>().map_err(|_| bad())?,
                k.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => (inner.trim().parse::<u64>().map_err(|_| bad())?, 1),
        };
        if k > ext_bound {
            return Err(Error::ExtensionTooLarge { degree: k, bound: ext_bound });
        }
        let modulus = match modulus_text {
            Some(m) => {
                let base = Field::prime(p)?;
                let poly = crate::parse::parse_poly_in_var(m, &base, 'u')?;
                Some(poly.coeffs().iter().map(|c| c.residue()).collect())
            }
            None => None,
        };
        Field::extension(p, k, modulus)
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        let repr = match self.kind {
            FieldKind::Rationals => Repr::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldKind::PrimeField => Repr::Mod(n.rem_euclid(self.characteristic as i64) as u64),
            FieldKind::ExtensionField => {
                let mut v = vec![0; self.degree as usize];
                v[0] = n.rem_euclid(self.characteristic as i64) as u64;
                Repr::Ext(v)
            }
        };
        FieldElement { field: self.clone(), repr }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match self.kind {
            FieldKind::Rationals => FieldElement {
                field: self.clone(),
                repr: Repr::Rat(BigRational::from_integer(n.clone())),
            },
            _ => {
                let p = BigInt::from(self.characteristic);
                let r = n.mod_floor(&p).to_i64().expect("residue fits");
                self.from_i64(r)
            }
        }
    }

    /// The element `num / den`.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldElement> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self.kind {
            FieldKind::Rationals => Ok(FieldElement {
                field: self.clone(),
                repr: Repr::Rat(BigRational::new(num.clone(), den.clone())),
            }),
            _ => self.from_bigint(num).checked_div(&self.from_bigint(den)),
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<FieldElement> {
        self.from_ratio(r.numer(), r.denom())
    }

    /// The class of `u` in GF(p)[u]/(m); only defined for extension fields.
    pub fn generator(&self) -> Result<FieldElement> {
        if self.kind != FieldKind::ExtensionField {
            return Err(Error::UnsupportedField(format!("{self} has no generator u")));
        }
        let mut v = vec![0; self.degree as usize];
        if self.degree == 1 {
            // unreachable for canonical extension fields, kept total
            v[0] = (self.characteristic - self.modulus[0]) % self.characteristic;
        } else {
            v[1] = 1;
        }
        Ok(FieldElement { field: self.clone(), repr: Repr::Ext(v) })
    }

    /// Element number `index` in the canonical enumeration of a finite field
    /// (base-p digits of the index are the coefficients in u).
    pub fn element(&self, index: u64) -> FieldElement {
        let p = self.characteristic;
        let repr = match self.kind {
            FieldKind::Rationals => panic!("Q has no element enumeration"),
            FieldKind::PrimeField => Repr::Mod(index % p),
            FieldKind::ExtensionField => {
                let mut idx = index;
                let v = (0..self.degree)
                    .map(|_| {
                        let d = idx % p;
                        idx /= p;
                        d
                    })
                    .collect();
                Repr::Ext(v)
            }
        };
        FieldElement { field: self.clone(), repr }
    }

    /// All elements of a finite field in canonical index order.
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElement> + '_> {
        let n = self
            .order()
            .ok_or_else(|| Error::UnsupportedField("Q cannot be enumerated".into()))?;
        Ok((0..n).map(move |i| self.element(i)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rat(BigRational),
    Mod(u64),
    Ext(Vec<u64>),
}

/// An exact scalar tied to its field.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    repr: Repr,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state)
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order on Q, index order on finite fields.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => a.cmp(b),
            (Repr::Mod(a), Repr::Mod(b)) => a.cmp(b),
            (Repr::Ext(a), Repr::Ext(b)) => a.iter().rev().cmp(b.iter().rev()),
            (a, b) => discriminant(a).cmp(&discriminant(b)),
        }
    }
}

fn discriminant(r: &Repr) -> u8 {
    match r {
        Repr::Rat(_) => 0,
        Repr::Mod(_) => 1,
        Repr::Ext(_) => 2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    a.check_same_field(b)?;
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => return a.checked_div(b),
    })
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    fn check_same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()))
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_zero(),
            Repr::Mod(v) => *v == 0,
            Repr::Ext(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_one(),
            Repr::Mod(v) => *v == 1,
            Repr::Ext(v) => v[0] == 1 && v[1..].iter().all(|&c| c == 0),
        }
    }

    /// Position in the canonical enumeration of a finite field.
    pub fn index(&self) -> Option<u64> {
        let p = self.field.characteristic;
        match &self.repr {
            Repr::Rat(_) => None,
            Repr::Mod(v) => Some(*v),
            Repr::Ext(v) => Some(v.iter().rev().fold(0, |acc, &c| acc * p + c)),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(r) => Some(r),
            _ => None,
        }
    }

    /// Residue of a prime-field element (constant coefficient for extension
    /// fields, 0 for Q).
    pub(crate) fn residue(&self) -> u64 {
        match &self.repr {
            Repr::Rat(_) => 0,
            Repr::Mod(v) => *v,
            Repr::Ext(v) => v[0],
        }
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Rat(r) => Repr::Rat(r.recip()),
            Repr::Mod(v) => {
                let p = self.field.characteristic;
                Repr::Mod(pow_mod(*v, p - 2, p))
            }
            Repr::Ext(_) => {
                let order = self.field.order().expect("finite");
                return Ok(self.pow(order - 2));
            }
        };
        Ok(FieldElement { field: self.field.clone(), repr })
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same_field(other)?;
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn powi(&self, e: i64) -> Result<FieldElement> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inverse()?.pow(e.unsigned_abs()))
        }
    }

    /// Least l >= 1 with a^l = 1, or 0 when no such l exists (only possible
    /// over Q).
    pub fn multiplicative_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroArgument);
        }
        match &self.repr {
            Repr::Rat(r) => Ok(if r.is_one() {
                1
            } else if (-r).is_one() {
                2
            } else {
                0
            }),
            _ => {
                let group = self.field.order().expect("finite") - 1;
                let mut ord = group;
                for prime in prime_factors(group) {
                    while ord.is_multiple_of(prime) && self.pow(ord / prime).is_one() {
                        ord /= prime;
                    }
                }
                Ok(ord)
            }
        }
    }
}

/// Free-function form of [`FieldElement::multiplicative_order`].
pub fn multiplicative_order(a: &FieldElement) -> Result<u64> {
    a.multiplicative_order()
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn ext_mul(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let k = a.len();
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    reduce_u_poly(prod, modulus, p)
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        debug_assert!(self.field == rhs.field, "field mismatch");
        let p = self.field.characteristic;
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a + b),
            (Repr::Mod(a), Repr::Mod(b)) => Repr::Mod((a + b) % p),
            (Repr::Ext(a), Repr::Ext(b)) => {
                Repr::Ext(a.iter().zip(b).map(|(x, y)| (x + y) % p).collect())
            }
            _ => panic!("field mismatch"),
        };
        FieldElement { field: self.field.clone(), repr }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        debug_assert!(self.field == rhs.field, "field mismatch");
        let p = self.field.characteristic;
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a - b),
            (Repr::Mod(a), Repr::Mod(b)) => Repr::Mod((a + p - b) % p),
            (Repr::Ext(a), Repr::Ext(b)) => {
                Repr::Ext(a.iter().zip(b).map(|(x, y)| (x + p - y) % p).collect())
            }
            _ => panic!("field mismatch"),
        };
        FieldElement { field: self.field.clone(), repr }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        debug_assert!(self.field == rhs.field, "field mismatch");
        let p = self.field.characteristic;
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a * b),
            (Repr::Mod(a), Repr::Mod(b)) => Repr::Mod(mul_mod(*a, *b, p)),
            (Repr::Ext(a), Repr::Ext(b)) => Repr::Ext(ext_mul(a, b, &self.field.modulus, p)),
            _ => panic!("field mismatch"),
        };
        FieldElement { field: self.field.clone(), repr }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        let p = self.field.characteristic;
        let repr = match &self.repr {
            Repr::Rat(a) => Repr::Rat(-a),
            Repr::Mod(a) => Repr::Mod((p - a) % p),
            Repr::Ext(a) => Repr::Ext(a.iter().map(|x| (p - x) % p).collect()),
        };
        FieldElement { field: self.field.clone(), repr }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn render_u_poly(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (d, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (d, c) {
            (0, c) => c.to_string(),
            (1, 1) => "u".to_string(),
            (1, c) => format!("{c}*u"),
            (d, 1) => format!("u^{d}"),
            (d, c) => format!("{c}*u^{d}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Repr::Mod(v) => write!(f, "{v}"),
            Repr::Ext(v) => f.write_str(&render_u_poly(v)),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses a rendered element back (the inverse of `Display`).
pub fn parse_element(text: &str, field: &Field) -> Result<FieldElement> {
    let poly = crate::parse::parse_poly(text, field)?;
    if poly.degree().unwrap_or(0) > 0 {
        return Err(Error::Syntax {
            offset: 0,
            message: format!("'{text}' is not a field constant"),
        });
    }
    Ok(poly.coeff(0))
}

/// All roots of `p` in `field`: exhaustive evaluation over finite fields,
/// rational-root search over Q. Results are sorted.
pub fn roots_in_field(p: &Poly, field: &Field) -> Result<Vec<FieldElement>> {
    if p.is_zero() {
        return Err(Error::ZeroArgument);
    }
    if field.is_finite() {
        return Ok(field.elements()?.filter(|a| p.eval(a).is_zero()).collect());
    }
    rational_roots(p, field)
}

fn rational_roots(p: &Poly, field: &Field) -> Result<Vec<FieldElement>> {
    let coeffs: Vec<BigRational> = p
        .coeffs()
        .iter()
        .map(|c| c.as_rational().cloned().expect("rational coefficient"))
        .collect();
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero poly");
    if low > 0 {
        roots.push(field.zero());
    }
    let ints = &ints[low..];
    if ints.len() > 1 {
        let a0 = ints[0].abs();
        let an = ints[ints.len() - 1].abs();
        let limit = BigInt::from(RATIONAL_ROOT_LIMIT);
        if a0 > limit || an > limit {
            return Err(Error::UnsupportedField(
                "coefficients too large for rational root search".into(),
            ));
        }
        let nums = divisors(a0.to_u64().expect("bounded"));
        let dens = divisors(an.to_u64().expect("bounded"));
        for &n in &nums {
            for &d in &dens {
                if n.gcd(&d) != 1 {
                    continue;
                }
                for sign in [Sign::Plus, Sign::Minus] {
                    let cand = BigRational::new(BigInt::from_biguint(sign, n.into()), BigInt::from(d));
                    let elem = field.from_rational(&cand)?;
                    if p.eval(&elem).is_zero() {
                        roots.push(elem);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Dense polynomial arithmetic over GF(p) on raw residues, used to find and
/// validate extension-field moduli.
mod gfp {
    use super::{mul_mod, pow_mod};

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let inv_lead = pow_mod(m[dm], p - 2, p);
        while r.len() > dm {
            let d = r.len() - 1;
            let c = mul_mod(r[d], inv_lead, p);
            for j in 0..=dm {
                let sub = mul_mod(c, m[j], p);
                r[d - dm + j] = (r[d - dm + j] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        rem(&prod, m, p)
    }

    fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        acc
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or test: a monic m of degree k is irreducible iff
    /// gcd(m, u^(p^i) - u) = 1 for 1 <= i <= k/2.
    pub fn is_irreducible(m: &[u64], p: u64) -> bool {
        let k = m.len() - 1;
        if k == 0 {
            return false;
        }
        if k == 1 {
            return true;
        }
        let x = rem(&[0, 1], m, p);
        let mut r = x.clone();
        for _ in 1..=k / 2 {
            r = powmod(&r, p, m, p);
            let mut diff = r.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            if diff.is_empty() {
                return false;
            }
            if gcd(m, &diff, p).len() > 1 {
                return false;
            }
        }
        true
    }

    /// First monic irreducible polynomial of degree k, scanning the lower
    /// coefficients in base-p index order.
    pub fn find_irreducible(p: u64, k: usize) -> Vec<u64> {
        let total = p.pow(k as u32);
        for idx in 0..total {
            let mut m = Vec::with_capacity(k + 1);
            let mut rest = idx;
            for _ in 0..k {
                m.push(rest % p);
                rest /= p;
            }
            m.push(1);
            if m[0] != 0 && is_irreducible(&m, p) {
                return m;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }
}

/// Coefficients of the product of two polynomials over the same field,
/// computed without per-operation normalization.
pub(crate) fn convolve(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len() + b.len() - 1;
    let p = field.characteristic;
    let wrap = |repr| FieldElement { field: field.clone(), repr };
    match field.kind {
        FieldKind::Rationals => {
            // p = P / d1, r = R / d2 with integer P, R
            let clear = |v: &[FieldElement]| -> (BigInt, Vec<BigInt>) {
                let rats: Vec<&BigRational> = v.iter().map(|e| e.as_rational().expect("rational")).collect();
                let den = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
                let nums = rats.iter().map(|r| r.numer() * (&den / r.denom())).collect();
                (den, nums)
            };
            let (da, na) = clear(a);
            let (db, nb) = clear(b);
            let mut acc = vec![BigInt::zero(); n];
            for (i, x) in na.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in nb.iter().enumerate() {
                    acc[i + j] += x * y;
                }
            }
            let den = da * db;
            acc.into_iter()
                .map(|c| wrap(Repr::Rat(BigRational::new(c, den.clone()))))
                .collect()
        }
        FieldKind::PrimeField => {
            let ua: Vec<u64> = a.iter().map(|e| if let Repr::Mod(v) = e.repr { v } else { unreachable!() }).collect();
            let ub: Vec<u64> = b.iter().map(|e| if let Repr::Mod(v) = e.repr { v } else { unreachable!() }).collect();
            let mut acc = vec![0u128; n];
            let pp = p as u128;
            // keep partial sums far from overflow
            let limit = u128::MAX - pp * pp;
            for (i, &x) in ua.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in ub.iter().enumerate() {
                    let s = &mut acc[i + j];
                    *s += x as u128 * y as u128;
                    if *s >= limit {
                        *s %= pp;
                    }
                }
            }
            acc.into_iter().map(|c| wrap(Repr::Mod((c % pp) as u64))).collect()
        }
        FieldKind::ExtensionField => {
            let k = field.degree as usize;
            let ext = |e: &FieldElement| -> Vec<u64> {
                match &e.repr {
                    Repr::Ext(v) => v.clone(),
                    _ => unreachable!(),
                }
            };
            let ea: Vec<Vec<u64>> = a.iter().map(ext).collect();
            let eb: Vec<Vec<u64>> = b.iter().map(ext).collect();
            // unreduced products in u of degree < 2k - 1, summed mod p
            let mut acc = vec![vec![0u64; 2 * k - 1]; n];
            for (i, x) in ea.iter().enumerate() {
                if x.iter().all(|&c| c == 0) {
                    continue;
                }
                for (j, y) in eb.iter().enumerate() {
                    let slot = &mut acc[i + j];
                    for (s, &xs) in x.iter().enumerate() {
                        if xs == 0 {
                            continue;
                        }
                        for (t, &yt) in y.iter().enumerate() {
                            slot[s + t] = (slot[s + t] + mul_mod(xs, yt, p)) % p;
                        }
                    }
                }
            }
            acc.into_iter().map(|c| wrap(Repr::Ext(reduce_u_poly(c, &field.modulus, p)))).collect()
        }
    }
}

/// Remainder of a polynomial in u modulo the monic modulus.
fn reduce_u_poly(mut prod: Vec<u64>, modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for j in 0..k {
            let sub = mul_mod(c, modulus[j], p);
            prod[d - k + j] = (prod[d - k + j] + p - sub) % p;
        }
        prod[d] = 0;
    }
    prod.truncate(k);
    prod
}
