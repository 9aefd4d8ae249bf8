//! Univariate polynomials in `h` and the endomorphism sigma: h -> f(h).

use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::field::{convolve, Field, FieldElement};

/// A polynomial in `h`, coefficients low to high with trailing zeros stripped.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Poly {
        let field = c.field().clone();
        Poly::from_coeffs(&field, vec![c])
    }

    /// The polynomial `h`.
    pub fn h(field: &Field) -> Poly {
        Poly::monomial(field.one(), 1)
    }

    pub fn monomial(c: FieldElement, degree: usize) -> Poly {
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); degree];
        coeffs.push(c);
        Poly::from_coeffs(&field, coeffs)
    }

    pub fn from_coeffs(field: &Field, mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn from_i64s(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> FieldElement {
        self.coeffs.get(d).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.field);
        }
        Poly::from_coeffs(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, at: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * at) + c)
    }

    /// `self(inner(h))`, by Horner's rule.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Exact division with remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = divisor.coeffs[dd].inverse()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let d = rem.len() - 1;
            let c = &rem[d] * &inv_lead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[d - dd + j] = &rem[d - dd + j] - &(&c * dc);
                }
                quot[d - dd] = c;
            }
            rem.pop();
        }
        Ok((Poly::from_coeffs(&self.field, quot), Poly::from_coeffs(&self.field, rem)))
    }
}

/// `p(f^[k](h))`, i.e. sigma^k applied to `p`, where sigma maps h to f(h).
pub fn sigma_power(p: &Poly, k: usize, f: &Poly) -> Poly {
    let mut out = p.clone();
    for _ in 0..k {
        out = out.compose(f);
    }
    out
}

/// `f^[k](h)`, the k-fold composition of `f` (the identity `h` for k = 0).
pub fn compositional_power(f: &Poly, k: usize) -> Poly {
    sigma_power(&Poly::h(f.field()), k, f)
}

impl<'a> std::ops::Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::from_coeffs(&self.field, coeffs)
    }
}

impl<'a> std::ops::Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::from_coeffs(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl<'a> std::ops::Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        Poly::from_coeffs(&self.field, convolve(&self.field, &self.coeffs, &rhs.coeffs))
    }
}

macro_rules! forward_poly {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_poly!(Add, add);
forward_poly!(Sub, sub);
forward_poly!(Mul, mul);

/// Splits a coefficient into (is_negative, magnitude) for rendering; only
/// rationals carry a sign.
fn sign_split(c: &FieldElement) -> (bool, FieldElement) {
    match c.as_rational() {
        Some(r) if r.is_negative() => (true, -c),
        _ => (false, c.clone()),
    }
}

/// Renders the polynomial in `var` using the CLI grammar, highest degree
/// first, e.g. `h^2 - 1/2*h + 3`.
pub(crate) fn render_in(p: &Poly, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (d, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = sign_split(c);
        let mag_text = mag.to_string();
        let compound = mag_text.contains('+');
        let body = match d {
            0 => {
                if compound && (neg || !out.is_empty()) {
                    format!("({mag_text})")
                } else {
                    mag_text
                }
            }
            _ => {
                let power = if d == 1 { var.to_string() } else { format!("{var}^{d}") };
                if mag.is_one() {
                    power
                } else if compound {
                    format!("({mag_text})*{power}")
                } else {
                    format!("{mag_text}*{power}")
                }
            }
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_in(self, "h"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn sigma_power_examples() {
        let f = q();
        let h = Poly::h(&f);
        let h2 = Poly::from_i64s(&f, &[0, 0, 1]);
        assert_eq!(sigma_power(&h, 2, &h2), Poly::from_i64s(&f, &[0, 0, 0, 0, 1]));
        let hp1 = Poly::from_i64s(&f, &[1, 1]);
        let h2p1 = Poly::from_i64s(&f, &[1, 0, 1]);
        assert_eq!(sigma_power(&hp1, 1, &h2p1), Poly::from_i64s(&f, &[2, 0, 1]));
        let two_h = Poly::from_i64s(&f, &[0, 2]);
        assert_eq!(sigma_power(&h, 3, &two_h), Poly::from_i64s(&f, &[0, 8]));
        assert_eq!(sigma_power(&hp1, 0, &two_h), hp1);
    }

    #[test]
    fn zero_poly_degree_sentinel() {
        let f = q();
        assert_eq!(Poly::zero(&f).degree(), None);
        assert_eq!(Poly::from_i64s(&f, &[3, 0, 0]).degree(), Some(0));
    }

    #[test]
    fn div_rem_recovers_dividend() {
        let f = Field::prime(7).unwrap();
        let a = Poly::from_i64s(&f, &[3, 1, 4, 1, 5]);
        let b = Poly::from_i64s(&f, &[2, 6, 1]);
        let (quo, rem) = a.div_rem(&b).unwrap();
        assert!(rem.degree().is_none_or(|d| d < 2));
        assert_eq!(&(&quo * &b) + &rem, a);
        assert_eq!(a.div_rem(&Poly::zero(&f)), Err(Error::DivisionByZero));
    }

    #[test]
    fn rendering() {
        let f = q();
        assert_eq!(Poly::from_i64s(&f, &[0, -1, 1]).to_string(), "h^2 - h");
        assert_eq!(Poly::from_i64s(&f, &[1, 3, 1]).to_string(), "h^2 + 3*h + 1");
        assert_eq!(Poly::from_i64s(&f, &[-2]).to_string(), "-2");
        assert_eq!(Poly::zero(&f).to_string(), "0");
        let gf4 = Field::extension(2, 2, None).unwrap();
        let u = gf4.generator().unwrap();
        let p = Poly::from_coeffs(&gf4, vec![&u + &gf4.one(), gf4.zero(), &u + &gf4.one()]);
        assert_eq!(p.to_string(), "(u+1)*h^2 + (u+1)");
    }
}
