//! Structural computations: conformality and the normal element Z, the
//! centralizer of h, a truncated center, and the domain criterion with
//! explicit zero-divisor witnesses.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::Matrix;
use crate::pbw::{commutator, q_commutator, theta, Algebra, PbwElement};
use crate::poly::Poly;

/// `a` with `g = sigma(a) - q a`, and `Z = q (xy - a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConformalWitness {
    pub a: Poly,
    pub z: PbwElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conformality {
    Conformal(ConformalWitness),
    NotConformal,
}

impl ConformalWitness {
    /// Builds the witness for a given `a` without checking it.
    pub fn from_a(alg: &Algebra, a: Poly) -> Result<ConformalWitness> {
        let xy = alg.x().mul(&alg.y())?;
        let z = xy.sub(&alg.poly(a.clone())).scale(alg.q());
        Ok(ConformalWitness { a, z })
    }
}

/// Largest degree of `a` tried when solving `sigma(a) - q a = g`.
fn conformal_degree_bound(alg: &Algebra) -> usize {
    let dg = alg.g().degree().unwrap_or(0);
    let df = alg.f().degree().unwrap_or(0).max(1);
    dg.max(dg / df + 1) + 2
}

/// Solves `sigma(a) - q a = g` for `a` of bounded degree. When the solution
/// is not unique, the free coefficients are set to zero.
pub fn conformal_witness(alg: &Algebra) -> Result<Conformality> {
    let field = alg.field();
    let bound = conformal_degree_bound(alg);
    let columns: Vec<Poly> = (0..=bound)
        .map(|j| {
            let hj = Poly::monomial(field.one(), j);
            Ok(&alg.sigma(&hj, 1)? - &hj.scale(alg.q()))
        })
        .collect::<Result<_>>()?;
    let rows = columns
        .iter()
        .filter_map(Poly::degree)
        .chain(alg.g().degree())
        .max()
        .map_or(1, |d| d + 1);
    let mut m = Matrix::zeros(field, rows, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (e, c) in col.coeffs().iter().enumerate() {
            m[(e, j)] = c.clone();
        }
    }
    let rhs: Vec<FieldElement> = (0..rows).map(|e| alg.g().coeff(e)).collect();
    match m.solve(&rhs) {
        Some(a) => {
            let a = Poly::from_coeffs(field, a);
            Ok(Conformality::Conformal(ConformalWitness::from_a(alg, a)?))
        }
        None => Ok(Conformality::NotConformal),
    }
}

/// Residuals of the relations satisfied by a conformal witness.
#[derive(Debug, Clone)]
pub struct ZRelationReport {
    /// sigma(a) - q a - g
    pub conformality: Poly,
    /// Z - q (xy - a)
    pub z_definition: PbwElement,
    /// hZ - Zh
    pub h_commutes: PbwElement,
    /// Zx - q xZ
    pub zx: PbwElement,
    /// yZ - q Zy
    pub yz: PbwElement,
}

impl ZRelationReport {
    pub fn all_zero(&self) -> bool {
        self.conformality.is_zero()
            && self.z_definition.is_zero()
            && self.h_commutes.is_zero()
            && self.zx.is_zero()
            && self.yz.is_zero()
    }
}

pub fn verify_z_relations(alg: &Algebra, w: &ConformalWitness) -> Result<ZRelationReport> {
    let q = alg.q();
    let conformality = &(&alg.sigma(&w.a, 1)? - &w.a.scale(q)) - alg.g();
    let rebuilt = ConformalWitness::from_a(alg, w.a.clone())?;
    Ok(ZRelationReport {
        conformality,
        z_definition: w.z.sub(&rebuilt.z),
        h_commutes: commutator(&alg.h(), &w.z)?,
        zx: q_commutator(&w.z, &alg.x(), q)?,
        yz: q_commutator(&alg.y(), &w.z, q)?,
    })
}

/// Whether `u` commutes with h.
pub fn centralizer_of_h_check(alg: &Algebra, u: &PbwElement) -> Result<bool> {
    Ok(commutator(&alg.h(), u)?.is_zero())
}

/// Basis of the central elements inside
/// `sum_{i <= max_xy} x^i F[h]_{<= max_h} y^i`.
///
/// For a weight-0 element `z = sum x^j p_j y^j`, both `zx = xz` and `zy = yz`
/// reduce to `q^j sigma(p_j) - p_j + p_{j+1} theta_{j+1} = 0` for every level
/// j, which is linear in the coefficients of the p_j. The basis is returned
/// in reduced echelon form with respect to the highest (level, degree)
/// coordinate, sorted by increasing level.
pub fn center_basis_truncated(alg: &Algebra, max_xy: u32, max_h: usize) -> Result<Vec<PbwElement>> {
    let df = alg.f().degree().map_or(-1, |d| d as i64);
    if df <= 1 {
        return Err(Error::UnsupportedDegF(df));
    }
    let field = alg.field();
    let levels = max_xy as usize + 1;
    let width = max_h + 1;
    let unknowns = levels * width;
    let thetas: Vec<Poly> = (0..=levels).map(|k| theta(k, alg)).collect::<Result<_>>()?;

    // constraint polynomials per unknown: (level, poly) contributions
    let mut contributions: Vec<Vec<(usize, Poly)>> = Vec::with_capacity(unknowns);
    let mut row_len = vec![0usize; levels];
    for (j, theta_j) in thetas.iter().enumerate().take(levels) {
        let qj = alg.q().pow(j as u64);
        for d in 0..width {
            let hd = Poly::monomial(field.one(), d);
            let mut parts = vec![(j, &alg.sigma(&hd, 1)?.scale(&qj) - &hd)];
            if j >= 1 {
                parts.push((j - 1, &hd * theta_j));
            }
            for (lvl, p) in &parts {
                row_len[*lvl] = row_len[*lvl].max(p.degree().map_or(0, |e| e + 1));
            }
            contributions.push(parts);
        }
    }
    let offsets: Vec<usize> = row_len
        .iter()
        .scan(0, |acc, &len| {
            let start = *acc;
            *acc += len;
            Some(start)
        })
        .collect();
    let total_rows: usize = row_len.iter().sum();
    let mut m = Matrix::zeros(field, total_rows.max(1), unknowns);
    for (col, parts) in contributions.iter().enumerate() {
        for (lvl, p) in parts {
            for (e, c) in p.coeffs().iter().enumerate() {
                let r = offsets[*lvl] + e;
                m[(r, col)] = &m[(r, col)] + c;
            }
        }
    }

    // Reduce the kernel basis with the highest coordinate first.
    let kernel = m.nullspace();
    if kernel.is_empty() {
        return Ok(Vec::new());
    }
    let reversed: Vec<Vec<FieldElement>> =
        kernel.iter().map(|v| v.iter().rev().cloned().collect()).collect();
    let mut reduced = Matrix::from_rows(field, reversed)?;
    let pivots = reduced.rref_in_place();
    let mut out: Vec<(usize, PbwElement)> = (0..pivots.len())
        .map(|r| {
            let coords: Vec<FieldElement> = reduced.row(r).iter().rev().cloned().collect();
            let elem = alg.from_terms((0..levels).map(|j| {
                let coeffs = coords[j * width..(j + 1) * width].to_vec();
                ((j as u32, j as u32), Poly::from_coeffs(field, coeffs))
            }));
            (unknowns - 1 - pivots[r], elem)
        })
        .collect();
    out.sort_by_key(|(lead, _)| *lead);
    Ok(out.into_iter().map(|(_, e)| e).collect())
}

/// Nonzero `left`, `right` with `left * right = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroDivisorWitness {
    pub left: PbwElement,
    pub right: PbwElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainReport {
    IsDomain,
    ZeroDivisor(ZeroDivisorWitness),
}

/// H_q(f,g) is a domain exactly when q != 0 and deg f >= 1; otherwise an
/// explicit pair of zero divisors is produced.
pub fn domain_check(alg: &Algebra) -> Result<DomainReport> {
    let field = alg.field();
    if alg.f().degree().unwrap_or(0) == 0 {
        // (h - f) x = x f - f x = 0
        let left = alg.h().sub(&alg.poly(alg.f().clone()));
        return Ok(DomainReport::ZeroDivisor(ZeroDivisorWitness { left, right: alg.x() }));
    }
    if !alg.q().is_zero() {
        return Ok(DomainReport::IsDomain);
    }
    if alg.g().is_zero() {
        return Ok(DomainReport::ZeroDivisor(ZeroDivisorWitness { left: alg.y(), right: alg.x() }));
    }
    // q = 0, g != 0: find P0 != 0 with sigma(P0) in (g), then
    // y (x P1 y - P0) = (g P1 - sigma(P0)) y = 0 for P1 = sigma(P0) / g.
    let dg = alg.g().degree().expect("g nonzero");
    for d in 0..=dg {
        let residues: Vec<Poly> = (0..=d)
            .map(|j| {
                let s = alg.sigma(&Poly::monomial(field.one(), j), 1)?;
                Ok(s.div_rem(alg.g())?.1)
            })
            .collect::<Result<_>>()?;
        let mut m = Matrix::zeros(field, dg.max(1), d + 1);
        for (j, r) in residues.iter().enumerate() {
            for (e, c) in r.coeffs().iter().enumerate() {
                m[(e, j)] = c.clone();
            }
        }
        let Some(v) = m.nullspace().into_iter().find(|v| !v[d].is_zero()) else {
            continue;
        };
        let p0 = Poly::from_coeffs(field, v);
        let p0 = p0.scale(&p0.leading_coeff().expect("nonzero").inverse()?);
        let (p1, rem) = alg.sigma(&p0, 1)?.div_rem(alg.g())?;
        debug_assert!(rem.is_zero());
        let right = alg.monomial(1, p1, 1).sub(&alg.poly(p0));
        return Ok(DomainReport::ZeroDivisor(ZeroDivisorWitness { left: alg.y(), right }));
    }
    unreachable!("the map P0 -> sigma(P0) mod g has a kernel in degree <= deg g")
}

impl ZeroDivisorWitness {
    /// Checks nonzero factors and a vanishing product in the engine.
    pub fn verify(&self) -> Result<bool> {
        Ok(!self.left.is_zero() && !self.right.is_zero() && self.left.mul(&self.right)?.is_zero())
    }
}
