//! Finite-dimensional simple modules: the three families, their matrix
//! realizations, simplicity and isomorphism tests (structural and by brute
//! force), and enumeration of isomorphism classes over a finite field.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{parse_element, Field, FieldElement};
use crate::linalg::Matrix;
use crate::pbw::Algebra;
use crate::spectra::{enumerate_lambda_orbits, nu_table, LambdaOrbit, MuSeq, NuTable};

/// Default bound on `|F|^n` for the projective-point simplicity scan.
pub const DEFAULT_SIMPLE_SEARCH_BOUND: u128 = 1_000_000;
/// Default bound on the number of intertwiner combinations scanned.
pub const DEFAULT_ISO_SEARCH_BOUND: u128 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// quotient of the module with `x t^i = t^{i+1}`; x acts invertibly
    A,
    /// quotient of the finite dual; y acts invertibly
    B,
    /// truncation of `F[t]`; x and y nilpotent
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleKind {
    Quotient { family: Family, mu: MuSeq, gamma: FieldElement },
    Nilpotent { alpha: FieldElement, nu: NuTable },
}

/// One of the modules of the classification, with validated parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleSpec {
    algebra: Algebra,
    kind: ModuleKind,
}

impl ModuleSpec {
    /// Family A or B with `lambda` one period of an f-orbit, `mu(0) = beta`
    /// and `gamma != 0`; requires `q != 0` and `|mu| >= 1`.
    pub fn quotient(
        alg: &Algebra,
        family: Family,
        lambda: Vec<FieldElement>,
        beta: &FieldElement,
        gamma: &FieldElement,
    ) -> Result<ModuleSpec> {
        if family == Family::C {
            return Err(Error::InvalidSpec("family C is built with ModuleSpec::nilpotent".into()));
        }
        if alg.q().is_zero() {
            return Err(Error::QZero);
        }
        let orbit = LambdaOrbit::new(alg.f(), lambda)?;
        let mu = MuSeq::new(&orbit, alg.q(), alg.g(), beta)?;
        ModuleSpec::from_mu(alg, family, mu, gamma)
    }

    fn from_mu(alg: &Algebra, family: Family, mu: MuSeq, gamma: &FieldElement) -> Result<ModuleSpec> {
        if mu.period() == 0 {
            return Err(Error::InvalidSpec("mu has infinite period".into()));
        }
        if gamma.field() != alg.field() {
            return Err(Error::FieldMismatch(gamma.field().to_string(), alg.field().to_string()));
        }
        if gamma.is_zero() {
            return Err(Error::InvalidSpec("gamma must be nonzero".into()));
        }
        Ok(ModuleSpec {
            algebra: alg.clone(),
            kind: ModuleKind::Quotient { family, mu, gamma: gamma.clone() },
        })
    }

    /// Family C of dimension n at `alpha`; requires `nu_alpha(n) = 0`.
    pub fn nilpotent(alg: &Algebra, alpha: &FieldElement, n: usize) -> Result<ModuleSpec> {
        if n == 0 {
            return Err(Error::InvalidSpec("dimension must be positive".into()));
        }
        if alpha.field() != alg.field() {
            return Err(Error::FieldMismatch(alpha.field().to_string(), alg.field().to_string()));
        }
        let nu = nu_table(alpha, alg.q(), alg.f(), alg.g(), n);
        if !nu.value(n).is_zero() {
            return Err(Error::InvalidSpec(format!("nu_{alpha}({n}) = {} is not zero", nu.value(n))));
        }
        Ok(ModuleSpec { algebra: alg.clone(), kind: ModuleKind::Nilpotent { alpha: alpha.clone(), nu } })
    }

    /// Parses `A(lambda=[..],beta=..,gamma=..)`, `B(...)` or `C(alpha=..,n=..)`.
    pub fn parse(alg: &Algebra, text: &str) -> Result<ModuleSpec> {
        let text = text.trim();
        let bad = |msg: &str| Error::InvalidSpec(format!("module descriptor {text:?}: {msg}"));
        let family = match text.chars().next() {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            _ => return Err(bad("expected family A, B or C")),
        };
        let body = text[1..]
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| bad("expected parenthesized arguments"))?;
        let mut lambda = None;
        let mut scalars = std::collections::BTreeMap::new();
        for part in split_top_level(body) {
            let (key, value) = part.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let (key, value) = (key.trim(), value.trim());
            if key == "lambda" {
                let inner = value
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| bad("lambda must be a bracketed list"))?;
                let values = inner
                    .split(',')
                    .map(|v| parse_element(v.trim(), alg.field()))
                    .collect::<Result<Vec<_>>>()?;
                lambda = Some(values);
            } else {
                scalars.insert(key.to_string(), value.to_string());
            }
        }
        let mut take = |key: &str| scalars.remove(key).ok_or_else(|| bad(&format!("missing {key}")));
        let spec = match family {
            Family::C => {
                let alpha = parse_element(&take("alpha")?, alg.field())?;
                let n = take("n")?.parse::<usize>().map_err(|_| bad("n must be a positive integer"))?;
                ModuleSpec::nilpotent(alg, &alpha, n)?
            }
            _ => {
                let beta = parse_element(&take("beta")?, alg.field())?;
                let gamma = parse_element(&take("gamma")?, alg.field())?;
                let lambda = lambda.ok_or_else(|| bad("missing lambda"))?;
                ModuleSpec::quotient(alg, family, lambda, &beta, &gamma)?
            }
        };
        if let Some(key) = scalars.keys().next() {
            return Err(bad(&format!("unexpected key {key}")));
        }
        Ok(spec)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn family(&self) -> Family {
        match &self.kind {
            ModuleKind::Quotient { family, .. } => *family,
            ModuleKind::Nilpotent { .. } => Family::C,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            ModuleKind::Quotient { mu, .. } => mu.orbit().period() * mu.period() as usize,
            ModuleKind::Nilpotent { nu, .. } => nu.values.len() - 1,
        }
    }

    pub fn mu(&self) -> Option<&MuSeq> {
        match &self.kind {
            ModuleKind::Quotient { mu, .. } => Some(mu),
            ModuleKind::Nilpotent { .. } => None,
        }
    }

    pub fn gamma(&self) -> Option<&FieldElement> {
        match &self.kind {
            ModuleKind::Quotient { gamma, .. } => Some(gamma),
            ModuleKind::Nilpotent { .. } => None,
        }
    }

    pub fn alpha(&self) -> Option<&FieldElement> {
        match &self.kind {
            ModuleKind::Quotient { .. } => None,
            ModuleKind::Nilpotent { alpha, .. } => Some(alpha),
        }
    }

    /// `mu(0) mu(1) ... mu(n-1)` for families A and B.
    pub fn mu_product(&self) -> Option<FieldElement> {
        let mu = self.mu()?;
        let mut acc = self.algebra.field().one();
        for i in 0..self.dim() as i64 {
            acc = &acc * &mu.value(i).expect("nonnegative index");
        }
        Some(acc)
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s[start..].trim().is_empty() {
        parts.push(&s[start..]);
    }
    parts
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ModuleKind::Quotient { family, mu, gamma } => {
                let lambda: Vec<String> = mu.orbit().values().iter().map(|v| v.to_string()).collect();
                write!(f, "{family}(lambda=[{}],beta={},gamma={gamma})", lambda.join(","), mu.anchor())
            }
            ModuleKind::Nilpotent { alpha, .. } => write!(f, "C(alpha={alpha},n={})", self.dim()),
        }
    }
}

/// Matrices of x, y, h in a basis; column j is the image of basis vector j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRep {
    pub x: Matrix,
    pub y: Matrix,
    pub h: Matrix,
}

impl MatrixRep {
    pub fn new(x: Matrix, y: Matrix, h: Matrix) -> Result<MatrixRep> {
        let n = x.rows();
        for m in [&x, &y, &h] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch("x, y, h must be square of equal size".into()));
            }
            if m.field() != x.field() {
                return Err(Error::FieldMismatch(m.field().to_string(), x.field().to_string()));
            }
        }
        Ok(MatrixRep { x, y, h })
    }

    pub fn dim(&self) -> usize {
        self.x.rows()
    }

    pub fn field(&self) -> &Field {
        self.x.field()
    }

    /// Block-diagonal sum of two representations.
    pub fn direct_sum(&self, other: &MatrixRep) -> MatrixRep {
        let block = |a: &Matrix, b: &Matrix| {
            let (n, m) = (a.rows(), b.rows());
            let mut out = Matrix::zeros(a.field(), n + m, n + m);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] = a[(i, j)].clone();
                }
            }
            for i in 0..m {
                for j in 0..m {
                    out[(n + i, n + j)] = b[(i, j)].clone();
                }
            }
            out
        };
        MatrixRep { x: block(&self.x, &other.x), y: block(&self.y, &other.y), h: block(&self.h, &other.h) }
    }
}

pub fn build_matrix_rep(spec: &ModuleSpec) -> Result<MatrixRep> {
    let field = spec.algebra.field();
    let n = spec.dim();
    let mut x = Matrix::zeros(field, n, n);
    let mut y = Matrix::zeros(field, n, n);
    let mut h = Matrix::zeros(field, n, n);
    match &spec.kind {
        ModuleKind::Quotient { family, mu, gamma } => {
            let mus: Vec<FieldElement> = (0..=n as i64).map(|i| mu.value(i)).collect::<Result<_>>()?;
            let gamma_inv = gamma.inverse()?;
            for j in 0..n {
                h[(j, j)] = mu.orbit().value(j as i64).clone();
            }
            match family {
                Family::A => {
                    // x T_j = T_{j+1}, y T_j = mu(j) T_{j-1}, wrapping with gamma
                    for j in 0..n - 1 {
                        x[(j + 1, j)] = field.one();
                        y[(j, j + 1)] = mus[j + 1].clone();
                    }
                    x[(0, n - 1)] = gamma.clone();
                    y[(n - 1, 0)] = &mus[0] * &gamma_inv;
                }
                Family::B => {
                    // x T_j = mu(j+1) T_{j+1}, y T_j = T_{j-1}, wrapping with gamma
                    for j in 0..n - 1 {
                        x[(j + 1, j)] = mus[j + 1].clone();
                        y[(j, j + 1)] = field.one();
                    }
                    x[(0, n - 1)] = &mus[n] * gamma;
                    y[(n - 1, 0)] = gamma_inv;
                }
                Family::C => unreachable!("quotient modules are A or B"),
            }
        }
        ModuleKind::Nilpotent { alpha, nu } => {
            let f = spec.algebra.f();
            let mut point = alpha.clone();
            for i in 0..n {
                h[(i, i)] = point.clone();
                point = f.eval(&point);
                if i + 1 < n {
                    x[(i + 1, i)] = field.one();
                    y[(i, i + 1)] = nu.value(i + 1).clone();
                }
            }
        }
    }
    MatrixRep::new(x, y, h)
}

/// Residuals of the defining relations on a representation.
#[derive(Debug, Clone)]
pub struct RelationResiduals {
    /// HX - X f(H)
    pub hx: Matrix,
    /// YH - f(H) Y
    pub yh: Matrix,
    /// YX - q XY - g(H)
    pub yx: Matrix,
}

impl RelationResiduals {
    pub fn all_zero(&self) -> bool {
        self.hx.is_zero() && self.yh.is_zero() && self.yx.is_zero()
    }
}

pub fn verify_relations(rep: &MatrixRep, alg: &Algebra) -> Result<RelationResiduals> {
    if rep.field() != alg.field() {
        return Err(Error::FieldMismatch(rep.field().to_string(), alg.field().to_string()));
    }
    let (x, y, h) = (&rep.x, &rep.y, &rep.h);
    let fh = h.eval_poly(alg.f());
    let gh = h.eval_poly(alg.g());
    Ok(RelationResiduals {
        hx: h.mul(x).sub(&x.mul(&fh)),
        yh: y.mul(h).sub(&fh.mul(y)),
        yx: y.mul(x).sub(&x.mul(y).scale(alg.q())).sub(&gh),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplicityCertificate {
    /// Families A and B: finite nonzero periods and `gamma != 0`.
    Quotient { lambda_period: usize, mu_period: u64, gamma: FieldElement },
    /// Family C with `nu_alpha(i) != 0` for `1 <= i < n`.
    NuNonvanishing { n: usize },
    /// Family C with `nu_alpha(index) = 0`; `span(w_index, ..., w_{n-1})`
    /// is a proper submodule.
    NuVanishes { index: usize },
}

impl SimplicityCertificate {
    pub fn is_simple(&self) -> bool {
        !matches!(self, SimplicityCertificate::NuVanishes { .. })
    }
}

pub fn is_simple_structural(spec: &ModuleSpec) -> SimplicityCertificate {
    match &spec.kind {
        ModuleKind::Quotient { mu, gamma, .. } => SimplicityCertificate::Quotient {
            lambda_period: mu.orbit().period(),
            mu_period: mu.period(),
            gamma: gamma.clone(),
        },
        ModuleKind::Nilpotent { nu, .. } => {
            let n = spec.dim();
            match (1..n).find(|&i| nu.value(i).is_zero()) {
                Some(index) => SimplicityCertificate::NuVanishes { index },
                None => SimplicityCertificate::NuNonvanishing { n },
            }
        }
    }
}

/// A subspace kept as rows with distinct pivots, each row zero at the pivots
/// of earlier rows.
struct Span {
    rows: Vec<(usize, Vec<FieldElement>)>,
}

impl Span {
    fn new() -> Span {
        Span { rows: Vec::new() }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is not already in the span; returns whether it was new.
    fn insert(&mut self, mut v: Vec<FieldElement>) -> bool {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (a, b) in v.iter_mut().zip(row) {
                *a = &*a - &(&c * b);
            }
        }
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[p].inverse().expect("nonzero pivot");
        for a in v.iter_mut() {
            *a = &*a * &inv;
        }
        self.rows.push((p, v));
        true
    }
}

/// Dimension of the smallest subspace containing `v` and stable under x, y, h.
fn closure_dim(rep: &MatrixRep, v: Vec<FieldElement>) -> usize {
    let mut span = Span::new();
    let mut queue = vec![v.clone()];
    span.insert(v);
    while let Some(w) = queue.pop() {
        for m in [&rep.x, &rep.y, &rep.h] {
            let image = m.mul_vec(&w);
            if span.insert(image.clone()) {
                queue.push(image);
            }
        }
        if span.dim() == rep.dim() {
            break;
        }
    }
    span.dim()
}

fn check_finite_bound(field: &Field, exponent: usize, bound: u128) -> Result<u64> {
    let order = field
        .order()
        .ok_or_else(|| Error::UnsupportedField("brute-force search needs a finite field".into()))?;
    let size = u32::try_from(exponent)
        .ok()
        .and_then(|e| (order as u128).checked_pow(e))
        .unwrap_or(u128::MAX);
    if size > bound {
        return Err(Error::SearchSpaceTooLarge { size, bound });
    }
    Ok(order)
}

/// Calls `visit` on every vector of `F^n` over the given coordinate values,
/// stopping early when it returns true.
fn scan_tuples(values: &[FieldElement], n: usize, mut visit: impl FnMut(&[FieldElement]) -> bool) -> bool {
    let mut digits = vec![0usize; n];
    let mut v: Vec<FieldElement> = vec![values[0].clone(); n];
    loop {
        if visit(&v) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            digits[i] += 1;
            if digits[i] < values.len() {
                v[i] = values[digits[i]].clone();
                break;
            }
            digits[i] = 0;
            v[i] = values[0].clone();
            i += 1;
        }
    }
}

/// Simplicity by closing one representative of every projective point under
/// the action; needs a finite field with `|F|^n <= bound`.
pub fn is_simple_bruteforce(rep: &MatrixRep, bound: u128) -> Result<bool> {
    let n = rep.dim();
    if n == 0 {
        return Ok(false);
    }
    let field = rep.field();
    let order = check_finite_bound(field, n, bound)?;
    let elements: Vec<FieldElement> = (0..order).map(|i| field.element(i)).collect();
    for lead in 0..n {
        let tail = n - lead - 1;
        let found_proper = scan_tuples(&elements, tail, |rest| {
            let mut v = vec![field.zero(); n];
            v[lead] = field.one();
            v[lead + 1..].clone_from_slice(rest);
            closure_dim(rep, v) < n
        });
        if found_proper {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis of the intertwiners `T` with `T M1 = M2 T` for M in {x, y, h}, as
/// n x n matrices.
pub fn intertwiner_basis(r1: &MatrixRep, r2: &MatrixRep) -> Result<Vec<Matrix>> {
    let field = r1.field();
    if r2.field() != field {
        return Err(Error::FieldMismatch(r1.field().to_string(), r2.field().to_string()));
    }
    let n = r1.dim();
    if r2.dim() != n {
        return Err(Error::DimensionMismatch(format!("dimensions {} and {}", n, r2.dim())));
    }
    let var = |a: usize, b: usize| a * n + b;
    let mut system = Matrix::zeros(field, 3 * n * n, n * n);
    for (g, (m1, m2)) in [(&r1.x, &r2.x), (&r1.y, &r2.y), (&r1.h, &r2.h)].into_iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let row = g * n * n + i * n + j;
                // (T m1)[i][j] - (m2 T)[i][j]
                for k in 0..n {
                    let c = &system[(row, var(i, k))] + &m1[(k, j)];
                    system[(row, var(i, k))] = c;
                    let c = &system[(row, var(k, j))] - &m2[(i, k)];
                    system[(row, var(k, j))] = c;
                }
            }
        }
    }
    system
        .nullspace()
        .into_iter()
        .map(|v| Matrix::from_rows(field, v.chunks(n).map(<[FieldElement]>::to_vec).collect()))
        .collect::<Result<_>>()
}

/// Whether an invertible intertwiner exists. The determinant of a generic
/// combination `sum c_i T_i` has degree at most n in each `c_i`, so it is
/// nonzero somewhere on `S^d` for any `S` with more than n elements; over a
/// field with at most n elements all of `F^d` is scanned. The verdict is
/// exact whenever the scan fits within `bound` points.
pub fn iso_bruteforce(r1: &MatrixRep, r2: &MatrixRep, bound: u128) -> Result<bool> {
    if r1.dim() != r2.dim() {
        return Ok(false);
    }
    let basis = intertwiner_basis(r1, r2)?;
    let d = basis.len();
    if d == 0 {
        return Ok(false);
    }
    let field = r1.field();
    let n = r1.dim();
    let values: Vec<FieldElement> = match field.order() {
        Some(order) if order <= n as u64 => (0..order).map(|i| field.element(i)).collect(),
        Some(_) => (0..=n as u64).map(|i| field.element(i)).collect(),
        None => (0..=n as i64).map(|i| field.from_i64(i)).collect(),
    };
    let size = u32::try_from(d)
        .ok()
        .and_then(|e| (values.len() as u128).checked_pow(e))
        .unwrap_or(u128::MAX);
    if size > bound {
        return Err(Error::SearchSpaceTooLarge { size, bound });
    }
    Ok(scan_tuples(&values, d, |coeffs| {
        if coeffs.iter().all(FieldElement::is_zero) {
            return false;
        }
        let mut t = Matrix::zeros(field, n, n);
        for (c, b) in coeffs.iter().zip(&basis) {
            if !c.is_zero() {
                t = t.add(&b.scale(c));
            }
        }
        t.is_invertible()
    }))
}

/// Shift `s` in `0..n` with `lambda2(k) = lambda1(k + s)` and
/// `mu2(k) = mu1(k + s)`, if any.
fn matching_shift(mu1: &MuSeq, mu2: &MuSeq, n: usize) -> Result<Option<usize>> {
    if mu1.orbit().period() != mu2.orbit().period() || mu1.period() != mu2.period() {
        return Ok(None);
    }
    let l = mu1.orbit().period();
    let Some(i) = mu1.orbit().position(&mu2.orbit().values()[0]) else {
        return Ok(None);
    };
    if mu1.orbit().rotated(i as i64).values() != mu2.orbit().values() {
        return Ok(None);
    }
    for s in (i..n).step_by(l) {
        if &mu1.value(s as i64)? == mu2.anchor() {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Isomorphism decided from the parameters alone.
pub fn iso_structural(s1: &ModuleSpec, s2: &ModuleSpec) -> Result<bool> {
    if s1.algebra != s2.algebra {
        return Err(Error::AlgebraMismatch);
    }
    if s1.dim() != s2.dim() {
        return Ok(false);
    }
    let n = s1.dim();
    use ModuleKind::{Nilpotent, Quotient};
    match (&s1.kind, &s2.kind) {
        (Nilpotent { alpha: a1, .. }, Nilpotent { alpha: a2, .. }) => Ok(a1 == a2),
        (Quotient { family: f1, mu: m1, gamma: g1 }, Quotient { family: f2, mu: m2, gamma: g2 }) => {
            if f1 == f2 {
                return Ok(g1 == g2 && matching_shift(m1, m2, n)?.is_some());
            }
            // A(lambda, mu, gamma) ~ B(lambda', mu', gamma') iff
            // gamma = gamma' prod mu(j) and the shift condition holds
            let (a, b) = if *f1 == Family::A { (s1, s2) } else { (s2, s1) };
            let product = a.mu_product().expect("quotient");
            if product.is_zero() {
                return Ok(false);
            }
            let target = b.gamma().expect("quotient") * &product;
            Ok(a.gamma() == Some(&target) && matching_shift(a.mu().unwrap(), b.mu().unwrap(), n)?.is_some())
        }
        _ => Ok(false),
    }
}

/// Anchors `beta` over a canonical orbit whose mu-period is exactly `m` and
/// which are least among `mu(0), mu(l), ..., mu((m-1) l)`.
fn canonical_anchors(alg: &Algebra, orbit: &LambdaOrbit, m: u64) -> Result<Vec<MuSeq>> {
    let field = alg.field();
    let ql = alg.q().pow(orbit.period() as u64);
    let mut out = Vec::new();
    for beta in field.elements()? {
        let mu = MuSeq::new(orbit, alg.q(), alg.g(), &beta)?;
        if mu.period() != m {
            continue;
        }
        let xi = mu.xi();
        let mut cur = beta.clone();
        let mut least = true;
        for _ in 1..m {
            cur = &(&ql * &cur) + &xi;
            if cur < beta {
                least = false;
                break;
            }
        }
        if least {
            out.push(mu);
        }
    }
    Ok(out)
}

/// One representative of every isomorphism class of n-dimensional simple
/// modules whose parameters lie in the (finite) base field: family A, then
/// B, then C, each in a deterministic order.
pub fn enumerate_simples(alg: &Algebra, n: usize) -> Result<Vec<ModuleSpec>> {
    if alg.q().is_zero() {
        return Err(Error::QZero);
    }
    let field = alg.field();
    if !field.is_finite() {
        return Err(Error::UnsupportedField("enumeration needs a finite field".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let gammas: Vec<FieldElement> = field.elements()?.filter(|c| !c.is_zero()).collect();
    let mut family_a = Vec::new();
    let mut family_b = Vec::new();
    for orbit in enumerate_lambda_orbits(field, alg.f(), n)? {
        if !n.is_multiple_of(orbit.period()) {
            continue;
        }
        let m = (n / orbit.period()) as u64;
        for mu in canonical_anchors(alg, &orbit, m)? {
            let has_zero = (0..n as i64).any(|i| mu.value(i).map(|v| v.is_zero()).unwrap_or(false));
            for gamma in &gammas {
                family_a.push(ModuleSpec::from_mu(alg, Family::A, mu.clone(), gamma)?);
                if has_zero {
                    family_b.push(ModuleSpec::from_mu(alg, Family::B, mu.clone(), gamma)?);
                }
            }
        }
    }
    let mut family_c = Vec::new();
    for alpha in field.elements()? {
        let nu = nu_table(&alpha, alg.q(), alg.f(), alg.g(), n);
        if nu.value(n).is_zero() && (1..n).all(|i| !nu.value(i).is_zero()) {
            family_c.push(ModuleSpec::nilpotent(alg, &alpha, n)?);
        }
    }
    family_a.extend(family_b);
    family_a.extend(family_c);
    Ok(family_a)
}
