//! JSON report shapes. Field elements are always rendered as strings.

use qgha_core::modules::{build_matrix_rep, ModuleKind};
use qgha_core::{FieldElement, Matrix, ModuleSpec, PbwElement, Result};
use serde::Serialize;

pub fn elem(e: &FieldElement) -> String {
    e.to_string()
}

pub fn elems(v: &[FieldElement]) -> Vec<String> {
    v.iter().map(elem).collect()
}

pub fn matrix(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| elems(r)).collect()
}

#[derive(Serialize)]
pub struct Term {
    pub x: u32,
    pub h: String,
    pub y: u32,
}

pub fn terms(u: &PbwElement) -> Vec<Term> {
    u.terms().iter().map(|(&(x, y), p)| Term { x, h: p.to_string(), y }).collect()
}

#[derive(Serialize)]
pub struct Normalized {
    pub input: String,
    pub normal_form: String,
    pub terms: Vec<Term>,
}

#[derive(Serialize)]
pub struct Product {
    pub left: String,
    pub right: String,
    pub product: String,
    pub terms: Vec<Term>,
}

#[derive(Serialize)]
pub struct Theta {
    pub k: usize,
    pub theta: String,
}

#[derive(Serialize)]
pub struct Witness {
    pub a: String,
    pub z: String,
}

#[derive(Serialize)]
pub struct ConformalReport {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relations_verified: Option<bool>,
}

#[derive(Serialize)]
pub struct CenterReport {
    pub status: &'static str,
    pub max_xy: u32,
    pub max_h: usize,
    pub basis: Vec<String>,
}

#[derive(Serialize)]
pub struct ZeroDivisor {
    pub left: String,
    pub right: String,
    pub product: String,
}

#[derive(Serialize)]
pub struct DomainReport {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ZeroDivisor>,
}

#[derive(Serialize)]
pub struct Orbit {
    pub period: usize,
    pub values: Vec<String>,
}

#[derive(Serialize)]
pub struct OrbitList {
    pub field: String,
    pub orbits: Vec<Orbit>,
}

#[derive(Serialize)]
pub struct MuEntry {
    pub i: i64,
    pub value: String,
}

#[derive(Serialize)]
pub struct MuReport {
    pub period: usize,
    pub values: Vec<String>,
    pub anchor: String,
    #[serde(rename = "muPeriod")]
    pub mu_period: u64,
    pub xi: String,
    pub window: Vec<MuEntry>,
}

#[derive(Serialize)]
pub struct NuReport {
    pub alpha: String,
    pub values: Vec<String>,
}

#[derive(Serialize)]
pub struct MuSummary {
    pub anchor: String,
    pub period: u64,
}

#[derive(Serialize)]
pub struct Matrices {
    #[serde(rename = "X")]
    pub x: Vec<Vec<String>>,
    #[serde(rename = "Y")]
    pub y: Vec<Vec<String>>,
    #[serde(rename = "H")]
    pub h: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct Module {
    pub family: String,
    pub dim: usize,
    pub descriptor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Orbit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<MuSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    pub matrices: Matrices,
}

pub fn module(spec: &ModuleSpec) -> Result<Module> {
    let rep = build_matrix_rep(spec)?;
    let (lambda, mu, gamma, alpha) = match spec.kind() {
        ModuleKind::Quotient { mu, gamma, .. } => (
            Some(Orbit { period: mu.orbit().period(), values: elems(mu.orbit().values()) }),
            Some(MuSummary { anchor: elem(mu.anchor()), period: mu.period() }),
            Some(elem(gamma)),
            None,
        ),
        ModuleKind::Nilpotent { alpha, .. } => (None, None, None, Some(elem(alpha))),
    };
    Ok(Module {
        family: spec.family().to_string(),
        dim: spec.dim(),
        descriptor: spec.to_string(),
        lambda,
        mu,
        gamma,
        alpha,
        matrices: Matrices { x: matrix(&rep.x), y: matrix(&rep.y), h: matrix(&rep.h) },
    })
}

#[derive(Serialize)]
pub struct ModuleList {
    pub dim: usize,
    pub count: usize,
    pub modules: Vec<Module>,
}

#[derive(Serialize)]
pub struct Residuals {
    #[serde(rename = "HX")]
    pub hx: Vec<Vec<String>>,
    #[serde(rename = "YH")]
    pub yh: Vec<Vec<String>>,
    #[serde(rename = "YX")]
    pub yx: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct RelationsReport {
    pub descriptor: String,
    pub all_zero: bool,
    pub residuals: Residuals,
}

#[derive(Serialize)]
pub struct SimpleReport {
    pub descriptor: String,
    pub structural: bool,
    pub certificate: String,
    pub bruteforce: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bruteforce_error: Option<String>,
}

#[derive(Serialize)]
pub struct IsoReport {
    pub left: String,
    pub right: String,
    pub structural: bool,
    pub bruteforce: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bruteforce_error: Option<String>,
}

#[derive(Serialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

#[derive(Serialize)]
pub struct ErrorReport {
    pub error: ErrorBody,
}
