//! Command-line front end for `qgha-core`.
//!
//! Every verb prints either a short human-readable report or, with `--json`,
//! a single JSON document whose shape is fixed by the schemas under
//! `schemas/`. Exit codes: 0 success, 1 domain error, 2 usage or parse
//! error, 3 when a verb needing `q != 0` is given `q = 0`.

use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use qgha_core::field::{parse_element, DEFAULT_EXTENSION_BOUND};
use qgha_core::modules::{
    build_matrix_rep, enumerate_simples, is_simple_bruteforce, is_simple_structural, iso_bruteforce,
    iso_structural, verify_relations, SimplicityCertificate, DEFAULT_ISO_SEARCH_BOUND,
    DEFAULT_SIMPLE_SEARCH_BOUND,
};
use qgha_core::pbw::theta;
use qgha_core::spectra::{enumerate_lambda_orbits, nu_table};
use qgha_core::structure::{
    center_basis_truncated, conformal_witness, domain_check, verify_z_relations, Conformality, DomainReport,
};
use qgha_core::{Algebra, AlgebraSpec, Error, Field, LambdaOrbit, ModuleSpec, MuSeq};
use serde::Serialize;

pub mod output;

use output as out;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_Q_ZERO: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qgha", version, about = "Exact computations in quantum generalized Heisenberg algebras")]
pub struct Cli {
    /// Base field: Q, GF(p) or GF(p^k), optionally followed by mod=<poly in u>
    #[arg(long, global = true, default_value = "Q")]
    pub field: String,
    /// Deformation parameter q
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    pub q: String,
    /// The polynomial f(h)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub f: Option<String>,
    /// The polynomial g(h)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub g: Option<String>,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest extension degree accepted in GF(p^k)
    #[arg(long, global = true, default_value_t = DEFAULT_EXTENSION_BOUND)]
    pub ext_bound: u32,
    /// Bound on brute-force search spaces (simplicity and isomorphism checks)
    #[arg(long, global = true)]
    pub search_bound: Option<u128>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of an element such as "y*x^2 + h"
    Normalize {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Product of two elements in normal form
    Multiply {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Residuals of the defining relations on a module
    VerifyRelations {
        #[arg(long)]
        module: String,
    },
    /// The polynomial theta_k
    Theta {
        #[arg(long)]
        k: usize,
    },
    /// Solve sigma(a) - q a = g and report Z = q(xy - a)
    Conformal,
    /// Truncated basis of the center
    Center {
        #[arg(long, default_value_t = 4)]
        max_xy: u32,
        #[arg(long, default_value_t = 8)]
        max_h: usize,
    },
    /// Domain test with zero-divisor witnesses
    Domain,
    /// Periodic orbits of alpha -> f(alpha)
    Orbits {
        /// Longest period reported (default: 1 over Q, the field order otherwise)
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// The sequence mu over a lambda orbit with mu(0) = beta
    Mu {
        /// One period of the orbit, e.g. "[1,4]"
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Values mu(-w..=w) are listed
        #[arg(long, default_value_t = 4)]
        window: i64,
    },
    /// The table nu_alpha(0..=k)
    Nu {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 6)]
        k: usize,
    },
    /// Matrices of a module such as "A(lambda=[1],beta=3,gamma=1)" or "C(alpha=0,n=1)"
    BuildModule {
        #[arg(long)]
        module: String,
    },
    /// Structural and brute-force simplicity of a module
    CheckSimple {
        #[arg(long)]
        module: String,
    },
    /// Structural and brute-force isomorphism of two modules
    CheckIso {
        #[arg(long)]
        module: String,
        #[arg(long)]
        other: String,
    },
    /// One module per isomorphism class of simple modules of a dimension
    Enumerate {
        #[arg(long)]
        dim: usize,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

struct Report {
    json: serde_json::Value,
    text: String,
}

fn report<T: Serialize>(value: &T, text: String) -> Report {
    Report { json: serde_json::to_value(value).expect("report serializes"), text }
}

/// Runs one command line (including the program name) to completion.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let json = cli.json;
    match execute(&cli) {
        Ok(r) => {
            let stdout = if json {
                let mut s = serde_json::to_string_pretty(&r.json).expect("valid json");
                s.push('\n');
                s
            } else {
                r.text
            };
            Outcome { code: EXIT_OK, stdout, stderr: String::new() }
        }
        Err(failure) => {
            let (code, name, message) = match failure {
                Failure::Usage(m) => (EXIT_USAGE, "UsageError".to_string(), m),
                Failure::Lib(e) => (exit_code(&e), e.code().to_string(), e.to_string()),
            };
            let stdout = if json {
                let body = out::ErrorReport { error: out::ErrorBody { code: name.clone(), message: message.clone() } };
                let mut s = serde_json::to_string_pretty(&body).expect("valid json");
                s.push('\n');
                s
            } else {
                String::new()
            };
            Outcome { code, stdout, stderr: format!("error [{name}]: {message}\n") }
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } | Error::InvalidField(_) | Error::ExtensionTooLarge { .. } => EXIT_USAGE,
        Error::QZero => EXIT_Q_ZERO,
        _ => EXIT_DOMAIN,
    }
}

fn algebra(cli: &Cli) -> Result<Algebra, Failure> {
    let field = Field::parse_with_bound(&cli.field, cli.ext_bound)?;
    let f = cli.f.as_deref().ok_or_else(|| Failure::Usage("--f is required".into()))?;
    let g = cli.g.as_deref().ok_or_else(|| Failure::Usage("--g is required".into()))?;
    Ok(Algebra::new(AlgebraSpec::parse(&field, &cli.q, f, g)?))
}

fn require_q_nonzero(alg: &Algebra) -> Result<(), Failure> {
    if alg.q().is_zero() {
        Err(Failure::Lib(Error::QZero))
    } else {
        Ok(())
    }
}

fn parse_list(text: &str, field: &Field) -> Result<Vec<qgha_core::FieldElement>, Failure> {
    let inner = text.trim();
    let inner = inner.strip_prefix('[').and_then(|s| s.strip_suffix(']')).unwrap_or(inner);
    Ok(inner.split(',').map(|v| parse_element(v.trim(), field)).collect::<qgha_core::Result<_>>()?)
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    let alg = algebra(cli)?;
    match &cli.command {
        Command::Normalize { expr } => {
            let u = alg.parse_element(expr)?;
            let text = format!("{u}\n");
            Ok(report(&out::Normalized { input: expr.clone(), normal_form: u.to_string(), terms: out::terms(&u) }, text))
        }
        Command::Multiply { left, right } => {
            let u = alg.parse_element(left)?;
            let v = alg.parse_element(right)?;
            let p = u.mul(&v)?;
            let text = format!("{p}\n");
            Ok(report(
                &out::Product { left: u.to_string(), right: v.to_string(), product: p.to_string(), terms: out::terms(&p) },
                text,
            ))
        }
        Command::Theta { k } => {
            let t = theta(*k, &alg)?;
            Ok(report(&out::Theta { k: *k, theta: t.to_string() }, format!("{t}\n")))
        }
        Command::Conformal => match conformal_witness(&alg)? {
            Conformality::Conformal(w) => {
                let verified = verify_z_relations(&alg, &w)?.all_zero();
                let text = format!("conformal\na = {}\nZ = {}\nrelations verified: {verified}\n", w.a, w.z);
                Ok(report(
                    &out::ConformalReport {
                        status: "conformal",
                        witness: Some(out::Witness { a: w.a.to_string(), z: w.z.to_string() }),
                        relations_verified: Some(verified),
                    },
                    text,
                ))
            }
            Conformality::NotConformal => Ok(report(
                &out::ConformalReport { status: "not_conformal", witness: None, relations_verified: None },
                "not conformal\n".into(),
            )),
        },
        Command::Center { max_xy, max_h } => {
            let basis = center_basis_truncated(&alg, *max_xy, *max_h)?;
            let rendered: Vec<String> = basis.iter().map(|z| z.to_string()).collect();
            let mut text = format!("central elements (max_xy = {max_xy}, max_h = {max_h}): {}\n", rendered.len());
            for z in &rendered {
                let _ = writeln!(text, "  {z}");
            }
            Ok(report(&out::CenterReport { status: "ok", max_xy: *max_xy, max_h: *max_h, basis: rendered }, text))
        }
        Command::Domain => match domain_check(&alg)? {
            DomainReport::IsDomain => {
                Ok(report(&out::DomainReport { status: "domain", witness: None }, "domain\n".into()))
            }
            DomainReport::ZeroDivisor(w) => {
                let product = w.left.mul(&w.right)?;
                let text = format!("zero divisors\nleft  = {}\nright = {}\nproduct = {product}\n", w.left, w.right);
                Ok(report(
                    &out::DomainReport {
                        status: "zero_divisor",
                        witness: Some(out::ZeroDivisor {
                            left: w.left.to_string(),
                            right: w.right.to_string(),
                            product: product.to_string(),
                        }),
                    },
                    text,
                ))
            }
        },
        Command::Orbits { max_len } => {
            let field = alg.field();
            let max_len = max_len.unwrap_or_else(|| field.order().map_or(1, |o| o as usize));
            let orbits = enumerate_lambda_orbits(field, alg.f(), max_len)?;
            let mut text = String::new();
            for o in &orbits {
                let _ = writeln!(text, "period {}: [{}]", o.period(), out::elems(o.values()).join(", "));
            }
            let list = out::OrbitList {
                field: field.to_string(),
                orbits: orbits
                    .iter()
                    .map(|o| out::Orbit { period: o.period(), values: out::elems(o.values()) })
                    .collect(),
            };
            Ok(report(&list, text))
        }
        Command::Mu { lambda, beta, window } => {
            require_q_nonzero(&alg)?;
            let field = alg.field();
            let orbit = LambdaOrbit::new(alg.f(), parse_list(lambda, field)?)?;
            let beta = parse_element(beta, field)?;
            let mu = MuSeq::new(&orbit, alg.q(), alg.g(), &beta)?;
            let entries = (-window..=*window)
                .map(|i| Ok(out::MuEntry { i, value: mu.value(i)?.to_string() }))
                .collect::<Result<Vec<_>, Failure>>()?;
            let mut text = format!("|lambda| = {}, |mu| = {}, Xi = {}\n", orbit.period(), mu.period(), mu.xi());
            for e in &entries {
                let _ = writeln!(text, "mu({}) = {}", e.i, e.value);
            }
            Ok(report(
                &out::MuReport {
                    period: orbit.period(),
                    values: out::elems(orbit.values()),
                    anchor: beta.to_string(),
                    mu_period: mu.period(),
                    xi: mu.xi().to_string(),
                    window: entries,
                },
                text,
            ))
        }
        Command::Nu { alpha, k } => {
            let alpha = parse_element(alpha, alg.field())?;
            let t = nu_table(&alpha, alg.q(), alg.f(), alg.g(), *k);
            let mut text = String::new();
            for (i, v) in t.values.iter().enumerate() {
                let _ = writeln!(text, "nu({i}) = {v}");
            }
            Ok(report(&out::NuReport { alpha: alpha.to_string(), values: out::elems(&t.values) }, text))
        }
        Command::BuildModule { module } => {
            let spec = parse_module(&alg, module)?;
            let m = out::module(&spec)?;
            let text = module_text(&m);
            Ok(report(&m, text))
        }
        Command::VerifyRelations { module } => {
            let spec = parse_module(&alg, module)?;
            let res = verify_relations(&build_matrix_rep(&spec)?, &alg)?;
            let all_zero = res.all_zero();
            let text = format!("{spec}: relations {}\n", if all_zero { "hold" } else { "FAIL" });
            Ok(report(
                &out::RelationsReport {
                    descriptor: spec.to_string(),
                    all_zero,
                    residuals: out::Residuals {
                        hx: out::matrix(&res.hx),
                        yh: out::matrix(&res.yh),
                        yx: out::matrix(&res.yx),
                    },
                },
                text,
            ))
        }
        Command::CheckSimple { module } => {
            let spec = parse_module(&alg, module)?;
            let cert = is_simple_structural(&spec);
            let certificate = match &cert {
                SimplicityCertificate::Quotient { lambda_period, mu_period, gamma } => {
                    format!("|lambda| = {lambda_period}, |mu| = {mu_period}, gamma = {gamma} != 0")
                }
                SimplicityCertificate::NuNonvanishing { n } => format!("nu(i) != 0 for 1 <= i < {n}"),
                SimplicityCertificate::NuVanishes { index } => format!("nu({index}) = 0"),
            };
            let bound = cli.search_bound.unwrap_or(DEFAULT_SIMPLE_SEARCH_BOUND);
            let (bruteforce, bruteforce_error) = match is_simple_bruteforce(&build_matrix_rep(&spec)?, bound) {
                Ok(b) => (Some(b), None),
                Err(e) => (None, Some(e.to_string())),
            };
            let text = format!(
                "{spec}\nstructural: {} ({certificate})\nbrute force: {}\n",
                cert.is_simple(),
                bruteforce.map_or_else(|| bruteforce_error.clone().unwrap_or_default(), |b| b.to_string())
            );
            Ok(report(
                &out::SimpleReport {
                    descriptor: spec.to_string(),
                    structural: cert.is_simple(),
                    certificate,
                    bruteforce,
                    bruteforce_error,
                },
                text,
            ))
        }
        Command::CheckIso { module, other } => {
            let s1 = parse_module(&alg, module)?;
            let s2 = parse_module(&alg, other)?;
            let structural = iso_structural(&s1, &s2)?;
            let bound = cli.search_bound.unwrap_or(DEFAULT_ISO_SEARCH_BOUND);
            let (bruteforce, bruteforce_error) =
                match iso_bruteforce(&build_matrix_rep(&s1)?, &build_matrix_rep(&s2)?, bound) {
                    Ok(b) => (Some(b), None),
                    Err(e) => (None, Some(e.to_string())),
                };
            let text = format!(
                "{s1} vs {s2}\nstructural: {structural}\nbrute force: {}\n",
                bruteforce.map_or_else(|| bruteforce_error.clone().unwrap_or_default(), |b| b.to_string())
            );
            Ok(report(
                &out::IsoReport { left: s1.to_string(), right: s2.to_string(), structural, bruteforce, bruteforce_error },
                text,
            ))
        }
        Command::Enumerate { dim } => {
            let specs = enumerate_simples(&alg, *dim)?;
            let modules = specs.iter().map(out::module).collect::<qgha_core::Result<Vec<_>>>()?;
            let mut text = format!("{} simple module(s) of dimension {dim}\n", modules.len());
            for m in &modules {
                let _ = writeln!(text, "  {}", m.descriptor);
            }
            Ok(report(&out::ModuleList { dim: *dim, count: modules.len(), modules }, text))
        }
    }
}

fn parse_module(alg: &Algebra, text: &str) -> Result<ModuleSpec, Failure> {
    let spec = ModuleSpec::parse(alg, text)?;
    if spec.mu().is_some() {
        require_q_nonzero(alg)?;
    }
    Ok(spec)
}

fn module_text(m: &out::Module) -> String {
    let mut text = format!("{} (dimension {})\n", m.descriptor, m.dim);
    for (name, mat) in [("X", &m.matrices.x), ("Y", &m.matrices.y), ("H", &m.matrices.h)] {
        let _ = writeln!(text, "{name} =");
        for row in mat {
            let _ = writeln!(text, "  [{}]", row.join(", "));
        }
    }
    text
}
