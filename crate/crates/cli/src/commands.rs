//! Dispatch of parsed command lines.

use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};
use stabnd::curves::{
    monomial_curve_equations, parse_gens, plane_curve_from_semigroup, puiseux_characteristic,
    stabilize_branch_g4, stabilize_simple_branch, validate_semigroup, Semigroup,
};
use stabnd::diagram::{cdiagram_build, fmt_rat, newton_diagram, parse_covectors, CDiagram};
use stabnd::gallery::{self, FixtureReport, Options};
use stabnd::milnor::{milnor_number, mu_nu_report, truncation_oracle_mu};
use stabnd::ndeg::{
    bivia_test, is_inner_nondegenerate, is_nondegenerate, is_weakly_nondegenerate, NdegReport,
};
use stabnd::ring::{parse_poly, Context, Field, Monomial, Poly};
use stabnd::stabilize::{basic_trick, cubic_reduction, first_failure, Decomposition, StabTrace};
use stabnd::{Error, Result};

use crate::{Cli, Command, Config, GalleryAction, Mode, MuPipeline, SemigroupAction};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    /// A mathematical negative: degenerate germ, invalid semigroup, failed
    /// certificate or expectation.
    Rejected,
    Usage,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Rejected => 1,
            Status::Usage => 2,
        }
    }
}

fn error_status(e: &Error) -> Status {
    match e {
        Error::Syntax { .. }
        | Error::UnknownVariable(_)
        | Error::DuplicateVariable(_)
        | Error::NonPrimeCharacteristic(_)
        | Error::ContextMismatch
        | Error::EmptyInput
        | Error::BadWeights
        | Error::NonPositiveCovector
        | Error::SupportOutsideDiagram(_)
        | Error::MalformedTrace(_)
        | Error::UnknownFixture(_) => Status::Usage,
        _ => Status::Rejected,
    }
}

/// Runs the command; returns the exit status and standard output. Errors
/// are reported on standard error.
pub fn run(cli: &Cli) -> (Status, String) {
    let mut out = String::new();
    match dispatch(cli, &mut out) {
        Ok(status) => (status, out),
        Err(e) => {
            eprintln!("error: {e}");
            (error_status(&e), out)
        }
    }
}

/// Identifiers in order of first appearance.
fn infer_vars(texts: &[&str]) -> Vec<String> {
    let mut vars: Vec<String> = Vec::new();
    for text in texts {
        let mut cur = String::new();
        for ch in text.chars().chain(std::iter::once(' ')) {
            if ch.is_ascii_alphanumeric() || ch == '_' {
                cur.push(ch);
            } else {
                if cur
                    .chars()
                    .next()
                    .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                    && !vars.contains(&cur)
                {
                    vars.push(cur.clone());
                }
                cur.clear();
            }
        }
    }
    vars
}

struct Ring {
    ctx: Arc<Context>,
    field: Field,
}

impl Ring {
    fn new(cfg: &Config, texts: &[&str]) -> Result<Self> {
        let field = Field::new(cfg.characteristic)?;
        let names = match &cfg.vars {
            Some(v) => v.clone(),
            None => infer_vars(texts),
        };
        if names.is_empty() {
            return Err(Error::Unsupported("no variables: pass --vars".into()));
        }
        Ok(Ring {
            ctx: Context::new(&names)?,
            field,
        })
    }

    fn parse(&self, text: &str) -> Result<Poly> {
        parse_poly(text, &self.ctx, self.field)
    }
}

fn poly_json(p: &Poly) -> Value {
    json!({ "vars": p.ctx().names(), "poly": p.to_string() })
}

fn emit(cfg: &Config, out: &mut String, v: Value, text: impl FnOnce(&mut String)) {
    if cfg.json {
        out.push_str(&serde_json::to_string_pretty(&v).expect("json value"));
        out.push('\n');
    } else {
        text(out);
    }
}

fn monomial_text(m: &Monomial, names: &[String]) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                names[i].clone()
            } else {
                format!("{}^{e}", names[i])
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn covector_text(w: &[num_rational::BigRational]) -> String {
    format!("({})", w.iter().map(fmt_rat).collect::<Vec<_>>().join(", "))
}

fn cdiagram_from(text: &str) -> Result<CDiagram> {
    cdiagram_build(&parse_covectors(text)?)
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<Status> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Diagram { poly, cdiagram } => diagram(cfg, poly, cdiagram.as_deref(), out),
        Command::Nu { poly, cdiagram } => {
            let ring = Ring::new(cfg, &[poly])?;
            let f = ring.parse(poly)?;
            let nu = match cdiagram {
                Some(c) => cdiagram_from(c)?.newton_number(),
                None => newton_diagram(&f)?.newton_number(),
            };
            let s = fmt_rat(&nu);
            emit(cfg, out, json!({ "nu": s }), |o| {
                let _ = writeln!(o, "{s}");
            });
            Ok(Status::Success)
        }
        Command::Mu { poly, pipeline } => mu(cfg, poly, *pipeline, out),
        Command::Report { poly } => {
            let ring = Ring::new(cfg, &[poly])?;
            let r = mu_nu_report(&ring.parse(poly)?)?;
            emit(cfg, out, r.to_json(), |o| {
                let _ = writeln!(o, "mu: {}", r.mu);
                let _ = writeln!(o, "nu: {}", fmt_rat(&r.nu));
                let _ = writeln!(o, "convenient: {}", r.convenient);
                let _ = writeln!(o, "non-degenerate: {}", r.nondegenerate);
                let _ = writeln!(o, "consistent: {}", r.consistent);
                let _ = writeln!(
                    o,
                    "mu = nu without non-degeneracy: {}",
                    r.equality_without_nondegeneracy
                );
            });
            Ok(if r.consistent {
                Status::Success
            } else {
                Status::Rejected
            })
        }
        Command::Ndeg {
            poly,
            mode,
            cdiagram,
        } => ndeg(cfg, poly, *mode, cdiagram.as_deref(), out),
        Command::Stabilize {
            poly,
            phi,
            k,
            trace,
        } => {
            let ring = Ring::new(cfg, &[poly, phi])?;
            let f = ring.parse(poly)?;
            let phi = ring.parse(phi)?;
            let Some(d) = Decomposition::find(&f, &phi, *k)? else {
                eprintln!("no decomposition f = g + m * phi^{k} with m, g polynomials");
                return Ok(Status::Rejected);
            };
            let (g, t) = basic_trick(&f, &d)?;
            finish_trace(cfg, &g, &t, trace.as_deref(), out)
        }
        Command::CubicReduce { poly, trace } => {
            let ring = Ring::new(cfg, &[poly])?;
            let (g, t) = cubic_reduction(&ring.parse(poly)?)?;
            finish_trace(cfg, &g, &t, trace.as_deref(), out)
        }
        Command::Verify { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Error::MalformedTrace(format!("{}: {e}", file.display())))?;
            let v: Value =
                serde_json::from_str(&text).map_err(|e| Error::MalformedTrace(e.to_string()))?;
            let t = StabTrace::from_json(&v)?;
            let failure = first_failure(&t);
            let verified = failure.is_none();
            let reason = failure.as_ref().map(|f| match f.step {
                Some(i) => format!("step {i}: {}", f.reason),
                None => f.reason.clone(),
            });
            emit(
                cfg,
                out,
                json!({ "verified": verified, "failure": reason }),
                |o| match &reason {
                    None => {
                        let _ = writeln!(o, "verified: {} steps", t.steps.len());
                    }
                    Some(r) => {
                        let _ = writeln!(o, "not verified: {r}");
                    }
                },
            );
            Ok(if verified {
                Status::Success
            } else {
                Status::Rejected
            })
        }
        Command::Semigroup { action } => semigroup(cfg, action, out),
        Command::Gallery { action } => gallery_cmd(cfg, action, out),
        Command::PrimitiveCheck { poly, ideal } => {
            let parts: Vec<&str> = ideal
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            let mut texts = vec![poly.as_str()];
            texts.extend(&parts);
            let ring = Ring::new(cfg, &texts)?;
            let f = ring.parse(poly)?;
            let gens = parts
                .iter()
                .map(|t| ring.parse(t))
                .collect::<Result<Vec<_>>>()?;
            let (prim, square) = gallery::primitive_ideal_check(&f, &gens)?;
            emit(
                cfg,
                out,
                json!({ "in_primitive": prim, "in_square": square }),
                |o| {
                    let _ = writeln!(o, "in primitive ideal: {prim}");
                    let _ = writeln!(o, "in square: {square}");
                },
            );
            Ok(Status::Success)
        }
    }
}

fn diagram(cfg: &Config, poly: &str, cdiagram: Option<&str>, out: &mut String) -> Result<Status> {
    if let Some(c) = cdiagram {
        let names: Vec<String> = cfg.vars.clone().unwrap_or_default();
        let d = cdiagram_from(c)?;
        let names = if names.len() == d.nvars() {
            names
        } else {
            (1..=d.nvars()).map(|i| format!("x{i}")).collect()
        };
        emit(cfg, out, d.to_json(&names), |o| {
            for (i, f) in d.faces().iter().enumerate() {
                let verts: Vec<String> = f.vertices.iter().map(|v| covector_text(v)).collect();
                let inner = if f.inner { " inner" } else { "" };
                let _ = writeln!(o, "face {i} (dim {}){inner}: {}", f.dim, verts.join(" "));
            }
            let _ = writeln!(o, "nu: {}", fmt_rat(&d.newton_number()));
        });
        return Ok(Status::Success);
    }
    let ring = Ring::new(cfg, &[poly])?;
    let f = ring.parse(poly)?;
    let d = newton_diagram(&f)?;
    let names = f.ctx().names().to_vec();
    emit(cfg, out, d.to_json(), |o| {
        for (i, face) in d.faces().iter().enumerate() {
            let pts: Vec<String> = face
                .points
                .iter()
                .map(|m| monomial_text(m, &names))
                .collect();
            let inner = if face.is_inner() { " inner" } else { "" };
            let _ = writeln!(
                o,
                "face {i} (dim {}){inner}: {} covector {}",
                face.dim,
                pts.join(" "),
                covector_text(&face.covector)
            );
        }
        let _ = writeln!(o, "convenient: {}", d.is_convenient());
        let _ = writeln!(o, "nu: {}", fmt_rat(&d.newton_number()));
    });
    Ok(Status::Success)
}

fn mu(cfg: &Config, poly: &str, pipeline: MuPipeline, out: &mut String) -> Result<Status> {
    let ring = Ring::new(cfg, &[poly])?;
    let f = ring.parse(poly)?;
    let sb = matches!(pipeline, MuPipeline::StandardBasis | MuPipeline::Both)
        .then(|| milnor_number(&f))
        .transpose()?;
    let tr = matches!(pipeline, MuPipeline::Oracle | MuPipeline::Both)
        .then(|| truncation_oracle_mu(&f, 1, cfg.cap))
        .transpose()?;
    let agree = match (&sb, &tr) {
        (Some(a), Some(b)) => a.mu == b.mu,
        _ => true,
    };
    let value = sb
        .as_ref()
        .or(tr.as_ref())
        .map(|r| r.mu.to_string())
        .unwrap_or_default();
    let v = json!({
        "mu": value,
        "standard_basis": sb.as_ref().map(|r| r.to_json()),
        "truncation_oracle": tr.as_ref().map(|r| r.to_json()),
        "agree": agree,
    });
    emit(cfg, out, v, |o| {
        if let (Some(a), Some(b)) = (&sb, &tr) {
            let _ = writeln!(o, "standard basis: {}", a.mu);
            let _ = writeln!(
                o,
                "truncation oracle: {} (certified at N = {})",
                b.mu,
                b.certified_at.unwrap_or(0)
            );
        } else {
            let _ = writeln!(o, "{value}");
        }
    });
    Ok(if agree {
        Status::Success
    } else {
        Status::Rejected
    })
}

fn ndeg(
    cfg: &Config,
    poly: &str,
    mode: Mode,
    cdiagram: Option<&str>,
    out: &mut String,
) -> Result<Status> {
    let ring = Ring::new(cfg, &[poly])?;
    let f = ring.parse(poly)?;
    if mode == Mode::Bivia {
        let b = bivia_test(&f, cfg.trials, cfg.seed)?;
        let v = json!({
            "mode": "bivia",
            "verdict": b.verdict,
            "multiplicity": b.multiplicity,
            "volume_term": fmt_rat(&b.volume_term),
        });
        emit(cfg, out, v, |o| {
            let _ = writeln!(o, "verdict: {}", b.verdict);
            let _ = writeln!(o, "multiplicity: {}", b.multiplicity);
            let _ = writeln!(o, "n! V_n: {}", fmt_rat(&b.volume_term));
        });
        return Ok(if b.verdict {
            Status::Success
        } else {
            Status::Rejected
        });
    }
    let names = f.ctx().names().to_vec();
    let (report, faces): (NdegReport, Vec<String>) = match mode {
        Mode::Kouchnirenko | Mode::Weak => {
            let r = if mode == Mode::Weak {
                is_weakly_nondegenerate(&f)?
            } else {
                is_nondegenerate(&f)?
            };
            let d = newton_diagram(&f)?;
            let faces = d
                .faces()
                .iter()
                .map(|fc| {
                    fc.points
                        .iter()
                        .map(|m| monomial_text(m, &names))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            (r, faces)
        }
        Mode::Inner => {
            let cd = match cdiagram {
                Some(c) => cdiagram_from(c)?,
                None => newton_diagram(&f)?.natural_cdiagram()?,
            };
            let r = is_inner_nondegenerate(&f, &cd)?;
            let faces = cd
                .faces()
                .iter()
                .map(|fc| {
                    fc.vertices
                        .iter()
                        .map(|v| covector_text(v))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            (r, faces)
        }
        Mode::Bivia => unreachable!(),
    };
    let mut v = report.to_json();
    for fc in v["faces"].as_array_mut().into_iter().flatten() {
        let id = fc["id"].as_u64().unwrap_or(0) as usize;
        fc["face"] = json!(faces.get(id));
    }
    emit(cfg, out, v, |o| {
        let _ = writeln!(o, "verdict: {}", report.verdict);
        if let Some(x) = report.axis_excluded_verdict {
            let _ = writeln!(o, "verdict without axis vertices: {x}");
        }
        for fc in report.failing() {
            let witness = fc.witness.as_ref().map(|w| {
                w.iter()
                    .map(|&i| names[i].clone())
                    .collect::<Vec<_>>()
                    .join(", ")
            });
            let _ = writeln!(
                o,
                "failing face {}: {} (zero with nonzero {})",
                fc.id,
                faces.get(fc.id).map(String::as_str).unwrap_or("?"),
                witness.unwrap_or_default()
            );
        }
    });
    Ok(if report.verdict {
        Status::Success
    } else {
        Status::Rejected
    })
}

fn finish_trace(
    cfg: &Config,
    g: &Poly,
    t: &StabTrace,
    file: Option<&std::path::Path>,
    out: &mut String,
) -> Result<Status> {
    let verified = first_failure(t).is_none();
    if let Some(path) = file {
        let text = serde_json::to_string_pretty(&t.to_json()).expect("json value");
        std::fs::write(path, text + "\n")
            .map_err(|e| Error::Unsupported(format!("{}: {e}", path.display())))?;
    }
    let v = json!({ "output": poly_json(g), "verified": verified, "steps": t.steps.len(), "trace": t.to_json() });
    emit(cfg, out, v, |o| {
        let _ = writeln!(o, "{g}");
        let _ = writeln!(o, "variables: {}", g.ctx().names().join(", "));
        let _ = writeln!(o, "steps: {}, verified: {verified}", t.steps.len());
    });
    Ok(if verified {
        Status::Success
    } else {
        Status::Rejected
    })
}

fn load_semigroup(cfg: &Config, text: &str, out: &mut String) -> Result<Option<Semigroup>> {
    let gens = parse_gens(text)?;
    match validate_semigroup(&gens) {
        Ok(s) => Ok(Some(s)),
        Err(r) => {
            let v = json!({ "valid": false, "rejection": serde_json::to_value(&r).expect("json value"), "reason": r.to_string() });
            emit(cfg, out, v, |o| {
                let _ = writeln!(o, "rejected: {r}");
            });
            Ok(None)
        }
    }
}

fn list(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
}

fn semigroup(cfg: &Config, action: &SemigroupAction, out: &mut String) -> Result<Status> {
    let gens = match action {
        SemigroupAction::Validate(g)
        | SemigroupAction::Puiseux(g)
        | SemigroupAction::Equations(g)
        | SemigroupAction::PlaneCurve(g)
        | SemigroupAction::Stabilize { gens: g, .. } => &g.gens,
    };
    let Some(s) = load_semigroup(cfg, gens, out)? else {
        return Ok(Status::Rejected);
    };
    match action {
        SemigroupAction::Validate(_) => {
            let mut v = s.to_json();
            v["valid"] = true.into();
            v["genus"] = s.genus().into();
            v["conductor"] = s.conductor().into();
            emit(cfg, out, v, |o| {
                let _ = writeln!(o, "valid: <{}>", list(&s.gens));
                let _ = writeln!(o, "genus: {}", s.genus());
                let _ = writeln!(o, "e: {}", list(&s.e));
                let _ = writeln!(o, "n: {}", list(&s.n));
                for (i, row) in s.l.iter().enumerate() {
                    let _ = writeln!(o, "l({}): {}", i + 1, list(row));
                }
                let _ = writeln!(o, "conductor: {}", s.conductor());
                if !s.ambiguous_rows.is_empty() {
                    let rows: Vec<String> = s.ambiguous_rows.iter().map(usize::to_string).collect();
                    let _ = writeln!(o, "ambiguous decompositions in rows: {}", rows.join(", "));
                }
            });
        }
        SemigroupAction::Puiseux(_) => {
            let p = puiseux_characteristic(&s);
            let v = serde_json::to_value(&p).expect("json value");
            emit(cfg, out, v, |o| {
                let _ = writeln!(
                    o,
                    "characteristic: ({}; {})",
                    p.characteristic[0],
                    list(&p.characteristic[1..])
                );
                let pairs: Vec<String> =
                    p.pairs.iter().map(|(m, n)| format!("({m}, {n})")).collect();
                let _ = writeln!(o, "pairs: {}", pairs.join(" "));
            });
        }
        SemigroupAction::Equations(_) => {
            let eqs = monomial_curve_equations(&s);
            let v = json!({ "vars": eqs.first().map(|e| e.ctx().names().to_vec()), "equations": eqs.iter().map(|e| e.to_string()).collect::<Vec<_>>() });
            emit(cfg, out, v, |o| {
                for e in &eqs {
                    let _ = writeln!(o, "{e}");
                }
            });
        }
        SemigroupAction::PlaneCurve(_) => {
            let f = plane_curve_from_semigroup(&s);
            let v = json!({ "curve": poly_json(&f), "conductor": s.conductor() });
            emit(cfg, out, v, |o| {
                let _ = writeln!(o, "{f}");
            });
        }
        SemigroupAction::Stabilize { trace, .. } => {
            let (g, t) = if s.is_simple() {
                stabilize_simple_branch(&s)?
            } else {
                stabilize_branch_g4(&s)?
            };
            let verified = first_failure(&t).is_none();
            let mu_curve = milnor_number(&t.input)?.mu;
            let mu_form = milnor_number(&g)?.mu;
            let expected = s.conductor();
            let ok = verified
                && mu_curve.finite() == Some(expected)
                && mu_form.finite() == Some(expected);
            if let Some(path) = trace {
                let text = serde_json::to_string_pretty(&t.to_json()).expect("json value");
                std::fs::write(path, text + "\n")
                    .map_err(|e| Error::Unsupported(format!("{}: {e}", path.display())))?;
            }
            let v = json!({
                "curve": poly_json(&t.input),
                "output": poly_json(&g),
                "verified": verified,
                "conductor": expected,
                "mu_curve": mu_curve.to_string(),
                "mu_output": mu_form.to_string(),
            });
            emit(cfg, out, v, |o| {
                let _ = writeln!(o, "{g}");
                let _ = writeln!(o, "curve: {}", t.input);
                let _ = writeln!(o, "trace verified: {verified}");
                let _ = writeln!(
                    o,
                    "mu(curve) = {mu_curve}, mu(output) = {mu_form}, conductor = {expected}"
                );
            });
            return Ok(if ok {
                Status::Success
            } else {
                Status::Rejected
            });
        }
    }
    Ok(Status::Success)
}

fn reports_out(cfg: &Config, reports: &[FixtureReport], out: &mut String) -> Status {
    let v = Value::Array(reports.iter().map(FixtureReport::to_json).collect());
    emit(cfg, out, v, |o| {
        for r in reports {
            o.push_str(&r.to_text());
        }
    });
    if reports.iter().all(FixtureReport::passed) {
        Status::Success
    } else {
        Status::Rejected
    }
}

fn gallery_cmd(cfg: &Config, action: &GalleryAction, out: &mut String) -> Result<Status> {
    let opts = Options { seed: cfg.seed };
    match action {
        GalleryAction::List => {
            let v = Value::Array(
                gallery::fixtures()
                    .iter()
                    .map(|f| json!({ "name": f.name, "summary": f.summary }))
                    .collect(),
            );
            emit(cfg, out, v, |o| {
                for f in gallery::fixtures() {
                    let _ = writeln!(o, "{:<28} {}", f.name, f.summary);
                }
            });
            Ok(Status::Success)
        }
        GalleryAction::Run { name } => {
            let r = gallery::run_fixture(name, &opts)?;
            Ok(reports_out(cfg, &[r], out))
        }
        GalleryAction::RunAll => Ok(reports_out(cfg, &gallery::run_all(&opts), out)),
    }
}
