//! Command-line front end. `run` is pure apart from file I/O so tests can
//! drive it in-process.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::AlgebraOrder3;
use crate::catalog::{self, RepAction};
use crate::contraction::{self, ContractionExponents};
use crate::deformation::{self, DEFAULT_ORDER};
use crate::error::{Error, Result};
use crate::json::{self, AlgebraJson, SeriesJson};
use crate::rep;
use crate::scalar::GaussRational as Q;
use crate::solver;

/// Environment variable overriding the default truncation order.
pub const TRUNC_ENV: &str = "ORDER3_TRUNC";

#[derive(Parser, Debug)]
#[command(name = "order3", version, about = "Exact computations with Lie algebras of order 3")]
pub struct Cli {
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List or export catalog algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Check J1-J4.
    Validate(AlgArg),
    /// Solve for all equivariant 3-brackets over a g0 and a representation.
    Solve {
        #[arg(long)]
        g0: String,
        /// e.g. `D2`, `D1+D1+D0`, `D1,1`.
        #[arg(long)]
        rep: String,
    },
    /// Contract an algebra along a diagonal exponent vector or a curve.
    Contract {
        #[command(flatten)]
        alg: AlgArg,
        /// `a1,..,am;b1,..,bn`; a list with one entry is repeated.
        #[arg(long, conflicts_with = "curve", required_unless_present = "curve")]
        exps: Option<String>,
        /// JSON file with `h0`, `h1` as Laurent entries.
        #[arg(long)]
        curve: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Formal deformations.
    Deform {
        #[command(subcommand)]
        action: DeformAction,
    },
    /// Linear cocycles and coboundaries.
    Cocycles(AlgArg),
    /// Character and decomposition of a representation.
    Character(RepArg),
    /// Symmetric, mixed and alternating cubes of a representation.
    Plethysm(RepArg),
    /// Kernel filtration of a nilpotent translation action.
    Filtration {
        /// One of vector_plus_scalar, spinor_pair, spinor_triple.
        #[arg(long)]
        ext: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    List,
    Export {
        name: String,
        /// Comma-separated scalars.
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum DeformAction {
    /// Check the deformation equations of a series file.
    Check {
        #[arg(long)]
        series: PathBuf,
    },
    /// The deformation of the contracted so(2,3) algebra.
    Poincare {
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct AlgArg {
    /// Catalog name or path to an algebra JSON file.
    #[arg(long)]
    pub alg: String,
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
}

#[derive(Args, Debug)]
pub struct RepArg {
    #[arg(long, default_value = "sl2")]
    pub g0: String,
    #[arg(long)]
    pub rep: String,
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Out {
    text: String,
    json: Value,
}

fn parse_params(s: Option<&str>) -> Result<Vec<Q>> {
    match s {
        None => Ok(Vec::new()),
        Some(s) if s.trim().is_empty() => Ok(Vec::new()),
        Some(s) => s.split(',').map(|x| x.trim().parse::<Q>()).collect(),
    }
}

fn load_algebra(a: &AlgArg) -> Result<AlgebraOrder3> {
    let params = parse_params(a.params.as_deref())?;
    if catalog::CATALOG.iter().any(|(n, _)| *n == a.alg) {
        return catalog::build(&a.alg, &params);
    }
    let p = Path::new(&a.alg);
    if p.exists() {
        return json::parse_algebra(p);
    }
    Err(Error::UnknownName(a.alg.clone()))
}

fn write_file(path: &Path, s: &str) -> Result<()> {
    std::fs::write(path, format!("{}\n", s)).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))
}

fn default_order() -> Result<usize> {
    match std::env::var(TRUNC_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::BadParams(format!("{}={:?} is not a nonnegative integer", TRUNC_ENV, v))),
        Err(_) => Ok(DEFAULT_ORDER),
    }
}

fn alg_json(a: &AlgebraOrder3) -> Value {
    serde_json::to_value(AlgebraJson::from_algebra(a)).expect("serializable")
}

fn validate(alg: &AlgebraOrder3) -> Out {
    let r = alg.jacobi_residuals();
    let counts = r.counts();
    let text = match r.first_violation() {
        None => format!("{} ({}+{}): J1-J4: all residuals zero", alg.label, alg.m(), alg.n()),
        Some(v) => format!(
            "{} ({}+{}): nonzero residual entries J1={} J2={} J3={} J4={}\nfirst: {}",
            alg.label,
            alg.m(),
            alg.n(),
            counts[0],
            counts[1],
            counts[2],
            counts[3],
            v
        ),
    };
    Out {
        text,
        json: json!({
            "label": alg.label,
            "dims": [alg.m(), alg.n()],
            "valid": r.is_zero(),
            "residual_counts": counts,
            "first_violation": r.first_violation(),
        }),
    }
}

fn solve(g0_name: &str, rep_spec: &str) -> Result<Out> {
    let g0 = catalog::build_g0(g0_name)?;
    let rep: RepAction = catalog::build_rep(g0_name, rep_spec)?;
    let sol = solver::solve_brackets(&g0, &rep)?;
    let base = rep.to_algebra(&g0, &format!("{} + {}", g0_name, rep_spec));
    let algs: Vec<AlgebraOrder3> = (0..sol.nullity).map(|k| sol.algebra(&base, k)).collect();
    let mut text = format!(
        "{} over {}: {} unknowns, rank {}, nullity {}",
        rep_spec, g0_name, sol.unknown_count, sol.rank, sol.nullity
    );
    for (k, v) in sol.basis.iter().enumerate() {
        text.push_str(&format!("\nbasis {}:", k + 1));
        for (&(a, b, c, i), x) in v {
            text.push_str(&format!(" E({},{},{};{})={}", a + 1, b + 1, c + 1, i + 1, x));
        }
    }
    Ok(Out {
        text,
        json: json!({
            "g0": g0_name,
            "rep": rep_spec,
            "unknowns": sol.unknown_count,
            "rank": sol.rank,
            "nullity": sol.nullity,
            "basis": algs.iter().map(alg_json).collect::<Vec<_>>(),
        }),
    })
}

fn contract(a: &AlgArg, exps: Option<&str>, curve: Option<&Path>, out: Option<&Path>) -> Result<Out> {
    let alg = load_algebra(a)?;
    let (lim, how, degrees) = match (exps, curve) {
        (Some(e), _) => {
            let mut ex = ContractionExponents::parse(e)?;
            if ex.a.len() == 1 {
                ex.a = vec![ex.a[0].clone(); alg.m()];
            }
            if ex.b.len() == 1 {
                ex.b = vec![ex.b[0].clone(); alg.n()];
            }
            let deg = contraction::ww_degrees(&alg, &ex)?;
            let lim = contraction::ww_contract(&alg, &ex)?;
            let survive = deg.count_with_degree(&num_traits::Zero::zero());
            (lim, format!("exponents {}", ex), Some(survive))
        }
        (None, Some(p)) => {
            let s = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {}", p.display(), e)))?;
            let h = contraction::parse_curve(&s)
                .map_err(|e| Error::Malformed(format!("{}: {}", p.display(), e)))?;
            (contraction::curve_contract(&alg, &h)?, format!("curve {}", p.display()), None)
        }
        (None, None) => return Err(Error::BadParams("one of --exps, --curve is required".into())),
    };
    let lim = lim.with_label(format!("{} contracted", alg.label));
    if let Some(p) = out {
        write_file(p, &json::algebra_to_string(&lim))?;
    }
    let named = catalog::CATALOG
        .iter()
        .filter(|(n, _)| !["F11", "sl2red"].contains(n))
        .find_map(|(n, _)| {
            let c = catalog::build(n, &[]).ok()?;
            (c.dims() == lim.dims()
                && c.c_entries() == lim.c_entries()
                && c.d_entries() == lim.d_entries()
                && c.e_entries() == lim.e_entries())
            .then(|| n.to_string())
        });
    let mut text = format!(
        "{} along {}: limit exists, {} nonzero constants survive",
        alg.label,
        how,
        lim.support_size()
    );
    if let Some(n) = &named {
        text.push_str(&format!("\nlimit equals catalog algebra {}", n));
    }
    if out.is_none() {
        text.push('\n');
        text.push_str(&json::algebra_to_string(&lim));
    }
    Ok(Out {
        text,
        json: json!({
            "source": alg.label,
            "method": how,
            "degree_zero_count": degrees,
            "equals_catalog": named,
            "limit": alg_json(&lim),
        }),
    })
}

fn residual_json(r: &deformation::OrderResidual) -> Value {
    json!({
        "order": r.r,
        "nonzero": r.circles.iter().map(|c| c.values.len()).collect::<Vec<_>>(),
        "first": r.circles.iter().find_map(|c| c.first()),
    })
}

fn deform_report(s: &deformation::DeformationSeries, extra: Option<String>) -> Result<Out> {
    let res = deformation::deformation_residuals(s)?;
    let bad: Vec<&deformation::OrderResidual> = res.iter().filter(|r| !r.is_zero()).collect();
    let mut text = format!(
        "series over {} ({}+{}), {} terms, truncation order {}",
        s.base.label,
        s.base.m(),
        s.base.n(),
        s.terms.len(),
        s.order
    );
    if bad.is_empty() {
        text.push_str(&format!("\nresiduals zero for r = 0..{}", res.len() - 1));
    } else {
        for r in &bad {
            text.push_str(&format!(
                "\nr = {}: {}",
                r.r,
                r.circles.iter().find_map(|c| c.first()).unwrap_or_default()
            ));
        }
    }
    if let Some(e) = &extra {
        text.push('\n');
        text.push_str(e);
    }
    Ok(Out {
        text,
        json: json!({
            "base": s.base.label,
            "order": s.order,
            "terms": s.terms.len(),
            "residuals": res.iter().map(residual_json).collect::<Vec<_>>(),
            "is_deformation": bad.is_empty(),
            "note": extra,
        }),
    })
}

fn deform(action: &DeformAction) -> Result<(Out, bool)> {
    match action {
        DeformAction::Check { series } => {
            let s = std::fs::read_to_string(series)
                .map_err(|e| Error::Io(format!("{}: {}", series.display(), e)))?;
            let j: SeriesJson = serde_json::from_str(&s)
                .map_err(|e| Error::Malformed(format!("{}: {}", series.display(), e)))?;
            let data = j.to_series()?;
            let out = deform_report(&data, None)?;
            let ok = out.json["is_deformation"].as_bool().unwrap_or(false);
            Ok((out, ok))
        }
        DeformAction::Poincare { order, out } => {
            let order = match order {
                Some(o) => *o,
                None => default_order()?,
            };
            let s = deformation::build_poincare_deformation(order);
            if let Some(p) = out {
                let j = serde_json::to_string_pretty(&SeriesJson::from_series(&s)).expect("serializable");
                write_file(p, &j)?;
            }
            let at1 = deformation::relabel_poincare_to_so23(&deformation::evaluate_series(&s, &Q::from_int(1)))?;
            let so23 = catalog::so23_order3();
            let note = format!("value at t = 1 equals so23_order3: {}", at1 == so23);
            let rep = deform_report(&s, Some(note))?;
            let ok = rep.json["is_deformation"].as_bool().unwrap_or(false) && at1 == so23;
            Ok((rep, ok))
        }
    }
}

fn cocycles(alg: &AlgebraOrder3) -> Result<Out> {
    let r = deformation::cocycle_spaces(alg)?;
    let text = format!(
        "{}: {} cochain coordinates\nlinear cocycles (phi o psi + psi o phi = 0): {}\ncoboundaries: {} (contained in linear cocycles: {})\nlinear cocycles mod coboundaries: {} (linear conditions only)\nlinear cocycle basis vectors with psi o psi = 0: {}",
        alg.label, r.unknowns, r.dim_z2_linear, r.dim_b2, r.b2_in_z2, r.dim_h2_linear, r.quadratic_zero
    );
    Ok(Out {
        text,
        json: json!({
            "label": alg.label,
            "unknowns": r.unknowns,
            "z2_linear": r.dim_z2_linear,
            "b2": r.dim_b2,
            "b2_in_z2": r.b2_in_z2,
            "h2_linear": r.dim_h2_linear,
            "quadratic_zero_basis_vectors": r.quadratic_zero,
        }),
    })
}

fn rep_character(a: &RepArg) -> Result<(rep::CharacterPoly, bool)> {
    let r = catalog::build_rep(&a.g0, &a.rep)?;
    match a.g0.as_str() {
        "sl2" => Ok((rep::character_sl2(&r)?, true)),
        "sl2sl2" => Ok((rep::character_sl2sl2(&r)?, false)),
        "iso13c" => Ok((rep::character(&r, &[1, 4])?, false)),
        other => Err(Error::UnknownName(format!("g0 {}", other))),
    }
}

fn character(a: &RepArg) -> Result<Out> {
    let (chi, _) = rep_character(a)?;
    let dec = rep::decompose(&chi)?;
    Ok(Out {
        text: format!("{} over {}: dim {}\ncharacter {}\ndecomposition {}", a.rep, a.g0, chi.dim(), chi, dec),
        json: json!({
            "g0": a.g0,
            "rep": a.rep,
            "dim": chi.dim(),
            "character": chi.to_string(),
            "decomposition": dec.to_string(),
        }),
    })
}

fn plethysm(a: &RepArg) -> Result<Out> {
    let (chi, _) = rep_character(a)?;
    let p = rep::plethysm_cube(&chi)?;
    let parts = [("sym3", &p.sym3), ("mixed", &p.mixed), ("alt3", &p.alt3)];
    let mut text = format!("{} over {}", a.rep, a.g0);
    let mut j = serde_json::Map::new();
    for (name, c) in parts {
        let d = rep::decompose(c)?;
        text.push_str(&format!("\n{}: dim {} = {}", name, c.dim(), d));
        j.insert(name.into(), json!({"dim": c.dim(), "decomposition": d.to_string()}));
    }
    j.insert("g0".into(), json!(a.g0));
    j.insert("rep".into(), json!(a.rep));
    Ok(Out { text, json: Value::Object(j) })
}

fn filtration(ext: &str) -> Result<Out> {
    let r = catalog::nilpotent_extension(ext)?;
    let f = rep::nilpotent_filtration(&r)?;
    let mut text = format!("{}: dim {}, filtration length {}", ext, r.dim, f.length());
    let mut steps = Vec::new();
    for p in 0..f.length() {
        text.push_str(&format!(
            "\nA{}: dim {}, B{}: dim {}, invariant {}, B in A{} {}, components agree {}",
            p + 1,
            f.a[p].dim(),
            p + 1,
            f.b[p].dim(),
            f.module_invariant[p],
            p,
            f.b_in_previous[p],
            f.b_components_agree[p]
        ));
        steps.push(json!({
            "p": p + 1,
            "dim_a": f.a[p].dim(),
            "dim_b": f.b[p].dim(),
            "invariant": f.module_invariant[p],
            "b_in_previous": f.b_in_previous[p],
            "b_components_agree": f.b_components_agree[p],
        }));
    }
    Ok(Out {
        text,
        json: json!({"extension": ext, "dim": r.dim, "steps": steps}),
    })
}

fn dispatch(cli: &Cli) -> Result<(Out, bool)> {
    let ok = |o: Out| Ok((o, true));
    match &cli.command {
        Command::Catalog { action: CatalogAction::List } => {
            let mut text = String::new();
            for (n, d) in catalog::CATALOG {
                text.push_str(&format!("{:<14}{}\n", n, d));
            }
            text.pop();
            let j: Vec<Value> = catalog::CATALOG.iter().map(|(n, d)| json!({"name": n, "about": d})).collect();
            ok(Out { text, json: json!({ "catalog": j }) })
        }
        Command::Catalog { action: CatalogAction::Export { name, params, out } } => {
            let alg = catalog::build(name, &parse_params(params.as_deref())?)?;
            let s = json::algebra_to_string(&alg);
            let text = match out {
                Some(p) => {
                    write_file(p, &s)?;
                    format!("wrote {} to {}", name, p.display())
                }
                None => s,
            };
            ok(Out { text, json: alg_json(&alg) })
        }
        Command::Validate(a) => {
            let alg = load_algebra(a)?;
            let o = validate(&alg);
            let valid = o.json["valid"].as_bool().unwrap_or(false);
            Ok((o, valid))
        }
        Command::Solve { g0, rep } => ok(solve(g0, rep)?),
        Command::Contract { alg, exps, curve, out } => {
            ok(contract(alg, exps.as_deref(), curve.as_deref(), out.as_deref())?)
        }
        Command::Deform { action } => deform(action),
        Command::Cocycles(a) => ok(cocycles(&load_algebra(a)?)?),
        Command::Character(a) => ok(character(a)?),
        Command::Plethysm(a) => ok(plethysm(a)?),
        Command::Filtration { ext } => ok(filtration(ext)?),
    }
}

fn render(out: &Out, as_json: bool, status: &str) -> String {
    if as_json {
        let j = json!({"status": status, "report": out.json});
        format!("{}\n", serde_json::to_string_pretty(&j).expect("serializable"))
    } else {
        format!("{}\n", out.text)
    }
}

/// Runs one invocation. `args[0]` is the program name.
pub fn run<I, S>(args: I) -> Report
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let s = e.render().to_string();
            return if code == 0 {
                Report { code, stdout: s, stderr: String::new() }
            } else {
                Report { code, stdout: String::new(), stderr: s }
            };
        }
    };
    match dispatch(&cli) {
        Ok((out, true)) => Report { code: 0, stdout: render(&out, cli.json, "ok"), stderr: String::new() },
        Ok((out, false)) => Report { code: 1, stdout: render(&out, cli.json, "error"), stderr: String::new() },
        Err(e) => {
            let stdout = if cli.json {
                let j = json!({"status": "error", "error": e.to_string()});
                format!("{}\n", serde_json::to_string_pretty(&j).expect("serializable"))
            } else {
                String::new()
            };
            Report { code: 1, stdout, stderr: format!("error: {}\n", e) }
        }
    }
}
