//! `toric`: toric h/g computations and identity checks on polytopes given
//! as catalog recipes or JSON files.

mod input;
mod verify;

use std::process::ExitCode;

use anyhow::bail;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use toric_core::catalog::Recipe;
use toric_core::geometry::{cone_over, parse_rational, Point};
use toric_core::localization::{localize, sample_directions, PreparedCone};
use toric_core::rigidity::rigidity_report;
use toric_core::shelling::shell;
use toric_core::toric::{
    check_dehn_sommerville, check_g_cascade, check_m_sequence_degree_two, check_ubt, flag_vector, toric_g, toric_h,
};
use toric_core::verma::check_verma_vs_polar;
use toric_core::Error;

use input::{load, Loaded};
use verify::{FaceSelector, Suite};

#[derive(Parser)]
#[command(name = "toric", version, about = "Toric h- and g-polynomials of polytopes, with exact checks")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// h, g, flag vector and basic checks.
    Gh { input: String },
    /// Flag vector `f_S` for every set of dimensions S.
    Flags { input: String },
    /// Run one check suite on an input or on the whole catalog.
    Verify {
        suite: Suite,
        input: Option<String>,
        /// Use the built-in catalog.
        #[arg(long)]
        all: bool,
        /// Faces for the monotonicity suite: `all` or `dim=k`.
        #[arg(long, default_value = "all")]
        faces: FaceSelector,
    },
    /// Line shelling and its local h-decomposition.
    Shell {
        input: String,
        /// Direction of the line, e.g. "3,-1,4".
        #[arg(long, allow_hyphen_values = true)]
        direction: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rigidity framework, stresses and the g2 cross-check.
    Rigidity { input: String },
    /// Front/back decomposition of the cone over a polytope along a direction.
    Localize {
        /// A polytope P or `cone(P)`; both mean the cone over P.
        input: String,
        /// Direction in the cone's ambient space; sampled when omitted.
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        /// Number of sampled directions when --v is omitted.
        #[arg(long, default_value_t = 24)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Multiplicities of the resolution of the cone over a polytope.
    Verma { input: String },
}

/// Whether every check of a command held.
type Verdict = bool;

fn emit(json: bool, value: &Value, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        print!("{}", text());
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn parse_vector(text: &str) -> anyhow::Result<Point> {
    let v: Point = text
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<_, _>>()?;
    Ok(v)
}

fn coefficients(p: &toric_core::Polynomial) -> String {
    let parts: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn cmd_gh(loaded: &Loaded, json: bool) -> anyhow::Result<Verdict> {
    let l = loaded.lattice();
    let h = toric_h(&l)?;
    let g = toric_g(&l)?;
    let flags = flag_vector(&l);
    let checks = [
        ("dehn_sommerville", check_dehn_sommerville(&l)?),
        ("ubt", check_ubt(&l)?),
        ("cascade", check_g_cascade(&l)?),
        ("m_sequence", check_m_sequence_degree_two(&g, l.dim())),
    ];
    let value = json!({
        "name": loaded.name,
        "dim": l.dim(),
        "f_vector": l.f_vector(),
        "h": h,
        "g": g,
        "flags": flags,
        "checks": checks.iter().map(|(k, ok)| (k.to_string(), json!(verdict(*ok)))).collect::<serde_json::Map<_, _>>(),
    });
    emit(json, &value, || {
        let mut out = format!("{} (dim {}, f = {:?})\n", loaded.name, l.dim(), l.f_vector());
        out += &format!("h = {}\ng = {}\n", coefficients(&h), coefficients(&g));
        for (k, v) in flags.iter() {
            out += &format!("f_{} = {v}\n", toric_core::toric::FlagVector::key(k));
        }
        for (k, ok) in &checks {
            out += &format!("{k}: {}\n", verdict(*ok));
        }
        out
    });
    Ok(checks.iter().all(|c| c.1))
}

fn cmd_flags(loaded: &Loaded, json: bool) -> anyhow::Result<Verdict> {
    let flags = flag_vector(&loaded.lattice());
    emit(json, &json!({ "name": loaded.name, "flags": flags }), || flags.to_string());
    Ok(true)
}

fn cmd_shell(loaded: &Loaded, direction: Option<&str>, seed: u64, json: bool) -> anyhow::Result<Verdict> {
    let p = loaded.geometric("shell")?;
    let dir = direction.map(parse_vector).transpose()?;
    let rep = shell(p, dir.as_deref(), seed)?;
    emit(json, &serde_json::to_value(&rep)?, || {
        let mut out = format!("direction ({}), {} retries\n", rep.direction.join(","), rep.retries);
        out += "step  facet  vertices             local h        running sum\n";
        for (j, s) in rep.steps.iter().enumerate() {
            out += &format!(
                "{:>4}  {:>5}  {:<20} {:<14} {}\n",
                j + 1,
                s.facet,
                format!("{:?}", s.vertices),
                coefficients(&s.local_h),
                coefficients(&s.running_sum)
            );
        }
        out += &format!("h = {}\n", coefficients(&rep.h));
        out += &format!("sum equals h: {}\n", verdict(rep.sum_matches));
        out += &format!("nonnegative: {}\n", verdict(rep.nonnegative));
        out += &format!("partial unions: {}\n", verdict(rep.proxy_ok));
        for v in &rep.violations {
            out += &format!("  {v}\n");
        }
        out
    });
    Ok(rep.passed())
}

fn cmd_rigidity(loaded: &Loaded, json: bool) -> anyhow::Result<Verdict> {
    let p = loaded.geometric("rigidity")?;
    let rep = rigidity_report(p)?;
    emit(json, &serde_json::to_value(&rep)?, || {
        let mut out = format!("dim {}, {} vertices\n", rep.dim, rep.vertices);
        out += &format!("E = {} ({} diagonals)\n", rep.edges, rep.diagonals);
        out += &format!("rank = {}\nkernel = {} (trivial motions {})\n", rep.rank, rep.kernel, rep.trivial_motions);
        out += &format!("stress dimension = {}\n", rep.stress_dimension);
        out += &format!("Euler count = {}\n", rep.euler_g2);
        if let Some(g2) = &rep.g2_recursion {
            out += &format!("g2 = {g2}\n");
        }
        out += &format!("g2 cross-check: {}\n", verdict(rep.consistent));
        out
    });
    Ok(rep.consistent)
}

fn cmd_localize(loaded: &Loaded, v: Option<&str>, samples: usize, seed: u64, json: bool) -> anyhow::Result<Verdict> {
    // `cone(P)` and `P` both name the cone over P
    let inner;
    let p = match &loaded.recipe {
        Some(Recipe::Cone(r)) => {
            inner = input::load_recipe((**r).clone())?;
            inner.geometric("localize")?
        }
        _ => loaded.geometric("localize")?,
    };
    let sigma = cone_over(p);
    let pc = PreparedCone::new(&sigma);
    let directions: Vec<Point> = match v {
        Some(text) => vec![parse_vector(text)?],
        None => sample_directions(&sigma, samples, seed),
    };
    let mut reports = Vec::new();
    for d in &directions {
        reports.push(localize(&pc, d)?);
    }
    let ok = reports.iter().all(|r| r.ok && r.violations.is_empty());
    let value = if v.is_some() { serde_json::to_value(&reports[0])? } else { serde_json::to_value(&reports)? };
    emit(json, &value, || {
        let mut out = String::new();
        for r in &reports {
            out += &format!("v = ({})\n", r.v.join(","));
            out += &format!("  back:  {:?}\n  front: {:?}\n  fixed: {:?}\n", r.back, r.front, r.fixed);
            out += &format!("  Min fixed: {:?}\n", r.min_fixed);
            out += &format!("  lhs {} rhs {} {}\n", r.lhs, r.rhs, if r.ok { "ok" } else { "VIOLATED" });
            for viol in &r.violations {
                out += &format!("  {viol}\n");
            }
        }
        out += &format!("{} direction(s): {}\n", reports.len(), verdict(ok));
        out
    });
    Ok(ok)
}

fn cmd_verma(loaded: &Loaded, json: bool) -> anyhow::Result<Verdict> {
    let l = loaded.lattice();
    if l.is_empty_polytope() {
        bail!(Error::InvalidInput("the empty polytope has no cone".into()));
    }
    let rep = check_verma_vs_polar(&l)?;
    emit(json, &serde_json::to_value(&rep)?, || {
        let mut out = "face                 cone dim  m              g(polar)       \n".to_string();
        for f in &rep.faces {
            out += &format!(
                "{:<20} {:>8}  {:<14} {:<14} {}\n",
                format!("{:?}", f.face),
                f.cone_dim,
                format!("[{}]", f.multiplicities.join(",")),
                format!("[{}]", f.polar_g.join(",")),
                verdict(f.agrees)
            );
        }
        out += &format!("top: ({}) vs ({}): {}\n", rep.top.join(","), rep.polar_top.join(","), verdict(rep.agrees));
        out
    });
    Ok(rep.agrees)
}

fn run(cli: Cli) -> anyhow::Result<Verdict> {
    let json = cli.json;
    match cli.command {
        Command::Gh { input } => cmd_gh(&load(&input)?, json),
        Command::Flags { input } => cmd_flags(&load(&input)?, json),
        Command::Verify { suite, input, all, faces } => verify::run(suite, input.as_deref(), all, &faces, json),
        Command::Shell { input, direction, seed } => cmd_shell(&load(&input)?, direction.as_deref(), seed, json),
        Command::Rigidity { input } => cmd_rigidity(&load(&input)?, json),
        Command::Localize { input, v, samples, seed } => cmd_localize(&load(&input)?, v.as_deref(), samples, seed, json),
        Command::Verma { input } => cmd_verma(&load(&input)?, json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            // a broken identity is a check failure; anything else is bad input
            match e.downcast_ref::<Error>() {
                Some(Error::Inconsistent(_)) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
