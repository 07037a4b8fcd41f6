//! `tropgrob` — initial forms, Gröbner complexes and tropical varieties from
//! problem files.
//!
//! Results go to stdout as text (initial forms) or JSON; `--svg` also writes a
//! picture of planar complexes. Exit codes: 0 ok, 2 input error, 3 internal
//! inconsistency, 4 resource cap.

mod problem;
mod svg;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::warn;
use serde_json::{json, Value};

use tropgrob::grobner_complex::{format_ideal, groebner_complex, ComplexOptions, Mode};
use tropgrob::ideal_graded::{GradedPieces, HomogeneousIdeal};
use tropgrob::polyhedra::json::vector_json;
use tropgrob::polyhedra::PolyhedralComplex;
use tropgrob::poly::{homogenized_names, Mono, RPoly};
use tropgrob::tropical::{
    homogenize_laurent, prevariety, tropical_basis, tropicalize, trop_hypersurface, verify_tropical_basis, LaurentIdeal,
};
use tropgrob::{Error, Rational};

use problem::{format_problem, parse_problem, Problem};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) => e.exit_code() as u8,
            CliError::Io(..) => 2,
        }
    }
}

type Res<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "tropgrob", version, about = "Initial ideals, Gröbner complexes and tropical varieties over valued fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Parse a problem file and print it back in canonical form.
    Print {
        file: PathBuf,
    },
    /// Print in_w(f) for every polynomial and weight.
    InitialForm(Common),
    /// Print in_w(I) degree by degree for a homogeneous ideal.
    InitialIdeal(Common),
    /// Gröbner complex of a homogeneous ideal as JSON.
    GroebnerComplex(Common),
    /// Tropical hypersurface of each polynomial.
    TropHypersurface(Common),
    /// Tropical variety of the ideal generated by the polynomials.
    Tropicalize(Common),
    /// A tropical basis of the ideal, with certificates.
    TropicalBasis(Common),
    /// Check whether a candidate set is a tropical basis of the ideal.
    VerifyBasis {
        #[command(flatten)]
        common: Common,
        /// Problem file whose polynomials form the candidate set; defaults to
        /// the ideal's own generators.
        #[arg(long)]
        candidate: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Problem file.
    file: PathBuf,
    /// Weight vector, e.g. `1,1/2,0`; replaces the file's weights. Repeatable.
    #[arg(long, allow_hyphen_values = true)]
    weight: Vec<String>,
    /// Degree bound D.
    #[arg(short = 'D', long = "degree")]
    degree: Option<usize>,
    /// Extra degrees used when saturating by the variables.
    #[arg(long)]
    slack: Option<usize>,
    /// Gröbner complex construction: state, traversal or both.
    #[arg(long)]
    mode: Option<String>,
    /// Seed for the traversal start point.
    #[arg(long)]
    seed: Option<u64>,
    /// Also write an SVG picture of the complex (projected modulo lineality).
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Recompute with D+1 and fail if the answer changes.
    #[arg(long)]
    gen_check: bool,
}

struct Ctx {
    problem: Problem,
    opts: ComplexOptions,
    degree: Option<usize>,
    slack: usize,
    svg: Option<PathBuf>,
    gen_check: bool,
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn load(c: &Common) -> Res<Ctx> {
    let mut problem = parse_problem(&read(&c.file)?)?;
    if !c.weight.is_empty() {
        problem.weights = c
            .weight
            .iter()
            .map(|w| {
                let v = tropgrob::parse::parse_rational_list(w)?;
                tropgrob::poly::check_arity(problem.names.len(), v.len())?;
                Ok(v)
            })
            .collect::<Result<_, Error>>()?;
    }
    let o = &problem.options;
    let mode: Mode = c.mode.as_deref().or(o.mode.as_deref()).unwrap_or("traversal").parse()?;
    let mut opts = ComplexOptions { mode, seed: c.seed.or(o.seed).unwrap_or(0), ..ComplexOptions::default() };
    if let Ok(cap) = std::env::var("TROPGROB_CAP") {
        opts.minor_cap = cap.trim().parse().map_err(|_| Error::Parse(format!("TROPGROB_CAP must be an integer, got {cap}")))?;
    }
    Ok(Ctx {
        degree: c.degree.or(o.degree),
        slack: c.slack.or(o.slack).unwrap_or(2),
        problem,
        opts,
        svg: c.svg.clone(),
        gen_check: c.gen_check,
    })
}

fn write_svg(ctx: &Ctx, cx: &PolyhedralComplex, labels: bool) -> Res<()> {
    if let Some(path) = &ctx.svg {
        let doc = svg::render_complex(cx, labels)?;
        std::fs::write(path, doc).map_err(|e| CliError::Io(path.clone(), e))?;
    }
    Ok(())
}

fn weights(ctx: &Ctx) -> Res<&[Vec<Rational>]> {
    if ctx.problem.weights.is_empty() {
        return Err(Error::Parse("no weight given (use a `weight` line or --weight)".into()).into());
    }
    Ok(&ctx.problem.weights)
}

fn homogeneous(ctx: &Ctx) -> Res<HomogeneousIdeal> {
    let p = &ctx.problem;
    Ok(HomogeneousIdeal::new(p.field, p.names.len(), p.polys.clone())?)
}

fn laurent(ctx: &Ctx) -> Res<LaurentIdeal> {
    let p = &ctx.problem;
    Ok(LaurentIdeal::new(p.field, p.names.len(), p.polys.clone())?)
}

/// D from the file or flags, else one more than the largest generator degree.
fn degree_or(ctx: &Ctx, max_gen: usize) -> usize {
    ctx.degree.unwrap_or(max_gen + 1)
}

fn minimal_monomials(all: &[Mono]) -> Vec<Mono> {
    let mut sorted: Vec<&Mono> = all.iter().collect::<BTreeSet<_>>().into_iter().collect();
    sorted.sort_by_key(|u| (u.iter().sum::<i32>(), std::cmp::Reverse((*u).clone())));
    let mut out: Vec<Mono> = Vec::new();
    for u in sorted {
        if !out.iter().any(|m| m.iter().zip(u).all(|(a, b)| a <= b)) {
            out.push(u.clone());
        }
    }
    out
}

fn initial_form(ctx: &Ctx) -> Res<()> {
    let p = &ctx.problem;
    let mut out = String::new();
    for w in weights(ctx)? {
        for f in &p.polys {
            out.push_str(&f.initial_form(&p.field, w)?.format(&p.names));
            out.push('\n');
        }
    }
    emit(&out);
    Ok(())
}

fn initial_ideal(ctx: &Ctx) -> Res<Value> {
    let ideal = homogeneous(ctx)?;
    let d_max = degree_or(ctx, ideal.max_generator_degree());
    let pieces = GradedPieces::build(&ideal, d_max);
    let names = &ctx.problem.names;
    let mut out = Vec::new();
    for w in weights(ctx)? {
        let mut degrees = Vec::new();
        let mut monos = Vec::new();
        let mut monomial = true;
        for d in 0..=d_max {
            let sp = pieces.initial_space(d, w)?;
            monomial &= sp.monomial;
            monos.extend(sp.monomials.iter().cloned());
            degrees.push(json!({
                "degree": d,
                "basis": sp.basis.iter().map(|b| b.format(names)).collect::<Vec<_>>(),
                "monomial": sp.monomial,
                "standard_monomials": sp.standard.len(),
            }));
        }
        let mut entry = json!({ "weight": vector_json(w), "max_degree": d_max, "monomial": monomial, "degrees": degrees });
        if monomial {
            let k = ctx.problem.field.residue_field();
            let gens: Vec<RPoly> = minimal_monomials(&monos)
                .into_iter()
                .map(|u| RPoly::from_terms(&k, u.len(), [(u, Rational::one())]))
                .collect();
            entry["initial_ideal"] = json!(format_ideal(&gens, names));
        }
        out.push(entry);
    }
    Ok(Value::Array(out))
}

fn groebner(ctx: &Ctx) -> Res<Value> {
    let ideal = homogeneous(ctx)?;
    let d = degree_or(ctx, ideal.max_generator_degree());
    let gc = groebner_complex(&ideal, d, &ctx.opts)?;
    if ctx.gen_check {
        let more = groebner_complex(&ideal, d + 1, &ctx.opts)?;
        if more.keys() != gc.keys() {
            return Err(Error::DegreeBoundTooSmall(format!("complex changes between D={d} and D={}", d + 1)).into());
        }
    }
    if ctx.svg.is_some() {
        let mut named = gc.complex.clone();
        for (l, c) in named.labels.iter_mut().zip(&gc.cells) {
            *l = Some(format_ideal(&c.initial_gens, &ctx.problem.names));
        }
        write_svg(ctx, &named, true)?;
    }
    let mut v = gc.to_json(&ctx.problem.names);
    v["max_degree"] = json!(d);
    v["maximal_cells"] = json!(gc.maximal_count());
    v["f_vector"] = json!(gc.complex.f_vector());
    Ok(v)
}

fn hypersurfaces(ctx: &Ctx) -> Res<Value> {
    let p = &ctx.problem;
    if p.polys.is_empty() {
        return Err(Error::Parse("no polynomial given".into()).into());
    }
    let mut out = Vec::new();
    for f in &p.polys {
        let cx = trop_hypersurface(&p.field, f)?;
        let mut v = cx.to_json();
        v["polynomial"] = json!(f.format(&p.field, &p.names));
        v["f_vector"] = json!(cx.f_vector());
        out.push(v);
    }
    if p.polys.len() == 1 {
        write_svg(ctx, &trop_hypersurface(&p.field, &p.polys[0])?, false)?;
        return Ok(out.pop().unwrap());
    }
    write_svg(ctx, &prevariety(&p.field, p.names.len(), &p.polys)?, false)?;
    Ok(Value::Array(out))
}

fn laurent_degree(ideal: &LaurentIdeal, ctx: &Ctx) -> Res<usize> {
    let mut m = 0;
    for g in &ideal.generators {
        m = m.max(homogenize_laurent(g)?.degree() as usize);
    }
    Ok(degree_or(ctx, m))
}

fn trop_summary(t: &tropgrob::tropical::Tropicalization) -> Value {
    json!({
        "max_degree": t.max_degree,
        "rays": t.rays(),
        "cones": t.cones(),
        "lineality_dim": t.complex.lineality_dim(),
        "f_vector": t.complex.f_vector(),
        "saturation": t.warning.to_string(),
        "groebner_cells": t.groebner.len(),
    })
}

fn gen_check_trop(ctx: &Ctx, ideal: &LaurentIdeal, d: usize, cx: &PolyhedralComplex) -> Res<()> {
    if ctx.gen_check {
        let more = tropicalize(ideal, d + 1, ctx.slack, &ctx.opts)?;
        if !cx.support_equal(&more.complex)?.0 || cx.f_vector() != more.complex.f_vector() {
            return Err(Error::DegreeBoundTooSmall(format!("tropical variety changes between D={d} and D={}", d + 1)).into());
        }
    }
    Ok(())
}

fn tropicalize_cmd(ctx: &Ctx) -> Res<Value> {
    let ideal = laurent(ctx)?;
    let d = laurent_degree(&ideal, ctx)?;
    let t = tropicalize(&ideal, d, ctx.slack, &ctx.opts)?;
    warn!("{}", t.warning);
    gen_check_trop(ctx, &ideal, d, &t.complex)?;
    write_svg(ctx, &t.complex, false)?;
    let mut v = trop_summary(&t);
    v["complex"] = t.complex.to_json();
    Ok(v)
}

fn tropical_basis_cmd(ctx: &Ctx) -> Res<Value> {
    let ideal = laurent(ctx)?;
    let d = laurent_degree(&ideal, ctx)?;
    let (b, t) = tropical_basis(&ideal, d, ctx.slack, &ctx.opts)?;
    warn!("{}", t.warning);
    gen_check_trop(ctx, &ideal, d, &t.complex)?;
    write_svg(ctx, &t.complex, false)?;
    let hnames = homogenized_names(&ctx.problem.names);
    let mut v = trop_summary(&t);
    v["basis"] = b.to_json(&ctx.problem.field, &ctx.problem.names, &t.groebner);
    v["homogenized_ring"] = json!(hnames);
    Ok(v)
}

fn verify_cmd(ctx: &Ctx, candidate: Option<&Path>) -> Res<Value> {
    let ideal = laurent(ctx)?;
    let fs = match candidate {
        Some(path) => {
            let c = parse_problem(&read(path)?)?;
            if c.field != ctx.problem.field || c.names != ctx.problem.names {
                return Err(Error::Parse("candidate file must use the same field and ring".into()).into());
            }
            c.polys
        }
        None => ctx.problem.polys.clone(),
    };
    let d = laurent_degree(&ideal, ctx)?;
    let v = verify_tropical_basis(&fs, &ideal, d, ctx.slack, &ctx.opts)?;
    write_svg(ctx, &v.prevariety, false)?;
    Ok(json!({
        "is_basis": v.is_basis,
        "witness": v.witness.as_deref().map(vector_json),
        "prevariety_f_vector": v.prevariety.f_vector(),
        "variety_f_vector": v.variety.f_vector(),
    }))
}

fn run(cli: Cli) -> Res<()> {
    let value = match &cli.cmd {
        Cmd::Print { file } => {
            emit(&format_problem(&parse_problem(&read(file)?)?));
            return Ok(());
        }
        Cmd::InitialForm(c) => return initial_form(&load(c)?),
        Cmd::InitialIdeal(c) => initial_ideal(&load(c)?)?,
        Cmd::GroebnerComplex(c) => groebner(&load(c)?)?,
        Cmd::TropHypersurface(c) => hypersurfaces(&load(c)?)?,
        Cmd::Tropicalize(c) => tropicalize_cmd(&load(c)?)?,
        Cmd::TropicalBasis(c) => tropical_basis_cmd(&load(c)?)?,
        Cmd::VerifyBasis { common, candidate } => verify_cmd(&load(common)?, candidate.as_deref())?,
    };
    emit(&(serde_json::to_string_pretty(&value).expect("JSON values always serialize") + "\n"));
    Ok(())
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
