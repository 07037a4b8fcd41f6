//! Line-oriented problem files.
//!
//! ```text
//! field Qp p=3            # or: field Qt N=2
//! ring x,y,z
//! poly 3*x+8*y+6*z
//! weight 1,1,1
//! option D=2 slack=2 mode=traversal seed=0
//! ```
//! Blank lines and `#` comments are ignored.

use tropgrob::parse::{parse_poly, parse_rational_list};
use tropgrob::poly::{default_names, KPoly};
use tropgrob::valued_field::{FieldKind, FieldSpec};
use tropgrob::{Error, Rational};

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub degree: Option<usize>,
    pub slack: Option<usize>,
    pub mode: Option<String>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub field: FieldSpec,
    pub names: Vec<String>,
    pub polys: Vec<KPoly>,
    pub weights: Vec<Vec<Rational>>,
    pub options: Options,
}

fn perr(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

fn parse_field(rest: &str, line: usize) -> Result<FieldSpec, Error> {
    let mut it = rest.split_whitespace();
    let kind = it.next().ok_or_else(|| perr(line, "field needs a kind (Qp or Qt)"))?;
    let param = it.next().ok_or_else(|| perr(line, "field needs a parameter"))?;
    let (key, val) = param.split_once('=').ok_or_else(|| perr(line, "expected key=value"))?;
    let n: u64 = val.parse().map_err(|_| perr(line, format!("bad integer {val}")))?;
    match (kind, key) {
        ("Qp", "p") => FieldSpec::padic(n),
        ("Qt", "N") => FieldSpec::tadic(u32::try_from(n).map_err(|_| perr(line, "N too large"))?),
        _ => Err(perr(line, format!("unknown field {kind} {key}="))),
    }
}

fn parse_options(rest: &str, line: usize, o: &mut Options) -> Result<(), Error> {
    for kv in rest.split_whitespace() {
        let (k, v) = kv.split_once('=').ok_or_else(|| perr(line, format!("expected key=value, got {kv}")))?;
        let int = || v.parse::<u64>().map_err(|_| perr(line, format!("bad integer {v}")));
        match k {
            "D" => o.degree = Some(int()? as usize),
            "slack" => o.slack = Some(int()? as usize),
            "seed" => o.seed = Some(int()?),
            "mode" => o.mode = Some(v.to_string()),
            _ => return Err(perr(line, format!("unknown option {k}"))),
        }
    }
    Ok(())
}

pub fn parse_problem(text: &str) -> Result<Problem, Error> {
    let mut field = None;
    let mut names: Option<Vec<String>> = None;
    let mut poly_src: Vec<(usize, String)> = Vec::new();
    let mut weight_src: Vec<(usize, String)> = Vec::new();
    let mut options = Options::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.split('#').next().unwrap().trim();
        if s.is_empty() {
            continue;
        }
        let (head, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
        let rest = rest.trim();
        match head {
            "field" => field = Some(parse_field(rest, line)?),
            "ring" => {
                let v: Vec<String> = rest.split(',').map(|x| x.trim().to_string()).collect();
                if v.iter().any(|x| x.is_empty() || !x.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')) {
                    return Err(perr(line, "ring expects comma-separated variable names"));
                }
                names = Some(v);
            }
            "poly" => poly_src.push((line, rest.to_string())),
            "weight" => weight_src.push((line, rest.to_string())),
            "option" => parse_options(rest, line, &mut options)?,
            _ => return Err(perr(line, format!("unknown directive {head}"))),
        }
    }
    let field = field.ok_or_else(|| Error::Parse("missing `field` line".into()))?;
    let names = match names {
        Some(n) => n,
        None => {
            let n = weight_src.first().map(|(_, w)| w.split(',').count()).unwrap_or(1);
            default_names(n)
        }
    };
    let polys = poly_src
        .iter()
        .map(|(line, p)| parse_poly(p, &field, &names).map_err(|e| perr(*line, e)))
        .collect::<Result<Vec<_>, _>>()?;
    let weights = weight_src
        .iter()
        .map(|(line, w)| {
            let v = parse_rational_list(w).map_err(|e| perr(*line, e))?;
            if v.len() != names.len() {
                return Err(Error::Arity { expected: names.len(), got: v.len() });
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Problem { field, names, polys, weights, options })
}

/// Canonical text form; parsing it gives back the same problem.
pub fn format_problem(p: &Problem) -> String {
    let mut out = match p.field.kind {
        FieldKind::PAdic(q) => format!("field Qp p={q}\n"),
        FieldKind::TAdic(n) => format!("field Qt N={n}\n"),
    };
    out.push_str(&format!("ring {}\n", p.names.join(",")));
    for f in &p.polys {
        out.push_str(&format!("poly {}\n", f.format(&p.field, &p.names)));
    }
    for w in &p.weights {
        let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("weight {}\n", parts.join(",")));
    }
    let o = &p.options;
    let mut opts = Vec::new();
    if let Some(d) = o.degree {
        opts.push(format!("D={d}"));
    }
    if let Some(s) = o.slack {
        opts.push(format!("slack={s}"));
    }
    if let Some(m) = &o.mode {
        opts.push(format!("mode={m}"));
    }
    if let Some(s) = o.seed {
        opts.push(format!("seed={s}"));
    }
    if !opts.is_empty() {
        out.push_str(&format!("option {}\n", opts.join(" ")));
    }
    out
}
