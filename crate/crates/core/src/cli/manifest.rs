//! Line-oriented manifests: `[section]` headers, `key = expr` entries and `#`
//! comments.
//!
//! ```text
//! [manifold]
//! dim = 3
//! radical = 2
//! [poisson]
//! Pi = e1^e3 + rt * e2^e3
//! rank = 2
//! [splitting]
//! tf1 = e1 + rt * e2
//! tf2 = e3
//! g1 = e2
//! h1 = e2 + sin(1,0,0) * e3
//! [deformation]
//! Z = order 2: 0 ; e1^e2 ; 0
//! [gauge]
//! W = order 1: 0 ; t * e1^e2
//! X = order 1: 0 ; e1
//! [task]
//! seed = 7
//! check = jacobi arity=3 trials=10
//! ```
//!
//! `tf*` frame the leaves, `g*` a complement and `h*` an optional second
//! complement. Gauge families live on the torus with parameter `t`.

use std::collections::BTreeMap;

use super::expr::{parse_expr, parse_series, print_multivector, print_series, Context, Value};
use crate::error::{Error, Result};
use crate::exactnum::{EpsSeries, Ring};
use crate::foliation::multivector::vector_coeffs;
use crate::foliation::{MultiVector, Setup, Skew, VectorField};

/// A named check with `key=value` parameters, in manifest order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskSpec {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub line: usize,
}

/// `W_t` and `X_t` as ε-series of t-polynomial multivectors.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeFamily {
    pub w: Vec<MultiVector>,
    pub x: Vec<MultiVector>,
    pub t_bound: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Manifest {
    pub dim: usize,
    pub radical: Option<u32>,
    pub pi: Option<MultiVector>,
    pub rank: Option<usize>,
    pub tf: Vec<VectorField>,
    pub g: Vec<VectorField>,
    pub h: Vec<VectorField>,
    pub deformation: Option<Vec<MultiVector>>,
    pub gauge: Option<GaugeFamily>,
    pub seed: u64,
    pub tasks: Vec<TaskSpec>,
}

struct Entry {
    key: String,
    value: String,
    line: usize,
    col: usize,
}

const SECTIONS: [&str; 6] = ["manifold", "poisson", "splitting", "deformation", "gauge", "task"];

fn semantic(line: usize, msg: impl Into<String>) -> Error {
    Error::Semantic { line, msg: msg.into() }
}

fn split_entries(text: &str) -> Result<BTreeMap<String, Vec<Entry>>> {
    let mut out: BTreeMap<String, Vec<Entry>> = BTreeMap::new();
    let mut section: Option<String> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix('[') {
            let name = rest.strip_suffix(']').ok_or(Error::Syntax {
                line,
                col: indent + trimmed.len() + 1,
                expected: vec!["]".into()],
            })?;
            if !SECTIONS.contains(&name) {
                return Err(semantic(line, format!("unknown section [{name}]")));
            }
            section = Some(name.to_string());
            continue;
        }
        let Some(eq) = body.find('=') else {
            return Err(Error::Syntax { line, col: body.trim_end().len() + 1, expected: vec!["=".into()] });
        };
        let key = body[..eq].trim();
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::Syntax { line, col: indent + 1, expected: vec!["key".into()] });
        }
        let sec = section.clone().ok_or_else(|| semantic(line, "entry before any section"))?;
        out.entry(sec).or_default().push(Entry {
            key: key.to_string(),
            value: body[eq + 1..].to_string(),
            line,
            col: eq + 2,
        });
    }
    Ok(out)
}

fn parse_usize(e: &Entry) -> Result<usize> {
    e.value.trim().parse().map_err(|_| Error::Syntax {
        line: e.line,
        col: e.col + e.value.len() - e.value.trim_start().len(),
        expected: vec!["integer".into()],
    })
}

fn multivector(e: &Entry, ctx: &Context, degree: usize) -> Result<MultiVector> {
    parse_expr(&e.value, ctx, e.line, e.col)?
        .into_multivector(ctx, degree)
        .map_err(|msg| Error::Type { line: e.line, col: e.col, msg })
}

/// `prefix1, prefix2, …` without gaps, in index order.
fn frame(entries: &[Entry], prefix: &str, ctx: &Context) -> Result<Vec<VectorField>> {
    let mut found: BTreeMap<usize, &Entry> = BTreeMap::new();
    for e in entries {
        if let Some(idx) = e.key.strip_prefix(prefix).and_then(|d| d.parse::<usize>().ok()) {
            if found.insert(idx, e).is_some() {
                return Err(semantic(e.line, format!("duplicate key {}", e.key)));
            }
        }
    }
    let mut out = Vec::new();
    for (pos, (idx, e)) in found.iter().enumerate() {
        if *idx != pos + 1 {
            return Err(semantic(e.line, format!("{prefix} frame indices must run 1, 2, … without gaps")));
        }
        out.push(vector_coeffs(&multivector(e, ctx, 1)?));
    }
    Ok(out)
}

fn known_keys(entries: &[Entry], allowed: impl Fn(&str) -> bool) -> Result<()> {
    for e in entries {
        if !allowed(&e.key) {
            return Err(semantic(e.line, format!("unknown key {}", e.key)));
        }
    }
    Ok(())
}

fn find<'a>(entries: &'a [Entry], key: &str) -> Result<Option<&'a Entry>> {
    let mut hits = entries.iter().filter(|e| e.key == key);
    let first = hits.next();
    if let Some(dup) = hits.next() {
        return Err(semantic(dup.line, format!("duplicate key {key}")));
    }
    Ok(first)
}

fn parse_task(e: &Entry) -> Result<TaskSpec> {
    let mut words = e.value.split_whitespace();
    let name = words.next().ok_or(Error::Syntax { line: e.line, col: e.col, expected: vec!["check name".into()] })?;
    let mut params = BTreeMap::new();
    for w in words {
        let (k, v) = w.split_once('=').ok_or_else(|| Error::Syntax {
            line: e.line,
            col: e.col + e.value.find(w).unwrap_or(0),
            expected: vec!["key=value".into()],
        })?;
        params.insert(k.to_string(), v.to_string());
    }
    Ok(TaskSpec { name: name.to_string(), params, line: e.line })
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self> {
        let sections = split_entries(text)?;
        let empty = Vec::new();
        let get = |name: &str| sections.get(name).unwrap_or(&empty);

        let man = get("manifold");
        known_keys(man, |k| k == "dim" || k == "radical")?;
        let dim = match find(man, "dim")? {
            Some(e) => parse_usize(e)?,
            None => 0,
        };
        let radical = match find(man, "radical")? {
            Some(e) => {
                let d = parse_usize(e)? as u32;
                crate::exactnum::FieldElement::sqrt(d).map_err(|err| semantic(e.line, err.to_string()))?;
                Some(d)
            }
            None => None,
        };
        let ctx = Context::torus(dim, radical);

        let poi = get("poisson");
        known_keys(poi, |k| k == "Pi" || k == "rank")?;
        if dim == 0 && !poi.is_empty() {
            return Err(semantic(poi[0].line, "[poisson] needs dim in [manifold]"));
        }
        let pi = find(poi, "Pi")?.map(|e| multivector(e, &ctx, 2)).transpose()?;
        let rank = find(poi, "rank")?.map(parse_usize).transpose()?;

        let spl = get("splitting");
        let frame_key = |k: &str| {
            ["tf", "g", "h"].iter().any(|p| k.strip_prefix(p).is_some_and(|d| d.parse::<usize>().is_ok()))
        };
        known_keys(spl, frame_key)?;
        let tf = frame(spl, "tf", &ctx)?;
        let g = frame(spl, "g", &ctx)?;
        let h = frame(spl, "h", &ctx)?;
        if let Some(r) = rank {
            if !tf.is_empty() && r != tf.len() {
                return Err(semantic(poi[0].line, format!("rank {r} but {} leaf frame vectors", tf.len())));
            }
        }
        if let Some(e) = spl.first() {
            if !tf.is_empty() && tf.len() + g.len() != dim {
                return Err(semantic(e.line, "leaf and complement frames must span the tangent space"));
            }
            if !h.is_empty() && h.len() != g.len() {
                return Err(semantic(e.line, "the second complement must have the size of the first"));
            }
        }

        let def = get("deformation");
        known_keys(def, |k| k == "Z")?;
        let deformation = find(def, "Z")?.map(|e| parse_series(&e.value, &ctx, 2, e.line, e.col)).transpose()?;

        let gau = get("gauge");
        known_keys(gau, |k| ["W", "X", "tbound"].contains(&k))?;
        let gctx = Context { ring: Ring::with_params(dim, 2), frames: dim, radical };
        let gauge = match (find(gau, "W")?, find(gau, "X")?) {
            (None, None) => None,
            (Some(w), Some(x)) => {
                let ws = parse_series(&w.value, &gctx, 2, w.line, w.col)?;
                let xs = parse_series(&x.value, &gctx, 1, x.line, x.col)?;
                if ws.len() != xs.len() {
                    return Err(semantic(x.line, "W and X must have the same order"));
                }
                let t_bound = find(gau, "tbound")?.map(parse_usize).transpose()?.unwrap_or(8);
                Some(GaugeFamily { w: ws, x: xs, t_bound })
            }
            _ => return Err(semantic(gau[0].line, "[gauge] needs both W and X")),
        };

        let tsk = get("task");
        known_keys(tsk, |k| k == "seed" || k == "check")?;
        let seed = match find(tsk, "seed")? {
            Some(e) => e.value.trim().parse().map_err(|_| Error::Syntax {
                line: e.line,
                col: e.col,
                expected: vec!["integer".into()],
            })?,
            None => 0,
        };
        let tasks = tsk.iter().filter(|e| e.key == "check").map(parse_task).collect::<Result<Vec<_>>>()?;

        Ok(Manifest { dim, radical, pi, rank, tf, g, h, deformation, gauge, seed, tasks })
    }

    pub fn context(&self) -> Context {
        Context::torus(self.dim, self.radical)
    }

    /// The setup with the first complement.
    pub fn setup(&self) -> Result<Setup> {
        let pi = self.pi.clone().ok_or_else(|| semantic(0, "no Pi in [poisson]"))?;
        if self.tf.is_empty() || self.g.is_empty() {
            return Err(semantic(0, "[splitting] needs tf and g frames"));
        }
        Setup::new(pi, self.tf.clone(), self.g.clone()).map_err(|e| semantic(0, e.to_string()))
    }

    /// The deformation at order `K`, truncated or padded with zeros.
    pub fn deformation_series(&self, order: Option<usize>) -> Option<EpsSeries<MultiVector>> {
        let mut z = self.deformation.clone()?;
        if let Some(k) = order {
            z.resize(k + 1, Skew::zero(Ring::torus(self.dim), self.dim, 2));
        }
        Some(EpsSeries::new(z))
    }

    /// Canonical text; parsing it gives back an equal manifest.
    pub fn to_text(&self) -> String {
        let ctx = self.context();
        let mut out = String::new();
        let vector = |v: &VectorField| print_multivector(&Skew::vector(self.dim, v), &ctx);
        out.push_str(&format!("[manifold]\ndim = {}\n", self.dim));
        if let Some(d) = self.radical {
            out.push_str(&format!("radical = {d}\n"));
        }
        if self.pi.is_some() || self.rank.is_some() {
            out.push_str("[poisson]\n");
            if let Some(pi) = &self.pi {
                out.push_str(&format!("Pi = {}\n", print_multivector(pi, &ctx)));
            }
            if let Some(r) = self.rank {
                out.push_str(&format!("rank = {r}\n"));
            }
        }
        if !(self.tf.is_empty() && self.g.is_empty() && self.h.is_empty()) {
            out.push_str("[splitting]\n");
            for (prefix, fr) in [("tf", &self.tf), ("g", &self.g), ("h", &self.h)] {
                for (i, v) in fr.iter().enumerate() {
                    out.push_str(&format!("{prefix}{} = {}\n", i + 1, vector(v)));
                }
            }
        }
        if let Some(z) = &self.deformation {
            out.push_str(&format!("[deformation]\nZ = {}\n", print_series(z, &ctx)));
        }
        if let Some(g) = &self.gauge {
            let gctx = Context { ring: Ring::with_params(self.dim, 2), frames: self.dim, radical: self.radical };
            out.push_str(&format!(
                "[gauge]\nW = {}\nX = {}\ntbound = {}\n",
                print_series(&g.w, &gctx),
                print_series(&g.x, &gctx),
                g.t_bound
            ));
        }
        out.push_str(&format!("[task]\nseed = {}\n", self.seed));
        for t in &self.tasks {
            let mut line = format!("check = {}", t.name);
            for (k, v) in &t.params {
                line.push_str(&format!(" {k}={v}"));
            }
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// Reads a scalar `key=value` parameter as an expression over the manifest field.
pub fn param_value(spec: &TaskSpec, key: &str, radical: Option<u32>) -> Result<Option<Value>> {
    match spec.params.get(key) {
        None => Ok(None),
        Some(text) => parse_expr(text, &Context::torus(0, radical), spec.line, 1).map(Some),
    }
}
