//! The expression language of manifests: scalars over the session field with
//! Fourier atoms, frame vectors `e1, e2, …` (and `et`, `es` on products),
//! `+ - * / ^` and parentheses. `*` and `^` both wedge multivectors; `^`
//! with an integer exponent on a scalar is a power.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactnum::{FieldElement, FourierScalar, Ring};
use crate::foliation::{MultiVector, Skew};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), col });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), col });
        } else if "+-*/^(),;:".contains(c) {
            out.push(Token { tok: Tok::Sym(c), col });
            i += 1;
        } else {
            return Err(Error::Syntax { line, col, expected: vec!["expression".into()] });
        }
    }
    out.push(Token { tok: Tok::End, col: col0 + chars.len() });
    Ok(out)
}

/// What a name like `e3`, `t` or `rt` refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Context {
    pub ring: Ring,
    /// Number of frame vectors; on products `et`, `es` are the last two.
    pub frames: usize,
    /// Radical denoted by `rt`, if any.
    pub radical: Option<u32>,
}

impl Context {
    pub fn torus(n: usize, radical: Option<u32>) -> Self {
        Context { ring: Ring::torus(n), frames: n, radical }
    }

    /// `n` angles with parameters `t`, `s` and frames `e1..en, et, es`.
    pub fn product(n: usize, radical: Option<u32>) -> Self {
        Context { ring: Ring::with_params(n, 2), frames: n + 2, radical }
    }

    fn is_product(&self) -> bool {
        self.ring.poly == 2 && self.frames == self.ring.periodic + 2
    }
}

/// A parsed value: a function or a multivector of positive degree.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(FourierScalar),
    Multi(MultiVector),
}

impl Value {
    pub fn degree(&self) -> usize {
        match self {
            Value::Scalar(_) => 0,
            Value::Multi(m) => m.degree(),
        }
    }

    /// As a multivector of the given degree; the scalar `0` fits any degree.
    pub fn into_multivector(self, ctx: &Context, degree: usize) -> std::result::Result<MultiVector, String> {
        match self {
            Value::Scalar(f) if degree == 0 => Ok(Skew::function(ctx.frames, f)),
            Value::Scalar(f) if f.is_zero() => Ok(Skew::zero(ctx.ring, ctx.frames, degree)),
            Value::Multi(m) if m.degree() == degree => Ok(m),
            v => Err(format!("expected degree {degree}, found degree {}", v.degree())),
        }
    }
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    line: usize,
    ctx: &'a Context,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn col(&self) -> usize {
        self.toks[self.pos].col
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, expected: &[&str]) -> Error {
        Error::Syntax { line: self.line, col: self.col(), expected: expected.iter().map(|s| s.to_string()).collect() }
    }

    fn type_err(&self, col: usize, msg: impl Into<String>) -> Error {
        Error::Type { line: self.line, col, msg: msg.into() }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(&[&c.to_string()]))
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            let col = self.col();
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    let r = self.term()?;
                    acc = self.add(acc, r, col, false)?;
                }
                Tok::Sym('-') => {
                    self.bump();
                    let r = self.term()?;
                    acc = self.add(acc, r, col, true)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        loop {
            let col = self.col();
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    let r = self.unary()?;
                    acc = mul(acc, r);
                }
                Tok::Sym('/') => {
                    self.bump();
                    let r = self.unary()?;
                    acc = self.div(acc, r, col)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Value> {
        if *self.peek() == Tok::Sym('-') {
            self.bump();
            let v = self.unary()?;
            return Ok(neg(v));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value> {
        let mut acc = self.atom()?;
        while *self.peek() == Tok::Sym('^') {
            self.bump();
            let col = self.col();
            if let (Value::Scalar(f), Tok::Int(k)) = (&acc, self.peek().clone()) {
                self.bump();
                let k = k.to_u32().filter(|&k| k <= 64).ok_or_else(|| self.type_err(col, "exponent too large"))?;
                let mut p = FourierScalar::one(self.ctx.ring);
                for _ in 0..k {
                    p = &p * f;
                }
                acc = Value::Scalar(p);
                continue;
            }
            let r = self.atom()?;
            acc = mul(acc, r);
        }
        Ok(acc)
    }

    fn int_args(&mut self) -> Result<Vec<i32>> {
        self.expect_sym('(')?;
        let mut out = Vec::new();
        loop {
            let negative = if *self.peek() == Tok::Sym('-') {
                self.bump();
                true
            } else {
                false
            };
            let col = self.col();
            match self.bump().tok {
                Tok::Int(n) => {
                    let v = n.to_i32().ok_or_else(|| self.type_err(col, "frequency out of range"))?;
                    out.push(if negative { -v } else { v });
                }
                _ => {
                    return Err(Error::Syntax { line: self.line, col, expected: vec!["integer".into()] });
                }
            }
            match self.peek() {
                Tok::Sym(',') => {
                    self.bump();
                }
                Tok::Sym(')') => {
                    self.bump();
                    return Ok(out);
                }
                _ => return Err(self.syntax(&[",", ")"])),
            }
        }
    }

    fn atom(&mut self) -> Result<Value> {
        let col = self.col();
        let ring = self.ctx.ring;
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let c = FieldElement::from_rational(BigRational::from_integer(n));
                Ok(Value::Scalar(FourierScalar::constant(ring, c)))
            }
            Tok::Sym('(') => {
                self.bump();
                let v = self.expr()?;
                self.expect_sym(')')?;
                Ok(v)
            }
            Tok::Ident(name) => {
                self.bump();
                self.named(&name, col)
            }
            _ => Err(self.syntax(&["number", "name", "("])),
        }
    }

    fn named(&mut self, name: &str, col: usize) -> Result<Value> {
        let ring = self.ctx.ring;
        let semantic = |msg: String| Error::Semantic { line: self.line, msg: format!("column {col}: {msg}") };
        match name {
            "i" => Ok(Value::Scalar(FourierScalar::constant(ring, FieldElement::i()))),
            "rt" => {
                let d = self.ctx.radical.ok_or_else(|| semantic("`rt` used without a declared radical".into()))?;
                Ok(Value::Scalar(FourierScalar::constant(ring, FieldElement::sqrt(d).map_err(|e| semantic(e.to_string()))?)))
            }
            "t" | "s" => {
                let j = if name == "t" { 0 } else { 1 };
                if ring.poly <= j {
                    return Err(semantic(format!("parameter `{name}` is only available on products")));
                }
                Ok(Value::Scalar(FourierScalar::param(ring, j)))
            }
            "cos" | "sin" | "exp" => {
                let k = self.int_args()?;
                if k.len() != ring.periodic {
                    return Err(self.type_err(col, format!("{name} needs {} frequencies, got {}", ring.periodic, k.len())));
                }
                Ok(Value::Scalar(match name {
                    "cos" => FourierScalar::cos(ring, &k),
                    "sin" => FourierScalar::sin(ring, &k),
                    _ => FourierScalar::exp(ring, &k),
                }))
            }
            "et" | "es" => {
                if !self.ctx.is_product() {
                    return Err(semantic(format!("`{name}` is only available on products")));
                }
                let axis = ring.periodic + usize::from(name == "es");
                Ok(Value::Multi(Skew::monomial(self.ctx.frames, &[axis], FourierScalar::one(ring))))
            }
            _ => {
                if let Some(idx) = name.strip_prefix('e').and_then(|d| d.parse::<usize>().ok()) {
                    if idx == 0 || idx > self.ctx.frames {
                        return Err(semantic(format!("frame index {idx} out of range 1..={}", self.ctx.frames)));
                    }
                    return Ok(Value::Multi(Skew::monomial(self.ctx.frames, &[idx - 1], FourierScalar::one(ring))));
                }
                Err(Error::Syntax { line: self.line, col, expected: vec!["known name".into()] })
            }
        }
    }

    fn add(&self, a: Value, b: Value, col: usize, subtract: bool) -> Result<Value> {
        let b = if subtract { neg(b) } else { b };
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(&x + &y)),
            (Value::Multi(x), Value::Multi(y)) if x.degree() == y.degree() => Ok(Value::Multi(x.plus(&y))),
            (Value::Scalar(x), m @ Value::Multi(_)) | (m @ Value::Multi(_), Value::Scalar(x)) if x.is_zero() => Ok(m),
            (x, y) => Err(self.type_err(col, format!("cannot add degree {} and degree {}", x.degree(), y.degree()))),
        }
    }

    fn div(&self, a: Value, b: Value, col: usize) -> Result<Value> {
        let c = match b {
            Value::Scalar(f) => f.as_constant(),
            Value::Multi(_) => None,
        };
        let c = c.ok_or_else(|| self.type_err(col, "division by a non-constant"))?;
        let inv = c.inv().map_err(|_| self.type_err(col, "division by zero"))?;
        Ok(match a {
            Value::Scalar(f) => Value::Scalar(f.scale(&inv)),
            Value::Multi(m) => Value::Multi(m.scale(&inv)),
        })
    }
}

fn neg(v: Value) -> Value {
    match v {
        Value::Scalar(f) => Value::Scalar(-&f),
        Value::Multi(m) => Value::Multi(m.neg()),
    }
}

fn mul(a: Value, b: Value) -> Value {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
        (Value::Scalar(x), Value::Multi(m)) | (Value::Multi(m), Value::Scalar(x)) => Value::Multi(m.mul_fn(&x)),
        (Value::Multi(x), Value::Multi(y)) => Value::Multi(x.wedge(&y)),
    }
}

/// Parses one expression; `col0` is the 1-based column of its first character.
pub fn parse_expr(text: &str, ctx: &Context, line: usize, col0: usize) -> Result<Value> {
    let toks = lex(text, line, col0)?;
    let mut p = Parser { toks, pos: 0, line, ctx };
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.syntax(&["+", "-", "*", "/", "^", "end of line"]));
    }
    Ok(v)
}

/// `order K: e0 ; e1 ; … ; eK`, each entry a multivector of `degree`.
pub fn parse_series(text: &str, ctx: &Context, degree: usize, line: usize, col0: usize) -> Result<Vec<MultiVector>> {
    let toks = lex(text, line, col0)?;
    let syn = |col: usize, e: &str| Error::Syntax { line, col, expected: vec![e.into()] };
    match &toks[0].tok {
        Tok::Ident(s) if s == "order" => {}
        _ => return Err(syn(toks[0].col, "order")),
    }
    let k = match &toks[1].tok {
        Tok::Int(n) => n.to_usize().ok_or_else(|| syn(toks[1].col, "small integer"))?,
        _ => return Err(syn(toks[1].col, "integer")),
    };
    if toks[2].tok != Tok::Sym(':') {
        return Err(syn(toks[2].col, ":"));
    }
    // Split the remaining text at top-level `;`.
    let chars: Vec<char> = text.chars().collect();
    let start = toks[2].col - col0 + 1;
    let mut pieces = Vec::new();
    let mut from = start;
    let mut depth = 0i32;
    for (i, &c) in chars.iter().enumerate().skip(start) {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ';' if depth == 0 => {
                pieces.push((from, i));
                from = i + 1;
            }
            _ => {}
        }
    }
    pieces.push((from, chars.len()));
    if pieces.len() != k + 1 {
        return Err(Error::Semantic { line, msg: format!("order {k} needs {} entries, found {}", k + 1, pieces.len()) });
    }
    let mut out = Vec::new();
    for (a, b) in pieces {
        let piece: String = chars[a..b].iter().collect();
        let v = parse_expr(&piece, ctx, line, col0 + a)?;
        let m = v.into_multivector(ctx, degree).map_err(|msg| Error::Type { line, col: col0 + a, msg })?;
        out.push(m);
    }
    Ok(out)
}

/// Prints a multivector in the expression syntax: `(f) * e1^e3 + …`.
pub fn print_multivector(w: &MultiVector, ctx: &Context) -> String {
    if w.is_zero() {
        return "0".into();
    }
    let name = |a: usize| {
        if ctx.is_product() && a == ctx.ring.periodic {
            "et".to_string()
        } else if ctx.is_product() && a == ctx.ring.periodic + 1 {
            "es".to_string()
        } else {
            format!("e{}", a + 1)
        }
    };
    let terms: Vec<String> = w
        .terms()
        .map(|(idx, f)| {
            if idx.is_empty() {
                format!("({f})")
            } else {
                let frames: Vec<String> = idx.iter().map(|&a| name(a)).collect();
                format!("({f}) * {}", frames.join("^"))
            }
        })
        .collect();
    terms.join(" + ")
}

pub fn print_series(z: &[MultiVector], ctx: &Context) -> String {
    let parts: Vec<String> = z.iter().map(|w| print_multivector(w, ctx)).collect();
    format!("order {}: {}", z.len().saturating_sub(1), parts.join(" ; "))
}

/// Exact constant from a scalar expression (no angles or parameters).
pub fn parse_constant(text: &str, radical: Option<u32>, line: usize, col0: usize) -> Result<FieldElement> {
    let ctx = Context::torus(0, radical);
    match parse_expr(text, &ctx, line, col0)? {
        Value::Scalar(f) => Ok(f.as_constant().unwrap_or_else(FieldElement::zero)),
        Value::Multi(_) => Err(Error::Type { line, col: col0, msg: "expected a scalar".into() }),
    }
}

/// Integer literal check used by task parameters.
pub fn parse_count(text: &str) -> Option<usize> {
    let t = text.trim();
    if t.is_empty() || !t.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    t.parse().ok()
}
