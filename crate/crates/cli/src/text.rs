//! Text syntax for fields, polynomials, automorphisms, factored words and
//! triangular derivations.
//!
//! ```text
//! field       Q | F<q> | F<q>/<modulus in t>
//! poly        x1^2*x2 - 3/2*x3 + (t+1)*x1 + 4
//! expanded    [Q,3] (x1+2, x2+x1^2, x3-x1^2+x1*x2^4)
//! factored    [F5,2] T(x1, x2+x1^2) * L[[1,1],[0,1]]^-1 * E(2; x1^3) * Tr(1, 0)
//!             S(-x2, x1) * Exp(x1; D(0, x1))
//! derivation  D(0, x1, -x2*x1)
//! ```
//!
//! Printing is canonical: parsing the printed form gives back an equal value
//! and printing that again gives the same bytes.

use cotame_core::{BasicFactor, Endo, FactoredAuto, Field, FieldDescriptor, Matrix, Poly, Scalar, TriDerivation};

use crate::error::{CliError, ParseError, Result};

const MAX_EXPONENT: u32 = 65_535;

// ---------------------------------------------------------------- printing

pub fn fmt_field(field: &Field) -> String {
    match field.descriptor() {
        FieldDescriptor::Rationals => "Q".into(),
        FieldDescriptor::Prime(p) => format!("F{p}"),
        d @ FieldDescriptor::Extension { p, s, modulus } => {
            let q = p.pow(*s);
            if d.is_canonical() {
                format!("F{q}")
            } else {
                format!("F{q}/{}", fmt_t_poly(modulus))
            }
        }
    }
}

/// Digits (constant term first) as a polynomial in `t`.
fn fmt_t_poly(digits: &[u32]) -> String {
    let mut out = String::new();
    for (k, &d) in digits.iter().enumerate().rev() {
        if d == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        let mono = match k {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{k}"),
        };
        match (d, k) {
            (_, 0) => out.push_str(&d.to_string()),
            (1, _) => out.push_str(&mono),
            _ => out.push_str(&format!("{d}*{mono}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn fmt_scalar(field: &Field, a: &Scalar) -> String {
    match a {
        Scalar::Rat(r) => r.to_string(),
        Scalar::Fin(v) => match field.descriptor() {
            FieldDescriptor::Extension { .. } => fmt_t_poly(&field.digits(a)),
            _ => v.to_string(),
        },
    }
}

fn fmt_monomial(exps: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{e}", i + 1)),
        }
    }
    parts.join("*")
}

pub fn fmt_poly(p: &Poly) -> String {
    let field = p.field();
    let mut out = String::new();
    for (c, m) in p.monomials() {
        let term = if m.degree() == 0 {
            fmt_scalar(field, &c)
        } else {
            let mono = fmt_monomial(m.exps());
            let minus_one = field.neg(&field.one());
            if field.is_one(&c) {
                mono
            } else if matches!(c, Scalar::Rat(_)) && c == minus_one {
                format!("-{mono}")
            } else {
                let s = fmt_scalar(field, &c);
                if s.contains('+') {
                    format!("({s})*{mono}")
                } else {
                    format!("{s}*{mono}")
                }
            }
        };
        if !out.is_empty() && !term.starts_with('-') {
            out.push('+');
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn fmt_list(items: impl IntoIterator<Item = String>) -> String {
    items.into_iter().collect::<Vec<_>>().join(", ")
}

/// `(c1, ..., cn)` without a header.
pub fn fmt_tuple(e: &Endo) -> String {
    format!("({})", fmt_list(e.comps().iter().map(fmt_poly)))
}

pub fn fmt_header(field: &Field, n: usize) -> String {
    format!("[{},{n}]", fmt_field(field))
}

/// `[F,n] (c1, ..., cn)`.
pub fn fmt_endo(e: &Endo) -> String {
    format!("{} {}", fmt_header(e.field(), e.n()), fmt_tuple(e))
}

pub fn fmt_matrix(m: &Matrix) -> String {
    let f = m.field();
    let rows: Vec<String> = m
        .rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|a| fmt_scalar(f, a)).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

pub fn fmt_derivation(d: &TriDerivation) -> String {
    format!("D({})", fmt_list(d.images().iter().map(fmt_poly)))
}

pub fn fmt_factor(field: &Field, f: &BasicFactor) -> String {
    match f {
        BasicFactor::Linear(m) => format!("L{}", fmt_matrix(m)),
        BasicFactor::Translation(b) => format!("Tr({})", fmt_list(b.iter().map(|a| fmt_scalar(field, a)))),
        BasicFactor::Elementary { i, f } => format!("E({}; {})", i + 1, fmt_poly(f)),
        BasicFactor::Triangular(t) => format!("T({})", fmt_list(t.to_endo().comps().iter().map(fmt_poly))),
        BasicFactor::Exp { f, d } => format!("Exp({}; {})", fmt_poly(f), fmt_derivation(d)),
        BasicFactor::SignedPermutation { perm, signs } => {
            let n = perm.len();
            let comps = (0..n).map(|i| fmt_poly(&Poly::var(field, n, perm[i]).scale(&signs[i])));
            format!("S({})", fmt_list(comps))
        }
    }
}

/// Factors joined by ` * `; the empty word prints as `id`.
pub fn fmt_word(w: &FactoredAuto) -> String {
    if w.is_empty() {
        return "id".into();
    }
    w.word()
        .iter()
        .map(|(f, e)| {
            let s = fmt_factor(w.field(), f);
            if *e < 0 {
                format!("{s}^-1")
            } else {
                s
            }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

/// `[F,n] word`.
pub fn fmt_factored(w: &FactoredAuto) -> String {
    format!("{} {}", fmt_header(w.field(), w.n()), fmt_word(w))
}

// ---------------------------------------------------------------- parsing

#[derive(Clone, Copy, PartialEq, Eq)]
enum TMode {
    /// `t` is the generator of an extension field.
    Generator,
    /// `t` is the only variable (moduli).
    Variable,
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Cursor<'a> {
        Cursor { src: s.as_bytes(), pos: 0 }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::at(self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> std::result::Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let msg = match self.peek() {
                Some(found) => format!("expected `{}`, found `{}`", c as char, found as char),
                None => format!("expected `{}`, found end of input", c as char),
            };
            Err(self.err(msg))
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> std::result::Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| ParseError::at(start + 1, "integer too large"))
    }

    fn finish(&mut self) -> std::result::Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

struct PolyCtx<'f> {
    field: &'f Field,
    n: usize,
    t: TMode,
}

impl PolyCtx<'_> {
    fn expr(&self, c: &mut Cursor) -> std::result::Result<Poly, ParseError> {
        let mut acc = self.term(c)?;
        loop {
            if c.eat(b'+') {
                acc = acc.add(&self.term(c)?);
            } else if c.eat(b'-') {
                acc = acc.sub(&self.term(c)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&self, c: &mut Cursor) -> std::result::Result<Poly, ParseError> {
        let mut acc = self.unary(c)?;
        loop {
            if c.peek() == Some(b'*') {
                c.pos += 1;
                acc = acc.mul(&self.unary(c)?);
            } else if c.peek() == Some(b'/') {
                c.pos += 1;
                let at = c.pos;
                let d = self.unary(c)?;
                let k = d
                    .as_constant()
                    .filter(|k| !self.field.is_zero(k))
                    .ok_or_else(|| ParseError::at(at + 1, "division only by a nonzero constant"))?;
                acc = acc.scale(&self.field.inv(&k).expect("nonzero"));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&self, c: &mut Cursor) -> std::result::Result<Poly, ParseError> {
        if c.eat(b'-') {
            Ok(self.unary(c)?.neg())
        } else if c.eat(b'+') {
            self.unary(c)
        } else {
            self.power(c)
        }
    }

    fn power(&self, c: &mut Cursor) -> std::result::Result<Poly, ParseError> {
        let base = self.atom(c)?;
        if c.peek() == Some(b'^') && c.src.get(c.pos + 1) != Some(&b'-') {
            c.pos += 1;
            let at = c.pos;
            let e = c.uint()?;
            if e > MAX_EXPONENT as u64 {
                return Err(ParseError::at(at + 1, format!("exponent exceeds {MAX_EXPONENT}")));
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn atom(&self, c: &mut Cursor) -> std::result::Result<Poly, ParseError> {
        let n = self.n;
        match c.peek() {
            Some(b'(') => {
                c.pos += 1;
                let p = self.expr(c)?;
                c.expect(b')')?;
                Ok(p)
            }
            Some(d) if d.is_ascii_digit() => {
                let start = c.pos;
                while c.pos < c.src.len() && c.src[c.pos].is_ascii_digit() {
                    c.pos += 1;
                }
                let ten = self.field.from_i64(10);
                let mut v = self.field.zero();
                for &b in &c.src[start..c.pos] {
                    v = self.field.add(&self.field.mul(&v, &ten), &self.field.from_i64((b - b'0') as i64));
                }
                Ok(Poly::constant(self.field, n, v))
            }
            Some(b'x') if self.t == TMode::Generator => {
                let at = c.pos;
                c.pos += 1;
                if !c.src.get(c.pos).is_some_and(|b| b.is_ascii_digit()) {
                    return Err(ParseError::at(at + 1, "expected a variable index after `x`"));
                }
                let k = c.uint()? as usize;
                if k == 0 || k > n {
                    return Err(ParseError::at(at + 1, format!("variable x{k} out of range for n = {n}")));
                }
                Ok(Poly::var(self.field, n, k - 1))
            }
            Some(b't') => {
                let at = c.pos;
                c.pos += 1;
                match self.t {
                    TMode::Variable => Ok(Poly::var(self.field, n, 0)),
                    TMode::Generator => match self.field.generator() {
                        Some(g) => Ok(Poly::constant(self.field, n, g)),
                        None => Err(ParseError::at(at + 1, "`t` is only defined in extension fields")),
                    },
                }
            }
            Some(b) => Err(c.err(format!("unexpected `{}`", b as char))),
            None => Err(c.err("unexpected end of input")),
        }
    }
}

fn smallest_prime_factor(q: u64) -> u64 {
    (2..).take_while(|d| d * d <= q).find(|d| q % d == 0).unwrap_or(q)
}

fn field_tag(c: &mut Cursor) -> std::result::Result<Field, ParseError> {
    let at = c.pos;
    if c.eat(b'Q') {
        return Ok(Field::rationals());
    }
    if !c.eat(b'F') {
        return Err(c.err("expected a field tag `Q` or `F<q>`"));
    }
    let q = c.uint()?;
    let bad = |m: String| ParseError::at(at + 1, m);
    if q < 2 || q > u32::MAX as u64 {
        return Err(bad(format!("invalid field order {q}")));
    }
    let p = smallest_prime_factor(q);
    let mut s = 0u32;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        s += 1;
    }
    if r != 1 {
        return Err(bad(format!("{q} is not a prime power")));
    }
    if c.peek() == Some(b'/') {
        c.pos += 1;
        let base = Field::prime(p as u32).map_err(|e| bad(e.to_string()))?;
        let ctx = PolyCtx { field: &base, n: 1, t: TMode::Variable };
        let m = ctx.expr(c)?;
        if m.total_degree() != s || s < 2 {
            return Err(bad(format!("modulus must have degree {s}")));
        }
        let modulus: Vec<u32> = (0..=s)
            .map(|k| match m.coeff(&[k]) {
                Scalar::Fin(v) => v,
                Scalar::Rat(_) => unreachable!("prime field"),
            })
            .collect();
        return Field::new(FieldDescriptor::Extension { p: p as u32, s, modulus }).map_err(|e| bad(e.to_string()));
    }
    Field::finite(q as u32).map_err(|e| bad(e.to_string()))
}

pub fn parse_field(s: &str) -> Result<Field> {
    let mut c = Cursor::new(s);
    let f = field_tag(&mut c)?;
    c.finish()?;
    Ok(f)
}

/// A polynomial in `x1..xn` over `field`.
pub fn parse_poly(s: &str, field: &Field, n: usize) -> Result<Poly> {
    let mut c = Cursor::new(s);
    let p = PolyCtx { field, n, t: TMode::Generator }.expr(&mut c)?;
    c.finish()?;
    Ok(p)
}

/// A parsed automorphism as given by the user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutoInput {
    Expanded(Endo),
    Factored(FactoredAuto),
}

impl AutoInput {
    pub fn field(&self) -> &Field {
        match self {
            AutoInput::Expanded(e) => e.field(),
            AutoInput::Factored(w) => w.field(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            AutoInput::Expanded(e) => e.n(),
            AutoInput::Factored(w) => w.n(),
        }
    }

    pub fn expand(&self, cap: Option<u32>) -> Result<Endo> {
        match self {
            AutoInput::Expanded(e) => Ok(e.clone()),
            AutoInput::Factored(w) => Ok(w.expand_capped(cap)?),
        }
    }

    /// A factored word for the map. Expanded input must be affine or triangular.
    pub fn to_factored(&self) -> Result<FactoredAuto> {
        match self {
            AutoInput::Factored(w) => Ok(w.clone()),
            AutoInput::Expanded(e) => {
                let field = e.field();
                if let Some(t) = e.as_triangular() {
                    return Ok(FactoredAuto::from_factor(field, BasicFactor::Triangular(t)));
                }
                if let Some((m, b)) = e.as_affine() {
                    let mut w = FactoredAuto::identity(field, e.n());
                    if b.iter().any(|v| !field.is_zero(v)) {
                        w.push(BasicFactor::Translation(b), 1);
                    }
                    w.push(BasicFactor::Linear(m), 1);
                    return Ok(w);
                }
                Err(CliError::Usage(
                    "expanded input must be affine or triangular; give other maps as a factored word".into(),
                ))
            }
        }
    }
}

/// Number of top-level entries in the bracketed list opening at `open`.
fn count_entries(src: &[u8], open: usize) -> usize {
    let mut depth = 0usize;
    let mut count = 1;
    let mut empty = true;
    for &b in &src[open..] {
        match b {
            b'(' | b'[' => depth += 1,
            b')' | b']' => {
                depth -= 1;
                if depth == 0 {
                    break;
                }
            }
            b',' if depth == 1 => count += 1,
            b';' if depth == 1 => {
                count = 1;
                empty = true;
                continue;
            }
            _ => {}
        }
        if depth >= 1 && !b.is_ascii_whitespace() && b != b'(' && b != b'[' {
            empty = false;
        }
    }
    if empty {
        0
    } else {
        count
    }
}

/// Best guess of the dimension of a header-less automorphism.
fn infer_n(s: &str) -> Option<usize> {
    let b = s.as_bytes();
    let t = s.trim_start();
    let off = s.len() - t.len();
    if t.starts_with('(') {
        return Some(count_entries(b, off));
    }
    for key in ["Tr(", "T(", "S(", "D(", "L["] {
        if let Some(p) = s.find(key) {
            return Some(count_entries(b, p + key.len() - 1));
        }
    }
    let mut max = 0;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'x' || (b[i] == b'E' && b.get(i + 1) == Some(&b'(')) {
            let mut j = i + 1 + usize::from(b[i] == b'E');
            let start = j;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(k) = s[start..j].trim().parse::<usize>() {
                max = max.max(k);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    (max > 0).then_some(max)
}

struct Parser<'a, 'f> {
    c: Cursor<'a>,
    ctx: PolyCtx<'f>,
}

impl Parser<'_, '_> {
    fn poly(&mut self) -> std::result::Result<Poly, ParseError> {
        self.ctx.expr(&mut self.c)
    }

    fn scalar(&mut self) -> std::result::Result<Scalar, ParseError> {
        let at = self.c.pos;
        let p = self.poly()?;
        p.as_constant().ok_or_else(|| ParseError::at(at + 1, "expected a constant"))
    }

    /// Comma-separated entries up to `close`; the opening bracket is already consumed.
    fn list<T>(
        &mut self,
        close: u8,
        mut item: impl FnMut(&mut Self) -> std::result::Result<T, ParseError>,
    ) -> std::result::Result<Vec<T>, ParseError> {
        let mut out = vec![item(self)?];
        while self.c.eat(b',') {
            out.push(item(self)?);
        }
        self.c.expect(close)?;
        Ok(out)
    }

    fn arity<T>(&self, v: &[T]) -> Result<()> {
        if v.len() != self.ctx.n {
            return Err(CliError::Arity { expected: self.ctx.n, found: v.len() });
        }
        Ok(())
    }

    fn derivation(&mut self) -> Result<TriDerivation> {
        let at = self.c.pos;
        if !self.c.eat_str("D(") {
            return Err(self.c.err("expected `D(`").into());
        }
        let images = self.list(b')', |p| p.poly())?;
        self.arity(&images)?;
        TriDerivation::new(self.ctx.field, images).map_err(|e| ParseError::at(at + 1, e.to_string()).into())
    }

    fn factor(&mut self) -> Result<BasicFactor> {
        let field = self.ctx.field;
        let n = self.ctx.n;
        let at = self.c.pos;
        self.c.skip_ws();
        let at_err = |e: cotame_core::Error| CliError::Parse(ParseError::at(at + 1, e.to_string()));
        if self.c.eat_str("Tr(") {
            let b = self.list(b')', |p| p.scalar())?;
            self.arity(&b)?;
            return Ok(BasicFactor::Translation(b));
        }
        if self.c.eat_str("T(") {
            let comps = self.list(b')', |p| p.poly())?;
            self.arity(&comps)?;
            let e = Endo::new(field, comps).map_err(at_err)?;
            let t = e.as_triangular().ok_or_else(|| ParseError::at(at + 1, "T(...) components are not triangular"))?;
            return Ok(BasicFactor::Triangular(t));
        }
        if self.c.eat_str("L[") {
            let rows = self.list(b']', |p| {
                p.c.expect(b'[')?;
                p.list(b']', |q| q.scalar())
            })?;
            self.arity(&rows)?;
            for r in &rows {
                self.arity(r)?;
            }
            let m = Matrix::from_rows(field, rows).map_err(at_err)?;
            if cotame_core::Field::is_zero(field, &m.det()) {
                return Err(ParseError::at(at + 1, "L[...] matrix is singular").into());
            }
            return Ok(BasicFactor::Linear(m));
        }
        if self.c.eat_str("E(") {
            let i_at = self.c.pos;
            let i = self.c.uint()? as usize;
            if i == 0 || i > n {
                return Err(ParseError::at(i_at + 1, format!("index {i} out of range for n = {n}")).into());
            }
            self.c.expect(b';')?;
            let f = self.poly()?;
            self.c.expect(b')')?;
            return BasicFactor::elementary(i - 1, f).map_err(at_err);
        }
        if self.c.eat_str("Exp(") {
            let f = self.poly()?;
            self.c.expect(b';')?;
            let d = self.derivation()?;
            self.c.expect(b')')?;
            if !d.kernel_check(&f) {
                return Err(ParseError::at(at + 1, "Exp(F; D) requires D(F) = 0").into());
            }
            return Ok(BasicFactor::Exp { f, d });
        }
        if self.c.eat_str("S(") {
            let comps = self.list(b')', |p| p.poly())?;
            self.arity(&comps)?;
            let mut perm = Vec::with_capacity(n);
            let mut signs = Vec::with_capacity(n);
            for c in &comps {
                let ms = c.monomials();
                let ok = ms.len() == 1 && ms[0].1.degree() == 1;
                if !ok {
                    return Err(ParseError::at(at + 1, "S(...) entries must be c*x_j").into());
                }
                let j = ms[0].1.exps().iter().position(|&e| e == 1).expect("degree one");
                perm.push(j);
                signs.push(ms[0].0.clone());
            }
            return BasicFactor::signed_permutation(field, perm, signs).map_err(at_err);
        }
        Err(self.c.err("expected a factor `T(`, `L[`, `E(`, `Tr(`, `Exp(` or `S(`").into())
    }

    fn word(&mut self) -> Result<FactoredAuto> {
        let field = self.ctx.field;
        let mut w = FactoredAuto::identity(field, self.ctx.n);
        if self.c.eat_str("id") {
            return Ok(w);
        }
        loop {
            let f = self.factor()?;
            let e = if self.c.eat_str("^-1") { -1 } else { 1 };
            w.push(f, e);
            if !self.c.eat(b'*') {
                return Ok(w);
            }
        }
    }
}

fn header(c: &mut Cursor) -> std::result::Result<Option<(Field, usize)>, ParseError> {
    if !c.eat(b'[') {
        return Ok(None);
    }
    let f = field_tag(c)?;
    c.expect(b',')?;
    let n = c.uint()? as usize;
    if n == 0 {
        return Err(c.err("dimension must be positive"));
    }
    c.expect(b']')?;
    Ok(Some((f, n)))
}

/// Parses `[F,n] (...)` or `[F,n] word`. Without a header the field is
/// `default_field` (or `Q`) and `n` is inferred from the text.
pub fn parse_automorphism(s: &str, default_field: Option<&Field>) -> Result<AutoInput> {
    let mut c = Cursor::new(s);
    let (field, n) = match header(&mut c)? {
        Some(h) => h,
        None => {
            let f = default_field.cloned().unwrap_or_else(Field::rationals);
            let n = infer_n(s).filter(|&n| n > 0).ok_or_else(|| ParseError::at(1, "cannot infer the dimension"))?;
            (f, n)
        }
    };
    let field = field;
    let mut p = Parser { c, ctx: PolyCtx { field: &field, n, t: TMode::Generator } };
    let out = if p.c.peek() == Some(b'(') {
        p.c.pos += 1;
        let comps = p.list(b')', |q| q.poly())?;
        p.arity(&comps)?;
        AutoInput::Expanded(Endo::new(&field, comps)?)
    } else {
        AutoInput::Factored(p.word()?)
    };
    p.c.finish()?;
    Ok(out)
}

/// A word with a known field and dimension (used inside certificate files).
pub fn parse_word(s: &str, field: &Field, n: usize) -> Result<FactoredAuto> {
    let mut p = Parser { c: Cursor::new(s), ctx: PolyCtx { field, n, t: TMode::Generator } };
    let w = p.word()?;
    p.c.finish()?;
    Ok(w)
}

/// A header-less tuple `(c1, ..., cn)` with a known field and dimension.
pub fn parse_tuple(s: &str, field: &Field, n: usize) -> Result<Endo> {
    let mut p = Parser { c: Cursor::new(s), ctx: PolyCtx { field, n, t: TMode::Generator } };
    p.c.expect(b'(')?;
    let comps = p.list(b')', |q| q.poly())?;
    p.arity(&comps)?;
    p.c.finish()?;
    Ok(Endo::new(field, comps)?)
}

/// `D(q1, ..., qn)`; `n` is the number of entries.
pub fn parse_derivation(s: &str, field: &Field) -> Result<TriDerivation> {
    let t = s.trim_start();
    let n = if t.starts_with("D(") { count_entries(s.as_bytes(), s.len() - t.len() + 1) } else { 0 };
    if n == 0 {
        return Err(ParseError::at(s.len() - t.len() + 1, "expected `D(q1, ..., qn)`").into());
    }
    let mut p = Parser { c: Cursor::new(s), ctx: PolyCtx { field, n, t: TMode::Generator } };
    let d = p.derivation()?;
    p.c.finish()?;
    Ok(d)
}

/// Scalar literal such as `3`, `-1/2` or `t+1`.
pub fn parse_scalar(s: &str, field: &Field) -> Result<Scalar> {
    let mut p = Parser { c: Cursor::new(s), ctx: PolyCtx { field, n: 1, t: TMode::Generator } };
    let v = p.scalar()?;
    p.c.finish()?;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_tag_round_trips() {
        let f = parse_field("F9/t^2+2*t+2").unwrap();
        assert_eq!(fmt_field(&f), "F9/t^2+2*t+2");
        assert_eq!(fmt_field(&parse_field("F9/t^2+1").unwrap()), "F9");
        assert!(parse_field("F6").is_err());
    }

    #[test]
    fn infers_dimension() {
        assert_eq!(infer_n("(x1, x2)"), Some(2));
        assert_eq!(infer_n("E(3; x1) * Tr(0, 0, 1)"), Some(3));
        assert_eq!(infer_n("L[[1,0],[0,1]]"), Some(2));
        assert_eq!(infer_n("E(2; x1^2)"), Some(2));
    }
}
