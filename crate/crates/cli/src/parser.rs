//! Parser for the ring/module definition language.
//!
//! ```text
//! ring B over GF(101) vars x y z ; relations x^2, y^2, y*z, z^2 ;
//! module M over B presented by [ x ] ;
//! module N over B presented by [ x , y ; 0 , z ] ;
//! ```
//!
//! Rings may instead be given by a structure-constant table:
//!
//! ```text
//! ring C over GF(101) basis 1 t ; unit 1 ; maximal t ; generators t ;
//!   products t*t = 0 ;
//! ```
//!
//! Modules may also be given by explicit action matrices (one integer matrix
//! per basis label). Every ring name doubles as the rank-one free module.

use std::collections::BTreeMap;
use std::fmt;

use totref_core::field::FieldKind;
use totref_core::matrix::Matrix;
use totref_core::module::{coker_of_free_matrix, free_module, FinModule, FreeMatrix};
use totref_core::poly::{Monomial, Poly};
use totref_core::LocalAlgebra;

#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let (l, c0) = (line, col);
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Ident(s),
                    line: l,
                    col: c0,
                });
            }
            '0'..='9' => {
                let (l, c0) = (line, col);
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let v: i64 = s.parse().map_err(|_| ParseError {
                    line: l,
                    col: c0,
                    msg: format!("integer literal `{s}` out of range"),
                })?;
                out.push(Spanned {
                    tok: Tok::Int(v),
                    line: l,
                    col: c0,
                });
            }
            '(' | ')' | '[' | ']' | ';' | ',' | '=' | '^' | '*' | '+' | '-' => {
                out.push(Spanned {
                    tok: Tok::Sym(c),
                    line,
                    col,
                });
                chars.next();
                col += 1;
            }
            other => {
                return Err(ParseError {
                    line,
                    col,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

/// Polynomial AST: sum of (coefficient, [(var, power)...]) terms.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyAst {
    pub terms: Vec<(i64, Vec<(String, u32)>)>,
}

impl PolyAst {
    #[allow(dead_code)]
    pub fn to_string_canonical(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, (c, fs)) in self.terms.iter().enumerate() {
            let mut s = String::new();
            let neg = *c < 0;
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else if neg {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            if fs.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if a != 1 {
                    s.push_str(&format!("{a}*"));
                }
                let factors: Vec<String> = fs
                    .iter()
                    .map(|(v, p)| {
                        if *p == 1 {
                            v.clone()
                        } else {
                            format!("{v}^{p}")
                        }
                    })
                    .collect();
                s.push_str(&factors.join("*"));
            }
            parts.push(s);
        }
        parts.concat()
    }

    fn to_poly(&self, vars: &[String], field: FieldKind) -> Result<Poly, String> {
        let n = vars.len();
        let mut p = Poly::zero(n);
        for (c, fs) in &self.terms {
            let mut exps = vec![0u32; n];
            for (v, pow) in fs {
                let i = vars
                    .iter()
                    .position(|w| w == v)
                    .ok_or_else(|| format!("unknown variable `{v}`"))?;
                exps[i] += pow;
            }
            p.add_term(Monomial(exps), field.from_int(*c));
        }
        Ok(p)
    }
}

#[derive(Debug, Clone)]
pub enum RingBody {
    Quotient {
        vars: Vec<String>,
        relations: Vec<PolyAst>,
    },
    Table {
        basis: Vec<String>,
        unit: String,
        maximal: Vec<String>,
        generators: Vec<String>,
        /// (a, b, linear combination of basis labels)
        products: Vec<(String, String, Vec<(i64, String)>)>,
    },
}

#[derive(Debug, Clone)]
pub struct RingDecl {
    pub name: String,
    pub field: FieldKind,
    pub body: RingBody,
}

#[derive(Debug, Clone)]
pub enum ModuleBody {
    Presented { rows: Vec<Vec<PolyAst>> },
    Action { mats: Vec<(String, Vec<Vec<i64>>)> },
}

#[derive(Debug, Clone)]
pub struct ModuleDecl {
    pub name: String,
    pub ring: String,
    pub body: ModuleBody,
}

#[derive(Debug, Clone)]
pub enum Item {
    Ring(RingDecl),
    Module(ModuleDecl),
}

#[derive(Debug, Clone, Default)]
pub struct DefFile {
    pub items: Vec<Item>,
}

impl DefFile {
    /// Canonical printing; `parse(print(ast))` reproduces the AST.
    /// Exercised by the round-trip tests.
    #[allow(dead_code)]
    pub fn print(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            match item {
                Item::Ring(r) => {
                    out.push_str(&format!("ring {} over {} ", r.name, r.field));
                    match &r.body {
                        RingBody::Quotient { vars, relations } => {
                            out.push_str(&format!("vars {} ;", vars.join(" ")));
                            let rels: Vec<String> =
                                relations.iter().map(|p| p.to_string_canonical()).collect();
                            out.push_str(&format!(" relations {} ;\n", rels.join(", ")));
                        }
                        RingBody::Table {
                            basis,
                            unit,
                            maximal,
                            generators,
                            products,
                        } => {
                            out.push_str(&format!("basis {} ;", basis.join(" ")));
                            out.push_str(&format!(" unit {unit} ;"));
                            out.push_str(&format!(" maximal {} ;", maximal.join(" ")));
                            out.push_str(&format!(" generators {} ;", generators.join(" ")));
                            let ps: Vec<String> = products
                                .iter()
                                .map(|(a, b, lc)| format!("{a}*{b} = {}", print_lincomb(lc)))
                                .collect();
                            out.push_str(&format!(" products {} ;\n", ps.join(", ")));
                        }
                    }
                }
                Item::Module(m) => {
                    out.push_str(&format!("module {} over {} ", m.name, m.ring));
                    match &m.body {
                        ModuleBody::Presented { rows } => {
                            let rs: Vec<String> = rows
                                .iter()
                                .map(|r| {
                                    r.iter()
                                        .map(|p| p.to_string_canonical())
                                        .collect::<Vec<_>>()
                                        .join(", ")
                                })
                                .collect();
                            out.push_str(&format!("presented by [ {} ] ;\n", rs.join(" ; ")));
                        }
                        ModuleBody::Action { mats } => {
                            let ms: Vec<String> = mats
                                .iter()
                                .map(|(lbl, rows)| {
                                    let rs: Vec<String> = rows
                                        .iter()
                                        .map(|r| {
                                            r.iter()
                                                .map(|x| x.to_string())
                                                .collect::<Vec<_>>()
                                                .join(", ")
                                        })
                                        .collect();
                                    format!("{lbl} = [ {} ]", rs.join(" ; "))
                                })
                                .collect();
                            out.push_str(&format!("action {} ;\n", ms.join(", ")));
                        }
                    }
                }
            }
        }
        out
    }
}

#[allow(dead_code)]
fn print_lincomb(lc: &[(i64, String)]) -> String {
    if lc.is_empty() {
        return "0".to_string();
    }
    lc.iter()
        .enumerate()
        .map(|(i, (c, l))| {
            let sign = if i == 0 {
                if *c < 0 {
                    "-"
                } else {
                    ""
                }
            } else if *c < 0 {
                " - "
            } else {
                " + "
            };
            let a = c.abs();
            if a == 1 {
                format!("{sign}{l}")
            } else {
                format!("{sign}{a}*{l}")
            }
        })
        .collect()
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn err_here(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.peek().map(|s| (s.line, s.col)).unwrap_or_else(|| {
            self.toks
                .last()
                .map(|s| (s.line, s.col + 1))
                .unwrap_or((1, 1))
        });
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn next(&mut self) -> Result<Spanned, ParseError> {
        let t = self
            .peek()
            .cloned()
            .ok_or_else(|| self.err_here("unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        match self.next()? {
            Spanned {
                tok: Tok::Sym(s), ..
            } if s == c => Ok(()),
            other => Err(ParseError {
                line: other.line,
                col: other.col,
                msg: format!("expected `{c}`, found {:?}", other.tok),
            }),
        }
    }

    fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.next()? {
            Spanned {
                tok: Tok::Ident(s), ..
            } => Ok(s),
            other => Err(ParseError {
                line: other.line,
                col: other.col,
                msg: format!("expected identifier, found {:?}", other.tok),
            }),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let t = self.next()?;
        match &t.tok {
            Tok::Ident(s) if s == kw => Ok(()),
            other => Err(ParseError {
                line: t.line,
                col: t.col,
                msg: format!("expected `{kw}`, found {other:?}"),
            }),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Spanned { tok: Tok::Ident(s), .. }) if s == kw)
    }

    fn at_sym(&self, c: char) -> bool {
        matches!(self.peek(), Some(Spanned { tok: Tok::Sym(s), .. }) if *s == c)
    }

    fn parse_field(&mut self) -> Result<FieldKind, ParseError> {
        if self.at_keyword("QQ") {
            self.next()?;
            return Ok(FieldKind::Rat);
        }
        self.expect_keyword("GF")?;
        self.expect_sym('(')?;
        let p = match self.next()? {
            Spanned {
                tok: Tok::Int(v), ..
            } if v > 1 => v as u64,
            other => {
                return Err(ParseError {
                    line: other.line,
                    col: other.col,
                    msg: "expected a prime modulus".into(),
                })
            }
        };
        self.expect_sym(')')?;
        Ok(FieldKind::Fp(p))
    }

    /// poly := ['-'] term (('+'|'-') term)*
    fn parse_poly(&mut self) -> Result<PolyAst, ParseError> {
        let mut terms = Vec::new();
        let mut sign = 1i64;
        if self.at_sym('-') {
            self.next()?;
            sign = -1;
        }
        loop {
            let (c, fs) = self.parse_term()?;
            if c != 0 {
                terms.push((sign * c, fs));
            }
            if self.at_sym('+') {
                self.next()?;
                sign = 1;
            } else if self.at_sym('-') {
                self.next()?;
                sign = -1;
            } else {
                break;
            }
        }
        Ok(PolyAst { terms })
    }

    /// term := INT ['*' factors] | factors
    fn parse_term(&mut self) -> Result<(i64, Vec<(String, u32)>), ParseError> {
        let mut coeff = 1i64;
        let mut factors = Vec::new();
        match self.peek() {
            Some(Spanned {
                tok: Tok::Int(v), ..
            }) => {
                coeff = *v;
                self.next()?;
                if self.at_sym('*') {
                    self.next()?;
                } else {
                    return Ok((coeff, factors));
                }
            }
            Some(Spanned {
                tok: Tok::Ident(_), ..
            }) => {}
            _ => return Err(self.err_here("expected a polynomial term")),
        }
        loop {
            let v = self.expect_ident()?;
            let mut pow = 1u32;
            if self.at_sym('^') {
                self.next()?;
                match self.next()? {
                    Spanned {
                        tok: Tok::Int(e), ..
                    } if e >= 0 => pow = e as u32,
                    other => {
                        return Err(ParseError {
                            line: other.line,
                            col: other.col,
                            msg: "expected a nonnegative exponent".into(),
                        })
                    }
                }
            }
            factors.push((v, pow));
            if self.at_sym('*') {
                self.next()?;
            } else {
                break;
            }
        }
        Ok((coeff, factors))
    }

    fn parse_lincomb(&mut self) -> Result<Vec<(i64, String)>, ParseError> {
        // linear combination of basis labels, or the literal 0
        let mut out = Vec::new();
        let mut sign = 1i64;
        if self.at_sym('-') {
            self.next()?;
            sign = -1;
        }
        loop {
            match self.peek() {
                Some(Spanned {
                    tok: Tok::Int(0), ..
                }) => {
                    self.next()?;
                }
                Some(Spanned {
                    tok: Tok::Int(v), ..
                }) => {
                    let c = *v;
                    self.next()?;
                    if self.at_sym('*') {
                        self.next()?;
                        let l = self.expect_ident()?;
                        out.push((sign * c, l));
                    } else {
                        return Err(
                            self.err_here("coefficients need `*label` (only 0 stands alone)")
                        );
                    }
                }
                Some(Spanned {
                    tok: Tok::Ident(_), ..
                }) => {
                    let l = self.expect_ident()?;
                    out.push((sign, l));
                }
                _ => return Err(self.err_here("expected a basis-label combination")),
            }
            if self.at_sym('+') {
                self.next()?;
                sign = 1;
            } else if self.at_sym('-') {
                self.next()?;
                sign = -1;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn parse_ring(&mut self) -> Result<RingDecl, ParseError> {
        self.expect_keyword("ring")?;
        let name = self.expect_ident()?;
        self.expect_keyword("over")?;
        let field = self.parse_field()?;
        if self.at_keyword("vars") {
            self.next()?;
            let mut vars = Vec::new();
            while let Some(Spanned {
                tok: Tok::Ident(_), ..
            }) = self.peek()
            {
                vars.push(self.expect_ident()?);
            }
            self.expect_sym(';')?;
            self.expect_keyword("relations")?;
            let mut relations = vec![self.parse_poly()?];
            while self.at_sym(',') {
                self.next()?;
                relations.push(self.parse_poly()?);
            }
            self.expect_sym(';')?;
            Ok(RingDecl {
                name,
                field,
                body: RingBody::Quotient { vars, relations },
            })
        } else {
            self.expect_keyword("basis")?;
            let mut basis = Vec::new();
            loop {
                match self.peek() {
                    Some(Spanned {
                        tok: Tok::Ident(_), ..
                    }) => basis.push(self.expect_ident()?),
                    Some(Spanned {
                        tok: Tok::Int(1), ..
                    }) => {
                        self.next()?;
                        basis.push("1".to_string());
                    }
                    _ => break,
                }
            }
            self.expect_sym(';')?;
            self.expect_keyword("unit")?;
            let unit = match self.peek() {
                Some(Spanned {
                    tok: Tok::Int(1), ..
                }) => {
                    self.next()?;
                    "1".to_string()
                }
                _ => self.expect_ident()?,
            };
            self.expect_sym(';')?;
            self.expect_keyword("maximal")?;
            let mut maximal = Vec::new();
            while let Some(Spanned {
                tok: Tok::Ident(_), ..
            }) = self.peek()
            {
                maximal.push(self.expect_ident()?);
            }
            self.expect_sym(';')?;
            self.expect_keyword("generators")?;
            let mut generators = Vec::new();
            while let Some(Spanned {
                tok: Tok::Ident(_), ..
            }) = self.peek()
            {
                generators.push(self.expect_ident()?);
            }
            self.expect_sym(';')?;
            self.expect_keyword("products")?;
            let mut products = Vec::new();
            loop {
                let a = self.expect_ident()?;
                self.expect_sym('*')?;
                let b = self.expect_ident()?;
                self.expect_sym('=')?;
                let lc = self.parse_lincomb()?;
                products.push((a, b, lc));
                if self.at_sym(',') {
                    self.next()?;
                } else {
                    break;
                }
            }
            self.expect_sym(';')?;
            Ok(RingDecl {
                name,
                field,
                body: RingBody::Table {
                    basis,
                    unit,
                    maximal,
                    generators,
                    products,
                },
            })
        }
    }

    fn parse_module(&mut self) -> Result<ModuleDecl, ParseError> {
        self.expect_keyword("module")?;
        let name = self.expect_ident()?;
        self.expect_keyword("over")?;
        let ring = self.expect_ident()?;
        if self.at_keyword("presented") {
            self.next()?;
            self.expect_keyword("by")?;
            self.expect_sym('[')?;
            let mut rows = Vec::new();
            loop {
                let mut row = vec![self.parse_poly()?];
                while self.at_sym(',') {
                    self.next()?;
                    row.push(self.parse_poly()?);
                }
                rows.push(row);
                if self.at_sym(';') {
                    self.next()?;
                } else {
                    break;
                }
            }
            self.expect_sym(']')?;
            self.expect_sym(';')?;
            Ok(ModuleDecl {
                name,
                ring,
                body: ModuleBody::Presented { rows },
            })
        } else {
            self.expect_keyword("action")?;
            let mut mats = Vec::new();
            loop {
                let lbl = match self.peek() {
                    Some(Spanned {
                        tok: Tok::Int(1), ..
                    }) => {
                        self.next()?;
                        "1".to_string()
                    }
                    _ => self.expect_ident()?,
                };
                self.expect_sym('=')?;
                self.expect_sym('[')?;
                let mut rows = Vec::new();
                loop {
                    let mut row = Vec::new();
                    loop {
                        let mut sign = 1i64;
                        if self.at_sym('-') {
                            self.next()?;
                            sign = -1;
                        }
                        match self.next()? {
                            Spanned {
                                tok: Tok::Int(v), ..
                            } => row.push(sign * v),
                            other => {
                                return Err(ParseError {
                                    line: other.line,
                                    col: other.col,
                                    msg: "expected an integer entry".into(),
                                })
                            }
                        }
                        if self.at_sym(',') {
                            self.next()?;
                        } else {
                            break;
                        }
                    }
                    rows.push(row);
                    if self.at_sym(';') {
                        self.next()?;
                    } else {
                        break;
                    }
                }
                self.expect_sym(']')?;
                mats.push((lbl, rows));
                if self.at_sym(',') {
                    self.next()?;
                } else {
                    break;
                }
            }
            self.expect_sym(';')?;
            Ok(ModuleDecl {
                name,
                ring,
                body: ModuleBody::Action { mats },
            })
        }
    }
}

pub fn parse(text: &str) -> Result<DefFile, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0 };
    let mut items = Vec::new();
    while p.peek().is_some() {
        if p.at_keyword("ring") {
            items.push(Item::Ring(p.parse_ring()?));
        } else if p.at_keyword("module") {
            items.push(Item::Module(p.parse_module()?));
        } else {
            return Err(p.err_here("expected `ring` or `module`"));
        }
    }
    Ok(DefFile { items })
}

/// Resolved environment: named rings and modules. Every ring name also names
/// the rank-one free module over it.
pub struct Env {
    pub rings: BTreeMap<String, LocalAlgebra>,
    pub modules: BTreeMap<String, FinModule>,
}

#[derive(Debug)]
pub enum ResolveError {
    #[allow(dead_code)]
    Parse(ParseError),
    Engine(totref_core::Error),
    Semantic(String),
}

impl fmt::Display for ResolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolveError::Parse(e) => write!(f, "{e}"),
            ResolveError::Engine(e) => write!(f, "{e}"),
            ResolveError::Semantic(s) => write!(f, "{s}"),
        }
    }
}

impl std::error::Error for ResolveError {}

impl From<totref_core::Error> for ResolveError {
    fn from(e: totref_core::Error) -> Self {
        ResolveError::Engine(e)
    }
}

pub fn resolve(def: &DefFile, max_degree: usize) -> Result<Env, ResolveError> {
    let mut env = Env {
        rings: BTreeMap::new(),
        modules: BTreeMap::new(),
    };
    for item in &def.items {
        match item {
            Item::Ring(r) => {
                let alg = match &r.body {
                    RingBody::Quotient { vars, relations } => {
                        let polys: Result<Vec<Poly>, String> =
                            relations.iter().map(|p| p.to_poly(vars, r.field)).collect();
                        let polys = polys.map_err(ResolveError::Semantic)?;
                        LocalAlgebra::build_quotient(r.field, &r.name, vars, &polys, max_degree)?
                    }
                    RingBody::Table {
                        basis,
                        unit,
                        maximal,
                        generators,
                        products,
                    } => build_table_ring(r, basis, unit, maximal, generators, products)?,
                };
                env.modules.insert(r.name.clone(), free_module(&alg, 1));
                env.rings.insert(r.name.clone(), alg);
            }
            Item::Module(m) => {
                let alg = env
                    .rings
                    .get(&m.ring)
                    .ok_or_else(|| ResolveError::Semantic(format!("unknown ring `{}`", m.ring)))?;
                let module = match &m.body {
                    ModuleBody::Presented { rows } => {
                        let vars = alg.generator_labels().to_vec();
                        let nrows = rows.len();
                        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
                        if rows.iter().any(|r| r.len() != ncols) {
                            return Err(ResolveError::Semantic(format!(
                                "ragged presentation matrix for module `{}`",
                                m.name
                            )));
                        }
                        let mut entries = Vec::with_capacity(nrows * ncols);
                        for row in rows {
                            for p in row {
                                let poly = p
                                    .to_poly(&vars, alg.field())
                                    .map_err(ResolveError::Semantic)?;
                                entries.push(alg.elem_from_poly(&poly, &vars)?);
                            }
                        }
                        let fm = FreeMatrix::new(alg.clone(), nrows, ncols, entries);
                        let q = coker_of_free_matrix(&fm);
                        FinModule::new_unchecked(alg.clone(), q.action_matrices().to_vec(), &m.name)
                    }
                    ModuleBody::Action { mats } => {
                        let labels = alg.labels();
                        let vdim = mats
                            .first()
                            .map(|(_, rows)| rows.len())
                            .ok_or_else(|| ResolveError::Semantic("empty action list".into()))?;
                        let mut action = vec![None; alg.dim()];
                        for (lbl, rows) in mats {
                            let i = labels.iter().position(|l| l == lbl).ok_or_else(|| {
                                ResolveError::Semantic(format!("unknown basis label `{lbl}`"))
                            })?;
                            if rows.len() != vdim || rows.iter().any(|r| r.len() != vdim) {
                                return Err(ResolveError::Semantic(format!(
                                    "action matrix for `{lbl}` must be {vdim}x{vdim}"
                                )));
                            }
                            let mat = Matrix::from_fn(alg.field(), vdim, vdim, |a, b| {
                                alg.field().from_int(rows[a][b])
                            });
                            action[i] = Some(mat);
                        }
                        let action: Result<Vec<Matrix>, ResolveError> = action
                            .into_iter()
                            .enumerate()
                            .map(|(i, m)| {
                                m.ok_or_else(|| {
                                    ResolveError::Semantic(format!(
                                        "missing action matrix for basis label `{}`",
                                        labels[i]
                                    ))
                                })
                            })
                            .collect();
                        FinModule::new(alg.clone(), action?, &m.name)?
                    }
                };
                env.modules.insert(m.name.clone(), module);
            }
        }
    }
    Ok(env)
}

fn build_table_ring(
    r: &RingDecl,
    basis: &[String],
    unit: &str,
    maximal: &[String],
    generators: &[String],
    products: &[(String, String, Vec<(i64, String)>)],
) -> Result<LocalAlgebra, ResolveError> {
    let dim = basis.len();
    let field = r.field;
    let index = |l: &str| -> Result<usize, ResolveError> {
        basis
            .iter()
            .position(|b| b == l)
            .ok_or_else(|| ResolveError::Semantic(format!("unknown basis label `{l}`")))
    };
    let unit_idx = index(unit)?;
    // Dense product table: unspecified products among non-unit elements are 0;
    // products with the unit are forced.
    let mut table: Vec<Matrix> = (0..dim).map(|_| Matrix::zeros(field, dim, dim)).collect();
    for i in 0..dim {
        table[unit_idx].set(i, i, field.one());
        table[i].set(i, unit_idx, field.one());
    }
    for (a, b, lc) in products {
        let ia = index(a)?;
        let ib = index(b)?;
        let mut col = Matrix::zeros(field, dim, 1);
        for (c, l) in lc {
            let il = index(l)?;
            let cur = col.get(il, 0);
            col.set(il, 0, cur.add(&field.from_int(*c)));
        }
        for i in 0..dim {
            table[ia].set(i, ib, col.get(i, 0));
            table[ib].set(i, ia, col.get(i, 0));
        }
    }
    let mm: Result<Vec<usize>, ResolveError> = maximal.iter().map(|l| index(l)).collect();
    let gens: Result<Vec<usize>, ResolveError> = generators.iter().map(|l| index(l)).collect();
    Ok(LocalAlgebra::build_from_structure_constants(
        field,
        &r.name,
        basis.to_vec(),
        table,
        unit_idx,
        mm?,
        gens?,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_quotient_ring_and_module() {
        let text = "ring B over GF(101) vars x y z ; relations x^2, y^2, y*z, z^2 ;\n\
                    module M over B presented by [ x ] ;\n";
        let def = parse(text).unwrap();
        let env = resolve(&def, 8).unwrap();
        assert_eq!(env.rings["B"].dim(), 6);
        assert_eq!(env.modules["M"].vdim(), 3);
        assert_eq!(env.modules["B"].vdim(), 6); // the free module alias
    }

    #[test]
    fn parse_table_ring() {
        let text = "ring C over GF(101) basis 1 t ; unit 1 ; maximal t ; generators t ; products t*t = 0 ;\n";
        let def = parse(text).unwrap();
        let env = resolve(&def, 8).unwrap();
        assert_eq!(env.rings["C"].dim(), 2);
        assert!(env.rings["C"].is_gorenstein());
    }

    #[test]
    fn parse_matrix_presentation() {
        let text = "ring A over GF(101) vars x ; relations x^2 ;\n\
                    module N over A presented by [ x , 0 ; 0 , x ] ;\n";
        let def = parse(text).unwrap();
        let env = resolve(&def, 8).unwrap();
        assert_eq!(env.modules["N"].vdim(), 2);
    }

    #[test]
    fn parse_action_module() {
        let text = "ring A over GF(101) vars x ; relations x^2 ;\n\
                    module K over A action 1 = [ 1 ], x = [ 0 ] ;\n";
        let def = parse(text).unwrap();
        let env = resolve(&def, 8).unwrap();
        assert_eq!(env.modules["K"].vdim(), 1);
    }

    #[test]
    fn roundtrip_print_parse() {
        let text = "ring B over GF(101) vars x y z ; relations x^2, y^2 - y*z, z^2 ;\n\
                    module M over B presented by [ x , y ; 0 , z ] ;\n\
                    ring C over GF(7) basis 1 t ; unit 1 ; maximal t ; generators t ; products t*t = 0 ;\n";
        let def = parse(text).unwrap();
        let printed = def.print();
        let def2 = parse(&printed).unwrap();
        let printed2 = def2.print();
        assert_eq!(printed, printed2);
        // And the environments agree on shapes.
        let e1 = resolve(&def, 8).unwrap();
        let e2 = resolve(&def2, 8).unwrap();
        assert_eq!(e1.rings["B"].dim(), e2.rings["B"].dim());
        assert_eq!(e1.modules["M"].vdim(), e2.modules["M"].vdim());
    }

    #[test]
    fn one_dimensional_relations_rejected() {
        let text =
            "ring R over GF(101) vars x y z w ; relations x^2, y^2 - y*w, y*z - y*w, z^2 - y*w ;\n";
        let def = parse(text).unwrap();
        match resolve(&def, 8) {
            Err(ResolveError::Engine(totref_core::Error::NotArtinian { .. })) => {}
            other => panic!("expected NotArtinian, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let text = "ring A over GF(101) vars x ;\nrelations @;";
        let err = parse(text).unwrap_err();
        assert_eq!(err.line, 2);
    }
}
