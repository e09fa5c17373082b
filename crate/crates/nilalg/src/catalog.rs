//! The built-in classification catalog.
//!
//! A small text format (`.alg`) stores every multiplication table as a
//! parameterized entry over a declared field, together with optional
//! derived parameters (`let`), admissibility constraints (`where`), a
//! section label, and an `external` marker for entries whose tables
//! live elsewhere.  Entries instantiate to exact [`Algebra`] values,
//! and a claims layer records, for each entry, its parent algebra and
//! defining cocycle, its annihilator dimension, the sub-varieties it
//! belongs to, and the isomorphism relations inside parameterized
//! families — all of which can be verified mechanically.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::OnceLock;

use thiserror::Error;

use crate::algebra::Algebra;
use crate::cohomology::{parse_form_with, BilinearForm, CohomologyError};
use crate::extension::{extend, ExtensionError, ExtensionSpec};
use crate::identity::{builtin, holds, IdentityError};
use crate::iso::{verify_witness, IsoError};
use crate::linalg::Matrix;
use crate::orbit::{self, OrbitError};
use crate::scalar::{parse_scalar_with, FieldTag, Scalar, ScalarError};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq)]
pub enum CatalogError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    SyntaxError { line: usize, col: usize, msg: String },
    #[error("unknown parameter {name:?} at line {line}")]
    UnknownParameter { name: String, line: usize },
    #[error("duplicate product e{i}*e{j} at line {line}")]
    DuplicateProduct { i: usize, j: usize, line: usize },
    #[error("missing parameter {0:?}")]
    MissingParameter(String),
    #[error("constraint violated for {name}: {constraint}")]
    ConstraintViolated { name: String, constraint: String },
    #[error("value not representable: {0}")]
    NonRepresentable(String),
    #[error("entry {0} is external and has no table")]
    ExternalEntry(String),
    #[error("no catalog entry named {0:?}")]
    UnknownEntry(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("claim failed for {name}: {detail}")]
    ClaimFailed { name: String, detail: String },
    #[error("scalar error: {0}")]
    Scalar(#[from] ScalarError),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<CohomologyError> for CatalogError {
    fn from(e: CohomologyError) -> Self {
        CatalogError::Internal(e.to_string())
    }
}

impl From<ExtensionError> for CatalogError {
    fn from(e: ExtensionError) -> Self {
        CatalogError::Internal(e.to_string())
    }
}

impl From<OrbitError> for CatalogError {
    fn from(e: OrbitError) -> Self {
        CatalogError::Internal(e.to_string())
    }
}

impl From<IdentityError> for CatalogError {
    fn from(e: IdentityError) -> Self {
        CatalogError::Internal(e.to_string())
    }
}

impl From<IsoError> for CatalogError {
    fn from(e: IsoError) -> Self {
        CatalogError::Internal(e.to_string())
    }
}

// ---------------------------------------------------------------------------
// Entries
// ---------------------------------------------------------------------------

/// One structure-constant line `eI*eJ = Σ coeff eK`.
#[derive(Debug, Clone, PartialEq)]
pub struct Product {
    pub i: usize,
    pub j: usize,
    /// `(coefficient expression, k)` pairs; an empty expression means 1.
    pub terms: Vec<(String, usize)>,
}

/// A parsed catalog entry: a parameterized multiplication table.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub dim: usize,
    pub tag: FieldTag,
    pub params: Vec<String>,
    /// `let name = expr;` clauses, evaluated in order.
    pub derived: Vec<(String, String)>,
    /// `l != r` admissibility constraints.
    pub constraints: Vec<(String, String)>,
    pub section: String,
    pub external: bool,
    pub table: Vec<Product>,
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    fn new(text: &str) -> Cursor {
        // Blank out comments, preserving positions.
        let mut chars: Vec<char> = Vec::with_capacity(text.len());
        for line in text.split_inclusive('\n') {
            let cut = line.find('#').unwrap_or(line.len());
            for (idx, c) in line.chars().enumerate() {
                if idx < cut || c == '\n' {
                    chars.push(c);
                } else {
                    chars.push(' ');
                }
            }
        }
        Cursor {
            chars,
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err(&self, msg: impl Into<String>) -> CatalogError {
        CatalogError::SyntaxError {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn eof(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    /// Reads an identifier-like word (alphanumeric / underscore).
    fn read_word(&mut self) -> Result<String, CatalogError> {
        self.skip_ws();
        let mut w = String::new();
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
            w.push(self.bump().unwrap());
        }
        if w.is_empty() {
            return Err(self.err("expected a word"));
        }
        Ok(w)
    }

    /// Peeks the next word without consuming it.
    fn peek_word(&mut self) -> Option<String> {
        self.skip_ws();
        let mut w = String::new();
        let mut i = self.pos;
        while let Some(&c) = self.chars.get(i) {
            if c.is_alphanumeric() || c == '_' {
                w.push(c);
                i += 1;
            } else {
                break;
            }
        }
        if w.is_empty() {
            None
        } else {
            Some(w)
        }
    }

    fn expect_char(&mut self, want: char) -> Result<(), CatalogError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.err(format!("expected {want:?}, found {c:?}"))),
            None => Err(self.err(format!("expected {want:?}, found end of input"))),
        }
    }

    /// Reads raw text up to (not including) the delimiter.
    fn read_until(&mut self, delim: char) -> Result<String, CatalogError> {
        let mut out = String::new();
        loop {
            match self.peek() {
                Some(c) if c == delim => return Ok(out),
                Some(_) => out.push(self.bump().unwrap()),
                None => return Err(self.err(format!("expected {delim:?} before end of input"))),
            }
        }
    }

    /// Reads a run of non-whitespace characters.
    fn read_token(&mut self) -> Result<String, CatalogError> {
        self.skip_ws();
        let mut out = String::new();
        while matches!(self.peek(), Some(c) if !c.is_whitespace()) {
            out.push(self.bump().unwrap());
        }
        if out.is_empty() {
            return Err(self.err("expected a token"));
        }
        Ok(out)
    }

    /// True when the text from here up to the next `;` contains `!=`
    /// and no brace (i.e. another `where` constraint follows).
    fn upcoming_constraint(&self) -> bool {
        let mut i = self.pos;
        let mut seen = String::new();
        while let Some(&c) = self.chars.get(i) {
            if c == ';' {
                return seen.contains("!=");
            }
            if c == '{' || c == '}' {
                return false;
            }
            seen.push(c);
            i += 1;
        }
        false
    }
}

/// Splits on top-level `+` and `-`, respecting parentheses.
fn split_signed_terms(text: &str) -> Result<Vec<(i32, String)>, String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut sign = 1i32;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth -= 1;
                cur.push(c);
            }
            '+' | '-' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push((sign, cur.trim().to_string()));
                    sign = 1;
                }
                if c == '-' {
                    sign = -sign;
                }
                cur = String::new();
            }
            _ => cur.push(c),
        }
    }
    if depth != 0 {
        return Err("unbalanced parentheses".into());
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur.trim().to_string()));
    }
    if out.is_empty() {
        return Err("empty sum".into());
    }
    Ok(out)
}

/// Splits a summand `COEFF <letter>K` into the coefficient text and
/// the 1-based index `K`.
fn split_basis_term(term: &str, letter: char) -> Result<(String, usize), String> {
    let t = term.trim_end();
    let chars: Vec<char> = t.chars().collect();
    let mut i = chars.len();
    while i > 0 && chars[i - 1].is_ascii_digit() {
        i -= 1;
    }
    if i == chars.len() || i == 0 || chars[i - 1] != letter {
        return Err(format!("summand {term:?} does not end in {letter}K"));
    }
    let k: usize = chars[i..].iter().collect::<String>().parse().unwrap();
    let head = i - 1;
    if head > 0 {
        let prev = chars[head - 1];
        if !(prev.is_whitespace() || prev == '*') {
            return Err(format!("summand {term:?} does not end in a separate {letter}K"));
        }
    }
    let mut coeff: String = chars[..head].iter().collect();
    coeff = coeff.trim().to_string();
    if coeff.ends_with('*') {
        coeff.pop();
        coeff = coeff.trim_end().to_string();
    }
    Ok((coeff, k))
}

/// Identifiers mentioned in an expression (skipping numbers).
fn collect_idents(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_alphabetic() || chars[i] == '_' {
            let mut w = String::new();
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                w.push(chars[i]);
                i += 1;
            }
            if !out.contains(&w) {
                out.push(w);
            }
        } else {
            i += 1;
        }
    }
    out
}

const KEYWORDS: [&str; 5] = ["params", "let", "where", "section", "external"];

fn parse_entry(cur: &mut Cursor) -> Result<CatalogEntry, CatalogError> {
    let kw = cur.read_word()?;
    if kw != "algebra" {
        return Err(cur.err(format!("expected \"algebra\", found {kw:?}")));
    }
    let name = cur.read_word()?;
    let kw = cur.read_word()?;
    if kw != "dim" {
        return Err(cur.err(format!("expected \"dim\", found {kw:?}")));
    }
    let dim_word = cur.read_word()?;
    let dim: usize = dim_word
        .parse()
        .map_err(|_| cur.err(format!("bad dimension {dim_word:?}")))?;
    if dim == 0 {
        return Err(cur.err("dimension must be positive"));
    }
    let kw = cur.read_word()?;
    if kw != "over" {
        return Err(cur.err(format!("expected \"over\", found {kw:?}")));
    }
    let field_text = cur.read_token()?;
    let tag =
        FieldTag::parse(&field_text).map_err(|e| cur.err(format!("bad field {field_text:?}: {e}")))?;

    let mut entry = CatalogEntry {
        name,
        dim,
        tag,
        params: Vec::new(),
        derived: Vec::new(),
        constraints: Vec::new(),
        section: String::new(),
        external: false,
        table: Vec::new(),
    };

    // Names an expression may mention at a given point.
    let allowed = |e: &CatalogEntry| -> Vec<String> {
        let mut v = e.params.clone();
        v.extend(e.derived.iter().map(|(n, _)| n.clone()));
        v.push("i".to_string());
        v
    };
    let check_idents = |cur: &Cursor, e: &CatalogEntry, text: &str| -> Result<(), CatalogError> {
        let ok = allowed(e);
        for ident in collect_idents(text) {
            if !ok.contains(&ident) {
                return Err(CatalogError::UnknownParameter {
                    name: ident,
                    line: cur.line,
                });
            }
        }
        Ok(())
    };

    loop {
        cur.skip_ws();
        if cur.peek() == Some('{') {
            break;
        }
        let word = cur.read_word()?;
        match word.as_str() {
            "params" => loop {
                match cur.peek_word() {
                    Some(w) if !KEYWORDS.contains(&w.as_str()) => {
                        let p = cur.read_word()?;
                        if !p.chars().next().is_some_and(|c| c.is_alphabetic()) {
                            return Err(cur.err(format!("bad parameter name {p:?}")));
                        }
                        entry.params.push(p);
                    }
                    _ => break,
                }
                cur.skip_ws();
                if cur.peek() == Some('{') {
                    break;
                }
            },
            "let" => {
                let n = cur.read_word()?;
                cur.expect_char('=')?;
                let expr = cur.read_until(';')?.trim().to_string();
                cur.expect_char(';')?;
                check_idents(cur, &entry, &expr)?;
                entry.derived.push((n, expr));
            }
            "where" => loop {
                let text = cur.read_until(';')?;
                cur.expect_char(';')?;
                let Some((l, r)) = text.split_once("!=") else {
                    return Err(cur.err(format!("constraint {:?} is not of the form L != R", text.trim())));
                };
                check_idents(cur, &entry, l)?;
                check_idents(cur, &entry, r)?;
                entry
                    .constraints
                    .push((l.trim().to_string(), r.trim().to_string()));
                cur.skip_ws();
                if !cur.upcoming_constraint() {
                    break;
                }
            },
            "section" => {
                entry.section = cur.read_token()?;
            }
            "external" => {
                cur.expect_char(';')?;
                entry.external = true;
                return Ok(entry);
            }
            other => {
                return Err(cur.err(format!("unexpected {other:?} in entry header")));
            }
        }
    }

    cur.expect_char('{')?;
    loop {
        cur.skip_ws();
        if cur.peek() == Some('}') {
            cur.bump();
            break;
        }
        let line = cur.line;
        let lhs1 = cur.read_word()?;
        cur.expect_char('*')?;
        let lhs2 = cur.read_word()?;
        cur.expect_char('=')?;
        let rhs = cur.read_until(';')?;
        cur.expect_char(';')?;
        let parse_basis = |w: &str| -> Result<usize, CatalogError> {
            w.strip_prefix('e')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&k| k >= 1 && k <= dim)
                .ok_or_else(|| CatalogError::SyntaxError {
                    line,
                    col: 1,
                    msg: format!("bad basis element {w:?} for dimension {dim}"),
                })
        };
        let i = parse_basis(&lhs1)?;
        let j = parse_basis(&lhs2)?;
        if entry.table.iter().any(|p| p.i == i && p.j == j) {
            return Err(CatalogError::DuplicateProduct { i, j, line });
        }
        let mut terms = Vec::new();
        for (sign, term) in split_signed_terms(&rhs).map_err(|m| CatalogError::SyntaxError {
            line,
            col: 1,
            msg: m,
        })? {
            let (coeff, k) = split_basis_term(&term, 'e').map_err(|m| CatalogError::SyntaxError {
                line,
                col: 1,
                msg: m,
            })?;
            if k < 1 || k > dim {
                return Err(CatalogError::SyntaxError {
                    line,
                    col: 1,
                    msg: format!("basis index e{k} out of range for dimension {dim}"),
                });
            }
            check_idents(cur, &entry, &coeff)?;
            let coeff = match (sign < 0, coeff.is_empty()) {
                (false, _) => coeff,
                (true, true) => "-1".to_string(),
                (true, false) => format!("-{coeff}"),
            };
            terms.push((coeff, k));
        }
        entry.table.push(Product { i, j, terms });
    }
    Ok(entry)
}

/// Parses a multi-entry catalog text.
pub fn parse_catalog_text(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut cur = Cursor::new(text);
    let mut out = Vec::new();
    while !cur.eof() {
        out.push(parse_entry(&mut cur)?);
    }
    Ok(out)
}

/// Parses a text containing exactly one entry.
pub fn parse_algebra_file(text: &str) -> Result<CatalogEntry, CatalogError> {
    let entries = parse_catalog_text(text)?;
    match entries.len() {
        1 => Ok(entries.into_iter().next().unwrap()),
        n => Err(CatalogError::SyntaxError {
            line: 1,
            col: 1,
            msg: format!("expected exactly one entry, found {n}"),
        }),
    }
}

/// Serializes an entry back to the text format.  Re-parsing the output
/// reproduces the entry exactly.
pub fn unparse(e: &CatalogEntry) -> String {
    let mut s = format!("algebra {} dim {} over {}", e.name, e.dim, e.tag);
    if !e.params.is_empty() {
        s.push_str(" params ");
        s.push_str(&e.params.join(" "));
    }
    s.push('\n');
    for (n, expr) in &e.derived {
        let _ = writeln!(s, "  let {n} = {expr};");
    }
    if !e.constraints.is_empty() {
        s.push_str("  where ");
        for (l, r) in &e.constraints {
            let _ = write!(s, "{l} != {r}; ");
        }
        s.push('\n');
    }
    if !e.section.is_empty() {
        let _ = writeln!(s, "  section {}", e.section);
    }
    if e.external {
        s.push_str("  external;\n");
        return s;
    }
    s.push_str("{\n");
    for p in &e.table {
        let _ = write!(s, "  e{}*e{} = ", p.i, p.j);
        for (idx, (coeff, k)) in p.terms.iter().enumerate() {
            let (neg, body) = match coeff.strip_prefix('-') {
                Some(rest) => (true, rest.trim_start()),
                None => (false, coeff.as_str()),
            };
            if idx == 0 {
                if neg {
                    s.push_str("- ");
                }
            } else if neg {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            if body.is_empty() || body == "1" && coeff == "-1" {
                // A bare (possibly negated) basis element.
                if !(coeff.is_empty() || coeff == "-1") {
                    let _ = write!(s, "{body} ");
                }
            } else {
                let _ = write!(s, "{body} ");
            }
            let _ = write!(s, "e{k}");
        }
        s.push_str(";\n");
    }
    s.push_str("}\n");
    s
}

// ---------------------------------------------------------------------------
// The built-in catalog
// ---------------------------------------------------------------------------

/// An immutable set of entries.
#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn section(&self, section: &str) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| e.section == section).collect()
    }
}

const DATA: [&str; 10] = [
    include_str!("data/s1_3.alg"),
    include_str!("data/s1_4.alg"),
    include_str!("data/s1_5.alg"),
    include_str!("data/s2_1.alg"),
    include_str!("data/s2_2.alg"),
    include_str!("data/s2_3.alg"),
    include_str!("data/s2_4.alg"),
    include_str!("data/s2_5.alg"),
    include_str!("data/s2_6.alg"),
    include_str!("data/s2_7.alg"),
];

const EXTERNAL_DATA: &str = include_str!("data/external.alg");

/// The embedded classification catalog (parsed once, then shared).
pub fn builtin_catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut entries = Vec::new();
        for text in DATA.iter().chain([&EXTERNAL_DATA]) {
            entries.extend(parse_catalog_text(text).expect("embedded catalog parses"));
        }
        Catalog { entries }
    })
}

// ---------------------------------------------------------------------------
// Instantiation
// ---------------------------------------------------------------------------

fn eval_expr(
    text: &str,
    tag: FieldTag,
    vars: &[(String, Scalar)],
) -> Result<Scalar, CatalogError> {
    Ok(parse_scalar_with(text, tag, vars)?)
}

fn field_compatible(entry: &CatalogEntry, tag: FieldTag) -> Result<(), CatalogError> {
    if entry.tag == FieldTag::parse("Q").expect("Q parses") || entry.tag == tag {
        Ok(())
    } else {
        Err(CatalogError::FieldMismatch(format!(
            "entry {} is declared over {} and cannot be instantiated over {}",
            entry.name, entry.tag, tag
        )))
    }
}

/// Instantiates an entry at a parameter assignment, returning the
/// algebra together with the full variable table (free and derived
/// parameters), which claim verification needs for its own
/// expressions.
pub fn instantiate_with_vars(
    entry: &CatalogEntry,
    tag: FieldTag,
    assignment: &[(String, Scalar)],
) -> Result<(Algebra, Vec<(String, Scalar)>), CatalogError> {
    if entry.external {
        return Err(CatalogError::ExternalEntry(entry.name.clone()));
    }
    field_compatible(entry, tag)?;
    for (n, _) in assignment {
        if !entry.params.contains(n) && !entry.derived.iter().any(|(d, _)| d == n) {
            return Err(CatalogError::UnknownParameter {
                name: n.clone(),
                line: 0,
            });
        }
    }
    let mut vars: Vec<(String, Scalar)> = Vec::new();
    for p in &entry.params {
        if let Some((_, v)) = assignment.iter().find(|(n, _)| n == p) {
            if v.tag() != tag {
                return Err(CatalogError::FieldMismatch(format!(
                    "parameter {p} has tag {} but the target field is {tag}",
                    v.tag()
                )));
            }
            vars.push((p.clone(), v.clone()));
        }
    }
    for (dname, dexpr) in &entry.derived {
        let bound_names: Vec<&str> = vars.iter().map(|(n, _)| n.as_str()).collect();
        let unbound: Vec<String> = collect_idents(dexpr)
            .into_iter()
            .filter(|n| n != "i" && !bound_names.contains(&n.as_str()))
            .collect();
        let given = assignment.iter().find(|(n, _)| n == dname).map(|(_, v)| v);
        if unbound.is_empty() {
            let val = eval_expr(dexpr, tag, &vars)?;
            if let Some(g) = given {
                if g != &val {
                    return Err(CatalogError::ConstraintViolated {
                        name: entry.name.clone(),
                        constraint: format!("{dname} = {dexpr}"),
                    });
                }
            }
            vars.push((dname.clone(), val));
        } else if let Some(g) = given {
            // The derived value is supplied and a source parameter is
            // free: invert the quadratic relation p - p² when the
            // expression has that exact shape.
            let compact: String = dexpr.chars().filter(|c| !c.is_whitespace()).collect();
            let [p] = unbound.as_slice() else {
                return Err(CatalogError::NonRepresentable(format!(
                    "cannot solve {dname} = {dexpr} for more than one unknown"
                )));
            };
            if compact != format!("{p}-{p}^2") {
                return Err(CatalogError::NonRepresentable(format!(
                    "cannot invert {dname} = {dexpr} for {p}"
                )));
            }
            let one = Scalar::one(tag);
            let disc = one.sub(&Scalar::from_int(tag, 4).mul(g)?)?;
            let root = disc.sqrt().ok_or_else(|| {
                CatalogError::NonRepresentable(format!(
                    "1 - 4*{dname} = {disc} has no square root in {tag}"
                ))
            })?;
            let val = one.add(&root)?.div(&Scalar::from_int(tag, 2))?;
            vars.push((p.clone(), val));
            vars.push((dname.clone(), g.clone()));
        } else {
            return Err(CatalogError::MissingParameter(unbound[0].clone()));
        }
    }
    for p in &entry.params {
        if !vars.iter().any(|(n, _)| n == p) {
            return Err(CatalogError::MissingParameter(p.clone()));
        }
    }
    for (l, r) in &entry.constraints {
        let lv = eval_expr(l, tag, &vars)?;
        let rv = eval_expr(r, tag, &vars)?;
        if lv == rv {
            return Err(CatalogError::ConstraintViolated {
                name: entry.name.clone(),
                constraint: format!("{l} != {r}"),
            });
        }
    }
    let mut a = Algebra::zero_algebra(entry.dim, tag).with_name(entry.name.clone());
    for p in &entry.table {
        for (coeff, k) in &p.terms {
            let c = if coeff.is_empty() {
                Scalar::one(tag)
            } else {
                eval_expr(coeff, tag, &vars)?
            };
            let old = a.sc(p.i - 1, p.j - 1, k - 1).clone();
            a.set_sc(p.i - 1, p.j - 1, k - 1, old.add(&c)?);
        }
    }
    Ok((a, vars))
}

/// Instantiates an entry at a parameter assignment.
pub fn instantiate(
    entry: &CatalogEntry,
    tag: FieldTag,
    assignment: &[(String, Scalar)],
) -> Result<Algebra, CatalogError> {
    instantiate_with_vars(entry, tag, assignment).map(|(a, _)| a)
}

/// Deterministic admissible parameter assignments for an entry.
pub fn sample_assignments(
    entry: &CatalogEntry,
    tag: FieldTag,
    count: usize,
) -> Result<Vec<Vec<(String, Scalar)>>, CatalogError> {
    fn pool(name: &str) -> &'static [i64] {
        match name {
            "theta" => &[2, -1, 3],
            "lambda" => &[2, 3, -1, 5],
            "alpha" => &[2, 3, -2, 5],
            "beta" => &[3, 5, -3, 7],
            "gamma" => &[5, 7, -5, 2],
            _ => &[2, 3, 5, 7],
        }
    }
    let mut out = Vec::new();
    let mut round = 0usize;
    while out.len() < count && round < count + 16 {
        let assignment: Vec<(String, Scalar)> = entry
            .params
            .iter()
            .map(|p| {
                let vals = pool(p);
                (p.clone(), Scalar::from_int(tag, vals[round % vals.len()]))
            })
            .collect();
        round += 1;
        match instantiate(entry, tag, &assignment) {
            Ok(_) => out.push(assignment),
            Err(CatalogError::ConstraintViolated { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    if out.len() < count {
        return Err(CatalogError::Internal(format!(
            "could not find {count} admissible assignments for {}",
            entry.name
        )));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Claims: parent + cocycle, annihilator dimension, varieties
// ---------------------------------------------------------------------------

/// How an entry arises as a central extension.
#[derive(Debug, Clone, PartialEq)]
pub struct ParentClaim {
    /// Catalog name of the parent algebra.
    pub parent: String,
    /// Expression (in the child's parameters) for the parent's λ, when
    /// the parent family takes one.
    pub parent_lambda: Option<String>,
    /// Action-block id whose ∇ basis the cocycle expressions use; when
    /// absent, the expressions are `D(i,j)` forms on the parent.
    pub block: Option<String>,
    /// One expression per adjoined central direction.
    pub cocycles: Vec<String>,
}

/// The mechanically checkable facts attached to a catalog entry.
#[derive(Debug, Clone, PartialEq)]
pub struct Claim {
    pub name: String,
    pub parent: Option<ParentClaim>,
    pub ann_dim: usize,
    /// Identity-template sets the entry satisfies (always includes "cd").
    pub varieties: Vec<&'static str>,
}

fn pc(parent: &str, lam: Option<&str>, block: Option<&str>, cocycles: &[&str]) -> Option<ParentClaim> {
    Some(ParentClaim {
        parent: parent.to_string(),
        parent_lambda: lam.map(str::to_string),
        block: block.map(str::to_string),
        cocycles: cocycles.iter().map(|s| s.to_string()).collect(),
    })
}

fn cl(name: &str, parent: Option<ParentClaim>, ann_dim: usize, extra: &[&'static str]) -> Claim {
    let mut varieties = vec!["cd"];
    varieties.extend_from_slice(extra);
    Claim {
        name: name.to_string(),
        parent,
        ann_dim,
        varieties,
    }
}

/// The full claim set for the built-in catalog.
pub fn claims() -> Vec<Claim> {
    let mut v = Vec::new();

    // Dimension ≤ 3.
    v.push(cl("CD2s01", None, 1, &["commutative", "trivial"]));
    v.push(cl("CD3_01", pc("CD2s01", None, None, &["D(2,2)"]), 1, &["commutative"]));
    v.push(cl("CD3_02", pc("CD2s01", None, None, &["D(2,1) + D(2,2)"]), 1, &[]));
    v.push(cl("CD3_03", pc("CD2s01", None, None, &["D(2,1)"]), 1, &["leibniz"]));
    v.push(cl("CD3_04", pc("CD2s01", None, None, &["D(1,2) + lambda*D(2,1)"]), 1, &[]));
    v.push(cl("CD3s01", None, 2, &["commutative", "trivial"]));
    v.push(cl("CD3s02", None, 1, &["commutative", "trivial"]));
    v.push(cl("CD3s03", None, 1, &["lie", "trivial"]));
    v.push(cl("CD3s04", None, 1, &["trivial"]));

    // Two-dimensional annihilator (two cocycles over CD2s01).
    v.push(cl("CD4_05", pc("CD2s01", None, None, &["D(2,2)", "D(2,1)"]), 2, &[]));
    v.push(cl("CD4_06", pc("CD2s01", None, None, &["D(2,1)", "D(1,2)"]), 2, &[]));
    v.push(cl(
        "CD4_07",
        pc("CD2s01", None, None, &["D(2,2)", "D(1,2) + lambda*D(2,1)"]),
        2,
        &[],
    ));

    // The split anticommutative algebra.
    v.push(cl("CD4s03", None, 2, &["lie", "trivial"]));

    // Extensions of CD3_03.
    v.push(cl("CD4_08", pc("CD3_03", None, Some("2.2"), &["alpha*n2 + n3"]), 1, &[]));
    v.push(cl("CD4_09", pc("CD3_03", None, Some("2.2"), &["n1 - n2 + n3"]), 1, &[]));

    // Extensions of CD3_04(λ).
    v.push(cl("CD4_10", pc("CD3_04", Some("1"), Some("2.3"), &["n1 + n2 + alpha*n3"]), 1, &[]));
    v.push(cl(
        "CD4_11",
        pc("CD3_04", Some("lambda"), Some("2.3"), &["n1 + n2 - (lambda+1)^2*n3"]),
        1,
        &[],
    ));
    v.push(cl(
        "CD4_12",
        pc("CD3_04", Some("lambda"), Some("2.3"), &["n1 + alpha*n3"]),
        1,
        &[],
    ));

    // Extensions of CD3s01.
    let b24 = |n: &str, coc: &str, extra: &[&'static str]| {
        cl(n, pc("CD3s01", None, Some("2.4"), &[coc]), 1, extra)
    };
    v.push(b24("CD4_13", "n1 + n2 + alpha*n3 + n8", &[]));
    v.push(b24("CD4_14", "n1 + alpha*n2 + beta*n4 + n6 + n8", &[]));
    v.push(b24("CD4_15", "alpha*n1 + n2 + n5", &[]));
    v.push(b24("CD4_16", "n1 - 1/2*n3 + n4 + n8", &[]));
    v.push(b24("CD4_17", "n1 + alpha*n3 + n8", &[]));
    v.push(b24("CD4_18", "alpha*n1 + n4 + n5", &[]));
    v.push(b24("CD4_19", "n1 + n4 + n7", &[]));
    v.push(b24("CD4_20", "n1 + n7", &[]));
    v.push(b24("CD4_21", "alpha*n2 + n3 + n4 + n5 + n6", &[]));
    v.push(b24("CD4_22", "n2 - 1/2*n3 + n4 + n8", &[]));
    v.push(b24("CD4_23", "n2 + alpha*n3 + n8", &[]));
    v.push(b24("CD4_24", "n2 + alpha*n4 + n6 + n8", &[]));
    v.push(b24("CD4_25", "n2 + n5 + n6", &[]));
    v.push(b24("CD4_26", "alpha*n2 + n6 + n7", &[]));
    v.push(b24("CD4_27", "n3 + n4 + n5", &[]));
    v.push(b24("CD4_28", "n3 + alpha*n4 + n5 + n6", &[]));
    v.push(b24("CD4_29", "-1/2*n3 + n4 + n8", &[]));
    v.push(b24("CD4_30", "n3 + n5", &[]));
    v.push(b24("CD4_31", "n3 + n7", &[]));
    v.push(b24("CD4_32", "alpha*n3 + n8", &[]));
    v.push(b24("CD4_33", "n4 + n5 + n6", &[]));
    v.push(b24("CD4_34", "n4 + n6", &["commutative"]));
    v.push(b24("CD4_35", "n4 + n6 + n7", &[]));
    v.push(b24("CD4_36", "alpha*n4 + n6 + n8", &[]));
    v.push(b24("CD4_37", "n1 + n4", &["jordan-linearized"]));
    v.push(b24("CD4_38", "n3", &["jordan-linearized"]));

    // Extensions of CD3s02 (over the Gaussian rationals).
    let b25 = |n: &str, coc: &str, extra: &[&'static str]| {
        cl(n, pc("CD3s02", None, Some("2.5"), &[coc]), 1, extra)
    };
    v.push(b25("CD4_39", "n1 + i/2*n2 + n3 - 2*i*n4 + n6 + i*n7", &[]));
    v.push(b25("CD4_40", "n1 + i/2*n2 - 1/2*n3 - i/2*n4 + n6 + i*n7", &[]));
    v.push(b25("CD4_41", "n1 - i/2*n2 + n3 - 2*i*n4 + n6 + i*n7", &[]));
    v.push(b25("CD4_42", "n1 - i/2*n2 - 1/2*n3 - i/2*n4 + n6 + i*n7", &[]));
    v.push(b25("CD4_43", "n1 + alpha*n2 - 1/2*n3 + n6", &[]));
    v.push(b25("CD4_44", "alpha*n1 + beta*n2 + gamma*n5 + n6 + n8", &[]));
    v.push(b25("CD4_45", "2*i*n1 + n2 + n6 + i*n7 + n8", &[]));
    v.push(b25("CD4_46", "-2*i*alpha*n1 + alpha*n2 + n6 + i*n7 + n8", &[]));
    v.push(b25("CD4_47", "n1 + alpha*n3 + beta*n4 + n6", &[]));
    v.push(b25("CD4_48", "alpha*n1 + i*alpha*n5 + n6 + i*n7 + n8", &[]));
    v.push(b25("CD4_49", "alpha*n1 - i*alpha*n5 + n6 + i*n7 + n8", &[]));
    v.push(b25("CD4_50", "alpha*n1 + n5 + n8", &[]));
    v.push(b25("CD4_51", "alpha*n1 + n6 + i*n7 + n8", &[]));
    v.push(b25("CD4_52", "n1 + n8", &["commutative"]));
    v.push(b25("CD4_53", "-1/2*n2 + n3 + i*n4 + n5", &[]));
    v.push(b25("CD4_54", "n2 + alpha*n3 - i*(1+alpha)*n4 + n6 + i*n7", &[]));
    v.push(b25("CD4_55", "n2 + alpha*n3 + n6", &[]));
    v.push(b25("CD4_56", "n2 - 2*n5 + n6 + i*n7 + n8", &[]));
    v.push(b25("CD4_57", "alpha*n2 + beta*n5 + n6 + i*n7 + n8", &[]));
    v.push(b25("CD4_58", "n3 + i*n4 + n5", &[]));
    v.push(b25("CD4_59", "alpha*n3 + beta*n4 + n6", &[]));
    v.push(b25("CD4_60", "i*n3 + n4 + n6 + i*n7", &[]));
    v.push(b25("CD4_61", "-i*alpha*n3 + alpha*n4 + n6 + i*n7", &[]));
    v.push(b25("CD4_62", "n3 - 2*i*n4 + n6 + i*n7", &[]));
    v.push(b25("CD4_63", "-1/2*n3 - i/2*n4 + n6 + i*n7", &[]));
    v.push(b25("CD4_64", "alpha*n3 + n6", &[]));
    v.push(b25("CD4_65", "alpha*n3 + n6 + i*n7", &[]));
    v.push(b25("CD4_66", "n4 + n5", &[]));
    v.push(b25("CD4_67", "n8", &["commutative"]));
    v.push(b25("CD4_68", "n1 + i*n3 + n4", &["jordan-linearized"]));
    v.push(b25("CD4_69", "i*n3 + n4", &["jordan-linearized"]));
    v.push(b25("CD4_70", "n3", &["jordan-linearized"]));

    // Extensions of CD3s03.
    let b26 = |n: &str, coc: &str, extra: &[&'static str]| {
        cl(n, pc("CD3s03", None, Some("2.6"), &[coc]), 1, extra)
    };
    v.push(b26("CD4_71", "n1 + n3", &[]));
    v.push(b26("CD4_72", "n1 + n3 + n6", &[]));
    v.push(b26("CD4_73", "n1 + n4", &[]));
    v.push(b26("CD4_74", "alpha*n1 + n5", &[]));
    v.push(b26("CD4_75", "alpha*n1 + n5 + n6", &[]));
    v.push(b26("CD4_76", "n1 + n6", &[]));
    v.push(b26("CD4_77", "n2 + n5", &[]));
    v.push(b26("CD4_78", "n2 + n5 + n6", &[]));
    v.push(b26("CD4_79", "alpha*n4 + n5 + n7 + n8", &[]));
    v.push(b26("CD4_80", "n4 + n5 + n8", &[]));
    v.push(b26("CD4_81", "n4 + n8", &[]));
    v.push(b26("CD4_82", "n5 + n6 + n8", &[]));
    v.push(b26("CD4_83", "alpha*n6 + n7 + n8", &[]));
    v.push(b26("CD4_84", "n6 + n8", &[]));
    v.push(b26("CD4_85", "n8", &[]));
    v.push(b26("CD4_86", "n2", &["lie"]));

    // Extensions of CD3s04(λ).
    let b27 = |n: &str, lam: &str, coc: &str, extra: &[&'static str]| {
        cl(n, pc("CD3s04", Some(lam), Some("2.7"), &[coc]), 1, extra)
    };
    v.push(b27("D4_00", "0", "n1 + n2 + n5", &[]));
    v.push(b27(
        "CD4_87",
        "lambda",
        "(2*theta-1)*n1 + n2 + n3 - (1-theta)^2/lambda*n4 + theta/lambda*n5 + n8",
        &[],
    ));
    v.push(b27(
        "CD4_88",
        "lambda",
        "(1-2*theta)*n1 + n2 + n3 - theta^2/lambda*n4 + theta/lambda*n5 + n8",
        &[],
    ));
    v.push(b27(
        "CD4_89",
        "lambda",
        "(2*theta-1)*n1 + n2 + n3 - (1-theta)^2/lambda*n4 + (1-theta)/lambda*n5 + n8",
        &[],
    ));
    v.push(b27(
        "CD4_90",
        "lambda",
        "(1-2*theta)*n1 + n2 + n3 - theta^2/lambda*n4 + (1-theta)/lambda*n5 + n8",
        &[],
    ));
    v.push(b27(
        "CD4_91",
        "lambda",
        "(2*theta-1)*n1 + n2 + alpha*n3 - (1-theta)^2/lambda*n4 + n8",
        &[],
    ));
    v.push(b27(
        "CD4_92",
        "lambda",
        "(1-2*theta)*n1 + n2 + alpha*n3 - theta^2/lambda*n4 + n8",
        &[],
    ));
    v.push(b27("CD4_93", "0", "n1 + n2 + alpha*n3 + n4 + alpha*n5 + n8", &[]));
    v.push(b27("CD4_94", "0", "n1 + n2 + alpha*n3 + beta*n4 + n8", &[]));
    v.push(b27("CD4_95", "0", "n1 + n2 + alpha*n3 + alpha*n5 + n8", &[]));
    v.push(b27("CD4_96", "0", "n1 + n2 + alpha*n4 + n5 + n8", &[]));
    v.push(b27("CD4_97", "lambda", "n2 + theta*n3 - n4 + n5 + n8", &[]));
    v.push(b27("CD4_98", "lambda", "n2 + (1-theta)*n3 - n4 + n5 + n8", &[]));
    v.push(b27("CD4_99", "0", "n2 + n3 - n4 + alpha*n5 + n8", &[]));
    v.push(b27("CD4_100", "1/4", "n2 + alpha*n3 - n4 + 2*alpha*n5 + n8", &[]));
    v.push(b27("CD4_101", "0", "n2 + alpha*n3 + beta*n5 + n8", &[]));
    v.push(b27("CD4_102", "lambda", "n2 - n4 + alpha*n5 + n8", &[]));
    v.push(b27("CD4_103", "0", "n2 - n4 + n8", &[]));
    v.push(b27("CD4_104", "0", "n3 + n4 + n5 + n8", &[]));
    v.push(b27("CD4_105", "lambda", "n3 + alpha*n4 + beta*n5 + n8", &[]));
    v.push(b27("CD4_106", "0", "n3 + alpha*n4 + n8", &[]));
    v.push(b27("CD4_107", "lambda", "theta*n3 + n5 + n8", &[]));
    v.push(b27("CD4_108", "lambda", "(1-theta)*n3 + n5 + n8", &[]));
    v.push(b27("CD4_109", "lambda", "n4 + alpha*n5 + n8", &[]));
    v.push(b27("CD4_110", "lambda", "n5 + n8", &[]));
    v.push(b27("CD4_111", "lambda", "n8", &[]));
    v.push(b27(
        "CD4_112",
        "lambda",
        "n1 + alpha*n3 + beta*n4 + gamma*n5 + n8",
        &[],
    ));

    v
}

/// The claim for a single entry, when one exists.
pub fn claim_for(name: &str) -> Option<Claim> {
    claims().into_iter().find(|c| c.name == name)
}

/// Structure-constant equality ignoring names.
fn same_table(a: &Algebra, b: &Algebra) -> bool {
    if a.dim() != b.dim() || a.tag() != b.tag() {
        return false;
    }
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if a.sc(i, j, k) != b.sc(i, j, k) {
                    return false;
                }
            }
        }
    }
    true
}

/// Evaluates a `∇`-combination expression against an action-block
/// basis.
fn nabla_combo(
    expr: &str,
    basis: &[BilinearForm],
    tag: FieldTag,
    vars: &[(String, Scalar)],
) -> Result<BilinearForm, CatalogError> {
    let dim = basis
        .first()
        .map(BilinearForm::dim)
        .ok_or_else(|| CatalogError::Internal("empty basis".into()))?;
    let mut out = BilinearForm::zero(dim, tag);
    let terms = split_signed_terms(expr)
        .map_err(|m| CatalogError::Internal(format!("bad cocycle expression {expr:?}: {m}")))?;
    for (sign, term) in terms {
        let (coeff, k) = split_basis_term(&term, 'n')
            .map_err(|m| CatalogError::Internal(format!("bad cocycle expression {expr:?}: {m}")))?;
        if k < 1 || k > basis.len() {
            return Err(CatalogError::Internal(format!(
                "index n{k} out of range in {expr:?}"
            )));
        }
        let mut c = if coeff.is_empty() {
            Scalar::one(tag)
        } else {
            eval_expr(&coeff, tag, vars)?
        };
        if sign < 0 {
            c = c.neg();
        }
        out = out.add(&basis[k - 1].scale(&c));
    }
    Ok(out)
}

/// The parent algebra and cocycle forms named by a parent claim, at a
/// concrete variable table of the child.
fn resolve_parent_claim(
    pcl: &ParentClaim,
    tag: FieldTag,
    vars: &[(String, Scalar)],
) -> Result<(Algebra, Vec<BilinearForm>), CatalogError> {
    let lam = pcl
        .parent_lambda
        .as_ref()
        .map(|e| eval_expr(e, tag, vars))
        .transpose()?;
    let parent_entry = builtin_catalog()
        .get(&pcl.parent)
        .ok_or_else(|| CatalogError::UnknownEntry(pcl.parent.clone()))?;
    let parent_assignment: Vec<(String, Scalar)> = match &lam {
        Some(l) => vec![("lambda".to_string(), l.clone())],
        None => vec![],
    };
    let parent = instantiate(parent_entry, tag, &parent_assignment)?;
    let forms = match &pcl.block {
        Some(block) => {
            let basis = orbit::nabla_basis(block, lam.as_ref(), tag)?;
            pcl.cocycles
                .iter()
                .map(|e| nabla_combo(e, &basis, tag, vars))
                .collect::<Result<Vec<_>, _>>()?
        }
        None => pcl
            .cocycles
            .iter()
            .map(|e| Ok(parse_form_with(e, parent.dim(), tag, vars)?))
            .collect::<Result<Vec<_>, CatalogError>>()?,
    };
    Ok((parent, forms))
}

/// Checks that rebuilding the entry from its claimed parent and
/// cocycles reproduces the stored table exactly.
pub fn verify_parent_claim(
    claim: &Claim,
    tag: FieldTag,
    assignment: &[(String, Scalar)],
) -> Result<(), CatalogError> {
    let Some(pcl) = &claim.parent else {
        return Ok(());
    };
    let entry = builtin_catalog()
        .get(&claim.name)
        .ok_or_else(|| CatalogError::UnknownEntry(claim.name.clone()))?;
    let (child, vars) = instantiate_with_vars(entry, tag, assignment)?;
    let (parent, forms) = resolve_parent_claim(pcl, tag, &vars)?;
    let spec = ExtensionSpec::new(parent, forms)?;
    let rebuilt = extend(&spec)?;
    if !same_table(&child, &rebuilt) {
        return Err(CatalogError::ClaimFailed {
            name: claim.name.clone(),
            detail: "extension of the claimed parent does not reproduce the table".into(),
        });
    }
    Ok(())
}

/// Soundness report for one instantiation.
#[derive(Debug, Clone, PartialEq)]
pub struct EntryReport {
    pub name: String,
    pub nilpotency_index: usize,
    pub ann_dim: usize,
    /// `(variety, basis instances checked)` per claimed identity set.
    pub varieties: Vec<(String, usize)>,
}

/// Checks the non-derivation claims (identities, nilpotency,
/// annihilator dimension) for one instantiation.
pub fn verify_entry(
    claim: &Claim,
    tag: FieldTag,
    assignment: &[(String, Scalar)],
) -> Result<EntryReport, CatalogError> {
    let entry = builtin_catalog()
        .get(&claim.name)
        .ok_or_else(|| CatalogError::UnknownEntry(claim.name.clone()))?;
    let a = instantiate(entry, tag, assignment)?;
    let mut varieties = Vec::new();
    for variety in &claim.varieties {
        let templates = builtin(variety)?;
        let reports = holds(&templates, &a);
        let mut instances = 0usize;
        for r in &reports {
            if !r.holds {
                return Err(CatalogError::ClaimFailed {
                    name: claim.name.clone(),
                    detail: format!("identity {} of variety {variety} fails", r.name),
                });
            }
            instances += r.instances;
        }
        varieties.push((variety.to_string(), instances));
    }
    let (_, index) = a.power_series();
    let Some(index) = index else {
        return Err(CatalogError::ClaimFailed {
            name: claim.name.clone(),
            detail: "algebra is not nilpotent".into(),
        });
    };
    let ann = a.annihilator().dim();
    if ann != claim.ann_dim {
        return Err(CatalogError::ClaimFailed {
            name: claim.name.clone(),
            detail: format!("annihilator dimension {ann} != claimed {}", claim.ann_dim),
        });
    }
    Ok(EntryReport {
        name: claim.name.clone(),
        nilpotency_index: index,
        ann_dim: ann,
        varieties,
    })
}

// ---------------------------------------------------------------------------
// Isomorphism claims
// ---------------------------------------------------------------------------

/// One concrete isomorphic pair inside a parameterized family.
#[derive(Debug, Clone, PartialEq)]
pub struct IsoSample {
    pub left: Vec<(String, String)>,
    pub right: Vec<(String, String)>,
    /// Optional stored witness, rows of scalar expressions
    /// (columns are images of basis vectors).
    pub witness: Option<Vec<Vec<String>>>,
}

/// A parameter relation `F(p) ≅ F(p')` with sample instantiations.
#[derive(Debug, Clone, PartialEq)]
pub struct IsoClaim {
    pub name: String,
    /// Human-readable statement of the relation.
    pub relation: String,
    pub tag: FieldTag,
    pub samples: Vec<IsoSample>,
}

fn assignment_of(
    pairs: &[(String, String)],
    tag: FieldTag,
) -> Result<Vec<(String, Scalar)>, CatalogError> {
    pairs
        .iter()
        .map(|(n, v)| Ok((n.clone(), parse_scalar_with(v, tag, &[])?)))
        .collect()
}

fn sample(left: &[(&str, &str)], right: &[(&str, &str)]) -> IsoSample {
    IsoSample {
        left: left.iter().map(|(n, v)| (n.to_string(), v.to_string())).collect(),
        right: right.iter().map(|(n, v)| (n.to_string(), v.to_string())).collect(),
        witness: None,
    }
}

fn with_witness(mut s: IsoSample, rows: &[&[&str]]) -> IsoSample {
    s.witness = Some(rows.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect());
    s
}

/// The isomorphism relations attached to the parameterized families,
/// with sample instantiations and (where available) stored witnesses.
pub fn iso_claims() -> Vec<IsoClaim> {
    let q = FieldTag::parse("Q").expect("Q parses");
    let qi = FieldTag::parse("Q(i)").expect("Q(i) parses");
    // ψ = diag(1, −1, 1, 1), which negates every product with an odd
    // number of e₂ factors.
    let diag_sign: &[&[&str]] = &[
        &["1", "0", "0", "0"],
        &["0", "-1", "0", "0"],
        &["0", "0", "1", "0"],
        &["0", "0", "0", "1"],
    ];
    // ψ swapping e₁ ↦ i e₂, e₂ ↦ −i e₁ and negating e₃ (columns are
    // images).
    let swap_i: &[&[&str]] = &[
        &["0", "-i", "0", "0"],
        &["i", "0", "0", "0"],
        &["0", "0", "-1", "0"],
        &["0", "0", "0", "1"],
    ];
    // ψ = diag(i, −i, −1, 1).
    let diag_i: &[&[&str]] = &[
        &["i", "0", "0", "0"],
        &["0", "-i", "0", "0"],
        &["0", "0", "-1", "0"],
        &["0", "0", "0", "1"],
    ];
    let mut v = Vec::new();

    v.push(IsoClaim {
        name: "CD4_43".into(),
        relation: "CD4_43(alpha) = CD4_43(-alpha)".into(),
        tag: qi,
        samples: vec![
            with_witness(sample(&[("alpha", "2")], &[("alpha", "-2")]), diag_sign),
            sample(&[("alpha", "3")], &[("alpha", "-3")]),
            sample(&[("alpha", "i")], &[("alpha", "-i")]),
        ],
    });
    v.push(IsoClaim {
        name: "CD4_44".into(),
        relation: "CD4_44(alpha, beta, gamma) = CD4_44(alpha, -beta, -gamma)".into(),
        tag: qi,
        samples: vec![
            with_witness(
                sample(
                    &[("alpha", "2"), ("beta", "3"), ("gamma", "5")],
                    &[("alpha", "2"), ("beta", "-3"), ("gamma", "-5")],
                ),
                diag_sign,
            ),
            sample(
                &[("alpha", "i"), ("beta", "2"), ("gamma", "3")],
                &[("alpha", "i"), ("beta", "-2"), ("gamma", "-3")],
            ),
        ],
    });
    v.push(IsoClaim {
        name: "CD4_47".into(),
        relation: "CD4_47(alpha, beta) = CD4_47(alpha, -beta)".into(),
        tag: qi,
        samples: vec![
            with_witness(
                sample(&[("alpha", "2"), ("beta", "3")], &[("alpha", "2"), ("beta", "-3")]),
                diag_sign,
            ),
            sample(&[("alpha", "3"), ("beta", "i")], &[("alpha", "3"), ("beta", "-i")]),
        ],
    });
    v.push(IsoClaim {
        name: "CD4_50".into(),
        relation: "CD4_50(alpha) = CD4_50(-alpha)".into(),
        tag: qi,
        samples: vec![
            with_witness(sample(&[("alpha", "2")], &[("alpha", "-2")]), diag_i),
            sample(&[("alpha", "3")], &[("alpha", "-3")]),
        ],
    });
    v.push(IsoClaim {
        name: "CD4_54".into(),
        relation: "CD4_54(alpha) = CD4_54(-alpha-1)".into(),
        tag: qi,
        samples: vec![
            with_witness(sample(&[("alpha", "3")], &[("alpha", "-4")]), swap_i),
            with_witness(sample(&[("alpha", "2")], &[("alpha", "-3")]), swap_i),
        ],
    });
    v.push(IsoClaim {
        name: "CD4_57".into(),
        relation: "CD4_57(alpha, beta) = CD4_57(alpha+beta, -beta)".into(),
        tag: qi,
        samples: vec![
            with_witness(
                sample(&[("alpha", "2"), ("beta", "3")], &[("alpha", "5"), ("beta", "-3")]),
                swap_i,
            ),
            with_witness(
                sample(&[("alpha", "3"), ("beta", "5")], &[("alpha", "8"), ("beta", "-5")]),
                swap_i,
            ),
        ],
    });
    v.push(IsoClaim {
        name: "CD4_59".into(),
        relation: "CD4_59(alpha, beta) = CD4_59(alpha, -beta)".into(),
        tag: qi,
        samples: vec![
            with_witness(
                sample(&[("alpha", "2"), ("beta", "3")], &[("alpha", "2"), ("beta", "-3")]),
                diag_sign,
            ),
            sample(&[("alpha", "i"), ("beta", "2")], &[("alpha", "i"), ("beta", "-2")]),
        ],
    });
    v.push(IsoClaim {
        name: "CD4_91".into(),
        relation: "CD4_91(lambda, alpha) = CD4_91(lambda, -alpha)".into(),
        tag: q,
        samples: vec![
            sample(&[("theta", "2"), ("alpha", "3")], &[("theta", "2"), ("alpha", "-3")]),
            sample(&[("theta", "3"), ("alpha", "2")], &[("theta", "3"), ("alpha", "-2")]),
        ],
    });
    v.push(IsoClaim {
        name: "CD4_92".into(),
        relation: "CD4_92(lambda, alpha) = CD4_92(lambda, -alpha)".into(),
        tag: q,
        samples: vec![
            sample(&[("theta", "2"), ("alpha", "3")], &[("theta", "2"), ("alpha", "-3")]),
        ],
    });
    v.push(IsoClaim {
        name: "CD4_93".into(),
        relation: "CD4_93(alpha) = CD4_93(-alpha)".into(),
        tag: q,
        samples: vec![sample(&[("alpha", "2")], &[("alpha", "-2")])],
    });
    v.push(IsoClaim {
        name: "CD4_94".into(),
        relation: "CD4_94(alpha, beta) = CD4_94(-alpha, beta)".into(),
        tag: q,
        samples: vec![sample(
            &[("alpha", "2"), ("beta", "3")],
            &[("alpha", "-2"), ("beta", "3")],
        )],
    });
    v.push(IsoClaim {
        name: "CD4_95".into(),
        relation: "CD4_95(alpha) = CD4_95(-alpha)".into(),
        tag: q,
        samples: vec![sample(&[("alpha", "2")], &[("alpha", "-2")])],
    });
    v.push(IsoClaim {
        name: "CD4_100".into(),
        relation: "CD4_100(alpha) = CD4_100(-alpha)".into(),
        tag: q,
        samples: vec![sample(&[("alpha", "2")], &[("alpha", "-2")])],
    });
    v.push(IsoClaim {
        name: "CD4_101".into(),
        relation: "CD4_101(alpha, beta) = CD4_101(-alpha, -beta)".into(),
        tag: q,
        samples: vec![sample(
            &[("alpha", "2"), ("beta", "3")],
            &[("alpha", "-2"), ("beta", "-3")],
        )],
    });
    v.push(IsoClaim {
        name: "CD4_109".into(),
        relation: "CD4_109(lambda, alpha) = CD4_109(lambda, -alpha)".into(),
        tag: q,
        samples: vec![sample(
            &[("lambda", "2"), ("alpha", "3")],
            &[("lambda", "2"), ("alpha", "-3")],
        )],
    });
    v.push(IsoClaim {
        name: "CD4_112".into(),
        relation: "CD4_112(lambda, alpha, beta, gamma) = CD4_112(lambda, -alpha, beta, -gamma)".into(),
        tag: q,
        samples: vec![sample(
            &[("lambda", "2"), ("alpha", "3"), ("beta", "5"), ("gamma", "7")],
            &[("lambda", "2"), ("alpha", "-3"), ("beta", "5"), ("gamma", "-7")],
        )],
    });
    v.push(IsoClaim {
        name: "CD4_112".into(),
        relation: "CD4_112(lambda, alpha, beta, gamma) = CD4_112(lambda, (gamma-alpha*beta)*r, 1/lambda - beta, (gamma/lambda - alpha/lambda - beta*gamma)*r) with r^2 = -lambda/(1 - beta + lambda*beta^2)".into(),
        tag: qi,
        samples: vec![with_witness(
            sample(
                &[("lambda", "-2"), ("alpha", "1"), ("beta", "1"), ("gamma", "1")],
                &[("lambda", "-2"), ("alpha", "0"), ("beta", "-3/2"), ("gamma", "-i")],
            ),
            &[
                &["-3*i/2", "-i/2", "0", "0"],
                &["-i", "-i", "0", "0"],
                &["0", "0", "-1", "0"],
                &["0", "0", "1/2", "1"],
            ],
        )],
    });

    v
}

/// Builds a matrix of scalar expressions.
fn matrix_from_texts(rows: &[Vec<String>], tag: FieldTag) -> Result<Matrix, CatalogError> {
    let cols = rows.first().map_or(0, Vec::len);
    let parsed: Result<Vec<Vec<Scalar>>, CatalogError> = rows
        .iter()
        .map(|r| r.iter().map(|t| Ok(parse_scalar_with(t, tag, &[])?)).collect())
        .collect();
    Matrix::from_rows(parsed?, cols, tag)
        .map_err(|e| CatalogError::Internal(format!("bad witness matrix: {e}")))
}

/// Solves for a central-direction completion of a parent automorphism:
/// given θ_L, θ_R over the parent and φ₀ ∈ Aut(parent), finds w, c
/// with ψ = [[φ₀, 0], [wᵀ, c]] an isomorphism A_{θ_L} → A_{θ_R}.
fn induced_witness(
    parent: &Algebra,
    theta_l: &BilinearForm,
    theta_r: &BilinearForm,
    phi0: &Matrix,
) -> Result<Option<Matrix>, CatalogError> {
    let n = parent.dim();
    let tag = parent.tag();
    let moved = match orbit::act(phi0, theta_r) {
        Ok(m) => m,
        Err(OrbitError::SingularMatrix) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut rows = Vec::new();
    let mut b = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut row: Vec<Scalar> = (0..n).map(|k| parent.sc(i, j, k).clone()).collect();
            row.push(theta_l.get(i, j).clone());
            rows.push(row);
            b.push(moved.get(i, j).clone());
        }
    }
    let a = Matrix::from_rows(rows, n + 1, tag)
        .map_err(|e| CatalogError::Internal(e.to_string()))?;
    let Some(mut sol) = a
        .solve(&b)
        .map_err(|e| CatalogError::Internal(e.to_string()))?
    else {
        return Ok(None);
    };
    if sol[n].is_zero() {
        // Move along the kernel to a solution with c ≠ 0, if any.
        let ker = a.kernel();
        let Some(dir) = ker.basis_vectors().into_iter().find(|v| !v[n].is_zero()) else {
            return Ok(None);
        };
        for (s, d) in sol.iter_mut().zip(dir.iter()) {
            *s = s.add(d)?;
        }
    }
    let psi = Matrix::from_fn(n + 1, n + 1, tag, |i, j| {
        if i < n && j < n {
            phi0.get(i, j).clone()
        } else if i == n && j < n {
            sol[j].clone()
        } else if i == n && j == n {
            sol[n].clone()
        } else {
            Scalar::zero(tag)
        }
    });
    Ok(Some(psi))
}

/// Searches for an induced witness over a grid of parent-automorphism
/// family members.
fn search_induced_witness(
    pcl: &ParentClaim,
    tag: FieldTag,
    vars_l: &[(String, Scalar)],
    vars_r: &[(String, Scalar)],
    left: &Algebra,
    right: &Algebra,
) -> Result<Option<Matrix>, CatalogError> {
    let (parent, forms_l) = resolve_parent_claim(pcl, tag, vars_l)?;
    let (_, forms_r) = resolve_parent_claim(pcl, tag, vars_r)?;
    let (theta_l, theta_r) = match (forms_l.as_slice(), forms_r.as_slice()) {
        ([l], [r]) => (l.clone(), r.clone()),
        _ => return Ok(None),
    };
    let fam = orbit::family(&pcl.parent)?;
    let lam = pcl
        .parent_lambda
        .as_ref()
        .map(|e| eval_expr(e, tag, vars_l))
        .transpose()?;
    let is_qi = tag == FieldTag::parse("Q(i)").expect("Q(i) parses");
    let mut values: Vec<Scalar> = [-2i64, -1, 0, 1, 2]
        .iter()
        .map(|&k| Scalar::from_int(tag, k))
        .collect();
    if is_qi {
        let i = Scalar::sqrt_generator(-1)?;
        values.push(i.clone());
        values.push(i.neg());
        values.push(Scalar::one(tag).add(&i)?);
        values.push(Scalar::one(tag).sub(&i)?);
    }
    // Cartesian product over the family's free parameters ("n" only
    // ranges over a parity bit).
    let free: Vec<&String> = fam.params.iter().collect();
    let mut counters = vec![0usize; free.len()];
    loop {
        let mut assignment: Vec<(String, Scalar)> = Vec::new();
        for (idx, p) in free.iter().enumerate() {
            let val = if p.as_str() == "n" {
                Scalar::from_int(tag, (counters[idx] % 2) as i64)
            } else {
                values[counters[idx] % values.len()].clone()
            };
            assignment.push(((*p).clone(), val));
        }
        if fam.takes_lambda {
            if let Some(l) = &lam {
                assignment.push(("lambda".to_string(), l.clone()));
            }
        }
        match orbit::sample_family(&fam, tag, &assignment) {
            Ok(phi0) => {
                if let Some(psi) = induced_witness(&parent, &theta_l, &theta_r, &phi0)? {
                    if verify_witness(left, right, &psi)? {
                        return Ok(Some(psi));
                    }
                }
            }
            Err(OrbitError::ConstraintViolated { .. }) => {}
            Err(e) => return Err(e.into()),
        }
        // Advance the mixed-radix counter.
        let mut idx = 0;
        loop {
            if idx == free.len() {
                return Ok(None);
            }
            let radix = if free[idx].as_str() == "n" { 2 } else { values.len() };
            counters[idx] += 1;
            if counters[idx] < radix {
                break;
            }
            counters[idx] = 0;
            idx += 1;
        }
    }
}

/// Verifies one sample of an isomorphism claim, returning the witness
/// that proves it.
pub fn verify_iso_sample(claim: &IsoClaim, s: &IsoSample) -> Result<Matrix, CatalogError> {
    let entry = builtin_catalog()
        .get(&claim.name)
        .ok_or_else(|| CatalogError::UnknownEntry(claim.name.clone()))?;
    let tag = claim.tag;
    let left_assign = assignment_of(&s.left, tag)?;
    let right_assign = assignment_of(&s.right, tag)?;
    let (left, vars_l) = instantiate_with_vars(entry, tag, &left_assign)?;
    let (right, vars_r) = instantiate_with_vars(entry, tag, &right_assign)?;
    if let Some(rows) = &s.witness {
        let psi = matrix_from_texts(rows, tag)?;
        if verify_witness(&left, &right, &psi)? {
            return Ok(psi);
        }
        return Err(CatalogError::ClaimFailed {
            name: claim.name.clone(),
            detail: "stored witness does not verify".into(),
        });
    }
    let Some(pcl) = claim_for(&claim.name).and_then(|c| c.parent) else {
        return Err(CatalogError::ClaimFailed {
            name: claim.name.clone(),
            detail: "no stored witness and no parent claim to search with".into(),
        });
    };
    match search_induced_witness(&pcl, tag, &vars_l, &vars_r, &left, &right)? {
        Some(psi) => Ok(psi),
        None => Err(CatalogError::ClaimFailed {
            name: claim.name.clone(),
            detail: "no witness found by the induced search".into(),
        }),
    }
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

/// Writes one `.alg` file per entry plus an index file.
pub fn export_catalog(dir: &Path) -> Result<(), CatalogError> {
    let io = |e: std::io::Error| CatalogError::Io(e.to_string());
    std::fs::create_dir_all(dir).map_err(io)?;
    let mut index = String::new();
    for entry in builtin_catalog().entries() {
        let path = dir.join(format!("{}.alg", entry.name));
        std::fs::write(&path, unparse(entry)).map_err(io)?;
        let _ = write!(
            index,
            "{}\tdim {}\tover {}\tsection {}",
            entry.name,
            entry.dim,
            entry.tag,
            if entry.section.is_empty() { "-" } else { &entry.section },
        );
        if !entry.params.is_empty() {
            let _ = write!(index, "\tparams {}", entry.params.join(","));
        }
        if !entry.constraints.is_empty() {
            let texts: Vec<String> = entry
                .constraints
                .iter()
                .map(|(l, r)| format!("{l} != {r}"))
                .collect();
            let _ = write!(index, "\twhere {}", texts.join("; "));
        }
        if entry.external {
            let _ = write!(index, "\texternal");
        } else if let Some(claim) = claim_for(&entry.name) {
            let _ = write!(index, "\tann {}", claim.ann_dim);
            let _ = write!(index, "\tvarieties {}", claim.varieties.join(","));
            if let Some(p) = &claim.parent {
                let _ = write!(index, "\tparent {} <{}>", p.parent, p.cocycles.join("; "));
            }
        }
        index.push('\n');
    }
    for claim in iso_claims() {
        let _ = writeln!(index, "iso\t{}", claim.relation);
    }
    std::fs::write(dir.join("index.txt"), index).map_err(io)?;
    Ok(())
}
