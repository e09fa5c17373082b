//! Second cohomology for CD-algebras and their sub-varieties.
//!
//! Bilinear forms are written in the Δ basis: Δ_ij(e_l, e_m) = δ_il·δ_jm,
//! so a form is an n² coefficient vector and the cocycle space Z² is the
//! kernel of a linear constraint system.  The constraints are generated
//! mechanically from the variety's multilinear identity templates: in
//! each monomial the outermost product is replaced by θ and all inner
//! products are evaluated in A.  This reproduces the three displayed
//! θ-conditions for the CD identities and is correct for any multilinear
//! identity because θ's image lies in the annihilator of the extension.

use std::fmt;

use thiserror::Error;

use crate::algebra::Algebra;
use crate::identity::{tuples, Expr, IdentityTemplate};
use crate::linalg::{quotient_basis, LinalgError, Matrix, Subspace};
use crate::scalar::{FieldTag, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("template {0:?} is not usable for cocycle constraints (arity < 2)")]
    NonMultilinearVariety(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("form syntax error: {0}")]
    FormSyntax(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A bilinear form θ = Σ c_ij Δ_ij on an n-dimensional space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    dim: usize,
    tag: FieldTag,
    /// c_ij at index i·n + j.
    coeffs: Vec<Scalar>,
}

impl BilinearForm {
    pub fn zero(dim: usize, tag: FieldTag) -> Self {
        BilinearForm {
            dim,
            tag,
            coeffs: vec![Scalar::zero(tag); dim * dim],
        }
    }

    /// The basis form Δ_ij (0-based indices).
    pub fn delta(dim: usize, tag: FieldTag, i: usize, j: usize) -> Self {
        let mut f = BilinearForm::zero(dim, tag);
        f.coeffs[i * dim + j] = Scalar::one(tag);
        f
    }

    pub fn from_coeffs(dim: usize, tag: FieldTag, coeffs: Vec<Scalar>) -> Self {
        assert_eq!(coeffs.len(), dim * dim);
        BilinearForm { dim, tag, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.coeffs[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.tag(), self.tag);
        self.coeffs[i * self.dim + j] = v;
    }

    /// The flat n² coordinate vector (row-major).
    pub fn as_vec(&self) -> Vec<Scalar> {
        self.coeffs.clone()
    }

    /// The n×n coefficient matrix M with θ(x, y) = xᵀMy.
    pub fn matrix(&self) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, self.tag, |i, j| self.get(i, j).clone())
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        assert_eq!(m.rows(), m.cols());
        let dim = m.rows();
        BilinearForm::from_coeffs(
            dim,
            m.tag(),
            (0..dim * dim)
                .map(|idx| m.get(idx / dim, idx % dim).clone())
                .collect(),
        )
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut acc = Scalar::zero(self.tag);
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() || self.get(i, j).is_zero() {
                    continue;
                }
                let term = x[i]
                    .mul(&y[j])
                    .and_then(|p| p.mul(self.get(i, j)))
                    .expect("same tag");
                acc = acc.add(&term).expect("same tag");
            }
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> BilinearForm {
        BilinearForm::from_coeffs(
            self.dim,
            self.tag,
            self.coeffs.iter().map(|x| x.mul(c).expect("same tag")).collect(),
        )
    }

    pub fn add(&self, other: &BilinearForm) -> BilinearForm {
        assert_eq!(self.dim, other.dim);
        BilinearForm::from_coeffs(
            self.dim,
            self.tag,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b).expect("same tag"))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }
}

impl fmt::Display for BilinearForm {
    /// Prints as a linear combination of `D(i,j)` symbols, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let c = self.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let sym = format!("D({},{})", i + 1, j + 1);
                // Decide sign and magnitude from the canonical string:
                // two-part quadratic values keep internal spaces and get
                // parenthesized; a plain leading '-' becomes the term sign.
                let s = c.to_string();
                let (sign_neg, mag_str) = if s.contains(' ') {
                    (false, format!("({s})"))
                } else if let Some(rest) = s.strip_prefix('-') {
                    (true, rest.to_string())
                } else {
                    (false, s)
                };
                let term = if mag_str == "1" {
                    sym
                } else {
                    format!("{mag_str}*{sym}")
                };
                if first {
                    if sign_neg {
                        write!(f, "-{term}")?;
                    } else {
                        write!(f, "{term}")?;
                    }
                    first = false;
                } else if sign_neg {
                    write!(f, " - {term}")?;
                } else {
                    write!(f, " + {term}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Z² of A for the given multilinear identity templates, as a canonical
/// subspace of the n²-dimensional space of bilinear forms.
pub fn cocycle_space(a: &Algebra, templates: &[IdentityTemplate]) -> Result<Subspace, CohomologyError> {
    let constraints = cocycle_constraints(a, templates)?;
    Ok(constraints.kernel())
}

/// The stacked constraint matrix whose kernel is Z².
///
/// One row per (template, basis tuple); one column per θ coefficient.
/// For a monomial c·(L·R) the contribution to the row is
/// c · L_p · R_q at column (p, q), with L, R evaluated in A.
pub fn cocycle_constraints(
    a: &Algebra,
    templates: &[IdentityTemplate],
) -> Result<Matrix, CohomologyError> {
    let n = a.dim();
    let tag = a.tag();
    let basis: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut v = vec![Scalar::zero(tag); n];
            v[i] = Scalar::one(tag);
            v
        })
        .collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for t in templates {
        if t.arity < 2 {
            return Err(CohomologyError::NonMultilinearVariety(t.name.clone()));
        }
        for tuple in tuples(n, t.arity) {
            let args: Vec<Vec<Scalar>> = tuple.iter().map(|&i| basis[i].clone()).collect();
            let mut row = vec![Scalar::zero(tag); n * n];
            for (coeff, expr) in &t.monomials {
                let Expr::Mul(l, r) = expr else {
                    return Err(CohomologyError::NonMultilinearVariety(t.name.clone()));
                };
                let c = Scalar::from_int(tag, *coeff);
                let lv = l.eval(a, &args);
                let rv = r.eval(a, &args);
                for p in 0..n {
                    if lv[p].is_zero() {
                        continue;
                    }
                    for q in 0..n {
                        if rv[q].is_zero() {
                            continue;
                        }
                        let term = c
                            .mul(&lv[p])
                            .and_then(|x| x.mul(&rv[q]))
                            .expect("same tag");
                        row[p * n + q] = row[p * n + q].add(&term).expect("same tag");
                    }
                }
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    Ok(Matrix::from_rows(rows, n * n, tag).expect("rows validated"))
}

/// B²: the span of δ(e_k^*) with (δf)_ij = f(eᵢeⱼ).
pub fn coboundary_space(a: &Algebra) -> Subspace {
    let n = a.dim();
    let tag = a.tag();
    let rows: Vec<Vec<Scalar>> = (0..n)
        .map(|k| {
            let mut row = vec![Scalar::zero(tag); n * n];
            for i in 0..n {
                for j in 0..n {
                    row[i * n + j] = a.sc(i, j, k).clone();
                }
            }
            row
        })
        .collect();
    Subspace::from_spanning(rows, n * n, tag)
}

/// H² = Z²/B²: deterministic coset representatives.
pub fn h2(a: &Algebra, templates: &[IdentityTemplate]) -> Result<Vec<BilinearForm>, CohomologyError> {
    let z2 = cocycle_space(a, templates)?;
    let b2 = coboundary_space(a);
    let reps = quotient_basis(&b2, &z2)?;
    Ok(reps
        .into_iter()
        .map(|v| BilinearForm::from_coeffs(a.dim(), a.tag(), v))
        .collect())
}

/// Ann(θ₁, …, θ_s) = {x : θ_t(x, A) = θ_t(A, x) = 0 for all t}.
pub fn cocycle_annihilator(a: &Algebra, forms: &[BilinearForm]) -> Subspace {
    let n = a.dim();
    let tag = a.tag();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for f in forms {
        for j in 0..n {
            // θ(x, e_j) = Σ_i x_i θ_ij
            rows.push((0..n).map(|i| f.get(i, j).clone()).collect());
            // θ(e_j, x) = Σ_i x_i θ_ji
            rows.push((0..n).map(|i| f.get(j, i).clone()).collect());
        }
    }
    Matrix::from_rows(rows, n, tag).expect("rows validated").kernel()
}

/// The T_s condition: Ann(θ) ∩ Ann(A) = 0 and the classes [θᵢ] are
/// linearly independent in H² (so the extension is non-split).
pub fn ts_membership(
    a: &Algebra,
    forms: &[BilinearForm],
    templates: &[IdentityTemplate],
) -> Result<bool, CohomologyError> {
    let z2 = cocycle_space(a, templates)?;
    for f in forms {
        if !z2.contains(&f.as_vec()) {
            return Ok(false);
        }
    }
    let ann_theta = cocycle_annihilator(a, forms);
    if ann_theta.intersect(&a.annihilator()).dim() != 0 {
        return Ok(false);
    }
    let b2 = coboundary_space(a);
    let mut with_classes = b2.basis_vectors();
    with_classes.extend(forms.iter().map(BilinearForm::as_vec));
    let sum = Subspace::from_spanning(with_classes, a.dim() * a.dim(), a.tag());
    Ok(sum.dim() == b2.dim() + forms.len())
}

// ---------------------------------------------------------------------------
// Form expression parsing: linear combinations of D(i,j) symbols
// ---------------------------------------------------------------------------

/// Parses an expression like `D(2,2) + a*D(1,3) - 2*D(3,1)` (with all
/// parameters already substituted, so coefficients are concrete scalar
/// expressions) into a [`BilinearForm`] of the given dimension.
pub fn parse_form(text: &str, dim: usize, tag: FieldTag) -> Result<BilinearForm, CohomologyError> {
    parse_form_with(text, dim, tag, &[])
}

/// Like [`parse_form`], but coefficient expressions may mention the
/// named values in `vars`.
pub fn parse_form_with(
    text: &str,
    dim: usize,
    tag: FieldTag,
    vars: &[(String, Scalar)],
) -> Result<BilinearForm, CohomologyError> {
    // Split into signed top-level terms, then factor each term into
    // scalar coefficient × D(i,j).
    let mut form = BilinearForm::zero(dim, tag);
    for (sign, term) in split_terms(text)? {
        let (coeff_text, i, j) = split_factor(&term)?;
        if i == 0 || j == 0 || i > dim || j > dim {
            return Err(CohomologyError::FormSyntax(format!(
                "index out of range in D({i},{j}) for dimension {dim}"
            )));
        }
        let coeff = if coeff_text.trim().is_empty() {
            Scalar::one(tag)
        } else {
            crate::scalar::parse_scalar_with(&coeff_text, tag, vars)?
        };
        let coeff = if sign < 0 { coeff.neg() } else { coeff };
        let old = form.get(i - 1, j - 1).clone();
        form.set(i - 1, j - 1, old.add(&coeff).expect("same tag"));
    }
    Ok(form)
}

/// Splits on top-level + and −, respecting parentheses.
fn split_terms(text: &str) -> Result<Vec<(i32, String)>, CohomologyError> {
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
                } else if c == '+' && sign == -1 {
                    return Err(CohomologyError::FormSyntax("dangling sign".into()));
                }
                sign = if c == '-' { -1 } else { 1 };
                cur = String::new();
            }
            _ => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(CohomologyError::FormSyntax("unbalanced parentheses".into()));
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur.trim().to_string()));
    }
    Ok(out)
}

/// Splits a term `COEFF*D(i,j)` / `D(i,j)*COEFF` / `D(i,j)` into the
/// coefficient text and the two 1-based indices.
fn split_factor(term: &str) -> Result<(String, usize, usize), CohomologyError> {
    let Some(dpos) = term.find("D(") else {
        return Err(CohomologyError::FormSyntax(format!(
            "term {term:?} contains no D(i,j) symbol"
        )));
    };
    let after = &term[dpos + 2..];
    let Some(close) = after.find(')') else {
        return Err(CohomologyError::FormSyntax(format!("unclosed D( in {term:?}")));
    };
    let inner = &after[..close];
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 2 {
        return Err(CohomologyError::FormSyntax(format!(
            "expected D(i,j), found D({inner})"
        )));
    }
    let i: usize = parts[0]
        .trim()
        .parse()
        .map_err(|_| CohomologyError::FormSyntax(format!("bad index {:?}", parts[0])))?;
    let j: usize = parts[1]
        .trim()
        .parse()
        .map_err(|_| CohomologyError::FormSyntax(format!("bad index {:?}", parts[1])))?;
    // Remove the D(i,j) factor and any adjacent '*' to leave the coefficient.
    let mut coeff = String::new();
    coeff.push_str(term[..dpos].trim_end());
    let rest = after[close + 1..].trim_start();
    if coeff.ends_with('*') {
        coeff.pop();
    }
    if let Some(stripped) = rest.strip_prefix('*') {
        if !coeff.is_empty() {
            coeff.push('*');
        }
        coeff.push_str(stripped.trim());
    } else if !rest.is_empty() {
        return Err(CohomologyError::FormSyntax(format!(
            "unexpected trailing {rest:?} in term {term:?}"
        )));
    }
    Ok((coeff, i, j))
}
