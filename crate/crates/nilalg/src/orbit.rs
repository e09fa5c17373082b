//! The automorphism-group action on bilinear forms.
//!
//! Three pieces live here:
//!
//! - [`act`], the congruence action `φθ(x, y) = θ(φx, φy)` with matrix
//!   form `φᵀ M(θ) φ`, together with [`is_automorphism`];
//! - the parameterized automorphism families of the eight
//!   three-dimensional parents ([`families`], [`sample_family`]), whose
//!   entries are scalar expressions in named parameters with an
//!   invertibility constraint;
//! - the action-formula regression blocks ([`blocks`],
//!   [`verify_action_block`]): for each parent, a distinguished basis
//!   ∇₁, …, ∇ₖ of cocycle directions, plus closed-form expressions for
//!   the transformed coefficients α*ᵢ of `φᵀ M(Σ αᵢ∇ᵢ) φ`.  Verification
//!   draws random admissible parameter assignments, replays the
//!   congruence, reads the starred coefficients back off the result
//!   matrix with the block's own bookkeeping, and demands exact
//!   agreement with the stored expressions; the leftover part of the
//!   result must be a coboundary.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::Algebra;
use crate::cohomology::{coboundary_space, BilinearForm};
use crate::iso::{verify_witness, IsoError};
use crate::linalg::Matrix;
use crate::scalar::{parse_scalar_with, FieldTag, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OrbitError {
    #[error("unknown automorphism family for parent {0:?}")]
    UnknownFamily(String),
    #[error("unknown action block {0:?}")]
    UnknownBlock(String),
    #[error("missing parameter {0:?}")]
    MissingParameter(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("invertibility constraint {constraint:?} violated for the {family} family")]
    ConstraintViolated { family: String, constraint: String },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("block {block}: {detail}")]
    FormulaMismatch { block: String, detail: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<IsoError> for OrbitError {
    fn from(e: IsoError) -> Self {
        match e {
            IsoError::DimensionMismatch(m) => OrbitError::DimensionMismatch(m),
            other => OrbitError::Internal(other.to_string()),
        }
    }
}

/// Transports a bilinear form along an invertible linear map:
/// `M(φθ) = φᵀ M(θ) φ`, so that `(φθ)(x, y) = θ(φx, φy)`.
pub fn act(phi: &Matrix, theta: &BilinearForm) -> Result<BilinearForm, OrbitError> {
    if phi.rows() != theta.dim() || phi.cols() != theta.dim() {
        return Err(OrbitError::DimensionMismatch(format!(
            "{}x{} matrix acting on a form of dimension {}",
            phi.rows(),
            phi.cols(),
            theta.dim()
        )));
    }
    if !phi.is_invertible() {
        return Err(OrbitError::SingularMatrix);
    }
    let m = phi
        .transpose()
        .matmul(&theta.matrix())
        .and_then(|pm| pm.matmul(phi))
        .map_err(|e| OrbitError::Internal(e.to_string()))?;
    Ok(BilinearForm::from_matrix(&m))
}

/// True iff `phi` is invertible and multiplicative on `a`, with the
/// columns of `phi` read as the images of the basis vectors.
pub fn is_automorphism(a: &Algebra, phi: &Matrix) -> Result<bool, OrbitError> {
    Ok(verify_witness(a, a, phi)?)
}

/// A parameterized family of automorphisms of one parent algebra.  The
/// matrix entries are scalar expressions in the named parameters (plus
/// `lambda` when the parent itself is parameterized, and the sign
/// `s = (-1)^n` when an integer parameter `n` is present); the family
/// is admissible exactly where `constraint` is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutFamily {
    pub parent: String,
    pub params: Vec<String>,
    pub takes_lambda: bool,
    pub entries: Vec<Vec<String>>,
    pub constraint: String,
}

fn fam(
    parent: &str,
    params: &[&str],
    takes_lambda: bool,
    entries: [[&str; 3]; 3],
    constraint: &str,
) -> AutFamily {
    AutFamily {
        parent: parent.to_string(),
        params: params.iter().map(|p| p.to_string()).collect(),
        takes_lambda,
        entries: entries
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect())
            .collect(),
        constraint: constraint.to_string(),
    }
}

/// The automorphism families of the eight three-dimensional parents.
pub fn families() -> Vec<AutFamily> {
    vec![
        fam(
            "CD3_01",
            &["x", "y"],
            false,
            [["x", "0", "0"], ["0", "x^2", "0"], ["y", "0", "x^4"]],
            "x",
        ),
        fam(
            "CD3_02",
            &["x"],
            false,
            [["1", "0", "0"], ["0", "1", "0"], ["x", "0", "1"]],
            "1",
        ),
        fam(
            "CD3_03",
            &["x", "y", "z"],
            false,
            [["x", "0", "0"], ["y", "x^2", "0"], ["z", "x*y", "x^3"]],
            "x",
        ),
        fam(
            "CD3_04",
            &["x", "y", "z"],
            true,
            [
                ["x", "0", "0"],
                ["y", "x^2", "0"],
                ["z", "(lambda+1)*x*y", "x^3"],
            ],
            "x",
        ),
        fam(
            "CD3s01",
            &["x", "y", "z", "u", "v"],
            false,
            [["x", "0", "0"], ["y", "x^2", "u"], ["z", "0", "v"]],
            "x*v",
        ),
        fam(
            "CD3s02",
            &["x", "y", "z", "u", "n"],
            false,
            [
                ["x", "y", "0"],
                ["-s*y", "s*x", "0"],
                ["z", "u", "x^2+y^2"],
            ],
            "x^2+y^2",
        ),
        fam(
            "CD3s03",
            &["x", "y", "z", "u", "v", "w"],
            false,
            [["x", "y", "0"], ["z", "u", "0"], ["v", "w", "x*u-y*z"]],
            "x*u-y*z",
        ),
        fam(
            "CD3s04",
            &["x", "y", "z", "u"],
            true,
            [
                ["x", "y", "0"],
                ["-lambda*y", "x-y", "0"],
                ["z", "u", "x^2-x*y+lambda*y^2"],
            ],
            "x^2-x*y+lambda*y^2",
        ),
    ]
}

/// The family attached to one parent by name.
pub fn family(parent: &str) -> Result<AutFamily, OrbitError> {
    families()
        .into_iter()
        .find(|f| f.parent == parent)
        .ok_or_else(|| OrbitError::UnknownFamily(parent.to_string()))
}

/// Builds one of the three-dimensional parent algebras by name; `lambda`
/// is required exactly for the parameterized parents.
pub fn parent_algebra(
    name: &str,
    lambda: Option<&Scalar>,
    tag: FieldTag,
) -> Result<Algebra, OrbitError> {
    let one = Scalar::one(tag);
    let minus_one = Scalar::from_int(tag, -1);
    let mut a = Algebra::zero_algebra(3, tag).with_name(name);
    let lam = |l: Option<&Scalar>| -> Result<Scalar, OrbitError> {
        let l = l.ok_or_else(|| OrbitError::MissingParameter("lambda".into()))?;
        if l.tag() != tag {
            return Err(OrbitError::BadParameter(format!(
                "lambda has tag {}, expected {}",
                l.tag(),
                tag
            )));
        }
        Ok(l.clone())
    };
    match name {
        "CD3_01" => {
            a.set_sc(0, 0, 1, one);
            a.set_sc(1, 1, 2, Scalar::one(tag));
        }
        "CD3_02" => {
            a.set_sc(0, 0, 1, one);
            a.set_sc(1, 0, 2, Scalar::one(tag));
            a.set_sc(1, 1, 2, Scalar::one(tag));
        }
        "CD3_03" => {
            a.set_sc(0, 0, 1, one);
            a.set_sc(1, 0, 2, Scalar::one(tag));
        }
        "CD3_04" => {
            a.set_sc(0, 0, 1, one);
            a.set_sc(0, 1, 2, Scalar::one(tag));
            a.set_sc(1, 0, 2, lam(lambda)?);
        }
        "CD3s01" => {
            a.set_sc(0, 0, 1, one);
        }
        "CD3s02" => {
            a.set_sc(0, 0, 2, one);
            a.set_sc(1, 1, 2, Scalar::one(tag));
        }
        "CD3s03" => {
            a.set_sc(0, 1, 2, one);
            a.set_sc(1, 0, 2, minus_one);
        }
        "CD3s04" => {
            a.set_sc(0, 0, 2, lam(lambda)?);
            a.set_sc(1, 0, 2, one);
            a.set_sc(1, 1, 2, Scalar::one(tag));
        }
        other => return Err(OrbitError::UnknownFamily(other.to_string())),
    }
    Ok(a)
}

/// Parity sign `(-1)^n` of an integer-valued rational scalar.
fn parity_sign(tag: FieldTag, n: &Scalar) -> Result<Scalar, OrbitError> {
    let value = match n {
        Scalar::Rational(r) => Some(r),
        Scalar::Quadratic { a, b, .. } if b == &num::BigRational::from_integer(0.into()) => {
            Some(a)
        }
        _ => None,
    };
    match value {
        Some(r) if r.is_integer() => {
            let even = (r.numer() % num::BigInt::from(2)) == num::BigInt::from(0);
            Ok(Scalar::from_int(tag, if even { 1 } else { -1 }))
        }
        _ => Err(OrbitError::BadParameter(format!(
            "parameter n must be a rational integer, got {n}"
        ))),
    }
}

/// Completes an assignment into the variable table the family's entry
/// expressions use: all declared parameters, `lambda` if taken, and the
/// derived sign `s` when `n` is declared.
fn family_vars(
    f: &AutFamily,
    tag: FieldTag,
    assignment: &[(String, Scalar)],
) -> Result<Vec<(String, Scalar)>, OrbitError> {
    let mut vars: Vec<(String, Scalar)> = Vec::new();
    let lookup = |name: &str| -> Option<&Scalar> {
        assignment.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    };
    let mut wanted: Vec<&str> = f.params.iter().map(String::as_str).collect();
    if f.takes_lambda {
        wanted.push("lambda");
    }
    for name in wanted {
        let v = lookup(name).ok_or_else(|| OrbitError::MissingParameter(name.to_string()))?;
        if v.tag() != tag {
            return Err(OrbitError::BadParameter(format!(
                "parameter {name} has tag {}, expected {}",
                v.tag(),
                tag
            )));
        }
        vars.push((name.to_string(), v.clone()));
        if name == "n" {
            vars.push(("s".to_string(), parity_sign(tag, v)?));
        }
    }
    Ok(vars)
}

/// Instantiates a family at a concrete parameter assignment.  The
/// assignment must bind every declared parameter (plus `lambda` for
/// parameterized parents) and satisfy the invertibility constraint.
pub fn sample_family(
    f: &AutFamily,
    tag: FieldTag,
    assignment: &[(String, Scalar)],
) -> Result<Matrix, OrbitError> {
    let vars = family_vars(f, tag, assignment)?;
    let c = parse_scalar_with(&f.constraint, tag, &vars)?;
    if c.is_zero() {
        return Err(OrbitError::ConstraintViolated {
            family: f.parent.clone(),
            constraint: f.constraint.clone(),
        });
    }
    let mut rows = Vec::with_capacity(3);
    for r in &f.entries {
        let mut row = Vec::with_capacity(3);
        for e in r {
            row.push(parse_scalar_with(e, tag, &vars)?);
        }
        rows.push(row);
    }
    Matrix::from_rows(rows, 3, tag).map_err(|e| OrbitError::Internal(e.to_string()))
}

/// Report of a randomized verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    pub parent: String,
    pub checks: usize,
}

/// Checks, at `samples` random admissible integer assignments, that
/// every instantiation of the named family is an automorphism of its
/// (instantiated) parent.
pub fn verify_family(parent: &str, samples: usize, seed: u64) -> Result<FamilyReport, OrbitError> {
    let f = family(parent)?;
    let tag = FieldTag::Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0;
    for _ in 0..samples {
        let (assignment, phi) = random_admissible(&f, tag, &mut rng)?;
        let lambda = assignment
            .iter()
            .find(|(n, _)| n == "lambda")
            .map(|(_, v)| v.clone());
        let a = parent_algebra(parent, lambda.as_ref(), tag)?;
        if !is_automorphism(&a, &phi)? {
            return Err(OrbitError::FormulaMismatch {
                block: parent.to_string(),
                detail: format!("family sample is not an automorphism at {assignment:?}"),
            });
        }
        checks += 1;
    }
    Ok(FamilyReport {
        parent: parent.to_string(),
        checks,
    })
}

/// Draws small-integer parameters in [-9, 9] until the invertibility
/// constraint is satisfied; returns the assignment and the matrix.
fn random_admissible(
    f: &AutFamily,
    tag: FieldTag,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<(String, Scalar)>, Matrix), OrbitError> {
    random_admissible_with_lambda(f, tag, rng, None)
}

/// As [`random_admissible`], but with `lambda` pinned when given.
fn random_admissible_with_lambda(
    f: &AutFamily,
    tag: FieldTag,
    rng: &mut ChaCha8Rng,
    lambda: Option<&Scalar>,
) -> Result<(Vec<(String, Scalar)>, Matrix), OrbitError> {
    for _ in 0..10_000 {
        let mut assignment: Vec<(String, Scalar)> = f
            .params
            .iter()
            .map(|p| (p.clone(), Scalar::from_int(tag, rng.gen_range(-9..=9))))
            .collect();
        if f.takes_lambda {
            let l = match lambda {
                Some(l) => l.clone(),
                None => Scalar::from_int(tag, rng.gen_range(-9..=9)),
            };
            assignment.push(("lambda".to_string(), l));
        }
        match sample_family(f, tag, &assignment) {
            Ok(m) => return Ok((assignment, m)),
            Err(OrbitError::ConstraintViolated { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(OrbitError::Internal(format!(
        "no admissible assignment found for the {} family",
        f.parent
    )))
}

/// One action-formula regression block: a parent, its distinguished
/// cocycle directions ∇ᵢ (each a list of `(coefficient expression in
/// lambda, row, column)` terms, 1-based), and the closed-form starred
/// coefficients, written in the variables `a1..a8` (the input
/// coefficients), the family parameters, `lambda`, and the sign `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionBlock {
    pub id: String,
    pub parent: String,
    pub nabla: Vec<Vec<(String, usize, usize)>>,
    pub formulas: Vec<String>,
}

fn block_def(
    id: &str,
    parent: &str,
    nabla: &[&[(&str, usize, usize)]],
    formulas: &[&str],
) -> ActionBlock {
    ActionBlock {
        id: id.to_string(),
        parent: parent.to_string(),
        nabla: nabla
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .map(|&(c, i, j)| (c.to_string(), i, j))
                    .collect()
            })
            .collect(),
        formulas: formulas.iter().map(|f| f.to_string()).collect(),
    }
}

/// All stored regression blocks, in id order.
pub fn blocks() -> Vec<ActionBlock> {
    vec![
        block_def(
            "2.2",
            "CD3_03",
            &[
                &[("1", 1, 2)],
                &[("1", 2, 2)],
                &[("1", 1, 3), ("-2", 3, 1)],
            ],
            &[
                "x^2*(a1*x + (a2+a3)*y)",
                "a2*x^4",
                "a3*x^4",
            ],
        ),
        block_def(
            "2.3",
            "CD3_04",
            &[
                &[("lambda-2", 1, 3), ("-(2*lambda-1)", 3, 1)],
                &[("1", 2, 1)],
                &[("1", 2, 2)],
            ],
            &[
                "a1*x^4",
                "x^2*((1-lambda)*(a1*(lambda+1)^2+a3)*y + a2*x)",
                "a3*x^4",
            ],
        ),
        block_def(
            "2.4",
            "CD3s01",
            &[
                &[("1", 1, 2), ("1", 2, 1)],
                &[("1", 1, 3), ("1", 3, 1)],
                &[("1", 2, 3), ("1", 3, 2)],
                &[("1", 3, 3)],
                &[("1", 2, 1)],
                &[("1", 2, 2)],
                &[("1", 3, 1)],
                &[("1", 3, 2)],
            ],
            &[
                "x^2*(a1*x + (a3+a8)*z + a6*y)",
                "a1*u*x + a2*v*x + a3*v*y + a4*v*z + a6*u*y + (a3+a8)*u*z",
                "x^2*(a3*v + a6*u)",
                "a4*v^2 + a6*u^2 + (2*a3+a8)*u*v",
                "x^2*(a5*x - a8*z)",
                "a6*x^4",
                "u*(a5*x - a8*z) + v*(a7*x + a8*y)",
                "a8*v*x^2",
            ],
        ),
        block_def(
            "2.5",
            "CD3s02",
            &[
                &[("1", 1, 1)],
                &[("1", 1, 2), ("1", 2, 1)],
                &[("1", 1, 3), ("1", 3, 1)],
                &[("1", 2, 3), ("1", 3, 2)],
                &[("1", 2, 1)],
                &[("1", 3, 1)],
                &[("1", 3, 2)],
                &[("1", 3, 3)],
            ],
            &[
                "a1*(x^2-y^2) - 2*s*(2*a2+a5)*x*y - s*(2*a4+a7)*(u*x+y*z) + (2*a3+a6)*(x*z-u*y) + a8*(z^2-u^2)",
                "s*a2*x^2 + a1*x*y - s*(a2+a5)*y^2 + (a3*x - s*a4*y + a8*z)*u + (s*a4*x + a3*y + s*a7*x + a6*y)*z",
                "(a3*x - s*a4*y + a8*z)*(x^2+y^2)",
                "(s*a4*x + a3*y + a8*u)*(x^2+y^2)",
                "s*a5*(x^2+y^2) + u*(a6*x - s*a7*y) - z*(s*a7*x + a6*y)",
                "(a6*x - s*a7*y)*(x^2+y^2)",
                "(s*a7*x + a6*y)*(x^2+y^2)",
                "a8*(x^2+y^2)^2",
            ],
        ),
        block_def(
            "2.6",
            "CD3s03",
            &[
                &[("1", 1, 3), ("-1", 3, 1)],
                &[("1", 2, 3), ("-1", 3, 2)],
                &[("1", 1, 1)],
                &[("1", 1, 2)],
                &[("1", 1, 3)],
                &[("1", 2, 2)],
                &[("1", 2, 3)],
                &[("1", 3, 3)],
            ],
            &[
                "(x*u-y*z)*(a1*x + a2*z - a8*v)",
                "(x*u-y*z)*(a1*y + a2*u - a8*w)",
                "a3*x^2 + a5*v*x + a8*v^2 + z*(a4*x + a6*z + a7*v)",
                "x*(2*a3*y + a4*u + a5*w) + z*(a4*y + 2*a6*u + a7*w) + v*(a5*y + a7*u + 2*a8*w)",
                "(x*u-y*z)*(a5*x + a7*z + 2*a8*v)",
                "a3*y^2 + a4*u*y + a6*u^2 + w*(a5*y + a7*u + a8*w)",
                "(x*u-y*z)*(a5*y + a7*u + 2*a8*w)",
                "a8*(x*u-y*z)^2",
            ],
        ),
        block_def(
            "2.7",
            "CD3s04",
            &[
                &[("1", 1, 1)],
                &[("1", 1, 2)],
                &[("1", 1, 3)],
                &[("1", 2, 1)],
                &[("1", 2, 3)],
                &[("1", 3, 1)],
                &[("1", 3, 2)],
                &[("1", 3, 3)],
            ],
            &[
                "a1*x^2 + lambda*(-a1+a2+a4)*y^2 + a8*z^2 - lambda*a8*u^2 - 2*lambda*(a2+a4)*x*y + (a3+a6)*x*z - lambda*(a5+a7)*y*z - lambda*(a5+a7)*u*x + lambda*(-a3+a5-a6+a7)*u*y",
                "a2*x^2 - lambda*a4*y^2 + (a1-a2)*x*y + a7*x*z + (a6-a7)*y*z - a5*lambda*u*y + a3*u*x + a8*u*z",
                "(x^2-x*y+lambda*y^2)*(a3*x - lambda*a5*y + a8*z)",
                "a4*x^2 + (-a1+(1-lambda)*a2+a4)*y^2 - a8*u^2 + (a1-a2-2*a4)*x*y + (a3-a5)*y*z + a5*x*z + (-a5+a6-a7)*u*x + (-a3+a5-a6+(1-lambda)*a7)*u*y + a8*u*z",
                "(x^2-x*y+lambda*y^2)*(a5*x + (a3-a5)*y + a8*u)",
                "(x^2-x*y+lambda*y^2)*(a6*x - lambda*a7*y + a8*z)",
                "(x^2-x*y+lambda*y^2)*(a7*x + (a6-a7)*y + a8*u)",
                "(x^2-x*y+lambda*y^2)^2*a8",
            ],
        ),
    ]
}

/// Looks up one stored block by id.
pub fn block(id: &str) -> Result<ActionBlock, OrbitError> {
    blocks()
        .into_iter()
        .find(|b| b.id == id)
        .ok_or_else(|| OrbitError::UnknownBlock(id.to_string()))
}

/// The values `lambda` is swept over when verifying a block; `None`
/// entries mean the parent is unparameterized.
pub fn lambda_sweep(id: &str) -> Result<Vec<Option<&'static str>>, OrbitError> {
    match id {
        "2.3" => Ok(vec![Some("0"), Some("1"), Some("-1"), Some("2"), Some("1/4")]),
        "2.7" => Ok(vec![Some("0"), Some("1/4"), Some("1"), Some("-1")]),
        "2.2" | "2.4" | "2.5" | "2.6" => Ok(vec![None]),
        other => Err(OrbitError::UnknownBlock(other.to_string())),
    }
}

/// Evaluates a block's ∇-basis at a concrete `lambda` (ignored by
/// unparameterized blocks) over the given field.
pub fn nabla_basis(
    id: &str,
    lambda: Option<&Scalar>,
    tag: FieldTag,
) -> Result<Vec<BilinearForm>, OrbitError> {
    nabla_basis_of(&block(id)?, lambda, tag)
}

fn nabla_basis_of(
    b: &ActionBlock,
    lambda: Option<&Scalar>,
    tag: FieldTag,
) -> Result<Vec<BilinearForm>, OrbitError> {
    let mut vars: Vec<(String, Scalar)> = Vec::new();
    if let Some(l) = lambda {
        vars.push(("lambda".to_string(), l.clone()));
    }
    let mut out = Vec::with_capacity(b.nabla.len());
    for terms in &b.nabla {
        let mut f = BilinearForm::zero(3, tag);
        for (c, i, j) in terms {
            let v = parse_scalar_with(c, tag, &vars)?;
            let old = f.get(i - 1, j - 1).clone();
            f.set(
                i - 1,
                j - 1,
                old.add(&v).map_err(|e| OrbitError::Internal(e.to_string()))?,
            );
        }
        out.push(f);
    }
    Ok(out)
}

/// Reads the starred coefficients α*ᵢ back off the result matrix of the
/// congruence, using the block's own entry bookkeeping (some entries of
/// the result mix a coboundary coefficient into a starred one).
fn read_alphas(
    id: &str,
    r: &Matrix,
    lambda: Option<&Scalar>,
    tag: FieldTag,
) -> Result<Vec<Scalar>, OrbitError> {
    let g = |i: usize, j: usize| r.get(i, j).clone();
    let sub = |a: &Scalar, b: &Scalar| a.sub(b).map_err(|e| OrbitError::Internal(e.to_string()));
    match id {
        "2.2" => Ok(vec![g(0, 1), g(1, 1), g(0, 2)]),
        "2.3" => {
            let l = lambda
                .ok_or_else(|| OrbitError::MissingParameter("lambda".into()))?
                .clone();
            let two = Scalar::from_int(tag, 2);
            let star2 = g(0, 1);
            // α₁* sits at (1,3) with coefficient λ−2, and at (3,1) with
            // coefficient −(2λ−1); the two are never both zero.
            let lm2 = l.sub(&two).map_err(|e| OrbitError::Internal(e.to_string()))?;
            let a1 = if !lm2.is_zero() {
                g(0, 2).div(&lm2).map_err(|e| OrbitError::Internal(e.to_string()))?
            } else {
                let c = Scalar::one(tag)
                    .sub(&two.mul(&l).unwrap())
                    .map_err(|e| OrbitError::Internal(e.to_string()))?;
                g(2, 0).div(&c).map_err(|e| OrbitError::Internal(e.to_string()))?
            };
            let a2 = sub(&g(1, 0), &l.mul(&star2).unwrap())?;
            Ok(vec![a1, a2, g(1, 1)])
        }
        "2.4" => Ok(vec![
            g(0, 1),
            g(0, 2),
            g(1, 2),
            g(2, 2),
            sub(&g(1, 0), &g(0, 1))?,
            g(1, 1),
            sub(&g(2, 0), &g(0, 2))?,
            sub(&g(2, 1), &g(1, 2))?,
        ]),
        "2.5" => {
            let star = g(1, 1);
            Ok(vec![
                sub(&g(0, 0), &star)?,
                g(0, 1),
                g(0, 2),
                g(1, 2),
                sub(&g(1, 0), &g(0, 1))?,
                sub(&g(2, 0), &g(0, 2))?,
                sub(&g(2, 1), &g(1, 2))?,
                g(2, 2),
            ])
        }
        "2.6" => {
            let star = g(1, 0);
            let a1 = g(2, 0).neg();
            let a2 = g(2, 1).neg();
            Ok(vec![
                a1.clone(),
                a2.clone(),
                g(0, 0),
                g(0, 1).add(&star).map_err(|e| OrbitError::Internal(e.to_string()))?,
                sub(&g(0, 2), &a1)?,
                g(1, 1),
                sub(&g(1, 2), &a2)?,
                g(2, 2),
            ])
        }
        "2.7" => {
            let l = lambda
                .ok_or_else(|| OrbitError::MissingParameter("lambda".into()))?
                .clone();
            let star = g(1, 1);
            Ok(vec![
                sub(&g(0, 0), &l.mul(&star).unwrap())?,
                g(0, 1),
                g(0, 2),
                sub(&g(1, 0), &star)?,
                g(1, 2),
                g(2, 0),
                g(2, 1),
                g(2, 2),
            ])
        }
        other => Err(OrbitError::UnknownBlock(other.to_string())),
    }
}

/// Report of a block regression run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockReport {
    pub block: String,
    pub checks: usize,
}

/// Verifies one stored block at `samples` random assignments per
/// `lambda` value.  See [`verify_block`] for the exact checks.
pub fn verify_action_block(id: &str, samples: usize, seed: u64) -> Result<BlockReport, OrbitError> {
    verify_block(&block(id)?, samples, seed)
}

/// Verifies a block, stored or hand-built: draws random coefficients
/// αᵢ ∈ [-9, 9] and admissible family parameters, computes `φᵀ M φ`
/// exactly, and demands that
///
/// 1. the instantiated family member is an automorphism of the parent,
/// 2. the coefficients read off the result equal the stored expressions,
/// 3. the remainder `φᵀMφ − Σ α*ᵢ∇ᵢ` is a coboundary of the parent.
pub fn verify_block(b: &ActionBlock, samples: usize, seed: u64) -> Result<BlockReport, OrbitError> {
    let tag = FieldTag::Rationals;
    let f = family(&b.parent)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0;
    for lam_text in lambda_sweep(&b.id)? {
        let lambda = match lam_text {
            Some(t) => Some(parse_scalar_with(t, tag, &[])?),
            None => None,
        };
        let parent = parent_algebra(&b.parent, lambda.as_ref(), tag)?;
        let b2 = coboundary_space(&parent);
        let nablas = nabla_basis_of(b, lambda.as_ref(), tag)?;
        for _ in 0..samples {
            let (mut assignment, phi) =
                random_admissible_with_lambda(&f, tag, &mut rng, lambda.as_ref())?;
            if !is_automorphism(&parent, &phi)? {
                return Err(OrbitError::FormulaMismatch {
                    block: b.id.clone(),
                    detail: format!("family sample is not an automorphism at {assignment:?}"),
                });
            }
            let alphas: Vec<Scalar> = (0..nablas.len())
                .map(|_| Scalar::from_int(tag, rng.gen_range(-9..=9)))
                .collect();
            let mut theta = BilinearForm::zero(3, tag);
            for (a, n) in alphas.iter().zip(&nablas) {
                theta = theta.add(&n.scale(a));
            }
            let result = act(&phi, &theta)?;
            let computed = read_alphas(&b.id, &result.matrix(), lambda.as_ref(), tag)?;
            // Expression environment: a1..ak, the family parameters,
            // lambda, and s.
            let mut vars = family_vars(&f, tag, &assignment)?;
            for (i, a) in alphas.iter().enumerate() {
                vars.push((format!("a{}", i + 1), a.clone()));
            }
            if lambda.is_some() && !vars.iter().any(|(n, _)| n == "lambda") {
                vars.push(("lambda".to_string(), lambda.clone().unwrap()));
            }
            for (i, formula) in b.formulas.iter().enumerate() {
                let expected = parse_scalar_with(formula, tag, &vars)?;
                if expected != computed[i] {
                    assignment.sort_by(|a, b| a.0.cmp(&b.0));
                    return Err(OrbitError::FormulaMismatch {
                        block: b.id.clone(),
                        detail: format!(
                            "alpha{}* disagrees at alphas {:?}, assignment {:?}: formula gives {}, congruence gives {}",
                            i + 1,
                            alphas.iter().map(Scalar::to_string).collect::<Vec<_>>(),
                            assignment,
                            expected,
                            computed[i]
                        ),
                    });
                }
            }
            let mut residual = result;
            for (a, n) in computed.iter().zip(&nablas) {
                residual = residual.add(&n.scale(&a.neg()));
            }
            if !b2.contains(&residual.as_vec()) {
                return Err(OrbitError::FormulaMismatch {
                    block: b.id.clone(),
                    detail: "remainder of the congruence is not a coboundary".to_string(),
                });
            }
            checks += 1;
        }
    }
    Ok(BlockReport {
        block: b.id.clone(),
        checks,
    })
}
