//! Multilinear polynomial-identity templates and exhaustive checking.
//!
//! A template is a signed sum of monomials, each a full parenthesization
//! of a permutation of k distinct variables.  Because templates are
//! multilinear, an identity holds on an algebra iff it holds on all n^k
//! basis tuples — which is exactly how [`holds`] checks it.
//!
//! Built-in varieties:
//!
//! - `cd` — the three degree-4 identities defining CD-algebras
//!   (the commutator of two multiplication operators is a derivation);
//! - `lie` — anticommutativity + Jacobi;
//! - `jordan-linearized` — commutativity + the full linearization of
//!   the Jordan identity (x²y)x = x²(yx), valid in characteristic 0
//!   and in GF(p) for p > 3;
//! - `leibniz` — the right Leibniz identity (xy)z = (xz)y + x(yz);
//! - `trivial` — (xy)z = 0 and x(yz) = 0;
//! - `commutative`, `anticommutative` — the arity-2 symmetries.

use std::fmt;

use thiserror::Error;

use crate::algebra::Algebra;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("unknown template name {0:?}")]
    UnknownTemplate(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// A fully parenthesized product of formal variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Var(usize),
    Mul(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(i: usize) -> Expr {
        Expr::Var(i)
    }

    pub fn mul(l: Expr, r: Expr) -> Expr {
        Expr::Mul(Box::new(l), Box::new(r))
    }

    /// Evaluates the expression in A with the given variable values.
    pub fn eval(&self, a: &Algebra, args: &[Vec<Scalar>]) -> Vec<Scalar> {
        match self {
            Expr::Var(i) => args[*i].clone(),
            Expr::Mul(l, r) => a
                .product(&l.eval(a, args), &r.eval(a, args))
                .expect("argument dimensions validated by caller"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(i) => write!(f, "x{}", i + 1),
            Expr::Mul(l, r) => write!(f, "({l}{r})"),
        }
    }
}

/// A signed sum of multilinear monomials, identically zero on the variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityTemplate {
    pub name: String,
    pub arity: usize,
    /// (integer coefficient, monomial) pairs.
    pub monomials: Vec<(i64, Expr)>,
}

impl IdentityTemplate {
    pub fn new(name: impl Into<String>, arity: usize, monomials: Vec<(i64, Expr)>) -> Self {
        IdentityTemplate {
            name: name.into(),
            arity,
            monomials,
        }
    }

    /// Evaluates the template; zero iff this instance of the identity holds.
    pub fn evaluate(&self, a: &Algebra, args: &[Vec<Scalar>]) -> Result<Vec<Scalar>, IdentityError> {
        if args.len() != self.arity {
            return Err(IdentityError::DimensionMismatch(format!(
                "template {} has arity {}, got {} arguments",
                self.name,
                self.arity,
                args.len()
            )));
        }
        for v in args {
            if v.len() != a.dim() {
                return Err(IdentityError::DimensionMismatch(format!(
                    "argument of length {} in a dim-{} algebra",
                    v.len(),
                    a.dim()
                )));
            }
        }
        let tag = a.tag();
        let mut out = vec![Scalar::zero(tag); a.dim()];
        for (coeff, expr) in &self.monomials {
            let c = Scalar::from_int(tag, *coeff);
            let val = expr.eval(a, args);
            for (o, v) in out.iter_mut().zip(val) {
                *o = o.add(&c.mul(&v).expect("same tag")).expect("same tag");
            }
        }
        Ok(out)
    }
}

/// Per-template outcome of an exhaustive basis sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateReport {
    pub name: String,
    pub holds: bool,
    /// Number of basis tuples checked (n^arity).
    pub instances: usize,
    /// First failing basis tuple in lexicographic order, if any.
    pub counterexample: Option<Vec<usize>>,
}

/// Checks every template on all basis tuples of A.
pub fn holds(templates: &[IdentityTemplate], a: &Algebra) -> Vec<TemplateReport> {
    let n = a.dim();
    let tag = a.tag();
    let basis: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut v = vec![Scalar::zero(tag); n];
            v[i] = Scalar::one(tag);
            v
        })
        .collect();
    templates
        .iter()
        .map(|t| {
            let instances = n.pow(t.arity as u32);
            let mut counterexample = None;
            'outer: for tuple in tuples(n, t.arity) {
                let args: Vec<Vec<Scalar>> = tuple.iter().map(|&i| basis[i].clone()).collect();
                let val = t.evaluate(a, &args).expect("basis arguments");
                if val.iter().any(|x| !x.is_zero()) {
                    counterexample = Some(tuple);
                    break 'outer;
                }
            }
            TemplateReport {
                name: t.name.clone(),
                holds: counterexample.is_none(),
                instances,
                counterexample,
            }
        })
        .collect()
}

/// All k-tuples over {0, …, n−1} in lexicographic order.
pub fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t2 = t.clone();
                    t2.push(i);
                    t2
                })
            })
            .collect();
    }
    out
}

/// Returns the template set for a named variety.
pub fn builtin(name: &str) -> Result<Vec<IdentityTemplate>, IdentityError> {
    use Expr as E;
    let v = E::var;
    let m = E::mul;
    match name {
        "cd" => {
            // Variables: x = 0, y = 1, a = 2, b = 3.
            let (x, y, a, b) = (0, 1, 2, 3);
            let cd1 = IdentityTemplate::new(
                "cd1",
                4,
                vec![
                    // ((xy)a)b − ((xy)b)a = ((xa)b − (xb)a)y + x((ya)b − (yb)a)
                    (1, m(m(m(v(x), v(y)), v(a)), v(b))),
                    (-1, m(m(m(v(x), v(y)), v(b)), v(a))),
                    (-1, m(m(m(v(x), v(a)), v(b)), v(y))),
                    (1, m(m(m(v(x), v(b)), v(a)), v(y))),
                    (-1, m(v(x), m(m(v(y), v(a)), v(b)))),
                    (1, m(v(x), m(m(v(y), v(b)), v(a)))),
                ],
            );
            let cd2 = IdentityTemplate::new(
                "cd2",
                4,
                vec![
                    // (a(xy))b − a((xy)b) = ((ax)b − a(xb))y + x((ay)b − a(yb))
                    (1, m(m(v(a), m(v(x), v(y))), v(b))),
                    (-1, m(v(a), m(m(v(x), v(y)), v(b)))),
                    (-1, m(m(m(v(a), v(x)), v(b)), v(y))),
                    (1, m(m(v(a), m(v(x), v(b))), v(y))),
                    (-1, m(v(x), m(m(v(a), v(y)), v(b)))),
                    (1, m(v(x), m(v(a), m(v(y), v(b))))),
                ],
            );
            let cd3 = IdentityTemplate::new(
                "cd3",
                4,
                vec![
                    // a(b(xy)) − b(a(xy)) = (a(bx) − b(ax))y + x(a(by) − b(ay))
                    (1, m(v(a), m(v(b), m(v(x), v(y))))),
                    (-1, m(v(b), m(v(a), m(v(x), v(y))))),
                    (-1, m(m(v(a), m(v(b), v(x))), v(y))),
                    (1, m(m(v(b), m(v(a), v(x))), v(y))),
                    (-1, m(v(x), m(v(a), m(v(b), v(y))))),
                    (1, m(v(x), m(v(b), m(v(a), v(y))))),
                ],
            );
            Ok(vec![cd1, cd2, cd3])
        }
        "lie" => {
            let anti = builtin("anticommutative")?;
            let jacobi = IdentityTemplate::new(
                "jacobi",
                3,
                vec![
                    (1, m(m(v(0), v(1)), v(2))),
                    (1, m(m(v(1), v(2)), v(0))),
                    (1, m(m(v(2), v(0)), v(1))),
                ],
            );
            Ok(anti.into_iter().chain([jacobi]).collect())
        }
        "jordan-linearized" => {
            // Full polarization of (x²y)x − x²(yx) in x: sum over all
            // orderings (σ₁σ₂σ₃) of the three copies of x.  Variables:
            // x₁ = 0, x₂ = 1, x₃ = 2, y = 3.
            let y = 3;
            let mut monomials = Vec::new();
            for perm in permutations(3) {
                let (s1, s2, s3) = (perm[0], perm[1], perm[2]);
                monomials.push((1, m(m(m(v(s1), v(s2)), v(y)), v(s3))));
                monomials.push((-1, m(m(v(s1), v(s2)), m(v(y), v(s3)))));
            }
            let lin = IdentityTemplate::new("jordan-linearized", 4, monomials);
            let comm = builtin("commutative")?;
            Ok(comm.into_iter().chain([lin]).collect())
        }
        "leibniz" => Ok(vec![IdentityTemplate::new(
            "leibniz-right",
            3,
            vec![
                // (xy)z = (xz)y + x(yz)
                (1, m(m(v(0), v(1)), v(2))),
                (-1, m(m(v(0), v(2)), v(1))),
                (-1, m(v(0), m(v(1), v(2)))),
            ],
        )]),
        "trivial" => Ok(vec![
            IdentityTemplate::new("trivial-left", 3, vec![(1, m(m(v(0), v(1)), v(2)))]),
            IdentityTemplate::new("trivial-right", 3, vec![(1, m(v(0), m(v(1), v(2))))]),
        ]),
        "commutative" => Ok(vec![IdentityTemplate::new(
            "commutative",
            2,
            vec![(1, m(v(0), v(1))), (-1, m(v(1), v(0)))],
        )]),
        "anticommutative" => Ok(vec![IdentityTemplate::new(
            "anticommutative",
            2,
            vec![(1, m(v(0), v(1))), (1, m(v(1), v(0)))],
        )]),
        other => Err(IdentityError::UnknownTemplate(other.to_string())),
    }
}

/// Template set defining a named sub-variety of CD for cohomology:
/// `cd` itself, or the CD identities joined with the sub-variety's own.
pub fn variety_templates(name: &str) -> Result<Vec<IdentityTemplate>, IdentityError> {
    let cd = builtin("cd")?;
    if name == "cd" {
        return Ok(cd);
    }
    let extra = builtin(name)?;
    Ok(cd.into_iter().chain(extra).collect())
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}
