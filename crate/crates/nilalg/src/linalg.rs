//! Dense exact linear algebra over a single field.
//!
//! Provides reduced row-echelon form, kernels, solving, and canonical
//! subspace arithmetic.  Subspaces are always stored in RREF with zero
//! rows dropped, so equal subspaces have bitwise-identical
//! representations — the cohomology and orbit machinery compares
//! spaces constantly and relies on this canonicity.
//!
//! Everything here uses fraction-full Gauss–Jordan elimination; the
//! matrices in this crate are small (at most a few hundred rows), so
//! exact coefficient growth is tolerable.

use std::fmt;

use thiserror::Error;

use crate::scalar::{FieldTag, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch across entries")]
    FieldMismatch,
    #[error("claimed subspace is not contained in the ambient space")]
    NotASubspace,
    #[error("matrix is singular")]
    SingularMatrix,
}

/// A dense rows×cols matrix of scalars sharing one field tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    tag: FieldTag,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, tag: FieldTag) -> Self {
        Matrix {
            rows,
            cols,
            tag,
            entries: vec![Scalar::zero(tag); rows * cols],
        }
    }

    pub fn identity(n: usize, tag: FieldTag) -> Self {
        let mut m = Matrix::zero(n, n, tag);
        for i in 0..n {
            m.set(i, i, Scalar::one(tag));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize, tag: FieldTag) -> Result<Self, LinalgError> {
        for r in &rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch(format!(
                    "row of length {} in a {cols}-column matrix",
                    r.len()
                )));
            }
            if r.iter().any(|x| x.tag() != tag) {
                return Err(LinalgError::FieldMismatch);
            }
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            tag,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from a closure giving entry (i, j).
    pub fn from_fn(rows: usize, cols: usize, tag: FieldTag, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut m = Matrix::zero(rows, cols, tag);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.tag(), self.tag, "entry tag must match matrix tag");
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.tag, |i, j| self.get(j, i).clone())
    }

    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zero(self.rows, rhs.cols, self.tag);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Scalar::zero(self.tag);
                for k in 0..self.cols {
                    acc = acc
                        .add(&self.get(i, k).mul(rhs.get(k, j)).expect("same tag"))
                        .expect("same tag");
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.tag);
                for j in 0..self.cols {
                    acc = acc
                        .add(&self.get(i, j).mul(&v[j]).expect("same tag"))
                        .expect("same tag");
                }
                acc
            })
            .collect())
    }

    /// Reduced row-echelon form with zero rows dropped; returns the
    /// reduced matrix and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i)).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = rows[r][c].inv().expect("pivot nonzero");
            for x in rows[r].iter_mut() {
                *x = x.mul(&inv).expect("same tag");
            }
            for i in 0..rows.len() {
                if i != r && !rows[i][c].is_zero() {
                    let factor = rows[i][c].clone();
                    for j in 0..self.cols {
                        let sub = rows[r][j].mul(&factor).expect("same tag");
                        rows[i][j] = rows[i][j].sub(&sub).expect("same tag");
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        (
            Matrix::from_rows(rows, self.cols, self.tag).expect("rows validated"),
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The kernel {v : M·v = 0} as a canonical subspace of the column space.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Scalar::zero(self.tag); self.cols];
            v[fc] = Scalar::one(self.tag);
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = r.get(ri, fc).neg();
            }
            basis.push(v);
        }
        Subspace::from_spanning(basis, self.cols, self.tag)
    }

    /// One exact solution of M·x = b, if the system is consistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "rhs of length {} against {} rows",
                b.len(),
                self.rows
            )));
        }
        // Augment and reduce; inconsistency shows as a pivot in the last column.
        let mut aug = Matrix::zero(self.rows, self.cols + 1, self.tag);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(self.tag); self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(ri, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n, self.tag);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one(self.tag));
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::SingularMatrix);
        }
        Ok(Matrix::from_fn(n, n, self.tag, |i, j| r.get(i, n + j).clone()))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Entrywise reduction into GF(p); fails on bad denominators or
    /// non-residue radicands.
    pub fn reduce_mod_p(&self, p: u64) -> Result<Matrix, crate::scalar::ScalarError> {
        let tag = FieldTag::prime(p)?;
        let mut out = Matrix::zero(self.rows, self.cols, tag);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).reduce_mod_p(p)?);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of the coordinate space of a fixed ambient dimension,
/// stored as an RREF basis (canonical representation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    tag: FieldTag,
    basis: Matrix,
}

impl Subspace {
    /// The canonical subspace spanned by the given vectors.
    pub fn from_spanning(vectors: Vec<Vec<Scalar>>, ambient_dim: usize, tag: FieldTag) -> Self {
        let m = Matrix::from_rows(vectors, ambient_dim, tag).expect("spanning vectors");
        let (basis, _) = m.rref();
        Subspace {
            ambient_dim,
            tag,
            basis,
        }
    }

    pub fn zero(ambient_dim: usize, tag: FieldTag) -> Self {
        Subspace::from_spanning(Vec::new(), ambient_dim, tag)
    }

    pub fn full(ambient_dim: usize, tag: FieldTag) -> Self {
        let rows = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Scalar::zero(tag); ambient_dim];
                v[i] = Scalar::one(tag);
                v
            })
            .collect();
        Subspace::from_spanning(rows, ambient_dim, tag)
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    /// The RREF basis; rows are the canonical basis vectors.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.basis.rows()).map(|i| self.basis.row(i)).collect()
    }

    /// Reduces v modulo this subspace (eliminates all pivot coordinates).
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        let mut v = v.to_vec();
        // The stored basis is already in RREF: the pivot of each row is
        // its first nonzero column.
        let pivots: Vec<usize> = (0..self.basis.rows())
            .map(|i| {
                (0..self.ambient_dim)
                    .find(|&j| !self.basis.get(i, j).is_zero())
                    .expect("basis rows are nonzero")
            })
            .collect();
        for (ri, &pc) in pivots.iter().enumerate() {
            if !v[pc].is_zero() {
                let factor = v[pc].clone();
                for j in 0..self.ambient_dim {
                    let sub = self.basis.get(ri, j).mul(&factor).expect("same tag");
                    v[j] = v[j].sub(&sub).expect("same tag");
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis_vectors().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::from_spanning(vs, self.ambient_dim, self.tag)
    }

    /// Intersection via the kernel of [B₁ᵀ | −B₂ᵀ].
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let d1 = self.dim();
        let d2 = other.dim();
        if d1 == 0 || d2 == 0 {
            return Subspace::zero(self.ambient_dim, self.tag);
        }
        let stacked = Matrix::from_fn(self.ambient_dim, d1 + d2, self.tag, |i, j| {
            if j < d1 {
                self.basis.get(j, i).clone()
            } else {
                other.basis.get(j - d1, i).neg()
            }
        });
        let coeffs = stacked.kernel();
        let vectors = coeffs
            .basis_vectors()
            .into_iter()
            .map(|c| {
                (0..self.ambient_dim)
                    .map(|i| {
                        let mut acc = Scalar::zero(self.tag);
                        for (k, ck) in c.iter().take(d1).enumerate() {
                            acc = acc
                                .add(&self.basis.get(k, i).mul(ck).expect("same tag"))
                                .expect("same tag");
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Subspace::from_spanning(vectors, self.ambient_dim, self.tag)
    }
}

/// Coset representatives for sup/sub: k = dim sup − dim sub vectors,
/// each in sup, none in sub, jointly spanning sup together with sub.
///
/// Representatives are deterministic: each basis vector of sup is
/// reduced against sub and the previously chosen representatives.
pub fn quotient_basis(sub: &Subspace, sup: &Subspace) -> Result<Vec<Vec<Scalar>>, LinalgError> {
    if !sub.is_subspace_of(sup) {
        return Err(LinalgError::NotASubspace);
    }
    let mut working = sub.clone();
    let mut reps = Vec::new();
    for v in sup.basis_vectors() {
        let reduced = working.reduce(&v);
        if reduced.iter().any(|x| !x.is_zero()) {
            // Normalize the leading coefficient to 1 for determinism.
            let lead = reduced.iter().find(|x| !x.is_zero()).unwrap().clone();
            let inv = lead.inv().expect("nonzero");
            let normalized: Vec<Scalar> =
                reduced.iter().map(|x| x.mul(&inv).expect("same tag")).collect();
            working = working.sum(&Subspace::from_spanning(
                vec![normalized.clone()],
                sub.ambient_dim(),
                sub.tag(),
            ));
            reps.push(normalized);
        }
    }
    Ok(reps)
}
