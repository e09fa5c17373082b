//! Structure-constant algebras: products, annihilators, nilpotency,
//! derivations, annihilator quotients, and basis-invariant fingerprints.
//!
//! An [`Algebra`] is a dimension n together with the tensor c^k_{ij}
//! defining eᵢ·eⱼ = Σ_k c^k_{ij} e_k over one field.  Nothing beyond
//! bilinearity is assumed; identity checking lives in [`crate::identity`].

use thiserror::Error;

use crate::linalg::{Matrix, Subspace};
use crate::scalar::{FieldTag, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace is not contained in the annihilator")]
    NotInAnnihilator,
}

/// A finite-dimensional algebra given by structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    tag: FieldTag,
    /// c^k_{ij} at index (i·n + j)·n + k.
    sc: Vec<Scalar>,
    name: Option<String>,
}

impl Algebra {
    /// The algebra with all products zero.
    pub fn zero_algebra(dim: usize, tag: FieldTag) -> Self {
        Algebra {
            dim,
            tag,
            sc: vec![Scalar::zero(tag); dim * dim * dim],
            name: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    /// Sets the single coefficient c^k_{ij} (all indices 0-based).
    pub fn set_sc(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        assert_eq!(v.tag(), self.tag, "coefficient tag must match");
        self.sc[(i * self.dim + j) * self.dim + k] = v;
    }

    pub fn sc(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.sc[(i * self.dim + j) * self.dim + k]
    }

    /// The product eᵢ·eⱼ as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        (0..self.dim).map(|k| self.sc(i, j, k).clone()).collect()
    }

    /// Bilinear product of two coordinate vectors.
    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>, AlgebraError> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch(format!(
                "vectors of length {}/{} in a dim-{} algebra",
                x.len(),
                y.len(),
                self.dim
            )));
        }
        let mut out = vec![Scalar::zero(self.tag); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let xy = x[i].mul(&y[j]).expect("same tag");
                for k in 0..self.dim {
                    let c = self.sc(i, j, k);
                    if !c.is_zero() {
                        out[k] = out[k].add(&c.mul(&xy).expect("same tag")).expect("same tag");
                    }
                }
            }
        }
        Ok(out)
    }

    /// {x : x·eⱼ = 0 for all j}.
    pub fn left_annihilator(&self) -> Subspace {
        // Row (j, k): Σ_i x_i c^k_{ij} = 0.
        let n = self.dim;
        let m = Matrix::from_fn(n * n, n, self.tag, |row, i| {
            let (j, k) = (row / n, row % n);
            self.sc(i, j, k).clone()
        });
        m.kernel()
    }

    /// {x : eⱼ·x = 0 for all j}.
    pub fn right_annihilator(&self) -> Subspace {
        let n = self.dim;
        let m = Matrix::from_fn(n * n, n, self.tag, |row, j| {
            let (i, k) = (row / n, row % n);
            self.sc(i, j, k).clone()
        });
        m.kernel()
    }

    /// Ann(A) = {x : xA = Ax = 0}.
    pub fn annihilator(&self) -> Subspace {
        self.left_annihilator().intersect(&self.right_annihilator())
    }

    /// span{u·v : u ∈ U, v ∈ V} over the basis vectors of U and V.
    pub fn subspace_product(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut products = Vec::new();
        for x in u.basis_vectors() {
            for y in v.basis_vectors() {
                products.push(self.product(&x, &y).expect("basis vectors"));
            }
        }
        Subspace::from_spanning(products, self.dim, self.tag)
    }

    /// The descending series A¹ = A, A^m = Σ_{i+j=m} A^i·A^j.
    ///
    /// Returns the dimensions (dim A¹, dim A², …) up to the first zero
    /// or stabilized term, and the nilpotency index (least k with
    /// A^k = 0) — `None` when the series stabilizes at a nonzero space.
    pub fn power_series(&self) -> (Vec<usize>, Option<usize>) {
        // Equal consecutive terms do not imply the chain has
        // stabilized: a plateau can precede a later drop (e.g. when
        // only an A²·A² product survives at one step).  The chain is
        // therefore followed up to the index bound 2^(n-1)+1; a
        // nonzero term past it means the algebra is not nilpotent.
        let bound = (1usize << (self.dim.saturating_sub(1))) + 1;
        let mut powers = vec![Subspace::full(self.dim, self.tag)];
        let mut dims = vec![self.dim];
        loop {
            let m = powers.len() + 1;
            let mut next = Subspace::zero(self.dim, self.tag);
            for i in 1..m {
                let j = m - i;
                next = next.sum(&self.subspace_product(&powers[i - 1], &powers[j - 1]));
            }
            dims.push(next.dim());
            if next.dim() == 0 {
                return (dims, Some(m));
            }
            if m > bound {
                return (dims, None);
            }
            powers.push(next);
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.power_series().1.is_some()
    }

    /// A^m for small m (A¹ = A).
    pub fn power(&self, m: usize) -> Subspace {
        assert!(m >= 1);
        let mut powers = vec![Subspace::full(self.dim, self.tag)];
        for t in 2..=m {
            let mut next = Subspace::zero(self.dim, self.tag);
            for i in 1..t {
                next = next.sum(&self.subspace_product(&powers[i - 1], &powers[t - i - 1]));
            }
            powers.push(next);
        }
        powers.pop().unwrap()
    }

    /// All derivations D (as flattened n×n matrices, D(eⱼ) read off
    /// column j) with D(eᵢeⱼ) = D(eᵢ)eⱼ + eᵢD(eⱼ).
    pub fn derivations(&self) -> Subspace {
        let n = self.dim;
        // Unknowns D_{rs} at index r·n + s; equation per (i, j, k):
        //   Σ_l c^l_{ij} D_{kl} − Σ_l D_{li} c^k_{lj} − Σ_l D_{lj} c^k_{il} = 0.
        let m = Matrix::from_fn(n * n * n, n * n, self.tag, |row, col| {
            let k = row % n;
            let j = (row / n) % n;
            let i = row / (n * n);
            let (r, s) = (col / n, col % n);
            let mut acc = Scalar::zero(self.tag);
            if r == k {
                acc = acc.add(self.sc(i, j, s)).expect("same tag");
            }
            if s == i {
                acc = acc.sub(self.sc(r, j, k)).expect("same tag");
            }
            if s == j {
                acc = acc.sub(self.sc(i, r, k)).expect("same tag");
            }
            acc
        });
        m.kernel()
    }

    /// Lemma-1 quotient: given I ⊆ Ann(A), projects onto the echelon
    /// complement of I (the pivot-free coordinates) and returns the
    /// induced algebra together with the projection matrix P (rows are
    /// the new basis's coordinate forms; the new product is P(xy)).
    pub fn quotient_by_annihilator_complement(
        &self,
        ideal: &Subspace,
    ) -> Result<(Algebra, Matrix), AlgebraError> {
        if !ideal.is_subspace_of(&self.annihilator()) {
            return Err(AlgebraError::NotInAnnihilator);
        }
        let n = self.dim;
        let pivots: Vec<usize> = (0..ideal.dim())
            .map(|i| {
                (0..n)
                    .find(|&j| !ideal.basis().get(i, j).is_zero())
                    .expect("basis rows nonzero")
            })
            .collect();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let n2 = free.len();
        // P: reduce mod I, then read the free coordinates.
        let project = |v: &[Scalar]| -> Vec<Scalar> {
            let reduced = ideal.reduce(v);
            free.iter().map(|&c| reduced[c].clone()).collect()
        };
        let mut quotient = Algebra::zero_algebra(n2, self.tag);
        for (r, &fr) in free.iter().enumerate() {
            for (s, &fs) in free.iter().enumerate() {
                let p = project(&self.basis_product(fr, fs));
                for (t, coeff) in p.into_iter().enumerate() {
                    quotient.set_sc(r, s, t, coeff);
                }
            }
        }
        let mut proj = Matrix::zero(n2, n, self.tag);
        for j in 0..n {
            let mut e = vec![Scalar::zero(self.tag); n];
            e[j] = Scalar::one(self.tag);
            for (t, coeff) in project(&e).into_iter().enumerate() {
                proj.set(t, j, coeff);
            }
        }
        Ok((quotient, proj))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    pub fn is_anticommutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let neg: Vec<Scalar> = self.basis_product(j, i).iter().map(Scalar::neg).collect();
                self.basis_product(i, j) == neg
            })
        })
    }

    /// span{x·x} over the deterministic sample {eᵢ} ∪ {eᵢ+eⱼ : i < j}.
    ///
    /// For a bilinear product this equals span{x·x : x ∈ A} (squares of
    /// the sample generate all symmetrized products), so its dimension
    /// is basis-invariant.
    pub fn square_span(&self) -> Subspace {
        let n = self.dim;
        let mut squares = Vec::new();
        let mut sample = Vec::new();
        for i in 0..n {
            let mut v = vec![Scalar::zero(self.tag); n];
            v[i] = Scalar::one(self.tag);
            sample.push(v);
        }
        for i in 0..n {
            for j in i + 1..n {
                let mut v = vec![Scalar::zero(self.tag); n];
                v[i] = Scalar::one(self.tag);
                v[j] = Scalar::one(self.tag);
                sample.push(v);
            }
        }
        for x in &sample {
            squares.push(self.product(x, x).expect("sample vectors"));
        }
        Subspace::from_spanning(squares, n, self.tag)
    }

    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint {
            dim_sq: self.power(2).dim(),
            dim_cube: self.power(3).dim(),
            dim_fourth: self.power(4).dim(),
            dim_ann: self.annihilator().dim(),
            dim_left_ann: self.left_annihilator().dim(),
            dim_right_ann: self.right_annihilator().dim(),
            dim_der: self.derivations().dim(),
            dim_square_span: self.square_span().dim(),
            commutative: self.is_commutative(),
            anticommutative: self.is_anticommutative(),
        }
    }

    /// The same algebra expressed in the basis fᵢ = φ(eᵢ) (columns of
    /// φ); used to test basis-invariance and build self-isomorphism
    /// fixtures.
    pub fn conjugate(&self, phi: &Matrix) -> Result<Algebra, AlgebraError> {
        if phi.rows() != self.dim || phi.cols() != self.dim {
            return Err(AlgebraError::DimensionMismatch(
                "conjugating matrix must be n×n".into(),
            ));
        }
        let inv = phi
            .inverse()
            .map_err(|_| AlgebraError::DimensionMismatch("singular basis change".into()))?;
        let n = self.dim;
        let mut out = Algebra::zero_algebra(n, self.tag);
        let col = |m: &Matrix, j: usize| -> Vec<Scalar> { (0..n).map(|i| m.get(i, j).clone()).collect() };
        for i in 0..n {
            for j in 0..n {
                let prod = self.product(&col(phi, i), &col(phi, j))?;
                let coords = inv.apply(&prod).expect("dims match");
                for (k, c) in coords.into_iter().enumerate() {
                    out.set_sc(i, j, k, c);
                }
            }
        }
        Ok(out)
    }

    /// Entrywise reduction of the structure tensor into GF(p).
    pub fn reduce_mod_p(&self, p: u64) -> Result<Algebra, crate::scalar::ScalarError> {
        let tag = FieldTag::prime(p)?;
        let mut out = Algebra::zero_algebra(self.dim, tag);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    out.set_sc(i, j, k, self.sc(i, j, k).reduce_mod_p(p)?);
                }
            }
        }
        if let Some(name) = &self.name {
            out = out.with_name(format!("{name} mod {p}"));
        }
        Ok(out)
    }
}

/// A tuple of basis-invariant integers and booleans; a sound (never
/// complete) non-isomorphism certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub dim_sq: usize,
    pub dim_cube: usize,
    pub dim_fourth: usize,
    pub dim_ann: usize,
    pub dim_left_ann: usize,
    pub dim_right_ann: usize,
    pub dim_der: usize,
    pub dim_square_span: usize,
    pub commutative: bool,
    pub anticommutative: bool,
}

impl Fingerprint {
    pub fn as_tuple(&self) -> (usize, usize, usize, usize, usize, usize, usize, usize, bool, bool) {
        (
            self.dim_sq,
            self.dim_cube,
            self.dim_fourth,
            self.dim_ann,
            self.dim_left_ann,
            self.dim_right_ann,
            self.dim_der,
            self.dim_square_span,
            self.commutative,
            self.anticommutative,
        )
    }
}
