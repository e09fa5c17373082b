//! Central extensions A_θ = A ⊕ V and their inverse (annihilator quotients).
//!
//! Given a parent algebra A and s cocycle components θ₁…θ_s, the
//! extension has product [x, y] = xy + Σ_t θ_t(x, y)·e_{n+t}; the s new
//! basis vectors annihilate everything.  `recover_parent` runs the
//! construction backwards by quotienting out the full annihilator.

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::cohomology::{cocycle_space, BilinearForm, CohomologyError};
use crate::identity::builtin;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("component {index} is not a CD-cocycle of the parent")]
    NotACocycle { index: usize },
    #[error("the algebra has trivial annihilator; it is not a central extension")]
    TrivialAnnihilator,
    #[error("dimension or field mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A parent algebra with the cocycle components of a prospective extension.
#[derive(Debug, Clone)]
pub struct ExtensionSpec {
    pub parent: Algebra,
    pub cocycles: Vec<BilinearForm>,
}

impl ExtensionSpec {
    pub fn new(parent: Algebra, cocycles: Vec<BilinearForm>) -> Result<Self, ExtensionError> {
        for (t, f) in cocycles.iter().enumerate() {
            if f.dim() != parent.dim() || f.tag() != parent.tag() {
                return Err(ExtensionError::Mismatch(format!(
                    "cocycle {t} has dim {} / field {}, parent has dim {} / field {}",
                    f.dim(),
                    f.tag(),
                    parent.dim(),
                    parent.tag()
                )));
            }
        }
        Ok(ExtensionSpec { parent, cocycles })
    }

    /// Validates that every component lies in Z²_CD(parent).
    pub fn validate_cocycles(&self) -> Result<(), ExtensionError> {
        let templates = builtin("cd").expect("builtin");
        let z2 = cocycle_space(&self.parent, &templates)?;
        for (t, f) in self.cocycles.iter().enumerate() {
            if !z2.contains(&f.as_vec()) {
                return Err(ExtensionError::NotACocycle { index: t });
            }
        }
        Ok(())
    }
}

/// Builds the central extension A_θ of dimension n + s.
pub fn extend(spec: &ExtensionSpec) -> Result<Algebra, ExtensionError> {
    spec.validate_cocycles()?;
    let n = spec.parent.dim();
    let s = spec.cocycles.len();
    let tag = spec.parent.tag();
    let mut ext = Algebra::zero_algebra(n + s, tag);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                ext.set_sc(i, j, k, spec.parent.sc(i, j, k).clone());
            }
            for (t, f) in spec.cocycles.iter().enumerate() {
                ext.set_sc(i, j, n + t, f.get(i, j).clone());
            }
        }
    }
    if let Some(name) = spec.parent.name() {
        ext = ext.with_name(format!("{name}+theta"));
    }
    Ok(ext)
}

/// True iff the extension is non-split: the classes [θᵢ] are linearly
/// independent in H² and Ann(θ) ∩ Ann(parent) = 0.
pub fn is_nonsplit(spec: &ExtensionSpec) -> Result<bool, ExtensionError> {
    spec.validate_cocycles()?;
    let templates = builtin("cd").expect("builtin");
    Ok(crate::cohomology::ts_membership(
        &spec.parent,
        &spec.cocycles,
        &templates,
    )?)
}

/// The result of reversing a central extension.
#[derive(Debug, Clone)]
pub struct RecoveredExtension {
    pub parent: Algebra,
    pub cocycles: Vec<BilinearForm>,
    /// Columns map the reconstructed basis (parent complement first,
    /// then annihilator basis) to the original algebra's coordinates;
    /// conjugating the original by this matrix yields
    /// `extend(parent, cocycles)` exactly.
    pub witness: Matrix,
}

/// Quotients by the full annihilator (Lemma-1 shape) and reads the
/// cocycle components off the annihilator coordinates.
pub fn recover_parent(b: &Algebra) -> Result<RecoveredExtension, ExtensionError> {
    let ann = b.annihilator();
    let m = ann.dim();
    if m == 0 {
        return Err(ExtensionError::TrivialAnnihilator);
    }
    let n = b.dim();
    let tag = b.tag();
    let (parent, _proj) = b.quotient_by_annihilator_complement(&ann)?;
    let pivots: Vec<usize> = (0..m)
        .map(|i| {
            (0..n)
                .find(|&j| !ann.basis().get(i, j).is_zero())
                .expect("basis rows nonzero")
        })
        .collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    // θ_t(e'_r, e'_s) = coefficient of the t-th annihilator basis vector
    // in the annihilator component of e_{f_r}·e_{f_s}.  With an RREF
    // annihilator basis those coefficients sit at the pivot coordinates.
    let mut cocycles = vec![BilinearForm::zero(parent.dim(), tag); m];
    for (r, &fr) in free.iter().enumerate() {
        for (s, &fs) in free.iter().enumerate() {
            let v = b.basis_product(fr, fs);
            let reduced = ann.reduce(&v);
            for (t, &pc) in pivots.iter().enumerate() {
                let coeff = v[pc].sub(&reduced[pc]).expect("same tag");
                cocycles[t].set(r, s, coeff);
            }
        }
    }
    // Witness: reconstructed basis ↦ original coordinates.
    let mut witness = Matrix::zero(n, n, tag);
    for (r, &fr) in free.iter().enumerate() {
        witness.set(fr, r, Scalar::one(tag));
    }
    for t in 0..m {
        for i in 0..n {
            witness.set(i, free.len() + t, ann.basis().get(t, i).clone());
        }
    }
    Ok(RecoveredExtension {
        parent,
        cocycles,
        witness,
    })
}
