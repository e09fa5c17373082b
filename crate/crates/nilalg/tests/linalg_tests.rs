//! Exact linear algebra: echelon forms, kernels, solving, canonical
//! subspaces, and coset representatives.

mod common;

use common::{q, vecs};
use nilalg::linalg::{quotient_basis, LinalgError, Matrix, Subspace};
use nilalg::scalar::{FieldTag, Scalar};
use proptest::prelude::*;

fn mat(rows: &[&[&str]], tag: FieldTag) -> Matrix {
    let cols = rows.first().map_or(0, |r| r.len());
    Matrix::from_rows(rows.iter().map(|r| vecs(r, tag)).collect(), cols, tag).unwrap()
}

#[test]
fn rref_of_simple_system() {
    let m = mat(&[&["1", "2", "3"], &["2", "4", "6"], &["1", "1", "1"]], q());
    let (r, pivots) = m.rref();
    assert_eq!(pivots, vec![0, 1]);
    assert_eq!(r, mat(&[&["1", "0", "-1"], &["0", "1", "2"]], q()));
    assert_eq!(m.rank(), 2);
}

#[test]
fn kernel_satisfies_equations() {
    let m = mat(&[&["1", "2", "3"], &["2", "4", "6"], &["1", "1", "1"]], q());
    let ker = m.kernel();
    assert_eq!(ker.dim(), 1);
    for v in ker.basis_vectors() {
        assert!(m.apply(&v).unwrap().iter().all(Scalar::is_zero));
    }
    // (1, −2, 1) spans the kernel.
    assert!(ker.contains(&vecs(&["1", "-2", "1"], q())));
}

#[test]
fn solve_consistent_and_inconsistent() {
    let m = mat(&[&["1", "1"], &["1", "-1"]], q());
    let x = m.solve(&vecs(&["3", "1"], q())).unwrap().unwrap();
    assert_eq!(x, vecs(&["2", "1"], q()));

    let singular = mat(&[&["1", "1"], &["2", "2"]], q());
    assert_eq!(singular.solve(&vecs(&["0", "1"], q())).unwrap(), None);
    // Consistent but underdetermined: any solution must satisfy the system.
    let x = singular.solve(&vecs(&["2", "4"], q())).unwrap().unwrap();
    assert_eq!(singular.apply(&x).unwrap(), vecs(&["2", "4"], q()));
}

#[test]
fn inverse_round_trip() {
    let m = mat(&[&["2", "1"], &["1", "1"]], q());
    let inv = m.inverse().unwrap();
    assert_eq!(m.matmul(&inv).unwrap(), Matrix::identity(2, q()));
    assert_eq!(inv.matmul(&m).unwrap(), Matrix::identity(2, q()));

    let singular = mat(&[&["1", "2"], &["2", "4"]], q());
    assert_eq!(singular.inverse(), Err(LinalgError::SingularMatrix));
    assert!(!singular.is_invertible());
}

#[test]
fn subspace_representation_is_canonical() {
    // Two different spanning sets of the same plane give identical objects.
    let a = Subspace::from_spanning(
        vec![vecs(&["1", "1", "0"], q()), vecs(&["0", "1", "1"], q())],
        3,
        q(),
    );
    let b = Subspace::from_spanning(
        vec![
            vecs(&["2", "3", "1"], q()),
            vecs(&["1", "2", "1"], q()),
            vecs(&["3", "5", "2"], q()),
        ],
        3,
        q(),
    );
    assert_eq!(a, b);
    assert_eq!(a.dim(), 2);
}

#[test]
fn membership_sum_intersection() {
    let xy = Subspace::from_spanning(
        vec![vecs(&["1", "0", "0"], q()), vecs(&["0", "1", "0"], q())],
        3,
        q(),
    );
    let yz = Subspace::from_spanning(
        vec![vecs(&["0", "1", "0"], q()), vecs(&["0", "0", "1"], q())],
        3,
        q(),
    );
    assert!(xy.contains(&vecs(&["3", "-2", "0"], q())));
    assert!(!xy.contains(&vecs(&["0", "0", "1"], q())));
    assert_eq!(xy.sum(&yz), Subspace::full(3, q()));
    let meet = xy.intersect(&yz);
    assert_eq!(meet.dim(), 1);
    assert!(meet.contains(&vecs(&["0", "1", "0"], q())));
    assert!(xy.intersect(&yz).is_subspace_of(&xy));
}

#[test]
fn quotient_basis_gives_coset_representatives() {
    let sub = Subspace::from_spanning(vec![vecs(&["1", "0", "0"], q())], 3, q());
    let sup = Subspace::full(3, q());
    let reps = quotient_basis(&sub, &sup).unwrap();
    assert_eq!(reps.len(), 2);
    let mut all = sub.clone();
    for r in &reps {
        // Each representative lies in sup but not in sub (or the span so far).
        assert!(sup.contains(r));
        assert!(!all.contains(r));
        all = all.sum(&Subspace::from_spanning(vec![r.clone()], 3, q()));
    }
    assert_eq!(all, sup);
}

#[test]
fn quotient_basis_rejects_non_subspace() {
    let a = Subspace::from_spanning(vec![vecs(&["0", "0", "1"], q())], 3, q());
    let b = Subspace::from_spanning(
        vec![vecs(&["1", "0", "0"], q()), vecs(&["0", "1", "0"], q())],
        3,
        q(),
    );
    assert_eq!(quotient_basis(&a, &b), Err(LinalgError::NotASubspace));
}

#[test]
fn from_rows_validates_shape_and_field() {
    assert!(matches!(
        Matrix::from_rows(vec![vecs(&["1", "2"], q()), vecs(&["1"], q())], 2, q()),
        Err(LinalgError::DimensionMismatch(_))
    ));
    let qi = FieldTag::quadratic(-1).unwrap();
    assert!(matches!(
        Matrix::from_rows(vec![vecs(&["1", "2"], qi)], 2, q()),
        Err(LinalgError::FieldMismatch)
    ));
}

#[test]
fn reduce_mod_p_entrywise() {
    let m = mat(&[&["-1/2", "3"]], q());
    let r = m.reduce_mod_p(5).unwrap();
    assert_eq!(*r.get(0, 0), Scalar::Mod { p: 5, value: 2 });
    assert_eq!(*r.get(0, 1), Scalar::Mod { p: 5, value: 3 });
    assert!(mat(&[&["1/5"]], q()).reduce_mod_p(5).is_err());
}

// ---------------------------------------------------------------------------
// Property tests
// ---------------------------------------------------------------------------

fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-6i64..7, rows * cols).prop_map(move |vals| {
        Matrix::from_fn(rows, cols, FieldTag::Rationals, |i, j| {
            Scalar::from_int(FieldTag::Rationals, vals[i * cols + j])
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in arb_matrix(4, 5)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
    }

    #[test]
    fn rref_is_idempotent_and_rank_transpose_invariant(m in arb_matrix(4, 4)) {
        let (r, p1) = m.rref();
        let (rr, p2) = r.rref();
        prop_assert_eq!(&r, &rr);
        prop_assert_eq!(p1, p2);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_solutions_verify(m in arb_matrix(3, 4), b in proptest::collection::vec(-6i64..7, 3)) {
        let rhs: Vec<Scalar> = b.iter().map(|&v| Scalar::from_int(FieldTag::Rationals, v)).collect();
        if let Some(x) = m.solve(&rhs).unwrap() {
            prop_assert_eq!(m.apply(&x).unwrap(), rhs);
        }
    }

    #[test]
    fn subspace_lattice_laws(m1 in arb_matrix(2, 4), m2 in arb_matrix(2, 4)) {
        let a = Subspace::from_spanning((0..2).map(|i| m1.row(i)).collect(), 4, FieldTag::Rationals);
        let b = Subspace::from_spanning((0..2).map(|i| m2.row(i)).collect(), 4, FieldTag::Rationals);
        let sum = a.sum(&b);
        let meet = a.intersect(&b);
        prop_assert!(a.is_subspace_of(&sum));
        prop_assert!(meet.is_subspace_of(&a));
        prop_assert!(meet.is_subspace_of(&b));
        // Modular law of dimensions.
        prop_assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
    }
}
