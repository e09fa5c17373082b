//! Structure-constant algebras: products, power series, annihilators,
//! derivations, quotients, and fingerprint invariance.

mod common;

use common::{algebra, cd2s01, cd3_03, cd3s01, cd3s03, cd4_05, q, vecs};
use nilalg::algebra::{Algebra, AlgebraError};
use nilalg::linalg::Matrix;
use nilalg::scalar::{FieldTag, Scalar};
use proptest::prelude::*;

#[test]
fn basis_products_match_table() {
    let a = cd3_03(q());
    assert_eq!(a.basis_product(0, 0), vecs(&["0", "1", "0"], q()));
    assert_eq!(a.basis_product(1, 0), vecs(&["0", "0", "1"], q()));
    assert_eq!(a.basis_product(0, 1), vecs(&["0", "0", "0"], q()));
}

#[test]
fn product_is_bilinear_on_a_sample() {
    let a = cd3_03(q());
    let x = vecs(&["1", "2", "-1"], q());
    let y = vecs(&["3", "0", "1"], q());
    let z = vecs(&["-1", "1", "2"], q());
    // (x+y)z = xz + yz.
    let xy: Vec<Scalar> = x
        .iter()
        .zip(&y)
        .map(|(u, v)| u.add(v).unwrap())
        .collect();
    let lhs = a.product(&xy, &z).unwrap();
    let rhs: Vec<Scalar> = a
        .product(&x, &z)
        .unwrap()
        .iter()
        .zip(a.product(&y, &z).unwrap())
        .map(|(u, v)| u.add(&v).unwrap())
        .collect();
    assert_eq!(lhs, rhs);
}

#[test]
fn power_series_and_nilpotency_index() {
    // e₁e₁=e₂, e₂e₁=e₃: A²={e₂,e₃}, A³={e₃}, A⁴=0.
    let a = cd3_03(q());
    let (dims, index) = a.power_series();
    assert_eq!(dims, vec![3, 2, 1, 0]);
    assert_eq!(index, Some(4));
    assert!(a.is_nilpotent());
    assert_eq!(a.power(2).dim(), 2);
    assert_eq!(a.power(3).dim(), 1);
    assert!(a.power(3).contains(&vecs(&["0", "0", "1"], q())));
    assert_eq!(a.power(4).dim(), 0);
}

#[test]
fn idempotent_is_not_nilpotent() {
    let a = algebra(2, q(), &[(1, 1, 1, "1")]);
    let (_, index) = a.power_series();
    assert_eq!(index, None);
    assert!(!a.is_nilpotent());
}

#[test]
fn annihilators_of_cd3_03() {
    let a = cd3_03(q());
    let left = a.left_annihilator();
    let right = a.right_annihilator();
    let ann = a.annihilator();
    assert_eq!(left.dim(), 1);
    assert!(left.contains(&vecs(&["0", "0", "1"], q())));
    assert_eq!(right.dim(), 2);
    assert!(right.contains(&vecs(&["0", "1", "0"], q())));
    assert_eq!(ann.dim(), 1);
    assert!(ann.contains(&vecs(&["0", "0", "1"], q())));
}

#[test]
fn commutativity_flags() {
    assert!(cd3s01(q()).is_commutative());
    assert!(!cd3s01(q()).is_anticommutative());
    assert!(cd3s03(q()).is_anticommutative());
    assert!(!cd3s03(q()).is_commutative());
}

#[test]
fn square_span_examples() {
    // Anticommutative product: every square vanishes.
    assert_eq!(cd3s03(q()).square_span().dim(), 0);
    // e₁e₁=e₂, e₂e₁=e₃: squares span {e₂, e₂+e₃}.
    let span = cd3_03(q()).square_span();
    assert_eq!(span.dim(), 2);
    assert!(span.contains(&vecs(&["0", "1", "0"], q())));
    assert!(span.contains(&vecs(&["0", "0", "1"], q())));
}

#[test]
fn derivations_satisfy_leibniz() {
    let a = cd3_03(q());
    let ders = a.derivations();
    assert!(ders.dim() > 0);
    let n = a.dim();
    for d in ders.basis_vectors() {
        let dm = Matrix::from_fn(n, n, q(), |r, s| d[r * n + s].clone());
        for i in 0..n {
            for j in 0..n {
                let mut ei = vec![Scalar::zero(q()); n];
                ei[i] = Scalar::one(q());
                let mut ej = vec![Scalar::zero(q()); n];
                ej[j] = Scalar::one(q());
                let lhs = dm.apply(&a.basis_product(i, j)).unwrap();
                let t1 = a.product(&dm.apply(&ei).unwrap(), &ej).unwrap();
                let t2 = a.product(&ei, &dm.apply(&ej).unwrap()).unwrap();
                let rhs: Vec<Scalar> = t1
                    .iter()
                    .zip(&t2)
                    .map(|(u, v)| u.add(v).unwrap())
                    .collect();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn annihilator_quotient_collapses_central_coordinates() {
    // e₁e₁=e₂, e₂e₁=e₄, e₂e₂=e₃ has annihilator {e₃, e₄}; the quotient
    // is the 2-dimensional algebra e₁e₁=e₂.
    let a = cd4_05(q());
    let ann = a.annihilator();
    assert_eq!(ann.dim(), 2);
    let (quot, proj) = a.quotient_by_annihilator_complement(&ann).unwrap();
    assert_eq!(quot.dim(), 2);
    assert_eq!(quot, cd2s01(q()));
    assert_eq!(proj.rows(), 2);
    assert_eq!(proj.cols(), 4);
    // The projection is an algebra map modulo the annihilator component:
    // P(eᵢeⱼ) = P(eᵢ)·P(eⱼ) in the quotient.
    for i in 0..4 {
        for j in 0..4 {
            let lhs = proj.apply(&a.basis_product(i, j)).unwrap();
            let pi = proj.apply(&unit(4, i)).unwrap();
            let pj = proj.apply(&unit(4, j)).unwrap();
            assert_eq!(lhs, quot.product(&pi, &pj).unwrap());
        }
    }
}

#[test]
fn annihilator_quotient_rejects_non_central_ideal() {
    let a = cd3_03(q());
    let not_central =
        nilalg::linalg::Subspace::from_spanning(vec![vecs(&["0", "1", "0"], q())], 3, q());
    assert_eq!(
        a.quotient_by_annihilator_complement(&not_central),
        Err(AlgebraError::NotInAnnihilator)
    );
}

#[test]
fn reduce_mod_p_transfers_structure_constants() {
    let a = algebra(2, q(), &[(1, 1, 2, "-1/2")]);
    let b = a.reduce_mod_p(5).unwrap();
    assert_eq!(*b.sc(0, 0, 1), Scalar::Mod { p: 5, value: 2 });
    assert_eq!(b.tag(), FieldTag::prime(5).unwrap());
}

#[test]
fn fingerprint_of_cd3_03() {
    let fp = cd3_03(q()).fingerprint();
    assert_eq!(fp.dim_sq, 2);
    assert_eq!(fp.dim_cube, 1);
    assert_eq!(fp.dim_fourth, 0);
    assert_eq!(fp.dim_ann, 1);
    assert!(!fp.commutative);
    assert!(!fp.anticommutative);
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(FieldTag::Rationals); n];
    v[i] = Scalar::one(FieldTag::Rationals);
    v
}

// ---------------------------------------------------------------------------
// Property tests
// ---------------------------------------------------------------------------

fn arb_small_algebra() -> impl Strategy<Value = Algebra> {
    // Random sparse nilpotent-looking tensors on 3 basis vectors; only
    // bilinear-level invariants are exercised, so arbitrary tensors are fine.
    proptest::collection::vec((-3i64..4, 0usize..3, 0usize..3, 0usize..3), 0..6).prop_map(
        |entries| {
            let mut a = Algebra::zero_algebra(3, FieldTag::Rationals);
            for (c, i, j, k) in entries {
                let old = a.sc(i, j, k).clone();
                a.set_sc(
                    i,
                    j,
                    k,
                    old.add(&Scalar::from_int(FieldTag::Rationals, c)).unwrap(),
                );
            }
            a
        },
    )
}

fn arb_invertible_3x3() -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-3i64..4, 9)
        .prop_map(|vals| {
            Matrix::from_fn(3, 3, FieldTag::Rationals, |i, j| {
                Scalar::from_int(FieldTag::Rationals, vals[i * 3 + j])
            })
        })
        .prop_filter("invertible", Matrix::is_invertible)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fingerprint_is_basis_invariant(a in arb_small_algebra(), phi in arb_invertible_3x3()) {
        let b = a.conjugate(&phi).unwrap();
        prop_assert_eq!(a.fingerprint(), b.fingerprint());
    }

    #[test]
    fn conjugation_composes(a in arb_small_algebra(), phi in arb_invertible_3x3()) {
        let b = a.conjugate(&phi).unwrap();
        let back = b.conjugate(&phi.inverse().unwrap()).unwrap();
        prop_assert_eq!(a, back);
    }
}
