//! Identity templates: the built-in varieties hold on their fixture
//! algebras and fail with counterexamples where they should.

mod common;

use common::{algebra, cd3_03, cd3s02, cd3s03, cd4_08, q, vecs};
use nilalg::identity::{builtin, holds, tuples, variety_templates, IdentityError};

#[test]
fn cd_identities_hold_on_fixtures() {
    let templates = builtin("cd").unwrap();
    for a in [cd3_03(q()), cd3s02(q()), cd3s03(q()), cd4_08(q(), "1")] {
        let reports = holds(&templates, &a);
        assert_eq!(reports.len(), 3);
        for r in &reports {
            assert!(r.holds, "{} fails at {:?}", r.name, r.counterexample);
            assert_eq!(r.instances, a.dim().pow(4));
            assert_eq!(r.counterexample, None);
        }
    }
}

#[test]
fn counterexample_is_lexicographically_first() {
    // e₁e₁ = e₁ is not even power-associative; the trivial-product
    // template fails first at (e₁, e₁, e₁).
    let a = algebra(2, q(), &[(1, 1, 1, "1")]);
    let reports = holds(&builtin("trivial").unwrap(), &a);
    assert!(!reports[0].holds);
    assert_eq!(reports[0].counterexample, Some(vec![0, 0, 0]));
}

#[test]
fn lie_holds_only_on_the_anticommutative_fixture() {
    let templates = builtin("lie").unwrap();
    assert!(holds(&templates, &cd3s03(q())).iter().all(|r| r.holds));
    // A commutative algebra with a nonzero product is not anticommutative.
    let reports = holds(&templates, &cd3s02(q()));
    assert!(reports.iter().any(|r| !r.holds));
}

#[test]
fn jordan_linearized_holds_on_commutative_fixtures() {
    let templates = builtin("jordan-linearized").unwrap();
    assert!(holds(&templates, &cd3s02(q())).iter().all(|r| r.holds));
    // A non-commutative algebra fails the commutativity part.
    let reports = holds(&templates, &cd3_03(q()));
    assert!(reports.iter().any(|r| !r.holds));
}

#[test]
fn leibniz_right_identity() {
    // e₁e₁ = e₂, e₂e₁ = e₃ satisfies the right Leibniz identity
    // (all products of three basis vectors are left-normed).
    let templates = builtin("leibniz").unwrap();
    assert!(holds(&templates, &cd3_03(q())).iter().all(|r| r.holds));
}

#[test]
fn trivial_multiplication_of_an_extension_of_zero() {
    // e₁e₂ = e₃, e₂e₁ = −e₃: all triple products vanish.
    let templates = builtin("trivial").unwrap();
    assert!(holds(&templates, &cd3s03(q())).iter().all(|r| r.holds));
}

#[test]
fn evaluate_on_general_vectors_matches_multilinearity() {
    // cd templates vanish on arbitrary vectors, not only basis tuples.
    let a = cd4_08(q(), "-1");
    let templates = builtin("cd").unwrap();
    let args = [
        vecs(&["1", "2", "0", "-1"], q()),
        vecs(&["0", "1", "1", "3"], q()),
        vecs(&["2", "-1", "1", "0"], q()),
        vecs(&["1", "0", "0", "1"], q()),
    ];
    for t in &templates {
        let val = t.evaluate(&a, &args).unwrap();
        assert!(val.iter().all(|x| x.is_zero()), "{} nonzero", t.name);
    }
}

#[test]
fn variety_templates_include_cd() {
    let jordan = variety_templates("jordan-linearized").unwrap();
    let names: Vec<&str> = jordan.iter().map(|t| t.name.as_str()).collect();
    assert!(names.contains(&"cd1"));
    assert!(names.contains(&"jordan-linearized"));
    assert_eq!(variety_templates("cd").unwrap().len(), 3);
}

#[test]
fn unknown_template_is_an_error() {
    assert_eq!(
        builtin("associative").unwrap_err(),
        IdentityError::UnknownTemplate("associative".to_string())
    );
}

#[test]
fn arity_mismatch_is_an_error() {
    let t = &builtin("commutative").unwrap()[0];
    let a = cd3_03(q());
    assert!(matches!(
        t.evaluate(&a, &[vecs(&["1", "0", "0"], q())]),
        Err(IdentityError::DimensionMismatch(_))
    ));
}

#[test]
fn tuples_enumerates_lexicographically() {
    assert_eq!(
        tuples(2, 2),
        vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
    );
    assert_eq!(tuples(3, 4).len(), 81);
}
