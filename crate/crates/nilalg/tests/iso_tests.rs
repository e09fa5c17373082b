//! Isomorphism decisions: witness checking, fingerprint separation, and
//! the exhaustive finite-field search.

mod common;

use std::time::Duration;

use common::{cd3_03, cd3_04, cd4_05, cd4_06, cd4_08, q};
use nilalg::iso::{
    decide, fingerprint_separate, search_iso_gfp, verify_witness, DecideOptions, IsoVerdict,
    NonIsoEvidence, Separation,
};
use nilalg::linalg::Matrix;
use nilalg::scalar::FieldTag;

fn mat(rows: &[&[&str]], tag: FieldTag) -> Matrix {
    let cols = rows.first().map_or(0, |r| r.len());
    Matrix::from_rows(rows.iter().map(|r| common::vecs(r, tag)).collect(), cols, tag).unwrap()
}

#[test]
fn witness_verification_accepts_scalings() {
    // φ = diag(x, x², x³) with f(eᵢ) read from the columns is an
    // automorphism of e₁e₁ = e₂, e₂e₁ = e₃ for any x ≠ 0; take x = 2.
    let a = cd3_03(q());
    let phi = mat(&[&["2", "0", "0"], &["0", "4", "0"], &["0", "0", "8"]], q());
    assert!(verify_witness(&a, &a, &phi).unwrap());
    // A shear along the annihilator is also fine: e₁ ↦ e₁ + e₃.
    let shear = mat(&[&["1", "0", "0"], &["0", "1", "0"], &["1", "0", "1"]], q());
    assert!(verify_witness(&a, &a, &shear).unwrap());
}

#[test]
fn witness_verification_rejects_bad_maps() {
    let a = cd3_03(q());
    // Not multiplicative: swap e₂ and e₃.
    let swap = mat(&[&["1", "0", "0"], &["0", "0", "1"], &["0", "1", "0"]], q());
    assert!(!verify_witness(&a, &a, &swap).unwrap());
    // Singular.
    let singular = mat(&[&["1", "0", "0"], &["1", "0", "0"], &["0", "0", "1"]], q());
    assert!(!verify_witness(&a, &a, &singular).unwrap());
    // Wrong shape is an error, not a false.
    assert!(verify_witness(&a, &cd4_05(q()), &Matrix::identity(3, q())).is_err());
}

#[test]
fn fingerprints_separate_mirror_pairs() {
    // e₂e₁ = e₄ vs e₁e₂ = e₄ differ in left/right annihilators.
    assert_eq!(
        fingerprint_separate(&cd4_05(q()), &cd4_06(q())),
        Separation::Distinct
    );
    assert_eq!(
        fingerprint_separate(&cd3_03(q()), &cd3_03(q())),
        Separation::Inconclusive
    );
}

#[test]
fn search_finds_scaling_isomorphism_over_gf5() {
    // λ is fixed by the product, so λ = 2 vs λ = 2 after a diagonal
    // rescale must be found; λ = 2 vs λ = 3 must be refuted.
    let a = cd3_04(q(), "2").reduce_mod_p(5).unwrap();
    let phi = mat(
        &[&["2", "0", "0"], &["0", "4", "0"], &["0", "0", "3"]],
        FieldTag::prime(5).unwrap(),
    );
    let b = a.conjugate(&phi).unwrap();
    match search_iso_gfp(&a, &b, Duration::from_secs(30)).unwrap() {
        IsoVerdict::Isomorphic { witness } => {
            assert!(verify_witness(&a, &b, &witness).unwrap());
        }
        other => panic!("expected isomorphism, got {other:?}"),
    }
}

#[test]
fn search_refutes_distinct_parameters_over_gf5() {
    let a = cd3_04(q(), "2").reduce_mod_p(5).unwrap();
    let b = cd3_04(q(), "3").reduce_mod_p(5).unwrap();
    match search_iso_gfp(&a, &b, Duration::from_secs(30)).unwrap() {
        IsoVerdict::NonIsomorphic {
            evidence: NonIsoEvidence::ExhaustedSearch { p, caveat_mod_p },
        } => {
            assert_eq!(p, 5);
            assert!(!caveat_mod_p);
        }
        other => panic!("expected refutation, got {other:?}"),
    }
}

#[test]
fn decide_prefers_a_valid_witness() {
    let a = cd3_03(q());
    let phi = mat(&[&["2", "0", "0"], &["0", "4", "0"], &["0", "0", "8"]], q());
    let b = a.conjugate(&phi).unwrap();
    let options = DecideOptions {
        witness: Some(phi.clone()),
        ..DecideOptions::default()
    };
    match decide(&a, &b, &options) {
        IsoVerdict::Isomorphic { witness } => assert_eq!(witness, phi),
        other => panic!("expected isomorphism, got {other:?}"),
    }
}

#[test]
fn decide_dimension_and_fingerprint_shortcuts() {
    assert_eq!(
        decide(&cd3_03(q()), &cd4_05(q()), &DecideOptions::default()),
        IsoVerdict::NonIsomorphic {
            evidence: NonIsoEvidence::Dimension
        }
    );
    assert_eq!(
        decide(&cd4_05(q()), &cd4_06(q()), &DecideOptions::default()),
        IsoVerdict::NonIsomorphic {
            evidence: NonIsoEvidence::FingerprintDifference
        }
    );
}

#[test]
fn decide_reduces_and_flags_the_mod_p_caveat() {
    // Same fingerprints, different parameter: refuted mod p with the
    // characteristic-0 caveat set.
    let a = cd4_08(q(), "1");
    let b = cd4_08(q(), "3");
    match decide(&a, &b, &DecideOptions::default()) {
        IsoVerdict::NonIsomorphic {
            evidence: NonIsoEvidence::ExhaustedSearch { caveat_mod_p, .. },
        } => assert!(caveat_mod_p),
        IsoVerdict::NonIsomorphic {
            evidence: NonIsoEvidence::FingerprintDifference,
        } => {}
        other => panic!("expected refutation, got {other:?}"),
    }
}

#[test]
fn decide_reports_unknown_when_mod_p_searches_keep_succeeding() {
    // A rational pair that is isomorphic over every GF(p) but where no
    // characteristic-0 witness is supplied: conjugate and strip the
    // witness.  The pipeline must not claim non-isomorphism.
    let a = cd3_03(q());
    let shear = mat(&[&["1", "0", "0"], &["2", "1", "0"], &["0", "3", "1"]], q());
    let b = a.conjugate(&shear).unwrap();
    match decide(&a, &b, &DecideOptions::default()) {
        IsoVerdict::Unknown { .. } => {}
        IsoVerdict::Isomorphic { witness } => {
            // Also acceptable if a search lifts trivially; verify it.
            assert!(verify_witness(&a, &b, &witness).unwrap());
        }
        IsoVerdict::NonIsomorphic { evidence } => {
            panic!("sound pipeline refuted an isomorphic pair: {evidence:?}")
        }
    }
}
