//! Catalog format, instantiation, and claim-verification tests.

mod common;

use common::{q, qi, s};
use nilalg::catalog::{
    builtin_catalog, claim_for, claims, export_catalog, instantiate, instantiate_with_vars,
    iso_claims, parse_algebra_file, parse_catalog_text, sample_assignments, unparse, verify_entry,
    verify_iso_sample, verify_parent_claim, CatalogError,
};
use nilalg::identity::{holds, variety_templates};
use nilalg::scalar::{FieldTag, Scalar};

fn assign(pairs: &[(&str, &str)], tag: FieldTag) -> Vec<(String, Scalar)> {
    pairs
        .iter()
        .map(|(n, v)| (n.to_string(), s(v, tag)))
        .collect()
}

#[test]
fn builtin_catalog_counts() {
    let cat = builtin_catalog();
    assert_eq!(cat.entries().len(), 121);
    assert_eq!(cat.section("1.3").len(), 1);
    assert_eq!(cat.section("1.4").len(), 8);
    assert_eq!(cat.section("1.5").len(), 3);
    assert_eq!(cat.section("2.2").len(), 2);
    assert_eq!(cat.section("2.3").len(), 3);
    assert_eq!(cat.section("2.4").len(), 26);
    assert_eq!(cat.section("2.5").len(), 32);
    assert_eq!(cat.section("2.6").len(), 16);
    assert_eq!(cat.section("2.7").len(), 27);
    let external: Vec<_> = cat.entries().iter().filter(|e| e.external).collect();
    assert_eq!(external.len(), 2);
    assert!(cat.get("CD4_43").is_some());
    assert!(cat.get("nope").is_none());
}

#[test]
fn unparse_then_parse_is_identity_for_every_entry() {
    for entry in builtin_catalog().entries() {
        let text = unparse(entry);
        let back = parse_algebra_file(&text)
            .unwrap_or_else(|e| panic!("{} failed to re-parse: {e}\n{text}", entry.name));
        assert_eq!(&back, entry, "round trip changed {}", entry.name);
    }
}

#[test]
fn syntax_error_reports_line_and_column() {
    let text = "algebra X dim 2 over Q\n{\n  e1&e1 = e2;\n}\n";
    match parse_catalog_text(text) {
        Err(CatalogError::SyntaxError { line: 3, .. }) => {}
        other => panic!("expected a line-3 syntax error, got {other:?}"),
    }
}

#[test]
fn unknown_parameter_is_rejected_with_line() {
    let text = "algebra X dim 2 over Q\n{\n  e1*e1 = alpha e2;\n}\n";
    match parse_catalog_text(text) {
        Err(CatalogError::UnknownParameter { name, line: 3 }) => assert_eq!(name, "alpha"),
        other => panic!("expected UnknownParameter at line 3, got {other:?}"),
    }
}

#[test]
fn duplicate_product_is_rejected() {
    let text = "algebra X dim 2 over Q\n{\n  e1*e1 = e2;\n  e1*e1 = 2 e2;\n}\n";
    match parse_catalog_text(text) {
        Err(CatalogError::DuplicateProduct { i: 1, j: 1, line: 4 }) => {}
        other => panic!("expected DuplicateProduct at line 4, got {other:?}"),
    }
}

#[test]
fn out_of_range_basis_index_is_rejected() {
    let text = "algebra X dim 2 over Q\n{\n  e1*e1 = e5;\n}\n";
    assert!(matches!(
        parse_catalog_text(text),
        Err(CatalogError::SyntaxError { line: 3, .. })
    ));
}

#[test]
fn comments_and_omitted_products_default_to_zero() {
    let text = "# header\nalgebra X dim 3 over Q  # trailing\n{\n  e1*e1 = e2; # note\n}\n";
    let entry = parse_algebra_file(text).expect("parses");
    let a = instantiate(&entry, q(), &[]).expect("instantiates");
    assert!(a.sc(0, 0, 1).is_one());
    assert!(a.sc(1, 0, 0).is_zero());
    assert!(a.sc(2, 2, 2).is_zero());
}

#[test]
fn instantiation_matches_handwritten_fixture() {
    let entry = builtin_catalog().get("CD3_04").expect("exists");
    let a = instantiate(&entry.clone(), q(), &assign(&[("lambda", "2")], q())).expect("ok");
    let b = common::cd3_04(q(), "2");
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(a.sc(i, j, k), b.sc(i, j, k), "mismatch at ({i},{j},{k})");
            }
        }
    }
}

#[test]
fn quadratic_family_instantiates_by_theta_or_by_derived_value() {
    let entry = builtin_catalog().get("CD4_87").expect("exists");
    let (by_theta, vars) =
        instantiate_with_vars(entry, q(), &assign(&[("theta", "2")], q())).expect("ok");
    let lam = vars.iter().find(|(n, _)| n == "lambda").map(|(_, v)| v).unwrap();
    assert_eq!(lam, &s("-2", q()));
    // Supplying the derived value instead inverts θ − θ² (root choice
    // θ = (1 + √(1−4λ))/2, here θ = 2).
    let by_lambda = instantiate(entry, q(), &assign(&[("lambda", "-2")], q())).expect("ok");
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                assert_eq!(by_theta.sc(i, j, k), by_lambda.sc(i, j, k));
            }
        }
    }
}

#[test]
fn non_square_discriminant_is_not_representable_over_q() {
    let entry = builtin_catalog().get("CD4_87").expect("exists");
    assert!(matches!(
        instantiate(entry, q(), &assign(&[("lambda", "1")], q())),
        Err(CatalogError::NonRepresentable(_))
    ));
}

#[test]
fn irrational_theta_instantiates_over_a_quadratic_extension() {
    // λ = 1 forces θ = (1 + √−3)/2.
    let tag = FieldTag::quadratic(-3).expect("valid tag");
    let entry = builtin_catalog().get("CD4_87").expect("exists");
    let (a, vars) =
        instantiate_with_vars(entry, tag, &assign(&[("lambda", "1")], tag)).expect("ok");
    let theta = vars.iter().find(|(n, _)| n == "theta").map(|(_, v)| v).unwrap();
    let root = Scalar::sqrt_generator(-3).expect("generator");
    let expected = Scalar::one(tag).add(&root).unwrap().div(&s("2", tag)).unwrap();
    assert_eq!(theta, &expected);
    // 2θ − 1 = √−3 appears in the table.
    assert_eq!(a.sc(0, 0, 3), &root);
    for report in holds(&variety_templates("cd").expect("cd templates"), &a) {
        assert!(report.holds, "{} fails on the irrational sample", report.name);
    }
}

#[test]
fn inconsistent_theta_and_lambda_violate_the_relation() {
    let entry = builtin_catalog().get("CD4_87").expect("exists");
    assert!(matches!(
        instantiate(entry, q(), &assign(&[("theta", "2"), ("lambda", "3")], q())),
        Err(CatalogError::ConstraintViolated { .. })
    ));
}

#[test]
fn where_constraints_and_missing_parameters_are_enforced() {
    let entry = builtin_catalog().get("CD4_100").expect("exists");
    assert!(matches!(
        instantiate(entry, q(), &assign(&[("alpha", "0")], q())),
        Err(CatalogError::ConstraintViolated { .. })
    ));
    assert!(matches!(
        instantiate(entry, q(), &assign(&[("alpha", "1/2")], q())),
        Err(CatalogError::ConstraintViolated { .. })
    ));
    assert!(matches!(
        instantiate(entry, q(), &[]),
        Err(CatalogError::MissingParameter(p)) if p == "alpha"
    ));
    assert!(instantiate(entry, q(), &assign(&[("alpha", "2")], q())).is_ok());
}

#[test]
fn field_compatibility_is_checked() {
    let cat = builtin_catalog();
    // Entries over Q instantiate anywhere; entries over Q(i) only there.
    assert!(instantiate(
        cat.get("CD4_93").unwrap(),
        qi(),
        &assign(&[("alpha", "2")], qi())
    )
    .is_ok());
    assert!(matches!(
        instantiate(cat.get("CD4_43").unwrap(), q(), &assign(&[("alpha", "2")], q())),
        Err(CatalogError::FieldMismatch(_))
    ));
}

#[test]
fn external_entries_cannot_be_instantiated() {
    let entry = builtin_catalog().get("CD4_trivial_family").expect("exists");
    assert!(entry.external);
    assert!(matches!(
        instantiate(entry, q(), &[]),
        Err(CatalogError::ExternalEntry(_))
    ));
}

#[test]
fn every_entry_has_a_claim_or_is_external() {
    let cat = builtin_catalog();
    let claimed: Vec<String> = claims().into_iter().map(|c| c.name).collect();
    for entry in cat.entries() {
        assert_eq!(
            claimed.contains(&entry.name),
            !entry.external,
            "claim coverage wrong for {}",
            entry.name
        );
    }
    for name in &claimed {
        assert!(cat.get(name).is_some(), "claim for unknown entry {name}");
    }
}

#[test]
fn parent_claims_rebuild_the_tables() {
    // One representative per derivation block; the full sweep runs in
    // the acceptance suite.
    for name in [
        "CD3_02", "CD3_04", "CD4_06", "CD4_08", "CD4_11", "CD4_22", "CD4_39", "CD4_54",
        "CD4_74", "CD4_87", "CD4_100", "D4_00", "CD4_112",
    ] {
        let claim = claim_for(name).unwrap_or_else(|| panic!("no claim for {name}"));
        let entry = builtin_catalog().get(name).expect("exists");
        let samples = sample_assignments(entry, entry.tag, 1).expect("samples");
        verify_parent_claim(&claim, entry.tag, &samples[0])
            .unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn entry_reports_carry_varieties_and_nilpotency() {
    let report = verify_entry(&claim_for("CD4_38").unwrap(), qi(), &[]).expect("ok");
    assert!(report.varieties.iter().any(|(v, _)| v == "jordan-linearized"));
    assert_eq!(report.ann_dim, 1);
    assert!(report.nilpotency_index >= 3);

    let report = verify_entry(&claim_for("CD4_86").unwrap(), q(), &[]).expect("ok");
    assert!(report.varieties.iter().any(|(v, _)| v == "lie"));

    let report = verify_entry(&claim_for("CD4s03").unwrap(), q(), &[]).expect("ok");
    assert_eq!(report.ann_dim, 2);
    assert!(report.varieties.iter().any(|(v, _)| v == "trivial"));
    // Instance counts reflect the identity arity (n⁴ tuples in dim 4).
    let (_, cd_instances) = report
        .varieties
        .iter()
        .find(|(v, _)| v == "cd")
        .expect("cd checked");
    assert_eq!(*cd_instances, 3 * 256);
}

#[test]
fn stored_iso_witnesses_verify() {
    for claim in iso_claims() {
        for sample in claim.samples.iter().filter(|s| s.witness.is_some()) {
            verify_iso_sample(&claim, sample)
                .unwrap_or_else(|e| panic!("{} ({}): {e}", claim.name, claim.relation));
        }
    }
}

#[test]
fn searched_iso_witness_is_found_for_a_rational_family() {
    let claim = iso_claims()
        .into_iter()
        .find(|c| c.name == "CD4_93")
        .expect("claim exists");
    let sample = &claim.samples[0];
    assert!(sample.witness.is_none(), "sample should exercise the search");
    let psi = verify_iso_sample(&claim, sample).expect("witness found");
    assert_eq!(psi.rows(), 4);
    assert_eq!(psi.cols(), 4);
}

#[test]
fn sample_assignments_are_admissible_and_use_small_values() {
    let entry = builtin_catalog().get("CD4_87").expect("exists");
    let samples = sample_assignments(entry, q(), 3).expect("samples");
    assert_eq!(samples.len(), 3);
    for a in &samples {
        let theta = a.iter().find(|(n, _)| n == "theta").map(|(_, v)| v).unwrap();
        assert!([s("2", q()), s("-1", q()), s("3", q())].contains(theta));
        instantiate(entry, q(), a).expect("admissible");
    }
}

#[test]
fn export_writes_one_file_per_entry_plus_index() {
    let dir = std::env::temp_dir().join(format!("nilalg-export-{}", std::process::id()));
    export_catalog(&dir).expect("export");
    let index = std::fs::read_to_string(dir.join("index.txt")).expect("index");
    // One line per entry plus one per isomorphism relation.
    let entry_lines = index.lines().filter(|l| !l.starts_with("iso\t")).count();
    let iso_lines = index.lines().filter(|l| l.starts_with("iso\t")).count();
    assert_eq!(entry_lines, 121);
    assert_eq!(iso_lines, 17);
    assert!(index.contains("CD4_28"));
    assert!(index.contains("alpha != 1"));
    let text = std::fs::read_to_string(dir.join("CD4_43.alg")).expect("entry file");
    let back = parse_algebra_file(&text).expect("re-parses");
    assert_eq!(&back, builtin_catalog().get("CD4_43").unwrap());
    std::fs::remove_dir_all(&dir).ok();
}
