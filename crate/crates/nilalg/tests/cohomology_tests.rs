//! Second cohomology: cocycle spaces against a hand-transcribed
//! constraint oracle, coboundaries, quotients, annihilators, and the
//! form-expression parser.

mod common;

use common::{cd3_03, cd3_04, cd3s01, cd3s02, cd3s03, cd3s04, q, s, vecs};
use nilalg::algebra::Algebra;
use nilalg::cohomology::{
    cocycle_annihilator, cocycle_space, coboundary_space, h2, parse_form, ts_membership,
    BilinearForm, CohomologyError,
};
use nilalg::identity::{builtin, tuples, variety_templates};
use nilalg::linalg::{Matrix, Subspace};
use nilalg::scalar::{FieldTag, Scalar};

/// Independent oracle: the three displayed θ-conditions for the
/// CD identities, transcribed term by term.
///
///   θ((xy)a, b) − θ((xy)b, a) = θ((xa)b − (xb)a, y) + θ(x, (ya)b − (yb)a)
///   θ(a(xy), b) − θ(a, (xy)b) = θ((ax)b − a(xb), y) + θ(x, (ay)b − a(yb))
///   θ(a, b(xy)) − θ(b, a(xy)) = θ(a(bx) − b(ax), y) + θ(x, a(by) − b(ay))
///
/// Each (pair, sign) contributes ±L_p·R_q to the row at column p·n+q.
fn oracle_cd_cocycle_space(a: &Algebra) -> Subspace {
    let n = a.dim();
    let tag = a.tag();
    let e = |i: usize| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(tag); n];
        v[i] = Scalar::one(tag);
        v
    };
    let p = |u: &[Scalar], v: &[Scalar]| a.product(u, v).unwrap();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for t in tuples(n, 4) {
        let (x, y, va, b) = (e(t[0]), e(t[1]), e(t[2]), e(t[3]));
        // Each condition as a list of (sign, left argument, right argument).
        let xy = p(&x, &y);
        let conditions: Vec<Vec<(i64, Vec<Scalar>, Vec<Scalar>)>> = vec![
            vec![
                (1, p(&xy, &va), b.clone()),
                (-1, p(&xy, &b), va.clone()),
                (-1, p(&p(&x, &va), &b), y.clone()),
                (1, p(&p(&x, &b), &va), y.clone()),
                (-1, x.clone(), p(&p(&y, &va), &b)),
                (1, x.clone(), p(&p(&y, &b), &va)),
            ],
            vec![
                (1, p(&va, &xy), b.clone()),
                (-1, va.clone(), p(&xy, &b)),
                (-1, p(&p(&va, &x), &b), y.clone()),
                (1, p(&va, &p(&x, &b)), y.clone()),
                (-1, x.clone(), p(&p(&va, &y), &b)),
                (1, x.clone(), p(&va, &p(&y, &b))),
            ],
            vec![
                (1, va.clone(), p(&b, &xy)),
                (-1, b.clone(), p(&va, &xy)),
                (-1, p(&va, &p(&b, &x)), y.clone()),
                (1, p(&b, &p(&va, &x)), y.clone()),
                (-1, x.clone(), p(&va, &p(&b, &y))),
                (1, x.clone(), p(&b, &p(&va, &y))),
            ],
        ];
        for cond in conditions {
            let mut row = vec![Scalar::zero(tag); n * n];
            for (sign, l, r) in cond {
                let c = Scalar::from_int(tag, sign);
                for pi in 0..n {
                    for qi in 0..n {
                        let term = c.mul(&l[pi]).and_then(|v| v.mul(&r[qi])).unwrap();
                        row[pi * n + qi] = row[pi * n + qi].add(&term).unwrap();
                    }
                }
            }
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(row);
            }
        }
    }
    Matrix::from_rows(rows, n * n, tag).unwrap().kernel()
}

#[test]
fn cocycle_space_matches_transcribed_conditions() {
    let cd = builtin("cd").unwrap();
    for a in [cd3_03(q()), cd3_04(q(), "2"), cd3s01(q()), cd3s04(q(), "-1")] {
        let z2 = cocycle_space(&a, &cd).unwrap();
        assert_eq!(z2, oracle_cd_cocycle_space(&a));
    }
}

#[test]
fn trivial_triple_products_leave_all_forms_cocycles() {
    // e₁e₂ = e₃, e₂e₁ = −e₃: every degree-4 monomial vanishes, so
    // Z² is the full 9-dimensional space of forms.
    let a = cd3s03(q());
    let z2 = cocycle_space(&a, &builtin("cd").unwrap()).unwrap();
    assert_eq!(z2.dim(), 9);
}

#[test]
fn coboundaries_are_cocycles() {
    let cd = builtin("cd").unwrap();
    for a in [cd3_03(q()), cd3_04(q(), "0"), cd3s02(q()), cd3s04(q(), "1")] {
        let z2 = cocycle_space(&a, &cd).unwrap();
        let b2 = coboundary_space(&a);
        assert!(b2.is_subspace_of(&z2));
    }
}

#[test]
fn coboundary_of_cd3_03_reads_off_structure_constants() {
    // δ(e₂^*) = Δ₁₁ and δ(e₃^*) = Δ₂₁; δ(e₁^*) = 0.
    let b2 = coboundary_space(&cd3_03(q()));
    assert_eq!(b2.dim(), 2);
    assert!(b2.contains(&BilinearForm::delta(3, q(), 0, 0).as_vec()));
    assert!(b2.contains(&BilinearForm::delta(3, q(), 1, 0).as_vec()));
}

#[test]
fn h2_dimensions_of_three_dimensional_fixtures() {
    let cd = builtin("cd").unwrap();
    let expect = [
        (cd3_03(q()), 3),
        (cd3_04(q(), "1"), 3),
        (cd3s01(q()), 8),
        (cd3s02(q()), 8),
        (cd3s03(q()), 8),
        (cd3s04(q(), "0"), 8),
    ];
    for (a, dim) in expect {
        let reps = h2(&a, &cd).unwrap();
        assert_eq!(reps.len(), dim);
        // Representatives are genuine cocycles with nonzero cosets.
        let z2 = cocycle_space(&a, &cd).unwrap();
        let b2 = coboundary_space(&a);
        for r in &reps {
            assert!(z2.contains(&r.as_vec()));
            assert!(!b2.contains(&r.as_vec()));
        }
    }
}

#[test]
fn sub_variety_cohomology_dimensions() {
    let jordan = variety_templates("jordan-linearized").unwrap();
    assert_eq!(h2(&cd3s01(q()), &jordan).unwrap().len(), 4);
    assert_eq!(h2(&cd3s02(q()), &jordan).unwrap().len(), 4);
    let lie = variety_templates("lie").unwrap();
    assert_eq!(h2(&cd3s03(q()), &lie).unwrap().len(), 2);
}

#[test]
fn cocycle_annihilator_of_a_corner_form() {
    // θ = Δ₁₁ on a 3-dimensional space: Ann(θ) = {x₁ = 0}.
    let a = cd3s01(q());
    let theta = BilinearForm::delta(3, q(), 0, 0);
    let ann = cocycle_annihilator(&a, &[theta]);
    assert_eq!(ann.dim(), 2);
    assert!(ann.contains(&vecs(&["0", "1", "0"], q())));
    assert!(ann.contains(&vecs(&["0", "0", "1"], q())));
}

#[test]
fn ts_membership_accepts_and_rejects() {
    let cd = builtin("cd").unwrap();
    let a = cd3s01(q());
    // Δ₂₂ + Δ₁₃ has Ann(θ) = 0 and a nonzero class.
    let good = parse_form("D(2,2) + D(1,3)", 3, q()).unwrap();
    assert!(ts_membership(&a, &[good], &cd).unwrap());
    // Δ₁₁ is the coboundary δ(e₂^*): zero class ⇒ not in T₁.
    let coboundary = BilinearForm::delta(3, q(), 0, 0);
    assert!(!ts_membership(&a, &[coboundary], &cd).unwrap());
    // Δ₁₁ + Δ₂₂ leaves e₃ in both annihilators ⇒ split direction exists.
    let theta = parse_form("D(1,1) + D(2,2)", 3, q()).unwrap();
    assert!(!ts_membership(&a, &[theta], &cd).unwrap());
}

#[test]
fn form_display_round_trip() {
    let qi = FieldTag::quadratic(-1).unwrap();
    let texts = [
        ("D(2,2)", q()),
        ("D(1,1) - 2*D(3,1)", q()),
        ("-1/2*D(1,2) + D(2,1)", q()),
        ("(1/2 - i)*D(1,2) + i*D(3,3)", qi),
    ];
    for (text, tag) in texts {
        let f = parse_form(text, 3, tag).unwrap();
        assert_eq!(f.to_string(), text);
        let f2 = parse_form(&f.to_string(), 3, tag).unwrap();
        assert_eq!(f, f2);
    }
    assert_eq!(BilinearForm::zero(2, q()).to_string(), "0");
}

#[test]
fn form_parser_rejects_malformed_input() {
    assert!(matches!(
        parse_form("D(1,4)", 3, q()),
        Err(CohomologyError::FormSyntax(_))
    ));
    assert!(matches!(
        parse_form("2*E(1,1)", 3, q()),
        Err(CohomologyError::FormSyntax(_))
    ));
    assert!(matches!(
        parse_form("D(1,2", 3, q()),
        Err(CohomologyError::FormSyntax(_))
    ));
    assert!(parse_form("i*D(1,1)", 3, q()).is_err());
}

#[test]
fn form_eval_agrees_with_matrix() {
    let f = parse_form("D(1,2) - 3*D(2,1) + 1/2*D(3,3)", 3, q()).unwrap();
    let x = vecs(&["1", "2", "-1"], q());
    let y = vecs(&["0", "1", "4"], q());
    // xᵀMy computed through the matrix form.
    let m = f.matrix();
    let my = m.apply(&y).unwrap();
    let mut acc = Scalar::zero(q());
    for (xi, mi) in x.iter().zip(&my) {
        acc = acc.add(&xi.mul(mi).unwrap()).unwrap();
    }
    assert_eq!(f.eval(&x, &y), acc);
    assert_eq!(f.eval(&x, &y), s("-1", q()));
    assert_eq!(BilinearForm::from_matrix(&m), f);
}
