//! Shared helpers for integration tests: compact algebra construction
//! independent of the catalog module (so foundation tests have their
//! own oracle-grade fixtures).

#![allow(dead_code)]

use nilalg::algebra::Algebra;
use nilalg::scalar::{parse_scalar, FieldTag, Scalar};

/// Builds an algebra from sparse products.  Each entry is
/// (i, j, k, coeff) with 1-based basis indices: eᵢ·eⱼ += coeff·e_k.
pub fn algebra(dim: usize, tag: FieldTag, entries: &[(usize, usize, usize, &str)]) -> Algebra {
    let mut a = Algebra::zero_algebra(dim, tag);
    for &(i, j, k, coeff) in entries {
        let c = parse_scalar(coeff, tag).expect("test coefficient parses");
        let old = a.sc(i - 1, j - 1, k - 1).clone();
        a.set_sc(i - 1, j - 1, k - 1, old.add(&c).expect("same tag"));
    }
    a
}

pub fn q() -> FieldTag {
    FieldTag::Rationals
}

pub fn qi() -> FieldTag {
    FieldTag::quadratic(-1).expect("valid tag")
}

pub fn s(text: &str, tag: FieldTag) -> Scalar {
    parse_scalar(text, tag).expect("test scalar parses")
}

pub fn vecs(texts: &[&str], tag: FieldTag) -> Vec<Scalar> {
    texts.iter().map(|t| s(t, tag)).collect()
}

/// e₁e₁ = e₂ (2-dim).
pub fn cd2s01(tag: FieldTag) -> Algebra {
    algebra(2, tag, &[(1, 1, 2, "1")])
}

/// e₁e₁ = e₂, e₂e₂ = e₃.
pub fn cd3_01(tag: FieldTag) -> Algebra {
    algebra(3, tag, &[(1, 1, 2, "1"), (2, 2, 3, "1")])
}

/// e₁e₁ = e₂, e₂e₁ = e₃, e₂e₂ = e₃.
pub fn cd3_02(tag: FieldTag) -> Algebra {
    algebra(3, tag, &[(1, 1, 2, "1"), (2, 1, 3, "1"), (2, 2, 3, "1")])
}

/// e₁e₁ = e₂, e₂e₁ = e₃.
pub fn cd3_03(tag: FieldTag) -> Algebra {
    algebra(3, tag, &[(1, 1, 2, "1"), (2, 1, 3, "1")])
}

/// e₁e₁ = e₂, e₁e₂ = e₃, e₂e₁ = λe₃.
pub fn cd3_04(tag: FieldTag, lambda: &str) -> Algebra {
    algebra(3, tag, &[(1, 1, 2, "1"), (1, 2, 3, "1"), (2, 1, 3, lambda)])
}

/// e₁e₁ = e₂ (3-dim).
pub fn cd3s01(tag: FieldTag) -> Algebra {
    algebra(3, tag, &[(1, 1, 2, "1")])
}

/// e₁e₁ = e₃, e₂e₂ = e₃.
pub fn cd3s02(tag: FieldTag) -> Algebra {
    algebra(3, tag, &[(1, 1, 3, "1"), (2, 2, 3, "1")])
}

/// e₁e₂ = e₃, e₂e₁ = −e₃.
pub fn cd3s03(tag: FieldTag) -> Algebra {
    algebra(3, tag, &[(1, 2, 3, "1"), (2, 1, 3, "-1")])
}

/// e₁e₁ = λe₃, e₂e₁ = e₃, e₂e₂ = e₃.
pub fn cd3s04(tag: FieldTag, lambda: &str) -> Algebra {
    algebra(3, tag, &[(1, 1, 3, lambda), (2, 1, 3, "1"), (2, 2, 3, "1")])
}

/// e₁e₁ = e₂, e₂e₁ = e₄, e₂e₂ = e₃.
pub fn cd4_05(tag: FieldTag) -> Algebra {
    algebra(4, tag, &[(1, 1, 2, "1"), (2, 1, 4, "1"), (2, 2, 3, "1")])
}

/// e₁e₁ = e₂, e₁e₂ = e₄, e₂e₁ = e₃.
pub fn cd4_06(tag: FieldTag) -> Algebra {
    algebra(4, tag, &[(1, 1, 2, "1"), (1, 2, 4, "1"), (2, 1, 3, "1")])
}

/// e₁e₁ = e₂, e₁e₃ = e₄, e₂e₁ = e₃, e₂e₂ = αe₄, e₃e₁ = −2e₄.
pub fn cd4_08(tag: FieldTag, alpha: &str) -> Algebra {
    algebra(
        4,
        tag,
        &[
            (1, 1, 2, "1"),
            (1, 3, 4, "1"),
            (2, 1, 3, "1"),
            (2, 2, 4, alpha),
            (3, 1, 4, "-2"),
        ],
    )
}
