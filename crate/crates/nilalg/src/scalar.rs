//! Exact arithmetic in the base fields ℚ, ℚ(i), ℚ(√d), and GF(p).
//!
//! Every coefficient in the crate is a [`Scalar`]: a reduced arbitrary-
//! precision fraction, an element a + b·√d of a quadratic extension
//! (ℚ(i) is the case d = −1), or a residue modulo a prime.  Arithmetic
//! is closed within a single [`FieldTag`]; mixing tags is an error.
//!
//! The module also provides the scalar expression grammar used by the
//! algebra file format and the CLI (`parse_scalar`), canonical printing
//! (printing then reparsing is the identity), and the reduction map
//! into GF(p) that underlies the finite-field isomorphism oracle.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

/// Errors arising from scalar construction, arithmetic, and parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("value not representable in this field: {0}")]
    NonRepresentable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("bad prime {p}: {msg}")]
    BadPrime { p: u64, msg: String },
    #[error("{d} has no square root modulo {p}")]
    NoSquareRoot { d: i64, p: u64 },
    #[error("invalid field tag: {0}")]
    InvalidTag(String),
}

/// Identifies the field a [`Scalar`] lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldTag {
    /// The rational numbers ℚ.
    Rationals,
    /// ℚ(√d) for a squarefree integer d ∉ {0, 1}; d = −1 is ℚ(i).
    QuadraticExtension(i64),
    /// The prime field GF(p).
    PrimeField(u64),
}

impl FieldTag {
    /// ℚ(√d).  Fails unless d is squarefree and not 0 or 1.
    pub fn quadratic(d: i64) -> Result<Self, ScalarError> {
        if d == 0 || d == 1 {
            return Err(ScalarError::InvalidTag(format!("d = {d} is not allowed")));
        }
        if !is_squarefree(d) {
            return Err(ScalarError::InvalidTag(format!("{d} is not squarefree")));
        }
        Ok(FieldTag::QuadraticExtension(d))
    }

    /// GF(p).  Fails unless p is prime.
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if !is_prime(p) {
            return Err(ScalarError::InvalidTag(format!("{p} is not prime")));
        }
        Ok(FieldTag::PrimeField(p))
    }

    /// Parses a field name: `Q`, `Q(i)`, `Q(sqrt(D))`, or `GF(P)`.
    pub fn parse(text: &str) -> Result<Self, ScalarError> {
        let t = text.trim();
        if t == "Q" {
            return Ok(FieldTag::Rationals);
        }
        if t == "Q(i)" {
            return FieldTag::quadratic(-1);
        }
        if let Some(inner) = t.strip_prefix("Q(sqrt(").and_then(|s| s.strip_suffix("))")) {
            let d: i64 = inner
                .parse()
                .map_err(|_| ScalarError::InvalidTag(format!("bad radicand {inner:?}")))?;
            return FieldTag::quadratic(d);
        }
        if let Some(inner) = t.strip_prefix("GF(").and_then(|s| s.strip_suffix(')')) {
            let p: u64 = inner
                .parse()
                .map_err(|_| ScalarError::InvalidTag(format!("bad prime {inner:?}")))?;
            return FieldTag::prime(p);
        }
        Err(ScalarError::InvalidTag(format!("unknown field {t:?}")))
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rationals => write!(f, "Q"),
            FieldTag::QuadraticExtension(-1) => write!(f, "Q(i)"),
            FieldTag::QuadraticExtension(d) => write!(f, "Q(sqrt({d}))"),
            FieldTag::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element carrying its [`FieldTag`].
///
/// Fractions are always stored reduced with positive denominator (the
/// underlying `BigRational` maintains this).  Quadratic elements store
/// the pair (a, b) of a + b·√d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Quadratic { d: i64, a: BigRational, b: BigRational },
    Mod { p: u64, value: u64 },
}

impl Scalar {
    pub fn tag(&self) -> FieldTag {
        match self {
            Scalar::Rational(_) => FieldTag::Rationals,
            Scalar::Quadratic { d, .. } => FieldTag::QuadraticExtension(*d),
            Scalar::Mod { p, .. } => FieldTag::PrimeField(*p),
        }
    }

    pub fn zero(tag: FieldTag) -> Self {
        Scalar::from_int(tag, 0)
    }

    pub fn one(tag: FieldTag) -> Self {
        Scalar::from_int(tag, 1)
    }

    /// Embeds a machine integer into the field.
    pub fn from_int(tag: FieldTag, n: i64) -> Self {
        match tag {
            FieldTag::Rationals => Scalar::Rational(BigRational::from(BigInt::from(n))),
            FieldTag::QuadraticExtension(d) => Scalar::Quadratic {
                d,
                a: BigRational::from(BigInt::from(n)),
                b: BigRational::zero(),
            },
            FieldTag::PrimeField(p) => Scalar::Mod {
                p,
                value: n.rem_euclid(p as i64) as u64,
            },
        }
    }

    /// Embeds a rational n/m into the field.  m must be nonzero and,
    /// over GF(p), coprime to p.
    pub fn from_fraction(tag: FieldTag, n: i64, m: i64) -> Result<Self, ScalarError> {
        if m == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Scalar::from_int(tag, n).div(&Scalar::from_int(tag, m))
    }

    /// The element √d of ℚ(√d) (i for d = −1).
    pub fn sqrt_generator(d: i64) -> Result<Self, ScalarError> {
        match FieldTag::quadratic(d)? {
            FieldTag::QuadraticExtension(d) => Ok(Scalar::Quadratic {
                d,
                a: BigRational::zero(),
                b: BigRational::one(),
            }),
            _ => unreachable!(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Quadratic { a, b, .. } => a.is_zero() && b.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(self.tag())
    }

    fn same_tag(&self, rhs: &Scalar) -> Result<(), ScalarError> {
        if self.tag() == rhs.tag() {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(format!(
                "{} vs {}",
                self.tag(),
                rhs.tag()
            )))
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_tag(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Quadratic { d, a, b }, Scalar::Quadratic { a: a2, b: b2, .. }) => {
                Scalar::Quadratic {
                    d: *d,
                    a: a + a2,
                    b: b + b2,
                }
            }
            (Scalar::Mod { p, value: x }, Scalar::Mod { value: y, .. }) => Scalar::Mod {
                p: *p,
                value: (x + y) % p,
            },
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Quadratic { d, a, b } => Scalar::Quadratic {
                d: *d,
                a: -a,
                b: -b,
            },
            Scalar::Mod { p, value } => Scalar::Mod {
                p: *p,
                value: if *value == 0 { 0 } else { p - value },
            },
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_tag(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Quadratic { d, a, b }, Scalar::Quadratic { a: a2, b: b2, .. }) => {
                // (a + b√d)(a' + b'√d) = (aa' + d·bb') + (ab' + a'b)√d
                let dd = BigRational::from(BigInt::from(*d));
                Scalar::Quadratic {
                    d: *d,
                    a: a * a2 + &dd * b * b2,
                    b: a * b2 + a2 * b,
                }
            }
            (Scalar::Mod { p, value: x }, Scalar::Mod { value: y, .. }) => Scalar::Mod {
                p: *p,
                value: ((*x as u128 * *y as u128) % *p as u128) as u64,
            },
            _ => unreachable!(),
        })
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(x) => Scalar::Rational(x.recip()),
            Scalar::Quadratic { d, a, b } => {
                // 1/(a + b√d) = (a − b√d)/(a² − d·b²); the norm is nonzero
                // because d is squarefree (√d ∉ ℚ).
                let dd = BigRational::from(BigInt::from(*d));
                let norm = a * a - &dd * b * b;
                Scalar::Quadratic {
                    d: *d,
                    a: a / &norm,
                    b: -(b / &norm),
                }
            }
            Scalar::Mod { p, value } => Scalar::Mod {
                p: *p,
                value: mod_inverse(*value, *p),
            },
        })
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.mul(&rhs.inv()?)
    }

    /// Integer power by repeated multiplication (exponent ≥ 0).
    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one(self.tag());
        for _ in 0..e {
            acc = acc.mul(self).expect("same tag");
        }
        acc
    }

    /// A square root within the same field, when one exists.
    ///
    /// Over ℚ this finds rational square roots of nonnegative
    /// perfect-square fractions.  Over ℚ(√d) it additionally finds
    /// roots of the form r·√d (for d·r² inputs); mixed elements with a
    /// nonzero √d part are not handled and return `None`.  Over GF(p)
    /// the smallest nonnegative root is returned.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(x) => rational_sqrt(x).map(Scalar::Rational),
            Scalar::Quadratic { d, a, b } => {
                if !b.is_zero() {
                    return None;
                }
                if let Some(r) = rational_sqrt(a) {
                    return Some(Scalar::Quadratic {
                        d: *d,
                        a: r,
                        b: BigRational::zero(),
                    });
                }
                // a = d·r² gives √a = r·√d.
                let quot = a / BigRational::from(BigInt::from(*d));
                rational_sqrt(&quot).map(|r| Scalar::Quadratic {
                    d: *d,
                    a: BigRational::zero(),
                    b: r,
                })
            }
            Scalar::Mod { p, value } => (0..*p)
                .find(|x| (*x as u128 * *x as u128 % *p as u128) as u64 == *value)
                .map(|x| Scalar::Mod { p: *p, value: x }),
        }
    }

    /// The ring homomorphism into GF(p).
    ///
    /// Fractions reduce as n·m⁻¹ mod p, which requires every
    /// denominator coprime to p.  For ℚ(√d) the image of √d is the
    /// smallest nonnegative square root of d mod p, chosen
    /// deterministically; if d is a non-residue the reduction fails.
    pub fn reduce_mod_p(&self, p: u64) -> Result<Scalar, ScalarError> {
        if !is_prime(p) {
            return Err(ScalarError::BadPrime {
                p,
                msg: "not prime".into(),
            });
        }
        match self {
            Scalar::Rational(x) => Ok(Scalar::Mod {
                p,
                value: reduce_rational(x, p)?,
            }),
            Scalar::Quadratic { d, a, b } => {
                let r = sqrt_mod(*d, p).ok_or(ScalarError::NoSquareRoot { d: *d, p })?;
                let av = reduce_rational(a, p)?;
                let bv = reduce_rational(b, p)?;
                Ok(Scalar::Mod {
                    p,
                    value: (av + (bv as u128 * r as u128 % p as u128) as u64) % p,
                })
            }
            Scalar::Mod { .. } => Err(ScalarError::FieldMismatch(
                "reduce_mod_p expects a characteristic-zero scalar".into(),
            )),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(x) => write!(f, "{x}"),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
            Scalar::Quadratic { d, a, b } => {
                let root = if *d == -1 {
                    "i".to_string()
                } else {
                    format!("sqrt({d})")
                };
                if b.is_zero() {
                    return write!(f, "{a}");
                }
                let b_abs = b.abs();
                let b_part = if b_abs.is_one() {
                    root
                } else {
                    format!("{b_abs}*{root}")
                };
                if a.is_zero() {
                    if b.is_negative() {
                        write!(f, "-{b_part}")
                    } else {
                        write!(f, "{b_part}")
                    }
                } else if b.is_negative() {
                    write!(f, "{a} - {b_part}")
                } else {
                    write!(f, "{a} + {b_part}")
                }
            }
        }
    }
}

/// The exact square root of a nonnegative perfect-square fraction.
fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let rn = x.numer().sqrt();
    let rd = x.denom().sqrt();
    if &(&rn * &rn) == x.numer() && &(&rd * &rd) == x.denom() {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

/// Reduces a rational to a residue mod p (denominator must be coprime to p).
fn reduce_rational(x: &BigRational, p: u64) -> Result<u64, ScalarError> {
    let pb = BigInt::from(p);
    let num = ((x.numer() % &pb) + &pb) % &pb;
    let den = ((x.denom() % &pb) + &pb) % &pb;
    let num: u64 = num.try_into().expect("residue fits u64");
    let den: u64 = den.try_into().expect("residue fits u64");
    if den == 0 {
        return Err(ScalarError::BadPrime {
            p,
            msg: format!("denominator of {x} divisible by {p}"),
        });
    }
    Ok((num as u128 * mod_inverse(den, p) as u128 % p as u128) as u64)
}

/// The smallest nonnegative square root of d mod p, if one exists.
fn sqrt_mod(d: i64, p: u64) -> Option<u64> {
    let target = d.rem_euclid(p as i64) as u64;
    (0..p).find(|r| (r * r) % p == target)
}

fn mod_inverse(x: u64, p: u64) -> u64 {
    // Fermat: x^(p−2) mod p; x nonzero, p prime.
    debug_assert!(x % p != 0);
    let mut base = x as u128 % p as u128;
    let mut e = p - 2;
    let mut acc: u128 = 1;
    let m = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn is_squarefree(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= n {
        if n % (k * k) == 0 {
            return false;
        }
        while n % k == 0 {
            n /= k;
        }
        k += 1;
    }
    true
}

/// Splits |m| = s²·d₀ with d₀ squarefree; returns (s, d₀·sign(m)).
fn squarefree_decomposition(m: i64) -> (u64, i64) {
    let mut n = m.unsigned_abs();
    let mut s = 1u64;
    let mut k = 2u64;
    while k * k <= n {
        while n % (k * k) == 0 {
            n /= k * k;
            s *= k;
        }
        k += 1;
    }
    (s, n as i64 * m.signum())
}

// ---------------------------------------------------------------------------
// Scalar expression parsing
// ---------------------------------------------------------------------------

/// Parses a scalar expression under the given field tag.
///
/// Grammar: signed fractions, `i`, `sqrt(<int>)`, products/sums with
/// `*`, `+`, `-`, `/` and parentheses.  `i` requires ℚ(i); `sqrt(m)`
/// must simplify into the tag's field (e.g. `sqrt(2)` is rejected
/// under ℚ(i), `sqrt(4)` = 2 is fine anywhere).
pub fn parse_scalar(text: &str, tag: FieldTag) -> Result<Scalar, ScalarError> {
    parse_scalar_with(text, tag, &[])
}

/// Like [`parse_scalar`], but identifiers may also resolve through the
/// given variable table (used for parameterized tables and the action
/// formulas).  `^` raises to a nonnegative integer power.
pub fn parse_scalar_with(
    text: &str,
    tag: FieldTag,
    vars: &[(String, Scalar)],
) -> Result<Scalar, ScalarError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        tag,
        vars,
    };
    let value = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(ScalarError::Syntax {
            pos: p.tokens[p.pos].1,
            msg: "trailing input".into(),
        });
    }
    Ok(value)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ScalarError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, i));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, i));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = BigInt::from_str(&text[start..i]).expect("digits");
                out.push((Tok::Int(n), start));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
            }
            _ => {
                return Err(ScalarError::Syntax {
                    pos: i,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    tag: FieldTag,
    vars: &'a [(String, Scalar)],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or_else(|| self.tokens.last().map(|(_, p)| p + 1).unwrap_or(0))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), ScalarError> {
        let pos = self.here();
        match self.bump() {
            Some(got) if got == t => Ok(()),
            got => Err(ScalarError::Syntax {
                pos,
                msg: format!("expected {t:?}, found {got:?}"),
            }),
        }
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?)?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    acc = acc.div(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(self.factor()?.neg())
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => {
                let e: u32 = (&n).try_into().map_err(|_| ScalarError::Syntax {
                    pos,
                    msg: "exponent out of range".into(),
                })?;
                Ok(base.pow(e))
            }
            got => Err(ScalarError::Syntax {
                pos,
                msg: format!("expected nonnegative integer exponent, found {got:?}"),
            }),
        }
    }

    fn primary(&mut self) -> Result<Scalar, ScalarError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(self.from_bigint(n)),
            Some(Tok::LParen) => {
                let v = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Some(Tok::Ident(name)) if name == "i" => match self.tag {
                FieldTag::QuadraticExtension(-1) => Scalar::sqrt_generator(-1),
                tag => Err(ScalarError::FieldMismatch(format!(
                    "`i` is not an element of {tag}"
                ))),
            },
            Some(Tok::Ident(name)) if name == "sqrt" => {
                self.expect(Tok::LParen)?;
                let neg = matches!(self.peek(), Some(Tok::Minus));
                if neg {
                    self.bump();
                }
                let pos2 = self.here();
                let m: i64 = match self.bump() {
                    Some(Tok::Int(n)) => {
                        let v: i64 = (&n).try_into().map_err(|_| ScalarError::Syntax {
                            pos: pos2,
                            msg: "sqrt radicand too large".into(),
                        })?;
                        if neg {
                            -v
                        } else {
                            v
                        }
                    }
                    got => {
                        return Err(ScalarError::Syntax {
                            pos: pos2,
                            msg: format!("expected integer radicand, found {got:?}"),
                        })
                    }
                };
                self.expect(Tok::RParen)?;
                self.sqrt_value(m)
            }
            Some(Tok::Ident(name)) => {
                if let Some((_, v)) = self.vars.iter().find(|(n, _)| *n == name) {
                    if v.tag() != self.tag {
                        return Err(ScalarError::FieldMismatch(format!(
                            "variable {name} has tag {}, expected {}",
                            v.tag(),
                            self.tag
                        )));
                    }
                    return Ok(v.clone());
                }
                Err(ScalarError::Syntax {
                    pos,
                    msg: format!("unknown symbol {name:?}"),
                })
            }
            got => Err(ScalarError::Syntax {
                pos,
                msg: format!("expected value, found {got:?}"),
            }),
        }
    }

    fn from_bigint(&self, n: BigInt) -> Scalar {
        match self.tag {
            FieldTag::Rationals => Scalar::Rational(BigRational::from(n)),
            FieldTag::QuadraticExtension(d) => Scalar::Quadratic {
                d,
                a: BigRational::from(n),
                b: BigRational::zero(),
            },
            FieldTag::PrimeField(p) => {
                let pb = BigInt::from(p);
                let r = ((n % &pb) + &pb) % &pb;
                Scalar::Mod {
                    p,
                    value: r.try_into().expect("residue fits u64"),
                }
            }
        }
    }

    /// Simplifies sqrt(m) into the current field, if possible.
    fn sqrt_value(&self, m: i64) -> Result<Scalar, ScalarError> {
        if m == 0 {
            return Ok(Scalar::zero(self.tag));
        }
        let (s, d0) = squarefree_decomposition(m);
        if d0 == 1 {
            return Ok(Scalar::from_int(self.tag, s as i64));
        }
        match self.tag {
            FieldTag::QuadraticExtension(d) if d == d0 => Ok(Scalar::Quadratic {
                d,
                a: BigRational::zero(),
                b: BigRational::from(BigInt::from(s)),
            }),
            tag => Err(ScalarError::NonRepresentable(format!(
                "sqrt({m}) does not lie in {tag}"
            ))),
        }
    }
}
