//! Rationals and elements of quadratic number fields.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgError;

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for `p/q` as a [`Rational`].
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// The ambient field of an element: `Q` or `Q(sqrt d)` for squarefree `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Quadratic(i64),
}

impl Field {
    /// `Q(i)`.
    pub const GAUSSIAN: Field = Field::Quadratic(-1);
    /// `Q(w)` with `w = (-1 + sqrt(-3))/2`.
    pub const EISENSTEIN: Field = Field::Quadratic(-3);

    pub fn quadratic(d: i64) -> Result<Field, AlgError> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(AlgError::BadField(d));
        }
        Ok(Field::Quadratic(d))
    }

    /// Smallest field containing both, if any.
    pub fn join(self, other: Field) -> Option<Field> {
        match (self, other) {
            (Field::Rational, f) | (f, Field::Rational) => Some(f),
            (Field::Quadratic(a), Field::Quadratic(b)) if a == b => Some(self),
            _ => None,
        }
    }

    /// Catalog tag: `Q`, `Q(i)`, `Q(w)` or `Q(sqrt(d))`.
    pub fn tag(self) -> String {
        match self {
            Field::Rational => "Q".into(),
            Field::Quadratic(-1) => "Q(i)".into(),
            Field::Quadratic(-3) => "Q(w)".into(),
            Field::Quadratic(d) => format!("Q(sqrt({d}))"),
        }
    }

    pub fn from_tag(s: &str) -> Result<Field, AlgError> {
        match s.trim() {
            "Q" => Ok(Field::Rational),
            "Q(i)" => Ok(Field::GAUSSIAN),
            "Q(w)" => Ok(Field::EISENSTEIN),
            t => {
                let inner = t
                    .strip_prefix("Q(sqrt(")
                    .and_then(|r| r.strip_suffix("))"))
                    .ok_or_else(|| AlgError::Parse(format!("unknown field tag {t:?}")))?;
                let d: i64 = inner
                    .parse()
                    .map_err(|_| AlgError::Parse(format!("unknown field tag {t:?}")))?;
                Field::quadratic(d)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

fn is_squarefree(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// `a + b*sqrt(d)`; `b` is zero whenever the field is `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    a: Rational,
    b: Rational,
}

impl FieldElement {
    pub fn rational(a: Rational) -> Self {
        FieldElement {
            field: Field::Rational,
            a,
            b: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(rat_int(n))
    }

    pub fn zero_in(field: Field) -> Self {
        FieldElement {
            field,
            a: Rational::zero(),
            b: Rational::zero(),
        }
    }

    pub fn one_in(field: Field) -> Self {
        FieldElement {
            field,
            a: Rational::one(),
            b: Rational::zero(),
        }
    }

    /// `a + b*sqrt(d)` in `field`. Fails if `b != 0` over `Q`.
    pub fn new(field: Field, a: Rational, b: Rational) -> Result<Self, AlgError> {
        if field == Field::Rational && !b.is_zero() {
            return Err(AlgError::MixedField);
        }
        Ok(FieldElement { field, a, b })
    }

    /// The generator `sqrt(d)`.
    pub fn sqrt_d(field: Field) -> Result<Self, AlgError> {
        match field {
            Field::Rational => Err(AlgError::MixedField),
            Field::Quadratic(_) => Ok(FieldElement {
                field,
                a: Rational::zero(),
                b: Rational::one(),
            }),
        }
    }

    /// `w = (-1 + sqrt(-3))/2`, a primitive cube root of unity.
    pub fn omega() -> Self {
        FieldElement {
            field: Field::EISENSTEIN,
            a: rat(-1, 2),
            b: rat(1, 2),
        }
    }

    /// `i = sqrt(-1)`.
    pub fn i() -> Self {
        FieldElement {
            field: Field::GAUSSIAN,
            a: Rational::zero(),
            b: Rational::one(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Rational part.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of `sqrt(d)`.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    /// Re-tag into a larger field.
    pub fn lift(&self, field: Field) -> Result<Self, AlgError> {
        match self.field.join(field) {
            Some(f) if f == field => Ok(FieldElement {
                field,
                a: self.a.clone(),
                b: self.b.clone(),
            }),
            _ => Err(AlgError::MixedField),
        }
    }

    fn d(&self) -> i64 {
        match self.field {
            Field::Rational => 0,
            Field::Quadratic(d) => d,
        }
    }

    fn joined(&self, other: &Self) -> Field {
        self.field
            .join(other.field)
            .unwrap_or_else(|| panic!("arithmetic across {} and {}", self.field, other.field))
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conj(&self) -> Self {
        FieldElement {
            field: self.field,
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(BigInt::from(self.d())) * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self, AlgError> {
        if self.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        let n = self.norm();
        Ok(FieldElement {
            field: self.field,
            a: &self.a / &n,
            b: -(&self.b / &n),
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = FieldElement::one_in(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Text form: `p/q`, `a+b*i`, `a+b*w` (omega basis) or `a+b*sqrt(d)`.
    pub fn to_text(&self) -> String {
        if self.b.is_zero() {
            return fmt_rat(&self.a);
        }
        // Over d = -3 print in the basis 1, w where sqrt(-3) = 2w + 1.
        let (c0, c1, sym) = match self.field {
            Field::Quadratic(-3) => (&self.a + &self.b, &self.b * rat_int(2), "w".to_string()),
            Field::Quadratic(-1) => (self.a.clone(), self.b.clone(), "i".to_string()),
            Field::Quadratic(d) => (self.a.clone(), self.b.clone(), format!("sqrt({d})")),
            Field::Rational => unreachable!(),
        };
        let tail = if c1.is_one() {
            sym.clone()
        } else if c1 == -Rational::one() {
            format!("-{sym}")
        } else {
            format!("{}*{sym}", fmt_rat(&c1))
        };
        if c0.is_zero() {
            tail
        } else if tail.starts_with('-') {
            format!("{}{}", fmt_rat(&c0), tail)
        } else {
            format!("{}+{}", fmt_rat(&c0), tail)
        }
    }
}

pub fn fmt_rat(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational, AlgError> {
    let s = s.trim();
    let bad = || AlgError::Parse(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Parse an element of `field`: a signed sum of terms `r`, `r*w`, `w`, `r*i`, `i`.
pub fn parse_element(s: &str, field: Field) -> Result<FieldElement, AlgError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(AlgError::Parse("empty element".into()));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for (k, &c) in bytes.iter().enumerate() {
        if k > start && (c == b'+' || c == b'-') && bytes[k - 1] != b'*' && bytes[k - 1] != b'(' {
            terms.push(&compact[start..k]);
            start = k;
        }
    }
    terms.push(&compact[start..]);

    let mut acc = FieldElement::zero_in(field);
    for t in terms {
        let t = t.strip_prefix('+').unwrap_or(t);
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, t),
        };
        let (coef, sym) = match body.rsplit_once('*') {
            Some((c, s)) => (parse_rational(c)?, Some(s)),
            None => match body {
                "w" | "i" => (Rational::one(), Some(body)),
                _ if body.starts_with("sqrt(") => (Rational::one(), Some(body)),
                _ => (parse_rational(body)?, None),
            },
        };
        let coef = if neg { -coef } else { coef };
        let unit = match sym {
            None => FieldElement::one_in(field),
            Some("w") if field == Field::EISENSTEIN => FieldElement::omega(),
            Some("i") if field == Field::GAUSSIAN => FieldElement::i(),
            Some(other) => match (
                field,
                other
                    .strip_prefix("sqrt(")
                    .and_then(|r| r.strip_suffix(')')),
            ) {
                (Field::Quadratic(d), Some(inner)) if inner.parse::<i64>().ok() == Some(d) => {
                    FieldElement::sqrt_d(field)?
                }
                _ => return Err(AlgError::Parse(format!("symbol {other:?} not in {field}"))),
            },
        };
        acc = &acc + &(&unit * &FieldElement::rational(coef));
    }
    acc.lift(field)
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        FieldElement {
            field: self.joined(o),
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        FieldElement {
            field: self.joined(o),
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        let field = self.joined(o);
        let d = Rational::from_integer(BigInt::from(match field {
            Field::Rational => 0,
            Field::Quadratic(d) => d,
        }));
        FieldElement {
            field,
            a: &self.a * &o.a + d * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    /// # Panics
    /// On division by zero.
    fn div(self, o: &FieldElement) -> FieldElement {
        self * &o.inv().expect("division by zero field element")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field,
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                (&self).$m(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

/// Exact `n / d` for integers, or `None` when `d` does not divide `n`.
pub fn exact_div(n: &BigInt, d: &BigInt) -> Option<BigInt> {
    let (q, r) = n.div_rem(d);
    r.is_zero().then_some(q)
}

/// Small helper for tests and tables: rational to `f64`.
pub fn rat_to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Floor of a rational.
pub fn floor_rat(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn abs_rat(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_is_cube_root_of_unity() {
        let w = FieldElement::omega();
        assert!(w.pow(3).is_one());
        let s = &(&w * &w) + &w;
        assert_eq!(
            s,
            FieldElement::from_int(-1).lift(Field::EISENSTEIN).unwrap()
        );
    }

    #[test]
    fn i_squared() {
        let i = FieldElement::i();
        assert_eq!(
            &i * &i,
            FieldElement::from_int(-1).lift(Field::GAUSSIAN).unwrap()
        );
    }

    #[test]
    fn text_roundtrip() {
        for (s, f) in [
            ("3/2", Field::Rational),
            ("-7", Field::Rational),
            ("1+2*w", Field::EISENSTEIN),
            ("-w", Field::EISENSTEIN),
            ("-1-2*i", Field::GAUSSIAN),
            ("1/3*i", Field::GAUSSIAN),
        ] {
            let e = parse_element(s, f).unwrap();
            let back = parse_element(&e.to_text(), f).unwrap();
            assert_eq!(e, back, "{s}");
        }
        assert_eq!(
            parse_element("1+2*w", Field::EISENSTEIN).unwrap().to_text(),
            "1+2*w"
        );
    }

    #[test]
    fn inverse() {
        let x = parse_element("2-3*w", Field::EISENSTEIN).unwrap();
        assert!((&x * &x.inv().unwrap()).is_one());
        assert!(FieldElement::zero_in(Field::GAUSSIAN).inv().is_err());
    }

    #[test]
    fn symbol_must_match_field() {
        assert!(parse_element("1+i", Field::EISENSTEIN).is_err());
        assert!(parse_element("w", Field::Rational).is_err());
    }

    #[test]
    fn squarefree_check() {
        assert!(Field::quadratic(-4).is_err());
        assert!(Field::quadratic(5).is_ok());
    }
}
