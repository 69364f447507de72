//! Dense univariate polynomials over a single field.

use std::cmp::Ordering;
use std::fmt;

use super::field::{parse_element, Field, FieldElement, Rational};
use super::AlgError;

/// Degree with an explicit sentinel for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

/// Coefficients in ascending order; the leading one is nonzero, or the list is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero(field: Field) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(FieldElement::one_in(field), field)
    }

    /// The identity polynomial `x`.
    pub fn x(field: Field) -> Self {
        Poly::new(
            field,
            vec![FieldElement::zero_in(field), FieldElement::one_in(field)],
        )
        .unwrap()
    }

    pub fn constant(c: FieldElement, field: Field) -> Self {
        Poly::new(field, vec![c]).expect("constant outside field")
    }

    /// Build from ascending coefficients, lifting each into `field`.
    pub fn new(field: Field, coeffs: Vec<FieldElement>) -> Result<Self, AlgError> {
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.lift(field))
            .collect::<Result<Vec<_>, _>>()?;
        let mut p = Poly { field, coeffs };
        p.trim();
        Ok(p)
    }

    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        let cs = coeffs.iter().cloned().map(FieldElement::rational).collect();
        Poly::new(Field::Rational, cs).unwrap()
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        let cs = coeffs.iter().map(|&c| FieldElement::from_int(c)).collect();
        Poly::new(Field::Rational, cs).unwrap()
    }

    /// `x - r`.
    pub fn linear_root(r: FieldElement, field: Field) -> Self {
        Poly::new(field, vec![-r, FieldElement::one_in(field)]).unwrap()
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero_in(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree, treating zero as 0; only for callers that have excluded zero.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    /// Re-tag into a larger field.
    pub fn lift(&self, field: Field) -> Result<Self, AlgError> {
        Poly::new(field, self.coeffs.clone())
    }

    fn check(&self, other: &Poly) -> Result<Field, AlgError> {
        if self.field == other.field {
            Ok(self.field)
        } else {
            Err(AlgError::MixedField)
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let field = self.field.join(o.field).expect("mixed fields");
        let n = self.coeffs.len().max(o.coeffs.len());
        let cs = (0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect();
        Poly::new(field, cs).unwrap()
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let field = self.field.join(o.field).expect("mixed fields");
        if self.is_zero() || o.is_zero() {
            return Poly::zero(field);
        }
        let mut out = vec![FieldElement::zero_in(field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(field, out).unwrap()
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        let field = self.field.join(c.field()).expect("mixed fields");
        Poly::new(field, self.coeffs.iter().map(|a| a * c).collect()).unwrap()
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; fails on a zero divisor or mixed fields.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly), AlgError> {
        let field = self.check(d)?;
        let Some(lc) = d.leading() else {
            return Err(AlgError::DivisionByZero);
        };
        let lc_inv = lc.inv()?;
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        if self.coeffs.len() < d.coeffs.len() {
            return Ok((Poly::zero(field), self.clone()));
        }
        let mut q = vec![FieldElement::zero_in(field); self.coeffs.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    r[k + j] = &r[k + j] - &(&c * b);
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(field, q)?, Poly::new(field, r)?))
    }

    /// Exact quotient; fails if the remainder is nonzero.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly, AlgError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgError::NotDivisible)
        }
    }

    /// Scale so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().unwrap()),
        }
    }

    pub fn derivative(&self) -> Poly {
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &FieldElement::from_int(k as i64))
            .collect();
        Poly::new(self.field, cs).unwrap()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero_in(self.field.join(x.field()).expect("mixed fields"));
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let field = self.field.join(g.field).expect("mixed fields");
        let mut acc = Poly::zero(field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(c.clone(), field));
        }
        acc
    }

    /// Text form `[c0, c1, ...]`.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_text()).collect();
        format!("[{}]", parts.join(", "))
    }

    pub fn parse(s: &str, field: Field) -> Result<Poly, AlgError> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| AlgError::Parse(format!("polynomial must be bracketed: {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Poly::zero(field));
        }
        let cs = inner
            .split(',')
            .map(|t| parse_element(t, field))
            .collect::<Result<Vec<_>, _>>()?;
        Poly::new(field, cs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Monic gcd; `gcd(p, 0) = monic(p)`.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Result<Poly, AlgError> {
    p.check(q)?;
    let mut a = p.clone();
    let mut b = q.clone();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// Squarefree decomposition `p = c * prod f_i^i` with monic, pairwise coprime, squarefree `f_i`.
#[derive(Clone, Debug)]
pub struct SquarefreeDecomposition {
    pub leading: FieldElement,
    /// `(i, f_i)` for every nonconstant `f_i`, increasing in `i`.
    pub factors: Vec<(usize, Poly)>,
}

impl SquarefreeDecomposition {
    pub fn reassemble(&self, field: Field) -> Poly {
        let mut acc = Poly::constant(self.leading.clone(), field);
        for (i, f) in &self.factors {
            acc = acc.mul(&f.pow(*i as u32));
        }
        acc
    }
}

/// Yun's algorithm. Characteristic zero, so no p-th power special case.
pub fn squarefree_decomposition(p: &Poly) -> Result<SquarefreeDecomposition, AlgError> {
    let lc = p.leading().cloned().ok_or(AlgError::ZeroPolynomial)?;
    let f = p.monic();
    let mut factors = Vec::new();
    if f.is_constant() {
        return Ok(SquarefreeDecomposition {
            leading: lc,
            factors,
        });
    }
    let fp = f.derivative();
    let a0 = poly_gcd(&f, &fp)?;
    let mut b = f.div_exact(&a0)?;
    let c = fp.div_exact(&a0)?;
    let mut d = c.sub(&b.derivative());
    let mut i = 1usize;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d)?;
        if !a.is_constant() {
            factors.push((i, a.clone()));
        }
        let b_next = b.div_exact(&a)?;
        let c_next = d.div_exact(&a)?;
        d = c_next.sub(&b_next.derivative());
        b = b_next;
        i += 1;
    }
    Ok(SquarefreeDecomposition {
        leading: lc,
        factors,
    })
}

/// Multiset of root multiplicities over the algebraic closure, as `(multiplicity, count)`
/// pairs in increasing multiplicity. No roots are computed.
pub fn multiplicity_profile(p: &Poly) -> Result<Vec<(usize, usize)>, AlgError> {
    let sq = squarefree_decomposition(p)?;
    Ok(sq.factors.iter().map(|(i, f)| (*i, f.deg())).collect())
}

/// Root multiplicities as a descending partition of `deg p`.
pub fn root_multiplicities(p: &Poly) -> Result<Vec<usize>, AlgError> {
    let mut out = Vec::new();
    for (m, c) in multiplicity_profile(p)? {
        out.extend(std::iter::repeat(m).take(c));
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::rat;

    fn q(cs: &[i64]) -> Poly {
        Poly::from_ints(cs)
    }

    #[test]
    fn gcd_basic() {
        assert_eq!(
            poly_gcd(&q(&[-1, 0, 1]), &q(&[-1, 1])).unwrap(),
            q(&[-1, 1])
        );
        assert_eq!(
            poly_gcd(&q(&[1, 0, 1]), &q(&[1, 0, 1])).unwrap(),
            q(&[1, 0, 1])
        );
        assert_eq!(
            poly_gcd(&q(&[2, 0, 4]), &Poly::zero(Field::Rational)).unwrap(),
            q(&[2, 0, 4]).monic()
        );
    }

    #[test]
    fn gcd_gaussian() {
        let f = Field::GAUSSIAN;
        let p = q(&[1, 0, 1]).lift(f).unwrap();
        let l = Poly::linear_root(FieldElement::i(), f);
        assert_eq!(poly_gcd(&p, &l).unwrap(), l);
        // direct division check
        let (_, r) = p.div_rem(&l).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_rejects_mixed_fields() {
        let p = q(&[1, 1]);
        let g = q(&[1, 1]).lift(Field::GAUSSIAN).unwrap();
        assert_eq!(poly_gcd(&p, &g), Err(AlgError::MixedField));
    }

    #[test]
    fn profile_examples() {
        // x^2 (x - 1)
        assert_eq!(root_multiplicities(&q(&[0, 0, -1, 1])).unwrap(), vec![2, 1]);
        // (x^2 + 1)^3
        assert_eq!(
            root_multiplicities(&q(&[1, 0, 1]).pow(3)).unwrap(),
            vec![3, 3]
        );
        // 8x^3 - 9
        assert_eq!(
            root_multiplicities(&Poly::parse("[-9/1, 0, 0, 8]", Field::Rational).unwrap()).unwrap(),
            vec![1, 1, 1]
        );
        assert_eq!(
            multiplicity_profile(&Poly::zero(Field::Rational)),
            Err(AlgError::ZeroPolynomial)
        );
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(Poly::zero(Field::Rational).degree(), Degree::NegInfinity);
        assert!(Poly::zero(Field::Rational).degree() < q(&[5]).degree());
    }

    #[test]
    fn parse_and_print() {
        let p = Poly::parse("[1/2, -3, 0, 8]", Field::Rational).unwrap();
        assert_eq!(p.to_text(), "[1/2, -3, 0, 8]");
        assert_eq!(p.coeff(0), FieldElement::rational(rat(1, 2)));
    }
}
