//! Reduced rational functions `num / den` with a monic denominator.

use std::fmt;

use super::field::{Field, FieldElement};
use super::poly::{poly_gcd, Poly};
use super::AlgError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

/// Value of a rational function at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalResult {
    Value(FieldElement),
    Pole,
}

impl RatFun {
    /// Reduce `num / den` to lowest terms with monic denominator.
    pub fn new(num: Poly, den: Poly) -> Result<Self, AlgError> {
        if num.field() != den.field() {
            return Err(AlgError::MixedField);
        }
        if den.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        let g = poly_gcd(&num, &den)?;
        let mut num = num.div_exact(&g)?;
        let mut den = den.div_exact(&g)?;
        let lc_inv = den.leading().unwrap().inv()?;
        num = num.scale(&lc_inv);
        den = den.scale(&lc_inv);
        Ok(RatFun { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        let field = p.field();
        RatFun::new(p, Poly::one(field)).unwrap()
    }

    pub fn x(field: Field) -> Self {
        RatFun::from_poly(Poly::x(field))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> Field {
        self.num.field()
    }

    /// `max(deg num, deg den)`; zero for constants including the zero function.
    pub fn degree(&self) -> usize {
        let n = self.num.degree().finite().unwrap_or(0);
        n.max(self.den.deg())
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn lift(&self, field: Field) -> Result<Self, AlgError> {
        RatFun::new(self.num.lift(field)?, self.den.lift(field)?)
    }

    pub fn eval(&self, x: &FieldElement) -> EvalResult {
        let d = self.den.eval(x);
        if d.is_zero() {
            return EvalResult::Pole;
        }
        EvalResult::Value(&self.num.eval(x) / &d)
    }

    pub fn add(&self, o: &RatFun) -> Result<RatFun, AlgError> {
        RatFun::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &RatFun) -> Result<RatFun, AlgError> {
        RatFun::new(
            self.num.mul(&o.den).sub(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn mul(&self, o: &RatFun) -> Result<RatFun, AlgError> {
        RatFun::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    /// `self(g(x))`; `deg` multiplies. A constant inner function is rejected.
    pub fn compose(&self, g: &RatFun) -> Result<RatFun, AlgError> {
        if g.is_constant() {
            return Err(AlgError::ConstantInner);
        }
        let field = self.field().join(g.field()).ok_or(AlgError::MixedField)?;
        let n = self.degree();
        // Homogenise: sum c_k gn^k gd^(n-k).
        let homog = |p: &Poly| -> Poly {
            let mut acc = Poly::zero(field);
            for (k, c) in p.coeffs().iter().enumerate() {
                let term = g.num.pow(k as u32).mul(&g.den.pow((n - k) as u32)).scale(c);
                acc = acc.add(&term);
            }
            acc
        };
        RatFun::new(homog(&self.num), homog(&self.den))
    }

    pub fn derivative(&self) -> Result<RatFun, AlgError> {
        let top = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        RatFun::new(top, self.den.mul(&self.den))
    }

    pub fn to_text(&self) -> String {
        format!("({}) / ({})", self.num.to_text(), self.den.to_text())
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(cs: &[i64]) -> Poly {
        Poly::from_ints(cs)
    }

    #[test]
    fn compose_square_after_shift() {
        let sq = RatFun::from_poly(q(&[0, 0, 1]));
        let shift = RatFun::from_poly(q(&[1, 1]));
        assert_eq!(
            sq.compose(&shift).unwrap(),
            RatFun::from_poly(q(&[1, 2, 1]))
        );
    }

    #[test]
    fn compose_degree_multiplies() {
        let f = RatFun::from_poly(q(&[0, 4, -4]));
        let g = RatFun::from_poly(q(&[0, 0, 1]));
        assert_eq!(f.compose(&g).unwrap().degree(), 4);
    }

    #[test]
    fn compose_rejects_constant() {
        let f = RatFun::from_poly(q(&[0, 1]));
        assert_eq!(
            f.compose(&RatFun::from_poly(q(&[3]))),
            Err(AlgError::ConstantInner)
        );
    }

    #[test]
    fn derivative_example() {
        let f = RatFun::new(q(&[0, 0, 1]), q(&[-1, 1])).unwrap();
        let want = RatFun::new(q(&[0, -2, 1]), q(&[-1, 1]).pow(2)).unwrap();
        assert_eq!(f.derivative().unwrap(), want);
    }

    #[test]
    fn pole_reported() {
        let f = RatFun::new(q(&[1]), q(&[-1, 1])).unwrap();
        assert_eq!(f.eval(&FieldElement::from_int(1)), EvalResult::Pole);
        assert_eq!(
            f.eval(&FieldElement::from_int(2)),
            EvalResult::Value(FieldElement::from_int(1))
        );
    }

    #[test]
    fn reduced_and_monic() {
        let f = RatFun::new(q(&[-2, 0, 2]), q(&[-3, 3, 0]).mul(&q(&[2, 1]))).unwrap();
        assert_eq!(f.den(), &q(&[2, 1]));
        assert_eq!(f.num().deg(), 1);
    }
}
