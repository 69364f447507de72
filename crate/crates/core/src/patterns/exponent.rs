//! Affine forms `c0 + c1*a + c2*b + c3*g` in the free parameters.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exactalg::{fmt_rat, parse_rational, rat, Rational};

use super::PatternError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentForm {
    /// Coefficients of `a`, `b`, `g`; listed first so the derived order groups by parameter.
    pub coeffs: [Rational; 3],
    pub constant: Rational,
}

pub const PARAM_NAMES: [char; 3] = ['a', 'b', 'g'];

impl ExponentForm {
    pub fn constant(c: Rational) -> Self {
        ExponentForm {
            coeffs: [Rational::zero(), Rational::zero(), Rational::zero()],
            constant: c,
        }
    }

    pub fn reciprocal(k: u32) -> Self {
        Self::constant(rat(1, k as i64))
    }

    /// The bare parameter with index 0, 1 or 2.
    pub fn param(idx: usize) -> Self {
        let mut f = Self::constant(Rational::zero());
        f.coeffs[idx] = Rational::one();
        f
    }

    pub fn is_free(&self) -> bool {
        self.coeffs.iter().any(|c| !c.is_zero())
    }

    pub fn as_constant(&self) -> Option<&Rational> {
        (!self.is_free()).then_some(&self.constant)
    }

    pub fn scale(&self, e: &Rational) -> Self {
        ExponentForm {
            coeffs: [
                &self.coeffs[0] * e,
                &self.coeffs[1] * e,
                &self.coeffs[2] * e,
            ],
            constant: &self.constant * e,
        }
    }

    pub fn eval(&self, params: &[Rational; 3]) -> Rational {
        let mut v = self.constant.clone();
        for (c, p) in self.coeffs.iter().zip(params) {
            v += c * p;
        }
        v
    }

    /// Rename parameters: coefficient of parameter `i` moves to `perm[i]`.
    pub fn permute_params(&self, perm: [usize; 3]) -> Self {
        let mut coeffs = [Rational::zero(), Rational::zero(), Rational::zero()];
        for i in 0..3 {
            coeffs[perm[i]] = self.coeffs[i].clone();
        }
        ExponentForm {
            coeffs,
            constant: self.constant.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (c, name) in self.coeffs.iter().zip(PARAM_NAMES) {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let m = c.abs();
            if !m.is_one() {
                out.push_str(&fmt_rat(&m));
            }
            out.push(name);
        }
        if !self.constant.is_zero() || out.is_empty() {
            if self.constant.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&fmt_rat(&self.constant.abs()));
        }
        out
    }

    /// Accepts `1/3`, `2a`, `a+1/2`, `3/2b-1`, `-g`.
    pub fn parse(s: &str) -> Result<Self, PatternError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(PatternError::Parse("empty exponent form".into()));
        }
        let mut form = Self::constant(Rational::zero());
        let mut terms = Vec::new();
        let mut start = 0;
        for (k, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && k > 0 {
                terms.push(&s[start..k]);
                start = k;
            }
        }
        terms.push(&s[start..]);
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t.strip_prefix('+').unwrap_or(t)),
            };
            let bad = || PatternError::Parse(format!("bad exponent term {t:?} in {s:?}"));
            let (num, param) = match body.chars().last() {
                Some(ch) if PARAM_NAMES.contains(&ch) => (&body[..body.len() - 1], Some(ch)),
                _ => (body, None),
            };
            let mut c = if num.is_empty() {
                if param.is_none() {
                    return Err(bad());
                }
                Rational::one()
            } else {
                parse_rational(num.trim_end_matches('*')).map_err(|_| bad())?
            };
            if neg {
                c = -c;
            }
            match param {
                Some(p) => {
                    let idx = PARAM_NAMES.iter().position(|&n| n == p).unwrap();
                    form.coeffs[idx] += c;
                }
                None => form.constant += c,
            }
        }
        Ok(form)
    }
}

impl fmt::Display for ExponentForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
