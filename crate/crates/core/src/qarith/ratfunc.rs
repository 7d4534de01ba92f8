use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::LaurentPoly;

/// An element of `Q(q)` stored as a reduced fraction of Laurent polynomials.
///
/// Canonical form: the denominator has lowest exponent 0 and leading
/// coefficient 1, and numerator and denominator are coprime. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_laurent(LaurentPoly::from_int(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn q_pow(e: i64) -> Self {
        Self::from_laurent(LaurentPoly::q_pow(e))
    }

    pub fn from_laurent(num: LaurentPoly) -> Self {
        Self {
            num,
            den: LaurentPoly::one(),
        }
    }

    /// `num / den`, reduced. Panics if `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::normalize(num, den)
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let shift = -den.low_exp();
        let (mut num, mut den) = (num.shift(shift), den.shift(shift));
        if !den.is_constant() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        // The division above may reintroduce a power of q in the denominator.
        let shift = -den.low_exp();
        if shift != 0 {
            num = num.shift(shift);
            den = den.shift(shift);
        }
        let lead = den.leading_coeff().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Self { num, den }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.is_laurent().then_some(&self.num)
    }

    /// If the value is `c * q^e`, returns `(c, e)`.
    pub fn as_monomial(&self) -> Option<(BigRational, i64)> {
        if self.is_laurent() && self.num.is_monomial() {
            let e = self.num.low_exp();
            Some((self.num.coeff(e), e))
        } else {
            None
        }
    }

    /// If the value is exactly `q^e` (coefficient 1), returns `e`.
    pub fn as_q_power(&self) -> Option<i64> {
        self.as_monomial().filter(|(c, _)| c.is_one()).map(|(_, e)| e)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::normalize(self.den.clone(), self.num.clone())
    }

    pub fn bar(&self) -> Self {
        Self::normalize(self.num.bar(), self.den.bar())
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        let c = BigRational::from_integer(BigInt::from(c));
        Self::normalize(self.num.scale(&c), self.den.clone())
    }

    /// Exact evaluation; `None` if `x` is a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Expression size used for pivot selection.
    pub fn size(&self) -> usize {
        self.num.span() + self.den.span()
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFunc::from_laurent(num);
            }
            return RatFunc::normalize(num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc::normalize(num, &self.den * &rhs.den);
        }
        let a = self.den.div_exact(&g).unwrap();
        let b = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RatFunc::normalize(num, &(&a * &b) * &g)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_laurent(&self.num * &rhs.num);
        }
        // Cross-cancel before multiplying so the result is already reduced.
        let (mut n1, mut d2) = (self.num.clone(), rhs.den.clone());
        if !d2.is_one() {
            let g = n1.gcd(&d2);
            if !g.is_one() {
                n1 = n1.div_exact(&g).unwrap();
                d2 = d2.div_exact(&g).unwrap();
            }
        }
        let (mut n2, mut d1) = (rhs.num.clone(), self.den.clone());
        if !d1.is_one() {
            let g = n2.gcd(&d1);
            if !g.is_one() {
                n2 = n2.div_exact(&g).unwrap();
                d1 = d1.div_exact(&g).unwrap();
            }
        }
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let shift = -den.low_exp();
        let (mut num, mut den) = (num.shift(shift), den.shift(shift));
        let lead = den.leading_coeff().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.inv()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from_laurent(p)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &LaurentPoly| {
            if p.num_terms() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(terms)
    }

    #[test]
    fn canonical_form() {
        // (2q^3 - 2q) / (4q^2 - 4q) = (q + 1) / 2 after cancelling 2q(q - 1)
        let r = RatFunc::new(lp(&[(3, 2), (1, -2)]), lp(&[(2, 4), (1, -4)]));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(r.numer(), &lp(&[(1, 1), (0, 1)]).scale(&half));
        assert!(r.is_laurent());
        // Denominator is monic with lowest exponent 0.
        let s = RatFunc::new(LaurentPoly::one(), lp(&[(3, 2), (2, 6)]));
        assert_eq!(s.denom(), &lp(&[(1, 1), (0, 3)]));
        assert_eq!(s.numer().low_exp(), -2);
    }

    #[test]
    fn field_identities() {
        let a = RatFunc::new(lp(&[(1, 1), (0, 2)]), lp(&[(2, 1), (0, -3)]));
        let b = RatFunc::new(lp(&[(-1, 5)]), lp(&[(1, 1), (0, 1)]));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert!((&a * &a.inv()).is_one());
        assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn q_power_detection() {
        assert_eq!(RatFunc::q_pow(-3).as_q_power(), Some(-3));
        assert_eq!(RatFunc::q_pow(2).scale_int(-1).as_q_power(), None);
        assert_eq!(RatFunc::from_laurent(lp(&[(1, 1), (0, 1)])).as_q_power(), None);
    }
}
