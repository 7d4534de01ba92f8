use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A Laurent polynomial in `q` with arbitrary-precision rational coefficients.
///
/// Stored densely: `coeffs[k]` is the coefficient of `q^(low + k)`. The first
/// and last stored coefficients are nonzero, and the zero polynomial has no
/// coefficients and `low == 0`, so derived equality is structural equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// `c * q^exp`.
    pub fn monomial(c: BigRational, exp: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: exp,
            coeffs: vec![c],
        }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(BigRational::one(), exp)
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        let Some(low) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::from_dense(low, coeffs)
    }

    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(
            terms
                .iter()
                .map(|&(e, c)| (e, BigRational::from_integer(BigInt::from(c)))),
        )
    }

    fn from_dense(mut low: i64, mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        if lead_zeros > 0 {
            coeffs.drain(..lead_zeros);
            low += lead_zeros as i64;
        }
        Self { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.coeffs.len() == 1)
    }

    /// True for `c * q^e` with `c != 0`.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low_exp(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient (`None` for zero).
    pub fn high_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.low + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Width of the exponent range, used as a cheap size measure.
    pub fn span(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        let k = exp - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            BigRational::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn trailing_coeff(&self) -> Option<&BigRational> {
        self.coeffs.first()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// The bar involution `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let high = self.high_exp().unwrap();
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self { low: -high, coeffs }
    }

    /// Substitutes `q -> q^d` for a positive integer `d`.
    pub fn dilate(&self, d: i64) -> Self {
        assert!(d > 0, "dilation factor must be positive");
        Self::from_terms(self.terms().map(|(e, c)| (e * d, c.clone())))
    }

    /// Exact evaluation at a nonzero rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc * pow_rational(x, self.low)
    }

    /// Exact division by `other`; `None` when the quotient is not a Laurent
    /// polynomial.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        assert!(!other.is_zero(), "division by the zero Laurent polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (quot, rem) = poly_div_rem(&self.coeffs, &other.coeffs);
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(self.low - other.low, quot))
    }

    /// Monic gcd, computed on the polynomial parts (powers of `q` are units).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic_unit_part();
        }
        if other.is_zero() {
            return self.monic_unit_part();
        }
        let g = poly_gcd(&self.coeffs, &other.coeffs);
        Self::from_dense(0, g)
    }

    /// `self` with `low` moved to 0 and leading coefficient 1.
    fn monic_unit_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead = self.coeffs.last().unwrap().clone();
        Self {
            low: 0,
            coeffs: self.coeffs.iter().map(|c| c / &lead).collect(),
        }
    }

    /// Coefficient vector with the lowest exponent, as used by serializers.
    pub fn dense_parts(&self) -> (i64, &[BigRational]) {
        (self.low, &self.coeffs)
    }
}

fn pow_rational(x: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// Dense polynomial division; both inputs are coefficient vectors starting at
/// degree 0.
fn poly_div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut b = b.to_vec();
    trim(&mut b);
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let lead_inv = b.last().unwrap().recip();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let factor = rem.last().unwrap() * &lead_inv;
        for (k, bc) in b.iter().enumerate() {
            if !bc.is_zero() {
                let t = &factor * bc;
                rem[shift + k] -= t;
            }
        }
        quot[shift] = factor;
        rem.pop();
        trim(&mut rem);
    }
    (quot, rem)
}

fn poly_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    // Strip factors of q: they are units in the Laurent ring.
    let strip = |v: &mut Vec<BigRational>| {
        let z = v.iter().take_while(|c| c.is_zero()).count();
        v.drain(..z);
    };
    strip(&mut x);
    strip(&mut y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![BigRational::one()];
        }
        let (_, r) = poly_div_rem(&x, &y);
        x = y;
        y = r;
        // Keep the remainder sequence monic to limit coefficient growth.
        if let Some(l) = y.last().cloned() {
            for c in y.iter_mut() {
                *c /= &l;
            }
        }
    }
    let l = x.last().unwrap().clone();
    x.iter().map(|c| c / &l).collect()
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_exp().unwrap().max(rhs.high_exp().unwrap());
        let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + k] += c;
        }
        LaurentPoly::from_dense(low, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentPoly::from_dense(self.low + rhs.low, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self - rhs;
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only to make maps over polynomials deterministic.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.low
            .cmp(&other.low)
            .then_with(|| self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_q_power(e: i64) -> String {
    match e {
        1 => "q".to_string(),
        e => format!("q^{e}"),
    }
}

/// Renders as `q^2 + 1 + q^-2`, highest exponent first.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<_> = self.terms().collect();
        for (n, (e, c)) in terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if *e == 0 {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", fmt_q_power(*e))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), fmt_q_power(*e))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(terms)
    }

    #[test]
    fn renders_descending() {
        assert_eq!(lp(&[(2, 1), (0, 1), (-2, 1)]).to_string(), "q^2 + 1 + q^-2");
        assert_eq!(lp(&[(1, -1), (-1, 3)]).to_string(), "-q + 3*q^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn normalizes_zero_coefficients() {
        let a = lp(&[(3, 1), (1, 2)]);
        let b = lp(&[(3, -1), (0, 5)]);
        let s = &a + &b;
        assert_eq!(s, lp(&[(1, 2), (0, 5)]));
        assert_eq!(s.high_exp(), Some(1));
        assert!((&a - &a).is_zero());
        assert_eq!(&a - &a, LaurentPoly::zero());
    }

    #[test]
    fn exact_division() {
        // (q - q^-1)(q + q^-1) = q^2 - q^-2
        let a = lp(&[(2, 1), (-2, -1)]);
        let b = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(a.div_exact(&b), Some(lp(&[(1, 1), (-1, 1)])));
        assert_eq!(b.div_exact(&a), None);
    }

    #[test]
    fn gcd_is_monic_and_ignores_q_powers() {
        let a = lp(&[(3, 2), (1, -2)]); // 2q^3 - 2q = 2q(q-1)(q+1)
        let b = lp(&[(5, 1), (4, -1)]); // q^4 (q - 1)
        assert_eq!(a.gcd(&b), lp(&[(1, 1), (0, -1)]));
    }

    #[test]
    fn bar_and_eval() {
        let a = lp(&[(2, 3), (-1, 1)]);
        assert_eq!(a.bar(), lp(&[(-2, 3), (1, 1)]));
        let two = BigRational::from_integer(2.into());
        assert_eq!(a.eval(&two), BigRational::new(25.into(), 2.into()));
    }
}
