//! q-integers, q-factorials and Gaussian binomials.

use super::{LaurentPoly, QarithError};

/// `[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`, expanded.
pub fn qnum(n: u32, d: u32) -> LaurentPoly {
    let n = n as i64;
    let d = d as i64;
    LaurentPoly::from_int_terms(&(0..n).map(|k| (d * (n - 1 - 2 * k), 1)).collect::<Vec<_>>())
}

/// `[n]_{q^d}! = [1] [2] ... [n]`.
pub fn qfact(n: u32, d: u32) -> LaurentPoly {
    (1..=n).fold(LaurentPoly::one(), |acc, k| &acc * &qnum(k, d))
}

/// `[n choose m]_{q^d} = [n]! / ([m]! [n-m]!)`.
///
/// The quotient is always a Laurent polynomial; an inexact division is
/// reported as an error since it can only come from an arithmetic bug.
pub fn qbinom(n: u32, m: u32, d: u32) -> Result<LaurentPoly, QarithError> {
    if m > n {
        return Err(QarithError::Domain(format!("binomial [{n} choose {m}] needs m <= n")));
    }
    let den = &qfact(m, d) * &qfact(n - m, d);
    qfact(n, d)
        .div_exact(&den)
        .ok_or_else(|| QarithError::InexactDivision(format!("[{n}]! by [{m}]![{}]!", n - m)))
}
