//! Negative (Hirzebruch-Jung) continued fractions in bracket notation
//! `[c_k, ..., c_1] = c_k - 1/(c_{k-1} - 1/(... - 1/c_1))`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Reduced rational with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(ExactRational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::MalformedExpansion);
        }
        Ok(ExactRational(self.0.recip()))
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for ExactRational {
    fn from(r: BigRational) -> Self {
        ExactRational(r)
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        ExactRational::from_integer(n)
    }
}

impl Add for ExactRational {
    type Output = ExactRational;
    fn add(self, o: Self) -> Self {
        ExactRational(self.0 + o.0)
    }
}

impl Sub for ExactRational {
    type Output = ExactRational;
    fn sub(self, o: Self) -> Self {
        ExactRational(self.0 - o.0)
    }
}

impl Mul for ExactRational {
    type Output = ExactRational;
    fn mul(self, o: Self) -> Self {
        ExactRational(self.0 * o.0)
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> Self {
        ExactRational(-self.0)
    }
}

/// Always `num/den`, including for integers.
impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for ExactRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse rational {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                ExactRational::new(n, d)
            }
            None => Ok(ExactRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

/// Bracket coefficients, most significant first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HJExpansion {
    coefficients: Vec<i64>,
}

impl HJExpansion {
    /// A proper expansion: nonempty, every entry at least 2.
    pub fn new(coefficients: Vec<i64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidArgument("empty expansion".into()));
        }
        if let Some(c) = coefficients.iter().find(|&&c| c < 2) {
            return Err(Error::InvalidArgument(format!("expansion entry {c} is below 2")));
        }
        Ok(HJExpansion { coefficients })
    }

    /// Any nonempty bracket, for evaluating intermediate chains.
    pub fn diagnostic(coefficients: Vec<i64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidArgument("empty expansion".into()));
        }
        Ok(HJExpansion { coefficients })
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn is_proper(&self) -> bool {
        self.coefficients.iter().all(|&c| c >= 2)
    }
}

impl fmt::Display for HJExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for HJExpansion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let coeffs = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad bracket entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        HJExpansion::diagnostic(coeffs)
    }
}

/// Expansion of p/q by repeated ceilings.
pub fn hj_expand(p: i64, q: i64) -> Result<HJExpansion> {
    if q < 1 || p <= q {
        return Err(Error::InvalidArgument(format!("need p > q >= 1, got {p}/{q}")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::InvalidArgument(format!("{p} and {q} are not coprime")));
    }
    let (mut p, mut q) = (p as i128, q as i128);
    let mut out = Vec::new();
    while q != 0 {
        let c = (p + q - 1) / q;
        out.push(c as i64);
        (p, q) = (q, c * q - p);
    }
    Ok(HJExpansion { coefficients: out })
}

/// Exact value of the bracket.
pub fn cf_eval(e: &HJExpansion) -> Result<ExactRational> {
    eval_slice(e.coefficients())
}

pub(crate) fn eval_slice(cs: &[i64]) -> Result<ExactRational> {
    let (last, rest) = cs.split_last().ok_or(Error::MalformedExpansion)?;
    let mut x = BigRational::from_integer(BigInt::from(*last));
    for &c in rest.iter().rev() {
        if x.is_zero() {
            return Err(Error::MalformedExpansion);
        }
        x = BigRational::from_integer(BigInt::from(c)) - x.recip();
    }
    Ok(ExactRational(x))
}

/// Continued-fraction value as a (numerator, denominator) pair of the
/// chain determinants; useful when the denominator may vanish.
pub fn bracket_fraction(cs: &[i64]) -> (BigInt, BigInt) {
    let (mut num, mut den) = (BigInt::one(), BigInt::zero());
    for &c in cs.iter().rev() {
        let next = BigInt::from(c) * &num - &den;
        den = num;
        num = next;
    }
    (num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn hj(p: i64, q: i64) -> Vec<i64> {
        hj_expand(p, q).unwrap().coefficients().to_vec()
    }

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d).unwrap()
    }

    #[test]
    fn expansions() {
        assert_eq!(hj(3, 2), vec![2, 2]);
        assert_eq!(hj(9, 4), vec![3, 2, 2, 2]);
        assert_eq!(hj(9, 5), vec![2, 5]);
        assert_eq!(hj(5, 1), vec![5]);
        assert_eq!(hj(5, 2), vec![3, 2]);
    }

    #[test]
    fn evaluations() {
        let e = HJExpansion::new(vec![3, 2, 2, 2]).unwrap();
        assert_eq!(cf_eval(&e).unwrap(), r(9, 4));
        assert_eq!(cf_eval(&HJExpansion::new(vec![7]).unwrap()).unwrap(), r(7, 1));
        assert_eq!(cf_eval(&HJExpansion::new(vec![2, 5]).unwrap()).unwrap(), r(9, 5));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(hj_expand(4, 2).is_err());
        assert!(hj_expand(2, 3).is_err());
        assert!(hj_expand(3, 3).is_err());
        assert!(hj_expand(3, 0).is_err());
        assert!(HJExpansion::new(vec![2, 1]).is_err());
    }

    #[test]
    fn diagnostic_brackets() {
        // [1,1] = 1 - 1/1 = 0, [2,1,1] divides by zero
        let z = HJExpansion::diagnostic(vec![1, 1]).unwrap();
        assert_eq!(cf_eval(&z).unwrap(), r(0, 1));
        let bad = HJExpansion::diagnostic(vec![2, 1, 1]).unwrap();
        assert_eq!(cf_eval(&bad), Err(Error::MalformedExpansion));
        assert_eq!(bracket_fraction(&[2, 1, 1]), (BigInt::from(-1), BigInt::zero()));
        assert_eq!(bracket_fraction(&[3, 2, 2, 2]), (BigInt::from(9), BigInt::from(4)));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(format!("{}", r(6, 3)), "2/1");
        assert_eq!("9/4".parse::<ExactRational>().unwrap(), r(9, 4));
        assert_eq!("-3".parse::<ExactRational>().unwrap(), r(-3, 1));
        let e: HJExpansion = "[3, 2,2]".parse().unwrap();
        assert_eq!(format!("{e}"), "[3,2,2]");
    }

    // (a,b) = (n+1, n): (a+b)/b = (2n+1)/n carries n-1 trailing 2s, one
    // fewer than a literal count of n would give.
    #[test]
    fn three_then_twos_trailing_count() {
        assert_eq!(hj(3, 1), vec![3]);
        assert_eq!(hj(5, 2), vec![3, 2]);
        for n in 1..=200i64 {
            let mut want = vec![3];
            want.extend(core::iter::repeat_n(2, (n - 1) as usize));
            assert_eq!(hj(2 * n + 1, n), want, "n = {n}");
            let mut literal = vec![3];
            literal.extend(core::iter::repeat_n(2, n as usize));
            let v = cf_eval(&HJExpansion::new(literal).unwrap()).unwrap();
            assert_ne!(v, r(2 * n + 1, n));
        }
    }
}
