use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number viewed as an element of `Q_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicRational {
    p: u64,
    value: BigRational,
}

fn check_prime(p: u64) -> Result<()> {
    if p < 2 || !(2..).take_while(|d| d * d <= p).all(|d| p % d != 0) {
        return Err(Error::Input(format!("{p} is not a prime")));
    }
    Ok(())
}

fn valuation_int(n: &BigInt, p: u64) -> i64 {
    let pb = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    e.x.mod_floor(m)
}

impl PAdicRational {
    pub fn new(p: u64, num: i64, den: i64) -> Result<Self> {
        check_prime(p)?;
        if den == 0 {
            return Err(Error::Input("zero denominator".into()));
        }
        Ok(Self { p, value: BigRational::new(num.into(), den.into()) })
    }

    pub fn from_ratio(p: u64, value: BigRational) -> Result<Self> {
        check_prime(p)?;
        Ok(Self { p, value })
    }

    pub fn zero(p: u64) -> Self {
        Self { p, value: BigRational::zero() }
    }

    pub fn one(p: u64) -> Self {
        Self { p, value: BigRational::one() }
    }

    /// `p^k` for any integer `k`.
    pub fn p_power(p: u64, k: i64) -> Self {
        let base = BigInt::from(p).pow(k.unsigned_abs() as u32);
        let value = if k >= 0 { BigRational::from_integer(base) } else { BigRational::new(1.into(), base) };
        Self { p, value }
    }

    pub fn parse(p: u64, text: &str) -> Result<Self> {
        check_prime(p)?;
        let text = text.trim();
        let value = match text.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|e| Error::Input(format!("{text}: {e}")))?;
                let d = BigInt::from_str(d.trim()).map_err(|e| Error::Input(format!("{text}: {e}")))?;
                if d.is_zero() {
                    return Err(Error::Input("zero denominator".into()));
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(
                BigInt::from_str(text).map_err(|e| Error::Input(format!("{text}: {e}")))?,
            ),
        };
        Ok(Self { p, value })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ratio(&self) -> &BigRational {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// `v_p(x)`; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        if self.value.is_zero() {
            return None;
        }
        Some(valuation_int(self.value.numer(), self.p) - valuation_int(self.value.denom(), self.p))
    }

    /// `|x|_p` as a float.
    pub fn abs_p(&self) -> f64 {
        match self.valuation() {
            None => 0.0,
            Some(v) => (self.p as f64).powi(-v as i32),
        }
    }

    /// The unit part `x p^{-v(x)}`.
    pub fn unit_part(&self) -> Self {
        match self.valuation() {
            None => self.clone(),
            Some(v) => self.mul(&Self::p_power(self.p, -v)),
        }
    }

    /// Fractional part `lambda(x) = r / p^k` with `0 <= r < p^k`, returned as `(r, k)`.
    pub fn frac_lambda(&self) -> (BigInt, u32) {
        let k = match self.valuation() {
            None => return (BigInt::zero(), 0),
            Some(v) if v >= 0 => return (BigInt::zero(), 0),
            Some(v) => (-v) as u32,
        };
        let pk = BigInt::from(self.p).pow(k);
        // value = N / (p^k D') after clearing p-powers from the numerator
        let scaled = self.mul(&Self::p_power(self.p, k as i64));
        let n = scaled.value.numer();
        let d = scaled.value.denom();
        let r = (n * mod_inverse(d, &pk)).mod_floor(&pk);
        (r, k)
    }

    pub fn lambda_f64(&self) -> f64 {
        let (r, k) = self.frac_lambda();
        if k == 0 {
            return 0.0;
        }
        let pk = BigInt::from(self.p).pow(k);
        let ratio = BigRational::new(r, pk);
        ratio.to_f64().unwrap_or(0.0)
    }

    /// Residue of a `p`-integral number modulo `p^k`.
    pub fn residue(&self, k: u32) -> Result<BigInt> {
        if let Some(v) = self.valuation() {
            if v < 0 {
                return Err(Error::Domain(format!("{self} is not p-integral")));
            }
        }
        let pk = BigInt::from(self.p).pow(k);
        Ok((self.value.numer() * mod_inverse(self.value.denom(), &pk)).mod_floor(&pk))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { p: self.p, value: &self.value + &o.value }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { p: self.p, value: &self.value - &o.value }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self { p: self.p, value: &self.value * &o.value }
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(Self { p: self.p, value: &self.value / &o.value })
    }

    pub fn neg(&self) -> Self {
        Self { p: self.p, value: -&self.value }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Self { p: self.p, value: &self.value * BigRational::from_integer(k.into()) }
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for PAdicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.denom().is_one() {
            write!(f, "{}", self.value.numer())
        } else {
            write!(f, "{}/{}", self.value.numer(), self.value.denom())
        }
    }
}

impl Serialize for PAdicRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        let x = PAdicRational::new(3, 18, 5).unwrap();
        assert_eq!(x.valuation(), Some(2));
        assert_eq!(PAdicRational::new(3, 5, 27).unwrap().valuation(), Some(-3));
        assert_eq!(PAdicRational::zero(5).valuation(), None);
        assert!((PAdicRational::new(2, 1, 8).unwrap().abs_p() - 8.0).abs() < 1e-15);
    }

    #[test]
    fn lambda_examples() {
        let x = PAdicRational::new(5, 7, 25).unwrap();
        assert_eq!(x.frac_lambda(), (BigInt::from(7), 2));
        // 1/(2*3) in Q_3: 1/2 = 2 mod 3 -> lambda = 2/3
        let y = PAdicRational::new(3, 1, 6).unwrap();
        assert_eq!(y.frac_lambda(), (BigInt::from(2), 1));
        assert_eq!(PAdicRational::new(7, 3, 2).unwrap().frac_lambda().1, 0);
    }

    #[test]
    fn lambda_differs_by_integer() {
        for (n, d) in [(13, 27), (-5, 9), (22, 45), (1, 54)] {
            let x = PAdicRational::new(3, n, d).unwrap();
            let (r, k) = x.frac_lambda();
            let lam = BigRational::new(r, BigInt::from(3).pow(k));
            let diff = PAdicRational::from_ratio(3, x.ratio() - lam).unwrap();
            assert!(diff.valuation().is_none_or(|v| v >= 0), "{n}/{d}");
        }
    }

    #[test]
    fn parsing() {
        let x = PAdicRational::parse(3, "1/9").unwrap();
        assert_eq!(x.valuation(), Some(-2));
        assert_eq!(x.to_string(), "1/9");
        assert!(PAdicRational::parse(3, "1/0").is_err());
        assert!(PAdicRational::parse(4, "1").is_err());
    }
}
