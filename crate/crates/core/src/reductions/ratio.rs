//! Exact positive rationals for exponents such as ε and b.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow};

use crate::error::{Error, Result};

/// Largest numerator or denominator accepted after reduction; powers are
/// taken with these as exponents.
pub const MAX_TERM: u32 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ratio {
    pub num: u32,
    pub den: u32,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 {
            return Err(Error::Parse(format!("{num}/{den} is not a positive rational")));
        }
        let g = num.gcd(&den);
        let (n, d) = (num / g, den / g);
        if n > MAX_TERM as u64 || d > MAX_TERM as u64 {
            return Err(Error::Parse(format!("{n}/{d}: terms above {MAX_TERM}")));
        }
        Ok(Ratio { num: n as u32, den: d as u32 })
    }

    /// x ≤ y^self, decided as x^den ≤ y^num.
    pub fn le_power(&self, x: &BigUint, y: &BigUint) -> bool {
        Pow::pow(x, self.den) <= Pow::pow(y, self.num)
    }
}

impl FromStr for Ratio {
    type Err = Error;

    /// `"1"`, `"0.5"` or `"1/2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot read {s:?} as a rational"));
        if let Some((a, b)) = s.split_once('/') {
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().parse().map_err(|_| bad())?;
            return Ratio::new(a, b);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.len() > 6 || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let den = 10u64.pow(frac.len() as u32);
            let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
            return Ratio::new(int * den + frac, den);
        }
        Ratio::new(s.parse().map_err(|_| bad())?, 1)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// 0 < ε ≤ 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Epsilon(Ratio);

impl Epsilon {
    pub const ONE: Epsilon = Epsilon(Ratio { num: 1, den: 1 });

    pub fn new(r: Ratio) -> Result<Self> {
        if r.num > r.den {
            return Err(Error::EpsilonOutOfRange(r.to_string()));
        }
        Ok(Epsilon(r))
    }

    pub fn ratio(&self) -> Ratio {
        self.0
    }

    /// Smallest c ≥ 1 with c ≥ s^{2/ε − 1}, i.e. c^p ≥ s^{2q − p} for ε = p/q.
    pub fn pedestal_depth(&self, s: &BigUint) -> BigUint {
        let Ratio { num: p, den: q } = self.0;
        let target: BigUint = Pow::pow(s, 2 * q - p);
        let mut c = target.nth_root(p);
        if Pow::pow(&c, p) < target {
            c += 1u32;
        }
        c.max(BigUint::one())
    }
}

impl FromStr for Epsilon {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<Ratio>() {
            Ok(r) => Epsilon::new(r),
            Err(_) if s.trim().parse::<f64>().is_ok_and(|x| x <= 0.0 || x > 1.0) => {
                Err(Error::EpsilonOutOfRange(s.trim().to_string()))
            }
            Err(e) => Err(e),
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
