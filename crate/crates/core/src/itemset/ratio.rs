use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// An exact threshold in `(0, 1]`, used for both minimum support and
/// minimum confidence. Comparisons against counts are done in integers:
/// `count / total >= num / den  ⇔  count·den >= num·total`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 || num > den {
            return Err(Error::Range(format!(
                "threshold {num}/{den} must lie in (0, 1]"
            )));
        }
        let g = num.gcd(&den);
        Ok(Ratio {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// `count >= self · total`, evaluated exactly.
    pub fn is_met(&self, count: u64, total: u64) -> bool {
        count as u128 * self.den as u128 >= self.num as u128 * total as u128
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Accepts `num/den` or a decimal such as `0.25` or `1`. Decimals are
/// converted exactly with denominator `10^digits`.
impl FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Range(format!("cannot parse threshold {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            let num = n.trim().parse::<u64>().map_err(|_| bad())?;
            let den = d.trim().parse::<u64>().map_err(|_| bad())?;
            return Ratio::new(num, den);
        }
        let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits = frac_part.len() as u32;
        let den = 10u64.checked_pow(digits).ok_or_else(bad)?;
        let int = if int_part.is_empty() {
            0
        } else {
            int_part.parse::<u64>().map_err(|_| bad())?
        };
        let frac = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse::<u64>().map_err(|_| bad())?
        };
        let num = int
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(bad)?;
        Ratio::new(num, den)
    }
}
