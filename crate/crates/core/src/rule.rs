//! Rules choosing the boundary count `n` as a function of `χ` for sweeps.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::parse_ratio;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NRule {
    /// `n = ⌊χ^α⌋`, computed with exact integer roots.
    Pow(Ratio<u64>),
    /// `n = ⌊c·χ⌋`.
    Linear(Ratio<u64>),
}

impl FromStr for NRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, value) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("rule `{s}` must look like pow:1/3 or linear:3")))?;
        let value = parse_ratio(value)?;
        match kind.trim() {
            "pow" => Ok(NRule::Pow(value)),
            "linear" => Ok(NRule::Linear(value)),
            other => Err(Error::InvalidArgument(format!("unknown rule kind `{other}`"))),
        }
    }
}

impl fmt::Display for NRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NRule::Pow(a) => write!(f, "pow:{a}"),
            NRule::Linear(c) => write!(f, "linear:{c}"),
        }
    }
}

/// Largest `n` with `n^q ≤ χ^p`.
fn floor_power(chi: usize, alpha: Ratio<u64>) -> usize {
    if alpha.is_zero() {
        return 1;
    }
    let p = *alpha.numer() as u32;
    let q = *alpha.denom() as u32;
    let target = BigUint::from(chi).pow(p);
    let fits = |n: u64| BigUint::from(n).pow(q) <= target;
    let (mut lo, mut hi) = (0u64, 1u64);
    while fits(hi) {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo.to_usize().unwrap_or(usize::MAX)
}

impl NRule {
    pub fn requested(&self, chi: usize) -> usize {
        match *self {
            NRule::Pow(alpha) => floor_power(chi, alpha),
            NRule::Linear(c) => (c * chi as u64).floor().to_integer() as usize,
        }
    }

    /// `(requested n, n actually used)`.
    pub fn apply(&self, chi: usize) -> Result<(usize, usize)> {
        let n = self.requested(chi);
        Ok((n, parity_adjust(chi, n)?))
    }
}

/// The largest `n' ≤ min(n, 3χ)` with `3χ − n'` even.
pub fn parity_adjust(chi: usize, n: usize) -> Result<usize> {
    if chi == 0 {
        return Err(Error::Parity { chi, n });
    }
    let mut m = n.min(3 * chi);
    if (3 * chi - m) % 2 == 1 {
        if m == 0 {
            return Err(Error::Parity { chi, n });
        }
        m -= 1;
    }
    Ok(m)
}
