//! Divisor sums and the exact overpartition counts.
//!
//! `sigma_bar` is computed from the 2-adic valuation of its argument; the
//! identity `sigma(n) - tau_alt(n) == sigma_bar(n)` is kept as an independent
//! cross-check rather than as the definition.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision non-negative integer.
pub type Nat = BigUint;

/// Exact fraction, always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Serde adapter writing a [`Nat`] as a decimal string.
pub mod nat_string {
    use super::Nat;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &Nat, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(n)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Nat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn require_positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::Domain(format!(
            "{what} is defined for n >= 1, got 0"
        )))
    } else {
        Ok(())
    }
}

/// All positive divisors of `n` in ascending order, by trial division up to `sqrt(n)`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            low.push(d);
            if d != n / d {
                high.push(n / d);
            }
        }
        d += 1;
    }
    low.extend(high.into_iter().rev());
    low
}

/// Sum of the positive divisors of `n`.
pub fn sigma(n: u64) -> Result<u64> {
    require_positive(n, "sigma")?;
    Ok(divisors(n).into_iter().sum())
}

/// Alternating divisor sum `sum_{d | n} (-1)^(n/d) d`.
pub fn tau_alt(n: u64) -> Result<i64> {
    require_positive(n, "tau_alt")?;
    Ok(divisors(n)
        .into_iter()
        .map(|d| {
            let d = d as i64;
            if (n / d as u64).is_multiple_of(2) {
                d
            } else {
                -d
            }
        })
        .sum())
}

/// `2^(m+1) * sigma(l)` where `n = 2^m * l` with `l` odd.
pub fn sigma_bar(n: u64) -> Result<u64> {
    require_positive(n, "sigma_bar")?;
    let m = n.trailing_zeros();
    let odd = n >> m;
    Ok((1u64 << (m + 1)) * sigma(odd)?)
}

/// Memoized prefix `pbar(0), ..., pbar(len - 1)` of the overpartition function.
///
/// Built by the integer recursion `n * pbar(n) = sum_{k=1}^{n} sigma_bar(k) * pbar(n - k)`.
#[derive(Debug, Clone)]
pub struct PbarTable {
    sigma_bar: Vec<u64>,
    values: Vec<Nat>,
}

impl Default for PbarTable {
    fn default() -> Self {
        Self::new()
    }
}

impl PbarTable {
    pub fn new() -> Self {
        Self {
            // index 0 is a placeholder so that sigma_bar[k] is sigma_bar(k)
            sigma_bar: vec![0],
            values: vec![Nat::one()],
        }
    }

    /// Number of values currently stored.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Extends the table so that `pbar(n)` is available.
    pub fn extend_to(&mut self, n: usize) -> Result<()> {
        while self.sigma_bar.len() <= n {
            let k = self.sigma_bar.len() as u64;
            self.sigma_bar.push(sigma_bar(k)?);
        }
        while self.values.len() <= n {
            let m = self.values.len();
            let mut acc = Nat::zero();
            for k in 1..=m {
                acc += &self.values[m - k] * self.sigma_bar[k];
            }
            let (q, r) = acc.div_rem(&Nat::from(m));
            if !r.is_zero() {
                return Err(Error::Internal(format!(
                    "pbar recursion: sum not divisible by n = {m}"
                )));
            }
            self.values.push(q);
        }
        Ok(())
    }

    pub fn get(&self, n: usize) -> Option<&Nat> {
        self.values.get(n)
    }

    /// Stored values as a slice, starting at `pbar(0)`.
    pub fn values(&self) -> &[Nat] {
        &self.values
    }
}

fn global_table() -> &'static RwLock<PbarTable> {
    static TABLE: OnceLock<RwLock<PbarTable>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(PbarTable::new()))
}

/// Makes sure the shared table holds `pbar(0..=n)`.
pub fn warm_pbar(n: usize) -> Result<()> {
    {
        let table = global_table().read().expect("pbar table poisoned");
        if table.len() > n {
            return Ok(());
        }
    }
    global_table()
        .write()
        .expect("pbar table poisoned")
        .extend_to(n)
}

/// Number of overpartitions of `n`.
pub fn pbar_exact(n: usize) -> Result<Nat> {
    warm_pbar(n)?;
    let table = global_table().read().expect("pbar table poisoned");
    Ok(table.values[n].clone())
}

/// `pbar(0), ..., pbar(n)` as an owned vector.
pub fn pbar_prefix(n: usize) -> Result<Vec<Nat>> {
    warm_pbar(n)?;
    let table = global_table().read().expect("pbar table poisoned");
    Ok(table.values[..=n].to_vec())
}
