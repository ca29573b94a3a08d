//! Elementary number theory on machine integers and factored integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted anywhere in the crate.
pub const MAX_MODULUS: u64 = 1 << 32;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub(crate) fn check_modulus(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    if n > MAX_MODULUS {
        return Err(Error::TooLarge {
            what: "modulus",
            value: n,
            bound: MAX_MODULUS,
        });
    }
    Ok(())
}

/// All positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    check_modulus(n)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Number of positive divisors.
pub fn tau(n: u64) -> Result<usize> {
    check_modulus(n)?;
    Ok(factorize(n).values().map(|&e| e as usize + 1).product())
}

/// Prime factorization by trial division. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, (&p, _)| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.values().any(|&e| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).values().sum::<u32>() == 1
}

/// A positive integer stored as its prime factorization.
///
/// Group orders here easily exceed 64 bits (the symmetric group on 40
/// points already does), so they are carried in this form throughout.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Factored(BTreeMap<u64, u32>);

impl Factored {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_u64(n: u64) -> Self {
        assert!(n > 0, "Factored::from_u64(0)");
        Factored(factorize(n))
    }

    pub fn factorial(n: u64) -> Self {
        (2..=n).fold(Self::one(), |acc, k| acc * Self::from_u64(k))
    }

    pub fn pow(&self, e: u64) -> Self {
        let e = u32::try_from(e).expect("exponent overflow");
        Factored(self.0.iter().map(|(&p, &k)| (p, k * e)).collect())
    }

    pub fn exponents(&self) -> &BTreeMap<u64, u32> {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// The expanded value, when it fits.
    pub fn to_u64(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for (&p, &e) in &self.0 {
            for _ in 0..e {
                acc = acc.checked_mul(p)?;
            }
        }
        Some(acc)
    }

    pub fn to_u128(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for (&p, &e) in &self.0 {
            for _ in 0..e {
                acc = acc.checked_mul(p as u128)?;
            }
        }
        Some(acc)
    }

    /// `2^11 · 3^4 = 165888`; the expanded value is dropped when it does
    /// not fit in 64 bits.
    pub fn display_with_value(&self) -> String {
        match self.to_u64() {
            Some(v) if !self.is_one() && !(self.0.len() == 1 && self.0.values().all(|&e| e == 1)) => {
                format!("{self} = {v}")
            }
            _ => self.to_string(),
        }
    }
}

impl Mul for Factored {
    type Output = Factored;
    fn mul(mut self, rhs: Factored) -> Factored {
        for (p, e) in rhs.0 {
            *self.0.entry(p).or_insert(0) += e;
        }
        self
    }
}

impl<'a> Mul<&'a Factored> for &'a Factored {
    type Output = Factored;
    fn mul(self, rhs: &Factored) -> Factored {
        self.clone() * rhs.clone()
    }
}

impl std::iter::Product for Factored {
    fn product<I: Iterator<Item = Factored>>(iter: I) -> Self {
        iter.fold(Factored::one(), |a, b| a * b)
    }
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" · "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(6).unwrap(), vec![1, 2, 3, 6]);
        assert_eq!(divisors(1).unwrap(), vec![1]);
        // trial division by hand
        assert_eq!(divisors(36).unwrap(), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert_eq!(divisors(0), Err(Error::ZeroModulus));
    }

    #[test]
    fn divisors_match_scan() {
        for n in 1..500u64 {
            let scan: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(divisors(n).unwrap(), scan);
            assert_eq!(tau(n).unwrap(), scan.len());
        }
    }

    #[test]
    fn totient_and_mobius() {
        for n in 1..200u64 {
            let phi = (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64;
            assert_eq!(euler_phi(n), phi, "phi({n})");
        }
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(6), 1);
    }

    #[test]
    fn factored_products() {
        let order = Factored::factorial(3).pow(3)
            * Factored::factorial(2).pow(6)
            * Factored::factorial(3)
            * Factored::factorial(2);
        assert_eq!(order.to_string(), "2^11 · 3^4");
        assert_eq!(order.to_u64(), Some(165888));
        assert_eq!(order.display_with_value(), "2^11 · 3^4 = 165888");
        assert_eq!(Factored::factorial(40).to_u64(), None);
        assert_eq!(serde_json::to_string(&order).unwrap(), r#"{"2":11,"3":4}"#);
    }
}
