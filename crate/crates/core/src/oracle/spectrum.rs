//! Eigenvalues `λ_j = Σ_{s ∈ S} ω^{js}` of circulant adjacency matrices.
//!
//! The integrality verdict is exact: `λ_j` is rational iff the polynomial
//! `Σ_s x^{js mod n}` reduces to a constant modulo the cyclotomic
//! polynomial `Φ_n`. Integer eigenvalues of trace-closed sets are also
//! evaluated with Ramanujan sums, and everything is compared against a
//! floating-point transform.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::arith::{self, euler_phi, gcd, mobius};
use crate::error::{Error, Result};
use crate::zn::ZnSubset;

pub const FLOAT_TOLERANCE: f64 = 1e-6;

/// Largest modulus accepted by [`spectrum`].
pub const SPECTRUM_BOUND: usize = 1024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub n: usize,
    /// `(re, im)` of `λ_j` for `j = 0..n`.
    pub numeric: Vec<(f64, f64)>,
    /// Exact `λ_j` when every eigenvalue is an integer.
    pub exact: Option<Vec<i64>>,
    pub integral: bool,
}

impl Spectrum {
    /// Distinct integer eigenvalues, descending, with multiplicities.
    pub fn multiset(&self) -> Option<Vec<(i64, usize)>> {
        let mut v = self.exact.clone()?;
        v.sort_unstable_by(|a, b| b.cmp(a));
        let mut out: Vec<(i64, usize)> = Vec::new();
        for x in v {
            match out.last_mut() {
                Some((y, k)) if *y == x => *k += 1,
                _ => out.push((x, 1)),
            }
        }
        Some(out)
    }
}

/// `c_q(j) = μ(q/g) φ(q) / φ(q/g)` with `g = gcd(q, j)`.
pub fn ramanujan_sum(q: u64, j: u64) -> i64 {
    let g = gcd(q, j);
    mobius(q / g) * (euler_phi(q) / euler_phi(q / g)) as i64
}

/// Integer coefficients of `Φ_n`, constant term first.
fn cyclotomic(n: u64) -> Vec<i64> {
    // x^n − 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in arith::divisors(n).expect("n ≥ 1") {
        if d < n {
            num = divide_monic(&num, &cyclotomic(d));
        }
    }
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (i, &a) in den.iter().enumerate() {
            rem[k + i] -= c * a;
        }
    }
    quot
}

/// Remainder of `p` modulo a monic polynomial.
fn reduce(mut p: Vec<i64>, modulus: &[i64]) -> Vec<i64> {
    let dm = modulus.len() - 1;
    while p.len() > dm {
        let c = p.pop().expect("nonempty");
        let k = p.len() - dm;
        for (i, &a) in modulus[..dm].iter().enumerate() {
            p[k + i] -= c * a;
        }
    }
    p
}

pub fn spectrum(set: &ZnSubset) -> Result<Spectrum> {
    let n = set.modulus();
    if n > SPECTRUM_BOUND {
        return Err(Error::TooLarge { what: "modulus for spectra", value: n as u64, bound: SPECTRUM_BOUND as u64 });
    }
    let numeric: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            set.iter().fold((0.0, 0.0), |(re, im), s| {
                let t = 2.0 * PI * ((j * s) % n) as f64 / n as f64;
                (re + t.cos(), im + t.sin())
            })
        })
        .collect();
    let phi = cyclotomic(n as u64);
    let mut exact = Vec::with_capacity(n);
    for j in 0..n {
        let mut p = vec![0i64; n];
        for s in set.iter() {
            p[(j * s) % n] += 1;
        }
        let r = reduce(p, &phi);
        if r.iter().skip(1).all(|&c| c == 0) {
            exact.push(r.first().copied().unwrap_or(0));
        } else {
            break;
        }
    }
    let integral = exact.len() == n;
    let exact = integral.then_some(exact);
    if let Some(ev) = &exact {
        for (j, (&e, &(re, im))) in ev.iter().zip(&numeric).enumerate() {
            if (e as f64 - re).abs() > FLOAT_TOLERANCE || im.abs() > FLOAT_TOLERANCE {
                return Err(Error::Inconsistency(format!("λ_{j}: exact {e} vs numeric {re}+{im}i")));
            }
        }
        if set.is_trace_closed() {
            for (j, &e) in ev.iter().enumerate() {
                let r: i64 = set
                    .gcd_classes()
                    .iter()
                    .map(|&d| ramanujan_sum(n as u64 / d, j as u64))
                    .sum();
                if r != e {
                    return Err(Error::Inconsistency(format!("λ_{j}: Ramanujan sum {r} vs {e}")));
                }
            }
        }
    } else if numeric
        .iter()
        .all(|&(re, im)| (re - re.round()).abs() <= FLOAT_TOLERANCE && im.abs() <= FLOAT_TOLERANCE)
    {
        return Err(Error::Inconsistency("numeric spectrum looks integral but is not".into()));
    }
    Ok(Spectrum { n, numeric, exact, integral })
}
