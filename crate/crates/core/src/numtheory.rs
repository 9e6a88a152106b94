//! Desk-scale number theory: trial-division primality, sieving, primes in
//! arithmetic progressions, the Chinese remainder theorem, primitive roots
//! and common subset sums.

use num_integer::Integer;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes `<= limit` by the sieve of Eratosthenes.
pub fn sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Primes `q <= bound` with `q = residue (mod modulus)`.
pub fn primes_in_progression(residue: u64, modulus: u64, bound: u64) -> Vec<u64> {
    sieve(bound)
        .into_iter()
        .filter(|&q| q % modulus == residue % modulus)
        .collect()
}

/// The first `n` odd primes.
pub fn first_odd_primes(n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    let mut q = 3u64;
    while out.len() < n {
        if is_prime(q) {
            out.push(q);
        }
        q += 2;
    }
    out
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least prime `= a (mod modulus)`, scanning `a mod modulus`, then upwards
/// in steps of `modulus`, up to `cap`.
pub fn dirichlet_prime(a: u64, modulus: u64, cap: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::Invalid("modulus must be positive".into()));
    }
    if a.gcd(&modulus) != 1 {
        return Err(Error::NotCoprime { a, modulus });
    }
    let mut q = a % modulus;
    while q <= cap {
        if is_prime(q) {
            return Ok(q);
        }
        q += modulus;
    }
    Err(Error::CapExceeded(format!(
        "no prime = {a} mod {modulus} up to {cap}"
    )))
}

fn mod_inverse(a: u128, m: u128) -> Option<u128> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u128)
}

/// Unique solution of `x = residues[i] (mod moduli[i])` in `1..=prod(moduli)`.
pub fn crt_solve(residues: &[u64], moduli: &[u64]) -> Result<u64> {
    if residues.len() != moduli.len() || moduli.is_empty() {
        return Err(Error::Invalid("residue and modulus lists must match and be nonempty".into()));
    }
    for (i, &a) in moduli.iter().enumerate() {
        if a == 0 {
            return Err(Error::Invalid("zero modulus".into()));
        }
        for &b in &moduli[i + 1..] {
            if a.gcd(&b) != 1 {
                return Err(Error::NotCoprime { a, modulus: b });
            }
        }
    }
    let mut x: u128 = 0;
    let mut m: u128 = 1;
    for (&r, &q) in residues.iter().zip(moduli) {
        let q = q as u128;
        let r = r as u128 % q;
        // x + m t = r (mod q)
        let inv = mod_inverse(m % q, q).expect("moduli are coprime");
        let t = ((r + q - x % q) % q) * inv % q;
        x += m * t;
        m = m
            .checked_mul(q)
            .filter(|&v| v <= u64::MAX as u128)
            .ok_or_else(|| Error::Overflow("product of moduli exceeds u64".into()))?;
        x %= m;
    }
    Ok(if x == 0 { m as u64 } else { x as u64 })
}

pub fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut result = 1u128 % m;
    let mut b = base as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result as u64
}

/// Least primitive root modulo a prime.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&f| pow_mod(g, (p - 1) / f, p) != 1))
        .ok_or(Error::NotPrime(p))
}

/// Outcome of [`common_subset_sum`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonSum {
    pub k: u64,
    /// One decomposition per set, each increasing.
    pub decompositions: Vec<Vec<u64>>,
}

/// Reachable sums of distinct elements up to `cap`, each with the element
/// that first reached it.
fn subset_sum_table(set: &[u64], cap: usize) -> Vec<Option<u32>> {
    let mut from: Vec<Option<u32>> = vec![None; cap + 1];
    let mut reach = vec![false; cap + 1];
    reach[0] = true;
    for (i, &x) in set.iter().enumerate() {
        let x = x as usize;
        if x > cap {
            continue;
        }
        for s in (x..=cap).rev() {
            if reach[s - x] && !reach[s] {
                reach[s] = true;
                from[s] = Some(i as u32);
            }
        }
    }
    from
}

fn recover(set: &[u64], from: &[Option<u32>], mut s: usize) -> Vec<u64> {
    let mut parts = Vec::new();
    while s > 0 {
        let i = from[s].expect("sum is reachable") as usize;
        parts.push(set[i]);
        s -= set[i] as usize;
    }
    parts.sort_unstable();
    parts
}

/// Least positive `k <= cap` that is a sum of distinct elements of every set,
/// with one decomposition per set; `Ok(None)` if there is none.
pub fn common_subset_sum(sets: &[Vec<u64>], cap: u64) -> Result<Option<CommonSum>> {
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if let Some(x) = a.iter().find(|x| b.contains(x)) {
                return Err(Error::Invalid(format!("sets are not disjoint: {x} is shared")));
            }
        }
    }
    if sets.is_empty() {
        return Err(Error::Invalid("no sets given".into()));
    }
    let cap = cap as usize;
    let mut sorted: Vec<Vec<u64>> = sets.to_vec();
    for s in sorted.iter_mut() {
        s.sort_unstable();
        s.dedup();
    }
    let tables: Vec<Vec<Option<u32>>> = sorted.iter().map(|s| subset_sum_table(s, cap)).collect();
    let Some(k) = (1..=cap).find(|&s| tables.iter().all(|t| t[s].is_some())) else {
        return Ok(None);
    };
    let decompositions = sorted
        .iter()
        .zip(&tables)
        .map(|(s, t)| recover(s, t, k))
        .collect();
    Ok(Some(CommonSum {
        k: k as u64,
        decompositions,
    }))
}
