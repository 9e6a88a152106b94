//! Metabelian targets for free products of cyclic groups.

use num_bigint::BigUint;
use serde_json::json;

use crate::bounds::BoundCertificate;
use crate::error::{Error, Result};
use crate::matrix::FpMatrix;
use crate::numtheory::{dirichlet_prime, is_prime, pow_mod, prime_factors, primitive_root};
use crate::presentation::Presentation;
use crate::subgroup::is_metabelian;

use super::modules::ModuleAction;
use super::theorem1::{min_m_for_conclusion, theorem1_target, SemidirectTarget};

pub const DEFAULT_DIRICHLET_CAP: u64 = 10_000_000;
/// Targets up to this order are enumerated to confirm they are metabelian.
pub const METABELIAN_CHECK_LIMIT: u64 = 5000;

#[derive(Clone, Debug)]
pub struct SolsolResult {
    /// Cyclic orders as given.
    pub orders: Vec<u64>,
    /// The prime quotient used for each factor.
    pub primes: Vec<u64>,
    /// Product of the distinct primes.
    pub k: u64,
    /// Least prime `= 1 mod k`.
    pub p: u64,
    /// Multiplier of order `primes[i]` in `F_p^*`.
    pub units: Vec<u64>,
    pub target: SemidirectTarget,
    pub certificate: BoundCertificate,
    /// `None` when the target is too large to enumerate.
    pub metabelian: Option<bool>,
}

/// Reduces an order to its largest prime factor.
pub fn prime_quotient(order: u64) -> Result<u64> {
    prime_factors(order)
        .into_iter()
        .max()
        .ok_or_else(|| Error::Invalid("the trivial group has no prime quotient".into()))
}

/// Builds the target for `C_{o_1} * ... * C_{o_n}` with `m` copies of the
/// module; `m = None` picks the least `m` reaching conclusion `n`.
pub fn solsol_construct(orders: &[u64], m: Option<u64>) -> Result<SolsolResult> {
    solsol_construct_with(orders, m, DEFAULT_DIRICHLET_CAP)
}

pub fn solsol_construct_with(orders: &[u64], m: Option<u64>, cap: u64) -> Result<SolsolResult> {
    if orders.is_empty() {
        return Err(Error::Invalid("at least one cyclic factor is needed".into()));
    }
    let primes: Vec<u64> = orders.iter().map(|&o| prime_quotient(o)).collect::<Result<_>>()?;
    let mut distinct = primes.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let k = distinct
        .iter()
        .try_fold(1u64, |acc, &q| acc.checked_mul(q))
        .ok_or_else(|| Error::Overflow("product of the primes".into()))?;
    let p = dirichlet_prime(1, k, cap)?;
    debug_assert!(is_prime(p));
    let g = primitive_root(p)?;
    let units: Vec<u64> = primes.iter().map(|&q| pow_mod(g, (p - 1) / q, p)).collect();
    let modules = primes
        .iter()
        .zip(&units)
        .map(|(&q, &u)| {
            ModuleAction::new(
                Presentation::cyclic(q),
                vec![FpMatrix::from_row_major(p as u32, &[u as i64])?],
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let n = orders.len() as u64;
    let m = match m {
        Some(0) => return Err(Error::Invalid("m must be positive".into())),
        Some(m) => m,
        None => min_m_for_conclusion(n, p, 1, k),
    };
    let target = theorem1_target(&modules, m as usize)?;
    let metabelian = if target.order() <= BigUint::from(METABELIAN_CHECK_LIMIT) {
        Some(is_metabelian(&target.group)?)
    } else {
        None
    };
    let factors: Vec<(String, u64)> = orders.iter().map(|o| (format!("C{o}"), 1)).collect();
    let mut certificate = target.certificate(&factors)?;
    for (&o, &q) in orders.iter().zip(&primes) {
        if o != q {
            certificate.notes.push(format!(
                "C{o} replaced by its quotient C{q}; quotients have fewer homomorphisms, so the bound transfers"
            ));
        }
    }
    let strs = |v: &[u64]| json!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    let c = &mut certificate.construction;
    c.insert("kind".into(), json!("solsol"));
    c.insert("p".into(), json!(p.to_string()));
    c.insert("l".into(), json!("1"));
    c.insert("m".into(), json!(m.to_string()));
    c.insert("r".into(), json!(target.r.to_string()));
    c.insert("k".into(), json!(k.to_string()));
    c.insert("primes".into(), strs(&primes));
    c.insert("units".into(), strs(&units));
    c.insert(
        "metabelian".into(),
        json!(metabelian.map_or("unchecked".to_string(), |b| b.to_string())),
    );
    Ok(SolsolResult {
        orders: orders.to_vec(),
        primes,
        k,
        p,
        units,
        target,
        certificate,
        metabelian,
    })
}
