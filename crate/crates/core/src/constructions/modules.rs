//! Linear actions of presented groups over prime fields.

use std::ops::ControlFlow;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, DEFAULT_ELEMENT_CAP};
use crate::homcount::{for_each_hom, DEFAULT_NODE_BUDGET};
use crate::library::general_linear;
use crate::matrix::{FpMatrix, Subspace};
use crate::numtheory::is_prime;
use crate::presentation::Presentation;

pub const DEFAULT_SPACE_CAP: u64 = 100_000;

/// `F_p^dim` as a module for a presented group, one matrix per generator.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleAction {
    p: u32,
    dim: usize,
    matrices: Vec<FpMatrix>,
    source: Presentation,
}

fn word_matrix(p: u32, dim: usize, mats: &[FpMatrix], word: &[(usize, i64)]) -> Result<FpMatrix> {
    let mut acc = FpMatrix::identity(p, dim);
    for &(g, k) in word {
        let base = if k < 0 {
            mats[g]
                .inverse()
                .ok_or_else(|| Error::Invalid("matrix is not invertible".into()))?
        } else {
            mats[g].clone()
        };
        acc = acc.mul(&base.pow(k.unsigned_abs()));
    }
    Ok(acc)
}

impl ModuleAction {
    /// Checks dimensions, invertibility and every relator of `source`.
    pub fn new(source: Presentation, matrices: Vec<FpMatrix>) -> Result<Self> {
        if matrices.len() != source.num_generators() {
            return Err(Error::Invalid(format!(
                "{} matrices for {} generators",
                matrices.len(),
                source.num_generators()
            )));
        }
        let first = matrices
            .first()
            .ok_or_else(|| Error::Invalid("a module needs at least one generator".into()))?;
        let (p, dim) = (first.prime(), first.dim());
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        for m in &matrices {
            if m.prime() != p || m.dim() != dim {
                return Err(Error::Invalid("matrices differ in field or dimension".into()));
            }
            if !m.is_invertible() {
                return Err(Error::Invalid("module matrix is not invertible".into()));
            }
        }
        for (i, r) in source.relators().iter().enumerate() {
            if !word_matrix(p, dim, &matrices, r)?.is_identity() {
                return Err(Error::Invalid(format!(
                    "relator {} ({}) does not act trivially",
                    i,
                    source.word_to_string(r)
                )));
            }
        }
        Ok(ModuleAction {
            p,
            dim,
            matrices,
            source,
        })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[FpMatrix] {
        &self.matrices
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn is_trivial(&self) -> bool {
        self.matrices.iter().all(|m| m.is_identity())
    }
}

fn all_normalized_vectors(p: u32, dim: usize) -> impl Iterator<Item = Vec<u32>> {
    // vectors whose first nonzero coordinate is 1
    (0..dim).flat_map(move |lead| {
        let tail = dim - lead - 1;
        let count = (p as u64).pow(tail as u32);
        (0..count).map(move |mut c| {
            let mut v = vec![0u32; dim];
            v[lead] = 1;
            for x in v.iter_mut().skip(lead + 1) {
                *x = (c % p as u64) as u32;
                c /= p as u64;
            }
            v
        })
    })
}

/// True iff every nonzero vector spins up to the whole space. Up to scalars
/// suffices, so only vectors with leading coordinate 1 are spun.
pub fn is_irreducible(m: &ModuleAction, cap: u64) -> Result<bool> {
    let size = (m.p as u64).checked_pow(m.dim as u32);
    if size.is_none_or(|s| s > cap) {
        return Err(Error::CapExceeded(format!(
            "{}^{} vectors exceed the cap {cap}",
            m.p, m.dim
        )));
    }
    Ok(all_normalized_vectors(m.p, m.dim)
        .all(|v| Subspace::spin(&v, &m.matrices, m.p).dim() == m.dim))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum DimensionOutcome {
    Found { homs_examined: u64 },
    Exhausted { homs_examined: u64 },
    CapExceeded { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub dim: usize,
    #[serde(flatten)]
    pub outcome: DimensionOutcome,
}

#[derive(Clone, Debug)]
pub struct ModuleSearch {
    pub found: Option<ModuleAction>,
    pub reports: Vec<DimensionReport>,
}

/// `|GL(d, p)|`.
pub fn general_linear_order(d: usize, p: u64) -> BigUint {
    let q = BigUint::from(p);
    (0..d)
        .map(|i| q.pow(d as u32) - q.pow(i as u32))
        .product()
}

/// Searches `d = 1..=dmax` for a nontrivial irreducible action, scanning the
/// homomorphisms into `GL(d, p)` in search order; the first hit is returned.
pub fn find_simple_module(g: &Presentation, p: u32, dmax: usize) -> Result<ModuleSearch> {
    find_simple_module_with(g, p, dmax, DEFAULT_SPACE_CAP, DEFAULT_ELEMENT_CAP)
}

pub fn find_simple_module_with(
    g: &Presentation,
    p: u32,
    dmax: usize,
    space_cap: u64,
    element_cap: usize,
) -> Result<ModuleSearch> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let mut reports = Vec::new();
    for d in 1..=dmax {
        let space = (p as u64).checked_pow(d as u32);
        if space.is_none_or(|s| s > space_cap) {
            reports.push(DimensionReport {
                dim: d,
                outcome: DimensionOutcome::CapExceeded {
                    reason: format!("{p}^{d} vectors exceed the cap {space_cap}"),
                },
            });
            continue;
        }
        let order = general_linear_order(d, p as u64);
        if order > BigUint::from(element_cap) {
            reports.push(DimensionReport {
                dim: d,
                outcome: DimensionOutcome::CapExceeded {
                    reason: format!("|GL({d},{p})| = {order} exceeds the element cap {element_cap}"),
                },
            });
            continue;
        }
        let gl: FiniteGroup = general_linear(d, p)?.with_cap(element_cap);
        let e = gl.enumerate()?;
        let mut examined = 0u64;
        let mut hit: Option<Vec<FpMatrix>> = None;
        let searched = for_each_hom(g, &gl, DEFAULT_NODE_BUDGET, |imgs| {
            examined += 1;
            if imgs.iter().all(|&x| x == 0) {
                return ControlFlow::Continue(());
            }
            let mats: Vec<FpMatrix> = imgs
                .iter()
                .map(|&x| FpMatrix::from_raw(p, d, e.element(x).to_vec()))
                .collect();
            let m = ModuleAction {
                p,
                dim: d,
                matrices: mats.clone(),
                source: g.clone(),
            };
            if is_irreducible(&m, space_cap).unwrap_or(false) {
                hit = Some(mats);
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let Err(err) = searched {
            reports.push(DimensionReport {
                dim: d,
                outcome: DimensionOutcome::CapExceeded {
                    reason: err.to_string(),
                },
            });
            continue;
        }
        if let Some(mats) = hit {
            reports.push(DimensionReport {
                dim: d,
                outcome: DimensionOutcome::Found {
                    homs_examined: examined,
                },
            });
            return Ok(ModuleSearch {
                found: Some(ModuleAction::new(g.clone(), mats)?),
                reports,
            });
        }
        reports.push(DimensionReport {
            dim: d,
            outcome: DimensionOutcome::Exhausted {
                homs_examined: examined,
            },
        });
    }
    Ok(ModuleSearch {
        found: None,
        reports,
    })
}
