//! The semidirect target `V^m ⋊ R` built from simple modules of the factors.

use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::bounds::{certificate_from_formula, BoundCertificate, FactorContribution, FormulaParams};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::{common_fixed_dimension, FpMatrix};

use super::modules::{is_irreducible, ModuleAction, DEFAULT_SPACE_CAP};

#[derive(Clone, Debug)]
pub struct SemidirectTarget {
    pub p: u32,
    pub l: usize,
    pub m: usize,
    pub r: u64,
    /// `R`, generated by all the block-embedded `L_i`.
    pub point_group: Arc<FiniteGroup>,
    /// `L_i` generators on `V = F_p^l`, one list per factor.
    pub embedded: Vec<Vec<FpMatrix>>,
    /// `V^m ⋊ R` as an affine group on `F_p^(lm)`.
    pub group: FiniteGroup,
}

impl SemidirectTarget {
    pub fn params(&self) -> FormulaParams {
        FormulaParams {
            p: self.p.into(),
            l: self.l as u64,
            m: self.m as u64,
            r: self.r.into(),
        }
    }

    /// `p^(lm) r`.
    pub fn order(&self) -> BigUint {
        self.params().target_order()
    }

    /// Images in `group` of the generators of factor `i`: `(0, L_i(s))`.
    pub fn factor_images(&self, i: usize) -> Vec<Box<[u32]>> {
        let n = self.l * self.m;
        self.embedded[i]
            .iter()
            .map(|a| {
                let mut e = vec![0u32; n];
                e.extend_from_slice(a.entries());
                e.into_boxed_slice()
            })
            .collect()
    }

    /// One formula unit per factor.
    pub fn certificate(&self, factors: &[(String, u64)]) -> Result<BoundCertificate> {
        let params = self.params();
        let per_factor = factors
            .iter()
            .map(|(name, gens)| FactorContribution::formula(name.clone(), *gens, &params, 1))
            .collect();
        certificate_from_formula(params, self.group.name(), per_factor)
    }
}

/// Builds `V^m ⋊ R` from one nontrivial simple module per factor.
pub fn theorem1_target(modules: &[ModuleAction], m: usize) -> Result<SemidirectTarget> {
    let first = modules
        .first()
        .ok_or_else(|| Error::Invalid("at least one module is needed".into()))?;
    if m == 0 {
        return Err(Error::Invalid("m must be positive".into()));
    }
    let p = first.prime();
    for (i, md) in modules.iter().enumerate() {
        if md.prime() != p {
            return Err(Error::Invalid("modules are over different fields".into()));
        }
        if md.is_trivial() {
            return Err(Error::Invalid(format!("module {i} is trivial")));
        }
        if !is_irreducible(md, DEFAULT_SPACE_CAP)? {
            return Err(Error::Invalid(format!("module {i} is reducible")));
        }
    }
    let l = modules.iter().fold(1usize, |acc, md| acc.lcm(&md.dim()));
    let embedded: Vec<Vec<FpMatrix>> = modules
        .iter()
        .map(|md| {
            md.matrices()
                .iter()
                .map(|a| a.block_diagonal(l / md.dim()))
                .collect()
        })
        .collect();
    for (i, gens) in embedded.iter().enumerate() {
        if common_fixed_dimension(gens) != 0 {
            return Err(Error::Verification(format!(
                "L_{i} fixes a nonzero vector of V"
            )));
        }
    }
    let all: Vec<FpMatrix> = embedded.iter().flatten().cloned().collect();
    let point_group = Arc::new(FiniteGroup::matrix(p, l, all)?.with_name(format!("R <= GL({l},{p})")));
    let r = point_group.order_usize()? as u64;
    let group = FiniteGroup::affine(point_group.clone(), m)?
        .with_name(format!("(F_{p}^{l})^{m} : R, r = {r}"));
    Ok(SemidirectTarget {
        p,
        l,
        m,
        r,
        point_group,
        embedded,
        group,
    })
}

/// Least `m >= 1` with `p^(lm) > r^(n-1)`.
pub fn min_m_for_conclusion(n: u64, p: u64, l: u64, r: u64) -> u64 {
    let rhs = BigUint::from(r).pow(n.saturating_sub(1) as u32);
    let step = BigUint::from(p).pow(l as u32);
    let mut m = 1u64;
    let mut lhs = step.clone();
    while lhs <= rhs {
        lhs *= &step;
        m += 1;
    }
    m
}
