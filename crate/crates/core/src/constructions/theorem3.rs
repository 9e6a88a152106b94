//! Bounds that use the abelianizations of the factors.

use std::sync::Arc;

use num_bigint::BigUint;
use serde_json::json;

use crate::bounds::{certificate_from_formula, BoundCertificate, FactorContribution, FormulaParams};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::presentation::Presentation;
use crate::subgroup::{
    abelian_invariants, abelianization, d_min_generators, largest_normal_p_subgroup, quotient,
    DEFAULT_GENERATOR_BUDGET,
};

use super::modules::{find_simple_module, DimensionReport, ModuleAction};
use super::theorem1::{min_m_for_conclusion, theorem1_target, SemidirectTarget};

pub const DEFAULT_DMAX: usize = 4;

#[derive(Clone, Debug)]
pub struct Theorem3Decomposition {
    /// Abelian invariants of each `G_i / G_i'`, in input order.
    pub invariants: Vec<Vec<u64>>,
    pub s_prime: usize,
    pub p: u64,
    /// Input indices, those with `p` not dividing `|G_i/G_i'|` first.
    pub order: Vec<usize>,
    pub t: usize,
    /// `G_i / O_p(G_i)` for the first `t` entries of `order`.
    pub h_groups: Vec<FiniteGroup>,
    /// Exponent of `H_{t+1} = C_p^e`.
    pub last_rank: usize,
    pub modules: Vec<Option<ModuleAction>>,
    pub module_reports: Vec<Vec<DimensionReport>>,
    /// `None` when `t = 0` (then `H = C_p`) or a module search failed.
    pub target: Option<SemidirectTarget>,
    pub certificate: BoundCertificate,
}

/// A presentation of `G` on a small generating set, for module searches.
pub fn search_presentation(g: &FiniteGroup) -> Result<Presentation> {
    let gens = match d_min_generators(g, DEFAULT_GENERATOR_BUDGET) {
        Ok(w) if !w.witness.is_empty() => w.witness,
        _ => g.generator_indices()?,
    };
    Presentation::of_group_on(g, &gens).map(|p| p.with_name(g.name().to_string()))
}

/// `t = 0` target: `C_p` itself, `V = F_p` with trivial `R`.
fn cyclic_target(p: u32) -> Result<SemidirectTarget> {
    let r = Arc::new(FiniteGroup::matrix(p, 1, vec![])?.with_name("1"));
    let group = FiniteGroup::affine(r.clone(), 1)?.with_name(format!("C{p}"));
    Ok(SemidirectTarget {
        p,
        l: 1,
        m: 1,
        r: 1,
        point_group: r,
        embedded: vec![],
        group,
    })
}

pub fn theorem3_decompose(
    factors: &[FiniteGroup],
    dmax: usize,
    m: Option<u64>,
) -> Result<Theorem3Decomposition> {
    let n = factors.len();
    if n == 0 {
        return Err(Error::Invalid("at least one factor is needed".into()));
    }
    let invariants = factors
        .iter()
        .map(|g| abelian_invariants(&abelianization(g)?))
        .collect::<Result<Vec<_>>>()?;
    let s_prime = invariants.iter().map(|v| v.len()).max().unwrap();
    if s_prime == 0 {
        return Err(Error::Invalid(
            "every factor is perfect; the abelianization bound gives nothing".into(),
        ));
    }
    let witness = invariants.iter().position(|v| v.len() == s_prime).unwrap();
    // p divides d1, hence every invariant: C_p^{s'} is a quotient of the witness
    let p = crate::numtheory::prime_factors(invariants[witness][0])[0];
    let ab_order = |i: usize| invariants[i].iter().product::<u64>();
    let mut order: Vec<usize> = (0..n).filter(|&i| ab_order(i) % p != 0).collect();
    let t = order.len();
    order.extend((0..n).filter(|&i| ab_order(i) % p == 0));
    let last_rank = s_prime + n - t - 1;

    let mut h_groups = Vec::new();
    let mut modules = Vec::new();
    let mut module_reports = Vec::new();
    for &i in &order[..t] {
        let g = &factors[i];
        let op = largest_normal_p_subgroup(g, p)?;
        let h = quotient(g, &op)?.with_name(format!("{}/O_{p}", g.name()));
        let (hn, gn) = (h.order_usize()?, g.order_usize()?);
        if gn % hn != 0 {
            return Err(Error::Verification(format!(
                "|H| = {hn} does not divide |G| = {gn}"
            )));
        }
        let search = if hn > 1 {
            let pres = search_presentation(&h)?;
            find_simple_module(&pres, p as u32, dmax)?
        } else {
            super::modules::ModuleSearch {
                found: None,
                reports: vec![],
            }
        };
        modules.push(search.found);
        module_reports.push(search.reports);
        h_groups.push(h);
    }

    let c = (s_prime + n - 1) as u64;
    let conditional = modules.iter().any(|m| m.is_none());
    let target = if t == 0 {
        Some(cyclic_target(p as u32)?)
    } else if conditional {
        None
    } else {
        let found: Vec<ModuleAction> = modules.iter().map(|m| m.clone().unwrap()).collect();
        // r and l are fixed by the modules; build once at m = 1 to learn them
        let probe = theorem1_target(&found, 1)?;
        let m = match m {
            Some(0) => return Err(Error::Invalid("m must be positive".into())),
            Some(m) => m,
            None => min_m_for_conclusion(c, p, probe.l as u64, probe.r),
        };
        Some(if m == 1 {
            probe
        } else {
            theorem1_target(&found, m as usize)?
        })
    };

    let params = match &target {
        Some(t) => t.params(),
        None => FormulaParams {
            p: BigUint::from(p),
            l: 1,
            m: 1,
            r: BigUint::from(1u32),
        },
    };
    let mut per_factor = Vec::new();
    for (j, h) in h_groups.iter().enumerate() {
        let gens = modules[j]
            .as_ref()
            .map_or(h.generators().len(), |m| m.source().num_generators());
        per_factor.push(FactorContribution::formula(h.name(), gens as u64, &params, 1));
    }
    per_factor.push(FactorContribution::formula(
        format!("C{p}^{last_rank}"),
        last_rank as u64,
        &params,
        last_rank as u64,
    ));
    let target_name = target
        .as_ref()
        .map_or_else(|| "unrealized".to_string(), |t| t.group.name().to_string());
    let mut certificate = certificate_from_formula(params.clone(), target_name, per_factor)?;
    if conditional {
        certificate.conditional = true;
        certificate
            .notes
            .push("no simple module found for some H_i; the bound assumes one exists".into());
    }
    let strs = |v: Vec<String>| json!(v);
    let cm = &mut certificate.construction;
    cm.insert("kind".into(), json!("theorem3"));
    cm.insert("p".into(), json!(params.p.to_string()));
    cm.insert("l".into(), json!(params.l.to_string()));
    cm.insert("m".into(), json!(params.m.to_string()));
    cm.insert("r".into(), json!(params.r.to_string()));
    cm.insert("s_prime".into(), json!(s_prime.to_string()));
    cm.insert("t".into(), json!(t.to_string()));
    cm.insert(
        "order".into(),
        strs(order.iter().map(|i| i.to_string()).collect()),
    );
    cm.insert(
        "module_dims".into(),
        strs(
            modules
                .iter()
                .map(|m| m.as_ref().map_or("none".into(), |m| m.dim().to_string()))
                .collect(),
        ),
    );
    Ok(Theorem3Decomposition {
        invariants,
        s_prime,
        p,
        order,
        t,
        h_groups,
        last_rank,
        modules,
        module_reports,
        target,
        certificate,
    })
}

/// `Hom(C_p^e, V^m)` has `p^(lme)` elements: every tuple of translations.
pub fn elementary_count_into_module(params: &FormulaParams, e: u64) -> BigUint {
    params.module_order().pow(e as u32)
}
