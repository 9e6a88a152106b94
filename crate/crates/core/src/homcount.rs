//! Exact homomorphism counts `|Hom(Γ, H)|`, `h(Γ, H)`, and the witness
//! quotient `G(Γ, H)`.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Enumeration, FiniteGroup};
use crate::presentation::{evaluate, Presentation, Word};

pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;
pub const DEFAULT_WIDTH_CAP: usize = 256;
/// Largest `|H|^n` for which [`power_target_count`] checks the count on the
/// explicit direct power.
pub const POWER_EXPLICIT_LIMIT: usize = 5000;

/// Natural logarithm of a big integer.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 60;
    let top = (x >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomCountResult {
    #[serde(with = "crate::bigstr")]
    pub count: BigUint,
    #[serde(with = "crate::bigstr")]
    pub target_order: BigUint,
}

impl HomCountResult {
    pub fn new(count: BigUint, target_order: BigUint) -> Self {
        HomCountResult {
            count,
            target_order,
        }
    }

    /// `ln(count) / ln(target_order)`, for display. A trivial target gives 0.
    pub fn h(&self) -> f64 {
        if self.target_order <= BigUint::one() {
            return 0.0;
        }
        ln_big(&self.count) / ln_big(&self.target_order)
    }
}

/// Search limits for the backtracking kernel.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub node_budget: u64,
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            parallel: true,
        }
    }
}

/// Precomputed search plan: generator order, candidate images, and the
/// relators to check once each depth is assigned.
struct Plan {
    order: Vec<usize>,
    candidates: Vec<Vec<u32>>,
    checks: Vec<Vec<Word>>,
    /// generators that occur in no relator, each contributing a factor |H|
    free: usize,
}

fn plan(p: &Presentation, e: &Enumeration) -> Plan {
    let ngen = p.num_generators();
    let n = e.len() as u32;
    let mut involved = vec![false; ngen];
    let mut power: Vec<Vec<i64>> = vec![Vec::new(); ngen];
    let mut multi: Vec<&Word> = Vec::new();
    for r in p.relators() {
        let first = r.first().map(|s| s.0);
        for &(g, _) in r {
            involved[g] = true;
        }
        match first {
            None => {}
            Some(g) if r.iter().all(|s| s.0 == g) => {
                power[g].push(r.iter().map(|s| s.1).sum());
            }
            Some(_) => multi.push(r),
        }
    }
    let mut gens: Vec<usize> = (0..ngen).filter(|&g| involved[g]).collect();
    let free = ngen - gens.len();
    let cand: Vec<Vec<u32>> = (0..ngen)
        .map(|g| {
            if !involved[g] {
                return vec![];
            }
            (0..n)
                .filter(|&x| power[g].iter().all(|&k| e.pow(x, k) == 0))
                .collect()
        })
        .collect();
    // most constrained first; ties keep declaration order
    gens.sort_by_key(|&g| (cand[g].len(), g));
    let pos: Vec<usize> = {
        let mut pos = vec![usize::MAX; ngen];
        for (i, &g) in gens.iter().enumerate() {
            pos[g] = i;
        }
        pos
    };
    let mut checks: Vec<Vec<Word>> = vec![Vec::new(); gens.len()];
    for r in multi {
        let depth = r.iter().map(|s| pos[s.0]).max().unwrap();
        // rewrite onto search positions
        checks[depth].push(r.iter().map(|&(g, k)| (pos[g], k)).collect());
    }
    for c in &mut checks {
        c.sort_by_key(|r| r.len());
    }
    Plan {
        candidates: gens.iter().map(|&g| cand[g].clone()).collect(),
        order: gens,
        checks,
        free,
    }
}

struct Budget<'a> {
    used: &'a AtomicU64,
    limit: u64,
    local: u64,
}

impl Budget<'_> {
    const BATCH: u64 = 4096;

    #[inline]
    fn tick(&mut self) -> bool {
        self.local += 1;
        if self.local == Self::BATCH {
            self.local = 0;
            let before = self.used.fetch_add(Self::BATCH, Ordering::Relaxed);
            return before + Self::BATCH <= self.limit;
        }
        true
    }

    /// Flushes the partial batch; false if the total is over the limit.
    fn finish(&mut self) -> bool {
        let total = self.used.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.local = 0;
        total <= self.limit
    }
}

fn count_from(
    plan: &Plan,
    e: &Enumeration,
    images: &mut Vec<u32>,
    budget: &mut Budget<'_>,
) -> Option<u128> {
    let depth = images.len();
    if depth == plan.order.len() {
        return Some(1);
    }
    let mut total = 0u128;
    for &x in &plan.candidates[depth] {
        if !budget.tick() {
            return None;
        }
        images.push(x);
        if plan.checks[depth].iter().all(|r| evaluate(e, r, images) == 0) {
            total += count_from(plan, e, images, budget)?;
        }
        images.pop();
    }
    Some(total)
}

/// `|Hom(P, H)|` by backtracking over generator images.
pub fn count_homs(p: &Presentation, h: &FiniteGroup) -> Result<HomCountResult> {
    count_homs_with(p, h, SearchOptions::default())
}

pub fn count_homs_with(
    p: &Presentation,
    h: &FiniteGroup,
    opts: SearchOptions,
) -> Result<HomCountResult> {
    let e = h.enumerate()?;
    let plan = plan(p, e);
    let used = AtomicU64::new(0);
    let limit = opts.node_budget;
    let counted: Option<u128> = if plan.order.is_empty() {
        Some(1)
    } else if opts.parallel {
        plan.candidates[0]
            .par_iter()
            .map(|&x| {
                let mut budget = Budget {
                    used: &used,
                    limit,
                    local: 0,
                };
                let mut images = vec![x];
                let c = if plan.checks[0].iter().all(|r| evaluate(e, r, &images) == 0) {
                    count_from(&plan, e, &mut images, &mut budget)
                } else {
                    Some(0)
                };
                c.filter(|_| budget.finish())
            })
            .try_reduce(|| 0, |a, b| Some(a + b))
    } else {
        let mut budget = Budget {
            used: &used,
            limit,
            local: 0,
        };
        count_from(&plan, e, &mut Vec::new(), &mut budget).filter(|_| budget.finish())
    };
    let counted = counted.ok_or(Error::SearchBudgetExceeded { budget: limit })?;
    let order = BigUint::from(e.len());
    let count = BigUint::from(counted) * order.pow(plan.free as u32);
    Ok(HomCountResult::new(count, order))
}

/// `|Hom(C_m, H)|`: the number of elements with `x^m = 1`.
pub fn count_homs_cyclic(m: u64, h: &FiniteGroup) -> Result<HomCountResult> {
    let e = h.enumerate()?;
    let count = (0..e.len() as u32)
        .filter(|&x| m.is_multiple_of(e.element_order(x) as u64))
        .count();
    Ok(HomCountResult::new(count.into(), e.len().into()))
}

/// Counts over a free product as the product of per-factor counts.
pub fn free_product_count(factors: &[Presentation], h: &FiniteGroup) -> Result<HomCountResult> {
    if factors.is_empty() {
        return Err(Error::Invalid("free product needs at least one factor".into()));
    }
    let mut count = BigUint::one();
    let mut order = BigUint::one();
    for f in factors {
        let r = count_homs(f, h)?;
        count *= r.count;
        order = r.target_order;
    }
    Ok(HomCountResult::new(count, order))
}

/// `|Hom(P, H^n)| = |Hom(P, H)|^n`. When `|H|^n` is at most
/// [`POWER_EXPLICIT_LIMIT`] the count is also taken on the explicit power and
/// a mismatch is an error.
pub fn power_target_count(p: &Presentation, h: &FiniteGroup, n: u32) -> Result<HomCountResult> {
    if n == 0 {
        return Err(Error::Invalid("power exponent must be positive".into()));
    }
    let base = count_homs(p, h)?;
    let analytic = HomCountResult::new(base.count.pow(n), base.target_order.pow(n));
    if n > 1 && analytic.target_order <= BigUint::from(POWER_EXPLICIT_LIMIT) {
        let power = FiniteGroup::direct_power(Arc::new(h.clone()), n as usize)?;
        let explicit = count_homs(p, &power)?;
        if explicit != analytic {
            return Err(Error::Verification(format!(
                "count into the explicit power is {} but the base count gives {}",
                explicit.count, analytic.count
            )));
        }
    }
    Ok(analytic)
}

/// Calls `f` on the images of every homomorphism, in search order of
/// generator declaration, until it breaks.
pub fn for_each_hom<F>(p: &Presentation, h: &FiniteGroup, budget: u64, mut f: F) -> Result<()>
where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    let e = h.enumerate()?;
    let plan = plan(p, e);
    let used = AtomicU64::new(0);
    let mut budget = Budget {
        used: &used,
        limit: budget,
        local: 0,
    };
    let ngen = p.num_generators();
    // free generators range over all of H
    let free: Vec<usize> = (0..ngen).filter(|g| !plan.order.contains(g)).collect();
    let mut images = Vec::new();
    let mut full = vec![0u32; ngen];
    let mut stop = false;
    let ok = walk(&plan, e, &mut images, &mut budget, &mut |imgs| {
        for (i, &g) in plan.order.iter().enumerate() {
            full[g] = imgs[i];
        }
        let mut ctr = vec![0u32; free.len()];
        loop {
            for (i, &g) in free.iter().enumerate() {
                full[g] = ctr[i];
            }
            if f(&full).is_break() {
                stop = true;
                return ControlFlow::Break(());
            }
            let mut i = 0;
            loop {
                if i == free.len() {
                    return ControlFlow::Continue(());
                }
                ctr[i] += 1;
                if (ctr[i] as usize) < e.len() {
                    break;
                }
                ctr[i] = 0;
                i += 1;
            }
        }
    });
    if !ok && !stop {
        return Err(Error::SearchBudgetExceeded {
            budget: budget.limit,
        });
    }
    Ok(())
}

/// Returns false on budget exhaustion or when the visitor breaks.
fn walk(
    plan: &Plan,
    e: &Enumeration,
    images: &mut Vec<u32>,
    budget: &mut Budget<'_>,
    visit: &mut dyn FnMut(&[u32]) -> ControlFlow<()>,
) -> bool {
    let depth = images.len();
    if depth == plan.order.len() {
        return visit(images).is_continue();
    }
    for &x in &plan.candidates[depth] {
        budget.local += 1;
        if budget.local > budget.limit {
            return false;
        }
        images.push(x);
        if plan.checks[depth].iter().all(|r| evaluate(e, r, images) == 0)
            && !walk(plan, e, images, budget, visit)
        {
            return false;
        }
        images.pop();
    }
    true
}

/// All homomorphisms, as image lists indexed by generator.
pub fn all_homs(p: &Presentation, h: &FiniteGroup, budget: u64) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for_each_hom(p, h, budget, |imgs| {
        out.push(imgs.to_vec());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// `G(Γ, H)` realized inside a power of `H`.
#[derive(Clone, Debug)]
pub struct WitnessQuotient {
    pub group: FiniteGroup,
    pub hom_count_used: usize,
    pub hom_count_total: usize,
    pub source: Presentation,
}

/// Builds `G(Γ, H)` for `Γ` the free product of `factors`: each generator of
/// `Γ` maps to the tuple of its images under the homomorphisms used. When there
/// are more homomorphisms than `width_cap`, homomorphisms that do not shrink
/// the common kernel are dropped.
pub fn witness_quotient(
    factors: &[Presentation],
    h: &FiniteGroup,
    width_cap: usize,
) -> Result<WitnessQuotient> {
    let source = Presentation::free_product(factors);
    let homs = all_homs(&source, h, DEFAULT_NODE_BUDGET)?;
    let total = homs.len();
    let base = Arc::new(h.clone());
    let build = |used: &[Vec<u32>]| -> Result<FiniteGroup> {
        let gens = (0..source.num_generators())
            .map(|g| used.iter().map(|phi| phi[g]).collect())
            .collect();
        Ok(FiniteGroup::tuples(base.clone(), used.len(), gens)?
            .with_cap(h.cap())
            .with_name(format!("G({}, {})", source.name(), h.name())))
    };
    let chosen: Vec<Vec<u32>> = if total <= width_cap {
        homs
    } else {
        let mut kept: Vec<Vec<u32>> = Vec::new();
        let mut order = 1usize;
        for phi in homs {
            if phi.iter().all(|&x| x == 0) {
                continue;
            }
            kept.push(phi);
            let grown = build(&kept)?.order_usize()?;
            if grown > order {
                order = grown;
            } else {
                kept.pop();
            }
        }
        if kept.is_empty() {
            kept.push(vec![0; source.num_generators()]);
        }
        if kept.len() > width_cap {
            return Err(Error::WidthCapExceeded {
                cap: width_cap,
                homs: kept.len(),
            });
        }
        kept
    };
    let group = build(&chosen)?;
    group.enumerate()?;
    Ok(WitnessQuotient {
        group,
        hom_count_used: chosen.len(),
        hom_count_total: total,
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    #[test]
    fn basic_counts() {
        let s4 = library::symmetric(4);
        assert_eq!(count_homs(&Presentation::cyclic(1), &s4).unwrap().count, 1u32.into());
        assert_eq!(count_homs(&Presentation::cyclic(2), &s4).unwrap().count, 10u32.into());
        assert_eq!(count_homs(&Presentation::cyclic(3), &s4).unwrap().count, 9u32.into());
        assert_eq!(count_homs(&Presentation::free(2), &s4).unwrap().count, 576u32.into());
        assert_eq!(count_homs_cyclic(3, &s4).unwrap().count, 9u32.into());
        assert_eq!(count_homs_cyclic(1, &s4).unwrap().count, 1u32.into());
    }

    #[test]
    fn a5_self_count() {
        let a5 = library::alternating(5);
        let r = count_homs(&Presentation::alternating5(), &a5).unwrap();
        assert_eq!(r.count, 121u32.into());
        assert!((r.h() - 1.1713).abs() < 1e-3);
    }

    #[test]
    fn sequential_matches_parallel() {
        let a5 = library::alternating(5);
        let p = Presentation::alternating5();
        let seq = count_homs_with(
            &p,
            &a5,
            SearchOptions {
                parallel: false,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(seq, count_homs(&p, &a5).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let s5 = library::symmetric(5);
        let r = count_homs_with(
            &Presentation::free_product(&[Presentation::cyclic(2), Presentation::cyclic(3)]),
            &s5,
            SearchOptions {
                node_budget: 10,
                parallel: false,
            },
        );
        assert_eq!(r, Err(Error::SearchBudgetExceeded { budget: 10 }));
    }

    #[test]
    fn enumerated_homs_match_count() {
        let s3 = library::symmetric(3);
        let p = Presentation::free_product(&[Presentation::cyclic(2), Presentation::cyclic(3)]);
        let homs = all_homs(&p, &s3, 1_000_000).unwrap();
        assert_eq!(homs.len(), 12);
        let e = s3.enumerate().unwrap();
        assert!(homs.iter().all(|phi| p.satisfied_by(e, phi)));
        let free = all_homs(&Presentation::free(1), &s3, 1000).unwrap();
        assert_eq!(free.len(), 6);
    }

    #[test]
    fn witness_of_c2_into_c2() {
        let w = witness_quotient(&[Presentation::cyclic(2)], &library::cyclic(2), 16).unwrap();
        assert_eq!(w.group.order_usize().unwrap(), 2);
        let w = witness_quotient(&[Presentation::cyclic(6)], &library::cyclic(2), 16).unwrap();
        assert_eq!(w.group.order_usize().unwrap(), 2);
    }

    #[test]
    fn witness_dedup_keeps_the_kernel() {
        let s3 = library::symmetric(3);
        let factors = [Presentation::cyclic(2), Presentation::cyclic(3)];
        let full = witness_quotient(&factors, &s3, 64).unwrap();
        let small = witness_quotient(&factors, &s3, 4).unwrap();
        assert_eq!(
            full.group.order_usize().unwrap(),
            small.group.order_usize().unwrap()
        );
        assert!(small.hom_count_used <= 4);
    }

    #[test]
    fn ln_of_large_integers() {
        let x = BigUint::from(10u32).pow(400);
        assert!((ln_big(&x) - 400.0 * 10f64.ln()).abs() < 1e-9);
    }
}
