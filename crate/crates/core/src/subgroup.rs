//! Subgroups of enumerated groups and the computations built on them:
//! derived subgroups, quotients, abelian invariants, `O_p`, and minimal
//! generating sets.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::{CayleyTable, Elem, Enumeration, FiniteGroup};
use crate::numtheory::{is_prime, prime_factors};

/// A subgroup of an enumerated parent, stored as a membership mask.
#[derive(Clone, Debug)]
pub struct Subgroup<'a> {
    parent: &'a FiniteGroup,
    gens: Vec<u32>,
    members: Vec<u32>,
    mask: Vec<bool>,
}

fn close(e: &Enumeration, gens: &[u32]) -> (Vec<u32>, Vec<bool>) {
    let mut mask = vec![false; e.len()];
    mask[0] = true;
    let mut members = vec![0u32];
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for &g in gens {
            let y = e.mul(x, g);
            if !mask[y as usize] {
                mask[y as usize] = true;
                members.push(y);
            }
        }
        i += 1;
    }
    members.sort_unstable();
    (members, mask)
}

impl<'a> Subgroup<'a> {
    /// Subgroup generated by element indices of `parent`.
    pub fn generated(parent: &'a FiniteGroup, gens: &[u32]) -> Result<Self> {
        let e = parent.enumerate()?;
        let gens: Vec<u32> = gens.iter().copied().filter(|&g| g != 0).collect();
        let (members, mask) = close(e, &gens);
        debug_assert_eq!(e.len() % members.len(), 0);
        Ok(Subgroup {
            parent,
            gens,
            members,
            mask,
        })
    }

    pub fn trivial(parent: &'a FiniteGroup) -> Result<Self> {
        Self::generated(parent, &[])
    }

    pub fn whole(parent: &'a FiniteGroup) -> Result<Self> {
        let gens = parent.generator_indices()?;
        Self::generated(parent, &gens)
    }

    pub fn parent(&self) -> &'a FiniteGroup {
        self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.mask.len() / self.members.len()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn contains(&self, x: u32) -> bool {
        self.mask[x as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.mask.len()
    }

    /// Closed, contains the identity, and its order divides the parent's.
    pub fn is_valid_subgroup(&self) -> bool {
        let e = self.parent.enumerate().expect("parent is enumerated");
        self.mask[0]
            && self.mask.len().is_multiple_of(self.members.len())
            && self
                .members
                .iter()
                .all(|&a| self.gens.iter().all(|&b| self.mask[e.mul(a, b) as usize]))
    }

    pub fn is_normal(&self) -> bool {
        let e = self.parent.enumerate().expect("parent is enumerated");
        let pg = self.parent.generator_indices().expect("parent is enumerated");
        self.gens
            .iter()
            .all(|&h| pg.iter().all(|&g| self.mask[e.conjugate(h, g) as usize]))
    }

    /// Adds one generator and re-closes.
    pub fn extend(&mut self, x: u32) {
        if self.contains(x) {
            return;
        }
        self.gens.push(x);
        let e = self.parent.enumerate().expect("parent is enumerated");
        let (members, mask) = close(e, &self.gens);
        self.members = members;
        self.mask = mask;
    }

    pub fn intersection(&self, other: &Subgroup<'a>) -> Subgroup<'a> {
        let members: Vec<u32> = self
            .members
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        let mut sub = Subgroup::trivial(self.parent).expect("parent is enumerated");
        for &x in &members {
            sub.extend(x);
        }
        sub
    }

    /// The subgroup as a group in its own right, sharing the realization.
    pub fn to_group(&self, name: impl Into<String>) -> FiniteGroup {
        let e = self.parent.enumerate().expect("parent is enumerated");
        let gens: Vec<Elem> = self.gens.iter().map(|&g| e.element(g).into()).collect();
        self.parent.with_generators(gens, name.into())
    }
}

/// Smallest normal subgroup containing the given elements.
pub fn normal_closure<'a>(g: &'a FiniteGroup, elems: &[u32]) -> Result<Subgroup<'a>> {
    let e = g.enumerate()?;
    let pg = g.generator_indices()?;
    let mut sub = Subgroup::trivial(g)?;
    let mut queue: Vec<u32> = elems.to_vec();
    while let Some(x) = queue.pop() {
        if sub.contains(x) {
            continue;
        }
        sub.extend(x);
        for &h in &pg {
            queue.push(e.conjugate(x, h));
        }
    }
    Ok(sub)
}

/// `G' = <[x, y]>`, the normal closure of the generator commutators.
pub fn derived_subgroup(g: &FiniteGroup) -> Result<Subgroup<'_>> {
    let e = g.enumerate()?;
    let pg = g.generator_indices()?;
    let mut comms = Vec::new();
    for (i, &a) in pg.iter().enumerate() {
        for &b in &pg[i + 1..] {
            comms.push(e.commutator(a, b));
        }
    }
    normal_closure(g, &comms)
}

/// `G / N` as a Cayley table on cosets; coset 0 is `N`.
pub fn quotient(g: &FiniteGroup, n: &Subgroup<'_>) -> Result<FiniteGroup> {
    if !n.is_normal() {
        return Err(Error::Invalid("quotient by a non-normal subgroup".into()));
    }
    let e = g.enumerate()?;
    let mut label = vec![u32::MAX; e.len()];
    let mut reps = Vec::new();
    for x in 0..e.len() as u32 {
        if label[x as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &m in n.members() {
            label[e.mul(x, m) as usize] = c;
        }
    }
    let q = reps.len();
    let mut table = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            table.push(label[e.mul(a, b) as usize]);
        }
    }
    let table = CayleyTable::from_flat(q, table)?;
    let gens = g
        .generator_indices()?
        .into_iter()
        .map(|x| label[x as usize])
        .collect();
    Ok(FiniteGroup::cayley_with_generators(table, gens)
        .with_name(format!("({}) / N{}", g.name(), n.order())))
}

pub fn abelianization(g: &FiniteGroup) -> Result<FiniteGroup> {
    let d = derived_subgroup(g)?;
    quotient(g, &d)
}

/// Invariant factors `d1 | d2 | ...` of an abelian group; empty for the
/// trivial group.
pub fn abelian_invariants(g: &FiniteGroup) -> Result<Vec<u64>> {
    let e = g.enumerate()?;
    let pg = g.generator_indices()?;
    for (i, &a) in pg.iter().enumerate() {
        for &b in &pg[i + 1..] {
            if e.mul(a, b) != e.mul(b, a) {
                return Err(Error::NotAbelian);
            }
        }
    }
    let n = e.len() as u64;
    // exponents of the elementary divisors, per prime, descending
    let mut per_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for p in prime_factors(n) {
        let mut full = 0u32;
        let mut m = n;
        while m.is_multiple_of(p) {
            m /= p;
            full += 1;
        }
        // at_least[k-1] = number of cyclic factors of exponent >= k
        let mut at_least = Vec::new();
        let mut prev = 0u32;
        let mut pk = 1i64;
        while prev < full {
            pk *= p as i64;
            let count = (0..e.len() as u32).filter(|&x| e.pow(x, pk) == 0).count() as u64;
            let mut log = 0u32;
            let mut c = count;
            while c > 1 {
                c /= p;
                log += 1;
            }
            at_least.push(log - prev);
            prev = log;
        }
        let mut exps = Vec::new();
        for k in 0..at_least.len() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(at_least[k] - next) {
                exps.push(k as u32 + 1);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.insert(p, exps);
    }
    let rank = per_prime.values().map(|v| v.len()).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..rank)
        .map(|i| {
            per_prime
                .iter()
                .map(|(&p, exps)| exps.get(i).map_or(1, |&k| p.pow(k)))
                .product()
        })
        .collect();
    factors.reverse();
    Ok(factors)
}

/// Elements `g` with `g^-1 H g = H`.
pub fn normalizer<'a>(g: &'a FiniteGroup, h: &Subgroup<'a>) -> Result<Subgroup<'a>> {
    let e = g.enumerate()?;
    let mut sub = Subgroup::trivial(g)?;
    for x in 0..e.len() as u32 {
        if sub.contains(x) {
            continue;
        }
        if h.generators().iter().all(|&y| h.contains(e.conjugate(y, x))) {
            sub.extend(x);
        }
    }
    Ok(sub)
}

/// `∩_g g^-1 H g`.
pub fn core<'a>(g: &'a FiniteGroup, h: &Subgroup<'a>) -> Result<Subgroup<'a>> {
    let e = g.enumerate()?;
    let mut keep: Vec<u32> = h.members().to_vec();
    for x in 0..e.len() as u32 {
        keep.retain(|&y| h.contains(e.conjugate(y, x)));
        if keep.len() == 1 {
            break;
        }
    }
    let mut sub = Subgroup::trivial(g)?;
    for y in keep {
        sub.extend(y);
    }
    Ok(sub)
}

/// A Sylow `p`-subgroup, grown from the trivial group by repeatedly adjoining
/// the first normalizer element of order `p` modulo the current subgroup.
pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> Result<Subgroup<'_>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let e = g.enumerate()?;
    let mut target = 1usize;
    let mut n = e.len();
    while n % p as usize == 0 {
        n /= p as usize;
        target *= p as usize;
    }
    let mut sylow = Subgroup::trivial(g)?;
    while sylow.order() < target {
        let norm = normalizer(g, &sylow)?;
        let x = norm
            .members()
            .iter()
            .copied()
            .find(|&x| !sylow.contains(x) && sylow.contains(e.pow(x, p as i64)))
            .expect("Cauchy: a non-Sylow p-subgroup has p | [N(P):P]");
        sylow.extend(x);
    }
    Ok(sylow)
}

/// `O_p(G)`, the core of a Sylow `p`-subgroup.
pub fn largest_normal_p_subgroup(g: &FiniteGroup, p: u64) -> Result<Subgroup<'_>> {
    let sylow = sylow_subgroup(g, p)?;
    core(g, &sylow)
}

/// Conjugacy-class representatives (least index in each class).
pub fn class_representatives(g: &FiniteGroup) -> Result<Vec<u32>> {
    let e = g.enumerate()?;
    let pg = g.generator_indices()?;
    let mut seen = vec![false; e.len()];
    let mut reps = Vec::new();
    for x in 0..e.len() as u32 {
        if seen[x as usize] {
            continue;
        }
        reps.push(x);
        seen[x as usize] = true;
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for &h in &pg {
                let z = e.conjugate(y, h);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    stack.push(z);
                }
            }
        }
    }
    Ok(reps)
}

/// Result of [`d_min_generators`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorWitness {
    pub d: usize,
    /// Element indices of a generating tuple of length `d`.
    pub witness: Vec<u32>,
}

pub const DEFAULT_GENERATOR_BUDGET: u64 = 2_000_000;

/// Smallest `d` such that some `d`-tuple generates `G`. The first entry
/// ranges over conjugacy-class representatives, later entries over
/// increasing indices outside the span so far. Exceeding `budget` closure
/// tests yields the `d` reached so far as a lower bound.
pub fn d_min_generators(g: &FiniteGroup, budget: u64) -> Result<GeneratorWitness> {
    let e = g.enumerate()?;
    let n = e.len();
    if n == 1 {
        return Ok(GeneratorWitness {
            d: 0,
            witness: vec![],
        });
    }
    if let Some(x) = (0..n as u32).find(|&x| e.element_order(x) as usize == n) {
        return Ok(GeneratorWitness {
            d: 1,
            witness: vec![x],
        });
    }
    let reps: Vec<u32> = class_representatives(g)?.into_iter().filter(|&x| x != 0).collect();
    let mut spent = 0u64;
    let mut d = 2;
    loop {
        for &first in &reps {
            let mut tuple = vec![first];
            let start = Subgroup::generated(g, &[first])?;
            match search(e, &start, &mut tuple, d, 1, &mut spent, budget) {
                Some(true) => {
                    return Ok(GeneratorWitness { d, witness: tuple });
                }
                Some(false) => {}
                None => return Err(Error::GeneratorBudgetExceeded { lower_bound: d }),
            }
        }
        d += 1;
    }
}

fn search(
    e: &Enumeration,
    span: &Subgroup<'_>,
    tuple: &mut Vec<u32>,
    d: usize,
    min_next: u32,
    spent: &mut u64,
    budget: u64,
) -> Option<bool> {
    if tuple.len() == d {
        return Some(span.is_whole());
    }
    for x in min_next..e.len() as u32 {
        if span.contains(x) {
            continue;
        }
        *spent += 1;
        if *spent > budget {
            return None;
        }
        let mut next = span.clone();
        next.extend(x);
        tuple.push(x);
        if next.is_whole() && tuple.len() == d {
            return Some(true);
        }
        if tuple.len() < d
            && search(e, &next, tuple, d, x + 1, spent, budget)? {
                return Some(true);
            }
        tuple.pop();
    }
    Some(false)
}

/// Second derived subgroup is trivial.
pub fn is_metabelian(g: &FiniteGroup) -> Result<bool> {
    let d1 = derived_subgroup(g)?.to_group("G'");
    let d2 = derived_subgroup(&d1)?;
    Ok(d2.is_trivial())
}
