//! Free products of `n` groups with `d(Γ̂) > n`: each factor is
//! `(⊕_j F_{q_j}) ⋊ C_{p_i}` embedded in `Sym(k)` with trivial centralizer.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bounds::{BoundCertificate, Comparison, FactorContribution, ProofKind, Relation, Target};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::numtheory::{
    common_subset_sum, crt_solve, first_odd_primes, is_prime, pow_mod, primes_in_progression,
    primitive_root,
};
use crate::perm::Permutation;
use crate::permgroup::{centralizer_order_transitive_gens, derived_subgroup_chain, orbits_of, restrict_to_block, StabChain};

pub const DEFAULT_SIEVE_BOUND: u64 = 2000;
pub const DEFAULT_SUM_CAP: u64 = 10_000;
/// Groups up to this order are also checked by enumeration.
pub const ENUMERATION_LIMIT: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Claim {
    fn new(name: &str, holds: bool, detail: impl Into<String>) -> Self {
        Claim {
            name: name.to_string(),
            holds,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Theorem4Factor {
    pub p: u64,
    /// Block sizes `q_{i,j}`, increasing; they sum to `k`.
    pub blocks: Vec<u64>,
    /// Multiplier of order `p` used on each block.
    pub units: Vec<u64>,
    pub group: FiniteGroup,
    /// Translation generators, one per block.
    pub translations: Vec<Permutation>,
    pub multiplier: Permutation,
    pub order: BigUint,
    pub claims: Vec<Claim>,
}

#[derive(Clone, Debug)]
pub struct Theorem4Instance {
    pub n: usize,
    pub primes: Vec<u64>,
    pub d: u64,
    pub residues: Vec<u64>,
    pub sieve_bound: u64,
    pub sets: Vec<Vec<u64>>,
    pub k: u64,
    pub factors: Vec<Theorem4Factor>,
    /// Claims about the whole family.
    pub claims: Vec<Claim>,
    pub certificate: BoundCertificate,
}

impl Theorem4Instance {
    pub fn all_claims(&self) -> impl Iterator<Item = &Claim> {
        self.claims
            .iter()
            .chain(self.factors.iter().flat_map(|f| f.claims.iter()))
    }
}

fn block_perm(k: usize, blocks: &[u64], f: impl Fn(usize, u64, u64) -> u64) -> Permutation {
    let mut images = Vec::with_capacity(k);
    for (j, &q) in blocks.iter().enumerate() {
        let off = images.len() as u64;
        for x in 0..q {
            images.push((off + f(j, q, x)) as u32);
        }
    }
    Permutation::from_images(images).expect("affine maps are bijections")
}

/// `x -> x + c_j` on every block.
fn is_translation(g: &Permutation, blocks: &[u64]) -> bool {
    let mut off = 0usize;
    for &q in blocks {
        let q = q as usize;
        let c = (g.apply(off) + q - off) % q;
        if (0..q).any(|x| g.apply(off + x) != off + (x + c) % q) {
            return false;
        }
        off += q;
    }
    true
}

fn build_factor(p: u64, blocks: Vec<u64>, k: usize) -> Result<Theorem4Factor> {
    let units = blocks
        .iter()
        .map(|&q| Ok(pow_mod(primitive_root(q)?, (q - 1) / p, q)))
        .collect::<Result<Vec<u64>>>()?;
    let translations: Vec<Permutation> = (0..blocks.len())
        .map(|b| block_perm(k, &blocks, |j, q, x| if j == b { (x + 1) % q } else { x }))
        .collect();
    let multiplier = block_perm(k, &blocks, |j, q, x| x * units[j] % q);
    let mut gens = translations.clone();
    gens.push(multiplier.clone());
    let group = FiniteGroup::perm(k, gens)?.with_name(format!(
        "(+ F_q, q in {:?}) : C{p}",
        blocks
    ));
    let order = group.order()?;
    Ok(Theorem4Factor {
        p,
        blocks,
        units,
        group,
        translations,
        multiplier,
        order,
        claims: vec![],
    })
}

fn verify_factor(f: &mut Theorem4Factor, set: &[u64], k: u64) -> Result<()> {
    let mut claims = Vec::new();
    let p = f.p;
    let q_prod: BigUint = f.blocks.iter().map(|&q| BigUint::from(q)).product();
    let expected = &q_prod * p;

    let sum: u64 = f.blocks.iter().sum();
    let distinct = f.blocks.windows(2).all(|w| w[0] < w[1]);
    let members = f
        .blocks
        .iter()
        .all(|q| is_prime(*q) && set.contains(q) && (q - 1) % p == 0);
    claims.push(Claim::new(
        "decomposition",
        sum == k && distinct && members,
        format!(
            "sum {sum} (k = {k}); distinct: {distinct}; prime, in S and = 1 mod {p}: {members}"
        ),
    ));
    claims.push(Claim::new(
        "order",
        f.order == expected,
        format!("|G| = {} (expected p * prod q = {expected})", f.order),
    ));
    claims.push(Claim::new(
        "units",
        f.units
            .iter()
            .zip(&f.blocks)
            .all(|(&u, &q)| u != 1 && pow_mod(u, p, q) == 1),
        format!("multipliers {:?} have order {p}", f.units),
    ));

    // G' = V: G' is generated by translations (so G' <= V) and |G'| = |V|.
    let (chain, dgens) = derived_subgroup_chain(&f.group)?;
    let all_translations = dgens.iter().all(|g| is_translation(g, &f.blocks));
    let derived_order = chain.order();
    claims.push(Claim::new(
        "derived-subgroup",
        all_translations && derived_order == q_prod,
        format!(
            "|G'| = {derived_order}, |V| = {q_prod}; generators are translations: {all_translations}"
        ),
    ));
    let quotient = if derived_order.is_one() {
        f.order.clone()
    } else {
        &f.order / &derived_order
    };
    claims.push(Claim::new(
        "cyclic-abelianization",
        quotient == BigUint::from(p) && &derived_order * p == f.order,
        format!("|G/G'| = {quotient}, a prime, so G/G' is cyclic of order {p}"),
    ));

    // d(G) = 2: <a, b> = G with a the product of the translations, and G is
    // not cyclic.
    let a = f
        .translations
        .iter()
        .try_fold(Permutation::identity(k as usize), |acc, t| acc.compose(t))?;
    let b = f.multiplier.clone();
    let pair = StabChain::new(k as usize, &[a.clone(), b.clone()]);
    let generates = pair.order() == f.order;
    let (noncyclic, how) = if f.order <= BigUint::from(ENUMERATION_LIMIT) {
        let e = f.group.enumerate()?;
        let n = e.len() as u32;
        let none_full = (0..n).all(|x| e.element_order(x) != n);
        (none_full, "no element has order |G| (order scan)")
    } else {
        let ab = a.compose(&b)?;
        let ba = b.compose(&a)?;
        (ab != ba, "the generating pair does not commute, so G is not cyclic")
    };
    claims.push(Claim::new(
        "two-generated",
        generates && noncyclic,
        format!("<a, b> has order {}; {how}: {noncyclic}", pair.order()),
    ));

    // Trivial centralizer: the orbits are the blocks, of distinct prime sizes,
    // and each block's action has trivial centralizer.
    let gens = f.group.perm_generators().unwrap();
    let orbits = orbits_of(k as usize, &gens);
    let mut sizes: Vec<u64> = orbits.iter().map(|o| o.len() as u64).collect();
    sizes.sort_unstable();
    let blocks_ok = sizes == f.blocks;
    let mut per_block = Vec::new();
    for orbit in &orbits {
        let local = restrict_to_block(&gens, orbit)?;
        per_block.push(centralizer_order_transitive_gens(orbit.len(), &local)?);
    }
    claims.push(Claim::new(
        "trivial-centralizer",
        blocks_ok && per_block.iter().all(|&c| c == 1),
        format!("orbit sizes {sizes:?}; per-orbit centralizer orders {per_block:?}"),
    ));
    f.claims = claims;
    Ok(())
}

/// The full construction for `n` factors. Any failed claim is an error
/// naming the claim.
pub fn theorem4_construct(n: usize, sieve_bound: u64, sum_cap: u64) -> Result<Theorem4Instance> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    let primes = first_odd_primes(n);
    let d = primes
        .iter()
        .try_fold(1u64, |acc, &p| acc.checked_mul(p))
        .ok_or_else(|| Error::Overflow("product of the first odd primes".into()))?;
    let residues = (0..n)
        .map(|i| {
            let r: Vec<u64> = (0..n).map(|j| if i == j { 1 } else { 2 }).collect();
            crt_solve(&r, &primes)
        })
        .collect::<Result<Vec<u64>>>()?;
    let sets: Vec<Vec<u64>> = residues
        .par_iter()
        .map(|&m| primes_in_progression(m % d, d, sieve_bound))
        .collect();
    let common = common_subset_sum(&sets, sum_cap)?.ok_or_else(|| {
        Error::NotFound(format!(
            "no common sum of distinct elements up to {sum_cap} with sieve bound {sieve_bound}"
        ))
    })?;
    let k = common.k;

    let mut factors = primes
        .par_iter()
        .zip(common.decompositions.par_iter())
        .map(|(&p, blocks)| build_factor(p, blocks.clone(), k as usize))
        .collect::<Result<Vec<_>>>()?;
    factors
        .par_iter_mut()
        .zip(sets.par_iter())
        .try_for_each(|(f, set)| verify_factor(f, set, k))?;

    let mut claims = Vec::new();
    let congruences = residues.iter().enumerate().all(|(i, &m)| {
        primes
            .iter()
            .enumerate()
            .all(|(j, &p)| m % p == if i == j { 1 } else { 2 % p })
    });
    claims.push(Claim::new(
        "residues",
        congruences && residues.iter().all(|&m| (1..=d).contains(&m)),
        format!("m = {residues:?} modulo D = {d}"),
    ));
    let disjoint = sets
        .iter()
        .enumerate()
        .all(|(i, a)| sets[i + 1..].iter().all(|b| a.iter().all(|x| !b.contains(x))));
    claims.push(Claim::new("disjoint-sets", disjoint, "the sets S_i are pairwise disjoint"));
    let coprime = factors.iter().enumerate().all(|(i, a)| {
        factors[i + 1..]
            .iter()
            .all(|b| a.order.gcd(&b.order).is_one())
    });
    claims.push(Claim::new(
        "coprime-orders",
        coprime,
        format!(
            "orders {:?}",
            factors.iter().map(|f| f.order.to_string()).collect::<Vec<_>>()
        ),
    ));

    let failed: Vec<String> = claims
        .iter()
        .chain(factors.iter().flat_map(|f| f.claims.iter()))
        .filter(|c| !c.holds)
        .map(|c| format!("{} ({})", c.name, c.detail))
        .collect();
    if !failed.is_empty() {
        return Err(Error::Verification(format!("claims failed: {}", failed.join("; "))));
    }

    let k_factorial: BigUint = (1..=k).map(BigUint::from).product();
    let per_factor: Vec<FactorContribution> = factors
        .iter()
        .map(|f| FactorContribution::symbolic(f.group.name(), 2, &k_factorial))
        .collect();
    let total_h = per_factor.iter().map(|f| f.h).sum();
    let mut certificate = BoundCertificate {
        factors: per_factor.iter().map(|f| f.factor.clone()).collect(),
        target: Target {
            name: format!("Sym({k})"),
            order: k_factorial.clone(),
        },
        per_factor,
        total_h,
        comparison: Comparison {
            lhs: &k_factorial + 1u32,
            rhs: k_factorial,
            relation: Relation::Greater,
        },
        conclusion: n as u64 + 1,
        proof_kind: ProofKind::SymbolicStrict,
        formula: None,
        conditional: false,
        notes: vec![
            "each factor embeds in Sym(k) with trivial centralizer, so its k! conjugate embeddings and the trivial map give at least k! + 1 homomorphisms".into(),
        ],
        construction: Default::default(),
        generated_at: None,
    };
    let strs = |v: &[u64]| json!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    let c = &mut certificate.construction;
    c.insert("kind".into(), json!("theorem4"));
    c.insert("n".into(), json!(n.to_string()));
    c.insert("primes".into(), strs(&primes));
    c.insert("D".into(), json!(d.to_string()));
    c.insert("m".into(), strs(&residues));
    c.insert("k".into(), json!(k.to_string()));
    c.insert("sieve_bound".into(), json!(sieve_bound.to_string()));
    c.insert(
        "q".into(),
        json!(factors.iter().map(|f| strs(&f.blocks)).collect::<Vec<_>>()),
    );
    c.insert(
        "orders".into(),
        json!(factors.iter().map(|f| f.order.to_string()).collect::<Vec<_>>()),
    );

    Ok(Theorem4Instance {
        n,
        primes,
        d,
        residues,
        sieve_bound,
        sets,
        k,
        factors,
        claims,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::verify_certificate;
    use crate::subgroup::{d_min_generators, derived_subgroup};

    #[test]
    fn n_equals_one() {
        let inst = theorem4_construct(1, DEFAULT_SIEVE_BOUND, DEFAULT_SUM_CAP).unwrap();
        assert_eq!(inst.residues, vec![1]);
        assert_eq!(inst.k, 7);
        assert_eq!(inst.factors[0].blocks, vec![7]);
        assert_eq!(inst.factors[0].order, 21u32.into());
        assert_eq!(inst.certificate.conclusion, 2);
        assert!(inst.all_claims().all(|c| c.holds));
        verify_certificate(&inst.certificate).unwrap();

        let g = &inst.factors[0].group;
        assert_eq!(d_min_generators(g, 10_000).unwrap().d, 2);
        assert_eq!(derived_subgroup(g).unwrap().order(), 7);
    }

    #[test]
    fn translations_are_recognized() {
        let blocks = [3u64, 5];
        let t = block_perm(8, &blocks, |j, q, x| (x + j as u64 + 1) % q);
        assert!(is_translation(&t, &blocks));
        let m = block_perm(8, &blocks, |_, q, x| x * 2 % q);
        assert!(!is_translation(&m, &blocks));
    }
}
