//! Algorithms that work on permutation generators directly, without
//! enumerating the group: orbits, point stabilizers, stabilizer chains
//! and the centralizer-order criterion for transitive groups.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Realization};
use crate::perm::{compose_images, invert_images, Permutation};

/// Orbit partition of `0..degree`, each block sorted, blocks ordered by
/// their smallest point.
pub fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut block = vec![usize::MAX; degree];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..degree {
        if block[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        block[start] = id;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in gens {
                let y = g.apply(x);
                if block[y] == usize::MAX {
                    block[y] = id;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Orbits of a permutation group.
pub fn orbits(g: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
    let (degree, gens) = perm_parts(g)?;
    Ok(orbits_of(degree, &gens))
}

fn perm_parts(g: &FiniteGroup) -> Result<(usize, Vec<Permutation>)> {
    match g.realization() {
        Realization::Perm { degree } => Ok((*degree, g.perm_generators().unwrap())),
        other => Err(Error::Invalid(format!(
            "expected a permutation group, got a {} realization",
            other.kind()
        ))),
    }
}

/// Schreier generators of the stabilizer of `point`, identity removed.
pub fn stabilizer_generators(degree: usize, gens: &[Permutation], point: usize) -> Vec<Permutation> {
    let mut transversal: Vec<Option<Vec<u32>>> = vec![None; degree];
    transversal[point] = Some((0..degree as u32).collect());
    let mut orbit = vec![point];
    let mut i = 0;
    while i < orbit.len() {
        let x = orbit[i];
        let tx = transversal[x].clone().unwrap();
        for g in gens {
            let y = g.apply(x);
            if transversal[y].is_none() {
                transversal[y] = Some(compose_images(g.images(), &tx));
                orbit.push(y);
            }
        }
        i += 1;
    }
    let mut out: Vec<Permutation> = Vec::new();
    for &x in &orbit {
        let tx = transversal[x].as_ref().unwrap();
        for g in gens {
            let y = g.apply(x);
            let ty_inv = invert_images(transversal[y].as_ref().unwrap());
            let s = compose_images(&ty_inv, &compose_images(g.images(), tx));
            let s = Permutation::from_images(s).unwrap();
            if !s.is_identity() && !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

/// Order of the centralizer of a transitive group `G` in the full symmetric
/// group on its points: the number of points fixed by a point stabilizer.
pub fn centralizer_order_transitive(g: &FiniteGroup) -> Result<u64> {
    let (degree, gens) = perm_parts(g)?;
    centralizer_order_transitive_gens(degree, &gens)
}

pub fn centralizer_order_transitive_gens(degree: usize, gens: &[Permutation]) -> Result<u64> {
    if degree == 0 {
        return Ok(1);
    }
    let orbs = orbits_of(degree, gens);
    if orbs.len() != 1 {
        return Err(Error::NotTransitive { orbits: orbs.len() });
    }
    let stab = stabilizer_generators(degree, gens, 0);
    Ok((0..degree).filter(|&x| stab.iter().all(|s| s.fixes(x))).count() as u64)
}

/// Restriction of the generators to an invariant block, relabelled `0..len`.
pub fn restrict_to_block(gens: &[Permutation], block: &[usize]) -> Result<Vec<Permutation>> {
    let degree = gens.first().map(|g| g.degree()).unwrap_or(0);
    let mut pos = vec![u32::MAX; degree];
    for (i, &x) in block.iter().enumerate() {
        pos[x] = i as u32;
    }
    gens.iter()
        .map(|g| {
            let images = block
                .iter()
                .map(|&x| {
                    let y = pos[g.apply(x)];
                    if y == u32::MAX {
                        Err(Error::Invalid("block is not invariant".into()))
                    } else {
                        Ok(y)
                    }
                })
                .collect::<Result<Vec<u32>>>()?;
            Permutation::from_images(images)
        })
        .collect()
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Vec<u32>>,
    transversal: Vec<Option<Vec<u32>>>,
    orbit: Vec<usize>,
}

/// Base and strong generating set built by incremental Schreier-Sims.
/// Used for orders and membership of permutation groups too large to
/// enumerate.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            chain.insert(g.images());
        }
        chain
    }

    /// Adds `g` to the group if it is not already a member.
    pub fn insert(&mut self, g: &[u32]) -> bool {
        let (r, _) = self.sift(g, 0);
        if is_identity(&r) {
            return false;
        }
        self.add_generator(0, r);
        true
    }

    fn sift(&self, g: &[u32], from: usize) -> (Vec<u32>, usize) {
        let mut g = g.to_vec();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let x = g[level.base] as usize;
            match &level.transversal[x] {
                None => return (g, i),
                Some(t) => g = compose_images(&invert_images(t), &g),
            }
        }
        let n = self.levels.len();
        (g, n)
    }

    fn add_generator(&mut self, level: usize, g: Vec<u32>) {
        if level == self.levels.len() {
            let base = (0..self.degree)
                .find(|&x| g[x] as usize != x)
                .expect("non-identity permutation moves a point");
            let mut transversal = vec![None; self.degree];
            transversal[base] = Some((0..self.degree as u32).collect());
            self.levels.push(Level {
                base,
                gens: Vec::new(),
                transversal,
                orbit: vec![base],
            });
        }
        let schreier = {
            let lvl = &mut self.levels[level];
            lvl.gens.push(g.clone());
            let mut schreier = Vec::new();
            let old_len = lvl.orbit.len();
            for idx in 0..old_len {
                let x = lvl.orbit[idx];
                extend_orbit(lvl, x, &g, &mut schreier);
            }
            let mut idx = old_len;
            while idx < lvl.orbit.len() {
                let x = lvl.orbit[idx];
                let gens = lvl.gens.clone();
                for s in &gens {
                    extend_orbit(lvl, x, s, &mut schreier);
                }
                idx += 1;
            }
            schreier
        };
        for h in schreier {
            if is_identity(&h) {
                continue;
            }
            let (r, _) = self.sift(&h, level + 1);
            if !is_identity(&r) {
                self.add_generator(level + 1, r);
            }
        }
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (r, _) = self.sift(g.images(), 0);
        is_identity(&r)
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

fn extend_orbit(lvl: &mut Level, x: usize, s: &[u32], schreier: &mut Vec<Vec<u32>>) {
    let tx = lvl.transversal[x].clone().unwrap();
    let y = s[x] as usize;
    let sx = compose_images(s, &tx);
    match &lvl.transversal[y] {
        None => {
            lvl.transversal[y] = Some(sx);
            lvl.orbit.push(y);
        }
        Some(ty) => schreier.push(compose_images(&invert_images(ty), &sx)),
    }
}

fn is_identity(g: &[u32]) -> bool {
    g.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

/// Smallest subgroup containing `normal_gens` and normalized by `group_gens`,
/// as a stabilizer chain plus its generators.
pub fn normal_closure_chain(
    degree: usize,
    group_gens: &[Permutation],
    normal_gens: Vec<Permutation>,
) -> (StabChain, Vec<Permutation>) {
    let mut chain = StabChain::new(degree, &[]);
    let mut gens: Vec<Permutation> = Vec::new();
    let mut queue = normal_gens;
    while let Some(h) = queue.pop() {
        if chain.insert(h.images()) {
            for g in group_gens {
                let conj = g.inverse().compose(&h).unwrap().compose(g).unwrap();
                queue.push(conj);
            }
            gens.push(h);
        }
    }
    (chain, gens)
}

/// Derived subgroup of a permutation group via normal closure of the
/// generator commutators; returns its stabilizer chain and generators.
pub fn derived_subgroup_chain(g: &FiniteGroup) -> Result<(StabChain, Vec<Permutation>)> {
    let (degree, gens) = perm_parts(g)?;
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a
                .inverse()
                .compose(&b.inverse())?
                .compose(a)?
                .compose(b)?;
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    Ok(normal_closure_chain(degree, &gens, comms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    fn all_perms(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut v: Vec<u32> = (0..n as u32).collect();
        permute(&mut v, 0, &mut out);
        out
    }

    fn permute(v: &mut Vec<u32>, k: usize, out: &mut Vec<Permutation>) {
        if k == v.len() {
            out.push(Permutation::from_images(v.clone()).unwrap());
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, out);
            v.swap(k, i);
        }
    }

    fn brute_centralizer(n: usize, gens: &[Permutation]) -> u64 {
        all_perms(n)
            .into_iter()
            .filter(|c| {
                gens.iter()
                    .all(|g| c.compose(g).unwrap() == g.compose(c).unwrap())
            })
            .count() as u64
    }

    #[test]
    fn regular_cyclic_centralizer() {
        let c3 = library::cyclic(3);
        assert_eq!(centralizer_order_transitive(&c3).unwrap(), 3);
    }

    #[test]
    fn affine_f7_centralizer_trivial() {
        let g = library::affine_line(7, 3);
        assert_eq!(centralizer_order_transitive(&g).unwrap(), 1);
        let gens = g.perm_generators().unwrap();
        assert_eq!(brute_centralizer(7, &gens), 1);
        let stab = stabilizer_generators(7, &gens, 0);
        // only 0 is fixed by x -> 3x
        assert!(stab.iter().all(|s| s.fixes(0)));
    }

    #[test]
    fn symmetric_centralizer_brute_force() {
        let s4 = library::symmetric(4);
        assert_eq!(centralizer_order_transitive(&s4).unwrap(), 1);
        assert_eq!(brute_centralizer(4, &s4.perm_generators().unwrap()), 1);
    }

    #[test]
    fn intransitive_is_rejected() {
        let g = FiniteGroup::perm(4, vec![Permutation::from_cycles(4, &[&[0, 1]]).unwrap()]).unwrap();
        assert_eq!(
            centralizer_order_transitive(&g),
            Err(Error::NotTransitive { orbits: 3 })
        );
    }

    #[test]
    fn orbit_partitions() {
        assert_eq!(orbits(&library::symmetric(5)).unwrap().len(), 1);
        let trivial = FiniteGroup::perm(4, vec![]).unwrap();
        assert_eq!(
            orbits(&trivial).unwrap(),
            vec![vec![0], vec![1], vec![2], vec![3]]
        );
    }

    #[test]
    fn chain_orders() {
        for n in 1..=7 {
            let s = library::symmetric(n);
            let chain = StabChain::new(n, &s.perm_generators().unwrap());
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(chain.order(), BigUint::from(fact));
        }
        let a5 = library::alternating(5);
        let chain = a5.stab_chain().unwrap();
        assert_eq!(chain.order(), BigUint::from(60u32));
        let odd = Permutation::from_cycles(5, &[&[0, 1]]).unwrap();
        assert!(!chain.contains(&odd));
        let even = Permutation::from_cycles(5, &[&[0, 1], &[2, 3]]).unwrap();
        assert!(chain.contains(&even));
    }

    #[test]
    fn chain_matches_enumeration_on_library() {
        for g in [
            library::dihedral(6),
            library::affine_line(11, 2),
            library::alternating(6),
            library::klein_four(),
        ] {
            let by_chain = g.stab_chain().unwrap().order();
            assert_eq!(by_chain, BigUint::from(g.order_usize().unwrap()));
        }
    }

    #[test]
    fn derived_subgroup_of_s4_is_a4() {
        let (chain, _) = derived_subgroup_chain(&library::symmetric(4)).unwrap();
        assert_eq!(chain.order(), BigUint::from(12u32));
    }

    #[test]
    fn centralizer_matches_brute_force_up_to_degree_7() {
        let groups = vec![
            library::cyclic(5),
            library::dihedral(5),
            library::affine_line(5, 2),
            library::affine_line(7, 2),
            library::alternating(5),
            library::klein_four_regular(),
            library::cyclic(6),
        ];
        for g in groups {
            let n = g.degree().unwrap();
            let gens = g.perm_generators().unwrap();
            assert_eq!(
                centralizer_order_transitive(&g).unwrap(),
                brute_centralizer(n, &gens),
                "{}",
                g.name()
            );
        }
    }
}
