//! Finite groups with a uniform multiply / invert / enumerate interface.
//!
//! A [`FiniteGroup`] is a list of generators in one concrete realization.
//! Enumeration is computed on first use and cached; afterwards every
//! algorithm works on element indices `0..order`, with index 0 the identity.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::matrix::{mat_inverse, mat_mul, mat_vec, FpMatrix};
use crate::perm::{compose_images, invert_images, Permutation};
use crate::permgroup::StabChain;

/// Raw element encoding; its meaning depends on the realization.
pub type Elem = Box<[u32]>;

pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// Groups up to this order get a full multiplication table.
const TABLE_LIMIT: usize = 2048;

/// Validated multiplication table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    identity: u32,
    table: Vec<u32>,
}

impl CayleyTable {
    /// Checks closure, identity, inverses (Latin square) and associativity.
    /// Associativity uses Light's test over a generating set.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Invalid("empty Cayley table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Invalid(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &x in row {
                if x as usize >= n {
                    return Err(Error::Invalid(format!("entry {x} in row {i} out of range")));
                }
                table.push(x);
            }
        }
        Self::from_flat(n, table)
    }

    pub(crate) fn from_flat(n: usize, table: Vec<u32>) -> Result<Self> {
        if table.len() != n * n || table.iter().any(|&x| x as usize >= n) {
            return Err(Error::Invalid(format!(
                "Cayley table must be {n} x {n} with entries below {n}"
            )));
        }
        let at = |i: usize, j: usize| table[i * n + j] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::Invalid("Cayley table has no identity".into()))?;
        for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                row[at(i, j)] = true;
                col[at(j, i)] = true;
            }
            if row.iter().chain(col.iter()).any(|b| !b) {
                return Err(Error::Invalid(format!(
                    "Cayley table is not a Latin square at element {i}"
                )));
            }
        }
        let t = CayleyTable {
            order: n,
            identity: identity as u32,
            table,
        };
        let at = |i: usize, j: usize| t.mul(i as u32, j as u32) as usize;
        for g in t.greedy_generators() {
            for x in 0..n {
                for y in 0..n {
                    if at(at(x, y), g) != at(x, at(y, g)) {
                        return Err(Error::Invalid(format!(
                            "Cayley table is not associative at ({x}, {y}, {g})"
                        )));
                    }
                }
            }
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Adds elements outside the current closure until everything is covered.
    pub fn greedy_generators(&self) -> Vec<usize> {
        let n = self.order;
        let mut inside = vec![false; n];
        inside[self.identity as usize] = true;
        let mut members = vec![self.identity as usize];
        let mut gens = Vec::new();
        for cand in 0..n {
            if inside[cand] {
                continue;
            }
            gens.push(cand);
            // re-close under right multiplication by all generators
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for &g in &gens {
                    let y = self.mul(x as u32, g as u32) as usize;
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                    }
                }
                i += 1;
            }
        }
        gens
    }
}

/// The concrete arithmetic behind a group's elements.
#[derive(Clone, Debug)]
pub enum Realization {
    /// Permutations of `0..degree`, multiplied as `(x*y)(i) = x(y(i))`.
    Perm { degree: usize },
    /// Indices into a multiplication table.
    Cayley { table: Arc<CayleyTable> },
    /// Invertible `dim x dim` matrices over `F_prime`.
    Matrix { prime: u32, dim: usize },
    /// Pairs `(v, A)` with `v` in `F_p^(point_dim * copies)` and `A` in the
    /// point group, acting block-diagonally on `copies` copies of
    /// `F_p^point_dim`; `(v1, A1)(v2, A2) = (v1 + A1 v2, A1 A2)`.
    Affine {
        prime: u32,
        point_dim: usize,
        copies: usize,
        point_group: Arc<FiniteGroup>,
    },
    /// Tuples of element indices of `base`, multiplied componentwise.
    Power { base: Arc<FiniteGroup>, width: usize },
}

impl Realization {
    fn identity(&self) -> Elem {
        match self {
            Realization::Perm { degree } => (0..*degree as u32).collect(),
            Realization::Cayley { table } => Box::new([table.identity()]),
            Realization::Matrix { prime, dim } => {
                FpMatrix::identity(*prime, *dim).entries().into()
            }
            Realization::Affine {
                prime,
                point_dim,
                copies,
                ..
            } => {
                let mut e = vec![0u32; point_dim * copies];
                e.extend_from_slice(FpMatrix::identity(*prime, *point_dim).entries());
                e.into()
            }
            Realization::Power { width, .. } => vec![0u32; *width].into(),
        }
    }

    fn mul(&self, a: &[u32], b: &[u32]) -> Elem {
        match self {
            Realization::Perm { .. } => compose_images(a, b).into(),
            Realization::Cayley { table } => Box::new([table.mul(a[0], b[0])]),
            Realization::Matrix { prime, dim } => mat_mul(*prime, *dim, a, b).into(),
            Realization::Affine {
                prime,
                point_dim,
                copies,
                ..
            } => {
                let (p, d) = (*prime, *point_dim);
                let n = d * copies;
                let (v1, m1) = a.split_at(n);
                let (v2, m2) = b.split_at(n);
                let mut out = Vec::with_capacity(n + d * d);
                for c in 0..*copies {
                    let img = mat_vec(p, d, m1, &v2[c * d..(c + 1) * d]);
                    for k in 0..d {
                        out.push((v1[c * d + k] + img[k]) % p);
                    }
                }
                out.extend(mat_mul(p, d, m1, m2));
                out.into()
            }
            Realization::Power { base, .. } => {
                let e = base.enumeration_unchecked();
                a.iter().zip(b).map(|(&x, &y)| e.mul(x, y)).collect()
            }
        }
    }

    fn inverse(&self, a: &[u32]) -> Elem {
        match self {
            Realization::Perm { .. } => invert_images(a).into(),
            Realization::Cayley { table } => {
                let x = a[0];
                let inv = (0..table.order() as u32)
                    .find(|&y| table.mul(x, y) == table.identity())
                    .expect("Latin square has inverses");
                Box::new([inv])
            }
            Realization::Matrix { prime, dim } => mat_inverse(*prime, *dim, a)
                .expect("group elements are invertible")
                .into(),
            Realization::Affine {
                prime,
                point_dim,
                copies,
                ..
            } => {
                let (p, d) = (*prime, *point_dim);
                let n = d * copies;
                let (v, m) = a.split_at(n);
                let minv = mat_inverse(p, d, m).expect("point group is invertible");
                let mut out = Vec::with_capacity(n + d * d);
                for c in 0..*copies {
                    let img = mat_vec(p, d, &minv, &v[c * d..(c + 1) * d]);
                    out.extend(img.iter().map(|&x| (p - x) % p));
                }
                out.extend(minv);
                out.into()
            }
            Realization::Power { base, .. } => {
                let e = base.enumeration_unchecked();
                a.iter().map(|&x| e.inv(x)).collect()
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Realization::Perm { .. } => "perm",
            Realization::Cayley { .. } => "cayley",
            Realization::Matrix { .. } => "matrix",
            Realization::Affine { .. } => "affine",
            Realization::Power { .. } => "power",
        }
    }
}

/// Cached enumeration of all elements, with index 0 the identity.
#[derive(Debug)]
pub struct Enumeration {
    elements: Vec<Elem>,
    index: HashMap<Elem, u32>,
    ngens: usize,
    right_gen: Vec<u32>,
    parent: Vec<(u32, u32)>,
    table: Option<Vec<u32>>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
}

fn elem_pow(real: &Realization, x: &[u32], mut e: u64) -> Elem {
    let mut acc = real.identity();
    let mut base: Elem = x.into();
    while e > 0 {
        if e & 1 == 1 {
            acc = real.mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = real.mul(&base, &base);
        }
    }
    acc
}

impl Enumeration {
    fn build(real: &Realization, gens: &[Elem], cap: usize) -> std::result::Result<Self, usize> {
        let id = real.identity();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0u32);
        let ngens = gens.len();
        let mut right_gen: Vec<u32> = Vec::new();
        let mut parent = vec![(u32::MAX, u32::MAX)];
        let mut i = 0;
        while i < elements.len() {
            for (g, gen) in gens.iter().enumerate() {
                let y = real.mul(&elements[i], gen);
                let idx = match index.get(&y) {
                    Some(&k) => k,
                    None => {
                        if elements.len() >= cap {
                            return Err(cap);
                        }
                        let k = elements.len() as u32;
                        index.insert(y.clone(), k);
                        elements.push(y);
                        parent.push((i as u32, g as u32));
                        k
                    }
                };
                right_gen.push(idx);
            }
            i += 1;
        }
        let n = elements.len();
        let mut e = Enumeration {
            elements,
            index,
            ngens,
            right_gen,
            parent,
            table: None,
            inverse: Vec::new(),
            orders: Vec::new(),
        };
        if n <= TABLE_LIMIT {
            // table[x][j] = table[x][parent(j)] * gen(j), filled in BFS order
            let mut table = vec![0u32; n * n];
            for x in 0..n {
                table[x * n] = x as u32;
                for j in 1..n {
                    let (pj, g) = e.parent[j];
                    let left = table[x * n + pj as usize];
                    table[x * n + j] = e.right_gen[left as usize * ngens + g as usize];
                }
            }
            e.table = Some(table);
        }
        e.inverse = e
            .elements
            .iter()
            .map(|x| e.index[&real.inverse(x)])
            .collect();
        e.orders = if e.table.is_some() {
            (0..n as u32)
                .map(|x| {
                    let mut k = 1u32;
                    let mut y = x;
                    while y != 0 {
                        y = e.mul(y, x);
                        k += 1;
                    }
                    k
                })
                .collect()
        } else {
            // descend from |G| through its prime divisors
            let primes = crate::numtheory::prime_factors(n as u64);
            let id = real.identity();
            e.elements
                .iter()
                .map(|x| {
                    let mut k = n as u64;
                    for &p in &primes {
                        while k.is_multiple_of(p) && elem_pow(real, x, k / p) == id {
                            k /= p;
                        }
                    }
                    k as u32
                })
                .collect()
        };
        Ok(e)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn element(&self, i: u32) -> &[u32] {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn index_of(&self, e: &[u32]) -> Option<u32> {
        self.index.get(e).copied()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => {
                let mut path = Vec::new();
                let mut j = b;
                while j != 0 {
                    let (pj, g) = self.parent[j as usize];
                    path.push(g);
                    j = pj;
                }
                let mut x = a;
                for &g in path.iter().rev() {
                    x = self.right_gen[x as usize * self.ngens + g as usize];
                }
                x
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn element_order(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    pub fn pow(&self, a: u32, e: i64) -> u32 {
        let ord = self.orders[a as usize] as i64;
        let mut k = e.rem_euclid(ord) as u64;
        let mut result = 0u32;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        let x = self.mul(self.inv(a), self.inv(b));
        self.mul(self.mul(x, a), b)
    }

    /// `b^-1 a b`.
    pub fn conjugate(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(b), a), b)
    }
}

/// A finite group given by generators in one realization.
#[derive(Clone)]
pub struct FiniteGroup {
    realization: Realization,
    generators: Vec<Elem>,
    name: String,
    cap: usize,
    enumeration: OnceLock<std::result::Result<Arc<Enumeration>, usize>>,
    chain: OnceLock<Arc<StabChain>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("realization", &self.realization.kind())
            .field("generators", &self.generators.len())
            .finish()
    }
}

impl FiniteGroup {
    fn from_parts(realization: Realization, generators: Vec<Elem>, name: String) -> Self {
        let id = realization.identity();
        let mut gens: Vec<Elem> = Vec::new();
        for g in generators {
            if g != id && !gens.contains(&g) {
                gens.push(g);
            }
        }
        FiniteGroup {
            realization,
            generators: gens,
            name,
            cap: DEFAULT_ELEMENT_CAP,
            enumeration: OnceLock::new(),
            chain: OnceLock::new(),
        }
    }

    pub fn perm(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let gens = generators
            .into_iter()
            .map(|g| g.into_images().into_boxed_slice())
            .collect();
        Ok(Self::from_parts(
            Realization::Perm { degree },
            gens,
            format!("perm group of degree {degree}"),
        ))
    }

    /// Cayley-table group generated by a greedy generating set.
    pub fn cayley(table: CayleyTable) -> Self {
        let gens = table
            .greedy_generators()
            .into_iter()
            .map(|g| Box::new([g as u32]) as Elem)
            .collect();
        let n = table.order();
        Self::from_parts(
            Realization::Cayley {
                table: Arc::new(table),
            },
            gens,
            format!("Cayley group of order {n}"),
        )
    }

    pub(crate) fn cayley_with_generators(table: CayleyTable, gens: Vec<u32>) -> Self {
        let n = table.order();
        Self::from_parts(
            Realization::Cayley {
                table: Arc::new(table),
            },
            gens.into_iter().map(|g| Box::new([g]) as Elem).collect(),
            format!("Cayley group of order {n}"),
        )
    }

    pub fn matrix(prime: u32, dim: usize, generators: Vec<FpMatrix>) -> Result<Self> {
        for g in &generators {
            if g.prime() != prime || g.dim() != dim {
                return Err(Error::Invalid(format!(
                    "matrix over F_{} of dimension {} in a group over F_{prime} of dimension {dim}",
                    g.prime(),
                    g.dim()
                )));
            }
            if !g.is_invertible() {
                return Err(Error::Invalid(format!("matrix {g:?} is not invertible")));
            }
        }
        let gens = generators.iter().map(|g| g.entries().into()).collect();
        Ok(Self::from_parts(
            Realization::Matrix { prime, dim },
            gens,
            format!("matrix group over F_{prime} of dimension {dim}"),
        ))
    }

    /// `(F_p^point_dim)^copies` extended by a matrix group acting diagonally.
    /// Generated by the unit translations and the point group's generators.
    pub fn affine(point_group: Arc<FiniteGroup>, copies: usize) -> Result<Self> {
        let Realization::Matrix { prime, dim } = point_group.realization else {
            return Err(Error::Invalid("point group must be a matrix group".into()));
        };
        let n = dim * copies;
        let id = FpMatrix::identity(prime, dim);
        let mut gens: Vec<Elem> = Vec::new();
        for i in 0..n {
            let mut e = vec![0u32; n];
            e[i] = 1 % prime;
            e.extend_from_slice(id.entries());
            gens.push(e.into());
        }
        for g in point_group.generators() {
            let mut e = vec![0u32; n];
            e.extend_from_slice(g);
            gens.push(e.into());
        }
        let name = format!("F_{prime}^{n} : ({})", point_group.name());
        Ok(Self::from_parts(
            Realization::Affine {
                prime,
                point_dim: dim,
                copies,
                point_group,
            },
            gens,
            name,
        ))
    }

    /// Subgroup of `base^width` generated by explicit tuples of base indices.
    pub fn tuples(base: Arc<FiniteGroup>, width: usize, generators: Vec<Vec<u32>>) -> Result<Self> {
        let n = base.enumerate()?.len() as u32;
        for g in &generators {
            if g.len() != width || g.iter().any(|&x| x >= n) {
                return Err(Error::Invalid("tuple generator has wrong width or range".into()));
            }
        }
        let name = format!("subgroup of ({})^{width}", base.name());
        Ok(Self::from_parts(
            Realization::Power { base, width },
            generators.into_iter().map(|g| g.into_boxed_slice()).collect(),
            name,
        ))
    }

    /// The full direct power `base^width`.
    pub fn direct_power(base: Arc<FiniteGroup>, width: usize) -> Result<Self> {
        let e = base.enumerate()?;
        let gen_idx: Vec<u32> = base
            .generators()
            .iter()
            .map(|g| e.index_of(g).expect("generator is an element"))
            .collect();
        let mut gens = Vec::new();
        for c in 0..width {
            for &g in &gen_idx {
                let mut t = vec![0u32; width];
                t[c] = g;
                gens.push(t);
            }
        }
        let name = format!("({})^{width}", base.name());
        Ok(Self::tuples(base, width, gens)?.with_name(name))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Overrides the enumeration cap. Must be called before enumeration.
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self.enumeration = OnceLock::new();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn identity_elem(&self) -> Elem {
        self.realization.identity()
    }

    pub fn multiply(&self, a: &[u32], b: &[u32]) -> Elem {
        self.realization.mul(a, b)
    }

    pub fn invert(&self, a: &[u32]) -> Elem {
        self.realization.inverse(a)
    }

    /// Enumerates the closure of the generators, failing past the cap.
    pub fn enumerate(&self) -> Result<&Enumeration> {
        let r = self.enumeration.get_or_init(|| {
            Enumeration::build(&self.realization, &self.generators, self.cap).map(Arc::new)
        });
        match r {
            Ok(e) => Ok(e),
            Err(cap) => Err(Error::ClosureOverflow { cap: *cap }),
        }
    }

    fn enumeration_unchecked(&self) -> &Enumeration {
        self.enumerate().expect("base group was enumerated at construction")
    }

    pub fn is_enumerated(&self) -> bool {
        matches!(self.enumeration.get(), Some(Ok(_)))
    }

    /// Group order. Permutation groups use a stabilizer chain and never
    /// enumerate; other realizations enumerate.
    pub fn order(&self) -> Result<BigUint> {
        if let Some(chain) = self.stab_chain() {
            return Ok(chain.order());
        }
        Ok(BigUint::from(self.enumerate()?.len()))
    }

    /// Order as a machine integer; enumerates the group.
    pub fn order_usize(&self) -> Result<usize> {
        Ok(self.enumerate()?.len())
    }

    pub fn degree(&self) -> Option<usize> {
        match self.realization {
            Realization::Perm { degree } => Some(degree),
            _ => None,
        }
    }

    pub fn perm_generators(&self) -> Option<Vec<Permutation>> {
        self.degree()?;
        Some(
            self.generators
                .iter()
                .map(|g| Permutation::from_images(g.to_vec()).expect("stored permutations are bijections"))
                .collect(),
        )
    }

    /// Stabilizer chain of a permutation group, built on first use.
    pub fn stab_chain(&self) -> Option<&StabChain> {
        let degree = self.degree()?;
        Some(self.chain.get_or_init(|| {
            Arc::new(StabChain::new(degree, &self.perm_generators().unwrap()))
        }))
    }

    /// Generator indices inside the enumeration.
    pub fn generator_indices(&self) -> Result<Vec<u32>> {
        let e = self.enumerate()?;
        Ok(self
            .generators
            .iter()
            .map(|g| e.index_of(g).expect("generators are elements"))
            .collect())
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| self.multiply(a, b) == self.multiply(b, a))
        })
    }

    /// Same realization, new generators; used to realize subgroups.
    pub(crate) fn with_generators(&self, generators: Vec<Elem>, name: String) -> Self {
        let mut g = Self::from_parts(self.realization.clone(), generators, name);
        g.cap = self.cap;
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    #[test]
    fn closure_orders() {
        assert_eq!(library::symmetric(5).order_usize().unwrap(), 120);
        let alt5 = FiniteGroup::perm(
            5,
            vec![
                Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
                Permutation::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(alt5.order_usize().unwrap(), 60);
        let c2 = FiniteGroup::perm(4, vec![Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap()]).unwrap();
        assert_eq!(c2.order_usize().unwrap(), 2);
    }

    #[test]
    fn closure_overflow_is_reported() {
        let s6 = library::symmetric(6).with_cap(100);
        assert_eq!(s6.enumerate().err(), Some(Error::ClosureOverflow { cap: 100 }));
    }

    #[test]
    fn closure_is_idempotent() {
        let s4 = library::symmetric(4);
        let e = s4.enumerate().unwrap();
        let all: Vec<Permutation> = e
            .elements()
            .iter()
            .map(|x| Permutation::from_images(x.to_vec()).unwrap())
            .collect();
        let again = FiniteGroup::perm(4, all).unwrap();
        assert_eq!(again.order_usize().unwrap(), 24);
        // 24 divides 4!
        assert_eq!(24 % e.len(), 0);
    }

    #[test]
    fn table_and_walk_agree() {
        let s4 = library::symmetric(4);
        let e = s4.enumerate().unwrap();
        for a in 0..24u32 {
            for b in 0..24u32 {
                let direct = s4.multiply(e.element(a), e.element(b));
                assert_eq!(e.index_of(&direct), Some(e.mul(a, b)));
            }
            assert_eq!(e.mul(a, e.inv(a)), 0);
        }
    }

    #[test]
    fn untabled_multiplication_walks_paths() {
        // GL(4,2) has 20160 elements, beyond the table limit
        let gl = library::general_linear(4, 2).unwrap();
        let e = gl.enumerate().unwrap();
        assert_eq!(e.len(), 20160);
        for (a, b) in [(5u32, 17u32), (20000, 3), (1234, 19999)] {
            let direct = gl.multiply(e.element(a), e.element(b));
            assert_eq!(e.index_of(&direct), Some(e.mul(a, b)));
        }
    }

    #[test]
    fn affine_order_and_rule() {
        // F_7^2 : F_7^*, acting by scalars
        let r = Arc::new(
            FiniteGroup::matrix(7, 1, vec![FpMatrix::scalar(7, 1, 3)]).unwrap(),
        );
        let h = FiniteGroup::affine(r, 2).unwrap();
        assert_eq!(h.order_usize().unwrap(), 49 * 6);
        let a: Elem = vec![1, 2, 3].into();
        let b: Elem = vec![4, 0, 5].into();
        // (v1 + A1 v2, A1 A2): (1 + 3*4, 2 + 3*0), 3*5
        assert_eq!(&*h.multiply(&a, &b), &[6, 2, 1]);
        let inv = h.invert(&a);
        assert_eq!(h.multiply(&a, &inv), h.identity_elem());
    }

    #[test]
    fn direct_power_order() {
        let s3 = Arc::new(library::symmetric(3));
        let p = FiniteGroup::direct_power(s3, 2).unwrap();
        assert_eq!(p.order_usize().unwrap(), 36);
    }

    #[test]
    fn cayley_validation() {
        let c3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let g = FiniteGroup::cayley(CayleyTable::new(c3).unwrap());
        assert_eq!(g.order_usize().unwrap(), 3);
        assert!(CayleyTable::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        // Latin square without associativity: from a quasigroup of order 5
        let bad = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(CayleyTable::new(bad).is_err());
    }

    #[test]
    fn matrix_generators_must_be_invertible() {
        let sing = FpMatrix::from_row_major(3, &[1, 1, 1, 1]).unwrap();
        assert!(FiniteGroup::matrix(3, 2, vec![sing]).is_err());
    }

    #[test]
    fn perm_order_via_chain_matches_enumeration() {
        let s5 = library::symmetric(5);
        assert_eq!(s5.order().unwrap(), BigUint::from(120u32));
    }
}
