//! Small named groups used as factors, targets and test corpus.

use crate::error::Result;
use crate::group::{CayleyTable, FiniteGroup};
use crate::matrix::FpMatrix;
use crate::numtheory::primitive_root;
use crate::perm::Permutation;

fn perm(degree: usize, cycles: &[&[u32]]) -> Permutation {
    Permutation::from_cycles(degree, cycles).expect("library cycles are valid")
}

fn long_cycle(n: usize) -> Permutation {
    let c: Vec<u32> = (0..n as u32).collect();
    perm(n, &[&c])
}

pub fn symmetric(n: usize) -> FiniteGroup {
    let gens = if n < 2 {
        vec![]
    } else {
        vec![long_cycle(n), perm(n, &[&[0, 1]])]
    };
    FiniteGroup::perm(n, gens).unwrap().with_name(format!("Sym({n})"))
}

pub fn alternating(n: usize) -> FiniteGroup {
    let gens = (2..n as u32).map(|k| perm(n, &[&[0, 1, k]])).collect();
    FiniteGroup::perm(n, gens).unwrap().with_name(format!("Alt({n})"))
}

/// Regular cyclic group on `n` points.
pub fn cyclic(n: usize) -> FiniteGroup {
    let gens = if n < 2 { vec![] } else { vec![long_cycle(n)] };
    FiniteGroup::perm(n.max(1), gens)
        .unwrap()
        .with_name(format!("C{n}"))
}

/// Cyclic group of order `n` as an addition table.
pub fn cyclic_cayley(n: usize) -> FiniteGroup {
    let rows = (0..n)
        .map(|i| (0..n).map(|j| ((i + j) % n) as u32).collect())
        .collect();
    FiniteGroup::cayley(CayleyTable::new(rows).unwrap()).with_name(format!("C{n}"))
}

/// The Klein four-group of double transpositions, acting regularly.
pub fn klein_four() -> FiniteGroup {
    FiniteGroup::perm(
        4,
        vec![perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])],
    )
    .unwrap()
    .with_name("V4")
}

pub fn klein_four_regular() -> FiniteGroup {
    klein_four()
}

/// Dihedral group of order `2n` on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> FiniteGroup {
    let reflection: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
    FiniteGroup::perm(
        n,
        vec![long_cycle(n), Permutation::from_images(reflection).unwrap()],
    )
    .unwrap()
    .with_name(format!("D{}", 2 * n))
}

/// `<x -> x + 1, x -> u x>` acting on `F_p`.
pub fn affine_line(p: u32, u: u32) -> FiniteGroup {
    let shift: Vec<u32> = (0..p).map(|x| (x + 1) % p).collect();
    let scale: Vec<u32> = (0..p).map(|x| ((x as u64 * u as u64) % p as u64) as u32).collect();
    FiniteGroup::perm(
        p as usize,
        vec![
            Permutation::from_images(shift).unwrap(),
            Permutation::from_images(scale).unwrap(),
        ],
    )
    .unwrap()
    .with_name(format!("<x+1, {u}x> on F_{p}"))
}

/// Direct product acting on the disjoint union of the point sets.
pub fn perm_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    let n = da + db;
    let mut gens = Vec::new();
    for g in a.perm_generators().unwrap() {
        let mut im: Vec<u32> = g.images().to_vec();
        im.extend(da as u32..n as u32);
        gens.push(Permutation::from_images(im).unwrap());
    }
    for g in b.perm_generators().unwrap() {
        let mut im: Vec<u32> = (0..da as u32).collect();
        im.extend(g.images().iter().map(|&x| x + da as u32));
        gens.push(Permutation::from_images(im).unwrap());
    }
    FiniteGroup::perm(n, gens)
        .unwrap()
        .with_name(format!("{} x {}", a.name(), b.name()))
}

/// `C_p^k` acting on `k` disjoint blocks of size `p`.
pub fn elementary_abelian(p: usize, k: usize) -> FiniteGroup {
    let n = p * k;
    let gens = (0..k)
        .map(|b| {
            let mut im: Vec<u32> = (0..n as u32).collect();
            for x in 0..p {
                im[b * p + x] = (b * p + (x + 1) % p) as u32;
            }
            Permutation::from_images(im).unwrap()
        })
        .collect();
    FiniteGroup::perm(n.max(1), gens)
        .unwrap()
        .with_name(format!("C{p}^{k}"))
}

/// `GL(d, p)` generated by the elementary transvections and `diag(w, 1, ..)`
/// with `w` a primitive root.
pub fn general_linear(d: usize, p: u32) -> Result<FiniteGroup> {
    let w = primitive_root(p as u64)? as u32;
    let mut gens = Vec::new();
    let mut diag = FpMatrix::identity(p, d).entries().to_vec();
    diag[0] = w % p;
    gens.push(FpMatrix::from_raw(p, d, diag));
    for i in 0..d {
        for j in 0..d {
            if i != j {
                let mut m = FpMatrix::identity(p, d).entries().to_vec();
                m[i * d + j] = 1;
                gens.push(FpMatrix::from_raw(p, d, m));
            }
        }
    }
    Ok(FiniteGroup::matrix(p, d, gens)?.with_name(format!("GL({d},{p})")))
}

/// Quaternion group of order 8 in its regular representation.
pub fn quaternion() -> FiniteGroup {
    // elements 1,i,j,k,-1,-i,-j,-k as 0..8; left multiplication by i and j
    let li = [1u32, 4, 3, 6, 5, 0, 7, 2];
    let lj = [2u32, 7, 4, 1, 6, 3, 0, 5];
    FiniteGroup::perm(
        8,
        vec![
            Permutation::from_images(li.to_vec()).unwrap(),
            Permutation::from_images(lj.to_vec()).unwrap(),
        ],
    )
    .unwrap()
    .with_name("Q8")
}
