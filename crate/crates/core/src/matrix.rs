//! Square matrices and subspaces over a prime field `F_p`.

use std::fmt;

use crate::error::{Error, Result};

/// Row-major `n x n` matrix with entries in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    n: usize,
    data: Vec<u32>,
}

#[inline]
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // p prime, a != 0
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

impl FpMatrix {
    pub fn identity(p: u32, n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1 % p;
        }
        FpMatrix { p, n, data }
    }

    /// Entries are reduced mod `p`; `entries.len()` must be a perfect square.
    pub fn from_row_major(p: u32, entries: &[i64]) -> Result<Self> {
        let n = (entries.len() as f64).sqrt().round() as usize;
        if n * n != entries.len() {
            return Err(Error::Invalid(format!(
                "{} entries do not form a square matrix",
                entries.len()
            )));
        }
        let data = entries
            .iter()
            .map(|&x| x.rem_euclid(p as i64) as u32)
            .collect();
        Ok(FpMatrix { p, n, data })
    }

    pub fn scalar(p: u32, n: usize, c: u32) -> Self {
        let mut m = Self::identity(p, n);
        for i in 0..n {
            m.data[i * n + i] = c % p;
        }
        m
    }

    pub(crate) fn from_raw(p: u32, n: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        FpMatrix { p, n, data }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.p, self.n)
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        FpMatrix {
            p: self.p,
            n: self.n,
            data: mat_mul(self.p, self.n, &self.data, &other.data),
        }
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        mat_vec(self.p, self.n, &self.data, v)
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        mat_inverse(self.p, self.n, &self.data).map(|data| FpMatrix {
            p: self.p,
            n: self.n,
            data,
        })
    }

    pub fn is_invertible(&self) -> bool {
        rank(self.p, self.n, self.n, self.data.clone()) == self.n
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        let mut result = Self::identity(self.p, self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// Block-diagonal matrix with `copies` copies of `self`.
    pub fn block_diagonal(&self, copies: usize) -> FpMatrix {
        let big = self.n * copies;
        let mut data = vec![0; big * big];
        for c in 0..copies {
            let off = c * self.n;
            for i in 0..self.n {
                for j in 0..self.n {
                    data[(off + i) * big + off + j] = self.get(i, j);
                }
            }
        }
        FpMatrix {
            p: self.p,
            n: big,
            data,
        }
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}[", self.p)?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

pub(crate) fn mat_mul(p: u32, n: usize, a: &[u32], b: &[u32]) -> Vec<u32> {
    let p = p as u64;
    let mut out = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0u64;
            for k in 0..n {
                acc += a[i * n + k] as u64 * b[k * n + j] as u64;
            }
            out[i * n + j] = (acc % p) as u32;
        }
    }
    out
}

pub(crate) fn mat_vec(p: u32, n: usize, a: &[u32], v: &[u32]) -> Vec<u32> {
    let p = p as u64;
    (0..n)
        .map(|i| {
            let acc: u64 = (0..n).map(|k| a[i * n + k] as u64 * v[k] as u64).sum();
            (acc % p) as u32
        })
        .collect()
}

pub(crate) fn mat_inverse(p: u32, n: usize, a: &[u32]) -> Option<Vec<u32>> {
    let w = 2 * n;
    let mut m = vec![0u32; n * w];
    for i in 0..n {
        m[i * w..i * w + n].copy_from_slice(&a[i * n..i * n + n]);
        m[i * w + n + i] = 1 % p;
    }
    let pp = p as u64;
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r * w + col] != 0)?;
        if pivot != col {
            for j in 0..w {
                m.swap(pivot * w + j, col * w + j);
            }
        }
        let inv = inv_mod(m[col * w + col], p) as u64;
        for j in 0..w {
            m[col * w + j] = (m[col * w + j] as u64 * inv % pp) as u32;
        }
        for r in 0..n {
            if r != col && m[r * w + col] != 0 {
                let f = m[r * w + col] as u64;
                for j in 0..w {
                    let sub = f * m[col * w + j] as u64 % pp;
                    m[r * w + j] = ((m[r * w + j] as u64 + pp - sub) % pp) as u32;
                }
            }
        }
    }
    let mut out = vec![0u32; n * n];
    for i in 0..n {
        out[i * n..i * n + n].copy_from_slice(&m[i * w + n..i * w + w]);
    }
    Some(out)
}

/// Rank of a `rows x cols` matrix given row-major.
pub(crate) fn rank(p: u32, rows: usize, cols: usize, mut m: Vec<u32>) -> usize {
    let pp = p as u64;
    let mut r = 0;
    for col in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| m[i * cols + col] != 0) else {
            continue;
        };
        for j in 0..cols {
            m.swap(pivot * cols + j, r * cols + j);
        }
        let inv = inv_mod(m[r * cols + col], p) as u64;
        for j in 0..cols {
            m[r * cols + j] = (m[r * cols + j] as u64 * inv % pp) as u32;
        }
        for i in 0..rows {
            if i != r && m[i * cols + col] != 0 {
                let f = m[i * cols + col] as u64;
                for j in 0..cols {
                    let sub = f * m[r * cols + j] as u64 % pp;
                    m[i * cols + j] = ((m[i * cols + j] as u64 + pp - sub) % pp) as u32;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Dimension of the common fixed space `{v : A v = v for all A}`.
pub fn common_fixed_dimension(mats: &[FpMatrix]) -> usize {
    let Some(first) = mats.first() else {
        return 0;
    };
    let (p, n) = (first.p, first.n);
    let mut stacked = Vec::with_capacity(mats.len() * n * n);
    for a in mats {
        for i in 0..n {
            for j in 0..n {
                let mut x = a.get(i, j);
                if i == j {
                    x = (x + p - 1) % p;
                }
                stacked.push(x);
            }
        }
    }
    n - rank(p, mats.len() * n, n, stacked)
}

/// Subspace of `F_p^n` kept as a reduced row-echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    p: u32,
    n: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, n: usize) -> Self {
        Subspace {
            p,
            n,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let pp = self.p as u64;
        let mut v = v.to_vec();
        for (b, &piv) in self.basis.iter().zip(&self.pivots) {
            let f = v[piv] as u64;
            if f != 0 {
                for j in 0..self.n {
                    let sub = f * b[j] as u64 % pp;
                    v[j] = ((v[j] as u64 + pp - sub) % pp) as u32;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut r = self.reduce(v);
        let Some(piv) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let pp = self.p as u64;
        let inv = inv_mod(r[piv], self.p) as u64;
        for x in r.iter_mut() {
            *x = (*x as u64 * inv % pp) as u32;
        }
        for b in self.basis.iter_mut() {
            let f = b[piv] as u64;
            if f != 0 {
                for j in 0..self.n {
                    let sub = f * r[j] as u64 % pp;
                    b[j] = ((b[j] as u64 + pp - sub) % pp) as u32;
                }
            }
        }
        self.basis.push(r);
        self.pivots.push(piv);
        true
    }

    /// Smallest subspace containing `v` and invariant under every matrix.
    pub fn spin(v: &[u32], mats: &[FpMatrix], p: u32) -> Subspace {
        let n = v.len();
        let mut space = Subspace::zero(p, n);
        let mut queue = Vec::new();
        if space.insert(v) {
            queue.push(v.to_vec());
        }
        while let Some(w) = queue.pop() {
            for a in mats {
                let img = a.apply(&w);
                if space.insert(&img) {
                    queue.push(img);
                }
                if space.dim() == n {
                    return space;
                }
            }
        }
        space
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let a = FpMatrix::from_row_major(7, &[1, 2, 3, 4]).unwrap();
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let singular = FpMatrix::from_row_major(7, &[1, 2, 2, 4]).unwrap();
        assert!(singular.inverse().is_none());
        assert!(!singular.is_invertible());
    }

    #[test]
    fn reduction_mod_p() {
        let a = FpMatrix::from_row_major(3, &[-1, 4, 0, 5]).unwrap();
        assert_eq!(a.entries(), &[2, 1, 0, 2]);
    }

    #[test]
    fn order_three_over_f2() {
        let c = FpMatrix::from_row_major(2, &[0, 1, 1, 1]).unwrap();
        assert!(c.pow(3).is_identity());
        assert!(!c.is_identity());
        assert_eq!(common_fixed_dimension(std::slice::from_ref(&c)), 0);
        assert_eq!(Subspace::spin(&[1, 0], &[c], 2).dim(), 2);
    }

    #[test]
    fn block_diagonal_shape() {
        let a = FpMatrix::from_row_major(5, &[2]).unwrap();
        let b = a.block_diagonal(3);
        assert_eq!(b, FpMatrix::scalar(5, 3, 2));
    }

    #[test]
    fn fixed_space_of_identity() {
        assert_eq!(common_fixed_dimension(&[FpMatrix::identity(3, 4)]), 4);
    }
}
