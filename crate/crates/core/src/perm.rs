//! Permutations of `{0, .., degree - 1}`.
//!
//! Composition follows the functional convention `(p * q)(x) = p(q(x))`:
//! the right factor acts first.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image array, rejecting non-bijections.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            let x = x as usize;
            if x >= n {
                return Err(Error::NotABijection(format!(
                    "image {x} of point {i} is outside 0..{n}"
                )));
            }
            if seen[x] {
                return Err(Error::NotABijection(format!("point {x} is hit twice")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `degree` points from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(Error::NotABijection(format!(
                        "cycle point outside 0..{degree}"
                    )));
                }
                images[a as usize] = b;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn into_images(self) -> Vec<u32> {
        self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation {
            images: compose_images(&self.images, &other.images),
        })
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            images: invert_images(&self.images),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.images[x] as usize == x
    }

    /// Order of the permutation as the lcm of its cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut order = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }
}

#[inline]
pub(crate) fn compose_images(p: &[u32], q: &[u32]) -> Vec<u32> {
    q.iter().map(|&x| p[x as usize]).collect()
}

#[inline]
pub(crate) fn invert_images(p: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for start in 0..n {
            if seen[start] || self.fixes(start) {
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.apply(x);
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table_compose(p: &[u32], q: &[u32]) -> Vec<u32> {
        // explicit image table: x -> q(x) -> p(q(x))
        let mut out = Vec::new();
        for x in 0..q.len() {
            let y = q[x];
            out.push(p[y as usize]);
        }
        out
    }

    #[test]
    fn identity_is_neutral() {
        let p = Permutation::from_cycles(4, &[&[0, 2, 3]]).unwrap();
        let e = Permutation::identity(4);
        assert_eq!(e.compose(&p).unwrap(), p);
        assert_eq!(p.compose(&e).unwrap(), p);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn transposition_product_convention() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let ab = a.compose(&b).unwrap();
        // (0 1)(1 2): 0 -> 0 -> 1, 1 -> 2 -> 2, 2 -> 1 -> 0
        assert_eq!(ab.images(), &[1, 2, 0]);
        assert_eq!(ab.images(), table_compose(a.images(), b.images()).as_slice());
        assert_eq!(ab.order(), 3);
    }

    #[test]
    fn rejects_bad_images() {
        assert!(matches!(
            Permutation::from_images(vec![0, 0, 1]),
            Err(Error::NotABijection(_))
        ));
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert_eq!(
            a.compose(&b),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn display_cycles() {
        let p = Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(p.to_string(), "(0 1 2 3 4)");
        assert_eq!(Permutation::identity(2).to_string(), "()");
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn composition_is_associative(p in perm_strategy(7), q in perm_strategy(7), r in perm_strategy(7)) {
            let lhs = p.compose(&q).unwrap().compose(&r).unwrap();
            let rhs = p.compose(&q.compose(&r).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_is_two_sided(p in perm_strategy(9)) {
            prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
            prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
        }
    }
}
