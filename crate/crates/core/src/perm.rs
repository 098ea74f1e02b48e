//! Permutations of `{0, …, degree−1}` in image-list form.
//!
//! Composition is left-to-right: `a.compose(b)` applies `a` first, then `b`,
//! so `result.apply(i) = b.apply(a.apply(i))`. Points act on the right
//! throughout the crate. I/O uses 1-based image lists.

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if (i as usize) >= n || seen[i as usize] {
                return Err(Error::NotAPermutation);
            }
            seen[i as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from a 1-based image list (the wire format).
    pub fn from_one_based(images: &[u32]) -> Result<Self> {
        let shifted: Vec<u32> = images
            .iter()
            .map(|&i| i.checked_sub(1).ok_or(Error::NotAPermutation))
            .collect::<Result<_>>()?;
        Permutation::from_images(shifted)
    }

    /// Builds a permutation of the given degree from disjoint 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt as usize >= degree {
                    return Err(Error::NotAPermutation);
                }
                let next = cycle[(k + 1) % cycle.len()];
                images[pt as usize] = next;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn one_based_images(&self) -> Vec<u32> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` then `other`: `result.apply(i) = other.apply(self.apply(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        let images = self.images.iter().map(|&i| other.images[i as usize]).collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut ord: u64 = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut p = start as u32;
            while !seen[p as usize] {
                seen[p as usize] = true;
                p = self.images[p as usize];
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }

    /// Nontrivial cycles, each rotated to start at its least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start as u32 {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start as u32;
            while !seen[p as usize] {
                seen[p as usize] = true;
                cycle.push(p);
                p = self.images[p as usize];
            }
            out.push(cycle);
        }
        out
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, pt) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_composes_trivially() {
        let id = Permutation::identity(3);
        let g = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(id.compose(&g).unwrap(), g);
        assert_eq!(g.compose(&id).unwrap(), g);
    }

    #[test]
    fn transposition_composition_table() {
        // (0 1) then (1 2), applying left factor first:
        // 0 -> 1 -> 2, 1 -> 0 -> 0, 2 -> 2 -> 1, i.e. the 3-cycle (0 2 1).
        let a = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let c = a.compose(&b).unwrap();
        assert_eq!(c.images(), &[2, 0, 1]);
        assert_eq!(c, Permutation::from_cycles(3, &[vec![0, 2, 1]]).unwrap());
    }

    #[test]
    fn inverse_cancels() {
        let g = Permutation::from_images(vec![0, 2, 1, 4, 7, 8, 3, 5, 6]).unwrap();
        assert!(g.compose(&g.inverse()).unwrap().is_identity());
        assert!(g.inverse().compose(&g).unwrap().is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
    }

    #[test]
    fn order_is_lcm_of_cycle_lengths() {
        let g = Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3, 4]]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(Permutation::identity(4).order(), 1);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(a.compose(&b), Err(Error::DegreeMismatch(3, 4))));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_perm(degree: usize) -> impl Strategy<Value = Permutation> {
            Just((0..degree as u32).collect::<Vec<u32>>())
                .prop_shuffle()
                .prop_map(|images| Permutation::from_images(images).unwrap())
        }

        proptest! {
            #[test]
            fn composition_is_associative(
                a in arb_perm(7),
                b in arb_perm(7),
                c in arb_perm(7),
            ) {
                let left = a.compose(&b).unwrap().compose(&c).unwrap();
                let right = a.compose(&b.compose(&c).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }

            #[test]
            fn inverse_law(a in arb_perm(9)) {
                prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
                prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
            }

            #[test]
            fn right_action_convention(a in arb_perm(6), b in arb_perm(6), pt in 0u32..6) {
                // apply a first, then b
                let ab = a.compose(&b).unwrap();
                prop_assert_eq!(ab.apply(pt), b.apply(a.apply(pt)));
            }

            #[test]
            fn order_annihilates(a in arb_perm(8)) {
                let mut acc = Permutation::identity(8);
                for _ in 0..a.order() {
                    acc = acc.compose(&a).unwrap();
                }
                prop_assert!(acc.is_identity());
            }
        }
    }
}
