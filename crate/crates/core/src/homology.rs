//! Order complexes and exact reduced simplicial homology.
//!
//! The augmented chain complex of a finite poset has one basis simplex per
//! nonempty chain plus the empty simplex in degree −1, so the reduced
//! homology of the empty poset is R in degree −1. Face i of a chain carries
//! the sign (−1)^i. Integral homology (Betti numbers plus elementary
//! divisors) comes from Smith normal forms; rational Betti numbers come from
//! an independent fraction-free rank routine.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::poset::{enumerate_chains, Poset};
use crate::snf::{rank_over_q, smith_normal_form, IntMat};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ring {
    #[serde(rename = "z")]
    Integer,
    #[serde(rename = "q")]
    Rational,
}

/// All simplices of the order complex of a poset, indexed per dimension.
#[derive(Clone, Debug)]
pub struct OrderComplex {
    pub poset: Poset,
    /// `simplices[d]` lists the dimension-d simplices (chains of d+1 node
    /// ids, ascending in the poset order).
    pub simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl OrderComplex {
    pub fn new(poset: &Poset, cap: usize) -> Result<OrderComplex> {
        let simplices = enumerate_chains(poset, cap)?;
        let index = simplices
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();
        Ok(OrderComplex {
            poset: poset.clone(),
            simplices,
            index,
        })
    }

    /// Dimension of the complex; −1 for the empty complex.
    pub fn dim(&self) -> i64 {
        self.simplices.len() as i64 - 1
    }

    pub fn simplex_count(&self, d: i64) -> usize {
        if d == -1 {
            1
        } else if d < 0 || d as usize >= self.simplices.len() {
            0
        } else {
            self.simplices[d as usize].len()
        }
    }

    pub fn simplex_index(&self, d: i64, simplex: &[usize]) -> Option<usize> {
        if d == -1 {
            return simplex.is_empty().then_some(0);
        }
        self.index
            .get(d as usize)
            .and_then(|m| m.get(simplex).copied())
    }

    /// Boundary matrix ∂_d: C_d → C_{d−1} (rows index (d−1)-simplices). For
    /// d = 0 this is the augmentation row of ones.
    pub fn boundary_matrix(&self, d: i64) -> IntMat {
        let cols = self.simplex_count(d);
        let rows = self.simplex_count(d - 1);
        let mut m = IntMat::zeros(rows, cols);
        if d <= -1 || cols == 0 {
            return m;
        }
        if d == 0 {
            for j in 0..cols {
                m.set(0, j, BigInt::one());
            }
            return m;
        }
        let d = d as usize;
        for (j, simplex) in self.simplices[d].iter().enumerate() {
            for i in 0..=d {
                let mut face = simplex.clone();
                face.remove(i);
                let row = self.index[d - 1][&face];
                let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                m.set(row, j, sign);
            }
        }
        m
    }

    /// Total number of simplices, including the empty one.
    pub fn total_simplices(&self) -> usize {
        1 + self.simplices.iter().map(|v| v.len()).sum::<usize>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub degree: i64,
    pub betti: usize,
    /// Elementary divisors > 1 of the torsion part; empty over Q.
    pub torsion: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    pub ring: Ring,
    /// Entries for degrees −1 … dim, in order.
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyResult {
    pub fn betti(&self, degree: i64) -> usize {
        self.degrees
            .iter()
            .find(|d| d.degree == degree)
            .map_or(0, |d| d.betti)
    }

    pub fn torsion(&self, degree: i64) -> &[u64] {
        self.degrees
            .iter()
            .find(|d| d.degree == degree)
            .map_or(&[], |d| d.torsion.as_slice())
    }

    pub fn is_nonzero(&self) -> bool {
        self.degrees
            .iter()
            .any(|d| d.betti > 0 || !d.torsion.is_empty())
    }

    /// Largest degree with nonzero homology (Betti or torsion), if any.
    pub fn top_nonzero_degree(&self) -> Option<i64> {
        self.degrees
            .iter()
            .filter(|d| d.betti > 0 || !d.torsion.is_empty())
            .map(|d| d.degree)
            .max()
    }

    /// Betti-and-torsion equality, ignoring degrees where both vanish.
    pub fn same_homology(&self, other: &HomologyResult) -> bool {
        let max = self
            .degrees
            .iter()
            .chain(&other.degrees)
            .map(|d| d.degree)
            .max()
            .unwrap_or(-1);
        (-1..=max).all(|d| self.betti(d) == other.betti(d) && self.torsion(d) == other.torsion(d))
    }
}

/// Reduced homology of an order complex over the requested ring.
///
/// Over Q: `β_d = n_d − rank ∂_d − rank ∂_{d+1}` with ranks from
/// fraction-free elimination. Over Z: the same rank computation via Smith
/// normal forms, whose divisors > 1 of ∂_{d+1} are the torsion of degree d.
pub fn homology(complex: &OrderComplex, ring: Ring) -> HomologyResult {
    let dim = complex.dim();
    let mut degrees = Vec::new();
    match ring {
        Ring::Rational => {
            let mut rank_above = vec![0usize; (dim + 3) as usize];
            for d in 0..=dim {
                rank_above[(d + 1) as usize] = rank_over_q(&complex.boundary_matrix(d));
            }
            // ∂_{-1} = 0; ∂_0 is the augmentation
            for d in -1..=dim {
                let n_d = complex.simplex_count(d);
                let rank_d = if d == -1 { 0 } else { rank_above[d as usize + 1] };
                let rank_up = rank_above.get((d + 2) as usize).copied().unwrap_or(0);
                degrees.push(DegreeHomology {
                    degree: d,
                    betti: n_d - rank_d - rank_up,
                    torsion: vec![],
                });
            }
        }
        Ring::Integer => {
            let mut rank_above = vec![0usize; (dim + 3) as usize];
            let mut torsion_of: Vec<Vec<u64>> = vec![vec![]; (dim + 3) as usize];
            for d in 0..=dim {
                let snf = smith_normal_form(&complex.boundary_matrix(d), false);
                rank_above[(d + 1) as usize] = snf.rank;
                torsion_of[d as usize] = snf
                    .divisors
                    .iter()
                    .filter(|v| **v > BigInt::one())
                    .map(|v| v.to_u64().expect("torsion coefficient fits in u64"))
                    .collect();
            }
            for d in -1..=dim {
                let n_d = complex.simplex_count(d);
                let rank_d = if d == -1 { 0 } else { rank_above[d as usize + 1] };
                let rank_up = rank_above.get((d + 2) as usize).copied().unwrap_or(0);
                // torsion in degree d comes from the divisors of ∂_{d+1}
                let torsion = torsion_of
                    .get((d + 1) as usize)
                    .cloned()
                    .unwrap_or_default();
                degrees.push(DegreeHomology {
                    degree: d,
                    betti: n_d - rank_d - rank_up,
                    torsion,
                });
            }
        }
    }
    HomologyResult { ring, degrees }
}

/// Reduced Euler characteristic from the simplex counts:
/// `χ̃ = Σ_{d ≥ -1} (−1)^d n_d` (the empty simplex contributes −1).
pub fn reduced_euler_characteristic(complex: &OrderComplex) -> i64 {
    let mut chi: i64 = -1;
    for d in 0..=complex.dim() {
        let n = complex.simplex_count(d) as i64;
        chi += if d % 2 == 0 { n } else { -n };
    }
    chi
}

/// `χ̃` recomputed from Betti numbers; must agree with the simplex-count
/// route.
pub fn euler_from_betti(h: &HomologyResult) -> i64 {
    h.degrees.iter().fold(0i64, |acc, d| {
        let sign = if d.degree.rem_euclid(2) == 0 { 1 } else { -1 };
        acc + sign * d.betti as i64
    })
}
