//! Formal chains on the order complex of a poset: boundaries, cycle and
//! boundary tests with witnesses, the shuffle product of chains from a
//! central product, initial-chain splits, the truncation operation, induced
//! chain maps, and top-dimension homology certificates.
//!
//! Coefficients are exact rationals; the integral mode restricts unit checks
//! and solves to Z. Degree −1 chains (the empty simplex) are first-class:
//! they carry the reduced homology of an empty poset.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::group::Subgroup;
use crate::homology::{homology, OrderComplex, Ring};
use crate::poset::{is_a_initial, NodeLabel, Poset, PosetMap};
use crate::snf::{kernel_basis, solve_integer, solve_rational};
use crate::{Error, Result};

/// A finite linear combination of same-degree simplices of a fixed poset's
/// order complex. Keys are chains of node ids (ascending); no zero
/// coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalChain {
    pub degree: i64,
    terms: BTreeMap<Vec<usize>, BigRational>,
}

impl FormalChain {
    pub fn zero(degree: i64) -> FormalChain {
        FormalChain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The degree −1 generator (the empty simplex) with coefficient 1.
    pub fn empty_simplex() -> FormalChain {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), BigRational::one());
        FormalChain { degree: -1, terms }
    }

    pub fn from_term(simplex: Vec<usize>, coeff: BigRational) -> FormalChain {
        let degree = simplex.len() as i64 - 1;
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(simplex, coeff);
        }
        FormalChain { degree, terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, simplex: &[usize]) -> BigRational {
        self.terms.get(simplex).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, simplex: Vec<usize>, coeff: BigRational) {
        debug_assert_eq!(simplex.len() as i64 - 1, self.degree);
        let entry = self.terms.entry(simplex).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            let key: Vec<Vec<usize>> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &FormalChain) -> FormalChain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, by: &BigRational) -> FormalChain {
        if by.is_zero() {
            return FormalChain::zero(self.degree);
        }
        FormalChain {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (s.clone(), c * by))
                .collect(),
        }
    }

    pub fn neg(&self) -> FormalChain {
        self.scale(&-BigRational::one())
    }

    pub fn sub(&self, other: &FormalChain) -> FormalChain {
        self.add(&other.neg())
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Checks every term is a chain of the poset.
    pub fn validate_on(&self, poset: &Poset) -> Result<()> {
        for (s, _) in self.terms() {
            for w in s.windows(2) {
                if !poset.lt(w[0], w[1]) {
                    return Err(Error::NotAChain);
                }
            }
            for &n in s {
                if n >= poset.len() {
                    return Err(Error::NodeNotFound(n));
                }
            }
        }
        Ok(())
    }

    /// Alternating sum of faces, linearly extended. A degree-0 chain maps to
    /// its augmentation multiple of the empty simplex; degree −1 maps to
    /// zero.
    pub fn boundary(&self) -> FormalChain {
        let mut out = FormalChain::zero(self.degree - 1);
        if self.degree <= -1 {
            return out;
        }
        for (s, c) in self.terms() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let sign = if i % 2 == 0 {
                    BigRational::one()
                } else {
                    -BigRational::one()
                };
                out.add_term(face, c * sign);
            }
        }
        out
    }

    pub fn is_cycle(&self) -> bool {
        self.boundary().is_zero()
    }

    /// Re-keys the chain from one poset onto another through label equality.
    pub fn reindex(&self, from: &Poset, to: &Poset) -> Result<FormalChain> {
        let to_index = to.label_index();
        let mut out = FormalChain::zero(self.degree);
        for (s, c) in self.terms() {
            let mapped: Vec<usize> = s
                .iter()
                .map(|&n| {
                    to_index
                        .get(from.label(n))
                        .copied()
                        .ok_or_else(|| Error::Internal("label missing in target poset".into()))
                })
                .collect::<Result<_>>()?;
            out.add_term(mapped, c.clone());
        }
        out.validate_on(to)?;
        Ok(out)
    }

    /// Applies a poset element-wise conjugation to every simplex (group
    /// posets only): each node's subgroup is conjugated and looked up again.
    pub fn conjugate_on(&self, poset: &Poset, g: u32) -> Result<FormalChain> {
        let index = poset.label_index();
        let mut out = FormalChain::zero(self.degree);
        for (s, c) in self.terms() {
            let mapped: Vec<usize> = s
                .iter()
                .map(|&n| {
                    let sub = poset.subgroup_at(n)?.conjugate(g);
                    index
                        .get(&NodeLabel::Subgroup(sub))
                        .copied()
                        .ok_or_else(|| Error::Internal("conjugate escaped the poset".into()))
                })
                .collect::<Result<_>>()?;
            out.add_term(mapped, c.clone());
        }
        out.validate_on(poset)?;
        Ok(out)
    }
}

/// Solves `∂x = c` exactly in the given complex; `Some(witness)` when `c` is
/// a boundary. Over the integers the witness is integral.
pub fn boundary_witness(
    complex: &OrderComplex,
    ring: Ring,
    c: &FormalChain,
) -> Result<Option<FormalChain>> {
    let d = c.degree;
    let cols_up = complex.simplex_count(d + 1);
    let n_d = complex.simplex_count(d);
    let mut rhs_q = vec![BigRational::zero(); n_d];
    for (s, coeff) in c.terms() {
        let idx = complex
            .simplex_index(d, s)
            .ok_or_else(|| Error::Internal("chain term is not a simplex of the complex".into()))?;
        rhs_q[idx] = coeff.clone();
    }
    if cols_up == 0 {
        return Ok(c.is_zero().then(|| FormalChain::zero(d + 1)));
    }
    let m = complex.boundary_matrix(d + 1);
    let witness_coeffs: Option<Vec<BigRational>> = match ring {
        Ring::Integer => {
            if !c.is_integral() {
                return Err(Error::PreconditionViolated(
                    "integral mode requires integer coefficients".into(),
                ));
            }
            let rhs: Vec<BigInt> = rhs_q.iter().map(|r| r.to_integer()).collect();
            solve_integer(&m, &rhs).map(|xs| xs.into_iter().map(BigRational::from).collect())
        }
        Ring::Rational => solve_rational(&m, &rhs_q),
    };
    let Some(xs) = witness_coeffs else {
        return Ok(None);
    };
    let mut witness = FormalChain::zero(d + 1);
    if d + 1 >= 0 {
        for (j, x) in xs.iter().enumerate() {
            if !x.is_zero() {
                let simplex = complex.simplices[(d + 1) as usize][j].clone();
                witness.add_term(simplex, x.clone());
            }
        }
    }
    debug_assert_eq!(&witness.boundary(), c);
    Ok(Some(witness))
}

/// Central-product context: `k` centralizes `h` and `h ∩ k` has order prime
/// to p, verified at construction.
#[derive(Clone, Debug)]
pub struct CpContext {
    pub ambient: Subgroup,
    pub h: Subgroup,
    pub k: Subgroup,
    pub prime: u64,
}

impl CpContext {
    pub fn new(ambient: Subgroup, h: Subgroup, k: Subgroup, prime: u64) -> Result<CpContext> {
        if !k.is_subgroup_of(&crate::group::centralizer(&ambient, &h)) {
            return Err(Error::HypothesisCpViolated(
                "K does not centralize H".into(),
            ));
        }
        let meet = h.intersection(&k);
        if meet.order().is_multiple_of(prime as usize) {
            return Err(Error::HypothesisCpViolated(format!(
                "H∩K has order {} divisible by p = {prime}",
                meet.order()
            )));
        }
        Ok(CpContext {
            ambient,
            h,
            k,
            prime,
        })
    }
}

fn shuffle_interleavings(m: usize, n: usize) -> Vec<(Vec<usize>, i32)> {
    // All ways to interleave positions 0..m (block one) with m..m+n (block
    // two), preserving relative order inside each block; the sign is the
    // parity of the resulting permutation of 0..m+n.
    let total = m + n;
    let mut out = Vec::new();
    let mut slots: Vec<usize> = Vec::with_capacity(total);
    fn rec(
        remaining_a: usize,
        remaining_b: usize,
        m: usize,
        slots: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, i32)>,
    ) {
        if remaining_a == 0 && remaining_b == 0 {
            // sign: parity of the sequence as a permutation
            let mut inversions = 0usize;
            for i in 0..slots.len() {
                for j in i + 1..slots.len() {
                    if slots[i] > slots[j] {
                        inversions += 1;
                    }
                }
            }
            let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
            out.push((slots.clone(), sign));
            return;
        }
        if remaining_a > 0 {
            slots.push(m - remaining_a);
            rec(remaining_a - 1, remaining_b, m, slots, out);
            slots.pop();
        }
        if remaining_b > 0 {
            let n_total = slots.len() + remaining_a + remaining_b;
            let _ = n_total;
            let b_index = m + (slots.iter().filter(|&&s| s >= m).count());
            slots.push(b_index);
            rec(remaining_a, remaining_b - 1, m, slots, out);
            slots.pop();
        }
    }
    rec(m, n, m, &mut slots, &mut out);
    out
}

/// Shuffle product of two basis chains given as subgroup lists, evaluated in
/// `poset` (node lookup by subgroup). Products of the interleaved prefixes
/// must be nodes of the poset; escaping it is an error (the central-product
/// hypothesis guarantees containment for neighbourhood supersets).
fn shuffle_basic(
    poset: &Poset,
    index: &std::collections::HashMap<NodeLabel, usize>,
    a: &[Subgroup],
    b: &[Subgroup],
) -> Result<FormalChain> {
    let m = a.len();
    let n = b.len();
    let degree = (m + n) as i64 - 1;
    let mut out = FormalChain::zero(degree);
    if m == 0 {
        // empty a-block: single interleaving, b itself
        if n == 0 {
            return Ok(FormalChain::empty_simplex());
        }
    }
    for (seq, sign) in shuffle_interleavings(m, n) {
        // prefix products: the i-th node is the product of the first i+1
        // subgroups in interleaved order
        let mut chain_nodes = Vec::with_capacity(seq.len());
        let mut last_a: Option<&Subgroup> = None;
        let mut last_b: Option<&Subgroup> = None;
        let mut ok = true;
        for &slot in &seq {
            if slot < m {
                last_a = Some(&a[slot]);
            } else {
                last_b = Some(&b[slot - m]);
            }
            let product = match (last_a, last_b) {
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (Some(x), Some(y)) => x.join(y),
                (None, None) => unreachable!("nonempty prefix"),
            };
            match index.get(&NodeLabel::Subgroup(product)) {
                Some(&id) => chain_nodes.push(id),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            return Err(Error::Internal(
                "shuffle product escaped the ambient poset".into(),
            ));
        }
        // must be a strict chain
        for w in chain_nodes.windows(2) {
            if !poset.lt(w[0], w[1]) {
                return Err(Error::Internal("shuffle prefix products fail to grow".into()));
            }
        }
        let coeff = BigRational::from(BigInt::from(sign));
        out.add_term(chain_nodes, coeff);
    }
    Ok(out)
}

fn simplex_subgroups(poset: &Poset, simplex: &[usize]) -> Result<Vec<Subgroup>> {
    simplex.iter().map(|&n| poset.subgroup_at(n).cloned()).collect()
}

/// Bilinear shuffle product of `alpha` (supported on chains of subgroups of
/// `ctx.h`) and `beta` (supported on chains of subgroups of `ctx.k`), with
/// every term evaluated as a chain of `poset`. Degree adds as
/// `deg α + deg β + 1`.
pub fn shuffle_product(
    poset: &Poset,
    alpha: &FormalChain,
    beta: &FormalChain,
    ctx: &CpContext,
) -> Result<FormalChain> {
    for (s, _) in alpha.terms() {
        for sub in simplex_subgroups(poset, s)? {
            if !sub.is_subgroup_of(&ctx.h) {
                return Err(Error::HypothesisCpViolated(
                    "left factor not supported on subgroups of H".into(),
                ));
            }
        }
    }
    for (s, _) in beta.terms() {
        for sub in simplex_subgroups(poset, s)? {
            if !sub.is_subgroup_of(&ctx.k) {
                return Err(Error::HypothesisCpViolated(
                    "right factor not supported on subgroups of K".into(),
                ));
            }
        }
    }
    let index = poset.label_index();
    let mut out = FormalChain::zero(alpha.degree + beta.degree + 1);
    for (sa, ca) in alpha.terms() {
        let subs_a = simplex_subgroups(poset, sa)?;
        for (sb, cb) in beta.terms() {
            let subs_b = simplex_subgroups(poset, sb)?;
            let basic = shuffle_basic(poset, &index, &subs_a, &subs_b)?;
            out = out.add(&basic.scale(&(ca * cb)));
        }
    }
    Ok(out)
}

/// The concatenation chain `a * b`: a's nodes followed by the products
/// `max(a)·b_j`. Equals the identity-interleaving term of the shuffle.
pub fn star_chain(poset: &Poset, a: &[usize], b: &[usize]) -> Result<Vec<usize>> {
    let index = poset.label_index();
    let subs_a = simplex_subgroups(poset, a)?;
    let subs_b = simplex_subgroups(poset, b)?;
    let mut nodes = a.to_vec();
    let a_max = subs_a
        .last()
        .ok_or(Error::NotAChain)?;
    for sb in &subs_b {
        let prod = a_max.join(sb);
        let id = index
            .get(&NodeLabel::Subgroup(prod))
            .copied()
            .ok_or_else(|| Error::Internal("star chain escaped the poset".into()))?;
        nodes.push(id);
    }
    Ok(nodes)
}

/// Splits `γ = γ_a + γ_rest` where `γ_a` collects the terms that contain `a`
/// and are a-initial (all extra nodes above `max a`).
pub fn a_initial_split(
    poset: &Poset,
    gamma: &FormalChain,
    a: &[usize],
) -> Result<(FormalChain, FormalChain)> {
    let mut initial = FormalChain::zero(gamma.degree);
    let mut rest = FormalChain::zero(gamma.degree);
    for (s, c) in gamma.terms() {
        let contains_a = a.iter().all(|n| s.contains(n));
        let is_initial = contains_a && is_a_initial(poset, a, s)?;
        if is_initial {
            initial.add_term(s.clone(), c.clone());
        } else {
            rest.add_term(s.clone(), c.clone());
        }
    }
    Ok((initial, rest))
}

/// Truncation of a-initial chains: drops the `a` prefix, keeping the part
/// above `max a` (the empty simplex when the term is `a` itself).
pub fn tilde(poset: &Poset, c: &FormalChain, a: &[usize]) -> Result<FormalChain> {
    let mut out = FormalChain::zero(c.degree - a.len() as i64);
    for (s, coeff) in c.terms() {
        if !a.iter().all(|n| s.contains(n)) || !is_a_initial(poset, a, s)? {
            return Err(Error::NotAInitial);
        }
        let tail: Vec<usize> = s.iter().copied().filter(|n| !a.contains(n)).collect();
        out.add_term(tail, coeff.clone());
    }
    Ok(out)
}

/// Prefixes each term of `c` (a chain of subgroups of K) with the fixed
/// chain `a`, multiplying every node by `max a` — the a-initial lift.
pub fn lift_by(poset: &Poset, c: &FormalChain, a: &[usize]) -> Result<FormalChain> {
    let index = poset.label_index();
    let a_max = poset.subgroup_at(*a.last().ok_or(Error::NotAChain)?)?;
    let mut out = FormalChain::zero(c.degree + a.len() as i64);
    for (s, coeff) in c.terms() {
        let mut nodes = a.to_vec();
        for &n in s {
            let prod = poset.subgroup_at(n)?.join(a_max);
            let id = index
                .get(&NodeLabel::Subgroup(prod))
                .copied()
                .ok_or_else(|| Error::Internal("lift escaped the poset".into()))?;
            nodes.push(id);
        }
        out.add_term(nodes, coeff.clone());
    }
    Ok(out)
}

/// Chain map induced by an order-preserving poset map: simplex-wise image,
/// with degenerate images (repeated nodes) sent to zero.
pub fn induced_chain_map(f: &PosetMap, c: &FormalChain) -> FormalChain {
    let mut out = FormalChain::zero(c.degree);
    for (s, coeff) in c.terms() {
        let image: Vec<usize> = s.iter().map(|&n| f.apply(n)).collect();
        let degenerate = image.windows(2).any(|w| w[0] == w[1]);
        if !degenerate {
            out.add_term(image, coeff.clone());
        }
    }
    out
}

/// Outcome of the top-dimension homology search.
#[derive(Clone, Debug)]
pub enum QdOutcome {
    Certified(QdCertificate),
    /// Top homology vanishes; the rank of the top cycle lattice is recorded.
    NotQd { p_rank: u32, top_degree: i64 },
}

/// A certified nonzero class in the top possible homology degree
/// `m_p − 1`, with an exhibiting full chain of unit coefficient.
// TODO: allow a torsion class of order coprime to the exhibiting coefficient
// instead of requiring a unit, which would avoid some rational fallbacks.
#[derive(Clone, Debug)]
pub struct QdCertificate {
    pub prime: u64,
    pub p_rank: u32,
    pub ring: Ring,
    /// The witnessing cycle over the elementary abelian poset of the group.
    pub cycle: FormalChain,
    /// A full chain of length `p_rank` with coefficient ±1 in the cycle.
    pub exhibiting_chain: Vec<usize>,
    /// True when no unit coefficient was found over Z and the certificate
    /// fell back to rational coefficients.
    pub rational_fallback: bool,
}

/// Searches the top-degree cycle lattice of the elementary abelian poset for
/// a cycle with a unit-coefficient chain. In the top degree every cycle is
/// automatically non-bounding (there is nothing above), and every
/// top-dimensional simplex is a full chain.
pub fn qd_certificate(
    complex: &OrderComplex,
    prime: u64,
    coeff_box: i64,
) -> Result<QdOutcome> {
    let top = complex.dim();
    let p_rank = (top + 1) as u32;
    if top < 0 {
        return Ok(QdOutcome::NotQd {
            p_rank: 0,
            top_degree: top,
        });
    }
    let boundary = complex.boundary_matrix(top);
    let basis = kernel_basis(&boundary);
    if basis.is_empty() {
        return Ok(QdOutcome::NotQd {
            p_rank,
            top_degree: top,
        });
    }
    let to_chain = |coeffs: &[BigInt]| -> FormalChain {
        let mut c = FormalChain::zero(top);
        for (j, v) in coeffs.iter().enumerate() {
            if !v.is_zero() {
                c.add_term(
                    complex.simplices[top as usize][j].clone(),
                    BigRational::from(v.clone()),
                );
            }
        }
        c
    };
    let unit_position = |coeffs: &[BigInt]| -> Option<usize> {
        coeffs.iter().position(|v| v.abs() == BigInt::one())
    };
    // single kernel basis vectors first
    for vec in &basis {
        if let Some(pos) = unit_position(vec) {
            let cycle = to_chain(vec);
            debug_assert!(cycle.is_cycle());
            return Ok(QdOutcome::Certified(QdCertificate {
                prime,
                p_rank,
                ring: Ring::Integer,
                exhibiting_chain: complex.simplices[top as usize][pos].clone(),
                cycle,
                rational_fallback: false,
            }));
        }
    }
    // small integer combinations of pairs
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            for ci in -coeff_box..=coeff_box {
                for cj in -coeff_box..=coeff_box {
                    if ci == 0 && cj == 0 {
                        continue;
                    }
                    let combo: Vec<BigInt> = basis[i]
                        .iter()
                        .zip(&basis[j])
                        .map(|(a, b)| a * BigInt::from(ci) + b * BigInt::from(cj))
                        .collect();
                    if combo.iter().all(|v| v.is_zero()) {
                        continue;
                    }
                    if let Some(pos) = unit_position(&combo) {
                        let cycle = to_chain(&combo);
                        debug_assert!(cycle.is_cycle());
                        return Ok(QdOutcome::Certified(QdCertificate {
                            prime,
                            p_rank,
                            ring: Ring::Integer,
                            exhibiting_chain: complex.simplices[top as usize][pos].clone(),
                            cycle,
                            rational_fallback: false,
                        }));
                    }
                }
            }
        }
    }
    // rational fallback: normalize the first basis vector at its first
    // nonzero coefficient
    let vec = &basis[0];
    let pos = vec.iter().position(|v| !v.is_zero()).expect("nonzero kernel vector");
    let cycle = to_chain(vec).scale(&BigRational::new(BigInt::one(), vec[pos].clone()));
    Ok(QdOutcome::Certified(QdCertificate {
        prime,
        p_rank,
        ring: Ring::Rational,
        exhibiting_chain: complex.simplices[top as usize][pos].clone(),
        cycle,
        rational_fallback: true,
    }))
}

/// A nonzero homology class as a concrete non-bounding cycle: scans degrees
/// from the bottom and returns the first kernel basis vector that fails the
/// boundary test. `None` when all reduced homology vanishes.
pub fn nonbounding_cycle(
    complex: &OrderComplex,
    ring: Ring,
) -> Result<Option<FormalChain>> {
    let h = homology(complex, ring);
    let Some(degree) = h
        .degrees
        .iter()
        .find(|d| d.betti > 0 || !d.torsion.is_empty())
        .map(|d| d.degree)
    else {
        return Ok(None);
    };
    if degree == -1 {
        return Ok(Some(FormalChain::empty_simplex()));
    }
    let boundary = complex.boundary_matrix(degree);
    let basis = kernel_basis(&boundary);
    for vec in &basis {
        let mut c = FormalChain::zero(degree);
        for (j, v) in vec.iter().enumerate() {
            if !v.is_zero() {
                c.add_term(
                    complex.simplices[degree as usize][j].clone(),
                    BigRational::from(v.clone()),
                );
            }
        }
        if boundary_witness(complex, ring, &c)?.is_none() {
            return Ok(Some(c));
        }
    }
    Err(Error::Internal(
        "nonzero homology but every kernel basis vector bounds".into(),
    ))
}
