//! p-local structure of a finite group: Sylow subgroups, the p-core and
//! p'-core, `Ω₁`, elementary abelian subgroups and p-rank, components and the
//! generalized Fitting subgroup, plus faithfulness and outer-action tests.

use std::collections::HashSet;

use crate::group::{
    center, centralizer, commutator_subgroup, normal_closure, normalizer, quotient, Subgroup,
};
use crate::{Error, Result};

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: usize, p: u64) -> usize {
    let p = p as usize;
    let mut out = 1;
    while n.is_multiple_of(p) {
        out *= p;
        n /= p;
    }
    out
}

pub fn is_p_group(h: &Subgroup, p: u64) -> bool {
    p_part(h.order(), p) == h.order()
}

pub fn is_p_prime_group(h: &Subgroup, p: u64) -> bool {
    !h.order().is_multiple_of(p as usize)
}

pub fn is_elementary_abelian(h: &Subgroup, p: u64) -> bool {
    if h.is_trivial() {
        return false;
    }
    let parent = h.parent();
    h.is_abelian()
        && h.members().iter().all(|&m| {
            let o = parent.element_order(m);
            o == 1 || o == p
        })
}

/// An elementary abelian p-subgroup together with its rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryAbelian {
    pub subgroup: Subgroup,
    pub prime: u64,
    pub rank: u32,
}

impl ElementaryAbelian {
    pub fn new(subgroup: Subgroup, prime: u64) -> Result<ElementaryAbelian> {
        if !is_elementary_abelian(&subgroup, prime) {
            return Err(Error::PreconditionViolated(
                "subgroup is not nontrivial elementary abelian".into(),
            ));
        }
        let mut rank = 0u32;
        let mut n = subgroup.order();
        while n > 1 {
            n /= prime as usize;
            rank += 1;
        }
        debug_assert_eq!((prime as usize).pow(rank), subgroup.order());
        Ok(ElementaryAbelian {
            subgroup,
            prime,
            rank,
        })
    }
}

/// A Sylow p-subgroup by greedy normalizer extension: repeatedly adjoin a
/// p-element of the normalizer of the current p-subgroup until the full
/// p-part of the order is reached.
pub fn sylow(h: &Subgroup, p: u64) -> Result<Subgroup> {
    let parent = h.parent();
    let target = p_part(h.order(), p);
    let mut current = parent.trivial_subgroup();
    while current.order() < target {
        let n = normalizer(h, &current);
        let next = n.members().iter().copied().find(|&x| {
            if current.contains(x) {
                return false;
            }
            let o = parent.element_order(x) as usize;
            o > 1 && p_part(o, p) == o
        });
        match next {
            Some(x) => {
                let mut seed: Vec<u32> = current.gens().to_vec();
                seed.push(x);
                current = Subgroup::generated(parent, &seed);
            }
            None => {
                return Err(Error::Internal(
                    "sylow extension stalled below the p-part".into(),
                ))
            }
        }
    }
    debug_assert!(is_p_group(&current, p));
    Ok(current)
}

/// `O_p(H)`: the intersection of all conjugates of a Sylow p-subgroup.
pub fn o_p(h: &Subgroup, p: u64) -> Result<Subgroup> {
    let syl = sylow(h, p)?;
    let mut core = syl.clone();
    for &g in h.members() {
        if core.is_trivial() {
            break;
        }
        core = core.intersection(&syl.conjugate(g));
    }
    debug_assert!(core.is_normal_in(h));
    debug_assert!(is_p_group(&core, p));
    Ok(core)
}

/// `O_{p'}(H)`: the join of all normal closures `⟨x^H⟩` that are p'-groups.
/// Any normal p'-subgroup is generated by such closures, and a join of
/// normal p'-subgroups is again a normal p'-subgroup, so this is the largest
/// one; the postconditions are checked rather than assumed.
pub fn o_p_prime(h: &Subgroup, p: u64) -> Result<Subgroup> {
    let parent = h.parent();
    let mut result = parent.trivial_subgroup();
    let mut closures = Vec::new();
    for class in h.conjugacy_classes() {
        let rep = class[0];
        let o = parent.element_order(rep);
        if rep == parent.identity_index() || o.is_multiple_of(p) {
            continue;
        }
        let cl = normal_closure(h, &[rep]);
        if is_p_prime_group(&cl, p) {
            closures.push(cl);
        }
    }
    for cl in &closures {
        if !cl.is_subgroup_of(&result) {
            result = result.join(cl);
        }
    }
    if !result.is_normal_in(h) || !is_p_prime_group(&result, p) {
        return Err(Error::Internal("p'-core postcondition failed".into()));
    }
    if closures.iter().any(|cl| !cl.is_subgroup_of(&result)) {
        return Err(Error::Internal("p'-core misses a p'-closure".into()));
    }
    Ok(result)
}

/// `Ω₁(H)` for the prime p: the subgroup generated by the elements with
/// `x^p = 1`.
pub fn omega1(h: &Subgroup, p: u64) -> Subgroup {
    let parent = h.parent();
    let seed: Vec<u32> = h
        .members()
        .iter()
        .copied()
        .filter(|&m| parent.element_order(m) == p)
        .collect();
    Subgroup::generated(parent, &seed)
}

/// All nontrivial elementary abelian p-subgroups of `h`, enumerated rank by
/// rank and deduplicated by element set. Sorted canonically (order, then
/// member list).
pub fn elementary_abelians(h: &Subgroup, p: u64, cap: usize) -> Result<Vec<ElementaryAbelian>> {
    let parent = h.parent();
    let order_p: Vec<u32> = h
        .members()
        .iter()
        .copied()
        .filter(|&m| parent.element_order(m) == p)
        .collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut all: Vec<Subgroup> = Vec::new();
    let mut frontier: Vec<Subgroup> = Vec::new();
    for &x in &order_p {
        let s = Subgroup::generated(parent, &[x]);
        if seen.insert(s.members().to_vec()) {
            frontier.push(s.clone());
            all.push(s);
            if all.len() > cap {
                return Err(Error::CapExceeded(cap));
            }
        }
    }
    while !frontier.is_empty() {
        let mut next: Vec<Subgroup> = Vec::new();
        for e in &frontier {
            for &x in &order_p {
                if e.contains(x) {
                    continue;
                }
                let commutes = e
                    .gens()
                    .iter()
                    .all(|&g| parent.compose_idx(g, x) == parent.compose_idx(x, g));
                if !commutes {
                    continue;
                }
                let mut seed: Vec<u32> = e.gens().to_vec();
                seed.push(x);
                let bigger = Subgroup::generated(parent, &seed);
                if seen.insert(bigger.members().to_vec()) {
                    next.push(bigger.clone());
                    all.push(bigger);
                    if all.len() > cap {
                        return Err(Error::CapExceeded(cap));
                    }
                }
            }
        }
        frontier = next;
    }
    all.sort();
    all.into_iter()
        .map(|s| ElementaryAbelian::new(s, p))
        .collect()
}

/// p-rank: the largest m with an elementary abelian subgroup of order p^m,
/// 0 when p does not divide the order.
pub fn p_rank(h: &Subgroup, p: u64, cap: usize) -> Result<u32> {
    Ok(elementary_abelians(h, p, cap)?
        .iter()
        .map(|e| e.rank)
        .max()
        .unwrap_or(0))
}

/// Bundled p-local data.
#[derive(Clone, Debug)]
pub struct LocalStructure {
    pub prime: u64,
    pub sylow: Subgroup,
    pub o_p: Subgroup,
    pub o_p_prime: Subgroup,
    pub omega1: Subgroup,
    pub p_rank: u32,
}

impl LocalStructure {
    pub fn compute(h: &Subgroup, p: u64, cap: usize) -> Result<LocalStructure> {
        Ok(LocalStructure {
            prime: p,
            sylow: sylow(h, p)?,
            o_p: o_p(h, p)?,
            o_p_prime: o_p_prime(h, p)?,
            omega1: omega1(h, p),
            p_rank: p_rank(h, p, cap)?,
        })
    }
}

/// Simplicity in the non-abelian convention: |H| > 1, H non-abelian, and
/// every nontrivial normal closure is all of H.
pub fn is_simple(h: &Subgroup) -> bool {
    if h.order() <= 1 || h.is_abelian() {
        return false;
    }
    h.conjugacy_classes().iter().all(|class| {
        let rep = class[0];
        rep == h.parent().identity_index() || normal_closure(h, &[rep]).order() == h.order()
    })
}

pub fn is_perfect(h: &Subgroup) -> bool {
    commutator_subgroup(h).order() == h.order()
}

/// Quasisimple: perfect with simple central quotient.
pub fn is_quasisimple(h: &Subgroup) -> bool {
    if h.order() <= 1 || !is_perfect(h) {
        return false;
    }
    let z = center(h);
    if z.order() == h.order() {
        return false;
    }
    let g = h.to_group("component");
    let z_in_g = Subgroup::from_members(
        &g,
        z.members()
            .iter()
            .map(|&m| g.index_of(h.parent().element(m)).expect("member"))
            .collect(),
    );
    match quotient(&g, &z_in_g) {
        Ok(q) => is_simple(&q.quotient.top()),
        Err(_) => false,
    }
}

/// Components, layer, Fitting and generalized Fitting subgroup.
#[derive(Clone, Debug)]
pub struct ComponentData {
    pub components: Vec<Subgroup>,
    pub layer: Subgroup,
    pub fitting: Subgroup,
    pub generalized_fitting: Subgroup,
}

/// Collects the components of `h` by walking the normal-closure lattice:
/// `⟨x^N⟩` for class representatives `x` of `N`, recursing into proper
/// closures (memoized by element set), and keeping the subnormal perfect
/// subgroups with simple central quotient.
pub fn components(h: &Subgroup, lattice_cap: usize) -> Result<ComponentData> {
    let parent = h.parent();
    let mut visited: HashSet<Vec<u32>> = HashSet::new();
    let mut found: Vec<Subgroup> = Vec::new();
    let mut found_sets: HashSet<Vec<u32>> = HashSet::new();
    let mut stack: Vec<Subgroup> = vec![h.clone()];
    visited.insert(h.members().to_vec());
    while let Some(n) = stack.pop() {
        if visited.len() > lattice_cap {
            return Err(Error::CapExceeded(lattice_cap));
        }
        if n.order() > 1 && is_quasisimple(&n) && found_sets.insert(n.members().to_vec()) {
            found.push(n.clone());
        }
        for class in n.conjugacy_classes() {
            let rep = class[0];
            if rep == parent.identity_index() {
                continue;
            }
            let cl = normal_closure(&n, &[rep]);
            if cl.order() < n.order() && visited.insert(cl.members().to_vec()) {
                stack.push(cl);
            }
        }
    }
    found.sort();

    // distinct components commute element-wise
    for (i, a) in found.iter().enumerate() {
        for b in found.iter().skip(i + 1) {
            let commute = a.gens().iter().all(|&x| {
                b.gens()
                    .iter()
                    .all(|&y| parent.compose_idx(x, y) == parent.compose_idx(y, x))
            });
            if !commute {
                return Err(Error::Internal("components fail to commute".into()));
            }
        }
    }

    let mut layer = parent.trivial_subgroup();
    for c in &found {
        layer = layer.join(c);
    }
    let mut fitting = parent.trivial_subgroup();
    let mut n = h.order();
    let mut p = 2u64;
    while n > 1 {
        if n.is_multiple_of(p as usize) {
            while n.is_multiple_of(p as usize) {
                n /= p as usize;
            }
            fitting = fitting.join(&o_p(h, p)?);
        }
        p += 1;
    }
    let generalized_fitting = fitting.join(&layer);
    // self-centralizing: C_H(F*) = Z(F(H))
    let c = centralizer(h, &generalized_fitting);
    if c != center(&fitting) {
        return Err(Error::Internal(
            "generalized Fitting subgroup is not self-centralizing".into(),
        ));
    }
    Ok(ComponentData {
        components: found,
        layer,
        fitting,
        generalized_fitting,
    })
}

pub fn normalizes(a: &Subgroup, l: &Subgroup) -> bool {
    let parent = a.parent();
    a.gens()
        .iter()
        .all(|&x| l.gens().iter().all(|&g| l.contains(parent.conjugate_idx(g, x))))
}

/// Whether `a` acts faithfully on `l` by conjugation, i.e. `C_a(l) = 1`.
/// Requires `a` to normalize `l`.
pub fn acts_faithfully(a: &Subgroup, l: &Subgroup) -> Result<bool> {
    if !normalizes(a, l) {
        return Err(Error::NotNormalizing);
    }
    Ok(centralizer(a, l).is_trivial())
}

/// Whether every nontrivial element of `e` induces an outer automorphism on
/// `l`, tested as `e ∩ (l·C_g(l)) = 1`.
pub fn induces_outer(e: &Subgroup, l: &Subgroup, g: &Subgroup) -> Result<bool> {
    if !normalizes(e, l) {
        return Err(Error::NotNormalizing);
    }
    let lc = l.join(&centralizer(g, l));
    Ok(e.intersection(&lc).is_trivial())
}
