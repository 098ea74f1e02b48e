//! Finite labeled posets and order-preserving maps.
//!
//! The full ≤ relation is stored as a bit matrix, so order queries are O(1)
//! and the reflexive/antisymmetric/transitive axioms are asserted on every
//! construction. Node labels carry subgroup handles for group posets, chains
//! for chain posets, and opaque atoms for synthetic test posets.

use std::collections::HashMap;

use crate::group::{centralizer, Subgroup};
use crate::local::{elementary_abelians, is_p_group, o_p};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NodeLabel {
    Subgroup(Subgroup),
    /// A chain of node indices of some base poset, ascending.
    Chain(Vec<usize>),
    Atom(u32),
}

impl NodeLabel {
    pub fn subgroup(&self) -> Option<&Subgroup> {
        match self {
            NodeLabel::Subgroup(s) => Some(s),
            _ => None,
        }
    }

    pub fn display(&self) -> String {
        match self {
            NodeLabel::Subgroup(s) => format!("subgroup(order {})", s.order()),
            NodeLabel::Chain(c) => format!("chain{c:?}"),
            NodeLabel::Atom(a) => format!("atom{a}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitMat {
    n: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl BitMat {
    fn new(n: usize) -> BitMat {
        let words_per_row = n.div_ceil(64);
        BitMat {
            n,
            words_per_row,
            words: vec![0; n * words_per_row],
        }
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> bool {
        self.words[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize) {
        self.words[i * self.words_per_row + j / 64] |= 1 << (j % 64);
    }

    /// row(i) ⊆ row(j)?
    fn row_subset(&self, i: usize, j: usize) -> bool {
        let a = &self.words[i * self.words_per_row..(i + 1) * self.words_per_row];
        let b = &self.words[j * self.words_per_row..(j + 1) * self.words_per_row];
        a.iter().zip(b).all(|(x, y)| x & !y == 0)
    }
}

#[derive(Clone, Debug)]
pub struct Poset {
    labels: Vec<NodeLabel>,
    leq: BitMat,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.leq == other.leq
    }
}
impl Eq for Poset {}

impl Poset {
    /// Builds a poset from labels and a comparison predicate, asserting
    /// reflexivity, antisymmetry and transitivity.
    pub fn build<F>(labels: Vec<NodeLabel>, leq_fn: F) -> Result<Poset>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        let mut leq = BitMat::new(n);
        for i in 0..n {
            for j in 0..n {
                if i == j || leq_fn(i, j) {
                    leq.set(i, j);
                }
            }
        }
        let poset = Poset { labels, leq };
        poset.check_axioms()?;
        Ok(poset)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if !self.leq.get(i, i) {
                return Err(Error::Internal("relation is not reflexive".into()));
            }
            for j in 0..n {
                if i != j && self.leq.get(i, j) {
                    if self.leq.get(j, i) {
                        return Err(Error::Internal("relation is not antisymmetric".into()));
                    }
                    // transitivity: everything above j is above i
                    if !self.leq.row_subset(j, i) {
                        return Err(Error::Internal("relation is not transitive".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &NodeLabel {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[NodeLabel] {
        &self.labels
    }

    pub fn subgroup_at(&self, i: usize) -> Result<&Subgroup> {
        self.labels[i]
            .subgroup()
            .ok_or_else(|| Error::Internal("node label is not a subgroup".into()))
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq.get(i, j)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq.get(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Index of the node carrying the given label, if present.
    pub fn index_of_label(&self, label: &NodeLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Label → index map for bulk lookups.
    pub fn label_index(&self) -> HashMap<NodeLabel, usize> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect()
    }

    pub fn maximal_nodes(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| !self.lt(i, j)))
            .collect()
    }

    pub fn minimal_nodes(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| !self.lt(j, i)))
            .collect()
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq(j, i)))
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq(i, j)))
    }

    /// Induced subposet on the given nodes; returns the poset and the map
    /// from new indices to old ones.
    pub fn induced(&self, keep: &[usize]) -> (Poset, Vec<usize>) {
        let labels: Vec<NodeLabel> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let poset = Poset::build(labels, |a, b| self.leq(keep[a], keep[b]))
            .expect("induced subposet inherits the axioms");
        (poset, keep.to_vec())
    }

    pub fn strict_upset_ids(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.lt(x, j)).collect()
    }

    pub fn strict_downset_ids(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.lt(j, x)).collect()
    }

    /// Connected components of the comparability graph; returns a component
    /// id per node.
    pub fn components(&self) -> Vec<usize> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(x) = stack.pop() {
                for y in 0..n {
                    if comp[y] == usize::MAX && (self.lt(x, y) || self.lt(y, x)) {
                        comp[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().copied().max().map_or(0, |m| m + 1)
    }

    /// Hasse diagram (cover relation) for export.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.lt(i, j)
                    && !(0..self.len()).any(|k| self.lt(i, k) && self.lt(k, j))
                {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// An order-preserving map between two posets.
#[derive(Clone, Debug)]
pub struct PosetMap {
    pub source: Poset,
    pub target: Poset,
    pub assignment: Vec<usize>,
}

impl PosetMap {
    pub fn new(source: Poset, target: Poset, assignment: Vec<usize>) -> Result<PosetMap> {
        assert_eq!(source.len(), assignment.len());
        for (x, &fx) in assignment.iter().enumerate() {
            if fx >= target.len() {
                return Err(Error::NodeNotFound(fx));
            }
            for (y, &fy) in assignment.iter().enumerate() {
                if source.leq(x, y) && !target.leq(fx, fy) {
                    return Err(Error::Internal(format!(
                        "map is not order preserving at ({x}, {y})"
                    )));
                }
            }
        }
        Ok(PosetMap {
            source,
            target,
            assignment,
        })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn identity(p: &Poset) -> PosetMap {
        PosetMap {
            source: p.clone(),
            target: p.clone(),
            assignment: (0..p.len()).collect(),
        }
    }
}

/// Poset of nontrivial elementary abelian p-subgroups of `h`, ordered by
/// containment; nodes are canonically sorted by (order, member list).
pub fn quillen_poset(h: &Subgroup, p: u64, cap: usize) -> Result<Poset> {
    let eas = elementary_abelians(h, p, cap)?;
    let subs: Vec<Subgroup> = eas.into_iter().map(|e| e.subgroup).collect();
    let labels: Vec<NodeLabel> = subs.iter().cloned().map(NodeLabel::Subgroup).collect();
    Poset::build(labels, |a, b| subs[a].is_subgroup_of(&subs[b]))
}

/// Poset of all nontrivial p-subgroups of `h`: breadth-first growth by
/// adjoining normalizing p-elements, which reaches every p-subgroup through
/// its subnormal chain.
pub fn brown_poset(h: &Subgroup, p: u64, cap: usize) -> Result<Poset> {
    let parent = h.parent();
    let p_elements: Vec<u32> = h
        .members()
        .iter()
        .copied()
        .filter(|&m| {
            let o = parent.element_order(m) as usize;
            o > 1 && crate::local::p_part(o, p) == o
        })
        .collect();
    let mut seen: std::collections::HashSet<Vec<u32>> = std::collections::HashSet::new();
    let mut subs: Vec<Subgroup> = Vec::new();
    let mut frontier: Vec<Subgroup> = Vec::new();
    for &x in &p_elements {
        let s = Subgroup::generated(parent, &[x]);
        if seen.insert(s.members().to_vec()) {
            frontier.push(s.clone());
            subs.push(s);
            if subs.len() > cap {
                return Err(Error::CapExceeded(cap));
            }
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for q in &frontier {
            for &x in &p_elements {
                if q.contains(x) {
                    continue;
                }
                let normalizes = q
                    .gens()
                    .iter()
                    .all(|&g| q.contains(parent.conjugate_idx(g, x)));
                if !normalizes {
                    continue;
                }
                let mut seed: Vec<u32> = q.gens().to_vec();
                seed.push(x);
                let bigger = Subgroup::generated(parent, &seed);
                debug_assert!(is_p_group(&bigger, p));
                if seen.insert(bigger.members().to_vec()) {
                    next.push(bigger.clone());
                    subs.push(bigger);
                    if subs.len() > cap {
                        return Err(Error::CapExceeded(cap));
                    }
                }
            }
        }
        frontier = next;
    }
    subs.sort();
    let labels: Vec<NodeLabel> = subs.iter().cloned().map(NodeLabel::Subgroup).collect();
    Poset::build(labels, |a, b| subs[a].is_subgroup_of(&subs[b]))
}

/// The inflated neighbourhood of `h`: members of the elementary abelian
/// poset of `g` meeting `h` nontrivially.
pub fn neighborhood(g: &Subgroup, p: u64, h: &Subgroup, cap: usize) -> Result<Poset> {
    let ap = quillen_poset(g, p, cap)?;
    neighborhood_in(&ap, h)
}

/// Same, but reusing an already-built ambient poset.
pub fn neighborhood_in(ap: &Poset, h: &Subgroup) -> Result<Poset> {
    let keep: Vec<usize> = (0..ap.len())
        .filter(|&i| {
            let s = ap.label(i).subgroup().expect("group poset");
            s.intersection(h).order() > 1
        })
        .collect();
    Ok(ap.induced(&keep).0)
}

/// Inclusion of the elementary abelian poset of `h` into its neighbourhood
/// in `g`, together with the intersection retraction. The composite laws
/// (retraction ∘ inclusion = id, inclusion ∘ retraction ≤ id) are asserted
/// node-wise.
pub fn inflation_maps(g: &Subgroup, p: u64, h: &Subgroup, cap: usize) -> Result<(PosetMap, PosetMap)> {
    let ah = quillen_poset(h, p, cap)?;
    let nh = neighborhood(g, p, h, cap)?;
    let nh_index = nh.label_index();
    let ah_index = ah.label_index();
    let inclusion: Vec<usize> = (0..ah.len())
        .map(|i| {
            nh_index
                .get(ah.label(i))
                .copied()
                .ok_or_else(|| Error::Internal("subposet node missing from neighbourhood".into()))
        })
        .collect::<Result<_>>()?;
    let retraction: Vec<usize> = (0..nh.len())
        .map(|i| {
            let e = nh.label(i).subgroup().expect("group poset");
            let meet = e.intersection(h);
            ah_index
                .get(&NodeLabel::Subgroup(meet))
                .copied()
                .ok_or_else(|| Error::Internal("intersection missing from subgroup poset".into()))
        })
        .collect::<Result<_>>()?;
    let i_map = PosetMap::new(ah.clone(), nh.clone(), inclusion)?;
    let phi = PosetMap::new(nh.clone(), ah, retraction)?;
    // φ∘i = id
    for x in 0..i_map.source.len() {
        if phi.apply(i_map.apply(x)) != x {
            return Err(Error::Internal("retraction does not split the inclusion".into()));
        }
    }
    // i∘φ ≤ id
    for x in 0..nh.len() {
        if !nh.leq(i_map.apply(phi.apply(x)), x) {
            return Err(Error::Internal("inflation comparability fails".into()));
        }
    }
    Ok((i_map, phi))
}

/// For `E` meeting `h` trivially, the mutually inverse (up to comparability)
/// maps between the elementary abelian poset of `C_h(E)` and the part of the
/// neighbourhood of `h` strictly above `E`:
/// `f(A) = AE` and `g(A) = A ∩ h`, with `g∘f = id` and `f∘g ≤ id`.
pub fn link_maps(
    g: &Subgroup,
    p: u64,
    h: &Subgroup,
    e: &Subgroup,
    cap: usize,
) -> Result<(PosetMap, PosetMap)> {
    if e.intersection(h).order() > 1 {
        return Err(Error::PreconditionViolated(
            "E must intersect H trivially".into(),
        ));
    }
    let ap = quillen_poset(g, p, cap)?;
    let e_id = ap
        .index_of_label(&NodeLabel::Subgroup(e.clone()))
        .ok_or_else(|| Error::PreconditionViolated("E is not a poset node".into()))?;
    let keep: Vec<usize> = ap
        .strict_upset_ids(e_id)
        .into_iter()
        .filter(|&i| {
            let s = ap.label(i).subgroup().expect("group poset");
            s.intersection(h).order() > 1
        })
        .collect();
    let (upset, _) = ap.induced(&keep);
    let che = centralizer(h, e);
    let ac = quillen_poset(&che, p, cap)?;
    let upset_index = upset.label_index();
    let ac_index = ac.label_index();
    let f: Vec<usize> = (0..ac.len())
        .map(|i| {
            let a = ac.label(i).subgroup().expect("group poset");
            let ae = a.join(e);
            upset_index
                .get(&NodeLabel::Subgroup(ae))
                .copied()
                .ok_or_else(|| Error::Internal("AE escaped the upset".into()))
        })
        .collect::<Result<_>>()?;
    let gmap: Vec<usize> = (0..upset.len())
        .map(|i| {
            let a = upset.label(i).subgroup().expect("group poset");
            let meet = a.intersection(h);
            ac_index
                .get(&NodeLabel::Subgroup(meet))
                .copied()
                .ok_or_else(|| Error::Internal("A∩H escaped the centralizer poset".into()))
        })
        .collect::<Result<_>>()?;
    let f_map = PosetMap::new(ac.clone(), upset.clone(), f)?;
    let g_map = PosetMap::new(upset.clone(), ac, gmap)?;
    for x in 0..f_map.source.len() {
        if g_map.apply(f_map.apply(x)) != x {
            return Err(Error::Internal("g∘f is not the identity".into()));
        }
    }
    for x in 0..upset.len() {
        if !upset.leq(f_map.apply(g_map.apply(x)), x) {
            return Err(Error::Internal("f∘g is not below the identity".into()));
        }
    }
    Ok((f_map, g_map))
}

/// Join of two posets: disjoint union with everything in `x` below
/// everything in `y`.
pub fn join(x: &Poset, y: &Poset) -> Poset {
    let nx = x.len();
    let mut labels = x.labels().to_vec();
    labels.extend(y.labels().iter().cloned());
    Poset::build(labels, |a, b| {
        if a < nx && b < nx {
            x.leq(a, b)
        } else if a >= nx && b >= nx {
            y.leq(a - nx, b - nx)
        } else {
            a < nx && b >= nx
        }
    })
    .expect("join of posets is a poset")
}

pub fn strict_upset(x: &Poset, node: usize) -> Result<Poset> {
    if node >= x.len() {
        return Err(Error::NodeNotFound(node));
    }
    Ok(x.induced(&x.strict_upset_ids(node)).0)
}

pub fn strict_downset(x: &Poset, node: usize) -> Result<Poset> {
    if node >= x.len() {
        return Err(Error::NodeNotFound(node));
    }
    Ok(x.induced(&x.strict_downset_ids(node)).0)
}

/// The link of a node: join of its strict downset and strict upset.
pub fn link_poset(x: &Poset, node: usize) -> Result<Poset> {
    let down = strict_downset(x, node)?;
    let up = strict_upset(x, node)?;
    Ok(join(&down, &up))
}

/// Poset of nonempty chains of `x`, ordered by subchain containment.
pub fn chain_poset(x: &Poset, cap: usize) -> Result<Poset> {
    let chains = enumerate_chains(x, cap)?;
    let all: Vec<Vec<usize>> = chains.into_iter().flatten().collect();
    let labels: Vec<NodeLabel> = all.iter().cloned().map(NodeLabel::Chain).collect();
    Poset::build(labels, |a, b| {
        all[a].iter().all(|n| all[b].contains(n))
    })
}

/// All nonempty chains grouped by length-1 (dimension); each chain lists node
/// ids in ascending poset order.
pub fn enumerate_chains(x: &Poset, cap: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    let n = x.len();
    let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut current: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut total = current.len();
    if total > cap {
        return Err(Error::CapExceeded(cap));
    }
    while !current.is_empty() {
        by_dim.push(current.clone());
        let mut next = Vec::new();
        for c in &current {
            let top = *c.last().expect("nonempty chain");
            for j in 0..n {
                if x.lt(top, j) {
                    let mut bigger = c.clone();
                    bigger.push(j);
                    next.push(bigger);
                    total += 1;
                    if total > cap {
                        return Err(Error::CapExceeded(cap));
                    }
                }
            }
        }
        current = next;
    }
    Ok(by_dim)
}

fn validate_chain(x: &Poset, a: &[usize]) -> Result<()> {
    for &i in a {
        if i >= x.len() {
            return Err(Error::NodeNotFound(i));
        }
    }
    for w in a.windows(2) {
        if !x.lt(w[0], w[1]) {
            return Err(Error::NotAChain);
        }
    }
    Ok(())
}

/// A chain is full when no node can be inserted into it except above its
/// maximum.
pub fn is_full_chain(x: &Poset, a: &[usize]) -> Result<bool> {
    validate_chain(x, a)?;
    if a.is_empty() {
        return Err(Error::NotAChain);
    }
    let max = *a.last().expect("nonempty");
    for node in 0..x.len() {
        if a.contains(&node) {
            continue;
        }
        let chains_with = a.iter().all(|&y| x.comparable(node, y));
        if chains_with && !x.lt(max, node) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `b` is an `a`-initial chain when it contains `a` and every extra node
/// lies strictly above `max a`.
pub fn is_a_initial(x: &Poset, a: &[usize], b: &[usize]) -> Result<bool> {
    validate_chain(x, a)?;
    validate_chain(x, b)?;
    if !a.iter().all(|n| b.contains(n)) {
        return Err(Error::NotSubchain);
    }
    if a.is_empty() {
        return Err(Error::NotAChain);
    }
    let max = *a.last().expect("nonempty");
    Ok(b.iter().all(|&n| a.contains(&n) || x.lt(max, n)))
}

/// A replayable witness of contractibility.
#[derive(Clone, Debug)]
pub enum Certificate {
    HasMinimum(usize),
    HasMaximum(usize),
    /// The zigzag `id ≤ f ≥ const_apex` given by a node-wise verified
    /// order-preserving map (a cone through the apex).
    ConicalZigzag { map: Vec<usize>, apex: usize },
    /// A sequence of beat-point removals ending at a single node. Each step
    /// removes a node whose strict upset has a minimum or whose strict
    /// downset has a maximum (witnessed), which is a strong deformation
    /// retraction of finite spaces.
    Dismantling { steps: Vec<BeatStep>, apex: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BeatKind {
    UpBeat,
    DownBeat,
}

#[derive(Clone, Debug)]
pub struct BeatStep {
    pub node: usize,
    pub witness: usize,
    pub kind: BeatKind,
}

impl Certificate {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Certificate::HasMinimum(_) => "has-minimum",
            Certificate::HasMaximum(_) => "has-maximum",
            Certificate::ConicalZigzag { .. } => "conical-zigzag",
            Certificate::Dismantling { .. } => "dismantling",
        }
    }

    /// Re-verifies the certificate against the poset, node by node.
    pub fn replay(&self, x: &Poset) -> bool {
        match self {
            Certificate::HasMinimum(m) => {
                *m < x.len() && (0..x.len()).all(|j| x.leq(*m, j))
            }
            Certificate::HasMaximum(m) => {
                *m < x.len() && (0..x.len()).all(|j| x.leq(j, *m))
            }
            Certificate::ConicalZigzag { map, apex } => {
                if map.len() != x.len() || *apex >= x.len() {
                    return false;
                }
                // order preserving, id ≤ f, const_apex ≤ f
                for i in 0..x.len() {
                    if !x.leq(i, map[i]) || !x.leq(*apex, map[i]) {
                        return false;
                    }
                    for j in 0..x.len() {
                        if x.leq(i, j) && !x.leq(map[i], map[j]) {
                            return false;
                        }
                    }
                }
                true
            }
            Certificate::Dismantling { steps, apex } => {
                let mut alive = vec![true; x.len()];
                for step in steps {
                    if step.node >= x.len()
                        || step.witness >= x.len()
                        || !alive[step.node]
                        || !alive[step.witness]
                    {
                        return false;
                    }
                    let ok = match step.kind {
                        BeatKind::UpBeat => {
                            x.lt(step.node, step.witness)
                                && (0..x.len()).all(|j| {
                                    !alive[j] || !x.lt(step.node, j) || x.leq(step.witness, j)
                                })
                        }
                        BeatKind::DownBeat => {
                            x.lt(step.witness, step.node)
                                && (0..x.len()).all(|j| {
                                    !alive[j] || !x.lt(j, step.node) || x.leq(j, step.witness)
                                })
                        }
                    };
                    if !ok {
                        return false;
                    }
                    alive[step.node] = false;
                }
                alive.iter().filter(|&&a| a).count() == 1 && alive[*apex]
            }
        }
    }
}

/// Optional hint for the cone search on group posets: the subgroup to cone
/// through (all nontrivial elements of order p, central in the p-core).
#[derive(Clone, Debug)]
pub struct ConeHint {
    pub w: Subgroup,
}

impl ConeHint {
    /// The canonical hint for the elementary abelian poset of `h`: the
    /// order-p part of the center of the p-core, when nontrivial.
    pub fn from_p_core(h: &Subgroup, p: u64) -> Result<Option<ConeHint>> {
        let core = o_p(h, p)?;
        if core.is_trivial() {
            return Ok(None);
        }
        let z = crate::group::center(&core);
        let w = crate::local::omega1(&z, p);
        if w.is_trivial() {
            return Ok(None);
        }
        Ok(Some(ConeHint { w }))
    }
}

/// Searches for a contractibility certificate: minimum/maximum first, then
/// the hinted cone `A ↦ A·W` (checked node-wise), then a beat-point
/// dismantling sequence. `None` means no certificate was found, never that
/// the poset is not contractible.
pub fn contractibility_certificate(x: &Poset, hint: Option<&ConeHint>) -> Option<Certificate> {
    if x.is_empty() {
        return None;
    }
    if let Some(m) = x.maximum() {
        return Some(Certificate::HasMaximum(m));
    }
    if let Some(m) = x.minimum() {
        return Some(Certificate::HasMinimum(m));
    }
    if let Some(hint) = hint {
        if let Some(cert) = try_cone(x, hint) {
            return Some(cert);
        }
    }
    try_dismantle(x)
}

fn try_cone(x: &Poset, hint: &ConeHint) -> Option<Certificate> {
    let index = x.label_index();
    let apex = index.get(&NodeLabel::Subgroup(hint.w.clone()))?;
    let mut map = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        let s = x.label(i).subgroup()?;
        let joined = s.join(&hint.w);
        let target = index.get(&NodeLabel::Subgroup(joined))?;
        map.push(*target);
    }
    let cert = Certificate::ConicalZigzag { map, apex: *apex };
    cert.replay(x).then_some(cert)
}

fn try_dismantle(x: &Poset) -> Option<Certificate> {
    let n = x.len();
    let mut alive: Vec<bool> = vec![true; n];
    let mut remaining = n;
    let mut steps = Vec::new();
    loop {
        if remaining == 1 {
            let apex = (0..n).find(|&i| alive[i]).expect("one node left");
            let cert = Certificate::Dismantling { steps, apex };
            debug_assert!(cert.replay(x));
            return Some(cert);
        }
        let mut found = None;
        'search: for i in 0..n {
            if !alive[i] {
                continue;
            }
            // up-beat: strict upset (among alive) has a minimum
            let ups: Vec<usize> = (0..n).filter(|&j| alive[j] && x.lt(i, j)).collect();
            if let Some(&w) = ups.iter().find(|&&w| ups.iter().all(|&j| x.leq(w, j))) {
                found = Some(BeatStep {
                    node: i,
                    witness: w,
                    kind: BeatKind::UpBeat,
                });
                break 'search;
            }
            let downs: Vec<usize> = (0..n).filter(|&j| alive[j] && x.lt(j, i)).collect();
            if let Some(&w) = downs.iter().find(|&&w| downs.iter().all(|&j| x.leq(j, w))) {
                found = Some(BeatStep {
                    node: i,
                    witness: w,
                    kind: BeatKind::DownBeat,
                });
                break 'search;
            }
        }
        {
            let step = found?;
            alive[step.node] = false;
            remaining -= 1;
            steps.push(step);
        }
    }
}

/// Outcome of the fiber criterion for a poset map.
#[derive(Clone, Debug)]
pub enum FiberCheck {
    CertifiedEquivalence(Vec<Certificate>),
    Inconclusive { failing: Vec<usize> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberDirection {
    Down,
    Up,
}

/// Checks contractibility of every fiber `f⁻¹(target_{≤y})` (or `≥y`),
/// certifying the map as a homotopy equivalence when all fibers certify.
/// Never claims a non-equivalence.
pub fn fiber_lemma_check(f: &PosetMap, direction: FiberDirection) -> FiberCheck {
    let mut certs = Vec::new();
    let mut failing = Vec::new();
    for y in 0..f.target.len() {
        let keep: Vec<usize> = (0..f.source.len())
            .filter(|&x| match direction {
                FiberDirection::Down => f.target.leq(f.apply(x), y),
                FiberDirection::Up => f.target.leq(y, f.apply(x)),
            })
            .collect();
        let (fiber, _) = f.source.induced(&keep);
        match contractibility_certificate(&fiber, None) {
            Some(c) => certs.push(c),
            None => failing.push(y),
        }
    }
    if failing.is_empty() {
        FiberCheck::CertifiedEquivalence(certs)
    } else {
        FiberCheck::Inconclusive { failing }
    }
}

/// The attachment filtration of the elementary abelian poset of `g` over the
/// neighbourhood of `h`: a containment-respecting linear extension of the
/// complement, with stages and link decompositions available on demand.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub ambient: Poset,
    /// Ambient node ids lying in the neighbourhood of `h`.
    pub base: Vec<usize>,
    /// Ambient node ids of the complement in attachment order.
    pub order: Vec<usize>,
}

pub fn attachment_filtration(g: &Subgroup, p: u64, h: &Subgroup, cap: usize) -> Result<Filtration> {
    let ambient = quillen_poset(g, p, cap)?;
    let mut base = Vec::new();
    let mut complement = Vec::new();
    for i in 0..ambient.len() {
        let s = ambient.label(i).subgroup().expect("group poset");
        if s.intersection(h).order() > 1 {
            base.push(i);
        } else {
            complement.push(i);
        }
    }
    // nodes are already sorted by (order, members); that is a linear
    // extension of containment
    for (k, &a) in complement.iter().enumerate() {
        for &b in complement.iter().skip(k + 1) {
            if ambient.lt(b, a) {
                return Err(Error::Internal("attachment order violates containment".into()));
            }
        }
    }
    Ok(Filtration {
        ambient,
        base,
        order: complement,
    })
}

impl Filtration {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Stage i: the neighbourhood plus the first i complement nodes.
    pub fn stage(&self, i: usize) -> Poset {
        let mut keep = self.base.clone();
        keep.extend_from_slice(&self.order[..i]);
        keep.sort_unstable();
        self.ambient.induced(&keep).0
    }

    /// The link of the i-th attached node in stage i−1, presented as the
    /// join of its lower part (proper subgroups) and its upper part
    /// (neighbourhood nodes above it). The join presentation is verified
    /// against the link computed directly in stage i.
    pub fn link_decomposition(&self, i: usize) -> Result<(Poset, Poset)> {
        let node = self.order[i];
        let mut keep = self.base.clone();
        keep.extend_from_slice(&self.order[..=i]);
        keep.sort_unstable();
        let (stage, old_ids) = self.ambient.induced(&keep);
        let new_id = old_ids
            .iter()
            .position(|&o| o == node)
            .expect("node in its own stage");
        let lower = strict_downset(&stage, new_id)?;
        let upper = strict_upset(&stage, new_id)?;
        let joined = join(&lower, &upper);
        let direct = link_poset(&stage, new_id)?;
        if joined != direct {
            return Err(Error::Internal("link does not decompose as a join".into()));
        }
        Ok((lower, upper))
    }
}

/// Isomorphism search between two posets with degree-profile pruning;
/// returns a witness bijection when one exists.
pub fn poset_isomorphic(x: &Poset, y: &Poset, search_cap: usize) -> Result<Option<Vec<usize>>> {
    if x.len() != y.len() {
        return Ok(None);
    }
    let n = x.len();
    let profile = |p: &Poset, i: usize| -> (usize, usize) {
        (
            p.strict_downset_ids(i).len(),
            p.strict_upset_ids(i).len(),
        )
    };
    let xp: Vec<_> = (0..n).map(|i| profile(x, i)).collect();
    let yp: Vec<_> = (0..n).map(|i| profile(y, i)).collect();
    {
        let mut xs = xp.clone();
        let mut ys = yp.clone();
        xs.sort_unstable();
        ys.sort_unstable();
        if xs != ys {
            return Ok(None);
        }
    }
    let mut nodes: Vec<usize> = (0..n).collect();
    // most-constrained first: large degree profiles
    nodes.sort_by_key(|&i| std::cmp::Reverse(xp[i].0 + xp[i].1));

    struct Search<'a> {
        nodes: &'a [usize],
        x: &'a Poset,
        y: &'a Poset,
        xp: &'a [(usize, usize)],
        yp: &'a [(usize, usize)],
        assignment: Vec<Option<usize>>,
        used: Vec<bool>,
        budget: usize,
    }

    impl Search<'_> {
        fn backtrack(&mut self, pos: usize) -> Result<bool> {
            if pos == self.nodes.len() {
                return Ok(true);
            }
            if self.budget == 0 {
                return Err(Error::CapExceeded(0));
            }
            self.budget -= 1;
            let i = self.nodes[pos];
            for j in 0..self.y.len() {
                if self.used[j] || self.xp[i] != self.yp[j] {
                    continue;
                }
                let consistent = self.nodes[..pos].iter().all(|&k| {
                    let fk = self.assignment[k].expect("assigned");
                    self.x.leq(i, k) == self.y.leq(j, fk)
                        && self.x.leq(k, i) == self.y.leq(fk, j)
                });
                if !consistent {
                    continue;
                }
                self.assignment[i] = Some(j);
                self.used[j] = true;
                if self.backtrack(pos + 1)? {
                    return Ok(true);
                }
                self.assignment[i] = None;
                self.used[j] = false;
            }
            Ok(false)
        }
    }

    let mut search = Search {
        nodes: &nodes,
        x,
        y,
        xp: &xp,
        yp: &yp,
        assignment: vec![None; n],
        used: vec![false; n],
        budget: search_cap,
    };
    let found = search.backtrack(0)?;
    let assignment = search.assignment;
    if !found {
        return Ok(None);
    }
    let witness: Vec<usize> = assignment.into_iter().map(|a| a.expect("complete")).collect();
    // verify the witness is an order isomorphism
    for i in 0..n {
        for j in 0..n {
            if x.leq(i, j) != y.leq(witness[i], witness[j]) {
                return Err(Error::Internal("isomorphism witness fails to replay".into()));
            }
        }
    }
    Ok(Some(witness))
}

/// Atom-labeled poset from an explicit strict order, for tests and synthetic
/// examples.
pub fn poset_from_pairs(n: usize, strict_pairs: &[(usize, usize)]) -> Result<Poset> {
    // transitive closure
    let mut lt = vec![vec![false; n]; n];
    for &(a, b) in strict_pairs {
        lt[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if lt[i][k] {
                for j in 0..n {
                    if lt[k][j] {
                        lt[i][j] = true;
                    }
                }
            }
        }
    }
    let labels: Vec<NodeLabel> = (0..n as u32).map(NodeLabel::Atom).collect();
    Poset::build(labels, |a, b| lt[a][b])
}
