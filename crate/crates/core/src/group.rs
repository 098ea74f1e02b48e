//! Fully enumerated permutation groups and their subgroups.
//!
//! A [`Group`] owns a sorted element list plus an index, so elements are
//! referred to by `u32` indices everywhere downstream. A [`Subgroup`] is a
//! sorted list of element indices into a shared parent, together with a small
//! generating set recomputed at construction. Everything is immutable after
//! construction; operations are pure functions.
//!
//! Equality and hashing of subgroups are by element set *within a shared
//! parent*; groups themselves compare by identity. Cross-parent comparison is
//! only ever done through explicit isomorphism search (see the poset module).

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::perm::Permutation;
use crate::{Error, Result};

#[derive(Debug)]
struct GroupInner {
    degree: usize,
    name: String,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
}

/// A finite permutation group with its full element set enumerated.
#[derive(Clone, Debug)]
pub struct Group {
    inner: Arc<GroupInner>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }
}
impl Eq for Group {}

impl Group {
    fn from_sorted_elements(
        degree: usize,
        name: String,
        generators: Vec<Permutation>,
        mut elements: Vec<Permutation>,
    ) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        Group {
            inner: Arc::new(GroupInner {
                degree,
                name,
                generators,
                elements,
                index,
            }),
        }
    }

    /// Enumerates the closure of `gens` under composition, failing cleanly
    /// once more than `cap` elements appear.
    pub fn generate(
        degree: usize,
        gens: Vec<Permutation>,
        cap: usize,
        name: &str,
    ) -> Result<Group> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut seen: HashMap<Permutation, u32> = HashMap::new();
        let mut elements = vec![Permutation::identity(degree)];
        seen.insert(elements[0].clone(), 0);
        let mut head = 0usize;
        while head < elements.len() {
            let current = elements[head].clone();
            head += 1;
            for g in &gens {
                let next = current.compose(g)?;
                if !seen.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    seen.insert(next.clone(), elements.len() as u32);
                    elements.push(next);
                }
            }
        }
        Ok(Group::from_sorted_elements(degree, name.to_string(), gens, elements))
    }

    /// Direct product acting on disjoint point sets.
    pub fn direct_product(a: &Group, b: &Group, cap: usize) -> Result<Group> {
        let order = a.order().saturating_mul(b.order());
        if order > cap {
            return Err(Error::CapExceeded(cap));
        }
        let degree = a.degree() + b.degree();
        let shift = |p: &Permutation| -> Permutation {
            let mut images: Vec<u32> = (0..a.degree() as u32).collect();
            images.extend(p.images().iter().map(|&i| i + a.degree() as u32));
            Permutation::from_images(images).expect("shifted permutation")
        };
        let embed = |p: &Permutation| -> Permutation {
            let mut images: Vec<u32> = p.images().to_vec();
            images.extend(a.degree() as u32..degree as u32);
            Permutation::from_images(images).expect("embedded permutation")
        };
        let mut elements = Vec::with_capacity(order);
        for x in a.elements() {
            let ex = embed(x);
            for y in b.elements() {
                let sy = shift(y);
                elements.push(ex.compose(&sy)?);
            }
        }
        let mut gens: Vec<Permutation> = a.generators().iter().map(embed).collect();
        gens.extend(b.generators().iter().map(shift));
        let name = format!("{}x{}", a.name(), b.name());
        Ok(Group::from_sorted_elements(degree, name, gens, elements))
    }

    /// Wreath product `G ≀ C_n`: `n` disjoint copies of `G` permuted
    /// cyclically by an `n`-cycle of blocks.
    pub fn wreath_cyclic(g: &Group, n: usize, cap: usize) -> Result<Group> {
        assert!(n >= 1);
        let d = g.degree();
        let degree = d * n;
        let mut gens = Vec::new();
        for p in g.generators() {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for i in 0..d {
                images[i] = p.apply(i as u32);
            }
            gens.push(Permutation::from_images(images)?);
        }
        if n > 1 {
            let mut images = vec![0u32; degree];
            for block in 0..n {
                for i in 0..d {
                    images[block * d + i] = (((block + 1) % n) * d + i) as u32;
                }
            }
            gens.push(Permutation::from_images(images)?);
        }
        Group::generate(degree, gens, cap, &format!("{}wrC{}", g.name(), n))
    }

    pub fn with_name(&self, name: &str) -> Group {
        Group::from_sorted_elements(
            self.degree(),
            name.to_string(),
            self.generators().to_vec(),
            self.elements().to_vec(),
        )
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn order(&self) -> usize {
        self.inner.elements.len()
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.inner.elements
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.inner.elements[i as usize]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.inner.index.get(p).copied()
    }

    /// Identity index; elements are sorted and the identity is
    /// lexicographically least among permutations.
    pub fn identity_index(&self) -> u32 {
        debug_assert!(self.inner.elements[0].is_identity());
        0
    }

    pub fn compose_idx(&self, a: u32, b: u32) -> u32 {
        let p = self
            .element(a)
            .compose(self.element(b))
            .expect("same-degree elements");
        *self.inner.index.get(&p).expect("closure")
    }

    pub fn inverse_idx(&self, a: u32) -> u32 {
        let p = self.element(a).inverse();
        *self.inner.index.get(&p).expect("closure")
    }

    /// `g⁻¹ x g` by index.
    pub fn conjugate_idx(&self, x: u32, g: u32) -> u32 {
        let ginv = self.inverse_idx(g);
        self.compose_idx(self.compose_idx(ginv, x), g)
    }

    pub fn element_order(&self, i: u32) -> u64 {
        self.element(i).order()
    }

    /// The whole group as a subgroup of itself.
    pub fn top(&self) -> Subgroup {
        let members: Vec<u32> = (0..self.order() as u32).collect();
        let gens: Vec<u32> = self
            .generators()
            .iter()
            .map(|g| self.index_of(g).expect("generator is a member"))
            .collect();
        let gens = if gens.is_empty() { vec![self.identity_index()] } else { gens };
        Subgroup {
            parent: self.clone(),
            members,
            gens,
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            parent: self.clone(),
            members: vec![self.identity_index()],
            gens: vec![self.identity_index()],
        }
    }
}

/// JSON wire format for group descriptions: 1-based generator image lists.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

impl GroupFile {
    pub fn from_group(g: &Group) -> GroupFile {
        GroupFile {
            name: g.name().to_string(),
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.one_based_images()).collect(),
        }
    }

    pub fn build(&self, cap: usize) -> Result<Group> {
        let gens = self
            .generators
            .iter()
            .map(|imgs| {
                if imgs.len() != self.degree {
                    return Err(Error::DegreeMismatch(self.degree, imgs.len()));
                }
                Permutation::from_one_based(imgs)
            })
            .collect::<Result<Vec<_>>>()?;
        Group::generate(self.degree, gens, cap, &self.name)
    }
}

/// A subgroup handle: sorted member indices into a shared parent plus a small
/// generating set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Group,
    members: Vec<u32>,
    gens: Vec<u32>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}
impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (Arc::as_ptr(&self.parent.inner) as usize).hash(state);
        self.members.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Subgroup {
    /// Canonical order: by order, then by member list. Used for deterministic
    /// poset node layouts and tie-breaking.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.members.cmp(&other.members))
    }
}

fn closure_in(parent: &Group, gens: &[u32]) -> Vec<u32> {
    let id = parent.identity_index();
    let mut in_set = vec![false; parent.order()];
    in_set[id as usize] = true;
    let mut list = vec![id];
    let mut head = 0;
    while head < list.len() {
        let x = list[head];
        head += 1;
        for &g in gens {
            let y = parent.compose_idx(x, g);
            if !in_set[y as usize] {
                in_set[y as usize] = true;
                list.push(y);
            }
        }
    }
    list.sort_unstable();
    list
}

impl Subgroup {
    /// Smallest subgroup of the parent containing `seed`. The generating set
    /// is reduced incrementally so later closures stay cheap.
    pub fn generated(parent: &Group, seed: &[u32]) -> Subgroup {
        let mut gens: Vec<u32> = Vec::new();
        let mut members = vec![parent.identity_index()];
        for &s in seed {
            debug_assert!((s as usize) < parent.order());
            if members.binary_search(&s).is_err() {
                gens.push(s);
                members = closure_in(parent, &gens);
            }
        }
        if gens.is_empty() {
            gens.push(parent.identity_index());
        }
        Subgroup {
            parent: parent.clone(),
            members,
            gens,
        }
    }

    /// Builds a subgroup directly from a member set that is already known to
    /// be closed (checked in debug builds); generators are recomputed.
    pub fn from_members(parent: &Group, mut members: Vec<u32>) -> Subgroup {
        members.sort_unstable();
        members.dedup();
        let mut gens: Vec<u32> = Vec::new();
        let mut have = vec![parent.identity_index()];
        for &m in &members {
            if have.binary_search(&m).is_err() {
                gens.push(m);
                have = closure_in(parent, &gens);
            }
        }
        debug_assert_eq!(have, members, "member set must be closed");
        if gens.is_empty() {
            gens.push(parent.identity_index());
        }
        Subgroup {
            parent: parent.clone(),
            members,
            gens,
        }
    }

    /// Like [`Subgroup::generated`] but takes raw permutations, failing when
    /// one is not a member of the parent.
    pub fn generated_from_perms(parent: &Group, perms: &[Permutation]) -> Result<Subgroup> {
        let seed = perms
            .iter()
            .map(|p| parent.index_of(p).ok_or(Error::ElementNotInParent))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subgroup::generated(parent, &seed))
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, idx: u32) -> bool {
        self.members.binary_search(&idx).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.parent, other.parent, "intersection needs a shared parent");
        let members: Vec<u32> = self
            .members
            .iter()
            .copied()
            .filter(|&m| other.contains(m))
            .collect();
        Subgroup::from_members(&self.parent, members)
    }

    /// Join: subgroup generated by the union.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.parent, other.parent, "join needs a shared parent");
        let mut seed = self.gens.clone();
        seed.extend_from_slice(&other.gens);
        Subgroup::generated(&self.parent, &seed)
    }

    /// `g⁻¹ H g` for a parent element `g`.
    pub fn conjugate(&self, g: u32) -> Subgroup {
        let members: Vec<u32> = self
            .members
            .iter()
            .map(|&m| self.parent.conjugate_idx(m, g))
            .collect();
        let mut members = members;
        members.sort_unstable();
        let gens: Vec<u32> = self
            .gens
            .iter()
            .map(|&m| self.parent.conjugate_idx(m, g))
            .collect();
        Subgroup {
            parent: self.parent.clone(),
            members,
            gens,
        }
    }

    /// Normality of `self` in `g` checked on generators.
    pub fn is_normal_in(&self, g: &Subgroup) -> bool {
        assert_eq!(self.parent, g.parent);
        g.gens.iter().all(|&x| {
            self.gens
                .iter()
                .all(|&h| self.contains(self.parent.conjugate_idx(h, x)))
        })
    }

    pub fn is_abelian(&self) -> bool {
        let p = &self.parent;
        self.gens.iter().all(|&a| {
            self.gens
                .iter()
                .all(|&b| p.compose_idx(a, b) == p.compose_idx(b, a))
        })
    }

    /// Conjugacy classes of `self` (orbits of members under conjugation by
    /// generators), each sorted, listed by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let p = &self.parent;
        let mut assigned = vec![false; p.order()];
        let mut classes = Vec::new();
        for &m in &self.members {
            if assigned[m as usize] {
                continue;
            }
            let mut orbit = vec![m];
            assigned[m as usize] = true;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for &g in &self.gens {
                    let y = p.conjugate_idx(x, g);
                    if !assigned[y as usize] {
                        assigned[y as usize] = true;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        classes
    }

    /// Materializes the subgroup as a standalone group on the same points.
    pub fn to_group(&self, name: &str) -> Group {
        let gens: Vec<Permutation> = self
            .gens
            .iter()
            .map(|&i| self.parent.element(i).clone())
            .collect();
        let elements: Vec<Permutation> = self
            .members
            .iter()
            .map(|&i| self.parent.element(i).clone())
            .collect();
        Group::from_sorted_elements(self.parent.degree(), name.to_string(), gens, elements)
    }
}

/// Centralizer of `target` inside `ambient` (element-wise, via generators of
/// `target`).
pub fn centralizer(ambient: &Subgroup, target: &Subgroup) -> Subgroup {
    assert_eq!(ambient.parent(), target.parent());
    let p = ambient.parent();
    let members: Vec<u32> = ambient
        .members()
        .iter()
        .copied()
        .filter(|&x| {
            target
                .gens()
                .iter()
                .all(|&t| p.compose_idx(x, t) == p.compose_idx(t, x))
        })
        .collect();
    Subgroup::from_members(p, members)
}

/// Normalizer of `h` inside `ambient`.
pub fn normalizer(ambient: &Subgroup, h: &Subgroup) -> Subgroup {
    assert_eq!(ambient.parent(), h.parent());
    let p = ambient.parent();
    let members: Vec<u32> = ambient
        .members()
        .iter()
        .copied()
        .filter(|&x| h.gens().iter().all(|&g| h.contains(p.conjugate_idx(g, x))))
        .collect();
    Subgroup::from_members(p, members)
}

pub fn center(g: &Subgroup) -> Subgroup {
    centralizer(g, g)
}

/// Normal closure of `seed` in `ambient`: closed under generation and
/// conjugation by ambient generators.
pub fn normal_closure(ambient: &Subgroup, seed: &[u32]) -> Subgroup {
    let p = ambient.parent();
    let mut h = Subgroup::generated(p, seed);
    loop {
        let mut new_gens: Vec<u32> = Vec::new();
        for &x in h.gens() {
            for &g in ambient.gens() {
                let c = p.conjugate_idx(x, g);
                if !h.contains(c) {
                    new_gens.push(c);
                }
            }
        }
        if new_gens.is_empty() {
            return h;
        }
        let mut seed: Vec<u32> = h.gens().to_vec();
        seed.extend(new_gens);
        h = Subgroup::generated(p, &seed);
    }
}

/// Commutator subgroup `[G,G]` as the normal closure of generator
/// commutators.
pub fn commutator_subgroup(g: &Subgroup) -> Subgroup {
    let p = g.parent();
    let mut seed = Vec::new();
    for &a in g.gens() {
        for &b in g.gens() {
            let ainv = p.inverse_idx(a);
            let binv = p.inverse_idx(b);
            let c = p.compose_idx(p.compose_idx(p.compose_idx(ainv, binv), a), b);
            seed.push(c);
        }
    }
    normal_closure(g, &seed)
}

/// The quotient map data carried along with a coset-action quotient.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    /// Quotient group acting on right cosets.
    pub quotient: Group,
    /// Element index in `G` → coset index.
    pub coset_of: Vec<u32>,
    /// Coset index → representative element index in `G`.
    pub coset_reps: Vec<u32>,
    /// Element index in `G` → element index in the quotient (the projection).
    pub projection: Vec<u32>,
    /// Quotient element index → one preimage element index in `G` (a section
    /// for label round-trips).
    pub section: Vec<u32>,
}

impl QuotientMap {
    /// Image of a subgroup of `G` under the projection.
    pub fn project_subgroup(&self, h: &Subgroup) -> Subgroup {
        let mut img: Vec<u32> = h.members().iter().map(|&m| self.projection[m as usize]).collect();
        img.sort_unstable();
        img.dedup();
        Subgroup::from_members(&self.quotient.top().parent().clone(), img)
    }
}

/// Quotient of `g` by a normal subgroup `n`, realized as the action on right
/// cosets of `n` by right multiplication.
pub fn quotient(g: &Group, n: &Subgroup) -> Result<QuotientMap> {
    if n.parent() != g {
        return Err(Error::ParentMismatch);
    }
    if !n.is_normal_in(&g.top()) {
        return Err(Error::NotNormal);
    }
    let order = g.order();
    let mut coset_of = vec![u32::MAX; order];
    let mut coset_reps: Vec<u32> = Vec::new();
    for x in 0..order as u32 {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let c = coset_reps.len() as u32;
        coset_reps.push(x);
        for &m in n.members() {
            let y = g.compose_idx(m, x);
            coset_of[y as usize] = c;
        }
    }
    let k = coset_reps.len();
    // π(x): coset Ng ↦ N(gx)
    let perm_of = |x: u32| -> Permutation {
        let images: Vec<u32> = coset_reps
            .iter()
            .map(|&r| coset_of[g.compose_idx(r, x) as usize])
            .collect();
        Permutation::from_images(images).expect("coset action is a permutation")
    };
    let gen_perms: Vec<Permutation> = g.generators().iter().map(|p| {
        let x = g.index_of(p).expect("generator");
        perm_of(x)
    }).collect();
    let quotient_group = Group::generate(k, gen_perms, order, &format!("{}/N", g.name()))?;
    debug_assert_eq!(quotient_group.order() * n.order(), g.order());
    let mut projection = vec![0u32; order];
    let mut section = vec![u32::MAX; quotient_group.order()];
    for x in 0..order as u32 {
        let q = quotient_group
            .index_of(&perm_of(x))
            .expect("projection lands in the quotient");
        projection[x as usize] = q;
        if section[q as usize] == u32::MAX {
            section[q as usize] = x;
        }
    }
    Ok(QuotientMap {
        quotient: quotient_group,
        coset_of,
        coset_reps,
        projection,
        section,
    })
}
