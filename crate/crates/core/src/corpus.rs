//! Built-in group constructors and the default analysis corpus.
//!
//! Everything is reproducible from literal permutation data or tiny finite
//! field tables; no external group database is consulted. Metadata attached
//! to corpus entries records known structural facts from the classification
//! literature (Gorenstein–Lyons 1983; Aschbacher, "Simple connectivity of
//! p-group complexes", Israel J. Math 1993) and is only ever *compared*
//! against computed values, never fed into a computation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::group::{Group, GroupFile, Subgroup};
use crate::perm::Permutation;
use crate::{Error, Result, DEFAULT_ELEMENT_CAP};

/// Small finite field GF(p^k) with table-based arithmetic, used only to
/// realize projective-line actions.
struct Gf {
    q: usize,
    add: Vec<Vec<u8>>,
    mul: Vec<Vec<u8>>,
    inv: Vec<u8>,
}

impl Gf {
    /// `poly` holds the coefficients of a monic irreducible of degree k over
    /// GF(p), low degree first, without the leading 1.
    fn new(p: usize, k: usize, poly: &[u8]) -> Gf {
        assert_eq!(poly.len(), k);
        let q = p.pow(k as u32);
        // element = digits base p, index = Σ digit_i p^i
        let digits = |x: usize| -> Vec<usize> {
            let mut d = vec![0; k];
            let mut x = x;
            for slot in d.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            d
        };
        let undigits = |d: &[usize]| -> usize { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let mut add = vec![vec![0u8; q]; q];
        for (x, row) in add.iter_mut().enumerate() {
            for (y, slot) in row.iter_mut().enumerate() {
                let dx = digits(x);
                let dy = digits(y);
                let s: Vec<usize> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                *slot = undigits(&s) as u8;
            }
        }
        // polynomial multiplication modulo the irreducible
        let mut mul = vec![vec![0u8; q]; q];
        for (x, row) in mul.iter_mut().enumerate() {
            for (y, slot) in row.iter_mut().enumerate() {
                let dx = digits(x);
                let dy = digits(y);
                let mut prod = vec![0usize; 2 * k];
                for (i, &a) in dx.iter().enumerate() {
                    for (j, &b) in dy.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + a * b) % p;
                    }
                }
                // reduce: x^k = -poly
                for d in (k..2 * k).rev() {
                    let c = prod[d];
                    if c == 0 {
                        continue;
                    }
                    prod[d] = 0;
                    for (i, &pc) in poly.iter().enumerate() {
                        let sub = (c * pc as usize) % p;
                        prod[d - k + i] = (prod[d - k + i] + p - sub) % p;
                    }
                }
                *slot = undigits(&prod[..k]) as u8;
            }
        }
        let mut inv = vec![0u8; q];
        for x in 1..q {
            for y in 1..q {
                if mul[x][y] == 1 {
                    inv[x] = y as u8;
                    break;
                }
            }
            assert_ne!(inv[x], 0, "field element must be invertible");
        }
        Gf { q, add, mul, inv }
    }

    fn for_q(q: usize) -> Gf {
        match q {
            4 => Gf::new(2, 2, &[1, 1]),  // x² + x + 1
            8 => Gf::new(2, 3, &[1, 1, 0]), // x³ + x + 1
            9 => Gf::new(3, 2, &[1, 0]),  // x² + 1
            _ => {
                // prime field
                let mut add = vec![vec![0u8; q]; q];
                let mut mul = vec![vec![0u8; q]; q];
                let mut inv = vec![0u8; q];
                for x in 0..q {
                    for y in 0..q {
                        add[x][y] = ((x + y) % q) as u8;
                        mul[x][y] = ((x * y) % q) as u8;
                    }
                }
                for x in 1..q {
                    inv[x] = (1..q).find(|&y| x * y % q == 1).unwrap() as u8;
                }
                Gf { q, add, mul, inv }
            }
        }
    }

    fn neg(&self, x: u8) -> u8 {
        (0..self.q as u8).find(|&y| self.add[x as usize][y as usize] == 0).unwrap()
    }

    /// A generator of the multiplicative group.
    fn primitive(&self) -> u8 {
        'outer: for c in 1..self.q as u8 {
            let mut x = c;
            for _ in 1..self.q - 2 {
                x = self.mul[x as usize][c as usize];
                if x == 1 {
                    continue 'outer;
                }
            }
            return c;
        }
        1 // q = 2
    }

    fn pow(&self, x: u8, e: usize) -> u8 {
        let mut acc = 1u8;
        for _ in 0..e {
            acc = self.mul[acc as usize][x as usize];
        }
        acc
    }
}

/// Projective line over GF(q): points `0..q` are field elements, point `q`
/// is ∞.
fn projective_perm<F>(q: usize, f: F) -> Permutation
where
    F: Fn(usize) -> usize,
{
    let images: Vec<u32> = (0..=q).map(|x| f(x) as u32).collect();
    Permutation::from_images(images).expect("projective map is a bijection")
}

pub fn symmetric(n: usize) -> Result<Group> {
    assert!(n >= 1);
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[vec![0, 1]])?);
    }
    if n >= 3 {
        gens.push(Permutation::from_cycles(n, &[(0..n as u32).collect()])?);
    }
    Group::generate(n, gens, DEFAULT_ELEMENT_CAP, &format!("sym{n}"))
}

pub fn alternating(n: usize) -> Result<Group> {
    assert!(n >= 3);
    let mut gens = vec![Permutation::from_cycles(n, &[vec![0, 1, 2]])?];
    if n > 3 {
        let cycle: Vec<u32> = if n % 2 == 1 {
            (0..n as u32).collect()
        } else {
            (1..n as u32).collect()
        };
        gens.push(Permutation::from_cycles(n, &[cycle])?);
    }
    Group::generate(n, gens, DEFAULT_ELEMENT_CAP, &format!("alt{n}"))
}

pub fn cyclic(n: usize) -> Result<Group> {
    assert!(n >= 1);
    let gens = if n == 1 {
        vec![]
    } else {
        vec![Permutation::from_cycles(n, &[(0..n as u32).collect()])?]
    };
    Group::generate(n, gens, DEFAULT_ELEMENT_CAP, &format!("cyc{n}"))
}

/// Dihedral group of order 2n acting on n points.
pub fn dihedral(n: usize) -> Result<Group> {
    assert!(n >= 3);
    let rot = Permutation::from_cycles(n, &[(0..n as u32).collect()])?;
    let refl = Permutation::from_images((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect())?;
    Group::generate(n, vec![rot, refl], DEFAULT_ELEMENT_CAP, &format!("dih{n}"))
}

/// Elementary abelian p^k on k·p points (one p-cycle per block).
pub fn elementary_abelian(p: usize, k: usize) -> Result<Group> {
    assert!(k >= 1);
    let degree = p * k;
    let gens = (0..k)
        .map(|b| {
            let cyc: Vec<u32> = (0..p as u32).map(|i| (b * p) as u32 + i).collect();
            Permutation::from_cycles(degree, &[cyc])
        })
        .collect::<Result<Vec<_>>>()?;
    Group::generate(degree, gens, DEFAULT_ELEMENT_CAP, &format!("elab{p}_{k}"))
}

pub fn klein_four() -> Result<Group> {
    Ok(elementary_abelian(2, 2)?.with_name("klein4"))
}

/// The Klein four subgroup of double transpositions inside a symmetric group
/// on 4 points.
pub fn klein_four_in_sym4(s4: &Group) -> Subgroup {
    let a = s4
        .index_of(&Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap())
        .unwrap();
    let b = s4
        .index_of(&Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap())
        .unwrap();
    Subgroup::generated(s4, &[a, b])
}

/// Frobenius group C_q ⋊ C_r on q points: translations plus scaling by an
/// element of multiplicative order r.
pub fn frobenius(q: usize, r: usize) -> Result<Group> {
    let gf = Gf::for_q(q);
    assert!(q >= 3 && (q - 1).is_multiple_of(r) && r >= 2);
    let c = gf.pow(gf.primitive(), (q - 1) / r);
    let t = Permutation::from_images((0..q as u32).map(|x| gf.add[x as usize][1] as u32).collect())?;
    let s = Permutation::from_images((0..q as u32).map(|x| gf.mul[x as usize][c as usize] as u32).collect())?;
    Group::generate(q, vec![t, s], DEFAULT_ELEMENT_CAP, &format!("frob{q}_{r}"))
}

/// PSL(2,q) on the projective line (q+1 points), generated by the
/// translation x↦x+1, the square scaling x↦ζ²x, and the inversion x↦−1/x.
pub fn psl2(q: usize) -> Result<Group> {
    let gf = Gf::for_q(q);
    let inf = q;
    let t = projective_perm(q, |x| if x == inf { inf } else { gf.add[x][1] as usize });
    let z = gf.primitive();
    let z2 = gf.mul[z as usize][z as usize];
    let s = projective_perm(q, |x| if x == inf { inf } else { gf.mul[x][z2 as usize] as usize });
    let w = projective_perm(q, |x| {
        if x == inf {
            0
        } else if x == 0 {
            inf
        } else {
            gf.neg(gf.inv[x]) as usize
        }
    });
    let g = Group::generate(q + 1, vec![t, s, w], DEFAULT_ELEMENT_CAP, &format!("psl2_{q}"))?;
    let expected = q * (q * q - 1) / num_integer::gcd(2, q - 1);
    if g.order() != expected {
        return Err(Error::Internal(format!(
            "psl2({q}) enumeration produced order {} (expected {expected})",
            g.order()
        )));
    }
    Ok(g)
}

/// PΓL(2,8) = PSL(2,8) extended by the field automorphism x↦x², acting on
/// the 9 points of the projective line over GF(8).
pub fn pgammal2_8() -> Result<Group> {
    let q = 8;
    let gf = Gf::for_q(q);
    let base = psl2(q)?;
    let frob = projective_perm(q, |x| if x == q { q } else { gf.mul[x][x] as usize });
    let mut gens = base.generators().to_vec();
    gens.push(frob);
    let g = Group::generate(q + 1, gens, DEFAULT_ELEMENT_CAP, "pgammal2_8")?;
    if g.order() != 1512 {
        return Err(Error::Internal(format!(
            "pgammal2_8 enumeration produced order {}",
            g.order()
        )));
    }
    Ok(g)
}

/// The PSL(2,8) subgroup inside PΓL(2,8) (shared degree-9 action).
pub fn psl2_8_in_pgammal(g: &Group) -> Result<Subgroup> {
    let base = psl2(8)?;
    Subgroup::generated_from_perms(g, base.generators())
}

/// SL(2,p) acting on the p²−1 nonzero vectors of GF(p)², p prime.
pub fn sl2(p: usize) -> Result<Group> {
    assert!(p == 2 || p == 3 || p == 5 || p == 7);
    let idx = |x: usize, y: usize| -> usize { x * p + y - 1 }; // (0,0) excluded
    let coords = |i: usize| -> (usize, usize) { ((i + 1) / p, (i + 1) % p) };
    let n = p * p - 1;
    let apply_mat = |m: [[usize; 2]; 2]| -> Permutation {
        let images: Vec<u32> = (0..n)
            .map(|i| {
                let (x, y) = coords(i);
                let nx = (m[0][0] * x + m[0][1] * y) % p;
                let ny = (m[1][0] * x + m[1][1] * y) % p;
                idx(nx, ny) as u32
            })
            .collect();
        Permutation::from_images(images).expect("linear map on nonzero vectors")
    };
    let e12 = apply_mat([[1, 1], [0, 1]]);
    let e21 = apply_mat([[1, 0], [1, 1]]);
    let g = Group::generate(n, vec![e12, e21], DEFAULT_ELEMENT_CAP, &format!("sl2_{p}"))?;
    let expected = p * (p * p - 1);
    if g.order() != expected {
        return Err(Error::Internal(format!("sl2({p}) has order {}", g.order())));
    }
    Ok(g)
}

/// Quaternion group on the 8 symbols ±1, ±i, ±j, ±k.
pub fn quaternion8() -> Result<Group> {
    // index: 1,-1,i,-i,j,-j,k,-k
    let i = Permutation::from_cycles(8, &[vec![0, 2, 1, 3], vec![4, 6, 5, 7]])?;
    let j = Permutation::from_cycles(8, &[vec![0, 4, 1, 5], vec![2, 7, 3, 6]])?;
    let g = Group::generate(8, vec![i, j], DEFAULT_ELEMENT_CAP, "q8")?;
    if g.order() != 8 {
        return Err(Error::Internal("q8 construction broke".into()));
    }
    Ok(g)
}

/// Mathieu group M11 from its standard degree-11 generators.
pub fn mathieu11() -> Result<Group> {
    let a = Permutation::from_cycles(11, &[(0..11).collect()])?;
    let b = Permutation::from_cycles(11, &[vec![2, 6, 10, 7], vec![3, 9, 4, 5]])?;
    let g = Group::generate(11, vec![a, b], DEFAULT_ELEMENT_CAP, "m11")?;
    if g.order() != 7920 {
        return Err(Error::Internal(format!("m11 has order {}", g.order())));
    }
    Ok(g)
}

/// (C3×C3) ⋊ C2 with the involution inverting both factors.
pub fn c3c3_inverted() -> Result<Group> {
    let a = Permutation::from_cycles(6, &[vec![0, 1, 2]])?;
    let b = Permutation::from_cycles(6, &[vec![3, 4, 5]])?;
    let t = Permutation::from_cycles(6, &[vec![1, 2], vec![4, 5]])?;
    Group::generate(6, vec![a, b, t], DEFAULT_ELEMENT_CAP, "c3c3_inv")
}

/// (C3×C3) ⋊ (C2×C2) with each involution inverting one factor.
pub fn c3c3_by_v4() -> Result<Group> {
    let a = Permutation::from_cycles(6, &[vec![0, 1, 2]])?;
    let b = Permutation::from_cycles(6, &[vec![3, 4, 5]])?;
    let t1 = Permutation::from_cycles(6, &[vec![1, 2]])?;
    let t2 = Permutation::from_cycles(6, &[vec![4, 5]])?;
    Group::generate(6, vec![a, b, t1, t2], DEFAULT_ELEMENT_CAP, "c3c3_v4")
}

/// (C5×C5) ⋊ C2 with the involution inverting both factors.
pub fn c5c5_inverted() -> Result<Group> {
    let a = Permutation::from_cycles(10, &[vec![0, 1, 2, 3, 4]])?;
    let b = Permutation::from_cycles(10, &[vec![5, 6, 7, 8, 9]])?;
    let t = Permutation::from_cycles(10, &[vec![1, 4], vec![2, 3], vec![6, 9], vec![7, 8]])?;
    Group::generate(10, vec![a, b, t], DEFAULT_ELEMENT_CAP, "c5c5_inv")
}

/// Known structural facts attached to a corpus entry (regression oracle
/// material, never an input).
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Metadata {
    /// Expected p-rank per prime.
    pub p_rank: BTreeMap<u64, u32>,
    /// Expected disconnectedness of the elementary abelian poset per prime
    /// (equivalently, existence of a strongly p-embedded subgroup).
    pub strongly_embedded: BTreeMap<u64, bool>,
    /// Literature source for the facts above.
    pub citation: String,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub group: Group,
    pub name: String,
    pub provenance: String,
    pub metadata: Metadata,
}

impl CorpusEntry {
    fn plain(group: Group, provenance: &str) -> CorpusEntry {
        CorpusEntry {
            name: group.name().to_string(),
            group,
            provenance: provenance.to_string(),
            metadata: Metadata::default(),
        }
    }

    fn with_metadata(mut self, metadata: Metadata) -> CorpusEntry {
        self.metadata = metadata;
        self
    }
}

/// The built-in corpus: symmetric/alternating groups of small degree,
/// dihedral groups, projective linear groups via the projective-line action,
/// Frobenius groups, a few products and wreath products, and M11.
pub fn corpus_default() -> Result<Vec<CorpusEntry>> {
    let mut out: Vec<CorpusEntry> = Vec::new();

    for n in 2..=8 {
        out.push(CorpusEntry::plain(symmetric(n)?, "symmetric(n)"));
    }
    for n in 3..=8 {
        let e = CorpusEntry::plain(alternating(n)?, "alternating(n)");
        if n == 5 {
            // A5 ≅ L2(4): p-rank a at p = 2 for L2(2^a); Lie rank 1 in
            // characteristic 2, so the 2-local poset is disconnected.
            out.push(e.with_metadata(Metadata {
                p_rank: BTreeMap::from([(2, 2)]),
                strongly_embedded: BTreeMap::from([(2, true)]),
                citation: "Gorenstein-Lyons 1983 Part I §7; Aschbacher 1993 (6.1)".into(),
            }));
        } else {
            out.push(e);
        }
    }
    for n in (3..=50).step_by(2) {
        out.push(CorpusEntry::plain(dihedral(n)?, "dihedral(n), order 2n ≤ 100"));
    }
    for n in [4, 6, 8, 10, 12] {
        out.push(CorpusEntry::plain(dihedral(n)?, "dihedral(n), order 2n ≤ 100"));
    }
    for n in [2, 3, 4, 5, 6, 9, 12] {
        out.push(CorpusEntry::plain(cyclic(n)?, "cyclic(n)"));
    }
    out.push(CorpusEntry::plain(klein_four()?, "elementary_abelian(2,2)"));
    out.push(CorpusEntry::plain(elementary_abelian(3, 2)?, "elementary_abelian(3,2)"));

    for q in [4usize, 5, 7, 8, 9, 11, 13] {
        let e = CorpusEntry::plain(psl2(q)?, "psl2(q), projective line action");
        out.push(e);
    }
    out.push(
        CorpusEntry::plain(pgammal2_8()?, "psl2(8) + field automorphism x↦x²").with_metadata(
            Metadata {
                p_rank: BTreeMap::from([(3, 2)]),
                strongly_embedded: BTreeMap::from([(3, true)]),
                citation: "Gorenstein-Lyons 1983 Part I §7; Aschbacher 1993 (6.1)".into(),
            },
        ),
    );

    out.push(CorpusEntry::plain(frobenius(7, 3)?, "frobenius(7,3)"));
    out.push(CorpusEntry::plain(frobenius(5, 4)?, "frobenius(5,4)"));
    out.push(CorpusEntry::plain(frobenius(7, 6)?, "frobenius(7,6)"));
    out.push(CorpusEntry::plain(frobenius(13, 3)?, "frobenius(13,3)"));
    out.push(CorpusEntry::plain(frobenius(13, 4)?, "frobenius(13,4)"));

    out.push(CorpusEntry::plain(quaternion8()?, "quaternion8()"));
    out.push(CorpusEntry::plain(sl2(3)?, "sl2(3) on nonzero vectors"));
    out.push(CorpusEntry::plain(sl2(5)?, "sl2(5) on nonzero vectors"));
    out.push(CorpusEntry::plain(c3c3_inverted()?, "c3c3_inverted()"));
    out.push(CorpusEntry::plain(c3c3_by_v4()?, "c3c3_by_v4()"));
    out.push(CorpusEntry::plain(c5c5_inverted()?, "c5c5_inverted()"));

    let s3 = symmetric(3)?;
    let s4 = symmetric(4)?;
    let a4 = alternating(4)?;
    let d5 = dihedral(5)?;
    let f21 = frobenius(7, 3)?;
    out.push(CorpusEntry::plain(
        Group::direct_product(&s3, &s3, DEFAULT_ELEMENT_CAP)?,
        "direct_product(sym3, sym3)",
    ));
    out.push(CorpusEntry::plain(
        Group::direct_product(&s3, &s4, DEFAULT_ELEMENT_CAP)?,
        "direct_product(sym3, sym4)",
    ));
    out.push(CorpusEntry::plain(
        Group::direct_product(&a4, &a4, DEFAULT_ELEMENT_CAP)?,
        "direct_product(alt4, alt4)",
    ));
    out.push(CorpusEntry::plain(
        Group::direct_product(&a4, &s3, DEFAULT_ELEMENT_CAP)?,
        "direct_product(alt4, sym3)",
    ));
    out.push(CorpusEntry::plain(
        Group::direct_product(&d5, &d5, DEFAULT_ELEMENT_CAP)?,
        "direct_product(dih5, dih5)",
    ));
    out.push(CorpusEntry::plain(
        Group::direct_product(&f21, &f21, DEFAULT_ELEMENT_CAP)?,
        "direct_product(frob7_3, frob7_3)",
    ));
    out.push(CorpusEntry::plain(
        Group::direct_product(&d5, &s3, DEFAULT_ELEMENT_CAP)?,
        "direct_product(dih5, sym3)",
    ));
    out.push(CorpusEntry::plain(
        Group::wreath_cyclic(&s3, 2, DEFAULT_ELEMENT_CAP)?,
        "wreath_cyclic(sym3, 2)",
    ));

    out.push(
        CorpusEntry::plain(mathieu11()?, "mathieu11(), standard degree-11 generators")
            .with_metadata(Metadata {
                p_rank: BTreeMap::from([(3, 2)]),
                strongly_embedded: BTreeMap::from([(3, true)]),
                citation: "Gorenstein-Lyons 1983 Part I §7; Aschbacher 1993 (6.1)".into(),
            }),
    );

    Ok(out)
}

/// Resolves `builtin:<name>` strings used by the CLI.
pub fn builtin(name: &str) -> Result<Group> {
    if let Some(rest) = name.strip_prefix("sym") {
        if let Ok(n) = rest.parse() {
            return symmetric(n);
        }
    }
    if let Some(rest) = name.strip_prefix("alt") {
        if let Ok(n) = rest.parse() {
            return alternating(n);
        }
    }
    if let Some(rest) = name.strip_prefix("dih") {
        if let Ok(n) = rest.parse() {
            return dihedral(n);
        }
    }
    if let Some(rest) = name.strip_prefix("cyc") {
        if let Ok(n) = rest.parse() {
            return cyclic(n);
        }
    }
    if let Some(rest) = name.strip_prefix("psl2_") {
        if let Ok(q) = rest.parse() {
            return psl2(q);
        }
    }
    if let Some(rest) = name.strip_prefix("sl2_") {
        if let Ok(p) = rest.parse() {
            return sl2(p);
        }
    }
    if let Some(rest) = name.strip_prefix("frob") {
        let parts: Vec<&str> = rest.split('_').collect();
        if parts.len() == 2 {
            if let (Ok(q), Ok(r)) = (parts[0].parse(), parts[1].parse()) {
                return frobenius(q, r);
            }
        }
    }
    if let Some(rest) = name.strip_prefix("elab") {
        let parts: Vec<&str> = rest.split('_').collect();
        if parts.len() == 2 {
            if let (Ok(p), Ok(k)) = (parts[0].parse(), parts[1].parse()) {
                return elementary_abelian(p, k);
            }
        }
    }
    match name {
        "klein4" => klein_four(),
        "q8" => quaternion8(),
        "m11" => mathieu11(),
        "pgammal2_8" => pgammal2_8(),
        "c3c3_inv" => c3c3_inverted(),
        "c3c3_v4" => c3c3_by_v4(),
        "c5c5_inv" => c5c5_inverted(),
        "sym3xsym3" => {
            let s3 = symmetric(3)?;
            Group::direct_product(&s3, &s3, DEFAULT_ELEMENT_CAP)
        }
        "s3wrc2" => Group::wreath_cyclic(&symmetric(3)?, 2, DEFAULT_ELEMENT_CAP),
        _ => Err(Error::PreconditionViolated(format!("unknown builtin group '{name}'"))),
    }
}

/// Loads a group description from `builtin:<name>` or a JSON file path.
pub fn resolve_group(spec: &str, cap: usize) -> Result<Group> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        builtin(name)
    } else {
        let text = std::fs::read_to_string(spec)?;
        let file: GroupFile = serde_json::from_str(&text)?;
        file.build(cap)
    }
}
