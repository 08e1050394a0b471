//! The necklace category in its combinatorial form.
//!
//! A necklace `(T, p)` is a set of joints `{0, p} ⊆ T ⊆ [p]`; a necklace map
//! `(T, p) → (U, q)` is an endpoint-preserving `f: [p] → [q]` with
//! `U ⊆ f(T)`. Flags are chains of vertex subsets used by categorification.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplexcat::{self, OrdMap};

const MODULE: &str = "necklace";

/// Largest `p` supported by the bitset representation.
pub const MAX_VERTICES: usize = 63;

/// A subset of `[p]`, stored as a bitset.
pub type VertexSet = u64;

pub fn set_from(items: &[usize]) -> VertexSet {
    items.iter().fold(0, |acc, &i| acc | (1u64 << i))
}

pub fn set_items(s: VertexSet) -> Vec<usize> {
    (0..64).filter(|&i| s & (1u64 << i) != 0).collect()
}

pub fn full_set(p: usize) -> VertexSet {
    if p >= 63 {
        u64::MAX
    } else {
        (1u64 << (p + 1)) - 1
    }
}

fn image_set(f: &OrdMap, s: VertexSet) -> VertexSet {
    set_items(s).into_iter().fold(0, |acc, i| acc | (1u64 << f.apply(i)))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawNecklace", into = "RawNecklace")]
pub struct Necklace {
    p: usize,
    joints: VertexSet,
}

#[derive(Serialize, Deserialize)]
struct RawNecklace {
    p: usize,
    joints: Vec<usize>,
}

impl TryFrom<RawNecklace> for Necklace {
    type Error = Error;
    fn try_from(raw: RawNecklace) -> Result<Self> {
        Necklace::new(raw.p, &raw.joints)
    }
}

impl From<Necklace> for RawNecklace {
    fn from(t: Necklace) -> Self {
        RawNecklace {
            p: t.p,
            joints: t.joint_list(),
        }
    }
}

impl fmt::Debug for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{})", self.joint_list(), self.p)
    }
}

impl Necklace {
    pub fn new(p: usize, joints: &[usize]) -> Result<Self> {
        Self::from_set(p, set_from(joints))
    }

    pub fn from_set(p: usize, joints: VertexSet) -> Result<Self> {
        if p > MAX_VERTICES {
            return Err(Error::invalid(MODULE, "Necklace::new", format!("p = {p} too large")));
        }
        if joints & !full_set(p) != 0 {
            return Err(Error::invalid(MODULE, "Necklace::new", "joint outside [p]"));
        }
        if joints & 1 == 0 || joints & (1u64 << p) == 0 {
            return Err(Error::invalid(
                MODULE,
                "Necklace::new",
                "joints must contain both endpoints",
            ));
        }
        Ok(Necklace { p, joints })
    }

    /// The simplex Δ^n viewed as the necklace `({0, n}, n)`.
    pub fn simplex(n: usize) -> Self {
        Necklace {
            p: n,
            joints: 1 | (1u64 << n),
        }
    }

    /// The spine `([p], p)`, a wedge of `p` edges.
    pub fn spine(p: usize) -> Self {
        Necklace {
            p,
            joints: full_set(p),
        }
    }

    /// Wedge of simplices of the given (positive) dimensions.
    pub fn from_beads(beads: &[usize]) -> Result<Self> {
        if beads.contains(&0) {
            return Err(Error::invalid(MODULE, "from_beads", "beads must be positive"));
        }
        let mut joints = vec![0];
        let mut acc = 0;
        for &b in beads {
            acc += b;
            joints.push(acc);
        }
        Necklace::new(acc, &joints)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn joints(&self) -> VertexSet {
        self.joints
    }

    pub fn joint_list(&self) -> Vec<usize> {
        set_items(self.joints)
    }

    /// Dimensions of the beads, left to right.
    pub fn beads(&self) -> Vec<usize> {
        self.joint_list().windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn bead_count(&self) -> usize {
        self.joints.count_ones() as usize - 1
    }

    pub fn max_bead(&self) -> usize {
        self.beads().into_iter().max().unwrap_or(0)
    }
}

/// Concatenation `(T ∪ (p + U), p + q)`.
pub fn wedge(a: &Necklace, b: &Necklace) -> Necklace {
    Necklace {
        p: a.p + b.p,
        joints: a.joints | (b.joints << a.p),
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawNeckMap", into = "RawNeckMap")]
pub struct NeckMap {
    src: Necklace,
    dst: Necklace,
    f: OrdMap,
}

#[derive(Serialize, Deserialize)]
struct RawNeckMap {
    src: Necklace,
    dst: Necklace,
    map: Vec<usize>,
}

impl TryFrom<RawNeckMap> for NeckMap {
    type Error = Error;
    fn try_from(raw: RawNeckMap) -> Result<Self> {
        let f = OrdMap::new(raw.dst.p, raw.map)?;
        NeckMap::new(raw.src, raw.dst, f)
    }
}

impl From<NeckMap> for RawNeckMap {
    fn from(m: NeckMap) -> Self {
        RawNeckMap {
            src: m.src,
            dst: m.dst,
            map: m.f.table().to_vec(),
        }
    }
}

impl fmt::Debug for NeckMap {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{:?}-{:?}->{:?}", self.src, self.f.table(), self.dst)
    }
}

impl NeckMap {
    pub fn new(src: Necklace, dst: Necklace, f: OrdMap) -> Result<Self> {
        if f.dom() != src.p || f.cod() != dst.p {
            return Err(Error::mismatch(
                MODULE,
                "NeckMap::new",
                format!("underlying map [{}]→[{}] vs necklaces {src:?}, {dst:?}", f.dom(), f.cod()),
            ));
        }
        if !simplexcat::is_interval(&f) {
            return Err(Error::invalid(MODULE, "NeckMap::new", "map must preserve endpoints"));
        }
        if dst.joints & !image_set(&f, src.joints) != 0 {
            return Err(Error::invalid(
                MODULE,
                "NeckMap::new",
                "target joints not contained in the image of source joints",
            ));
        }
        Ok(NeckMap { src, dst, f })
    }

    pub fn identity(t: Necklace) -> Self {
        NeckMap {
            src: t,
            dst: t,
            f: OrdMap::identity(t.p),
        }
    }

    pub fn src(&self) -> &Necklace {
        &self.src
    }

    pub fn dst(&self) -> &Necklace {
        &self.dst
    }

    pub fn underlying(&self) -> &OrdMap {
        &self.f
    }

    /// Image of the source joints.
    pub fn joint_image(&self) -> VertexSet {
        image_set(&self.f, self.src.joints)
    }

    pub fn is_active(&self) -> bool {
        self.joint_image() == self.dst.joints
    }

    pub fn is_inert(&self) -> bool {
        self.f.is_identity()
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &NeckMap) -> Result<NeckMap> {
        if self.dst != g.src {
            return Err(Error::mismatch(
                MODULE,
                "compose",
                format!("{:?} vs {:?}", self.dst, g.src),
            ));
        }
        Ok(NeckMap {
            src: self.src,
            dst: g.dst,
            f: simplexcat::compose(&self.f, &g.f)?,
        })
    }
}

/// The unique factorization `f = inert ∘ active`, returned as `(active, inert)`.
pub fn active_inert_factor(f: &NeckMap) -> (NeckMap, NeckMap) {
    let mid = Necklace {
        p: f.dst.p,
        joints: f.joint_image(),
    };
    (
        NeckMap {
            src: f.src,
            dst: mid,
            f: f.f.clone(),
        },
        NeckMap {
            src: mid,
            dst: f.dst,
            f: OrdMap::identity(f.dst.p),
        },
    )
}

/// δ_j : Δ^{n−1} → Δ^n for `0 < j < n`.
pub fn delta(n: usize, j: usize) -> Result<NeckMap> {
    if j == 0 || j >= n {
        return Err(Error::invalid(MODULE, "delta", format!("need 0 < {j} < {n}")));
    }
    NeckMap::new(Necklace::simplex(n - 1), Necklace::simplex(n), OrdMap::coface(n, j)?)
}

/// σ_i : Δ^{n+1} → Δ^n.
pub fn sigma(n: usize, i: usize) -> Result<NeckMap> {
    NeckMap::new(
        Necklace::simplex(n + 1),
        Necklace::simplex(n),
        OrdMap::codegeneracy(n, i)?,
    )
}

/// ν_{k,l} : Δ^k ∨ Δ^l → Δ^{k+l}, the inert map for `k, l > 0`.
pub fn nu(k: usize, l: usize) -> Result<NeckMap> {
    if k == 0 || l == 0 {
        return Err(Error::invalid(MODULE, "nu", "k and l must be positive"));
    }
    NeckMap::new(
        Necklace::new(k + l, &[0, k, k + l])?,
        Necklace::simplex(k + l),
        OrdMap::identity(k + l),
    )
}

/// The active map from the spine on the joints and the inert map from the
/// spine on all vertices: `(([k],k) → T, ([p],p) → T)`.
pub fn spine_maps(t: &Necklace) -> (NeckMap, NeckMap) {
    let joints = t.joint_list();
    let k = joints.len() - 1;
    let active = NeckMap {
        src: Necklace::spine(k),
        dst: *t,
        f: OrdMap::new(t.p, joints).expect("joints are increasing"),
    };
    let inert = NeckMap {
        src: Necklace::spine(t.p),
        dst: *t,
        f: OrdMap::identity(t.p),
    };
    (active, inert)
}

/// All necklaces with `p` vertices-minus-one, by joint bitset order.
pub fn enumerate_necklaces(p: usize) -> Vec<Necklace> {
    if p == 0 {
        return vec![Necklace { p: 0, joints: 1 }];
    }
    let ends = 1 | (1u64 << p);
    (0..(1u64 << (p - 1)))
        .map(|inner| Necklace {
            p,
            joints: ends | (inner << 1),
        })
        .collect()
}

/// All necklace maps `src → dst`, in lexicographic order of tables.
pub fn enumerate_neckmaps(src: &Necklace, dst: &Necklace) -> Vec<NeckMap> {
    simplexcat::enumerate_interval(src.p, dst.p)
        .into_iter()
        .filter_map(|f| NeckMap::new(*src, *dst, f).ok())
        .collect()
}

/// A chain `T_0 ⊆ … ⊆ T_n` of vertex subsets on a base necklace.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Flag {
    base: Necklace,
    chain: Vec<VertexSet>,
}

impl fmt::Debug for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<Vec<usize>> = self.chain.iter().map(|&s| set_items(s)).collect();
        write!(f, "{:?}{:?}", self.base, parts)
    }
}

impl Flag {
    pub fn new(base: Necklace, chain: Vec<VertexSet>) -> Result<Self> {
        if chain.is_empty() {
            return Err(Error::invalid(MODULE, "Flag::new", "a flag has at least one term"));
        }
        let all = full_set(base.p);
        if base.joints & !chain[0] != 0 {
            return Err(Error::invalid(MODULE, "Flag::new", "first term must contain the joints"));
        }
        for w in chain.windows(2) {
            if w[0] & !w[1] != 0 {
                return Err(Error::invalid(MODULE, "Flag::new", "terms must increase"));
            }
        }
        if chain.last().unwrap() & !all != 0 {
            return Err(Error::invalid(MODULE, "Flag::new", "term outside [p]"));
        }
        Ok(Flag { base, chain })
    }

    pub fn base(&self) -> &Necklace {
        &self.base
    }

    pub fn chain(&self) -> &[VertexSet] {
        &self.chain
    }

    /// Flag length `n` (one less than the number of terms).
    pub fn len(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_flanked(&self) -> bool {
        self.chain[0] == self.base.joints && *self.chain.last().unwrap() == full_set(self.base.p)
    }

    /// Deletes term `i`; the result may fail to be flanked.
    pub fn delete(&self, i: usize) -> Result<Flag> {
        if self.chain.len() < 2 || i >= self.chain.len() {
            return Err(Error::invalid(MODULE, "Flag::delete", "index out of range"));
        }
        let mut chain = self.chain.clone();
        chain.remove(i);
        Flag::new(self.base, chain)
    }

    /// Repeats term `i`.
    pub fn repeat(&self, i: usize) -> Result<Flag> {
        if i >= self.chain.len() {
            return Err(Error::invalid(MODULE, "Flag::repeat", "index out of range"));
        }
        let mut chain = self.chain.clone();
        chain.insert(i, chain[i]);
        Ok(Flag {
            base: self.base,
            chain,
        })
    }

    /// Termwise image under a necklace map out of the base.
    pub fn push_forward(&self, f: &NeckMap) -> Result<Flag> {
        if f.src != self.base {
            return Err(Error::mismatch(MODULE, "Flag::push_forward", "base mismatch"));
        }
        let chain = self.chain.iter().map(|&s| image_set(&f.f, s)).collect();
        Flag::new(f.dst, chain)
    }
}

/// Termwise wedge of two flags of equal length.
pub fn wedge_flags(a: &Flag, b: &Flag) -> Result<Flag> {
    if a.chain.len() != b.chain.len() {
        return Err(Error::mismatch(MODULE, "wedge_flags", "flag lengths differ"));
    }
    let base = wedge(&a.base, &b.base);
    let chain = a
        .chain
        .iter()
        .zip(&b.chain)
        .map(|(&x, &y)| x | (y << a.base.p))
        .collect();
    Flag::new(base, chain)
}

/// A morphism of flagged necklaces: a necklace map with `f(T_i) = U_i`.
pub fn is_flag_morphism(f: &NeckMap, src: &Flag, dst: &Flag) -> bool {
    f.src == src.base
        && f.dst == dst.base
        && src.chain.len() == dst.chain.len()
        && src
            .chain
            .iter()
            .zip(&dst.chain)
            .all(|(&s, &t)| image_set(&f.f, s) == t)
}

/// Flankification of a flagged necklace and its counit `ι γ(T, flag) → (T, flag)`.
pub fn flankify(flag: &Flag) -> (Flag, NeckMap) {
    let top = set_items(*flag.chain.last().unwrap());
    let k = top.len() - 1;
    let relabel = |s: VertexSet| -> VertexSet {
        set_items(s)
            .into_iter()
            .map(|v| top.binary_search(&v).expect("flag terms are nested"))
            .fold(0, |acc, i| acc | (1u64 << i))
    };
    let chain: Vec<VertexSet> = flag.chain.iter().map(|&s| relabel(s)).collect();
    let base = Necklace {
        p: k,
        joints: chain[0],
    };
    let counit = NeckMap {
        src: base,
        dst: flag.base,
        f: OrdMap::new(flag.base.p, top).expect("increasing"),
    };
    (Flag { base, chain }, counit)
}

/// All flags of length `n` on `t` (`T ⊆ T_0 ⊆ … ⊆ T_n ⊆ [p]`).
pub fn enumerate_flags(t: &Necklace, n: usize) -> Vec<Flag> {
    let all = full_set(t.p);
    let free: Vec<usize> = set_items(all & !t.joints);
    let subsets: Vec<VertexSet> = (0..(1u64 << free.len()))
        .map(|mask| {
            t.joints
                | free
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .fold(0, |acc, (_, &v)| acc | (1u64 << v))
        })
        .collect();
    let mut out = Vec::new();
    let mut chain = Vec::with_capacity(n + 1);
    fn rec(
        subsets: &[VertexSet],
        n: usize,
        chain: &mut Vec<VertexSet>,
        base: Necklace,
        out: &mut Vec<Flag>,
    ) {
        if chain.len() == n + 1 {
            out.push(Flag {
                base,
                chain: chain.clone(),
            });
            return;
        }
        for &s in subsets {
            if chain.last().is_none_or(|&prev| prev & !s == 0) {
                chain.push(s);
                rec(subsets, n, chain, base, out);
                chain.pop();
            }
        }
    }
    rec(&subsets, n, &mut chain, *t, &mut out);
    out.sort();
    out
}

/// All flanked flags of length `n` on `t`.
pub fn enumerate_flanked_flags(t: &Necklace, n: usize) -> Vec<Flag> {
    // each non-joint vertex first appears in some term T_1, …, T_n
    let free = set_items(full_set(t.p) & !t.joints);
    if n == 0 {
        return if free.is_empty() { vec![Flag { base: *t, chain: vec![t.joints] }] } else { Vec::new() };
    }
    let total = n.checked_pow(free.len() as u32).expect("too many flags");
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut chain = vec![t.joints; n + 1];
        let mut c = code;
        for &v in &free {
            let level = 1 + c % n;
            c /= n;
            for term in &mut chain[level..] {
                *term |= 1u64 << v;
            }
        }
        out.push(Flag { base: *t, chain });
    }
    out.sort();
    out
}

/// The poset `P_T = {U : T ⊆ U ⊆ [p]}` as a sorted list of bitsets.
pub fn poset_p(t: &Necklace) -> Vec<VertexSet> {
    let mut v: Vec<VertexSet> = enumerate_flags(t, 0).into_iter().map(|f| f.chain[0]).collect();
    v.sort();
    v
}

/// `P(f)(V) = f(V)` for a necklace map `f`.
pub fn poset_map(f: &NeckMap, v: VertexSet) -> VertexSet {
    image_set(&f.f, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nk(p: usize, j: &[usize]) -> Necklace {
        Necklace::new(p, j).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let n = nk(3, &[0, 2, 3]);
        assert_eq!(wedge(&Necklace::simplex(0), &n), n);
        assert_eq!(wedge(&Necklace::simplex(1), &Necklace::simplex(2)), nk(3, &[0, 1, 3]));
        assert_eq!(wedge(&Necklace::simplex(2), &Necklace::simplex(1)), nk(3, &[0, 2, 3]));
    }

    #[test]
    fn factor_examples() {
        let id = NeckMap::identity(nk(2, &[0, 1, 2]));
        let (a, i) = active_inert_factor(&id);
        assert_eq!((a, i), (id.clone(), id));
        let n11 = nu(1, 1).unwrap();
        let (a, i) = active_inert_factor(&n11);
        assert_eq!(a, NeckMap::identity(nk(2, &[0, 1, 2])));
        assert_eq!(i, n11);
        let d1 = delta(2, 1).unwrap();
        let (a, i) = active_inert_factor(&d1);
        assert_eq!(a, d1);
        assert!(i.is_inert() && i.src() == i.dst());
    }

    #[test]
    fn generator_examples() {
        let n12 = nu(1, 2).unwrap();
        assert_eq!(*n12.src(), nk(3, &[0, 1, 3]));
        assert_eq!(*n12.dst(), Necklace::simplex(3));
        assert!(n12.is_inert());
        let d = delta(2, 1).unwrap();
        assert!(d.is_active());
        assert_eq!(d.underlying().table(), &[0, 2]);
        // ν_{k,l} after the inert spine map onto Δ^k ∨ Δ^l is the spine map of Δ^{k+l}
        let (_, inert) = spine_maps(&nk(3, &[0, 1, 3]));
        let (_, full) = spine_maps(&Necklace::simplex(3));
        assert_eq!(inert.then(&n12).unwrap(), full);
    }

    #[test]
    fn spine_examples() {
        let (a, _) = spine_maps(&Necklace::simplex(3));
        assert_eq!(*a.src(), Necklace::spine(1));
        let (a, _) = spine_maps(&nk(3, &[0, 1, 3]));
        assert_eq!(a.underlying().table(), &[0, 1, 3]);
        let s = Necklace::spine(3);
        let (a, i) = spine_maps(&s);
        assert_eq!(a, NeckMap::identity(s));
        assert_eq!(i, NeckMap::identity(s));
    }

    #[test]
    fn flankify_examples() {
        let t = Necklace::spine(2);
        let f = Flag::new(t, vec![t.joints()]).unwrap();
        let (g, e) = flankify(&f);
        assert_eq!(g, f);
        assert_eq!(e, NeckMap::identity(t));

        let t = nk(2, &[0, 2]);
        let f = Flag::new(t, vec![set_from(&[0, 2])]).unwrap();
        let (g, e) = flankify(&f);
        assert_eq!(*g.base(), Necklace::spine(1));
        assert_eq!(g.chain(), &[set_from(&[0, 1])]);
        assert_eq!(e.underlying().table(), &[0, 2]);

        let t = nk(3, &[0, 3]);
        let f = Flag::new(t, vec![set_from(&[0, 3]), set_from(&[0, 1, 3])]).unwrap();
        let (g, _) = flankify(&f);
        assert_eq!(*g.base(), nk(2, &[0, 2]));
        assert_eq!(g.chain(), &[set_from(&[0, 2]), set_from(&[0, 1, 2])]);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_necklaces(3).len(), 4);
        assert!(enumerate_flanked_flags(&nk(2, &[0, 2]), 0).is_empty());
        assert_eq!(enumerate_flanked_flags(&Necklace::spine(1), 0).len(), 1);
        let d1 = Necklace::simplex(1);
        assert_eq!(enumerate_neckmaps(&d1, &d1), vec![NeckMap::identity(d1)]);
        for t in enumerate_necklaces(4) {
            for n in 0..3 {
                let slow: Vec<Flag> = enumerate_flags(&t, n).into_iter().filter(Flag::is_flanked).collect();
                assert_eq!(enumerate_flanked_flags(&t, n), slow);
            }
        }
    }

    #[test]
    fn serde_formats() {
        let t = nk(3, &[0, 1, 3]);
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"p":3,"joints":[0,1,3]}"#);
        let m = nu(1, 2).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        let back: NeckMap = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<Necklace>(r#"{"p":3,"joints":[0,1]}"#).is_err());
    }
}
