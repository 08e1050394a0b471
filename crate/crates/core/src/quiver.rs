//! V-enriched quivers over a finite vertex set.
//!
//! Iterated tensor products are handled through [`Layout`]: the flat m-fold
//! product `Q_1 ⊗_S … ⊗_S Q_m` has `(a,b)`-component the coproduct, over middle
//! vertex sequences `c_1 … c_{m−1}` in lexicographic order, of the strict
//! tensors `Q_1(a,c_1) ⊗ … ⊗ Q_m(c_{m−1},b)`. All rebracketings, unitors and
//! tensor products of morphisms are expressed by [`tensor_flat`].

use std::collections::HashMap;
use std::sync::Arc;

use crate::cosmos::{Cosmos, Elt, VMor, VObj};
use crate::error::{Error, Result};

const MODULE: &str = "quiver";

pub type Vertices = Arc<[String]>;

pub fn vertices_from<I, T>(names: I) -> Vertices
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    names.into_iter().map(Into::into).collect::<Vec<String>>().into()
}

/// Vertices named `0, 1, …, n−1`.
pub fn numbered(n: usize) -> Vertices {
    vertices_from((0..n).map(|i| i.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VQuiver {
    cosmos: Cosmos,
    vertices: Vertices,
    hom: Vec<VObj>,
}

impl VQuiver {
    pub fn new(cosmos: Cosmos, vertices: Vertices, mut hom: impl FnMut(usize, usize) -> VObj) -> Self {
        let s = vertices.len();
        let mut h = Vec::with_capacity(s * s);
        for a in 0..s {
            for b in 0..s {
                h.push(hom(a, b));
            }
        }
        VQuiver { cosmos, vertices, hom: h }
    }

    pub fn from_homs(cosmos: Cosmos, vertices: Vertices, hom: Vec<VObj>) -> Result<Self> {
        if hom.len() != vertices.len() * vertices.len() {
            return Err(Error::invalid(MODULE, "from_homs", "hom table size differs from |S|^2"));
        }
        for h in &hom {
            cosmos.check_obj(h)?;
        }
        Ok(VQuiver { cosmos, vertices, hom })
    }

    /// `I_S`: the unit at each vertex and 0 elsewhere.
    pub fn unit(cosmos: Cosmos, vertices: Vertices) -> Self {
        VQuiver::new(cosmos, vertices, |a, b| if a == b { cosmos.unit() } else { VObj::empty() })
    }

    pub fn zero(cosmos: Cosmos, vertices: Vertices) -> Self {
        VQuiver::new(cosmos, vertices, |_, _| VObj::empty())
    }

    pub fn cosmos(&self) -> Cosmos {
        self.cosmos
    }

    pub fn vertices(&self) -> &Vertices {
        &self.vertices
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn hom(&self, a: usize, b: usize) -> &VObj {
        &self.hom[a * self.size() + b]
    }

    pub fn homs(&self) -> &[VObj] {
        &self.hom
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn total_len(&self) -> usize {
        self.hom.iter().map(VObj::len).sum()
    }

    pub fn same_vertices(&self, other: &VQuiver) -> bool {
        self.cosmos == other.cosmos && self.vertices == other.vertices
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMor {
    cosmos: Cosmos,
    vertices: Vertices,
    comp: Vec<VMor>,
}

impl QMor {
    pub fn new(src: &VQuiver, dst: &VQuiver, mut comp: impl FnMut(usize, usize) -> VMor) -> Result<Self> {
        if !src.same_vertices(dst) {
            return Err(Error::mismatch(MODULE, "qmor", "vertex sets differ"));
        }
        let s = src.size();
        let mut c = Vec::with_capacity(s * s);
        for a in 0..s {
            for b in 0..s {
                let f = comp(a, b);
                if f.src() != src.hom(a, b) || f.dst() != dst.hom(a, b) {
                    return Err(Error::mismatch(
                        MODULE,
                        "qmor",
                        format!("component ({a},{b}) has wrong endpoints"),
                    ));
                }
                c.push(f);
            }
        }
        Ok(QMor { cosmos: src.cosmos, vertices: src.vertices.clone(), comp: c })
    }

    pub fn try_new(
        src: &VQuiver,
        dst: &VQuiver,
        mut comp: impl FnMut(usize, usize) -> Result<VMor>,
    ) -> Result<Self> {
        let s = src.size();
        let mut c = Vec::with_capacity(s * s);
        for a in 0..s {
            for b in 0..s {
                c.push(comp(a, b)?);
            }
        }
        let mut it = c.into_iter();
        QMor::new(src, dst, |_, _| it.next().unwrap())
    }

    pub fn identity(q: &VQuiver) -> Self {
        QMor {
            cosmos: q.cosmos,
            vertices: q.vertices.clone(),
            comp: q.hom.iter().map(|h| q.cosmos.id(h)).collect(),
        }
    }

    pub fn cosmos(&self) -> Cosmos {
        self.cosmos
    }

    pub fn vertices(&self) -> &Vertices {
        &self.vertices
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn at(&self, a: usize, b: usize) -> &VMor {
        &self.comp[a * self.size() + b]
    }

    pub fn src(&self) -> VQuiver {
        VQuiver {
            cosmos: self.cosmos,
            vertices: self.vertices.clone(),
            hom: self.comp.iter().map(|f| f.src().clone()).collect(),
        }
    }

    pub fn dst(&self) -> VQuiver {
        VQuiver {
            cosmos: self.cosmos,
            vertices: self.vertices.clone(),
            hom: self.comp.iter().map(|f| f.dst().clone()).collect(),
        }
    }

    pub fn src_hom(&self, a: usize, b: usize) -> &VObj {
        self.at(a, b).src()
    }

    pub fn dst_hom(&self, a: usize, b: usize) -> &VObj {
        self.at(a, b).dst()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &QMor) -> Result<QMor> {
        if self.vertices != g.vertices {
            return Err(Error::mismatch(MODULE, "compose", "vertex sets differ"));
        }
        let comp = self
            .comp
            .iter()
            .zip(&g.comp)
            .map(|(f, g2)| self.cosmos.compose(f, g2))
            .collect::<Result<Vec<_>>>()?;
        Ok(QMor { cosmos: self.cosmos, vertices: self.vertices.clone(), comp })
    }

    pub fn is_iso(&self) -> bool {
        self.comp.iter().all(|f| self.cosmos.is_iso(f))
    }

    pub fn inverse(&self) -> Result<QMor> {
        let comp = self
            .comp
            .iter()
            .map(|f| self.cosmos.inverse(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(QMor { cosmos: self.cosmos, vertices: self.vertices.clone(), comp })
    }

    /// Pairs `(a,b)` where the two morphisms differ.
    pub fn differences(&self, other: &QMor) -> Vec<(usize, usize)> {
        let s = self.size();
        (0..s * s)
            .filter(|&k| self.comp[k] != other.comp[k])
            .map(|k| (k / s, k % s))
            .collect()
    }

    pub fn components(&self) -> &[VMor] {
        &self.comp
    }
}

#[derive(Clone, Debug)]
struct Block {
    offset: usize,
    dims: Vec<usize>,
    size: usize,
}

/// The flat tensor `Q_1 ⊗_S … ⊗_S Q_m` with index bookkeeping.
#[derive(Clone, Debug)]
pub struct Layout {
    factors: Vec<VQuiver>,
    quiver: VQuiver,
    // per (a,b): one block per middle sequence, in lexicographic order
    blocks: Vec<Vec<Block>>,
    // per (a,b): indices of nonempty blocks, for decoding
    nonempty: Vec<Vec<usize>>,
}

impl Layout {
    pub fn new(cosmos: Cosmos, vertices: &Vertices, factors: &[VQuiver]) -> Result<Self> {
        for q in factors {
            if q.cosmos != cosmos || &q.vertices != vertices {
                return Err(Error::mismatch(MODULE, "tensor", "factors live over different vertex sets"));
            }
        }
        let s = vertices.len();
        let m = factors.len();
        let mids = if m == 0 { 1 } else { s.pow((m - 1) as u32) };
        let mut blocks = Vec::with_capacity(s * s);
        let mut nonempty = Vec::with_capacity(s * s);
        let mut hom = Vec::with_capacity(s * s);
        let mut seq = vec![0usize; m + 1];
        for a in 0..s {
            for b in 0..s {
                let mut bl = Vec::with_capacity(mids);
                let mut ne = Vec::new();
                let mut orders: Vec<u64> = Vec::new();
                if m == 0 {
                    if a == b {
                        orders.extend_from_slice(cosmos.unit().orders());
                        bl.push(Block { offset: 0, dims: vec![], size: 1 });
                        ne.push(0);
                    } else {
                        bl.push(Block { offset: 0, dims: vec![], size: 0 });
                    }
                } else {
                    for code in 0..mids {
                        seq[0] = a;
                        seq[m] = b;
                        let mut c = code;
                        for k in (1..m).rev() {
                            seq[k] = c % s;
                            c /= s;
                        }
                        let objs: Vec<&VObj> = (0..m).map(|k| factors[k].hom(seq[k], seq[k + 1])).collect();
                        let dims: Vec<usize> = objs.iter().map(|o| o.len()).collect();
                        let size: usize = dims.iter().product();
                        if size > 0 {
                            ne.push(code);
                            orders.extend_from_slice(cosmos.tensor_many(&objs).orders());
                        }
                        bl.push(Block { offset: orders.len() - size, dims, size });
                    }
                }
                hom.push(VObj::from_orders(orders));
                blocks.push(bl);
                nonempty.push(ne);
            }
        }
        Ok(Layout {
            factors: factors.to_vec(),
            quiver: VQuiver { cosmos, vertices: vertices.clone(), hom },
            blocks,
            nonempty,
        })
    }

    pub fn of(factors: &[&VQuiver]) -> Result<Self> {
        let first = factors
            .first()
            .ok_or_else(|| Error::invalid(MODULE, "tensor", "empty factor list needs explicit vertices"))?;
        let owned: Vec<VQuiver> = factors.iter().map(|q| (*q).clone()).collect();
        Layout::new(first.cosmos, &first.vertices, &owned)
    }

    pub fn quiver(&self) -> &VQuiver {
        &self.quiver
    }

    pub fn factors(&self) -> &[VQuiver] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    fn s(&self) -> usize {
        self.quiver.size()
    }

    fn mid_code(&self, mids: &[usize]) -> usize {
        mids.iter().fold(0, |acc, &c| acc * self.s() + c)
    }

    /// `(offset, size)` of the summand for the middle sequence `mids`.
    pub fn block(&self, a: usize, b: usize, mids: &[usize]) -> (usize, usize) {
        let bl = &self.blocks[a * self.s() + b][self.mid_code(mids)];
        (bl.offset, bl.size)
    }

    /// Index of the basis tensor `e_{idx_1} ⊗ … ⊗ e_{idx_m}` in the summand `mids`.
    pub fn encode(&self, a: usize, b: usize, mids: &[usize], idx: &[usize]) -> usize {
        let bl = &self.blocks[a * self.s() + b][self.mid_code(mids)];
        let mut k = 0;
        for (i, d) in idx.iter().zip(&bl.dims) {
            debug_assert!(i < d);
            k = k * d + i;
        }
        bl.offset + k
    }

    /// Inverse of [`Layout::encode`]: `(mids, idx)`.
    pub fn decode(&self, a: usize, b: usize, k: usize) -> (Vec<usize>, Vec<usize>) {
        let ab = a * self.s() + b;
        let ne = &self.nonempty[ab];
        let blocks = &self.blocks[ab];
        let pos = ne.partition_point(|&c| blocks[c].offset <= k) - 1;
        let code = ne[pos];
        let bl = &blocks[code];
        let m = self.arity();
        let mut mids = vec![0; m.saturating_sub(1)];
        let mut c = code;
        for slot in mids.iter_mut().rev() {
            *slot = c % self.s();
            c /= self.s();
        }
        let mut rem = k - bl.offset;
        let mut idx = vec![0; m];
        for t in (0..m).rev() {
            idx[t] = rem % bl.dims[t];
            rem /= bl.dims[t];
        }
        (mids, idx)
    }

    /// The pure tensor of elements `x_t ∈ Q_t(v_{t−1}, v_t)` along the vertex
    /// path `path = (v_0, …, v_m)`.
    pub fn pure_tensor(&self, path: &[usize], elts: &[&Elt]) -> Elt {
        let m = self.arity();
        assert_eq!(path.len(), m + 1);
        let (a, b) = (path[0], path[m]);
        let mids = if m == 0 { &[][..] } else { &path[1..m] };
        let cosmos = self.quiver.cosmos;
        let mut acc: Vec<(Vec<usize>, i64)> = vec![(Vec::new(), 1)];
        for x in elts {
            let mut next = Vec::with_capacity(acc.len() * x.len());
            for (idx, c) in &acc {
                for &(i, v) in x.iter() {
                    let mut n = idx.clone();
                    n.push(i as usize);
                    next.push((n, c * v));
                }
            }
            acc = next;
        }
        let hom = self.quiver.hom(a, b);
        let out: Elt = acc
            .into_iter()
            .map(|(idx, c)| (self.encode(a, b, mids, &idx) as u32, c))
            .collect();
        cosmos.normalize_elt(hom, out)
    }
}

/// One factor of [`tensor_flat`]: a morphism `Flat(src) → Flat(dst)`.
#[derive(Clone, Debug)]
pub struct Part {
    pub src: Vec<VQuiver>,
    pub dst: Vec<VQuiver>,
    pub map: QMor,
}

impl Part {
    pub fn new(src: Vec<VQuiver>, dst: Vec<VQuiver>, map: QMor) -> Self {
        Part { src, dst, map }
    }

    pub fn id(q: &VQuiver) -> Self {
        Part { src: vec![q.clone()], dst: vec![q.clone()], map: QMor::identity(q) }
    }

    /// A plain morphism `Q → P` as a one-factor part.
    pub fn single(f: &QMor) -> Self {
        Part { src: vec![f.src()], dst: vec![f.dst()], map: f.clone() }
    }

    /// Identity on a flat product, regrouped as one part.
    pub fn id_flat(factors: &[VQuiver], cosmos: Cosmos, vertices: &Vertices) -> Result<Self> {
        let l = Layout::new(cosmos, vertices, factors)?;
        Ok(Part { src: factors.to_vec(), dst: factors.to_vec(), map: QMor::identity(l.quiver()) })
    }
}

/// The morphism `Flat(src_1 ++ … ++ src_r) → Flat(dst_1 ++ … ++ dst_r)`
/// induced by the parts `f_t: Flat(src_t) → Flat(dst_t)`.
pub fn tensor_flat(cosmos: Cosmos, vertices: &Vertices, parts: &[Part]) -> Result<(Layout, Layout, QMor)> {
    let r = parts.len();
    let s = vertices.len();
    let mut src_l = Vec::with_capacity(r);
    let mut dst_l = Vec::with_capacity(r);
    for p in parts {
        let ls = Layout::new(cosmos, vertices, &p.src)?;
        let ld = Layout::new(cosmos, vertices, &p.dst)?;
        if &p.map.src() != ls.quiver() || &p.map.dst() != ld.quiver() {
            return Err(Error::mismatch(MODULE, "tensor_flat", "part map does not match its layouts"));
        }
        src_l.push(ls);
        dst_l.push(ld);
    }
    let all_src: Vec<VQuiver> = parts.iter().flat_map(|p| p.src.iter().cloned()).collect();
    let all_dst: Vec<VQuiver> = parts.iter().flat_map(|p| p.dst.iter().cloned()).collect();
    let big_src = Layout::new(cosmos, vertices, &all_src)?;
    let big_dst = Layout::new(cosmos, vertices, &all_dst)?;

    // decoded images, memoized per (part, a, b, index)
    type Img = Vec<((Vec<usize>, Vec<usize>), i64)>;
    let mut memo: HashMap<(usize, usize, usize, usize), Arc<Img>> = HashMap::new();

    let mut comps = Vec::with_capacity(s * s);
    for a in 0..s {
        for b in 0..s {
            let src_hom = big_src.quiver.hom(a, b).clone();
            let dst_hom = big_dst.quiver.hom(a, b).clone();
            let mut cols = Vec::with_capacity(src_hom.len());
            for k in 0..src_hom.len() {
                let (mids, idx) = big_src.decode(a, b, k);
                let mut path = Vec::with_capacity(mids.len() + 2);
                path.push(a);
                path.extend_from_slice(&mids);
                path.push(b);
                if all_src.is_empty() {
                    path = vec![a, b];
                }
                // split the path among parts
                let mut pos = 0;
                let mut ipos = 0;
                let mut images: Vec<Arc<Img>> = Vec::with_capacity(r);
                let mut bounds = Vec::with_capacity(r + 1);
                bounds.push(a);
                for (t, p) in parts.iter().enumerate() {
                    let m = p.src.len();
                    let (u, v, pmids): (usize, usize, Vec<usize>) = if m == 0 {
                        (path[pos], path[pos], vec![])
                    } else {
                        (path[pos], path[pos + m], path[pos + 1..pos + m].to_vec())
                    };
                    let pidx = &idx[ipos..ipos + m];
                    let kt = src_l[t].encode(u, v, &pmids, pidx);
                    let img = memo
                        .entry((t, u, v, kt))
                        .or_insert_with(|| {
                            let col = p.map.at(u, v).col(kt);
                            Arc::new(
                                col.iter()
                                    .map(|&(j, c)| (dst_l[t].decode(u, v, j as usize), c))
                                    .collect(),
                            )
                        })
                        .clone();
                    images.push(img);
                    bounds.push(v);
                    pos += m;
                    ipos += m;
                }
                // cartesian product of images
                let mut col: Elt = Vec::new();
                let mut choice = vec![0usize; r];
                if images.iter().all(|im| !im.is_empty()) {
                    'outer: loop {
                        let mut dmids = Vec::new();
                        let mut didx = Vec::new();
                        let mut coeff: i64 = 1;
                        let mut first = true;
                        for t in 0..r {
                            let ((pm, pi), c) = &images[t][choice[t]];
                            if !parts[t].dst.is_empty() {
                                if !first {
                                    dmids.push(bounds[t]);
                                }
                                first = false;
                                dmids.extend_from_slice(pm);
                            }
                            didx.extend_from_slice(pi);
                            coeff = coeff.checked_mul(*c).expect("coefficient overflow");
                        }
                        col.push((big_dst.encode(a, b, &dmids, &didx) as u32, coeff));
                        let mut t = r;
                        loop {
                            if t == 0 {
                                break 'outer;
                            }
                            t -= 1;
                            choice[t] += 1;
                            if choice[t] < images[t].len() {
                                continue 'outer;
                            }
                            choice[t] = 0;
                        }
                    }
                }
                cols.push(col);
            }
            comps.push(VMor::from_cols(src_hom, dst_hom, cols));
        }
    }
    let mut it = comps.into_iter();
    let f = QMor::new(big_src.quiver(), big_dst.quiver(), |_, _| it.next().unwrap())?;
    Ok((big_src, big_dst, f))
}

/// `Q ⊗_S P`.
pub fn tensor_s(q: &VQuiver, p: &VQuiver) -> Result<Layout> {
    Layout::of(&[q, p])
}

/// `f ⊗_S g`.
pub fn tensor_s_mor(f: &QMor, g: &QMor) -> Result<QMor> {
    let (_, _, m) = tensor_flat(f.cosmos(), f.vertices(), &[Part::single(f), Part::single(g)])?;
    Ok(m)
}

/// `I_S ⊗_S Q → Q`.
pub fn left_unitor(q: &VQuiver) -> Result<QMor> {
    let i = VQuiver::unit(q.cosmos, q.vertices.clone());
    let parts = [Part::new(vec![i.clone()], vec![], QMor::identity(&i)), Part::id(q)];
    Ok(tensor_flat(q.cosmos, &q.vertices, &parts)?.2)
}

/// `Q ⊗_S I_S → Q`.
pub fn right_unitor(q: &VQuiver) -> Result<QMor> {
    let i = VQuiver::unit(q.cosmos, q.vertices.clone());
    let parts = [Part::id(q), Part::new(vec![i.clone()], vec![], QMor::identity(&i))];
    Ok(tensor_flat(q.cosmos, &q.vertices, &parts)?.2)
}

/// `(Q ⊗ P) ⊗ R → Q ⊗ (P ⊗ R)` as a composite of flattening isos.
pub fn associator(q: &VQuiver, p: &VQuiver, r: &VQuiver) -> Result<QMor> {
    let (c, v) = (q.cosmos, &q.vertices);
    let qp = Layout::of(&[q, p])?;
    let pr = Layout::of(&[p, r])?;
    let flatten = tensor_flat(
        c,
        v,
        &[
            Part::new(vec![qp.quiver().clone()], vec![q.clone(), p.clone()], QMor::identity(qp.quiver())),
            Part::id(r),
        ],
    )?
    .2;
    let unflatten = tensor_flat(
        c,
        v,
        &[
            Part::id(q),
            Part::new(vec![p.clone(), r.clone()], vec![pr.quiver().clone()], QMor::identity(pr.quiver())),
        ],
    )?
    .2;
    flatten.then(&unflatten)
}

/// Base change along a vertex map `f: S → T`.
#[derive(Clone, Debug)]
pub struct VertexMap {
    pub src: Vertices,
    pub dst: Vertices,
    pub map: Vec<usize>,
}

impl VertexMap {
    pub fn new(src: Vertices, dst: Vertices, map: Vec<usize>) -> Result<Self> {
        if map.len() != src.len() || map.iter().any(|&x| x >= dst.len()) {
            return Err(Error::invalid(MODULE, "vertex_map", "map is not a function between the vertex sets"));
        }
        Ok(VertexMap { src, dst, map })
    }

    pub fn identity(v: &Vertices) -> Self {
        VertexMap { src: v.clone(), dst: v.clone(), map: (0..v.len()).collect() }
    }

    pub fn then(&self, g: &VertexMap) -> Result<VertexMap> {
        if self.dst != g.src {
            return Err(Error::mismatch(MODULE, "vertex_map", "composable maps must share a vertex set"));
        }
        Ok(VertexMap {
            src: self.src.clone(),
            dst: g.dst.clone(),
            map: self.map.iter().map(|&x| g.map[x]).collect(),
        })
    }

    fn fiber(&self, x: usize) -> Vec<usize> {
        (0..self.src.len()).filter(|&a| self.map[a] == x).collect()
    }

    /// Summands of `f_!(Q)(x,y)`: pairs `(a,b)` in the fibres, in lexicographic order.
    pub fn fiber_pairs(&self, x: usize, y: usize) -> Vec<(usize, usize)> {
        let fx = self.fiber(x);
        let fy = self.fiber(y);
        fx.iter().flat_map(|&a| fy.iter().map(move |&b| (a, b))).collect()
    }
}

fn summand_offsets(q: &VQuiver, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut off = Vec::with_capacity(pairs.len());
    let mut acc = 0;
    for &(a, b) in pairs {
        off.push(acc);
        acc += q.hom(a, b).len();
    }
    off
}

pub fn pushforward(f: &VertexMap, q: &VQuiver) -> Result<VQuiver> {
    if q.vertices != f.src {
        return Err(Error::mismatch(MODULE, "pushforward", "quiver is not over the source vertex set"));
    }
    Ok(VQuiver::new(q.cosmos, f.dst.clone(), |x, y| {
        let objs: Vec<VObj> = f.fiber_pairs(x, y).iter().map(|&(a, b)| q.hom(a, b).clone()).collect();
        Cosmos::sum_obj(&objs)
    }))
}

pub fn pushforward_mor(f: &VertexMap, m: &QMor) -> Result<QMor> {
    let src = pushforward(f, &m.src())?;
    let dst = pushforward(f, &m.dst())?;
    QMor::new(&src, &dst, |x, y| {
        let maps: Vec<VMor> = f.fiber_pairs(x, y).iter().map(|&(a, b)| m.at(a, b).clone()).collect();
        m.cosmos.sum_mor(&maps)
    })
}

pub fn pullback(f: &VertexMap, q: &VQuiver) -> Result<VQuiver> {
    if q.vertices != f.dst {
        return Err(Error::mismatch(MODULE, "pullback", "quiver is not over the target vertex set"));
    }
    Ok(VQuiver::new(q.cosmos, f.src.clone(), |a, b| q.hom(f.map[a], f.map[b]).clone()))
}

/// Unit `Q → f^* f_! Q` of the base-change adjunction.
pub fn adjunction_unit(f: &VertexMap, q: &VQuiver) -> Result<QMor> {
    let fq = pushforward(f, q)?;
    let back = pullback(f, &fq)?;
    QMor::new(q, &back, |a, b| {
        let pairs = f.fiber_pairs(f.map[a], f.map[b]);
        let off = summand_offsets(q, &pairs);
        let k = pairs.iter().position(|&p| p == (a, b)).unwrap();
        let t: Vec<usize> = (0..q.hom(a, b).len()).map(|i| off[k] + i).collect();
        VMor::from_table(q.hom(a, b).clone(), back.hom(a, b).clone(), &t)
    })
}

/// Counit `f_! f^* P → P` of the base-change adjunction.
pub fn adjunction_counit(f: &VertexMap, p: &VQuiver) -> Result<QMor> {
    let fp = pullback(f, p)?;
    let there = pushforward(f, &fp)?;
    QMor::new(&there, p, |x, y| {
        let n = f.fiber_pairs(x, y).len();
        let len = p.hom(x, y).len();
        let t: Vec<usize> = (0..n * len).map(|i| i % len).collect();
        VMor::from_table(there.hom(x, y).clone(), p.hom(x, y).clone(), &t)
    })
}

/// Colax structure `f_!(Q ⊗_S P) → f_!Q ⊗_T f_!P`.
pub fn pushforward_colax(f: &VertexMap, q: &VQuiver, p: &VQuiver) -> Result<QMor> {
    let qp = tensor_s(q, p)?;
    let src = pushforward(f, qp.quiver())?;
    let fq = pushforward(f, q)?;
    let fpp = pushforward(f, p)?;
    let tgt = tensor_s(&fq, &fpp)?;
    QMor::new(&src, tgt.quiver(), |x, y| {
        let pairs = f.fiber_pairs(x, y);
        let mut table = Vec::with_capacity(src.hom(x, y).len());
        for &(a, b) in &pairs {
            for k in 0..qp.quiver().hom(a, b).len() {
                let (mids, idx) = qp.decode(a, b, k);
                let c = mids[0];
                let z = f.map[c];
                let qpairs = f.fiber_pairs(x, z);
                let qoff = summand_offsets(q, &qpairs)[qpairs.iter().position(|&t| t == (a, c)).unwrap()];
                let ppairs = f.fiber_pairs(z, y);
                let poff = summand_offsets(p, &ppairs)[ppairs.iter().position(|&t| t == (c, b)).unwrap()];
                table.push(tgt.encode(x, y, &[z], &[qoff + idx[0], poff + idx[1]]));
            }
        }
        VMor::from_table(src.hom(x, y).clone(), tgt.quiver().hom(x, y).clone(), &table)
    })
}

/// Counit `f_!(I_S) → I_T` of the colax structure.
pub fn pushforward_counit(f: &VertexMap, cosmos: Cosmos) -> Result<QMor> {
    let i = VQuiver::unit(cosmos, f.src.clone());
    let fi = pushforward(f, &i)?;
    let it = VQuiver::unit(cosmos, f.dst.clone());
    QMor::new(&fi, &it, |x, y| {
        let n = fi.hom(x, y).len();
        if x == y {
            VMor::from_table(fi.hom(x, y).clone(), it.hom(x, y).clone(), &vec![0; n])
        } else {
            VMor::from_cols(fi.hom(x, y).clone(), it.hom(x, y).clone(), vec![Vec::new(); n])
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_edge(c: Cosmos, n: usize, edges: &[(usize, usize, usize)]) -> VQuiver {
        VQuiver::new(c, numbered(n), |a, b| {
            let d = edges.iter().filter(|e| (e.0, e.1) == (a, b)).map(|e| e.2).sum();
            c.free(d)
        })
    }

    #[test]
    fn unit_law_and_no_composite() {
        let c = Cosmos::FinSet;
        let q = single_edge(c, 2, &[(0, 1, 1)]);
        let qq = tensor_s(&q, &q).unwrap();
        assert!(qq.quiver().hom(0, 1).is_empty());
        let l = left_unitor(&q).unwrap();
        assert!(l.is_iso());
        assert_eq!(l.dst(), q);
    }

    #[test]
    fn path_quiver_collapses_to_middle_vertex() {
        let c = Cosmos::FinVect { p: 2 };
        let q = single_edge(c, 3, &[(0, 1, 2), (1, 2, 3)]);
        let qq = tensor_s(&q, &q).unwrap();
        assert_eq!(qq.quiver().hom(0, 2).len(), 6);
    }

    #[test]
    fn associator_is_iso() {
        let c = Cosmos::FinVect { p: 3 };
        let q = single_edge(c, 3, &[(0, 1, 2), (1, 2, 1), (0, 0, 1), (1, 1, 2), (0, 2, 1)]);
        let a = associator(&q, &q, &q).unwrap();
        assert!(a.is_iso());
    }

    #[test]
    fn collapse_pushforward() {
        let c = Cosmos::FinVect { p: 2 };
        let q = single_edge(c, 2, &[(0, 1, 3)]);
        let f = VertexMap::new(numbered(2), numbered(1), vec![0, 0]).unwrap();
        let fq = pushforward(&f, &q).unwrap();
        assert_eq!(fq.hom(0, 0).len(), 3);
        let u = adjunction_unit(&f, &q).unwrap();
        assert!(u.components().iter().all(|m| c.is_mono(m)));
    }

    #[test]
    fn decode_inverts_encode() {
        let c = Cosmos::FinSet;
        let q = single_edge(c, 3, &[(0, 1, 2), (1, 2, 3), (0, 0, 1), (2, 2, 2)]);
        let l = Layout::of(&[&q, &q, &q]).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                for k in 0..l.quiver().hom(a, b).len() {
                    let (m, i) = l.decode(a, b, k);
                    assert_eq!(l.encode(a, b, &m, &i), k);
                }
            }
        }
    }
}
