//! The categorification `𝔠 X`: a simplicially enriched category whose level-`n`
//! hom is built from flanked flags of length `n`.
//!
//! When `X` has non-degenerate simplices, every level is a direct sum over
//! totally non-degenerate necklaces `T`, flanked flags on `T` and vertex paths
//! along the beads, of tensors of `X^nd`. Otherwise each level is computed as a
//! colimit over flanked flagged necklaces up to a size budget.

use std::collections::{BTreeSet, HashMap};

use super::{SVCat, MODULE};
use crate::cosmos::{Coeq, Cosmos, Elt, VMor, VObj};
use crate::error::{Error, Result};
use crate::necklace::{self, Flag, NeckMap, Necklace};
use crate::quiver::{Layout, Part, QMor, VQuiver, Vertices};
use crate::simplexcat::OrdMap;
use crate::sset::graph_acyclic;
use crate::templicial::{Nondeg, NondegResult, Templicial};

/// A summand of a hom of `𝔠 X`: a flanked flag and a vertex path along its beads.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Component {
    pub flag: Flag,
    pub path: Vec<usize>,
}

#[derive(Clone, Debug)]
struct Entry {
    comp: Component,
    offset: usize,
    dims: Vec<usize>,
    size: usize,
}

#[derive(Clone, Debug)]
struct ColimLevel {
    flags: Vec<Flag>,
    index: HashMap<Flag, usize>,
    // per (a,b): offsets of the summands X_T(a,b) in the sum, then the quotient
    offsets: Vec<Vec<usize>>,
    sums: Vec<VObj>,
    coeq: Vec<Coeq>,
}

#[derive(Clone, Debug)]
enum Kind {
    Nondeg {
        // per level, per (a,b)
        entries: Vec<Vec<Vec<Entry>>>,
        index: Vec<HashMap<Component, usize>>,
    },
    Colimit {
        levels: Vec<ColimLevel>,
        x: Box<Templicial>,
    },
}

/// The simplicial hom objects of `𝔠 X` up to a level, with composition on elements.
#[derive(Clone, Debug)]
pub struct Categorified {
    cosmos: Cosmos,
    objects: Vertices,
    n_max: usize,
    levels: Vec<VQuiver>,
    faces: Vec<Vec<QMor>>,
    degens: Vec<Vec<QMor>>,
    units: Vec<QMor>,
    truncated: bool,
    kind: Kind,
}

impl Categorified {
    pub fn cosmos(&self) -> Cosmos {
        self.cosmos
    }

    pub fn objects(&self) -> &Vertices {
        &self.objects
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn level(&self, n: usize) -> &VQuiver {
        &self.levels[n]
    }

    pub fn d(&self, n: usize, i: usize) -> &QMor {
        &self.faces[n][i]
    }

    pub fn s(&self, n: usize, i: usize) -> &QMor {
        &self.degens[n][i]
    }

    pub fn unit(&self, n: usize) -> &QMor {
        &self.units[n]
    }

    /// Whether necklaces were cut off by the size budget.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Whether the colimit construction was used.
    pub fn is_colimit(&self) -> bool {
        matches!(self.kind, Kind::Colimit { .. })
    }

    /// The summands of `H_n(a,b)` with their sizes (direct-sum construction only).
    pub fn components(&self, n: usize, a: usize, b: usize) -> Option<Vec<(Component, usize)>> {
        match &self.kind {
            Kind::Nondeg { entries, .. } => {
                let s = self.objects.len();
                Some(entries[n][a * s + b].iter().map(|e| (e.comp.clone(), e.size)).collect())
            }
            Kind::Colimit { .. } => None,
        }
    }

    /// The composite of `x ∈ H_n(a,b)` and `y ∈ H_n(b,c)` in `H_n(a,c)`, or
    /// `None` when it falls outside the computed necklaces.
    pub fn compose_elt(&self, n: usize, a: usize, b: usize, c: usize, x: &Elt, y: &Elt) -> Result<Option<Elt>> {
        let s = self.objects.len();
        let cz = self.cosmos;
        match &self.kind {
            Kind::Nondeg { entries, index } => {
                let mut out: Elt = Vec::new();
                for &(i, u) in x {
                    for &(j, v) in y {
                        match self.compose_basis(entries, index, n, a, b, c, i as usize, j as usize)? {
                            Some(k) => out.push((k as u32, u * v)),
                            None => return Ok(None),
                        }
                    }
                }
                Ok(Some(cz.normalize_elt(self.levels[n].hom(a, c), out)))
            }
            Kind::Colimit { levels, x: tx } => {
                let lv = &levels[n];
                let lift = |ab: usize, e: &Elt| -> Elt {
                    let mut acc: Elt = Vec::new();
                    for &(g, k) in e {
                        for &(i, v) in &lv.coeq[ab].lifts[g as usize] {
                            acc.push((i, k * v));
                        }
                    }
                    cz.normalize_elt(&lv.sums[ab], acc)
                };
                let (ab, bc, ac) = (a * s + b, b * s + c, a * s + c);
                let (lx, ly) = (lift(ab, x), lift(bc, y));
                let locate = |ab: usize, k: usize| -> (usize, usize) {
                    let offs = &lv.offsets[ab];
                    let ci = offs.partition_point(|&o| o <= k) - 1;
                    (ci, k - offs[ci])
                };
                let mut acc: Elt = Vec::new();
                for &(i, u) in &lx {
                    let (ci, ki) = locate(ab, i as usize);
                    for &(j, v) in &ly {
                        let (cj, kj) = locate(bc, j as usize);
                        let (f1, f2) = (&lv.flags[ci], &lv.flags[cj]);
                        let w = necklace::wedge_flags(f1, f2)?;
                        let Some(&ct) = lv.index.get(&w) else { return Ok(None) };
                        let l1 = tx.eval_necklace(f1.base())?;
                        let l2 = tx.eval_necklace(f2.base())?;
                        let pair = Layout::new(cz, &self.objects, &[l1.quiver().clone(), l2.quiver().clone()])?;
                        let k = pair.encode(a, c, &[b], &[ki, kj]);
                        let m = tx.necklace_composition(f1.base(), f2.base())?;
                        for &(t, z) in m.at(a, c).col(k) {
                            acc.push(((lv.offsets[ac][ct] + t as usize) as u32, u * v * z));
                        }
                    }
                }
                let acc = cz.normalize_elt(&lv.sums[ac], acc);
                Ok(Some(cz.apply(&lv.coeq[ac].q, &acc)))
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn compose_basis(
        &self,
        entries: &[Vec<Vec<Entry>>],
        index: &[HashMap<Component, usize>],
        n: usize,
        a: usize,
        b: usize,
        c: usize,
        i: usize,
        j: usize,
    ) -> Result<Option<usize>> {
        let s = self.objects.len();
        let find = |ab: usize, k: usize| -> &Entry {
            let es = &entries[n][ab];
            &es[es.partition_point(|e| e.offset <= k) - 1]
        };
        let e1 = find(a * s + b, i);
        let e2 = find(b * s + c, j);
        let flag = necklace::wedge_flags(&e1.comp.flag, &e2.comp.flag)?;
        let mut path = e1.comp.path.clone();
        path.extend_from_slice(&e2.comp.path[1..]);
        let Some(&t) = index[n].get(&Component { flag, path }) else { return Ok(None) };
        let et = &entries[n][a * s + c][t];
        Ok(Some(et.offset + (i - e1.offset) * e2.size + (j - e2.offset)))
    }

    /// The simplicially enriched category, when composition stays inside the
    /// computed necklaces.
    pub fn svcat(&self) -> Result<SVCat> {
        let s = self.objects.len();
        let mut comp = Vec::with_capacity(self.n_max + 1);
        for n in 0..=self.n_max {
            let h = &self.levels[n];
            let lay = Layout::new(self.cosmos, &self.objects, &[h.clone(), h.clone()])?;
            let mut maps = Vec::with_capacity(s * s);
            for a in 0..s {
                for c in 0..s {
                    let mut cols = Vec::new();
                    for k in 0..lay.quiver().hom(a, c).len() {
                        let (mids, idx) = lay.decode(a, c, k);
                        let x = Cosmos::basis_elt(idx[0]);
                        let y = Cosmos::basis_elt(idx[1]);
                        let z = self.compose_elt(n, a, mids[0], c, &x, &y)?.ok_or_else(|| {
                            Error::budget(MODULE, "categorify", "composite leaves the computed necklaces")
                        })?;
                        cols.push(z);
                    }
                    maps.push(VMor::from_cols(lay.quiver().hom(a, c).clone(), h.hom(a, c).clone(), cols));
                }
            }
            let mut it = maps.into_iter();
            comp.push(QMor::new(lay.quiver(), h, |_, _| it.next().unwrap())?);
        }
        Ok(SVCat::new(self.levels.clone(), self.faces.clone(), self.degens.clone(), comp, self.units.clone())?
            .with_truncated(self.truncated))
    }
}

fn row_major(dims: &[usize], mut k: usize) -> Vec<usize> {
    let mut idx = vec![0; dims.len()];
    for t in (0..dims.len()).rev() {
        idx[t] = k % dims[t];
        k /= dims[t];
    }
    idx
}

fn encode(dims: &[usize], idx: &[usize]) -> usize {
    idx.iter().zip(dims).fold(0, |k, (i, d)| k * d + i)
}

/// Categorifies `X` through level `n_max`. Exact when `X` has non-degenerate
/// simplices and no cycles of non-degenerate simplices; otherwise necklaces
/// are limited to `max_p` total dimension and the result is marked truncated.
pub fn categorify(x: &Templicial, n_max: usize, max_p: Option<usize>) -> Result<Categorified> {
    match x.nondegenerates()? {
        NondegResult::Found(nd) => {
            let mut ez_iso = true;
            for m in 1..=x.dim() {
                ez_iso &= x.ez_decompose(&nd, m)?.iso;
            }
            if ez_iso {
                return build_nondeg(x, &nd, n_max, max_p);
            }
            let p = max_p.ok_or_else(|| Error::budget(MODULE, "categorify", "decomposition fails; need a necklace budget"))?;
            categorify_colimit(x, n_max, p)
        }
        NondegResult::Missing { .. } => {
            let p = max_p
                .ok_or_else(|| Error::budget(MODULE, "categorify", "no non-degenerate simplices; need a necklace budget"))?;
            categorify_colimit(x, n_max, p)
        }
    }
}

struct EzInfo {
    surjections: Vec<OrdMap>,
    inverse: QMor,
    // per (u,v): (surjection index, offset, size) of each summand
    pieces: Vec<Vec<(usize, usize, usize)>>,
}

fn build_nondeg(x: &Templicial, nd: &Nondeg, n_max: usize, max_p: Option<usize>) -> Result<Categorified> {
    let c = x.cosmos();
    let s = x.size();
    let dd = x.dim();
    let objects = x.vertices().clone();
    let mut ez: Vec<Option<EzInfo>> = vec![None];
    for m in 1..=dd {
        let w = x.ez_decompose(nd, m)?;
        let inverse = w.map.inverse()?;
        let mut pieces = Vec::with_capacity(s * s);
        for u in 0..s {
            for v in 0..s {
                let mut off = 0;
                let mut row = Vec::new();
                for (si, f) in w.surjections.iter().enumerate() {
                    let len = nd.nd[f.cod()].hom(u, v).len();
                    row.push((si, off, len));
                    off += len;
                }
                pieces.push(row);
            }
        }
        ez.push(Some(EzInfo { surjections: w.surjections, inverse, pieces }));
    }
    let nonzero = |m: usize, u: usize, v: usize| !nd.nd[m].hom(u, v).is_empty();
    let mut adj = vec![BTreeSet::new(); s];
    for (u, row) in adj.iter_mut().enumerate() {
        for v in 0..s {
            if (1..=dd).any(|m| nonzero(m, u, v)) {
                row.insert(v);
            }
        }
    }
    let limit = if graph_acyclic(&adj) {
        usize::MAX
    } else {
        max_p.ok_or_else(|| Error::budget(MODULE, "categorify", "non-degenerate simplices form a cycle; need a necklace budget"))?
    };

    // vertex paths along totally non-degenerate necklaces
    let mut paths: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut truncated = false;
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        beads: &mut Vec<usize>,
        path: &mut Vec<usize>,
        p: usize,
        limit: usize,
        dd: usize,
        s: usize,
        nonzero: &dyn Fn(usize, usize, usize) -> bool,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
        truncated: &mut bool,
    ) {
        out.push((beads.clone(), path.clone()));
        let v = *path.last().unwrap();
        for m in 1..=dd {
            for w in 0..s {
                if !nonzero(m, v, w) {
                    continue;
                }
                if p + m > limit {
                    *truncated = true;
                    continue;
                }
                beads.push(m);
                path.push(w);
                dfs(beads, path, p + m, limit, dd, s, nonzero, out, truncated);
                beads.pop();
                path.pop();
            }
        }
    }
    for a in 0..s {
        dfs(&mut Vec::new(), &mut vec![a], 0, limit, dd, s, &nonzero, &mut paths, &mut truncated);
    }

    let mut entries: Vec<Vec<Vec<Entry>>> = Vec::with_capacity(n_max + 1);
    let mut index: Vec<HashMap<Component, usize>> = Vec::with_capacity(n_max + 1);
    let mut levels = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut per: Vec<Vec<Entry>> = vec![Vec::new(); s * s];
        for (beads, path) in &paths {
            let t = Necklace::from_beads(beads)?;
            let objs: Vec<&VObj> = beads.iter().zip(path.windows(2)).map(|(&m, w)| nd.nd[m].hom(w[0], w[1])).collect();
            let dims: Vec<usize> = objs.iter().map(|o| o.len()).collect();
            let size = dims.iter().product();
            let ab = path[0] * s + path[path.len() - 1];
            for flag in necklace::enumerate_flanked_flags(&t, n) {
                per[ab].push(Entry { comp: Component { flag, path: path.clone() }, offset: 0, dims: dims.clone(), size });
            }
        }
        let mut idx = HashMap::new();
        let mut homs = Vec::with_capacity(s * s);
        for (ab, es) in per.iter_mut().enumerate() {
            es.sort_by(|p, q| p.comp.cmp(&q.comp));
            let mut orders = Vec::new();
            for (i, e) in es.iter_mut().enumerate() {
                e.offset = orders.len();
                let path = &e.comp.path;
                let beads = e.comp.flag.base().beads();
                let objs: Vec<&VObj> = beads.iter().zip(path.windows(2)).map(|(&m, w)| nd.nd[m].hom(w[0], w[1])).collect();
                orders.extend_from_slice(c.tensor_many(&objs).orders());
                idx.insert(e.comp.clone(), i);
            }
            let _ = ab;
            homs.push(VObj::from_orders(orders));
        }
        levels.push(VQuiver::from_homs(c, objects.clone(), homs)?);
        entries.push(per);
        index.push(idx);
    }

    let nd_layout = |t: &Necklace| -> Result<(Layout, QMor)> {
        let parts: Vec<Part> = t.beads().iter().map(|&m| Part::single(&nd.incl[m])).collect();
        let (src, _, map) = crate::quiver::tensor_flat(c, &objects, &parts)?;
        Ok((src, map))
    };
    let mut eps_cache: HashMap<NeckMap, (Layout, Layout, QMor)> = HashMap::new();

    let mut faces: Vec<Vec<QMor>> = vec![Vec::new()];
    for n in 1..=n_max {
        let mut row = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut maps = Vec::with_capacity(s * s);
            for a in 0..s {
                for b in 0..s {
                    let ab = a * s + b;
                    let dst = levels[n - 1].hom(a, b);
                    let mut cols: Vec<Elt> = Vec::with_capacity(levels[n].hom(a, b).len());
                    for e in &entries[n][ab] {
                        let fl = e.comp.flag.delete(i)?;
                        if fl.is_flanked() {
                            let t = &entries[n - 1][ab][index[n - 1][&Component { flag: fl, path: e.comp.path.clone() }]];
                            for k in 0..e.size {
                                cols.push(Cosmos::basis_elt(t.offset + k));
                            }
                            continue;
                        }
                        let (fl2, eps) = necklace::flankify(&fl);
                        if !eps_cache.contains_key(&eps) {
                            let (src, incl) = nd_layout(&e.comp.flag.base().clone())?;
                            let xe = x.eval_neckmap(&eps)?;
                            let parts: Vec<Part> = eps
                                .src()
                                .beads()
                                .iter()
                                .map(|&m| Part::single(&ez[m].as_ref().unwrap().inverse))
                                .collect();
                            let (_, ez_lay, inv) = crate::quiver::tensor_flat(c, &objects, &parts)?;
                            let total = incl.then(&xe)?.then(&inv)?;
                            eps_cache.insert(eps.clone(), (src, ez_lay, total));
                        }
                        let (src, ez_lay, total) = &eps_cache[&eps];
                        let mids = &e.comp.path[1..e.comp.path.len() - 1];
                        let beads2 = fl2.base().beads();
                        for k in 0..e.size {
                            let sidx = src.encode(a, b, mids, &row_major(&e.dims, k));
                            let mut col: Elt = Vec::new();
                            for &(t, coeff) in total.at(a, b).col(sidx) {
                                let (mids2, idx2) = ez_lay.decode(a, b, t as usize);
                                let mut path2 = vec![a];
                                path2.extend_from_slice(&mids2);
                                path2.push(b);
                                let mut table = Vec::with_capacity(fl2.base().p() + 1);
                                let mut path_u = vec![a];
                                let mut beads_u = Vec::new();
                                let mut inner = Vec::new();
                                let mut dims_u = Vec::new();
                                let mut base = 0;
                                table.push(0);
                                for (bt, &m) in beads2.iter().enumerate() {
                                    let info = ez[m].as_ref().unwrap();
                                    let (u, v) = (path2[bt], path2[bt + 1]);
                                    let pieces = &info.pieces[u * s + v];
                                    let pos = pieces.partition_point(|&(_, off, len)| off + len <= idx2[bt]);
                                    let (si, off, _) = pieces[pos];
                                    let sigma = &info.surjections[si];
                                    for q in 1..=m {
                                        table.push(base + sigma.apply(q));
                                    }
                                    let kk = sigma.cod();
                                    base += kk;
                                    if kk > 0 {
                                        beads_u.push(kk);
                                        path_u.push(v);
                                        inner.push(idx2[bt] - off);
                                        dims_u.push(nd.nd[kk].hom(u, v).len());
                                    }
                                }
                                let u_neck = Necklace::from_beads(&beads_u)?;
                                let proj = NeckMap::new(*fl2.base(), u_neck, OrdMap::new(base, table)?)?;
                                let flag_u = fl2.push_forward(&proj)?;
                                let key = Component { flag: flag_u, path: path_u };
                                let ti = *index[n - 1].get(&key).ok_or_else(|| {
                                    Error::invalid(MODULE, "categorify", format!("face target {key:?} missing"))
                                })?;
                                let te = &entries[n - 1][ab][ti];
                                col.push(((te.offset + encode(&dims_u, &inner)) as u32, coeff));
                            }
                            cols.push(c.normalize_elt(dst, col));
                        }
                    }
                    maps.push(VMor::from_cols(levels[n].hom(a, b).clone(), dst.clone(), cols));
                }
            }
            let mut it = maps.into_iter();
            row.push(QMor::new(&levels[n], &levels[n - 1], |_, _| it.next().unwrap())?);
        }
        faces.push(row);
    }

    let mut degens = Vec::with_capacity(n_max);
    for n in 0..n_max {
        let mut row = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut maps = Vec::with_capacity(s * s);
            for a in 0..s {
                for b in 0..s {
                    let ab = a * s + b;
                    let mut cols = Vec::new();
                    for e in &entries[n][ab] {
                        let key = Component { flag: e.comp.flag.repeat(i)?, path: e.comp.path.clone() };
                        let t = &entries[n + 1][ab][index[n + 1][&key]];
                        for k in 0..e.size {
                            cols.push(Cosmos::basis_elt(t.offset + k));
                        }
                    }
                    maps.push(VMor::from_cols(levels[n].hom(a, b).clone(), levels[n + 1].hom(a, b).clone(), cols));
                }
            }
            let mut it = maps.into_iter();
            row.push(QMor::new(&levels[n], &levels[n + 1], |_, _| it.next().unwrap())?);
        }
        degens.push(row);
    }

    let i_s = VQuiver::unit(c, objects.clone());
    let point = Necklace::simplex(0);
    let mut units = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let flag = Flag::new(point, vec![1; n + 1])?;
        let u = QMor::new(&i_s, &levels[n], |a, b| {
            let cols: Vec<Elt> = if a == b {
                let key = Component { flag: flag.clone(), path: vec![a] };
                vec![Cosmos::basis_elt(entries[n][a * s + a][index[n][&key]].offset)]
            } else {
                Vec::new()
            };
            VMor::from_cols(i_s.hom(a, b).clone(), levels[n].hom(a, b).clone(), cols)
        })?;
        units.push(u);
    }

    Ok(Categorified {
        cosmos: c,
        objects,
        n_max,
        levels,
        faces,
        degens,
        units,
        truncated,
        kind: Kind::Nondeg { entries, index },
    })
}

/// Categorification as a colimit over flanked flagged necklaces of total
/// dimension at most `max_p`; always marked truncated.
pub fn categorify_colimit(x: &Templicial, n_max: usize, max_p: usize) -> Result<Categorified> {
    let c = x.cosmos();
    let s = x.size();
    let objects = x.vertices().clone();
    let necks: Vec<Necklace> = (0..=max_p)
        .flat_map(necklace::enumerate_necklaces)
        .filter(|t| t.max_bead() <= x.dim())
        .collect();
    let mut lay_cache: HashMap<Necklace, Layout> = HashMap::new();
    for t in &necks {
        lay_cache.insert(*t, x.eval_necklace(t)?);
    }
    let mut map_cache: HashMap<NeckMap, QMor> = HashMap::new();
    let mut levels_c: Vec<ColimLevel> = Vec::with_capacity(n_max + 1);
    let mut levels = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let flags: Vec<Flag> = necks.iter().flat_map(|t| necklace::enumerate_flanked_flags(t, n)).collect();
        let index: HashMap<Flag, usize> = flags.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        // flag morphisms between distinct flags
        let mut arrows: Vec<(usize, usize, NeckMap)> = Vec::new();
        for (i, f1) in flags.iter().enumerate() {
            for (j, f2) in flags.iter().enumerate() {
                if i == j || f1.base().p() < f2.base().p() {
                    continue;
                }
                for g in necklace::enumerate_neckmaps(f1.base(), f2.base()) {
                    if necklace::is_flag_morphism(&g, f1, f2) {
                        arrows.push((i, j, g));
                    }
                }
            }
        }
        for (_, _, g) in &arrows {
            if !map_cache.contains_key(g) {
                map_cache.insert(g.clone(), x.eval_neckmap(g)?);
            }
        }
        let mut offsets = Vec::with_capacity(s * s);
        let mut sums = Vec::with_capacity(s * s);
        let mut coeqs = Vec::with_capacity(s * s);
        let mut homs = Vec::with_capacity(s * s);
        for a in 0..s {
            for b in 0..s {
                let pieces: Vec<VObj> = flags.iter().map(|f| lay_cache[f.base()].quiver().hom(a, b).clone()).collect();
                let (sum, inj) = c.coproduct(&pieces);
                let mut offs = Vec::with_capacity(pieces.len());
                let mut acc = 0;
                for p in &pieces {
                    offs.push(acc);
                    acc += p.len();
                }
                let mut pairs = Vec::new();
                for (i, j, g) in &arrows {
                    let via = c.compose(map_cache[g].at(a, b), &inj[*i])?;
                    pairs.push((inj[*j].clone(), via));
                }
                let q = c.coequalizer(&sum, &pairs)?;
                homs.push(q.obj.clone());
                offsets.push(offs);
                sums.push(sum);
                coeqs.push(q);
            }
        }
        levels.push(VQuiver::from_homs(c, objects.clone(), homs)?);
        levels_c.push(ColimLevel { flags, index, offsets, sums, coeq: coeqs });
    }

    // a map of sums induced by component maps, pushed through the quotients
    let induced = |src: &ColimLevel,
                   dst: &ColimLevel,
                   a: usize,
                   b: usize,
                   piece: &mut dyn FnMut(&Flag) -> Result<(usize, Option<QMor>)>|
     -> Result<VMor> {
        let ab = a * s + b;
        let mut cols = Vec::with_capacity(src.sums[ab].len());
        for (ci, f) in src.flags.iter().enumerate() {
            let (tj, m) = piece(f)?;
            let len = lay_cache[f.base()].quiver().hom(a, b).len();
            for k in 0..len {
                let col: Elt = match &m {
                    None => vec![((dst.offsets[ab][tj] + k) as u32, 1)],
                    Some(m) => m.at(a, b).col(k).iter().map(|&(t, v)| ((dst.offsets[ab][tj] + t as usize) as u32, v)).collect(),
                };
                cols.push(c.normalize_elt(&dst.sums[ab], col));
            }
            let _ = ci;
        }
        let h = VMor::from_cols(src.sums[ab].clone(), dst.sums[ab].clone(), cols);
        let h = c.compose(&h, &dst.coeq[ab].q)?;
        src.coeq[ab].mediate(&h)
    };

    let mut faces: Vec<Vec<QMor>> = vec![Vec::new()];
    for n in 1..=n_max {
        let mut row = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut maps = Vec::with_capacity(s * s);
            for a in 0..s {
                for b in 0..s {
                    let mut piece = |f: &Flag| -> Result<(usize, Option<QMor>)> {
                        let fl = f.delete(i)?;
                        if fl.is_flanked() {
                            return Ok((levels_c[n - 1].index[&fl], None));
                        }
                        let (fl2, eps) = necklace::flankify(&fl);
                        if !map_cache.contains_key(&eps) {
                            map_cache.insert(eps.clone(), x.eval_neckmap(&eps)?);
                        }
                        Ok((levels_c[n - 1].index[&fl2], Some(map_cache[&eps].clone())))
                    };
                    maps.push(induced(&levels_c[n], &levels_c[n - 1], a, b, &mut piece)?);
                }
            }
            let mut it = maps.into_iter();
            row.push(QMor::new(&levels[n], &levels[n - 1], |_, _| it.next().unwrap())?);
        }
        faces.push(row);
    }
    let mut degens = Vec::with_capacity(n_max);
    for n in 0..n_max {
        let mut row = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut maps = Vec::with_capacity(s * s);
            for a in 0..s {
                for b in 0..s {
                    let mut piece = |f: &Flag| -> Result<(usize, Option<QMor>)> { Ok((levels_c[n + 1].index[&f.repeat(i)?], None)) };
                    maps.push(induced(&levels_c[n], &levels_c[n + 1], a, b, &mut piece)?);
                }
            }
            let mut it = maps.into_iter();
            row.push(QMor::new(&levels[n], &levels[n + 1], |_, _| it.next().unwrap())?);
        }
        degens.push(row);
    }
    let i_s = VQuiver::unit(c, objects.clone());
    let point = Necklace::simplex(0);
    let mut units = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let lv = &levels_c[n];
        let ci = lv.index[&Flag::new(point, vec![1; n + 1])?];
        let u = QMor::new(&i_s, &levels[n], |a, b| {
            let cols: Vec<Elt> = if a == b {
                let ab = a * s + b;
                vec![c.apply(&lv.coeq[ab].q, &Cosmos::basis_elt(lv.offsets[ab][ci]))]
            } else {
                Vec::new()
            };
            VMor::from_cols(i_s.hom(a, b).clone(), levels[n].hom(a, b).clone(), cols)
        })?;
        units.push(u);
    }
    Ok(Categorified {
        cosmos: c,
        objects,
        n_max,
        levels,
        faces,
        degens,
        units,
        truncated: true,
        kind: Kind::Colimit { levels: levels_c, x: Box::new(x.clone()) },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{self, Bipointed, FinSimpSet};
    use crate::templicial::free_templicial;

    fn free(k: &FinSimpSet) -> Templicial {
        free_templicial(Cosmos::FinSet, k).unwrap()
    }

    #[test]
    fn simplex_homs_are_cubes() {
        // 𝔠Δ^n(0,n) is the nerve of the cube (Δ^1)^{n−1}
        for n in 1..=3 {
            let k = FinSimpSet::standard_simplex(n, n).unwrap();
            let x = free(&k);
            let cx = categorify(&x, n, None).unwrap();
            assert!(!cx.truncated());
            let sv = cx.svcat().unwrap();
            assert!(sv.check_axioms().unwrap().is_ok());
            let h = sv.hom_sset(0, n).unwrap();
            let vertices = 1usize << (n - 1);
            assert_eq!(h.count(0), vertices, "n = {n}");
        }
    }

    #[test]
    fn matches_classical_rigidification() {
        for k in [
            FinSimpSet::standard_simplex(2, 2).unwrap(),
            FinSimpSet::boundary(2, 2).unwrap(),
            FinSimpSet::horn(2, 1, 2).unwrap(),
        ] {
            let x = free(&k);
            let n_max = 2;
            let sv = categorify(&x, n_max, None).unwrap().svcat().unwrap();
            for a in 0..k.count(0) {
                for b in 0..k.count(0) {
                    let mine = sv.hom_sset(a, b).unwrap();
                    let bp = Bipointed::new(k.clone(), a, b).unwrap();
                    let theirs = sset::classical_rigidify(&bp, n_max, k.count(0)).unwrap();
                    assert!(sset::find_isomorphism(&mine, &theirs).is_some(), "({a},{b})");
                }
            }
        }
    }

    #[test]
    fn colimit_agrees_on_small_examples() {
        let k = FinSimpSet::standard_simplex(2, 2).unwrap();
        let x = free(&k);
        let exact = categorify(&x, 1, None).unwrap();
        let colim = categorify_colimit(&x, 1, 2).unwrap();
        assert!(colim.truncated());
        for n in 0..=1 {
            for a in 0..3 {
                for b in 0..3 {
                    assert_eq!(exact.level(n).hom(a, b).len(), colim.level(n).hom(a, b).len(), "{n} ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn cyclic_input_needs_budget() {
        use crate::functors::{cyclic_group_category, nerve, VCat};
        let z2 = VCat::free(Cosmos::FinSet, &cyclic_group_category(2)).unwrap();
        let x = nerve(&z2, 2).unwrap();
        assert!(categorify(&x, 1, None).is_err());
        let cx = categorify(&x, 1, Some(3)).unwrap();
        assert!(cx.truncated());
    }
}
