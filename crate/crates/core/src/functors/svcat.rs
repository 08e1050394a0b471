//! Categories enriched in truncated simplicial objects, the necklace
//! category `𝔫(C)` and the homotopy coherent nerve.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use super::neccat::{necklace_to_templicial, NecCat, TempResult};
use super::{tf, VCat, MODULE};
use crate::cosmos::json as cj;
use crate::cosmos::{Cosmos, LimEq, Limit, VMor, VObj};
use crate::error::{Error, Result};
use crate::necklace::{self, NeckMap, Necklace, VertexSet};
use crate::quiver::{vertices_from, Layout, Part, QMor, VQuiver, Vertices};
use crate::simplexcat::{self, OrdMap};
use crate::sset::{FinSimpSet, SimpCat};
use crate::templicial::Report;

/// A category enriched in simplicial objects truncated at level `dim`.
#[derive(Clone, Debug)]
pub struct SVCat {
    cosmos: Cosmos,
    objects: Vertices,
    dim: usize,
    levels: Vec<VQuiver>,
    // faces[n][i] : H_n → H_{n−1}, 0 ≤ i ≤ n
    faces: Vec<Vec<QMor>>,
    // degens[n][i] : H_n → H_{n+1}
    degens: Vec<Vec<QMor>>,
    comp: Vec<QMor>,
    unit: Vec<QMor>,
    truncated: bool,
}

impl SVCat {
    pub fn new(
        levels: Vec<VQuiver>,
        faces: Vec<Vec<QMor>>,
        degens: Vec<Vec<QMor>>,
        comp: Vec<QMor>,
        unit: Vec<QMor>,
    ) -> Result<Self> {
        let first = levels.first().ok_or_else(|| Error::invalid(MODULE, "svcat", "needs level 0"))?;
        let (cosmos, objects) = (first.cosmos(), first.vertices().clone());
        let dim = levels.len() - 1;
        let bad = |d: String| Error::mismatch(MODULE, "svcat", d);
        if faces.len() != dim + 1 || degens.len() != dim || comp.len() != dim + 1 || unit.len() != dim + 1 {
            return Err(bad("wrong number of structure maps".into()));
        }
        let i_s = VQuiver::unit(cosmos, objects.clone());
        for n in 0..=dim {
            let need = if n == 0 { 0 } else { n + 1 };
            if faces[n].len() != need || faces[n].iter().any(|d| d.src() != levels[n] || d.dst() != levels[n - 1]) {
                return Err(bad(format!("faces on level {n}")));
            }
            if n < dim && (degens[n].len() != n + 1 || degens[n].iter().any(|s| s.src() != levels[n] || s.dst() != levels[n + 1])) {
                return Err(bad(format!("degeneracies on level {n}")));
            }
            let sq = Layout::new(cosmos, &objects, &[levels[n].clone(), levels[n].clone()])?;
            if &comp[n].src() != sq.quiver() || comp[n].dst() != levels[n] {
                return Err(bad(format!("composition on level {n}")));
            }
            if unit[n].src() != i_s || unit[n].dst() != levels[n] {
                return Err(bad(format!("unit on level {n}")));
            }
        }
        Ok(SVCat { cosmos, objects, dim, levels, faces, degens, comp, unit, truncated: false })
    }

    pub fn with_truncated(mut self, truncated: bool) -> Self {
        self.truncated = truncated;
        self
    }

    pub fn cosmos(&self) -> Cosmos {
        self.cosmos
    }

    pub fn objects(&self) -> &Vertices {
        &self.objects
    }

    pub fn size(&self) -> usize {
        self.objects.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Whether the homs were cut off by an enumeration budget.
    pub fn truncated(&self) -> bool {
        self.truncated
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

    pub fn comp(&self, n: usize) -> &QMor {
        &self.comp[n]
    }

    pub fn unit(&self, n: usize) -> &QMor {
        &self.unit[n]
    }

    /// The enriched category at level `n`.
    pub fn level_vcat(&self, n: usize) -> Result<VCat> {
        VCat::new(self.levels[n].clone(), self.comp[n].clone(), self.unit[n].clone())
    }

    /// `H(f) : H_n → H_m` for any monotone `f : [m] → [n]` with `m, n ≤ dim`.
    pub fn act(&self, f: &OrdMap) -> Result<QMor> {
        if f.dom().max(f.cod()) > self.dim {
            return Err(Error::truncation(MODULE, "svcat_act", f.dom().max(f.cod()), self.dim));
        }
        let (epi, mono) = f.epi_mono();
        let mut cur = QMor::identity(&self.levels[f.cod()]);
        let mut n = f.cod();
        for &g in simplexcat::injection_gaps(&mono).iter().rev() {
            cur = cur.then(&self.faces[n][g])?;
            n -= 1;
        }
        for &i in simplexcat::surjection_word(&epi).iter().rev() {
            cur = cur.then(&self.degens[n][i])?;
            n += 1;
        }
        Ok(cur)
    }

    /// Simplicial identities, naturality of composition and units, and the
    /// category axioms at every level.
    pub fn check_axioms(&self) -> Result<Report> {
        let (c, v) = (self.cosmos, &self.objects);
        let mut r = Report::default();
        for n in 2..=self.dim {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = self.faces[n][j].then(&self.faces[n - 1][i])?;
                    let rhs = self.faces[n][i].then(&self.faces[n - 1][j - 1])?;
                    r.record("face-face", &[n, i, j], &lhs, &rhs);
                }
            }
        }
        for n in 0..self.dim {
            for j in 0..=n {
                let s = &self.degens[n][j];
                for i in 0..=n + 1 {
                    let lhs = s.then(&self.faces[n + 1][i])?;
                    let rhs = if i == j || i == j + 1 {
                        QMor::identity(&self.levels[n])
                    } else if i < j {
                        self.faces[n][i].then(&self.degens[n - 1][j - 1])?
                    } else {
                        self.faces[n][i - 1].then(&self.degens[n - 1][j])?
                    };
                    r.record("face-degeneracy", &[n, i, j], &lhs, &rhs);
                }
                if n + 1 < self.dim {
                    for i in 0..=j {
                        let lhs = s.then(&self.degens[n + 1][i])?;
                        let rhs = self.degens[n][i].then(&self.degens[n + 1][j + 1])?;
                        r.record("degeneracy-degeneracy", &[n, i, j], &lhs, &rhs);
                    }
                }
            }
        }
        for n in 0..=self.dim {
            let level = self.level_vcat(n)?;
            for vio in level.check_axioms()?.violations {
                r.violations.push(crate::templicial::Violation { indices: vec![n], ..vio });
            }
            r.checked += 3;
            if n > 0 {
                for i in 0..=n {
                    let d = &self.faces[n][i];
                    let lhs = self.comp[n].then(d)?;
                    let rhs = tf(c, v, &[Part::single(d), Part::single(d)])?.then(&self.comp[n - 1])?;
                    r.record("composition-face", &[n, i], &lhs, &rhs);
                    r.record("unit-face", &[n, i], &self.unit[n].then(d)?, &self.unit[n - 1]);
                }
            }
            if n < self.dim {
                for i in 0..=n {
                    let s = &self.degens[n][i];
                    let lhs = self.comp[n].then(s)?;
                    let rhs = tf(c, v, &[Part::single(s), Part::single(s)])?.then(&self.comp[n + 1])?;
                    r.record("composition-degeneracy", &[n, i], &lhs, &rhs);
                    r.record("unit-degeneracy", &[n, i], &self.unit[n].then(s)?, &self.unit[n + 1]);
                }
            }
        }
        Ok(r)
    }

    /// The linearization of a simplicial category with finite truncated homs.
    pub fn from_simpcat(cosmos: Cosmos, sc: &SimpCat) -> Result<Self> {
        let s = sc.size();
        let v = sc.objects.clone();
        let dim = sc.dim;
        let levels: Vec<VQuiver> =
            (0..=dim).map(|n| VQuiver::new(cosmos, v.clone(), |a, b| cosmos.free(sc.hom(a, b).count(n)))).collect();
        let table_mor = |src: &VQuiver, dst: &VQuiver, t: &dyn Fn(usize, usize) -> Vec<usize>| {
            QMor::new(src, dst, |a, b| VMor::from_table(src.hom(a, b).clone(), dst.hom(a, b).clone(), &t(a, b)))
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=dim {
            let row = (0..=n)
                .map(|i| table_mor(&levels[n], &levels[n - 1], &|a, b| sc.hom(a, b).face_table(n, i).to_vec()))
                .collect::<Result<_>>()?;
            faces.push(row);
        }
        let mut degens = Vec::new();
        for n in 0..dim {
            let row = (0..=n)
                .map(|i| table_mor(&levels[n], &levels[n + 1], &|a, b| sc.hom(a, b).degen_table(n, i).to_vec()))
                .collect::<Result<_>>()?;
            degens.push(row);
        }
        let i_s = VQuiver::unit(cosmos, v.clone());
        let mut comp = Vec::new();
        let mut unit = Vec::new();
        for (n, h) in levels.iter().enumerate() {
            let sq = Layout::new(cosmos, &v, &[h.clone(), h.clone()])?;
            comp.push(QMor::new(sq.quiver(), h, |a, c| {
                let table: Vec<usize> = (0..sq.quiver().hom(a, c).len())
                    .map(|k| {
                        let (mids, idx) = sq.decode(a, c, k);
                        sc.compose(n, a, mids[0], c, idx[0], idx[1])
                    })
                    .collect();
                VMor::from_table(sq.quiver().hom(a, c).clone(), h.hom(a, c).clone(), &table)
            })?);
            unit.push(QMor::new(&i_s, h, |a, b| {
                let table = if a == b { vec![sc.identity(n, a)] } else { vec![] };
                VMor::from_table(i_s.hom(a, b).clone(), h.hom(a, b).clone(), &table)
            })?);
        }
        debug_assert_eq!(levels[0].size(), s);
        SVCat::new(levels, faces, degens, comp, unit)
    }

    /// The enriched category with constant simplicial homs.
    pub fn constant(cat: &VCat, dim: usize) -> Result<Self> {
        let h = cat.hom();
        let id = QMor::identity(h);
        SVCat::new(
            vec![h.clone(); dim + 1],
            (0..=dim).map(|n| if n == 0 { Vec::new() } else { vec![id.clone(); n + 1] }).collect(),
            (0..dim).map(|n| vec![id.clone(); n + 1]).collect(),
            vec![cat.comp().clone(); dim + 1],
            vec![cat.unit().clone(); dim + 1],
        )
    }

    /// The hom at `(a,b)` as a simplicial set (finite sets only).
    pub fn hom_sset(&self, a: usize, b: usize) -> Result<FinSimpSet> {
        if self.cosmos != Cosmos::FinSet {
            return Err(Error::capability(MODULE, "hom_sset", "only finite sets form simplicial sets"));
        }
        let table = |m: &QMor| -> Vec<usize> { m.at(a, b).table().expect("functions between finite sets") };
        let counts: Vec<usize> = self.levels.iter().map(|q| q.hom(a, b).len()).collect();
        let faces = self.faces.iter().map(|row| row.iter().map(table).collect()).collect();
        let degens = self.degens.iter().map(|row| row.iter().map(table).collect()).collect();
        let vertices = crate::quiver::numbered(counts[0]);
        FinSimpSet::from_tables(self.dim, vertices, counts, faces, degens)
    }

    pub fn to_json(&self) -> Value {
        let c = self.cosmos;
        let q_json = |q: &VQuiver| -> Value { Value::Array(q.homs().iter().map(|h| cj::obj_to_json(c, h)).collect()) };
        let m_json = |m: &QMor| -> Value { Value::Array(m.components().iter().map(|f| cj::mor_payload(c, f)).collect()) };
        json!({
            "instance": cj::instance_to_json(c),
            "objects": &self.objects[..],
            "dim": self.dim,
            "truncated": self.truncated,
            "levels": self.levels.iter().map(q_json).collect::<Vec<_>>(),
            "d": self.faces.iter().map(|row| row.iter().map(m_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "s": self.degens.iter().map(|row| row.iter().map(m_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "comp": self.comp.iter().map(m_json).collect::<Vec<_>>(),
            "unit": self.unit.iter().map(m_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let perr = |d: &str| Error::parse(MODULE, "svcat_from_json", d.to_string());
        let c = cj::instance_from_json(v.get("instance").ok_or_else(|| perr("missing instance"))?)?;
        let names: Vec<String> = v
            .get("objects")
            .and_then(Value::as_array)
            .ok_or_else(|| perr("missing objects"))?
            .iter()
            .map(|x| x.as_str().map(String::from).ok_or_else(|| perr("object names are strings")))
            .collect::<Result<_>>()?;
        let objects = vertices_from(names);
        let arr = |key: &str| -> Result<&Vec<Value>> { v.get(key).and_then(Value::as_array).ok_or_else(|| perr("missing field")) };
        let levels: Vec<VQuiver> = arr("levels")?
            .iter()
            .map(|q| {
                let homs: Vec<VObj> = q
                    .as_array()
                    .ok_or_else(|| perr("level is a list of hom objects"))?
                    .iter()
                    .map(|h| cj::obj_from_json(c, h))
                    .collect::<Result<_>>()?;
                VQuiver::from_homs(c, objects.clone(), homs)
            })
            .collect::<Result<_>>()?;
        if levels.is_empty() {
            return Err(perr("needs level 0"));
        }
        let read = |m: &Value, src: &VQuiver, dst: &VQuiver| -> Result<QMor> {
            let comps = m.as_array().ok_or_else(|| perr("map is a list of components"))?;
            if comps.len() != src.size() * src.size() {
                return Err(perr("map needs one component per pair"));
            }
            QMor::try_new(src, dst, |a, b| cj::mor_from_payload(c, src.hom(a, b), dst.hom(a, b), &comps[a * src.size() + b]))
        };
        let dim = levels.len() - 1;
        let rows = |key: &str, src: &dyn Fn(usize) -> usize, dst: &dyn Fn(usize) -> usize| -> Result<Vec<Vec<QMor>>> {
            arr(key)?
                .iter()
                .enumerate()
                .map(|(n, row)| {
                    row.as_array()
                        .ok_or_else(|| perr("row of maps"))?
                        .iter()
                        .map(|m| {
                            let (s, d) = (src(n), dst(n));
                            if s > dim || d > dim {
                                return Err(perr("level out of range"));
                            }
                            read(m, &levels[s], &levels[d])
                        })
                        .collect()
                })
                .collect()
        };
        let faces = rows("d", &|n| n, &|n| n.wrapping_sub(1))?;
        let degens = rows("s", &|n| n, &|n| n + 1)?;
        let i_s = VQuiver::unit(c, objects.clone());
        let comp = arr("comp")?
            .iter()
            .zip(&levels)
            .map(|(m, h)| read(m, Layout::new(c, &objects, &[h.clone(), h.clone()])?.quiver(), h))
            .collect::<Result<_>>()?;
        let unit = arr("unit")?.iter().zip(&levels).map(|(m, h)| read(m, &i_s, h)).collect::<Result<_>>()?;
        let truncated = v.get("truncated").and_then(Value::as_bool).unwrap_or(false);
        Ok(SVCat::new(levels, faces, degens, comp, unit)?.with_truncated(truncated))
    }
}

/// Strict chains of `P_T`, shortest first, then lexicographically.
fn strict_chains(t: &Necklace) -> Vec<Vec<VertexSet>> {
    let poset = necklace::poset_p(t);
    let mut out: Vec<Vec<VertexSet>> = Vec::new();
    let mut frontier: Vec<Vec<VertexSet>> = poset.iter().map(|&v| vec![v]).collect();
    while !frontier.is_empty() {
        out.extend(frontier.iter().cloned());
        let mut next = Vec::new();
        for ch in &frontier {
            let last = *ch.last().unwrap();
            for &v in &poset {
                if v != last && last & !v == 0 {
                    let mut c = ch.clone();
                    c.push(v);
                    next.push(c);
                }
            }
        }
        next.sort();
        frontier = next;
    }
    out
}

/// Splits a weakly increasing chain into its distinct terms and the
/// surjection recording repetitions.
fn dedup_chain(chain: &[VertexSet]) -> (Vec<VertexSet>, OrdMap) {
    let mut w: Vec<VertexSet> = Vec::new();
    let mut table = Vec::with_capacity(chain.len());
    for &v in chain {
        if w.last() != Some(&v) {
            w.push(v);
        }
        table.push(w.len() - 1);
    }
    let sigma = OrdMap::new(w.len() - 1, table).expect("weakly increasing");
    (w, sigma)
}

struct NecHom {
    chains: Vec<Vec<VertexSet>>,
    index: HashMap<Vec<VertexSet>, usize>,
    limits: Vec<Limit>,
    quiver: VQuiver,
}

/// `𝔫(C)`: the necklace category with `𝔫(C)_T(a,b)` the object of maps
/// `N(P_T) → C(a,b)`, computed over the non-degenerate chains of `P_T`.
pub struct SvNec<'a> {
    c: &'a SVCat,
    cache: Mutex<HashMap<Necklace, Arc<NecHom>>>,
}

impl<'a> SvNec<'a> {
    pub fn new(c: &'a SVCat) -> Self {
        SvNec { c, cache: Mutex::new(HashMap::new()) }
    }

    fn data(&self, t: &Necklace) -> Result<Arc<NecHom>> {
        if let Some(h) = self.cache.lock().unwrap().get(t) {
            return Ok(h.clone());
        }
        let c = self.c;
        let chains = strict_chains(t);
        let top = chains.last().map_or(0, |z| z.len() - 1);
        if top > c.dim {
            return Err(Error::truncation(MODULE, "necklace_hom", top, c.dim));
        }
        let index: HashMap<Vec<VertexSet>, usize> = chains.iter().enumerate().map(|(i, z)| (z.clone(), i)).collect();
        let s = c.size();
        let mut limits = Vec::with_capacity(s * s);
        for a in 0..s {
            for b in 0..s {
                let factors: Vec<VObj> = chains.iter().map(|z| c.levels[z.len() - 1].hom(a, b).clone()).collect();
                let mut eqs = Vec::new();
                for (zi, z) in chains.iter().enumerate() {
                    let k = z.len() - 1;
                    if k == 0 {
                        continue;
                    }
                    for i in 0..=k {
                        let mut face = z.clone();
                        face.remove(i);
                        let fi = index[&face];
                        eqs.push(LimEq {
                            left: fi,
                            f: c.cosmos.id(&factors[fi]),
                            right: zi,
                            g: c.faces[k][i].at(a, b).clone(),
                        });
                    }
                }
                limits.push(c.cosmos.limit(&factors, &eqs)?);
            }
        }
        let quiver = VQuiver::from_homs(c.cosmos, c.objects.clone(), limits.iter().map(|l| l.obj.clone()).collect())?;
        let h = Arc::new(NecHom { chains, index, limits, quiver });
        self.cache.lock().unwrap().insert(*t, h.clone());
        Ok(h)
    }

    /// `𝔫_T → H_k` reading the value on a weakly increasing chain of length `k + 1`.
    fn evaluation(&self, h: &NecHom, chain: &[VertexSet]) -> Result<QMor> {
        let (w, sigma) = dedup_chain(chain);
        let wi = *h.index.get(&w).ok_or_else(|| Error::invalid(MODULE, "necklace_hom", "chain outside P_T"))?;
        let proj = QMor::new(&h.quiver, &self.c.levels[w.len() - 1], |a, b| {
            h.limits[a * self.c.size() + b].proj[wi].clone()
        })?;
        proj.then(&self.c.act(&sigma)?)
    }

    fn mediate(&self, h: &NecHom, src: &VQuiver, legs: &[QMor]) -> Result<QMor> {
        let s = self.c.size();
        QMor::try_new(src, &h.quiver, |a, b| {
            let l: Vec<VMor> = legs.iter().map(|q| q.at(a, b).clone()).collect();
            h.limits[a * s + b].mediate(&l)
        })
    }

    /// `H_0 → 𝔫_T` induced by `N(P_T) → Δ^0`, precomposed with `g : Q → H_0`.
    pub fn constant_section(&self, t: &Necklace, g: &QMor) -> Result<QMor> {
        let h = self.data(t)?;
        let legs: Vec<QMor> = h
            .chains
            .iter()
            .map(|z| g.then(&self.c.act(&OrdMap::new(0, vec![0; z.len()])?)?))
            .collect::<Result<_>>()?;
        self.mediate(&h, &g.src(), &legs)
    }
}

impl NecCat for SvNec<'_> {
    fn cosmos(&self) -> Cosmos {
        self.c.cosmos
    }

    fn vertices(&self) -> &Vertices {
        &self.c.objects
    }

    fn hom(&self, t: &Necklace) -> Result<VQuiver> {
        Ok(self.data(t)?.quiver.clone())
    }

    fn map(&self, f: &NeckMap) -> Result<QMor> {
        let ht = self.data(f.src())?;
        let hu = self.data(f.dst())?;
        let legs: Vec<QMor> = ht
            .chains
            .iter()
            .map(|z| {
                let image: Vec<VertexSet> = z.iter().map(|&v| necklace::poset_map(f, v)).collect();
                self.evaluation(&hu, &image)
            })
            .collect::<Result<_>>()?;
        self.mediate(&ht, &hu.quiver, &legs)
    }

    fn compose(&self, t: &Necklace, u: &Necklace) -> Result<QMor> {
        let ht = self.data(t)?;
        let hu = self.data(u)?;
        let tu = necklace::wedge(t, u);
        let htu = self.data(&tu)?;
        let p = t.p();
        let left_mask = necklace::full_set(p);
        let src = Layout::new(self.c.cosmos, &self.c.objects, &[ht.quiver.clone(), hu.quiver.clone()])?;
        let legs: Vec<QMor> = htu
            .chains
            .iter()
            .map(|z| {
                let k = z.len() - 1;
                let zt: Vec<VertexSet> = z.iter().map(|&v| v & left_mask).collect();
                let zu: Vec<VertexSet> = z.iter().map(|&v| v >> p).collect();
                let l = self.evaluation(&ht, &zt)?;
                let r = self.evaluation(&hu, &zu)?;
                tf(self.c.cosmos, &self.c.objects, &[Part::single(&l), Part::single(&r)])?.then(&self.c.comp[k])
            })
            .collect::<Result<_>>()?;
        self.mediate(&htu, src.quiver(), &legs)
    }

    fn unit(&self) -> Result<QMor> {
        let h = self.data(&Necklace::simplex(0))?;
        self.mediate(&h, &self.c.unit[0].src(), &[self.c.unit[0].clone()])
    }
}

/// `N^hc_V(C) = 𝔫(C)^temp` truncated at `dim`; needs hom levels up to `dim − 1`.
pub fn hc_nerve(c: &SVCat, dim: usize) -> Result<TempResult> {
    if dim >= 1 && c.dim + 1 < dim {
        return Err(Error::truncation(MODULE, "hc_nerve", dim - 1, c.dim));
    }
    necklace_to_templicial(&SvNec::new(c), dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{nerve, poset_category, vcat_corpus};
    use crate::sset::{classical_hc_nerve, find_isomorphism};

    fn two_object_simpcat() -> SimpCat {
        // hom(0,1) = Δ^1, other homs trivial
        let objects = crate::quiver::numbered(2);
        let point = FinSimpSet::standard_simplex(0, 2).unwrap();
        let empty = FinSimpSet::from_complex(crate::quiver::numbered(0), &[], 2).unwrap();
        let d1 = FinSimpSet::standard_simplex(1, 2).unwrap();
        let hom = vec![point.clone(), d1.clone(), empty, point];
        let mut comp = Vec::new();
        for n in 0..=2 {
            let mut level = Vec::new();
            for a in 0..2 {
                for b in 0..2 {
                    for c in 0..2 {
                        let (x, y) = (&hom[a * 2 + b], &hom[b * 2 + c]);
                        let table: Vec<usize> = (0..x.count(n) * y.count(n))
                            .map(|k| if a == b { k % y.count(n).max(1) } else { k / y.count(n).max(1) })
                            .collect();
                        level.push(table);
                    }
                }
            }
            comp.push(level);
        }
        SimpCat { objects, dim: 2, hom, comp, unit: vec![0, 0] }
    }

    #[test]
    fn chains_of_a_square() {
        let t = Necklace::simplex(3);
        let ch = strict_chains(&t);
        // the square N(P) has 4 vertices, 5 non-degenerate edges and 2 triangles
        assert_eq!(ch.iter().filter(|z| z.len() == 1).count(), 4);
        assert_eq!(ch.iter().filter(|z| z.len() == 2).count(), 5);
        assert_eq!(ch.iter().filter(|z| z.len() == 3).count(), 2);
    }

    #[test]
    fn constant_homs_axioms() {
        for (_, cat) in vcat_corpus(Cosmos::FinVect { p: 2 }).unwrap() {
            let sv = SVCat::constant(&cat, 2).unwrap();
            assert!(sv.check_axioms().unwrap().is_ok());
            let back = SVCat::from_json(&sv.to_json()).unwrap();
            assert_eq!(back.to_json(), sv.to_json());
        }
    }

    #[test]
    fn hc_nerve_of_constant_is_nerve() {
        let cat = VCat::free(Cosmos::FinVect { p: 2 }, &poset_category(2)).unwrap();
        let sv = SVCat::constant(&cat, 2).unwrap();
        let h = hc_nerve(&sv, 3).unwrap();
        assert!(h.x.validate().unwrap().is_ok());
        let n = nerve(&cat, 3).unwrap();
        for k in 0..=3 {
            for (a, b) in h.x.x(k).homs().iter().zip(n.x(k).homs()) {
                assert_eq!(a.len(), b.len());
            }
        }
    }

    #[test]
    fn hc_nerve_matches_classical() {
        let sc = two_object_simpcat();
        let sv = SVCat::from_simpcat(Cosmos::FinSet, &sc).unwrap();
        assert!(sv.check_axioms().unwrap().is_ok());
        let h = hc_nerve(&sv, 3).unwrap();
        assert!(h.x.validate().unwrap().is_ok());
        let (u, _) = h.x.underlying_sset(3).unwrap();
        let classical = classical_hc_nerve(&sc, 3).unwrap();
        assert_eq!(u.counts(), classical.counts());
        assert!(find_isomorphism(&u, &classical).is_some());
    }
}
