//! Dimension-truncated templicial objects over a cosmos.
//!
//! `X_0` is always the unit quiver `I_S` (strong unitality with the counit
//! normalized to the identity), so `μ_{0,n}` and `μ_{n,0}` are the unitors.
//! Comultiplications land in flat tensor layouts, see [`crate::quiver::Layout`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use crate::cosmos::json as cj;
use crate::cosmos::{Cosmos, Elt, VMor, VObj};
use crate::error::{Error, Result};
use crate::necklace::{self, NeckMap, Necklace};
use crate::quiver::{tensor_flat, vertices_from, Layout, Part, QMor, VQuiver, Vertices};
use crate::simplexcat::{self, OrdMap};
use crate::sset::FinSimpSet;

const MODULE: &str = "templicial";

#[derive(Default, Debug)]
struct Caches {
    interval: HashMap<OrdMap, QMor>,
    multi: HashMap<Vec<usize>, QMor>,
}

/// A templicial object truncated at dimension `D`.
#[derive(Clone, Debug)]
pub struct Templicial {
    cosmos: Cosmos,
    vertices: Vertices,
    dim: usize,
    x: Vec<VQuiver>,
    // faces[n][j - 1] = d_j : X_n → X_{n−1} for 0 < j < n
    faces: Vec<Vec<QMor>>,
    // degens[n][i] = s_i : X_n → X_{n+1}
    degens: Vec<Vec<QMor>>,
    // mu[k][l] : X_{k+l} → X_k ⊗ X_l (flat layout), all k + l ≤ D
    mu: Vec<Vec<QMor>>,
    cache: Arc<Mutex<Caches>>,
}

/// One failed equation found by [`Templicial::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: &'static str,
    pub indices: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn record(&mut self, law: &'static str, indices: &[usize], lhs: &QMor, rhs: &QMor) {
        self.checked += 1;
        let pairs = lhs.differences(rhs);
        if !pairs.is_empty() {
            self.violations.push(Violation { law, indices: indices.to_vec(), pairs });
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ok": self.is_ok(),
            "checked": self.checked,
            "violations": self.violations.iter().map(|v| json!({
                "law": v.law,
                "indices": v.indices,
                "pairs": v.pairs,
            })).collect::<Vec<_>>(),
        })
    }
}

fn tf(cosmos: Cosmos, vertices: &Vertices, parts: &[Part]) -> Result<QMor> {
    Ok(tensor_flat(cosmos, vertices, parts)?.2)
}

/// Lexicographic index of the pair `i < j` among pairs in `[n]`.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    i * n - i * (i.saturating_sub(1)) / 2 + (j - i - 1)
}

impl Templicial {
    /// Assembles a templicial object from `X_1 … X_D`, inner faces, degeneracies
    /// and the comultiplications `μ_{k,l}` with `k, l ≥ 1`. Only typing is
    /// checked here; use [`Templicial::validate`] for the axioms.
    pub fn new(
        cosmos: Cosmos,
        vertices: Vertices,
        higher: Vec<VQuiver>,
        faces: Vec<Vec<QMor>>,
        degens: Vec<Vec<QMor>>,
        mu: HashMap<(usize, usize), QMor>,
    ) -> Result<Self> {
        let dim = higher.len();
        let unit = VQuiver::unit(cosmos, vertices.clone());
        let mut x = vec![unit];
        x.extend(higher);
        for q in &x {
            if q.cosmos() != cosmos || q.vertices() != &vertices {
                return Err(Error::mismatch(MODULE, "new", "quivers over different vertex sets"));
            }
        }
        let bad = |d: String| Error::mismatch(MODULE, "new", d);
        if faces.len() != dim + 1 || degens.len() != dim {
            return Err(bad("wrong number of face or degeneracy levels".into()));
        }
        for n in 0..=dim {
            if faces[n].len() != n.saturating_sub(1) {
                return Err(bad(format!("X_{n} needs {} inner faces", n.saturating_sub(1))));
            }
            for (j, d) in faces[n].iter().enumerate() {
                if d.src() != x[n] || d.dst() != x[n - 1] {
                    return Err(bad(format!("d_{} on X_{n} has wrong endpoints", j + 1)));
                }
            }
        }
        for n in 0..dim {
            if degens[n].len() != n + 1 {
                return Err(bad(format!("X_{n} needs {} degeneracies", n + 1)));
            }
            for (i, s) in degens[n].iter().enumerate() {
                if s.src() != x[n] || s.dst() != x[n + 1] {
                    return Err(bad(format!("s_{i} on X_{n} has wrong endpoints")));
                }
            }
        }
        let mut mus: Vec<Vec<QMor>> = Vec::with_capacity(dim + 1);
        for k in 0..=dim {
            let mut row = Vec::with_capacity(dim + 1 - k);
            for l in 0..=dim - k {
                let target = Layout::new(cosmos, &vertices, &[x[k].clone(), x[l].clone()])?;
                let m = if k == 0 || l == 0 {
                    let unit_part = Part::new(vec![], vec![x[0].clone()], QMor::identity(&x[0]));
                    let parts = if k == 0 {
                        [unit_part, Part::id(&x[l])]
                    } else {
                        [Part::id(&x[k]), unit_part]
                    };
                    tf(cosmos, &vertices, &parts)?
                } else {
                    let m = mu.get(&(k, l)).ok_or_else(|| bad(format!("missing μ_{{{k},{l}}}")))?.clone();
                    if m.src() != x[k + l] || &m.dst() != target.quiver() {
                        return Err(bad(format!("μ_{{{k},{l}}} has wrong endpoints")));
                    }
                    m
                };
                row.push(m);
            }
            mus.push(row);
        }
        Ok(Templicial {
            cosmos,
            vertices,
            dim,
            x,
            faces,
            degens,
            mu: mus,
            cache: Arc::new(Mutex::new(Caches::default())),
        })
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

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn x(&self, n: usize) -> &VQuiver {
        &self.x[n]
    }

    /// `d_j : X_n → X_{n−1}` for `0 < j < n`.
    pub fn d(&self, n: usize, j: usize) -> &QMor {
        &self.faces[n][j - 1]
    }

    /// `s_i : X_n → X_{n+1}`.
    pub fn s(&self, n: usize, i: usize) -> &QMor {
        &self.degens[n][i]
    }

    /// `μ_{k,l} : X_{k+l} → X_k ⊗_S X_l`.
    pub fn mu(&self, k: usize, l: usize) -> &QMor {
        &self.mu[k][l]
    }

    pub fn layout(&self, dims: &[usize]) -> Result<Layout> {
        self.need(dims.iter().copied().max().unwrap_or(0), "layout")?;
        let f: Vec<VQuiver> = dims.iter().map(|&k| self.x[k].clone()).collect();
        Layout::new(self.cosmos, &self.vertices, &f)
    }

    fn need(&self, n: usize, op: &'static str) -> Result<()> {
        if n > self.dim {
            Err(Error::truncation(MODULE, op, n, self.dim))
        } else {
            Ok(())
        }
    }

    fn tensor(&self, parts: &[Part]) -> Result<QMor> {
        tf(self.cosmos, &self.vertices, parts)
    }

    fn mu_part(&self, k: usize, l: usize) -> Part {
        Part::new(vec![self.x[k + l].clone()], vec![self.x[k].clone(), self.x[l].clone()], self.mu[k][l].clone())
    }

    /// Checks every axiom up to dimension `D`.
    pub fn validate(&self) -> Result<Report> {
        let mut r = Report::default();
        self.validate_into(&mut r)?;
        Ok(r)
    }

    fn validate_into(&self, r: &mut Report) -> Result<()> {
        let dim = self.dim;
        let unit = VQuiver::unit(self.cosmos, self.vertices.clone());
        r.checked += 1;
        if self.x[0] != unit {
            r.violations.push(Violation { law: "counit", indices: vec![0], pairs: vec![] });
        }
        // d_i d_j = d_{j−1} d_i
        for n in 3..=dim {
            for j in 2..n {
                for i in 1..j {
                    let lhs = self.d(n, j).then(self.d(n - 1, i))?;
                    let rhs = self.d(n, i).then(self.d(n - 1, j - 1))?;
                    r.record("face-face", &[n, i, j], &lhs, &rhs);
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i ≤ j
        for n in 0..dim.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = self.s(n, j).then(self.s(n + 1, i))?;
                    let rhs = self.s(n, i).then(self.s(n + 1, j + 1))?;
                    r.record("degeneracy-degeneracy", &[n, i, j], &lhs, &rhs);
                }
            }
        }
        // d_i s_j
        for n in 0..dim {
            for j in 0..=n {
                for i in 1..=n {
                    let lhs = self.s(n, j).then(self.d(n + 1, i))?;
                    let rhs = if i == j || i == j + 1 {
                        QMor::identity(&self.x[n])
                    } else if i < j {
                        self.d(n, i).then(self.s(n - 1, j - 1))?
                    } else {
                        self.d(n, i - 1).then(self.s(n - 1, j))?
                    };
                    r.record("face-degeneracy", &[n, i, j], &lhs, &rhs);
                }
            }
        }
        // μ against inner faces
        for n in 2..=dim {
            for k in 1..n {
                let l = n - k;
                for j in 1..n {
                    if j == k {
                        continue;
                    }
                    let (lhs, rhs);
                    if j < k {
                        lhs = self.d(n, j).then(self.mu(k - 1, l))?;
                        rhs = self.mu(k, l).then(&self.tensor(&[Part::single(self.d(k, j)), Part::id(&self.x[l])])?)?;
                    } else {
                        lhs = self.d(n, j).then(self.mu(k, l - 1))?;
                        rhs = self
                            .mu(k, l)
                            .then(&self.tensor(&[Part::id(&self.x[k]), Part::single(self.d(l, j - k))])?)?;
                    }
                    r.record("mu-face", &[k, l, j], &lhs, &rhs);
                }
            }
        }
        // μ against degeneracies
        for n in 0..dim {
            for k in 1..=n {
                let l = n + 1 - k;
                for i in 0..=n {
                    let lhs = self.s(n, i).then(self.mu(k, l))?;
                    let rhs = if i < k {
                        self.mu(k - 1, l).then(&self.tensor(&[Part::single(self.s(k - 1, i)), Part::id(&self.x[l])])?)?
                    } else {
                        self.mu(k, l - 1)
                            .then(&self.tensor(&[Part::id(&self.x[k]), Part::single(self.s(l - 1, i - k))])?)?
                    };
                    r.record("mu-degeneracy", &[k, l, i], &lhs, &rhs);
                }
            }
        }
        // coassociativity
        for n in 3..=dim {
            for rr in 1..n {
                for s in 1..n - rr {
                    let t = n - rr - s;
                    let lhs = self.mu(rr, s + t).then(&self.tensor(&[Part::id(&self.x[rr]), self.mu_part(s, t)])?)?;
                    let rhs = self.mu(rr + s, t).then(&self.tensor(&[self.mu_part(rr, s), Part::id(&self.x[t])])?)?;
                    r.record("coassociativity", &[rr, s, t], &lhs, &rhs);
                }
            }
        }
        Ok(())
    }

    /// `X(f) : X_n → X_m` for an interval map `f : [m] → [n]`.
    pub fn interval_map(&self, f: &OrdMap) -> Result<QMor> {
        if !simplexcat::is_interval(f) {
            return Err(Error::invalid(MODULE, "interval_map", "map does not preserve endpoints"));
        }
        self.need(f.cod().max(f.dom()), "interval_map")?;
        if let Some(m) = self.cache.lock().unwrap().interval.get(f) {
            return Ok(m.clone());
        }
        let (epi, mono) = f.epi_mono();
        let mut cur = QMor::identity(&self.x[f.cod()]);
        let mut n = f.cod();
        for &g in simplexcat::injection_gaps(&mono).iter().rev() {
            cur = cur.then(self.d(n, g))?;
            n -= 1;
        }
        for &i in simplexcat::surjection_word(&epi).iter().rev() {
            cur = cur.then(self.s(n, i))?;
            n += 1;
        }
        self.cache.lock().unwrap().interval.insert(f.clone(), cur.clone());
        Ok(cur)
    }

    /// The iterated comultiplication `X_{Σk} → X_{k_1} ⊗ … ⊗ X_{k_m}`.
    pub fn mu_multi(&self, ks: &[usize]) -> Result<QMor> {
        let total: usize = ks.iter().sum();
        self.need(total, "mu_multi")?;
        if let Some(m) = self.cache.lock().unwrap().multi.get(ks) {
            return Ok(m.clone());
        }
        let m = match ks.len() {
            0 => QMor::identity(&self.x[0]),
            1 => QMor::identity(&self.x[ks[0]]),
            _ => {
                let rest = &ks[1..];
                let rs: usize = rest.iter().sum();
                let tail = self.mu_multi(rest)?;
                let rest_q: Vec<VQuiver> = rest.iter().map(|&k| self.x[k].clone()).collect();
                let lift = self.tensor(&[Part::id(&self.x[ks[0]]), Part::new(vec![self.x[rs].clone()], rest_q, tail)])?;
                self.mu(ks[0], rs).then(&lift)?
            }
        };
        self.cache.lock().unwrap().multi.insert(ks.to_vec(), m.clone());
        Ok(m)
    }

    /// The other bracketing of [`Templicial::mu_multi`], peeling off the last factor.
    pub fn mu_multi_right(&self, ks: &[usize]) -> Result<QMor> {
        let total: usize = ks.iter().sum();
        self.need(total, "mu_multi")?;
        if ks.len() < 2 {
            return self.mu_multi(ks);
        }
        let (init, last) = ks.split_at(ks.len() - 1);
        let is: usize = init.iter().sum();
        let head = self.mu_multi_right(init)?;
        let init_q: Vec<VQuiver> = init.iter().map(|&k| self.x[k].clone()).collect();
        let lift = self.tensor(&[Part::new(vec![self.x[is].clone()], init_q, head), Part::id(&self.x[last[0]])])?;
        self.mu(is, last[0]).then(&lift)
    }

    /// Bead quivers of a necklace.
    pub fn bead_quivers(&self, t: &Necklace) -> Result<Vec<VQuiver>> {
        self.need(t.max_bead(), "eval_necklace")?;
        Ok(t.beads().into_iter().map(|m| self.x[m].clone()).collect())
    }

    /// `X_T`, the tensor of the bead quivers.
    pub fn eval_necklace(&self, t: &Necklace) -> Result<Layout> {
        Layout::new(self.cosmos, &self.vertices, &self.bead_quivers(t)?)
    }

    /// `X(f) : X_U → X_T` for a necklace map `f : T → U`.
    pub fn eval_neckmap(&self, f: &NeckMap) -> Result<QMor> {
        let (active, inert) = necklace::active_inert_factor(f);
        let from_inert = self.eval_inert(&inert)?;
        let from_active = self.eval_active(&active)?;
        from_inert.then(&from_active)
    }

    fn eval_inert(&self, f: &NeckMap) -> Result<QMor> {
        let v = f.src().joint_list();
        let u = f.dst().joint_list();
        let mut parts = Vec::new();
        for w in u.windows(2) {
            let inner: Vec<usize> = v.iter().copied().filter(|&x| x >= w[0] && x <= w[1]).collect();
            let ks: Vec<usize> = inner.windows(2).map(|p| p[1] - p[0]).collect();
            let dst: Vec<VQuiver> = ks.iter().map(|&k| self.x[k].clone()).collect();
            parts.push(Part::new(vec![self.x[w[1] - w[0]].clone()], dst, self.mu_multi(&ks)?));
        }
        self.need(f.src().max_bead().max(f.dst().max_bead()), "eval_neckmap")?;
        self.tensor(&parts)
    }

    fn eval_active(&self, f: &NeckMap) -> Result<QMor> {
        self.need(f.src().max_bead().max(f.dst().max_bead()), "eval_neckmap")?;
        let g = f.underlying();
        let t = f.src().joint_list();
        let mut parts = Vec::new();
        for w in t.windows(2) {
            let (lo, hi) = (g.apply(w[0]), g.apply(w[1]));
            let n = w[1] - w[0];
            let table: Vec<usize> = (w[0]..=w[1]).map(|v| g.apply(v) - lo).collect();
            let h = OrdMap::new(hi - lo, table)?;
            let m = self.interval_map(&h)?;
            if lo == hi {
                parts.push(Part::new(vec![], vec![self.x[n].clone()], m));
            } else {
                parts.push(Part::new(vec![self.x[hi - lo].clone()], vec![self.x[n].clone()], m));
            }
        }
        self.tensor(&parts)
    }

    /// The canonical isomorphism `X_T ⊗_S X_U → X_{T ∨ U}`.
    pub fn necklace_composition(&self, t: &Necklace, u: &Necklace) -> Result<QMor> {
        let bt = self.bead_quivers(t)?;
        let bu = self.bead_quivers(u)?;
        let lt = Layout::new(self.cosmos, &self.vertices, &bt)?;
        let lu = Layout::new(self.cosmos, &self.vertices, &bu)?;
        let split = self.tensor(&[
            Part::new(bt, vec![lt.quiver().clone()], QMor::identity(lt.quiver())),
            Part::new(bu, vec![lu.quiver().clone()], QMor::identity(lu.quiver())),
        ])?;
        split.inverse()
    }

    // ---- elements and the underlying simplicial set ----

    /// The unit element of `X_0(a,a)`.
    pub fn unit_elt(&self) -> Elt {
        Cosmos::basis_elt(0)
    }

    fn u_act(&self, verts: &[usize], alphas: &[Elt], f: &OrdMap) -> Result<(Vec<usize>, Vec<Elt>)> {
        let m = f.dom();
        let n = f.cod();
        let new_verts: Vec<usize> = (0..=m).map(|t| verts[f.apply(t)]).collect();
        let mut out = Vec::with_capacity(m * (m + 1) / 2);
        for p in 0..=m {
            for q in p + 1..=m {
                let (fp, fq) = (f.apply(p), f.apply(q));
                let table: Vec<usize> = (p..=q).map(|t| f.apply(t) - fp).collect();
                let g = OrdMap::new(fq - fp, table)?;
                let (a, b) = (verts[fp], verts[fq]);
                let src = if fp == fq { self.unit_elt() } else { alphas[pair_index(n, fp, fq)].clone() };
                let x = if g.is_identity() {
                    src
                } else {
                    self.cosmos.apply(self.interval_map(&g)?.at(a, b), &src)
                };
                out.push(x);
            }
        }
        Ok((new_verts, out))
    }

    /// `Ũ(X)` truncated at `n_max ≤ D`, with cells `((a_i), (α_{i,j}))`.
    pub fn underlying_sset(&self, n_max: usize) -> Result<(FinSimpSet, Vec<Vec<UCell>>)> {
        self.need(n_max, "underlying_sset")?;
        if let Cosmos::FgAb = self.cosmos {
            for n in 1..=n_max {
                for h in self.x[n].homs() {
                    if self.cosmos.point_count(h).is_none() {
                        return Err(Error::capability(
                            MODULE,
                            "underlying_sset",
                            format!("X_{n} has a hom object with infinitely many points"),
                        ));
                    }
                }
            }
        }
        let s = self.size();
        let c = self.cosmos;
        let mut cells: Vec<Vec<UCell>> = vec![(0..s).map(|a| (vec![a], vec![])).collect()];
        for n in 1..=n_max {
            let mut level = Vec::new();
            if n == 1 {
                for a in 0..s {
                    for b in 0..s {
                        for e in c.u_elements(self.x[1].hom(a, b))? {
                            level.push((vec![a, b], vec![e]));
                        }
                    }
                }
            } else {
                let layouts: Vec<Layout> = (1..n).map(|k| self.layout(&[k, n - k])).collect::<Result<_>>()?;
                // interiors keyed by (a, b, μ-images)
                let mut by_key: HashMap<(usize, usize, Vec<Elt>), Vec<Elt>> = HashMap::new();
                for a in 0..s {
                    for b in 0..s {
                        for e in c.u_elements(self.x[n].hom(a, b))? {
                            let key: Vec<Elt> = (1..n).map(|k| c.apply(self.mu(k, n - k).at(a, b), &e)).collect();
                            by_key.entry((a, b, key)).or_default().push(e);
                        }
                    }
                }
                let prev = &cells[n - 1];
                let m = n - 1;
                let restrict = |cell: &UCell, lo: usize| -> UCell {
                    // the (m−1)-face on vertices lo..lo+m−1
                    let verts = cell.0[lo..lo + m].to_vec();
                    let mut al = Vec::new();
                    for i in 0..m {
                        for j in i + 1..m {
                            al.push(cell.1[pair_index(m, lo + i, lo + j)].clone());
                        }
                    }
                    (verts, al)
                };
                let mut backs: HashMap<UCell, Vec<usize>> = HashMap::new();
                for (bi, bcell) in prev.iter().enumerate() {
                    backs.entry(restrict(bcell, 0)).or_default().push(bi);
                }
                for fcell in prev {
                    let overlap = restrict(fcell, 1);
                    let Some(bs) = backs.get(&overlap) else { continue };
                    for &bi in bs {
                        let bcell = &prev[bi];
                        let a = fcell.0[0];
                        let b = bcell.0[m];
                        let key: Vec<Elt> = (1..n)
                            .map(|k| {
                                let y = &fcell.1[pair_index(m, 0, k)];
                                let z = &bcell.1[pair_index(m, k - 1, m)];
                                layouts[k - 1].pure_tensor(&[a, fcell.0[k], b], &[y, z])
                            })
                            .collect();
                        if let Some(interiors) = by_key.get(&(a, b, key)) {
                            for e in interiors {
                                let mut verts = fcell.0.clone();
                                verts.push(b);
                                let mut al = Vec::with_capacity(n * (n + 1) / 2);
                                for i in 0..=n {
                                    for j in i + 1..=n {
                                        al.push(if i == 0 && j == n {
                                            e.clone()
                                        } else if j < n {
                                            fcell.1[pair_index(m, i, j)].clone()
                                        } else {
                                            bcell.1[pair_index(m, i - 1, j - 1)].clone()
                                        });
                                    }
                                }
                                level.push((verts, al));
                            }
                        }
                    }
                }
            }
            level.sort();
            cells.push(level);
        }
        let err = Mutex::new(None);
        let act = |f: OrdMap, k: &UCell| -> UCell {
            match self.u_act(&k.0, &k.1, &f) {
                Ok(v) => v,
                Err(e) => {
                    *err.lock().unwrap() = Some(e);
                    k.clone()
                }
            }
        };
        let k = FinSimpSet::build(
            n_max,
            Some(self.vertices.clone()),
            cells.clone(),
            |n, i, c| act(OrdMap::coface(n, i).unwrap(), c),
            |n, i, c| act(OrdMap::codegeneracy(n, i).unwrap(), c),
        );
        if let Some(e) = err.into_inner().unwrap() {
            return Err(e);
        }
        Ok((k?, cells))
    }

    /// 2-simplices of `Ũ(X)` with interior `α ∈ X_2(a,b)`: all `(c, y, z)` with
    /// `μ_{1,1}(α) = y ⊗ z`. Free coefficients are searched up to the largest
    /// absolute coefficient of `μ_{1,1}(α)`, which is exhaustive for torsion-free
    /// hom objects whenever `μ_{1,1}(α) ≠ 0`.
    pub fn two_simplices_over(&self, a: usize, b: usize, alpha: &Elt) -> Result<Vec<(usize, Elt, Elt)>> {
        self.need(2, "two_simplices_over")?;
        let c = self.cosmos;
        let t = c.apply(self.mu(1, 1).at(a, b), alpha);
        let bound = t.iter().map(|&(_, v)| v.unsigned_abs()).max().unwrap_or(0).max(1);
        let lay = self.layout(&[1, 1])?;
        let mut out = Vec::new();
        for mid in 0..self.size() {
            let ys = bounded_elements(c, self.x[1].hom(a, mid), bound)?;
            let zs = bounded_elements(c, self.x[1].hom(mid, b), bound)?;
            for y in &ys {
                for z in &zs {
                    if lay.pure_tensor(&[a, mid, b], &[y, z]) == t {
                        out.push((mid, y.clone(), z.clone()));
                    }
                }
            }
        }
        Ok(out)
    }

    // ---- degenerate and non-degenerate parts ----

    /// `X^deg_n` as a colimit over proper surjections, with its map into `X_n`.
    pub fn degenerate_part(&self, n: usize) -> Result<(VQuiver, QMor)> {
        self.need(n, "degenerate_part")?;
        let c = self.cosmos;
        let s = self.size();
        let sigmas: Vec<OrdMap> = (0..n).flat_map(|k| simplexcat::enumerate_surjections(n, k)).collect();
        let index: HashMap<&OrdMap, usize> = sigmas.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut objs = Vec::with_capacity(s * s);
        let mut maps = Vec::with_capacity(s * s);
        for a in 0..s {
            for b in 0..s {
                let pieces: Vec<VObj> = sigmas.iter().map(|f| self.x[f.cod()].hom(a, b).clone()).collect();
                let (sum, inj) = c.coproduct(&pieces);
                let mut pairs = Vec::new();
                for (si, f) in sigmas.iter().enumerate() {
                    let k = f.cod();
                    for j in 0..k {
                        let tau = OrdMap::codegeneracy(k - 1, j)?;
                        let g = simplexcat::compose(f, &tau)?;
                        let gi = index[&g];
                        let via = c.compose(self.s(k - 1, j).at(a, b), &inj[si])?;
                        pairs.push((inj[gi].clone(), via));
                    }
                }
                let (obj, canon) = if sigmas.is_empty() {
                    (c.initial(), c.zero_mor(&c.initial(), self.x[n].hom(a, b))?)
                } else {
                    let coeq = c.coequalizer(&sum, &pairs)?;
                    let legs: Vec<VMor> = sigmas
                        .iter()
                        .map(|f| self.interval_map(f).map(|m| m.at(a, b).clone()))
                        .collect::<Result<_>>()?;
                    let from_sum = c.copair(&legs, self.x[n].hom(a, b))?;
                    (coeq.obj.clone(), coeq.mediate(&from_sum)?)
                };
                objs.push(obj);
                maps.push(canon);
            }
        }
        let q = VQuiver::from_homs(c, self.vertices.clone(), objs)?;
        let mut it = maps.into_iter();
        let m = QMor::new(&q, &self.x[n], |_, _| it.next().unwrap())?;
        Ok((q, m))
    }

    /// Chooses `X^nd_n` for every `n ≤ D`, or reports where no complement exists.
    pub fn nondegenerates(&self) -> Result<NondegResult> {
        let c = self.cosmos;
        let s = self.size();
        let mut nd = vec![self.x[0].clone()];
        let mut incl = vec![QMor::identity(&self.x[0])];
        for n in 1..=self.dim {
            let (_, canon) = self.degenerate_part(n)?;
            let mut objs = Vec::with_capacity(s * s);
            let mut maps = Vec::with_capacity(s * s);
            for a in 0..s {
                for b in 0..s {
                    let m = canon.at(a, b);
                    if !c.is_mono(m) {
                        return Ok(NondegResult::Missing { n, a, b, reason: "degenerate part is not a subobject" });
                    }
                    match c.complement(m)? {
                        Some(comp) => {
                            objs.push(comp.obj);
                            maps.push(comp.incl);
                        }
                        None => {
                            return Ok(NondegResult::Missing { n, a, b, reason: "degenerate part has no direct complement" })
                        }
                    }
                }
            }
            let q = VQuiver::from_homs(c, self.vertices.clone(), objs)?;
            let mut it = maps.into_iter();
            incl.push(QMor::new(&q, &self.x[n], |_, _| it.next().unwrap())?);
            nd.push(q);
        }
        Ok(NondegResult::Found(Nondeg { nd, incl }))
    }

    /// The Eilenberg–Zilber map `⊕_{σ : [n] ↠ [k]} X^nd_k → X_n` and whether it is an isomorphism.
    pub fn ez_decompose(&self, nd: &Nondeg, n: usize) -> Result<EzWitness> {
        self.need(n, "ez_decompose")?;
        let c = self.cosmos;
        let s = self.size();
        let sigmas: Vec<OrdMap> = (0..=n).flat_map(|k| simplexcat::enumerate_surjections(n, k)).collect();
        let mut maps = Vec::with_capacity(s * s);
        let mut objs = Vec::with_capacity(s * s);
        for a in 0..s {
            for b in 0..s {
                let legs: Vec<VMor> = sigmas
                    .iter()
                    .map(|f| {
                        let k = f.cod();
                        c.compose(nd.incl[k].at(a, b), self.interval_map(f)?.at(a, b))
                    })
                    .collect::<Result<_>>()?;
                let pieces: Vec<VObj> = legs.iter().map(|l| l.src().clone()).collect();
                let sum = Cosmos::sum_obj(&pieces);
                maps.push(c.copair(&legs, self.x[n].hom(a, b))?);
                objs.push(sum);
            }
        }
        let q = VQuiver::from_homs(c, self.vertices.clone(), objs)?;
        let mut it = maps.into_iter();
        let map = QMor::new(&q, &self.x[n], |_, _| it.next().unwrap())?;
        let iso = map.is_iso();
        Ok(EzWitness { surjections: sigmas, map, iso })
    }

    // ---- serialization ----

    pub fn to_json(&self) -> Value {
        let c = self.cosmos;
        let q_json = |q: &VQuiver| -> Value { Value::Array(q.homs().iter().map(|h| cj::obj_to_json(c, h)).collect()) };
        let m_json = |m: &QMor| -> Value { Value::Array(m.components().iter().map(|f| cj::mor_payload(c, f)).collect()) };
        let mut d = Vec::new();
        for n in 2..=self.dim {
            for j in 1..n {
                d.push(json!({"n": n, "j": j, "map": m_json(self.d(n, j))}));
            }
        }
        let mut s = Vec::new();
        for n in 0..self.dim {
            for i in 0..=n {
                s.push(json!({"n": n, "i": i, "map": m_json(self.s(n, i))}));
            }
        }
        let mut mu = Vec::new();
        for k in 1..self.dim {
            for l in 1..=self.dim - k {
                mu.push(json!({"k": k, "l": l, "map": m_json(self.mu(k, l))}));
            }
        }
        json!({
            "instance": cj::instance_to_json(c),
            "vertices": &self.vertices[..],
            "D": self.dim,
            "X": (1..=self.dim).map(|n| q_json(&self.x[n])).collect::<Vec<_>>(),
            "d": d,
            "s": s,
            "mu": mu,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let perr = |d: &str| Error::parse(MODULE, "from_json", d.to_string());
        let c = cj::instance_from_json(v.get("instance").ok_or_else(|| perr("missing instance"))?)?;
        let names: Vec<String> = v
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| perr("missing vertices"))?
            .iter()
            .map(|x| x.as_str().map(String::from).ok_or_else(|| perr("vertex names are strings")))
            .collect::<Result<_>>()?;
        let vertices = vertices_from(names);
        let dim = v.get("D").and_then(Value::as_u64).ok_or_else(|| perr("missing D"))? as usize;
        let xs = v.get("X").and_then(Value::as_array).ok_or_else(|| perr("missing X"))?;
        if xs.len() != dim {
            return Err(perr("X must list X_1 … X_D"));
        }
        let mut higher = Vec::with_capacity(dim);
        for q in xs {
            let homs: Vec<VObj> = q
                .as_array()
                .ok_or_else(|| perr("quiver is a list of hom objects"))?
                .iter()
                .map(|h| cj::obj_from_json(c, h))
                .collect::<Result<_>>()?;
            higher.push(VQuiver::from_homs(c, vertices.clone(), homs)?);
        }
        let unit = VQuiver::unit(c, vertices.clone());
        let xq = |n: usize| -> &VQuiver { if n == 0 { &unit } else { &higher[n - 1] } };
        let read = |m: &Value, src: &VQuiver, dst: &VQuiver| -> Result<QMor> {
            let comps = m.as_array().ok_or_else(|| perr("map is a list of components"))?;
            if comps.len() != src.size() * src.size() {
                return Err(perr("map needs one component per vertex pair"));
            }
            QMor::try_new(src, dst, |a, b| {
                cj::mor_from_payload(c, src.hom(a, b), dst.hom(a, b), &comps[a * src.size() + b])
            })
        };
        let idx = |e: &Value, k: &str| -> Result<usize> {
            e.get(k).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| perr("missing index"))
        };
        let mut faces: Vec<Vec<Option<QMor>>> = (0..=dim).map(|n| vec![None; n.saturating_sub(1)]).collect();
        for e in v.get("d").and_then(Value::as_array).ok_or_else(|| perr("missing d"))? {
            let (n, j) = (idx(e, "n")?, idx(e, "j")?);
            if n > dim || j == 0 || j >= n {
                return Err(perr("face index out of range"));
            }
            faces[n][j - 1] = Some(read(e.get("map").ok_or_else(|| perr("missing map"))?, xq(n), xq(n - 1))?);
        }
        let mut degens: Vec<Vec<Option<QMor>>> = (0..dim).map(|n| vec![None; n + 1]).collect();
        for e in v.get("s").and_then(Value::as_array).ok_or_else(|| perr("missing s"))? {
            let (n, i) = (idx(e, "n")?, idx(e, "i")?);
            if n >= dim || i > n {
                return Err(perr("degeneracy index out of range"));
            }
            degens[n][i] = Some(read(e.get("map").ok_or_else(|| perr("missing map"))?, xq(n), xq(n + 1))?);
        }
        let mut mu = HashMap::new();
        for e in v.get("mu").and_then(Value::as_array).ok_or_else(|| perr("missing mu"))? {
            let (k, l) = (idx(e, "k")?, idx(e, "l")?);
            if k == 0 || l == 0 || k + l > dim {
                return Err(perr("comultiplication index out of range"));
            }
            let lay = Layout::new(c, &vertices, &[xq(k).clone(), xq(l).clone()])?;
            mu.insert((k, l), read(e.get("map").ok_or_else(|| perr("missing map"))?, xq(k + l), lay.quiver())?);
        }
        let unwrap_all = |v: Vec<Vec<Option<QMor>>>| -> Result<Vec<Vec<QMor>>> {
            v.into_iter()
                .map(|row| row.into_iter().map(|m| m.ok_or_else(|| perr("missing structure map"))).collect())
                .collect()
        };
        Templicial::new(c, vertices.clone(), higher, unwrap_all(faces)?, unwrap_all(degens)?, mu)
    }

    /// Same data with one structure map replaced (used for mutation checks).
    pub fn with_mu(&self, k: usize, l: usize, m: QMor) -> Result<Self> {
        let mut mu = HashMap::new();
        for kk in 1..self.dim {
            for ll in 1..=self.dim - kk {
                mu.insert((kk, ll), self.mu(kk, ll).clone());
            }
        }
        mu.insert((k, l), m);
        Templicial::new(self.cosmos, self.vertices.clone(), self.x[1..].to_vec(), self.faces.clone(), self.degens.clone(), mu)
    }

    pub fn with_degeneracy(&self, n: usize, i: usize, m: QMor) -> Result<Self> {
        let mut degens = self.degens.clone();
        degens[n][i] = m;
        Templicial::new(self.cosmos, self.vertices.clone(), self.x[1..].to_vec(), self.faces.clone(), degens, self.mu_map())
    }

    pub fn with_face(&self, n: usize, j: usize, m: QMor) -> Result<Self> {
        let mut faces = self.faces.clone();
        faces[n][j - 1] = m;
        Templicial::new(self.cosmos, self.vertices.clone(), self.x[1..].to_vec(), faces, self.degens.clone(), self.mu_map())
    }

    /// The comultiplications with both indices positive.
    pub fn mu_map(&self) -> HashMap<(usize, usize), QMor> {
        let mut mu = HashMap::new();
        for k in 1..self.dim {
            for l in 1..=self.dim - k {
                mu.insert((k, l), self.mu(k, l).clone());
            }
        }
        mu
    }

    pub fn faces(&self) -> &[Vec<QMor>] {
        &self.faces
    }

    pub fn degeneracies(&self) -> &[Vec<QMor>] {
        &self.degens
    }
}

/// A cell of `Ũ(X)`: vertices and the elements `α_{i,j}` in pair order.
pub type UCell = (Vec<usize>, Vec<Elt>);

#[derive(Clone, Debug)]
pub struct Nondeg {
    pub nd: Vec<VQuiver>,
    pub incl: Vec<QMor>,
}

#[derive(Clone, Debug)]
pub enum NondegResult {
    Found(Nondeg),
    Missing { n: usize, a: usize, b: usize, reason: &'static str },
}

impl NondegResult {
    pub fn found(self) -> Option<Nondeg> {
        match self {
            NondegResult::Found(n) => Some(n),
            NondegResult::Missing { .. } => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EzWitness {
    pub surjections: Vec<OrdMap>,
    pub map: QMor,
    pub iso: bool,
}

/// Elements with free coefficients in `[−bound, bound]` and torsion coefficients in range.
fn bounded_elements(c: Cosmos, a: &VObj, bound: u64) -> Result<Vec<Elt>> {
    if c != Cosmos::FgAb {
        return c.u_elements(a);
    }
    let ranges: Vec<Vec<i64>> = a
        .orders()
        .iter()
        .map(|&o| if o == 0 { (-(bound as i64)..=bound as i64).collect() } else { (0..o as i64).collect() })
        .collect();
    let mut out = vec![Vec::new()];
    for (i, r) in ranges.iter().enumerate() {
        let mut next = Vec::with_capacity(out.len() * r.len());
        for e in &out {
            for &v in r {
                let mut e2: Elt = e.clone();
                if v != 0 {
                    e2.push((i as u32, v));
                }
                next.push(e2);
            }
        }
        out = next;
        if out.len() as u128 > crate::cosmos::ELEMENT_BUDGET {
            return Err(Error::budget(MODULE, "bounded_elements", "too many candidate elements"));
        }
    }
    Ok(out)
}

/// `F̃(K)`: the free templicial object on a simplicial set.
pub fn free_templicial(cosmos: Cosmos, k: &FinSimpSet) -> Result<Templicial> {
    let dim = k.dim();
    let s = k.count(0);
    let vertices = k.vertices().clone();
    // between[n][a·s+b] = cells from a to b, and the position of each cell
    let mut between: Vec<Vec<Vec<usize>>> = Vec::with_capacity(dim + 1);
    let mut pos: Vec<Vec<usize>> = Vec::with_capacity(dim + 1);
    for n in 0..=dim {
        let mut bt = vec![Vec::new(); s * s];
        let mut ps = vec![0; k.count(n)];
        for x in 0..k.count(n) {
            let (a, b) = (k.first_vertex(n, x), k.last_vertex(n, x));
            ps[x] = bt[a * s + b].len();
            bt[a * s + b].push(x);
        }
        between.push(bt);
        pos.push(ps);
    }
    let quiver = |n: usize| VQuiver::new(cosmos, vertices.clone(), |a, b| cosmos.free(between[n][a * s + b].len()));
    let x: Vec<VQuiver> = (0..=dim)
        .map(|n| if n == 0 { VQuiver::unit(cosmos, vertices.clone()) } else { quiver(n) })
        .collect();
    let col = |i: usize| -> Elt { Cosmos::basis_elt(i) };
    let mut faces: Vec<Vec<QMor>> = vec![Vec::new(); dim + 1];
    for n in 2..=dim {
        for j in 1..n {
            faces[n].push(QMor::new(&x[n], &x[n - 1], |a, b| {
                let cols = between[n][a * s + b].iter().map(|&c| col(pos[n - 1][k.d(n, j, c)]));
                VMor::from_cols(x[n].hom(a, b).clone(), x[n - 1].hom(a, b).clone(), cols)
            })?);
        }
    }
    let mut degens: Vec<Vec<QMor>> = vec![Vec::new(); dim];
    for n in 0..dim {
        for i in 0..=n {
            degens[n].push(QMor::new(&x[n], &x[n + 1], |a, b| {
                let src = x[n].hom(a, b).clone();
                let dst = x[n + 1].hom(a, b).clone();
                if n == 0 {
                    let cols: Vec<Elt> = if a == b { vec![col(pos[1][k.s(0, 0, a)])] } else { vec![] };
                    VMor::from_cols(src, dst, cols)
                } else {
                    let cols = between[n][a * s + b].iter().map(|&c| col(pos[n + 1][k.s(n, i, c)]));
                    VMor::from_cols(src, dst, cols)
                }
            })?);
        }
    }
    let mut mu = HashMap::new();
    for kk in 1..dim {
        for l in 1..=dim - kk {
            let n = kk + l;
            let lay = Layout::new(cosmos, &vertices, &[x[kk].clone(), x[l].clone()])?;
            let front = OrdMap::new(n, (0..=kk).collect())?;
            let back = OrdMap::new(n, (kk..=n).collect())?;
            let m = QMor::new(&x[n], lay.quiver(), |a, b| {
                let cols = between[n][a * s + b].iter().map(|&c| {
                    let y = k.act(n, c, &front);
                    let z = k.act(n, c, &back);
                    let mid = k.last_vertex(kk, y);
                    col(lay.encode(a, b, &[mid], &[pos[kk][y], pos[l][z]]))
                });
                VMor::from_cols(x[n].hom(a, b).clone(), lay.quiver().hom(a, b).clone(), cols)
            })?;
            mu.insert((kk, l), m);
        }
    }
    Templicial::new(cosmos, vertices, x[1..].to_vec(), faces, degens, mu)
}

/// Positions of the cells of `K_n(a,b)` inside the basis of `F̃(K)_n(a,b)`.
pub fn free_basis(k: &FinSimpSet, n: usize, a: usize, b: usize) -> Vec<usize> {
    k.cells_between(n, a, b)
}

/// The one-vertex object over FGAb with `X_n = Z`, `s_0 : X_0 → X_1` equal to
/// `2·`, all other faces and degeneracies the identity, and `μ_{k,l} = c·` for
/// `k, l > 0` (`c = 2` gives a valid object without non-degenerate simplices).
pub fn fgab_doubling(dim: usize, c: i64) -> Result<Templicial> {
    let ab = Cosmos::FgAb;
    let v = vertices_from(["*"]);
    let z = VQuiver::new(ab, v.clone(), |_, _| ab.free(1));
    let unit = VQuiver::unit(ab, v.clone());
    let scalar = |src: &VQuiver, dst: &VQuiver, k: i64| {
        QMor::new(src, dst, |a, b| VMor::from_cols(src.hom(a, b).clone(), dst.hom(a, b).clone(), vec![vec![(0, k)]]))
    };
    let higher = vec![z.clone(); dim];
    let mut faces = vec![Vec::new(); dim + 1];
    for (n, row) in faces.iter_mut().enumerate().skip(2) {
        for _ in 1..n {
            row.push(scalar(&z, &z, 1)?);
        }
    }
    let mut degens = vec![Vec::new(); dim];
    for (n, row) in degens.iter_mut().enumerate() {
        for _ in 0..=n {
            row.push(if n == 0 { scalar(&unit, &z, 2)? } else { scalar(&z, &z, 1)? });
        }
    }
    let mut mu = HashMap::new();
    for k in 1..dim {
        for l in 1..=dim - k {
            let lay = Layout::new(ab, &v, &[z.clone(), z.clone()])?;
            mu.insert((k, l), scalar(&z, lay.quiver(), c)?);
        }
    }
    Templicial::new(ab, v, higher, faces, degens, mu)
}

/// The simplicial set `∂Δ² ⊔_{Δ¹} ∂Δ²` on vertices `a < c1 < c2 < b`.
pub fn double_boundary() -> Result<FinSimpSet> {
    FinSimpSet::from_complex(
        vertices_from(["a", "c1", "c2", "b"]),
        &[vec![0, 1], vec![0, 2], vec![1, 3], vec![2, 3], vec![0, 3]],
        2,
    )
}

/// The handles of the w-extension: the object itself, `w`, and `2 s_0(h)` as
/// elements of `X_2(a,b)`.
#[derive(Clone, Debug)]
pub struct WExtension {
    pub x: Templicial,
    pub w: Elt,
    pub twice_degenerate_h: Elt,
}

/// `F̃(∂Δ² ⊔_{Δ¹} ∂Δ²)` over FGAb with a 2-simplex `w ∈ X_2(a,b)` added,
/// `d_1(w) = h` and `μ_{1,1}(w) = f1 ⊗ g1 + f2 ⊗ g2` (truncated at `D = 2`).
pub fn w_extension() -> Result<WExtension> {
    let ab = Cosmos::FgAb;
    let k = double_boundary()?;
    let base = free_templicial(ab, &k)?;
    let (a, c1, c2, b) = (0, 1, 2, 3);
    let v = base.vertices().clone();
    let s = v.len();
    let edge = |u: usize, w: usize| -> usize {
        let x = (0..k.count(1))
            .find(|&e| !k.is_degenerate(1, e) && k.first_vertex(1, e) == u && k.last_vertex(1, e) == w)
            .expect("edge present");
        k.cells_between(1, u, w).iter().position(|&c| c == x).unwrap()
    };
    let old2 = base.x(2).clone();
    let wi = old2.hom(a, b).len();
    let x2 = VQuiver::new(ab, v.clone(), |p, q| {
        let o = old2.hom(p, q);
        if (p, q) == (a, b) {
            let mut orders = o.orders().to_vec();
            orders.push(0);
            VObj::from_orders(orders)
        } else {
            o.clone()
        }
    });
    let x1 = base.x(1).clone();
    // d_1 and μ_{1,1} extended by their values on w
    let d1 = QMor::new(&x2, &x1, |p, q| {
        let f = base.d(2, 1).at(p, q);
        let mut cols: Vec<Elt> = (0..f.src().len()).map(|j| f.col(j).to_vec()).collect();
        if (p, q) == (a, b) {
            cols.push(vec![(edge(a, b) as u32, 1)]);
        }
        VMor::from_cols(x2.hom(p, q).clone(), x1.hom(p, q).clone(), cols)
    })?;
    let lay = Layout::new(ab, &v, &[x1.clone(), x1.clone()])?;
    let mu11 = QMor::new(&x2, lay.quiver(), |p, q| {
        let f = base.mu(1, 1).at(p, q);
        let mut cols: Vec<Elt> = (0..f.src().len()).map(|j| f.col(j).to_vec()).collect();
        if (p, q) == (a, b) {
            let mut e = lay.pure_tensor(&[a, c1, b], &[&Cosmos::basis_elt(edge(a, c1)), &Cosmos::basis_elt(edge(c1, b))]);
            let e2 = lay.pure_tensor(&[a, c2, b], &[&Cosmos::basis_elt(edge(a, c2)), &Cosmos::basis_elt(edge(c2, b))]);
            e = ab.add_elt(lay.quiver().hom(a, b), &e, &e2);
            cols.push(e);
        }
        VMor::from_cols(x2.hom(p, q).clone(), lay.quiver().hom(p, q).clone(), cols)
    })?;
    let degens: Vec<Vec<QMor>> = (0..2)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    let old = base.s(n, i);
                    if n == 1 {
                        QMor::new(&x1, &x2, |p, q| {
                            let f = old.at(p, q);
                            let cols = (0..f.src().len()).map(|j| f.col(j).to_vec());
                            VMor::from_cols(x1.hom(p, q).clone(), x2.hom(p, q).clone(), cols)
                        })
                    } else {
                        Ok(old.clone())
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let faces = vec![Vec::new(), Vec::new(), vec![d1]];
    let mut mu = HashMap::new();
    mu.insert((1, 1), mu11);
    let x = Templicial::new(ab, v, vec![x1.clone(), x2.clone()], faces, degens, mu)?;
    let _ = s;
    // 2 s_0(h): the degenerate 2-simplex a → a → b, doubled
    let h = k
        .cells_between(1, a, b)
        .into_iter()
        .find(|&e| !k.is_degenerate(1, e))
        .expect("edge h");
    let s0h = k.s(1, 0, h);
    let pos = k.cells_between(2, a, b).iter().position(|&c| c == s0h).unwrap();
    Ok(WExtension { x, w: vec![(wi as u32, 1)], twice_degenerate_h: vec![(pos as u32, 2)] })
}

/// Templicial morphisms between objects on the same vertex set.
#[derive(Clone, Debug)]
pub struct TemplicialMor {
    pub components: Vec<QMor>,
}

impl TemplicialMor {
    /// Checks naturality against faces and degeneracies and compatibility with μ.
    pub fn check(&self, x: &Templicial, y: &Templicial) -> Result<Report> {
        let mut r = Report::default();
        let dim = x.dim().min(y.dim());
        if self.components.len() <= dim {
            return Err(Error::mismatch(MODULE, "morphism_check", "too few components"));
        }
        for n in 0..=dim {
            let a = &self.components[n];
            if a.src() != *x.x(n) || a.dst() != *y.x(n) {
                return Err(Error::mismatch(MODULE, "morphism_check", format!("component {n} has wrong endpoints")));
            }
        }
        for n in 2..=dim {
            for j in 1..n {
                let lhs = x.d(n, j).then(&self.components[n - 1])?;
                let rhs = self.components[n].then(y.d(n, j))?;
                r.record("naturality-face", &[n, j], &lhs, &rhs);
            }
        }
        for n in 0..dim {
            for i in 0..=n {
                let lhs = x.s(n, i).then(&self.components[n + 1])?;
                let rhs = self.components[n].then(y.s(n, i))?;
                r.record("naturality-degeneracy", &[n, i], &lhs, &rhs);
            }
        }
        for k in 1..dim {
            for l in 1..=dim - k {
                let lhs = self.components[k + l].then(y.mu(k, l))?;
                let tens = tf(
                    x.cosmos(),
                    x.vertices(),
                    &[Part::single(&self.components[k]), Part::single(&self.components[l])],
                )?;
                let rhs = x.mu(k, l).then(&tens)?;
                r.record("monoidality", &[k, l], &lhs, &rhs);
            }
        }
        Ok(r)
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(QMor::is_iso)
    }

    pub fn identity(x: &Templicial) -> Self {
        TemplicialMor { components: (0..=x.dim()).map(|n| QMor::identity(x.x(n))).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::necklace::enumerate_necklaces;

    fn simplex(n: usize) -> FinSimpSet {
        FinSimpSet::standard_simplex(n, n).unwrap()
    }

    #[test]
    fn free_on_a_simplex_validates() {
        for c in [Cosmos::FinSet, Cosmos::FinVect { p: 2 }, Cosmos::FgAb] {
            let x = free_templicial(c, &simplex(3)).unwrap();
            let r = x.validate().unwrap();
            assert!(r.is_ok(), "{:?}", r.violations);
            assert!(r.checked > 10);
        }
    }

    #[test]
    fn free_dimensions() {
        let c = Cosmos::FinVect { p: 2 };
        let x = free_templicial(c, &simplex(2)).unwrap();
        assert_eq!(x.x(1).hom(0, 1).len(), 1);
        assert_eq!(x.x(2).hom(0, 2).len(), 3);
    }

    #[test]
    fn doubling_example() {
        let x = fgab_doubling(3, 2).unwrap();
        assert!(x.validate().unwrap().is_ok());
        let bad = fgab_doubling(3, 3).unwrap();
        let r = bad.validate().unwrap();
        assert!(r.violations.iter().any(|v| v.law == "mu-degeneracy"));
        assert!(x.nondegenerates().unwrap().found().is_none());
    }

    #[test]
    fn necklace_evaluation() {
        let x = free_templicial(Cosmos::FinVect { p: 3 }, &simplex(3)).unwrap();
        let nu = necklace::nu(1, 2).unwrap();
        assert_eq!(&x.eval_neckmap(&nu).unwrap(), x.mu(1, 2));
        for p in 0..=3 {
            for t in enumerate_necklaces(p) {
                for q in 0..=3 {
                    for u in enumerate_necklaces(q) {
                        for f in necklace::enumerate_neckmaps(&t, &u) {
                            for r in 0..=3 {
                                for v in enumerate_necklaces(r) {
                                    for g in necklace::enumerate_neckmaps(&u, &v) {
                                        let fg = f.then(&g).unwrap();
                                        let lhs = x.eval_neckmap(&fg).unwrap();
                                        let rhs = x.eval_neckmap(&g).unwrap().then(&x.eval_neckmap(&f).unwrap()).unwrap();
                                        assert_eq!(lhs, rhs, "{f:?} then {g:?}");
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn underlying_of_free_recovers_simplex() {
        for n in 0..=3 {
            let k = simplex(n);
            let x = free_templicial(Cosmos::FinSet, &k).unwrap();
            let (u, _) = x.underlying_sset(n).unwrap();
            assert!(crate::sset::find_isomorphism(&u, &k).is_some(), "n = {n}");
        }
    }

    #[test]
    fn eilenberg_zilber_counts() {
        let x = free_templicial(Cosmos::FinVect { p: 2 }, &simplex(3)).unwrap();
        let nd = x.nondegenerates().unwrap().found().unwrap();
        let total = |q: &VQuiver| q.homs().iter().map(VObj::len).sum::<usize>();
        assert_eq!(total(x.x(2)), 20);
        let ez = x.ez_decompose(&nd, 2).unwrap();
        assert!(ez.iso);
        let (deg, _) = x.degenerate_part(0).unwrap();
        assert_eq!(total(&deg), 0);
    }

    #[test]
    fn w_extension_example() {
        let w = w_extension().unwrap();
        assert!(w.x.validate().unwrap().is_ok());
        let (a, b) = (0, 3);
        assert!(w.x.two_simplices_over(a, b, &w.w).unwrap().is_empty());
        let over = w.x.two_simplices_over(a, b, &w.twice_degenerate_h).unwrap();
        // (λ s_0 a, μ h) with λμ = 2 over Z
        assert_eq!(over.len(), 4, "{over:?}");
        assert!(over.iter().any(|(_, y, _)| y == &vec![(0, 2)]));
        assert!(over.iter().any(|(_, _, z)| z == &vec![(0, 2)]));
    }

    #[test]
    fn json_round_trip() {
        let x = free_templicial(Cosmos::FinVect { p: 2 }, &FinSimpSet::boundary(2, 2).unwrap()).unwrap();
        let y = Templicial::from_json(&x.to_json()).unwrap();
        assert_eq!(x.to_json(), y.to_json());
    }
}
