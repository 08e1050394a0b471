//! Finite truncated simplicial sets and the classical Set-level constructions.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::hash::Hash;

use serde_json::{json, Value};

use crate::cosmos::sets;
use crate::error::{Error, Result};
use crate::necklace::{self, Flag, NeckMap, Necklace, VertexSet};
use crate::quiver::{numbered, vertices_from, Vertices};
use crate::simplexcat::{self, OrdMap};

const MODULE: &str = "sset";

/// A simplicial set with cells up to dimension `dim`, stored by tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSimpSet {
    dim: usize,
    vertices: Vertices,
    counts: Vec<usize>,
    // faces[n][i][x] for 1 ≤ n ≤ dim
    faces: Vec<Vec<Vec<usize>>>,
    // degens[n][i][x] for n < dim
    degens: Vec<Vec<Vec<usize>>>,
}

impl FinSimpSet {
    /// Builds a simplicial set from keyed cells; `cells[n]` lists the n-cells in order.
    pub fn build<K, F, G>(dim: usize, vertices: Option<Vertices>, cells: Vec<Vec<K>>, face: F, degen: G) -> Result<Self>
    where
        K: Clone + Eq + Hash + std::fmt::Debug,
        F: Fn(usize, usize, &K) -> K,
        G: Fn(usize, usize, &K) -> K,
    {
        if cells.len() != dim + 1 {
            return Err(Error::invalid(MODULE, "build", "need one cell list per dimension"));
        }
        let index: Vec<HashMap<&K, usize>> = cells
            .iter()
            .map(|c| c.iter().enumerate().map(|(i, k)| (k, i)).collect())
            .collect();
        let look = |n: usize, k: &K| -> Result<usize> {
            index[n]
                .get(k)
                .copied()
                .ok_or_else(|| Error::invalid(MODULE, "build", format!("cell {k:?} missing in dimension {n}")))
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=dim {
            let mut fnn = Vec::with_capacity(n + 1);
            for i in 0..=n {
                fnn.push(cells[n].iter().map(|k| look(n - 1, &face(n, i, k))).collect::<Result<Vec<_>>>()?);
            }
            faces.push(fnn);
        }
        let mut degens = Vec::new();
        for n in 0..dim {
            let mut dn = Vec::with_capacity(n + 1);
            for i in 0..=n {
                dn.push(cells[n].iter().map(|k| look(n + 1, &degen(n, i, k))).collect::<Result<Vec<_>>>()?);
            }
            degens.push(dn);
        }
        let counts: Vec<usize> = cells.iter().map(Vec::len).collect();
        let vertices = vertices.unwrap_or_else(|| numbered(counts[0]));
        if vertices.len() != counts[0] {
            return Err(Error::invalid(MODULE, "build", "vertex names do not match 0-cells"));
        }
        let k = FinSimpSet { dim, vertices, counts, faces, degens };
        k.check_identities()?;
        Ok(k)
    }

    /// Builds from explicit tables, validating the simplicial identities.
    pub fn from_tables(
        dim: usize,
        vertices: Vertices,
        counts: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let bad = |d: &str| Error::invalid(MODULE, "from_tables", d.to_string());
        if counts.len() != dim + 1 || vertices.len() != counts[0] {
            return Err(bad("cell counts do not match the truncation"));
        }
        if faces.len() != dim + 1 || degens.len() != dim {
            return Err(bad("wrong number of face or degeneracy levels"));
        }
        for n in 1..=dim {
            if faces[n].len() != n + 1 {
                return Err(bad("wrong number of face maps"));
            }
            for t in &faces[n] {
                if t.len() != counts[n] || t.iter().any(|&x| x >= counts[n - 1]) {
                    return Err(bad("face table out of range"));
                }
            }
        }
        for n in 0..dim {
            if degens[n].len() != n + 1 {
                return Err(bad("wrong number of degeneracy maps"));
            }
            for t in &degens[n] {
                if t.len() != counts[n] || t.iter().any(|&x| x >= counts[n + 1]) {
                    return Err(bad("degeneracy table out of range"));
                }
            }
        }
        let k = FinSimpSet { dim, vertices, counts, faces, degens };
        k.check_identities()?;
        Ok(k)
    }

    fn check_identities(&self) -> Result<()> {
        let err = |s: String| Err(Error::invalid(MODULE, "identities", s));
        for n in 2..=self.dim {
            for j in 1..=n {
                for i in 0..j {
                    for x in 0..self.counts[n] {
                        if self.d(n - 1, i, self.d(n, j, x)) != self.d(n - 1, j - 1, self.d(n, i, x)) {
                            return err(format!("d_{i} d_{j} ≠ d_{} d_{i} in dimension {n}", j - 1));
                        }
                    }
                }
            }
        }
        for n in 0..self.dim {
            for j in 0..=n {
                for x in 0..self.counts[n] {
                    let y = self.s(n, j, x);
                    for i in 0..=n + 1 {
                        let lhs = self.d(n + 1, i, y);
                        let rhs = if i == j || i == j + 1 {
                            x
                        } else if i < j {
                            self.s(n - 1, j - 1, self.d(n, i, x))
                        } else {
                            self.s(n - 1, j, self.d(n, i - 1, x))
                        };
                        if lhs != rhs {
                            return err(format!("d_{i} s_{j} identity fails in dimension {n}"));
                        }
                    }
                    if n + 1 < self.dim {
                        for i in 0..=j {
                            if self.s(n + 1, i, self.s(n, j, x)) != self.s(n + 1, j + 1, self.s(n, i, x)) {
                                return err(format!("s_{i} s_{j} identity fails in dimension {n}"));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &Vertices {
        &self.vertices
    }

    pub fn count(&self, n: usize) -> usize {
        self.counts[n]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn d(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    pub fn s(&self, n: usize, i: usize, x: usize) -> usize {
        self.degens[n][i][x]
    }

    pub fn face_table(&self, n: usize, i: usize) -> &[usize] {
        &self.faces[n][i]
    }

    pub fn degen_table(&self, n: usize, i: usize) -> &[usize] {
        &self.degens[n][i]
    }

    /// `K(f)(x)` for an n-cell `x` and `f: [m] → [n]`.
    pub fn act(&self, n: usize, x: usize, f: &OrdMap) -> usize {
        debug_assert_eq!(f.cod(), n);
        let (epi, mono) = f.epi_mono();
        let mut cur = x;
        let mut dim = n;
        for &g in simplexcat::injection_gaps(&mono).iter().rev() {
            cur = self.d(dim, g, cur);
            dim -= 1;
        }
        for &i in simplexcat::surjection_word(&epi).iter().rev() {
            cur = self.s(dim, i, cur);
            dim += 1;
        }
        cur
    }

    pub fn vertex(&self, n: usize, x: usize, j: usize) -> usize {
        self.act(n, x, &OrdMap::new(n, vec![j]).expect("vertex map"))
    }

    pub fn first_vertex(&self, n: usize, x: usize) -> usize {
        self.vertex(n, x, 0)
    }

    pub fn last_vertex(&self, n: usize, x: usize) -> usize {
        self.vertex(n, x, n)
    }

    pub fn is_degenerate(&self, n: usize, x: usize) -> bool {
        n > 0 && n <= self.dim && (0..n).any(|i| self.s(n - 1, i, self.d(n, i, x)) == x)
    }

    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        (0..self.counts[n]).filter(|&x| !self.is_degenerate(n, x)).collect()
    }

    /// n-cells from `a` to `b`.
    pub fn cells_between(&self, n: usize, a: usize, b: usize) -> Vec<usize> {
        (0..self.counts[n])
            .filter(|&x| self.first_vertex(n, x) == a && self.last_vertex(n, x) == b)
            .collect()
    }

    /// Discrete: every cell above dimension 0 is degenerate.
    pub fn is_discrete(&self) -> bool {
        (1..=self.dim).all(|n| self.nondegenerate(n).is_empty())
    }

    /// The same data truncated at a lower dimension.
    pub fn truncate(&self, d: usize) -> Result<Self> {
        if d > self.dim {
            return Err(Error::truncation(MODULE, "truncate", d, self.dim));
        }
        Ok(FinSimpSet {
            dim: d,
            vertices: self.vertices.clone(),
            counts: self.counts[..=d].to_vec(),
            faces: self.faces[..=d].to_vec(),
            degens: self.degens[..d].to_vec(),
        })
    }

    /// Cells of a sub-complex of an ordered complex on `vertices`.
    pub fn from_complex(vertices: Vertices, faces: &[Vec<usize>], dim: usize) -> Result<Self> {
        let nv = vertices.len();
        let mut closure: HashSet<Vec<usize>> = HashSet::new();
        for f in faces {
            if f.windows(2).any(|w| w[0] >= w[1]) || f.iter().any(|&v| v >= nv) {
                return Err(Error::invalid(MODULE, "from_complex", "faces must be strictly increasing vertex lists"));
            }
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                closure.insert((0..k).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect());
            }
        }
        for v in 0..nv {
            closure.insert(vec![v]);
        }
        let mut cells: Vec<Vec<Vec<usize>>> = Vec::with_capacity(dim + 1);
        for n in 0..=dim {
            let mut c: Vec<Vec<usize>> = simplexcat::enumerate_monotone(n, nv.saturating_sub(1))
                .into_iter()
                .filter(|_| nv > 0)
                .map(|f| f.table().to_vec())
                .filter(|seq| {
                    let mut set = seq.clone();
                    set.dedup();
                    closure.contains(&set)
                })
                .collect();
            c.sort();
            cells.push(c);
        }
        FinSimpSet::build(
            dim,
            Some(vertices),
            cells,
            |_, i, k| {
                let mut v = k.clone();
                v.remove(i);
                v
            },
            |_, i, k| {
                let mut v = k.clone();
                v.insert(i, k[i]);
                v
            },
        )
    }

    /// Δ^n truncated at `dim`.
    pub fn standard_simplex(n: usize, dim: usize) -> Result<Self> {
        FinSimpSet::from_complex(numbered(n + 1), &[(0..=n).collect()], dim)
    }

    /// ∂Δ^n truncated at `dim`.
    pub fn boundary(n: usize, dim: usize) -> Result<Self> {
        let faces: Vec<Vec<usize>> = (0..=n).map(|j| (0..=n).filter(|&v| v != j).collect()).collect();
        FinSimpSet::from_complex(numbered(n + 1), &faces, dim)
    }

    /// Λ^n_j truncated at `dim`.
    pub fn horn(n: usize, j: usize, dim: usize) -> Result<Self> {
        if j > n {
            return Err(Error::invalid(MODULE, "horn", format!("need 0 ≤ {j} ≤ {n}")));
        }
        let faces: Vec<Vec<usize>> = (0..=n)
            .filter(|&k| k != j)
            .map(|k| (0..=n).filter(|&v| v != k).collect())
            .collect();
        FinSimpSet::from_complex(numbered(n + 1), &faces, dim)
    }

    /// Nerve of a finite poset given by its order relation `leq[x][y]`.
    pub fn nerve_of_poset(names: Vertices, leq: &[Vec<bool>], dim: usize) -> Result<Self> {
        let n = leq.len();
        if names.len() != n {
            return Err(Error::invalid(MODULE, "nerve_of_poset", "names do not match elements"));
        }
        for x in 0..n {
            if !leq[x][x] {
                return Err(Error::invalid(MODULE, "nerve_of_poset", "relation is not reflexive"));
            }
            for y in 0..n {
                if x != y && leq[x][y] && leq[y][x] {
                    return Err(Error::invalid(MODULE, "nerve_of_poset", "relation is not antisymmetric"));
                }
                for z in 0..n {
                    if leq[x][y] && leq[y][z] && !leq[x][z] {
                        return Err(Error::invalid(MODULE, "nerve_of_poset", "relation is not transitive"));
                    }
                }
            }
        }
        let mut cells: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|x| vec![x]).collect()];
        for m in 1..=dim {
            let mut next = Vec::new();
            for c in &cells[m - 1] {
                let last = *c.last().unwrap();
                for y in 0..n {
                    if leq[last][y] {
                        let mut e = c.clone();
                        e.push(y);
                        next.push(e);
                    }
                }
            }
            next.sort();
            cells.push(next);
        }
        FinSimpSet::build(
            dim,
            Some(names),
            cells,
            |_, i, k| {
                let mut v = k.clone();
                v.remove(i);
                v
            },
            |_, i, k| {
                let mut v = k.clone();
                v.insert(i, k[i]);
                v
            },
        )
    }

    /// Necklace-shaped cells `K_T(a,b)`: tuples of bead cells glued at joints.
    pub fn necklace_cells(&self, t: &Necklace, a: usize, b: usize) -> Result<Vec<Vec<usize>>> {
        let beads = t.beads();
        if let Some(&m) = beads.iter().find(|&&m| m > self.dim) {
            return Err(Error::truncation(MODULE, "necklace_cells", m, self.dim));
        }
        if beads.is_empty() {
            return Ok(if a == b { vec![vec![]] } else { vec![] });
        }
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(beads.len());
        self.glue(&beads, a, b, &mut cur, &mut out);
        Ok(out)
    }

    fn glue(&self, beads: &[usize], start: usize, end: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k = cur.len();
        if k == beads.len() {
            out.push(cur.clone());
            return;
        }
        let m = beads[k];
        for x in 0..self.counts[m] {
            if self.first_vertex(m, x) != start {
                continue;
            }
            let l = self.last_vertex(m, x);
            if k + 1 == beads.len() && l != end {
                continue;
            }
            cur.push(x);
            self.glue(beads, l, end, cur, out);
            cur.pop();
        }
    }

    /// `K(f): K_U(a,b) → K_T(a,b)` for a necklace map `f: T → U`.
    pub fn necklace_act(&self, f: &NeckMap, y: &[usize]) -> Vec<usize> {
        let t = f.src().joint_list();
        let u = f.dst().joint_list();
        let g = f.underlying();
        let mut out = Vec::with_capacity(t.len().saturating_sub(1));
        for w in t.windows(2) {
            let (lo, hi) = (g.apply(w[0]), g.apply(w[1]));
            let j = (1..u.len()).find(|&j| u[j - 1] <= lo && hi <= u[j]).expect("beads map into beads");
            let (u0, u1) = (u[j - 1], u[j]);
            let table: Vec<usize> = (w[0]..=w[1]).map(|v| g.apply(v) - u0).collect();
            let h = OrdMap::new(u1 - u0, table).expect("bead map");
            out.push(self.act(u1 - u0, y[j - 1], &h));
        }
        out
    }
}

pub fn sset_to_json(k: &FinSimpSet) -> Value {
    let mut cells = serde_json::Map::new();
    let mut d = serde_json::Map::new();
    let mut s = serde_json::Map::new();
    for n in 0..=k.dim {
        cells.insert(n.to_string(), json!(k.counts[n]));
        if n >= 1 {
            d.insert(n.to_string(), json!(k.faces[n]));
        }
        if n < k.dim {
            s.insert(n.to_string(), json!(k.degens[n]));
        }
    }
    json!({
        "D": k.dim,
        "vertices": &k.vertices[..],
        "cells": cells,
        "d": d,
        "s": s,
    })
}

fn perr(detail: impl Into<String>) -> Error {
    Error::parse(MODULE, "sset_from_json", detail)
}

fn nat(v: &Value) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| perr("expected a natural number"))
}

fn table_list(v: &Value) -> Result<Vec<Vec<usize>>> {
    v.as_array()
        .ok_or_else(|| perr("expected a list of tables"))?
        .iter()
        .map(|t| t.as_array().ok_or_else(|| perr("expected a table"))?.iter().map(nat).collect())
        .collect()
}

/// Parses the full table format or a shorthand: `{"standard_simplex": n}`,
/// `{"boundary": n}`, `{"horn": [n, j]}`, `{"complex": {"vertices", "faces"}}`,
/// `{"poset": {"elements", "leq"}}`, each with an optional `"D"`.
pub fn sset_from_json(v: &Value) -> Result<FinSimpSet> {
    let dim_or = |dflt: usize| -> Result<usize> { v.get("D").map(nat).transpose().map(|d| d.unwrap_or(dflt)) };
    if let Some(n) = v.get("standard_simplex") {
        let n = nat(n)?;
        return FinSimpSet::standard_simplex(n, dim_or(n)?);
    }
    if let Some(n) = v.get("boundary") {
        let n = nat(n)?;
        return FinSimpSet::boundary(n, dim_or(n)?);
    }
    if let Some(h) = v.get("horn") {
        let h = h.as_array().filter(|h| h.len() == 2).ok_or_else(|| perr("horn needs [n, j]"))?;
        let (n, j) = (nat(&h[0])?, nat(&h[1])?);
        return FinSimpSet::horn(n, j, dim_or(n)?);
    }
    if let Some(c) = v.get("complex") {
        let names = c
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| perr("complex needs vertices"))?
            .iter()
            .map(|x| x.as_str().map(String::from).ok_or_else(|| perr("vertex names are strings")))
            .collect::<Result<Vec<_>>>()?;
        let faces = table_list(c.get("faces").ok_or_else(|| perr("complex needs faces"))?)?;
        let top = faces.iter().map(|f| f.len().saturating_sub(1)).max().unwrap_or(0);
        return FinSimpSet::from_complex(vertices_from(names), &faces, dim_or(top)?);
    }
    if let Some(p) = v.get("poset") {
        let names = p
            .get("elements")
            .and_then(Value::as_array)
            .ok_or_else(|| perr("poset needs elements"))?
            .iter()
            .map(|x| x.as_str().map(String::from).ok_or_else(|| perr("element names are strings")))
            .collect::<Result<Vec<_>>>()?;
        let rel = table_list(p.get("leq").ok_or_else(|| perr("poset needs leq pairs"))?)?;
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for pair in rel {
            if pair.len() != 2 || pair[0] >= n || pair[1] >= n {
                return Err(perr("leq entries are pairs of element indices"));
            }
            leq[pair[0]][pair[1]] = true;
        }
        // transitive closure
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        return FinSimpSet::nerve_of_poset(vertices_from(names), &leq, dim_or(2)?);
    }
    let dim = nat(v.get("D").ok_or_else(|| perr("missing D"))?)?;
    let cells = v.get("cells").ok_or_else(|| perr("missing cells"))?;
    let counts: Vec<usize> = (0..=dim)
        .map(|n| nat(cells.get(n.to_string()).ok_or_else(|| perr(format!("missing cell count {n}")))?))
        .collect::<Result<_>>()?;
    let mut faces = vec![Vec::new()];
    for n in 1..=dim {
        faces.push(table_list(
            v.get("d")
                .and_then(|d| d.get(n.to_string()))
                .ok_or_else(|| perr(format!("missing faces in dimension {n}")))?,
        )?);
    }
    let mut degens = Vec::new();
    for n in 0..dim {
        degens.push(table_list(
            v.get("s")
                .and_then(|d| d.get(n.to_string()))
                .ok_or_else(|| perr(format!("missing degeneracies in dimension {n}")))?,
        )?);
    }
    let vertices = match v.get("vertices").and_then(Value::as_array) {
        Some(names) => vertices_from(
            names
                .iter()
                .map(|x| x.as_str().map(String::from).ok_or_else(|| perr("vertex names are strings")))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => numbered(counts[0]),
    };
    FinSimpSet::from_tables(dim, vertices, counts, faces, degens)
}

/// A simplicial set with chosen start and end vertices.
#[derive(Clone, Debug)]
pub struct Bipointed {
    pub base: FinSimpSet,
    pub start: usize,
    pub end: usize,
}

impl Bipointed {
    pub fn new(base: FinSimpSet, start: usize, end: usize) -> Result<Self> {
        if start >= base.count(0) || end >= base.count(0) {
            return Err(Error::invalid(MODULE, "bipointed", "endpoints must be vertices"));
        }
        Ok(Bipointed { base, start, end })
    }

    /// `K_T(a,b)`.
    pub fn restrict_to_nec(&self, t: &Necklace) -> Result<Vec<Vec<usize>>> {
        self.base.necklace_cells(t, self.start, self.end)
    }

    /// The function `K_U(a,b) → K_T(a,b)` induced by `f: T → U`, as a table.
    pub fn restrict_map(&self, f: &NeckMap) -> Result<Vec<usize>> {
        let src = self.restrict_to_nec(f.dst())?;
        let dst = self.restrict_to_nec(f.src())?;
        let index: HashMap<&Vec<usize>, usize> = dst.iter().enumerate().map(|(i, c)| (c, i)).collect();
        Ok(src
            .iter()
            .map(|y| index[&self.base.necklace_act(f, y)])
            .collect())
    }
}

/// A simplex of a classical categorification in canonical form: a totally
/// non-degenerate necklace together with a flanked flag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RigidCell {
    pub necklace: Necklace,
    pub beads: Vec<usize>,
    pub flag: Vec<VertexSet>,
}

/// Collapses degenerate beads, pushing the flag forward.
fn canonicalize(k: &FinSimpSet, mut t: Necklace, mut beads: Vec<usize>, mut flag: Vec<VertexSet>) -> RigidCell {
    loop {
        let dims = t.beads();
        let joints = t.joint_list();
        let mut found = None;
        for (bi, (&m, &x)) in dims.iter().zip(&beads).enumerate() {
            if m == 0 {
                continue;
            }
            if let Some(i) = (0..m).find(|&i| k.s(m - 1, i, k.d(m, i, x)) == x) {
                found = Some((bi, i, k.d(m, i, x)));
                break;
            }
        }
        let Some((bi, i, y)) = found else {
            return RigidCell { necklace: t, beads, flag };
        };
        // collapse vertex joints[bi]+i+1 onto joints[bi]+i
        let v = joints[bi] + i;
        let p = t.p();
        let table: Vec<usize> = (0..=p).map(|u| if u > v { u - 1 } else { u }).collect();
        let g = OrdMap::new(p - 1, table).expect("codegeneracy");
        let image = |s: VertexSet| -> VertexSet {
            necklace::set_items(s).into_iter().fold(0, |acc, u| acc | (1u64 << g.apply(u)))
        };
        let new_t = Necklace::from_set(p - 1, image(t.joints())).expect("collapsed necklace");
        if dims[bi] == 1 {
            beads.remove(bi);
        } else {
            beads[bi] = y;
        }
        flag = flag.into_iter().map(image).collect();
        t = new_t;
    }
}

fn rigid_face(k: &FinSimpSet, c: &RigidCell, i: usize) -> RigidCell {
    let mut chain = c.flag.clone();
    chain.remove(i);
    let fl = Flag::new(c.necklace, chain).expect("deleting keeps a flag");
    let (flanked, counit) = necklace::flankify(&fl);
    let beads = k.necklace_act(&counit, &c.beads);
    canonicalize(k, *flanked.base(), beads, flanked.chain().to_vec())
}

fn rigid_degen(c: &RigidCell, i: usize) -> RigidCell {
    let mut r = c.clone();
    r.flag.insert(i, r.flag[i]);
    r
}

/// `𝔠[K](a,b)` truncated at `n_max`, enumerating necklaces with at most
/// `vertex_budget` vertices (exact when `K` has no non-degenerate loops through
/// longer paths than that).
pub fn classical_rigidify(k: &Bipointed, n_max: usize, vertex_budget: usize) -> Result<FinSimpSet> {
    let base = &k.base;
    let mut cells: Vec<Vec<RigidCell>> = vec![Vec::new(); n_max + 1];
    for p in 0..=vertex_budget {
        for t in necklace::enumerate_necklaces(p) {
            if t.max_bead() > base.dim() {
                continue;
            }
            for x in base.necklace_cells(&t, k.start, k.end)? {
                let dims = t.beads();
                if dims.iter().zip(&x).any(|(&m, &c)| base.is_degenerate(m, c)) {
                    continue;
                }
                for (n, level) in cells.iter_mut().enumerate() {
                    for f in necklace::enumerate_flanked_flags(&t, n) {
                        level.push(RigidCell { necklace: t, beads: x.clone(), flag: f.chain().to_vec() });
                    }
                }
            }
        }
    }
    for l in cells.iter_mut() {
        l.sort();
    }
    FinSimpSet::build(n_max, None, cells, |_, i, c| rigid_face(base, c, i), |_, i, c| rigid_degen(c, i))
}

/// Composition `𝔠[K](a,b) × 𝔠[K](b,c) → 𝔠[K](a,c)` on canonical cells.
pub fn rigid_compose(x: &RigidCell, y: &RigidCell) -> RigidCell {
    let t = necklace::wedge(&x.necklace, &y.necklace);
    let mut beads = x.beads.clone();
    beads.extend_from_slice(&y.beads);
    let flag = x
        .flag
        .iter()
        .zip(&y.flag)
        .map(|(&u, &v)| u | (v << x.necklace.p()))
        .collect();
    RigidCell { necklace: t, beads, flag }
}

/// A simplicial category with finitely many objects and truncated homs.
#[derive(Clone, Debug)]
pub struct SimpCat {
    pub objects: Vertices,
    pub dim: usize,
    /// `hom[a * n + b]`.
    pub hom: Vec<FinSimpSet>,
    /// `comp[n][(a·N + b)·N + c][x · |hom(b,c)_n| + y]` for `x ∈ hom(a,b)_n`, `y ∈ hom(b,c)_n`.
    pub comp: Vec<Vec<Vec<usize>>>,
    /// Identity vertex of each `hom(a,a)`.
    pub unit: Vec<usize>,
}

impl SimpCat {
    pub fn size(&self) -> usize {
        self.objects.len()
    }

    pub fn hom(&self, a: usize, b: usize) -> &FinSimpSet {
        &self.hom[a * self.size() + b]
    }

    pub fn compose(&self, n: usize, a: usize, b: usize, c: usize, x: usize, y: usize) -> usize {
        let s = self.size();
        self.comp[n][(a * s + b) * s + c][x * self.hom(b, c).count(n) + y]
    }

    /// Identity at level `n`.
    pub fn identity(&self, n: usize, a: usize) -> usize {
        let h = self.hom(a, a);
        let mut x = self.unit[a];
        for m in 0..n {
            x = h.s(m, 0, x);
        }
        x
    }

    /// The simplicial category of a category with discrete homs.
    pub fn discrete(objects: Vertices, hom_sizes: &[usize], comp: &[Vec<usize>], unit: &[usize], dim: usize) -> Result<Self> {
        let s = objects.len();
        let hom: Vec<FinSimpSet> = hom_sizes
            .iter()
            .map(|&m| FinSimpSet::from_complex(numbered(m), &[], dim))
            .collect::<Result<_>>()?;
        let comp_levels = (0..=dim).map(|_| comp.to_vec()).collect();
        let c = SimpCat { objects, dim, hom, comp: comp_levels, unit: unit.to_vec() };
        debug_assert_eq!(c.hom.len(), s * s);
        Ok(c)
    }
}

/// Simplicial functors `𝔠[Δ^n] → C` for `n ≤ dim`, as a simplicial set.
pub fn classical_hc_nerve(c: &SimpCat, dim: usize) -> Result<FinSimpSet> {
    if dim >= 1 && c.dim + 1 < dim {
        return Err(Error::truncation(MODULE, "classical_hc_nerve", dim - 1, c.dim));
    }
    type Cell = (Vec<usize>, Vec<Vec<usize>>);
    // a cell: objects A_0..A_n and, for each i<j, the images of the canonical
    // cells of 𝔠[Δ^n](i,j) ≅ N(P_{i..j}), indexed as in `cube_cells`
    let mut cells: Vec<Vec<Cell>> = Vec::new();
    let cubes: Vec<Vec<FinSimpSet>> = (0..=dim)
        .map(|n| {
            (0..=n)
                .flat_map(|i| (0..=n).map(move |j| (i, j)))
                .map(|(i, j)| cube_nerve(j.saturating_sub(i), dim.saturating_sub(1)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    for n in 0..=dim {
        let mut out = Vec::new();
        let s = c.size();
        let total = s.checked_pow(n as u32 + 1).unwrap_or(usize::MAX);
        for code in 0..total {
            let objs: Vec<usize> = (0..=n).rev().map(|k| code / s.pow(k as u32) % s).collect();
            enumerate_functors(c, n, &objs, &cubes[n], dim.saturating_sub(1), &mut out);
        }
        out.sort();
        cells.push(out);
    }
    let face = |n: usize, i: usize, cell: &Cell| -> Cell { restrict_functor(c, n, cell, &OrdMap::coface(n, i).unwrap(), &cubes, dim) };
    let degen = |n: usize, i: usize, cell: &Cell| -> Cell {
        restrict_functor(c, n, cell, &OrdMap::codegeneracy(n, i).unwrap(), &cubes, dim)
    };
    FinSimpSet::build(dim, Some(c.objects.clone()), cells, face, degen)
}

/// N(P) for P the subsets of `{1, …, g−1}` (the cube poset), truncated.
fn cube_nerve(g: usize, dim: usize) -> Result<FinSimpSet> {
    let free = g.saturating_sub(1);
    let elems: Vec<u64> = (0..(1u64 << free)).collect();
    let leq: Vec<Vec<bool>> = elems.iter().map(|&x| elems.iter().map(|&y| x & !y == 0).collect()).collect();
    FinSimpSet::nerve_of_poset(numbered(elems.len()), &leq, dim)
}

/// The vertex subset of `{i..j}` encoded by cube element `e` (bit t = vertex i+1+t).
fn cube_set(i: usize, j: usize, e: usize) -> VertexSet {
    let mut s = (1u64 << i) | (1u64 << j);
    for t in 0..j.saturating_sub(i + 1) {
        if e & (1 << t) != 0 {
            s |= 1u64 << (i + 1 + t);
        }
    }
    s
}

fn cube_elem(i: usize, j: usize, s: VertexSet) -> usize {
    let mut e = 0;
    for t in 0..j.saturating_sub(i + 1) {
        if s & (1u64 << (i + 1 + t)) != 0 {
            e |= 1 << t;
        }
    }
    e
}

/// Chain of a cube cell: vertex list of the cell.
fn cube_chain(cube: &FinSimpSet, m: usize, x: usize) -> Vec<usize> {
    (0..=m).map(|v| cube.vertex(m, x, v)).collect()
}

fn find_chain(cube: &FinSimpSet, m: usize, chain: &[usize]) -> usize {
    (0..cube.count(m))
        .find(|&x| cube_chain(cube, m, x) == chain)
        .expect("chain present in the cube nerve")
}

fn enumerate_functors(
    c: &SimpCat,
    n: usize,
    objs: &[usize],
    cubes: &[FinSimpSet],
    top: usize,
    out: &mut Vec<(Vec<usize>, Vec<Vec<usize>>)>,
) {
    let np = n + 1;
    let pairs: Vec<(usize, usize)> = {
        let mut v: Vec<(usize, usize)> = (0..np).flat_map(|i| (i + 1..np).map(move |j| (i, j))).collect();
        v.sort_by_key(|&(i, j)| (j - i, i));
        v
    };
    // values[pair index] = per cube cell (all dims flattened) image cell
    let mut maps: Vec<Vec<usize>> = vec![Vec::new(); np * np];
    fn rec(
        c: &SimpCat,
        objs: &[usize],
        cubes: &[FinSimpSet],
        top: usize,
        pairs: &[(usize, usize)],
        k: usize,
        maps: &mut Vec<Vec<usize>>,
        np: usize,
        out: &mut Vec<(Vec<usize>, Vec<Vec<usize>>)>,
    ) {
        if k == pairs.len() {
            out.push((objs.to_vec(), maps.clone()));
            return;
        }
        let (i, j) = pairs[k];
        let cube = &cubes[i * np + j];
        let hom = c.hom(objs[i], objs[j]);
        // flattened cube cells by dimension
        let offsets: Vec<usize> = (0..=top)
            .scan(0, |acc, m| {
                let s = *acc;
                *acc += cube.count(m);
                Some(s)
            })
            .collect();
        let total: usize = (0..=top).map(|m| cube.count(m)).sum();
        let mut val = vec![usize::MAX; total];
        // forced values from composition through a middle vertex
        let mut order: Vec<(usize, usize)> = Vec::new();
        for m in 0..=top {
            for x in 0..cube.count(m) {
                order.push((m, x));
            }
        }
        fn assign(
            c: &SimpCat,
            objs: &[usize],
            cubes: &[FinSimpSet],
            np: usize,
            i: usize,
            j: usize,
            order: &[(usize, usize)],
            pos: usize,
            val: &mut Vec<usize>,
            offsets: &[usize],
            maps: &mut Vec<Vec<usize>>,
            cont: &mut dyn FnMut(&mut Vec<Vec<usize>>),
        ) {
            if pos == order.len() {
                maps[i * np + j] = val.clone();
                cont(maps);
                maps[i * np + j] = Vec::new();
                return;
            }
            let (m, x) = order[pos];
            let cube = &cubes[i * np + j];
            let hom = c.hom(objs[i], objs[j]);
            let idx = offsets[m] + x;
            let chain = cube_chain(cube, m, x);
            // degenerate cells are determined by lower ones
            if cube.is_degenerate(m, x) {
                let (r, y) = (0..m)
                    .find_map(|r| {
                        let y = cube.d(m, r, x);
                        (cube.s(m - 1, r, y) == x).then_some((r, y))
                    })
                    .unwrap();
                val[idx] = hom.s(m - 1, r, val[offsets[m - 1] + y]);
                assign(c, objs, cubes, np, i, j, order, pos + 1, val, offsets, maps, cont);
                return;
            }
            // through a middle vertex shared by every set of the chain
            let common = chain
                .iter()
                .fold(!0u64, |acc, &e| acc & cube_set(i, j, e))
                & !((1u64 << i) | (1u64 << j));
            let candidates: Vec<usize> = if common != 0 {
                let mid = common.trailing_zeros() as usize;
                let lchain: Vec<usize> = chain
                    .iter()
                    .map(|&e| cube_elem(i, mid, cube_set(i, j, e) & ((1u64 << (mid + 1)) - 1)))
                    .collect();
                let rchain: Vec<usize> = chain
                    .iter()
                    .map(|&e| cube_elem(mid, j, cube_set(i, j, e) & !((1u64 << mid) - 1)))
                    .collect();
                let lc = &cubes[i * np + mid];
                let rc = &cubes[mid * np + j];
                let lx = find_chain(lc, m, &lchain);
                let rx = find_chain(rc, m, &rchain);
                let loff: usize = (0..m).map(|d| lc.count(d)).sum();
                let roff: usize = (0..m).map(|d| rc.count(d)).sum();
                let u = maps[i * np + mid][loff + lx];
                let v = maps[mid * np + j][roff + rx];
                vec![c.compose(m, objs[i], objs[mid], objs[j], u, v)]
            } else if m == 0 {
                (0..hom.count(0)).collect()
            } else {
                (0..hom.count(m)).collect()
            };
            for cand in candidates {
                let ok = m == 0 || (0..=m).all(|r| hom.d(m, r, cand) == val[offsets[m - 1] + cube.d(m, r, x)]);
                if ok {
                    val[idx] = cand;
                    assign(c, objs, cubes, np, i, j, order, pos + 1, val, offsets, maps, cont);
                }
            }
            val[idx] = usize::MAX;
        }
        let _ = hom;
        let mut cont = |maps: &mut Vec<Vec<usize>>| {
            rec(c, objs, cubes, top, pairs, k + 1, maps, np, out);
        };
        assign(c, objs, cubes, np, i, j, &order, 0, &mut val, &offsets, maps, &mut cont);
    }
    rec(c, objs, cubes, top, &pairs, 0, &mut maps, np, out);
}

/// Precomposition of a functor `𝔠[Δ^n] → C` with `𝔠[f]` for `f: [m] → [n]`.
fn restrict_functor(
    c: &SimpCat,
    n: usize,
    cell: &(Vec<usize>, Vec<Vec<usize>>),
    f: &OrdMap,
    cubes: &[Vec<FinSimpSet>],
    dim: usize,
) -> (Vec<usize>, Vec<Vec<usize>>) {
    let m = f.dom();
    let top = dim.saturating_sub(1);
    let np = n + 1;
    let mp = m + 1;
    let objs: Vec<usize> = (0..=m).map(|v| cell.0[f.apply(v)]).collect();
    let mut maps = vec![Vec::new(); mp * mp];
    for i in 0..=m {
        for j in i + 1..=m {
            let src_cube = &cubes[m][i * mp + j];
            let (fi, fj) = (f.apply(i), f.apply(j));
            let mut vals = Vec::new();
            for d in 0..=top {
                for x in 0..src_cube.count(d) {
                    let chain = cube_chain(src_cube, d, x);
                    if fi == fj {
                        // collapses to the identity of A_{f(i)}
                        vals.push(c.identity(d, objs[i]));
                        continue;
                    }
                    let tgt_cube = &cubes[n][fi * np + fj];
                    let img: Vec<usize> = chain
                        .iter()
                        .map(|&e| {
                            let s = cube_set(i, j, e);
                            let fs = necklace::set_items(s).into_iter().fold(0u64, |acc, v| acc | (1u64 << f.apply(v)));
                            cube_elem(fi, fj, fs)
                        })
                        .collect();
                    let y = find_chain(tgt_cube, d, &img);
                    let off: usize = (0..d).map(|e| tgt_cube.count(e)).sum();
                    vals.push(cell.1[fi * np + fj][off + y]);
                }
            }
            maps[i * mp + j] = vals;
        }
    }
    (objs, maps)
}

/// An isomorphism `K ≅ L` as per-dimension bijections, if one exists.
pub fn find_isomorphism(k: &FinSimpSet, l: &FinSimpSet) -> Option<Vec<Vec<usize>>> {
    if k.dim() != l.dim() || k.counts() != l.counts() {
        return None;
    }
    let dim = k.dim();
    let kn: Vec<Vec<usize>> = (0..=dim).map(|n| k.nondegenerate(n)).collect();
    let ln: Vec<Vec<usize>> = (0..=dim).map(|n| l.nondegenerate(n)).collect();
    if kn.iter().zip(&ln).any(|(a, b)| a.len() != b.len()) {
        return None;
    }
    let order: Vec<(usize, usize)> = (0..=dim).flat_map(|n| kn[n].iter().map(move |&x| (n, x))).collect();
    let mut maps: Vec<Vec<usize>> = (0..=dim).map(|n| vec![usize::MAX; k.count(n)]).collect();
    let mut used: Vec<Vec<bool>> = (0..=dim).map(|n| vec![false; l.count(n)]).collect();

    fn fill_degenerate(k: &FinSimpSet, l: &FinSimpSet, n: usize, maps: &mut [Vec<usize>]) -> bool {
        // extend to degenerate n-cells from (n−1)-cells
        if n == 0 {
            return true;
        }
        for x in 0..k.count(n) {
            if !k.is_degenerate(n, x) {
                continue;
            }
            let i = (0..n).find(|&i| k.s(n - 1, i, k.d(n, i, x)) == x).unwrap();
            let y = maps[n - 1][k.d(n, i, x)];
            let img = l.s(n - 1, i, y);
            if maps[n][x] != usize::MAX && maps[n][x] != img {
                return false;
            }
            maps[n][x] = img;
        }
        true
    }

    fn rec(
        k: &FinSimpSet,
        l: &FinSimpSet,
        ln: &[Vec<usize>],
        order: &[(usize, usize)],
        pos: usize,
        maps: &mut Vec<Vec<usize>>,
        used: &mut Vec<Vec<bool>>,
    ) -> bool {
        if pos == order.len() {
            // degenerate cells and final checks
            for n in 1..=k.dim() {
                if !fill_degenerate(k, l, n, maps) {
                    return false;
                }
            }
            for n in 0..=k.dim() {
                let mut seen = vec![false; l.count(n)];
                for &v in &maps[n] {
                    if v == usize::MAX || std::mem::replace(&mut seen[v], true) {
                        return false;
                    }
                }
                for x in 0..k.count(n) {
                    if n > 0 && (0..=n).any(|i| l.d(n, i, maps[n][x]) != maps[n - 1][k.d(n, i, x)]) {
                        return false;
                    }
                }
            }
            return true;
        }
        let (n, x) = order[pos];
        if pos > 0 && order[pos - 1].0 != n {
            // entering a new dimension: lower degenerate cells are now determined
            let snapshot = maps.clone();
            if !fill_degenerate(k, l, n - 1, maps) {
                *maps = snapshot;
                return false;
            }
        }
        for &y in &ln[n] {
            if used[n][y] {
                continue;
            }
            if n > 0 {
                let faces_ok = (0..=n).all(|i| {
                    let fx = maps[n - 1][k.d(n, i, x)];
                    fx == usize::MAX || fx == l.d(n, i, y)
                });
                if !faces_ok {
                    continue;
                }
            }
            maps[n][x] = y;
            used[n][y] = true;
            if rec(k, l, ln, order, pos + 1, maps, used) {
                return true;
            }
            maps[n][x] = usize::MAX;
            used[n][y] = false;
        }
        false
    }
    if rec(k, l, &ln, &order, 0, &mut maps, &mut used) {
        Some(maps)
    } else {
        None
    }
}

/// First inner horn `(n, j, horn faces)` without a filler, searching `n ≤ n_max`.
pub fn inner_horn_counterexample(k: &FinSimpSet, n_max: usize) -> Result<Option<(usize, usize, Vec<usize>)>> {
    if n_max > k.dim() {
        return Err(Error::truncation(MODULE, "inner_horn_fillers", n_max, k.dim()));
    }
    for n in 2..=n_max {
        let boundaries: HashSet<Vec<usize>> = (0..k.count(n))
            .map(|x| (0..=n).map(|i| k.d(n, i, x)).collect())
            .collect();
        for j in 1..n {
            for horn in horn_tuples(k, n, j) {
                let found = boundaries.iter().any(|b| (0..=n).filter(|&i| i != j).zip(&horn).all(|(i, &y)| b[i] == y));
                if !found {
                    return Ok(Some((n, j, horn)));
                }
            }
        }
    }
    Ok(None)
}

/// Compatible families `(y_i)_{i ≠ j}` of (n−1)-cells with `d_i y_k = d_{k−1} y_i` for `i < k`.
pub fn horn_tuples(k: &FinSimpSet, n: usize, j: usize) -> Vec<Vec<usize>> {
    let idx: Vec<usize> = (0..=n).filter(|&i| i != j).collect();
    let sizes = vec![k.count(n - 1); idx.len()];
    let mut eqs = Vec::new();
    let mut tables: Vec<(usize, usize, &[usize], &[usize])> = Vec::new();
    for (a, &i) in idx.iter().enumerate() {
        for (b, &kk) in idx.iter().enumerate() {
            if i < kk {
                // d_i y_kk = d_{kk−1} y_i
                tables.push((b, a, k.face_table(n - 1, i), k.face_table(n - 1, kk - 1)));
            }
        }
    }
    let owned: Vec<(usize, usize, Vec<usize>, Vec<usize>)> =
        tables.iter().map(|&(b, a, f, g)| (b, a, f.to_vec(), g.to_vec())).collect();
    for (b, a, f, g) in &owned {
        eqs.push(sets::SetEq { left: *b, f, right: *a, g });
    }
    if n == 1 {
        return Vec::new();
    }
    sets::join(&sizes, &eqs).into_iter().map(|t| t.into_iter().map(|x| x as usize).collect()).collect()
}

/// A finite category; morphisms of each hom are numbered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    pub objects: Vertices,
    /// `hom[a·n + b]` = number of morphisms.
    pub hom: Vec<usize>,
    /// `comp[(a·n + b)·n + c][f · |hom(b,c)| + g]` is `g ∘ f`.
    pub comp: Vec<Vec<usize>>,
    pub id: Vec<usize>,
    /// True if the construction was cut off by a budget.
    pub truncated: bool,
}

impl FinCat {
    pub fn size(&self) -> usize {
        self.objects.len()
    }

    pub fn hom_size(&self, a: usize, b: usize) -> usize {
        self.hom[a * self.size() + b]
    }

    pub fn compose(&self, a: usize, b: usize, c: usize, f: usize, g: usize) -> usize {
        let n = self.size();
        self.comp[(a * n + b) * n + c][f * self.hom_size(b, c) + g]
    }

    pub fn check_axioms(&self) -> Result<()> {
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                for f in 0..self.hom_size(a, b) {
                    if self.compose(a, a, b, self.id[a], f) != f || self.compose(a, b, b, f, self.id[b]) != f {
                        return Err(Error::invalid(MODULE, "fincat", "unit law fails"));
                    }
                    for c in 0..n {
                        for g in 0..self.hom_size(b, c) {
                            let fg = self.compose(a, b, c, f, g);
                            for d in 0..n {
                                for h in 0..self.hom_size(c, d) {
                                    let l = self.compose(a, c, d, fg, h);
                                    let r = self.compose(a, b, d, f, self.compose(b, c, d, g, h));
                                    if l != r {
                                        return Err(Error::invalid(MODULE, "fincat", "associativity fails"));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Identity-on-objects isomorphism `self → other`, as per-hom bijections.
    pub fn find_isomorphism(&self, other: &FinCat) -> Option<Vec<Vec<usize>>> {
        let n = self.size();
        if other.size() != n || self.hom != other.hom {
            return None;
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let mut maps: Vec<Vec<usize>> = pairs.iter().map(|&(a, b)| vec![usize::MAX; self.hom_size(a, b)]).collect();
        for a in 0..n {
            maps[a * n + a][self.id[a]] = other.id[a];
        }
        let order: Vec<(usize, usize)> = pairs
            .iter()
            .flat_map(|&(a, b)| (0..self.hom_size(a, b)).map(move |f| (a * n + b, f)))
            .collect();
        fn consistent(s: &FinCat, o: &FinCat, maps: &[Vec<usize>]) -> bool {
            let n = s.size();
            for a in 0..n {
                for b in 0..n {
                    for f in 0..s.hom_size(a, b) {
                        let mf = maps[a * n + b][f];
                        if mf == usize::MAX {
                            continue;
                        }
                        for c in 0..n {
                            for g in 0..s.hom_size(b, c) {
                                let mg = maps[b * n + c][g];
                                if mg == usize::MAX {
                                    continue;
                                }
                                let h = s.compose(a, b, c, f, g);
                                let mh = maps[a * n + c][h];
                                if mh != usize::MAX && mh != o.compose(a, b, c, mf, mg) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
            true
        }
        fn rec(
            s: &FinCat,
            o: &FinCat,
            order: &[(usize, usize)],
            pos: usize,
            maps: &mut Vec<Vec<usize>>,
        ) -> bool {
            if pos == order.len() {
                return consistent(s, o, maps);
            }
            let (ab, f) = order[pos];
            if maps[ab][f] != usize::MAX {
                return rec(s, o, order, pos + 1, maps);
            }
            let size = maps[ab].len();
            for y in 0..size {
                if maps[ab].contains(&y) {
                    continue;
                }
                maps[ab][f] = y;
                if consistent(s, o, maps) && rec(s, o, order, pos + 1, maps) {
                    return true;
                }
            }
            maps[ab][f] = usize::MAX;
            false
        }
        if rec(self, other, &order, 0, &mut maps) {
            Some(maps)
        } else {
            None
        }
    }
}

/// The homotopy category `h(K)`: edge paths modulo 2-simplices, with paths of
/// at most `path_budget` non-degenerate edges (exact when no longer paths exist).
pub fn homotopy_category(k: &FinSimpSet, path_budget: usize) -> Result<FinCat> {
    if k.dim() < 2 {
        return Err(Error::truncation(MODULE, "homotopy_category", 2, k.dim()));
    }
    let nv = k.count(0);
    let edges: Vec<usize> = k.nondegenerate(1);
    let src = |e: usize| k.d(1, 1, e);
    let dst = |e: usize| k.d(1, 0, e);
    // all paths with at most path_budget edges
    let mut paths: Vec<(usize, usize, Vec<usize>)> = (0..nv).map(|v| (v, v, vec![])).collect();
    let mut frontier: Vec<usize> = (0..nv).collect();
    let mut truncated = false;
    for len in 1..=path_budget + 1 {
        let mut next = Vec::new();
        for &pi in &frontier {
            let (a, b, p) = paths[pi].clone();
            for &e in &edges {
                if src(e) == b {
                    if len > path_budget {
                        truncated = true;
                        continue;
                    }
                    let mut q = p.clone();
                    q.push(e);
                    paths.push((a, dst(e), q));
                    next.push(paths.len() - 1);
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    let index: HashMap<(usize, Vec<usize>), usize> =
        paths.iter().enumerate().map(|(i, p)| ((p.0, p.2.clone()), i)).collect();
    let word = |e: usize| -> Vec<usize> { if k.is_degenerate(1, e) { vec![] } else { vec![e] } };
    let mut ids = Vec::new();
    let mut rewrite = |pat: &[usize], rep: &[usize]| {
        for (i, (a, _, p)) in paths.iter().enumerate() {
            for s in 0..=p.len() {
                if p[s..].starts_with(pat) {
                    let mut q = p[..s].to_vec();
                    q.extend(rep);
                    q.extend(&p[s + pat.len()..]);
                    if let Some(&j) = index.get(&(*a, q)) {
                        ids.push((i, j));
                    }
                }
            }
        }
    };
    for x in 0..k.count(2) {
        let (e0, e1, e2) = (k.d(2, 0, x), k.d(2, 1, x), k.d(2, 2, x));
        let mut lhs = word(e2);
        lhs.extend(word(e0));
        let rhs = word(e1);
        if lhs != rhs {
            rewrite(&lhs, &rhs);
            rewrite(&rhs, &lhs);
        }
    }
    let (class, reps) = sets::quotient(paths.len(), ids);
    let n = nv;
    let mut hom_members: Vec<Vec<usize>> = vec![Vec::new(); n * n];
    let mut local = vec![usize::MAX; reps.len()];
    for (ci, &r) in reps.iter().enumerate() {
        let (a, b, _) = &paths[r];
        local[ci] = hom_members[a * n + b].len();
        hom_members[a * n + b].push(ci);
    }
    let hom: Vec<usize> = hom_members.iter().map(Vec::len).collect();
    let mut comp = vec![Vec::new(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut table = Vec::new();
                for &f in &hom_members[a * n + b] {
                    for &g in &hom_members[b * n + c] {
                        let mut p = paths[reps[f]].2.clone();
                        p.extend(&paths[reps[g]].2);
                        match index.get(&(a, p)) {
                            Some(&i) => table.push(local[class[i]]),
                            None => {
                                truncated = true;
                                table.push(0);
                            }
                        }
                    }
                }
                comp[(a * n + b) * n + c] = table;
            }
        }
    }
    let id = (0..n).map(|v| local[class[v]]).collect();
    Ok(FinCat { objects: k.vertices().clone(), hom, comp, id, truncated })
}

/// True if the non-degenerate edges contain no directed cycle (loops included).
pub fn edges_acyclic(k: &FinSimpSet) -> bool {
    let n = k.count(0);
    let mut adj = vec![BTreeSet::new(); n];
    for e in k.nondegenerate(1) {
        adj[k.d(1, 1, e)].insert(k.d(1, 0, e));
    }
    graph_acyclic(&adj)
}

pub fn graph_acyclic(adj: &[BTreeSet<usize>]) -> bool {
    let n = adj.len();
    let mut state = vec![0u8; n];
    fn visit(v: usize, adj: &[BTreeSet<usize>], state: &mut [u8]) -> bool {
        state[v] = 1;
        for &w in &adj[v] {
            if state[w] == 1 || (state[w] == 0 && !visit(w, adj, state)) {
                return false;
            }
        }
        state[v] = 2;
        true
    }
    (0..n).all(|v| state[v] != 0 || visit(v, adj, &mut state))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_counts() {
        let d3 = FinSimpSet::standard_simplex(3, 3).unwrap();
        assert_eq!(d3.count(2), 20);
        let h = FinSimpSet::horn(2, 1, 2).unwrap();
        assert_eq!(h.nondegenerate(1).len(), 2);
        assert!(h.nondegenerate(2).is_empty());
        let b = FinSimpSet::boundary(1, 1).unwrap();
        assert_eq!(b.count(0), 2);
        assert!(b.nondegenerate(1).is_empty());
    }

    #[test]
    fn poset_nerves() {
        let chain = FinSimpSet::nerve_of_poset(numbered(2), &[vec![true, true], vec![false, true]], 3).unwrap();
        let d1 = FinSimpSet::standard_simplex(1, 3).unwrap();
        assert!(find_isomorphism(&chain, &d1).is_some());
        // P_{Δ^3} ≅ [1] × [1]
        let t = Necklace::simplex(3);
        let p = necklace::poset_p(&t);
        assert_eq!(p.len(), 4);
        let leq: Vec<Vec<bool>> = p.iter().map(|&x| p.iter().map(|&y| x & !y == 0).collect()).collect();
        let np = FinSimpSet::nerve_of_poset(numbered(4), &leq, 3).unwrap();
        let sq: Vec<Vec<bool>> = (0..4).map(|x| (0..4).map(|y| x & !y == 0).collect()).collect();
        let square = FinSimpSet::nerve_of_poset(numbered(4), &sq, 3).unwrap();
        assert!(find_isomorphism(&np, &square).is_some());
    }

    #[test]
    fn restriction_of_simplex() {
        let d3 = Bipointed::new(FinSimpSet::standard_simplex(3, 3).unwrap(), 0, 3).unwrap();
        let cells = d3.restrict_to_nec(&Necklace::simplex(3)).unwrap();
        let nondeg: Vec<_> = cells.iter().filter(|c| !d3.base.is_degenerate(3, c[0])).collect();
        assert_eq!(nondeg.len(), 1);
    }

    #[test]
    fn horn_of_necklace() {
        let h = Bipointed::new(FinSimpSet::horn(3, 1, 3).unwrap(), 0, 3).unwrap();
        let t = Necklace::new(3, &[0, 1, 3]).unwrap();
        let cells = h.restrict_to_nec(&t).unwrap();
        // brute force: edge from 0 then a 2-simplex ending at 3, inside the horn
        let k = &h.base;
        let mut brute = 0;
        for e in 0..k.count(1) {
            for s in 0..k.count(2) {
                if k.first_vertex(1, e) == 0 && k.last_vertex(1, e) == k.first_vertex(2, s) && k.last_vertex(2, s) == 3 {
                    brute += 1;
                }
            }
        }
        assert_eq!(cells.len(), brute);
    }

    #[test]
    fn rigidification_of_simplices_is_a_cube() {
        for n in 1..=3 {
            let k = Bipointed::new(FinSimpSet::standard_simplex(n, n).unwrap(), 0, n).unwrap();
            let c = classical_rigidify(&k, 2, n).unwrap();
            let cube = cube_nerve(n, 2).unwrap();
            assert!(find_isomorphism(&c, &cube).is_some(), "n = {n}");
        }
    }

    #[test]
    fn rigidification_of_horn() {
        let k = Bipointed::new(FinSimpSet::horn(2, 1, 2).unwrap(), 0, 2).unwrap();
        let c = classical_rigidify(&k, 1, 2).unwrap();
        assert_eq!(c.count(0), 1);
    }

    #[test]
    fn quasi_category_search() {
        let d3 = FinSimpSet::standard_simplex(3, 3).unwrap();
        assert!(inner_horn_counterexample(&d3, 3).unwrap().is_none());
        let h = FinSimpSet::horn(2, 1, 2).unwrap();
        assert!(inner_horn_counterexample(&h, 2).unwrap().is_some());
    }

    #[test]
    fn homotopy_category_of_boundary() {
        let b = FinSimpSet::boundary(2, 2).unwrap();
        let h = homotopy_category(&b, 4).unwrap();
        assert!(!h.truncated);
        assert_eq!(h.hom_size(0, 2), 2);
        let d2 = FinSimpSet::standard_simplex(2, 2).unwrap();
        assert_eq!(homotopy_category(&d2, 4).unwrap().hom_size(0, 2), 1);
        h.check_axioms().unwrap();
    }

    #[test]
    fn hc_nerve_of_discrete_category() {
        // the poset category 0 → 1
        let c = SimpCat::discrete(
            numbered(2),
            &[1, 1, 0, 1],
            &[vec![0], vec![0], vec![], vec![0], vec![], vec![], vec![], vec![0]],
            &[0, 0],
            2,
        )
        .unwrap();
        let k = classical_hc_nerve(&c, 3).unwrap();
        let d1 = FinSimpSet::standard_simplex(1, 3).unwrap();
        assert!(find_isomorphism(&k, &d1).is_some());
    }
}
