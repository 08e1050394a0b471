//! Enriched categories and the functors relating them to templicial objects.

mod categorify;
mod homotopy;
mod neccat;
mod svcat;

pub use categorify::{categorify, categorify_colimit, Categorified};
pub use homotopy::{homotopy_cat, homotopy_cat_quasi, pi0};
pub use neccat::{necklace_to_templicial, round_trip, ConstNec, NecCat, TempResult, XNec};
pub use svcat::{hc_nerve, SVCat, SvNec};

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::cosmos::json as cj;
use crate::cosmos::{Cosmos, Elt, VMor, VObj};
use crate::error::{Error, Result};
use crate::quiver::{numbered, tensor_flat, vertices_from, Layout, Part, QMor, VQuiver, Vertices};
use crate::sset::FinCat;
use crate::templicial::{Report, Templicial};

const MODULE: &str = "functors";

fn tf(cosmos: Cosmos, vertices: &Vertices, parts: &[Part]) -> Result<QMor> {
    Ok(tensor_flat(cosmos, vertices, parts)?.2)
}

/// A category enriched in the base: a monoid in quivers over its objects.
#[derive(Clone, Debug)]
pub struct VCat {
    cosmos: Cosmos,
    objects: Vertices,
    hom: VQuiver,
    // Flat([hom, hom]) → hom
    comp: QMor,
    // I_S → hom
    unit: QMor,
}

impl VCat {
    pub fn new(hom: VQuiver, comp: QMor, unit: QMor) -> Result<Self> {
        let c = hom.cosmos();
        let v = hom.vertices().clone();
        let sq = Layout::new(c, &v, &[hom.clone(), hom.clone()])?;
        if &comp.src() != sq.quiver() || comp.dst() != hom {
            return Err(Error::mismatch(MODULE, "vcat", "composition has wrong endpoints"));
        }
        if unit.src() != VQuiver::unit(c, v.clone()) || unit.dst() != hom {
            return Err(Error::mismatch(MODULE, "vcat", "unit has wrong endpoints"));
        }
        Ok(VCat { cosmos: c, objects: v, hom, comp, unit })
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

    pub fn hom(&self) -> &VQuiver {
        &self.hom
    }

    pub fn comp(&self) -> &QMor {
        &self.comp
    }

    pub fn unit(&self) -> &QMor {
        &self.unit
    }

    pub(crate) fn comp_part(&self) -> Part {
        Part::new(vec![self.hom.clone(), self.hom.clone()], vec![self.hom.clone()], self.comp.clone())
    }

    pub(crate) fn unit_part(&self) -> Part {
        Part::new(vec![], vec![self.hom.clone()], self.unit.clone())
    }

    /// Associativity and both unit laws as exact equalities.
    pub fn check_axioms(&self) -> Result<Report> {
        let (c, v) = (self.cosmos, &self.objects);
        let h = &self.hom;
        let mut r = Report::default();
        let left = tf(c, v, &[self.comp_part(), Part::id(h)])?.then(&self.comp)?;
        let right = tf(c, v, &[Part::id(h), self.comp_part()])?.then(&self.comp)?;
        r.record("associativity", &[], &left, &right);
        let id = QMor::identity(h);
        let lu = tf(c, v, &[self.unit_part(), Part::id(h)])?.then(&self.comp)?;
        r.record("left-unit", &[], &lu, &id);
        let ru = tf(c, v, &[Part::id(h), self.unit_part()])?.then(&self.comp)?;
        r.record("right-unit", &[], &ru, &id);
        Ok(r)
    }

    /// The free enriched category on a finite category.
    pub fn free(cosmos: Cosmos, cat: &FinCat) -> Result<Self> {
        let n = cat.size();
        let v = cat.objects.clone();
        let hom = VQuiver::new(cosmos, v.clone(), |a, b| cosmos.free(cat.hom_size(a, b)));
        let sq = Layout::new(cosmos, &v, &[hom.clone(), hom.clone()])?;
        let comp = QMor::new(sq.quiver(), &hom, |a, c| {
            let cols = (0..sq.quiver().hom(a, c).len()).map(|k| {
                let (mids, idx) = sq.decode(a, c, k);
                Cosmos::basis_elt(cat.compose(a, mids[0], c, idx[0], idx[1]))
            });
            VMor::from_cols(sq.quiver().hom(a, c).clone(), hom.hom(a, c).clone(), cols)
        })?;
        let unit_q = VQuiver::unit(cosmos, v.clone());
        let unit = QMor::new(&unit_q, &hom, |a, b| {
            let cols: Vec<Elt> = if a == b { vec![Cosmos::basis_elt(cat.id[a])] } else { vec![] };
            VMor::from_cols(unit_q.hom(a, b).clone(), hom.hom(a, b).clone(), cols)
        })?;
        debug_assert_eq!(hom.size(), n);
        VCat::new(hom, comp, unit)
    }

    /// A one-object category on `V^dim` with the bilinear extension of
    /// `mult(i, j)` on basis vectors and unit element `one`.
    pub fn monoid(cosmos: Cosmos, dim: usize, mult: impl Fn(usize, usize) -> Elt, one: Elt) -> Result<Self> {
        let v = numbered(1);
        let obj = cosmos.free(dim);
        let hom = VQuiver::from_homs(cosmos, v.clone(), vec![obj.clone()])?;
        let sq = Layout::new(cosmos, &v, &[hom.clone(), hom.clone()])?;
        let cols: Vec<Elt> = (0..dim * dim).map(|k| mult(k / dim, k % dim)).collect();
        let m = cosmos.mor(sq.quiver().hom(0, 0).clone(), obj.clone(), cols)?;
        let comp = QMor::new(sq.quiver(), &hom, |_, _| m.clone())?;
        let unit_q = VQuiver::unit(cosmos, v);
        let u = cosmos.mor(cosmos.unit(), obj, vec![one])?;
        let unit = QMor::new(&unit_q, &hom, |_, _| u.clone())?;
        VCat::new(hom, comp, unit)
    }

    /// `𝓤(C)`: the underlying ordinary category of global elements.
    pub fn underlying(&self) -> Result<FinCat> {
        let c = self.cosmos;
        let n = self.size();
        let elts: Vec<Vec<Elt>> = self.hom.homs().iter().map(|h| c.u_elements(h)).collect::<Result<_>>()?;
        let index: Vec<HashMap<&Elt, usize>> =
            elts.iter().map(|es| es.iter().enumerate().map(|(i, e)| (e, i)).collect()).collect();
        let sq = Layout::new(c, &self.objects, &[self.hom.clone(), self.hom.clone()])?;
        let mut comp = vec![Vec::new(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    let mut table = Vec::with_capacity(elts[a * n + b].len() * elts[b * n + cc].len());
                    for x in &elts[a * n + b] {
                        for y in &elts[b * n + cc] {
                            let t = sq.pure_tensor(&[a, b, cc], &[x, y]);
                            let z = c.apply(self.comp.at(a, cc), &t);
                            table.push(index[a * n + cc][&z]);
                        }
                    }
                    comp[(a * n + b) * n + cc] = table;
                }
            }
        }
        let id = (0..n)
            .map(|a| index[a * n + a][&c.apply(self.unit.at(a, a), &Cosmos::basis_elt(0))])
            .collect();
        Ok(FinCat {
            objects: self.objects.clone(),
            hom: elts.iter().map(Vec::len).collect(),
            comp,
            id,
            truncated: false,
        })
    }

    /// An identity-on-objects isomorphism `self → other` of enriched
    /// categories, as one invertible morphism per hom object.
    pub fn find_isomorphism(&self, other: &VCat) -> Result<Option<Vec<VMor>>> {
        let c = self.cosmos;
        let n = self.size();
        if c != other.cosmos || n != other.size() {
            return Ok(None);
        }
        if self.hom.homs().iter().zip(other.hom.homs()).any(|(x, y)| !c.isomorphic(x, y)) {
            return Ok(None);
        }
        // candidate isomorphisms per hom, sending units to units
        let mut cands: Vec<Vec<VMor>> = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let (x, y) = (self.hom.hom(a, b), other.hom.hom(a, b));
                let points = c.u_elements(y)?;
                let mut out = Vec::new();
                let total = (points.len() as u128).checked_pow(x.len() as u32);
                if total.is_none_or(|t| t > crate::cosmos::ELEMENT_BUDGET) {
                    return Err(Error::budget(MODULE, "vcat_isomorphism", "too many candidate maps"));
                }
                let mut choice = vec![0usize; x.len()];
                loop {
                    let cols: Vec<Elt> = choice.iter().map(|&i| points[i].clone()).collect();
                    let f = VMor::from_cols(x.clone(), y.clone(), cols);
                    let unital = a != b
                        || c.apply(&f, &c.apply(self.unit.at(a, a), &Cosmos::basis_elt(0)))
                            == c.apply(other.unit.at(a, a), &Cosmos::basis_elt(0));
                    if unital && c.check_mor(&f).is_ok() && c.is_iso(&f) {
                        out.push(f);
                    }
                    let mut t = 0;
                    while t < choice.len() {
                        choice[t] += 1;
                        if choice[t] < points.len() {
                            break;
                        }
                        choice[t] = 0;
                        t += 1;
                    }
                    if t == choice.len() {
                        break;
                    }
                }
                cands.push(out);
            }
        }
        let sq = Layout::new(c, &self.objects, &[self.hom.clone(), self.hom.clone()])?;
        let sq_o = Layout::new(c, &other.objects, &[other.hom.clone(), other.hom.clone()])?;
        let basis = |o: &VObj| -> Vec<Elt> { (0..o.len()).map(Cosmos::basis_elt).collect() };
        // composition compatibility for all triples whose homs are chosen
        let consistent = |chosen: &[Option<usize>], cands: &[Vec<VMor>]| -> bool {
            for a in 0..n {
                for b in 0..n {
                    for d in 0..n {
                        let (Some(i), Some(j), Some(k)) = (chosen[a * n + b], chosen[b * n + d], chosen[a * n + d])
                        else {
                            continue;
                        };
                        let (f, g, h) = (&cands[a * n + b][i], &cands[b * n + d][j], &cands[a * n + d][k]);
                        for x in basis(self.hom.hom(a, b)) {
                            for y in basis(self.hom.hom(b, d)) {
                                let lhs = c.apply(h, &c.apply(self.comp.at(a, d), &sq.pure_tensor(&[a, b, d], &[&x, &y])));
                                let fx = c.apply(f, &x);
                                let gy = c.apply(g, &y);
                                let rhs = c.apply(other.comp.at(a, d), &sq_o.pure_tensor(&[a, b, d], &[&fx, &gy]));
                                if lhs != rhs {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
            true
        };
        fn rec(
            pos: usize,
            chosen: &mut Vec<Option<usize>>,
            cands: &[Vec<VMor>],
            ok: &dyn Fn(&[Option<usize>], &[Vec<VMor>]) -> bool,
        ) -> bool {
            if pos == chosen.len() {
                return true;
            }
            for i in 0..cands[pos].len() {
                chosen[pos] = Some(i);
                if ok(chosen, cands) && rec(pos + 1, chosen, cands, ok) {
                    return true;
                }
            }
            chosen[pos] = None;
            false
        }
        let mut chosen = vec![None; n * n];
        if rec(0, &mut chosen, &cands, &consistent) {
            Ok(Some(chosen.iter().enumerate().map(|(k, i)| cands[k][i.unwrap()].clone()).collect()))
        } else {
            Ok(None)
        }
    }

    pub fn isomorphic(&self, other: &VCat) -> Result<bool> {
        Ok(self.find_isomorphism(other)?.is_some())
    }

    pub fn to_json(&self) -> Value {
        let c = self.cosmos;
        let payload =
            |m: &QMor| -> Value { Value::Array(m.components().iter().map(|f| cj::mor_payload(c, f)).collect()) };
        json!({
            "instance": cj::instance_to_json(c),
            "objects": &self.objects[..],
            "hom": self.hom.homs().iter().map(|h| cj::obj_to_json(c, h)).collect::<Vec<_>>(),
            "comp": payload(&self.comp),
            "unit": payload(&self.unit),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let perr = |d: &str| Error::parse(MODULE, "vcat_from_json", d.to_string());
        let c = cj::instance_from_json(v.get("instance").ok_or_else(|| perr("missing instance"))?)?;
        let names: Vec<String> = v
            .get("objects")
            .and_then(Value::as_array)
            .ok_or_else(|| perr("missing objects"))?
            .iter()
            .map(|x| x.as_str().map(String::from).ok_or_else(|| perr("object names are strings")))
            .collect::<Result<_>>()?;
        let objects = vertices_from(names);
        let homs: Vec<VObj> = v
            .get("hom")
            .and_then(Value::as_array)
            .ok_or_else(|| perr("missing hom"))?
            .iter()
            .map(|h| cj::obj_from_json(c, h))
            .collect::<Result<_>>()?;
        let hom = VQuiver::from_homs(c, objects.clone(), homs)?;
        let sq = Layout::new(c, &objects, &[hom.clone(), hom.clone()])?;
        let unit_q = VQuiver::unit(c, objects.clone());
        let read = |key: &str, src: &VQuiver| -> Result<QMor> {
            let comps = v.get(key).and_then(Value::as_array).ok_or_else(|| perr("missing structure map"))?;
            if comps.len() != src.size() * src.size() {
                return Err(perr("map needs one component per pair"));
            }
            QMor::try_new(src, &hom, |a, b| {
                cj::mor_from_payload(c, src.hom(a, b), hom.hom(a, b), &comps[a * src.size() + b])
            })
        };
        VCat::new(hom.clone(), read("comp", sq.quiver())?, read("unit", &unit_q)?)
    }
}

/// The finite category of the poset `[n]`.
pub fn poset_category(n: usize) -> FinCat {
    poset_category_of(numbered(n + 1), |a, b| a <= b)
}

/// The finite category of a finite poset given by its order relation.
pub fn poset_category_of(objects: Vertices, leq: impl Fn(usize, usize) -> bool) -> FinCat {
    let s = objects.len();
    let hom: Vec<usize> = (0..s * s).map(|k| usize::from(leq(k / s, k % s))).collect();
    // a thin category: every composite that exists is the unique morphism
    let comp = (0..s * s * s)
        .map(|k| {
            let (a, b, c) = (k / (s * s), k / s % s, k % s);
            vec![0; hom[a * s + b] * hom[b * s + c]]
        })
        .collect();
    FinCat { objects, hom, comp, id: vec![0; s], truncated: false }
}

/// The cyclic group of order `n` as a one-object category.
pub fn cyclic_group_category(n: usize) -> FinCat {
    let comp = (0..n * n).map(|k| (k / n + k % n) % n).collect();
    FinCat { objects: numbered(1), hom: vec![n], comp: vec![comp], id: vec![0], truncated: false }
}

/// Small enriched categories used as fixtures: three posets, a group and a
/// square-zero extension of the unit.
pub fn vcat_corpus(cosmos: Cosmos) -> Result<Vec<(String, VCat)>> {
    let mut out = Vec::new();
    for n in 0..3 {
        out.push((format!("poset{n}"), VCat::free(cosmos, &poset_category(n))?));
    }
    out.push(("z2".into(), VCat::free(cosmos, &cyclic_group_category(2))?));
    let nil = match cosmos {
        // {1, x, 0} with x² = 0
        Cosmos::FinSet => VCat::monoid(
            cosmos,
            3,
            |i, j| Cosmos::basis_elt(if i == 0 { j } else if j == 0 { i } else { 2 }),
            Cosmos::basis_elt(0),
        )?,
        // the ring of dual numbers on the basis {1, x}
        _ => VCat::monoid(
            cosmos,
            2,
            |i, j| if i + j < 2 { Cosmos::basis_elt(i + j) } else { Vec::new() },
            Cosmos::basis_elt(0),
        )?,
    };
    out.push(("square-zero".into(), nil));
    Ok(out)
}

/// `N_V(C)` truncated at `dim`: `X_n = C^{⊗n}`, faces compose, degeneracies
/// insert units, comultiplications are the canonical regroupings.
pub fn nerve(cat: &VCat, dim: usize) -> Result<Templicial> {
    let (c, v) = (cat.cosmos, &cat.objects);
    let h = &cat.hom;
    let power = |n: usize| -> Vec<VQuiver> { vec![h.clone(); n] };
    let layouts: Vec<Layout> = (0..=dim).map(|n| Layout::new(c, v, &power(n))).collect::<Result<_>>()?;
    let xq = |n: usize| -> VQuiver {
        if n == 0 {
            VQuiver::unit(c, v.clone())
        } else {
            layouts[n].quiver().clone()
        }
    };
    let ids = |n: usize| -> Vec<Part> { (0..n).map(|_| Part::id(h)).collect() };
    let mut faces = vec![Vec::new(); dim + 1];
    for (n, row) in faces.iter_mut().enumerate().skip(2) {
        for j in 1..n {
            let mut parts = ids(j - 1);
            parts.push(cat.comp_part());
            parts.extend(ids(n - j - 1));
            row.push(tf(c, v, &parts)?);
        }
    }
    let mut degens = vec![Vec::new(); dim];
    for (n, row) in degens.iter_mut().enumerate() {
        for i in 0..=n {
            let mut parts = ids(i);
            parts.push(cat.unit_part());
            parts.extend(ids(n - i));
            let m = tf(c, v, &parts)?;
            // X_0 is I_S rather than the empty flat product; they coincide as quivers
            debug_assert!(n > 0 || m.src() == xq(0));
            row.push(m);
        }
    }
    let mut mu = HashMap::new();
    for k in 1..dim {
        for l in 1..=dim - k {
            let parts = [
                Part::new(power(k), vec![xq(k)], QMor::identity(&xq(k))),
                Part::new(power(l), vec![xq(l)], QMor::identity(&xq(l))),
            ];
            mu.insert((k, l), tf(c, v, &parts)?);
        }
    }
    Templicial::new(c, v.clone(), (1..=dim).map(xq).collect(), faces, degens, mu)
}

/// The enriched category of a strongly monoidal templicial object:
/// `m = d_1 ∘ μ_{1,1}^{-1}`, `u = s_0`.
pub fn vcat_from_templicial(x: &Templicial) -> Result<VCat> {
    if x.dim() < 2 {
        return Err(Error::truncation(MODULE, "vcat_from_templicial", 2, x.dim()));
    }
    let mu = x.mu(1, 1);
    if !mu.is_iso() {
        return Err(Error::invalid(MODULE, "vcat_from_templicial", "μ_{1,1} is not invertible"));
    }
    let comp = mu.inverse()?.then(x.d(2, 1))?;
    VCat::new(x.x(1).clone(), comp, x.s(0, 0).clone())
}

/// Whether every comultiplication `μ_{k,l}` is invertible.
pub fn is_strongly_monoidal(x: &Templicial) -> bool {
    (1..x.dim()).all(|k| (1..=x.dim() - k).all(|l| x.mu(k, l).is_iso()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::FinSimpSet;
    use crate::templicial::free_templicial;

    fn instances() -> Vec<Cosmos> {
        vec![Cosmos::FinSet, Cosmos::FinVect { p: 2 }, Cosmos::FgAb]
    }

    #[test]
    fn corpus_satisfies_axioms() {
        for c in instances() {
            for (name, cat) in vcat_corpus(c).unwrap() {
                assert!(cat.check_axioms().unwrap().is_ok(), "{name} over {c:?}");
            }
        }
    }

    #[test]
    fn nerves_validate_and_are_strong() {
        for c in instances() {
            for (name, cat) in vcat_corpus(c).unwrap() {
                let x = nerve(&cat, 3).unwrap();
                assert!(x.validate().unwrap().is_ok(), "{name} over {c:?}");
                assert!(is_strongly_monoidal(&x));
                let back = vcat_from_templicial(&x).unwrap();
                assert_eq!(back.comp(), cat.comp());
                assert_eq!(back.unit(), cat.unit());
            }
        }
    }

    #[test]
    fn nerve_of_free_poset_is_free_on_its_nerve() {
        let x = nerve(&VCat::free(Cosmos::FinSet, &poset_category(2)).unwrap(), 3).unwrap();
        let y = free_templicial(Cosmos::FinSet, &FinSimpSet::standard_simplex(2, 3).unwrap()).unwrap();
        for n in 0..=3 {
            for (a, b) in x.x(n).homs().iter().zip(y.x(n).homs()) {
                assert_eq!(a.len(), b.len());
            }
        }
        let (ux, _) = x.underlying_sset(3).unwrap();
        let (uy, _) = y.underlying_sset(3).unwrap();
        assert!(crate::sset::find_isomorphism(&ux, &uy).is_some());
    }

    #[test]
    fn point_nerve_is_unit() {
        let pt = VCat::free(Cosmos::FinVect { p: 2 }, &poset_category(0)).unwrap();
        let x = nerve(&pt, 2).unwrap();
        for n in 0..=2 {
            assert_eq!(x.x(n).hom(0, 0).len(), 1);
        }
    }

    #[test]
    fn json_round_trip() {
        for c in instances() {
            for (_, cat) in vcat_corpus(c).unwrap() {
                let back = VCat::from_json(&cat.to_json()).unwrap();
                assert_eq!(back.to_json(), cat.to_json());
            }
        }
    }

    #[test]
    fn underlying_of_square_zero() {
        let cat = &vcat_corpus(Cosmos::FinVect { p: 2 }).unwrap()[4].1;
        let u = cat.underlying().unwrap();
        assert_eq!(u.hom, vec![4]);
        u.check_axioms().unwrap();
    }
}
