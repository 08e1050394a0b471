//! Necklace categories and the construction `(−)^temp`.

use std::collections::HashMap;

use super::{tf, VCat, MODULE};
use crate::cosmos::{Cosmos, LimEq, Limit, VMor};
use crate::error::{Error, Result};
use crate::necklace::{self, NeckMap, Necklace};
use crate::quiver::{Layout, Part, QMor, VQuiver, Vertices};
use crate::simplexcat::{self, OrdMap};
use crate::templicial::{Templicial, TemplicialMor};

/// A category enriched in functors `Nec^op → V`, presented by its hom
/// functors and the pairing components `C_T ⊗ C_U → C_{T∨U}`.
pub trait NecCat {
    fn cosmos(&self) -> Cosmos;
    fn vertices(&self) -> &Vertices;
    /// `C_T` as a quiver over the objects.
    fn hom(&self, t: &Necklace) -> Result<VQuiver>;
    /// `C(f) : C_U → C_T` for `f : T → U`.
    fn map(&self, f: &NeckMap) -> Result<QMor>;
    /// `Flat([C_T, C_U]) → C_{T∨U}`.
    fn compose(&self, t: &Necklace, u: &Necklace) -> Result<QMor>;
    /// `I_S → C_{{0}}`.
    fn unit(&self) -> Result<QMor>;
}

/// `X^nec`: a templicial object evaluated on necklaces.
pub struct XNec<'a>(pub &'a Templicial);

impl NecCat for XNec<'_> {
    fn cosmos(&self) -> Cosmos {
        self.0.cosmos()
    }

    fn vertices(&self) -> &Vertices {
        self.0.vertices()
    }

    fn hom(&self, t: &Necklace) -> Result<VQuiver> {
        Ok(self.0.eval_necklace(t)?.quiver().clone())
    }

    fn map(&self, f: &NeckMap) -> Result<QMor> {
        self.0.eval_neckmap(f)
    }

    fn compose(&self, t: &Necklace, u: &Necklace) -> Result<QMor> {
        self.0.necklace_composition(t, u)
    }

    fn unit(&self) -> Result<QMor> {
        Ok(QMor::identity(self.0.x(0)))
    }
}

/// The necklace category constant on an enriched category.
pub struct ConstNec<'a>(pub &'a VCat);

impl NecCat for ConstNec<'_> {
    fn cosmos(&self) -> Cosmos {
        self.0.cosmos()
    }

    fn vertices(&self) -> &Vertices {
        self.0.objects()
    }

    fn hom(&self, _: &Necklace) -> Result<VQuiver> {
        Ok(self.0.hom().clone())
    }

    fn map(&self, _: &NeckMap) -> Result<QMor> {
        Ok(QMor::identity(self.0.hom()))
    }

    fn compose(&self, _: &Necklace, _: &Necklace) -> Result<QMor> {
        Ok(self.0.comp().clone())
    }

    fn unit(&self) -> Result<QMor> {
        Ok(self.0.unit().clone())
    }
}

/// The output of `(−)^temp`: the templicial object, the maps
/// `p_n : C^temp_n → C_{Δ^n}`, and the limits presenting each level `n ≥ 2`.
pub struct TempResult {
    pub x: Templicial,
    pub p: Vec<QMor>,
    limits: Vec<Vec<Limit>>,
}

struct Builder<'a> {
    c: &'a dyn NecCat,
    cosmos: Cosmos,
    vertices: Vertices,
    x: Vec<VQuiver>,
    p: Vec<QMor>,
    mu: HashMap<(usize, usize), QMor>,
    faces: Vec<Vec<QMor>>,
    degens: Vec<Vec<QMor>>,
    limits: Vec<Vec<Limit>>,
}

impl Builder<'_> {
    fn tensor(&self, parts: &[Part]) -> Result<QMor> {
        tf(self.cosmos, &self.vertices, parts)
    }

    /// `μ_{k,l}` including the unitors at `k = 0` or `l = 0`.
    fn mu_any(&self, k: usize, l: usize) -> Result<QMor> {
        if k > 0 && l > 0 {
            return Ok(self.mu[&(k, l)].clone());
        }
        let x0 = &self.x[0];
        let unit_part = Part::new(vec![], vec![x0.clone()], QMor::identity(x0));
        let parts = if k == 0 {
            [unit_part, Part::id(&self.x[l])]
        } else {
            [Part::id(&self.x[k]), unit_part]
        };
        self.tensor(&parts)
    }

    fn interval(&self, f: &OrdMap) -> Result<QMor> {
        let (epi, mono) = f.epi_mono();
        let mut cur = QMor::identity(&self.x[f.cod()]);
        let mut n = f.cod();
        for &g in simplexcat::injection_gaps(&mono).iter().rev() {
            cur = cur.then(&self.faces[n][g - 1])?;
            n -= 1;
        }
        for &i in simplexcat::surjection_word(&epi).iter().rev() {
            cur = cur.then(&self.degens[n][i])?;
            n += 1;
        }
        Ok(cur)
    }

    /// The legs `X_n → factors of C^temp_m` determining `C^temp(f)` for an
    /// interval map `f : [m] → [n]`.
    fn legs(&self, f: &OrdMap) -> Result<Vec<QMor>> {
        let (m, n) = (f.dom(), f.cod());
        let fhat = NeckMap::new(Necklace::simplex(m), Necklace::simplex(n), f.clone())?;
        let mut legs = vec![self.p[n].then(&self.c.map(&fhat)?)?];
        for k in 1..m {
            let fk = f.apply(k);
            let f1 = OrdMap::new(fk, (0..=k).map(|t| f.apply(t)).collect())?;
            let f2 = OrdMap::new(n - fk, (k..=m).map(|t| f.apply(t) - fk).collect())?;
            let split = self.tensor(&[Part::single(&self.interval(&f1)?), Part::single(&self.interval(&f2)?)])?;
            legs.push(self.mu_any(fk, n - fk)?.then(&split)?);
        }
        Ok(legs)
    }

    /// Mediates a cone with legs out of `src` into level `m`.
    fn mediate(&self, m: usize, src: &VQuiver, legs: &[QMor]) -> Result<QMor> {
        if m == 1 {
            return Ok(legs[0].clone());
        }
        let s = self.vertices.len();
        QMor::try_new(src, &self.x[m], |a, b| {
            let l: Vec<VMor> = legs.iter().map(|q| q.at(a, b).clone()).collect();
            self.limits[m][a * s + b].mediate(&l)
        })
    }

    fn build_level(&mut self, n: usize) -> Result<()> {
        let cosmos = self.cosmos;
        let s = self.vertices.len();
        let cn = self.c.hom(&Necklace::simplex(n))?;
        if n == 1 {
            self.p.push(QMor::identity(&cn));
            self.x.push(cn);
            self.limits.push(Vec::new());
        } else {
            // factor 0 is C_{Δ^n}; factor k is (X_k ⊗ X_{n−k})
            let pieces: Vec<Layout> = (1..n)
                .map(|k| Layout::new(cosmos, &self.vertices, &[self.x[k].clone(), self.x[n - k].clone()]))
                .collect::<Result<_>>()?;
            let mut eq_maps: Vec<(usize, QMor, usize, QMor)> = Vec::new();
            for k in 1..n {
                let l = n - k;
                let t = Necklace::simplex(k);
                let u = Necklace::simplex(l);
                let pp = self.tensor(&[Part::single(&self.p[k]), Part::single(&self.p[l])])?;
                let lhs = pp.then(&self.c.compose(&t, &u)?)?;
                let rhs = self.c.map(&necklace::nu(k, l)?)?;
                eq_maps.push((k, lhs, 0, rhs));
            }
            for k in 1..n {
                for l in k + 1..n {
                    let lhs = self.tensor(&[
                        Part::id(&self.x[k]),
                        Part::new(
                            vec![self.x[n - k].clone()],
                            vec![self.x[l - k].clone(), self.x[n - l].clone()],
                            self.mu_any(l - k, n - l)?,
                        ),
                    ])?;
                    let rhs = self.tensor(&[
                        Part::new(
                            vec![self.x[l].clone()],
                            vec![self.x[k].clone(), self.x[l - k].clone()],
                            self.mu_any(k, l - k)?,
                        ),
                        Part::id(&self.x[n - l]),
                    ])?;
                    eq_maps.push((k, lhs, l, rhs));
                }
            }
            let mut limits = Vec::with_capacity(s * s);
            for a in 0..s {
                for b in 0..s {
                    let mut factors = vec![cn.hom(a, b).clone()];
                    factors.extend(pieces.iter().map(|p| p.quiver().hom(a, b).clone()));
                    let eqs: Vec<LimEq> = eq_maps
                        .iter()
                        .map(|(l, f, r, g)| LimEq { left: *l, f: f.at(a, b).clone(), right: *r, g: g.at(a, b).clone() })
                        .collect();
                    limits.push(cosmos.limit(&factors, &eqs)?);
                }
            }
            let xn = VQuiver::from_homs(cosmos, self.vertices.clone(), limits.iter().map(|l| l.obj.clone()).collect())?;
            self.p.push(QMor::new(&xn, &cn, |a, b| limits[a * s + b].proj[0].clone())?);
            for (k, piece) in pieces.iter().enumerate() {
                let m = QMor::new(&xn, piece.quiver(), |a, b| limits[a * s + b].proj[k + 1].clone())?;
                self.mu.insert((k + 1, n - k - 1), m);
            }
            self.x.push(xn);
            self.limits.push(limits);
        }
        // degeneracies into level n, then inner faces out of it
        let mut row = Vec::with_capacity(n);
        for i in 0..n {
            let f = OrdMap::codegeneracy(n - 1, i)?;
            let legs = self.legs(&f)?;
            row.push(self.mediate(n, &self.x[n - 1], &legs)?);
        }
        self.degens.push(row);
        let mut row = Vec::with_capacity(n.saturating_sub(1));
        for j in 1..n {
            let f = OrdMap::coface(n, j)?;
            let legs = self.legs(&f)?;
            row.push(self.mediate(n - 1, &self.x[n], &legs)?);
        }
        self.faces.push(row);
        Ok(())
    }
}

/// `C^temp` truncated at `dim`.
pub fn necklace_to_templicial(c: &dyn NecCat, dim: usize) -> Result<TempResult> {
    let cosmos = c.cosmos();
    let vertices = c.vertices().clone();
    let x0 = VQuiver::unit(cosmos, vertices.clone());
    let p0 = c.unit()?;
    if p0.src() != x0 {
        return Err(Error::mismatch(MODULE, "temp", "unit does not start at I_S"));
    }
    let mut b = Builder {
        c,
        cosmos,
        vertices: vertices.clone(),
        x: vec![x0],
        p: vec![p0],
        mu: HashMap::new(),
        faces: vec![Vec::new()],
        degens: Vec::new(),
        limits: vec![Vec::new()],
    };
    for n in 1..=dim {
        b.build_level(n)?;
    }
    b.degens.truncate(dim);
    let x = Templicial::new(cosmos, vertices, b.x[1..].to_vec(), b.faces, b.degens, b.mu)?;
    Ok(TempResult { x, p: b.p, limits: b.limits })
}

impl TempResult {
    /// The templicial morphism `Y → C^temp` determined by maps
    /// `h_n : Y_n → C_{Δ^n}`; fails if the maps do not form cones.
    pub fn mediate_from(&self, y: &Templicial, h: &[QMor]) -> Result<TemplicialMor> {
        let dim = self.x.dim();
        if y.dim() < dim || h.len() <= dim {
            return Err(Error::truncation(MODULE, "temp_mediate", dim, y.dim().min(h.len().saturating_sub(1))));
        }
        let s = y.size();
        let mut alpha: Vec<QMor> = vec![QMor::identity(y.x(0))];
        for n in 1..=dim {
            if n == 1 {
                alpha.push(h[1].clone());
                continue;
            }
            let mut legs = vec![h[n].clone()];
            for k in 1..n {
                let t = tf(y.cosmos(), y.vertices(), &[Part::single(&alpha[k]), Part::single(&alpha[n - k])])?;
                legs.push(y.mu(k, n - k).then(&t)?);
            }
            alpha.push(QMor::try_new(y.x(n), self.x.x(n), |a, b| {
                let l: Vec<VMor> = legs.iter().map(|q| q.at(a, b).clone()).collect();
                self.limits[n][a * s + b].mediate(&l)
            })?);
        }
        Ok(TemplicialMor { components: alpha })
    }
}

/// `(X^nec)^temp` with the comparison `p : (X^nec)^temp → X`; the round trip
/// holds when every `p_n` is invertible and `p` is a templicial morphism.
pub fn round_trip(x: &Templicial) -> Result<(TempResult, crate::templicial::Report, bool)> {
    let t = necklace_to_templicial(&XNec(x), x.dim())?;
    let mor = TemplicialMor { components: t.p.clone() };
    let report = mor.check(&t.x, x)?;
    let iso = mor.is_iso();
    Ok((t, report, iso))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{is_strongly_monoidal, nerve, vcat_corpus};
    use crate::sset::FinSimpSet;
    use crate::templicial::{fgab_doubling, free_templicial};

    #[test]
    fn round_trip_on_free_objects() {
        for c in [Cosmos::FinSet, Cosmos::FinVect { p: 2 }] {
            for k in [FinSimpSet::standard_simplex(2, 3).unwrap(), FinSimpSet::boundary(2, 3).unwrap()] {
                let x = free_templicial(c, &k).unwrap();
                let (t, report, iso) = round_trip(&x).unwrap();
                assert!(t.x.validate().unwrap().is_ok());
                assert!(report.is_ok(), "{:?}", report.violations);
                assert!(iso);
            }
        }
    }

    #[test]
    fn round_trip_on_doubling() {
        let x = fgab_doubling(3, 2).unwrap();
        let (_, report, iso) = round_trip(&x).unwrap();
        assert!(report.is_ok() && iso);
    }

    #[test]
    fn level_one_is_the_simplex_hom() {
        let x = free_templicial(Cosmos::FinSet, &FinSimpSet::standard_simplex(2, 2).unwrap()).unwrap();
        let t = necklace_to_templicial(&XNec(&x), 2).unwrap();
        assert_eq!(t.x.x(1), x.x(1));
    }

    #[test]
    fn constant_necklace_category_gives_the_nerve() {
        for c in [Cosmos::FinSet, Cosmos::FinVect { p: 2 }] {
            for (name, cat) in vcat_corpus(c).unwrap() {
                let n = nerve(&cat, 3).unwrap();
                let t = necklace_to_templicial(&ConstNec(&cat), 3).unwrap();
                assert!(t.x.validate().unwrap().is_ok(), "{name}");
                assert!(is_strongly_monoidal(&t.x));
                // h_n = iterated composition C^{⊗n} → C
                let mut h = vec![cat.unit().clone(), QMor::identity(cat.hom())];
                for k in 2..=3 {
                    let parts = [Part::new(vec![cat.hom().clone(); k - 1], vec![cat.hom().clone()], h[k - 1].clone()), Part::id(cat.hom())];
                    let m = tf(c, cat.objects(), &parts).unwrap().then(cat.comp()).unwrap();
                    h.push(m);
                }
                let alpha = t.mediate_from(&n, &h).unwrap();
                assert!(alpha.check(&n, &t.x).unwrap().is_ok(), "{name}");
                assert!(alpha.is_iso(), "{name}");
            }
        }
    }
}
