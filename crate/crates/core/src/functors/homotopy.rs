//! Homotopy categories: `π_0` of simplicial homs, `h_V = π_0 ∘ 𝔠`, and the
//! direct construction for quasi-categories.

use super::categorify::categorify;
use super::{SVCat, VCat, MODULE};
use crate::cosmos::{Coeq, Cosmos, Elt, VMor};
use crate::error::{Error, Result};
use crate::quiver::{Layout, QMor, VQuiver, Vertices};
use crate::templicial::Templicial;

type ComposeFn<'a> = dyn Fn(usize, usize, usize, &Elt, &Elt) -> Result<Option<Elt>> + 'a;

// Builds the enriched category from per-hom coequalizers, composing lifts.
fn quotient_category(cosmos: Cosmos, objects: &Vertices, coeqs: &[Coeq], unit: impl Fn(usize) -> Elt, compose: &ComposeFn<'_>) -> Result<VCat> {
    let s = objects.len();
    let hom = VQuiver::from_homs(cosmos, objects.clone(), coeqs.iter().map(|q| q.obj.clone()).collect())?;
    let lay = Layout::new(cosmos, objects, &[hom.clone(), hom.clone()])?;
    let mut maps = Vec::with_capacity(s * s);
    for a in 0..s {
        for c in 0..s {
            let mut cols = Vec::new();
            for k in 0..lay.quiver().hom(a, c).len() {
                let (mids, idx) = lay.decode(a, c, k);
                let b = mids[0];
                let z = compose(a, b, c, &coeqs[a * s + b].lifts[idx[0]], &coeqs[b * s + c].lifts[idx[1]])?
                    .ok_or_else(|| Error::budget(MODULE, "homotopy", "composite of representatives leaves the budget"))?;
                cols.push(cosmos.apply(&coeqs[a * s + c].q, &z));
            }
            maps.push(VMor::from_cols(lay.quiver().hom(a, c).clone(), hom.hom(a, c).clone(), cols));
        }
    }
    let mut it = maps.into_iter();
    let comp = QMor::new(lay.quiver(), &hom, |_, _| it.next().unwrap())?;
    let i_s = VQuiver::unit(cosmos, objects.clone());
    let u = QMor::new(&i_s, &hom, |a, b| {
        let cols = if a == b { vec![cosmos.apply(&coeqs[a * s + a].q, &unit(a))] } else { Vec::new() };
        VMor::from_cols(i_s.hom(a, b).clone(), hom.hom(a, b).clone(), cols)
    })?;
    VCat::new(hom, comp, u)
}

/// `π_0 C`: each hom is the coequalizer of `d_0, d_1 : H_1 → H_0`.
pub fn pi0(sv: &SVCat) -> Result<VCat> {
    if sv.dim() < 1 {
        return Err(Error::truncation(MODULE, "pi0", 1, sv.dim()));
    }
    let c = sv.cosmos();
    let s = sv.size();
    let mut coeqs = Vec::with_capacity(s * s);
    for a in 0..s {
        for b in 0..s {
            coeqs.push(c.reflexive_coequalizer(sv.d(1, 0).at(a, b), sv.d(1, 1).at(a, b), sv.s(0, 0).at(a, b))?);
        }
    }
    let h0 = sv.level(0);
    let pair = Layout::new(c, sv.objects(), &[h0.clone(), h0.clone()])?;
    let compose = |a: usize, b: usize, cc: usize, x: &Elt, y: &Elt| -> Result<Option<Elt>> {
        let t = pair.pure_tensor(&[a, b, cc], &[x, y]);
        Ok(Some(c.apply(sv.comp(0).at(a, cc), &t)))
    };
    quotient_category(c, sv.objects(), &coeqs, |a| c.apply(sv.unit(0).at(a, a), &Cosmos::basis_elt(0)), &compose)
}

/// `h_V X = π_0 𝔠 X`, with whether necklaces were cut off by `max_p`.
pub fn homotopy_cat(x: &Templicial, max_p: Option<usize>) -> Result<(VCat, bool)> {
    let cx = categorify(x, 1, max_p)?;
    let c = x.cosmos();
    let s = x.size();
    let mut coeqs = Vec::with_capacity(s * s);
    for a in 0..s {
        for b in 0..s {
            coeqs.push(c.reflexive_coequalizer(cx.d(1, 0).at(a, b), cx.d(1, 1).at(a, b), cx.s(0, 0).at(a, b))?);
        }
    }
    let compose = |a: usize, b: usize, cc: usize, p: &Elt, q: &Elt| cx.compose_elt(0, a, b, cc, p, q);
    let cat = quotient_category(c, x.vertices(), &coeqs, |a| c.apply(cx.unit(0).at(a, a), &Cosmos::basis_elt(0)), &compose)?;
    Ok((cat, cx.truncated()))
}

/// The homotopy category of a quasi-category from left homotopies: `f ~ g`
/// when some `α ∈ X_2` has `μ_{1,1}(α) = f ⊗ s_0(1)` and `d_1 α = g`.
pub fn homotopy_cat_quasi(x: &Templicial) -> Result<VCat> {
    if x.dim() < 2 {
        return Err(Error::truncation(MODULE, "homotopy_cat_quasi", 2, x.dim()));
    }
    let c = x.cosmos();
    let s = x.size();
    let lay = x.layout(&[1, 1])?;
    let deg_unit = |b: usize| c.apply(x.s(0, 0).at(b, b), &x.unit_elt());
    let mut coeqs = Vec::with_capacity(s * s);
    for a in 0..s {
        for b in 0..s {
            let x1 = x.x(1).hom(a, b);
            let e = deg_unit(b);
            let cols: Vec<Elt> = (0..x1.len()).map(|k| lay.pure_tensor(&[a, b, b], &[&Cosmos::basis_elt(k), &e])).collect();
            let f = VMor::from_cols(x1.clone(), lay.quiver().hom(a, b).clone(), cols);
            let hl = c.pullback(&f, x.mu(1, 1).at(a, b))?;
            let other = c.compose(&hl.proj[1], x.d(2, 1).at(a, b))?;
            coeqs.push(c.coequalizer(x1, &[(hl.proj[0].clone(), other)])?);
        }
    }
    let compose = |a: usize, b: usize, cc: usize, p: &Elt, q: &Elt| -> Result<Option<Elt>> {
        let t = lay.pure_tensor(&[a, b, cc], &[p, q]);
        let alpha = c
            .preimage(x.mu(1, 1).at(a, cc), &t)
            .ok_or_else(|| Error::invalid(MODULE, "homotopy_cat_quasi", format!("no 2-simplex fills a composable pair at ({a},{b},{cc})")))?;
        Ok(Some(c.apply(x.d(2, 1).at(a, cc), &alpha)))
    };
    quotient_category(c, x.vertices(), &coeqs, deg_unit, &compose)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{cyclic_group_category, nerve, poset_category, vcat_corpus};
    use crate::sset::FinSimpSet;
    use crate::templicial::free_templicial;

    #[test]
    fn nerve_recovers_category() {
        for c in [Cosmos::FinSet, Cosmos::finvect(2).unwrap()] {
            for (name, cat) in vcat_corpus(c).unwrap() {
                let x = nerve(&cat, 2).unwrap();
                let quasi = homotopy_cat_quasi(&x).unwrap();
                assert!(quasi.isomorphic(&cat).unwrap(), "{name} over {c:?}");
                let (h, _) = homotopy_cat(&x, Some(3)).unwrap();
                assert!(h.isomorphic(&cat).unwrap(), "{name} over {c:?} via 𝔠");
            }
        }
    }

    #[test]
    fn pi0_of_constant() {
        let cat = VCat::free(Cosmos::FinSet, &poset_category(3)).unwrap();
        let sv = SVCat::constant(&cat, 1).unwrap();
        assert!(pi0(&sv).unwrap().isomorphic(&cat).unwrap());
    }

    #[test]
    fn boundary_over_f2() {
        let k = FinSimpSet::boundary(2, 2).unwrap();
        let x = free_templicial(Cosmos::finvect(2).unwrap(), &k).unwrap();
        let (h, truncated) = homotopy_cat(&x, None).unwrap();
        assert!(!truncated);
        assert_eq!(h.hom().hom(0, 2).len(), 2);
    }

    #[test]
    fn group_via_budget() {
        let z2 = VCat::free(Cosmos::FinSet, &cyclic_group_category(2)).unwrap();
        let x = nerve(&z2, 2).unwrap();
        let (h, truncated) = homotopy_cat(&x, Some(3)).unwrap();
        assert!(truncated);
        assert!(h.isomorphic(&z2).unwrap());
    }
}
