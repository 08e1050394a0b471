//! Inner-horn lifting for templicial objects.
//!
//! A horn `Λ^n_j → X` over `(a,b)` is a U-point of the limit `L` assembled from
//! the comultiplications `x_k = μ_{k,n−k}` and the inner faces `y_i = d_i`,
//! `i ≠ j`. Lifting means the comparison `X_n(a,b) → L` is U-surjective.

use serde_json::{json, Value};

use crate::cosmos::{LimEq, Limit, VMor, VObj};
use crate::error::{Error, Result};
use crate::quiver::{tensor_flat, Part, QMor};
use crate::templicial::Templicial;

const MODULE: &str = "quasicheck";

/// An inner horn `Λ^n_j` over the pair of vertices `(a,b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HornProblem {
    pub a: usize,
    pub b: usize,
    pub n: usize,
    pub j: usize,
}

impl HornProblem {
    pub fn new(x: &Templicial, a: usize, b: usize, n: usize, j: usize) -> Result<Self> {
        if a >= x.size() || b >= x.size() {
            return Err(Error::invalid(MODULE, "horn", "vertex out of range"));
        }
        if n > x.dim() {
            return Err(Error::truncation(MODULE, "horn", n, x.dim()));
        }
        if j == 0 || j >= n {
            return Err(Error::invalid(MODULE, "horn", format!("outer or invalid horn Λ^{n}_{j}; only 0 < j < n is supported")));
        }
        Ok(HornProblem { a, b, n, j })
    }

    pub fn to_json(&self) -> Value {
        json!({"a": self.a, "b": self.b, "n": self.n, "j": self.j})
    }
}

/// The horn object `L` and the comparison map `X_n(a,b) → L`.
#[derive(Clone, Debug)]
pub struct HornObject {
    pub limit: Limit,
    pub cmp: VMor,
    /// Index of each `x_k` (k = 1..n−1) and each `y_i` among the limit factors.
    pub x_index: Vec<usize>,
    pub y_index: Vec<(usize, usize)>,
}

impl HornObject {
    pub fn obj(&self) -> &VObj {
        &self.limit.obj
    }
}

fn flat(x: &Templicial, parts: &[Part]) -> Result<QMor> {
    Ok(tensor_flat(x.cosmos(), x.vertices(), parts)?.2)
}

pub fn horn_object(x: &Templicial, hp: &HornProblem) -> Result<HornObject> {
    let HornProblem { a, b, n, j } = *hp;
    let c = x.cosmos();
    let xq = |k: usize| x.x(k).clone();
    let mut factors: Vec<VObj> = Vec::new();
    let mut legs: Vec<VMor> = Vec::new();
    let mut x_index = vec![usize::MAX; n];
    for (k, slot) in x_index.iter_mut().enumerate().skip(1) {
        *slot = factors.len();
        factors.push(x.mu(k, n - k).dst_hom(a, b).clone());
        legs.push(x.mu(k, n - k).at(a, b).clone());
    }
    let mut y_index = Vec::new();
    for i in (1..n).filter(|&i| i != j) {
        y_index.push((i, factors.len()));
        factors.push(x.x(n - 1).hom(a, b).clone());
        legs.push(x.d(n, i).at(a, b).clone());
    }
    let mut eqs = Vec::new();
    // face compatibilities d_{i'−1} y_i = d_i y_{i'}
    for &(i, fi) in &y_index {
        for &(i2, fi2) in &y_index {
            if i < i2 {
                eqs.push(LimEq { left: fi, f: x.d(n - 1, i2 - 1).at(a, b).clone(), right: fi2, g: x.d(n - 1, i).at(a, b).clone() });
            }
        }
    }
    // coassociativity between x_k and x_l
    for k in 1..n {
        for l in k + 1..n {
            let left = flat(x, &[Part::new(vec![xq(l)], vec![xq(k), xq(l - k)], x.mu(k, l - k).clone()), Part::id(&xq(n - l))])?;
            let right = flat(x, &[Part::id(&xq(k)), Part::new(vec![xq(n - k)], vec![xq(l - k), xq(n - l)], x.mu(l - k, n - l).clone())])?;
            eqs.push(LimEq { left: x_index[l], f: left.at(a, b).clone(), right: x_index[k], g: right.at(a, b).clone() });
        }
    }
    // μ_{k,n−1−k}(y_i) against faces of x_{k+1} or x_k
    for &(i, fi) in &y_index {
        for k in 1..n - 1 {
            let mu = x.mu(k, n - 1 - k).at(a, b).clone();
            if i <= k {
                let face = flat(x, &[Part::single(x.d(k + 1, i)), Part::id(&xq(n - k - 1))])?;
                eqs.push(LimEq { left: fi, f: mu, right: x_index[k + 1], g: face.at(a, b).clone() });
            } else {
                let face = flat(x, &[Part::id(&xq(k)), Part::single(x.d(n - k, i - k))])?;
                eqs.push(LimEq { left: fi, f: mu, right: x_index[k], g: face.at(a, b).clone() });
            }
        }
    }
    let limit = c.limit(&factors, &eqs)?;
    let cmp = limit.mediate(&legs)?;
    Ok(HornObject { limit, cmp, x_index, y_index })
}

/// Whether every horn `Λ^n_j → X` over `(a,b)` has a filler.
pub fn lifts(x: &Templicial, hp: &HornProblem) -> Result<bool> {
    let h = horn_object(x, hp)?;
    Ok(x.cosmos().u_surjective(&h.cmp))
}

/// Whether every such horn has exactly one filler.
pub fn lifts_uniquely(x: &Templicial, hp: &HornProblem) -> Result<bool> {
    let h = horn_object(x, hp)?;
    let c = x.cosmos();
    Ok(c.u_surjective(&h.cmp) && c.u_injective(&h.cmp))
}

/// Outcome of checking all inner horns up to a dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub checked: usize,
    pub counterexample: Option<HornProblem>,
}

impl Verdict {
    pub fn to_json(&self, key: &str) -> Value {
        json!({
            key: self.holds,
            "checked": self.checked,
            "witness": self.counterexample.map(|h| h.to_json()),
        })
    }
}

fn check_all(x: &Templicial, n_max: usize, unique: bool) -> Result<Verdict> {
    if n_max > x.dim() {
        return Err(Error::truncation(MODULE, "check", n_max, x.dim()));
    }
    let caps = x.cosmos().capabilities();
    if !caps.u_faithful {
        return Err(Error::capability(MODULE, "check", "lifting is decided on underlying sets and needs a faithful U"));
    }
    let mut checked = 0;
    for n in 2..=n_max {
        for j in 1..n {
            for a in 0..x.size() {
                for b in 0..x.size() {
                    let hp = HornProblem::new(x, a, b, n, j)?;
                    checked += 1;
                    let ok = if unique { lifts_uniquely(x, &hp)? } else { lifts(x, &hp)? };
                    if !ok {
                        return Ok(Verdict { holds: false, checked, counterexample: Some(hp) });
                    }
                }
            }
        }
    }
    Ok(Verdict { holds: true, checked, counterexample: None })
}

/// All inner horns with `n ≤ n_max` lift.
pub fn is_quasicategory(x: &Templicial, n_max: usize) -> Result<Verdict> {
    check_all(x, n_max, false)
}

/// All inner horns with `n ≤ n_max` lift uniquely.
pub fn is_nerve_like(x: &Templicial, n_max: usize) -> Result<Verdict> {
    check_all(x, n_max, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosmos::Cosmos;
    use crate::functors::{nerve, vcat_corpus};
    use crate::sset::{self, FinSimpSet};
    use crate::templicial::free_templicial;

    fn free(c: Cosmos, k: FinSimpSet) -> Templicial {
        free_templicial(c, &k).unwrap()
    }

    #[test]
    fn two_dimensional_horn_is_mu() {
        let x = free(Cosmos::FinSet, FinSimpSet::standard_simplex(2, 2).unwrap());
        let h = horn_object(&x, &HornProblem::new(&x, 0, 2, 2, 1).unwrap()).unwrap();
        assert_eq!(h.obj().len(), x.mu(1, 1).dst_hom(0, 2).len());
        assert!(x.cosmos().is_iso(&h.cmp));
    }

    #[test]
    fn outer_horns_are_rejected() {
        let x = free(Cosmos::FinSet, FinSimpSet::standard_simplex(2, 2).unwrap());
        assert!(HornProblem::new(&x, 0, 2, 2, 0).is_err());
        assert!(HornProblem::new(&x, 0, 2, 2, 2).is_err());
    }

    #[test]
    fn simplex_lifts_uniquely() {
        let x = free(Cosmos::FinSet, FinSimpSet::standard_simplex(3, 3).unwrap());
        assert!(is_nerve_like(&x, 3).unwrap().holds);
    }

    #[test]
    fn horn_fails_at_the_tautological_problem() {
        let x = free(Cosmos::FinSet, FinSimpSet::horn(2, 1, 2).unwrap());
        let v = is_quasicategory(&x, 2).unwrap();
        assert!(!v.holds);
        assert_eq!(v.counterexample, Some(HornProblem { a: 0, b: 2, n: 2, j: 1 }));
    }

    #[test]
    fn nerves_lift_uniquely() {
        for c in [Cosmos::FinSet, Cosmos::finvect(2).unwrap()] {
            for (name, cat) in vcat_corpus(c).unwrap() {
                let x = nerve(&cat, 4).unwrap();
                assert!(is_nerve_like(&x, 4).unwrap().holds, "{name}");
            }
        }
    }

    #[test]
    fn agrees_with_classical_search() {
        let corpus = [
            FinSimpSet::standard_simplex(3, 3).unwrap(),
            FinSimpSet::boundary(2, 2).unwrap(),
            FinSimpSet::boundary(3, 3).unwrap(),
            FinSimpSet::horn(2, 1, 2).unwrap(),
            FinSimpSet::horn(3, 1, 3).unwrap(),
            FinSimpSet::horn(3, 0, 3).unwrap(),
        ];
        for k in corpus {
            let x = free(Cosmos::FinSet, k.clone());
            let n = k.dim();
            let mine = is_quasicategory(&x, n).unwrap().holds;
            let (u, _) = x.underlying_sset(n).unwrap();
            let theirs = sset::inner_horn_counterexample(&u, n).unwrap().is_none();
            assert_eq!(mine, theirs, "{k:?}");
        }
    }
}
