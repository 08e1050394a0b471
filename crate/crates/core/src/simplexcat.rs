//! The simplex category Δ, its interval subcategory Δ_f and surjections.
//!
//! An [`OrdMap`] is a weakly increasing map `[m] → [n]`. The codomain is part
//! of the value: two maps with the same table but different codomains differ.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MODULE: &str = "simplexcat";

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawOrdMap", into = "RawOrdMap")]
pub struct OrdMap {
    cod: usize,
    map: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawOrdMap {
    dom: usize,
    cod: usize,
    map: Vec<usize>,
}

impl TryFrom<RawOrdMap> for OrdMap {
    type Error = Error;
    fn try_from(raw: RawOrdMap) -> Result<Self> {
        if raw.map.len() != raw.dom + 1 {
            return Err(Error::parse(
                MODULE,
                "OrdMap",
                format!("table has {} entries, expected {}", raw.map.len(), raw.dom + 1),
            ));
        }
        OrdMap::new(raw.cod, raw.map)
    }
}

impl From<OrdMap> for RawOrdMap {
    fn from(f: OrdMap) -> Self {
        RawOrdMap {
            dom: f.dom(),
            cod: f.cod,
            map: f.map,
        }
    }
}

impl OrdMap {
    /// Builds `[map.len()-1] → [cod]`, checking monotonicity and range.
    pub fn new(cod: usize, map: Vec<usize>) -> Result<Self> {
        if map.is_empty() {
            return Err(Error::invalid(MODULE, "OrdMap::new", "empty table"));
        }
        if map.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::invalid(
                MODULE,
                "OrdMap::new",
                format!("table {map:?} is not weakly increasing"),
            ));
        }
        if let Some(&x) = map.iter().find(|&&x| x > cod) {
            return Err(Error::invalid(
                MODULE,
                "OrdMap::new",
                format!("entry {x} exceeds codomain {cod}"),
            ));
        }
        Ok(OrdMap { cod, map })
    }

    pub fn identity(n: usize) -> Self {
        OrdMap {
            cod: n,
            map: (0..=n).collect(),
        }
    }

    /// The coface δ_j : [n−1] → [n] skipping `j`.
    pub fn coface(n: usize, j: usize) -> Result<Self> {
        if n == 0 || j > n {
            return Err(Error::invalid(
                MODULE,
                "coface",
                format!("δ_{j} into [{n}] out of range"),
            ));
        }
        Ok(OrdMap {
            cod: n,
            map: (0..n).map(|i| if i < j { i } else { i + 1 }).collect(),
        })
    }

    /// The codegeneracy σ_j : [n+1] → [n] hitting `j` twice.
    pub fn codegeneracy(n: usize, j: usize) -> Result<Self> {
        if j > n {
            return Err(Error::invalid(
                MODULE,
                "codegeneracy",
                format!("σ_{j} onto [{n}] out of range"),
            ));
        }
        Ok(OrdMap {
            cod: n,
            map: (0..=n + 1).map(|i| if i <= j { i } else { i - 1 }).collect(),
        })
    }

    pub fn dom(&self) -> usize {
        self.map.len() - 1
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// `self` followed by `g`, i.e. g ∘ self.
    pub fn then(&self, g: &OrdMap) -> Result<OrdMap> {
        compose(self, g)
    }

    pub fn is_identity(&self) -> bool {
        self.cod == self.dom() && self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_injective(&self) -> bool {
        self.map.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.map[0] == 0
            && *self.map.last().unwrap() == self.cod
            && self.map.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// Sorted image of the map.
    pub fn image(&self) -> Vec<usize> {
        let mut im = self.map.clone();
        im.dedup();
        im
    }

    /// Unique factorization `self = mono ∘ epi`, returned as `(epi, mono)`.
    pub fn epi_mono(&self) -> (OrdMap, OrdMap) {
        let im = self.image();
        let k = im.len() - 1;
        let epi = self
            .map
            .iter()
            .map(|x| im.binary_search(x).expect("image contains value"))
            .collect();
        (
            OrdMap { cod: k, map: epi },
            OrdMap {
                cod: self.cod,
                map: im,
            },
        )
    }
}

/// Pointwise composite: first `f`, then `g`.
pub fn compose(f: &OrdMap, g: &OrdMap) -> Result<OrdMap> {
    if f.cod != g.dom() {
        return Err(Error::mismatch(
            MODULE,
            "compose",
            format!("codomain [{}] vs domain [{}]", f.cod, g.dom()),
        ));
    }
    Ok(OrdMap {
        cod: g.cod,
        map: f.map.iter().map(|&i| g.map[i]).collect(),
    })
}

/// Endpoint preservation: f(0) = 0 and f(m) = n.
pub fn is_interval(f: &OrdMap) -> bool {
    f.map[0] == 0 && *f.map.last().unwrap() == f.cod
}

/// The monoidal sum on Δ_f: `[m] + [m'] = [m + m']`.
pub fn sum(f: &OrdMap, g: &OrdMap) -> Result<OrdMap> {
    if !is_interval(f) || !is_interval(g) {
        return Err(Error::invalid(
            MODULE,
            "sum",
            "monoidal sum requires endpoint-preserving maps",
        ));
    }
    let mut map = f.map.clone();
    map.extend(g.map[1..].iter().map(|&x| x + f.cod));
    Ok(OrdMap {
        cod: f.cod + g.cod,
        map,
    })
}

/// Splits an interval map on `[k + l]` into the unique pair whose sum is `f`.
pub fn split_interval(f: &OrdMap, k: usize, l: usize) -> Result<(OrdMap, OrdMap)> {
    if k + l != f.dom() {
        return Err(Error::mismatch(
            MODULE,
            "split_interval",
            format!("{k} + {l} differs from domain [{}]", f.dom()),
        ));
    }
    if !is_interval(f) {
        return Err(Error::invalid(
            MODULE,
            "split_interval",
            "map does not preserve endpoints",
        ));
    }
    let mid = f.map[k];
    let f1 = OrdMap {
        cod: mid,
        map: f.map[..=k].to_vec(),
    };
    let f2 = OrdMap {
        cod: f.cod - mid,
        map: f.map[k..].iter().map(|x| x - mid).collect(),
    };
    Ok((f1, f2))
}

/// All monotone maps `[m] → [n]` in lexicographic order of tables.
pub fn enumerate_monotone(m: usize, n: usize) -> Vec<OrdMap> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; m + 1];
    loop {
        out.push(OrdMap {
            cod: n,
            map: cur.clone(),
        });
        // advance to the next weakly increasing table
        let mut i = m as isize;
        while i >= 0 && cur[i as usize] == n {
            i -= 1;
        }
        if i < 0 {
            break;
        }
        let v = cur[i as usize] + 1;
        for x in cur.iter_mut().skip(i as usize) {
            *x = v;
        }
    }
    out
}

/// All endpoint-preserving maps `[m] → [n]` in lexicographic order.
pub fn enumerate_interval(m: usize, n: usize) -> Vec<OrdMap> {
    enumerate_monotone(m, n)
        .into_iter()
        .filter(is_interval)
        .collect()
}

/// All surjections `[n] ↠ [k]` in lexicographic order.
pub fn enumerate_surjections(n: usize, k: usize) -> Vec<OrdMap> {
    if k > n {
        return Vec::new();
    }
    enumerate_monotone(n, k)
        .into_iter()
        .filter(OrdMap::is_surjective)
        .collect()
}

/// All injections `[m] ↪ [n]` in lexicographic order.
pub fn enumerate_injections(m: usize, n: usize) -> Vec<OrdMap> {
    if m > n {
        return Vec::new();
    }
    enumerate_monotone(m, n)
        .into_iter()
        .filter(OrdMap::is_injective)
        .collect()
}

/// Decomposes a surjection into codegeneracies: returns indices `i_1, i_2, …`
/// with `f = τ ∘ σ_{i_1}` where τ recursively decomposes; applying degeneracy
/// operators `s_{i_1} s_{i_2} …` (outermost first) realizes `X(f)`.
pub fn surjection_word(f: &OrdMap) -> Vec<usize> {
    debug_assert!(f.is_surjective());
    let mut word = Vec::new();
    let mut cur = f.map.clone();
    while let Some(i) = cur.windows(2).position(|w| w[0] == w[1]) {
        word.push(i);
        cur.remove(i + 1);
    }
    word
}

/// The interior points skipped by an injection, in increasing order.
pub fn injection_gaps(f: &OrdMap) -> Vec<usize> {
    debug_assert!(f.is_injective());
    (0..=f.cod).filter(|x| f.map.binary_search(x).is_err()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn om(cod: usize, t: &[usize]) -> OrdMap {
        OrdMap::new(cod, t.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let id2 = OrdMap::identity(2);
        assert_eq!(compose(&id2, &id2).unwrap(), id2);
        let d1 = OrdMap::coface(2, 1).unwrap();
        let s = om(1, &[0, 1, 1]);
        assert_eq!(compose(&d1, &s).unwrap(), OrdMap::identity(1));
        let bad = om(0, &[0, 0]);
        assert!(compose(&bad, &OrdMap::identity(1)).is_err());
    }

    #[test]
    fn interval_examples() {
        assert!(is_interval(&OrdMap::identity(3)));
        assert!(!is_interval(&OrdMap::coface(2, 0).unwrap()));
        assert!(is_interval(&om(2, &[0, 1, 1, 2])));
    }

    #[test]
    fn split_examples() {
        let (a, b) = split_interval(&OrdMap::identity(2), 1, 1).unwrap();
        assert_eq!((a, b), (OrdMap::identity(1), OrdMap::identity(1)));
        let (a, b) = split_interval(&om(1, &[0, 1, 1]), 1, 1).unwrap();
        assert_eq!(a, OrdMap::identity(1));
        assert_eq!(b, om(0, &[0, 0]));
        let f = om(3, &[0, 1, 3]);
        let (a, b) = split_interval(&f, 0, 2).unwrap();
        assert_eq!(a, OrdMap::identity(0));
        assert_eq!(b, f);
        assert!(split_interval(&f, 1, 2).is_err());
    }

    #[test]
    fn surjection_counts() {
        assert_eq!(enumerate_surjections(3, 3), vec![OrdMap::identity(3)]);
        assert_eq!(
            enumerate_surjections(2, 1),
            vec![om(1, &[0, 0, 1]), om(1, &[0, 1, 1])]
        );
        assert_eq!(enumerate_surjections(3, 1).len(), 3);
    }

    #[test]
    fn monotone_count_matches_binomial() {
        // C(m+n+1, m+1)
        assert_eq!(enumerate_monotone(2, 3).len(), 20);
        assert_eq!(enumerate_monotone(0, 4).len(), 5);
    }

    #[test]
    fn serde_round_trip() {
        let f = om(3, &[0, 1, 3]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"dom":2,"cod":3,"map":[0,1,3]}"#);
        let g: OrdMap = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
        assert!(serde_json::from_str::<OrdMap>(r#"{"dom":1,"cod":3,"map":[2,1]}"#).is_err());
    }

    #[test]
    fn words_rebuild_maps() {
        for n in 0..5 {
            for k in 0..=n {
                for f in enumerate_surjections(n, k) {
                    // apply σ's in the recorded order to rebuild the table
                    let word = surjection_word(&f);
                    let mut g = OrdMap::identity(k);
                    for &i in word.iter().rev() {
                        let cod = g.dom();
                        g = compose(&OrdMap::codegeneracy(cod, i).unwrap(), &g).unwrap();
                    }
                    assert_eq!(g, f);
                }
            }
        }
    }
}
