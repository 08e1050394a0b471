use proptest::prelude::*;

use templex::cosmos::{Cosmos, Elt, VMor};
use templex::necklace::{self, enumerate_flags, Necklace};
use templex::quasicheck::is_quasicategory;
use templex::quiver::numbered;
use templex::simplexcat::OrdMap;
use templex::sset::{self, FinSimpSet};
use templex::templicial::{free_templicial, Templicial};

fn monotone(n: usize, m: usize) -> impl Strategy<Value = OrdMap> {
    prop::collection::vec(0..=m, n + 1).prop_map(move |mut v| {
        v.sort();
        OrdMap::new(m, v).unwrap()
    })
}

fn necklace(max_p: usize) -> impl Strategy<Value = Necklace> {
    prop::collection::vec(1..=max_p, 0..=3).prop_map(|beads| Necklace::from_beads(&beads).unwrap())
}

// A subcomplex of Δ^3 given by its facets.
fn complex() -> impl Strategy<Value = FinSimpSet> {
    prop::collection::vec(prop::sample::subsequence(vec![0usize, 1, 2, 3], 1..=3), 1..=4)
        .prop_map(|faces| FinSimpSet::from_complex(numbered(4), &faces, 2).unwrap())
}

fn instance() -> impl Strategy<Value = Cosmos> {
    prop_oneof![Just(Cosmos::FinSet), Just(Cosmos::FinVect { p: 2 }), Just(Cosmos::FinVect { p: 3 }), Just(Cosmos::FgAb)]
}

fn fp_map(p: u64, n: usize, m: usize) -> impl Strategy<Value = VMor> {
    prop::collection::vec(prop::collection::vec(0..p as i64, m), n).prop_map(move |cols| {
        let c = Cosmos::FinVect { p };
        let cols: Vec<Elt> = cols
            .into_iter()
            .map(|col| col.into_iter().enumerate().filter(|&(_, k)| k != 0).map(|(i, k)| (i as u32, k)).collect())
            .collect();
        VMor::from_cols(c.free(n), c.free(m), cols)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monotone_maps_factor(f in monotone(4, 3)) {
        let (epi, mono) = f.epi_mono();
        prop_assert!(epi.is_surjective() && mono.is_injective());
        prop_assert_eq!(epi.then(&mono).unwrap(), f);
    }

    #[test]
    fn monotone_composition_is_associative(f in monotone(2, 3), g in monotone(3, 2), h in monotone(2, 4)) {
        let left = f.then(&g).unwrap().then(&h).unwrap();
        let right = f.then(&g.then(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn wedge_is_associative(a in necklace(2), b in necklace(2), c in necklace(2)) {
        let l = necklace::wedge(&necklace::wedge(&a, &b), &c);
        let r = necklace::wedge(&a, &necklace::wedge(&b, &c));
        prop_assert_eq!(l, r);
        prop_assert_eq!(l.beads().len(), a.beads().len() + b.beads().len() + c.beads().len());
    }

    #[test]
    fn beads_round_trip(t in necklace(3)) {
        prop_assert_eq!(Necklace::from_beads(&t.beads()).unwrap(), t);
    }

    #[test]
    fn flankification_is_flanked(t in necklace(2), n in 0usize..=2, pick in any::<prop::sample::Index>()) {
        let flags = enumerate_flags(&t, n);
        let f = &flags[pick.index(flags.len())];
        let (g, eps) = necklace::flankify(f);
        prop_assert!(g.is_flanked());
        prop_assert!(necklace::is_flag_morphism(&eps, &g, f));
        if f.is_flanked() {
            prop_assert_eq!(&g, f);
        }
    }

    #[test]
    fn coequalizer_coequalizes(f in fp_map(3, 2, 3), g in fp_map(3, 2, 3)) {
        let c = Cosmos::FinVect { p: 3 };
        let q = c.coequalizer(f.dst(), &[(f.clone(), g.clone())]).unwrap();
        prop_assert_eq!(c.compose(&f, &q.q).unwrap(), c.compose(&g, &q.q).unwrap());
        prop_assert!(c.u_surjective(&q.q));
    }

    #[test]
    fn equalizer_equalizes(f in fp_map(2, 3, 2), g in fp_map(2, 3, 2)) {
        let c = Cosmos::FinVect { p: 2 };
        let e = c.equalizer(&f, &g).unwrap();
        let inc = &e.proj[0];
        prop_assert_eq!(c.compose(inc, &f).unwrap(), c.compose(inc, &g).unwrap());
        prop_assert!(c.u_injective(inc));
    }

    #[test]
    fn free_objects_validate(k in complex(), c in instance()) {
        let x = free_templicial(c, &k).unwrap();
        let r = x.validate().unwrap();
        prop_assert!(r.is_ok(), "{:?}", r.violations.first());
    }

    #[test]
    fn free_objects_decompose(k in complex()) {
        let x = free_templicial(Cosmos::FinVect { p: 2 }, &k).unwrap();
        let nd = x.nondegenerates().unwrap().found().unwrap();
        for n in 1..=x.dim() {
            prop_assert!(x.ez_decompose(&nd, n).unwrap().iso);
        }
    }

    #[test]
    fn templicial_json_round_trips(k in complex(), c in instance()) {
        let x = free_templicial(c, &k).unwrap();
        let y = Templicial::from_json(&x.to_json()).unwrap();
        prop_assert_eq!(y.to_json(), x.to_json());
    }

    #[test]
    fn sset_json_round_trips(k in complex()) {
        let back = sset::sset_from_json(&sset::sset_to_json(&k)).unwrap();
        prop_assert_eq!(sset::sset_to_json(&back), sset::sset_to_json(&k));
    }

    #[test]
    fn underlying_of_free_is_the_input(k in complex()) {
        let x = free_templicial(Cosmos::FinSet, &k).unwrap();
        let (u, _) = x.underlying_sset(2).unwrap();
        prop_assert!(sset::find_isomorphism(&u, &k).is_some());
    }

    #[test]
    fn quasi_verdict_matches_classical(k in complex()) {
        let x = free_templicial(Cosmos::FinSet, &k).unwrap();
        let mine = is_quasicategory(&x, 2).unwrap().holds;
        let theirs = sset::inner_horn_counterexample(&k, 2).unwrap().is_none();
        prop_assert_eq!(mine, theirs);
    }
}
