//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use templex::cosmos::{Cosmos, Elt, VMor, VObj};
use templex::functors::{
    categorify, hc_nerve, homotopy_cat, homotopy_cat_quasi, is_strongly_monoidal, nerve, round_trip, vcat_corpus,
    vcat_from_templicial, SVCat, VCat,
};
use templex::necklace::{self, enumerate_flags, enumerate_flanked_flags, enumerate_necklaces, is_flag_morphism, NeckMap, Necklace};
use templex::quasicheck::{is_nerve_like, is_quasicategory};
use templex::quiver::{numbered, tensor_flat, Part, QMor, VQuiver};
use templex::simplexcat::enumerate_surjections;
use templex::sset::{self, classical_hc_nerve, classical_rigidify, find_isomorphism, Bipointed, FinSimpSet, SimpCat};
use templex::templicial::{double_boundary, fgab_doubling, free_templicial, w_extension, Templicial};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

trait OrFail<T> {
    fn or_fail(self, what: &str) -> Result<T, String>;
}

impl<T, E: std::fmt::Display> OrFail<T> for Result<T, E> {
    fn or_fail(self, what: &str) -> Result<T, String> {
        self.map_err(|e| format!("{what}: {e}"))
    }
}

fn two_instances() -> [Cosmos; 2] {
    [Cosmos::FinSet, Cosmos::FinVect { p: 2 }]
}

fn all_instances() -> [Cosmos; 3] {
    [Cosmos::FinSet, Cosmos::FinVect { p: 2 }, Cosmos::FgAb]
}

fn total(q: &VQuiver) -> usize {
    q.homs().iter().map(VObj::len).sum()
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

// The simplicial sets K with n ≤ 4 used for the free constructions.
fn small_ssets() -> Vec<(String, FinSimpSet)> {
    let mut out = Vec::new();
    for n in 0..=4 {
        out.push((format!("Δ^{n}"), FinSimpSet::standard_simplex(n, n.max(1)).unwrap()));
    }
    for n in 1..=4 {
        out.push((format!("∂Δ^{n}"), FinSimpSet::boundary(n, n).unwrap()));
        for j in 0..=n {
            out.push((format!("Λ^{n}_{j}"), FinSimpSet::horn(n, j, n).unwrap()));
        }
    }
    out
}

// Changes one column of one component, if some column can change.
fn perturb(c: Cosmos, m: &QMor) -> Option<QMor> {
    let s = m.size();
    for a in 0..s {
        for b in 0..s {
            let f = m.at(a, b);
            let (src, dst) = (f.src().clone(), f.dst().clone());
            if src.is_empty() || dst.is_empty() {
                continue;
            }
            let old = c.normalize_elt(&dst, f.col(0).to_vec());
            let new = if c.is_additive() {
                c.add_elt(&dst, &old, &Cosmos::basis_elt(0))
            } else if dst.len() >= 2 {
                Cosmos::basis_elt((old[0].0 as usize + 1) % dst.len())
            } else {
                continue;
            };
            if new == old {
                continue;
            }
            let cols: Vec<Elt> = (0..src.len()).map(|j| if j == 0 { new.clone() } else { f.col(j).to_vec() }).collect();
            let changed = VMor::from_cols(src, dst, cols);
            return QMor::new(&m.src(), &m.dst(), |x, y| if (x, y) == (a, b) { changed.clone() } else { m.at(x, y).clone() }).ok();
        }
    }
    None
}

// Every single-map mutation of x: (label, mutated object).
fn mutations(x: &Templicial) -> Vec<(String, Templicial)> {
    let c = x.cosmos();
    let mut out = Vec::new();
    for n in 2..=x.dim() {
        for j in 1..n {
            if let Some(m) = perturb(c, x.d(n, j)) {
                out.push((format!("d({n},{j})"), x.with_face(n, j, m).unwrap()));
            }
        }
    }
    for n in 0..x.dim() {
        for i in 0..=n {
            if let Some(m) = perturb(c, x.s(n, i)) {
                out.push((format!("s({n},{i})"), x.with_degeneracy(n, i, m).unwrap()));
            }
        }
    }
    for k in 1..x.dim() {
        for l in 1..=x.dim() - k {
            if let Some(m) = perturb(c, x.mu(k, l)) {
                out.push((format!("mu({k},{l})"), x.with_mu(k, l, m).unwrap()));
            }
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let mut validated = 0;
    for c in all_instances() {
        for (name, k) in small_ssets() {
            let x = free_templicial(c, &k).or_fail(&name)?;
            let r = x.validate().or_fail(&name)?;
            ensure!(r.is_ok(), "free {name} over {} violates {:?}", c.name(), r.violations.first());
            validated += 1;
        }
        let corpus = vcat_corpus(c).or_fail("corpus")?;
        ensure!(corpus.len() == 5, "corpus over {} has {} entries", c.name(), corpus.len());
        for (name, cat) in corpus {
            let r = nerve(&cat, 3).or_fail(&name)?.validate().or_fail(&name)?;
            ensure!(r.is_ok(), "nerve of {name} over {} violates {:?}", c.name(), r.violations.first());
            validated += 1;
        }
    }
    let doubling = fgab_doubling(3, 2).or_fail("doubling")?;
    ensure!(doubling.validate().or_fail("doubling")?.is_ok(), "FGAb doubling example does not validate");
    validated += 1;

    let targets = vec![
        free_templicial(Cosmos::FinSet, &FinSimpSet::standard_simplex(3, 3).unwrap()).unwrap(),
        free_templicial(Cosmos::FinVect { p: 2 }, &FinSimpSet::boundary(2, 3).unwrap()).unwrap(),
        free_templicial(Cosmos::FgAb, &FinSimpSet::standard_simplex(2, 3).unwrap()).unwrap(),
        nerve(&vcat_corpus(Cosmos::FinVect { p: 2 }).unwrap()[4].1, 3).unwrap(),
        doubling,
    ];
    let mut caught = 0;
    let mut tried = 0;
    for x in &targets {
        for (label, y) in mutations(x) {
            tried += 1;
            let r = y.validate().or_fail(&label)?;
            ensure!(!r.is_ok(), "mutation {label} over {} went undetected", x.cosmos().name());
            caught += 1;
        }
    }
    ensure!(tried > 0, "no mutations generated");
    Ok(format!("{validated} objects validate, {caught}/{tried} mutations caught"))
}

fn criterion_2() -> Outcome {
    let necks: Vec<Necklace> = (0..=4).flat_map(enumerate_necklaces).collect();
    let m = necks.len();
    let idx = |t: &Necklace| necks.iter().position(|u| u == t).unwrap();
    let maps: Vec<Vec<Vec<NeckMap>>> =
        necks.iter().map(|t| necks.iter().map(|u| necklace::enumerate_neckmaps(t, u)).collect()).collect();
    let pos = |i: usize, j: usize, f: &NeckMap| maps[i][j].iter().position(|g| g == f);
    let mut count = 0;
    // composition table comp[i][j][k][(a, b)] = index in maps[i][k]
    let mut comp = vec![vec![vec![Vec::new(); m]; m]; m];
    for i in 0..m {
        for j in 0..m {
            for f in &maps[i][j] {
                count += 1;
                ensure!(NeckMap::identity(necks[i]).then(f).unwrap() == *f, "left identity fails for {f:?}");
                ensure!(f.then(&NeckMap::identity(necks[j])).unwrap() == *f, "right identity fails for {f:?}");
                let (act, ine) = necklace::active_inert_factor(f);
                ensure!(act.is_active() && ine.is_inert(), "factorization of {f:?} has the wrong types");
                ensure!(act.then(&ine).unwrap() == *f, "factorization of {f:?} does not compose back");
            }
            for k in 0..m {
                let mut table = Vec::with_capacity(maps[i][j].len() * maps[j][k].len());
                for f in &maps[i][j] {
                    for g in &maps[j][k] {
                        let h = f.then(g).unwrap();
                        table.push(pos(i, k, &h).ok_or_else(|| format!("{f:?} then {g:?} is not a necklace map"))?);
                    }
                }
                comp[i][j][k] = table;
            }
        }
    }
    let c = |i: usize, j: usize, k: usize, a: usize, b: usize| comp[i][j][k][a * maps[j][k].len() + b];
    let mut triples = 0usize;
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    for a in 0..maps[i][j].len() {
                        for b in 0..maps[j][k].len() {
                            let ab = c(i, j, k, a, b);
                            for d in 0..maps[k][l].len() {
                                triples += 1;
                                ensure!(c(i, k, l, ab, d) == c(i, j, l, a, c(j, k, l, b, d)), "associativity fails");
                            }
                        }
                    }
                }
            }
        }
    }
    // uniqueness of the active/inert factorization
    for i in 0..m {
        for j in 0..m {
            for (fi, f) in maps[i][j].iter().enumerate() {
                let (act, _) = necklace::active_inert_factor(f);
                let mut found = 0;
                for v in 0..m {
                    for (a, g) in maps[i][v].iter().enumerate() {
                        if !g.is_active() {
                            continue;
                        }
                        for (b, h) in maps[v][j].iter().enumerate() {
                            if h.is_inert() && c(i, v, j, a, b) == fi {
                                found += 1;
                                ensure!(*g == act, "a second factorization of {f:?} exists");
                            }
                        }
                    }
                }
                ensure!(found == 1, "{f:?} has {found} active/inert factorizations");
            }
        }
    }
    // flankification: Hom(G, γF) → Hom(G, F), h ↦ ε∘h, is bijective for flanked G
    let mut pairs = 0;
    for n in 0..=2 {
        let flanked: Vec<_> = necks.iter().flat_map(|t| enumerate_flanked_flags(t, n)).collect();
        for t in &necks {
            for f in enumerate_flags(t, n) {
                let (gf, eps) = necklace::flankify(&f);
                ensure!(gf.is_flanked() && is_flag_morphism(&eps, &gf, &f), "counit of {f:?} is not a flag morphism");
                ensure!(gf.base().p() <= 4, "flankification grew the necklace");
                let (ti, gi) = (idx(t), idx(gf.base()));
                for g in &flanked {
                    let vi = idx(g.base());
                    let into_gf: Vec<&NeckMap> = maps[vi][gi].iter().filter(|h| is_flag_morphism(h, g, &gf)).collect();
                    let into_f: BTreeSet<usize> =
                        (0..maps[vi][ti].len()).filter(|&k| is_flag_morphism(&maps[vi][ti][k], g, &f)).collect();
                    let image: BTreeSet<usize> = into_gf.iter().map(|h| pos(vi, ti, &h.then(&eps).unwrap()).unwrap()).collect();
                    ensure!(image.len() == into_gf.len() && image == into_f, "flankification is not a bijection at {g:?} → {f:?}");
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{m} necklaces, {count} maps, {triples} composable triples, {pairs} flag pairs"))
}

fn criterion_3() -> Outcome {
    let mut objects: Vec<(String, Templicial)> = Vec::new();
    for c in two_instances() {
        for (name, k) in [
            ("Δ^2", FinSimpSet::standard_simplex(2, 4).unwrap()),
            ("Δ^3", FinSimpSet::standard_simplex(3, 4).unwrap()),
            ("∂Δ^2", FinSimpSet::boundary(2, 4).unwrap()),
            ("Λ^3_1", FinSimpSet::horn(3, 1, 4).unwrap()),
        ] {
            objects.push((format!("free {name} over {}", c.name()), free_templicial(c, &k).unwrap()));
        }
        for (name, cat) in vcat_corpus(c).unwrap() {
            objects.push((format!("nerve {name} over {}", c.name()), nerve(&cat, 4).unwrap()));
        }
    }
    objects.push(("FGAb doubling".into(), fgab_doubling(3, 2).unwrap()));
    objects.push(("free Δ^2 over fgab".into(), free_templicial(Cosmos::FgAb, &FinSimpSet::standard_simplex(2, 4).unwrap()).unwrap()));
    for (name, x) in &objects {
        let (t, report, iso) = round_trip(x).or_fail(name)?;
        ensure!(t.x.validate().or_fail(name)?.is_ok(), "{name}: the round trip does not validate");
        ensure!(report.is_ok(), "{name}: comparison is not a templicial morphism: {:?}", report.violations.first());
        ensure!(iso, "{name}: comparison is not invertible");
    }
    Ok(format!("{} objects, D ≤ 4", objects.len()))
}

fn criterion_4() -> Outcome {
    let c = Cosmos::FinVect { p: 2 };
    let x = free_templicial(c, &FinSimpSet::standard_simplex(3, 4).unwrap()).unwrap();
    let nd = x.nondegenerates().or_fail("nondegenerates")?.found().ok_or("F̃(Δ^3) has no nondegenerate part")?;
    let mut totals = Vec::new();
    for n in 0..=4 {
        let t = total(x.x(n));
        // independent count: n-simplices of Δ^3 are monotone maps [n] → [3]
        ensure!(t == binomial(n + 4, 3), "dim X_{n} = {t}, expected {}", binomial(n + 4, 3));
        let ez: usize = (0..=n).map(|k| enumerate_surjections(n, k).len() * total(&nd.nd[k])).sum();
        ensure!(ez == t, "Σ over surjections gives {ez} but dim X_{n} = {t}");
        let oracle: usize = (0..=n).map(|k| binomial(n, k) * binomial(4, k + 1)).sum();
        ensure!(oracle == t, "oracle count {oracle} differs from {t}");
        if n >= 1 {
            ensure!(x.ez_decompose(&nd, n).or_fail("ez")?.iso, "EZ map in degree {n} is not invertible");
        }
        totals.push(t);
    }
    ensure!(totals[2] == 20, "degree 2 total {}", totals[2]);
    let has_nd = fgab_doubling(3, 2).unwrap().nondegenerates().or_fail("fgab")?.found().is_some();
    ensure!(!has_nd, "FGAb doubling example reports nondegenerates");
    Ok(format!("dims {totals:?}, FGAb has_nondegenerates = false"))
}

// Two objects, trivial endo-homs, `hom(0,1) = k`, `hom(1,0) = ∅`.
fn two_object_simpcat(k: FinSimpSet) -> SimpCat {
    let dim = k.dim();
    let point = FinSimpSet::standard_simplex(0, dim).unwrap();
    let empty = FinSimpSet::from_complex(numbered(0), &[], dim).unwrap();
    let hom = vec![point.clone(), k, empty, point];
    let mut comp = Vec::new();
    for n in 0..=dim {
        let mut level = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let (x, y) = (&hom[a * 2 + b], &hom[b * 2 + c]);
                    let ny = y.count(n).max(1);
                    let table: Vec<usize> =
                        (0..x.count(n) * y.count(n)).map(|i| if a == b { i % ny } else { i / ny }).collect();
                    level.push(table);
                }
            }
        }
        comp.push(level);
    }
    SimpCat { objects: numbered(2), dim, hom, comp, unit: vec![0, 0] }
}

fn criterion_5() -> Outcome {
    let mut homs = 0;
    for (name, k) in [
        ("Δ^2", FinSimpSet::standard_simplex(2, 2).unwrap()),
        ("∂Δ^2", FinSimpSet::boundary(2, 2).unwrap()),
        ("Λ^2_1", FinSimpSet::horn(2, 1, 2).unwrap()),
        ("Δ^3", FinSimpSet::standard_simplex(3, 3).unwrap()),
    ] {
        let x = free_templicial(Cosmos::FinSet, &k).unwrap();
        let sv = categorify(&x, 3, None).or_fail(name)?.svcat().or_fail(name)?;
        for a in 0..k.count(0) {
            for b in 0..k.count(0) {
                let mine = sv.hom_sset(a, b).or_fail(name)?;
                let theirs = classical_rigidify(&Bipointed::new(k.clone(), a, b).unwrap(), 3, k.count(0)).or_fail(name)?;
                ensure!(mine.counts() == theirs.counts(), "𝔠{name}({a},{b}) counts {:?} vs {:?}", mine.counts(), theirs.counts());
                ensure!(find_isomorphism(&mine, &theirs).is_some(), "𝔠{name}({a},{b}) is not isomorphic to the oracle");
                homs += 1;
            }
        }
    }
    let mut nerves = 0;
    for (name, k) in [("Δ^1", FinSimpSet::standard_simplex(1, 2).unwrap()), ("Λ^2_1", FinSimpSet::horn(2, 1, 2).unwrap())] {
        let sc = two_object_simpcat(k);
        let sv = SVCat::from_simpcat(Cosmos::FinSet, &sc).or_fail(name)?;
        ensure!(sv.check_axioms().or_fail(name)?.is_ok(), "simplicial category with hom {name} fails its axioms");
        let h = hc_nerve(&sv, 3).or_fail(name)?;
        ensure!(h.x.validate().or_fail(name)?.is_ok(), "hc nerve with hom {name} does not validate");
        let (u, _) = h.x.underlying_sset(3).or_fail(name)?;
        let classical = classical_hc_nerve(&sc, 3).or_fail(name)?;
        ensure!(u.counts() == classical.counts(), "hc nerve with hom {name}: {:?} vs {:?}", u.counts(), classical.counts());
        ensure!(find_isomorphism(&u, &classical).is_some(), "hc nerve with hom {name} differs from the oracle");
        nerves += 1;
    }
    Ok(format!("{homs} categorified homs and {nerves} hc nerves match cellwise up to degree 3"))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    for c in two_instances() {
        for (name, cat) in vcat_corpus(c).unwrap() {
            let x = nerve(&cat, 3).unwrap();
            ensure!(is_nerve_like(&x, 3).or_fail(&name)?.holds, "nerve of {name} over {} is not nerve-like", c.name());
            checked += 1;
        }
        let horn = free_templicial(c, &FinSimpSet::horn(2, 1, 2).unwrap()).unwrap();
        ensure!(!is_nerve_like(&horn, 2).or_fail("horn")?.holds, "F̃(Λ^2_1) over {} is nerve-like", c.name());
        // converse: a nerve-like object is the nerve of its category
        let x = free_templicial(c, &FinSimpSet::standard_simplex(3, 3).unwrap()).unwrap();
        ensure!(is_nerve_like(&x, 3).or_fail("simplex")?.holds, "F̃(Δ^3) over {} is not nerve-like", c.name());
        ensure!(is_strongly_monoidal(&x), "nerve-like F̃(Δ^3) is not strongly monoidal");
        let n = nerve(&vcat_from_templicial(&x).or_fail("category")?, 3).unwrap();
        for k in 0..=3 {
            ensure!(x.x(k).homs().iter().map(VObj::len).eq(n.x(k).homs().iter().map(VObj::len)), "level {k} differs from the nerve");
        }
        let (ux, _) = x.underlying_sset(3).unwrap();
        let (un, _) = n.underlying_sset(3).unwrap();
        ensure!(find_isomorphism(&ux, &un).is_some(), "Ũ of F̃(Δ^3) differs from Ũ of its nerve");
        checked += 2;
    }
    Ok(format!("{checked} verdicts over finset and fvect2"))
}

// h_n: C^{⊗n} → C by iterated composition, h_0 the unit.
fn iterated_composition(cat: &VCat, dim: usize) -> Vec<QMor> {
    let c = cat.cosmos();
    let mut h = vec![cat.unit().clone(), QMor::identity(cat.hom())];
    for k in 2..=dim {
        let parts = [Part::new(vec![cat.hom().clone(); k - 1], vec![cat.hom().clone()], h[k - 1].clone()), Part::id(cat.hom())];
        let m = tensor_flat(c, cat.objects(), &parts).unwrap().2.then(cat.comp()).unwrap();
        h.push(m);
    }
    h
}

// Quasi-categories certified by construction, with labels.
fn certified_quasi(c: Cosmos) -> Vec<(String, Templicial)> {
    let mut out = Vec::new();
    for (name, cat) in vcat_corpus(c).unwrap() {
        out.push((format!("nerve {name}"), nerve(&cat, 3).unwrap()));
        out.push((format!("hc nerve of constant {name}"), hc_nerve(&SVCat::constant(&cat, 2).unwrap(), 3).unwrap().x));
    }
    out.push(("free Δ^3".into(), free_templicial(c, &FinSimpSet::standard_simplex(3, 3).unwrap()).unwrap()));
    out
}

fn criterion_7() -> Outcome {
    let mut isos = 0;
    let mut quasi = 0;
    let mut fillers = 0;
    for c in two_instances() {
        for (name, cat) in vcat_corpus(c).unwrap() {
            let n = nerve(&cat, 4).unwrap();
            ensure!(is_quasicategory(&n, 4).or_fail(&name)?.holds, "nerve of {name} over {} is not quasi", c.name());
            let hc = hc_nerve(&SVCat::constant(&cat, 3).unwrap(), 4).or_fail(&name)?;
            ensure!(is_quasicategory(&hc.x, 4).or_fail(&name)?.holds, "hc nerve of constant {name} is not quasi");
            let alpha = hc.mediate_from(&n, &iterated_composition(&cat, 4)).or_fail(&name)?;
            ensure!(alpha.check(&n, &hc.x).or_fail(&name)?.is_ok(), "comparison for {name} is not a templicial morphism");
            ensure!(alpha.is_iso(), "nerve of {name} is not isomorphic to the hc nerve of the constant category");
            isos += 1;
            quasi += 2;
        }
        for (name, x) in certified_quasi(c) {
            let v = is_quasicategory(&x, x.dim()).or_fail(&name)?;
            ensure!(v.holds, "{name} over {} is not quasi", c.name());
            let n = x.dim().min(4);
            let (u, _) = x.underlying_sset(n).or_fail(&name)?;
            let bad = sset::inner_horn_counterexample(&u, n).or_fail(&name)?;
            ensure!(bad.is_none(), "Ũ({name}) over {} has an unfillable horn {bad:?}", c.name());
            fillers += 1;
        }
    }
    Ok(format!("{quasi} quasi verdicts, {isos} nerve isomorphisms, {fillers} classical filler searches"))
}

fn criterion_8() -> Outcome {
    let c = Cosmos::FinVect { p: 2 };
    let x = free_templicial(c, &FinSimpSet::boundary(2, 2).unwrap()).unwrap();
    let (h, truncated) = homotopy_cat(&x, None).or_fail("h")?;
    ensure!(!truncated, "the enriched homotopy category was truncated");
    let hom = h.hom().hom(0, 2);
    let points = c.point_count(hom).ok_or("hom is not finite")?;
    let (u, _) = x.underlying_sset(2).or_fail("Ũ")?;
    let classical = sset::homotopy_category(&u, 4).or_fail("h(Ũ)")?;
    let size = classical.hom_size(0, 2);
    ensure!(hom.len() == 2, "dim h(0,2) = {}", hom.len());
    ensure!(points == 4, "|U h(0,2)| = {points}");
    ensure!(size == 3, "|h(Ũ)(0,2)| = {size}");
    let bijective = points == size as u128;
    ensure!(!bijective, "comparison reported bijective");
    Ok(format!("dim {}, |U h(0,2)| = {points}, |h(Ũ)(0,2)| = {size}, comparison non-bijective", hom.len()))
}

fn criterion_9() -> Outcome {
    let mut checked = 0;
    for c in two_instances() {
        for (name, x) in certified_quasi(c) {
            let (h, _) = homotopy_cat(&x, Some(3)).or_fail(&name)?;
            let hq = homotopy_cat_quasi(&x).or_fail(&name)?;
            ensure!(h.isomorphic(&hq).or_fail(&name)?, "h and h′ of {name} over {} differ", c.name());
            let uh = hq.underlying().or_fail(&name)?;
            let (u, _) = x.underlying_sset(2).or_fail(&name)?;
            let classical = sset::homotopy_category(&u, 4).or_fail(&name)?;
            ensure!(uh.find_isomorphism(&classical).is_some(), "U h′ of {name} over {} differs from h(Ũ)", c.name());
            checked += 1;
        }
    }
    Ok(format!("{checked} quasi-categories: h ≅ h′ and U h′ ≅ h(Ũ)"))
}

// All (mid, y, z) with μ_{1,1}(α) = y ⊗ z, by exhaustive search over
// coefficients in [-2, 2], which bounds every factor of a target whose
// coefficients are at most 2 in absolute value.
fn tensor_factorizations(x: &Templicial, a: usize, b: usize, alpha: &Elt) -> Vec<(usize, Elt, Elt)> {
    let c = x.cosmos();
    let lay = x.layout(&[1, 1]).unwrap();
    let target_obj = lay.quiver().hom(a, b);
    let target = c.normalize_elt(target_obj, c.apply(x.mu(1, 1).at(a, b), alpha));
    let elements = |obj: &VObj| -> Vec<Elt> {
        let mut out = vec![Vec::new()];
        for i in 0..obj.len() {
            out = out
                .into_iter()
                .flat_map(|e: Elt| {
                    (-2i64..=2).map(move |k| {
                        let mut e = e.clone();
                        if k != 0 {
                            e.push((i as u32, k));
                        }
                        e
                    })
                })
                .collect();
        }
        let mut out: Vec<Elt> = out.into_iter().map(|e| c.normalize_elt(obj, e)).collect();
        out.sort();
        out.dedup();
        out
    };
    let mut found = Vec::new();
    for m in 0..x.size() {
        let ys = elements(x.x(1).hom(a, m));
        let zs = elements(x.x(1).hom(m, b));
        for y in &ys {
            for z in &zs {
                let t = c.normalize_elt(target_obj, lay.pure_tensor(&[a, m, b], &[y, z]));
                if t == target {
                    found.push((m, y.clone(), z.clone()));
                }
            }
        }
    }
    found
}

fn criterion_10() -> Outcome {
    let w = w_extension().or_fail("w-extension")?;
    let r = w.x.validate().or_fail("validate")?;
    ensure!(r.is_ok(), "w-extension violates {:?}", r.violations.first());
    let (a, b) = (0, 3);
    let over_h = w.x.two_simplices_over(a, b, &w.twice_degenerate_h).or_fail("preimages")?;
    let over_w = w.x.two_simplices_over(a, b, &w.w).or_fail("preimages")?;
    let oracle_h = tensor_factorizations(&w.x, a, b, &w.twice_degenerate_h);
    let oracle_w = tensor_factorizations(&w.x, a, b, &w.w);
    let key = |v: &[(usize, Elt, Elt)]| -> BTreeSet<(usize, Elt, Elt)> { v.iter().cloned().collect() };
    ensure!(key(&over_h) == key(&oracle_h), "library preimages {over_h:?} differ from search {oracle_h:?}");
    ensure!(over_w.is_empty() && oracle_w.is_empty(), "w has preimages {over_w:?}");
    let nonneg = |e: &Elt| e.iter().all(|&(_, k)| k >= 0);
    let positive: Vec<_> = over_h.iter().filter(|(_, y, z)| nonneg(y) && nonneg(z)).collect();
    ensure!(positive.len() == 2, "{} preimages with nonnegative coefficients", positive.len());
    ensure!(positive.iter().any(|(_, y, z)| *y == vec![(0, 2)] && *z == vec![(0, 1)]), "missing (2 s_0 a, h)");
    ensure!(positive.iter().any(|(_, y, z)| *y == vec![(0, 1)] && *z == vec![(0, 2)]), "missing (s_0 a, 2h)");
    ensure!(over_h.len() == 4, "{} integral preimages", over_h.len());
    let base = free_templicial(Cosmos::FgAb, &double_boundary().unwrap()).unwrap();
    let target = Cosmos::FgAb.apply(w.x.mu(1, 1).at(a, b), &w.w);
    ensure!(Cosmos::FgAb.preimage(base.mu(1, 1).at(a, b), &target).is_none(), "f1⊗g1 + f2⊗g2 is hit before the extension");
    Ok("validates; 2s_0(h) has 2 preimages with nonnegative coefficients (4 over Z with signs); w has none".into())
}

fn main() -> ExitCode {
    let criteria: [(fn() -> Outcome, Option<u64>); 10] = [
        (criterion_1, Some(10)),
        (criterion_2, Some(30)),
        (criterion_3, None),
        (criterion_4, None),
        (criterion_5, None),
        (criterion_6, None),
        (criterion_7, None),
        (criterion_8, Some(5)),
        (criterion_9, None),
        (criterion_10, None),
    ];
    let mut failures = 0;
    for (i, (run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(s)) if elapsed > Duration::from_secs(s) => Err(format!("took {elapsed:.1?}, limit {s}s")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("criterion {}: PASS ({elapsed:.2?}) {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL ({elapsed:.2?}) {why}", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
