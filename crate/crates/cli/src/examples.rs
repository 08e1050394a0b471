//! Reproducible worked examples and fixture generation.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use templex::cosmos::json::elt_to_json;
use templex::cosmos::Cosmos;
use templex::functors::{homotopy_cat, nerve, vcat_corpus};
use templex::necklace::{self, Necklace, VertexSet};
use templex::sset::{self, sset_to_json, Bipointed, FinSimpSet};
use templex::templicial::{double_boundary, fgab_doubling, free_templicial, w_extension};
use templex::{Error, Result};

use crate::io::envelope;

const MODULE: &str = "cli";

pub const NAMES: &[&str] = &["dugger-spivak-cube", "w-extension", "fgab-2", "boundary-homotopy", "outer-horn", "fixtures"];

/// Runs the named example; the flag says whether every expectation held.
pub fn run(name: &str, out_dir: Option<&str>) -> Result<(Value, bool)> {
    match name {
        "dugger-spivak-cube" => dugger_spivak_cube(4),
        "w-extension" => w_ext(),
        "fgab-2" => fgab_two(),
        "boundary-homotopy" => boundary_homotopy(),
        "outer-horn" => outer_horn(),
        "fixtures" => fixtures(out_dir.unwrap_or("fixtures")),
        _ => Err(Error::invalid(MODULE, "examples", format!("unknown example {name:?}; try one of {NAMES:?}"))),
    }
}

// Nondegenerate simplices of the nerve of a finite poset, by dimension.
fn chain_counts<T>(elems: &[T], less: impl Fn(&T, &T) -> bool) -> Vec<usize> {
    let n = elems.len();
    let mut counts = Vec::new();
    // ends[i] = chains of the current length ending at i
    let mut ends = vec![1usize; n];
    while ends.iter().any(|&c| c > 0) {
        counts.push(ends.iter().sum());
        let mut next = vec![0usize; n];
        for (j, slot) in next.iter_mut().enumerate() {
            *slot = (0..n).filter(|&i| less(&elems[i], &elems[j])).map(|i| ends[i]).sum();
        }
        ends = next;
    }
    counts
}

fn dugger_spivak_cube(p: usize) -> Result<(Value, bool)> {
    let poset = necklace::poset_p(&Necklace::simplex(p));
    let proper = |a: &VertexSet, b: &VertexSet| a != b && a & !b == 0;
    let nerve_counts = chain_counts(&poset, proper);
    let m = p.saturating_sub(1);
    let cube: Vec<Vec<u8>> = (0..1u32 << m).map(|c| (0..m).map(|i| ((c >> i) & 1) as u8).collect()).collect();
    let below = |a: &Vec<u8>, b: &Vec<u8>| a != b && a.iter().zip(b).all(|(x, y)| x <= y);
    let cube_counts = chain_counts(&cube, below);
    let ok = nerve_counts == cube_counts;
    Ok((
        envelope(
            "example",
            json!({
                "name": "dugger-spivak-cube",
                "p": p,
                "poset_size": poset.len(),
                "nerve_nondegenerate": nerve_counts,
                "cube_nondegenerate": cube_counts,
                "match": ok,
            }),
        ),
        ok,
    ))
}

fn w_ext() -> Result<(Value, bool)> {
    let w = w_extension()?;
    let report = w.x.validate()?;
    let (a, b) = (0, 3);
    let c = Cosmos::FgAb;
    let over_w = w.x.two_simplices_over(a, b, &w.w)?;
    let over_h = w.x.two_simplices_over(a, b, &w.twice_degenerate_h)?;
    let nonneg = |e: &Vec<(u32, i64)>| e.iter().all(|&(_, v)| v >= 0);
    let positive: Vec<_> = over_h.iter().filter(|(_, y, z)| nonneg(y) && nonneg(z)).collect();
    let base = free_templicial(c, &double_boundary()?)?;
    let target = c.apply(w.x.mu(1, 1).at(a, b), &w.w);
    let base_hits = c.preimage(base.mu(1, 1).at(a, b), &target).is_some();
    let pairs: Vec<Value> = over_h
        .iter()
        .map(|(mid, y, z)| json!({"via": mid, "first": elt_to_json(c, y), "second": elt_to_json(c, z)}))
        .collect();
    let ok = report.is_ok() && over_w.is_empty() && positive.len() == 2 && !base_hits;
    Ok((
        envelope(
            "example",
            json!({
                "name": "w-extension",
                "validates": report.is_ok(),
                "w_preimages": over_w.len(),
                "twice_degenerate_h_preimages": over_h.len(),
                "twice_degenerate_h_nonnegative_preimages": positive.len(),
                "pairs": pairs,
                "sum_of_tensors_hit_before_extension": base_hits,
            }),
        ),
        ok,
    ))
}

fn fgab_two() -> Result<(Value, bool)> {
    let good = fgab_doubling(3, 2)?;
    let bad = fgab_doubling(3, 3)?;
    let rg = good.validate()?;
    let rb = bad.validate()?;
    let has_nd = good.nondegenerates()?.found().is_some();
    let mut laws: Vec<&str> = rb.violations.iter().map(|v| v.law).collect();
    laws.dedup();
    let ok = rg.is_ok() && !rb.is_ok() && !has_nd;
    Ok((
        envelope(
            "example",
            json!({
                "name": "fgab-2",
                "c2_validates": rg.is_ok(),
                "c2_has_nondegenerates": has_nd,
                "c3_validates": rb.is_ok(),
                "c3_violated_laws": laws,
            }),
        ),
        ok,
    ))
}

fn boundary_homotopy() -> Result<(Value, bool)> {
    let c = Cosmos::finvect(2)?;
    let k = FinSimpSet::boundary(2, 2)?;
    let x = free_templicial(c, &k)?;
    let (h, truncated) = homotopy_cat(&x, None)?;
    let hom = h.hom().hom(0, 2);
    let points = c.point_count(hom).unwrap_or(0);
    let (u, _) = x.underlying_sset(2)?;
    // paths of length 2 already stabilize the hom; 4 leaves slack
    let classical = sset::homotopy_category(&u, 4)?;
    let classical_size = classical.hom_size(0, 2);
    let bijective = points == classical_size as u128;
    let ok = hom.len() == 2 && points == 4 && classical_size == 3 && !bijective && !truncated;
    Ok((
        envelope(
            "example",
            json!({
                "name": "boundary-homotopy",
                "instance": c.name(),
                "enriched_hom_dim": hom.len(),
                "enriched_hom_points": points as u64,
                "classical_hom_size": classical_size,
                "comparison_bijective": bijective,
            }),
        ),
        ok,
    ))
}

fn outer_horn() -> Result<(Value, bool)> {
    let horn = Bipointed::new(FinSimpSet::horn(2, 0, 3)?, 0, 2)?;
    let edge = Bipointed::new(FinSimpSet::standard_simplex(1, 3)?, 0, 1)?;
    let mut rows = Vec::new();
    let mut all = true;
    for p in 0..=3 {
        for t in necklace::enumerate_necklaces(p) {
            let h = horn.restrict_to_nec(&t)?.len();
            let e = edge.restrict_to_nec(&t)?.len();
            all &= h == e;
            rows.push(json!({"p": p, "joints": t.joint_list(), "horn_cells": h, "edge_cells": e}));
        }
    }
    let classical_edges = horn.base.nondegenerate(1).len();
    Ok((
        envelope(
            "example",
            json!({
                "name": "outer-horn",
                "necklaces": rows,
                "matches_single_edge": all,
                "classical_nondegenerate_edges": classical_edges,
            }),
        ),
        all,
    ))
}

fn fixtures(dir: &str) -> Result<(Value, bool)> {
    let io = |e: std::io::Error| Error::invalid(MODULE, "fixtures", e.to_string());
    fs::create_dir_all(dir).map_err(io)?;
    let mut written = Vec::new();
    let mut put = |name: &str, v: Value| -> Result<()> {
        let path = Path::new(dir).join(name);
        let text = serde_json::to_string_pretty(&v).expect("serializable") + "\n";
        fs::write(&path, text).map_err(io)?;
        written.push(name.to_string());
        Ok(())
    };
    let finset = Cosmos::FinSet;
    let f2 = Cosmos::finvect(2)?;
    let poset2 = vcat_corpus(finset)?.into_iter().find(|(n, _)| n == "poset2").expect("corpus entry").1;
    put("poset2.json", envelope("vcat", poset2.to_json()))?;
    put("nerve_poset2.json", envelope("templicial", nerve(&poset2, 3)?.to_json()))?;
    put("boundary2.json", envelope("sset", sset_to_json(&FinSimpSet::boundary(2, 2)?)))?;
    put("horn21.json", envelope("sset", sset_to_json(&FinSimpSet::horn(2, 1, 2)?)))?;
    put("simplex3.json", envelope("sset", sset_to_json(&FinSimpSet::standard_simplex(3, 3)?)))?;
    let fb = free_templicial(f2, &FinSimpSet::boundary(2, 2)?)?;
    put("free_boundary2.json", envelope("templicial", fb.to_json()))?;
    Ok((envelope("fixtures", json!({"dir": dir, "written": written})), true))
}
