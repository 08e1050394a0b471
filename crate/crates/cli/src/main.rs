//! `templex`: command-line front end for templicial computations.

mod examples;
mod io;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use templex::cosmos::{Cosmos, IsoClass, VObj};
use templex::functors::{categorify, homotopy_cat, homotopy_cat_quasi, hc_nerve, nerve};
use templex::necklace::{self, set_from, set_items, Flag, NeckMap, Necklace};
use templex::quasicheck::{is_nerve_like, is_quasicategory};
use templex::simplexcat::OrdMap;
use templex::sset::sset_to_json;
use templex::templicial::{free_templicial, NondegResult, Templicial};
use templex::{Error, Result};

use io::{envelope, Input};

const MODULE: &str = "cli";

#[derive(Parser)]
#[command(name = "templex", version, about = "Templicial objects, necklaces and enriched nerves")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Debug, Default)]
struct Common {
    /// finset | fvect<p> | fgab
    #[arg(long)]
    instance: Option<String>,
    /// Input JSON file, or `corpus:<name>` for a built-in enriched category
    #[arg(long = "in")]
    input: Option<String>,
    /// Write the result here instead of standard output
    #[arg(long)]
    out: Option<String>,
    /// Truncation dimension D
    #[arg(long)]
    dim: Option<usize>,
    /// Largest total necklace dimension when enumeration is not finite
    #[arg(long = "bead-budget")]
    bead_budget: Option<usize>,
    /// Restrict output to one hom
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    hom: Option<Vec<usize>>,
    /// Highest level or horn dimension to compute
    #[arg(long)]
    nmax: Option<usize>,
    /// JSON output (default)
    #[arg(long, conflicts_with = "table")]
    json: bool,
    /// Human-readable key/value output
    #[arg(long)]
    table: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the axioms of a templicial object or enriched category
    Validate(Common),
    /// The free templicial object on a simplicial set
    Free(Common),
    /// The underlying simplicial set
    Underlying(Common),
    /// The templicial nerve of an enriched category
    Nerve(Common),
    /// The homotopy coherent nerve of a simplicially enriched category
    HcNerve(Common),
    /// The categorification
    Categorify(Common),
    /// The homotopy category via the categorification
    Homotopy(Common),
    /// The homotopy category of a quasi-category from left homotopies
    HomotopyQuasi(Common),
    /// Inner-horn lifting
    CheckQuasi(Common),
    /// Unique inner-horn lifting
    CheckNerveLike(Common),
    /// Non-degenerate simplices and the Eilenberg–Zilber decomposition
    Ez(Common),
    /// Necklace utilities
    Necklace {
        #[command(subcommand)]
        tool: NeckTool,
    },
    /// Worked examples: dugger-spivak-cube, w-extension, fgab-2, boundary-homotopy, outer-horn, fixtures
    Examples {
        name: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum NeckTool {
    /// Concatenate two necklaces, each written `p:j0,j1,...`
    Wedge { t: String, u: String },
    /// Active/inert factorization of a necklace map given by its vertex table
    Factor {
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
        #[arg(long)]
        map: String,
    },
    /// Flankify a flag written `v,v,...|v,v,...|...` on a necklace
    Flankify { t: String, flag: String },
    /// List necklaces with `p`, or flags of the given length on each
    Enumerate {
        p: usize,
        #[arg(long)]
        flags: Option<usize>,
        #[arg(long)]
        flanked: bool,
    },
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::parse(MODULE, "args", format!("bad number {x:?}"))))
        .collect()
}

fn parse_necklace(s: &str) -> Result<Necklace> {
    let (p, joints) = s
        .split_once(':')
        .ok_or_else(|| Error::parse(MODULE, "args", format!("necklace {s:?} is not p:j0,j1,...")))?;
    let p = p.trim().parse().map_err(|_| Error::parse(MODULE, "args", format!("bad p in {s:?}")))?;
    Necklace::new(p, &parse_list(joints)?)
}

fn necklace_json(t: &Necklace) -> Value {
    json!({"p": t.p(), "joints": t.joint_list()})
}

fn flag_json(f: &Flag) -> Value {
    json!({
        "necklace": necklace_json(f.base()),
        "chain": f.chain().iter().map(|&s| set_items(s)).collect::<Vec<_>>(),
    })
}

fn neckmap_json(f: &NeckMap) -> Value {
    let g = f.underlying();
    json!({
        "src": necklace_json(f.src()),
        "dst": necklace_json(f.dst()),
        "table": (0..=g.dom()).map(|i| g.apply(i)).collect::<Vec<_>>(),
    })
}

fn hom_json(c: Cosmos, a: &VObj) -> Value {
    match c.iso_class(a) {
        IsoClass::Size(n) => json!({"size": n}),
        IsoClass::Dim(n) => json!({"dim": n}),
        IsoClass::Group { free, torsion } => json!({"free": free, "torsion": torsion}),
    }
}

fn need_input(common: &Common) -> Result<(Input, Option<Cosmos>)> {
    let path = common.input.as_deref().ok_or_else(|| Error::invalid(MODULE, "args", "--in is required"))?;
    let inst = io::instance(common.instance.as_deref())?;
    Ok((io::load(path, inst)?, inst))
}

fn need_templicial(common: &Common) -> Result<Templicial> {
    let (input, inst) = need_input(common)?;
    io::templicial(input, inst, common.dim)
}

fn hom_pair(common: &Common, size: usize) -> Result<Option<(usize, usize)>> {
    match &common.hom {
        None => Ok(None),
        Some(v) if v[0] < size && v[1] < size => Ok(Some((v[0], v[1]))),
        Some(_) => Err(Error::invalid(MODULE, "args", "--hom endpoint out of range")),
    }
}

/// Output and whether the verdict (if any) was positive.
type Outcome = (Value, bool);

fn run(cmd: &Cmd) -> Result<(Outcome, Option<Common>)> {
    let (out, common) = match cmd {
        Cmd::Validate(c) => (validate(c)?, c),
        Cmd::Free(c) => {
            let (input, inst) = need_input(c)?;
            let Input::SSet(k) = input else {
                return Err(Error::invalid(MODULE, "free", "input must be a simplicial set"));
            };
            let inst = inst.ok_or_else(|| Error::invalid(MODULE, "free", "--instance is required"))?;
            let k = match c.dim {
                Some(d) if d < k.dim() => k.truncate(d)?,
                _ => k,
            };
            ((envelope("templicial", free_templicial(inst, &k)?.to_json()), true), c)
        }
        Cmd::Underlying(c) => {
            let (input, inst) = need_input(c)?;
            if let Input::VCat(cat) = &input {
                let u = cat.underlying()?;
                let n = u.size();
                let sizes: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| u.hom_size(a, b)).collect()).collect();
                ((envelope("category", json!({"objects": &cat.objects()[..], "hom_sizes": sizes})), true), c)
            } else {
                let x = io::templicial(input, inst, c.dim)?;
                let (k, _) = x.underlying_sset(c.nmax.unwrap_or(x.dim()))?;
                ((envelope("sset", sset_to_json(&k)), true), c)
            }
        }
        Cmd::Nerve(c) => {
            let (input, _) = need_input(c)?;
            let Input::VCat(cat) = input else {
                return Err(Error::invalid(MODULE, "nerve", "input must be an enriched category"));
            };
            ((envelope("templicial", nerve(&cat, c.dim.unwrap_or(3))?.to_json()), true), c)
        }
        Cmd::HcNerve(c) => {
            let (input, _) = need_input(c)?;
            let Input::SVCat(sv) = input else {
                return Err(Error::invalid(MODULE, "hc-nerve", "input must be a simplicially enriched category"));
            };
            let x = hc_nerve(&sv, c.dim.unwrap_or(sv.dim() + 1))?.x;
            ((envelope("templicial", x.to_json()), true), c)
        }
        Cmd::Categorify(c) => (categorify_cmd(c)?, c),
        Cmd::Homotopy(c) => {
            let x = need_templicial(c)?;
            let (h, truncated) = homotopy_cat(&x, c.bead_budget)?;
            let mut payload = match hom_pair(c, x.size())? {
                Some((a, b)) => hom_json(x.cosmos(), h.hom().hom(a, b)),
                None => h.to_json(),
            };
            if truncated {
                payload["truncated"] = json!(true);
            }
            let schema = if c.hom.is_some() { "hom" } else { "vcat" };
            ((envelope(schema, payload), true), c)
        }
        Cmd::HomotopyQuasi(c) => {
            let x = need_templicial(c)?;
            let v = is_quasicategory(&x, x.dim().min(3))?;
            if let Some(hp) = v.counterexample {
                return Err(Error::invalid(
                    MODULE,
                    "homotopy-quasi",
                    format!("not a quasi-category: horn Λ^{}_{} over ({},{}) does not lift", hp.n, hp.j, hp.a, hp.b),
                ));
            }
            let h = homotopy_cat_quasi(&x)?;
            let payload = match hom_pair(c, x.size())? {
                Some((a, b)) => hom_json(x.cosmos(), h.hom().hom(a, b)),
                None => h.to_json(),
            };
            let schema = if c.hom.is_some() { "hom" } else { "vcat" };
            ((envelope(schema, payload), true), c)
        }
        Cmd::CheckQuasi(c) => {
            let x = need_templicial(c)?;
            let v = is_quasicategory(&x, c.nmax.unwrap_or(x.dim()))?;
            ((envelope("verdict", v.to_json("quasi")), v.holds), c)
        }
        Cmd::CheckNerveLike(c) => {
            let x = need_templicial(c)?;
            let v = is_nerve_like(&x, c.nmax.unwrap_or(x.dim()))?;
            ((envelope("verdict", v.to_json("nerve_like")), v.holds), c)
        }
        Cmd::Ez(c) => (ez(c)?, c),
        Cmd::Necklace { tool } => return Ok((necklace_tool(tool)?, None)),
        Cmd::Examples { name, common } => (examples::run(name, common.out.as_deref().filter(|_| name == "fixtures"))?, common),
    };
    let mut common = common.clone();
    if matches!(cmd, Cmd::Examples { name, .. } if name == "fixtures") {
        common.out = None;
    }
    Ok((out, Some(common)))
}

fn validate(c: &Common) -> Result<Outcome> {
    let (input, inst) = need_input(c)?;
    let report = match input {
        Input::VCat(cat) => cat.check_axioms()?,
        Input::SVCat(sv) => sv.check_axioms()?,
        other => io::templicial(other, inst, c.dim)?.validate()?,
    };
    let mut payload = report.to_json();
    payload["ok"] = json!(report.is_ok());
    Ok((envelope("report", payload), report.is_ok()))
}

fn categorify_cmd(c: &Common) -> Result<Outcome> {
    let x = need_templicial(c)?;
    let n_max = c.nmax.unwrap_or(2);
    let cx = categorify(&x, n_max, c.bead_budget)?;
    let s = x.size();
    let mut payload = json!({"truncated": cx.truncated(), "colimit": cx.is_colimit()});
    match hom_pair(c, s)? {
        Some((a, b)) => {
            payload["levels"] = json!((0..=n_max).map(|n| hom_json(x.cosmos(), cx.level(n).hom(a, b))).collect::<Vec<_>>());
        }
        None => {
            let sizes: Vec<Vec<usize>> = (0..=n_max).map(|n| cx.level(n).homs().iter().map(VObj::len).collect()).collect();
            payload["levels"] = json!(sizes);
            if let Ok(sv) = cx.svcat() {
                payload["svcat"] = sv.to_json();
            }
        }
    }
    Ok((envelope("categorified", payload), true))
}

fn ez(c: &Common) -> Result<Outcome> {
    let x = need_templicial(c)?;
    let payload = match x.nondegenerates()? {
        NondegResult::Missing { n, a, b, reason } => json!({
            "has_nondegenerates": false,
            "missing": {"n": n, "a": a, "b": b, "reason": reason},
        }),
        NondegResult::Found(nd) => {
            let total = |q: &templex::quiver::VQuiver| q.homs().iter().map(VObj::len).sum::<usize>();
            let mut levels = Vec::new();
            for n in 1..=x.dim() {
                let w = x.ez_decompose(&nd, n)?;
                let ez_sum: usize = w.surjections.iter().map(|f| total(&nd.nd[f.cod()])).sum();
                levels.push(json!({
                    "n": n,
                    "total": total(x.x(n)),
                    "nondegenerate": total(&nd.nd[n]),
                    "ez_sum": ez_sum,
                    "iso": w.iso,
                }));
            }
            json!({"has_nondegenerates": true, "levels": levels})
        }
    };
    Ok((envelope("ez", payload), true))
}

fn necklace_tool(tool: &NeckTool) -> Result<Outcome> {
    let payload = match tool {
        NeckTool::Wedge { t, u } => necklace_json(&necklace::wedge(&parse_necklace(t)?, &parse_necklace(u)?)),
        NeckTool::Factor { src, dst, map } => {
            let (src, dst) = (parse_necklace(src)?, parse_necklace(dst)?);
            let f = NeckMap::new(src, dst, OrdMap::new(dst.p(), parse_list(map)?)?)?;
            let (active, inert) = necklace::active_inert_factor(&f);
            json!({"active": neckmap_json(&active), "inert": neckmap_json(&inert)})
        }
        NeckTool::Flankify { t, flag } => {
            let t = parse_necklace(t)?;
            let chain = flag.split('|').map(|s| parse_list(s).map(|v| set_from(&v))).collect::<Result<Vec<_>>>()?;
            let f = Flag::new(t, chain)?;
            let (g, counit) = necklace::flankify(&f);
            json!({"flag": flag_json(&g), "counit": neckmap_json(&counit)})
        }
        NeckTool::Enumerate { p, flags, flanked } => {
            let necks = necklace::enumerate_necklaces(*p);
            match flags {
                None => json!(necks.iter().map(necklace_json).collect::<Vec<_>>()),
                Some(n) => {
                    let all: Vec<Value> = necks
                        .iter()
                        .flat_map(|t| {
                            if *flanked {
                                necklace::enumerate_flanked_flags(t, *n)
                            } else {
                                necklace::enumerate_flags(t, *n)
                            }
                        })
                        .map(|f| flag_json(&f))
                        .collect();
                    json!(all)
                }
            }
        }
    };
    Ok((envelope("necklace", payload), true))
}

fn table(v: &Value) -> String {
    let payload = v.get("payload").unwrap_or(v);
    match payload.as_object() {
        Some(m) => m.iter().map(|(k, x)| format!("{k}: {x}\n")).collect(),
        None => format!("{payload}\n"),
    }
}

fn emit(v: &Value, common: Option<&Common>) -> Result<()> {
    let text = match common {
        Some(c) if c.table => table(v),
        _ => serde_json::to_string_pretty(v).expect("serializable") + "\n",
    };
    match common.and_then(|c| c.out.as_deref()) {
        Some(path) => fs::write(path, text).map_err(|e| Error::invalid(MODULE, "output", format!("{path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.cmd).and_then(|((v, ok), common)| emit(&v, common.as_ref()).map(|_| ok));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("{}", serde_json::to_string_pretty(&io::error_json(&e)).expect("serializable"));
            ExitCode::from(1)
        }
    }
}
