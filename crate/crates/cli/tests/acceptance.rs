//! Acceptance suite: one line per criterion, then a nonzero exit if any
//! criterion failed.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use gordan_core::census::{realize, RealizeOptions};
use gordan_core::export::off_counts;
use gordan_core::labels::GORDAN_RELATIVES;
use gordan_core::linalg::coplanar;
use gordan_core::realization::RealizationFamily;
use gordan_core::{build_map, h3, hexad, ConfigKind, FieldScalar, FlagSystem, Vec3};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn gordan(args: &[&str]) -> (Output, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_gordan")).args(args).output().expect("run gordan");
    (out, start.elapsed())
}

fn json_of(out: &Output) -> Result<Value, String> {
    serde_json::from_slice(&out.stdout).map_err(|e| format!("bad JSON on stdout: {e}"))
}

fn build(p: usize, q: usize, r: usize) -> FlagSystem {
    build_map(p, q, r, 100_000).expect("presentation enumerates")
}

fn scalar(v: &Value) -> FieldScalar {
    v.as_str().expect("scalar as string").parse().expect("scalar parses")
}

fn golden() -> FieldScalar {
    "(1+rt5)/2".parse().unwrap()
}

fn two_plus_root5() -> FieldScalar {
    "2+rt5".parse().unwrap()
}

/// Output of `realize all`, produced once and shared by several criteria.
struct RealizeRun {
    report: Value,
    elapsed: Duration,
    dir: tempfile::TempDir,
    repeat: tempfile::TempDir,
}

fn realize_all_run() -> Result<RealizeRun, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let repeat = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (out, elapsed) = gordan(&["realize", "all", "--out", dir.path().to_str().unwrap()]);
    ensure!(out.status.success(), "realize all exited with {:?}", out.status.code());
    let (again, _) = gordan(&["realize", "all", "--out", repeat.path().to_str().unwrap()]);
    ensure!(again.status.success(), "second realize all failed");
    ensure!(again.stdout == out.stdout, "realize all is not deterministic on stdout");
    Ok(RealizeRun { report: json_of(&out)?, elapsed, dir, repeat })
}

fn criterion_1() -> Check {
    let (out, elapsed) = gordan(&["build", "5", "4", "6"]);
    ensure!(out.status.success(), "build exited with {:?}", out.status.code());
    let v = json_of(&out)?;
    ensure!(v["flags"] == 240 && v["aut_order"] == 240, "flags {} aut_order {}", v["flags"], v["aut_order"]);
    ensure!(v["schema"].is_string(), "missing schema field");
    ensure!(elapsed < Duration::from_secs(1), "build took {elapsed:?}");
    Ok(())
}

fn criterion_2() -> Check {
    let expected: BTreeSet<String> =
        ["{5,4}_6", "{4,5}_6", "{6,4}_5", "{4,6}_5", "{6,5}_4", "{5,6}_4"].iter().map(|s| s.to_string()).collect();
    let (out, _) = gordan(&["hexad", "5", "4", "6"]);
    ensure!(out.status.success(), "hexad exited with {:?}", out.status.code());
    let v = json_of(&out)?;
    let members = v["members"].as_array().ok_or("no members")?;
    ensure!(members.len() == 6, "{} members", members.len());
    let types: BTreeSet<String> =
        members.iter().map(|m| m["invariants"]["type_label"].as_str().unwrap_or("").to_string()).collect();
    ensure!(types == expected, "types {types:?}");
    ensure!(members.iter().all(|m| m["invariants"]["aut_order"] == 240), "aut_order differs from 240");

    let maps = hexad(&build(5, 4, 6)).map_err(|e| e.to_string())?;
    for (i, a) in maps.iter().enumerate() {
        for b in &maps[i + 1..] {
            ensure!(!a.map.is_isomorphic(&b.map), "{} and {} are isomorphic", a.invariants.type_label, b.invariants.type_label);
        }
    }
    Ok(())
}

fn criterion_3() -> Check {
    let table = [
        ((5, 4, 6), [30, 60, 24], true, 4),
        ((4, 5, 6), [24, 60, 30], true, 4),
        ((6, 4, 5), [30, 60, 20], false, 12),
        ((4, 6, 5), [20, 60, 30], false, 12),
        ((6, 5, 4), [24, 60, 20], true, 9),
        ((5, 6, 4), [20, 60, 24], true, 9),
    ];
    for ((p, q, r), f, orientable, genus) in table {
        let inv = build(p, q, r).invariants();
        ensure!(inv.f_vector == f, "{{{p},{q}}}_{r}: f-vector {:?}", inv.f_vector);
        ensure!(inv.orientable == orientable, "{{{p},{q}}}_{r}: orientable {}", inv.orientable);
        ensure!(inv.genus == genus, "{{{p},{q}}}_{r}: genus {}", inv.genus);
    }
    Ok(())
}

fn criterion_4(run: &RealizeRun) -> Check {
    // (type, f-vector, vertex orbits, census name, planar faces)
    let table: Vec<(&str, [u64; 3], u64, &str, &str)> = vec![
        ("{4,5}_6", [24, 60, 30], 2, "R4.2", "yes-for-one"),
        ("{6,5}_4", [24, 60, 20], 2, "R9.16*", "yes-for-one"),
        ("{4,5}_6", [24, 60, 30], 2, "R4.2", "no"),
        ("{6,5}_4", [24, 60, 20], 2, "R9.16*", "no"),
        ("{4,6}_5", [20, 60, 30], 1, "N12.1", "no"),
        ("{5,6}_4", [20, 60, 24], 1, "R9.16", "yes"),
        ("{6,4}_5", [30, 60, 20], 1, "N12.1*", "no"),
        ("{5,4}_6", [30, 60, 24], 1, "R4.2*", "yes"),
    ];
    let rows = run.report["census"]["rows"].as_array().ok_or("no census rows")?;
    ensure!(rows.len() == 8, "{} rows", rows.len());
    let families = rows.iter().filter(|r| r["family"] == true).count();
    ensure!(families == 4 && rows.len() - families == 4, "{families} families");
    let key = |t: &str, f: [u64; 3], o: u64, l: &str, pl: &str| format!("{t} {f:?} {o} {l} {pl}");
    let mut got: Vec<String> = rows
        .iter()
        .map(|r| {
            let f: Vec<u64> = r["f_vector"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
            key(
                r["target"].as_str().unwrap(),
                [f[0], f[1], f[2]],
                r["vertex_orbits"].as_u64().unwrap(),
                r["census_label"].as_str().unwrap(),
                r["planar_faces"].as_str().unwrap(),
            )
        })
        .collect();
    let mut want: Vec<String> = table.iter().map(|&(t, f, o, l, pl)| key(t, f, o, l, pl)).collect();
    got.sort();
    want.sort();
    ensure!(got == want, "rows differ from the table:\n  got  {got:?}\n  want {want:?}");
    for r in rows {
        let two = r["configuration"] == "two-icosahedra";
        ensure!(r["family"] == two, "family flag disagrees with the configuration");
    }
    ensure!(run.elapsed < Duration::from_secs(300), "realize all took {:?}", run.elapsed);

    // Meshes: counts agree with the reports and repeated runs are identical.
    let mut meshes = 0;
    for entry in std::fs::read_dir(run.dir.path()).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let name = path.file_name().unwrap().to_owned();
        let text = std::fs::read(&path).map_err(|e| e.to_string())?;
        let other = std::fs::read(run.repeat.path().join(&name)).map_err(|e| e.to_string())?;
        ensure!(text == other, "{name:?} differs between runs");
        if path.extension().is_some_and(|e| e == "off") {
            meshes += 1;
            let counts = off_counts(std::str::from_utf8(&text).unwrap()).ok_or("unreadable OFF")?;
            let [p, q, r]: [usize; 3] = mesh_type(&path)?;
            let inv = build(p, q, r).invariants();
            ensure!(counts == inv.f_vector, "{name:?}: counts {counts:?}");
        }
    }
    ensure!(meshes == 8, "{meshes} OFF files");

    let (none, _) = gordan(&["realize", "dodecahedron", "{5,4}_6"]);
    ensure!(none.status.code() == Some(4), "empty search exit code {:?}", none.status.code());
    Ok(())
}

/// `(p, q, r)` from a mesh file name `<config>-p-q-r-k.off`.
fn mesh_type(path: &Path) -> Result<[usize; 3], String> {
    let stem = path.file_stem().unwrap().to_str().unwrap();
    let parts: Vec<&str> = stem.rsplitn(5, '-').collect();
    let n = |i: usize| parts[i].parse::<usize>().map_err(|e| format!("{stem}: {e}"));
    Ok([n(3)?, n(2)?, n(1)?])
}

fn criterion_5(run: &RealizeRun) -> Check {
    let polys = run.report["polyhedra"].as_array().ok_or("no polyhedra")?;
    ensure!(polys.len() == 8, "{} polyhedra", polys.len());
    for p in polys {
        let c = &p["certificate"];
        ensure!(
            c["aut_order"] == 240 && c["symmetry_order"] == 120 && c["index"] == 2,
            "{}: certificate {c}",
            p["target"]
        );
    }
    Ok(())
}

fn criterion_6(run: &RealizeRun) -> Check {
    let families: Vec<&Value> =
        run.report["polyhedra"].as_array().unwrap().iter().filter(|p| p["family"] == true).collect();
    ensure!(families.len() == 4, "{} families", families.len());
    let mut found = Vec::new();
    for f in &families {
        let ratios: Vec<FieldScalar> = f["planarity"]["ratios"].as_array().unwrap().iter().map(scalar).collect();
        ensure!(ratios.len() <= 1, "{}: ratios {ratios:?}", f["target"]);
        found.extend(ratios);
    }
    found.sort();
    ensure!(found == vec![golden(), two_plus_root5()], "ratios {found:?}");

    // Exact confirmation on the templates themselves.
    for target in [(4, 5, 6), (6, 5, 4)] {
        let outcome = realize(ConfigKind::TwoIcosahedra, target, &RealizeOptions::default()).map_err(|e| e.to_string())?;
        let mut planar_families = 0;
        for r in &outcome.realizations {
            let fam = RealizationFamily::from_found(&r.found, target);
            let analysis = fam.planarity().map_err(|e| e.to_string())?;
            let minors = fam.planarity_minors().map_err(|e| e.to_string())?;
            for l in &analysis.planar_lambdas {
                ensure!(minors.iter().all(|m| m.eval(l).is_zero()), "minor nonzero at {l}");
                ensure!(fam.is_planar_at(l).unwrap(), "not planar at {l}");
            }
            ensure!(analysis.irrational_roots.is_empty(), "unexpected roots {:?}", analysis.irrational_roots);
            ensure!(analysis.admissible_real_roots == analysis.planar_lambdas.len(), "root count mismatch");
            if !analysis.planar_lambdas.is_empty() {
                planar_families += 1;
            }
        }
        ensure!(planar_families == 1, "{target:?}: {planar_families} planar families");
    }

    // The planar member is flagged when asked for directly.
    let (out, _) = gordan(&["realize", "two-icosahedra", "--lambda", "(1+rt5)/2", "{4,5}_6"]);
    ensure!(out.status.success(), "realize at the golden ratio failed");
    let v = json_of(&out)?;
    let flagged = v["polyhedra"].as_array().unwrap().iter().filter(|p| p["planar_faces"] == true).count();
    ensure!(flagged == 1, "{flagged} planar members at the golden ratio");
    Ok(())
}

fn criterion_7() -> Check {
    let options = RealizeOptions::default();
    let squares = realize(ConfigKind::TwoIcosahedra, (4, 5, 6), &options).map_err(|e| e.to_string())?;
    let hexagons = realize(ConfigKind::TwoIcosahedra, (6, 5, 4), &options).map_err(|e| e.to_string())?;
    ensure!(squares.realizations.len() == 2 && hexagons.realizations.len() == 2, "expected two of each");
    let mut used = BTreeSet::new();
    for s in &squares.realizations {
        let sp = &s.found.polyhedron;
        let partner = hexagons
            .realizations
            .iter()
            .position(|h| h.found.polyhedron.edges == sp.edges && h.found.polyhedron.vertices == sp.vertices)
            .ok_or("a {4,5}_6 result has no partner with the same edges")?;
        ensure!(used.insert(partner), "two results share a partner");
        let (ms, _) = sp.flag_system().map_err(|e| e.to_string())?;
        let (mh, _) = hexagons.realizations[partner].found.polyhedron.flag_system().map_err(|e| e.to_string())?;
        ensure!(ms.petrie().map_err(|e| e.to_string())?.is_isomorphic(&mh), "partners are not Petrie duals");
    }
    Ok(())
}

fn criterion_8(run: &RealizeRun) -> Check {
    let polys = run.report["polyhedra"].as_array().unwrap();
    for p in polys {
        let target = p["target"].as_str().unwrap();
        let classes = p["face_classes"].as_array().unwrap();
        let summary: Vec<(u64, String, u64, String)> = classes
            .iter()
            .map(|c| {
                let center = &c["center"];
                let kind = match center["sides"].as_u64() {
                    Some(s) => format!("{}-{s}", center["kind"].as_str().unwrap()),
                    None => center["kind"].as_str().unwrap().to_string(),
                };
                let shape = match &c["shape"] {
                    Value::String(s) => s.clone(),
                    other if other["regular"]["star"] == true => "pentagram".into(),
                    _ => "pentagon".into(),
                };
                (c["faces"].as_u64().unwrap(), kind, c["targets_hit"].as_u64().unwrap(), shape)
            })
            .collect();
        let config = p["configuration"].as_str().unwrap();
        let ok = match (config, target) {
            ("two-icosahedra", "{4,5}_6") => summary.iter().all(|s| s.0 == 30 && s.1 == "edge-midpoint" && s.2 == 30),
            ("two-icosahedra", "{6,5}_4") => summary.iter().all(|s| s.0 == 20 && s.1 == "face-center-3" && s.2 == 20),
            ("icosidodecahedron", "{6,4}_5") => summary.iter().all(|s| s.0 == 20 && s.1 == "face-center-3" && s.2 == 20),
            ("dodecahedron", "{4,6}_5") => summary.iter().all(|s| s.0 == 30 && s.1 == "edge-midpoint" && s.2 == 30),
            ("dodecahedron", "{5,6}_4") | ("icosidodecahedron", "{5,4}_6") => {
                let shapes: BTreeSet<&str> = summary.iter().map(|s| s.3.as_str()).collect();
                summary.len() == 2
                    && summary.iter().all(|s| s.0 == 12 && s.1 == "face-center-5" && s.2 == 12)
                    && shapes == BTreeSet::from(["pentagon", "pentagram"])
            }
            _ => false,
        };
        ensure!(ok, "{target} on {config}: {summary:?}");
        if config != "two-icosahedra" {
            ensure!(p["edge_traversal"] == true, "{target} on {config}: edges do not traverse pentagons");
        }
    }
    Ok(())
}

/// Random connected map: four flags per edge, s1 a random matching that
/// never stays within one edge, then a random relabeling.
fn random_map(rng: &mut ChaCha8Rng, edges: usize) -> FlagSystem {
    let n = 4 * edges;
    let s0: Vec<usize> = (0..n).map(|x| x ^ 1).collect();
    let s2: Vec<usize> = (0..n).map(|x| x ^ 2).collect();
    loop {
        let mut flags: Vec<usize> = (0..n).collect();
        flags.shuffle(rng);
        let mut s1 = vec![usize::MAX; n];
        let mut complete = true;
        while let Some(x) = flags.pop() {
            match flags.iter().position(|&y| y / 4 != x / 4) {
                Some(pos) => {
                    let y = flags.swap_remove(pos);
                    s1[x] = y;
                    s1[y] = x;
                }
                None => {
                    complete = false;
                    break;
                }
            }
        }
        if !complete {
            continue;
        }
        if let Ok(map) = FlagSystem::new(s0.clone(), s1, s2.clone()) {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            return map.relabel(&perm);
        }
    }
}

fn random_scalar(rng: &mut ChaCha8Rng) -> FieldScalar {
    FieldScalar::from_ratios(rng.gen_range(-9..=9), rng.gen_range(1..=4), rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

fn random_point(rng: &mut ChaCha8Rng) -> Vec3 {
    Vec3::new(random_scalar(rng), random_scalar(rng), random_scalar(rng))
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f_7264_616e);
    for _ in 0..100 {
        let edges = rng.gen_range(2..=12);
        let m = random_map(&mut rng, edges);
        ensure!(m.dual().dual() == m, "dual is not an involution");
        let p = m.petrie().map_err(|e| e.to_string())?;
        ensure!(p.petrie().map_err(|e| e.to_string())? == m, "petrie is not an involution");
    }

    let group = h3();
    let icosahedron = gordan_core::symmetry::icosahedron_vertices();
    for i in 0..50 {
        let mut p = random_point(&mut rng);
        match i % 4 {
            1 => p.0[i % 3] = 0.into(),
            2 => p = icosahedron[i % 12].scale(&random_scalar(&mut rng)),
            3 => {
                p.0[0] = 0.into();
                p.0[1] = 0.into();
            }
            _ => {}
        }
        let orbit = group.orbit(&p).len();
        let stabilizer = group.stabilizer(&p).order();
        ensure!(orbit * stabilizer == 120, "orbit {orbit} × stabilizer {stabilizer} at {p:?}");
    }

    for i in 0..20 {
        let base = random_point(&mut rng);
        let (u, v) = (random_point(&mut rng), random_point(&mut rng));
        let mut pts: Vec<Vec3> = (0..4)
            .map(|_| &(&base + &u.scale(&random_scalar(&mut rng))) + &v.scale(&random_scalar(&mut rng)))
            .collect();
        if i % 2 == 1 {
            pts.push(random_point(&mut rng));
        }
        let g = &group.elements()[rng.gen_range(0..group.order())];
        let shift = random_point(&mut rng);
        let moved: Vec<Vec3> = pts.iter().map(|p| &g.apply(p) + &shift).collect();
        ensure!(coplanar(&pts) == coplanar(&moved), "coplanarity changed under a symmetry");
        ensure!(i % 2 == 1 || coplanar(&moved), "planar points reported non-coplanar");
    }

    for (p, q, r) in GORDAN_RELATIVES.iter().copied().chain([(3, 3, 4), (4, 3, 6), (3, 4, 6)]) {
        ensure!(build(p, q, r).is_orientable() == (r % 2 == 0), "{{{p},{q}}}_{r}: orientability");
    }
    Ok(())
}

fn main() {
    let run = realize_all_run();
    let shared = |f: fn(&RealizeRun) -> Check| {
        let run = &run;
        move || match run {
            Ok(r) => f(r),
            Err(e) => Err(format!("realize all: {e}")),
        }
    };
    let criteria: Vec<(&str, Box<dyn Fn() -> Check>)> = vec![
        ("group order 240 from build 5 4 6 in under a second", Box::new(criterion_1)),
        ("hexad of six pairwise non-isomorphic maps of order 240", Box::new(criterion_2)),
        ("f-vectors, orientability and genus of the six maps", Box::new(criterion_3)),
        ("realize all: four families and four individual polyhedra", Box::new(shared(criterion_4))),
        ("index-2 certificates (240, 120) for every polyhedron", Box::new(shared(criterion_5))),
        ("planarity ratios (1+rt5)/2 and 2+rt5, one family each", Box::new(shared(criterion_6))),
        ("Petrie pairing of the family members at lambda = 2", Box::new(criterion_7)),
        ("face-center classification and pentagon traversal", Box::new(shared(criterion_8))),
        ("randomized property suites", Box::new(criterion_9)),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(()) => println!("criterion {}: PASS  {name}", i + 1),
            Err(reason) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {reason}", i + 1);
            }
        }
    }
    if let Ok(r) = &run {
        println!("realize all wall time: {:.1?}", r.elapsed);
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
