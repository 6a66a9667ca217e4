//! One PASS/FAIL line per acceptance criterion, with timings. Run with
//! `cargo test -p cdga-cli --test acceptance -- --nocapture` to see them.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use cdga::conf::{conf2_disk_bundle, conf2_punctured};
use cdga::fixtures::{self, oriented, sphere};
use cdga::testkit::{invariants, Gen};
use cdga::Vector;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn cdga(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_cdga"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn betti(report: &Value) -> Vec<u64> {
    report["betti"]
        .as_array()
        .map(|a| a.iter().filter_map(Value::as_u64).collect())
        .unwrap_or_default()
}

fn sphere_betti(n: usize) -> Vec<u64> {
    let mut b = vec![0; n + 1];
    b[0] = 1;
    b[n] = 1;
    b
}

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn hopf_bundle() -> Result<String, String> {
    let s4 = fixture("s4.toml");
    let r = cdga(&["conf2-disk-bundle", "--base", s4.to_str().unwrap(), "--euler", "x", "--rank", "4", "--massey", "auto"])?;
    check!(betti(&r) == [1, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 1], "betti {:?}", betti(&r));
    let m = &r["massey"][0];
    check!(m["degree"] == 11, "no Massey product in degree 11: {m}");
    check!(m["defined"] == true && m["nontrivial"] == true, "Massey product trivial: {m}");
    check!(m["indeterminacy"].as_array().is_some_and(Vec::is_empty), "indeterminacy {}", m["indeterminacy"]);
    check!(m["representative"].is_string(), "no representative");
    Ok(format!("triple {} represents {}", m["triple"], m["representative"]))
}

fn trivial_bundle() -> Result<String, String> {
    let (s4, pres) = (fixture("s4.toml"), fixture("presentation_s4xr4.toml"));
    let r = cdga(&[
        "conf2-disk-bundle",
        "--base",
        s4.to_str().unwrap(),
        "--euler",
        "0",
        "--rank",
        "4",
        "--check-presentation",
        pres.to_str().unwrap(),
    ])?;
    check!(betti(&r) == [1, 0, 0, 0, 2, 0, 0, 1, 1, 0, 0, 1], "betti {:?}", betti(&r));
    check!(r["presentation"]["passed"] == true, "presentation: {}", r["presentation"]);
    Ok("presentation ⟨x, x', u | x², x'², ux - ux'⟩ verified".into())
}

fn punctured_spheres() -> Result<String, String> {
    for n in [4, 6, 8] {
        let path = fixture(&format!("s{n}.toml"));
        let r = cdga(&["conf2-punctured", "--manifold", path.to_str().unwrap()])?;
        check!(betti(&r) == sphere_betti(n - 1), "n = {n}: betti {:?}", betti(&r));
    }
    Ok("n = 4, 6, 8".into())
}

fn disk_complements() -> Result<String, String> {
    for n in 3..=8 {
        let dim = n.to_string();
        let interior = cdga(&["complement", "--dim", &dim, "--point", "interior"])?;
        check!(betti(&interior) == sphere_betti(n - 1), "interior, n = {n}: {:?}", betti(&interior));
        let boundary = cdga(&["complement", "--dim", &dim, "--point", "boundary"])?;
        check!(betti(&boundary) == [1], "boundary, n = {n}: {:?}", betti(&boundary));
    }
    Ok("n = 3..8".into())
}

fn two_routes() -> Result<String, String> {
    let bases = [
        ("S4", sphere(4), 4, vec!["x", "-2*x", "0"]),
        ("S3xS3", oriented(fixtures::S3_X_S3), 6, vec!["y*y'", "3*y*y'", "0"]),
        ("S4xS4", oriented(fixtures::S4_X_S4), 4, vec!["a", "b", "a + b", "0"]),
    ];
    let mut count = 0;
    for (name, q, rank, eulers) in bases {
        let pres = fixtures::presented(match name {
            "S4" => fixtures::S4,
            "S3xS3" => fixtures::S3_X_S3,
            _ => fixtures::S4_X_S4,
        });
        for e in eulers {
            let class = pres.element(e).map_err(|err| err.to_string())?;
            let m = conf2_disk_bundle(&q, &class, rank).map_err(|err| format!("{name}, e = {e}: {err}"))?;
            check!(
                m.model.algebra().matches_by_name(m.direct.algebra()),
                "{name}, e = {e}: structure constants differ"
            );
            count += 1;
        }
    }
    Ok(format!("{count} base/Euler class pairs"))
}

fn invariant_suite() -> Result<String, String> {
    const SEEDS: u64 = 16;
    let mut cases = 0;
    for (name, check) in invariants::ALL {
        for seed in 0..SEEDS {
            check(&mut Gen::new(0xC0FFEE ^ seed)).map_err(|e| format!("{name}, seed {seed}: {e}"))?;
            cases += 1;
        }
    }
    check!(cases >= 200, "only {cases} cases");
    Ok(format!("{cases} cases over {} invariants", invariants::ALL.len()))
}

fn squares() -> Result<String, String> {
    let s4 = sphere(4);
    let x = s4.algebra().element("x").unwrap();
    let mut checks = Vec::new();
    for (label, e) in [("Dη", x), ("S4xR4", Vector::zero())] {
        let m = conf2_disk_bundle(&s4, &e, 4).map_err(|err| err.to_string())?;
        checks.push((label.to_string(), m.model.square.expect("pretty route checks the square")));
    }
    let punctured = [
        ("S4", sphere(4)),
        ("S5", sphere(5)),
        ("S3xS3", oriented(fixtures::S3_X_S3)),
        ("S4xS4", oriented(fixtures::S4_X_S4)),
    ];
    for (label, pd) in punctured {
        let (_, m) = conf2_punctured(&pd).map_err(|err| err.to_string())?;
        checks.push((format!("punctured {label}"), m.square.expect("pretty route checks the square")));
    }
    let mut notes = Vec::new();
    for (label, sq) in &checks {
        check!(sq.is_pinpointed(), "{label}: square neither commutes nor differs by a sign: {:?}", sq.degrees);
        if !sq.commutes() {
            notes.push(format!("{label} off by a sign in degrees {:?}", sq.discrepancies()));
        }
    }
    if notes.is_empty() {
        Ok(format!("commutes on all {} examples", checks.len()))
    } else {
        Ok(notes.join("; "))
    }
}

#[test]
fn acceptance_criteria() {
    type Criterion = (u32, &'static str, fn() -> Result<String, String>, Duration);
    let criteria: [Criterion; 7] = [
        (1, "quaternionic Hopf bundle", hopf_bundle, Duration::from_secs(1)),
        (2, "trivial bundle S4 x R4", trivial_bundle, Duration::from_secs(1)),
        (3, "punctured spheres", punctured_spheres, Duration::from_secs(1)),
        (4, "disk minus a point", disk_complements, Duration::from_secs(1)),
        (5, "two routes agree", two_routes, Duration::from_secs(5)),
        (6, "invariant suite", invariant_suite, Duration::from_secs(60)),
        (7, "diagonal square", squares, Duration::from_secs(1)),
    ];
    let mut failed = Vec::new();
    for (id, name, run, budget) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let verdict = match &result {
            Ok(_) if elapsed > budget => Err(format!("took {elapsed:?}, budget {budget:?}")),
            Ok(note) => Ok(note.clone()),
            Err(e) => Err(e.clone()),
        };
        match verdict {
            Ok(note) => println!("PASS {id} {name} ({} ms): {note}", elapsed.as_millis()),
            Err(e) => {
                println!("FAIL {id} {name} ({} ms): {e}", elapsed.as_millis());
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
