use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use num_bigint::BigInt;
use serde_json::Value;

use ratile_cli::problem::Problem;
use ratile_core::dynamics::{Address, SrsParam};
use ratile_core::exactnum::{embed_arch, to_field_vector, LaurentElem};
use ratile_core::tiles::{completion, srs_tile_point, TileContext};

fn problems() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

fn ratile(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ratile"));
    cmd.args(args).current_dir(problems());
    match threads {
        Some(t) => cmd.env("RATILE_THREADS", t),
        None => cmd.env_remove("RATILE_THREADS"),
    };
    cmd.output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_reports_flags_and_lattices() {
    let r = json(&ratile(&["analyze", "ex1.json"], None));
    assert_eq!(r["digits"]["is_standard"], true);
    assert_eq!(r["digits"]["m"], 0);
    assert_eq!(r["primitivity"]["primitivity"]["status"], "primitive");
    let lattices = r["lattices"].as_array().unwrap();
    assert_eq!(lattices.len(), 3);
    assert_eq!(lattices[2]["m"], 0);
    assert_eq!(lattices[2]["lattice"]["columns"], serde_json::json!([["2"]]));
    assert_eq!(r["expanding"]["expanding"], true);
    assert!(!r["expanding"]["table"].as_array().unwrap().is_empty());

    let r = json(&ratile(&["analyze", "ex3.json"], None));
    assert_eq!(r["digits"]["m"], 1);
    assert_eq!(r["digits"]["has_residue_system"], false);

    let r = json(&ratile(&["analyze", "three_halves_even.json"], None));
    assert_eq!(r["digits"]["is_standard"], true);
    assert_eq!(r["digits"]["minimal_m"], -1);
    assert!(r["multiplicity_hint"].is_string());

    let r = json(&ratile(&["analyze", "three_halves_fives.json"], None));
    assert_eq!(r["zcap_index"], 5);
}

#[test]
fn builtin_names_resolve() {
    let a = ratile(&["analyze", "ex2"], None);
    let b = ratile(&["analyze", "ex2.json"], None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes_follow_failure_class() {
    let out = ratile(&["verify", "invalid_digits.json"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("digits"));
    assert_eq!(ratile(&["analyze", "missing.json"], None).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let tight = dir.path().join("tight.json");
    std::fs::write(&tight, r#"{"coefficients": [3, 2, 2], "digits": ["0", "1", "2"], "limits": {"node_limit": 10}}"#)
        .unwrap();
    let out = ratile(&["tile", tight.to_str().unwrap(), "--kind", "g", "--depth", "12"], None);
    assert_eq!(out.status.code(), Some(3));

    let out = ratile(&["verify", "ex1.json", "--samples", "500", "--volume-depth", "16"], None);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["status"], "certified");
    assert_eq!(r["multiplicity"]["mode"], 1);
}

/// Re-evaluates every CSV row from its translate and address.
fn check_round_trip(file: &str, kind: &str, translates: &[&str], depth: usize) -> usize {
    let mut args = vec!["tile", file, "--kind", kind, "--depth"];
    let depth_s = depth.to_string();
    args.push(&depth_s);
    for t in translates {
        args.push("--translate");
        args.push(t);
    }
    let out = ratile(&args, None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let problem = Problem::load(&problems().join(file)).unwrap();
    let ctx = TileContext::new(&problem.spec, &problem.digits).unwrap();
    let (spec, digits) = (&ctx.spec, &ctx.digits);
    let n = spec.degree;
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(&headers[0], "kind");
    assert_eq!(headers.len(), 3 + n + 2);
    let mut rows = 0;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let arch: Vec<f64> = (0..n).map(|i| rec[3 + i].parse().unwrap()).collect();
        let expected: Vec<f64> = match kind {
            "srs" => {
                let z: Vec<BigInt> = rec[2].split(';').map(|c| c.parse().unwrap()).collect();
                srs_tile_point(&SrsParam::from_spec(spec), &z, depth)
                    .iter()
                    .map(|q| num_traits::ToPrimitive::to_f64(q).unwrap())
                    .collect()
            }
            _ => {
                let x: LaurentElem = rec[1].parse().unwrap();
                let addr = Address::decode(&rec[2]).unwrap();
                let mut p = &addr.tile_point(spec, digits) + &to_field_vector(&x, spec);
                if kind == "g" {
                    let last = *addr.word.last().unwrap();
                    p = &p + &completion(spec, &digits.vectors[last]).mul_alpha_pow(-(depth as i32), spec);
                }
                embed_arch(&p, &ctx.emb)
            }
        };
        for (a, e) in arch.iter().zip(&expected) {
            assert!((a - e).abs() <= 1e-9, "row {rows}: {a} vs {e}");
        }
        rows += 1;
    }
    rows
}

#[test]
fn csv_rows_round_trip() {
    assert_eq!(check_round_trip("ex1.json", "f", &["0", "-a + 1"], 5), 2 * 243);
    assert!(check_round_trip("ex1.json", "g", &["0", "2"], 10) > 2);
    assert!(check_round_trip("ex2.json", "g", &["0", "2*a + 2"], 8) > 2);
    assert!(check_round_trip("ex2.json", "srs", &["0,0", "1,-1"], 6) > 2);
    assert!(check_round_trip("ex3.json", "g", &["0", "3"], 10) > 2);
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let runs: [&[&str]; 3] = [
        &["tile", "ex2.json", "--kind", "g", "--depth", "14", "--translate", "0", "--translate", "4"],
        &["tile", "ex3.json", "--kind", "g", "--depth", "16", "--format", "svg"],
        &["verify", "ex2.json", "--samples", "1000", "--volume-depth", "20", "--seed", "9"],
    ];
    for args in runs {
        let one = ratile(args, Some("1"));
        let many = ratile(args, Some("4"));
        assert!(one.status.success());
        assert_eq!(one.stdout, many.stdout, "{args:?}");
    }
}

#[test]
fn svg_has_one_layer_per_translate() {
    let out = ratile(
        &[
            "tile",
            "ex1.json",
            "--kind",
            "f",
            "--depth",
            "4",
            "--format",
            "svg",
            "--translate",
            "0",
            "--translate",
            "1",
            "--translate",
            "2",
        ],
        None,
    );
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert_eq!(svg.matches("class=\"tile\"").count(), 3);
}

#[test]
fn figure_for_fig4_writes_ten_layers() {
    let dir = tempfile::tempdir().unwrap();
    let r = json(&ratile(&["figure", "ex3", "--out", dir.path().to_str().unwrap(), "--depth", "8"], None));
    let entries = r.as_array().unwrap();
    assert_eq!(entries.len(), 2);
    for e in entries {
        assert_eq!(e["layers"], 10);
        assert_eq!(e["within_bounds"], true);
        assert!(dir.path().join(e["file"].as_str().unwrap()).exists());
    }
    assert!(dir.path().join("figures.json").exists());
}
