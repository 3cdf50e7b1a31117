use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_planewave-qm");

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(BIN)
        .args(args)
        .arg("--out-dir")
        .arg(dir)
        .env_remove("PLANEWAVE_QM_THREADS")
        .output()
        .unwrap()
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn harmonic_energies_in_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["solve", "--problem", "schrodinger", "--potential", "harmonic"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(dir.path());
    assert_eq!(r["passed"], true);
    let states = r["states"].as_array().unwrap();
    assert_eq!(states.len(), 10);
    for (n, s) in states.iter().enumerate() {
        let e = s["energy_hartree"].as_f64().unwrap();
        assert!((e - (n as f64 + 0.5)).abs() < 1e-8 * (n as f64 + 0.5), "n = {n}: {e}");
        assert!(s["relation_residual"].as_f64().unwrap() < 1e-8);
        assert_eq!(s["dominant_modes"].as_array().unwrap().len(), 5);
    }
}

#[test]
fn hydrogen_ev_and_momdist_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["solve", "--problem", "hydrogen-radial", "--count", "2", "--output", "report-json,momdist-csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(dir.path());
    let ev = r["states"][0]["energy_ev"].as_f64().unwrap();
    assert!((ev + 13.6).abs() < 0.14, "{ev}");
    let e1 = r["states"][1]["energy_hartree"].as_f64().unwrap();
    assert!((e1 + 0.125).abs() < 0.125 * 1e-2, "{e1}");
    assert!(r["momentum_distribution"]["max_rel_error"].as_f64().unwrap() < 1e-3);
    let csv = std::fs::read_to_string(dir.path().join("momdist.csv")).unwrap();
    assert!(csv.starts_with("p,amplitude,density,closed_form,rel_error\n"));
    assert_eq!(csv.lines().count(), 401);
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["solve", "--grid", "1,100,20"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("power of two"), "{}", stderr(&out));

    let out = run(&["solve", "--potential", "harmonic:omegaa=2"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("omegaa"), "{}", stderr(&out));

    let out = run(&["solve", "--problem", "dirac", "--grid", "3,8,10"], dir.path());
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["momdist", "--problem", "dirac"], dir.path());
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["solve", "--mass", "-1"], dir.path());
    assert_eq!(out.status.code(), Some(1));

    let out = Command::new(BIN).arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(BIN).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(!dir.path().join("report.json").exists());
}

#[test]
fn config_file_unknown_key_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "problem = \"schrodinger\"\nfrequency = 3\n").unwrap();
    let out = run(&["solve", "--config", bad.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("frequency"), "{}", stderr(&out));

    let good = dir.path().join("good.toml");
    std::fs::write(&good, "potential = \"harmonic:omega=2\"\ngrid = \"1,64,16\"\ncount = 3\n").unwrap();
    let out = run(&["solve", "--config", good.to_str().unwrap(), "--count", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(dir.path());
    let states = r["states"].as_array().unwrap();
    assert_eq!(states.len(), 2);
    assert_eq!(r["metadata"]["config"]["grid"]["n"], 64);
    // omega = 2 from the file
    let e0 = states[0]["energy_hartree"].as_f64().unwrap();
    assert!((e0 - 1.0).abs() < 1e-8, "{e0}");
}

#[test]
fn verify_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["solve", "--count", "3", "--output", "states-csv"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let states = dir.path().join("states.csv");

    let out = run(&["verify", "--states", states.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(report(dir.path())["states"].as_array().unwrap().len(), 3);

    // shift the stored energy of state 0 by 0.1 hartree
    let text = std::fs::read_to_string(&states).unwrap();
    let e0 = text.lines().nth(1).unwrap().split(',').nth(1).unwrap().to_string();
    let shifted = format!("{:.16e}", e0.parse::<f64>().unwrap() + 0.1);
    let tampered: String = text
        .lines()
        .map(|l| {
            if l.starts_with("0,") {
                l.replacen(&e0, &shifted, 1)
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    let bad = dir.path().join("tampered.csv");
    std::fs::write(&bad, tampered).unwrap();
    let out = run(&["verify", "--states", bad.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let r = report(dir.path());
    assert_eq!(r["passed"], false);
    let rel = r["states"][0]["relation_residual"].as_f64().unwrap();
    assert!((rel - 0.1).abs() < 1e-8, "{rel}");
    assert_eq!(r["states"][1]["passed"], true);

    // wrong grid for the stored coordinates
    let out = run(&["verify", "--grid", "1,128,30", "--states", states.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let garbage = dir.path().join("garbage.csv");
    std::fs::write(&garbage, "hello\n").unwrap();
    let out = run(&["verify", "--states", garbage.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dirac_free_verify_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "verify",
            "--problem",
            "dirac",
            "--potential",
            "dirac-free",
            "--grid",
            "1,64,20",
            "--output",
            "report-json,amplitudes-csv,states-csv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let mc2 = planewave_core::SPEED_OF_LIGHT.powi(2);
    let r = report(dir.path());
    for s in r["states"].as_array().unwrap() {
        assert!(s["pointwise_max"].as_f64().unwrap() < 1e-10 * mc2);
        assert_eq!(s["branch"], "positive");
    }
    let e0 = r["states"][0]["energy_hartree"].as_f64().unwrap();
    assert!(((e0 - mc2) / mc2).abs() < 1e-12);
    let amps = std::fs::read_to_string(dir.path().join("amplitudes.csv")).unwrap();
    assert!(amps.starts_with("state,mode,k,p,re0,im0"));

    let states = dir.path().join("states.csv");
    let again = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "verify",
            "--problem",
            "dirac",
            "--potential",
            "dirac-free",
            "--grid",
            "1,64,20",
            "--states",
            states.to_str().unwrap(),
        ],
        again.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn momdist_analytic_passes_tighter_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["momdist", "--analytic", "--output", "report-json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let m = &report(dir.path())["momentum_distribution"];
    assert_eq!(m["analytic_state"], true);
    assert!(m["max_rel_error"].as_f64().unwrap() < 1e-6);
    assert!(dir.path().join("momdist.csv").exists());
}

#[test]
fn three_dimensional_amplitudes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "solve",
            "--potential",
            "soft-coulomb",
            "--grid",
            "3,8,12",
            "--count",
            "2",
            "--output",
            "amplitudes-csv,states-csv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let amps = std::fs::read_to_string(dir.path().join("amplitudes.csv")).unwrap();
    assert!(amps.starts_with("state,mode,kx,ky,kz,re,im,weight\n"));
    assert_eq!(amps.lines().count(), 1 + 2 * 512);
    let total: f64 = amps
        .lines()
        .skip(1)
        .filter(|l| l.starts_with("0,"))
        .map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-10);
}

#[test]
fn thread_setting_does_not_change_results() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for (dir, threads) in [(&a, "1"), (&b, "3")] {
        let out = Command::new(BIN)
            .args(["solve", "--output", "states-csv", "--out-dir"])
            .arg(dir.path())
            .env("PLANEWAVE_QM_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    }
    let read = |d: &Path| std::fs::read(d.join("states.csv")).unwrap();
    assert_eq!(read(a.path()), read(b.path()));

    let out = Command::new(BIN)
        .args(["solve", "--out-dir"])
        .arg(a.path())
        .env("PLANEWAVE_QM_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn demo_is_seed_deterministic() {
    let root = tempfile::tempdir().unwrap();
    let demo = |name: &str, seed: &str| {
        let dir = root.path().join(name);
        let out = Command::new(BIN)
            .args(["demo", "--seed", seed, "--out-dir"])
            .arg(&dir)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        assert!(String::from_utf8_lossy(&out.stdout).contains("pass"));
        std::fs::read(dir.join("gamma-squaring.csv")).unwrap()
    };
    let (a, b, c) = (demo("a", "5"), demo("b", "5"), demo("c", "6"));
    assert_eq!(a, b);
    assert_ne!(a, c);
}
