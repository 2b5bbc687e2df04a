//! End-to-end checks of the binary: serialization round trips, loader
//! diagnostics and exit codes.

use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_operads"))
}

fn data(file: &str) -> String {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .join("data")
        .join(file)
        .to_str()
        .unwrap()
        .to_string()
}

#[test]
fn path_json_round_trips_bit_exactly() {
    let tree = "([1/2]([1/3](* *) *) *)";
    let out = bin()
        .args(["--format", "json", "path", "sigma", "--tree", tree])
        .output()
        .unwrap();
    assert!(out.status.success());
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(&out.stdout).unwrap();
    for at in ["0", "1/2", "7/6", "2", "7/3", "10/3"] {
        let via_file = bin()
            .args([
                "path",
                "eval",
                "--file",
                f.path().to_str().unwrap(),
                "--at",
                at,
            ])
            .output()
            .unwrap();
        assert!(via_file.status.success());
        let direct = bin()
            .args(["path", "sigma", "--tree", tree, "--at", at])
            .output()
            .unwrap();
        assert_eq!(via_file.stdout, direct.stdout, "at t = {at}");
    }
    // serializing again gives the same bytes
    let again = bin()
        .args(["--format", "json", "path", "sigma", "--tree", tree])
        .output()
        .unwrap();
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn monoid_loader_reports_axiom_violations() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    // g·g = g breaks the unit row for a two-element table with unit e
    write!(
        f,
        "elements = [\"e\", \"x\", \"y\"]\nunit = \"e\"\nmul = [[\"e\",\"x\",\"y\"],[\"x\",\"e\",\"x\"],[\"y\",\"x\",\"e\"]]\n"
    )
    .unwrap();
    let out = bin()
        .args([
            "bar",
            "retract",
            "--monoid",
            f.path().to_str().unwrap(),
            "--element",
            "[(* *); x, e]",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("associativity"), "stderr: {err}");
}

#[test]
fn validate_im_passes_for_shipped_monoids() {
    for file in ["z2.toml", "rz3.toml"] {
        let out = bin()
            .args(["bar", "validate-im", "--monoid", &data(file), "--max-leaves", "4"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{file}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("all conditions hold"));
    }
}

#[test]
fn svg_outputs_are_deterministic_and_well_formed() {
    for args in [
        vec!["tree", "render", "--tree", "([1/2](* *) * o)"],
        vec!["sc", "render", "--config", "op{[0,1/4];[1/2,1]}"],
        vec!["sc", "render", "--config", "op{[0,1/4];[1/2,1]}", "--symmetric"],
    ] {
        let a = bin().args(&args).output().unwrap();
        let b = bin().args(&args).output().unwrap();
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
        let text = String::from_utf8(a.stdout).unwrap();
        assert!(text.starts_with("<svg"));
        assert!(text.trim_end().ends_with("</svg>"));
    }
}

#[test]
fn verify_all_runs_clean_at_small_case_counts() {
    let out = bin()
        .args(["verify", "all", "--seed", "7", "--cases", "12"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().filter(|l| l.contains(": ok")).count() >= 17);
}
