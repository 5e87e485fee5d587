use std::path::PathBuf;
use std::process::{Command, Output};

fn cache_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("crlab-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn crlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crlab"))
        .args(args)
        .env("CRLAB_CORPUS_DIR", cache_dir())
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compare_cycles() {
    for mode in ["digest", "exact"] {
        let o = crlab(&["--mode", mode, "compare", "C6", "2C3"]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), "iso:false cr:true dcr:false wl2:false similar:true");
    }
}

#[test]
fn modes_agree_on_compare() {
    for (g, h) in [("C6", "P6"), ("K4", "K4"), ("bowtie", "C5"), ("EhEG", "C6"), ("P5", "E?Bw")] {
        let digest = stdout(&crlab(&["--mode", "digest", "compare", g, h]));
        let exact = stdout(&crlab(&["--mode", "exact", "compare", g, h]));
        assert_eq!(digest, exact, "{g} {h}");
    }
}

#[test]
fn verify_main_passes() {
    let o = crlab(&["verify", "main", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict=PASS"));
}

#[test]
fn unfold_triangle() {
    let o = crlab(&["unfold", "C3", "0", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("// nodes=5 depth=2 root=0"));
    assert_eq!(text.lines().filter(|l| l.contains(" -- ")).count(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(crlab(&["bogus"]).status.code(), Some(2));
    assert_eq!(crlab(&["compare", "C6", "not-a-graph!"]).status.code(), Some(2));
    assert_eq!(crlab(&["verify", "little", "--n", "2"]).status.code(), Some(2));
    let guard = crlab(&["--guard-nodes", "100", "unfold", "K4", "0", "8"]);
    assert_eq!(guard.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&guard.stderr).contains("guard"));
}

#[test]
fn structured_output_is_json_lines() {
    for args in [
        &["--format", "structured", "compare", "C6", "2C3"][..],
        &["--format", "structured", "verify", "harary", "--n", "5"],
        &["--format", "structured", "cr", "C6", "2C3", "P5"],
    ] {
        let o = crlab(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        for line in stdout(&o).lines() {
            serde_json::from_str::<serde_json::Value>(line).unwrap();
        }
    }
    let o = crlab(&["--format", "structured", "verify", "main", "--n", "5"]);
    let report: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(report["verdict"], "PASS");
    assert_eq!(report["corpus_size"], 34);
}

#[test]
fn output_does_not_depend_on_jobs() {
    let strip = |o: Output| {
        let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
        let mut v = v;
        v["runtime_ms"] = 0.into();
        v
    };
    let one = strip(crlab(&["--jobs", "1", "--format", "structured", "verify", "hierarchy", "--n", "6"]));
    let two = strip(crlab(&["--jobs", "2", "--format", "structured", "verify", "hierarchy", "--n", "6"]));
    assert_eq!(one, two);
}

#[test]
fn enumerate_and_deck() {
    let o = crlab(&["enumerate", "4"]);
    let graphs: Vec<String> = stdout(&o).lines().filter(|l| !l.starts_with('#')).map(String::from).collect();
    assert_eq!(graphs.len(), 11);
    let o = crlab(&["deck", "C6"]);
    assert_eq!(stdout(&o).lines().count(), 6);
}
