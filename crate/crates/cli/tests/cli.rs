use std::path::Path;
use std::process::{Command, Output};

fn terncode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_terncode")).args(args).env_remove("TERNCODE_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_code(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn classify_prints_summary() {
    let o = terncode(&["classify", "--maximal", "-n", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "classes=5 residual=0\n");
    let o = terncode(&["classify", "-n", "3", "-k", "1"]);
    assert_eq!(stdout(&o), "classes=1 residual=0\n");
}

#[test]
fn classify_exit_codes() {
    assert_eq!(terncode(&["classify", "-n", "4", "-k", "1", "--cap", "0"]).status.code(), Some(3));
    assert_eq!(terncode(&["classify", "-n", "4"]).status.code(), Some(2));
    assert_eq!(terncode(&["classify", "-n", "4", "-k", "1", "--maximal"]).status.code(), Some(2));
    assert_eq!(terncode(&["classify", "-n", "0", "-k", "0"]).status.code(), Some(2));
    assert_eq!(terncode(&["classify", "-n", "4", "-k", "9"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_terncode"))
        .args(["classify", "-n", "4", "-k", "1"])
        .env("TERNCODE_CAP", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
}

#[test]
fn classify_writes_and_resumes_manifests() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let first = terncode(&["classify", "--maximal", "-n", "9", "--out", out]);
    assert_eq!(stdout(&first), "classes=2 residual=0\n");
    let manifest = std::fs::read_to_string(dir.path().join("maximal_n9.manifest")).unwrap();
    assert!(manifest.starts_with("MANIFEST n=9 k=4 classes=2 complete=1\n"));
    assert!(dir.path().join("so_n8_k3.manifest").exists());

    let again = terncode(&["classify", "--maximal", "-n", "9", "--out", out, "--resume", "--threads", "2"]);
    assert_eq!(stdout(&again), stdout(&first));
    assert_eq!(std::fs::read_to_string(dir.path().join("maximal_n9.manifest")).unwrap(), manifest);
}

#[test]
fn exact_counts_and_bounds() {
    let cases = [
        (["mass", "-n", "24", "-k", "11"], "12850554292569078425974899530137600000"),
        (["mass", "-n", "25", "-k", "12"], "25701205307660304745058529866383360000"),
        (["bound", "-n", "26", "-k", "12"], "757009213"),
        (["bound", "-n", "27", "-k", "13"], "56074757"),
        (["bound", "-n", "28", "-k", "14"], "2002670"),
        (["bound", "-n", "29", "-k", "14"], "82575085630"),
        (["bound", "-n", "30", "-k", "14"], "4936926278278054"),
    ];
    for (args, want) in cases {
        let o = terncode(&args);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), format!("{want}\n"));
    }
    assert_eq!(terncode(&["mass", "-n", "4", "-k", "1"]).status.code(), Some(2));
    assert_eq!(terncode(&["bound", "-n", "7", "-k", "4"]).status.code(), Some(2));
}

#[test]
fn code_file_commands() {
    let dir = tempfile::tempdir().unwrap();
    let tetra = write_code(dir.path(), "tetracode.code", "4 2\n1011\n0112\n# tetracode\n");
    let swapped = write_code(dir.path(), "swapped.code", "4 2\n1011\n0121\n");
    let rep = write_code(dir.path(), "rep.code", "3 1\n111\n");
    let bad = write_code(dir.path(), "bad.code", "4 2\n1011\n");

    assert_eq!(stdout(&terncode(&["aut", &tetra])), "48\n");
    assert_eq!(stdout(&terncode(&["minwt", &tetra])), "3\n");
    let o = terncode(&["equiv", &tetra, &tetra]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("equivalent\n", Some(0)));
    let o = terncode(&["equiv", &tetra, &swapped]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("equivalent\n", Some(0)));
    let o = terncode(&["equiv", &tetra, &rep]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("inequivalent\n", Some(1)));

    let a = stdout(&terncode(&["canon", &tetra]));
    assert_eq!(a, stdout(&terncode(&["canon", &swapped])));
    assert!(a.trim_end().chars().all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase()));

    for cmd in ["aut", "minwt", "canon"] {
        let o = terncode(&[cmd, &bad]);
        assert_eq!(o.status.code(), Some(2));
        assert!(o.stdout.is_empty());
    }
    assert_eq!(terncode(&["aut", "/nonexistent.code"]).status.code(), Some(2));
    assert_eq!(terncode(&["minwt", &tetra, "--cap", "1"]).status.code(), Some(3));
}
