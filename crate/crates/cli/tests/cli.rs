use std::path::{Path, PathBuf};
use std::process::Command;

use clap::Parser;
use golod_cli::args::Cli;
use golod_cli::{exit_code, run, Output};
use golod_core::constructions::BUILTIN_NAMES;
use golod_core::Error;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn data(name: &str) -> String {
    root().join("data").join(name).display().to_string()
}

fn golod(args: &[&str]) -> Output {
    let cli = Cli::try_parse_from(std::iter::once("golod").chain(args.iter().copied())).expect("arguments parse");
    run(&cli)
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, json: &str) {
    let doc: serde_json::Value = serde_json::from_str(json).unwrap();
    let errors: Vec<String> = v.iter_errors(&doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
}

#[test]
fn builtin_reports_match_golden_files() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let bless = std::env::var_os("GOLOD_BLESS").is_some();
    let v = schema();
    for name in BUILTIN_NAMES {
        let src = format!("builtin:{name}");
        let out = golod(&["--json", "analyze", &src, "--betti", "6"]);
        assert_eq!(out.code, 0, "{name}: {}", out.stderr);
        assert_valid(&v, &out.stdout);
        let path = dir.join(format!("{name}.json"));
        if bless {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &out.stdout).unwrap();
        }
        let golden = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(out.stdout, golden, "{name} differs from its golden file");
    }
}

#[test]
fn json_is_deterministic() {
    let ring = data("exa-4.3.ring");
    let args = ["--json", "--seed", "7", "analyze", &ring, "builtin:ci-e3", "--ezd", "random", "--betti", "5"];
    let a = golod(&args);
    let b = golod(&args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let mut jobs = vec!["--jobs", "1"];
    jobs.extend_from_slice(&args);
    assert_eq!(golod(&jobs).stdout, a.stdout);
    let doc: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(doc["result"][0]["input"]["source"], ring.as_str());
    assert_eq!(doc["result"][1]["input"]["source"], "builtin:ci-e3");
}

#[test]
fn every_command_emits_schema_valid_json() {
    let v = schema();
    let ring = data("exa-4.3.ring");
    let skew = data("exa43.skew");
    let runs: Vec<Vec<&str>> = vec![
        vec!["--json", "quotient", &ring, "3"],
        vec!["--json", "betti", &ring, "builtin:ci-e2"],
        vec!["--json", "series", "golod", "--e", "3", "--h", "6,8,3"],
        vec!["--json", "series", "ggo", "--h", "4"],
        vec!["--json", "series", "trivext", "--e", "3"],
        vec!["--json", "series", "codepth3", "--mu", "5"],
        vec!["--json", "pfaffian", &skew, "--compare", &ring],
        vec!["--json", "pfaffian", &skew],
        vec!["--json", "ezd", "builtin:ci-e3", "--mode", "linear"],
        vec!["--json", "ezd", "builtin:square-max-e3", "--char", "3"],
        vec!["--json", "builtin"],
        vec!["--json", "builtin", "ci-e3"],
        vec!["--json", "trivext", "builtin:socle2-e3", "--ezd", "none"],
        vec!["--json", "analyze", "builtin:ci-e3", "--quotient", "3", "--ezd", "random", "--betti"],
    ];
    for args in runs {
        let out = golod(&args);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        assert_valid(&v, &out.stdout);
    }
}

#[test]
fn text_outputs() {
    assert_eq!(golod(&["series", "golod", "--e", "3", "--h", "6,8,3", "--D", "5"]).stdout, "1, 3, 9, 27, 81, 243\n");
    assert_eq!(golod(&["series", "thg", "--e", "3", "--depth", "6"]).stdout, "1, 3, 7, 16, 37, 86, 200\n");
    assert!(golod(&["series", "ggo", "--h", "4"]).stdout.starts_with("1, 0, -5, -10, -10, -4, 0\n"));
    let p = golod(&["pfaffian", &data("exa43.skew"), "--compare", &data("exa-4.3.ring")]);
    assert_eq!(p.stdout.lines().filter(|l| l.starts_with("pf")).count(), 5);
    assert!(p.stdout.ends_with("ideals equal: true\n"), "{}", p.stdout);
    let q = golod(&["quotient", "builtin:ci-e3", "3"]);
    assert!(q.stdout.ends_with("# dimension 7, hilbert 1, 3, 3\n"), "{}", q.stdout);

    let r = golod(&["analyze", "builtin:ci-e3", "--quotient", "3"]).stdout;
    assert!(r.contains("class: class T"), "{r}");
    let r = golod(&["analyze", &data("exa-4.3.ring"), "--ezd", "linear", "--betti", "6"]).stdout;
    for line in ["gorenstein: true", "compressed: true", "complete intersection: false", "golod: GolodCertified (codepth ≤ 3 product criterion)"] {
        assert!(r.contains(line), "missing `{line}` in\n{r}");
    }
    let r = golod(&["analyze", &data("exa-5.4.ring"), "--quotient", "3", "--betti", "6", "--ezd", "none"]).stdout;
    assert!(r.contains("golod: NotGolod"), "{r}");
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&Error::ResourceGuard("x".into())), 3);
    assert_eq!(exit_code(&Error::Consistency("x".into())), 4);
    assert_eq!(exit_code(&Error::NotArtinian(3)), 2);

    let dir = std::env::temp_dir().join(format!("golod-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.ring");
    std::fs::write(&bad, "char = 101\nvars = [x, y]\nideal = [\"x^2\", \"y^^2\"]\n").unwrap();
    let out = golod(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("bad.ring:3"), "{}", out.stderr);
    assert!(out.stderr.contains("ring file:"), "{}", out.stderr);

    assert_eq!(golod(&["analyze", "no/such/file.ring"]).code, 2);
    assert_eq!(golod(&["betti", "builtin:ci-e2", "--depth", "9"]).code, 3);
    assert_eq!(golod(&["betti", "builtin:ci-e2", "--depth", "9", "--allow-deep"]).code, 0);
    assert_eq!(golod(&["ezd", "builtin:exa-4.3", "--mode", "full"]).code, 3);
    assert_eq!(golod(&["analyze", &data("exa-4.3.ring"), "--char", "2"]).code, 2);
    assert_eq!(golod(&["series", "golod", "--e", "3", "--h", "1"]).code, 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn binary_reports_exit_status() {
    let bin = env!("CARGO_BIN_EXE_golod");
    let ok = Command::new(bin).args(["series", "thg", "--e", "2", "--D", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "1, 2, 4, 8\n");
    let guard = Command::new(bin).args(["betti", "builtin:ci-e2", "--depth", "12"]).output().unwrap();
    assert_eq!(guard.status.code(), Some(3));
    let usage = Command::new(bin).args(["frobnicate"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
