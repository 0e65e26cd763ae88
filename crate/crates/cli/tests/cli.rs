use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use robust_hyper::criteria::{Report, Status};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_robust-hyper"))
        .current_dir(root())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn run_echo() {
    let o = run(&["run", "--whole", "corpus/programs/unit/echo.sexp", "--stream", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[In(3,prog) Out(3,prog)] term\n");
}

#[test]
fn run_omega_with_empty_stream() {
    let o = run(&["run", "--whole", "corpus/programs/unit/omega.sexp", "--stream", ""]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[] incomplete\n");
}

#[test]
fn run_compiled_matches_source() {
    for compiler in ["secure", "noprotect", "backdoor"] {
        let o = run(&[
            "run", "--whole", "corpus/programs/unit/swap-inputs.sexp", "--stream", "1,2", "--compiler", compiler,
        ]);
        assert_eq!(stdout(&o), "[In(1,prog) In(2,prog) Out(2,prog) Out(1,prog)] term\n", "{compiler}");
    }
}

#[test]
fn run_target_program() {
    let p = scratch("tgt.sexp", "(write (succ (read)))");
    let o = run(&["run", "--target", "--whole", p.to_str().unwrap(), "--stream", "3"]);
    // succ wraps at the value cap.
    assert_eq!(stdout(&o), "[In(3,prog) Out(0,prog)] term\n");
}

#[test]
fn errors_exit_three() {
    let bad = scratch("bad.sexp", "(lam (x nat)");
    assert_eq!(run(&["run", "--whole", bad.to_str().unwrap()]).status.code(), Some(3));
    let ill = scratch("ill.sexp", "(write (lam (x nat) x))");
    assert_eq!(run(&["run", "--whole", ill.to_str().unwrap()]).status.code(), Some(3));
    let o = run(&["check", "--criterion", "bogus", "--program", "corpus/programs/nat/const-two.sexp"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(run(&["check", "--no-such-flag"]).status.code(), Some(3));
    assert_eq!(run(&["run", "--whole", "corpus/programs/unit/echo.sexp", "--stream", "9"]).status.code(), Some(3));
    assert_eq!(run(&["enumerate", "--side", "source"]).status.code(), Some(3));
    assert_eq!(run(&["check", "--criterion", "rsp", "--corpus", "corpus", "--fuel", "0"]).status.code(), Some(3));
}

#[test]
fn check_exit_codes_follow_the_verdict() {
    let out = scratch("rsp.json", "");
    let args = |compiler: &'static str| {
        vec![
            "check", "--criterion", "rsp", "--compiler", compiler, "--max-ctx-size", "4",
            "--program", "corpus/programs/nat-to-nat/identity.sexp", "--out", out.to_str().unwrap(),
        ]
    };
    let o = run(&args("backdoor"));
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "rsp: counterexample\n");
    let r = Report::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r.verdict.status, Status::Counterexample);
    assert!(r.verdict.counterexamples[0].trace.as_deref().unwrap().contains("Out(0,prog)"));
    assert_eq!(run(&args("secure")).status.code(), Some(0));
}

#[test]
fn report_goes_to_stdout_without_out() {
    let o = run(&[
        "check", "--criterion", "rtp", "--max-ctx-size", "3", "--program", "corpus/programs/nat/const-two.sexp",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.programs, ["const-two"]);
    assert_eq!(r.bounds.ctx_size, 3);
}

#[test]
fn strong_rhp_over_the_corpus() {
    let o = run(&["check", "--criterion", "strong-rhp", "--corpus", "corpus", "--max-ctx-size", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn class_check_uses_admitted_corpus_properties() {
    let o = run(&[
        "check", "--criterion", "class", "--class", "safety", "--corpus", "corpus", "--export-type", "nat",
        "--compiler", "backdoor", "--max-ctx-size", "3",
    ]);
    let r = Report::from_json(&stdout(&o)).unwrap();
    let mut props = r.properties.clone();
    props.sort();
    assert_eq!(props, ["input-before-prog-output", "no-prog-zero", "quiet-after-three-inputs"]);
    let o = run(&[
        "check", "--criterion", "class", "--class", "safety", "--property", "corpus/properties/terminates.prop",
        "--program", "corpus/programs/nat/const-two.sexp",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn classify_prints_class_memberships() {
    let o = run(&["classify", "--property", "corpus/properties/no-prog-zero.prop"]);
    assert!(stdout(&o).contains("safety: true\n"));
    let o = run(&["classify", "--property", "corpus/properties/min-size-two.prop"]);
    assert!(stdout(&o).contains("subset-closed: false\n"));
    let o = run(&["classify", "--property", "corpus/properties/first-input-ni.prop"]);
    assert!(stdout(&o).contains("2-hypersafety: true\n"));
}

#[test]
fn classify_refuses_oversized_universes() {
    let obs: String = (0..16)
        .map(|i| format!("(obs ((out prog {}) (in ctx {})) term) ", i / 4, i % 4))
        .collect();
    let p = scratch("big.prop", &format!("(hyper (min-size 2) (universe {obs}))"));
    assert_eq!(run(&["classify", "--property", p.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn backtranslate_is_deterministic_and_keeps_labels() {
    let hole = scratch("hole.sexp", "(hole)");
    let a = run(&["backtranslate", "--context", hole.to_str().unwrap(), "--export-type", "nat"]);
    let b = run(&["backtranslate", "--context", hole.to_str().unwrap(), "--export-type", "nat"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("(hole)"));
    let w = scratch("write.sexp", "(write (app (hole) 1))");
    let o = run(&["backtranslate", "--context", w.to_str().unwrap(), "--export-type", "(-> nat nat)"]);
    assert!(stdout(&o).contains("(write ctx"), "{}", stdout(&o));
    let bad = scratch("bad-ctx.sexp", "(app hole");
    assert_eq!(run(&["backtranslate", "--context", bad.to_str().unwrap(), "--export-type", "nat"]).status.code(), Some(3));
}

#[test]
fn enumerate_counts() {
    let o = run(&["enumerate", "--side", "target", "--max-ctx-size", "1", "--count"]);
    assert_eq!(stdout(&o), "1\n");
    let o = run(&["enumerate", "--side", "target", "--max-ctx-size", "2"]);
    let lines: Vec<_> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines[0], "(hole)");
    assert!(lines.iter().any(|l| l == "(write ctx (hole))"), "{lines:?}");
    let o = run(&["enumerate", "--side", "source", "--export-type", "unit", "--max-ctx-size", "1"]);
    assert_eq!(stdout(&o), "(hole)\n");
}

#[test]
fn flags_override_config_file() {
    let cfg = scratch("cfg.json", r#"{"max-ctx-size": 2, "val-cap": 1}"#);
    let c = cfg.to_str().unwrap();
    let base = ["check", "--criterion", "rsp", "--program", "corpus/programs/nat/const-two.sexp", "--config", c];
    let r = Report::from_json(&stdout(&run(&base))).unwrap();
    assert_eq!((r.bounds.ctx_size, r.bounds.val_cap, r.bounds.fuel), (2, 1, 100_000));
    let mut args = base.to_vec();
    args.extend(["--max-ctx-size", "3"]);
    let r = Report::from_json(&stdout(&run(&args))).unwrap();
    assert_eq!(r.bounds.ctx_size, 3);
}
