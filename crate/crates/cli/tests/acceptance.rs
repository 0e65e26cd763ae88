//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! `ACCEPTANCE_LATTICE_CTX_SIZE` overrides the context size of the lattice
//! run (default 4).

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use robust_hyper::backtrans::backtranslate_context;
use robust_hyper::compile::{compile, CompilerId};
use robust_hyper::corpus::Corpus;
use robust_hyper::criteria::{
    check_rhp, check_rtp, lattice_check, replay, run_experiment, Experiment, InstanceVerdicts, MockPair,
    PropertyClass, Report, Status, SuiteVerdict, Verdict, WbProgram, Workbench,
};
use robust_hyper::srclang::{eval_trace, trace_set_src, SrcType};
use robust_hyper::tgtlang::{enumerate_tgt_contexts, eval_trace_tgt, trace_set_tgt};
use robust_hyper::trace::syntax::parse_property_file;
use robust_hyper::trace::{
    is_safety_bounded, Event, Hyperproperty, Kind, Obs, Origin, Property, Universe,
};
use robust_hyper::Bounds;

struct Outcome {
    pass: bool,
    detail: String,
}

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn corpus() -> Corpus {
    Corpus::load(&root().join("corpus"), Bounds::default().val_cap).expect("corpus loads")
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_robust-hyper"));
    c.current_dir(root());
    c
}

fn whole_program_correctness() -> Outcome {
    let start = Instant::now();
    let corpus = corpus();
    let b = Bounds::default();
    let unit: Vec<_> = corpus.programs_of_type(&SrcType::Unit).collect();
    let mut streams = vec![Vec::new()];
    for len in 1..=2 {
        streams.extend(Bounds { stream_len: len, ..b }.streams());
    }
    let (mut runs, mut mismatches, mut cut) = (0, 0, 0);
    let mut first = String::new();
    for p in &unit {
        let tgt = compile(&p.program, CompilerId::Secure);
        for s in &streams {
            runs += 1;
            let src_run = robust_hyper::srclang::eval::run(p.program.term(), s, &b);
            let tgt_run = robust_hyper::tgtlang::eval::run(tgt.term(), s, &b);
            if src_run.fuel_cut() || tgt_run.fuel_cut() {
                cut += 1;
                continue;
            }
            debug_assert_eq!(src_run.obs, eval_trace(p.program.term(), s, &b));
            debug_assert_eq!(tgt_run.obs, eval_trace_tgt(tgt.term(), s, &b));
            if src_run.obs != tgt_run.obs {
                mismatches += 1;
                if first.is_empty() {
                    first = format!(" first: {} on {s:?}: {} vs {}", p.name, src_run.obs, tgt_run.obs);
                }
            }
        }
    }
    let t = start.elapsed();
    Outcome {
        pass: unit.len() >= 20 && mismatches == 0 && cut == 0 && t < Duration::from_secs(60),
        detail: format!(
            "{} programs, {runs} runs, {mismatches} mismatches, {cut} fuel-cut, {:.1}s{first}",
            unit.len(),
            t.as_secs_f64()
        ),
    }
}

fn back_translation_emulation() -> Outcome {
    let start = Instant::now();
    let corpus = corpus();
    let b = Bounds::default().with_ctx_size(6);
    let nat_to_nat = SrcType::arrow(SrcType::Nat, SrcType::Nat);
    let programs: Vec<_> = corpus
        .programs_of_type(&SrcType::Nat)
        .chain(corpus.programs_of_type(&nat_to_nat))
        .map(|p| (p, compile(&p.program, CompilerId::Secure)))
        .collect();
    let contexts = enumerate_tgt_contexts(b.ctx_size, b.val_cap);
    // (comparisons, mismatches, inconclusive, first mismatch)
    let (total, mismatches, inconclusive, first) = contexts
        .par_iter()
        .map(|c| {
            let back_nat = backtranslate_context(c, &SrcType::Nat);
            let back_fun = backtranslate_context(c, &nat_to_nat);
            let mut acc = (0usize, 0usize, 0usize, None::<String>);
            for (p, tgt) in &programs {
                let back = if p.program.ty().alpha_eq(&SrcType::Nat) { &back_nat } else { &back_fun };
                let t = trace_set_tgt(c, tgt, &b);
                let s = trace_set_src(back, &p.program, &b).expect("back-translation links");
                acc.0 += 1;
                if !t.is_conclusive() || !s.is_conclusive() {
                    acc.2 += 1;
                } else if !t.same_members(&s) {
                    acc.1 += 1;
                    acc.3.get_or_insert_with(|| format!(" first: {} in {c}: {t} vs {s}", p.name));
                }
            }
            acc
        })
        .reduce(
            || (0, 0, 0, None),
            |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3.or(b.3)),
        );
    let t = start.elapsed();
    let rate = inconclusive as f64 / total.max(1) as f64;
    Outcome {
        pass: programs.len() >= 10 && mismatches == 0 && rate < 0.10 && t < Duration::from_secs(600),
        detail: format!(
            "{} contexts x {} programs, {total} comparisons, {mismatches} mismatches, {:.2}% inconclusive, {:.1}s{}",
            contexts.len(),
            programs.len(),
            rate * 100.0,
            t.as_secs_f64(),
            first.unwrap_or_default()
        ),
    }
}

fn negative_control() -> Outcome {
    let dir = std::env::temp_dir().join(format!("acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let check = |compiler: &str| {
        let out = dir.join(format!("rsp-{compiler}.json"));
        let start = Instant::now();
        let status = bin()
            .args(["check", "--criterion", "rsp", "--compiler", compiler, "--max-ctx-size", "4"])
            .args(["--program", "corpus/programs/nat-to-nat/identity.sexp", "--out"])
            .arg(&out)
            .output()
            .expect("binary runs")
            .status;
        let report = Report::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
        (status.code(), report, start.elapsed())
    };
    let (code, report, t) = check("backdoor");
    let prefix = report.verdict.counterexamples.first().and_then(|c| c.trace.clone()).unwrap_or_default();
    let (secure_code, secure, _) = check("secure");
    Outcome {
        pass: code == Some(1)
            && report.verdict.status == Status::Counterexample
            && prefix.contains("Out(0,prog)")
            && t < Duration::from_secs(10)
            && secure_code == Some(0)
            && secure.verdict.status == Status::HoldsWithinBounds,
        detail: format!(
            "backdoor exit {code:?} prefix {prefix} in {:.2}s; secure exit {secure_code:?}",
            t.as_secs_f64()
        ),
    }
}

const SAFETY: [&str; 3] = ["no-prog-zero", "quiet-after-three-inputs", "input-before-prog-output"];

/// Suites per class; each nests in the ones after it that contain its class.
fn suites() -> Vec<(PropertyClass, Vec<&'static str>)> {
    let with = |extra: &[&'static str]| SAFETY.iter().copied().chain(extra.iter().copied()).collect::<Vec<_>>();
    vec![
        (PropertyClass::Safety, with(&[])),
        (PropertyClass::TraceProps, with(&["terminates"])),
        (PropertyClass::KHypersafety(2), with(&["first-input-ni"])),
        (PropertyClass::SubsetClosed, with(&["first-input-ni", "terminates"])),
        (PropertyClass::AllHyper, with(&["first-input-ni", "terminates", "min-size-two"])),
    ]
}

struct LatticeRun {
    outcome: Outcome,
    /// Every verdict of the run, with the workbench and corpus needed to
    /// replay it.
    verdicts: Vec<(CompilerId, Verdict)>,
    bounds: Bounds,
}

fn lattice(corpus: &Corpus) -> LatticeRun {
    let start = Instant::now();
    let size = std::env::var("ACCEPTANCE_LATTICE_CTX_SIZE")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    let b = Bounds::default().with_ctx_size(size);
    let properties: Vec<Hyperproperty> = corpus.properties.iter().map(|p| p.hyper()).collect();
    let index: BTreeMap<&str, usize> = properties.iter().enumerate().map(|(i, h)| (h.name(), i)).collect();
    let suites = suites();
    for (class, suite) in &suites {
        for name in suite {
            let h = &properties[index[name]];
            assert!(class.admits(h, b.val_cap).unwrap(), "{name} is not in {}", class.name());
        }
    }
    let mut instances = Vec::new();
    let mut verdicts = Vec::new();
    let mut tally: BTreeMap<(CompilerId, &str), BTreeMap<Status, usize>> = BTreeMap::new();
    for id in CompilerId::ALL {
        let wb = Workbench::new(id);
        // Strong RHP is checked per export type.
        let mut groups: BTreeMap<String, Vec<WbProgram>> = BTreeMap::new();
        for p in &corpus.programs {
            groups
                .entry(p.program.ty().to_string())
                .or_default()
                .push(wb.program(p.name.clone(), p.program.clone()));
        }
        let exp = Experiment::criteria().with_properties(&properties);
        let results = groups.values().flat_map(|programs| {
            let refs: Vec<&WbProgram> = programs.iter().collect();
            run_experiment(&wb, &refs, &exp, &b).expect("experiment runs").programs
        });
        for pr in results.collect::<Vec<_>>() {
            let mut inst = InstanceVerdicts::new(format!("{id}/{}", pr.program), b);
            let named = [
                ("strong-rhp", pr.strong_rhp.clone()),
                ("rhp", pr.rhp.clone()),
                ("rtp", pr.rtp.clone()),
                ("rsp", pr.rsp.clone()),
            ];
            for (name, v) in &named {
                let v = v.as_ref().expect("requested");
                *tally.entry((id, name)).or_default().entry(v.status).or_default() += 1;
                verdicts.push((id, v.clone()));
            }
            inst.strong_rhp = pr.strong_rhp.map(|v| v.status);
            inst.rhp = pr.rhp.map(|v| v.status);
            inst.rtp = pr.rtp.map(|v| v.status);
            inst.rsp = pr.rsp.map(|v| v.status);
            for (class, suite) in &suites {
                let v = Verdict::conjunction(suite.iter().map(|n| pr.preservation[index[n]].clone()));
                inst.classes.insert(
                    *class,
                    SuiteVerdict {
                        status: v.status,
                        suite: suite.iter().map(|s| s.to_string()).collect(),
                    },
                );
            }
            verdicts.extend(pr.preservation.into_iter().map(|v| (id, v)));
            verdicts.extend(pr.source_satisfaction.into_iter().map(|v| (id, v)));
            instances.push(inst);
        }
    }
    let report = lattice_check(&instances).expect("uniform bounds");
    let t = start.elapsed();
    let summary: Vec<String> = tally
        .iter()
        .map(|((id, c), m)| {
            let parts: Vec<String> = m.iter().map(|(s, n)| format!("{n} {s}")).collect();
            format!("{id}/{c}: {}", parts.join(", "))
        })
        .collect();
    let violations: Vec<String> = report
        .violations
        .iter()
        .take(5)
        .map(|v| format!("{}: {} holds, {} fails", v.instance, v.stronger, v.weaker))
        .collect();
    LatticeRun {
        outcome: Outcome {
            pass: report.holds() && report.instances == corpus.programs.len() * 3,
            detail: format!(
                "ctx size {size}, {} instances, {} edges, {} violations, {:.1}s [{}]{}",
                report.instances,
                report.edges_checked,
                report.violations.len(),
                t.as_secs_f64(),
                summary.join("; "),
                if violations.is_empty() { String::new() } else { format!(" {}", violations.join("; ")) }
            ),
        },
        verdicts,
        bounds: b,
    }
}

fn quantifier_separation() -> Outcome {
    let m = MockPair::quantifier_separation();
    let b = Bounds::default();
    let runs: Vec<_> = (0..2)
        .map(|_| (check_rtp(&(), &m, &b).unwrap(), check_rhp(&(), &m, &b).unwrap()))
        .collect();
    let (rtp, rhp) = &runs[0];
    Outcome {
        pass: rtp.status == Status::HoldsWithinBounds && rhp.status == Status::Counterexample && runs[0] == runs[1],
        detail: format!("rtp {}, rhp {}, repeat identical: {}", rtp.status, rhp.status, runs[0] == runs[1]),
    }
}

/// `P` is safety within `u` iff it coincides with the complement of the
/// upward closure of its irremediable prefixes, where a prefix is
/// irremediable when every observation in `u` extending it violates `P`.
fn safety_oracle(p: &Property, u: &[Obs]) -> bool {
    let mut seqs: BTreeSet<Vec<Event>> = BTreeSet::new();
    for t in u {
        for n in 0..=t.events.len() {
            seqs.insert(t.events[..n].to_vec());
        }
    }
    let irremediable: BTreeSet<Vec<Event>> = seqs
        .into_iter()
        .filter(|m| u.iter().filter(|t| t.events.starts_with(m)).all(|t| !p.holds(t)))
        .collect();
    u.iter()
        .all(|t| p.holds(t) == !(0..=t.events.len()).any(|n| irremediable.contains(&t.events[..n])))
}

fn random_pattern(rng: &mut StdRng) -> String {
    let kind = ["in", "out", "_"][rng.gen_range(0..3)];
    let origin = ["prog", "ctx", "_"][rng.gen_range(0..3)];
    let value = ["0", "1", "_"][rng.gen_range(0..3)];
    format!("({kind} {origin} {value})")
}

fn sampled_properties(u: &[Obs]) -> Vec<Property> {
    let mut rng = StdRng::seed_from_u64(0x5afe);
    let mut out = Vec::new();
    for i in 0..20 {
        let keep = [0.5, 0.9, 0.97][i % 3];
        let set: BTreeSet<Obs> = u.iter().filter(|_| rng.gen_bool(keep)).cloned().collect();
        out.push(Property::new(format!("subset-{i}"), move |t| set.contains(t)));
    }
    for i in 0..20 {
        let text = format!(
            "(monitor (states a b bad) (init a) (bad bad) (trans (a {} b) (a {} bad) (b {} bad) (a _ a) (b _ b) (bad _ bad)))",
            random_pattern(&mut rng),
            random_pattern(&mut rng),
            random_pattern(&mut rng)
        );
        let spec = parse_property_file(&text, 1).expect("generated monitor parses");
        let mut h = spec.into_hyper();
        h = h.named(format!("monitor-{i}"));
        out.push(h.lifted_from().expect("trace property").clone());
    }
    for i in 0..10 {
        // Term-sensitive variants of monitors: violated by terminated
        // observations containing a pattern, never by incomplete ones.
        let event = Event {
            kind: if rng.gen_bool(0.5) { Kind::In } else { Kind::Out },
            origin: if rng.gen_bool(0.5) { Origin::Prog } else { Origin::Ctx },
            value: rng.gen_range(0..=1),
        };
        out.push(Property::new(format!("term-avoids-{i}"), move |t| {
            !(t.is_term() && t.events.contains(&event))
        }));
    }
    out.push(Property::terminates());
    out.push(Property::top());
    out.push(Property::no_prog_out_zero(1));
    out.push(Property::equals(Obs::incomplete(vec![])));
    out.push(Property::equals(Obs::term(vec![Event::output(1, Origin::Prog)])));
    out.push(Property::new("nonempty", |t| !t.events.is_empty()));
    out
}

fn classifier_oracle() -> Outcome {
    let universe = Universe::all(2, 1);
    let u = universe.members();
    let props = sampled_properties(u);
    let mut agree = 0;
    let mut safe = 0;
    let mut disagreements = Vec::new();
    for p in &props {
        let got = is_safety_bounded(p, &universe);
        let want = safety_oracle(p, u);
        safe += want as usize;
        if got == want {
            agree += 1;
        } else {
            disagreements.push(p.name().to_string());
        }
    }

    // The corpus monitors against hand-written predicates, on every
    // observation of up to four events over the default value cap.
    let b = Bounds::default();
    let full = Universe::all(b.event_bound, b.val_cap);
    let corpus = corpus();
    let out_prog = |t: &Obs, n: Option<u32>| {
        t.events
            .iter()
            .any(|e| e.kind == Kind::Out && e.origin == Origin::Prog && n.is_none_or(|n| e.value == n))
    };
    let predicates: Vec<(&str, Box<dyn Fn(&Obs) -> bool>)> = vec![
        ("no-prog-zero", Box::new(move |t: &Obs| !out_prog(t, Some(0)))),
        (
            "quiet-after-three-inputs",
            Box::new(|t: &Obs| {
                let mut inputs = 0;
                for e in &t.events {
                    if inputs >= 3 && e.kind == Kind::Out && e.origin == Origin::Prog {
                        return false;
                    }
                    if e.kind == Kind::In && e.origin == Origin::Ctx {
                        inputs += 1;
                    }
                }
                true
            }),
        ),
        (
            "input-before-prog-output",
            Box::new(|t: &Obs| {
                let first_in = t.events.iter().position(|e| e.kind == Kind::In);
                let first_out = t.events.iter().position(|e| e.kind == Kind::Out && e.origin == Origin::Prog);
                match (first_in, first_out) {
                    (_, None) => true,
                    (None, Some(_)) => false,
                    (Some(i), Some(o)) => i < o,
                }
            }),
        ),
    ];
    let mut monitor_mismatches = 0;
    for (name, f) in &predicates {
        let h = corpus.property(name).expect("corpus property").hyper();
        let p = h.lifted_from().expect("trace property");
        assert!(p.monitor().is_some(), "{name} is monitor-based");
        monitor_mismatches += full.members().iter().filter(|t| p.holds(t) != f(t)).count();
    }
    Outcome {
        pass: props.len() >= 50 && agree == props.len() && safe > 0 && safe < props.len() && monitor_mismatches == 0,
        detail: format!(
            "{agree}/{} safety verdicts agree ({safe} safety) over {} observations; monitors vs predicates: {monitor_mismatches} mismatches over {} observations{}",
            props.len(),
            u.len(),
            full.len(),
            if disagreements.is_empty() { String::new() } else { format!(" disagree: {}", disagreements.join(", ")) }
        ),
    }
}

fn determinism_and_replay(corpus: &Corpus, lattice: &[(CompilerId, Verdict)], lattice_bounds: &Bounds) -> Outcome {
    let dir = std::env::temp_dir().join(format!("acceptance-det-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let checks: [&[&str]; 3] = [
        &["--criterion", "rsp", "--compiler", "backdoor", "--program", "corpus/programs/nat-to-nat/identity.sexp"],
        &["--criterion", "preservation", "--compiler", "backdoor", "--corpus", "corpus", "--export-type", "(-> nat nat)"],
        &["--criterion", "rhp", "--compiler", "noprotect", "--corpus", "corpus", "--export-type", "(* nat nat)"],
    ];
    let b = Bounds::default().with_ctx_size(4);
    let properties: Vec<Hyperproperty> = corpus.properties.iter().map(|p| p.hyper()).collect();
    let mut identical = true;
    let mut replayed = 0;
    let mut failed = Vec::new();
    let replay_all = |id: CompilerId, v: &Verdict, b: &Bounds, replayed: &mut usize, failed: &mut Vec<String>| {
        let wb = Workbench::new(id);
        for c in &v.counterexamples {
            let p = corpus.program(&c.program).expect("known program");
            let wp = wb.program(p.name.clone(), p.program.clone());
            *replayed += 1;
            if !replay(&wb, &[&wp], &properties, c, b).unwrap_or(false) {
                failed.push(format!("{id}/{}/{}", c.program, c.criterion));
            }
        }
    };
    for (i, args) in checks.iter().enumerate() {
        let mut outputs = Vec::new();
        for (run, workers) in ["1", "1", "2"].iter().enumerate() {
            let out = dir.join(format!("report-{i}-{run}.json"));
            bin()
                .arg("check")
                .args(*args)
                .args(["--max-ctx-size", "4", "--workers", workers, "--out"])
                .arg(&out)
                .stdout(std::process::Stdio::null())
                .status()
                .expect("binary runs");
            outputs.push(std::fs::read(&out).unwrap());
        }
        identical &= outputs.windows(2).all(|w| w[0] == w[1]);
        let report = Report::from_json(std::str::from_utf8(&outputs[0]).unwrap()).unwrap();
        let id: CompilerId = report.compiler.as_deref().unwrap().parse().unwrap();
        replay_all(id, &report.verdict, &b, &mut replayed, &mut failed);
    }
    for (id, v) in lattice {
        replay_all(*id, v, lattice_bounds, &mut replayed, &mut failed);
    }
    Outcome {
        pass: identical && failed.is_empty() && replayed > 0,
        detail: format!(
            "reports byte-identical across runs: {identical}; {replayed} counterexamples replayed, {} failed{}",
            failed.len(),
            if failed.is_empty() { String::new() } else { format!(": {}", failed.join(", ")) }
        ),
    }
}

fn main() {
    let corpus = corpus();
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    let mut report = |name: &'static str, o: Outcome| {
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push((name, o));
    };
    report("1 whole-program correctness", whole_program_correctness());
    report("2 back-translation emulation", back_translation_emulation());
    report("3 negative control", negative_control());
    let lattice_run = lattice(&corpus);
    report("4 lattice implications", lattice_run.outcome);
    report("5 quantifier-order separation", quantifier_separation());
    report("6 classifier oracle", classifier_oracle());
    report("7 determinism and replay", determinism_and_replay(&corpus, &lattice_run.verdicts, &lattice_run.bounds));
    let failed = results.iter().filter(|(_, o)| !o.pass).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
