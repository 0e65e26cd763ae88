use robust_hyper::compile::CompilerId;
use robust_hyper::criteria::*;
use robust_hyper::srclang::SrcProgram;
use robust_hyper::trace::{lift, Hyperproperty, Property};
use robust_hyper::Bounds;

fn prog(wb: &Workbench, name: &str, src: &str) -> WbProgram {
    wb.program(name, SrcProgram::parse(src).unwrap())
}

fn no_zero() -> Hyperproperty {
    lift(Property::no_prog_out_zero(3))
}

fn b4() -> Bounds {
    Bounds::default().with_ctx_size(4)
}

#[test]
fn mock_separates_quantifier_orders() {
    let m = MockPair::quantifier_separation();
    let rtp = check_rtp(&(), &m, &b4()).unwrap();
    let rhp = check_rhp(&(), &m, &b4()).unwrap();
    assert_eq!(rtp.status, Status::HoldsWithinBounds);
    assert_eq!(rtp.stats.enumeration_witnesses, 2);
    assert_eq!(rhp.status, Status::Counterexample);
    assert_eq!(rhp.counterexamples[0].context, "T0");
}

#[test]
fn secure_identity_passes_rsp_by_back_translation() {
    let wb = Workbench::new(CompilerId::Secure);
    let p = prog(&wb, "id", "(lam (x nat) x)");
    let v = check_rsp(&p, &wb, &b4()).unwrap();
    assert_eq!(v.status, Status::HoldsWithinBounds);
    assert_eq!(v.stats.enumeration_witnesses, 0);
    assert_eq!(v.stats.backtranslation_witnesses, v.stats.comparisons);
}

#[test]
fn backdoor_fails_rsp_with_prog_zero_prefix() {
    let wb = Workbench::new(CompilerId::Backdoor);
    let p = prog(&wb, "id", "(lam (x nat) x)");
    let v = check_rsp(&p, &wb, &b4()).unwrap();
    assert_eq!(v.status, Status::Counterexample);
    let c = &v.counterexamples[0];
    assert!(c.trace.as_deref().unwrap().contains("Out(0,prog)"), "{c:?}");
    assert!(replay(&wb, &[&p], &[], c, &b4()).unwrap());
    let rtp = check_rtp(&p, &wb, &b4()).unwrap();
    assert_eq!(rtp.status, Status::Counterexample);
}

#[test]
fn silent_program_passes_rsp_trivially() {
    let wb = Workbench::new(CompilerId::Secure);
    let p = prog(&wb, "two", "(lit 2)");
    assert_eq!(check_rsp(&p, &wb, &b4()).unwrap().status, Status::HoldsWithinBounds);
}

#[test]
fn robust_satisfaction_on_both_sides() {
    let secure = Workbench::new(CompilerId::Secure);
    let p = prog(&secure, "id", "(lam (x nat) x)");
    let v = robustly_satisfies(&p, &no_zero(), Side::Source, &secure, &b4()).unwrap();
    assert_eq!(v.status, Status::HoldsWithinBounds);
    let top = robustly_satisfies(&p, &Hyperproperty::top(), Side::Target, &secure, &b4()).unwrap();
    assert_eq!(top.status, Status::HoldsWithinBounds);

    let backdoor = Workbench::new(CompilerId::Backdoor);
    let p = prog(&backdoor, "id", "(lam (x nat) x)");
    let v = robustly_satisfies(&p, &no_zero(), Side::Target, &backdoor, &b4()).unwrap();
    assert_eq!(v.status, Status::Counterexample);
    assert_eq!(v.counterexamples[0].context, "(app (snd (hole)) unit)");
}

#[test]
fn preservation_of_no_prog_zero() {
    for (id, want) in [
        (CompilerId::Secure, Status::HoldsWithinBounds),
        (CompilerId::NoProtect, Status::HoldsWithinBounds),
        (CompilerId::Backdoor, Status::Counterexample),
    ] {
        let wb = Workbench::new(id);
        let p = prog(&wb, "id", "(lam (x nat) x)");
        let v = check_preservation(&p, &no_zero(), &wb, &b4()).unwrap();
        assert_eq!(v.status, want, "{id}");
        assert!(!v.stats.vacuous);
    }
}

#[test]
fn failing_source_premise_is_a_vacuous_pass() {
    let wb = Workbench::new(CompilerId::Backdoor);
    let p = prog(&wb, "log", "(lam (x nat) (seq (write x) (lit 0)))");
    let v = check_preservation(&p, &no_zero(), &wb, &b4()).unwrap();
    assert_eq!(v.status, Status::HoldsWithinBounds);
    assert!(v.stats.vacuous);
}

#[test]
fn strong_rhp_over_a_group() {
    let srcs = ["(lam (x nat) x)", "(lam (x nat) (succ x))", "(lam (x nat) (seq (write x) (lit 0)))"];
    let b = Bounds::default().with_ctx_size(3);
    let secure = Workbench::new(CompilerId::Secure);
    let ps: Vec<_> = srcs.iter().enumerate().map(|(i, s)| prog(&secure, &format!("p{i}"), s)).collect();
    let refs: Vec<_> = ps.iter().collect();
    assert_eq!(check_strong_rhp(&secure, &refs, &b).unwrap().status, Status::HoldsWithinBounds);

    let backdoor = Workbench::new(CompilerId::Backdoor);
    let ps: Vec<_> = srcs.iter().enumerate().map(|(i, s)| prog(&backdoor, &format!("p{i}"), s)).collect();
    let refs: Vec<_> = ps.iter().collect();
    assert_eq!(check_strong_rhp(&backdoor, &refs, &b4()).unwrap().status, Status::Counterexample);
}

#[test]
fn strong_rhp_rejects_mixed_export_types() {
    let wb = Workbench::new(CompilerId::Secure);
    let a = prog(&wb, "a", "(lit 1)");
    let f = prog(&wb, "f", "(lam (x nat) x)");
    assert!(check_strong_rhp(&wb, &[&a, &f], &b4()).is_err());
}

#[test]
fn singleton_strong_rhp_matches_back_translated_rhp() {
    let wb = Workbench::new(CompilerId::NoProtect);
    let p = prog(&wb, "f", "(lam (x nat) (succ x))");
    let exp = Experiment::criteria();
    let r = run_experiment(&wb, &[&p], &exp, &b4()).unwrap();
    let pr = &r.programs[0];
    let strong = pr.strong_rhp.as_ref().unwrap();
    let rhp = pr.rhp.as_ref().unwrap();
    assert_eq!(strong.status, r.strong_rhp.as_ref().unwrap().status);
    // Every strong pass is a back-translation witness for RHP too.
    assert!(strong.stats.backtranslation_witnesses <= rhp.stats.backtranslation_witnesses);
}

#[test]
fn class_preservation_checks_membership() {
    let wb = Workbench::new(CompilerId::Secure);
    let p = prog(&wb, "id", "(lam (x nat) x)");
    let suite = [no_zero()];
    let v = check_class_preservation(PropertyClass::Safety, &suite, &p, &wb, &b4()).unwrap();
    assert_eq!(v.status, Status::HoldsWithinBounds);
    let ni = [Hyperproperty::first_input_ni()];
    let v = check_class_preservation(PropertyClass::KHypersafety(2), &ni, &p, &wb, &b4()).unwrap();
    assert_eq!(v.status, Status::HoldsWithinBounds);
    let bad = [lift(Property::terminates())];
    assert!(check_class_preservation(PropertyClass::Safety, &bad, &p, &wb, &b4()).is_err());
}

#[test]
fn reports_round_trip() {
    let wb = Workbench::new(CompilerId::Backdoor);
    let p = prog(&wb, "id", "(lam (x nat) x)");
    let b = b4();
    let verdict = check_rsp(&p, &wb, &b).unwrap();
    let r = Report {
        criterion: Criterion::Rsp,
        compiler: Some("backdoor".into()),
        programs: vec!["id".into()],
        properties: vec![],
        bounds: b,
        verdict,
    };
    let back = Report::from_json(&r.to_json()).unwrap();
    assert_eq!(back, r);
    for c in &back.verdict.counterexamples {
        assert!(replay(&wb, &[&p], &[], c, &b).unwrap());
    }
}
