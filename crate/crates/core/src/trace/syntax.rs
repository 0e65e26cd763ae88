//! Parenthesized syntax for events, observations, monitors, properties, and
//! hyperproperties.
//!
//! ```text
//! (monitor (states q0 qbad) (init q0) (bad qbad)
//!          (trans (q0 (out prog 0) qbad) (q0 _ q0) (qbad _ qbad)))
//! (property terminates)
//! (property (never (out prog 0)))
//! (hyper (lift (property terminates)))
//! (hyper first-input-ni (universe (obs ((in ctx 0)) term) ...))
//! ```

use lexpr::Value;

use super::{
    lift, Event, EventPattern, Hyperproperty, Kind, Marker, Obs, Origin, Pattern, Property,
    SafetyMonitor,
};
use crate::sexp::{self, arity, err, head, list, list_of, nat, num, sym, symbol};
use crate::Error;

/// The content of a property file.
#[derive(Clone, Debug)]
pub enum PropertySpec {
    Trace(Property),
    Hyper(Hyperproperty),
}

impl PropertySpec {
    pub fn name(&self) -> &str {
        match self {
            PropertySpec::Trace(p) => p.name(),
            PropertySpec::Hyper(h) => h.name(),
        }
    }

    /// The hyperproperty view: trace properties are lifted.
    pub fn into_hyper(self) -> Hyperproperty {
        match self {
            PropertySpec::Trace(p) => lift(p),
            PropertySpec::Hyper(h) => h,
        }
    }
}

pub fn parse_property_file(src: &str, val_cap: u32) -> Result<PropertySpec, Error> {
    let v = sexp::parse(src)?;
    let (h, _) = head(&v)?;
    match h {
        "hyper" => Ok(PropertySpec::Hyper(parse_hyper(&v, val_cap)?)),
        _ => Ok(PropertySpec::Trace(parse_property(&v, val_cap)?)),
    }
}

fn parse_kind(v: &Value) -> Result<Kind, Error> {
    match symbol(v) {
        Some("in") => Ok(Kind::In),
        Some("out") => Ok(Kind::Out),
        _ => err("expected `in` or `out`", v),
    }
}

fn parse_origin(v: &Value) -> Result<Origin, Error> {
    match symbol(v) {
        Some("prog") => Ok(Origin::Prog),
        Some("ctx") => Ok(Origin::Ctx),
        _ => err("expected `prog` or `ctx`", v),
    }
}

fn is_wild(v: &Value) -> bool {
    symbol(v) == Some("_")
}

pub fn parse_event(v: &Value) -> Result<Event, Error> {
    let items = list(v)?;
    let [k, o, n] = items.as_slice() else {
        return err("expected (in|out prog|ctx n)", v);
    };
    Ok(Event {
        kind: parse_kind(k)?,
        origin: parse_origin(o)?,
        value: nat(n)?,
    })
}

pub fn parse_pattern(v: &Value) -> Result<EventPattern, Error> {
    if is_wild(v) {
        return Ok(EventPattern::ANY);
    }
    let items = list(v)?;
    let [k, o, n] = items.as_slice() else {
        return err("expected an event pattern", v);
    };
    Ok(EventPattern {
        kind: if is_wild(k) { Pattern::Any } else { Pattern::Exactly(parse_kind(k)?) },
        origin: if is_wild(o) { Pattern::Any } else { Pattern::Exactly(parse_origin(o)?) },
        value: if is_wild(n) { Pattern::Any } else { Pattern::Exactly(nat(n)?) },
    })
}

/// `(obs (e ...) term|incomplete)`
pub fn parse_obs(v: &Value) -> Result<Obs, Error> {
    let (h, args) = head(v)?;
    if h != "obs" {
        return err("expected (obs ...)", v);
    }
    let args = arity("obs", &args, 2, v)?;
    let events = list(args[0])?
        .into_iter()
        .map(parse_event)
        .collect::<Result<Vec<_>, _>>()?;
    let marker = match symbol(args[1]) {
        Some("term") => Marker::Term,
        Some("incomplete") => Marker::Incomplete,
        _ => return err("expected `term` or `incomplete`", args[1]),
    };
    Ok(Obs::new(events, marker))
}

fn symbols(args: &[&Value]) -> Result<Vec<String>, Error> {
    args.iter()
        .map(|a| match symbol(a) {
            Some(s) => Ok(s.to_string()),
            None => err("expected a state name", a),
        })
        .collect()
}

pub fn parse_monitor(v: &Value, val_cap: u32) -> Result<SafetyMonitor, Error> {
    let (h, clauses) = head(v)?;
    if h != "monitor" {
        return err("expected (monitor ...)", v);
    }
    let mut states = None;
    let mut init = None;
    let mut bad = Vec::new();
    let mut rules = Vec::new();
    for c in clauses {
        let (tag, args) = head(c)?;
        match tag {
            "states" => states = Some(symbols(&args)?),
            "init" => init = Some(symbols(arity("init", &args, 1, c)?)?.remove(0)),
            "bad" => bad = symbols(&args)?,
            "trans" => {
                for r in args {
                    let items = list(r)?;
                    let [from, pat, to] = items.as_slice() else {
                        return err("expected (state pattern state)", r);
                    };
                    let from = symbols(&[from])?.remove(0);
                    let to = symbols(&[to])?.remove(0);
                    rules.push((from, parse_pattern(pat)?, to));
                }
            }
            _ => return err("unknown monitor clause", c),
        }
    }
    let Some(states) = states else {
        return err("monitor lacks (states ...)", v);
    };
    let Some(init) = init else {
        return err("monitor lacks (init ...)", v);
    };
    let bad: Vec<&str> = bad.iter().map(String::as_str).collect();
    let rules = rules
        .iter()
        .map(|(f, p, t)| (f.as_str(), *p, t.as_str()))
        .collect();
    SafetyMonitor::new(states, &init, &bad, rules, val_cap)
}

pub fn parse_property(v: &Value, val_cap: u32) -> Result<Property, Error> {
    let (h, args) = head(v)?;
    match h {
        "monitor" => Ok(Property::from_monitor(
            format!("monitor {v}"),
            parse_monitor(v, val_cap)?,
        )),
        "property" => {
            let args = arity("property", &args, 1, v)?;
            let body = args[0];
            match symbol(body) {
                Some("terminates") => return Ok(Property::terminates()),
                Some("true") => return Ok(Property::top()),
                Some(_) => return err("unknown property", body),
                None => {}
            }
            let (form, fargs) = head(body)?;
            match form {
                "never" => {
                    let fargs = arity("never", &fargs, 1, body)?;
                    let pat = parse_pattern(fargs[0])?;
                    Ok(Property::from_monitor(
                        format!("never {}", fargs[0]),
                        SafetyMonitor::never(pat, val_cap),
                    ))
                }
                "equals" => {
                    let fargs = arity("equals", &fargs, 1, body)?;
                    Ok(Property::equals(parse_obs(fargs[0])?))
                }
                _ => err("unknown property form", body),
            }
        }
        _ => err("expected (monitor ...) or (property ...)", v),
    }
}

pub fn parse_hyper(v: &Value, val_cap: u32) -> Result<Hyperproperty, Error> {
    let (h, args) = head(v)?;
    if h != "hyper" || args.is_empty() || args.len() > 2 {
        return err("expected (hyper body [(universe ...)])", v);
    }
    let body = args[0];
    let hp = match symbol(body) {
        Some("top") => Hyperproperty::top(),
        Some("first-input-ni") => Hyperproperty::first_input_ni(),
        Some(_) => return err("unknown hyperproperty", body),
        None => {
            let (form, fargs) = head(body)?;
            match form {
                "lift" => lift(parse_property(arity("lift", &fargs, 1, body)?[0], val_cap)?),
                "min-size" => Hyperproperty::min_size(nat(arity("min-size", &fargs, 1, body)?[0])? as usize),
                "first-output-diversity" => Hyperproperty::first_output_diversity(
                    nat(arity("first-output-diversity", &fargs, 1, body)?[0])? as usize,
                ),
                _ => return err("unknown hyperproperty form", body),
            }
        }
    };
    match args.get(1) {
        None => Ok(hp),
        Some(u) => {
            let (tag, members) = head(u)?;
            if tag != "universe" {
                return err("expected (universe ...)", u);
            }
            let obs = members.into_iter().map(parse_obs).collect::<Result<Vec<_>, _>>()?;
            Ok(hp.with_universe(obs))
        }
    }
}

pub fn event_to_sexp(e: &Event) -> Value {
    list_of([
        sym(match e.kind {
            Kind::In => "in",
            Kind::Out => "out",
        }),
        sym(e.origin.as_str()),
        num(e.value),
    ])
}

pub fn obs_to_sexp(o: &Obs) -> Value {
    list_of([
        sym("obs"),
        list_of(o.events.iter().map(event_to_sexp)),
        sym(match o.marker {
            Marker::Term => "term",
            Marker::Incomplete => "incomplete",
        }),
    ])
}

fn pattern_to_sexp(p: &EventPattern) -> Value {
    if *p == EventPattern::ANY {
        return sym("_");
    }
    list_of([
        match p.kind {
            Pattern::Any => sym("_"),
            Pattern::Exactly(Kind::In) => sym("in"),
            Pattern::Exactly(Kind::Out) => sym("out"),
        },
        match p.origin {
            Pattern::Any => sym("_"),
            Pattern::Exactly(o) => sym(o.as_str()),
        },
        match p.value {
            Pattern::Any => sym("_"),
            Pattern::Exactly(n) => num(n),
        },
    ])
}

pub fn monitor_to_sexp(m: &SafetyMonitor) -> Value {
    let mut states = vec![sym("states")];
    states.extend(m.states().iter().map(|s| sym(s)));
    let mut bad = vec![sym("bad")];
    bad.extend(m.bad_states().map(sym));
    let mut trans = vec![sym("trans")];
    trans.extend(
        m.rules()
            .map(|(f, p, t)| list_of([sym(f), pattern_to_sexp(p), sym(t)])),
    );
    list_of([
        sym("monitor"),
        list_of(states),
        list_of([sym("init"), sym(m.initial())]),
        list_of(bad),
        list_of(trans),
    ])
}
