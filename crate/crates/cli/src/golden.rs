//! Replays the reference examples and compares them with a golden JSON file.

use std::collections::BTreeSet;

use aperiodica::betanum::{beta_substitution, cap_equivalence, BetaBasis};
use aperiodica::capcore::{binary_string, word_string, CapParams, Window};
use aperiodica::exactnum::parse_literal;
use aperiodica::selfsim::find_factor;
use aperiodica::substderive::{derive, merge_letters, DeriveOptions};
use aperiodica::wordcomb::{dn_breakpoints, dn_cells, factors, rauzy};
use aperiodica::QuadraticReal;
use serde_json::{json, Value};

use crate::{CliError, PaperCheckArgs};

pub const GROUPS: [&str; 5] = ["subst", "fibonacci", "dn", "selfsim", "beta"];

const EMBEDDED: &str = include_str!("../golden/golden.json");

type Outcome = aperiodica::Result<()>;
type Group = (&'static str, fn(&mut Checker<'_>) -> Outcome);

struct Checker<'a> {
    golden: &'a Value,
    group: &'static str,
    results: Vec<Value>,
}

impl Checker<'_> {
    fn record(&mut self, key: &str, passed: bool, expected: Value, actual: Value) {
        let name = format!("{}.{key}", self.group);
        self.results
            .push(json!({"name": name, "passed": passed, "expected": expected, "actual": actual}));
    }

    fn expected(&self, key: &str) -> Value {
        self.golden
            .get(self.group)
            .and_then(|g| g.get(key))
            .cloned()
            .unwrap_or(Value::Null)
    }

    fn eq(&mut self, key: &str, actual: Value) {
        let expected = self.expected(key);
        self.record(key, expected == actual, expected, actual);
    }

    /// Compares number literals by value.
    fn nums(&mut self, key: &str, actual: &[QuadraticReal]) {
        let expected = self.expected(key);
        let parsed: Option<Vec<QuadraticReal>> = match &expected {
            Value::String(s) => parse_literal(s).ok().map(|x| vec![x]),
            Value::Array(v) => v
                .iter()
                .map(|x| x.as_str().and_then(|s| parse_literal(s).ok()))
                .collect(),
            _ => None,
        };
        let passed = parsed.as_deref() == Some(actual);
        let shown: Vec<String> = actual.iter().map(|x| x.to_string()).collect();
        let actual = if expected.is_string() && shown.len() == 1 {
            json!(shown[0])
        } else {
            json!(shown)
        };
        self.record(key, passed, expected, actual);
    }

    /// Compares string lists as sets.
    fn set(&mut self, key: &str, actual: BTreeSet<String>) {
        let expected = self.expected(key);
        let want: Option<BTreeSet<String>> = expected
            .as_array()
            .and_then(|v| v.iter().map(|x| x.as_str().map(String::from)).collect());
        self.record(key, want.as_ref() == Some(&actual), expected, json!(actual));
    }
}

fn octagonal() -> aperiodica::Result<(CapParams, Window)> {
    let e = parse_literal("-1/sqrt(2)")?;
    let len = parse_literal("-2+2*sqrt(2)")?;
    Ok((
        CapParams::new(e.clone(), e.conjugate())?,
        Window::new(QuadraticReal::zero(), len)?,
    ))
}

fn fibonacci() -> aperiodica::Result<(CapParams, Window)> {
    let t = QuadraticReal::tau();
    let p = CapParams::new(-(QuadraticReal::one() / &t), t)?;
    Ok((
        p,
        Window::new(QuadraticReal::from_int(-1), QuadraticReal::one())?,
    ))
}

fn subst(c: &mut Checker<'_>) -> Outcome {
    let (p, w) = octagonal()?;
    let r = derive(&p, &w, &DeriveOptions::default())?;
    let m = &r.morphism;
    c.nums("gamma", std::slice::from_ref(&r.gamma));
    c.nums("points", &r.s);
    let images: serde_json::Map<String, Value> = m
        .names()
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), json!(m.render(m.image(i)))))
        .collect();
    c.eq("images", Value::Object(images));
    c.eq("j0", json!(r.j[0]));
    c.eq("j3", json!(r.j[3]));
    c.eq(
        "initial",
        json!(format!(
            "{}|{}",
            m.names()[r.initial.0],
            m.names()[r.initial.1]
        )),
    );
    c.eq("projection", json!(word_string(&r.projection)));
    c.eq("round1", json!(r.iterate(1)?.render(m)));
    c.eq("round2", json!(r.iterate(2)?.render(m)));
    let merged = merge_letters(m, 2, Some(&r.projection_map()))?;
    let induced = merged
        .induced
        .ok_or_else(|| aperiodica::Error::Inconsistent("no induced morphism".into()))?;
    for name in ["A", "C"] {
        let img = induced
            .letter(name)
            .map(|a| induced.render(induced.image(a)));
        c.eq(&format!("merged_{name}"), json!(img));
    }
    Ok(())
}

fn fib(c: &mut Checker<'_>) -> Outcome {
    let (p, w) = fibonacci()?;
    for n in 3..=5 {
        let words = factors(&p, &w, n)?.words();
        let bin: BTreeSet<String> = words
            .iter()
            .map(|x| binary_string(x).unwrap_or_else(|| word_string(x)))
            .collect();
        c.set(&format!("L{n}"), bin);
    }
    for n in 3..=4 {
        let g = rauzy(&p, &w, n)?;
        c.eq(
            &format!("rauzy{n}"),
            json!([g.vertices.len(), g.edges.len()]),
        );
    }
    Ok(())
}

fn dn(c: &mut Checker<'_>) -> Outcome {
    let eps = -(QuadraticReal::one() / QuadraticReal::tau());
    c.nums("D4", &dn_breakpoints(&eps, 4)?);
    let cells: Vec<BTreeSet<String>> = dn_cells(&eps, 4)?
        .into_iter()
        .map(|x| x.factors.into_iter().collect())
        .collect();
    let expected = c.expected("cells");
    let want: Option<Vec<BTreeSet<String>>> = expected.as_array().and_then(|v| {
        v.iter()
            .map(|cell| {
                cell.as_array()
                    .and_then(|x| x.iter().map(|s| s.as_str().map(String::from)).collect())
            })
            .collect()
    });
    c.record(
        "cells",
        want.as_ref() == Some(&cells),
        expected,
        json!(cells),
    );
    Ok(())
}

fn selfsim(c: &mut Checker<'_>) -> Outcome {
    let t = QuadraticReal::tau();
    let p = CapParams::new(-(QuadraticReal::one() / &t), t)?;
    let w = Window::new(QuadraticReal::zero(), QuadraticReal::one())?;
    let f = find_factor(&p, &w)?;
    c.nums("fibonacci_gamma", std::slice::from_ref(&f.gamma));
    Ok(())
}

fn beta(c: &mut Checker<'_>) -> Outcome {
    let b = BetaBasis::new(QuadraticReal::tau())?;
    c.eq(
        "tau_substitution",
        json!(beta_substitution(&b)?.to_string()),
    );
    c.eq("tau_equivalence", json!(cap_equivalence(&b, 1000)?.holds()));
    Ok(())
}

pub fn paper_check(a: &PaperCheckArgs) -> Result<String, CliError> {
    let (text, source) = match &a.golden {
        Some(path) => {
            let t = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            (t, path.display().to_string())
        }
        None => (EMBEDDED.to_string(), "embedded".to_string()),
    };
    let golden: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Io(format!("golden file {source} is not valid JSON: {e}")))?;
    let runs: [Group; 5] = [
        ("subst", subst),
        ("fibonacci", fib),
        ("dn", dn),
        ("selfsim", selfsim),
        ("beta", beta),
    ];
    let mut results = Vec::new();
    for (group, run) in runs {
        if a.only.as_deref().is_some_and(|o| o != group) {
            continue;
        }
        let mut c = Checker {
            golden: &golden,
            group,
            results: Vec::new(),
        };
        if let Err(e) = run(&mut c) {
            c.record("error", false, Value::Null, json!(e.to_string()));
        }
        results.extend(c.results);
    }
    let failed = results
        .iter()
        .filter(|r| r["passed"] == json!(false))
        .count();
    let summary = json!({
        "golden": source,
        "passed": results.len() - failed,
        "failed": failed,
        "checks": results,
    });
    let mut out =
        serde_json::to_string_pretty(&summary).map_err(|e| CliError::Io(e.to_string()))?;
    out.push('\n');
    if failed == 0 {
        Ok(out)
    } else {
        Err(CliError::Failed(out))
    }
}
