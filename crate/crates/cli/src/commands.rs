use std::fmt::Write;

use aperiodica::betanum::{
    beta_integers, beta_substitution, cap_equivalence, greedy_expand, parry_admissible,
    renyi_development, BetaBasis, QuadraticSign,
};
use aperiodica::capcore::{word_string, CapSequence, SteppingFn};
use aperiodica::exactnum::parse_literal;
use aperiodica::selfsim::{check_selfsimilar_config, find_factor, verify_inclusion};
use aperiodica::substderive::{derive, merge_letters, verify_projection, DeriveOptions};
use aperiodica::wordcomb::{
    complexity, complexity_counts, dn_breakpoints, dn_cells, factors_of, rauzy as rauzy_graph,
    special_factors, Side,
};
use aperiodica::QuadraticReal;
use serde_json::{json, Map, Value};

use crate::{
    AnalyzeArgs, BetaArgs, CliError, DnArgs, GenArgs, GenFormat, GraphFormat, RauzyArgs,
    SelfsimArgs, SubstArgs, What,
};

const RENYI_TERMS: usize = 4096;

fn pretty(v: &impl serde::Serialize) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn value(v: &impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn gen(a: &GenArgs) -> Result<String, CliError> {
    let (p, w) = a.set.resolve()?;
    let seq = CapSequence::new(&p, &w)?;
    match a.format {
        GenFormat::Json => pretty(&seq.points(a.left, a.right)),
        GenFormat::Csv => {
            let mut s = String::from("p,q,value,star\n");
            for x in seq.points(a.left, a.right) {
                let _ = writeln!(s, "{},{},{},{}", x.p, x.q, x.value, x.star);
            }
            Ok(s)
        }
        GenFormat::Word => {
            let u = seq.word(a.left, a.right);
            Ok(format!(
                "{}|{}\n",
                word_string(&u.left),
                word_string(&u.right)
            ))
        }
    }
}

pub fn analyze(a: &AnalyzeArgs) -> Result<String, CliError> {
    let (p, w) = a.set.resolve()?;
    let n = a.n as usize;
    let out = match a.what {
        What::Factors => {
            let fs = factors_of(&SteppingFn::new(&p, &w)?, n)?;
            let list: Vec<Value> = fs
                .factors
                .iter()
                .map(|f| json!({"word": f.as_string(), "start": value(&f.start), "end": value(&f.end)}))
                .collect();
            json!({"n": n, "count": list.len(), "factors": list})
        }
        What::Complexity => {
            let counts = complexity_counts(&SteppingFn::new(&p, &w)?, n)?;
            let c = complexity(&p, &w, n)?;
            json!({"n": n, "counts": counts, "length_in_ring": c.length_in_ring, "n0": c.n0})
        }
        What::Special => {
            let render = |side| -> Result<Vec<Value>, CliError> {
                Ok(special_factors(&p, &w, n, side)?
                    .iter()
                    .map(|f| json!({"word": word_string(&f.word), "extensions": word_string(&f.extensions)}))
                    .collect())
            };
            json!({"n": n, "left": render(Side::Left)?, "right": render(Side::Right)?})
        }
        What::Density => {
            let fs = factors_of(&SteppingFn::new(&p, &w)?, n)?;
            let mut list = Vec::new();
            for f in &fs.factors {
                list.push(json!({"word": f.as_string(), "density": value(&fs.density(&f.word)?)}));
            }
            json!({"n": n, "densities": list})
        }
        What::Dn => dn_json(&p.eps, n)?,
    };
    pretty(&out)
}

pub fn rauzy(a: &RauzyArgs) -> Result<String, CliError> {
    let (p, w) = a.set.resolve()?;
    let g = rauzy_graph(&p, &w, a.n as usize)?;
    match a.format {
        GraphFormat::Dot => Ok(g.to_dot(a.weights, a.binary)),
        GraphFormat::Json => {
            let vertices: Vec<String> = g.vertices.iter().map(|v| word_string(v)).collect();
            let edges: Vec<Value> = g
                .edges
                .iter()
                .map(|e| {
                    json!({"from": e.from, "to": e.to, "word": word_string(&e.word), "weight": e.weight.to_string()})
                })
                .collect();
            pretty(&json!({"n": g.n, "vertices": vertices, "edges": edges}))
        }
    }
}

fn dn_json(eps: &QuadraticReal, n: usize) -> Result<Value, CliError> {
    let pts = dn_breakpoints(eps, n)?;
    let cells = dn_cells(eps, n)?;
    Ok(json!({"eps": value(eps), "n": n, "breakpoints": value(&pts), "cells": value(&cells)}))
}

pub fn dn(a: &DnArgs) -> Result<String, CliError> {
    pretty(&dn_json(&a.eps, a.n as usize)?)
}

fn basis(spec: &str) -> Result<BetaBasis, CliError> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if let [m, n, sign] = parts[..] {
        let bad = || {
            CliError::Domain(aperiodica::Error::InvalidParameter(format!(
                "bad polynomial {spec:?}"
            )))
        };
        let m: u64 = m.parse().map_err(|_| bad())?;
        let n: u64 = n.parse().map_err(|_| bad())?;
        let sign = match sign {
            "+" => QuadraticSign::Plus,
            "-" => QuadraticSign::Minus,
            _ => return Err(bad()),
        };
        return Ok(BetaBasis::from_polynomial(m, n, sign)?);
    }
    Ok(BetaBasis::new(parse_literal(spec)?)?)
}

pub fn beta(a: &BetaArgs) -> Result<String, CliError> {
    let b = basis(&a.beta)?;
    let mut out = Map::new();
    out.insert("beta".into(), value(b.beta()));
    if let Some(pr) = b.profile() {
        out.insert(
            "profile".into(),
            json!({
                "minimal_polynomial": pr.minimal_polynomial.to_string(),
                "quadratic_integer": pr.is_quadratic_integer,
                "pisot": pr.is_pisot,
                "unit": pr.is_unit,
            }),
        );
    }
    if let Some(x) = &a.expand {
        let d = greedy_expand(x, &b, a.depth)?;
        out.insert(
            "expansion".into(),
            json!({"digits": d.to_string(), "exact": d.exact}),
        );
    }
    if a.renyi {
        let r = renyi_development(&b, RENYI_TERMS)?;
        out.insert("renyi".into(), value(&r));
    }
    if let Some(d) = &a.admissible {
        out.insert("admissible".into(), json!(parry_admissible(&d.0, &b)?));
    }
    if let Some(bound) = &a.integers {
        let z = beta_integers(&b, bound)?;
        let digits: Vec<String> = z.digits.iter().map(|d| d.to_string()).collect();
        out.insert(
            "integers".into(),
            json!({"points": value(&z.points), "digits": digits, "gap_values": value(&z.gap_values), "gap_word": z.gap_word()}),
        );
    }
    if a.subst {
        out.insert("substitution".into(), value(&beta_substitution(&b)?));
    }
    if let Some(n) = a.equivalence {
        out.insert("equivalence".into(), value(&cap_equivalence(&b, n)?));
    }
    pretty(&Value::Object(out))
}

pub fn selfsim(a: &SelfsimArgs) -> Result<String, CliError> {
    let (p, w) = a.set.resolve()?;
    let mut out = Map::new();
    let check = a.check || !(a.find || a.verify.is_some());
    if check {
        out.insert("check".into(), value(&check_selfsimilar_config(&p, &w)));
    }
    if a.find || a.verify.is_some() {
        let f = find_factor(&p, &w)?;
        out.insert(
            "factor".into(),
            json!({"gamma": value(&f.gamma), "conjugate": value(&f.conjugate), "certificate": f.certificate}),
        );
        if let Some(n) = a.verify {
            out.insert("inclusion".into(), value(&verify_inclusion(&f, &p, &w, n)?));
        }
    }
    pretty(&Value::Object(out))
}

pub fn subst(a: &SubstArgs) -> Result<String, CliError> {
    let eta = a.eta.clone().unwrap_or_else(|| a.eps.conjugate().abs());
    let p = aperiodica::capcore::CapParams::new(a.eps.clone(), eta)?;
    let w = aperiodica::capcore::Window::new(a.c.clone(), a.len.clone())?;
    let opts = DeriveOptions {
        gamma_power: a.gamma_power,
        ..DeriveOptions::default()
    };
    let r = derive(&p, &w, &opts)?;
    let Value::Object(mut out) = value(&r) else {
        unreachable!("struct serializes to an object")
    };
    if let Some(k) = a.merge {
        let m = merge_letters(&r.morphism, k, Some(&r.projection_map()))?;
        let classes: Vec<Vec<&str>> = m
            .classes
            .iter()
            .map(|c| c.iter().map(|&x| r.morphism.names()[x].as_str()).collect())
            .collect();
        out.insert(
            "merge".into(),
            json!({"power": k, "classes": classes, "quotient": value(&m.quotient), "induced": m.induced.as_ref().map(value)}),
        );
    }
    if let Some(n) = a.iterate {
        out.insert("iterate".into(), json!(r.iterate(n)?.render(&r.morphism)));
    }
    if let Some(n) = a.verify {
        out.insert("verify".into(), value(&verify_projection(&r, &p, &w, n)?));
    }
    pretty(&Value::Object(out))
}
