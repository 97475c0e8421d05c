//! Text, CSV and JSON output. Color only ever touches the text form.

use std::fmt::Write as _;

use bihilb_core::experiments::{GenericReport, VerifyReport};
use bihilb_core::oracle::Grid;
use bihilb_core::{Bidegree, Classification, HFResult, HFTable, Staircase, Verdict};
use serde_json::{json, Value};

use crate::Format;

/// A big integer as a JSON number when it fits, else as a string.
pub fn big<T: ToString>(v: &T) -> Value {
    let s = v.to_string();
    match s.parse::<i64>() {
        Ok(i) => json!(i),
        Err(_) => json!(s),
    }
}

fn pair(mu: Bidegree) -> Value {
    json!([mu.a, mu.b])
}

fn verdict_tag(v: Verdict) -> &'static str {
    match v {
        Verdict::ChiRule => "chi",
        Verdict::DualRule => "dual",
        Verdict::InstanceDependent => "instance",
    }
}

pub fn classification(c: &Classification, format: Format) -> String {
    let members: Vec<String> = c.memberships.iter().map(i64::to_string).collect();
    match format {
        Format::Text => format!(
            "mu: {}\ngamma: {}\nrule: {}\n",
            c.mu,
            if members.is_empty() { "-".to_string() } else { members.join(" ") },
            verdict_tag(c.verdict)
        ),
        Format::Csv => format!(
            "a,b,gamma,rule\n{},{},{},{}\n",
            c.mu.a,
            c.mu.b,
            members.join(";"),
            verdict_tag(c.verdict)
        ),
        Format::Json => format!(
            "{}\n",
            json!({
                "mu": pair(c.mu),
                "gamma": c.memberships,
                "in_gamma0": c.in_gamma0,
                "in_gamma_pos": c.in_gamma_pos,
                "in_gamma_neg1": c.in_gamma_neg1,
                "rule": verdict_tag(c.verdict),
            })
        ),
    }
}

fn status_rule(r: &HFResult) -> (&'static str, &'static str, String) {
    match r {
        HFResult::Known { value, rule } => ("known", rule.tag(), value.to_string()),
        HFResult::InstanceDependent => ("instance", "-", String::new()),
    }
}

const RESET: &str = "\x1b[0m";

/// Gamma_{-1} red, Gamma_0 blue, Gamma_1 green, Gamma_0 meeting a positive strip orange.
fn color_of(c: &Classification) -> Option<&'static str> {
    if c.in_gamma0 && c.in_gamma_pos {
        Some("\x1b[38;5;208m")
    } else if c.in_gamma0 {
        Some("\x1b[34m")
    } else if c.memberships.contains(&1) {
        Some("\x1b[32m")
    } else if c.in_gamma_neg1 {
        Some("\x1b[31m")
    } else {
        None
    }
}

pub fn table(t: &HFTable, format: Format, color: bool) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("a,b,value,status,rule\n");
            for (mu, r, _) in t.iter() {
                let (status, rule, value) = status_rule(r);
                let _ = writeln!(out, "{},{},{},{},{}", mu.a, mu.b, value, status, rule);
            }
            out
        }
        Format::Json => {
            let cells: Vec<Value> = t
                .iter()
                .map(|(mu, r, c)| {
                    let (status, rule, _) = status_rule(r);
                    json!({
                        "mu": pair(mu),
                        "value": r.value().map_or(Value::Null, big),
                        "status": status,
                        "rule": rule,
                        "gamma": c.memberships,
                    })
                })
                .collect();
            format!(
                "{}\n",
                json!({
                    "n": t.spec.shape().n(),
                    "m": t.spec.shape().m(),
                    "d": pair(t.spec.d()),
                    "window": [t.window.lower.a, t.window.lower.b, t.window.upper.a, t.window.upper.b],
                    "cells": cells,
                })
            )
        }
        Format::Text => {
            let w = t
                .cells
                .iter()
                .map(|r| r.value().map_or(1, |v| v.to_string().len()))
                .max()
                .unwrap_or(1);
            let mut out = String::new();
            for b in (t.window.lower.b..=t.window.upper.b).rev() {
                let row: Vec<String> = (t.window.lower.a..=t.window.upper.a)
                    .map(|a| {
                        let mu = Bidegree::new(a, b);
                        let r = t.get(mu).expect("in window");
                        let text = r.value().map_or("?".to_string(), |v| v.to_string());
                        let cell = format!("{text:>w$}");
                        match (color, color_of(t.classification(mu).expect("in window"))) {
                            (true, Some(c)) => format!("{c}{cell}{RESET}"),
                            _ => cell,
                        }
                    })
                    .collect();
                let _ = writeln!(out, "{:>3} | {}", b, row.join(" "));
            }
            out
        }
    }
}

fn corners(st: &Staircase) -> Vec<Value> {
    st.corners().iter().map(|&c| pair(c)).collect()
}

fn corners_text(st: &Staircase) -> String {
    st.corners().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn regularity(guaranteed: &Staircase, observed: Option<&Staircase>, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!("guaranteed: {}\n", corners_text(guaranteed));
            if let Some(o) = observed {
                let _ = writeln!(out, "observed: {}", corners_text(o));
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("kind,a,b\n");
            for c in guaranteed.corners() {
                let _ = writeln!(out, "guaranteed,{},{}", c.a, c.b);
            }
            for c in observed.map_or(&[][..], |o| o.corners()) {
                let _ = writeln!(out, "observed,{},{}", c.a, c.b);
            }
            out
        }
        Format::Json => format!(
            "{}\n",
            json!({
                "guaranteed": corners(guaranteed),
                "observed": observed.map(corners),
            })
        ),
    }
}

pub fn grid(g: &Grid, format: Format) -> String {
    match format {
        Format::Text => g.to_text(),
        Format::Csv => g.to_csv(),
        Format::Json => {
            let w = g.window();
            let cells: Vec<Value> = g.iter().map(|(mu, v)| json!({"mu": pair(mu), "value": v})).collect();
            format!(
                "{}\n",
                json!({
                    "window": [w.lower.a, w.lower.b, w.upper.a, w.upper.b],
                    "cells": cells,
                })
            )
        }
    }
}

pub fn verify_csv(r: &VerifyReport) -> String {
    let mut out = String::from("a,b,formula,oracle,status\n");
    for (mu, v) in r.oracle_grid.iter() {
        let (formula, status) = if let Some(m) = r.mismatches.iter().find(|m| m.mu == mu) {
            (m.formula.to_string(), "mismatch")
        } else if r.informational.iter().any(|(p, _)| *p == mu) {
            (String::new(), "instance")
        } else {
            (v.to_string(), "match")
        };
        let _ = writeln!(out, "{},{},{},{},{}", mu.a, mu.b, formula, v, status);
    }
    out
}

pub fn profiles_csv(r: &GenericReport) -> String {
    let mut out = String::from("axis,index,value\n");
    for (i, v) in r.profile_a.iter().enumerate() {
        let _ = writeln!(out, "a,{i},{v}");
    }
    for (i, v) in r.profile_b.iter().enumerate() {
        let _ = writeln!(out, "b,{i},{v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use bihilb_core::hilbert::hf_table;
    use bihilb_core::regions::classify;
    use bihilb_core::{Shape, Window};
    use num_bigint::BigUint;

    fn example_spec() -> bihilb_core::RegionSpec {
        bihilb_core::RegionSpec::new(Shape::new(2, 2).unwrap(), Bidegree::new(2, 2)).unwrap()
    }

    #[test]
    fn big_numbers_fall_back_to_strings() {
        assert_eq!(big(&BigUint::from(96u32)), json!(96));
        let huge = BigUint::from(u64::MAX) * 4u32;
        assert_eq!(big(&huge), json!(huge.to_string()));
    }

    #[test]
    fn region_colors() {
        let s = example_spec();
        let at = |a, b| color_of(&classify(&s, Bidegree::new(a, b)));
        assert_eq!(at(0, 6), Some("\x1b[38;5;208m"));
        assert_eq!(at(0, 5), Some("\x1b[34m"));
        assert_eq!(at(2, 6), Some("\x1b[32m"));
        assert_eq!(at(3, 3), None);
    }

    #[test]
    fn text_table_marks_open_cells() {
        let t = hf_table(&example_spec(), Window::new(Bidegree::ZERO, Bidegree::new(7, 7)).unwrap()).unwrap();
        let text = table(&t, Format::Text, false);
        assert_eq!(text.lines().last().unwrap(), "  0 |  1  3  6 10 15 21  ?  ?");
        assert!(!text.contains('\x1b'));
    }
}
