//! Analysis and simulation reports in human, JSON and CSV form.
//!
//! Machine formats carry every rational as a `"p/q"` string plus a sibling
//! `<field>_decimal` approximation that is for display only. Output order is
//! fixed, and nothing time-dependent is emitted.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use twospace_core::adversary::{Diagnostics, Guess};
use twospace_core::montecarlo::{SimConfig, SimResult};
use twospace_core::rational::{fraction_string, to_f64};
use twospace_core::{
    Analysis, AttackReport, ConditionCheck, Fallback, OverlapAnalysis, Rational, ReceiverSuccess,
    SchemeInstance, Strategy,
};

use crate::error::CliError;

pub const TOOL_NAME: &str = "twospace";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

pub fn input_digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub scheme_name: String,
    pub input_digest: String,
    pub violations: Vec<String>,
    pub space_prior: Rational,
    pub overlap: OverlapAnalysis,
    pub receiver: ReceiverSuccess,
    pub attacks: Vec<AttackReport>,
    /// `Err` carries the reason the conditions could not be evaluated.
    pub conditions: Result<ConditionCheck, String>,
}

pub fn build_report(
    scheme: &SchemeInstance,
    input_digest: String,
    strategies: &[Strategy],
) -> Result<AnalysisReport, CliError> {
    let violations = scheme.validate();
    if !violations.is_empty() {
        return Err(CliError::Invalid(violations));
    }
    let analysis = Analysis::new(scheme)?;
    let attacks = strategies.iter().map(|s| analysis.run(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(AnalysisReport {
        scheme_name: scheme.name.clone(),
        input_digest,
        violations: Vec::new(),
        space_prior: scheme.space_prior.clone(),
        overlap: analysis.overlap.clone(),
        receiver: analysis.receiver.clone(),
        attacks,
        conditions: analysis.check_conditions().map_err(|e| e.to_string()),
    })
}

fn put(map: &mut Map<String, Value>, key: &str, r: &Rational) {
    map.insert(key.to_string(), Value::String(fraction_string(r)));
    map.insert(format!("{key}_decimal"), json!(to_f64(r)));
}

fn put_opt(map: &mut Map<String, Value>, key: &str, r: Option<&Rational>) {
    match r {
        Some(r) => put(map, key, r),
        None => {
            map.insert(key.to_string(), Value::String("undefined".into()));
            map.insert(format!("{key}_decimal"), Value::Null);
        }
    }
}

fn strategy_json(s: &Strategy) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("strategy".into(), s.name().into());
    match s {
        Strategy::AssumeSpace { fallback, .. } => {
            m.insert("fallback".into(), fallback_name(*fallback).into());
        }
        Strategy::Mixed { lambda } => put(&mut m, "lambda", lambda),
        _ => {}
    }
    m
}

pub fn fallback_name(f: Fallback) -> &'static str {
    match f {
        Fallback::Abstain => "abstain",
        Fallback::UniformGuess => "uniform",
    }
}

fn diagnostics_json(m: &mut Map<String, Value>, d: &Diagnostics) {
    match d {
        Diagnostics::Assumption { engaged } => {
            m.insert("engaged".into(), (*engaged).into());
        }
        Diagnostics::Mixed { engaged_s1, engaged_s2 } => {
            m.insert("engaged_s1".into(), (*engaged_s1).into());
            m.insert("engaged_s2".into(), (*engaged_s2).into());
        }
        Diagnostics::Bayes { posterior_zero, tie } => {
            put(m, "posterior_0", posterior_zero);
            m.insert("tie".into(), (*tie).into());
        }
        Diagnostics::Emulation { sigma, p, formula, both, independent, gap } => {
            put(m, "sigma", sigma);
            put(m, "p", p);
            put(m, "formula", formula);
            put(m, "sigma_and_p", both);
            m.insert("independent".into(), (*independent).into());
            put(m, "independence_gap", gap);
        }
        Diagnostics::Triple { zeros, ones } => {
            m.insert("pool_0".into(), (*zeros).into());
            m.insert("pool_1".into(), (*ones).into());
        }
    }
}

fn guess_json(m: &mut Map<String, Value>, g: &Guess) {
    put(m, "guess_0", &g.zero);
    put(m, "guess_1", &g.one);
}

fn attack_json(r: &AttackReport) -> Value {
    let mut m = strategy_json(&r.strategy);
    put(&mut m, "P_E", &r.pe);
    put(&mut m, "P_B", &r.pb);
    if let Some(f) = &r.formula_prediction {
        put(&mut m, "formula_prediction", f);
    }
    if let Some(g) = &r.formula_gap {
        put(&mut m, "formula_gap", g);
    }
    m.insert("notes".into(), r.notes.iter().map(|n| n.to_string()).collect::<Vec<_>>().into());
    if let Some(e) = &r.emulation {
        let mut s = Map::new();
        put(&mut s, "sigma", &e.sigma);
        put(&mut s, "p", &e.p);
        put(&mut s, "naive_formula", &e.naive_formula);
        m.insert("global".into(), s.into());
    }
    let rows: Vec<Value> = r
        .transcripts
        .iter()
        .map(|(ct, t)| {
            let mut row = Map::new();
            row.insert("ct".into(), ct.clone().into());
            put(&mut row, "mass", &t.mass);
            put(&mut row, "eve_correct", &t.eve_correct);
            guess_json(&mut row, &t.guess);
            diagnostics_json(&mut row, &t.diagnostics);
            row.into()
        })
        .collect();
    m.insert("transcripts".into(), rows.into());
    m.into()
}

fn conditions_json(c: &Result<ConditionCheck, String>) -> Value {
    match c {
        Ok(c) => {
            let mut m = Map::new();
            put(&mut m, "q1", &c.q1);
            put(&mut m, "q2", &c.q2);
            put(&mut m, "tau1", &c.tau1);
            put(&mut m, "P_E", &c.pe);
            put(&mut m, "P_B", &c.pb);
            m.insert("q2_gt_q1".into(), c.q2_gt_q1.into());
            m.insert("sum_gt_1".into(), c.sum_gt_1.into());
            m.insert("tau1_lt_1".into(), c.tau1_lt_1.into());
            m.insert("engagement_gt_1".into(), c.engagement_gt_1.into());
            m.insert("verdict_PE_lt_PB".into(), c.verdict_pe_lt_pb.into());
            m.into()
        }
        Err(e) => json!({ "error": e }),
    }
}

pub fn report_json(r: &AnalysisReport) -> Value {
    let o = &r.overlap;
    let mut overlap = Map::new();
    overlap.insert("S12".into(), o.s12.iter().cloned().collect::<Vec<_>>().into());
    overlap.insert("S21".into(), o.s21.iter().cloned().collect::<Vec<_>>().into());
    overlap.insert(
        "partial_overlap_keys".into(),
        o.partial_overlap_keys.iter().cloned().collect::<Vec<_>>().into(),
    );
    put(&mut overlap, "q1", &o.q1);
    put(&mut overlap, "q2", &o.q2);
    put_opt(&mut overlap, "tau1", o.tau1.as_ref());
    put_opt(&mut overlap, "tau2", o.tau2.as_ref());

    let mut receiver = Map::new();
    put(&mut receiver, "P_B", &r.receiver.pb);
    let rows: Vec<Value> = r
        .receiver
        .per_transcript
        .iter()
        .map(|(ct, t)| {
            let mut row = Map::new();
            row.insert("ct".into(), ct.clone().into());
            put(&mut row, "mass", &t.mass);
            put(&mut row, "p", &t.p);
            row.into()
        })
        .collect();
    receiver.insert("transcripts".into(), rows.into());

    let mut top = Map::new();
    top.insert("tool".into(), json!({ "name": TOOL_NAME, "version": TOOL_VERSION }));
    top.insert("input_digest".into(), r.input_digest.clone().into());
    top.insert("scheme".into(), r.scheme_name.clone().into());
    top.insert("validation".into(), r.violations.clone().into());
    put(&mut top, "space_prior", &r.space_prior);
    top.insert("overlap".into(), overlap.into());
    top.insert("receiver".into(), receiver.into());
    top.insert("attacks".into(), r.attacks.iter().map(attack_json).collect::<Vec<_>>().into());
    top.insert("conditions".into(), conditions_json(&r.conditions));
    top.into()
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

struct CsvRows(csv::Writer<Vec<u8>>);

impl CsvRows {
    fn new() -> Self {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["section", "item", "transcript", "quantity", "exact", "decimal"])
            .expect("in-memory write");
        CsvRows(w)
    }

    fn rat(&mut self, section: &str, item: &str, ct: &str, quantity: &str, r: &Rational) {
        let (exact, decimal) = (fraction_string(r), to_f64(r).to_string());
        self.0
            .write_record([section, item, ct, quantity, &exact, &decimal])
            .expect("in-memory write");
    }

    fn text(&mut self, section: &str, item: &str, ct: &str, quantity: &str, value: &str) {
        self.0.write_record([section, item, ct, quantity, value, ""]).expect("in-memory write");
    }

    fn finish(self) -> String {
        String::from_utf8(self.0.into_inner().expect("flush")).expect("utf-8")
    }
}

fn strategy_label(s: &Strategy) -> String {
    match s {
        Strategy::AssumeSpace { fallback, .. } => format!("{}/{}", s.name(), fallback_name(*fallback)),
        Strategy::Mixed { lambda } => format!("mixed/{}", fraction_string(lambda)),
        _ => s.name().to_string(),
    }
}

pub fn report_csv(r: &AnalysisReport) -> String {
    let mut w = CsvRows::new();
    let o = &r.overlap;
    w.text("scheme", &r.scheme_name, "", "input_digest", &r.input_digest);
    w.rat("scheme", &r.scheme_name, "", "space_prior", &r.space_prior);
    let join = |s: &std::collections::BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(" ");
    w.text("overlap", "", "", "S12", &join(&o.s12));
    w.text("overlap", "", "", "S21", &join(&o.s21));
    w.text("overlap", "", "", "partial_overlap_keys", &join(&o.partial_overlap_keys));
    w.rat("overlap", "", "", "q1", &o.q1);
    w.rat("overlap", "", "", "q2", &o.q2);
    for (name, tau) in [("tau1", &o.tau1), ("tau2", &o.tau2)] {
        match tau {
            Some(t) => w.rat("overlap", "", "", name, t),
            None => w.text("overlap", "", "", name, "undefined"),
        }
    }
    w.rat("receiver", "", "", "P_B", &r.receiver.pb);
    for (ct, t) in &r.receiver.per_transcript {
        w.rat("receiver", "", ct, "mass", &t.mass);
        w.rat("receiver", "", ct, "p", &t.p);
    }
    for a in &r.attacks {
        let item = strategy_label(&a.strategy);
        w.rat("attack", &item, "", "P_E", &a.pe);
        if let Some(f) = &a.formula_prediction {
            w.rat("attack", &item, "", "formula_prediction", f);
        }
        if let Some(g) = &a.formula_gap {
            w.rat("attack", &item, "", "formula_gap", g);
        }
        if let Some(e) = &a.emulation {
            w.rat("attack", &item, "", "global_sigma", &e.sigma);
            w.rat("attack", &item, "", "naive_formula", &e.naive_formula);
        }
        for n in &a.notes {
            w.text("attack", &item, "", "note", &n.to_string());
        }
        for (ct, t) in &a.transcripts {
            w.rat("attack", &item, ct, "eve_correct", &t.eve_correct);
            if let Diagnostics::Emulation { sigma, formula, independent, .. } = &t.diagnostics {
                w.rat("attack", &item, ct, "sigma", sigma);
                w.rat("attack", &item, ct, "formula", formula);
                w.text("attack", &item, ct, "independent", &independent.to_string());
            }
        }
    }
    match &r.conditions {
        Ok(c) => {
            for (name, v) in [
                ("q2_gt_q1", c.q2_gt_q1),
                ("sum_gt_1", c.sum_gt_1),
                ("tau1_lt_1", c.tau1_lt_1),
                ("engagement_gt_1", c.engagement_gt_1),
                ("verdict_PE_lt_PB", c.verdict_pe_lt_pb),
            ] {
                w.text("conditions", "", "", name, &v.to_string());
            }
        }
        Err(e) => w.text("conditions", "", "", "error", e),
    }
    w.finish()
}

pub fn show(r: &Rational) -> String {
    format!("{} ({})", fraction_string(r), to_f64(r))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn report_human(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let o = &r.overlap;
    let set = |k: &std::collections::BTreeSet<String>| {
        format!("{{{}}}", k.iter().cloned().collect::<Vec<_>>().join(", "))
    };
    let tau = |t: &Option<Rational>| t.as_ref().map(show).unwrap_or_else(|| "undefined".into());
    let _ = writeln!(s, "{TOOL_NAME} {TOOL_VERSION}");
    let _ = writeln!(s, "scheme: {} ({})", r.scheme_name, r.input_digest);
    let _ = writeln!(s, "space prior: {}", show(&r.space_prior));
    let _ = writeln!(s, "overlap: S12 = {}, S21 = {}, partial = {}", set(&o.s12), set(&o.s21), set(&o.partial_overlap_keys));
    let _ = writeln!(s, "  q1 = {}, q2 = {}", show(&o.q1), show(&o.q2));
    let _ = writeln!(s, "  tau1 = {}, tau2 = {}", tau(&o.tau1), tau(&o.tau2));
    let _ = writeln!(s, "receiver: P_B = {}", show(&r.receiver.pb));
    for (ct, t) in &r.receiver.per_transcript {
        let _ = writeln!(s, "  {ct}: Pr = {}, p = {}", show(&t.mass), show(&t.p));
    }
    for a in &r.attacks {
        let _ = writeln!(s, "attack {}: P_E = {}", a.strategy, show(&a.pe));
        if let (Some(f), Some(g)) = (&a.formula_prediction, &a.formula_gap) {
            let _ = writeln!(s, "  closed form {}, gap {}", show(f), show(g));
        }
        if let Some(e) = &a.emulation {
            let _ = writeln!(
                s,
                "  global sigma {}, formula at global sigma and p {}",
                show(&e.sigma),
                show(&e.naive_formula)
            );
        }
        for (ct, t) in &a.transcripts {
            let _ = write!(s, "  {ct}: Pr = {}, eve correct = {}", show(&t.mass), show(&t.eve_correct));
            if let Diagnostics::Emulation { sigma, formula, independent, .. } = &t.diagnostics {
                let _ = write!(s, ", sigma = {}, formula = {}, independent = {}", show(sigma), show(formula), yes(*independent));
            }
            s.push('\n');
        }
        for n in &a.notes {
            let _ = writeln!(s, "  note: {n}");
        }
    }
    match &r.conditions {
        Ok(c) => {
            let _ = writeln!(
                s,
                "conditions: q2 > q1 {}, q1 + q2 > 1 {}, tau1 < 1 {}, q2 + tau1 q1 > 1 {}",
                yes(c.q2_gt_q1),
                yes(c.sum_gt_1),
                yes(c.tau1_lt_1),
                yes(c.engagement_gt_1)
            );
            let _ = writeln!(
                s,
                "  assume-s2 P_E {} < P_B {}: {}",
                fraction_string(&c.pe),
                fraction_string(&c.pb),
                yes(c.verdict_pe_lt_pb)
            );
        }
        Err(e) => {
            let _ = writeln!(s, "conditions: not evaluated ({e})");
        }
    }
    s
}

/// One simulation run, as rendered by the `simulate` command.
pub struct SimRun {
    pub config: SimConfig,
    pub result: SimResult,
}

fn sim_json(run: &SimRun) -> Value {
    let (c, r) = (&run.config, &run.result);
    let mut m = strategy_json(&c.strategy);
    m.insert("trials".into(), c.trials.into());
    m.insert("seed".into(), c.seed.into());
    put(&mut m, "confidence", &c.confidence);
    put(&mut m, "empirical_P_B", &r.empirical_pb);
    put(&mut m, "exact_P_B", &r.exact_pb);
    put(&mut m, "empirical_P_E", &r.empirical_pe);
    put(&mut m, "exact_P_E", &r.exact_pe);
    m.insert("hoeffding_radius".into(), json!(r.hoeffding_radius));
    m.insert("agrees_with_exact".into(), r.agrees_with_exact.into());
    m.into()
}

pub fn simulation_json(scheme: &str, digest: &str, runs: &[SimRun]) -> Value {
    json!({
        "tool": { "name": TOOL_NAME, "version": TOOL_VERSION },
        "input_digest": digest,
        "scheme": scheme,
        "runs": runs.iter().map(sim_json).collect::<Vec<_>>(),
    })
}

pub fn simulation_csv(runs: &[SimRun]) -> String {
    let mut w = CsvRows::new();
    for run in runs {
        let (c, r) = (&run.config, &run.result);
        let item = strategy_label(&c.strategy);
        w.text("simulation", &item, "", "trials", &c.trials.to_string());
        w.text("simulation", &item, "", "seed", &c.seed.to_string());
        w.rat("simulation", &item, "", "empirical_P_B", &r.empirical_pb);
        w.rat("simulation", &item, "", "exact_P_B", &r.exact_pb);
        w.rat("simulation", &item, "", "empirical_P_E", &r.empirical_pe);
        w.rat("simulation", &item, "", "exact_P_E", &r.exact_pe);
        w.text("simulation", &item, "", "hoeffding_radius", &r.hoeffding_radius.to_string());
        w.text("simulation", &item, "", "verdict", if r.agrees_with_exact { "agree" } else { "disagree" });
    }
    w.finish()
}

pub fn simulation_human(scheme: &str, digest: &str, runs: &[SimRun]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{TOOL_NAME} {TOOL_VERSION}");
    let _ = writeln!(s, "scheme: {scheme} ({digest})");
    for run in runs {
        let (c, r) = (&run.config, &run.result);
        let _ = writeln!(
            s,
            "strategy {}: {} trials, seed {}, confidence {}",
            c.strategy,
            c.trials,
            c.seed,
            fraction_string(&c.confidence)
        );
        for (name, emp, exact) in [("P_B", &r.empirical_pb, &r.exact_pb), ("P_E", &r.empirical_pe, &r.exact_pe)] {
            let _ = writeln!(
                s,
                "  {name}: empirical {}, exact {}, |diff| {}",
                show(emp),
                show(exact),
                to_f64(&(emp - exact)).abs()
            );
        }
        let _ = writeln!(s, "  hoeffding radius {}", r.hoeffding_radius);
        let _ = writeln!(s, "  verdict: {}", if r.agrees_with_exact { "agree" } else { "disagree" });
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use twospace_core::rational::parse_rational;
    use twospace_core::reference::toy_v2;
    use twospace_core::Space;

    fn every_rational(v: &Value, out: &mut Vec<(String, Rational)>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    if let (Value::String(s), Some(_)) = (x, m.get(&format!("{k}_decimal"))) {
                        if s != "undefined" {
                            out.push((k.clone(), parse_rational(s).expect("rational string")));
                        }
                    }
                    every_rational(x, out);
                }
            }
            Value::Array(a) => a.iter().for_each(|x| every_rational(x, out)),
            _ => {}
        }
    }

    #[test]
    fn json_rationals_parse_back_exactly() {
        let s = toy_v2();
        let strategies = [
            Strategy::AssumeSpace { space: Space::S2, fallback: Fallback::Abstain },
            Strategy::ReceiverEmulation,
        ];
        let r = build_report(&s, input_digest(b"x"), &strategies).unwrap();
        let text = pretty(&report_json(&r));
        let parsed: Value = serde_json::from_str(&text).unwrap();
        let mut all = Vec::new();
        every_rational(&parsed, &mut all);
        assert!(all.len() > 40);
        for (k, v) in &all {
            if k == "P_E" {
                assert!(*v == r.attacks[0].pe || *v == r.attacks[1].pe);
            }
        }
        assert_eq!(parse_rational(parsed["receiver"]["P_B"].as_str().unwrap()).unwrap(), r.receiver.pb);
        assert_eq!(
            parse_rational(parsed["attacks"][0]["P_E"].as_str().unwrap()).unwrap(),
            r.attacks[0].pe
        );
        assert!(text.contains("\"P_E\": \"29/40\""));
        assert!(text.contains("\"P_B\": \"33/40\""));
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(
            input_digest(b"abc"),
            "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
