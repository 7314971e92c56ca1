//! Report assembly: every command emits one JSON document with stable key
//! order, all polynomials in canonical string form.

use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::{json, Map, Value};

use kellerkit_core::ringchecks::Analysis;

pub const TOOL: &str = "kellerkit";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Builder keeping insertion order (serde_json is compiled with
/// `preserve_order`), so repeated runs are byte-identical.
pub struct Report {
    map: Map<String, Value>,
    timings: BTreeMap<&'static str, u128>,
    stage_started: Instant,
    want_timings: bool,
}

impl Report {
    pub fn new(command: &str, input: Value, want_timings: bool) -> Self {
        let mut map = Map::new();
        map.insert("tool".into(), json!(TOOL));
        map.insert("version".into(), json!(VERSION));
        map.insert("command".into(), json!(command));
        map.insert("input".into(), input);
        Self {
            map,
            timings: BTreeMap::new(),
            stage_started: Instant::now(),
            want_timings,
        }
    }

    pub fn section<T: serde::Serialize>(&mut self, key: &str, value: &T) -> &mut Self {
        self.map.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable section"),
        );
        self
    }

    pub fn section_value(&mut self, key: &str, value: Value) -> &mut Self {
        self.map.insert(key.to_string(), value);
        self
    }

    /// Records the elapsed time since the previous stage mark.
    pub fn stage(&mut self, name: &'static str) -> &mut Self {
        let elapsed = self.stage_started.elapsed().as_millis();
        self.stage_started = Instant::now();
        if self.want_timings {
            *self.timings.entry(name).or_insert(0) += elapsed;
        }
        self
    }

    pub fn finish(mut self) -> Value {
        if self.want_timings {
            let total: u128 = self.timings.values().sum();
            let mut t: Map<String, Value> = self
                .timings
                .iter()
                .map(|(k, v)| (k.to_string(), json!(v)))
                .collect();
            t.insert("total".into(), json!(total));
            self.map.insert("timings_ms".into(), Value::Object(t));
        }
        Value::Object(self.map)
    }
}

/// Shared section layout for the analysis-driven commands.
pub fn push_analysis(report: &mut Report, analysis: &Analysis) {
    report.section("keller", &analysis.keller);
    if let Some(lambda) = &analysis.lambda {
        report.section_value("lambda", json!(lambda.to_string()));
    }
    if let Some(p) = &analysis.presentation {
        report.section("presentation", p);
    }
    if let Some(d) = &analysis.degree {
        report.section("degree", d);
    }
    if let Some(p) = &analysis.primitive {
        report.section("primitive", p);
    }
    if let Some(n) = &analysis.normality {
        report.section("normality", n);
    }
    if let Some(k) = &analysis.krull_dimension {
        report.section_value("dimension", json!({ "krull": k }));
    }
    if let Some(c) = &analysis.cases {
        report.section("cases", c);
    }
}

pub fn print_value(value: &Value, pretty: bool) {
    if pretty {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("valid json")
        );
    } else {
        println!("{}", serde_json::to_string(value).expect("valid json"));
    }
}
