//! JSON rendering of exact values and the report envelope.

use serde_json::{json, Map, Value};

use coverhom_core::exactalg::{euler_phi, CyclotomicNumber, QMatrix, Rational};
use coverhom_core::groups::{FiniteGroup, GroupAlgebraElement, RationalComponent};

pub const SCHEMA: &str = "coverhom.report/v1";

pub fn rational(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn cyclotomic(x: &CyclotomicNumber) -> Value {
    Value::String(x.to_string())
}

pub fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn matrix(m: &QMatrix) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| vector(r)).collect())
}

/// Sparse `[[element, coefficient], …]` in increasing element order.
pub fn algebra_element(x: &GroupAlgebraElement) -> Value {
    let mut terms: Vec<_> = x.terms().map(|(h, c)| (h, c.clone())).collect();
    terms.sort_by_key(|(h, _)| *h);
    Value::Array(terms.into_iter().map(|(h, c)| json!([h, c.to_string()])).collect())
}

pub fn algebra_matrix(rows: &[Vec<GroupAlgebraElement>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(algebra_element).collect()))
            .collect(),
    )
}

/// Human-readable name of the fixed field of `stabilizer` inside Q(ζ_n).
pub fn field_description(conductor: u32, stabilizer: &[u32]) -> String {
    if conductor <= 2 || stabilizer.len() as u32 == euler_phi(conductor) {
        return "Q".into();
    }
    if stabilizer.len() == 1 {
        return format!("Q(zeta_{conductor})");
    }
    let ks: Vec<String> = stabilizer.iter().map(u32::to_string).collect();
    format!("Q(zeta_{conductor})^<{}>", ks.join(","))
}

pub fn component(index: usize, c: &RationalComponent) -> Value {
    let fixed = c.fixed_field_stabilizer();
    json!({
        "index": index,
        "n": c.n,
        "orbit": c.orbit,
        "center": {
            "conductor": c.center_conductor,
            "stabilizer": c.center_stabilizer,
            "degree": c.center_degree(),
            "description": field_description(c.center_conductor, &c.center_stabilizer),
        },
        "fixed_field": {
            "stabilizer": fixed,
            "description": field_description(c.center_conductor, &fixed),
        },
        "fs_indicator": c.fs_indicator,
        "kind": c.kind.to_string(),
        "type": c.type_label.to_string(),
        "target": c.target_label.to_string(),
        "q_dimension": c.q_dimension,
        "character": c.values.iter().map(cyclotomic).collect::<Vec<_>>(),
    })
}

pub fn group_summary(g: &FiniteGroup) -> Value {
    json!({
        "order": g.order(),
        "degree": g.degree(),
        "classes": g.classes().len(),
        "exponent": g.exponent(),
    })
}

/// Ordered list of named boolean outcomes.
#[derive(Clone, Debug, Default)]
pub struct Checks {
    items: Vec<(String, bool)>,
}

impl Checks {
    pub fn push(&mut self, name: impl Into<String>, passed: bool) {
        self.items.push((name.into(), passed));
    }

    pub fn extend(&mut self, other: Checks) {
        self.items.extend(other.items);
    }

    pub fn failed(&self) -> Vec<String> {
        self.items.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.clone()).collect()
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|(_, ok)| *ok)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.items
                .iter()
                .map(|(n, ok)| json!({ "name": n, "passed": ok }))
                .collect(),
        )
    }

    pub fn summary(&self) -> Value {
        let failed = self.failed().len();
        json!({
            "total": self.items.len(),
            "passed": self.items.len() - failed,
            "failed": failed,
            "all_passed": failed == 0,
        })
    }
}

/// A versioned JSON document. Keys serialize in sorted order.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    value: Value,
    failed: Vec<String>,
}

impl Report {
    pub fn new(command: &str, mut body: Map<String, Value>, checks: &Checks) -> Self {
        body.insert("schema".into(), Value::String(SCHEMA.into()));
        body.insert("command".into(), Value::String(command.into()));
        body.insert("checks".into(), checks.to_json());
        body.insert("summary".into(), checks.summary());
        Report {
            value: Value::Object(body),
            failed: checks.failed(),
        }
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn failed_checks(&self) -> &[String] {
        &self.failed
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.value).expect("report values serialize");
        s.push('\n');
        s
    }
}
