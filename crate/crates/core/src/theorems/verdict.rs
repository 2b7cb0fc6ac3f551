use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::truncation::TruncationBox;

/// Identifier of a checker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremId {
    Buinv,
    Bupush,
    Cube,
    Divshift,
    Exhaustion,
    Filtration,
    Flatbc,
    Gabber,
    Nonreduced,
    Polyext,
    Projcoh,
    Snc,
}

impl TheoremId {
    /// The checkers run by a full verification.
    pub const SUITE: [TheoremId; 9] = [
        TheoremId::Buinv,
        TheoremId::Bupush,
        TheoremId::Cube,
        TheoremId::Filtration,
        TheoremId::Flatbc,
        TheoremId::Gabber,
        TheoremId::Nonreduced,
        TheoremId::Projcoh,
        TheoremId::Snc,
    ];

    /// The checkers whose expected outcome is a witnessed strict inclusion.
    pub const COUNTEREXAMPLES: [TheoremId; 3] =
        [TheoremId::Flatbc, TheoremId::Gabber, TheoremId::Nonreduced];

    pub const ALL: [TheoremId; 12] = [
        TheoremId::Buinv,
        TheoremId::Bupush,
        TheoremId::Cube,
        TheoremId::Divshift,
        TheoremId::Exhaustion,
        TheoremId::Filtration,
        TheoremId::Flatbc,
        TheoremId::Gabber,
        TheoremId::Nonreduced,
        TheoremId::Polyext,
        TheoremId::Projcoh,
        TheoremId::Snc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Buinv => "buinv",
            TheoremId::Bupush => "bupush",
            TheoremId::Cube => "cube",
            TheoremId::Divshift => "divshift",
            TheoremId::Exhaustion => "exhaustion",
            TheoremId::Filtration => "filtration",
            TheoremId::Flatbc => "flatbc",
            TheoremId::Gabber => "gabber",
            TheoremId::Nonreduced => "nonreduced",
            TheoremId::Polyext => "polyext",
            TheoremId::Projcoh => "projcoh",
            TheoremId::Snc => "snc",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            TheoremId::Buinv => "blowup invariance of MO along normal-crossings centers",
            TheoremId::Bupush => "higher direct images of O(i) on the blowup of affine space",
            TheoremId::Cube => "cube invariance short exact sequence",
            TheoremId::Divshift => "MO(A[t], f) = MO(A[t], ft) for reduced A",
            TheoremId::Exhaustion => "union of MO(A, f^n) exhausts A[1/f]",
            TheoremId::Filtration => "exhaustive filtration on (P^1, n*inf)",
            TheoremId::Flatbc => "flat base change counterexample",
            TheoremId::Gabber => "affine cone over an elliptic curve",
            TheoremId::Nonreduced => "non-reduced cube invariance counterexample",
            TheoremId::Polyext => "MO(A[t], f) = MO(A, f)[t]",
            TheoremId::Projcoh => "cohomology of O(d) on projective space",
            TheoremId::Snc => "normal-crossings datum check",
        }
    }

    /// The default expected status.
    pub fn expected(self) -> VerdictStatus {
        if Self::COUNTEREXAMPLES.contains(&self) {
            VerdictStatus::StrictInclusionWitnessed
        } else {
            VerdictStatus::Pass
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim().to_ascii_lowercase();
        TheoremId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = TheoremId::ALL.iter().map(|id| id.as_str()).collect();
                format!("unknown theorem id '{s}' (known: {})", known.join(", "))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    Pass,
    Fail,
    StrictInclusionWitnessed,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictStatus::Pass => "pass",
            VerdictStatus::Fail => "fail",
            VerdictStatus::StrictInclusionWitnessed => "strict-inclusion-witnessed",
        })
    }
}

/// Result of one checker run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub id: TheoremId,
    pub parameters: BTreeMap<String, Value>,
    #[serde(rename = "box", default, skip_serializing_if = "Option::is_none")]
    pub truncation_box: Option<TruncationBox>,
    pub status: VerdictStatus,
    pub expected: VerdictStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default)]
    pub observations: BTreeMap<String, Value>,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl TheoremVerdict {
    /// A passing verdict; checks downgrade it with [`TheoremVerdict::fail`].
    pub fn new(id: TheoremId) -> Self {
        TheoremVerdict {
            id,
            parameters: BTreeMap::new(),
            truncation_box: None,
            status: VerdictStatus::Pass,
            expected: id.expected(),
            witness: None,
            observations: BTreeMap::new(),
            notes: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn with_box(mut self, b: TruncationBox) -> Self {
        self.truncation_box = Some(b);
        self
    }

    pub fn expecting(mut self, status: VerdictStatus) -> Self {
        self.expected = status;
        self
    }

    pub fn observe(&mut self, key: &str, value: impl Into<Value>) {
        self.observations.insert(key.to_string(), value.into());
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Marks the verdict failed. The first witness is kept; later ones go
    /// to the notes.
    pub fn fail(&mut self, witness: impl Into<String>) {
        let w = witness.into();
        if self.status == VerdictStatus::Fail {
            self.notes.push(format!("also: {w}"));
        } else {
            self.status = VerdictStatus::Fail;
            self.witness = Some(w);
        }
    }

    /// Records a strict-inclusion witness unless the verdict already failed.
    pub fn witnessed(&mut self, witness: impl Into<String>) {
        if self.status != VerdictStatus::Fail {
            self.status = VerdictStatus::StrictInclusionWitnessed;
            self.witness = Some(witness.into());
        }
    }

    /// Folds a checker error into a failed verdict.
    pub fn errored(mut self, err: impl fmt::Display) -> Self {
        self.fail(format!("error: {err}"));
        self
    }

    pub fn is_expected(&self) -> bool {
        self.status == self.expected && self.status != VerdictStatus::Fail
    }

    pub fn render_text(&self) -> String {
        let mut s = format!(
            "{:<11} {:<27} expected {:<27} {}",
            self.id.as_str(),
            self.status.to_string(),
            self.expected.to_string(),
            if self.is_expected() {
                "ok"
            } else {
                "UNEXPECTED"
            }
        );
        if let Some(w) = &self.witness {
            s.push_str(&format!("\n    witness: {w}"));
        }
        if !self.parameters.is_empty() {
            s.push_str(&format!(
                "\n    parameters: {}",
                Value::Object(self.parameters.clone().into_iter().collect())
            ));
        }
        if let Some(b) = &self.truncation_box {
            s.push_str(&format!("\n    box: {b}"));
        }
        for (k, v) in &self.observations {
            s.push_str(&format!("\n    {k} = {v}"));
        }
        for n in &self.notes {
            s.push_str(&format!("\n    note: {n}"));
        }
        if let Some(ms) = self.elapsed_ms {
            s.push_str(&format!("\n    elapsed: {ms} ms"));
        }
        s
    }
}

/// The verdicts of one verification run, sorted by theorem id.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub seed: u64,
    pub box_bound: i32,
    pub verdicts: Vec<TheoremVerdict>,
    pub all_expected: bool,
}

impl AggregateReport {
    pub fn new(seed: u64, box_bound: i32, mut verdicts: Vec<TheoremVerdict>) -> Self {
        verdicts.sort_by_key(|v| v.id);
        let all_expected = verdicts.iter().all(TheoremVerdict::is_expected);
        AggregateReport {
            seed,
            box_bound,
            verdicts,
            all_expected,
        }
    }

    /// 0 when every verdict has its expected status, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_expected {
            0
        } else {
            1
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("seed {}  box +-{}\n", self.seed, self.box_bound);
        for v in &self.verdicts {
            s.push_str(&v.render_text());
            s.push('\n');
        }
        let bad = self.verdicts.iter().filter(|v| !v.is_expected()).count();
        s.push_str(&format!(
            "{} checkers, {} unexpected\n",
            self.verdicts.len(),
            bad
        ));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_parse_and_sort() {
        assert_eq!("Gabber".parse::<TheoremId>().unwrap(), TheoremId::Gabber);
        assert!("nope".parse::<TheoremId>().is_err());
        let mut ids = TheoremId::ALL.to_vec();
        ids.sort();
        let names: Vec<_> = ids.iter().map(|i| i.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }

    #[test]
    fn failures_keep_first_witness() {
        let mut v = TheoremVerdict::new(TheoremId::Cube);
        v.fail("a");
        v.witnessed("b");
        v.fail("c");
        assert_eq!(v.status, VerdictStatus::Fail);
        assert_eq!(v.witness.as_deref(), Some("a"));
        assert!(!v.is_expected());
    }

    #[test]
    fn json_round_trip() {
        let mut v = TheoremVerdict::new(TheoremId::Flatbc).param("map", "u -> t^2");
        v.witnessed("1/t^3");
        let r = AggregateReport::new(7, 6, vec![v]);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains(r#""status":"strict-inclusion-witnessed""#));
        let back: AggregateReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.exit_code(), 0);
    }
}
