use std::fmt;

use serde::Serialize;

use super::IdentityId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Numeric => "numeric",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// The parameter range a report covers. Exact values are rendered as
/// strings.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CheckRange {
    pub n_min: Option<u32>,
    pub n_max: Option<u32>,
    pub exponents: Vec<String>,
    pub c_values: Vec<String>,
    pub q_order: Option<usize>,
    pub m_max: Option<usize>,
}

/// Where and how a check first failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureDetail {
    pub n: Option<u64>,
    /// Full parameter location, e.g. `n=7 z=2` or `c=2/3 m=3 q^11`.
    pub location: String,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    /// Set when the check aborted on an algorithm or consistency fault.
    pub message: Option<String>,
}

impl FailureDetail {
    pub fn mismatch(n: Option<u64>, location: impl Into<String>, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Self {
        FailureDetail {
            n,
            location: location.into(),
            lhs: Some(lhs.to_string()),
            rhs: Some(rhs.to_string()),
            message: None,
        }
    }

    pub fn fault(n: Option<u64>, location: impl Into<String>, message: impl fmt::Display) -> Self {
        FailureDetail { n, location: location.into(), lhs: None, rhs: None, message: Some(message.to_string()) }
    }
}

/// Verdict of one identity over one parameter range.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    #[serde(serialize_with = "serialize_id")]
    pub id: IdentityId,
    pub mode: Mode,
    pub range: CheckRange,
    status: Status,
    first_failure: Option<FailureDetail>,
    pub elapsed_ms: u64,
    /// Numeric mode only: the largest ratio of summed term magnitudes to
    /// `max(1, |rhs|)` seen, a bound on the cancellation the check absorbed.
    pub condition: Option<f64>,
}

fn serialize_id<S: serde::Serializer>(id: &IdentityId, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(id.tag())
}

impl IdentityReport {
    /// Status is derived from `first_failure`: pass iff there is none.
    pub fn new(id: IdentityId, mode: Mode, range: CheckRange, first_failure: Option<FailureDetail>) -> Self {
        let status = if first_failure.is_some() { Status::Fail } else { Status::Pass };
        IdentityReport { id, mode, range, status, first_failure, elapsed_ms: 0, condition: None }
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn first_failure(&self) -> Option<&FailureDetail> {
        self.first_failure.as_ref()
    }

    /// JSON object with sorted keys. Timings are replaced by `null` when
    /// `include_timings` is false so that repeated runs are byte-identical.
    pub fn to_json_value(&self, include_timings: bool) -> serde_json::Value {
        let mut value = serde_json::to_value(self).expect("report is serializable");
        if !include_timings {
            value["elapsed_ms"] = serde_json::Value::Null;
        }
        value
    }
}

/// A run manifest: a JSON array of reports, pretty-printed with sorted keys
/// and a trailing line feed.
pub fn reports_to_json(reports: &[IdentityReport], include_timings: bool) -> String {
    let values: Vec<_> = reports.iter().map(|r| r.to_json_value(include_timings)).collect();
    let mut out = serde_json::to_string_pretty(&values).expect("reports are serializable");
    out.push('\n');
    out
}

/// One `PASS`/`FAIL` line per report.
pub fn reports_to_text(reports: &[IdentityReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!("{verdict} {} ({})", r.id, r.mode));
        if let Some(f) = r.first_failure() {
            out.push_str(&format!(" at {}", f.location));
            if let (Some(l), Some(rh)) = (&f.lhs, &f.rhs) {
                out.push_str(&format!(": lhs={l} rhs={rh}"));
            }
            if let Some(m) = &f.message {
                out.push_str(&format!(": {m}"));
            }
        }
        out.push('\n');
    }
    out
}

/// CSV with header `id,mode,status,location,elapsed_ms`.
pub fn reports_to_csv(reports: &[IdentityReport], include_timings: bool) -> String {
    let mut out = String::from("id,mode,status,location,elapsed_ms\n");
    for r in reports {
        let status = if r.passed() { "pass" } else { "fail" };
        let location = r.first_failure().map(|f| f.location.replace(',', ";")).unwrap_or_default();
        let elapsed = if include_timings { r.elapsed_ms.to_string() } else { String::new() };
        out.push_str(&format!("{},{},{status},{location},{elapsed}\n", r.id, r.mode));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_manifest() {
        assert_eq!(reports_to_json(&[], true), "[]\n");
    }

    #[test]
    fn status_follows_failure() {
        let ok = IdentityReport::new(IdentityId::BsBasic, Mode::Exact, CheckRange::default(), None);
        assert!(ok.passed());
        let json = ok.to_json_value(false);
        assert_eq!(json["status"], "pass");
        assert_eq!(json["id"], "BS_BASIC");
        assert!(json["elapsed_ms"].is_null());
        assert!(json["first_failure"].is_null());

        let bad = IdentityReport::new(
            IdentityId::Cor25,
            Mode::Exact,
            CheckRange::default(),
            Some(FailureDetail::mismatch(Some(6), "n=6", 5, 6)),
        );
        assert_eq!(bad.status(), Status::Fail);
        let json = bad.to_json_value(true);
        assert_eq!(json["first_failure"]["lhs"], "5");
        assert_eq!(json["first_failure"]["n"], 6);
    }

    #[test]
    fn keys_are_sorted() {
        let r = IdentityReport::new(IdentityId::ClassSum, Mode::Exact, CheckRange::default(), None);
        let text = reports_to_json(&[r], false);
        let keys: Vec<_> = ["condition", "elapsed_ms", "first_failure", "id", "mode", "range", "status"]
            .iter()
            .map(|k| text.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }
}
