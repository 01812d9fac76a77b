//! The JSON envelope emitted by every CLI command.
//!
//! Each command wraps its structured result in a [`Report`] so consumers
//! can dispatch on `kind` without knowing command-specific schemas up
//! front. The payload is kept as a raw JSON value so envelopes round
//! trip losslessly even when read by tooling that only understands some
//! payload kinds. `claims` lists the short statements the payload
//! substantiates (for example `"rank(g53) = 10"`), and `seed` records
//! the RNG seed whenever randomness was involved, making reruns exact.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportKind {
    Verify,
    Certify,
    Search,
    Expand,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub kind: ReportKind,
    pub payload: serde_json::Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub claims: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Report {
    /// Wrap a serializable payload. Panics only if the payload type
    /// itself fails to serialize, which for the in-crate payload types
    /// would be a programming error.
    pub fn new<T: Serialize>(kind: ReportKind, payload: &T, claims: Vec<String>) -> Self {
        Report {
            kind,
            payload: serde_json::to_value(payload).expect("payload serializes"),
            claims,
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    /// Recover the typed payload.
    pub fn payload_as<T: for<'de> Deserialize<'de>>(&self) -> Result<T, serde_json::Error> {
        serde_json::from_value(self.payload.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::BuiltinId;
    use crate::certificate::{certify_sos_rank, RankCertificate};
    use crate::conditions::CheckConfig;

    #[test]
    fn envelope_round_trips_with_typed_payload() {
        let cert = certify_sos_rank(&BuiltinId::G53.graph(), &CheckConfig::default());
        let report = Report::new(
            ReportKind::Certify,
            &cert,
            vec!["rank(g53) = 10".to_string()],
        )
        .with_seed(Some(7));
        let json = serde_json::to_string(&report).unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.payload_as::<RankCertificate>().unwrap(), cert);
    }

    #[test]
    fn optional_fields_stay_out_of_the_wire_format() {
        let report = Report::new(ReportKind::Verify, &serde_json::json!({"ok": true}), vec![]);
        let json = serde_json::to_string(&report).unwrap();
        assert!(!json.contains("claims"));
        assert!(!json.contains("seed"));
        assert!(json.contains("\"kind\":\"verify\""));
    }
}
