//! Structured verdicts with replayable counterexamples.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use quantalib_core::quantaloid::Violation;
use quantalib_core::{Error, FiniteQuantaloid, Morphism};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The check does not apply to this subject.
    Skipped,
    /// A resource cap was hit before a verdict was reached.
    Unknown,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIP",
            Verdict::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismRef {
    pub src: String,
    pub dst: String,
    pub elt: String,
}

impl MorphismRef {
    pub fn new(q: &FiniteQuantaloid, m: Morphism) -> Self {
        MorphismRef {
            src: q.object_name(m.src).to_string(),
            dst: q.object_name(m.dst).to_string(),
            elt: q.hom(m.src, m.dst).name(m.elt).to_string(),
        }
    }

    /// Resolves the names back to a morphism of `q`.
    pub fn resolve(&self, q: &FiniteQuantaloid) -> quantalib_core::Result<Morphism> {
        q.resolve_morphism(&self.src, &self.dst, &self.elt)
    }
}

/// A counterexample: its kind and the morphisms it is made of.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: String,
    /// The quantaloid the morphisms live in, when it is not the subject itself.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub within: Option<String>,
    pub morphisms: BTreeMap<String, MorphismRef>,
}

/// The library-level counterexample behind a witness.
#[derive(Clone, Debug)]
pub struct Replay {
    pub quantaloid: Arc<FiniteQuantaloid>,
    pub violation: Violation,
}

impl Replay {
    pub fn confirms(&self) -> bool {
        self.violation.replay(&self.quantaloid)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub subject: String,
    pub check: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
    #[serde(skip)]
    pub replay: Option<Replay>,
}

impl Report {
    pub fn new(subject: impl Into<String>, check: impl Into<String>, verdict: Verdict) -> Self {
        Report {
            subject: subject.into(),
            check: check.into(),
            verdict,
            detail: None,
            witness: None,
            data: None,
            millis: None,
            replay: None,
        }
    }

    pub fn pass(subject: impl Into<String>, check: impl Into<String>) -> Self {
        Self::new(subject, check, Verdict::Pass)
    }

    pub fn fail(subject: impl Into<String>, check: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(subject, check, Verdict::Fail).with_detail(detail)
    }

    /// Pass when `ok`, otherwise fail with `detail`.
    pub fn expect(subject: impl Into<String>, check: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        let r = Self::new(subject, check, if ok { Verdict::Pass } else { Verdict::Fail });
        r.with_detail(detail)
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        let d = detail.into();
        self.detail = (!d.is_empty()).then_some(d);
        self
    }

    /// Appends to the detail line.
    pub fn with_detail_suffix(mut self, more: impl AsRef<str>) -> Self {
        self.detail = Some(match self.detail.take() {
            Some(d) => format!("{d}; {}", more.as_ref()),
            None => more.as_ref().to_string(),
        });
        self
    }

    pub fn with_data(mut self, data: serde_json::Value) -> Self {
        self.data = Some(data);
        self
    }

    /// Attaches a counterexample living in `q` (named `within` when it is not the subject).
    pub fn with_violation(mut self, q: &Arc<FiniteQuantaloid>, v: Violation, within: Option<&str>) -> Self {
        let morphisms = v.morphisms().into_iter().map(|(k, m)| (k, MorphismRef::new(q, m))).collect();
        if self.detail.is_none() {
            self.detail = Some(v.describe(q));
        }
        self.witness = Some(Witness { kind: v.kind().to_string(), within: within.map(str::to_string), morphisms });
        self.replay = Some(Replay { quantaloid: Arc::clone(q), violation: v });
        self
    }

    /// Maps a library result: holds, fails with a counterexample, or could not be decided.
    pub fn from_check(
        subject: &str,
        check: &str,
        q: &Arc<FiniteQuantaloid>,
        result: quantalib_core::Result<Option<Violation>>,
    ) -> Self {
        match result {
            Ok(None) => Report::pass(subject, check),
            Ok(Some(v)) => Report::new(subject, check, Verdict::Fail).with_violation(q, v, None),
            Err(e) => Report::from_error(subject, check, &e),
        }
    }

    pub fn from_error(subject: &str, check: &str, e: &Error) -> Self {
        let verdict = match e {
            Error::NotApplicable(_) | Error::MissingInvolution => Verdict::Skipped,
            Error::ResourceCap { .. } => Verdict::Unknown,
            _ => Verdict::Fail,
        };
        Report::new(subject, check, verdict).with_detail(e.to_string())
    }

    /// Whether the attached counterexample, if any, is confirmed by the library.
    pub fn replays(&self) -> bool {
        self.replay.as_ref().is_some_and(Replay::confirms)
    }
}

/// Runs `f`, recording its wall time on every report it returns when `timing` is set.
pub fn timed(timing: bool, f: impl FnOnce() -> Vec<Report>) -> Vec<Report> {
    let start = Instant::now();
    let mut reports = f();
    if timing {
        let ms = start.elapsed().as_millis();
        for r in &mut reports {
            r.millis = Some(ms);
        }
    }
    reports
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub unknown: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ReportSet {
    pub reports: Vec<Report>,
}

impl ReportSet {
    pub fn new(reports: Vec<Report>) -> Self {
        ReportSet { reports }
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for r in &self.reports {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Skipped => s.skipped += 1,
                Verdict::Unknown => s.unknown += 1,
            }
        }
        s
    }

    /// 0 all pass, 1 some failure, 3 a cap was hit (and nothing failed).
    pub fn exit_code(&self) -> i32 {
        let s = self.summary();
        if s.fail > 0 {
            1
        } else if s.unknown > 0 {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            reports: &'a [Report],
            summary: Summary,
        }
        let mut s = serde_json::to_string_pretty(&Out { reports: &self.reports, summary: self.summary() })
            .expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            let _ = write!(out, "{:<7} {} {}", r.verdict.label(), r.subject, r.check);
            if let Some(d) = &r.detail {
                let _ = write!(out, ": {d}");
            }
            if let Some(ms) = r.millis {
                let _ = write!(out, " ({ms} ms)");
            }
            out.push('\n');
            if let Some(w) = &r.witness {
                let within = w.within.as_deref().map(|s| format!(" in {s}")).unwrap_or_default();
                let parts: Vec<String> =
                    w.morphisms.iter().map(|(k, m)| format!("{k} = {}->{}:{}", m.src, m.dst, m.elt)).collect();
                let _ = writeln!(out, "        witness {}{within}: {}", w.kind, parts.join(", "));
            }
            if let Some(d) = &r.data {
                let _ = writeln!(out, "        {d}");
            }
        }
        let s = self.summary();
        let _ = writeln!(out, "{} passed, {} failed, {} skipped, {} unknown", s.pass, s.fail, s.skipped, s.unknown);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use quantalib_core::corpus;

    #[test]
    fn failing_checks_carry_replayable_witnesses() {
        let q = Arc::new(corpus::trunc3());
        let r = Report::from_check("trunc3", "modular", &q, q.modular_violation());
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.replays());
        let w = r.witness.as_ref().unwrap();
        for m in w.morphisms.values() {
            m.resolve(&q).unwrap();
        }
        assert!(ReportSet::new(vec![r]).to_text().contains("witness not-modular"));
    }

    #[test]
    fn errors_map_to_verdicts() {
        let skip = Report::from_error("s", "c", &Error::MissingInvolution);
        let cap = Report::from_error("s", "c", &Error::ResourceCap { what: "x", cap: 1 });
        assert_eq!((skip.verdict, cap.verdict), (Verdict::Skipped, Verdict::Unknown));
        assert_eq!(ReportSet::new(vec![skip.clone()]).exit_code(), 0);
        assert_eq!(ReportSet::new(vec![skip, cap.clone()]).exit_code(), 3);
        assert_eq!(ReportSet::new(vec![cap, Report::fail("s", "c", "")]).exit_code(), 1);
    }

    #[test]
    fn rendering_is_deterministic() {
        let q = Arc::new(corpus::trunc3());
        let make = || {
            ReportSet::new(vec![
                Report::from_check("trunc3", "modular", &q, q.modular_violation()),
                Report::pass("trunc3", "locally-localic"),
            ])
        };
        assert_eq!(make().to_json(), make().to_json());
        assert!(!make().to_json().contains("millis"));
    }
}
