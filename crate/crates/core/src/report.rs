//! Verification reports. The JSON report is a pure function of the
//! configuration and the computed values; timings and cache counters live
//! in [`RunStats`] and are written separately.

use serde::{Deserialize, Serialize};

use crate::cache::MODEL_VERSION;
use crate::cech::Schedule;
use crate::claims::{ClaimResult, GridPoint, Status, TRUSTED_STEPS};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub p: u32,
    pub bundle: String,
    pub points: usize,
    pub seed: u64,
    pub ok: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub verified: usize,
    pub verified_with_trusted_steps: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub model: String,
    pub seed: u64,
    pub schedule: Schedule,
    pub grid: Vec<GridPoint>,
    pub summary: Summary,
    pub trusted_steps: Vec<String>,
    pub certificates: Vec<Certificate>,
    pub claims: Vec<ClaimResult>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct RunStats {
    pub seconds: Vec<(String, GridPoint, f64)>,
    pub total_seconds: f64,
    pub builds: u64,
    pub cache_hits: u64,
}

impl Report {
    pub fn new(
        seed: u64,
        schedule: Schedule,
        grid: Vec<GridPoint>,
        certificates: Vec<Certificate>,
        claims: Vec<ClaimResult>,
    ) -> Self {
        let mut summary = Summary::default();
        for c in &claims {
            match c.status {
                Status::Verified => summary.verified += 1,
                Status::VerifiedWithTrustedSteps => summary.verified_with_trusted_steps += 1,
                Status::Failed => summary.failed += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        let trusted_steps = TRUSTED_STEPS
            .iter()
            .filter(|t| claims.iter().any(|c| c.trusted.iter().any(|x| x == *t)))
            .map(|t| t.to_string())
            .collect();
        Report { model: MODEL_VERSION.to_string(), seed, schedule, grid, summary, trusted_steps, certificates, claims }
    }

    pub fn any_failed(&self) -> bool {
        self.summary.failed > 0 || self.certificates.iter().any(|c| !c.ok)
    }

    /// Every failure is a truncation that did not stabilize.
    pub fn only_unstable(&self) -> bool {
        self.certificates.iter().all(|c| c.ok)
            && self.claims.iter().filter(|c| c.status == Status::Failed).all(|c| c.unstable)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let sum = &self.summary;
        s.push_str("# Verification report\n\n");
        s.push_str(&format!(
            "model `{}`, seed {}, truncation margins {}..={} step {}\n\n",
            self.model, self.seed, self.schedule.t0, self.schedule.t_max, self.schedule.step
        ));
        s.push_str(&format!(
            "**{} verified, {} verified with trusted steps, {} failed, {} skipped**\n\n",
            sum.verified, sum.verified_with_trusted_steps, sum.failed, sum.skipped
        ));
        s.push_str("| claim | p | n | status | statement |\n|---|---|---|---|---|\n");
        for c in &self.claims {
            s.push_str(&format!(
                "| {} | {} | {} | {} | {} |\n",
                c.id,
                c.grid.p,
                c.grid.n,
                c.status.as_str(),
                c.statement.replace('|', "\\|")
            ));
        }
        if !self.trusted_steps.is_empty() {
            s.push_str("\n## Trusted external steps\n\n");
            for t in &self.trusted_steps {
                s.push_str(&format!("- {t}\n"));
            }
        }
        if !self.certificates.is_empty() {
            s.push_str("\n## Constant-rank certificates\n\n");
            for c in &self.certificates {
                let mark = if c.ok { "ok" } else { "FAILED" };
                s.push_str(&format!("- p = {}: {} at {} points (seed {}): {mark}\n", c.p, c.bundle, c.points, c.seed));
            }
        }
        s.push_str("\n## Details\n");
        for c in &self.claims {
            s.push_str(&format!("\n### {} {} — {}\n\n{}\n\n", c.id, c.grid, c.status.as_str(), c.title));
            if let Some(d) = &c.detail {
                s.push_str(&format!("> {d}\n\n"));
            }
            for l in &c.leaves {
                let mark = if l.ok { "ok" } else { "VIOLATED" };
                s.push_str(&format!("- leaf `{}` ({}): h = {:?}, chi = {}; {} — {mark}\n", l.expr, l.label, l.h, l.chi, l.expect));
            }
            for st in &c.steps {
                let mark = if st.ok { "ok" } else { "FAILED" };
                s.push_str(&format!("- {}: {} — {mark}\n", st.kind, st.description));
            }
            for t in &c.trusted {
                s.push_str(&format!("- trusted: {t}\n"));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn claim(id: &str, status: Status, trusted: &[&str]) -> ClaimResult {
        ClaimResult {
            id: id.into(),
            title: "t".into(),
            statement: "a | b".into(),
            grid: GridPoint::new(3, 1),
            status,
            leaves: vec![],
            steps: vec![],
            trusted: trusted.iter().map(|s| s.to_string()).collect(),
            detail: None,
            unstable: false,
        }
    }

    #[test]
    fn summary_and_trusted_steps() {
        let r = Report::new(
            7,
            Schedule::default(),
            vec![GridPoint::new(3, 1)],
            vec![],
            vec![
                claim("C1", Status::Verified, &[]),
                claim("C12", Status::VerifiedWithTrustedSteps, &[TRUSTED_STEPS[0]]),
                claim("C2", Status::Failed, &[]),
            ],
        );
        assert_eq!(r.summary, Summary { verified: 1, verified_with_trusted_steps: 1, failed: 1, skipped: 0 });
        assert_eq!(r.trusted_steps, vec![TRUSTED_STEPS[0].to_string()]);
        assert!(r.any_failed());
        assert_eq!(r.to_json(), r.to_json());
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_markdown().contains("a \\| b"));
    }
}
