//! Run reports: a machine-readable JSON document mirroring every check,
//! the calibration log, measured signs, golden matrices, and the ideal of
//! `f_1` entries, plus a deterministic plain-text rendering.

use serde::Serialize;

use crate::bfs::calibrate::CalibrationLog;
use crate::multialg::CheckItem;

#[derive(Debug, Clone, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl Default for ToolInfo {
    fn default() -> Self {
        ToolInfo {
            name: "bfs4",
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputInfo {
    pub path: Option<String>,
    pub characteristic: u64,
    pub variables: Vec<String>,
    pub r: String,
    pub seed: u64,
    pub calibration_mode: String,
    pub prime: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SignData {
    /// Per degree (entries 2..4 carry content): sign in
    /// `k o beta_i = eps * beta_{i-1} o m_i`.
    pub beta_chain: Vec<i64>,
    /// `(i, j, sign)` for the adjoint identity per degree pair.
    pub beta_alpha_adjoint: Vec<(usize, usize, i64)>,
    /// Wedge columns where the homotopy gauge could not enforce the
    /// pointwise alpha-annihilation (empty on the shipped golden families);
    /// the alternating-combination identities are verified instead.
    pub gauge_obstructions: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GoldenData {
    pub beta: Vec<Vec<Vec<String>>>,
    pub x: Vec<Vec<String>>,
    pub xt: Vec<Vec<String>>,
    pub f: Vec<Vec<Vec<String>>>,
    pub h3: Vec<Vec<String>>,
    pub h4: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct H0Data {
    pub generators: Vec<String>,
    pub groebner_basis: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftSummary {
    pub count: usize,
    pub resubstituted: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub pass: bool,
    pub failed: usize,
    pub total: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub format: u32,
    pub tool: ToolInfo,
    pub input: InputInfo,
    pub summary: Summary,
    pub checks: Vec<CheckItem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub calibration: Option<CalibrationLog>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signs: Option<SignData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub golden: Option<GoldenData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h0_ideal: Option<H0Data>,
    pub lifts: LiftSummary,
}

impl Report {
    pub fn finalize(&mut self) {
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        self.summary = Summary {
            pass: failed == 0,
            failed,
            total: self.checks.len(),
        };
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        use std::fmt::Write;
        writeln!(out, "{} {} run report", self.tool.name, self.tool.version).unwrap();
        writeln!(
            out,
            "input: char {} vars [{}] r = {} seed {} calibration {} prime {}",
            self.input.characteristic,
            self.input.variables.join(","),
            self.input.r,
            self.input.seed,
            self.input.calibration_mode,
            self.input.prime
        )
        .unwrap();
        if let Some(path) = &self.input.path {
            writeln!(out, "file: {path}").unwrap();
        }
        writeln!(out, "lifts: {} (resubstituted: {})", self.lifts.count, self.lifts.resubstituted)
            .unwrap();
        if let Some(cal) = &self.calibration {
            writeln!(
                out,
                "calibration: mode {} level {} candidates {}",
                cal.mode, cal.level, cal.candidates_tested
            )
            .unwrap();
            for n in &cal.normalizations {
                writeln!(out, "  normalized {} printed {:?}: {}", n.location, n.printed, n.note)
                    .unwrap();
            }
            for r in &cal.repairs {
                writeln!(out, "  repair: {r}").unwrap();
            }
        }
        if let Some(signs) = &self.signs {
            writeln!(
                out,
                "beta chain signs: {:?}; adjoint signs: {:?}",
                signs.beta_chain, signs.beta_alpha_adjoint
            )
            .unwrap();
            if !signs.gauge_obstructions.is_empty() {
                writeln!(
                    out,
                    "gauge obstructions (alternating-form identities verified instead): {}",
                    signs.gauge_obstructions.join(", ")
                )
                .unwrap();
            }
        }
        for c in &self.checks {
            match (&c.pass, &c.witness) {
                (true, _) => writeln!(out, "PASS {}", c.name).unwrap(),
                (false, Some(w)) => writeln!(out, "FAIL {} [{}]", c.name, w).unwrap(),
                (false, None) => writeln!(out, "FAIL {}", c.name).unwrap(),
            }
        }
        if let Some(h0) = &self.h0_ideal {
            writeln!(out, "h0 ideal generators: [{}]", h0.generators.join(", ")).unwrap();
            writeln!(
                out,
                "h0 ideal groebner basis: [{}]",
                h0.groebner_basis.join(", ")
            )
            .unwrap();
        }
        writeln!(
            out,
            "summary: {} ({} of {} checks failed)",
            if self.summary.pass { "PASS" } else { "FAIL" },
            self.summary.failed,
            self.summary.total
        )
        .unwrap();
        out
    }

    pub fn write_files(&self, dir: &std::path::Path) -> crate::error::Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.json"), self.to_json())?;
        std::fs::write(dir.join("report.txt"), self.to_text())?;
        Ok(())
    }
}
