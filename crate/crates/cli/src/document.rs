use std::collections::BTreeMap;

use qes_core::models::QesSolution;
use serde::Serialize;

use crate::errata::Erratum;
use crate::request::Request;

#[derive(Debug, Serialize)]
pub struct Document {
    pub model: &'static str,
    pub n: usize,
    pub l: u32,
    pub fixed_params: BTreeMap<&'static str, f64>,
    pub tuned_param: TunedParam,
    pub solutions: Vec<SolutionDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reports: Option<Vec<ReportDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub errata: Option<Vec<Erratum>>,
}

#[derive(Debug, Serialize)]
pub struct TunedParam {
    pub name: &'static str,
    pub values: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct SolutionDoc {
    pub tuned_value: f64,
    pub energy: f64,
    pub p: Vec<f64>,
    pub diagnostics: DiagnosticsDoc,
}

#[derive(Debug, Serialize)]
pub struct DiagnosticsDoc {
    pub det_residual: f64,
    pub terminal_residual: f64,
    pub operator_residual: f64,
}

/// Oracle outcome for one solution. The numeric fields are absent when the
/// oracle itself failed; `error` then says why.
#[derive(Debug, Serialize)]
pub struct ReportDoc {
    /// Energy and tuned value the oracle tested, overrides included.
    pub energy: f64,
    pub tuned_value: f64,
    pub residual_rel: Option<f64>,
    pub e_shoot: Option<f64>,
    pub e_abs_err: Option<f64>,
    pub norm: Option<f64>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Document {
    pub fn new(req: &Request, n: usize, solutions: &[QesSolution]) -> Self {
        Self {
            model: req.kind.name(),
            n,
            l: req.l,
            fixed_params: req.fixed.clone(),
            tuned_param: TunedParam {
                name: req.kind.tuned_parameter(),
                values: solutions.iter().map(|s| s.tuned.value).collect(),
            },
            solutions: solutions
                .iter()
                .map(|s| SolutionDoc {
                    tuned_value: s.tuned.value,
                    energy: s.energy,
                    p: s.p.clone(),
                    diagnostics: DiagnosticsDoc {
                        det_residual: s.diagnostics.det_residual,
                        terminal_residual: s.diagnostics.terminal_residual,
                        operator_residual: s.diagnostics.operator_residual,
                    },
                })
                .collect(),
            reports: None,
            errata: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}
