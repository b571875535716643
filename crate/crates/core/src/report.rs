//! JSON report schema (`totref-report/1`): stable field order, deterministic
//! content for fixed seeds. Timings are opt-in so that default reports are
//! byte-identical across runs.

use serde::Serialize;

use crate::field::Scalar;
use crate::gtheory::{GCert, GVerdict};
use crate::matrix::Matrix;
use crate::module::FinModule;

pub const SCHEMA: &str = "totref-report/1";
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize, Debug, Clone)]
pub struct ReportDocument {
    pub schema: &'static str,
    pub engine_version: &'static str,
    pub command: Vec<String>,
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    pub results: Vec<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<(String, u64)>>,
}

impl ReportDocument {
    pub fn new(command: Vec<String>, field: String) -> ReportDocument {
        ReportDocument {
            schema: SCHEMA,
            engine_version: ENGINE_VERSION,
            command,
            field,
            seed: None,
            bound: None,
            results: Vec::new(),
            timings_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn scalar_str(s: &Scalar) -> String {
    format!("{s}")
}

#[derive(Serialize, Debug, Clone)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

pub fn matrix_json(m: &Matrix) -> MatrixJson {
    MatrixJson {
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| scalar_str(&m.get(i, j))).collect())
            .collect(),
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct ModuleJson {
    pub label: String,
    pub vdim: usize,
    pub nu: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<MatrixJson>>,
}

pub fn module_summary(m: &FinModule, provenance: Option<String>) -> ModuleJson {
    ModuleJson {
        label: m.label().to_string(),
        vdim: m.vdim(),
        nu: m.nu(),
        provenance,
        action: None,
    }
}

pub fn module_full(m: &FinModule, provenance: Option<String>) -> ModuleJson {
    ModuleJson {
        label: m.label().to_string(),
        vdim: m.vdim(),
        nu: m.nu(),
        provenance,
        action: Some(m.action_matrices().iter().map(matrix_json).collect()),
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct CertJson {
    pub verdict: String,
    pub bound: usize,
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_period: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified_window: Option<usize>,
}

pub fn cert_json(c: &GCert) -> CertJson {
    CertJson {
        verdict: match c.verdict {
            GVerdict::CertifiedGProjective => "CertifiedGProjective".to_string(),
            GVerdict::CertifiedNotGProjective => "CertifiedNotGProjective".to_string(),
            GVerdict::UndecidedAtBound => "UndecidedAtBound".to_string(),
        },
        bound: c.bound,
        reason: c.reason.clone(),
        period: c.cert.as_ref().map(|cc| cc.period),
        dual_period: c.cert.as_ref().map(|cc| cc.dual_period),
        verified_window: c.cert.as_ref().map(|cc| cc.verified_window),
    }
}
