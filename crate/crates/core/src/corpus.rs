//! The figure corpus: one certificate per hamiltonian cycle drawn in the
//! order-150 figures, embedded at compile time, plus the transcription lint.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::certificate::{Certificate, CertificateError};
use crate::group::FiniteGroup;
use crate::hamilton::ViolationReason;

/// Every certificate has one token per group element.
pub const FIGURE_LENGTH: usize = 150;

/// `(figure id, file name, file contents)`.
const EMBEDDED: &[(&str, &str, &str)] = &[
    ("xv1,y", "xv1_y.cert", include_str!("../../../corpus/xv1_y.cert")),
    ("xy,v1", "xy_v1.cert", include_str!("../../../corpus/xy_v1.cert")),
    ("(1,0)inZ6x(Z5)2", "_1_0_inZ6x_Z5_2.cert", include_str!("../../../corpus/_1_0_inZ6x_Z5_2.cert")),
    ("xy(1,0)inZ6x(Z5)2", "xy_1_0_inZ6x_Z5_2.cert", include_str!("../../../corpus/xy_1_0_inZ6x_Z5_2.cert")),
    ("x(1,0)inZ6x(Z5)2", "x_1_0_inZ6x_Z5_2.cert", include_str!("../../../corpus/x_1_0_inZ6x_Z5_2.cert")),
    ("y(1,0)inZ6x(Z5)2", "y_1_0_inZ6x_Z5_2.cert", include_str!("../../../corpus/y_1_0_inZ6x_Z5_2.cert")),
    ("x,y(10)", "x_y_10_.cert", include_str!("../../../corpus/x_y_10_.cert")),
    ("x,y,(10)", "x_y__10_.cert", include_str!("../../../corpus/x_y__10_.cert")),
    ("fInvertst+tNotCent-b=t-10", "fInvertst_tNotCent-b_t-10.cert", include_str!("../../../corpus/fInvertst_tNotCent-b_t-10.cert")),
    ("fInvertst+tNotCent-b=t-11", "fInvertst_tNotCent-b_t-11.cert", include_str!("../../../corpus/fInvertst_tNotCent-b_t-11.cert")),
    ("fInvertst+tNotCent-b=t-12", "fInvertst_tNotCent-b_t-12.cert", include_str!("../../../corpus/fInvertst_tNotCent-b_t-12.cert")),
    ("fInvertst+tNotCent-b=t-01", "fInvertst_tNotCent-b_t-01.cert", include_str!("../../../corpus/fInvertst_tNotCent-b_t-01.cert")),
    ("fInvertst+tNotCent-lambda=0", "fInvertst_tNotCent-lambda_0.cert", include_str!("../../../corpus/fInvertst_tNotCent-lambda_0.cert")),
    ("fInvertst+tNotCent-lambda=1", "fInvertst_tNotCent-lambda_1.cert", include_str!("../../../corpus/fInvertst_tNotCent-lambda_1.cert")),
    ("fInvertst+tNotCent-lambda=2", "fInvertst_tNotCent-lambda_2.cert", include_str!("../../../corpus/fInvertst_tNotCent-lambda_2.cert")),
    ("tNotCent-S=3-g=t", "tNotCent-S_3-g_t.cert", include_str!("../../../corpus/tNotCent-S_3-g_t.cert")),
    ("S=3-b=ft-c=fv", "S_3-b_ft-c_fv.cert", include_str!("../../../corpus/S_3-b_ft-c_fv.cert")),
    ("S=3-b=ft-c=ft2v", "S_3-b_ft-c_ft2v.cert", include_str!("../../../corpus/S_3-b_ft-c_ft2v.cert")),
];

pub fn figure_ids() -> impl Iterator<Item = &'static str> {
    EMBEDDED.iter().map(|e| e.0)
}

/// File name used for a figure id: every character other than an ASCII
/// letter, digit or `-` becomes `_`.
pub fn file_name(id: &str) -> String {
    let stem: String = id.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect();
    format!("{stem}.cert")
}

#[derive(Debug, Error)]
#[error("{file}: {source}")]
pub struct CorpusLoadError {
    pub file: String,
    #[source]
    pub source: CertificateError,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    pub file: String,
    pub cert: Certificate,
    /// Tokens rotated off the front so the cycle starts at the identity.
    pub rotation: usize,
}

/// The 18 figure certificates, in figure order.
pub fn load_corpus() -> Result<Vec<CorpusEntry>, CorpusLoadError> {
    EMBEDDED
        .iter()
        .map(|&(id, file, text)| {
            let cert = Certificate::parse(text).map_err(|source| CorpusLoadError { file: file.to_string(), source })?;
            Ok(CorpusEntry { id: id.to_string(), file: file.to_string(), cert, rotation: 0 })
        })
        .collect()
}

pub fn figure(id: &str) -> Option<CorpusEntry> {
    load_corpus().ok()?.into_iter().find(|e| e.id == id)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LintIssue {
    /// Header problems: missing or mismatched figure id, group that fails to build.
    Header { msg: String },
    Length { found: usize },
    Verification { step: usize, reason: ViolationReason },
    Vertex { step: usize, expected: String, found: Option<String> },
}

impl LintIssue {
    pub fn step(&self) -> Option<usize> {
        match self {
            LintIssue::Verification { step, .. } | LintIssue::Vertex { step, .. } => Some(*step),
            _ => None,
        }
    }
}

impl fmt::Display for LintIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LintIssue::Header { msg } => write!(f, "header: {msg}"),
            LintIssue::Length { found } => write!(f, "length {found}, expected {FIGURE_LENGTH}"),
            LintIssue::Verification { step, reason } => write!(f, "step {step}: {reason}"),
            LintIssue::Vertex { step, expected, found } => match found {
                Some(x) => write!(f, "step {step}: vertex {x}, figure prints {expected}"),
                None => write!(f, "step {step}: no vertex, figure prints {expected}"),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FigureLint {
    pub id: String,
    pub length: usize,
    pub expectations_checked: usize,
    pub rotation: usize,
    pub issues: Vec<LintIssue>,
}

impl FigureLint {
    pub fn ok(&self) -> bool {
        self.issues.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LintReport {
    pub figures: Vec<FigureLint>,
}

impl LintReport {
    pub fn ok(&self) -> bool {
        self.figures.iter().all(FigureLint::ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FigureLint> {
        self.figures.iter().filter(|f| !f.ok())
    }
}

impl fmt::Display for LintReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for fig in &self.figures {
            let status = if fig.ok() { "ok" } else { "FAIL" };
            write!(f, "{status:4} {:32} length {} checked {} vertices", fig.id, fig.length, fig.expectations_checked)?;
            if fig.rotation > 0 {
                write!(f, " (rotated by {})", fig.rotation)?;
            }
            writeln!(f)?;
            for issue in &fig.issues {
                writeln!(f, "     {}: {issue}", fig.id)?;
            }
        }
        let bad = self.failures().count();
        write!(f, "{} figures, {} failing", self.figures.len(), bad)
    }
}

fn lint_one(entry: &CorpusEntry) -> FigureLint {
    let cert = &entry.cert;
    let mut issues = Vec::new();
    match &cert.figure {
        Some(id) if *id == entry.id => {}
        Some(id) => issues.push(LintIssue::Header { msg: format!("figure id '{id}' does not match '{}'", entry.id) }),
        None => issues.push(LintIssue::Header { msg: "missing figure id".into() }),
    }
    let length = cert.walk.len();
    if length != FIGURE_LENGTH {
        issues.push(LintIssue::Length { found: length });
    }
    let compiled = match cert.compile() {
        Ok(c) => c,
        Err(e) => {
            issues.push(LintIssue::Header { msg: e.to_string() });
            return FigureLint { id: entry.id.clone(), length, expectations_checked: 0, rotation: entry.rotation, issues };
        }
    };
    let (g, gens) = &compiled;
    if g.order() != FIGURE_LENGTH {
        issues.push(LintIssue::Header { msg: format!("group has order {}", g.order()) });
    }
    let report = crate::hamilton::verify_hamiltonian_cycle(g, gens, &cert.walk);
    if let Some(v) = report.first_violation {
        issues.push(LintIssue::Verification { step: v.step, reason: v.reason });
    }
    let labels: std::collections::HashMap<usize, &Option<String>> =
        cert.expect.iter().map(|x| (x.step, &x.label)).collect();
    for (step, expected, found) in cert.expectation_mismatches(g, gens) {
        let printed = labels.get(&step).and_then(|l| l.as_deref()).map(str::to_string);
        issues.push(LintIssue::Vertex {
            step,
            expected: printed.unwrap_or_else(|| expected.to_string()),
            found: found.map(|x| x.to_string()),
        });
    }
    // header issues first, then by step
    issues.sort_by_key(|i| i.step().unwrap_or(0));
    FigureLint { id: entry.id.clone(), length, expectations_checked: cert.expect.len(), rotation: entry.rotation, issues }
}

pub fn transcription_lint(corpus: &[CorpusEntry]) -> LintReport {
    LintReport { figures: corpus.iter().map(lint_one).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_names_are_distinct() {
        let mut names: Vec<String> = figure_ids().map(file_name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 18);
        for &(id, file, _) in EMBEDDED {
            assert_eq!(file_name(id), file);
        }
    }

    #[test]
    fn corpus_is_clean() {
        let corpus = load_corpus().unwrap();
        assert_eq!(corpus.len(), 18);
        let report = transcription_lint(&corpus);
        assert!(report.ok(), "{report}");
        assert!(report.figures.iter().all(|f| f.expectations_checked == FIGURE_LENGTH));
    }

    #[test]
    fn flipped_sign_is_caught_at_that_step() {
        let mut corpus = load_corpus().unwrap();
        let entry = &mut corpus[0];
        entry.cert.walk.tokens[40] = entry.cert.walk.tokens[40].inverted();
        let report = transcription_lint(&corpus[..1]);
        let issue = &report.figures[0].issues[0];
        assert!(matches!(issue, LintIssue::Vertex { step: 41, .. }), "{issue}");
    }
}
