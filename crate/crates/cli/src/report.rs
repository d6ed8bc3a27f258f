//! The analysis report: order, dicriticality, and one record per
//! characteristic direction with classification, indices, and verdict.
//! Field order and direction sorting are fixed, so identical inputs
//! produce byte-identical JSON.

use num_complex::Complex64;
use serde::Serialize;

use parabasin_core::algebra::Chart;
use parabasin_core::criteria::{verdict_for, Conclusion, CriteriaError, Justification};
use parabasin_core::directions::characteristic_directions;
use parabasin_core::germ::Germ;
use parabasin_core::indices::index_report;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(c: Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum DirectionJson {
    /// The direction `[0:1]`, reported as the string `"infinity"`.
    Infinity(String),
    Finite { chart: String, re: f64, im: f64 },
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum VanishingOrderJson {
    Finite(u32),
    Infinite(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictJson {
    pub conclusion: String,
    pub justification: String,
    pub tested_value: ComplexJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct DirectionRecord {
    pub direction: DirectionJson,
    pub multiplicity: usize,
    pub degenerate: bool,
    pub m: VanishingOrderJson,
    pub n: u32,
    pub class: String,
    pub lambda: ComplexJson,
    pub hakim: Option<ComplexJson>,
    pub abate: ComplexJson,
    pub rho: Option<ComplexJson>,
    pub regular: Option<bool>,
    pub verdict: VerdictJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub order: u32,
    pub dicritical: bool,
    pub directions: Vec<DirectionRecord>,
}

pub fn conclusion_name(c: Conclusion) -> &'static str {
    match c {
        Conclusion::BasinExists => "BasinExists",
        Conclusion::NoBasinAlongDirection => "NoBasinAlongDirection",
        Conclusion::Unknown => "Unknown",
    }
}

pub fn justification_name(j: Justification) -> &'static str {
    match j {
        Justification::HakimTheorem => "HakimTheorem",
        Justification::Theorem1Irregular => "Theorem1_Irregular",
        Justification::Theorem2FuchsianR => "Theorem2_FuchsianR",
        Justification::RegularCaseS => "RegularCaseS",
        Justification::NegativeHakimRemark => "NegativeHakimRemark",
        Justification::ApparentUndecided => "ApparentUndecided",
        Justification::DicriticalOutOfScope => "DicriticalOutOfScope",
        Justification::BoundaryInconclusive => "BoundaryInconclusive",
    }
}

pub fn build_report(germ: &Germ) -> Result<AnalysisReport, CriteriaError> {
    let dir_report = characteristic_directions(germ).map_err(CriteriaError::from)?;
    let mut records = Vec::with_capacity(dir_report.directions.len());
    for d in &dir_report.directions {
        let indices = index_report(germ, d)?;
        let verdict = verdict_for(germ, d)?;
        let direction = match d.chart {
            Chart::U => DirectionJson::Finite {
                chart: "U".into(),
                re: d.u0.re,
                im: d.u0.im,
            },
            Chart::V => {
                if d.u0 == Complex64::ZERO {
                    DirectionJson::Infinity("infinity".into())
                } else {
                    DirectionJson::Finite {
                        chart: "V".into(),
                        re: d.u0.re,
                        im: d.u0.im,
                    }
                }
            }
        };
        records.push(DirectionRecord {
            direction,
            multiplicity: d.multiplicity,
            degenerate: d.degenerate,
            m: match d.m {
                Some(m) => VanishingOrderJson::Finite(m),
                None => VanishingOrderJson::Infinite("infinity".into()),
            },
            n: d.n,
            class: d.class.to_string(),
            lambda: d.lambda.into(),
            hakim: indices.hakim.map(Into::into),
            abate: indices.abate.into(),
            rho: indices.rho.map(Into::into),
            regular: indices.regular,
            verdict: VerdictJson {
                conclusion: conclusion_name(verdict.conclusion).into(),
                justification: justification_name(verdict.justification).into(),
                tested_value: verdict.tested_value.into(),
            },
        });
    }
    Ok(AnalysisReport {
        order: germ.order(),
        dicritical: dir_report.dicritical,
        directions: records,
    })
}

/// Plain-text table rendering of the report.
pub fn render_table(report: &AnalysisReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "order k = {}", report.order);
    let _ = writeln!(out, "dicritical = {}", report.dicritical);
    if report.directions.is_empty() {
        return out;
    }
    let (h_dir, h_mult, h_class, h_m, h_n, h_hakim, h_abate) =
        ("direction", "mult", "class", "m", "n", "hakim", "abate");
    let _ = writeln!(
        out,
        "{h_dir:<24} {h_mult:>4} {h_class:<10} {h_m:>3} {h_n:>3} {h_hakim:>22} {h_abate:>22}  verdict"
    );
    for r in &report.directions {
        let dir = match &r.direction {
            DirectionJson::Infinity(_) => "[0:1]".to_string(),
            DirectionJson::Finite { chart, re, im } => match chart.as_str() {
                "U" => format!("[1 : {re:.6}{im:+.6}i]"),
                _ => format!("[{re:.6}{im:+.6}i : 1]"),
            },
        };
        let m = match &r.m {
            VanishingOrderJson::Finite(m) => m.to_string(),
            VanishingOrderJson::Infinite(_) => "inf".into(),
        };
        let fmt_c = |c: &ComplexJson| format!("{:.6}{:+.6}i", c.re, c.im);
        let _ = writeln!(
            out,
            "{:<24} {:>4} {:<10} {:>3} {:>3} {:>22} {:>22}  {} ({})",
            dir,
            r.multiplicity,
            r.class,
            m,
            r.n,
            r.hakim.as_ref().map(fmt_c).unwrap_or_else(|| "-".into()),
            fmt_c(&r.abate),
            r.verdict.conclusion,
            r.verdict.justification,
        );
    }
    out
}
