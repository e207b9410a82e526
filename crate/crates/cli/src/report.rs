//! Deterministic table rendering. CSV carries a header row and six
//! fractional digits on every real value; JSON is a compact array of row
//! objects with full-precision numbers. Identical inputs render to
//! byte-identical output.

use serde::Serialize;

use crate::config::OutputFormat;

pub trait Row: Serialize {
    fn csv_header() -> &'static str;
    fn csv_line(&self) -> String;
}

pub fn render<R: Row>(rows: &[R], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = String::from(R::csv_header());
            out.push('\n');
            for row in rows {
                out.push_str(&row.csv_line());
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            let mut out = serde_json::to_string(rows).expect("row serialization cannot fail");
            out.push('\n');
            out
        }
    }
}

#[derive(Serialize)]
pub struct SweepRow {
    pub d: usize,
    pub avg_iconcurrence: f64,
    pub avg_negativity: f64,
}

impl Row for SweepRow {
    fn csv_header() -> &'static str {
        "d,avg_iconcurrence,avg_negativity"
    }

    fn csv_line(&self) -> String {
        format!(
            "{},{:.6},{:.6}",
            self.d, self.avg_iconcurrence, self.avg_negativity
        )
    }
}

#[derive(Serialize)]
pub struct CurveRow {
    pub d: usize,
    #[serde(rename = "F")]
    pub fidelity: f64,
    pub value: f64,
}

impl Row for CurveRow {
    fn csv_header() -> &'static str {
        "d,F,value"
    }

    fn csv_line(&self) -> String {
        format!("{},{:.6},{:.6}", self.d, self.fidelity, self.value)
    }
}

#[derive(Serialize)]
pub struct BranchRow {
    pub u: usize,
    pub v: usize,
    pub probability: f64,
    pub iconcurrence: f64,
    pub negativity: f64,
}

impl Row for BranchRow {
    fn csv_header() -> &'static str {
        "u,v,probability,iconcurrence,negativity"
    }

    fn csv_line(&self) -> String {
        format!(
            "{},{},{:.6},{:.6},{:.6}",
            self.u, self.v, self.probability, self.iconcurrence, self.negativity
        )
    }
}

#[derive(Serialize)]
pub struct AverageRow {
    pub avg_iconcurrence: f64,
    pub avg_negativity: f64,
}

impl Row for AverageRow {
    fn csv_header() -> &'static str {
        "avg_iconcurrence,avg_negativity"
    }

    fn csv_line(&self) -> String {
        format!("{:.6},{:.6}", self.avg_iconcurrence, self.avg_negativity)
    }
}

#[derive(Serialize)]
pub struct ChainRow {
    pub link_count: usize,
    pub end_visibility: f64,
    pub end_fidelity: f64,
    pub avg_teleport_fidelity: f64,
}

impl Row for ChainRow {
    fn csv_header() -> &'static str {
        "link_count,end_visibility,end_fidelity,avg_teleport_fidelity"
    }

    fn csv_line(&self) -> String {
        format!(
            "{},{:.6},{:.6},{:.6}",
            self.link_count, self.end_visibility, self.end_fidelity, self.avg_teleport_fidelity
        )
    }
}

#[derive(Serialize)]
pub struct TeleportRow {
    pub d: usize,
    pub visibility: f64,
    pub channel_fidelity: f64,
    pub avg_fidelity: f64,
    pub expected_fidelity: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Row for TeleportRow {
    fn csv_header() -> &'static str {
        "d,visibility,channel_fidelity,avg_fidelity,expected_fidelity,samples,seed"
    }

    fn csv_line(&self) -> String {
        format!(
            "{},{:.6},{:.6},{:.6},{:.6},{},{}",
            self.d,
            self.visibility,
            self.channel_fidelity,
            self.avg_fidelity,
            self.expected_fidelity,
            self.samples,
            self.seed
        )
    }
}

#[derive(Serialize)]
pub struct WitnessRow {
    pub d: usize,
    pub visibility: f64,
    pub excess: f64,
    pub verdict: &'static str,
}

impl Row for WitnessRow {
    fn csv_header() -> &'static str {
        "d,visibility,excess,verdict"
    }

    fn csv_line(&self) -> String {
        format!(
            "{},{:.6},{:.6},{}",
            self.d, self.visibility, self.excess, self.verdict
        )
    }
}
