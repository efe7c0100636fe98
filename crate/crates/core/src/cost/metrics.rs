// SPDX-License-Identifier: Apache-2.0

//! Efficiency metrics of published and simulated designs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize};

use super::{require_positive, CostError};

pub const METRICS_CSV_HEADER: &str =
    "name,algorithm,datapath_bits,key_bits,F_nm,area_um2,voltage,energy_pj_per_bit,throughput_mbps";

/// Published designs at nominal voltage, in metrics-ingestion format.
pub const SHIPPED_SURVEY: &str = include_str!("../../data/survey_designs.csv");

/// Derived cells as printed in the published comparison table.
pub const SHIPPED_SURVEY_PUBLISHED: &str = include_str!("../../data/survey_published.csv");

/// Published summary of the proposed and baseline engines.
pub const SHIPPED_SUMMARY: &str = include_str!("../../data/engine_summary.csv");

/// One row of the metrics CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricsInput {
    pub name: String,
    pub algorithm: String,
    pub datapath_bits: u32,
    pub key_bits: u32,
    #[serde(rename = "F_nm")]
    pub f_nm: f64,
    pub area_um2: Option<f64>,
    pub voltage: f64,
    pub energy_pj_per_bit: f64,
    pub throughput_mbps: f64,
}

/// A validated design; derived figures are computed on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRecord {
    input: MetricsInput,
}

pub fn compute_metrics(input: MetricsInput) -> Result<MetricsRecord, CostError> {
    require_positive("F_nm", input.f_nm)?;
    require_positive("voltage", input.voltage)?;
    require_positive("energy_pj_per_bit", input.energy_pj_per_bit)?;
    require_positive("throughput_mbps", input.throughput_mbps)?;
    if let Some(a) = input.area_um2 {
        require_positive("area_um2", a)?;
    }
    if input.datapath_bits == 0 || input.key_bits == 0 {
        return Err(CostError::InvalidParameter {
            name: "datapath_bits",
            reason: "datapath and key sizes must be positive".into(),
        });
    }
    Ok(MetricsRecord { input })
}

impl MetricsRecord {
    pub fn input(&self) -> &MetricsInput {
        &self.input
    }

    pub fn name(&self) -> &str {
        &self.input.name
    }

    pub fn area_um2(&self) -> Option<f64> {
        self.input.area_um2
    }

    pub fn energy_pj_per_bit(&self) -> f64 {
        self.input.energy_pj_per_bit
    }

    /// Area in units of the squared minimum feature size.
    pub fn area_over_f2(&self) -> Option<f64> {
        let f_um = self.input.f_nm / 1000.0;
        self.input.area_um2.map(|a| a / (f_um * f_um))
    }

    /// Inverse of energy per bit: 1 / (1 pJ/b) = 1 Tbps/W.
    pub fn energy_efficiency_tbps_per_w(&self) -> f64 {
        1.0 / self.input.energy_pj_per_bit
    }

    /// Gbps/W per µm².
    pub fn energy_eff_per_area(&self) -> Option<f64> {
        let gbps_per_w = 1000.0 * self.energy_efficiency_tbps_per_w();
        self.input.area_um2.map(|a| gbps_per_w / a)
    }

    /// Mbps per µm².
    pub fn throughput_eff(&self) -> Option<f64> {
        self.input.area_um2.map(|a| self.input.throughput_mbps / a)
    }

    pub fn derived(&self) -> DerivedMetrics {
        DerivedMetrics {
            name: self.input.name.clone(),
            area_over_f2_e6: self.area_over_f2().map(|v| v / 1e6),
            energy_eff_tbps_per_w: self.energy_efficiency_tbps_per_w(),
            energy_eff_per_area: self.energy_eff_per_area(),
            throughput_eff: self.throughput_eff(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivedMetrics {
    pub name: String,
    /// Area / F², in millions.
    pub area_over_f2_e6: Option<f64>,
    pub energy_eff_tbps_per_w: f64,
    pub energy_eff_per_area: Option<f64>,
    pub throughput_eff: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SerialParallelRatios {
    /// Serial energy per bit over parallel energy per bit.
    pub energy_ratio: f64,
    /// Serial area over parallel area.
    pub area_ratio: f64,
}

pub fn serial_parallel_ratios(
    serial: &MetricsRecord,
    parallel: &MetricsRecord,
) -> Result<SerialParallelRatios, CostError> {
    let area = |r: &MetricsRecord| r.area_um2().ok_or(CostError::MissingField("area_um2"));
    Ok(SerialParallelRatios {
        energy_ratio: serial.energy_pj_per_bit() / parallel.energy_pj_per_bit(),
        area_ratio: area(serial)? / area(parallel)?,
    })
}

pub fn parse_metrics_csv(text: &str) -> Result<Vec<MetricsRecord>, CostError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| CostError::Csv(e.to_string()))?
        .clone();
    if headers.is_empty() {
        return Ok(Vec::new());
    }
    let expected: Vec<&str> = METRICS_CSV_HEADER.split(',').collect();
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(CostError::Csv(format!(
            "header must be `{METRICS_CSV_HEADER}`, got `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    reader
        .deserialize::<MetricsInput>()
        .enumerate()
        .map(|(i, row)| {
            let row = row.map_err(|e| CostError::Csv(format!("row {}: {e}", i + 1)))?;
            compute_metrics(row)
        })
        .collect()
}

/// A number as printed, remembering how many decimals were shown.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DisplayedValue {
    pub value: f64,
    pub decimals: u32,
}

impl DisplayedValue {
    /// One unit in the last displayed digit.
    pub fn unit(&self) -> f64 {
        10f64.powi(-(self.decimals as i32))
    }

    /// `|x - value| <= one unit in the last digit`.
    pub fn within_one_unit(&self, x: f64) -> bool {
        (x - self.value).abs() <= self.unit() * (1.0 + 1e-9)
    }

    /// `x` rounded half-up to the displayed precision prints as `value`.
    pub fn rounds_to(&self, x: f64) -> bool {
        let scale = 10f64.powi(self.decimals as i32);
        ((x * scale + 0.5).floor() - (self.value * scale).round()).abs() < 0.5
    }
}

impl FromStr for DisplayedValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let value: f64 = s.parse().map_err(|_| format!("not a number: `{s}`"))?;
        let decimals = s.split_once('.').map_or(0, |(_, frac)| frac.len() as u32);
        Ok(Self { value, decimals })
    }
}

impl fmt::Display for DisplayedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.*}", self.decimals as usize, self.value)
    }
}

fn optional_displayed<'de, D: Deserializer<'de>>(d: D) -> Result<Option<DisplayedValue>, D::Error> {
    let s = String::deserialize(d)?;
    let s = s.trim();
    if s.is_empty() || s == "-" {
        return Ok(None);
    }
    s.parse().map(Some).map_err(serde::de::Error::custom)
}

/// Published derived cells for one design; `None` where the table shows "-".
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct PublishedRow {
    pub name: String,
    #[serde(deserialize_with = "optional_displayed")]
    pub area_over_f2_e6: Option<DisplayedValue>,
    #[serde(deserialize_with = "optional_displayed")]
    pub energy_eff_per_area: Option<DisplayedValue>,
    #[serde(deserialize_with = "optional_displayed")]
    pub throughput_eff: Option<DisplayedValue>,
}

pub fn parse_published_csv(text: &str) -> Result<Vec<PublishedRow>, CostError> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
        .deserialize()
        .map(|r| r.map_err(|e: csv::Error| CostError::Csv(e.to_string())))
        .collect()
}

fn displayed<'de, D: Deserializer<'de>>(d: D) -> Result<DisplayedValue, D::Error> {
    String::deserialize(d)?
        .parse()
        .map_err(serde::de::Error::custom)
}

/// One engine of the published summary table.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct SummaryRow {
    pub name: String,
    pub style: crate::sim::Style,
    pub seq_cell: crate::sim::SeqCell,
    #[serde(deserialize_with = "displayed")]
    pub core_area_um2: DisplayedValue,
    #[serde(deserialize_with = "displayed")]
    pub max_throughput_mbps: DisplayedValue,
    #[serde(deserialize_with = "displayed")]
    pub power_uw: DisplayedValue,
    #[serde(deserialize_with = "displayed")]
    pub freq_mhz: DisplayedValue,
    #[serde(deserialize_with = "displayed")]
    pub energy_pj_per_bit: DisplayedValue,
}

impl SummaryRow {
    /// Metrics record built from the published values, at 40 nm and 0.9 V.
    pub fn to_metrics(&self) -> MetricsRecord {
        MetricsRecord {
            input: MetricsInput {
                name: self.name.clone(),
                algorithm: "SIMON".into(),
                datapath_bits: 32,
                key_bits: 64,
                f_nm: 40.0,
                area_um2: Some(self.core_area_um2.value),
                voltage: 0.9,
                energy_pj_per_bit: self.energy_pj_per_bit.value,
                throughput_mbps: self.max_throughput_mbps.value,
            },
        }
    }
}

pub fn parse_summary_csv(text: &str) -> Result<Vec<SummaryRow>, CostError> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
        .deserialize()
        .map(|r| r.map_err(|e: csv::Error| CostError::Csv(e.to_string())))
        .collect()
}
