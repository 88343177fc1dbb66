//! Stable machine-readable records. Big integers are decimal strings and
//! reals carry their digit count; field order is fixed by declaration order.

use serde::{Deserialize, Serialize};

use crate::burnside::CensusRow;
use crate::cyclestruct::CycleType;
use crate::submodcount::DimPoly;

pub const SCHEMA: &str = "bincensus/1";

/// Fractional digits used when printing the correction term.
pub const CORRECTION_DIGITS: u32 = 60;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub schema: String,
    pub n: usize,
    pub b: String,
    #[serde(rename = "G")]
    pub g: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub by_dim: Option<Vec<String>>,
    pub correction: String,
    pub precision: u32,
}

impl CensusRecord {
    pub fn from_row(row: &CensusRow, with_dims: bool) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            n: row.n,
            b: row.b.to_string(),
            g: row.g.to_string(),
            by_dim: with_dims.then(|| row.by_dim.iter().map(ToString::to_string).collect()),
            correction: row
                .correction(CORRECTION_DIGITS)
                .to_decimal_string(CORRECTION_DIGITS),
            precision: CORRECTION_DIGITS,
        }
    }
}

pub fn table_csv<'a>(rows: impl IntoIterator<Item = &'a CensusRow>) -> String {
    let mut out = String::from("n,b,G,correction\n");
    for row in rows {
        let r = CensusRecord::from_row(row, false);
        out.push_str(&format!("{},{},{},{}\n", r.n, r.b, r.g, r.correction));
    }
    out
}

pub fn table_json<'a>(rows: impl IntoIterator<Item = &'a CensusRow>) -> String {
    let records: Vec<CensusRecord> = rows.into_iter().map(|r| CensusRecord::from_row(r, false)).collect();
    serde_json::to_string_pretty(&records).unwrap() + "\n"
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeRecord {
    pub schema: String,
    #[serde(rename = "type")]
    pub cycle_type: String,
    pub n: usize,
    pub lattice_size: String,
    pub by_dim: Vec<String>,
}

impl LatticeRecord {
    pub fn new(ct: &CycleType, poly: &DimPoly) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            cycle_type: ct.to_string(),
            n: ct.n(),
            lattice_size: poly.total().to_string(),
            by_dim: poly.coefficients().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitRecord {
    pub schema: String,
    pub n: u32,
    pub u: String,
    pub precision: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantCountRecord {
    #[serde(rename = "type")]
    pub cycle_type: String,
    pub invariant_subspaces: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub schema: String,
    pub n: usize,
    pub subspaces: usize,
    pub by_type: Vec<InvariantCountRecord>,
}
