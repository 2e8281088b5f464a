//! Tabular output: CSV with a one-line JSON metadata header, or a single
//! JSON document.

use std::io::{BufRead, Write};

use dunkl_bose::thermo::{Regime, ThermoPoint};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

/// Locale-independent %g-style text with 12 significant digits.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let fixed = format!("{:.*}", (11 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Num(x) => fmt_num(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // round through the text form so CSV and JSON carry the same digits
            Cell::Num(x) if x.is_finite() => json!(fmt_num(*x).parse::<f64>().expect("formatted float")),
            Cell::Num(x) => json!(fmt_num(*x)),
            Cell::Int(n) => json!(n),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub metadata: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(metadata: Value, columns: Vec<&'static str>) -> Self {
        Table { metadata, columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, format: Format, mut out: W) -> CliResult<()> {
        match format {
            Format::Csv => {
                writeln!(out, "# {}", serde_json::to_string(&self.metadata)?)?;
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::text))?;
                }
                w.flush()?;
            }
            Format::Json => {
                let rows: Vec<Value> = self.rows.iter().map(|r| Value::Array(r.iter().map(Cell::json).collect())).collect();
                let doc = json!({ "metadata": self.metadata, "columns": self.columns, "rows": rows });
                serde_json::to_writer_pretty(&mut out, &doc)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

/// Columns of a temperature sweep.
pub const SWEEP_COLUMNS: [&str; 8] = ["t", "t_over_tc", "z", "n_excited", "n0_frac", "u", "c_over_NkB", "regime"];

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct SweepRow {
    pub t: f64,
    pub t_over_tc: Option<f64>,
    pub z: f64,
    pub n_excited: f64,
    pub n0_frac: f64,
    pub u: f64,
    #[serde(rename = "c_over_NkB")]
    pub c_over_nkb: f64,
    pub regime: String,
}

/// A temperature sweep read back from its CSV form.
#[derive(Debug, Clone)]
pub struct SweepTable {
    pub metadata: Value,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn row_cells(p: &ThermoPoint, t_c: Option<f64>, n_particles: f64) -> Vec<Cell> {
        vec![
            p.t.into(),
            t_c.map(|tc| p.t / tc).into(),
            p.z.into(),
            p.n_excited.into(),
            (p.n0 / n_particles).into(),
            p.u.into(),
            p.c_over_nkb.into(),
            p.regime.as_str().into(),
        ]
    }

    pub fn read_csv<R: BufRead>(mut input: R) -> CliResult<Self> {
        let mut first = String::new();
        input.read_line(&mut first)?;
        let header = first
            .strip_prefix("# ")
            .ok_or_else(|| CliError::Table("missing '# ' metadata line".into()))?;
        let metadata: Value = serde_json::from_str(header.trim_end())?;
        let mut reader = csv::Reader::from_reader(input);
        let rows = reader.deserialize().collect::<Result<Vec<SweepRow>, _>>()?;
        Ok(SweepTable { metadata, rows })
    }

    pub fn n_particles(&self) -> CliResult<f64> {
        self.metadata["spec"]["n_particles"]
            .as_f64()
            .ok_or_else(|| CliError::Table("metadata lacks spec.n_particles".into()))
    }

    /// Rebuilds the states and checks ordering plus every state invariant.
    pub fn validate(&self) -> CliResult<Vec<ThermoPoint>> {
        let n = self.n_particles()?;
        let mut points = Vec::with_capacity(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 && !(self.rows[i - 1].t < r.t) {
                return Err(CliError::Table(format!("row {i}: t not strictly increasing")));
            }
            let p = ThermoPoint {
                t: r.t,
                z: r.z,
                n_excited: r.n_excited,
                n0: r.n0_frac * n,
                u: r.u,
                c_over_nkb: r.c_over_nkb,
                regime: r.regime.parse::<Regime>()?,
            };
            p.validate(n)?;
            points.push(p);
        }
        Ok(points)
    }
}
