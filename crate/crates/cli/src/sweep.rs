//! `nlie table`: evaluate one calculator over a parameter grid.
//!
//! ```json
//! { "calculator": "dim_2multiplier_heisenberg",
//!   "grid": { "n": { "from": 2, "to": 4 }, "m": [1, 2, 3] },
//!   "fixed": {} }
//! ```
//!
//! Rows run over the grid with the first key outermost. A grid with an empty
//! axis produces an empty table. Cells read `skipped` when the oracle hits
//! its term cap, `negative` when a formula evaluates below zero and
//! `invalid` for parameters outside a calculator's domain.

use std::path::Path;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{Map, Value};

use nlie_core::{count, multiplier, oracle, Error};

use crate::{term_cap, Failure, TableFormat};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Sweep {
    calculator: String,
    #[serde(default)]
    grid: Map<String, Value>,
    #[serde(default)]
    fixed: Map<String, Value>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Axis {
    List(Vec<u64>),
    Range { from: u64, to: u64 },
}

impl Axis {
    fn values(self) -> Vec<u64> {
        match self {
            Axis::List(v) => v,
            Axis::Range { from, to } => (from..=to).collect(),
        }
    }
}

enum Cell {
    Value(BigInt),
    Skipped,
    Negative,
    Invalid,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Value(v) => v.to_string(),
            Cell::Skipped => "skipped".into(),
            Cell::Negative => "negative".into(),
            Cell::Invalid => "invalid".into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Value(v) => Value::Number(v.to_string().parse().expect("integer literal")),
            _ => Value::String(self.text()),
        }
    }
}

fn parameters(calculator: &str) -> Option<&'static [&'static str]> {
    Some(match calculator {
        "count_basic" => &["d", "n", "w"],
        "witt_count" => &["d", "w"],
        "graded_dimension" => &["d", "n", "w"],
        "dim_multiplier_abelian" => &["d", "n", "c"],
        "dim_multiplier_heisenberg" | "dim_2multiplier_heisenberg" => &["n", "m"],
        "dim_2multiplier_dimL2_one" => &["d", "n", "m"],
        "bound_2multiplier_dimL2_k" => &["d", "n", "k"],
        "dim_modular_tensor" | "dim_modular_tensor_triple" => &["dv", "dw", "n"],
        _ => return None,
    })
}

fn evaluate(calculator: &str, p: &[u64], cap: usize) -> Cell {
    let value = |r: nlie_core::Result<BigInt>| match r {
        Ok(v) => Cell::Value(v),
        Err(Error::TermCap { .. }) => Cell::Skipped,
        Err(Error::NegativeValue { .. }) => Cell::Negative,
        Err(_) => Cell::Invalid,
    };
    let mult = |r: nlie_core::Result<nlie_core::MultiplierResult>| value(r.map(|m| m.value));
    match calculator {
        "count_basic" => value(count::count(p[0], p[1], p[2])),
        "witt_count" => value(count::witt_count(p[0], p[1])),
        "graded_dimension" => value(
            oracle::graded_dimension(p[0] as usize, p[1] as usize, p[2] as usize, cap).map(|c| BigInt::from(c.dimension)),
        ),
        "dim_multiplier_abelian" => mult(multiplier::dim_multiplier_abelian(p[0], p[1], p[2])),
        "dim_multiplier_heisenberg" => mult(multiplier::dim_multiplier_heisenberg(p[0], p[1])),
        "dim_2multiplier_heisenberg" => mult(multiplier::dim_2multiplier_heisenberg(p[0], p[1])),
        "dim_2multiplier_dimL2_one" => mult(multiplier::dim_2multiplier_dim_l2_one(p[0], p[1], p[2])),
        "bound_2multiplier_dimL2_k" => mult(multiplier::bound_2multiplier_dim_l2_k(p[0], p[1], p[2])),
        "dim_modular_tensor" => Cell::Value(count::dim_modular_tensor(p[0], p[1], p[2])),
        "dim_modular_tensor_triple" => Cell::Value(count::dim_modular_tensor_triple(p[0], p[1], p[2])),
        _ => unreachable!("calculator names are checked first"),
    }
}

fn integer(key: &str, v: &Value) -> Result<u64, Failure> {
    v.as_u64().ok_or_else(|| Failure::Usage(format!("fixed parameter {key} must be a non-negative integer")))
}

pub fn cmd_table(path: &Path, format: TableFormat) -> Result<String, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let sweep: Sweep = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let names = parameters(&sweep.calculator)
        .ok_or_else(|| Failure::Usage(format!("unknown calculator {:?}", sweep.calculator)))?;

    let mut axes: Vec<(String, Vec<u64>)> = Vec::new();
    for (key, v) in sweep.grid {
        let axis: Axis = serde_json::from_value(v)
            .map_err(|_| Failure::Usage(format!("grid axis {key} must be a list or {{\"from\", \"to\"}}")))?;
        axes.push((key, axis.values()));
    }
    for key in axes.iter().map(|(k, _)| k.as_str()).chain(sweep.fixed.keys().map(String::as_str)) {
        if !names.contains(&key) {
            return Err(Failure::Usage(format!("{} takes no parameter {key}", sweep.calculator)));
        }
    }
    if let Some(key) = axes.iter().map(|(k, _)| k).find(|k| sweep.fixed.contains_key(k.as_str())) {
        return Err(Failure::Usage(format!("parameter {key} is both swept and fixed")));
    }
    if let Some(missing) = names.iter().find(|n| !sweep.fixed.contains_key(**n) && !axes.iter().any(|(k, _)| k == *n)) {
        return Err(Failure::Usage(format!("{} needs parameter {missing}", sweep.calculator)));
    }
    let fixed: Vec<(String, u64)> =
        sweep.fixed.iter().map(|(k, v)| integer(k, v).map(|x| (k.clone(), x))).collect::<Result<_, _>>()?;

    let cap = term_cap()?;
    // first axis outermost; no axes at all also means no rows
    let mut points: Vec<Vec<u64>> = if axes.is_empty() { Vec::new() } else { vec![Vec::new()] };
    for (_, values) in &axes {
        points = points
            .into_iter()
            .flat_map(|p| values.iter().map(move |&v| p.iter().copied().chain([v]).collect()))
            .collect();
    }
    let rows: Vec<(Vec<u64>, Cell)> = points
        .into_iter()
        .map(|point| {
            let args: Vec<u64> = names
                .iter()
                .map(|name| match axes.iter().position(|(k, _)| k == name) {
                    Some(i) => point[i],
                    None => fixed.iter().find(|(k, _)| k == name).expect("checked above").1,
                })
                .collect();
            let cell = evaluate(&sweep.calculator, &args, cap);
            (point, cell)
        })
        .collect();

    let header: Vec<&str> = axes.iter().map(|(k, _)| k.as_str()).chain(["value"]).collect();
    Ok(match format {
        TableFormat::Csv => {
            let mut out = header.join(",");
            for (point, cell) in &rows {
                out.push('\n');
                let fields: Vec<String> = point.iter().map(u64::to_string).chain([cell.text()]).collect();
                out.push_str(&fields.join(","));
            }
            out
        }
        TableFormat::Latex => {
            let mut out = format!("\\begin{{tabular}}{{{}}}\n\\toprule\n", "r".repeat(header.len()));
            out.push_str(&format!("{} \\\\\n\\midrule\n", header.join(" & ")));
            for (point, cell) in &rows {
                let fields: Vec<String> = point.iter().map(u64::to_string).chain([cell.text()]).collect();
                out.push_str(&format!("{} \\\\\n", fields.join(" & ")));
            }
            out.push_str("\\bottomrule\n\\end{tabular}");
            out
        }
        TableFormat::Json => {
            let table: Vec<Value> = rows
                .iter()
                .map(|(point, cell)| {
                    let mut row = Map::new();
                    for ((k, _), x) in axes.iter().zip(point) {
                        row.insert(k.clone(), Value::from(*x));
                    }
                    row.insert("value".into(), cell.json());
                    Value::Object(row)
                })
                .collect();
            crate::to_json(&table)
        }
    })
}
