//! Trajectory CSV and JSON report output.

use std::io::{Read, Write};

use anyhow::{bail, Context, Result};
use cubint_core::sim::Trajectory;
use serde::Serialize;

pub const CSV_HEADER: [&str; 7] = ["t", "x1", "x2", "p1", "p2", "H", "Q"];

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_trajectory_csv<W: Write>(out: W, traj: &Trajectory) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for i in 0..traj.len() {
        let s = &traj.states[i];
        let row = [traj.times[i], s.x1, s.x2, s.p1, s.p2, traj.h_values[i], traj.q_values[i]];
        w.write_record(row.map(float))?;
    }
    w.flush()?;
    Ok(())
}

/// Rows of `t,x1,x2,p1,p2,H,Q`.
pub fn read_trajectory_csv<R: Read>(input: R) -> Result<Vec<[f64; 7]>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header != CSV_HEADER {
        bail!("unexpected trajectory header {header:?}");
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let mut row = [0.0; 7];
        for (slot, field) in row.iter_mut().zip(rec.iter()) {
            *slot = field.parse().with_context(|| format!("row {}: bad number {field:?}", i + 1))?;
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
