//! CSV and JSON encodings of sweep rows.
//!
//! Real values are rounded to 12 significant digits before they are written
//! and then printed in shortest round-trip form, so parsing a file gives back
//! exactly the rounded rows.

use std::io::{Read, Write};

use anyhow::{anyhow, bail, Context};
use serde_json::{Map, Value};

use super::sweep::SweepRow;

pub const SIGNIFICANT_DIGITS: usize = 12;

const PARAM_NAMES: [&str; 3] = ["phi", "theta", "xi"];

pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().expect("formatted float parses")
}

impl SweepRow {
    /// The row as it appears once written to a file.
    pub fn rounded(&self) -> SweepRow {
        SweepRow {
            mean_n: round_sig(self.mean_n),
            alpha: round_sig(self.alpha),
            p_opt: round_sig(self.p_opt),
            helstrom: round_sig(self.helstrom),
            fields_baseline: self.fields_baseline.map(round_sig),
            params: self.params.iter().copied().map(round_sig).collect(),
            evaluations: self.evaluations,
            converged: self.converged,
        }
    }
}

fn param_names(receivers: usize) -> Vec<String> {
    (1..=receivers).flat_map(|l| PARAM_NAMES.iter().map(move |p| format!("{p}{l}"))).collect()
}

/// Column order: `mean_n, alpha, p_opt, helstrom, fields_baseline,
/// phi1, theta1, xi1, ..., evaluations, converged`.
pub fn csv_header(receivers: usize) -> Vec<String> {
    let mut h: Vec<String> =
        ["mean_n", "alpha", "p_opt", "helstrom", "fields_baseline"].iter().map(|s| s.to_string()).collect();
    h.extend(param_names(receivers));
    h.push("evaluations".into());
    h.push("converged".into());
    h
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> anyhow::Result<()> {
    let receivers = rows.first().map(SweepRow::receivers).unwrap_or(2);
    let mut w = csv::Writer::from_writer(out);
    w.write_record(csv_header(receivers))?;
    for row in rows {
        if row.receivers() != receivers {
            bail!("rows disagree on the number of receivers");
        }
        let r = row.rounded();
        let mut rec = vec![
            r.mean_n.to_string(),
            r.alpha.to_string(),
            r.p_opt.to_string(),
            r.helstrom.to_string(),
            r.fields_baseline.map(|v| v.to_string()).unwrap_or_default(),
        ];
        rec.extend(r.params.iter().map(f64::to_string));
        rec.push(r.evaluations.to_string());
        rec.push(r.converged.to_string());
        w.write_record(rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> anyhow::Result<Vec<SweepRow>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers()?.clone();
    let n_params = header.len().checked_sub(7).filter(|n| n % 3 == 0).context("malformed header")?;
    let expected = csv_header(n_params / 3);
    if header.iter().ne(expected.iter().map(String::as_str)) {
        bail!("unexpected CSV columns");
    }
    let mut rows = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let num = |i: usize| -> anyhow::Result<f64> {
            rec[i].parse().with_context(|| format!("row {}: bad number in column {}", line + 1, expected[i]))
        };
        let fields_baseline = if rec[4].is_empty() { None } else { Some(num(4)?) };
        let params = (5..5 + n_params).map(num).collect::<anyhow::Result<_>>()?;
        rows.push(SweepRow {
            mean_n: num(0)?,
            alpha: num(1)?,
            p_opt: num(2)?,
            helstrom: num(3)?,
            fields_baseline,
            params,
            evaluations: rec[5 + n_params].parse()?,
            converged: rec[6 + n_params].parse()?,
        });
    }
    Ok(rows)
}

fn row_to_json(row: &SweepRow) -> Value {
    let r = row.rounded();
    let mut m = Map::new();
    m.insert("mean_n".into(), r.mean_n.into());
    m.insert("alpha".into(), r.alpha.into());
    m.insert("p_opt".into(), r.p_opt.into());
    m.insert("helstrom".into(), r.helstrom.into());
    m.insert("fields_baseline".into(), r.fields_baseline.map_or(Value::Null, Value::from));
    for (name, v) in param_names(r.receivers()).into_iter().zip(&r.params) {
        m.insert(name, (*v).into());
    }
    m.insert("evaluations".into(), r.evaluations.into());
    m.insert("converged".into(), r.converged.into());
    Value::Object(m)
}

fn row_from_json(v: &Value) -> anyhow::Result<SweepRow> {
    let obj = v.as_object().context("row is not an object")?;
    let num = |k: &str| obj.get(k).and_then(Value::as_f64).ok_or_else(|| anyhow!("missing number `{k}`"));
    let mut params = Vec::new();
    for l in 1.. {
        let names: Vec<String> = PARAM_NAMES.iter().map(|p| format!("{p}{l}")).collect();
        if !obj.contains_key(&names[0]) {
            break;
        }
        for n in &names {
            params.push(num(n)?);
        }
    }
    Ok(SweepRow {
        mean_n: num("mean_n")?,
        alpha: num("alpha")?,
        p_opt: num("p_opt")?,
        helstrom: num("helstrom")?,
        fields_baseline: match obj.get("fields_baseline") {
            None | Some(Value::Null) => None,
            Some(x) => Some(x.as_f64().context("fields_baseline is not a number")?),
        },
        params,
        evaluations: obj.get("evaluations").and_then(Value::as_u64).context("missing evaluations")? as usize,
        converged: obj.get("converged").and_then(Value::as_bool).context("missing converged")?,
    })
}

pub fn write_json<W: Write>(rows: &[SweepRow], mut out: W) -> anyhow::Result<()> {
    let arr = Value::Array(rows.iter().map(row_to_json).collect());
    serde_json::to_writer_pretty(&mut out, &arr)?;
    writeln!(out)?;
    Ok(())
}

pub fn read_json<R: Read>(input: R) -> anyhow::Result<Vec<SweepRow>> {
    let v: Value = serde_json::from_reader(input)?;
    v.as_array().context("expected a JSON array")?.iter().map(row_from_json).collect()
}
