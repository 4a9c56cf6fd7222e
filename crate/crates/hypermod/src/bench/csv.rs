//! Flat CSV emission and parsing for run records. Columns are fixed; float
//! fields use shortest round-trip formatting so identical runs produce
//! byte-identical files.

use std::io::{BufRead, Write};

use crate::bench::{Algorithm, RunRecord};
use crate::error::{Error, Result};

pub const CSV_HEADER: &str =
    "scenario,replicate,algorithm,seed,n,K_true,K_hat,ari,q_true,q_hat,rel_error,rel_error_defined,wall_time_s,status";

fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        format!("{v}")
    }
}

pub fn write_csv(records: &[RunRecord], mut w: impl Write) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        let status = r.status.replace(',', ";").replace('\n', " ");
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.scenario,
            r.replicate,
            r.algorithm,
            r.seed,
            r.n,
            r.k_true,
            r.k_hat,
            fmt_f64(r.ari),
            fmt_f64(r.q_true),
            fmt_f64(r.q_hat),
            r.rel_error.map(fmt_f64).unwrap_or_default(),
            r.rel_error.is_some(),
            fmt_f64(r.wall_time_s),
            status,
        )?;
    }
    Ok(())
}

fn parse_f64(s: &str) -> f64 {
    if s.is_empty() {
        f64::NAN
    } else {
        s.parse().unwrap_or(f64::NAN)
    }
}

pub fn read_csv(reader: impl BufRead) -> Result<Vec<RunRecord>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if idx == 0 {
            if line.trim() != CSV_HEADER {
                return Err(Error::Parse {
                    line: 1,
                    msg: "unrecognized CSV header".into(),
                });
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.splitn(14, ',').collect();
        if fields.len() != 14 {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("expected 14 fields, found {}", fields.len()),
            });
        }
        let int = |i: usize| -> Result<u64> {
            fields[i].parse().map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("bad integer {:?}", fields[i]),
            })
        };
        let rel_defined = fields[11] == "true";
        out.push(RunRecord {
            scenario: fields[0].to_string(),
            replicate: int(1)? as usize,
            algorithm: Algorithm::parse(fields[2]).map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("bad algorithm {:?}", fields[2]),
            })?,
            seed: int(3)?,
            n: int(4)? as usize,
            k_true: int(5)? as usize,
            k_hat: int(6)? as usize,
            ari: parse_f64(fields[7]),
            q_true: parse_f64(fields[8]),
            q_hat: parse_f64(fields[9]),
            rel_error: rel_defined.then(|| parse_f64(fields[10])),
            wall_time_s: parse_f64(fields[12]),
            status: fields[13].to_string(),
        });
    }
    Ok(out)
}
