//! a_p cache files: CSV, header `p,a,ordinary,D,d`, one row per prime in
//! ascending order, LF line endings, integers and booleans only.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::FundamentalDiscriminant;
use crate::error::{Error, Result};

use super::ApRecord;

pub const CACHE_HEADER: &str = "p,a,ordinary,D,d";

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    p: u64,
    a: i64,
    ordinary: bool,
    #[serde(rename = "D")]
    disc: i64,
    d: i64,
}

pub fn write_cache<W: Write>(records: &[ApRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    if records.is_empty() {
        // serde only emits the header alongside the first row
        w.write_record(CACHE_HEADER.split(','))?;
    }
    for r in records {
        w.serialize(Row {
            p: r.p,
            a: r.a,
            ordinary: r.ordinary,
            disc: r.disc,
            d: r.fund.get(),
        })?;
    }
    w.flush()?;
    Ok(())
}

/// Reads and validates a cache: every row is recomputed from `(p, a)` and
/// must agree with its stored `ordinary`, `D` and `d` columns.
pub fn read_cache<R: Read>(input: R) -> Result<Vec<ApRecord>> {
    let mut rdr = csv::ReaderBuilder::new().from_reader(input);
    let header = rdr.headers()?.iter().collect::<Vec<_>>().join(",");
    if header != CACHE_HEADER {
        return Err(Error::Parse(format!("unexpected cache header {header:?}")));
    }
    let mut out: Vec<ApRecord> = Vec::new();
    for row in rdr.deserialize() {
        let row: Row = row?;
        let rec = ApRecord::new(row.p, row.a)?;
        if rec.ordinary != row.ordinary
            || rec.disc != row.disc
            || rec.fund != FundamentalDiscriminant::new(row.d)?
        {
            return Err(Error::Parse(format!(
                "inconsistent cache row for p = {}",
                row.p
            )));
        }
        if out.last().is_some_and(|prev| prev.p >= rec.p) {
            return Err(Error::Parse(format!(
                "cache rows not ascending at p = {}",
                rec.p
            )));
        }
        out.push(rec);
    }
    Ok(out)
}

pub fn write_cache_file(records: &[ApRecord], path: &Path) -> Result<()> {
    let f = File::create(path)?;
    write_cache(records, BufWriter::new(f))
}

pub fn read_cache_file(path: &Path) -> Result<Vec<ApRecord>> {
    read_cache(BufReader::new(File::open(path)?))
}
