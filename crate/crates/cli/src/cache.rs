use std::path::{Path, PathBuf};

use lt_core::elliptic::{
    ap_table_sharded, read_cache_file, write_cache_file, ApTable, EllipticCurve,
};

use crate::parse::Curve;
use crate::Failure;

pub const CACHE_ENV: &str = "LT_CACHE_DIR";

pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV).map_or_else(|| PathBuf::from("lt_cache"), PathBuf::from)
}

pub fn file_name(c: Curve, x: u64) -> String {
    format!("ap_{}_{}_{}.csv", c.a, c.b, x)
}

/// Smallest cached table for this curve reaching `x`.
pub fn find_covering(dir: &Path, c: Curve, x: u64) -> Option<(PathBuf, u64)> {
    let prefix = format!("ap_{}_{}_", c.a, c.b);
    std::fs::read_dir(dir)
        .ok()?
        .filter_map(|e| e.ok())
        .filter_map(|e| {
            let name = e.file_name().into_string().ok()?;
            let limit: u64 = name
                .strip_prefix(&prefix)?
                .strip_suffix(".csv")?
                .parse()
                .ok()?;
            (limit >= x).then(|| (e.path(), limit))
        })
        .min_by_key(|&(_, limit)| limit)
}

pub fn curve(c: Curve) -> Result<EllipticCurve, Failure> {
    Ok(EllipticCurve::new(c.a, c.b)?)
}

pub fn build(c: Curve, x: u64, shards: usize) -> Result<ApTable, Failure> {
    Ok(ap_table_sharded(&curve(c)?, x, shards))
}

pub fn write(table: &ApTable, path: &Path) -> Result<(), Failure> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)
            .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", parent.display())))?;
    }
    write_cache_file(&table.records, path)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

/// Loads a table covering `x`, computing and caching it when `compute` is set.
pub fn load(c: Curve, x: u64, compute: bool, shards: usize) -> Result<ApTable, Failure> {
    let dir = cache_dir();
    if let Some((path, limit)) = find_covering(&dir, c, x) {
        let records = read_cache_file(&path)?;
        return Ok(ApTable {
            curve: curve(c)?,
            x: limit,
            records,
        });
    }
    if !compute {
        return Err(Failure::Usage(format!(
            "no cached a_p table for A={}, B={} reaching x={x} in {} (run `lt ap` or pass --compute)",
            c.a,
            c.b,
            dir.display()
        )));
    }
    let table = build(c, x, shards)?;
    write(&table, &dir.join(file_name(c, x)))?;
    Ok(table)
}
