//! Scans of sponge families for the symmetry and nonnegativity of h-numbers.
//!
//! "Acyclic sponge" here means the combinatorial class: acyclic in the sense
//! of [`check_acyclic`] and passing [`check_local_model`]. Only such sponges
//! get h-vector verdicts.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::enumerative::{b_from_euler, fvector_of, hvector_of, EnumError, ExtendedFVector};
use crate::par::{self, Strategy};
use crate::sponge::{check_acyclic, check_local_model, SpongeComplex};

/// Label for f-vector space hits, which need not come from any sponge.
pub const UNREALIZED_LABEL: &str = "no known sponge realization";

/// A sponge to scan, keyed by a canonical identifier.
#[derive(Clone, Debug)]
pub struct ScanItem {
    pub id: String,
    pub sponge: SpongeComplex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub id: String,
    pub acyclic: bool,
    pub local_model: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fvector: Option<ExtendedFVector>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub h: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub symmetric: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nonnegative: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

impl ScanRecord {
    fn failed(id: &str, acyclic: bool, local_model: bool, error: String) -> Self {
        ScanRecord {
            id: id.to_string(),
            acyclic,
            local_model,
            fvector: None,
            h: None,
            symmetric: None,
            nonnegative: None,
            error: Some(error),
        }
    }

    /// In the scanned class, with h-vector verdicts.
    pub fn classified(&self) -> bool {
        self.symmetric.is_some()
    }
}

/// Classifies one sponge. Errors are recorded, not raised.
pub fn classify(item: &ScanItem) -> ScanRecord {
    let z = &item.sponge;
    let acyclic = match check_acyclic(z) {
        Ok(r) => r.acyclic,
        Err(e) => return ScanRecord::failed(&item.id, false, false, e.to_string()),
    };
    let local_model = match check_local_model(z) {
        Ok(v) => v.is_empty(),
        Err(e) => return ScanRecord::failed(&item.id, acyclic, false, e.to_string()),
    };
    let mut record = ScanRecord {
        id: item.id.clone(),
        acyclic,
        local_model,
        fvector: None,
        h: None,
        symmetric: None,
        nonnegative: None,
        error: None,
    };
    if !(acyclic && local_model) {
        return record;
    }
    match fvector_of(z) {
        Ok(fv) => {
            let h = hvector_of(&fv);
            match h.as_i64() {
                Some(values) => {
                    record.h = Some(values);
                    record.symmetric = Some(h.symmetric);
                    record.nonnegative = Some(h.nonnegative);
                }
                None => record.error = Some("h-number exceeds 64 bits".into()),
            }
            record.fvector = Some(fv);
        }
        Err(e) => record.error = Some(e.to_string()),
    }
    record
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub total: usize,
    pub acyclic_count: usize,
    pub ds_failures: Vec<ScanRecord>,
    pub nonneg_failures: Vec<ScanRecord>,
    pub errors: Vec<ScanRecord>,
    pub records: Vec<ScanRecord>,
}

impl ScanSummary {
    /// Summary of a set of records; order of the input does not matter.
    pub fn from_records(records: impl IntoIterator<Item = ScanRecord>) -> Self {
        let by_id: BTreeMap<String, ScanRecord> =
            records.into_iter().map(|r| (r.id.clone(), r)).collect();
        let records: Vec<ScanRecord> = by_id.into_values().collect();
        ScanSummary {
            total: records.len(),
            acyclic_count: records.iter().filter(|r| r.classified()).count(),
            ds_failures: records
                .iter()
                .filter(|r| r.symmetric == Some(false))
                .cloned()
                .collect(),
            nonneg_failures: records
                .iter()
                .filter(|r| r.nonnegative == Some(false))
                .cloned()
                .collect(),
            errors: records
                .iter()
                .filter(|r| r.error.is_some())
                .cloned()
                .collect(),
            records,
        }
    }
}

/// Items classified per checkpoint flush.
const CHUNK: usize = 32;

/// Scans a family. With a checkpoint path, records already present there are
/// reused and new ones are appended as each chunk finishes, so an interrupted
/// scan resumes where it stopped.
pub fn scan(
    items: &[ScanItem],
    strategy: Strategy,
    checkpoint: Option<&Path>,
) -> io::Result<ScanSummary> {
    let mut done: BTreeMap<String, ScanRecord> = match checkpoint {
        Some(path) if path.exists() => read_checkpoint(path)?
            .into_iter()
            .map(|r| (r.id.clone(), r))
            .collect(),
        _ => BTreeMap::new(),
    };
    let pending: Vec<&ScanItem> = items.iter().filter(|i| !done.contains_key(&i.id)).collect();
    let mut writer = match checkpoint {
        Some(path) => Some(OpenOptions::new().create(true).append(true).open(path)?),
        None => None,
    };
    for chunk in pending.chunks(CHUNK) {
        let records = par::map(strategy, chunk, |item| classify(item));
        if let Some(w) = writer.as_mut() {
            for r in &records {
                serde_json::to_writer(&mut *w, r)?;
                w.write_all(b"\n")?;
            }
            w.flush()?;
        }
        done.extend(records.into_iter().map(|r| (r.id.clone(), r)));
    }
    let wanted: BTreeMap<&str, ()> = items.iter().map(|i| (i.id.as_str(), ())).collect();
    Ok(ScanSummary::from_records(
        done.into_values()
            .filter(|r| wanted.contains_key(r.id.as_str())),
    ))
}

/// Reads a JSON-lines checkpoint. A torn last line (from an interrupted
/// write) is ignored.
pub fn read_checkpoint(path: &Path) -> io::Result<Vec<ScanRecord>> {
    let reader = BufReader::new(File::open(path)?);
    let lines: Vec<String> = reader.lines().collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for (k, line) in lines.iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str(line) {
            Ok(r) => out.push(r),
            Err(_) if k + 1 == lines.len() => {}
            Err(e) => {
                return Err(io::Error::new(
                    io::ErrorKind::InvalidData,
                    format!("checkpoint line {}: {e}", k + 1),
                ))
            }
        }
    }
    Ok(out)
}

/// One grid point of the f-vector space scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FspacePoint {
    pub fvector: ExtendedFVector,
    pub h: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FspaceSummary {
    pub n: usize,
    pub bound: u64,
    pub label: &'static str,
    pub points: usize,
    pub skipped_negative_b: usize,
    pub asymmetric: Vec<FspacePoint>,
    pub negative: Vec<FspacePoint>,
}

/// Restrictions on the raw f-vector grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FspaceConstraint {
    #[default]
    None,
    /// `n = 3` with `2 f_1 = 3 f_0` and `f_0 >= 4`, as for cubic graphs.
    Trivalent,
}

/// Every `f` with `0 <= f_i <= bound`, `b` from the Euler relation. Points
/// with negative `b` are skipped and counted.
pub fn scan_fvector_space(
    n: usize,
    bound: u64,
    constraint: FspaceConstraint,
) -> Result<FspaceSummary, EnumError> {
    if n < 2 {
        return Err(EnumError::LengthMismatch {
            expected: 1,
            found: 0,
        });
    }
    let mut summary = FspaceSummary {
        n,
        bound,
        label: UNREALIZED_LABEL,
        points: 0,
        skipped_negative_b: 0,
        asymmetric: Vec::new(),
        negative: Vec::new(),
    };
    let mut f = vec![0u64; n - 1];
    loop {
        let admissible = match constraint {
            FspaceConstraint::None => true,
            FspaceConstraint::Trivalent => n == 3 && f[0] >= 4 && 2 * f[1] == 3 * f[0],
        };
        if admissible {
            match b_from_euler(&f, n) {
                Ok(b) => {
                    summary.points += 1;
                    let fv = ExtendedFVector::new(n, f.clone(), b)?;
                    let h = hvector_of(&fv);
                    let values = h
                        .as_i64()
                        .expect("h-numbers of a bounded grid fit in 64 bits");
                    let point = FspacePoint {
                        fvector: fv,
                        h: values,
                    };
                    if !h.symmetric {
                        summary.asymmetric.push(point.clone());
                    }
                    if !h.nonnegative {
                        summary.negative.push(point);
                    }
                }
                Err(EnumError::NegativeB(_)) => summary.skipped_negative_b += 1,
                Err(e) => return Err(e),
            }
        }
        // Odometer increment.
        let mut k = 0;
        loop {
            if k == f.len() {
                return Ok(summary);
            }
            if f[k] < bound {
                f[k] += 1;
                break;
            }
            f[k] = 0;
            k += 1;
        }
    }
}
