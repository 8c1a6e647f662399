//! CSV output for the family table and the census.

use serde::Serialize;
use trifree_core::extremal::FamilyRow;

use crate::{CensusRow, IoError};

#[derive(Serialize)]
struct Figure2Record {
    k: usize,
    e1: Option<u64>,
    e2: Option<u64>,
    e3: Option<u64>,
    e4: Option<u64>,
}

/// `k,e1,e2,e3,e4` with empty cells for families not defined at that `k`.
pub fn figure2_csv(rows: &[FamilyRow]) -> Result<String, IoError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        let [e1, e2, e3, e4] = r.counts;
        w.serialize(Figure2Record { k: r.k, e1, e2, e3, e4 })?;
    }
    finish(w)
}

pub fn census_csv(rows: &[CensusRow]) -> Result<String, IoError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    finish(w)
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, IoError> {
    let bytes = w.into_inner().map_err(|e| IoError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use trifree_core::extremal::figure2_data;

    #[test]
    fn figure2_rows() {
        let csv = figure2_csv(&figure2_data(9).unwrap()).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "k,e1,e2,e3,e4");
        assert_eq!(lines[1], "0,20,20,8,");
        assert!(lines[2].starts_with("1,24,23,21,"));
        assert_eq!(lines.len(), 5);
    }
}
