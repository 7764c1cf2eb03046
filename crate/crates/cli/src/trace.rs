//! Sampled per-round metric rows and their CSV serialization.

use std::io::Write;
use std::path::Path;

use crate::HarnessError;

pub const CSV_HEADER: &str =
    "t,reg_x,reg_y,dyn_ne_reg,ne_reg,dual_gap,p_t,v_t,w_t,eps_x,eps_y,meta_entropy_x,meta_entropy_y";

/// One sampled row of the running metrics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub t: u64,
    pub reg_x: f64,
    pub reg_y: f64,
    pub dyn_ne_reg: f64,
    pub ne_reg: f64,
    pub dual_gap: f64,
    pub p_t: f64,
    pub v_t: f64,
    pub w_t: f64,
    pub eps_x: f64,
    pub eps_y: f64,
    pub meta_entropy_x: f64,
    pub meta_entropy_y: f64,
}

/// Rows strictly increasing in `t`, final row at the horizon.
#[derive(Debug, Clone, Default)]
pub struct RunTrace {
    rows: Vec<TraceRow>,
}

impl RunTrace {
    pub fn new() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn push(&mut self, row: TraceRow) {
        if let Some(last) = self.rows.last() {
            assert!(
                row.t > last.t,
                "trace rows must be strictly increasing in t"
            );
        }
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[TraceRow] {
        &self.rows
    }

    pub fn last(&self) -> Option<&TraceRow> {
        self.rows.last()
    }

    /// Full CSV content; floats carry 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let fields = [
                r.reg_x,
                r.reg_y,
                r.dyn_ne_reg,
                r.ne_reg,
                r.dual_gap,
                r.p_t,
                r.v_t,
                r.w_t,
                r.eps_x,
                r.eps_y,
                r.meta_entropy_x,
                r.meta_entropy_y,
            ];
            out.push_str(&r.t.to_string());
            for v in fields {
                out.push(',');
                out.push_str(&format_sig(v));
            }
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), HarnessError> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        let mut file = std::fs::File::create(path)?;
        file.write_all(self.to_csv().as_bytes())?;
        Ok(())
    }
}

/// 12 significant digits in scientific notation; deterministic for a given
/// bit pattern.
pub fn format_sig(v: f64) -> String {
    format!("{v:.11e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(t: u64, value: f64) -> TraceRow {
        TraceRow {
            t,
            reg_x: value,
            reg_y: 0.0,
            dyn_ne_reg: 0.0,
            ne_reg: 0.0,
            dual_gap: 0.0,
            p_t: 0.0,
            v_t: 0.0,
            w_t: 0.0,
            eps_x: 0.25,
            eps_y: 0.25,
            meta_entropy_x: 0.0,
            meta_entropy_y: 0.0,
        }
    }

    #[test]
    fn csv_has_header_and_significant_digits() {
        let mut trace = RunTrace::new();
        trace.push(row(1, 1.0 / 3.0));
        trace.push(row(2, 5000.0));
        let csv = trace.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        let first = lines.next().unwrap();
        assert!(first.starts_with("1,3.33333333333e-1,"));
        assert!(lines.next().unwrap().starts_with("2,5.00000000000e3,"));
    }

    #[test]
    #[should_panic]
    fn rows_must_increase() {
        let mut trace = RunTrace::new();
        trace.push(row(5, 0.0));
        trace.push(row(5, 0.0));
    }
}
