//! CSV writers with a fixed, versioned column order. All floating-point
//! values print with 17 significant digits so a rerun is byte-identical and
//! every value re-parses exactly.

use bbm_core::diagnostics::DiagnosticsRecord;
use std::fmt::Write as _;

pub const TRAJECTORY_SCHEMA_VERSION: u32 = 1;

/// `{:.16e}` gives one digit before the point and sixteen after: 17
/// significant digits, enough to round-trip any f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Header + rows for a trajectory: time, tracked pair norms, invariants,
/// monitors, identity residuals (blank at window edges). All quantities are
/// dimensionless.
pub fn trajectory_csv(records: &[DiagnosticsRecord]) -> String {
    let mut out = String::new();
    let s_track: &[f64] = records
        .first()
        .map(|r| r.norm_indices.as_slice())
        .unwrap_or(&[]);
    out.push('t');
    for s in s_track {
        let _ = write!(out, ",pair_norm_s{s}");
    }
    out.push_str(
        ",hamiltonian,mass_eta,mass_v,cross_invariant,norm_x1,min_vx,min_eta,max_abs_v,\
         res_x1_energy,res_v_h1,res_eta_h1\n",
    );
    for r in records {
        let _ = write!(out, "{}", fmt_f64(r.t));
        for n in &r.norms {
            let _ = write!(out, ",{}", fmt_f64(*n));
        }
        let _ = write!(
            out,
            ",{},{},{},{},{},{},{},{}",
            fmt_f64(r.hamiltonian),
            fmt_f64(r.mass_eta),
            fmt_f64(r.mass_v),
            fmt_f64(r.cross_invariant),
            fmt_f64(r.norm_x1),
            fmt_f64(r.min_vx),
            fmt_f64(r.min_eta),
            fmt_f64(r.max_abs_v),
        );
        for name in ["x1_energy", "v_h1", "eta_h1"] {
            match r.identity_residuals.get(name) {
                Some(v) => {
                    let _ = write!(out, ",{}", fmt_f64(*v));
                }
                None => out.push(','),
            }
        }
        out.push('\n');
    }
    out
}

/// Two-column (or more) numeric table with the given header names.
pub fn table_csv(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&x| fmt_f64(x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatted_floats_round_trip_exactly() {
        for &x in &[
            0.1,
            -3.0,
            std::f64::consts::PI,
            1.0 / 3.0,
            6.02e23,
            5e-324,
            -1.2345678901234567e-200,
        ] {
            let s = fmt_f64(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{x} -> {s} -> {back}");
        }
    }

    #[test]
    fn table_layout_is_stable() {
        let csv = table_csv(&["t", "value"], &[vec![1.0, 2.0], vec![3.0, 4.0]]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "t,value");
        assert!(lines[1].starts_with("1.0000000000000000e0,"));
    }
}
