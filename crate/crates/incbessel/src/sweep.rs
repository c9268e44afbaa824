//! Relative-error-vs-order sweeps with a quadrature reference, and their
//! deterministic CSV form.

use std::io::{self, Write};

use crate::engine;
use crate::params::{ParameterError, Parameters};
use crate::quadrature::{self, QuadratureConfig};

/// One row of sweep output: the order-`n` approximant for a given `y` and
/// its relative error against the quadrature reference. Skipped
/// (degenerate-denominator) rows carry NaN in both value columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub y: f64,
    pub n: u32,
    pub g_n: f64,
    pub rel_error: f64,
    pub skipped: bool,
}

/// Computes the approximant trajectory for each `y` and measures every
/// order against the quadrature oracle (never against a higher-order
/// transformation value). Rows are ordered by the input `y` list, then by
/// order; per-`y` sweeps are independent of each other.
pub fn error_sweep(
    x: f64,
    ys: &[f64],
    nu: f64,
    n_max: u32,
    qc: &QuadratureConfig,
) -> Result<Vec<SweepRow>, ParameterError> {
    let mut rows = Vec::with_capacity(ys.len() * (n_max as usize + 1));
    for &y in ys {
        let params = Parameters::new(x, y, nu)?;
        let reference = quadrature::tail_integral(&params, qc).value;
        let trajectory = engine::evaluate_sequence(&params, n_max);
        for p in &trajectory.points {
            let rel_error = if p.skipped {
                f64::NAN
            } else {
                ((p.value - reference) / reference).abs()
            };
            rows.push(SweepRow {
                y,
                n: p.order,
                g_n: p.value,
                rel_error,
                skipped: p.skipped,
            });
        }
    }
    Ok(rows)
}

/// Writes rows as CSV with header `y,n,G_n,rel_error,skipped`.
///
/// Floating-point columns use 17-significant-digit scientific notation, the
/// shortest form that round-trips binary64 exactly, so identical inputs
/// produce byte-identical files.
pub fn write_csv<W: Write>(out: &mut W, rows: &[SweepRow]) -> io::Result<()> {
    writeln!(out, "y,n,G_n,rel_error,skipped")?;
    for r in rows {
        writeln!(
            out,
            "{:.16e},{},{:.16e},{:.16e},{}",
            r.y, r.n, r.g_n, r.rel_error, r.skipped
        )?;
    }
    Ok(())
}
