use num_complex::Complex64;
use serde::Serialize;

use super::pair::EquivalencePair;
use crate::spectra::{scan_spectrum, ScanOptions};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsospectralRow {
    pub n: usize,
    pub e_big_h: Complex64,
    pub e_h: Complex64,
    pub abs_dev: f64,
    pub rel_dev: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsospectralReport {
    pub rows: Vec<IsospectralRow>,
    pub max_abs_dev: f64,
    pub max_rel_dev: f64,
    pub warnings: Vec<String>,
}

/// Scans both members of the pair and compares level by level.
pub fn isospectrality_check(pair: &EquivalencePair, n_max: usize, opts: &ScanOptions) -> Result<IsospectralReport> {
    let (big, small) = rayon::join(
        || scan_spectrum(&pair.big_h_spec, None, n_max, None, opts),
        || scan_spectrum(&pair.h_spec, None, n_max, None, opts),
    );
    let (big, small) = (big?, small?);
    let mut warnings: Vec<String> = big.warnings.iter().map(|w| format!("H: {w}")).collect();
    warnings.extend(small.warnings.iter().map(|w| format!("h: {w}")));
    let rows: Vec<IsospectralRow> = big
        .levels
        .iter()
        .zip(&small.levels)
        .enumerate()
        .map(|(n, (x, y))| {
            let abs_dev = (x.energy - y.energy).norm();
            IsospectralRow {
                n,
                e_big_h: x.energy,
                e_h: y.energy,
                abs_dev,
                rel_dev: abs_dev / y.energy.norm().max(1.0),
            }
        })
        .collect();
    if rows.len() < n_max + 1 {
        warnings.push(format!("only {} of {} levels compared", rows.len(), n_max + 1));
    }
    Ok(IsospectralReport {
        max_abs_dev: rows.iter().map(|r| r.abs_dev).fold(0.0, f64::max),
        max_rel_dev: rows.iter().map(|r| r.rel_dev).fold(0.0, f64::max),
        rows,
        warnings,
    })
}
