//! On-disk document formats and the text number format.
//!
//! A state file is `{"rho": matrix}`, a channel file `{"kraus": [matrix, …]}`.
//! A matrix is an array of rows; each entry is a two-element `[re, im]` array
//! of decimals. Serialization uses the shortest representation that parses
//! back to the identical double, so emit/parse round-trips are exact.

use num_complex::Complex64;
use qpair::{ComplexMatrix, DensityMatrix, KrausChannel};
use serde::{Deserialize, Serialize};

pub type MatrixRows = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub rho: MatrixRows,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ChannelFile {
    pub kraus: Vec<MatrixRows>,
}

/// Validation tolerance applied to parsed states.
pub const STATE_TOL: f64 = 1e-9;
/// Completeness tolerance applied to parsed channels.
pub const CHANNEL_TOL: f64 = 1e-8;

pub fn rows_to_matrix(rows: &MatrixRows) -> Result<ComplexMatrix, qpair::Error> {
    let complex: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|[re, im]| Complex64::new(*re, *im))
                .collect()
        })
        .collect();
    ComplexMatrix::from_rows(&complex)
}

// The emitting half of the format contract; exercised by the round-trip
// tests, while the binary itself only parses.
#[allow(dead_code)]
pub fn matrix_to_rows(m: &ComplexMatrix) -> MatrixRows {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let z = m[(i, j)];
                    [z.re, z.im]
                })
                .collect()
        })
        .collect()
}

pub fn density_from_rows(rows: &MatrixRows) -> Result<DensityMatrix, qpair::Error> {
    DensityMatrix::from_matrix(&rows_to_matrix(rows)?, STATE_TOL)
}

pub fn channel_from_rows(kraus: &[MatrixRows]) -> Result<KrausChannel, qpair::Error> {
    let ops = kraus
        .iter()
        .map(rows_to_matrix)
        .collect::<Result<Vec<_>, _>>()?;
    KrausChannel::from_kraus(ops, CHANNEL_TOL)
}

/// 12-significant-digit scientific rendering for text output.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}
