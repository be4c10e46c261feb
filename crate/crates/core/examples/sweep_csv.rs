//! Writes the cos α sweep of all measures as CSV to stdout.
//! Optional argument: number of grid points.

use ghz_cloning::report::{sweep_rows, write_sweep_csv, DEFAULT_POINTS};

fn main() -> ghz_cloning::Result<()> {
    let points = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("point count"))
        .unwrap_or(DEFAULT_POINTS);
    let rows = sweep_rows(points)?;
    write_sweep_csv(std::io::stdout().lock(), &rows)
}
