//! Bundled demo dataset: 50 component lifetimes drawn from an exponential
//! distribution with mean 2, laid out as a 5x10 grid.

use crate::io::parse_sample_rows;

/// Raw bytes of the bundled `example1.csv` fixture.
pub const EXAMPLE1_CSV: &str = include_str!("../data/example1.csv");

/// The 50 lifetimes in file (row-major) order.
pub fn example1_values() -> Vec<f64> {
    parse_sample_rows(EXAMPLE1_CSV)
        .expect("bundled dataset parses")
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_shape_and_endpoints() {
        let values = example1_values();
        assert_eq!(values.len(), 50);
        assert_eq!(values[0], 8.23);
        assert_eq!(values[49], 0.221);
        let rows = parse_sample_rows(EXAMPLE1_CSV).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|r| r.len() == 10));
    }
}
