//! Frozen reference data. Every file was first derived by the library, then
//! checked against independent oracles in the integration tests, then frozen.

use crate::error::{Error, Result};

/// Ψ_3 of y² = x³ + 1.
pub const PSI3_A0_B1: &str = include_str!("../golden/psi3_a0_b1.txt");

/// σ_3 of y² = x³ + 1 in the `MultiPoly::serialize` format.
pub const SIGMA3_A0_B1: &str = include_str!("../golden/sigma3_a0_b1.txt");

/// n,terms,max_coeff of σ_n for y² = x³ + 1, 2 ≤ n ≤ 6.
pub const SUMMATION_HEIGHTS_A0_B1: &str = include_str!("../golden/summation_heights_a0_b1.csv");

/// n,degree,h_psi,h_phi of the division polynomials of y² = x³ + 1, n ≤ 60.
pub const DIVPOLY_HEIGHTS_A0_B1: &str = include_str!("../golden/divpoly_heights_a0_b1.csv");

/// instance,records,t,w for the desk resultant tables.
pub const RESULTANT_TABLES: &str = include_str!("../golden/resultant_tables.csv");

/// p,count of the order sweep φ = X, ϱ = X + 1, t = 3, p ≤ 2000.
pub const SWEEP_X_XPLUS1_T3: &str = include_str!("../golden/sweep_x_xplus1_t3.csv");

/// Absolute tolerance for the logarithmic heights stored with 12 decimals.
pub const HEIGHT_TOLERANCE: f64 = 1e-9;

/// Data rows of a golden CSV, split on commas, header skipped.
pub fn csv_rows(text: &str) -> Vec<Vec<&str>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').collect())
        .collect()
}

/// The row of `RESULTANT_TABLES` for an instance name.
pub fn resultant_row(instance: &str) -> Result<ResultantGolden> {
    csv_rows(RESULTANT_TABLES)
        .into_iter()
        .find(|r| r[0] == instance)
        .map(|r| ResultantGolden {
            records: r[1].parse().expect("golden records"),
            t: r[2].to_string(),
            w: r[3].to_string(),
        })
        .ok_or_else(|| Error::InvalidArgument(format!("no golden row for {instance}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultantGolden {
    pub records: usize,
    pub t: String,
    pub w: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn files_parse() {
        assert_eq!(PSI3_A0_B1.trim(), "3*X^4+12*X");
        assert_eq!(csv_rows(SUMMATION_HEIGHTS_A0_B1).len(), 5);
        assert_eq!(csv_rows(DIVPOLY_HEIGHTS_A0_B1).len(), 60);
        assert_eq!(resultant_row("mult_lin_a0b1_x_x_k3_l3").unwrap().t, "112500");
        assert!(resultant_row("missing").is_err());
    }
}
