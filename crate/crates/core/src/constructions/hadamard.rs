//! Coefficient-wise products of series.

use crate::exact::PowerSeries;

/// `Σ a_n b_n z^n`, truncated to the shorter input.
pub fn hadamard_series(f: &PowerSeries, g: &PowerSeries) -> PowerSeries {
    PowerSeries::new(f.coeffs().iter().zip(g.coeffs()).map(|(a, b)| a * b).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn unit_and_central_binomials() {
        let f = PowerSeries::from_ints(&[3, -1, 4, 1, 5]);
        assert_eq!(hadamard_series(&f, &PowerSeries::from_ints(&[1; 6])), f);
        let c = PowerSeries::from_ints(&[1, 2, 6, 20]);
        assert_eq!(hadamard_series(&c, &c), PowerSeries::from_ints(&[1, 4, 36, 400]));
        assert_eq!(hadamard_series(&c, &f), hadamard_series(&f, &c));
        assert_eq!(hadamard_series(&c, &f).coeff(3), &rat(20));
    }
}
