use std::f64::consts::PI;

use serde::Serialize;

/// Catalan's constant `L(2, chi_4)`.
const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;

/// Closed-form densities quoted next to the measured ratios.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReferenceConstants {
    /// `(3 / 2 pi) prod_{p = 1 mod 4} (1 - p^-2)^(1/2)`.
    pub rieger: f64,
    /// `1 - prod_{k >= 0} (1 - 2^-(2k+1))`.
    pub stevenhagen: f64,
    /// `(6 / pi^2)^2`.
    pub six_over_pi_squared_sq: f64,
    /// `(3/2) (6 / pi^2)^2`.
    pub delta_gcd: f64,
}

impl ReferenceConstants {
    /// `(name, value to 12 decimals)` in display order.
    pub fn entries(&self) -> [(&'static str, String); 4] {
        [
            ("rieger", format!("{:.12}", self.rieger)),
            ("stevenhagen", format!("{:.12}", self.stevenhagen)),
            ("six_over_pi_squared_sq", format!("{:.12}", self.six_over_pi_squared_sq)),
            ("delta_gcd", format!("{:.12}", self.delta_gcd)),
        ]
    }
}

fn primes_below(n: usize) -> impl Iterator<Item = usize> {
    let mut composite = vec![false; n];
    (2..n).filter(move |&i| {
        if composite[i] {
            return false;
        }
        let mut j = i * i;
        while j < n {
            composite[j] = true;
            j += i;
        }
        true
    })
}

/// The product over `p = 1 mod 4` converges slowly, so it is rewritten via
/// `prod_{p = 1} (1 - p^-2)^2 prod_{p = 3} (1 - p^-4) = 8 / (pi^2 G)`,
/// leaving a product over `p = 3 mod 4` with an `O(X^-3)` tail.
pub fn reference_constants() -> ReferenceConstants {
    let b4: f64 = primes_below(200_000)
        .filter(|p| p % 4 == 3)
        .map(|p| 1.0 - (p as f64).powi(-4))
        .product();
    let rieger = 3.0 / (2.0 * PI) * (8.0 / (PI * PI * CATALAN * b4)).powf(0.25);
    let stevenhagen = 1.0
        - (0..64)
            .map(|k| 1.0 - 0.5f64.powi(2 * k + 1))
            .product::<f64>();
    let s = 6.0 / (PI * PI);
    ReferenceConstants {
        rieger,
        stevenhagen,
        six_over_pi_squared_sq: s * s,
        delta_gcd: 1.5 * s * s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoted_values() {
        let c = reference_constants();
        assert!((c.delta_gcd - 0.554363041753).abs() < 1e-12);
        assert!((c.stevenhagen - 0.5805775582).abs() < 1e-10);
        assert!((c.rieger - 0.464592).abs() < 1e-6);
        assert!(c.entries()[2].1.starts_with("0.369575"));
    }

    #[test]
    fn rewritten_product_matches_direct_product() {
        let direct: f64 = primes_below(2_000_000)
            .filter(|p| p % 4 == 1)
            .map(|p| 1.0 - (p as f64).powi(-2))
            .product();
        let rieger = 3.0 / (2.0 * PI) * direct.sqrt();
        assert!((rieger - reference_constants().rieger).abs() < 1e-8);
    }
}
