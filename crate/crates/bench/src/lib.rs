//! Inputs shared by the benchmarks.

use quadnorm_core::Radical;

/// Radicals with short, medium and long continued-fraction periods.
pub const RADICALS: [u64; 4] = [15170, 141245, 999826, 9999709];

pub fn radicals() -> Vec<Radical> {
    RADICALS
        .iter()
        .map(|&m| Radical::new(m).expect("squarefree"))
        .collect()
}

/// Products of two primes near `2^31` and `2^26`, hard cases for rho.
pub const SEMIPRIMES: [u64; 2] = [4_611_685_975_477_714_963, 4_503_597_479_886_983];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_valid() {
        assert_eq!(radicals().len(), RADICALS.len());
        for n in SEMIPRIMES {
            let f = quadnorm_core::arith::factorize(n).unwrap();
            assert_eq!(f.omega(), 2, "{n}");
        }
    }
}
