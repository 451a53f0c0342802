//! Sheaf cohomology of sums of line bundles on `P^1` and `P^3`.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};

fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `h^i(P^m, O(d))`.
///
/// Only the extreme indices can be nonzero: `h^0 = C(d+m, m)` for `d >= 0`
/// and `h^m = C(-d-1, m)` for `d <= -m-1`.
pub fn line_cohomology(m: u32, d: i64, i: usize) -> Result<u64> {
    if i > m as usize {
        return Err(Error::CohomologyIndex {
            index: i,
            base_dim: m,
        });
    }
    let m = m as i64;
    Ok(if i == 0 {
        binomial(d + m, m)
    } else if i as i64 == m {
        binomial(-d - 1, m)
    } else {
        0
    })
}

/// `chi(P^m, O(d)) = (d+1)(d+2)...(d+m) / m!`, valid for every integer `d`.
pub fn line_euler_characteristic(m: u32, d: i64) -> i64 {
    let mut num = 1i64;
    let mut den = 1i64;
    for k in 1..=m as i64 {
        num *= d + k;
        den *= k;
    }
    num / den
}

/// Direct sum of line bundles `O(d_1) + ... + O(d_n)` on `P^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SplitBundle {
    base_dim: u32,
    degrees: Vec<i64>,
}

impl SplitBundle {
    /// Degrees are stored sorted; the multiset is what matters.
    pub fn new(base_dim: u32, degrees: &[i64]) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidSpec(
                "a bundle needs at least one summand".into(),
            ));
        }
        if base_dim != 1 && base_dim != 3 {
            return Err(Error::InvalidSpec(format!("unsupported base P^{base_dim}")));
        }
        Ok(Self::from_parts(base_dim, degrees.to_vec()))
    }

    fn from_parts(base_dim: u32, mut degrees: Vec<i64>) -> Self {
        degrees.sort_unstable();
        SplitBundle { base_dim, degrees }
    }

    pub fn base_dim(&self) -> u32 {
        self.base_dim
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn first_chern(&self) -> i64 {
        self.degrees.iter().sum()
    }

    /// `E (x) O(t)`
    pub fn twist(&self, t: i64) -> Self {
        Self::from_parts(self.base_dim, self.degrees.iter().map(|d| d + t).collect())
    }

    pub fn dual(&self) -> Self {
        Self::from_parts(self.base_dim, self.degrees.iter().map(|d| -d).collect())
    }

    /// `S^k E`: all `k`-fold sums of degrees with repetition.
    pub fn sym_power(&self, k: usize) -> Self {
        let degrees = (0..self.rank())
            .combinations_with_replacement(k)
            .map(|idx| idx.iter().map(|&i| self.degrees[i]).sum())
            .collect();
        Self::from_parts(self.base_dim, degrees)
    }

    /// `E^v (x) E`: all differences `a_i - a_j` over ordered pairs.
    pub fn end_bundle(&self) -> Self {
        let degrees = self
            .degrees
            .iter()
            .cartesian_product(&self.degrees)
            .map(|(a, b)| a - b)
            .collect();
        Self::from_parts(self.base_dim, degrees)
    }

    pub fn cohomology(&self, i: usize) -> Result<u64> {
        self.degrees
            .iter()
            .map(|&d| line_cohomology(self.base_dim, d, i))
            .sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|&d| line_euler_characteristic(self.base_dim, d))
            .sum()
    }
}

/// `S^k E`
pub fn sym_power(b: &SplitBundle, k: usize) -> SplitBundle {
    b.sym_power(k)
}

/// `E^v (x) E`
pub fn end_bundle(b: &SplitBundle) -> SplitBundle {
    b.end_bundle()
}

/// `h^i(E)` by additivity over summands.
pub fn cohomology(b: &SplitBundle, i: usize) -> Result<u64> {
    b.cohomology(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bundle(m: u32, d: &[i64]) -> SplitBundle {
        SplitBundle::new(m, d).unwrap()
    }

    #[test]
    fn line_examples() {
        assert_eq!(line_cohomology(3, 0, 0).unwrap(), 1);
        assert_eq!(line_cohomology(3, -4, 3).unwrap(), 1);
        assert_eq!(line_cohomology(1, -3, 1).unwrap(), 2);
        assert_eq!(line_cohomology(3, 2, 0).unwrap(), 10);
        assert_eq!(line_cohomology(3, -3, 3).unwrap(), 0);
        assert!(matches!(
            line_cohomology(1, 0, 2),
            Err(Error::CohomologyIndex {
                index: 2,
                base_dim: 1
            })
        ));
    }

    #[test]
    fn sym_examples() {
        assert_eq!(sym_power(&bundle(3, &[0, 2]), 2).degrees(), [0, 2, 4]);
        let s4 = bundle(1, &[0, 0, 0, 0]).sym_power(4);
        assert_eq!(s4.rank(), 35);
        assert!(s4.degrees().iter().all(|&d| d == 0));
        // S^2 O(a)+O(b) twisted by 4 - (a + b)
        for (a, b) in [(0, 0), (0, 3), (-2, 1), (1, 5)] {
            let s = bundle(3, &[a, b]).sym_power(2).twist(4 - a - b);
            let mut expected = [a - b + 4, 4, b - a + 4];
            expected.sort_unstable();
            assert_eq!(s.degrees(), expected);
        }
    }

    #[test]
    fn end_examples() {
        assert_eq!(end_bundle(&bundle(3, &[0, 4])).degrees(), [-4, 0, 0, 4]);
        assert_eq!(end_bundle(&bundle(3, &[0, 0])).degrees(), [0; 4]);
        let e = bundle(1, &[0, 1, 2, 3]).end_bundle();
        assert_eq!(e.rank(), 16);
        assert_eq!(e, e.dual());
        // End(O + O(4)) (x) O(-4)
        assert_eq!(
            bundle(3, &[0, 4]).end_bundle().twist(-4).degrees(),
            [-8, -4, -4, 0]
        );
    }

    #[test]
    fn cohomology_examples() {
        assert_eq!(cohomology(&bundle(3, &[0, 4]).end_bundle(), 2).unwrap(), 0);
        let s = bundle(1, &[0, 0, 0, 0]).sym_power(4).twist(2);
        assert_eq!(cohomology(&s, 1).unwrap(), 0);
        // S^4(O+O+O(2)+O(2)) has C(5,4) = 5 summands of degree 0
        let s = bundle(1, &[0, 0, 2, 2]).sym_power(4);
        assert_eq!(s.degrees().iter().filter(|&&d| d == 0).count(), 5);
        assert_eq!(cohomology(&s.twist(-2), 1).unwrap(), 5);
    }

    proptest! {
        #[test]
        fn serre_duality(d in -10i64..=10, m in prop_oneof![Just(1u32), Just(3u32)]) {
            for i in 0..=m as usize {
                prop_assert_eq!(
                    line_cohomology(m, d, i).unwrap(),
                    line_cohomology(m, -d - m as i64 - 1, m as usize - i).unwrap()
                );
            }
        }

        #[test]
        fn euler_characteristic_is_alternating_sum(
            m in prop_oneof![Just(1u32), Just(3u32)],
            degs in prop::collection::vec(-9i64..=9, 1..5),
        ) {
            let b = SplitBundle::new(m, &degs).unwrap();
            let alt: i64 = (0..=m as usize)
                .map(|i| {
                    let h = b.cohomology(i).unwrap() as i64;
                    if i % 2 == 0 { h } else { -h }
                })
                .sum();
            prop_assert_eq!(alt, b.euler_characteristic());
        }

        #[test]
        fn end_is_self_dual(degs in prop::collection::vec(-9i64..=9, 1..5)) {
            let e = SplitBundle::new(3, &degs).unwrap().end_bundle();
            prop_assert_eq!(e.dual(), e);
        }

        #[test]
        fn sym_power_rank(degs in prop::collection::vec(-5i64..=5, 1..5), k in 0usize..5) {
            let b = SplitBundle::new(1, &degs).unwrap();
            let n = b.rank() as i64;
            prop_assert_eq!(b.sym_power(k).rank() as u64, binomial(n + k as i64 - 1, k as i64));
        }
    }
}
