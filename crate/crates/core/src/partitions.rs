//! Partition combinatorics for nilpotent orbits of symplectic type.
//!
//! A partition labels a nilpotent orbit of `Sp(2n)` exactly when every odd
//! part occurs with even multiplicity. The main exports are the collapse map
//! onto the largest such partition below a given one, the dominance order,
//! the orbit predicted for a cover of fixed degree, and the dimension
//! bookkeeping that ties the two together.

use crate::error::{Error, Result};
use crate::rat::{rat, ratio, Rat};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Weakly decreasing positive parts. Trailing zeros are stripped on entry,
/// so the internal vector is always canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u64>);

impl Partition {
    pub fn new(mut parts: Vec<u64>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be weakly decreasing, got {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Conjugate partition: column lengths of the Young diagram.
    pub fn transpose(&self) -> Partition {
        match self.0.first() {
            None => Partition(Vec::new()),
            Some(&first) => {
                let cols = (1..=first)
                    .map(|i| self.0.iter().filter(|&&p| p >= i).count() as u64)
                    .collect();
                Partition(cols)
            }
        }
    }

    /// True when every odd part occurs an even number of times.
    pub fn is_symplectic(&self) -> bool {
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            if self.0[i] % 2 == 1 && (j - i) % 2 == 1 {
                return false;
            }
            i = j;
        }
        true
    }

    fn count_odd_parts(&self) -> u64 {
        self.0.iter().filter(|&&p| p % 2 == 1).count() as u64
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.0 {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.0.len()))?;
        for p in &self.0 {
            seq.serialize_element(p)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u64>::deserialize(de)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Outcome of a dominance comparison between partitions of equal total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dominance {
    Equal,
    /// Every prefix sum of the first is at most that of the second.
    Less,
    /// Every prefix sum of the first is at least that of the second.
    Greater,
    Incomparable,
}

/// Dominance order. Errors when the totals differ, since the order is only
/// defined on partitions of the same integer.
pub fn dominance_compare(a: &Partition, b: &Partition) -> Result<Dominance> {
    if a.total() != b.total() {
        return Err(Error::InvalidPartition(format!(
            "dominance needs equal totals, got {} and {}",
            a.total(),
            b.total()
        )));
    }
    let len = a.len().max(b.len());
    let (mut sa, mut sb) = (0u64, 0u64);
    let (mut le, mut ge) = (true, true);
    for i in 0..len {
        sa += a.parts().get(i).copied().unwrap_or(0);
        sb += b.parts().get(i).copied().unwrap_or(0);
        if sa > sb {
            le = false;
        }
        if sa < sb {
            ge = false;
        }
    }
    Ok(match (le, ge) {
        (true, true) => Dominance::Equal,
        (true, false) => Dominance::Less,
        (false, true) => Dominance::Greater,
        (false, false) => Dominance::Incomparable,
    })
}

/// Greatest partition with all odd parts of even multiplicity that is
/// dominated by the input. Errors on odd totals, where no such partition
/// exists.
///
/// Each step moves one box down from the last occurrence of the largest
/// odd part with odd multiplicity to the first later slot that stays
/// weakly decreasing. This strictly lowers the partition in dominance, so
/// the loop terminates; the result is the unique dominance-maximal
/// symplectic partition below the input (checked exhaustively in tests).
pub fn sp_collapse(lambda: &Partition) -> Result<Partition> {
    if lambda.total() % 2 == 1 {
        return Err(Error::InvalidPartition(format!(
            "no symplectic partition of odd total {}",
            lambda.total()
        )));
    }
    let mut parts = lambda.parts().to_vec();
    let budget = (lambda.total() + 1) * (lambda.total() + 1);
    for _ in 0..=budget {
        let current = Partition(parts.clone());
        if current.is_symplectic() {
            return Ok(current);
        }
        // Largest odd part with odd multiplicity, located by its last index.
        let mut target: Option<usize> = None;
        let mut i = 0;
        while i < parts.len() {
            let mut j = i;
            while j < parts.len() && parts[j] == parts[i] {
                j += 1;
            }
            if parts[i] % 2 == 1 && (j - i) % 2 == 1 {
                target = Some(j - 1);
                break;
            }
            i = j;
        }
        let idx = target.expect("non-symplectic partition has an odd-multiplicity odd part");
        debug_assert!(parts[idx] > 1, "even total keeps the moved part above 1");
        parts[idx] -= 1;
        let mut placed = false;
        for k in idx + 1..parts.len() {
            if parts[k] + 1 <= parts[k - 1] {
                parts[k] += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            parts.push(1);
        }
    }
    Err(Error::Overflow(format!(
        "collapse did not stabilize for {lambda}"
    )))
}

/// Orbit predicted for the degree-`r` cover of `Sp(2n)`: write `2n = ar + b`
/// with `0 <= b < r` and collapse `(r^a, b)`. Defined for odd `r < 2n`.
pub fn conjectured_orbit(n: u64, r: u64) -> Result<Partition> {
    if r % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "cover degree must be odd, got {r}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("rank must be positive".into()));
    }
    if r >= 2 * n {
        return Err(Error::InvalidParameter(format!(
            "cover degree {r} must be below 2n = {}",
            2 * n
        )));
    }
    let a = (2 * n) / r;
    let b = (2 * n) % r;
    let mut parts = vec![r; a as usize];
    if b > 0 {
        parts.push(b);
    }
    sp_collapse(&Partition::new(parts)?)
}

/// Half the adjoint-orbit dimension of the symplectic nilpotent orbit
/// labelled by `lambda` inside `Sp(2n)`. The orbit dimension is
/// `2n^2 + n - (sum of squared column lengths)/2 - (number of odd parts)/2`.
pub fn gk_dimension(lambda: &Partition, n: u64) -> Result<Rat> {
    if lambda.total() != 2 * n {
        return Err(Error::InvalidPartition(format!(
            "partition of {} does not label an orbit of Sp({})",
            lambda.total(),
            2 * n
        )));
    }
    if !lambda.is_symplectic() {
        return Err(Error::NotSymplectic(format!(
            "{lambda} has an odd part with odd multiplicity"
        )));
    }
    let col_sq: u64 = lambda
        .transpose()
        .parts()
        .iter()
        .map(|&c| c * c)
        .sum();
    let dim = rat((2 * n * n + n) as i64)
        - ratio(col_sq as i64, 2)
        - ratio(lambda.count_odd_parts() as i64, 2);
    Ok(dim / rat(2))
}

/// Dimension of the unipotent radical of the standard parabolic of `Sp(2n)`
/// whose Levi factor is `GL(k) x Sp(2n - 2k)`.
pub fn unipotent_radical_dim(n: u64, k: u64) -> u64 {
    k * (2 * n - k)
}

/// Orbit data for one `(n, r)` pair, with both dimension identities that the
/// predicted orbit is expected to satisfy. `satisfied` records whether the
/// orbit's half-dimension equals `n^2 - n + (r-1)/2`; the balance fields
/// restate that equality against the radical of the `GL((r-1)/2)` parabolic.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub n: u64,
    pub r: u64,
    pub orbit: Partition,
    #[serde(with = "crate::rat::serde_rat")]
    pub gk_dim: Rat,
    #[serde(with = "crate::rat::serde_rat")]
    pub target_dim: Rat,
    pub satisfied: bool,
    #[serde(with = "crate::rat::serde_rat")]
    pub balance_lhs: Rat,
    #[serde(with = "crate::rat::serde_rat")]
    pub balance_rhs: Rat,
}

/// Computes the predicted orbit and checks its dimension against the
/// Whittaker-support count. Requires odd `r < 2n`.
pub fn dimension_equation_check(n: u64, r: u64) -> Result<OrbitReport> {
    let orbit = conjectured_orbit(n, r)?;
    let gk = gk_dimension(&orbit, n)?;
    let target = rat((n * n - n) as i64) + ratio((r - 1) as i64, 2);
    let u = rat((2 * n - r + 1) as i64);
    let k = (r - 1) / 2;
    let balance_lhs = &u / rat(2) + gk.clone();
    let balance_rhs = rat(unipotent_radical_dim(n, k) as i64) + &u * &u / rat(4);
    let satisfied = gk == target;
    // The two identities are affine rearrangements of each other.
    debug_assert_eq!(satisfied, balance_lhs == balance_rhs);
    Ok(OrbitReport {
        n,
        r,
        orbit,
        gk_dim: gk,
        target_dim: target,
        satisfied,
        balance_lhs,
        balance_rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn symplectic_predicate() {
        assert!(p(&[3, 3]).is_symplectic());
        assert!(p(&[6, 2]).is_symplectic());
        assert!(p(&[2, 2, 1, 1]).is_symplectic());
        assert!(p(&[]).is_symplectic());
        assert!(!p(&[3, 2, 1]).is_symplectic());
        assert!(!p(&[5, 3]).is_symplectic());
        assert!(!p(&[1, 1, 1]).is_symplectic());
    }

    #[test]
    fn transpose_basics() {
        assert_eq!(p(&[3, 3]).transpose(), p(&[2, 2, 2]));
        assert_eq!(p(&[4, 2]).transpose(), p(&[2, 2, 1, 1]));
        assert_eq!(p(&[]).transpose(), p(&[]));
    }

    #[test]
    fn parse_and_display() {
        let x: Partition = "6,2".parse().unwrap();
        assert_eq!(x, p(&[6, 2]));
        assert_eq!(x.to_string(), "6,2");
        assert!("2,6".parse::<Partition>().is_err());
        assert!("6,x".parse::<Partition>().is_err());
        // trailing zeros are canonicalized away
        assert_eq!("3,1,0".parse::<Partition>().unwrap(), p(&[3, 1]));
    }

    #[test]
    fn dominance_cases() {
        assert_eq!(
            dominance_compare(&p(&[4, 4]), &p(&[6, 2])).unwrap(),
            Dominance::Less
        );
        assert_eq!(
            dominance_compare(&p(&[6, 2]), &p(&[4, 4])).unwrap(),
            Dominance::Greater
        );
        assert_eq!(
            dominance_compare(&p(&[3, 3]), &p(&[3, 3])).unwrap(),
            Dominance::Equal
        );
        assert_eq!(
            dominance_compare(&p(&[4, 1, 1]), &p(&[3, 3])).unwrap(),
            Dominance::Incomparable
        );
        assert!(dominance_compare(&p(&[3, 3]), &p(&[4, 4])).is_err());
    }

    #[test]
    fn collapse_table() {
        let cases: &[(&[u64], &[u64])] = &[
            (&[3, 2, 1], &[2, 2, 2]),
            (&[7, 1], &[6, 2]),
            (&[5, 3], &[4, 4]),
            (&[3, 1], &[2, 2]),
            (&[5, 4, 3], &[4, 4, 4]),
            (&[5, 4, 4, 1], &[4, 4, 4, 2]),
            (&[3, 3, 3, 1], &[3, 3, 2, 2]),
            (&[9, 1, 1, 1], &[8, 2, 1, 1]),
            (&[6, 5, 3], &[6, 4, 4]),
            (&[6, 3, 1], &[6, 2, 2]),
            (&[4, 3, 1], &[4, 2, 2]),
            (&[9, 3], &[8, 4]),
            (&[7, 3], &[6, 4]),
            (&[9, 1], &[8, 2]),
            (&[11, 1], &[10, 2]),
            (&[7, 5], &[6, 6]),
        ];
        for (input, expect) in cases {
            assert_eq!(sp_collapse(&p(input)).unwrap(), p(expect), "input {input:?}");
        }
        // already-symplectic partitions are fixed
        assert_eq!(sp_collapse(&p(&[3, 3])).unwrap(), p(&[3, 3]));
        assert!(sp_collapse(&p(&[2, 1])).is_err());
    }

    #[test]
    fn predicted_orbits() {
        assert_eq!(conjectured_orbit(3, 3).unwrap(), p(&[3, 3]));
        assert_eq!(conjectured_orbit(4, 7).unwrap(), p(&[6, 2]));
        assert_eq!(conjectured_orbit(2, 3).unwrap(), p(&[2, 2]));
        assert_eq!(conjectured_orbit(4, 5).unwrap(), p(&[4, 4]));
        assert!(conjectured_orbit(3, 6).is_err());
        assert!(conjectured_orbit(3, 7).is_err());
        assert!(conjectured_orbit(3, 9).is_err());
    }

    #[test]
    fn gk_values() {
        let cases: &[(&[u64], u64, i64)] = &[
            (&[3, 3], 3, 7),
            (&[6], 3, 9),
            (&[4, 2], 3, 8),
            (&[6, 2], 4, 15),
            (&[5, 5], 5, 22),
            (&[3, 3, 2], 4, 12),
            (&[2, 2], 2, 3),
            (&[4, 4], 4, 14),
            (&[6, 4], 5, 23),
            (&[8, 2], 5, 24),
            (&[6, 6], 6, 33),
            (&[8, 4], 6, 34),
            (&[10, 2], 6, 35),
            (&[3, 3, 2, 2], 5, 18),
            (&[5, 5, 2], 6, 31),
            (&[3, 3, 3, 3], 6, 26),
            (&[2, 1, 1, 1, 1], 3, 3),
        ];
        for (parts, n, expect) in cases {
            assert_eq!(
                gk_dimension(&p(parts), *n).unwrap(),
                rat(*expect),
                "lambda {parts:?} n {n}"
            );
        }
        assert!(gk_dimension(&p(&[5, 3]), 4).is_err());
        assert!(gk_dimension(&p(&[3, 3]), 4).is_err());
    }

    #[test]
    fn radical_dims() {
        assert_eq!(unipotent_radical_dim(3, 1), 5);
        assert_eq!(unipotent_radical_dim(4, 3), 15);
        assert_eq!(unipotent_radical_dim(4, 4), 16);
    }

    #[test]
    fn dimension_reports() {
        let ok = dimension_equation_check(3, 3).unwrap();
        assert!(ok.satisfied);
        assert_eq!(ok.gk_dim, rat(7));
        assert_eq!(ok.balance_lhs, rat(9));
        assert_eq!(ok.balance_rhs, rat(9));

        let ok = dimension_equation_check(4, 5).unwrap();
        assert!(ok.satisfied);
        assert_eq!(ok.orbit, p(&[4, 4]));
        assert_eq!(ok.balance_lhs, rat(16));
        assert_eq!(ok.balance_rhs, rat(16));

        // below the lower threshold the predicted orbit comes up short
        let short = dimension_equation_check(4, 3).unwrap();
        assert!(!short.satisfied);
        assert_eq!(short.gk_dim, rat(12));
        assert_eq!(short.target_dim, rat(13));
        assert_eq!(short.balance_lhs, rat(15));
        assert_eq!(short.balance_rhs, rat(16));
    }

    #[test]
    fn threshold_scan() {
        // the dimension equation holds exactly in the window n <= r < 2n
        for n in 1..=8u64 {
            for r in (1..2 * n).step_by(2) {
                let rep = dimension_equation_check(n, r).unwrap();
                assert_eq!(rep.satisfied, r >= n, "n={n} r={r}");
            }
        }
    }

    proptest! {
        #[test]
        fn collapse_is_maximal_dominated_symplectic(raw in proptest::collection::vec(1u64..=9, 1..7)) {
            let mut parts = raw;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            if parts.iter().sum::<u64>() % 2 == 1 {
                parts[0] += 1;
            }
            let lam = Partition::new(parts).unwrap();
            let c = sp_collapse(&lam).unwrap();
            prop_assert!(c.is_symplectic());
            prop_assert_eq!(c.total(), lam.total());
            let ord = dominance_compare(&c, &lam).unwrap();
            prop_assert!(ord == Dominance::Less || ord == Dominance::Equal);
            // idempotent
            prop_assert_eq!(sp_collapse(&c).unwrap(), c);
        }
    }
}
