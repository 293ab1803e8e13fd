use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};

/// Collected orthogonal strings `h_j` for one hidden-string search.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gf2System {
    pub rows: Vec<BitString>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Gf2Solution {
    /// The unique nonzero string orthogonal to every row.
    Unique(BitString),
    Insufficient {
        rank: usize,
    },
}

/// Reduced row echelon basis: `(pivot mask, row)` with each pivot bit
/// appearing in exactly one row.
fn echelon(rows: &[BitString], n: usize) -> Result<Vec<(u64, u64)>> {
    let mut basis: Vec<(u64, u64)> = Vec::new();
    for r in rows {
        if r.width() != n {
            return Err(Error::InvalidBitString(format!(
                "row `{r}` is not {n} bits wide"
            )));
        }
        let mut v = r.value();
        for &(p, b) in &basis {
            if v & p != 0 {
                v ^= b;
            }
        }
        if v == 0 {
            continue;
        }
        let pivot = 1u64 << (63 - v.leading_zeros());
        for entry in basis.iter_mut() {
            if entry.1 & pivot != 0 {
                entry.1 ^= v;
            }
        }
        basis.push((pivot, v));
    }
    Ok(basis)
}

pub fn gf2_rank(rows: &[BitString], n: usize) -> Result<usize> {
    Ok(echelon(rows, n)?.len())
}

/// Gaussian elimination over GF(2). With rank `n − 1` the null space has a
/// single nonzero vector, which is returned; lower rank is `Insufficient`;
/// rank `n` leaves only the zero vector and is an error.
pub fn gf2_solve(rows: &[BitString], n: usize) -> Result<Gf2Solution> {
    let basis = echelon(rows, n)?;
    let rank = basis.len();
    if rank == n {
        return Err(Error::ContradictorySystem(n));
    }
    if rank + 1 < n {
        return Ok(Gf2Solution::Insufficient { rank });
    }
    let pivots: u64 = basis.iter().map(|(p, _)| p).fold(0, |a, p| a | p);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let free = all & !pivots;
    debug_assert_eq!(free.count_ones(), 1);
    // each row reads x_pivot + x_free·[row has free bit] = 0
    let k = basis
        .iter()
        .filter(|(_, b)| b & free != 0)
        .fold(free, |acc, (p, _)| acc | p);
    Ok(Gf2Solution::Unique(BitString::new(k, n)?))
}

impl Gf2System {
    pub fn solve(&self, n: usize) -> Result<Gf2Solution> {
        gf2_solve(&self.rows, n)
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn bits(s: &[&str]) -> Vec<BitString> {
        s.iter().map(|x| x.parse().unwrap()).collect()
    }

    /// Brute-force: all nonzero strings orthogonal to every row.
    fn orthogonal_nonzero(rows: &[BitString], n: usize) -> Vec<BitString> {
        BitString::all(n)
            .filter(|k| !k.is_zero() && rows.iter().all(|r| !r.dot(k)))
            .collect()
    }

    #[test]
    fn two_bit_example() {
        assert_eq!(
            gf2_solve(&bits(&["01"]), 2).unwrap(),
            Gf2Solution::Unique("10".parse().unwrap())
        );
        assert_eq!(
            gf2_solve(&bits(&["01", "01", "00"]), 2).unwrap(),
            Gf2Solution::Unique("10".parse().unwrap())
        );
    }

    #[test]
    fn zero_row_is_insufficient() {
        assert_eq!(
            gf2_solve(&bits(&["00"]), 2).unwrap(),
            Gf2Solution::Insufficient { rank: 0 }
        );
        assert_eq!(
            gf2_solve(&[], 3).unwrap(),
            Gf2Solution::Insufficient { rank: 0 }
        );
    }

    #[test]
    fn three_bit_example_matches_brute_force() {
        let rows = bits(&["001", "110"]);
        let brute = orthogonal_nonzero(&rows, 3);
        assert_eq!(brute, bits(&["110"]));
        assert_eq!(gf2_solve(&rows, 3).unwrap(), Gf2Solution::Unique(brute[0]));
    }

    #[test]
    fn full_rank_is_contradictory() {
        assert_eq!(
            gf2_solve(&bits(&["01", "10"]), 2),
            Err(Error::ContradictorySystem(2))
        );
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(n in 2usize..8, raw in proptest::collection::vec(any::<u64>(), 0..10)) {
            let rows: Vec<BitString> = raw.iter().map(|v| BitString::new(v & ((1 << n) - 1), n).unwrap()).collect();
            let brute = orthogonal_nonzero(&rows, n);
            match gf2_solve(&rows, n) {
                Ok(Gf2Solution::Unique(k)) => prop_assert_eq!(brute, vec![k]),
                Ok(Gf2Solution::Insufficient { rank }) => {
                    prop_assert!(brute.len() > 1);
                    prop_assert_eq!(brute.len(), (1usize << (n - rank)) - 1);
                }
                Err(Error::ContradictorySystem(_)) => prop_assert!(brute.is_empty()),
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }
    }
}
