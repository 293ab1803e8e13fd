use crate::error::{Error, Result};

/// Advance knowledge of a search over `N` items: `½·log₂ N` bits.
pub fn info_gain(n_items: u64) -> Result<f64> {
    if n_items == 0 || !n_items.is_power_of_two() {
        return Err(Error::InvalidN(n_items));
    }
    Ok(n_items.trailing_zeros() as f64 / 2.0)
}

/// Probability that `m` uniform draws from an `(n−1)`-dimensional GF(2)
/// space span it, by dynamic programming over the rank: from rank `r` a
/// draw raises the rank with probability `1 − 2^{r−(n−1)}`.
pub fn simon_success_prob_exact(n: usize, m: usize) -> f64 {
    assert!(n >= 2, "hidden strings need n >= 2");
    let dim = n - 1;
    let mut p = vec![0.0f64; dim + 1];
    p[0] = 1.0;
    for _ in 0..m {
        let mut next = vec![0.0f64; dim + 1];
        for (r, &pr) in p.iter().enumerate() {
            if pr == 0.0 {
                continue;
            }
            if r == dim {
                next[r] += pr;
                continue;
            }
            let stay = (0.5f64).powi((dim - r) as i32);
            next[r] += pr * stay;
            next[r + 1] += pr * (1.0 - stay);
        }
        p = next;
    }
    p[dim]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn info_gain_values() {
        assert_eq!(info_gain(4).unwrap(), 1.0);
        assert_eq!(info_gain(2).unwrap(), 0.5);
        assert_eq!(info_gain(1024).unwrap(), 5.0);
        assert_eq!(info_gain(1).unwrap(), 0.0);
        assert_eq!(info_gain(6), Err(Error::InvalidN(6)));
        assert_eq!(info_gain(0), Err(Error::InvalidN(0)));
    }

    #[test]
    fn small_cases() {
        assert_eq!(simon_success_prob_exact(2, 1), 0.5);
        // the only failure is drawing 0 every time
        assert!((simon_success_prob_exact(2, 12) - (1.0 - 0.5f64.powi(12))).abs() < 1e-15);
        assert_eq!(simon_success_prob_exact(3, 1), 0.0);
    }

    #[test]
    fn lower_bounds_from_the_textbook_figures() {
        assert!(simon_success_prob_exact(4, 24) >= 8.0 / 9.0);
        assert!(simon_success_prob_exact(4, 12) >= 2.0 / 3.0);
    }
}
