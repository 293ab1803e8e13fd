//! Classical searches, with and without bits of the answer known in advance.

use std::collections::HashMap;

use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;

use crate::algorithms::{
    gf2_solve, DeutschFunction, Gf2Solution, SimonInstance, Verdict, MAX_SIMON_CLASSICAL_N,
};
use crate::bits::BitString;
use crate::error::{Error, Result};

/// Wraps a black box and counts evaluations.
pub struct CountingOracle<F> {
    f: F,
    queries: u64,
}

impl<F: FnMut(u64) -> u64> CountingOracle<F> {
    pub fn new(f: F) -> Self {
        Self { f, queries: 0 }
    }

    pub fn query(&mut self, x: u64) -> u64 {
        self.queries += 1;
        (self.f)(x)
    }

    pub fn queries(&self) -> u64 {
        self.queries
    }
}

/// Bits of the target known before the search starts (1-based positions).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdvanceKnowledge {
    pub known_bits: Vec<(usize, bool)>,
    pub total_bits: usize,
}

impl AdvanceKnowledge {
    pub fn none(total_bits: usize) -> Self {
        Self {
            known_bits: Vec::new(),
            total_bits,
        }
    }

    /// The listed positions of `target`, with their true values.
    pub fn of_positions(target: BitString, positions: &[usize]) -> Self {
        Self {
            known_bits: positions.iter().map(|&p| (p, target.bit(p))).collect(),
            total_bits: target.width(),
        }
    }

    /// `count` distinct positions of `target` chosen uniformly at random.
    pub fn random<R: Rng + ?Sized>(target: BitString, count: usize, rng: &mut R) -> Self {
        let mut positions: Vec<usize> = sample(rng, target.width(), count)
            .into_iter()
            .map(|i| i + 1)
            .collect();
        positions.sort_unstable();
        Self::of_positions(target, &positions)
    }

    pub fn fraction(&self) -> f64 {
        self.known_bits.len() as f64 / self.total_bits as f64
    }

    fn check(&self, target: BitString) -> Result<()> {
        if self.total_bits != target.width() {
            return Err(Error::ContradictoryAdvance(format!(
                "knowledge covers {} bits, target has {}",
                self.total_bits,
                target.width()
            )));
        }
        for (i, &(pos, value)) in self.known_bits.iter().enumerate() {
            if pos == 0 || pos > target.width() {
                return Err(Error::ContradictoryAdvance(format!(
                    "bit position {pos} out of range"
                )));
            }
            if self.known_bits[..i].iter().any(|(p, _)| *p == pos) {
                return Err(Error::ContradictoryAdvance(format!(
                    "bit {pos} listed twice"
                )));
            }
            if target.bit(pos) != value {
                return Err(Error::ContradictoryAdvance(format!(
                    "bit {pos} is not {}",
                    value as u8
                )));
            }
        }
        Ok(())
    }
}

/// Opens the drawers consistent with `adv` in uniformly random order until
/// `δ(k, x) = 1`, and returns the number of drawers opened.
pub fn classical_search<R: Rng + ?Sized>(
    n: usize,
    k: BitString,
    adv: &AdvanceKnowledge,
    rng: &mut R,
) -> Result<u64> {
    if n == 0 || n > 20 || k.width() != n {
        return Err(Error::InvalidSize(format!(
            "classical search over n = {n} with k = `{k}`"
        )));
    }
    adv.check(k)?;
    let mut fixed = 0u64;
    let mut known_mask = 0u64;
    for &(pos, value) in &adv.known_bits {
        let bit = 1u64 << (n - pos);
        known_mask |= bit;
        if value {
            fixed |= bit;
        }
    }
    let free: Vec<u64> = (0..n)
        .map(|i| 1u64 << i)
        .filter(|b| known_mask & b == 0)
        .collect();
    let mut candidates: Vec<u64> = (0..1u64 << free.len())
        .map(|c| {
            free.iter()
                .enumerate()
                .filter(|(i, _)| c >> i & 1 == 1)
                .fold(fixed, |x, (_, b)| x | b)
        })
        .collect();

    let target = k.value();
    let mut oracle = CountingOracle::new(|x| (x == target) as u64);
    let len = candidates.len();
    for i in 0..len {
        let j = rng.gen_range(i..len);
        candidates.swap(i, j);
        if oracle.query(candidates[i]) == 1 {
            return Ok(oracle.queries());
        }
    }
    unreachable!("the target is among the consistent candidates")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KnownBit {
    /// `k₁ = f(0)` is known.
    First,
    /// `k₂ = f(1)` is known.
    Second,
}

/// Knowing one of `f(0)`, `f(1)`, evaluates the other once.
pub fn deutsch_reference(f: &DeutschFunction, known: KnownBit) -> (Verdict, u64) {
    let mut oracle = CountingOracle::new(|x| f.eval(x == 1) as u64);
    let (known_value, other) = match known {
        KnownBit::First => (f.k().bit(1), oracle.query(1) == 1),
        KnownBit::Second => (f.k().bit(2), oracle.query(0) == 1),
    };
    let verdict = if known_value == other {
        Verdict::Constant
    } else {
        Verdict::Balanced
    };
    (verdict, oracle.queries())
}

/// GF(2) elimination on samples handed over in advance; no oracle queries.
pub fn simon_reference(samples: &[BitString], n: usize) -> Result<Gf2Solution> {
    gf2_solve(samples, n)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalSimonStats {
    pub n: usize,
    pub trials: u64,
    pub mean_queries: f64,
    pub max_queries: u64,
    /// Fewest queries after which at least `target_prob` of the trials had
    /// found the hidden string.
    pub queries_for_target: u64,
    pub target_prob: f64,
    /// Every collision yielded the instance's hidden string.
    pub all_correct: bool,
}

/// Queries distinct random inputs until two share a value, then returns
/// `(queries, x ⊕ y)`.
pub fn classical_simon_collision<R: Rng + ?Sized>(
    inst: &SimonInstance,
    rng: &mut R,
) -> (u64, BitString) {
    let n = inst.n();
    let mut oracle = CountingOracle::new(|x| inst.eval(x));
    let mut seen: HashMap<u64, u64> = HashMap::new();
    let mut asked = std::collections::HashSet::new();
    loop {
        let x = rng.gen_range(0..1u64 << n);
        if !asked.insert(x) {
            continue;
        }
        let fx = oracle.query(x);
        if let Some(&y) = seen.get(&fx) {
            return (
                oracle.queries(),
                BitString::new(x ^ y, n).expect("fits in n bits"),
            );
        }
        seen.insert(fx, x);
    }
}

/// Monte Carlo over random instances of the classical collision search.
pub fn classical_simon_queries(
    n: usize,
    target_prob: f64,
    trials: u64,
    seed: u64,
) -> Result<ClassicalSimonStats> {
    if !(2..=MAX_SIMON_CLASSICAL_N).contains(&n) {
        return Err(Error::InvalidSize(format!(
            "classical Simon n = {n} outside 2..={MAX_SIMON_CLASSICAL_N}"
        )));
    }
    if trials == 0 || !(0.0..=1.0).contains(&target_prob) {
        return Err(Error::InvalidSize(format!(
            "trials = {trials}, target_prob = {target_prob}"
        )));
    }
    let runs = crate::trials::run_trials(seed, trials, |_, rng| {
        let inst = SimonInstance::random_instance(n, rng).expect("n validated");
        let (q, k) = classical_simon_collision(&inst, rng);
        (q, k == inst.k())
    });
    let mut counts: Vec<u64> = runs.iter().map(|(q, _)| *q).collect();
    counts.sort_unstable();
    let needed = ((target_prob * trials as f64).ceil() as usize).clamp(1, counts.len());
    Ok(ClassicalSimonStats {
        n,
        trials,
        mean_queries: counts.iter().sum::<u64>() as f64 / trials as f64,
        max_queries: *counts.last().unwrap(),
        queries_for_target: counts[needed - 1],
        target_prob,
        all_correct: runs.iter().all(|(_, ok)| *ok),
    })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn b(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn all_bits_known_is_one_query() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let k = b("1011");
        let adv = AdvanceKnowledge::of_positions(k, &[1, 2, 3, 4]);
        assert_eq!(classical_search(4, k, &adv, &mut rng).unwrap(), 1);
        assert_eq!(adv.fraction(), 1.0);
    }

    #[test]
    fn two_known_bits_worst_case_four() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let k = b("0110");
        let adv = AdvanceKnowledge::of_positions(k, &[1, 3]);
        let qs: Vec<u64> = (0..400)
            .map(|_| classical_search(4, k, &adv, &mut rng).unwrap())
            .collect();
        assert!(qs.iter().all(|q| (1..=4).contains(q)));
        assert_eq!(*qs.iter().max().unwrap(), 4);
    }

    #[test]
    fn contradictory_advance() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let k = b("0110");
        let wrong = AdvanceKnowledge {
            known_bits: vec![(1, true)],
            total_bits: 4,
        };
        assert!(matches!(
            classical_search(4, k, &wrong, &mut rng),
            Err(Error::ContradictoryAdvance(_))
        ));
        let dup = AdvanceKnowledge {
            known_bits: vec![(2, true), (2, true)],
            total_bits: 4,
        };
        assert!(matches!(
            classical_search(4, k, &dup, &mut rng),
            Err(Error::ContradictoryAdvance(_))
        ));
        let oob = AdvanceKnowledge {
            known_bits: vec![(5, true)],
            total_bits: 4,
        };
        assert!(matches!(
            classical_search(4, k, &oob, &mut rng),
            Err(Error::ContradictoryAdvance(_))
        ));
    }

    #[test]
    fn deutsch_reference_cases() {
        let f01 = DeutschFunction::new(b("01")).unwrap();
        assert_eq!(
            deutsch_reference(&f01, KnownBit::First),
            (Verdict::Balanced, 1)
        );
        let f00 = DeutschFunction::new(b("00")).unwrap();
        assert_eq!(
            deutsch_reference(&f00, KnownBit::Second),
            (Verdict::Constant, 1)
        );
    }

    #[test]
    fn simon_reference_cases() {
        assert_eq!(
            simon_reference(&[b("01"), b("01"), b("00")], 2).unwrap(),
            Gf2Solution::Unique(b("10"))
        );
        assert!(matches!(
            simon_reference(&[b("011"), b("011")], 3).unwrap(),
            Gf2Solution::Insufficient { rank: 1 }
        ));
    }

    #[test]
    fn collision_search_pigeonhole_at_n2() {
        let stats = classical_simon_queries(2, 1.0, 2000, 3).unwrap();
        assert!(stats.max_queries <= 3);
        assert!(stats.all_correct);
    }
}
