use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::qsim::circuit::FunctionTable;
use crate::qsim::layout::{Register, RegisterLayout};

/// Normalization tolerance for states and probability sums.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Dense vector of complex amplitudes over the computational basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    layout: RegisterLayout,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Computational basis state. Every register must be assigned.
    pub fn basis(layout: &RegisterLayout, values: &[(&str, BitString)]) -> Result<Self> {
        for reg in layout.registers() {
            if !values.iter().any(|(name, _)| *name == reg.name) {
                return Err(Error::InvalidValue {
                    register: reg.name.clone(),
                    reason: "no value assigned".into(),
                });
            }
        }
        let index = layout.index_of(values)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); layout.dim()];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            layout: layout.clone(),
            amplitudes,
        })
    }

    /// Convenience form of [`StateVector::basis`] taking binary strings.
    pub fn basis_str(layout: &RegisterLayout, values: &[(&str, &str)]) -> Result<Self> {
        let parsed = values
            .iter()
            .map(|(name, s)| {
                BitString::parse_bits(s)
                    .map(|b| (*name, b))
                    .map_err(|_| Error::InvalidValue {
                        register: name.to_string(),
                        reason: format!("`{s}` is not a bit string"),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::basis(layout, &parsed)
    }

    pub fn from_amplitudes(layout: &RegisterLayout, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != layout.dim() {
            return Err(Error::InvalidSize(format!(
                "{} amplitudes for a {}-dimensional layout",
                amplitudes.len(),
                layout.dim()
            )));
        }
        let state = Self {
            layout: layout.clone(),
            amplitudes,
        };
        let n = state.norm_sqr();
        if (n - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(n));
        }
        Ok(state)
    }

    /// Tensor product of per-register states, listed as amplitude vectors
    /// over each register's values. Unlisted registers start in `0…0`.
    pub fn product(layout: &RegisterLayout, factors: &[(&str, Vec<Complex64>)]) -> Result<Self> {
        let mut per_register: Vec<Vec<Complex64>> = layout
            .registers()
            .iter()
            .map(|r| {
                let mut v = vec![Complex64::new(0.0, 0.0); 1 << r.width];
                v[0] = Complex64::new(1.0, 0.0);
                v
            })
            .collect();
        for (name, amps) in factors {
            let pos = layout
                .registers()
                .iter()
                .position(|r| r.name == *name)
                .ok_or_else(|| Error::UnknownRegister(name.to_string()))?;
            if amps.len() != per_register[pos].len() {
                return Err(Error::InvalidValue {
                    register: name.to_string(),
                    reason: format!(
                        "{} amplitudes for width {}",
                        amps.len(),
                        layout.registers()[pos].width
                    ),
                });
            }
            per_register[pos] = amps.clone();
        }
        let regs = layout.registers();
        let amplitudes = (0..layout.dim())
            .map(|i| {
                regs.iter()
                    .zip(&per_register)
                    .map(|(r, amps)| amps[r.extract(i) as usize])
                    .product()
            })
            .collect();
        Self::from_amplitudes(layout, amplitudes)
    }

    /// Even superposition over the listed register values.
    pub fn uniform_over(values: &[u64], width: usize) -> Result<Vec<Complex64>> {
        if values.is_empty() {
            return Err(Error::InvalidSize("empty superposition".into()));
        }
        let a = 1.0 / (values.len() as f64).sqrt();
        let mut v = vec![Complex64::new(0.0, 0.0); 1 << width];
        for &x in values {
            let slot = v
                .get_mut(x as usize)
                .ok_or_else(|| Error::InvalidSize(format!("value {x} exceeds width {width}")))?;
            *slot += a;
        }
        Ok(v)
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, values: &[(&str, BitString)]) -> Result<Complex64> {
        Ok(self.amplitudes[self.layout.index_of(values)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Runs `f` on every column of the register: the amplitudes sharing
    /// the values of all other registers, ordered by register value.
    fn for_each_column(&mut self, reg: &Register, mut f: impl FnMut(&mut [Complex64])) {
        let stride = 1usize << reg.shift;
        let block = stride << reg.width;
        let mut column = vec![Complex64::new(0.0, 0.0); 1 << reg.width];
        for start in (0..self.amplitudes.len()).step_by(block) {
            for low in 0..stride {
                for (v, c) in column.iter_mut().enumerate() {
                    *c = self.amplitudes[start + v * stride + low];
                }
                f(&mut column);
                for (v, c) in column.iter().enumerate() {
                    self.amplitudes[start + v * stride + low] = *c;
                }
            }
        }
    }

    /// Applies `H^{⊗w}` to every qubit of the register.
    pub fn apply_hadamard_all(&mut self, register: &str) -> Result<()> {
        let reg = self.layout.register(register)?.clone();
        let scale = (0.5f64).powf(reg.width as f64 / 2.0);
        self.for_each_column(&reg, |col| {
            walsh_hadamard(col);
            col.iter_mut().for_each(|a| *a *= scale);
        });
        Ok(())
    }

    /// Inversion about the mean, `2|u⟩⟨u| − I`, on the register.
    pub fn apply_diffusion(&mut self, register: &str) -> Result<()> {
        let reg = self.layout.register(register)?.clone();
        self.for_each_column(&reg, |col| {
            let mean: Complex64 = col.iter().sum::<Complex64>() / col.len() as f64;
            col.iter_mut().for_each(|a| *a = 2.0 * mean - *a);
        });
        Ok(())
    }

    /// `|in⟩|o⟩ → |in⟩|o ⊕ table(in)⟩`, where `in` is the concatenation of
    /// the input registers in the listed order.
    pub fn apply_function_oracle(
        &mut self,
        inputs: &[&str],
        output: &str,
        table: &FunctionTable,
    ) -> Result<()> {
        let in_regs = inputs
            .iter()
            .map(|name| self.layout.register(name).cloned())
            .collect::<Result<Vec<_>>>()?;
        let out_reg = self.layout.register(output)?.clone();
        if in_regs.iter().any(|r| r.name == out_reg.name) {
            return Err(Error::IncompleteOracle(format!(
                "output register `{output}` is also an input"
            )));
        }
        let in_width: usize = in_regs.iter().map(|r| r.width).sum();
        table.check_shape(in_width, out_reg.width)?;

        let old = std::mem::take(&mut self.amplitudes);
        let mut new = vec![Complex64::new(0.0, 0.0); old.len()];
        for (i, a) in old.iter().enumerate() {
            let joint = in_regs
                .iter()
                .fold(0u64, |acc, r| (acc << r.width) | r.extract(i));
            let f = table.values()[joint as usize] as usize;
            new[i ^ (f << out_reg.shift)] = *a;
        }
        self.amplitudes = new;
        Ok(())
    }

    /// Multiplies the branch with register value `v` by `e^{i·phases[v]}`.
    pub fn apply_register_phases(&mut self, register: &str, phases: &[f64]) -> Result<()> {
        let reg = self.layout.register(register)?.clone();
        if phases.len() != 1 << reg.width {
            return Err(Error::InvalidValue {
                register: register.to_string(),
                reason: format!("{} phases for width {}", phases.len(), reg.width),
            });
        }
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            *a *= Complex64::from_polar(1.0, phases[reg.extract(i) as usize]);
        }
        Ok(())
    }

    /// Exact Born distribution over the joint values of `registers`.
    pub fn distribution(&self, registers: &[&str]) -> Result<Distribution> {
        let regs = registers
            .iter()
            .map(|name| self.layout.register(name).cloned())
            .collect::<Result<Vec<_>>>()?;
        let mut probs: BTreeMap<Vec<BitString>, f64> = BTreeMap::new();
        for (i, a) in self.amplitudes.iter().enumerate() {
            let p = a.norm_sqr();
            if p == 0.0 {
                continue;
            }
            let key = regs
                .iter()
                .map(|r| BitString::new(r.extract(i), r.width))
                .collect::<Result<Vec<_>>>()?;
            *probs.entry(key).or_insert(0.0) += p;
        }
        Ok(Distribution {
            registers: registers.iter().map(|s| s.to_string()).collect(),
            probs,
        })
    }

    /// Projects onto `register = value` and renormalizes. `None` when the
    /// outcome has probability zero.
    pub fn project(&self, register: &str, value: BitString) -> Result<Option<(f64, StateVector)>> {
        let reg = self.layout.register(register)?.clone();
        if value.width() != reg.width {
            return Err(Error::InvalidValue {
                register: register.to_string(),
                reason: format!("expected {} bits, got `{value}`", reg.width),
            });
        }
        let v = value.value();
        Ok(self.project_where(|i| reg.extract(i) == v))
    }

    /// Projects onto bit `bit` (1-based) of the register equal to `value`.
    pub fn project_bit(
        &self,
        register: &str,
        bit: usize,
        value: bool,
    ) -> Result<Option<(f64, StateVector)>> {
        let mask = self.checked_bit_mask(register, bit)?;
        Ok(self.project_where(|i| (i & mask != 0) == value))
    }

    fn project_where(&self, keep: impl Fn(usize) -> bool) -> Option<(f64, StateVector)> {
        let p: f64 = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| keep(*i))
            .map(|(_, a)| a.norm_sqr())
            .sum();
        if p <= 0.0 {
            return None;
        }
        let scale = 1.0 / p.sqrt();
        let amplitudes = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if keep(i) {
                    a * scale
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Some((
            p,
            StateVector {
                layout: self.layout.clone(),
                amplitudes,
            },
        ))
    }

    fn checked_bit_mask(&self, register: &str, bit: usize) -> Result<usize> {
        let reg = self.layout.register(register)?;
        if bit == 0 || bit > reg.width {
            return Err(Error::InvalidBit {
                register: register.to_string(),
                bit,
                width: reg.width,
            });
        }
        Ok(reg.bit_mask(bit))
    }

    /// Born-rule measurement of a whole register.
    pub fn measure_register<R: Rng + ?Sized>(
        &self,
        register: &str,
        rng: &mut R,
    ) -> Result<MeasurementOutcome> {
        let dist = self.distribution(&[register])?;
        let key = dist.sample(rng);
        let value = key[0];
        let (probability, collapsed) = self
            .project(register, value)?
            .expect("sampled outcome has nonzero probability");
        Ok(MeasurementOutcome {
            register: register.to_string(),
            bit: None,
            value,
            probability,
            collapsed,
        })
    }

    /// Born-rule measurement of bit `bit` (1-based, 1 = most significant).
    pub fn measure_bit<R: Rng + ?Sized>(
        &self,
        register: &str,
        bit: usize,
        rng: &mut R,
    ) -> Result<MeasurementOutcome> {
        let (p0, _) = self.populations(register, bit)?;
        let outcome = rng.gen::<f64>() >= p0;
        let (probability, collapsed) = match self.project_bit(register, bit, outcome)? {
            Some(x) => x,
            // rounding left a zero-probability branch selected
            None => self
                .project_bit(register, bit, !outcome)?
                .expect("one branch is populated"),
        };
        let value = BitString::new(collapsed_bit(&collapsed, register, bit) as u64, 1)?;
        Ok(MeasurementOutcome {
            register: register.to_string(),
            bit: Some(bit),
            value,
            probability,
            collapsed,
        })
    }

    /// Diagonal of the single-qubit reduced density operator: `(p₀, p₁)`.
    pub fn populations(&self, register: &str, bit: usize) -> Result<(f64, f64)> {
        let mask = self.checked_bit_mask(register, bit)?;
        let (mut p0, mut p1) = (0.0, 0.0);
        for (i, a) in self.amplitudes.iter().enumerate() {
            if i & mask == 0 {
                p0 += a.norm_sqr();
            } else {
                p1 += a.norm_sqr();
            }
        }
        Ok((p0, p1))
    }

    /// Reduced density operator of one register (partial trace over the rest).
    pub fn reduced_density(&self, register: &str) -> Result<DensityMatrix> {
        let reg = self.layout.register(register)?.clone();
        let dim = 1usize << reg.width;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        let mask = reg.mask();
        for (i, a) in self.amplitudes.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            let row = reg.extract(i) as usize;
            let base = i & !mask;
            for col in 0..dim {
                let b = self.amplitudes[base | (col << reg.shift)];
                data[row * dim + col] += a * b.conj();
            }
        }
        Ok(DensityMatrix { dim, data })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.layout, other.layout, "layout mismatch");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Largest amplitude difference.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        assert_eq!(self.layout, other.layout, "layout mismatch");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest amplitude difference after aligning `other`'s global phase
    /// to `self`.
    pub fn max_abs_diff_up_to_phase(&self, other: &StateVector) -> f64 {
        let overlap = other.inner(self);
        let phase = if overlap.norm() > 0.0 {
            overlap / overlap.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        assert_eq!(self.layout, other.layout, "layout mismatch");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b * phase).norm())
            .fold(0.0, f64::max)
    }
}

fn collapsed_bit(state: &StateVector, register: &str, bit: usize) -> bool {
    let mask = state
        .checked_bit_mask(register, bit)
        .expect("validated by caller");
    state
        .amplitudes
        .iter()
        .enumerate()
        .find(|(_, a)| a.norm_sqr() > 0.0)
        .map(|(i, _)| i & mask != 0)
        .expect("collapsed state is nonzero")
}

/// In-place unnormalized Walsh–Hadamard transform; `col.len()` is a power of two.
fn walsh_hadamard(col: &mut [Complex64]) {
    let mut h = 1;
    while h < col.len() {
        for start in (0..col.len()).step_by(2 * h) {
            for j in start..start + h {
                let (a, b) = (col[j], col[j + h]);
                col[j] = a + b;
                col[j + h] = a - b;
            }
        }
        h *= 2;
    }
}

#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    pub register: String,
    /// `Some(bit)` for a single-bit measurement.
    pub bit: Option<usize>,
    pub value: BitString,
    /// Exact probability of the observed value before sampling.
    pub probability: f64,
    pub collapsed: StateVector,
}

/// Marginal Born distribution over the joint values of some registers.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    registers: Vec<String>,
    probs: BTreeMap<Vec<BitString>, f64>,
}

impl Distribution {
    pub fn registers(&self) -> &[String] {
        &self.registers
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<BitString>, f64)> {
        self.probs.iter().map(|(k, p)| (k, *p))
    }

    pub fn get(&self, key: &[BitString]) -> f64 {
        self.probs.get(key).copied().unwrap_or(0.0)
    }

    /// Lookup by binary strings, one per register. Panics on malformed input.
    pub fn prob(&self, key: &[&str]) -> f64 {
        let key: Vec<BitString> = key.iter().map(|s| s.parse().expect("bit string")).collect();
        self.get(&key)
    }

    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }

    /// Outcomes with probability above `threshold`.
    pub fn support(&self, threshold: f64) -> Vec<Vec<BitString>> {
        self.probs
            .iter()
            .filter(|(_, p)| **p > threshold)
            .map(|(k, _)| k.clone())
            .collect()
    }

    /// Largest pointwise probability difference over the union of supports.
    pub fn max_abs_diff(&self, other: &Distribution) -> f64 {
        self.probs
            .keys()
            .chain(other.probs.keys())
            .map(|k| (self.get(k) - other.get(k)).abs())
            .fold(0.0, f64::max)
    }

    /// Weighted sum of distributions over the same registers.
    pub fn mixture(parts: &[(f64, Distribution)]) -> Distribution {
        let registers = parts
            .first()
            .map(|(_, d)| d.registers.clone())
            .unwrap_or_default();
        let mut probs = BTreeMap::new();
        for (w, d) in parts {
            for (k, p) in &d.probs {
                *probs.entry(k.clone()).or_insert(0.0) += w * p;
            }
        }
        Distribution { registers, probs }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<BitString> {
        let total = self.total();
        let r = rng.gen::<f64>() * total;
        let mut acc = 0.0;
        let mut last = None;
        for (k, p) in &self.probs {
            if *p <= 0.0 {
                continue;
            }
            acc += p;
            last = Some(k);
            if r < acc {
                return k.clone();
            }
        }
        last.expect("distribution is nonempty").clone()
    }
}

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    /// `⟨ψ|ρ|ψ⟩` for a normalized pure state `ψ`.
    pub fn fidelity_with_pure(&self, psi: &[Complex64]) -> f64 {
        assert_eq!(psi.len(), self.dim);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += psi[i].conj() * self.get(i, j) * psi[j];
            }
        }
        acc.re
    }

    /// `tr ρ²`; 1 for a pure state.
    pub fn purity(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += (self.get(i, j) * self.get(j, i)).re;
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_1_SQRT_2;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn x1() -> RegisterLayout {
        RegisterLayout::new(&[("X", 1)]).unwrap()
    }

    #[test]
    fn basis_construction() {
        let s = StateVector::basis_str(&x1(), &[("X", "0")]).unwrap();
        assert_eq!(s.amplitudes(), &[c(1.0), c(0.0)]);

        let layout = RegisterLayout::new(&[("K", 2), ("X", 2), ("V", 1)]).unwrap();
        let s = StateVector::basis_str(&layout, &[("K", "00"), ("X", "00"), ("V", "0")]).unwrap();
        assert_eq!(s.amplitudes()[0], c(1.0));
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn basis_width_mismatch() {
        let err = StateVector::basis_str(&x1(), &[("X", "01")]).unwrap_err();
        assert!(matches!(err, Error::InvalidValue { .. }));
        let err = StateVector::basis_str(&x1(), &[]).unwrap_err();
        assert!(matches!(err, Error::InvalidValue { .. }));
    }

    #[test]
    fn hadamard_single_qubit() {
        let mut s = StateVector::basis_str(&x1(), &[("X", "0")]).unwrap();
        s.apply_hadamard_all("X").unwrap();
        assert!((s.amplitudes()[0] - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((s.amplitudes()[1] - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!(matches!(
            s.apply_hadamard_all("Y"),
            Err(Error::UnknownRegister(_))
        ));
    }

    #[test]
    fn hadamard_two_qubits_uniform() {
        let layout = RegisterLayout::new(&[("X", 2)]).unwrap();
        let mut s = StateVector::basis_str(&layout, &[("X", "00")]).unwrap();
        s.apply_hadamard_all("X").unwrap();
        for a in s.amplitudes() {
            assert!((a - c(0.5)).norm() < 1e-15);
        }
    }

    #[test]
    fn diffusion_hand_matrix() {
        // 2|u⟩⟨u| − I applied to e₀ on two qubits
        let layout = RegisterLayout::new(&[("X", 2)]).unwrap();
        let mut s = StateVector::basis_str(&layout, &[("X", "00")]).unwrap();
        s.apply_diffusion("X").unwrap();
        let expected = [c(-0.5), c(0.5), c(0.5), c(0.5)];
        for (a, e) in s.amplitudes().iter().zip(&expected) {
            assert!((a - e).norm() < 1e-15);
        }
    }

    #[test]
    fn diffusion_fixes_uniform() {
        let layout = RegisterLayout::new(&[("X", 3)]).unwrap();
        let mut s = StateVector::basis_str(&layout, &[("X", "000")]).unwrap();
        s.apply_hadamard_all("X").unwrap();
        let before = s.clone();
        s.apply_diffusion("X").unwrap();
        assert!(s.max_abs_diff(&before) < 1e-12);
    }

    #[test]
    fn oracle_rejects_incomplete_table() {
        let layout = RegisterLayout::new(&[("X", 2), ("V", 1)]).unwrap();
        let mut s = StateVector::basis_str(&layout, &[("X", "00"), ("V", "0")]).unwrap();
        let short = FunctionTable::new(2, 1, vec![0, 1, 0]).unwrap_err();
        assert!(matches!(short, Error::IncompleteOracle(_)));
        let wrong_width = FunctionTable::new(1, 1, vec![0, 1]).unwrap();
        assert!(matches!(
            s.apply_function_oracle(&["X"], "V", &wrong_width),
            Err(Error::IncompleteOracle(_))
        ));
        let t = FunctionTable::new(2, 1, vec![0, 0, 0, 1]).unwrap();
        assert!(matches!(
            s.apply_function_oracle(&["X"], "X", &t),
            Err(Error::IncompleteOracle(_))
        ));
    }

    #[test]
    fn measure_uniform_probabilities() {
        let layout = RegisterLayout::new(&[("X", 2)]).unwrap();
        let mut s = StateVector::basis_str(&layout, &[("X", "00")]).unwrap();
        s.apply_hadamard_all("X").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let out = s.measure_register("X", &mut rng).unwrap();
        assert!((out.probability - 0.25).abs() < 1e-12);
        assert!((out.collapsed.norm_sqr() - 1.0).abs() < 1e-12);
        let d = out.collapsed.distribution(&["X"]).unwrap();
        assert!((d.get(&[out.value]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn measure_bit_of_basis_state() {
        let layout = RegisterLayout::new(&[("X", 2)]).unwrap();
        let s = StateVector::basis_str(&layout, &[("X", "10")]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let b1 = s.measure_bit("X", 1, &mut rng).unwrap();
            assert_eq!(b1.value.to_string(), "1");
            assert_eq!(b1.probability, 1.0);
            let b2 = s.measure_bit("X", 2, &mut rng).unwrap();
            assert_eq!(b2.value.to_string(), "0");
        }
        assert!(matches!(
            s.measure_bit("X", 3, &mut rng),
            Err(Error::InvalidBit { .. })
        ));
        assert!(matches!(
            s.measure_bit("X", 0, &mut rng),
            Err(Error::InvalidBit { .. })
        ));
    }

    #[test]
    fn populations_of_sharp_qubit() {
        let s = StateVector::basis_str(&x1(), &[("X", "1")]).unwrap();
        assert_eq!(s.populations("X", 1).unwrap(), (0.0, 1.0));
        assert!(matches!(
            s.populations("X", 2),
            Err(Error::InvalidBit { .. })
        ));
    }

    #[test]
    fn product_and_uniform_subset() {
        let layout = RegisterLayout::new(&[("K", 2), ("X", 1)]).unwrap();
        let k = StateVector::uniform_over(&[1, 2, 3], 2).unwrap();
        let s = StateVector::product(&layout, &[("K", k)]).unwrap();
        let d = s.distribution(&["K"]).unwrap();
        assert_eq!(d.prob(&["00"]), 0.0);
        for v in ["01", "10", "11"] {
            assert!((d.prob(&[v]) - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn reduced_density_of_bell_pair() {
        let layout = RegisterLayout::new(&[("A", 1), ("B", 1)]).unwrap();
        let a = FRAC_1_SQRT_2;
        let s = StateVector::from_amplitudes(&layout, vec![c(a), c(0.0), c(0.0), c(a)]).unwrap();
        let rho = s.reduced_density("A").unwrap();
        assert!((rho.get(0, 0).re - 0.5).abs() < 1e-12);
        assert!(rho.get(0, 1).norm() < 1e-12);
        assert!((rho.purity() - 0.5).abs() < 1e-12);
        assert!((rho.trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn global_phase_comparison() {
        let layout = RegisterLayout::new(&[("X", 1)]).unwrap();
        let a = StateVector::from_amplitudes(&layout, vec![c(0.6), c(0.8)]).unwrap();
        let b = StateVector::from_amplitudes(
            &layout,
            vec![Complex64::new(0.0, 0.6), Complex64::new(0.0, 0.8)],
        )
        .unwrap();
        assert!(a.max_abs_diff(&b) > 0.5);
        assert!(a.max_abs_diff_up_to_phase(&b) < 1e-12);
    }
}
