use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};

/// Largest total qubit count a [`RegisterLayout`] may hold.
pub const MAX_QUBITS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Register {
    pub name: String,
    pub width: usize,
    /// Position of the register's least significant qubit in a basis index.
    #[serde(skip)]
    pub(crate) shift: usize,
}

impl Register {
    pub(crate) fn mask(&self) -> usize {
        ((1usize << self.width) - 1) << self.shift
    }

    #[inline]
    pub(crate) fn extract(&self, index: usize) -> u64 {
        ((index >> self.shift) & ((1usize << self.width) - 1)) as u64
    }

    /// Basis-index bit corresponding to 1-based register bit `pos`.
    pub(crate) fn bit_mask(&self, pos: usize) -> usize {
        1usize << (self.shift + self.width - pos)
    }
}

/// Ordered set of named qubit registers.
///
/// Registers are laid out in declaration order from the most significant
/// end of the basis index: for `[K:2, X:2, V:1]` the basis index is
/// `k << 3 | x << 1 | v`. Within a register bit 1 is the most significant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(String, usize)>", into = "Vec<(String, usize)>")]
pub struct RegisterLayout {
    registers: Vec<Register>,
    total_qubits: usize,
}

impl RegisterLayout {
    pub fn new<S: AsRef<str>>(registers: &[(S, usize)]) -> Result<Self> {
        if registers.is_empty() {
            return Err(Error::InvalidLayout("no registers".into()));
        }
        let mut regs: Vec<Register> = Vec::with_capacity(registers.len());
        for (name, width) in registers {
            let name = name.as_ref();
            if name.is_empty() {
                return Err(Error::InvalidLayout("empty register name".into()));
            }
            if *width == 0 {
                return Err(Error::InvalidLayout(format!(
                    "register `{name}` has width 0"
                )));
            }
            if regs.iter().any(|r| r.name == name) {
                return Err(Error::InvalidLayout(format!("duplicate register `{name}`")));
            }
            regs.push(Register {
                name: name.to_string(),
                width: *width,
                shift: 0,
            });
        }
        let total_qubits: usize = regs.iter().map(|r| r.width).sum();
        if total_qubits > MAX_QUBITS {
            return Err(Error::InvalidLayout(format!(
                "{total_qubits} qubits exceeds the cap of {MAX_QUBITS}"
            )));
        }
        let mut shift = 0;
        for reg in regs.iter_mut().rev() {
            reg.shift = shift;
            shift += reg.width;
        }
        Ok(Self {
            registers: regs,
            total_qubits,
        })
    }

    pub fn total_qubits(&self) -> usize {
        self.total_qubits
    }

    pub fn dim(&self) -> usize {
        1usize << self.total_qubits
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Result<&Register> {
        self.registers
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| Error::UnknownRegister(name.to_string()))
    }

    pub fn width(&self, name: &str) -> Result<usize> {
        Ok(self.register(name)?.width)
    }

    /// Basis index of the joint value; registers not listed are `0…0`.
    pub fn index_of(&self, values: &[(&str, BitString)]) -> Result<usize> {
        let mut index = 0usize;
        for (name, value) in values {
            let reg = self.register(name)?;
            if value.width() != reg.width {
                return Err(Error::InvalidValue {
                    register: reg.name.clone(),
                    reason: format!("expected {} bits, got `{value}`", reg.width),
                });
            }
            index = (index & !reg.mask()) | ((value.value() as usize) << reg.shift);
        }
        Ok(index)
    }

    pub fn value_of(&self, index: usize, name: &str) -> Result<BitString> {
        let reg = self.register(name)?;
        BitString::new(reg.extract(index), reg.width)
    }
}

impl TryFrom<Vec<(String, usize)>> for RegisterLayout {
    type Error = Error;

    fn try_from(v: Vec<(String, usize)>) -> Result<Self> {
        Self::new(&v)
    }
}

impl From<RegisterLayout> for Vec<(String, usize)> {
    fn from(l: RegisterLayout) -> Self {
        l.registers.into_iter().map(|r| (r.name, r.width)).collect()
    }
}
