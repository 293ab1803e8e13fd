use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid register layout: {0}")]
    InvalidLayout(String),

    #[error("unknown register `{0}`")]
    UnknownRegister(String),

    #[error("invalid value for register `{register}`: {reason}")]
    InvalidValue { register: String, reason: String },

    #[error("bit {bit} is out of range for register `{register}` of width {width} (bits are numbered 1..={width})")]
    InvalidBit {
        register: String,
        bit: usize,
        width: usize,
    },

    #[error("incomplete oracle table: {0}")]
    IncompleteOracle(String),

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("unknown function table `{0}`")]
    UnknownTable(String),

    #[error("invalid bit string `{0}`")]
    InvalidBitString(String),

    #[error("size out of range: {0}")]
    InvalidSize(String),

    #[error("the hidden string must be nonzero")]
    InvalidHiddenString,

    #[error("system has full rank {0}; no nonzero hidden string is orthogonal to every row")]
    ContradictorySystem(usize),

    #[error("N = {0} is not a power of two")]
    InvalidN(u64),

    #[error("advance knowledge contradicts the target: {0}")]
    ContradictoryAdvance(String),

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("invalid machine masses: {0}")]
    InvalidMasses(String),

    #[error("the machine is jammed: network `{0}` has no satisfying assignment")]
    Jammed(String),
}
