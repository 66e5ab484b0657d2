use alloc::string::String;
use core::fmt;

use crate::VarId;

/// Errors reported by the solvers and transformations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    UnassignedVariable(VarId),
    NotBinary,
    StrictBound,
    OracleBlowUp { cap: u64 },
    CnfBlowUp { cap: usize },
    ValidityBlowUp { cap: u64 },
    InvalidDecomposition(String),
    DecompositionMismatch(String),
    UnknownRelation(String),
    ArityMismatch { name: String, expected: usize, got: usize },
    FragmentMismatch(&'static str),
    InvalidArgument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnassignedVariable(v) => write!(f, "unassigned variable {v}"),
            Error::NotBinary => f.write_str("pairwise normalization requires binary instance"),
            Error::StrictBound => f.write_str("integer witness requires closed system"),
            Error::OracleBlowUp { cap } => write!(f, "oracle blow-up (more than {cap} selections)"),
            Error::CnfBlowUp { cap } => write!(f, "cnf blow-up (more than {cap} clauses)"),
            Error::ValidityBlowUp { cap } => write!(f, "validity check blow-up (more than {cap} assignments)"),
            Error::InvalidDecomposition(msg) => write!(f, "decomposition property violated: {msg}"),
            Error::DecompositionMismatch(msg) => write!(f, "decomposition does not match instance: {msg}"),
            Error::UnknownRelation(name) => write!(f, "unknown relation {name}"),
            Error::ArityMismatch { name, expected, got } => {
                write!(f, "relation {name} has arity {expected}, applied to {got} variables")
            }
            Error::FragmentMismatch(msg) => write!(f, "fragment mismatch: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
