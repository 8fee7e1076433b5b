//! Crate-wide error type.

use thiserror::Error;

/// Validation and simulation errors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A sequence element failed the finiteness check.
    #[error("{context}: value at index {index} is not finite ({value})")]
    NonFinite {
        context: &'static str,
        index: usize,
        value: f64,
    },

    /// A scalar input failed the finiteness check.
    #[error("{context}: non-finite value ({value})")]
    NonFiniteValue { context: &'static str, value: f64 },

    /// Two sequences that must have equal length do not.
    #[error("{context}: length mismatch ({left} vs {right})")]
    LengthMismatch {
        context: &'static str,
        left: usize,
        right: usize,
    },

    /// An operation received an empty input it cannot handle.
    #[error("{context}: input is empty")]
    Empty { context: &'static str },

    /// A parameter is outside its documented domain.
    #[error("{context}: {detail}")]
    Invalid {
        context: &'static str,
        detail: String,
    },

    /// Stack push for a timestep other than the current depth.
    #[error("stack: push for timestep {got} but current depth is {expected}")]
    OutOfOrderPush { expected: usize, got: usize },

    /// Stack push beyond the configured number of timesteps.
    #[error("stack: push would exceed capacity of {capacity} timesteps")]
    StackOverflow { capacity: usize },

    /// Pop from an empty stack.
    #[error("stack: pop from empty stack")]
    StackUnderflow,

    /// Result write for a timestep that has not been popped yet.
    #[error("stack: result write for timestep {timestep} before it was popped")]
    WriteBeforePop { timestep: usize },

    /// Quantized code does not fit the scheme's bit width.
    #[error("code {code} exceeds the {bits}-bit range")]
    CodeOutOfRange { code: u64, bits: u32 },

    /// Acceleration factor named a phase that is not in the profile.
    #[error("unknown phase or sub-phase name: {0}")]
    UnknownPhase(String),

    /// Malformed input file.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
