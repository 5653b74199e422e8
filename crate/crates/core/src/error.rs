//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown group descriptor {0:?}")]
    UnknownDescriptor(String),

    #[error("basepoint not found: {0}")]
    BasepointNotFound(String),

    #[error("{0} is not a member of the group")]
    NotAMember(String),

    #[error("{0} is not prime")]
    NonPrime(usize),

    #[error("ring elements have different carrier groups ({0} vs {1})")]
    CarrierMismatch(String, String),

    #[error("map undefined on support element {0}")]
    MapUndefined(String),

    #[error("not a single-component knot (components counted or estimated: {0})")]
    MultiComponent(usize),

    #[error("inconsistent PD code: {0}")]
    InconsistentPd(String),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("fixture file error: {0}")]
    FixtureIo(String),

    #[error("({0}, {1}) is not a colouring group: the class does not generate")]
    NotColouringGroup(String, String),

    #[error("longitude subgroup Λ is not abelian; {0} requires abelian Λ")]
    LambdaNotAbelian(String),

    #[error("quandle axiom violated: {0}")]
    QuandleAxiom(String),

    #[error("search node cap of {0} exceeded")]
    LimitExceeded(u64),

    #[error("automorphism search bound exceeded for group of order {0} and no shortcut applies")]
    SearchBoundExceeded(usize),

    #[error("partial trace is not scalar multiplication: {0}")]
    NonScalar(String),

    #[error("quandle is not connected")]
    NotConnected,

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    /// Stable process exit codes for the CLI: 2 = parse/input,
    /// 3 = hypothesis not met, 4 = resource limit, 1 = anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::InvalidPermutation(_)
            | Error::UnknownDescriptor(_)
            | Error::BasepointNotFound(_)
            | Error::UnknownFixture(_)
            | Error::FixtureIo(_)
            | Error::InconsistentPd(_) => 2,
            Error::LambdaNotAbelian(_)
            | Error::NotColouringGroup(_, _)
            | Error::NotConnected
            | Error::NonPrime(_)
            | Error::MultiComponent(_)
            | Error::QuandleAxiom(_) => 3,
            Error::LimitExceeded(_) | Error::SearchBoundExceeded(_) => 4,
            _ => 1,
        }
    }
}
