use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::scheme::{Space, Violation};

/// Errors raised by the probability engine and the analyses built on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    ZeroDenominator,
    InvalidRational(String),
    NegativeWeight(String),
    ZeroTotalMass,
    DuplicateLabel(String),
    NullEvent,
    /// A pushforward map was undefined on a support label.
    UndefinedImage(String),
    InvalidScheme(Vec<Violation>),
    UnobservedPublicKey(String),
    /// `tau` for the given space conditions on an event of probability zero.
    TauUndefined(Space),
    TooFewDoors(u32),
    InvalidTable(String),
    InvalidConfig(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDenominator => f.write_str("zero denominator"),
            Error::InvalidRational(s) => write!(f, "invalid rational {s:?}"),
            Error::NegativeWeight(l) => write!(f, "negative weight on {l}"),
            Error::ZeroTotalMass => f.write_str("zero total mass"),
            Error::DuplicateLabel(l) => write!(f, "duplicate label {l}"),
            Error::NullEvent => f.write_str("conditioning on null event"),
            Error::UndefinedImage(l) => write!(f, "map undefined on support label {l}"),
            Error::InvalidScheme(v) => {
                f.write_str("invalid scheme:")?;
                for violation in v {
                    write!(f, " [{violation}]")?;
                }
                Ok(())
            }
            Error::UnobservedPublicKey(k) => {
                write!(f, "observed public key {k} has zero prior mass")
            }
            Error::TauUndefined(s) => write!(f, "tau undefined for {s}: Pr({s} and correct) = 0"),
            Error::TooFewDoors(n) => write!(f, "monty hall needs at least 3 doors, got {n}"),
            Error::InvalidTable(m) => write!(f, "invalid stratified table: {m}"),
            Error::InvalidConfig(m) => write!(f, "invalid configuration: {m}"),
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
