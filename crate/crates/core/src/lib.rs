//! Exact analysis of a public-key bit-transmission scheme in which the sender
//! picks her encryption key from one of two disjoint probability spaces.
//!
//! The crate enumerates the full joint law of a protocol run with exact
//! rational weights and evaluates the receiver's success probability `P_B`
//! together with the success probability `P_E` of several eavesdropper
//! strategies:
//!
//! * assuming one key space and emulating the receiver ([`Strategy::AssumeSpace`]),
//!   and mixtures of the two assumptions,
//! * the Bayes-optimal ciphertext-only decision,
//! * emulating the receiver with an independent private-key draw,
//! * sampling uniformly among consistent (plaintext, key, private key) triples.
//!
//! A seeded simulator ([`montecarlo`]) cross-checks every exact value, and
//! [`paradox`] holds the classic puzzles (Monty Hall, two children, Simpson's
//! reversal) that motivate the analysis.
//!
//! ```
//! use twospace_core::{rational::rat, reference::toy_v2, Analysis, Fallback, Space};
//!
//! let scheme = toy_v2();
//! let analysis = Analysis::new(&scheme).unwrap();
//! assert_eq!(*analysis.pb(), rat(33, 40));
//! let attack = analysis.attack_space_assumption(Space::S2, Fallback::Abstain);
//! assert_eq!(attack.pe, rat(29, 40));
//! ```
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod adversary;
pub mod analysis;
pub mod dist;
pub mod error;
pub mod generate;
pub mod montecarlo;
pub mod paradox;
pub mod rational;
pub mod reference;
pub mod rng;
pub mod scheme;

pub use adversary::{AttackReport, ConditionCheck, Fallback, Strategy};
pub use analysis::{Analysis, OverlapAnalysis, ReceiverSuccess};
pub use dist::{Event, FiniteDist};
pub use error::{Error, Result};
pub use rational::Rational;
pub use scheme::{Bit, JointModel, ReceiverModel, SchemeInstance, Space, Violation};
