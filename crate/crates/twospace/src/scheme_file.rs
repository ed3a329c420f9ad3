//! JSON scheme files.
//!
//! ```json
//! {
//!   "name": "toy-v1",
//!   "space_prior": "1/2",
//!   "spaces": { "S1": { "k1": "1/2" }, "S2": { "k3": "1" } },
//!   "encryption": { "k1": { "0": "c1", "1": "c0" } },
//!   "receiver": {
//!     "private_keys": { "d1": "3/4" },
//!     "keygen": { "d1": "P" },
//!     "decryption": { "d1": { "c0": 0 } },
//!     "observed_public_key": "P"
//!   }
//! }
//! ```
//!
//! Rationals are `"p/q"` or integer strings. Unknown fields are rejected.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use twospace_core::rational::{fraction_string, parse_rational};
use twospace_core::{Bit, Rational, ReceiverModel, SchemeInstance};

use crate::error::CliError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemeFile {
    name: String,
    space_prior: String,
    spaces: Spaces,
    encryption: BTreeMap<String, EncryptionPair>,
    receiver: ReceiverFile,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Spaces {
    #[serde(rename = "S1")]
    s1: BTreeMap<String, String>,
    #[serde(rename = "S2")]
    s2: BTreeMap<String, String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EncryptionPair {
    #[serde(rename = "0")]
    zero: String,
    #[serde(rename = "1")]
    one: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReceiverFile {
    private_keys: BTreeMap<String, String>,
    keygen: BTreeMap<String, String>,
    decryption: BTreeMap<String, BTreeMap<String, u8>>,
    observed_public_key: String,
}

fn rational(field: &str, s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::Parse(format!("{field}: {e}")))
}

fn weights(field: &str, m: &BTreeMap<String, String>) -> Result<BTreeMap<String, Rational>, CliError> {
    m.iter()
        .map(|(k, v)| Ok((k.clone(), rational(&format!("{field}.{k}"), v)?)))
        .collect()
}

pub fn parse_scheme(text: &str) -> Result<SchemeInstance, CliError> {
    let file: SchemeFile = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let mut decryption = BTreeMap::new();
    for (priv_key, table) in &file.receiver.decryption {
        let mut bits = BTreeMap::new();
        for (ct, b) in table {
            let bit = match b {
                0 => Bit::Zero,
                1 => Bit::One,
                _ => {
                    return Err(CliError::Parse(format!(
                        "receiver.decryption.{priv_key}.{ct}: expected 0 or 1, got {b}"
                    )))
                }
            };
            bits.insert(ct.clone(), bit);
        }
        decryption.insert(priv_key.clone(), bits);
    }
    Ok(SchemeInstance {
        name: file.name,
        space_prior: rational("space_prior", &file.space_prior)?,
        space1: weights("spaces.S1", &file.spaces.s1)?,
        space2: weights("spaces.S2", &file.spaces.s2)?,
        encryption: file
            .encryption
            .into_iter()
            .map(|(k, pair)| (k, [pair.zero, pair.one]))
            .collect(),
        receiver: ReceiverModel {
            private_keys: weights("receiver.private_keys", &file.receiver.private_keys)?,
            keygen: file.receiver.keygen,
            decryption,
            observed_public_key: file.receiver.observed_public_key,
        },
    })
}

pub fn scheme_to_json(s: &SchemeInstance) -> String {
    let strings = |m: &BTreeMap<String, Rational>| -> BTreeMap<String, String> {
        m.iter().map(|(k, v)| (k.clone(), fraction_string(v))).collect()
    };
    let file = SchemeFile {
        name: s.name.clone(),
        space_prior: fraction_string(&s.space_prior),
        spaces: Spaces { s1: strings(&s.space1), s2: strings(&s.space2) },
        encryption: s
            .encryption
            .iter()
            .map(|(k, [zero, one])| (k.clone(), EncryptionPair { zero: zero.clone(), one: one.clone() }))
            .collect(),
        receiver: ReceiverFile {
            private_keys: strings(&s.receiver.private_keys),
            keygen: s.receiver.keygen.clone(),
            decryption: s
                .receiver
                .decryption
                .iter()
                .map(|(k, t)| (k.clone(), t.iter().map(|(ct, b)| (ct.clone(), b.index() as u8)).collect()))
                .collect(),
            observed_public_key: s.receiver.observed_public_key.clone(),
        },
    };
    let mut out = serde_json::to_string_pretty(&file).expect("plain data serializes");
    out.push('\n');
    out
}
