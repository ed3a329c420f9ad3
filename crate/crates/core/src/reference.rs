//! Reference instances shipped with the crate.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::paradox::{StratifiedTable, Stratum};
use crate::rational::{rat, Rational};
use crate::scheme::{Bit, ReceiverModel, SchemeInstance};

fn weights(pairs: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
    pairs.iter().map(|(k, w)| (k.to_string(), w.clone())).collect()
}

fn table(entries: &[(&str, u8)]) -> BTreeMap<String, Bit> {
    entries.iter().map(|&(ct, b)| (ct.to_string(), Bit::from_index(b.into()))).collect()
}

/// Two keys per space; `k1` collides with `k3` on both ciphertexts, and the
/// less likely private key `d2` inverts those two ciphertexts.
pub fn toy_v1() -> SchemeInstance {
    let encryption = [
        ("k1", "c1", "c0"),
        ("k2", "c2", "c3"),
        ("k3", "c0", "c1"),
        ("k4", "c4", "c5"),
    ]
    .iter()
    .map(|&(k, zero, one)| (k.to_string(), [zero.to_string(), one.to_string()]))
    .collect();
    let d1 = table(&[("c0", 0), ("c1", 1), ("c2", 0), ("c3", 1), ("c4", 0), ("c5", 1)]);
    let d2 = table(&[("c0", 1), ("c1", 0), ("c2", 0), ("c3", 1), ("c4", 0), ("c5", 1)]);
    SchemeInstance {
        name: "toy-v1".to_string(),
        space_prior: rat(1, 2),
        space1: weights(&[("k1", rat(1, 2)), ("k2", rat(1, 2))]),
        space2: weights(&[("k3", rat(1, 2)), ("k4", rat(1, 2))]),
        encryption,
        receiver: ReceiverModel {
            private_keys: weights(&[("d1", rat(3, 4)), ("d2", rat(1, 4))]),
            keygen: [("d1", "P"), ("d2", "P")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            decryption: [("d1".to_string(), d1), ("d2".to_string(), d2)].into_iter().collect(),
            observed_public_key: "P".to_string(),
        },
    }
}

/// `toy_v1` with Alice choosing `S1` only one time in five.
pub fn toy_v2() -> SchemeInstance {
    SchemeInstance { name: "toy-v2".to_string(), space_prior: rat(1, 5), ..toy_v1() }
}

/// Classic kidney-stone treatment counts (A = open surgery, B = nephrolithotomy).
pub fn kidney_stones() -> StratifiedTable {
    let strata: Vec<Stratum> = [("small", 81, 87, 234, 270), ("large", 192, 263, 55, 80)]
        .iter()
        .map(|&(name, success_a, total_a, success_b, total_b)| Stratum {
            name: name.to_string(),
            success_a,
            total_a,
            success_b,
            total_b,
        })
        .collect();
    StratifiedTable { strata }
}
