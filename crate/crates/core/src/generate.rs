//! Random small schemes for property suites.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::rational::{rat, Rational};
use crate::rng::SplitMix64;
use crate::scheme::{Bit, ReceiverModel, SchemeInstance, Space};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub max_keys_per_space: u64,
    /// At least 2.
    pub max_ciphertexts: u64,
    pub max_private_keys: u64,
    /// Only generate schemes without partial-overlap keys.
    pub clean_overlap: bool,
    /// Fixed space prior; drawn from `{0, 1/8, ..., 1}` when `None`.
    pub space_prior: Option<Rational>,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            max_keys_per_space: 4,
            max_ciphertexts: 8,
            max_private_keys: 3,
            clean_overlap: false,
            space_prior: None,
        }
    }
}

fn weights(rng: &mut SplitMix64, labels: &[String]) -> BTreeMap<String, Rational> {
    let raw: Vec<i64> = labels.iter().map(|_| 1 + rng.below(4) as i64).collect();
    let total: i64 = raw.iter().sum();
    labels.iter().zip(raw).map(|(l, w)| (l.clone(), rat(w, total))).collect()
}

fn pick<'a>(rng: &mut SplitMix64, pool: &'a [String]) -> &'a String {
    &pool[rng.below(pool.len() as u64) as usize]
}

fn coin_bit(rng: &mut SplitMix64) -> Bit {
    if rng.coin() {
        Bit::One
    } else {
        Bit::Zero
    }
}

/// Draws a valid scheme. With `clean_overlap`, draws are repeated until no key
/// has exactly one of its ciphertexts producible by the other space.
pub fn random_scheme(rng: &mut SplitMix64, params: &GenParams) -> SchemeInstance {
    loop {
        let s = draw(rng, params);
        if !params.clean_overlap || !has_partial_overlap(&s) {
            return s;
        }
    }
}

fn has_partial_overlap(s: &SchemeInstance) -> bool {
    Space::BOTH.into_iter().any(|space| {
        let other = s.image(space.other());
        s.space(space).keys().any(|k| {
            let covered = Bit::BOTH
                .into_iter()
                .filter(|b| s.encrypt(k, *b).is_some_and(|ct| other.contains(ct)))
                .count();
            covered == 1
        })
    })
}

fn draw(rng: &mut SplitMix64, params: &GenParams) -> SchemeInstance {
    let n_ct = 2 + rng.below(params.max_ciphertexts - 1);
    let cts: Vec<String> = (0..n_ct).map(|i| format!("c{i}")).collect();
    let n2 = 1 + rng.below(params.max_keys_per_space);
    let n1 = 1 + rng.below(params.max_keys_per_space);
    let keys2: Vec<String> = (0..n2).map(|i| format!("b{i}")).collect();
    let keys1: Vec<String> = (0..n1).map(|i| format!("a{i}")).collect();

    let mut encryption: BTreeMap<String, [String; 2]> = BTreeMap::new();
    for k in &keys2 {
        encryption.insert(k.clone(), [pick(rng, &cts).clone(), pick(rng, &cts).clone()]);
    }
    let image2: Vec<String> = encryption
        .values()
        .flatten()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let outside: Vec<String> = cts.iter().filter(|c| !image2.contains(c)).cloned().collect();
    for k in &keys1 {
        let pool = if !params.clean_overlap {
            &cts
        } else if outside.is_empty() || rng.coin() {
            &image2
        } else {
            &outside
        };
        encryption.insert(k.clone(), [pick(rng, pool).clone(), pick(rng, pool).clone()]);
    }

    // bits that some key encrypts to each ciphertext
    let mut sources: BTreeMap<&str, Vec<Bit>> = BTreeMap::new();
    for pair in encryption.values() {
        for b in Bit::BOTH {
            sources.entry(pair[b.index()].as_str()).or_default().push(b);
        }
    }

    let n_priv = 1 + rng.below(params.max_private_keys);
    let privs: Vec<String> = (0..n_priv).map(|i| format!("d{i}")).collect();
    let mut keygen = BTreeMap::new();
    let mut decryption = BTreeMap::new();
    for (i, d) in privs.iter().enumerate() {
        let public = if i == 0 || rng.coin() { "P" } else { "Q" };
        keygen.insert(d.clone(), String::from(public));
        let table = cts
            .iter()
            .map(|ct| {
                // lean towards a bit some key really encrypts to ct
                let bit = match sources.get(ct.as_str()) {
                    Some(bits) if rng.below(3) < 2 => bits[rng.below(bits.len() as u64) as usize],
                    _ => coin_bit(rng),
                };
                (ct.clone(), bit)
            })
            .collect();
        decryption.insert(d.clone(), table);
    }

    let space_prior = match &params.space_prior {
        Some(r) => r.clone(),
        None => rat(rng.below(9) as i64, 8),
    };
    SchemeInstance {
        name: String::from("generated"),
        space_prior,
        space1: weights(rng, &keys1),
        space2: weights(rng, &keys2),
        encryption,
        receiver: ReceiverModel {
            private_keys: weights(rng, &privs),
            keygen,
            decryption,
            observed_public_key: String::from("P"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::overlap_analysis;

    #[test]
    fn generated_schemes_are_valid() {
        let mut rng = SplitMix64::new(1);
        for clean_overlap in [false, true] {
            let params = GenParams { clean_overlap, ..GenParams::default() };
            for _ in 0..100 {
                let s = random_scheme(&mut rng, &params);
                assert!(s.validate().is_empty(), "{:?}", s.validate());
                if clean_overlap {
                    let o = overlap_analysis(&s).unwrap();
                    assert!(o.partial_overlap_keys.is_empty(), "{s:?}");
                }
            }
        }
    }
}
