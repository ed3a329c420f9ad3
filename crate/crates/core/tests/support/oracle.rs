//! Brute-force enumeration oracle. Walks spaces, keys, bits and private keys
//! with plain loops and sums raw products; it shares no code with the
//! analysis beyond the scheme data type.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use twospace_core::rational::rat;
use twospace_core::{Bit, Rational, SchemeInstance};

#[derive(Clone, Debug)]
pub struct Outcome {
    pub space: u8,
    pub key: String,
    pub bit: Bit,
    pub ct: String,
    pub private_key: String,
    pub bob: Bit,
    pub weight: Rational,
}

pub struct Oracle<'a> {
    pub scheme: &'a SchemeInstance,
    pub outcomes: Vec<Outcome>,
    /// Normalized prior over private keys matching the observed public key.
    pub receiver: Vec<(String, Rational)>,
}

impl<'a> Oracle<'a> {
    pub fn new(scheme: &'a SchemeInstance) -> Self {
        let rx = &scheme.receiver;
        let matching: Vec<(&String, &Rational)> = rx
            .private_keys
            .iter()
            .filter(|(k, w)| rx.keygen[*k] == rx.observed_public_key && !w.is_zero())
            .collect();
        let z: Rational = matching.iter().map(|(_, w)| (*w).clone()).sum();
        let receiver: Vec<(String, Rational)> =
            matching.iter().map(|(k, w)| ((*k).clone(), (*w).clone() / &z)).collect();
        let mut outcomes = Vec::new();
        for (space, keys, prior) in [
            (1u8, &scheme.space1, scheme.space_prior.clone()),
            (2u8, &scheme.space2, Rational::one() - &scheme.space_prior),
        ] {
            for (key, kw) in keys {
                for bit in [Bit::Zero, Bit::One] {
                    let ct = scheme.encryption[key][bit.index()].clone();
                    for (d, dw) in &receiver {
                        let weight = &prior * kw * rat(1, 2) * dw;
                        if weight.is_zero() {
                            continue;
                        }
                        let bob = rx.decryption[d][&ct];
                        outcomes.push(Outcome {
                            space,
                            key: key.clone(),
                            bit,
                            ct: ct.clone(),
                            private_key: d.clone(),
                            bob,
                            weight,
                        });
                    }
                }
            }
        }
        Oracle { scheme, outcomes, receiver }
    }

    pub fn total(&self) -> Rational {
        self.outcomes.iter().map(|o| o.weight.clone()).sum()
    }

    pub fn pb(&self) -> Rational {
        self.outcomes.iter().filter(|o| o.bob == o.bit).map(|o| o.weight.clone()).sum()
    }

    /// Pr(correct | space); `None` when the space has zero mass.
    pub fn q(&self, space: u8) -> Option<Rational> {
        let mass: Rational = self.outcomes.iter().filter(|o| o.space == space).map(|o| o.weight.clone()).sum();
        if mass.is_zero() {
            return None;
        }
        let good: Rational = self
            .outcomes
            .iter()
            .filter(|o| o.space == space && o.bob == o.bit)
            .map(|o| o.weight.clone())
            .sum();
        Some(good / mass)
    }

    /// Keys of `space` with both ciphertexts producible by some positive-weight
    /// key of the other space, by pairwise search.
    pub fn overlap_keys(&self, space: u8) -> BTreeSet<String> {
        let (mine, theirs) = if space == 1 {
            (&self.scheme.space1, &self.scheme.space2)
        } else {
            (&self.scheme.space2, &self.scheme.space1)
        };
        let mut out = BTreeSet::new();
        for k in mine.keys() {
            let mut both = true;
            for b in 0..2 {
                let ct = &self.scheme.encryption[k][b];
                let mut found = false;
                for (k2, w2) in theirs {
                    if w2.is_zero() {
                        continue;
                    }
                    for b2 in 0..2 {
                        if &self.scheme.encryption[k2][b2] == ct {
                            found = true;
                        }
                    }
                }
                both &= found;
            }
            if both {
                out.insert(k.clone());
            }
        }
        out
    }

    /// Pr(key in overlap | space and correct).
    pub fn tau(&self, space: u8) -> Option<Rational> {
        let overlap = self.overlap_keys(space);
        let correct = |o: &&Outcome| o.space == space && o.bob == o.bit;
        let mass: Rational = self.outcomes.iter().filter(correct).map(|o| o.weight.clone()).sum();
        if mass.is_zero() {
            return None;
        }
        let hit: Rational = self
            .outcomes
            .iter()
            .filter(correct)
            .filter(|o| overlap.contains(&o.key))
            .map(|o| o.weight.clone())
            .sum();
        Some(hit / mass)
    }

    /// Pr(ct, bit) for every reachable ciphertext.
    pub fn ct_bit_mass(&self) -> BTreeMap<String, [Rational; 2]> {
        let mut m: BTreeMap<String, [Rational; 2]> = BTreeMap::new();
        for o in &self.outcomes {
            let e = m.entry(o.ct.clone()).or_insert_with(|| [Rational::zero(), Rational::zero()]);
            e[o.bit.index()] += &o.weight;
        }
        m
    }

    /// Success of the best deterministic ciphertext-only rule, by trying all
    /// `2^|CT|` rules.
    pub fn best_rule(&self) -> Rational {
        let masses: Vec<[Rational; 2]> = self.ct_bit_mass().into_values().collect();
        assert!(masses.len() <= 16);
        let mut best = Rational::zero();
        for rule in 0u32..(1 << masses.len()) {
            let v: Rational = masses
                .iter()
                .enumerate()
                .map(|(i, m)| m[((rule >> i) & 1) as usize].clone())
                .sum();
            if v > best {
                best = v;
            }
        }
        best
    }

    fn eve_decrypts(&self, ct: &str, bit: Bit) -> Rational {
        self.receiver
            .iter()
            .filter(|(d, _)| self.scheme.receiver.decryption[d][ct] == bit)
            .map(|(_, w)| w.clone())
            .sum()
    }

    /// Eve emulates Bob when `engaged(ct)`, otherwise abstains or flips a coin.
    pub fn assumption(&self, engaged: impl Fn(&str) -> bool, uniform_fallback: bool) -> Rational {
        self.outcomes
            .iter()
            .map(|o| {
                if engaged(&o.ct) {
                    &o.weight * self.eve_decrypts(&o.ct, o.bit)
                } else if uniform_fallback {
                    &o.weight * rat(1, 2)
                } else {
                    Rational::zero()
                }
            })
            .sum()
    }

    pub fn image(&self, space: u8) -> BTreeSet<String> {
        let keys = if space == 1 { &self.scheme.space1 } else { &self.scheme.space2 };
        keys.iter()
            .filter(|(_, w)| !w.is_zero())
            .flat_map(|(k, _)| self.scheme.encryption[k].iter().cloned())
            .collect()
    }

    pub fn assume_space(&self, space: u8, uniform_fallback: bool) -> Rational {
        let image = self.image(space);
        self.assumption(|ct| image.contains(ct), uniform_fallback)
    }

    /// Pr(Eve's independent private-key draw decrypts to Alice's bit).
    pub fn receiver_emulation(&self) -> Rational {
        self.assumption(|_| true, false)
    }

    pub fn triple_sampling(&self) -> Rational {
        let mut pools: BTreeMap<String, [u64; 2]> = BTreeMap::new();
        for o in self.outcomes.iter().filter(|o| o.bob == o.bit) {
            pools.entry(o.ct.clone()).or_default()[o.bit.index()] += 1;
        }
        self.outcomes
            .iter()
            .map(|o| match pools.get(&o.ct) {
                Some(p) if p[0] + p[1] > 0 => {
                    &o.weight * Rational::new(p[o.bit.index()].into(), (p[0] + p[1]).into())
                }
                _ => &o.weight * rat(1, 2),
            })
            .sum()
    }

    pub fn bayes(&self) -> Rational {
        self.ct_bit_mass()
            .into_values()
            .map(|[a, b]| if a > b { a } else { b })
            .sum()
    }
}
