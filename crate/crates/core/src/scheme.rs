//! The generic two-space scheme as explicit finite data.
//!
//! Alice picks a space (`S1` with probability `space_prior`), draws a key from
//! it, encrypts a uniform secret bit deterministically, and Bob decrypts with a
//! private key drawn from his prior conditioned on the published public key.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::dist::FiniteDist;
use crate::error::{Error, Result};
use crate::rational::{half, is_probability, Fraction, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub const BOTH: [Bit; 2] = [Bit::Zero, Bit::One];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Bit {
        if i == 0 {
            Bit::Zero
        } else {
            Bit::One
        }
    }

    pub fn flip(self) -> Bit {
        match self {
            Bit::Zero => Bit::One,
            Bit::One => Bit::Zero,
        }
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Space {
    S1,
    S2,
}

impl Space {
    pub const BOTH: [Space; 2] = [Space::S1, Space::S2];

    pub fn other(self) -> Space {
        match self {
            Space::S1 => Space::S2,
            Space::S2 => Space::S1,
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::S1 => "S1",
            Space::S2 => "S2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReceiverModel {
    pub private_keys: BTreeMap<String, Rational>,
    /// Deterministic key generation: private key to public key.
    pub keygen: BTreeMap<String, String>,
    pub decryption: BTreeMap<String, BTreeMap<String, Bit>>,
    pub observed_public_key: String,
}

impl ReceiverModel {
    pub fn decrypt(&self, private_key: &str, ciphertext: &str) -> Option<Bit> {
        self.decryption.get(private_key)?.get(ciphertext).copied()
    }

    /// Bob's private key given the observed public key.
    pub fn posterior(&self) -> Result<FiniteDist<String>> {
        let observed = &self.observed_public_key;
        let consistent = self
            .private_keys
            .iter()
            .filter(|(k, _)| self.keygen.get(*k) == Some(observed))
            .map(|(k, w)| (k.clone(), w.clone()));
        FiniteDist::from_weights(consistent).map_err(|e| match e {
            Error::ZeroTotalMass => Error::UnobservedPublicKey(observed.clone()),
            other => other,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeInstance {
    pub name: String,
    /// Probability that Alice selects `S1`.
    pub space_prior: Rational,
    pub space1: BTreeMap<String, Rational>,
    pub space2: BTreeMap<String, Rational>,
    /// Ciphertexts for bit 0 and bit 1, per key.
    pub encryption: BTreeMap<String, [String; 2]>,
    pub receiver: ReceiverModel,
}

/// One broken invariant of a [`SchemeInstance`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub field: String,
    pub message: String,
}

impl Violation {
    fn new(field: &str, message: String) -> Self {
        Violation { field: String::from(field), message }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl SchemeInstance {
    pub fn space(&self, space: Space) -> &BTreeMap<String, Rational> {
        match space {
            Space::S1 => &self.space1,
            Space::S2 => &self.space2,
        }
    }

    /// Probability that Alice selects `space`.
    pub fn space_weight(&self, space: Space) -> Rational {
        match space {
            Space::S1 => self.space_prior.clone(),
            Space::S2 => Rational::one() - &self.space_prior,
        }
    }

    pub fn space_of(&self, key: &str) -> Option<Space> {
        Space::BOTH.into_iter().find(|s| self.space(*s).contains_key(key))
    }

    pub fn encrypt(&self, key: &str, bit: Bit) -> Option<&str> {
        self.encryption.get(key).map(|c| c[bit.index()].as_str())
    }

    /// Keys of `space` with positive within-space weight.
    pub fn live_keys(&self, space: Space) -> impl Iterator<Item = (&String, &Rational)> {
        self.space(space).iter().filter(|(_, w)| w.is_positive())
    }

    /// Ciphertexts producible by live keys of `space`, under either bit.
    pub fn image(&self, space: Space) -> BTreeSet<&str> {
        self.live_keys(space)
            .flat_map(|(k, _)| Bit::BOTH.into_iter().filter_map(move |b| self.encrypt(k, b)))
            .collect()
    }

    pub fn reachable_ciphertexts(&self) -> BTreeSet<&str> {
        let mut all = self.image(Space::S1);
        all.extend(self.image(Space::S2));
        all
    }

    /// Lists every broken invariant; empty iff the scheme is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if !is_probability(&self.space_prior) {
            out.push(Violation::new(
                "space_prior",
                format!("space_prior {} outside [0, 1]", Fraction(&self.space_prior)),
            ));
        }
        for (space, field) in [(Space::S1, "space1"), (Space::S2, "space2")] {
            check_mass(&mut out, field, self.space(space));
        }
        for key in self.space1.keys().filter(|k| self.space2.contains_key(*k)) {
            out.push(Violation::new("spaces", format!("spaces not disjoint: {key}")));
        }
        for key in self.space1.keys().chain(self.space2.keys()) {
            if !self.encryption.contains_key(key) {
                out.push(Violation::new("encryption", format!("encryption missing for key {key}")));
            }
        }
        for key in self.encryption.keys() {
            if self.space_of(key).is_none() {
                out.push(Violation::new(
                    "encryption",
                    format!("encryption entry for unknown key {key}"),
                ));
            }
        }

        let rx = &self.receiver;
        check_mass(&mut out, "private_keys", &rx.private_keys);
        for k in rx.private_keys.keys() {
            if !rx.keygen.contains_key(k) {
                out.push(Violation::new("keygen", format!("keygen missing for private key {k}")));
            }
        }
        for k in rx.keygen.keys() {
            if !rx.private_keys.contains_key(k) {
                out.push(Violation::new("keygen", format!("keygen entry for unknown private key {k}")));
            }
        }
        for k in rx.decryption.keys() {
            if !rx.private_keys.contains_key(k) {
                out.push(Violation::new(
                    "decryption",
                    format!("decryption entry for unknown private key {k}"),
                ));
            }
        }
        let consistent: Vec<&String> = rx
            .private_keys
            .iter()
            .filter(|(k, w)| w.is_positive() && rx.keygen.get(*k) == Some(&rx.observed_public_key))
            .map(|(k, _)| k)
            .collect();
        if consistent.is_empty() {
            out.push(Violation::new(
                "observed_public_key",
                format!("observed_public_key {} has zero prior mass", rx.observed_public_key),
            ));
        }
        let reachable = self.reachable_ciphertexts();
        for k in consistent {
            for ct in &reachable {
                if rx.decrypt(k, ct).is_none() {
                    out.push(Violation::new(
                        "decryption",
                        format!("decryption of {k} missing ciphertext {ct}"),
                    ));
                }
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidScheme(violations))
        }
    }

    /// Exact joint distribution of one protocol run.
    pub fn build_joint(&self) -> Result<JointModel> {
        self.ensure_valid()?;
        let spaces = FiniteDist::from_weights(Space::BOTH.map(|s| (s, self.space_weight(s))))?;
        let alice = spaces.bind(|s| {
            FiniteDist::from_weights(self.space(*s).iter().map(|(k, w)| ((*s, k.clone()), w.clone())))
                .expect("validated space mass")
        });
        let bit = FiniteDist::uniform(Bit::BOTH)?;
        let receiver = self.receiver.posterior()?;
        let dist = alice.product(&bit).product(&receiver).pushforward(|(((space, key), bit), private_key)| {
            let ciphertext = self.encrypt(key, *bit)?;
            let received = self.receiver.decrypt(private_key, ciphertext)?;
            Some(Atom {
                space: *space,
                key: key.clone(),
                bit: *bit,
                ciphertext: String::from(ciphertext),
                private_key: private_key.clone(),
                received,
            })
        })?;
        Ok(JointModel { dist })
    }
}

fn check_mass(out: &mut Vec<Violation>, field: &str, weights: &BTreeMap<String, Rational>) {
    for (k, w) in weights.iter().filter(|(_, w)| w.is_negative()) {
        out.push(Violation::new(field, format!("{field} weight of {k} is negative: {}", Fraction(w))));
    }
    let mass: Rational = weights.values().sum();
    if !mass.is_one() {
        out.push(Violation::new(field, format!("{field} mass {} ≠ 1", Fraction(&mass))));
    }
}

/// One outcome of a protocol run. `received` is Bob's output, a deterministic
/// function of `private_key` and `ciphertext`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub space: Space,
    pub key: String,
    pub bit: Bit,
    pub ciphertext: String,
    pub private_key: String,
    pub received: Bit,
}

impl Atom {
    pub fn correct(&self) -> bool {
        self.received == self.bit
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointModel {
    dist: FiniteDist<Atom>,
}

impl JointModel {
    pub fn dist(&self) -> &FiniteDist<Atom> {
        &self.dist
    }

    pub fn prob(&self, pred: impl Fn(&Atom) -> bool) -> Rational {
        self.dist.prob(pred)
    }

    /// Marginal over reachable ciphertexts.
    pub fn transcripts(&self) -> FiniteDist<String> {
        self.dist.map(|a| a.ciphertext.clone())
    }

    pub fn given_ciphertext(&self, ciphertext: &str) -> Result<FiniteDist<Atom>> {
        self.dist.condition_on(|a| a.ciphertext == ciphertext)
    }

    pub fn bit_posterior(&self, ciphertext: &str) -> Result<FiniteDist<Bit>> {
        Ok(self.given_ciphertext(ciphertext)?.map(|a| a.bit))
    }
}

/// Probability that the receiver posterior decrypts `ciphertext` to each bit.
pub(crate) fn decryption_split(
    receiver: &ReceiverModel,
    posterior: &FiniteDist<String>,
    ciphertext: &str,
) -> [Rational; 2] {
    let mut split = [Rational::zero(), Rational::zero()];
    for (k, w) in posterior.iter() {
        if let Some(b) = receiver.decrypt(k, ciphertext) {
            split[b.index()] += w;
        }
    }
    split
}

/// Pr(Bob decrypts correctly | key), with the bit uniform.
pub(crate) fn key_success(
    scheme: &SchemeInstance,
    posterior: &FiniteDist<String>,
    key: &str,
) -> Rational {
    Bit::BOTH
        .into_iter()
        .filter_map(|b| {
            let ct = scheme.encrypt(key, b)?;
            Some(decryption_split(&scheme.receiver, posterior, ct)[b.index()].clone())
        })
        .sum::<Rational>()
        * half()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use alloc::string::ToString;
    use crate::reference::toy_v1;

    #[test]
    fn toy_v1_is_valid() {
        assert!(toy_v1().validate().is_empty());
    }

    #[test]
    fn overlapping_spaces_rejected() {
        let mut s = toy_v1();
        let w = s.space1.remove("k2").unwrap();
        s.encryption.remove("k2");
        s.space1.insert(String::from("k3"), w);
        let v = s.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].to_string(), "spaces not disjoint: k3");
    }

    #[test]
    fn short_mass_rejected() {
        let mut s = toy_v1();
        s.space1.insert(String::from("k2"), rat(1, 4));
        let msgs: Vec<String> = s.validate().iter().map(|v| v.to_string()).collect();
        assert_eq!(msgs, ["space1 mass 3/4 ≠ 1"]);
    }

    #[test]
    fn other_violations() {
        let mut s = toy_v1();
        s.space_prior = rat(3, 2);
        s.receiver.observed_public_key = String::from("nobody");
        s.encryption.remove("k4");
        let msgs: Vec<String> = s.validate().iter().map(|v| v.to_string()).collect();
        assert!(msgs.contains(&String::from("space_prior 3/2 outside [0, 1]")));
        assert!(msgs.contains(&String::from("encryption missing for key k4")));
        assert!(msgs.contains(&String::from("observed_public_key nobody has zero prior mass")));
        assert!(matches!(s.build_joint(), Err(Error::InvalidScheme(_))));

        let mut s = toy_v1();
        s.receiver.decryption.get_mut("d2").unwrap().remove("c5");
        let msgs: Vec<String> = s.validate().iter().map(|v| v.to_string()).collect();
        assert_eq!(msgs, ["decryption of d2 missing ciphertext c5"]);
    }

    #[test]
    fn joint_atom_weights() {
        let joint = toy_v1().build_joint().unwrap();
        // 2 keys per space, 2 bits, 2 private keys
        assert_eq!(joint.dist().len(), 16);
        let atom = Atom {
            space: Space::S1,
            key: String::from("k1"),
            bit: Bit::One,
            ciphertext: String::from("c0"),
            private_key: String::from("d1"),
            received: Bit::Zero,
        };
        assert_eq!(joint.dist().weight(&atom), rat(3, 32));
        assert_eq!(joint.transcripts().weight(&String::from("c0")), rat(1, 4));
        assert_eq!(joint.prob(|a| a.space == Space::S1), rat(1, 2));
        assert_eq!(joint.prob(|a| a.bit == Bit::One), rat(1, 2));
        assert_eq!(joint.prob(|a| a.private_key == "d2"), rat(1, 4));
    }

    #[test]
    fn space_prior_one_leaves_s2_empty() {
        let mut s = toy_v1();
        s.space_prior = rat(1, 1);
        let joint = s.build_joint().unwrap();
        assert!(joint.prob(|a| a.space == Space::S2).is_zero());
    }
}
