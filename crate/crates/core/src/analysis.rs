//! Derived quantities of a scheme: key-space overlap, per-space receiver
//! success, the `tau` ratios, and per-transcript posteriors.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;

use num_traits::Zero;

use crate::dist::FiniteDist;
use crate::error::Result;
use crate::rational::Rational;
use crate::scheme::{key_success, Bit, JointModel, SchemeInstance, Space};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapAnalysis {
    /// Keys of `S1` whose ciphertexts for both bits are producible from `S2`.
    pub s12: BTreeSet<String>,
    /// The symmetric set for `S2`.
    pub s21: BTreeSet<String>,
    pub q1: Rational,
    pub q2: Rational,
    /// Pr(key in S12 | S1 and correct); `None` when `q1 = 0`.
    pub tau1: Option<Rational>,
    pub tau2: Option<Rational>,
    /// Pr(key in S12 and correct | S1), i.e. `tau1 * q1` but defined even when
    /// `q1 = 0`.
    pub overlap_success1: Rational,
    pub overlap_success2: Rational,
    /// Keys exactly one of whose two ciphertexts is producible by the other space.
    pub partial_overlap_keys: BTreeSet<String>,
}

impl OverlapAnalysis {
    pub fn q(&self, space: Space) -> &Rational {
        match space {
            Space::S1 => &self.q1,
            Space::S2 => &self.q2,
        }
    }

    pub fn tau(&self, space: Space) -> Option<&Rational> {
        match space {
            Space::S1 => self.tau1.as_ref(),
            Space::S2 => self.tau2.as_ref(),
        }
    }

    pub fn overlap_set(&self, space: Space) -> &BTreeSet<String> {
        match space {
            Space::S1 => &self.s12,
            Space::S2 => &self.s21,
        }
    }

    pub fn overlap_success(&self, space: Space) -> &Rational {
        match space {
            Space::S1 => &self.overlap_success1,
            Space::S2 => &self.overlap_success2,
        }
    }

    /// Partial-overlap keys that belong to `space`.
    pub fn partial_in<'a>(
        &'a self,
        scheme: &'a SchemeInstance,
        space: Space,
    ) -> impl Iterator<Item = &'a String> + 'a {
        self.partial_overlap_keys
            .iter()
            .filter(move |k| scheme.space(space).contains_key(*k))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptSuccess {
    /// Pr(ct = T).
    pub mass: Rational,
    /// Pr(K_B = c | ct = T).
    pub p: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReceiverSuccess {
    pub pb: Rational,
    pub per_transcript: BTreeMap<String, TranscriptSuccess>,
}

/// A validated scheme together with the quantities every attack needs.
#[derive(Clone, Debug)]
pub struct Analysis<'a> {
    pub scheme: &'a SchemeInstance,
    pub joint: JointModel,
    /// Bob's private key given the observed public key.
    pub posterior: FiniteDist<String>,
    pub overlap: OverlapAnalysis,
    pub receiver: ReceiverSuccess,
    pub posteriors: BTreeMap<String, FiniteDist<Bit>>,
}

impl<'a> Analysis<'a> {
    pub fn new(scheme: &'a SchemeInstance) -> Result<Self> {
        let joint = scheme.build_joint()?;
        let posterior = scheme.receiver.posterior()?;
        let overlap = overlap_of(scheme, &posterior);
        let receiver = receiver_of(&joint)?;
        let posteriors = posteriors_of(&joint)?;
        Ok(Analysis { scheme, joint, posterior, overlap, receiver, posteriors })
    }

    pub fn pb(&self) -> &Rational {
        &self.receiver.pb
    }

    pub fn transcript_mass(&self, ciphertext: &str) -> Rational {
        self.receiver
            .per_transcript
            .get(ciphertext)
            .map(|t| t.mass.clone())
            .unwrap_or_else(Rational::zero)
    }
}

pub fn overlap_analysis(scheme: &SchemeInstance) -> Result<OverlapAnalysis> {
    scheme.ensure_valid()?;
    Ok(overlap_of(scheme, &scheme.receiver.posterior()?))
}

pub fn receiver_success(scheme: &SchemeInstance) -> Result<ReceiverSuccess> {
    receiver_of(&scheme.build_joint()?)
}

pub fn transcript_posteriors(scheme: &SchemeInstance) -> Result<BTreeMap<String, FiniteDist<Bit>>> {
    posteriors_of(&scheme.build_joint()?)
}

fn overlap_of(scheme: &SchemeInstance, posterior: &FiniteDist<String>) -> OverlapAnalysis {
    let mut partial = BTreeSet::new();
    let mut covered_keys = |space: Space| {
        let other = scheme.image(space.other());
        let mut full = BTreeSet::new();
        for key in scheme.space(space).keys() {
            let covered = Bit::BOTH
                .into_iter()
                .filter(|b| scheme.encrypt(key, *b).is_some_and(|ct| other.contains(ct)))
                .count();
            match covered {
                2 => {
                    full.insert(key.clone());
                }
                1 => {
                    partial.insert(key.clone());
                }
                _ => {}
            }
        }
        full
    };
    let s12 = covered_keys(Space::S1);
    let s21 = covered_keys(Space::S2);

    // q and tau are computed within each space, so they stay defined when the
    // space prior gives that space zero mass.
    let stats = |space: Space, overlap: &BTreeSet<String>| {
        let mut q = Rational::zero();
        let mut on_overlap = Rational::zero();
        for (key, w) in scheme.space(space) {
            let s = key_success(scheme, posterior, key) * w;
            if overlap.contains(key) {
                on_overlap += &s;
            }
            q += s;
        }
        let tau = (!q.is_zero()).then(|| &on_overlap / &q);
        (q, tau, on_overlap)
    };
    let (q1, tau1, overlap_success1) = stats(Space::S1, &s12);
    let (q2, tau2, overlap_success2) = stats(Space::S2, &s21);
    OverlapAnalysis {
        s12,
        s21,
        q1,
        q2,
        tau1,
        tau2,
        overlap_success1,
        overlap_success2,
        partial_overlap_keys: partial,
    }
}

fn receiver_of(joint: &JointModel) -> Result<ReceiverSuccess> {
    let pb = joint.prob(|a| a.correct());
    let mut per_transcript = BTreeMap::new();
    for (ct, mass) in joint.transcripts().iter() {
        let given = joint.given_ciphertext(ct)?;
        let p = given.prob(|a| a.correct());
        per_transcript.insert(ct.clone(), TranscriptSuccess { mass: mass.clone(), p });
    }
    Ok(ReceiverSuccess { pb, per_transcript })
}

fn posteriors_of(joint: &JointModel) -> Result<BTreeMap<String, FiniteDist<Bit>>> {
    joint
        .transcripts()
        .support()
        .map(|ct| Ok((ct.clone(), joint.bit_posterior(ct)?)))
        .collect()
}
