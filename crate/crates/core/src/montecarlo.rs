//! Seeded simulation of protocol runs, checked against the exact values.
//!
//! Each trial draws, in order: the space, the key within it, the secret bit,
//! Bob's private key, then Eve's coins as her strategy requires. Weighted
//! draws invert the cumulative integer weights over a common denominator, so
//! the sampled law is exactly the rational model law.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::adversary::{Fallback, Strategy};
use crate::analysis::Analysis;
use crate::error::{Error, Result};
use crate::rational::{rat, to_f64, Fraction, Rational};
use crate::rng::{block_seed, SplitMix64, BLOCK_TRIALS};
use crate::scheme::{Bit, SchemeInstance, Space};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRIALS: u64 = 1_000_000;

pub fn default_confidence() -> Rational {
    rat(999, 1000)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimConfig {
    pub trials: u64,
    pub seed: u64,
    pub strategy: Strategy,
    pub confidence: Rational,
}

impl SimConfig {
    pub fn new(trials: u64, seed: u64, strategy: Strategy) -> Self {
        SimConfig { trials, seed, strategy, confidence: default_confidence() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig(String::from("trials must be at least 1")));
        }
        if !self.confidence.is_positive() || self.confidence >= Rational::one() {
            return Err(Error::InvalidConfig(format!(
                "confidence {} outside (0, 1)",
                Fraction(&self.confidence)
            )));
        }
        Ok(())
    }

    pub fn blocks(&self) -> Range<u64> {
        0..self.trials.div_ceil(BLOCK_TRIALS)
    }
}

/// Hit counts; merging is associative and commutative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SimCounts {
    pub trials: u64,
    pub receiver_hits: u64,
    pub eve_hits: u64,
}

impl SimCounts {
    pub fn merge(self, other: SimCounts) -> SimCounts {
        SimCounts {
            trials: self.trials + other.trials,
            receiver_hits: self.receiver_hits + other.receiver_hits,
            eve_hits: self.eve_hits + other.eve_hits,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimResult {
    pub trials: u64,
    pub empirical_pb: Rational,
    pub empirical_pe: Rational,
    pub exact_pb: Rational,
    pub exact_pe: Rational,
    pub hoeffding_radius: f64,
    pub agrees_with_exact: bool,
}

impl SimResult {
    pub fn from_counts(counts: SimCounts, exact_pb: Rational, exact_pe: Rational, confidence: &Rational) -> Self {
        let n = BigInt::from(counts.trials);
        let empirical_pb = Rational::new(counts.receiver_hits.into(), n.clone());
        let empirical_pe = Rational::new(counts.eve_hits.into(), n);
        let radius = hoeffding_radius(counts.trials, confidence);
        let agrees_with_exact = mc_agreement_check(&exact_pb, &empirical_pb, radius)
            && mc_agreement_check(&exact_pe, &empirical_pe, radius);
        SimResult {
            trials: counts.trials,
            empirical_pb,
            empirical_pe,
            exact_pb,
            exact_pe,
            hoeffding_radius: radius,
            agrees_with_exact,
        }
    }
}

/// `sqrt(ln(2 / (1 - confidence)) / (2 trials))`.
pub fn hoeffding_radius(trials: u64, confidence: &Rational) -> f64 {
    let delta = to_f64(&(Rational::one() - confidence));
    libm::sqrt(libm::log(2.0 / delta) / (2.0 * trials as f64))
}

/// `|empirical - exact| <= radius`.
pub fn mc_agreement_check(exact: &Rational, empirical: &Rational, radius: f64) -> bool {
    to_f64(&(empirical - exact).abs()) <= radius
}

/// Inverse-CDF sampler over integer weights sharing one denominator.
#[derive(Clone, Debug)]
enum Sampler {
    Small { bounds: Vec<u64> },
    Big { bounds: Vec<BigUint> },
}

impl Sampler {
    /// `weights` are non-negative with a positive sum.
    fn new(weights: &[Rational]) -> Sampler {
        let denom = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let mut running = BigInt::zero();
        let bounds: Vec<BigUint> = weights
            .iter()
            .map(|w| {
                running += (w * &denom).to_integer();
                running.to_biguint().expect("non-negative weights")
            })
            .collect();
        match bounds.iter().map(|b| b.to_u64()).collect::<Option<Vec<u64>>>() {
            Some(bounds) => Sampler::Small { bounds },
            None => Sampler::Big { bounds },
        }
    }

    fn sample(&self, rng: &mut SplitMix64) -> usize {
        match self {
            Sampler::Small { bounds } => {
                let u = rng.below(*bounds.last().expect("nonempty"));
                bounds.partition_point(|b| *b <= u)
            }
            Sampler::Big { bounds } => {
                let u = rng.below_big(bounds.last().expect("nonempty"));
                bounds.partition_point(|b| *b <= u)
            }
        }
    }
}

#[derive(Clone, Debug)]
enum EvePlan {
    Assume { engaged: Vec<bool>, fallback: Fallback },
    /// Index 0 of `choice` is "assume S2".
    Mixed { choice: Sampler, engaged_s2: Vec<bool>, engaged_s1: Vec<bool> },
    Bayes { decision: Vec<Option<Bit>> },
    Emulation,
    Triple { pools: Vec<Vec<Bit>> },
}

/// A scheme and strategy compiled into index tables for fast sampling.
#[derive(Clone, Debug)]
pub struct Simulator {
    space: Sampler,
    keys: [(Sampler, Vec<usize>); 2],
    /// Ciphertext index per key and bit.
    encryption: Vec<[usize; 2]>,
    private_keys: Sampler,
    /// Bob's output per private key and ciphertext.
    decryption: Vec<Vec<Bit>>,
    eve: EvePlan,
}

impl Simulator {
    pub fn new(analysis: &Analysis<'_>, strategy: &Strategy) -> Result<Simulator> {
        let scheme: &SchemeInstance = analysis.scheme;
        let cts: Vec<&str> = scheme.reachable_ciphertexts().into_iter().collect();
        let ct_index: BTreeMap<&str, usize> = cts.iter().enumerate().map(|(i, c)| (*c, i)).collect();

        let mut encryption = Vec::new();
        let keys = Space::BOTH.map(|space| {
            let live: Vec<(&String, &Rational)> = scheme.live_keys(space).collect();
            let weights: Vec<Rational> = live.iter().map(|(_, w)| (*w).clone()).collect();
            let indices = live
                .iter()
                .map(|(k, _)| {
                    encryption.push(Bit::BOTH.map(|b| ct_index[scheme.encrypt(k, b).expect("validated")]));
                    encryption.len() - 1
                })
                .collect();
            (Sampler::new(&weights), indices)
        });
        let space = Sampler::new(&Space::BOTH.map(|s| scheme.space_weight(s)));

        let privs: Vec<(&String, &Rational)> = analysis.posterior.iter().collect();
        let private_keys = Sampler::new(&privs.iter().map(|(_, w)| (*w).clone()).collect::<Vec<_>>());
        let decryption = privs
            .iter()
            .map(|(k, _)| {
                cts.iter().map(|ct| scheme.receiver.decrypt(k, ct).expect("validated")).collect()
            })
            .collect();

        let engaged = |space: Space| {
            let image = scheme.image(space);
            cts.iter().map(|ct| image.contains(ct)).collect::<Vec<bool>>()
        };
        let eve = match strategy {
            Strategy::AssumeSpace { space, fallback } => {
                EvePlan::Assume { engaged: engaged(*space), fallback: *fallback }
            }
            Strategy::Mixed { lambda } => {
                analysis.mix_strategies(lambda)?;
                EvePlan::Mixed {
                    choice: Sampler::new(&[lambda.clone(), Rational::one() - lambda]),
                    engaged_s2: engaged(Space::S2),
                    engaged_s1: engaged(Space::S1),
                }
            }
            Strategy::BayesOptimal => EvePlan::Bayes {
                decision: cts
                    .iter()
                    .map(|ct| match analysis.posteriors.get(*ct) {
                        Some(p) => match p.argmax_label() {
                            (_, true) => None,
                            (b, false) => Some(*b),
                        },
                        None => None,
                    })
                    .collect(),
            },
            Strategy::ReceiverEmulation => EvePlan::Emulation,
            Strategy::TripleSampling => {
                let mut pools = alloc::vec![Vec::new(); cts.len()];
                for (atom, _) in analysis.joint.dist().iter().filter(|(a, _)| a.correct()) {
                    pools[ct_index[atom.ciphertext.as_str()]].push(atom.bit);
                }
                EvePlan::Triple { pools }
            }
        };
        Ok(Simulator { space, keys, encryption, private_keys, decryption, eve })
    }

    fn emulate(&self, rng: &mut SplitMix64, ct: usize) -> Bit {
        self.decryption[self.private_keys.sample(rng)][ct]
    }

    fn coin(rng: &mut SplitMix64) -> Bit {
        if rng.coin() {
            Bit::One
        } else {
            Bit::Zero
        }
    }

    fn assume(&self, rng: &mut SplitMix64, engaged: &[bool], fallback: Fallback, ct: usize) -> Option<Bit> {
        if engaged[ct] {
            Some(self.emulate(rng, ct))
        } else {
            match fallback {
                Fallback::Abstain => None,
                Fallback::UniformGuess => Some(Self::coin(rng)),
            }
        }
    }

    /// Runs one trial and reports whether Bob and Eve recovered the bit.
    fn trial(&self, rng: &mut SplitMix64) -> (bool, bool) {
        let (sampler, indices) = &self.keys[self.space.sample(rng)];
        let key = indices[sampler.sample(rng)];
        let bit = Self::coin(rng);
        let ct = self.encryption[key][bit.index()];
        let bob = self.emulate(rng, ct);
        let eve = match &self.eve {
            EvePlan::Assume { engaged, fallback } => self.assume(rng, engaged, *fallback, ct),
            EvePlan::Mixed { choice, engaged_s2, engaged_s1 } => {
                let engaged = if choice.sample(rng) == 0 { engaged_s2 } else { engaged_s1 };
                self.assume(rng, engaged, Fallback::Abstain, ct)
            }
            EvePlan::Bayes { decision } => Some(decision[ct].unwrap_or_else(|| Self::coin(rng))),
            EvePlan::Emulation => Some(self.emulate(rng, ct)),
            EvePlan::Triple { pools } => {
                let pool = &pools[ct];
                Some(if pool.is_empty() {
                    Self::coin(rng)
                } else {
                    pool[rng.below(pool.len() as u64) as usize]
                })
            }
        };
        (bob == bit, eve == Some(bit))
    }

    /// Counts for the given blocks of a `trials`-trial run seeded with `seed`.
    pub fn run_blocks(&self, seed: u64, blocks: Range<u64>, trials: u64) -> SimCounts {
        let mut counts = SimCounts::default();
        for block in blocks {
            let start = block * BLOCK_TRIALS;
            if start >= trials {
                break;
            }
            let n = BLOCK_TRIALS.min(trials - start);
            let mut rng = SplitMix64::new(block_seed(seed, block));
            for _ in 0..n {
                let (bob, eve) = self.trial(&mut rng);
                counts.receiver_hits += u64::from(bob);
                counts.eve_hits += u64::from(eve);
            }
            counts.trials += n;
        }
        counts
    }
}

pub fn simulate_scheme(scheme: &SchemeInstance, cfg: &SimConfig) -> Result<SimResult> {
    cfg.validate()?;
    let analysis = Analysis::new(scheme)?;
    let simulator = Simulator::new(&analysis, &cfg.strategy)?;
    let counts = simulator.run_blocks(cfg.seed, cfg.blocks(), cfg.trials);
    let exact_pe = analysis.run(&cfg.strategy)?.pe;
    Ok(SimResult::from_counts(counts, analysis.pb().clone(), exact_pe, &cfg.confidence))
}
