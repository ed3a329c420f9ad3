//! Eavesdropper strategies and their exact success probabilities.
//!
//! Every strategy is described by Eve's output law on each transcript. Eve's
//! coins are independent of Alice's and Bob's given the transcript, so her
//! per-transcript success is `sum_b Pr(c = b | T) * Pr(Eve says b | T)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::analysis::Analysis;
use crate::error::{Error, Result};
use crate::rational::{half, is_probability, Fraction, Rational};
use crate::scheme::{decryption_split, Bit, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fallback {
    /// Incompatible transcripts count as failures.
    Abstain,
    UniformGuess,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Assume Alice used `space` and emulate Bob on compatible transcripts.
    AssumeSpace { space: Space, fallback: Fallback },
    /// Assume `S2` with probability `lambda`, otherwise `S1`; abstain fallback.
    Mixed { lambda: Rational },
    BayesOptimal,
    ReceiverEmulation,
    TripleSampling,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::AssumeSpace { space: Space::S1, .. } => "assume-s1",
            Strategy::AssumeSpace { space: Space::S2, .. } => "assume-s2",
            Strategy::Mixed { .. } => "mixed",
            Strategy::BayesOptimal => "bayes-optimal",
            Strategy::ReceiverEmulation => "receiver-emulation",
            Strategy::TripleSampling => "triple-sampling",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::AssumeSpace { fallback, .. } => {
                let fb = match fallback {
                    Fallback::Abstain => "abstain",
                    Fallback::UniformGuess => "uniform",
                };
                write!(f, "{} ({fb})", self.name())
            }
            Strategy::Mixed { lambda } => write!(f, "mixed (lambda {})", Fraction(lambda)),
            _ => f.write_str(self.name()),
        }
    }
}

/// Eve's output law on one transcript; the missing mass is abstention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Guess {
    pub zero: Rational,
    pub one: Rational,
}

impl Guess {
    pub fn abstain() -> Self {
        Guess { zero: Rational::zero(), one: Rational::zero() }
    }

    pub fn uniform() -> Self {
        Guess { zero: half(), one: half() }
    }

    pub fn certain(bit: Bit) -> Self {
        let mut g = Guess::abstain();
        *g.get_mut(bit) = Rational::one();
        g
    }

    pub fn from_split(split: [Rational; 2]) -> Self {
        let [zero, one] = split;
        Guess { zero, one }
    }

    pub fn get(&self, bit: Bit) -> &Rational {
        match bit {
            Bit::Zero => &self.zero,
            Bit::One => &self.one,
        }
    }

    fn get_mut(&mut self, bit: Bit) -> &mut Rational {
        match bit {
            Bit::Zero => &mut self.zero,
            Bit::One => &mut self.one,
        }
    }

    /// `weight * self + (1 - weight) * other`.
    pub fn mix(&self, weight: &Rational, other: &Guess) -> Guess {
        let rest = Rational::one() - weight;
        Guess {
            zero: &self.zero * weight + &other.zero * &rest,
            one: &self.one * weight + &other.one * &rest,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostics {
    Assumption {
        engaged: bool,
    },
    Mixed {
        engaged_s1: bool,
        engaged_s2: bool,
    },
    Bayes {
        posterior_zero: Rational,
        tie: bool,
    },
    Emulation {
        /// Pr(K_C = K_B | T).
        sigma: Rational,
        /// Pr(K_B = K_A | T).
        p: Rational,
        /// `sigma p + (1 - sigma)(1 - p)`.
        formula: Rational,
        /// Pr(K_C = K_B and K_B = K_A | T).
        both: Rational,
        /// Whether `both = sigma p` exactly.
        independent: bool,
        gap: Rational,
    },
    Triple {
        zeros: usize,
        ones: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptOutcome {
    pub mass: Rational,
    pub guess: Guess,
    pub eve_correct: Rational,
    pub diagnostics: Diagnostics,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Note {
    /// Keys of the non-assumed space with exactly one ciphertext in the
    /// assumed space's image; the closed form is not an identity then.
    PartialOverlap(Vec<String>),
    PosteriorTie(String),
    IndependenceViolated(String),
    EmptyTriplePool(String),
}

impl fmt::Display for Note {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Note::PartialOverlap(keys) => write!(f, "partial-overlap keys present: {}", keys.join(",")),
            Note::PosteriorTie(ct) => write!(f, "posterior tie at ct={ct}"),
            Note::IndependenceViolated(ct) => write!(f, "independence violated at ct={ct}"),
            Note::EmptyTriplePool(ct) => write!(f, "empty triple pool at ct={ct}"),
        }
    }
}

/// Aggregates that show why the emulation formula has to be applied per
/// transcript.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmulationSummary {
    /// Transcript-averaged sigma.
    pub sigma: Rational,
    /// Global p, which is P_B.
    pub p: Rational,
    /// The formula evaluated at the global sigma and p.
    pub naive_formula: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttackReport {
    pub strategy: Strategy,
    pub pe: Rational,
    pub pb: Rational,
    pub transcripts: BTreeMap<String, TranscriptOutcome>,
    pub formula_prediction: Option<Rational>,
    pub formula_gap: Option<Rational>,
    pub notes: Vec<Note>,
    pub emulation: Option<EmulationSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionCheck {
    pub q1: Rational,
    pub q2: Rational,
    pub tau1: Rational,
    pub pe: Rational,
    pub pb: Rational,
    pub q2_gt_q1: bool,
    pub sum_gt_1: bool,
    pub tau1_lt_1: bool,
    /// `q2 + tau1 q1 > 1`.
    pub engagement_gt_1: bool,
    /// P_E of the assume-`S2`/abstain attack is strictly below P_B.
    pub verdict_pe_lt_pb: bool,
}

impl ConditionCheck {
    pub fn conditions_hold(&self) -> bool {
        self.q2_gt_q1 && self.sum_gt_1 && self.tau1_lt_1
    }
}

struct Step {
    guess: Guess,
    diagnostics: Diagnostics,
    note: Option<Note>,
}

impl<'a> Analysis<'a> {
    fn report(&self, strategy: Strategy, mut step: impl FnMut(&str) -> Step) -> AttackReport {
        let mut pe = Rational::zero();
        let mut notes = Vec::new();
        let mut transcripts = BTreeMap::new();
        for (ct, posterior) in &self.posteriors {
            let Step { guess, diagnostics, note } = step(ct);
            let eve_correct: Rational = posterior.iter().map(|(b, w)| w * guess.get(*b)).sum();
            let mass = self.transcript_mass(ct);
            pe += &mass * &eve_correct;
            notes.extend(note);
            transcripts.insert(ct.clone(), TranscriptOutcome { mass, guess, eve_correct, diagnostics });
        }
        AttackReport {
            strategy,
            pe,
            pb: self.pb().clone(),
            transcripts,
            formula_prediction: None,
            formula_gap: None,
            notes,
            emulation: None,
        }
    }

    fn emulated_guess(&self, ciphertext: &str) -> Guess {
        Guess::from_split(decryption_split(&self.scheme.receiver, &self.posterior, ciphertext))
    }

    fn engaged(&self, space: Space, ciphertext: &str) -> bool {
        self.scheme.image(space).contains(ciphertext)
    }

    /// Closed form for the assume-`space`/abstain attack:
    /// `w(space) q(space) + w(other) tau(other) q(other)`.
    pub fn assumption_formula(&self, space: Space) -> Rational {
        let other = space.other();
        self.scheme.space_weight(space) * self.overlap.q(space)
            + self.scheme.space_weight(other) * self.overlap.overlap_success(other)
    }

    fn partial_note(&self, assumed: Space) -> Option<Note> {
        let keys: Vec<String> = self.overlap.partial_in(self.scheme, assumed.other()).cloned().collect();
        (!keys.is_empty()).then_some(Note::PartialOverlap(keys))
    }

    pub fn attack_space_assumption(&self, space: Space, fallback: Fallback) -> AttackReport {
        let mut report = self.report(Strategy::AssumeSpace { space, fallback }, |ct| {
            let engaged = self.engaged(space, ct);
            let guess = match (engaged, fallback) {
                (true, _) => self.emulated_guess(ct),
                (false, Fallback::Abstain) => Guess::abstain(),
                (false, Fallback::UniformGuess) => Guess::uniform(),
            };
            Step { guess, diagnostics: Diagnostics::Assumption { engaged }, note: None }
        });
        if fallback == Fallback::Abstain {
            let formula = self.assumption_formula(space);
            report.formula_gap = Some((&report.pe - &formula).abs());
            report.formula_prediction = Some(formula);
        }
        report.notes.extend(self.partial_note(space));
        report
    }

    /// Randomizes between the two abstaining assumption attacks.
    pub fn mix_strategies(&self, lambda: &Rational) -> Result<AttackReport> {
        if !is_probability(lambda) {
            return Err(Error::InvalidConfig(format!("lambda {} outside [0, 1]", Fraction(lambda))));
        }
        let mut report = self.report(Strategy::Mixed { lambda: lambda.clone() }, |ct| {
            let engaged_s1 = self.engaged(Space::S1, ct);
            let engaged_s2 = self.engaged(Space::S2, ct);
            let emulated = self.emulated_guess(ct);
            let pick = |engaged: bool| if engaged { emulated.clone() } else { Guess::abstain() };
            let guess = pick(engaged_s2).mix(lambda, &pick(engaged_s1));
            Step { guess, diagnostics: Diagnostics::Mixed { engaged_s1, engaged_s2 }, note: None }
        });
        let formula = lambda * self.assumption_formula(Space::S2)
            + (Rational::one() - lambda) * self.assumption_formula(Space::S1);
        report.formula_gap = Some((&report.pe - &formula).abs());
        report.formula_prediction = Some(formula);
        for space in Space::BOTH {
            report.notes.extend(self.partial_note(space));
        }
        Ok(report)
    }

    /// Outputs the more probable bit given the transcript; exact ties are
    /// broken by a fair coin.
    pub fn attack_bayes_optimal(&self) -> AttackReport {
        self.report(Strategy::BayesOptimal, |ct| {
            let posterior = &self.posteriors[ct];
            let (best, tie) = posterior.argmax_label();
            let guess = if tie { Guess::uniform() } else { Guess::certain(*best) };
            Step {
                guess,
                diagnostics: Diagnostics::Bayes { posterior_zero: posterior.weight(&Bit::Zero), tie },
                note: tie.then(|| Note::PosteriorTie(String::from(ct))),
            }
        })
    }

    /// Eve decrypts with her own draw from Bob's private-key posterior.
    pub fn attack_receiver_emulation(&self) -> AttackReport {
        let mut formula_total = Rational::zero();
        let mut sigma_total = Rational::zero();
        let mut report = self.report(Strategy::ReceiverEmulation, |ct| {
            let split = decryption_split(&self.scheme.receiver, &self.posterior, ct);
            let sigma: Rational = split.iter().map(|r| r * r).sum();
            let p = self.receiver.per_transcript[ct].p.clone();
            let formula = emulation_formula(&sigma, &p);
            let posterior = &self.posteriors[ct];
            let both: Rational = posterior.iter().map(|(b, w)| w * &split[b.index()] * &split[b.index()]).sum();
            let independent = both == &sigma * &p;
            let exact: Rational = posterior.iter().map(|(b, w)| w * &split[b.index()]).sum();
            let gap = (&exact - &formula).abs();
            let mass = self.transcript_mass(ct);
            formula_total += &mass * &formula;
            sigma_total += &mass * &sigma;
            Step {
                guess: Guess::from_split(split),
                diagnostics: Diagnostics::Emulation { sigma, p, formula, both, independent, gap },
                note: (!independent).then(|| Note::IndependenceViolated(String::from(ct))),
            }
        });
        report.formula_gap = Some((&report.pe - &formula_total).abs());
        report.formula_prediction = Some(formula_total);
        let naive_formula = emulation_formula(&sigma_total, self.pb());
        report.emulation = Some(EmulationSummary {
            sigma: sigma_total,
            p: self.pb().clone(),
            naive_formula,
        });
        report
    }

    /// Picks uniformly among distinct consistent (bit, key, private key)
    /// triples on which Bob would be correct, ignoring their model weights.
    pub fn attack_triple_sampling(&self) -> AttackReport {
        let pools = self.triple_pools();
        self.report(Strategy::TripleSampling, |ct| {
            let [zeros, ones] = pools.get(ct).copied().unwrap_or([0, 0]);
            let total = zeros + ones;
            let (guess, note) = if total == 0 {
                (Guess::uniform(), Some(Note::EmptyTriplePool(String::from(ct))))
            } else {
                let frac = |n: usize| Rational::new(n.into(), total.into());
                (Guess { zero: frac(zeros), one: frac(ones) }, None)
            };
            Step { guess, diagnostics: Diagnostics::Triple { zeros, ones }, note }
        })
    }

    /// Number of consistent correct triples per ciphertext, split by bit.
    pub fn triple_pools(&self) -> BTreeMap<String, [usize; 2]> {
        let mut pools: BTreeMap<String, [usize; 2]> = BTreeMap::new();
        // atoms are distinct (space, key, bit, ct, private key) tuples of
        // positive mass; the space is determined by the key
        for (atom, _) in self.joint.dist().iter().filter(|(a, _)| a.correct()) {
            pools.entry(atom.ciphertext.clone()).or_default()[atom.bit.index()] += 1;
        }
        pools
    }

    pub fn run(&self, strategy: &Strategy) -> Result<AttackReport> {
        Ok(match strategy {
            Strategy::AssumeSpace { space, fallback } => self.attack_space_assumption(*space, *fallback),
            Strategy::Mixed { lambda } => self.mix_strategies(lambda)?,
            Strategy::BayesOptimal => self.attack_bayes_optimal(),
            Strategy::ReceiverEmulation => self.attack_receiver_emulation(),
            Strategy::TripleSampling => self.attack_triple_sampling(),
        })
    }

    /// Success of the deterministic ciphertext-only rule `rule`; transcripts
    /// missing from `rule` count as failures.
    pub fn deterministic_rule_success(&self, rule: &BTreeMap<String, Bit>) -> Rational {
        self.posteriors
            .iter()
            .filter_map(|(ct, posterior)| {
                let b = rule.get(ct)?;
                Some(self.transcript_mass(ct) * posterior.weight(b))
            })
            .sum()
    }

    pub fn check_conditions(&self) -> Result<ConditionCheck> {
        let o = &self.overlap;
        let tau1 = o.tau1.clone().ok_or(Error::TauUndefined(Space::S1))?;
        let one = Rational::one();
        let pe = self.attack_space_assumption(Space::S2, Fallback::Abstain).pe;
        let pb = self.pb().clone();
        Ok(ConditionCheck {
            q2_gt_q1: o.q2 > o.q1,
            sum_gt_1: &o.q1 + &o.q2 > one,
            tau1_lt_1: tau1 < one,
            engagement_gt_1: &o.q2 + &tau1 * &o.q1 > one,
            verdict_pe_lt_pb: pe < pb,
            q1: o.q1.clone(),
            q2: o.q2.clone(),
            tau1,
            pe,
            pb,
        })
    }
}

/// `sigma p + (1 - sigma)(1 - p)`.
pub fn emulation_formula(sigma: &Rational, p: &Rational) -> Rational {
    let one = Rational::one();
    sigma * p + (&one - sigma) * (&one - p)
}

/// `(2 sigma - 1)(2 p - 1) / 2 + 1/2`, the centred form of [`emulation_formula`].
pub fn emulation_formula_centred(sigma: &Rational, p: &Rational) -> Rational {
    let one = Rational::one();
    let two = &one + &one;
    (&two * sigma - &one) * (&two * p - &one) * half() + half()
}
