//! Finite probability distributions with exact rational weights.
//!
//! A [`FiniteDist`] stores only labels of positive mass, in the label type's
//! `Ord` order, so two distributions describing the same measure are
//! structurally equal.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use core::fmt::Debug;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteDist<L> {
    weights: BTreeMap<L, Rational>,
}

/// An explicit set of labels, typically obtained by evaluating a predicate
/// over a distribution's support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Event<L>(BTreeSet<L>);

impl<L: Ord + Clone + Debug> Event<L> {
    pub fn from_predicate(dist: &FiniteDist<L>, pred: impl Fn(&L) -> bool) -> Self {
        Event(dist.support().filter(|l| pred(l)).cloned().collect())
    }

    pub fn from_labels(labels: impl IntoIterator<Item = L>) -> Self {
        Event(labels.into_iter().collect())
    }

    pub fn contains(&self, label: &L) -> bool {
        self.0.contains(label)
    }

    pub fn labels(&self) -> impl Iterator<Item = &L> {
        self.0.iter()
    }
}

impl<L: Ord + Clone + Debug> FiniteDist<L> {
    /// Normalizes non-negative weights into a distribution.
    pub fn from_weights(pairs: impl IntoIterator<Item = (L, Rational)>) -> Result<Self> {
        let mut weights = BTreeMap::new();
        let mut total = Rational::zero();
        for (label, w) in pairs {
            if w.is_negative() {
                return Err(Error::NegativeWeight(format!("{label:?}")));
            }
            if weights.contains_key(&label) {
                return Err(Error::DuplicateLabel(format!("{label:?}")));
            }
            total += &w;
            weights.insert(label, w);
        }
        if total.is_zero() {
            return Err(Error::ZeroTotalMass);
        }
        weights.retain(|_, w| !w.is_zero());
        if !total.is_one() {
            for w in weights.values_mut() {
                *w /= &total;
            }
        }
        Ok(FiniteDist { weights })
    }

    /// Sums weights of repeated labels instead of rejecting them.
    fn accumulate(pairs: impl IntoIterator<Item = (L, Rational)>) -> Self {
        let mut weights: BTreeMap<L, Rational> = BTreeMap::new();
        for (label, w) in pairs {
            if w.is_zero() {
                continue;
            }
            *weights.entry(label).or_insert_with(Rational::zero) += w;
        }
        FiniteDist { weights }
    }

    pub fn uniform(labels: impl IntoIterator<Item = L>) -> Result<Self> {
        Self::from_weights(labels.into_iter().map(|l| (l, Rational::one())))
    }

    pub fn point(label: L) -> Self {
        let mut weights = BTreeMap::new();
        weights.insert(label, Rational::one());
        FiniteDist { weights }
    }

    pub fn weight(&self, label: &L) -> Rational {
        self.weights.get(label).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, &Rational)> {
        self.weights.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &L> {
        self.weights.keys()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.weights.values().sum()
    }

    pub fn prob(&self, pred: impl Fn(&L) -> bool) -> Rational {
        self.weights.iter().filter(|(l, _)| pred(l)).map(|(_, w)| w).sum()
    }

    pub fn prob_event(&self, event: &Event<L>) -> Rational {
        self.prob(|l| event.contains(l))
    }

    pub fn expectation(&self, f: impl Fn(&L) -> Rational) -> Rational {
        self.weights.iter().map(|(l, w)| f(l) * w).sum()
    }

    /// Restricts to `event` and renormalizes.
    pub fn condition(&self, event: &Event<L>) -> Result<Self> {
        self.condition_on(|l| event.contains(l))
    }

    pub fn condition_on(&self, pred: impl Fn(&L) -> bool) -> Result<Self> {
        let mass = self.prob(&pred);
        if mass.is_zero() {
            return Err(Error::NullEvent);
        }
        let weights = self
            .weights
            .iter()
            .filter(|(l, _)| pred(l))
            .map(|(l, w)| (l.clone(), w / &mass))
            .collect();
        Ok(FiniteDist { weights })
    }

    /// Independent joint distribution.
    pub fn product<M: Ord + Clone + Debug>(&self, other: &FiniteDist<M>) -> FiniteDist<(L, M)> {
        let weights = self
            .weights
            .iter()
            .flat_map(|(a, wa)| {
                other
                    .weights
                    .iter()
                    .map(move |(b, wb)| ((a.clone(), b.clone()), wa * wb))
            })
            .collect();
        FiniteDist { weights }
    }

    /// Image distribution under `f`; `None` marks a label outside f's domain.
    pub fn pushforward<M: Ord + Clone + Debug>(
        &self,
        f: impl Fn(&L) -> Option<M>,
    ) -> Result<FiniteDist<M>> {
        let mut pairs = alloc::vec::Vec::with_capacity(self.weights.len());
        for (l, w) in &self.weights {
            let image = f(l).ok_or_else(|| Error::UndefinedImage(format!("{l:?}")))?;
            pairs.push((image, w.clone()));
        }
        Ok(FiniteDist::accumulate(pairs))
    }

    /// Pushforward under a total map.
    pub fn map<M: Ord + Clone + Debug>(&self, f: impl Fn(&L) -> M) -> FiniteDist<M> {
        FiniteDist::accumulate(self.weights.iter().map(|(l, w)| (f(l), w.clone())))
    }

    /// Composes with a Markov kernel.
    pub fn bind<M: Ord + Clone + Debug>(&self, k: impl Fn(&L) -> FiniteDist<M>) -> FiniteDist<M> {
        let mut pairs = alloc::vec::Vec::new();
        for (l, w) in &self.weights {
            for (m, wm) in k(l).weights {
                pairs.push((m, wm * w));
            }
        }
        FiniteDist::accumulate(pairs)
    }

    /// Label of maximal weight and whether the maximum is shared. Ties resolve
    /// to the smallest label.
    pub fn argmax_label(&self) -> (&L, bool) {
        let mut best: Option<(&L, &Rational)> = None;
        let mut tie = false;
        for (l, w) in &self.weights {
            match best {
                Some((_, bw)) if w < bw => {}
                Some((_, bw)) if w == bw => tie = true,
                _ => {
                    best = Some((l, w));
                    tie = false;
                }
            }
        }
        let (label, _) = best.expect("distribution has positive total mass");
        (label, tie)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use alloc::vec;

    fn d(pairs: &[(&'static str, i64, i64)]) -> FiniteDist<&'static str> {
        FiniteDist::from_weights(pairs.iter().map(|&(l, n, d)| (l, rat(n, d)))).unwrap()
    }

    #[test]
    fn from_weights_examples() {
        assert_eq!(d(&[("a", 1, 1), ("b", 1, 1)]), d(&[("a", 1, 2), ("b", 1, 2)]));
        let x = d(&[("a", 3, 1), ("b", 1, 1)]);
        assert_eq!(x.weight(&"a"), rat(3, 4));
        assert_eq!(x.weight(&"b"), rat(1, 4));
        assert_eq!(
            FiniteDist::from_weights(vec![("a", rat(0, 1)), ("b", rat(0, 1))]),
            Err(Error::ZeroTotalMass)
        );
        assert!(matches!(
            FiniteDist::from_weights(vec![("a", rat(1, 1)), ("a", rat(1, 1))]),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(
            FiniteDist::from_weights(vec![("a", rat(-1, 1)), ("b", rat(2, 1))]),
            Err(Error::NegativeWeight(_))
        ));
    }

    #[test]
    fn canonical_order_and_zero_drop() {
        let x = d(&[("b", 1, 1), ("a", 1, 1), ("c", 0, 1)]);
        let labels: vec::Vec<_> = x.support().copied().collect();
        assert_eq!(labels, ["a", "b"]);
        assert_eq!(x.weight(&"c"), rat(0, 1));
    }

    #[test]
    fn condition_examples() {
        let kids = FiniteDist::uniform(["GG", "GB", "BG", "BB"]).unwrap();
        // second letter is the younger child
        let younger_boy = Event::from_predicate(&kids, |l| l.ends_with('B'));
        let c = kids.condition(&younger_boy).unwrap();
        assert_eq!(c, FiniteDist::uniform(["GB", "BB"]).unwrap());
        assert_eq!(c.prob_event(&younger_boy), rat(1, 1));

        let full = Event::from_predicate(&kids, |_| true);
        assert_eq!(kids.condition(&full).unwrap(), kids);

        let ab = d(&[("a", 1, 2), ("b", 1, 2)]);
        assert_eq!(ab.condition(&Event::from_labels([])), Err(Error::NullEvent));
    }

    #[test]
    fn product_examples() {
        let bit = FiniteDist::uniform([0u8, 1]).unwrap();
        let pairs = bit.product(&bit);
        assert_eq!(pairs.len(), 4);
        assert!(pairs.iter().all(|(_, w)| *w == rat(1, 4)));

        let xy = d(&[("x", 1, 4), ("y", 3, 4)]);
        let one = FiniteDist::point("a");
        assert_eq!(one.product(&xy).map(|(_, b)| *b), xy);

        let ab = d(&[("a", 1, 3), ("b", 2, 3)]);
        assert_eq!(ab.product(&xy).weight(&("b", "y")), rat(1, 2));
    }

    #[test]
    fn pushforward_examples() {
        let four = FiniteDist::uniform([1u32, 2, 3, 4]).unwrap();
        let parity = four.pushforward(|n| Some(if n % 2 == 0 { "even" } else { "odd" })).unwrap();
        assert_eq!(parity, d(&[("even", 1, 2), ("odd", 1, 2)]));
        assert_eq!(four.pushforward(|n| Some(*n)).unwrap(), four);

        let ab = d(&[("a", 1, 4), ("b", 3, 4)]);
        assert_eq!(ab.pushforward(|_| Some("z")).unwrap(), FiniteDist::point("z"));
        assert!(matches!(
            ab.pushforward(|l| (*l == "a").then_some(1)),
            Err(Error::UndefinedImage(_))
        ));
    }

    #[test]
    fn argmax_examples() {
        let strict = d(&[("0", 2, 3), ("1", 1, 3)]);
        assert_eq!(strict.argmax_label(), (&"0", false));
        let tied = d(&[("1", 1, 2), ("0", 1, 2)]);
        assert_eq!(tied.argmax_label(), (&"0", true));
        assert_eq!(FiniteDist::point("1").argmax_label(), (&"1", false));
        // a later, larger weight clears an earlier tie
        let x = d(&[("a", 1, 4), ("b", 1, 4), ("c", 1, 2)]);
        assert_eq!(x.argmax_label(), (&"c", false));
    }

    #[test]
    fn bind_composes_kernels() {
        let coin = FiniteDist::uniform([0u8, 1]).unwrap();
        let two = coin.bind(|a| coin.map(move |b| a + b));
        assert_eq!(two.weight(&1), rat(1, 2));
        assert_eq!(two.total(), rat(1, 1));
    }
}
