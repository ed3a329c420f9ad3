//! Classic conditional-probability puzzles, computed by exact enumeration.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::dist::{Event, FiniteDist};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MontyStrategy {
    Stay,
    Switch,
}

/// Win probability for the `doors`-door game: the host opens one door that
/// is neither the prize nor the pick, uniformly among the legal ones, and a
/// switcher moves uniformly to one of the other closed doors.
pub fn monty_hall(doors: u32, strategy: MontyStrategy) -> Result<Rational> {
    if doors < 3 {
        return Err(Error::TooFewDoors(doors));
    }
    let door = FiniteDist::uniform(0..doors)?;
    let setup = door.product(&door);
    let opened = setup.bind(|&(prize, pick)| {
        FiniteDist::uniform((0..doors).filter(|d| *d != prize && *d != pick).map(|d| (prize, pick, d)))
            .expect("at least one legal door")
    });
    let finals = opened.bind(|&(prize, pick, open)| match strategy {
        MontyStrategy::Stay => FiniteDist::point((prize, pick)),
        MontyStrategy::Switch => {
            FiniteDist::uniform((0..doors).filter(|d| *d != pick && *d != open).map(|d| (prize, d)))
                .expect("at least one other closed door")
        }
    });
    Ok(finals.prob(|(prize, chosen)| prize == chosen))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Weekday {
    Monday,
    Tuesday,
    Wednesday,
    Thursday,
    Friday,
    Saturday,
    Sunday,
}

impl Weekday {
    pub const ALL: [Weekday; 7] = [
        Weekday::Monday,
        Weekday::Tuesday,
        Weekday::Wednesday,
        Weekday::Thursday,
        Weekday::Friday,
        Weekday::Saturday,
        Weekday::Sunday,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Weekday::Monday => "monday",
            Weekday::Tuesday => "tuesday",
            Weekday::Wednesday => "wednesday",
            Weekday::Thursday => "thursday",
            Weekday::Friday => "friday",
            Weekday::Saturday => "saturday",
            Weekday::Sunday => "sunday",
        }
    }
}

impl FromStr for Weekday {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Weekday::ALL
            .into_iter()
            .find(|d| d.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown weekday {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sex {
    Girl,
    Boy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Child {
    pub sex: Sex,
    pub day: Weekday,
}

impl Child {
    fn boy_on(&self, day: Weekday) -> bool {
        self.sex == Sex::Boy && self.day == day
    }
}

/// What is known about a two-child family. The question is always whether
/// "the other child" is a boy: the older one for the `Younger*` variants, the
/// second child for the `AtLeastOne*` variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoChildCondition {
    YoungerBoy,
    /// The younger child is a boy and some child is a boy born on `day`.
    YoungerBoyAndBoyBornOn(Weekday),
    AtLeastOneBoy,
    AtLeastOneBoyBornOn(Weekday),
}

impl fmt::Display for TwoChildCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwoChildCondition::YoungerBoy => f.write_str("younger-boy"),
            TwoChildCondition::YoungerBoyAndBoyBornOn(d) => write!(f, "younger-boy-{}", d.name()),
            TwoChildCondition::AtLeastOneBoy => f.write_str("at-least-one-boy"),
            TwoChildCondition::AtLeastOneBoyBornOn(d) => write!(f, "at-least-one-boy-{}", d.name()),
        }
    }
}

impl FromStr for TwoChildCondition {
    type Err = Error;

    /// Accepts `younger-boy`, `at-least-one-boy`, and either followed by
    /// `-<weekday>`.
    fn from_str(s: &str) -> Result<Self> {
        let with_day = |rest: &str| rest.strip_prefix('-').map(Weekday::from_str);
        if let Some(rest) = s.strip_prefix("younger-boy") {
            if rest.is_empty() {
                return Ok(TwoChildCondition::YoungerBoy);
            }
            if let Some(day) = with_day(rest) {
                return Ok(TwoChildCondition::YoungerBoyAndBoyBornOn(day?));
            }
        }
        if let Some(rest) = s.strip_prefix("at-least-one-boy") {
            if rest.is_empty() {
                return Ok(TwoChildCondition::AtLeastOneBoy);
            }
            if let Some(day) = with_day(rest) {
                return Ok(TwoChildCondition::AtLeastOneBoyBornOn(day?));
            }
        }
        Err(Error::InvalidConfig(format!("unknown two-child variant {s:?}")))
    }
}

/// Uniform family space: (older, younger), 196 atoms.
pub fn two_child_families() -> FiniteDist<(Child, Child)> {
    let child = FiniteDist::uniform(
        [Sex::Girl, Sex::Boy]
            .into_iter()
            .flat_map(|sex| Weekday::ALL.into_iter().map(move |day| Child { sex, day })),
    )
    .expect("nonempty");
    child.product(&child)
}

/// Pr(the other child is a boy | condition).
pub fn two_child(cond: TwoChildCondition) -> Result<Rational> {
    use TwoChildCondition::*;
    let families = two_child_families();
    let known = |&(older, younger): &(Child, Child)| match cond {
        YoungerBoy => younger.sex == Sex::Boy,
        YoungerBoyAndBoyBornOn(d) => younger.sex == Sex::Boy && (older.boy_on(d) || younger.boy_on(d)),
        AtLeastOneBoy => older.sex == Sex::Boy || younger.sex == Sex::Boy,
        AtLeastOneBoyBornOn(d) => older.boy_on(d) || younger.boy_on(d),
    };
    let conditioned = families.condition(&Event::from_predicate(&families, known))?;
    let other_is_boy = |&(older, younger): &(Child, Child)| match cond {
        YoungerBoy | YoungerBoyAndBoyBornOn(_) => older.sex == Sex::Boy,
        AtLeastOneBoy | AtLeastOneBoyBornOn(_) => older.sex == Sex::Boy && younger.sex == Sex::Boy,
    };
    Ok(conditioned.prob(other_is_boy))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub name: String,
    pub success_a: u64,
    pub total_a: u64,
    pub success_b: u64,
    pub total_b: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct StratifiedTable {
    pub strata: Vec<Stratum>,
}

impl StratifiedTable {
    pub fn validate(&self) -> Result<()> {
        if self.strata.is_empty() {
            return Err(Error::InvalidTable(String::from("no strata")));
        }
        for s in &self.strata {
            if s.total_a == 0 || s.total_b == 0 {
                return Err(Error::InvalidTable(format!("stratum {} has a zero total", s.name)));
            }
            if s.success_a > s.total_a || s.success_b > s.total_b {
                return Err(Error::InvalidTable(format!("stratum {} has success > total", s.name)));
            }
        }
        Ok(())
    }

    /// Same table with the A and B columns exchanged.
    pub fn swapped(&self) -> StratifiedTable {
        let strata = self
            .strata
            .iter()
            .map(|s| Stratum {
                name: s.name.clone(),
                success_a: s.success_b,
                total_a: s.total_b,
                success_b: s.success_a,
                total_b: s.total_a,
            })
            .collect();
        StratifiedTable { strata }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    FavorsA,
    FavorsB,
    Tie,
}

impl Direction {
    fn compare(rate_a: &Rational, rate_b: &Rational) -> Direction {
        match rate_a.cmp(rate_b) {
            core::cmp::Ordering::Greater => Direction::FavorsA,
            core::cmp::Ordering::Less => Direction::FavorsB,
            core::cmp::Ordering::Equal => Direction::Tie,
        }
    }

    pub fn flip(self) -> Direction {
        match self {
            Direction::FavorsA => Direction::FavorsB,
            Direction::FavorsB => Direction::FavorsA,
            Direction::Tie => Direction::Tie,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::FavorsA => "A",
            Direction::FavorsB => "B",
            Direction::Tie => "tie",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub name: String,
    pub rate_a: Rational,
    pub rate_b: Rational,
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpsonReport {
    pub strata: Vec<Comparison>,
    pub aggregate: Comparison,
    /// Every stratum strictly favors one side and the pooled counts strictly
    /// favor the other.
    pub reversal: bool,
}

fn compare(name: &str, success_a: u64, total_a: u64, success_b: u64, total_b: u64) -> Comparison {
    let rate_a = Rational::new(success_a.into(), total_a.into());
    let rate_b = Rational::new(success_b.into(), total_b.into());
    Comparison { name: String::from(name), direction: Direction::compare(&rate_a, &rate_b), rate_a, rate_b }
}

pub fn simpson_check(table: &StratifiedTable) -> Result<SimpsonReport> {
    table.validate()?;
    let strata: Vec<Comparison> = table
        .strata
        .iter()
        .map(|s| compare(&s.name, s.success_a, s.total_a, s.success_b, s.total_b))
        .collect();
    let sum = |f: fn(&Stratum) -> u64| table.strata.iter().map(f).sum::<u64>();
    let aggregate = compare(
        "aggregate",
        sum(|s| s.success_a),
        sum(|s| s.total_a),
        sum(|s| s.success_b),
        sum(|s| s.total_b),
    );
    let first = strata[0].direction;
    let reversal = first != Direction::Tie
        && strata.iter().all(|c| c.direction == first)
        && aggregate.direction == first.flip();
    Ok(SimpsonReport { strata, aggregate, reversal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use alloc::string::ToString;
    use crate::reference::kidney_stones;

    #[test]
    fn monty() {
        assert_eq!(monty_hall(3, MontyStrategy::Switch).unwrap(), rat(2, 3));
        assert_eq!(monty_hall(3, MontyStrategy::Stay).unwrap(), rat(1, 3));
        for n in 3..9 {
            assert_eq!(monty_hall(n, MontyStrategy::Stay).unwrap(), rat(1, n.into()));
            // (n-1)/n chance the prize is elsewhere, then 1/(n-2) to land on it
            let n = i64::from(n);
            assert_eq!(monty_hall(n as u32, MontyStrategy::Switch).unwrap(), rat(n - 1, n * (n - 2)));
        }
        assert_eq!(monty_hall(2, MontyStrategy::Stay), Err(Error::TooFewDoors(2)));
    }

    #[test]
    fn two_child_values() {
        use TwoChildCondition::*;
        assert_eq!(two_child_families().len(), 196);
        assert_eq!(two_child(YoungerBoy).unwrap(), rat(1, 2));
        assert_eq!(two_child(YoungerBoyAndBoyBornOn(Weekday::Tuesday)).unwrap(), rat(13, 20));
        assert_eq!(two_child(AtLeastOneBoy).unwrap(), rat(1, 3));
        assert_eq!(two_child(AtLeastOneBoyBornOn(Weekday::Tuesday)).unwrap(), rat(13, 27));
    }

    #[test]
    fn day_is_exchangeable() {
        for d in Weekday::ALL {
            assert_eq!(two_child(TwoChildCondition::YoungerBoyAndBoyBornOn(d)).unwrap(), rat(13, 20));
            assert_eq!(two_child(TwoChildCondition::AtLeastOneBoyBornOn(d)).unwrap(), rat(13, 27));
        }
    }

    #[test]
    fn variant_names_round_trip() {
        use TwoChildCondition::*;
        for c in [YoungerBoy, AtLeastOneBoy, YoungerBoyAndBoyBornOn(Weekday::Tuesday), AtLeastOneBoyBornOn(Weekday::Sunday)] {
            assert_eq!(c.to_string().parse::<TwoChildCondition>().unwrap(), c);
        }
        assert!("younger-boy-tuesday".parse::<TwoChildCondition>().is_ok());
        for bad in ["younger-girl", "younger-boy-", "younger-boyx", "at-least-one-boy-funday"] {
            assert!(bad.parse::<TwoChildCondition>().is_err(), "{bad}");
        }
    }

    #[test]
    fn kidney_stones_reverse() {
        let r = simpson_check(&kidney_stones()).unwrap();
        assert!(r.strata.iter().all(|c| c.direction == Direction::FavorsA));
        assert_eq!(r.aggregate.rate_a, rat(273, 350));
        assert_eq!(r.aggregate.rate_b, rat(289, 350));
        assert_eq!(r.aggregate.direction, Direction::FavorsB);
        assert!(r.reversal);

        let swapped = simpson_check(&kidney_stones().swapped()).unwrap();
        assert!(swapped.reversal);
        assert_eq!(swapped.aggregate.direction, Direction::FavorsA);
    }

    #[test]
    fn simpson_degenerate_tables() {
        let single = StratifiedTable { strata: kidney_stones().strata[..1].to_vec() };
        let r = simpson_check(&single).unwrap();
        assert_eq!(r.aggregate.direction, r.strata[0].direction);
        assert!(!r.reversal);

        let s = Stratum { name: "x".into(), success_a: 3, total_a: 5, success_b: 3, total_b: 5 };
        let even = StratifiedTable { strata: alloc::vec![s.clone(), Stratum { name: "y".into(), ..s }] };
        let r = simpson_check(&even).unwrap();
        assert!(r.strata.iter().all(|c| c.direction == Direction::Tie));
        assert_eq!(r.aggregate.direction, Direction::Tie);
        assert!(!r.reversal);
    }

    #[test]
    fn invalid_tables() {
        assert!(simpson_check(&StratifiedTable::default()).is_err());
        let bad = Stratum { name: "x".into(), success_a: 6, total_a: 5, success_b: 0, total_b: 1 };
        assert!(simpson_check(&StratifiedTable { strata: alloc::vec![bad] }).is_err());
        let zero = Stratum { name: "x".into(), success_a: 0, total_a: 0, success_b: 0, total_b: 1 };
        assert!(simpson_check(&StratifiedTable { strata: alloc::vec![zero] }).is_err());
    }
}
