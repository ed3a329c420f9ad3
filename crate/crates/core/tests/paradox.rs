use twospace_core::paradox::{monty_hall, two_child, MontyStrategy, TwoChildCondition, Weekday};
use twospace_core::rational::rat;
use twospace_core::Rational;

/// Counts atoms of the 14 x 14 (sex, weekday) grid directly.
fn count(known: impl Fn((bool, u8), (bool, u8)) -> bool, query: impl Fn((bool, u8), (bool, u8)) -> bool) -> Rational {
    let mut hits = 0i64;
    let mut total = 0i64;
    for older in 0..14u8 {
        for younger in 0..14u8 {
            let o = (older < 7, older % 7);
            let y = (younger < 7, younger % 7);
            if known(o, y) {
                total += 1;
                hits += i64::from(query(o, y));
            }
        }
    }
    rat(hits, total)
}

#[test]
fn tuesday_boy_by_counting_and_by_bayes() {
    const TUE: u8 = 1;
    let boy_on = |c: (bool, u8)| c.0 && c.1 == TUE;
    let counted = count(|o, y| y.0 && (boy_on(o) || boy_on(y)), |o, _| o.0);
    assert_eq!(counted, rat(13, 20));

    // Bayes: Pr(older boy | younger boy, some Tuesday boy)
    //   = Pr(Tuesday boy | younger boy, older boy) Pr(older boy) / Pr(Tuesday boy | younger boy)
    let p_tue_given_bb = Rational::from_integer(1.into()) - rat(6, 7) * rat(6, 7);
    let p_tue_given_gb = rat(1, 7);
    let prior = rat(1, 2);
    let evidence = &p_tue_given_bb * &prior + &p_tue_given_gb * (rat(1, 1) - &prior);
    let bayes = p_tue_given_bb * prior / evidence;
    assert_eq!(bayes, counted);

    let engine = two_child(TwoChildCondition::YoungerBoyAndBoyBornOn(Weekday::Tuesday)).unwrap();
    assert_eq!(engine, counted);
}

#[test]
fn classic_readings_by_counting() {
    assert_eq!(count(|_, y| y.0, |o, _| o.0), two_child(TwoChildCondition::YoungerBoy).unwrap());
    assert_eq!(count(|o, y| o.0 || y.0, |o, y| o.0 && y.0), two_child(TwoChildCondition::AtLeastOneBoy).unwrap());
    let tue = |c: (bool, u8)| c.0 && c.1 == 1;
    assert_eq!(
        count(|o, y| tue(o) || tue(y), |o, y| o.0 && y.0),
        two_child(TwoChildCondition::AtLeastOneBoyBornOn(Weekday::Tuesday)).unwrap()
    );
}

#[test]
fn three_door_strategies_partition() {
    let stay = monty_hall(3, MontyStrategy::Stay).unwrap();
    let switch = monty_hall(3, MontyStrategy::Switch).unwrap();
    assert_eq!(stay + switch, rat(1, 1));
}
