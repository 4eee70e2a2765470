use braidforge::freegroup::*;
use proptest::prelude::*;

fn w(letters: &[Letter], rank: usize) -> Word {
    Word::reduce(letters, rank).unwrap()
}

/// Scan for an adjacent cancelling pair, remove it, repeat.
fn naive_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut v = letters.to_vec();
    loop {
        let pos = v.windows(2).position(|p| p[0] == -p[1]);
        match pos {
            Some(i) => {
                v.drain(i..i + 2);
            }
            None => return v,
        }
    }
}

#[test]
fn reduce_examples() {
    assert_eq!(w(&[1, 2, -2, 3], 3).letters(), &[1, 3]);
    assert!(w(&[], 3).is_empty());
    assert_eq!(naive_reduce(&[1, -1, 1, -1]), Vec::<Letter>::new());
    assert!(w(&[1, -1, 1, -1], 1).is_empty());
    assert_eq!(Word::reduce(&[0], 2), Err(FreeGroupError::Malformed { letter: 0, rank: 2 }));
    assert!(Word::reduce(&[3], 2).is_err());
}

#[test]
fn multiply_invert_examples() {
    assert!(w(&[1], 2).multiply(&w(&[-1], 2)).unwrap().is_empty());
    assert_eq!(w(&[1, 2], 2).invert().letters(), &[-2, -1]);
    assert_eq!(w(&[1, 2], 3).multiply(&w(&[-2, 3], 3)).unwrap().letters(), &[1, 3]);
    assert!(matches!(w(&[1], 2).multiply(&w(&[1], 3)), Err(FreeGroupError::RankMismatch { .. })));
}

#[test]
fn conjugate_and_commutator() {
    let e = Word::identity(3);
    assert_eq!(w(&[1], 3).conjugate(&e).unwrap(), w(&[1], 3));
    assert_eq!(w(&[2], 3).conjugate(&w(&[1], 3)).unwrap().letters(), &[-1, 2, 1]);
    let c = w(&[3], 3).conjugate(&w(&[1], 3)).unwrap();
    assert_eq!(c.conjugate(&w(&[-1], 3)).unwrap(), w(&[3], 3));
    assert!(w(&[1], 2).commutator(&w(&[1], 2)).unwrap().is_empty());
    assert_eq!(w(&[1], 2).commutator(&w(&[2], 2)).unwrap().letters(), &[1, 2, -1, -2]);
    assert!(w(&[1], 2).commutator(&Word::identity(2)).unwrap().is_empty());
}

#[test]
fn apply_and_compose() {
    let id = Endomorphism::identity(2);
    let x = w(&[2, 1], 2);
    assert_eq!(id.apply(&x).unwrap(), x);
    // t1 -> t1 t2 t1^-1, t2 -> t1
    let e = Endomorphism::new(vec![w(&[1, 2, -1], 2), w(&[1], 2)]).unwrap();
    // substitute-and-reduce by hand: t1 * t1 t2 t1^-1
    assert_eq!(e.apply(&x).unwrap().letters(), &[1, 1, 2, -1]);
    assert!(e.apply(&Word::identity(2)).unwrap().is_empty());
    assert_eq!(id.compose(&e).unwrap(), e);
    let ee = e.compose(&e).unwrap();
    assert_eq!(ee.image(1).letters(), &[1, 2, 1, -2, -1]);
    assert_eq!(ee.image(2).letters(), &[1, 2, -1]);
    let inv = Endomorphism::new(vec![w(&[2], 2), w(&[-2, 1, 2], 2)]).unwrap();
    assert!(e.compose(&inv).unwrap().is_identity());
    assert!(inv.compose(&e).unwrap().is_identity());
}

#[test]
fn abelianize_examples() {
    assert_eq!(w(&[1, 2, -1], 3).abelianize(), vec![0, 1, 0]);
    assert_eq!(Word::identity(3).abelianize(), vec![0, 0, 0]);
    assert_eq!(w(&[1, 1, -2], 3).abelianize(), vec![2, -1, 0]);
}

#[test]
fn text_format() {
    let x = w(&[3, -3, 2, -1], 3);
    assert_eq!(x.to_string(), "t2 t1^-1");
    assert_eq!(Word::identity(2).to_string(), "1");
    assert_eq!(Word::parse("t2 t1^-1", 3).unwrap(), x);
    assert_eq!(Word::parse("1", 3).unwrap(), Word::identity(3));
    assert!(Word::parse("s2", 3).is_err());
    assert_eq!("t1 t4".parse::<Word>().unwrap().rank(), 4);
}

#[test]
fn conjugate_of_letter_split() {
    let x = w(&[1, 2, -3, 2, 3, -2, -1], 3);
    let (u, g) = x.as_conjugate_of_letter().unwrap();
    assert_eq!(u.letters(), &[1, 2, -3]);
    assert_eq!(g, 2);
    assert!(w(&[1, 2], 2).as_conjugate_of_letter().is_none());
}

fn raw_letters(rank: i32) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((1..=rank, any::<bool>()).prop_map(|(i, s)| if s { i } else { -i }), 0..30)
}

fn endo(rank: usize) -> impl Strategy<Value = Endomorphism> {
    prop::collection::vec(raw_letters(rank as i32), rank).prop_map(move |imgs| {
        Endomorphism::new(imgs.iter().map(|l| Word::reduce(l, rank).unwrap()).collect()).unwrap()
    })
}

proptest! {
    #[test]
    fn reduce_is_idempotent_and_matches_naive(raw in raw_letters(4)) {
        let r = Word::reduce(&raw, 4).unwrap();
        prop_assert!(r.len() <= raw.len());
        prop_assert_eq!(Word::reduce(r.letters(), 4).unwrap(), r.clone());
        prop_assert_eq!(r.letters().to_vec(), naive_reduce(&raw));
    }

    #[test]
    fn group_axioms(a in raw_letters(3), b in raw_letters(3), c in raw_letters(3)) {
        let (a, b, c) = (w(&a, 3), w(&b, 3), w(&c, 3));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a * &a.invert()).is_empty());
        prop_assert_eq!(&a * &Word::identity(3), a.clone());
        prop_assert!(a.commutator(&a).unwrap().is_empty());
    }

    #[test]
    fn abelianization_is_additive(a in raw_letters(3), b in raw_letters(3)) {
        let (a, b) = (w(&a, 3), w(&b, 3));
        let sum: Vec<i64> = a.abelianize().iter().zip(b.abelianize()).map(|(x, y)| x + y).collect();
        prop_assert_eq!((&a * &b).abelianize(), sum);
        prop_assert_eq!(a.conjugate(&b).unwrap().abelianize(), a.abelianize());
    }

    #[test]
    fn compose_is_associative_with_unit(x in endo(2), y in endo(2), z in endo(2), u in raw_letters(2)) {
        let id = Endomorphism::identity(2);
        prop_assert_eq!(id.compose(&x).unwrap(), x.clone());
        prop_assert_eq!(x.compose(&id).unwrap(), x.clone());
        let left = x.compose(&y).unwrap().compose(&z).unwrap();
        let right = x.compose(&y.compose(&z).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let u = w(&u, 2);
        prop_assert_eq!(x.compose(&y).unwrap().apply(&u).unwrap(), y.apply(&x.apply(&u).unwrap()).unwrap());
    }

    #[test]
    fn apply_is_a_homomorphism(x in endo(3), a in raw_letters(3), b in raw_letters(3)) {
        let (a, b) = (w(&a, 3), w(&b, 3));
        prop_assert_eq!(x.apply(&(&a * &b)).unwrap(), &x.apply(&a).unwrap() * &x.apply(&b).unwrap());
    }
}
