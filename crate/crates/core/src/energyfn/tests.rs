use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::laws::gen;
use crate::{EnergyFunction, ExtValue, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn fin(n: i64, d: i64) -> ExtValue {
    Ext::Finite(q(n, d))
}

fn shift(d: i64) -> EnergyFunction {
    EnergyFunction::shift(q(d, 1))
}

fn alive_from(b: i64) -> Option<Cut<Rational>> {
    Some(Cut::new(q(b, 1), false))
}

/// `x + 1` below 2 and `x + 3` from 2 on, with `⊥` nowhere.
fn stepped() -> EnergyFunction {
    EnergyFunction::new(
        alive_from(0),
        vec![Piece::new(q(0, 1), q(1, 1), q(1, 1)), Piece::new(q(2, 1), q(5, 1), q(1, 1))],
        None,
    )
    .unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn validate_examples() {
    let id = EnergyFunction::new(alive_from(0), vec![Piece::new(q(0, 1), q(0, 1), q(1, 1))], None).unwrap();
    assert_eq!(id, EnergyFunction::identity());

    let shallow = EnergyFunction::new(alive_from(0), vec![Piece::new(q(0, 1), q(0, 1), q(1, 2))], None);
    assert!(matches!(shallow, Err(EnergyFnError::SlopeTooSmall { .. })));

    let dec = EnergyFunction::new(alive_from(1), vec![Piece::new(q(1, 1), q(0, 1), q(1, 1))], None).unwrap();
    assert_eq!(dec, shift(-1));
    assert_eq!(dec.eval(&fin(3, 1)), fin(2, 1));
}

#[test]
fn validate_rejections() {
    let negative = EnergyFunction::new(alive_from(0), vec![Piece::new(q(0, 1), q(-1, 1), q(1, 1))], None);
    assert!(matches!(negative, Err(EnergyFnError::NegativeValue { .. })));

    let drop = EnergyFunction::new(
        alive_from(0),
        vec![Piece::new(q(0, 1), q(3, 1), q(1, 1)), Piece::new(q(1, 1), q(2, 1), q(1, 1))],
        None,
    );
    assert!(matches!(drop, Err(EnergyFnError::NonMonotone { .. })));

    let unordered = EnergyFunction::new(
        alive_from(0),
        vec![Piece::new(q(0, 1), q(0, 1), q(1, 1)), Piece::new(q(2, 1), q(3, 1), q(1, 1)), Piece::new(q(1, 1), q(5, 1), q(1, 1))],
        None,
    );
    assert!(matches!(unordered, Err(EnergyFnError::MalformedPieces(_))));

    let crowded = EnergyFunction::new(
        alive_from(0),
        vec![Piece::new(q(0, 1), q(0, 1), q(1, 1)), Piece::new(q(0, 1), q(1, 1), q(1, 1)), Piece::new(q(0, 1), q(2, 1), q(1, 1))],
        None,
    );
    assert!(matches!(crowded, Err(EnergyFnError::MalformedPieces(_))));

    let detached = EnergyFunction::new(alive_from(1), vec![Piece::new(q(2, 1), q(0, 1), q(1, 1))], None);
    assert!(matches!(detached, Err(EnergyFnError::MalformedPieces(_))));

    let empty = EnergyFunction::new(alive_from(0), vec![], None);
    assert!(matches!(empty, Err(EnergyFnError::MalformedPieces(_))));
}

#[test]
fn eval_examples() {
    assert_eq!(shift(2).eval(&fin(0, 1)), fin(2, 1));
    assert_eq!(shift(-1).eval(&fin(1, 2)), Ext::Bottom);
    assert_eq!(EnergyFunction::bottom().eval(&Ext::Top), Ext::Bottom);
    assert_eq!(shift(-1).eval(&Ext::Top), Ext::Top);
    assert_eq!(shift(2).eval(&Ext::Bottom), Ext::Bottom);
    assert_eq!(EnergyFunction::top().eval(&fin(0, 1)), Ext::Top);
}

#[test]
fn boundary_flags_are_respected() {
    let f = EnergyFunction::new(
        Some(Cut::new(q(1, 1), true)),
        vec![Piece::new(q(1, 1), q(1, 1), q(2, 1))],
        Some(Cut::new(q(3, 1), false)),
    )
    .unwrap();
    assert_eq!(f.eval(&fin(1, 1)), Ext::Bottom);
    assert_eq!(f.eval(&fin(3, 2)), fin(2, 1));
    assert_eq!(f.eval(&fin(3, 1)), fin(5, 1));
    assert_eq!(f.eval(&fin(13, 4)), Ext::Top);
}

#[test]
fn compose_examples() {
    let h = shift(2).compose(&shift(-1));
    assert_eq!(h, shift(1));
    let mut r = rng(3);
    for _ in 0..50 {
        let x = Rational::ratio(rand::Rng::gen_range(&mut r, 0..400), 8);
        let x = Ext::Finite(x);
        assert_eq!(h.eval(&x), shift(-1).eval(&shift(2).eval(&x)));
    }
    let g = stepped();
    assert_eq!(EnergyFunction::identity().compose(&g), g);
    assert!(EnergyFunction::bottom().compose(&g).is_bottom());
    // Passing through a top region lands on the second function's value at top.
    assert_eq!(EnergyFunction::top().compose(&shift(-1)), EnergyFunction::top());
    assert!(EnergyFunction::top().compose(&EnergyFunction::bottom()).is_bottom());
}

#[test]
fn join_examples() {
    let f = stepped();
    assert_eq!(f.join(&f), f);
    assert_eq!(EnergyFunction::identity().join(&shift(-1)), EnergyFunction::identity());
    let g = EnergyFunction::new(alive_from(2), vec![Piece::new(q(2, 1), q(5, 1), q(1, 1))], None).unwrap();
    assert_eq!(shift(1).join(&g), f);
}

#[test]
fn join_can_isolate_a_point() {
    // Dead up to and including 2, then x + 10; joined with the identity.
    let late = EnergyFunction::new(
        Some(Cut::new(q(2, 1), true)),
        vec![Piece::new(q(2, 1), q(12, 1), q(1, 1))],
        None,
    )
    .unwrap();
    let j = late.join(&EnergyFunction::identity());
    assert_eq!(j.eval(&fin(2, 1)), fin(2, 1));
    assert_eq!(j.eval(&fin(9, 4)), fin(49, 4));
    let expected = EnergyFunction::new(
        alive_from(0),
        vec![
            Piece::new(q(0, 1), q(0, 1), q(1, 1)),
            Piece::new(q(2, 1), q(2, 1), q(1, 1)),
            Piece::new(q(2, 1), q(12, 1), q(1, 1)),
        ],
        None,
    )
    .unwrap();
    assert_eq!(j, expected);
    assert_eq!(j.pieces().len(), 3);
    assert_eq!(j.to_string(), "x from 0; 2 at 2; x+10 from 2");
    let text = serde_json::to_string(&j).unwrap();
    assert_eq!(serde_json::from_str::<EnergyFunction>(&text).unwrap(), j);
    // A point value below the left limit is a downward jump.
    let bad = EnergyFunction::new(
        alive_from(0),
        vec![
            Piece::new(q(0, 1), q(0, 1), q(1, 1)),
            Piece::new(q(2, 1), q(1, 1), q(1, 1)),
            Piece::new(q(2, 1), q(12, 1), q(1, 1)),
        ],
        None,
    );
    assert!(matches!(bad, Err(EnergyFnError::NonMonotone { .. })));
}

#[test]
fn star_examples() {
    assert_eq!(shift(-1).star(), EnergyFunction::identity());
    assert_eq!(shift(2).star(), EnergyFunction::top());
    assert_eq!(shift(2).star().eval(&Ext::Bottom), Ext::Bottom);
    assert_eq!(EnergyFunction::bottom().star(), EnergyFunction::identity());
    assert_eq!(EnergyFunction::identity().star(), EnergyFunction::identity());
    // 2x - 2 from 1 on: identity up to and including the fixed point 2.
    let doubling =
        EnergyFunction::new(alive_from(1), vec![Piece::new(q(1, 1), q(0, 1), q(2, 1))], None).unwrap();
    let expected = EnergyFunction::new(
        alive_from(0),
        vec![Piece::new(q(0, 1), q(0, 1), q(1, 1))],
        Some(Cut::new(q(2, 1), false)),
    )
    .unwrap();
    assert_eq!(doubling.star(), expected);
    assert_eq!(doubling.star_strict_boundary().eval(&fin(2, 1)), Ext::Top);
}

#[test]
fn equal_examples() {
    let split = EnergyFunction::new(
        alive_from(0),
        vec![Piece::new(q(0, 1), q(1, 1), q(1, 1)), Piece::new(q(3, 2), q(5, 2), q(1, 1))],
        None,
    )
    .unwrap();
    assert_eq!(split, shift(1));
    assert_eq!(split.pieces().len(), 1);
    assert_ne!(shift(1), shift(2));
}

#[test]
fn witness_examples() {
    assert_eq!(
        shift(-1).local_finiteness_witness(&fin(5, 1), 64),
        Ok(Witness::Stabilized { n: 0, value: fin(5, 1) })
    );
    assert_eq!(shift(1).local_finiteness_witness(&fin(0, 1), 64), Ok(Witness::Diverges { n: 0 }));
    assert_eq!(
        EnergyFunction::identity().local_finiteness_witness(&fin(3, 1), 64),
        Ok(Witness::Stabilized { n: 0, value: fin(3, 1) })
    );
}

#[test]
fn json_examples() {
    let text = r#"{"bottom":{"boundary":"1","bottom_at_boundary":false},"pieces":[{"start":"1","intercept":"0","slope":"1"}],"top":null}"#;
    let f: EnergyFunction = serde_json::from_str(text).unwrap();
    assert_eq!(f, shift(-1));
    assert_eq!(serde_json::to_string(&f).unwrap(), text);
    let bottom = serde_json::to_string(&EnergyFunction::bottom()).unwrap();
    assert_eq!(bottom, r#"{"bottom":{"boundary":"inf"}}"#);
    assert!(serde_json::from_str::<EnergyFunction>(&bottom).unwrap().is_bottom());
    let shallow = r#"{"bottom":{"boundary":"0"},"pieces":[{"start":"0","intercept":"0","slope":"1/2"}],"top":null}"#;
    assert!(serde_json::from_str::<EnergyFunction>(shallow).unwrap_err().to_string().contains("slope"));
    let degenerate = r#"{"bottom":{"boundary":"0"},"pieces":[],"top":null}"#;
    assert!(serde_json::from_str::<EnergyFunction>(degenerate).is_err());
}

/// Supremum of `h(g^n(z))` over `n` by explicit iteration.
fn orbit_then(g: &EnergyFunction, h: &EnergyFunction, z: &ExtValue) -> ExtValue {
    let mut sup_in = z.clone();
    let mut sup_out = h.eval(z);
    let mut y = z.clone();
    for _ in 0..10_000 {
        let next = g.eval(&y);
        if next <= sup_in {
            return sup_out;
        }
        if matches!(y, Ext::Finite(_)) && next > y {
            return h.eval(&Ext::Top).join(&sup_out);
        }
        sup_in = sup_in.join(&next);
        sup_out = sup_out.join(&h.eval(&next));
        y = next;
    }
    panic!("orbit undecided");
}

fn points(r: &mut ChaCha8Rng, fs: &[&EnergyFunction]) -> Vec<ExtValue> {
    gen::sample_points(r, fs, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn defining_inequality(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f: EnergyFunction = gen::energy_fn(&mut r);
        let pts = points(&mut r, &[&f]);
        for x in &pts {
            for y in &pts {
                if let (Ext::Finite(a), Ext::Finite(b)) = (x, y) {
                    if a < b {
                        let (fx, fy) = (f.eval(x), f.eval(y));
                        if let (Ext::Finite(u), Ext::Finite(v)) = (&fx, &fy) {
                            prop_assert!(v.clone() >= u.clone() + b.clone() - a.clone());
                        }
                        prop_assert!(fx <= fy);
                    }
                }
            }
        }
    }

    #[test]
    fn gain_is_nondecreasing(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f: EnergyFunction = gen::energy_fn(&mut r);
        let gains: Vec<Rational> = points(&mut r, &[&f])
            .iter()
            .filter_map(|x| match (x, f.eval(x)) {
                (Ext::Finite(a), Ext::Finite(v)) => Some(v - a.clone()),
                _ => None,
            })
            .collect();
        prop_assert!(gains.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn top_continuity(seed in any::<u64>(), bound in 0i64..40) {
        let mut r = rng(seed);
        let f: EnergyFunction = gen::alive_fn(&mut r);
        let b = q(bound, 1);
        let last = f.breakpoints().last().cloned().unwrap_or_else(|| q(0, 1));
        let mut x = last;
        let mut reached = false;
        for _ in 0..=(bound + 2) {
            if f.eval(&Ext::Finite(x.clone())) >= Ext::Finite(b.clone()) {
                reached = true;
                break;
            }
            x += q(1, 1);
        }
        prop_assert!(reached);
    }

    #[test]
    fn compose_and_join_are_pointwise(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f: EnergyFunction = gen::energy_fn(&mut r);
        let g: EnergyFunction = gen::energy_fn(&mut r);
        let fg = f.compose(&g);
        let j = f.join(&g);
        let mut pts = points(&mut r, &[&f, &g, &fg]);
        pts.extend(points(&mut r, &[&j]));
        for x in &pts {
            prop_assert_eq!(fg.eval(x), g.eval(&f.eval(x)), "compose at {}", x);
            prop_assert_eq!(j.eval(x), f.eval(x).join(&g.eval(x)), "join at {}", x);
        }
    }

    #[test]
    fn semiring_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f: EnergyFunction = gen::energy_fn(&mut r);
        let g: EnergyFunction = gen::energy_fn(&mut r);
        let h: EnergyFunction = gen::energy_fn(&mut r);
        let zero = EnergyFunction::bottom();
        let one = EnergyFunction::identity();
        prop_assert_eq!(f.join(&g), g.join(&f));
        prop_assert_eq!(f.join(&g).join(&h), f.join(&g.join(&h)));
        prop_assert_eq!(f.join(&f), f.clone());
        prop_assert_eq!(f.join(&zero), f.clone());
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        prop_assert_eq!(one.compose(&f), f.clone());
        prop_assert_eq!(f.compose(&one), f.clone());
        prop_assert_eq!(f.compose(&g.join(&h)), f.compose(&g).join(&f.compose(&h)));
        prop_assert_eq!(g.join(&h).compose(&f), g.compose(&f).join(&h.compose(&f)));
        prop_assert!(zero.compose(&f).is_bottom());
        prop_assert!(f.compose(&zero).is_bottom());
    }

    #[test]
    fn star_unfolds(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f: EnergyFunction = gen::energy_fn(&mut r);
        let s = f.star();
        prop_assert_eq!(EnergyFunction::identity().join(&f.compose(&s)), s.clone());
        prop_assert_eq!(EnergyFunction::identity().join(&s.compose(&f)), s);
    }

    #[test]
    fn star_matches_iteration(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f: EnergyFunction = gen::energy_fn(&mut r);
        let s = f.star();
        for x in points(&mut r, &[&f]) {
            let w = f.local_finiteness_witness(&x, 64).unwrap();
            prop_assert_eq!(s.eval(&x), w.supremum(), "at {}", x);
        }
    }

    #[test]
    fn ax0_in_the_semiring(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f: EnergyFunction = gen::energy_fn(&mut r);
        let g: EnergyFunction = gen::energy_fn(&mut r);
        let h: EnergyFunction = gen::energy_fn(&mut r);
        let lhs = f.compose(&g.star()).compose(&h);
        for x in points(&mut r, &[&f, &g, &h]) {
            prop_assert_eq!(lhs.eval(&x), orbit_then(&g, &h, &f.eval(&x)), "at {}", x);
        }
    }

    #[test]
    fn conway_star_identities(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f: EnergyFunction = gen::energy_fn(&mut r);
        let g: EnergyFunction = gen::energy_fn(&mut r);
        prop_assert_eq!(f.join(&g).star(), f.star().compose(&g).star().compose(&f.star()));
        let rhs = EnergyFunction::identity().join(&f.compose(&g.compose(&f).star()).compose(&g));
        prop_assert_eq!(f.compose(&g).star(), rhs);
    }

    #[test]
    fn json_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f: EnergyFunction = gen::energy_fn(&mut r);
        let text = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<EnergyFunction>(&text).unwrap(), f);
    }
}
