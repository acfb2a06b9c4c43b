mod common;

use std::collections::BTreeSet;

use common::{from_bits, rng, to_bits, Table};
use proptest::prelude::*;
use semlattice::lattice::enumerate_concepts_with_limit;
use semlattice::{enumerate_concepts, order_leq, Error};

fn table_strategy() -> impl Strategy<Value = Table> {
    (1usize..=8, 1usize..=8)
        .prop_flat_map(|(n, m)| proptest::collection::vec(proptest::collection::vec(any::<bool>(), m), n))
        .prop_filter_map("needs a nonempty row", |rows| {
            let m = rows[0].len();
            let rows: Vec<Vec<bool>> = rows.into_iter().filter(|r| r.iter().any(|&x| x)).collect();
            (!rows.is_empty()).then_some(Table { m, rows })
        })
}

proptest! {
    #[test]
    fn galois_laws(t in table_strategy(), x in any::<u64>(), y in any::<u64>()) {
        let ctx = t.context();
        let (n, m) = (t.n(), t.m);
        let a1: BTreeSet<usize> = (0..n).filter(|g| x >> g & 1 == 1).collect();
        let a2: BTreeSet<usize> = a1.iter().copied().filter(|g| y >> g & 1 == 1).collect();
        let b1: BTreeSet<usize> = (0..m).filter(|a| y >> a & 1 == 1).collect();

        let i1 = ctx.intent_of(&to_bits(n, &a1));
        let i2 = ctx.intent_of(&to_bits(n, &a2));
        prop_assert_eq!(from_bits(&i1), t.intent(&a1));
        prop_assert!(i1.is_subset(&i2), "antitone");
        let closed = ctx.extent_of(&i1);
        prop_assert!(to_bits(n, &a1).is_subset(&closed), "extensive");
        prop_assert_eq!(ctx.extent_of(&ctx.intent_of(&closed)), closed.clone(), "idempotent");
        prop_assert_eq!(ctx.intent_of(&closed), i1, "triple prime");

        let e1 = ctx.extent_of(&to_bits(m, &b1));
        prop_assert_eq!(from_bits(&e1), t.extent(&b1));
        prop_assert_eq!(ctx.intent_of(&ctx.extent_of(&ctx.intent_of(&e1))), ctx.intent_of(&e1));
        prop_assert_eq!(ctx.closure(&ctx.closure(&to_bits(m, &b1))), ctx.closure(&to_bits(m, &b1)));
    }

    #[test]
    fn lattice_matches_oracle(t in table_strategy()) {
        let ctx = t.context();
        let lat = enumerate_concepts(&ctx).unwrap();
        let got: BTreeSet<(Vec<usize>, Vec<usize>)> =
            lat.concepts().iter().map(|c| (c.extent.to_vec(), c.intent.to_vec())).collect();
        prop_assert_eq!(got.len(), lat.len(), "duplicate concepts");
        prop_assert_eq!(&got, &t.concepts());

        let edges: BTreeSet<(Vec<usize>, Vec<usize>)> = lat
            .edges()
            .iter()
            .map(|&(u, l)| (lat.concept(u).extent.to_vec(), lat.concept(l).extent.to_vec()))
            .collect();
        prop_assert_eq!(edges.len(), lat.edges().len());
        prop_assert_eq!(edges, t.covers());
    }

    #[test]
    fn ideal_and_filter(t in table_strategy(), pick in any::<prop::sample::Index>()) {
        let ctx = t.context();
        let lat = enumerate_concepts(&ctx).unwrap();
        let c = lat.concept(pick.index(lat.len())).clone();
        let ideal = lat.order_ideal(&c).unwrap();
        let filter = lat.order_filter(&c).unwrap();
        for i in 0..lat.len() {
            let d = lat.concept(i);
            prop_assert_eq!(ideal.contains(&i), order_leq(d, &c));
            prop_assert_eq!(filter.contains(&i), order_leq(&c, d));
            if ideal.contains(&i) {
                prop_assert!(c.intent.is_subset(&d.intent));
            }
        }
        let me = lat.index_of(&c).unwrap();
        prop_assert!(ideal.contains(&me) && filter.contains(&me));
        prop_assert!(ideal.contains(&lat.bottom()) && filter.contains(&lat.top()));

        // the field is the bottom intent (all attributes) since bottom is in every ideal
        let field = lat.ideal_filter_field(&ctx, &c).unwrap();
        let mut want = c.intent.clone();
        for &i in ideal.iter().chain(&filter) {
            want.union_with(&lat.concept(i).intent);
        }
        prop_assert_eq!(field.keywords().to_vec(), ctx.attribute_names(&want));
    }

    #[test]
    fn hasse_diagram_shape(t in table_strategy()) {
        let ctx = t.context();
        let lat = enumerate_concepts(&ctx).unwrap();
        prop_assert!(lat.len() <= 1 << t.m.min(t.n()));
        prop_assert_eq!(lat.concept(lat.top()).extent.count(), t.n());
        prop_assert_eq!(lat.concept(lat.bottom()).intent.count(), t.m);
        let ranks = lat.ranks();
        for &(u, l) in lat.edges() {
            prop_assert!(ranks[u] < ranks[l]);
            prop_assert!(order_leq(lat.concept(l), lat.concept(u)));
        }
        for (i, c) in lat.concepts().iter().enumerate() {
            prop_assert_eq!(ctx.extent_of(&c.intent), c.extent.clone());
            prop_assert_eq!(ctx.intent_of(&c.extent), c.intent.clone());
            if i > 0 {
                prop_assert!(lat.concept(i - 1).extent.count() >= c.extent.count());
            }
        }
    }
}

#[test]
fn limit_is_enforced() {
    let mut r = rng(7);
    let t = Table::random(&mut r, 12, 8, 0.5);
    let ctx = t.context();
    let full = enumerate_concepts(&ctx).unwrap().len();
    assert!(enumerate_concepts_with_limit(&ctx, full).is_ok());
    if full > 1 {
        assert!(matches!(
            enumerate_concepts_with_limit(&ctx, full - 1),
            Err(Error::TooManyConcepts { .. })
        ));
    }
}

#[test]
fn contranominal_scale_has_all_subsets() {
    // row g has every attribute except g: 2^k concepts, the worst case
    let k = 10;
    let rows = (0..k).map(|g| (0..k).map(|a| a != g).collect()).collect();
    let ctx = Table { m: k, rows }.context();
    let lat = enumerate_concepts(&ctx).unwrap();
    assert_eq!(lat.len(), 1 << k);
    assert_eq!(lat.edges().len(), k << (k - 1));
}
