//! Ideal-theoretic invariants on small random inputs.

use std::sync::Arc;

use proptest::prelude::*;
use rees_lab::polycore::{is_groebner_basis, parse_poly, Ideal, Monomial, Poly, PolyRing};
use rees_lab::FieldSpec;

fn ring() -> Arc<PolyRing> {
    Arc::new(PolyRing::with_y_vars(FieldSpec::default(), &["x", "y", "z"]).unwrap())
}

type Terms = Vec<(u32, [u16; 3])>;

fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec((1u32..32003, [0u16..3, 0u16..3, 0u16..2]), 1..4)
}

fn to_poly(ring: &PolyRing, t: &Terms) -> Poly {
    Poly::from_terms(
        ring,
        t.iter()
            .map(|(c, e)| (Monomial::from_exponents(e), *c))
            .collect(),
    )
}

fn ideal_of(ring: &Arc<PolyRing>, gens: &[Terms]) -> Ideal {
    Ideal::new(ring.clone(), gens.iter().map(|t| to_poly(ring, t)).collect())
}

fn gens() -> impl Strategy<Value = Vec<Terms>> {
    prop::collection::vec(terms(), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn groebner_basis_is_canonical(g in gens(), shift in 0usize..4) {
        let r = ring();
        let i = ideal_of(&r, &g);
        prop_assert!(is_groebner_basis(&r, i.groebner().elements()));
        let mut rotated = g.clone();
        rotated.rotate_left(shift % g.len());
        let j = ideal_of(&r, &rotated);
        prop_assert_eq!(i.reduced().to_strings(), j.reduced().to_strings());
        for p in i.generators() {
            prop_assert!(i.contains(p));
        }
    }

    #[test]
    fn colon_containments(a in gens(), b in gens()) {
        let r = ring();
        let i = ideal_of(&r, &a);
        let j = ideal_of(&r, &b);
        let q = i.quotient(&j).unwrap();
        prop_assert!(i.is_subset_of(&q).unwrap());
        prop_assert!(q.product(&j).unwrap().is_subset_of(&i).unwrap());
    }

    #[test]
    fn saturation_is_idempotent_and_matches_rabinowitsch(a in gens(), f in terms()) {
        let r = ring();
        let i = ideal_of(&r, &a);
        let f = to_poly(&r, &f);
        let j = Ideal::new(r.clone(), vec![f.clone()]);
        let sat = i.saturate(&j).unwrap();
        prop_assert!(sat.saturate(&j).unwrap().equals(&sat).unwrap());
        prop_assert!(sat.equals(&i.saturate_by_element(&f).unwrap()).unwrap());
    }

    #[test]
    fn product_intersection_chain(a in gens(), b in gens()) {
        let r = ring();
        let i = ideal_of(&r, &a);
        let j = ideal_of(&r, &b);
        let meet = i.intersect(&j).unwrap();
        prop_assert!(i.product(&j).unwrap().is_subset_of(&meet).unwrap());
        prop_assert!(meet.is_subset_of(&i).unwrap());
        prop_assert!(meet.is_subset_of(&j).unwrap());
    }

    #[test]
    fn elimination_stays_inside(a in gens()) {
        let r = ring();
        let i = ideal_of(&r, &a);
        let z = r.var_index("z").unwrap();
        let el = i.eliminate(&[z]).unwrap();
        prop_assert_eq!(el.ring().nvars(), 2);
        prop_assert!(el.map_into(r.clone()).unwrap().is_subset_of(&i).unwrap());
    }

    #[test]
    fn parse_format_round_trip(t in terms()) {
        let r = ring();
        let p = to_poly(&r, &t);
        let q = parse_poly(&r, &p.format(&r)).unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn field_inverse(a in 1u32..32003) {
        let f = FieldSpec::default();
        prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
    }
}
