use coverforge_core::abgrp::{pair_character, Character, FgAbGroup, GroupElt, GroupHom};
use coverforge_core::intlin::{hnf, snf, IntMatrix};
use coverforge_core::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
    })
}

/// Invariant factor lists `e_1 | e_2 | …` built from successive multipliers.
fn finite_group() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(1i64..=3, 0..=3).prop_map(|m| {
        let mut out = Vec::new();
        let mut e = 1;
        for k in m {
            e *= k + 1;
            out.push(e);
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn smith_form_invariants(a in matrix(5, 12)) {
        let m = IntMatrix::from_rows(&a);
        let s = snf(&m);
        let uav = s.u.checked_mul(&m).unwrap().checked_mul(&s.v).unwrap();
        prop_assert_eq!(&uav, &s.d);
        prop_assert!(s.u.determinant().unwrap().abs().is_one());
        prop_assert!(s.v.determinant().unwrap().abs().is_one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        // invariant under row and column operations
        let mut b = m.clone();
        if b.rows() > 1 {
            b.add_row_multiple(0, b.rows() - 1, &BigInt::from(3));
        }
        b.swap_cols(0, b.cols() - 1);
        b.negate_col(0);
        prop_assert_eq!(snf(&b).d, s.d);
    }

    #[test]
    fn hermite_form_is_canonical(a in matrix(4, 9)) {
        let m = IntMatrix::from_rows(&a);
        let h = hnf(&m);
        let mut shuffled = m.clone();
        if m.cols() > 1 {
            shuffled.swap_cols(0, m.cols() - 1);
            shuffled.add_col_multiple(0, m.cols() - 1, &BigInt::from(-2));
        }
        shuffled.negate_col(0);
        prop_assert_eq!(hnf(&shuffled), h.clone());
        prop_assert_eq!(hnf(&h), h);
    }

    #[test]
    fn pairing_is_additive(e in finite_group(), seed in any::<u64>()) {
        let g = FgAbGroup::from_invariant_factors_i64(&e, 0).unwrap();
        let elts = g.elements().unwrap();
        let chars = Character::all(&g).unwrap();
        let pick = |k: u64, n: usize| (seed.rotate_left(k as u32) % n as u64) as usize;
        let (a, b) = (&elts[pick(0, elts.len())], &elts[pick(17, elts.len())]);
        let (chi, psi) = (&chars[pick(31, chars.len())], &chars[pick(47, chars.len())]);
        let d = g.exponent().unwrap();
        let m = |x: BigInt| ((x % &d) + &d) % &d;
        let ab = g.add(a, b).unwrap();
        prop_assert_eq!(
            pair_character(&g, chi, &ab).unwrap(),
            m(pair_character(&g, chi, a).unwrap() + pair_character(&g, chi, b).unwrap())
        );
        let sum = chi.add(psi).unwrap();
        prop_assert_eq!(
            pair_character(&g, &sum, a).unwrap(),
            m(pair_character(&g, chi, a).unwrap() + pair_character(&g, psi, a).unwrap())
        );
    }

    #[test]
    fn image_times_kernel_is_source(
        src in finite_group(),
        tgt in finite_group(),
        entries in prop::collection::vec(-6i64..=6, 9),
    ) {
        let a = FgAbGroup::from_invariant_factors_i64(&src, 0).unwrap();
        let b = FgAbGroup::from_invariant_factors_i64(&tgt, 0).unwrap();
        // scale each column so that the generator's order kills its image
        let cols: Vec<Vec<BigInt>> = (0..a.gens())
            .map(|j| {
                let o = BigInt::from(src[j]);
                (0..b.gens())
                    .map(|i| {
                        let t = BigInt::from(tgt[i]);
                        let step = &t / num_integer::Integer::gcd(&t, &o);
                        step * entries[(3 * j + i) % entries.len()]
                    })
                    .collect()
            })
            .collect();
        let matrix = IntMatrix::from_columns(b.gens(), &cols).unwrap();
        let f = GroupHom::new(a.clone(), b, matrix).unwrap();
        let ker = f.kernel().unwrap().source().order().unwrap();
        let im = f.image().unwrap().source().order().unwrap();
        prop_assert_eq!(ker * &im, a.order().unwrap());
        let coker = f.cokernel().unwrap().target().order().unwrap();
        prop_assert_eq!(coker * im, f.target().order().unwrap());
    }

    #[test]
    fn canonical_coordinates_round_trip(e in finite_group(), raw in prop::collection::vec(-50i64..=50, 3)) {
        let g = FgAbGroup::from_invariant_factors_i64(&e, 0).unwrap();
        let x = GroupElt::from_i64(&raw[..g.gens()]);
        let c = g.canonical(&x).unwrap();
        prop_assert!(g.elt_eq(&g.from_canonical(&c).unwrap(), &x).unwrap());
        let o = g.element_order(&x).unwrap().finite().unwrap();
        prop_assert!(g.is_zero(&g.scale(&x, &o).unwrap()).unwrap());
    }
}
