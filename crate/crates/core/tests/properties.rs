use proptest::prelude::*;

use ratcirc::arith;
use ratcirc::gwp::{check_automorphisms, GeneralizedWreathProduct};
use ratcirc::lattice::{sublattices, DivisorLattice};
use ratcirc::oracle;
use ratcirc::perm::{Permutation, PermutationGroup};
use ratcirc::poset::{crested_product, WeightedPoset};
use ratcirc::schur::{RationalSRing, SchurRing};
use ratcirc::zn::ZnSubset;

fn modulus_and_seed() -> impl Strategy<Value = (u64, Vec<u64>)> {
    (1u64..=120).prop_flat_map(|n| {
        let divs = arith::divisors(n).unwrap();
        (Just(n), prop::collection::vec(prop::sample::select(divs), 0..4))
    })
}

fn lattice() -> impl Strategy<Value = DivisorLattice> {
    (2u64..=72).prop_flat_map(|n| prop::sample::select(sublattices(n).unwrap()))
}

fn subset() -> impl Strategy<Value = ZnSubset> {
    (1usize..=24).prop_flat_map(|n| {
        prop::collection::vec(0..n, 0..n).prop_map(move |v| ZnSubset::new(n, v).unwrap())
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

/// Every class of `fine` lies inside one class of `coarse`.
fn refines(fine: &SchurRing, coarse: &SchurRing) -> bool {
    fine.basic_sets()
        .iter()
        .all(|b| b.iter().all(|&x| coarse.class_of(x) == coarse.class_of(b[0])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_idempotent_and_monotone((n, seed) in modulus_and_seed(), extra in any::<prop::sample::Index>()) {
        let l = DivisorLattice::closure(n, seed.clone()).unwrap();
        prop_assert_eq!(DivisorLattice::closure(n, l.elements().to_vec()).unwrap(), l.clone());
        let divs = arith::divisors(n).unwrap();
        let mut bigger = seed;
        bigger.push(divs[extra.index(divs.len())]);
        let l2 = DivisorLattice::closure(n, bigger).unwrap();
        prop_assert!(l.elements().iter().all(|&x| l2.contains(x)));
    }

    #[test]
    fn intervals_are_lattices(l in lattice()) {
        for &m in l.elements() {
            let below = l.below(m).unwrap();
            prop_assert!(DivisorLattice::new(m, below.elements().to_vec()).is_ok());
            let above = l.above(m).unwrap();
            prop_assert!(above.iter().all(|&x| x % m == 0 && l.contains(x)));
            prop_assert!(l.above_quotient(m).is_ok());
        }
        prop_assert!(l.complement_identity_check().unwrap().holds);
    }

    #[test]
    fn rational_rings_from_lattices(l in lattice()) {
        let r = RationalSRing::from_lattice(&l).unwrap();
        prop_assert_eq!(r.ring().rank(), l.len());
        let total: usize = l.elements().iter().map(|&x| r.hat(x).unwrap().len()).sum();
        prop_assert_eq!(total as u64, l.modulus());
        let back = r.ring().group_basis().unwrap();
        prop_assert_eq!(back.lattice(), &l);
    }

    #[test]
    fn trace_generates_a_coarser_ring(s in subset()) {
        let a = SchurRing::generate(&s);
        let b = SchurRing::generate(&s.trace());
        prop_assert!(refines(&a, &b));
        prop_assert_eq!(a == b, s.is_trace_closed());
        prop_assert!(b.is_rational());
    }

    #[test]
    fn structure_constants_transpose(s in subset()) {
        let a = SchurRing::generate(&s);
        let p = a.structure_constants();
        let r = a.rank();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let (ti, tj, tk) = (a.transpose_index(i), a.transpose_index(j), a.transpose_index(k));
                    prop_assert_eq!(p[i][j][k], p[tj][ti][tk]);
                    // Z_n is abelian
                    prop_assert_eq!(p[i][j][k], p[j][i][k]);
                }
                let sizes: u64 = (0..r).map(|k| p[i][j][k] as u64 * a.basic_sets()[k].len() as u64).sum();
                prop_assert_eq!(sizes, (a.basic_sets()[i].len() * a.basic_sets()[j].len()) as u64);
            }
        }
    }

    #[test]
    fn spectrum_agrees_with_rationality(s in subset()) {
        let s = s.without_zero();
        let sp = oracle::spectrum(&s).unwrap();
        prop_assert_eq!(sp.integral, SchurRing::generate(&s).is_rational());
    }

    #[test]
    fn poset_round_trip(l in lattice()) {
        let p = WeightedPoset::from_lattice(&l).unwrap();
        prop_assert_eq!(p.to_lattice().unwrap(), l);
        prop_assert!(p.weak_iso_map().is_bijection());
        let fam = p.ancestral_sets();
        for &a in fam.sets() {
            for &b in fam.sets() {
                prop_assert!(fam.contains(a.union(b)));
                prop_assert!(fam.contains(a.intersection(b)));
            }
        }
    }

    #[test]
    fn transported_generators_are_automorphisms(l in lattice()) {
        let g = GeneralizedWreathProduct::new(WeightedPoset::from_lattice(&l).unwrap());
        let gens = g.transported_generators(256).unwrap();
        let ring = RationalSRing::from_lattice(&l).unwrap();
        prop_assert!(check_automorphisms(&ring, &gens).is_ok());
        let group = PermutationGroup::new(l.modulus() as usize, gens).unwrap();
        prop_assert!(PermutationGroup::cyclic_regular(l.modulus() as usize).is_subgroup_of(&group));
    }

    #[test]
    fn crested_products_are_lattices(a in lattice(), b in lattice(), pick in any::<prop::sample::Index>()) {
        prop_assume!(a.modulus() * b.modulus() <= 1 << 20);
        let d = b.elements()[pick.index(b.len())];
        match crested_product(&a, d, &b) {
            Ok(c) => {
                prop_assert_eq!(c.len(), b.len() + (a.len() - 1) * b.above(d).unwrap().len());
            }
            Err(_) => prop_assert!(arith::gcd(a.modulus(), b.modulus() / d) != 1),
        }
    }

    #[test]
    fn membership_of_words(gens in prop::collection::vec(permutation(7), 1..3), word in prop::collection::vec(any::<prop::sample::Index>(), 0..12)) {
        let g = PermutationGroup::new(7, gens.clone()).unwrap();
        let mut w = Permutation::identity(7);
        for i in word {
            w = w.compose(&gens[i.index(gens.len())]).unwrap();
        }
        prop_assert!(g.contains(&w));
        prop_assert!(g.order().to_u64().unwrap().is_multiple_of(w.order()));
    }
}
