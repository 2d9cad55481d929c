//! Small hand-checkable instances of every public operation.

use ringsteps::additive::{
    closure, genericity_number, is_coset_independent, thickness, triangularize, ElementSet, Genericity, Thickness,
};
use ringsteps::poly::{
    build_q, build_q_double_prime, build_q_prime, certify_not_in_rh, eisenstein_witness, fg_ideal_witness,
    find_prime_neg_one_mod, in_h, reduce_mod_im, xz_checks, CertificateVerdict, IntPoly,
};
use ringsteps::ring::nilpotent::{nilpotent3_mul, Nilpotent3Element};
use ringsteps::ring::{check_ring_axioms, ExoticRingSpec};
use ringsteps::scenario::canonical_independent_family;
use ringsteps::stepgen::{
    find_ideal_within, half_step_set, min_steps_to_group, product_set, verify_bourgain_system,
    verify_generic_generation_bound, verify_sunital_factorial, BourgainViolation, FactorialVerdict, HalfSteps,
    SideMode,
};
use ringsteps::{Elem, TabulatedRing};

fn set(ring: &TabulatedRing, elems: impl IntoIterator<Item = Elem>) -> ElementSet<'_> {
    ElementSet::from_elems(ring, elems)
}

/// Bit mask of a subset of the ground set of a power set ring.
fn subset(points: &[u32]) -> Elem {
    points.iter().map(|p| 1 << p).sum()
}

fn poly(terms: &[(u64, i64)]) -> IntPoly {
    IntPoly::from_terms(terms.iter().copied())
}

#[test]
fn zq_powers() {
    assert_eq!(TabulatedRing::zq_power(2, 1).unwrap().size(), 2);
    let z22 = TabulatedRing::zq_power(2, 2).unwrap();
    let (a, b) = (z22.encode(&[1, 0]).unwrap(), z22.encode(&[1, 1]).unwrap());
    assert_eq!(z22.mul(a, b), a);
    let z32 = TabulatedRing::zq_power(3, 2).unwrap();
    let rep = check_ring_axioms(&z32);
    assert!(rep.is_ring() && rep.unital());
    assert_eq!((rep.size, rep.characteristic), (9, 3));
}

#[test]
fn power_set_rings() {
    let p1 = TabulatedRing::boolean(1).unwrap();
    assert_eq!(p1.size(), 2);
    let p2 = TabulatedRing::boolean(2).unwrap();
    assert_eq!(p2.add(subset(&[0]), subset(&[0, 1])), subset(&[1]));
    assert_eq!(p2.mul(subset(&[0]), subset(&[0, 1])), subset(&[0]));
    let rep = check_ring_axioms(&p2);
    assert!(rep.is_ring() && rep.commutative && rep.unital() && rep.s_unital());
    assert_eq!(rep.characteristic, 2);
    assert!(check_ring_axioms(&TabulatedRing::boolean(4).unwrap()).is_ring());
}

#[test]
fn polynomial_quotients() {
    let r = TabulatedRing::poly_quotient(2, 3, 1).unwrap();
    assert_eq!(r.size(), 8);
    assert_eq!(r.label(), "Z_2[X]/(X^3 - X)");
    assert_eq!(TabulatedRing::poly_quotient(2, 1, 0).unwrap().size(), 2);
    let r = TabulatedRing::poly_quotient(6, 2, 0).unwrap();
    assert_eq!(r.size(), 36);
    assert!(check_ring_axioms(&r).is_ring());
    let nilpotent = r.elements().any(|x| x != 0 && r.mul(x, x) == 0);
    assert!(nilpotent, "X^2 = 1 over Z_6 makes 3(X + 1) square to zero");
}

#[test]
fn exotic_rings() {
    let r = TabulatedRing::exotic(ExoticRingSpec { a: 1, b: 1 }).unwrap();
    assert_eq!(r.size(), 16);
    let rep = check_ring_axioms(&r);
    assert!(rep.is_ring() && rep.commutative && rep.unital());
    let rep = check_ring_axioms(&TabulatedRing::exotic(ExoticRingSpec { a: 2, b: 2 }).unwrap());
    assert!(rep.is_ring() && rep.commutative && rep.unital());
    assert_eq!(rep.characteristic, 2);
}

#[test]
fn nilpotent_products() {
    let k = 3;
    let x = |i| Nilpotent3Element::generator(i, k).unwrap();
    assert_eq!(nilpotent3_mul(&x(0), &x(1), k).unwrap(), Nilpotent3Element::monomial(0, 1, k).unwrap());
    let x0x1 = nilpotent3_mul(&x(0), &x(1), k).unwrap();
    assert!(nilpotent3_mul(&x0x1, &x(2), k).unwrap().is_zero());
    let s = x(0).add(&x(1));
    let square = Nilpotent3Element::monomial(0, 0, k).unwrap().add(&Nilpotent3Element::monomial(1, 1, k).unwrap());
    assert_eq!(nilpotent3_mul(&s, &s, k).unwrap(), square);
}

#[test]
fn closures_and_sumsets() {
    let z23 = TabulatedRing::zq_power(2, 3).unwrap();
    let v = z23.encode(&[1, 1, 0]).unwrap();
    let h = closure(&z23, &[v]);
    assert_eq!(h.carrier(), &set(&z23, [0, v]));
    assert_eq!(h.index(), 4);

    let z4 = TabulatedRing::zq_power(4, 1).unwrap();
    let h = closure(&z4, &[2]);
    assert_eq!((h.carrier().to_vec(), h.index()), (vec![0, 2], 2));
    assert_eq!(set(&z4, [0, 1]).sum(&set(&z4, [0, 1])), set(&z4, [0, 1, 2]));
    let d = set(&z4, [1, 3]);
    assert_eq!(d.sum(&ElementSet::zero(&z4)), d);

    let p4 = TabulatedRing::boolean(4).unwrap();
    let (a0, a1) = (subset(&[1, 3]), subset(&[2, 3]));
    let h = closure(&p4, &[a0, a1]);
    assert_eq!(h.carrier(), &set(&p4, [0, a0, a1, subset(&[1, 2])]));
    assert_eq!(h.index(), 4);

    let z24 = TabulatedRing::zq_power(2, 4).unwrap();
    let e = |i: usize| {
        let mut digits = [0; 4];
        digits[i] = 1;
        z24.encode(&digits).unwrap()
    };
    let s = set(&z24, [e(0), e(1)]).sumset(&set(&z24, [e(2)])).unwrap();
    assert_eq!(s, set(&z24, [z24.add(e(0), e(2)), z24.add(e(1), e(2))]));
}

#[test]
fn coset_independence() {
    let z22 = TabulatedRing::zq_power(2, 2).unwrap();
    let (a, b) = (z22.encode(&[1, 0]).unwrap(), z22.encode(&[0, 1]).unwrap());
    assert!(is_coset_independent(&closure(&z22, &[a]), &closure(&z22, &[b])).unwrap());
    assert!(!is_coset_independent(&closure(&z22, &[a]), &closure(&z22, &[a])).unwrap());
    let p4 = TabulatedRing::boolean(4).unwrap();
    let h0 = closure(&p4, &[subset(&[1, 3])]);
    let h1 = closure(&p4, &[subset(&[2, 3])]);
    assert!(!is_coset_independent(&h0, &h1).unwrap());
}

#[test]
fn thickness_values() {
    let z6 = TabulatedRing::zq_power(6, 1).unwrap();
    assert_eq!(thickness(&ElementSet::full(&z6), 16), Thickness::Thick(2));
    assert_eq!(thickness(&set(&z6, [0, 2, 4]), 16), Thickness::Thick(3));
    let z2 = TabulatedRing::zq_power(2, 1).unwrap();
    assert_eq!(thickness(&ElementSet::zero(&z2), 16), Thickness::Thick(3));
}

#[test]
fn genericity_values() {
    let z4 = TabulatedRing::zq_power(4, 1).unwrap();
    assert_eq!(genericity_number(&ElementSet::full(&z4), 16).unwrap().exact(), Some(1));
    match genericity_number(&set(&z4, [0, 1]), 16).unwrap() {
        Genericity::Exact { n, translates } => {
            assert_eq!(n, 2);
            assert_eq!(translates, vec![0, 2]);
        }
        other => panic!("{other:?}"),
    }
    let z24 = TabulatedRing::zq_power(2, 4).unwrap();
    let h = closure(&z24, &[z24.encode(&[1, 0, 0, 0]).unwrap(), z24.encode(&[0, 1, 0, 0]).unwrap()]);
    assert_eq!(h.index(), 4);
    assert_eq!(genericity_number(h.carrier(), 16).unwrap().exact(), Some(4));
}

#[test]
fn triangular_bases() {
    let b = triangularize(0, 2, &[vec![2, 0], vec![1, 3]]).unwrap();
    assert_eq!(b.rows, vec![vec![2, 0], vec![1, 3]]);
    assert_eq!(b.index, 6);
    let b = triangularize(2, 3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    assert_eq!(b.index, 1);
    assert!(b.noninvertible().is_empty());
    let b = triangularize(3, 2, &[vec![1, 1]]).unwrap();
    assert_eq!(b.index, 3);
    assert_eq!(b.noninvertible().len(), 1);
}

#[test]
fn product_sets() {
    let z4 = TabulatedRing::zq_power(4, 1).unwrap();
    for mode in [SideMode::LEFT, SideMode::RIGHT, SideMode::TWO_SIDED, SideMode::LEFT_UNIT] {
        assert_eq!(product_set(&ElementSet::zero(&z4), mode), ElementSet::zero(&z4));
    }
    assert_eq!(product_set(&set(&z4, [2]), SideMode::LEFT_UNIT), set(&z4, [0, 2]));
    let p2 = TabulatedRing::boolean(2).unwrap();
    assert_eq!(product_set(&set(&p2, [subset(&[0])]), SideMode::LEFT), set(&p2, [0, subset(&[0])]));
}

#[test]
fn half_steps_and_step_counts() {
    let p4 = TabulatedRing::boolean(4).unwrap();
    let h = closure(&p4, &[subset(&[1, 3]), subset(&[2, 3])]);
    assert_eq!(half_step_set(&h, 0, SideMode::LEFT), h.carrier().clone());
    assert!(half_step_set(&h, 1, SideMode::LEFT).contains(subset(&[1, 2, 3])));
    assert_eq!(min_steps_to_group(&h, SideMode::LEFT, 8).steps, Some(2));

    let z22 = TabulatedRing::zq_power(2, 2).unwrap();
    let diag = closure(&z22, &[z22.encode(&[1, 1]).unwrap()]);
    assert!(half_step_set(&diag, 1, SideMode::LEFT).is_full());

    let p8 = TabulatedRing::boolean(8).unwrap();
    let family = canonical_independent_family(3).unwrap();
    let h3 = closure(&p8, &family.sets);
    assert_eq!(min_steps_to_group(&h3, SideMode::LEFT, 8).steps, Some(3));

    let ideal = closure(&p4, &[subset(&[0])]);
    assert_eq!(min_steps_to_group(&ideal, SideMode::LEFT, 8).steps, Some(1));
}

#[test]
fn ideal_search() {
    let p2 = TabulatedRing::boolean(2).unwrap();
    let whole = find_ideal_within(&ElementSet::full(&p2));
    assert_eq!(whole.min_index, Some(1));
    let r = find_ideal_within(&set(&p2, [0, subset(&[0])]));
    assert_eq!((r.found.unwrap(), r.min_index), (set(&p2, [0, subset(&[0])]), Some(2)));
    let r = find_ideal_within(&set(&p2, [0, subset(&[0, 1])]));
    assert_eq!((r.found.unwrap(), r.min_index), (ElementSet::zero(&p2), Some(4)));
}

#[test]
fn generation_bounds() {
    let z24 = TabulatedRing::zq_power(2, 4).unwrap();
    let h = closure(&z24, &[z24.encode(&[1, 1, 0, 0]).unwrap()]);
    let rep = verify_generic_generation_bound(h.carrier()).unwrap();
    assert_eq!((rep.m, rep.n), (1, h.index() as u32));
    assert!(rep.holds && rep.genericity_exact);

    let z8 = TabulatedRing::zq_power(8, 1).unwrap();
    let rep = verify_generic_generation_bound(&set(&z8, [1, 7])).unwrap();
    assert_eq!((rep.n, rep.subgroup_order), (4, 8));
    assert!(rep.genericity_exact && rep.holds && rep.m <= 3 * rep.n);
}

#[test]
fn factorial_inclusions() {
    let z6 = TabulatedRing::zq_power(6, 1).unwrap();
    match verify_sunital_factorial(&set(&z6, [0, 2, 4]), 16) {
        FactorialVerdict::Checked { thickness, multiplier, holds, .. } => {
            assert_eq!((thickness, multiplier), (3, 0));
            assert!(holds);
        }
        other => panic!("{other:?}"),
    }
    let z5 = TabulatedRing::zq_power(5, 1).unwrap();
    match verify_sunital_factorial(&set(&z5, [0, 1, 4]), 16) {
        FactorialVerdict::Checked { thickness, multiplier, holds, .. } => {
            assert_eq!((thickness, multiplier), (3, 1));
            assert!(holds);
        }
        other => panic!("{other:?}"),
    }
    match verify_sunital_factorial(&ElementSet::full(&z5), 16) {
        FactorialVerdict::Checked { thickness, holds, .. } => assert!(thickness == 2 && holds),
        other => panic!("{other:?}"),
    }
}

#[test]
fn descending_systems() {
    let p3 = TabulatedRing::boolean(3).unwrap();
    let ideal = half_step_set(&closure(&p3, &[subset(&[0])]), 0, SideMode::LEFT);
    let d = ElementSet::full(&p3);
    let rep = verify_bourgain_system(&[ideal.clone(), ideal.clone()], &d, HalfSteps::whole(1), SideMode::LEFT);
    assert!(rep.holds(), "{:?}", rep.violation);
    let z4 = TabulatedRing::zq_power(4, 1).unwrap();
    let lopsided = set(&z4, [0, 1]);
    let rep = verify_bourgain_system(&[lopsided], &ElementSet::full(&z4), HalfSteps::whole(1), SideMode::LEFT);
    assert!(matches!(rep.violation, Some(BourgainViolation::Symmetry { .. })));
}

#[test]
fn parity_subgroup_membership() {
    assert!(in_h(&poly(&[(3, 1), (5, -1)])));
    assert!(!in_h(&poly(&[(2, 1), (4, -1)])));
    assert!(in_h(&poly(&[(7, 2), (4, 1), (6, 1)])));
}

#[test]
fn eisenstein_criterion() {
    assert!(eisenstein_witness(&poly(&[(4, 1), (2, 3), (0, 6)]), 3).unwrap());
    assert!(!eisenstein_witness(&poly(&[(2, 1), (0, 4)]), 2).unwrap());
    assert!(eisenstein_witness(&poly(&[(2, 1), (1, 2), (0, 2)]), 2).unwrap());
}

#[test]
fn witness_polynomials() {
    assert_eq!(build_q(2, 3).unwrap(), poly(&[(4, 1), (2, 3), (0, 6)]));
    assert_eq!(build_q_prime(2).unwrap(), poly(&[(4, 1), (2, -1)]));
    assert_eq!(build_q_double_prime(2).unwrap(), poly(&[(4, 1), (2, -1), (1, 2)]));
    assert_eq!(find_prime_neg_one_mod(2, 1000).unwrap(), 3);
    assert_eq!(find_prime_neg_one_mod(6, 1000).unwrap(), 5);
    assert_eq!(find_prime_neg_one_mod(24, 1000).unwrap(), 23);
}

#[test]
fn reduction_modulo_the_ideal() {
    let q = build_q(2, 3).unwrap();
    let r = reduce_mod_im(&q, 2).unwrap();
    assert!(r.normal.is_zero());
    assert!(r.certifies(&q));
    assert_eq!(reduce_mod_im(&IntPoly::x_pow(4), 2).unwrap().normal, IntPoly::x_pow(2));
    assert!(reduce_mod_im(&IntPoly::constant(2), 2).unwrap().normal.is_zero());
}

#[test]
fn not_in_product_set_certificates() {
    let c = certify_not_in_rh(&build_q(2, 3).unwrap(), Some(3)).unwrap();
    assert_eq!(c.verdict, CertificateVerdict::Certified);
    let c = certify_not_in_rh(&build_q(3, 5).unwrap(), None).unwrap();
    assert_eq!(c.verdict, CertificateVerdict::Certified);
    let c = certify_not_in_rh(&IntPoly::x_pow(2), None).unwrap();
    assert_eq!(c.verdict, CertificateVerdict::Inconclusive);
}

#[test]
fn xz_variant() {
    let two = xz_checks(2).unwrap();
    assert!(two.not_in_rr);
    assert_eq!(two.degree_one_coefficient, "2");
    let three = xz_checks(3).unwrap();
    assert_eq!(three.polynomial, poly(&[(9, 1), (3, -1), (1, 6)]));
    assert_eq!(three.not_in_h, Some(true));
    assert!(xz_checks(5).unwrap().holds());
}

#[test]
fn finitely_generated_witnesses() {
    let r = fg_ideal_witness(1, 2, &[(1, 3)]).unwrap();
    assert_eq!(r.quotient.as_ref().and_then(|q| q.tabulated_size), Some(8));
    let r = fg_ideal_witness(1, 3, &[(0, 2)]).unwrap();
    assert_eq!(r.quotient.as_ref().and_then(|q| q.tabulated_size), Some(9));
    let r = fg_ideal_witness(2, 2, &[(1, 2), (1, 2)]).unwrap();
    assert_eq!(r.generator_count, 3);
    assert!(r.quotient.is_none());
}

#[test]
fn independent_families() {
    assert_eq!(canonical_independent_family(2).unwrap().sets, vec![subset(&[1, 3]), subset(&[2, 3])]);
    assert_eq!(canonical_independent_family(1).unwrap().sets, vec![subset(&[1])]);
    let f = canonical_independent_family(3).unwrap();
    assert_eq!(f.x_size, 8);
    assert!(f.independent());
}
