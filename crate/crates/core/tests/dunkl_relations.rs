use std::sync::Arc;

use braided_dunkl::cyclotomic::CycloFieldExt;
use braided_dunkl::dunkl::{dunkl_negative, dunkl_negative_via_dij, q_bracket, NegativeParams};
use braided_dunkl::field::rat;
use braided_dunkl::{CycloField, Operator};

fn anticommute(ops: &[Operator]) -> Option<(usize, usize)> {
    let q = ops[0].qmatrix().clone();
    for i in 0..ops.len() {
        for j in 0..ops.len() {
            if i == j {
                continue;
            }
            let b = q_bracket(&ops[i], &ops[j], q.q(i, j), 1).unwrap();
            if !b.is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

fn params(
    f: &Arc<CycloField>,
    m: u64,
    mp: u64,
    c1p: Option<(i64, i64)>,
) -> NegativeParams<braided_dunkl::Scalar> {
    NegativeParams {
        m,
        mp,
        c1: f.rational(rat(2, 7)),
        c1_prime: c1p.map(|(a, b)| f.rational(rat(a, b))),
        c_prime: (1..mp).map(|k| f.rational(rat(k as i64 + 1, 5))).collect(),
        degenerate: false,
    }
}

#[test]
fn negative_family_anticommutes() {
    for (m, mp, n) in [(2, 1, 3), (4, 2, 3), (6, 3, 2), (4, 4, 2)] {
        let f = CycloField::new(m);
        let (_, ops) = dunkl_negative(&params(&f, m, mp, None), &f.one(), n, 4).unwrap();
        assert_eq!(anticommute(&ops), None, "m={m} m'={mp} n={n}");
    }
}

#[test]
fn rank_two_extra_parameter_anticommutes() {
    for (m, mp) in [(4u64, 1u64), (4, 2), (8, 1), (8, 4)] {
        let f = CycloField::new(m);
        let (_, ops) = dunkl_negative(&params(&f, m, mp, Some((1, 3))), &f.one(), 2, 4).unwrap();
        assert_eq!(anticommute(&ops), None, "m={m}");
    }
}

#[test]
fn extra_parameter_rejected_when_classes_merge() {
    for (m, mp) in [(2u64, 1u64), (2, 2), (6, 3), (4, 4)] {
        let f = CycloField::new(m);
        assert!(dunkl_negative(&params(&f, m, mp, Some((1, 3))), &f.one(), 2, 2).is_err());
    }
    // Splitting the weights anyway leaves a non-polynomial divided difference.
    let f = CycloField::new(2);
    let q = Arc::new(braided_dunkl::qpoly::QMatrix::minus_one(2, &f.one()));
    let w = vec![f.one(), f.rational(rat(1, 3))];
    assert!(braided_dunkl::dunkl::divided_difference_sigma_weighted(&q, 0, 1, 2, &w, 2).is_err());
}

#[test]
fn dij_route_matches() {
    for (m, mp, n) in [(2, 1, 3), (4, 2, 3), (6, 2, 2)] {
        let f = CycloField::new(m);
        let p = params(&f, m, mp, None);
        let (_, a) = dunkl_negative(&p, &f.one(), n, 4).unwrap();
        let (_, b) = dunkl_negative_via_dij(&p, &f.one(), n, 4).unwrap();
        for i in 0..n {
            assert!(
                a[i].sub(&b[i]).unwrap().is_zero(),
                "m={m} i={i}: {:?}",
                a[i].sub(&b[i]).unwrap()
            );
        }
    }
}
