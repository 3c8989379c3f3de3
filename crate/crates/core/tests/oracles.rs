mod common;

use common::*;
use ratile_core::exactnum::to_field_vector;
use ratile_core::exactnum::{compute_embeddings, DEFAULT_TOLERANCE};
use ratile_core::lattice::{lambda0_generators, lambda_basis, lattice_membership};

#[test]
fn reduce_matches_power_span_oracle() {
    for (i, (spec, _)) in examples().iter().enumerate() {
        let a = reduce_oracle(spec, 1000, 100 + i as u64);
        assert!(a.complete(), "{:?}: {a:?}", spec.coeffs);
    }
}

#[test]
fn schur_cohn_matches_root_moduli() {
    let a = schur_cohn_oracle(100, 7, 1e-6);
    assert!(a.complete(), "{a:?}");
}

#[test]
fn embeddings_satisfy_vieta() {
    for (spec, _) in examples() {
        let emb = compute_embeddings(&spec, DEFAULT_TOLERANCE).unwrap();
        let c: Vec<f64> = spec.coeffs.iter().map(|v| v.to_string().parse().unwrap()).collect();
        let n = spec.degree;
        let sum: num_complex::Complex64 = emb.roots.iter().sum();
        let prod: num_complex::Complex64 = emb.roots.iter().product();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        assert!((sum.re + c[n - 1] / c[n]).abs() < 1e-10 && sum.im.abs() < 1e-10);
        assert!((prod.re - sign * c[0] / c[n]).abs() < 1e-10 && prod.im.abs() < 1e-10);
        assert_eq!(emb.r_count + 2 * emb.s_count, n);
        assert!(emb.contraction > 1.0);
    }
}

#[test]
fn lattice_membership_matches_enumeration() {
    let a = lattice_oracle_examples(200, 11);
    assert!(a.complete(), "{a:?}");
}

#[test]
fn surrogate_partial_sums_are_exact() {
    for (i, (spec, _)) in examples().iter().enumerate() {
        let a = surrogate_oracle(spec, 1000, 300 + i as u64);
        assert!(a.complete(), "{:?}: {a:?}", spec.coeffs);
    }
}

#[test]
fn set_equation_holds_at_address_level() {
    for (spec, digits) in examples() {
        let a = set_equation_oracle(&spec, &digits, 6);
        assert!(a.complete(), "{:?}: {a:?}", spec.coeffs);
    }
}

#[test]
fn lambda_chain_obeys_index_law() {
    for (spec, digits) in examples() {
        let an = num_rational::BigRational::from_integer(spec.abs_an.clone());
        let alpha = to_field_vector(&"a".parse().unwrap(), &spec);
        for m in digits.m - 2..=digits.m + 2 {
            let lo = lambda_basis(&spec, m).unwrap();
            let hi = lambda_basis(&spec, m + 1).unwrap();
            assert_eq!(lo.covolume(), hi.covolume() * &an, "m = {m}");
            for b in &lo.basis {
                assert!(lattice_membership(&b.mul(&alpha, &spec), &hi).is_some());
            }
            for b in &hi.basis {
                assert!(lattice_membership(&b.scale(&an), &lo).is_some());
            }
        }
        let closed: Vec<_> = lambda0_generators(&spec).iter().map(|g| to_field_vector(g, &spec)).collect();
        let l0 = lambda_basis(&spec, 0).unwrap();
        for g in &closed {
            assert!(lattice_membership(g, &l0).is_some());
        }
        let det = closed_det(&closed);
        assert_eq!(det, l0.covolume());
    }
}

fn closed_det(cols: &[ratile_core::FieldVector]) -> num_rational::BigRational {
    use num_traits::Signed;
    match cols.len() {
        1 => cols[0].0[0].abs(),
        2 => (&cols[0].0[0] * &cols[1].0[1] - &cols[0].0[1] * &cols[1].0[0]).abs(),
        n => panic!("closed-form determinant for degree {n} not needed"),
    }
}
