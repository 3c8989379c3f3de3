//! Independent oracles shared by the oracle suites and the acceptance target.
//!
//! Each check returns an [`Agreement`] so callers can either assert or report.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ratile_core::dynamics::{addresses, digits_from_strs, surrogate, surrogate_start, DigitSet, DEFAULT_ADDRESS_LIMIT};
use ratile_core::exactnum::{
    is_expanding, reduce_bottom, reduce_top, to_field_vector, validate_spec_i64, FieldVector, LaurentElem,
    PolynomialSpec,
};
use ratile_core::lattice::{column_hnf, lambda_basis, lattice_membership, LatticeHNF};

/// Outcome of an oracle comparison.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Agreement {
    pub checked: usize,
    pub agreed: usize,
}

impl Agreement {
    pub fn record(&mut self, ok: bool) {
        self.checked += 1;
        if ok {
            self.agreed += 1;
        }
    }

    pub fn merge(self, other: Agreement) -> Agreement {
        Agreement { checked: self.checked + other.checked, agreed: self.agreed + other.agreed }
    }

    pub fn complete(&self) -> bool {
        self.checked > 0 && self.checked == self.agreed
    }
}

/// The three worked examples: α = 3/2, 2X²+2X+3 and α = 4/3.
pub fn examples() -> Vec<(PolynomialSpec, DigitSet)> {
    [
        (vec![-3i64, 2], vec!["0", "1", "2"]),
        (vec![3, 2, 2], vec!["0", "1", "2"]),
        (vec![-4, 3], vec!["0", "1", "2", "a - 1"]),
    ]
    .into_iter()
    .map(|(c, d)| {
        let spec = validate_spec_i64(&c).unwrap();
        let digits = digits_from_strs(&spec, &d).unwrap();
        (spec, digits)
    })
    .collect()
}

pub fn random_laurent(rng: &mut ChaCha8Rng, min_exp: i32, max_exp: i32, max_coeff: i64) -> LaurentElem {
    let terms = rng.gen_range(1..=4);
    LaurentElem::from_terms(
        (0..terms).map(|_| (rng.gen_range(min_exp..=max_exp), BigInt::from(rng.gen_range(-max_coeff..=max_coeff)))),
    )
}

/// The ℤ-span of `α^e` for `e ∈ exps`, as an integer echelon form over a common denominator.
struct PowerSpan {
    denominator: BigInt,
    echelon: ratile_core::lattice::ColumnHnf,
}

impl PowerSpan {
    fn new(spec: &PolynomialSpec, exps: impl Iterator<Item = i32>) -> Self {
        let vecs: Vec<FieldVector> = exps.map(|e| to_field_vector(&LaurentElem::monomial(1, e), spec)).collect();
        let denominator = vecs.iter().fold(BigInt::one(), |l, v| num_integer::lcm(l, v.denominator()));
        let cols: Vec<Vec<BigInt>> = vecs.iter().map(|v| scaled(v, &denominator).unwrap()).collect();
        PowerSpan { echelon: column_hnf(&cols, spec.degree), denominator }
    }

    fn contains(&self, x: &FieldVector) -> bool {
        scaled(x, &self.denominator).is_some_and(|v| self.echelon.solve(&v).is_some())
    }
}

fn scaled(v: &FieldVector, den: &BigInt) -> Option<Vec<BigInt>> {
    let d = BigRational::from_integer(den.clone());
    v.0.iter()
        .map(|c| {
            let s = c * &d;
            s.is_integer().then(|| s.to_integer())
        })
        .collect()
}

/// Oracle degree for representatives of elements with exponents in `[−6, 6]`.
const ORACLE_DEGREE: i32 = 16;

/// `reduce_bottom` and `reduce_top` against spans of `α^0..α^16` and `α^0..α^{−16}`.
pub fn reduce_oracle(spec: &PolynomialSpec, samples: usize, seed: u64) -> Agreement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let up = PowerSpan::new(spec, 0..=ORACLE_DEGREE);
    let down = PowerSpan::new(spec, (0..=ORACLE_DEGREE).map(|e| -e));
    let mut agreement = Agreement::default();
    for _ in 0..samples {
        let x = random_laurent(&mut rng, -6, 6, 9);
        let fx = to_field_vector(&x, spec);
        let bottom = reduce_bottom(&x, spec);
        let ok_bottom = match bottom.rep() {
            Some(r) => up.contains(&fx) && r.min_exp().unwrap_or(0) >= 0 && to_field_vector(r, spec) == fx,
            None => !up.contains(&fx),
        };
        let top = reduce_top(&x, spec);
        let ok_top = match top.rep() {
            Some(r) => down.contains(&fx) && r.max_exp().unwrap_or(0) <= 0 && to_field_vector(r, spec) == fx,
            None => !down.contains(&fx),
        };
        agreement.record(ok_bottom && ok_top);
    }
    agreement
}

/// All roots by Durand–Kerner iteration.
pub fn durand_kerner(coeffs: &[i64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n] as f64;
    let monic: Vec<f64> = coeffs.iter().map(|&c| c as f64 / lead).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c);
    let radius = 1.0 + monic[..n].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32) * radius).collect();
    for _ in 0..2000 {
        let mut shift = 0.0f64;
        for i in 0..n {
            let denom = (0..n).filter(|&j| j != i).fold(Complex64::one(), |acc, j| acc * (roots[i] - roots[j]));
            if denom.norm() == 0.0 {
                roots[i] += Complex64::new(1e-8, 1e-8);
                continue;
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            shift = shift.max(step.norm());
        }
        if shift < 1e-15 {
            break;
        }
    }
    roots
}

/// Schur–Cohn verdicts on random polynomials of degree ≤ 4 against root moduli.
///
/// Polynomials whose smallest root modulus is within `margin` of 1 are skipped.
pub fn schur_cohn_oracle(samples: usize, seed: u64, margin: f64) -> Agreement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agreement = Agreement::default();
    while agreement.checked < samples {
        let n = rng.gen_range(1..=4);
        let mut c: Vec<i64> = (0..=n).map(|_| rng.gen_range(-7..=7)).collect();
        if c[0] == 0 || c[n] == 0 {
            continue;
        }
        if rng.gen_bool(0.5) {
            // Bias towards expanding inputs with a dominant constant term.
            c[0] = c[0].signum() * (c[1..].iter().map(|v| v.abs()).sum::<i64>() + rng.gen_range(0..3)).max(1);
        }
        let roots = durand_kerner(&c);
        let min_mod = roots.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
        if (min_mod - 1.0).abs() < margin {
            continue;
        }
        let big: Vec<BigInt> = c.iter().map(|&v| BigInt::from(v)).collect();
        agreement.record(is_expanding(&big).unwrap() == (min_mod > 1.0));
    }
    agreement
}

/// `lattice_membership` against enumeration of integer combinations with `|c| ≤ 20`.
pub fn lattice_oracle(spec: &PolynomialSpec, lattice: &LatticeHNF, samples: usize, seed: u64) -> Agreement {
    const BOUND: i64 = 20;
    let n = spec.degree;
    assert!(n <= 2, "enumeration oracle is for desk degrees");
    let mut members: HashSet<FieldVector> = HashSet::new();
    let mut coords = vec![-BOUND; n];
    loop {
        let big: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
        members.insert(lattice.vector_of(&big));
        let mut i = 0;
        while i < n && coords[i] == BOUND {
            coords[i] = -BOUND;
            i += 1;
        }
        if i == n {
            break;
        }
        coords[i] += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agreement = Agreement::default();
    for _ in 0..samples {
        let x = if rng.gen_bool(0.5) {
            let c: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-10..=10))).collect();
            lattice.vector_of(&c)
        } else {
            FieldVector(
                (0..n).map(|_| BigRational::new(rng.gen_range(-12..=12).into(), rng.gen_range(1..=4).into())).collect(),
            )
        };
        let ok = match lattice_membership(&x, lattice) {
            Some(c) if c.iter().all(|v| v.abs() <= BigInt::from(BOUND)) => {
                members.contains(&x) && lattice.vector_of(&c) == x
            }
            Some(c) => lattice.vector_of(&c) == x,
            None => !members.contains(&x),
        };
        agreement.record(ok);
    }
    agreement
}

/// Lattice oracle on `Λ_{m−1}, Λ_m, Λ_{m+1}` of every example.
pub fn lattice_oracle_examples(samples: usize, seed: u64) -> Agreement {
    let mut total = Agreement::default();
    for (i, (spec, digits)) in examples().iter().enumerate() {
        for m in digits.m - 1..=digits.m + 1 {
            let l = lambda_basis(spec, m).unwrap();
            total = total.merge(lattice_oracle(spec, &l, samples, seed + 10 * i as u64 + (m + 5) as u64));
        }
    }
    total
}

/// Partial sums of the β-adic expansion: `x − Σ_{i<J} b_i β^{s+i} ∈ β^{s+J}ℤ[β]` for every `J ≤ 32`.
pub fn surrogate_oracle(spec: &PolynomialSpec, samples: usize, seed: u64) -> Agreement {
    const DIGITS: usize = 32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agreement = Agreement::default();
    for _ in 0..samples {
        let x = random_laurent(&mut rng, -6, 6, 9);
        let start = surrogate_start(&x, 0);
        let exp = surrogate(&x, spec, start, DIGITS).unwrap();
        let mut rest = x.clone();
        let mut ok = exp.digits.len() == DIGITS && exp.digits.iter().all(|&b| b < spec.abs_an_u64());
        for j in 0..=DIGITS {
            // β^{s+j}ℤ[β] = α^{−(s+j)}ℤ[α⁻¹].
            ok &= reduce_top(&rest.shift(start + j as i32), spec).is_member();
            if j < DIGITS {
                rest.add_term(-(start + j as i32), -BigInt::from(exp.digits[j]));
            }
        }
        agreement.record(ok);
    }
    agreement
}

fn multiset(values: impl Iterator<Item = FieldVector>) -> BTreeMap<FieldVector, usize> {
    let mut out = BTreeMap::new();
    for v in values {
        *out.entry(v).or_insert(0) += 1;
    }
    out
}

/// Set equation at address level for `k < max_k`, checked as exact multisets.
///
/// Two forms: `α·𝒟_k + 𝒟 = 𝒟_{k+1}` for digit words, and
/// `α·F_{k+1} = ⋃_d (F_k + d)` for the finite tile sums.
pub fn set_equation_oracle(spec: &PolynomialSpec, digits: &DigitSet, max_k: usize) -> Agreement {
    let mut agreement = Agreement::default();
    for k in 0..max_k {
        let words: Vec<_> = addresses(digits, k, DEFAULT_ADDRESS_LIMIT).unwrap().collect();
        let next: Vec<_> = addresses(digits, k + 1, DEFAULT_ADDRESS_LIMIT).unwrap().collect();

        let lhs = multiset(words.iter().flat_map(|w| {
            let aw = w.value(spec, digits).mul_alpha(spec);
            digits.vectors.iter().map(move |d| &aw + d).collect::<Vec<_>>()
        }));
        let rhs = multiset(next.iter().map(|w| w.value(spec, digits)));
        agreement.record(lhs == rhs);

        let scaled = multiset(next.iter().map(|w| w.tile_point(spec, digits).mul_alpha(spec)));
        let union = multiset(words.iter().flat_map(|w| {
            let p = w.tile_point(spec, digits);
            digits.vectors.iter().map(move |d| &p + d).collect::<Vec<_>>()
        }));
        agreement.record(scaled == union);
    }
    agreement
}
