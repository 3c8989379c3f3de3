//! Rank-n lattices in ℚ(α) and the modules `Λ_{α,m} = ℤ[α] ∩ α^{m−1}ℤ[α⁻¹]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use super::hnf::{column_hnf, ColumnHnf};
use crate::exactnum::{
    beta_residue, reduce_bottom, reduce_top_shifted, to_field_vector, FieldVector, LaurentElem, PolynomialSpec,
};

/// Default bound on `|m|` for [`lambda_basis`].
pub const DEFAULT_M_BOUND: i32 = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("index law violated at m = {m}: expected index {expected}, found {found}")]
    IndexLawViolation { m: i32, expected: BigInt, found: BigRational },
    #[error("|m| = {m} exceeds the configured bound {bound}")]
    BoundExceeded { m: i32, bound: i32 },
    #[error("generators span rank {rank} < {dim}")]
    NotFullRank { rank: usize, dim: usize },
    #[error("basis vector {index} of {label} fails its membership test")]
    MembershipViolation { label: String, index: usize },
    #[error("chain did not stabilize within {rounds} rounds")]
    NotStabilized { rounds: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LatticeLabel {
    Lambda(i32),
    ZcapLambda(i32),
    Custom,
}

impl std::fmt::Display for LatticeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LatticeLabel::Lambda(m) => write!(f, "Lambda({m})"),
            LatticeLabel::ZcapLambda(m) => write!(f, "ZcapLambda({m})"),
            LatticeLabel::Custom => f.write_str("custom"),
        }
    }
}

/// A full-rank lattice `(1/denominator)·H·ℤⁿ` with `H` in column Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeHNF {
    pub label: LatticeLabel,
    pub denominator: BigInt,
    /// Columns of `H`.
    pub hnf: Vec<Vec<BigInt>>,
    pub basis: Vec<FieldVector>,
    /// Laurent carriers of the basis vectors (same field elements as `basis`).
    pub carriers: Vec<LaurentElem>,
    /// Set when the lattice comes from a stabilization heuristic.
    pub heuristic: bool,
    echelon: ColumnHnf,
}

impl LatticeHNF {
    /// Lattice spanned by the given elements; carriers are combined alongside.
    pub fn from_generators(
        gens: &[(FieldVector, LaurentElem)],
        dim: usize,
        label: LatticeLabel,
    ) -> Result<Self, LatticeError> {
        let denominator = gens.iter().fold(BigInt::one(), |l, (v, _)| l.lcm(&v.denominator()));
        let int_cols: Vec<Vec<BigInt>> = gens.iter().map(|(v, _)| integer_coords(v, &denominator)).collect();
        let echelon = column_hnf(&int_cols, dim);
        if echelon.rank() != dim {
            return Err(LatticeError::NotFullRank { rank: echelon.rank(), dim });
        }
        let den_q = BigRational::from_integer(denominator.clone());
        let basis = echelon
            .columns
            .iter()
            .map(|c| FieldVector(c.iter().map(|x| BigRational::from_integer(x.clone()) / &den_q).collect()))
            .collect();
        let carriers = echelon.transform[..dim]
            .iter()
            .map(|u| {
                gens.iter()
                    .zip(u)
                    .filter(|(_, c)| !c.is_zero())
                    .fold(LaurentElem::zero(), |acc, ((_, l), c)| &acc + &l.scale(c))
            })
            .collect();
        Ok(LatticeHNF { label, denominator, hnf: echelon.columns.clone(), basis, carriers, heuristic: false, echelon })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Covolume `|det(basis)|` as an exact rational.
    pub fn covolume(&self) -> BigRational {
        let n = self.dim() as u32;
        BigRational::new(self.echelon.pivot_product(), self.denominator.pow(n))
    }

    /// Element with integer coordinates `coords` in this basis, as a Laurent carrier.
    pub fn carrier_of(&self, coords: &[BigInt]) -> LaurentElem {
        self.carriers.iter().zip(coords).fold(LaurentElem::zero(), |acc, (l, c)| &acc + &l.scale(c))
    }

    /// Element with integer coordinates `coords` in this basis.
    pub fn vector_of(&self, coords: &[BigInt]) -> FieldVector {
        let n = self.dim();
        self.basis.iter().zip(coords).fold(FieldVector::zero(n), |acc, (b, c)| &acc + &b.scale_int(c))
    }

    pub fn relabel(mut self, label: LatticeLabel) -> Self {
        self.label = label;
        self
    }

    pub fn contains_lattice(&self, other: &LatticeHNF) -> bool {
        other.basis.iter().all(|b| lattice_membership(b, self).is_some())
    }
}

fn integer_coords(v: &FieldVector, den: &BigInt) -> Vec<BigInt> {
    v.0.iter()
        .map(|c| {
            let scaled = c * BigRational::from_integer(den.clone());
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect()
}

/// Integer coordinates of `x` in the basis of `l`, or `None` if `x ∉ l`.
pub fn lattice_membership(x: &FieldVector, l: &LatticeHNF) -> Option<Vec<BigInt>> {
    let den = BigRational::from_integer(l.denominator.clone());
    let mut ints = Vec::with_capacity(x.dim());
    for c in &x.0 {
        let s = c * &den;
        if !s.is_integer() {
            return None;
        }
        ints.push(s.to_integer());
    }
    l.echelon.solve(&ints)
}

/// Closed-form generators `w_0 = a_n`, `w_i = αw_{i−1} + a_{n−i}` of `Λ_{α,0}`.
pub fn lambda0_generators(spec: &PolynomialSpec) -> Vec<LaurentElem> {
    let n = spec.degree;
    (0..n).map(|i| LaurentElem::from_terms((0..=i).map(|j| (j as i32, spec.coeffs[n - i + j].clone())))).collect()
}

fn check_lambda(l: &LatticeHNF, m: i32, spec: &PolynomialSpec) -> Result<(), LatticeError> {
    for (index, (c, b)) in l.carriers.iter().zip(&l.basis).enumerate() {
        let ok = reduce_bottom(c, spec).is_member()
            && reduce_top_shifted(c, m - 1, spec).is_member()
            && &to_field_vector(c, spec) == b;
        if !ok {
            return Err(LatticeError::MembershipViolation { label: l.label.to_string(), index });
        }
    }
    Ok(())
}

fn check_index(finer: &LatticeHNF, coarser: &LatticeHNF, m: i32, spec: &PolynomialSpec) -> Result<(), LatticeError> {
    let ratio = coarser.covolume() / finer.covolume();
    if ratio != BigRational::from_integer(spec.abs_an.clone()) || !finer.contains_lattice(coarser) {
        return Err(LatticeError::IndexLawViolation { m, expected: spec.abs_an.clone(), found: ratio });
    }
    Ok(())
}

fn with_vectors(carriers: Vec<LaurentElem>, spec: &PolynomialSpec) -> Vec<(FieldVector, LaurentElem)> {
    carriers.into_iter().map(|c| (to_field_vector(&c, spec), c)).collect()
}

/// `Λ_{α,m}` for `|m| ≤ DEFAULT_M_BOUND`.
pub fn lambda_basis(spec: &PolynomialSpec, m: i32) -> Result<LatticeHNF, LatticeError> {
    lambda_basis_bounded(spec, m, DEFAULT_M_BOUND)
}

/// `Λ_{α,m}` for `|m| ≤ bound`.
///
/// Starts from the closed form at `m = 0`. Upward steps use `Λ_{j+1} = Λ_j + αΛ_j + ℤα^j`.
/// Downward steps take the kernel of `x ↦ (β-residue of α^{1−j}x) mod |a_n|` on `Λ_j`. Every
/// step re-checks both membership tests on the new basis and the index law
/// `[Λ_{j+1} : Λ_j] = |a_n|`.
pub fn lambda_basis_bounded(spec: &PolynomialSpec, m: i32, bound: i32) -> Result<LatticeHNF, LatticeError> {
    if m.abs() > bound {
        return Err(LatticeError::BoundExceeded { m, bound });
    }
    let n = spec.degree;
    let mut cur =
        LatticeHNF::from_generators(&with_vectors(lambda0_generators(spec), spec), n, LatticeLabel::Lambda(0))?;
    check_lambda(&cur, 0, spec)?;
    let mut j = 0;
    while j < m {
        let mut gens: Vec<LaurentElem> = cur.carriers.clone();
        gens.extend(cur.carriers.iter().map(|c| c.shift(1)));
        gens.push(LaurentElem::monomial(1, j));
        let next = LatticeHNF::from_generators(&with_vectors(gens, spec), n, LatticeLabel::Lambda(j + 1))?;
        check_lambda(&next, j + 1, spec)?;
        check_index(&next, &cur, j + 1, spec)?;
        cur = next;
        j += 1;
    }
    while j > m {
        let modulus = spec.abs_an.clone();
        // Row [χ(b_1), …, χ(b_n), |a_n|]; its integer kernel projects onto the sublattice.
        let mut row: Vec<Vec<BigInt>> = cur
            .carriers
            .iter()
            .map(|c| {
                let r = beta_residue(&c.shift(1 - j), spec).expect("basis vector lies in α^{j-1}ℤ[α⁻¹]");
                vec![BigInt::from(r)]
            })
            .collect();
        row.push(vec![modulus]);
        let ker = column_hnf(&row, 1);
        let gens: Vec<(FieldVector, LaurentElem)> = ker
            .kernel()
            .iter()
            .map(|z| {
                let coords = &z[..n];
                (cur.vector_of(coords), cur.carrier_of(coords))
            })
            .collect();
        let next = LatticeHNF::from_generators(&gens, n, LatticeLabel::Lambda(j - 1))?;
        check_lambda(&next, j - 1, spec)?;
        check_index(&cur, &next, j, spec)?;
        cur = next;
        j -= 1;
    }
    Ok(cur)
}

/// Lattice intersection `a ∩ b` of two full-rank lattices.
pub fn intersect(a: &LatticeHNF, b: &LatticeHNF, label: LatticeLabel) -> Result<LatticeHNF, LatticeError> {
    intersect_generators(&a.basis.iter().cloned().zip(a.carriers.iter().cloned()).collect::<Vec<_>>(), b, label)
}

/// Intersection of the ℤ-span of `gens` (any rank) with the full-rank lattice `b`.
pub fn intersect_generators(
    gens: &[(FieldVector, LaurentElem)],
    b: &LatticeHNF,
    label: LatticeLabel,
) -> Result<LatticeHNF, LatticeError> {
    let n = b.dim();
    let den = gens.iter().fold(b.denominator.clone(), |l, (v, _)| l.lcm(&v.denominator()));
    // Columns [G | −B]; kernel vectors (z_G, z_B) give G·z_G = B·z_B.
    let mut cols: Vec<Vec<BigInt>> = gens.iter().map(|(v, _)| integer_coords(v, &den)).collect();
    cols.extend(b.basis.iter().map(|v| integer_coords(&(-v), &den)));
    let h = column_hnf(&cols, n);
    let k = gens.len();
    let out: Vec<(FieldVector, LaurentElem)> = h
        .kernel()
        .iter()
        .map(|z| {
            let coords = &z[k..];
            (b.vector_of(coords), b.carrier_of(coords))
        })
        .filter(|(v, _)| !v.is_zero())
        .collect();
    LatticeHNF::from_generators(&out, n, label)
}

impl Serialize for LatticeHNF {
    /// `(denominator, integer matrix)` with the basis as matrix columns.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LatticeHNF", 5)?;
        st.serialize_field("label", &self.label.to_string())?;
        st.serialize_field("denominator", &self.denominator.to_string())?;
        let cols: Vec<Vec<String>> = self.hnf.iter().map(|c| c.iter().map(|x| x.to_string()).collect()).collect();
        st.serialize_field("columns", &cols)?;
        let carriers: Vec<String> = self.carriers.iter().map(|c| c.to_string()).collect();
        st.serialize_field("carriers", &carriers)?;
        st.serialize_field("heuristic", &self.heuristic)?;
        st.end()
    }
}

/// Sign helper used by callers that need `sgn(a_0)`.
pub fn sign_a0(spec: &PolynomialSpec) -> BigInt {
    spec.a0().signum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::validate_spec_i64;

    fn fv(spec: &PolynomialSpec, s: &str) -> FieldVector {
        to_field_vector(&s.parse().unwrap(), spec)
    }

    #[test]
    fn worked_example_bases() {
        let ex1 = validate_spec_i64(&[-3, 2]).unwrap();
        let l = lambda_basis(&ex1, 0).unwrap();
        assert_eq!(l.basis, vec![fv(&ex1, "2")]);
        let ex2 = validate_spec_i64(&[3, 2, 2]).unwrap();
        let l = lambda_basis(&ex2, 0).unwrap();
        let expected = LatticeHNF::from_generators(
            &[(fv(&ex2, "2"), "2".parse().unwrap()), (fv(&ex2, "2*a + 2"), "2*a+2".parse().unwrap())],
            2,
            LatticeLabel::Lambda(0),
        )
        .unwrap();
        assert_eq!(l.hnf, expected.hnf);
        assert_eq!(l.denominator, expected.denominator);
        let s43 = validate_spec_i64(&[-4, 3]).unwrap();
        assert_eq!(lambda_basis(&s43, 1).unwrap().basis, vec![fv(&s43, "1")]);
    }

    #[test]
    fn membership_examples() {
        let ex1 = validate_spec_i64(&[-3, 2]).unwrap();
        let l = lambda_basis(&ex1, 0).unwrap();
        assert_eq!(lattice_membership(&FieldVector::zero(1), &l), Some(vec![BigInt::zero()]));
        assert_eq!(lattice_membership(&fv(&ex1, "3"), &l), None);
        let ex2 = validate_spec_i64(&[3, 2, 2]).unwrap();
        let l = lambda_basis(&ex2, 0).unwrap();
        let c = lattice_membership(&fv(&ex2, "2*a + 2"), &l).unwrap();
        assert_eq!(l.vector_of(&c), fv(&ex2, "2*a + 2"));
    }

    #[test]
    fn bound_is_enforced() {
        let ex1 = validate_spec_i64(&[-3, 2]).unwrap();
        assert!(matches!(lambda_basis(&ex1, 9), Err(LatticeError::BoundExceeded { .. })));
        assert!(lambda_basis_bounded(&ex1, -12, 12).is_ok());
    }
}
