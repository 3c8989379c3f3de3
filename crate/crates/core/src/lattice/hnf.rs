//! Column Hermite normal form over ℤ with a unimodular transform.
//!
//! Matrices are stored as lists of columns.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Column echelon form `G·U = [H | 0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnHnf {
    /// Nonzero columns of `H`. Column `i` vanishes above row `pivots[i]`, has a positive entry
    /// there, and every earlier column is reduced into `[0, pivot)` in that row.
    pub columns: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    /// Columns of `U`; the first `rank` produce `H`, the rest span the integer kernel of `G`.
    pub transform: Vec<Vec<BigInt>>,
}

impl ColumnHnf {
    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    /// Integer kernel of the generator matrix.
    pub fn kernel(&self) -> &[Vec<BigInt>] {
        &self.transform[self.rank()..]
    }

    /// Coordinates `c` with `H·c = v`, if `v` lies in the column lattice.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut rest: Vec<BigInt> = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (col, &p) in self.columns.iter().zip(&self.pivots) {
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[p].div_rem(&col[p]);
            if !r.is_zero() {
                return None;
            }
            for (slot, c) in rest.iter_mut().zip(col) {
                *slot -= &q * c;
            }
            coords.push(q);
        }
        if rest.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    /// Product of the pivots (the covolume of a full-rank integer lattice).
    pub fn pivot_product(&self) -> BigInt {
        self.columns.iter().zip(&self.pivots).map(|(c, &p)| c[p].clone()).product()
    }
}

fn axpy(target: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(src) {
        *t -= q * s;
    }
}

/// Column HNF of the generators `gens` (each of length `rows`).
pub fn column_hnf(gens: &[Vec<BigInt>], rows: usize) -> ColumnHnf {
    let m = gens.len();
    let mut cols: Vec<Vec<BigInt>> = gens.to_vec();
    let mut u: Vec<Vec<BigInt>> =
        (0..m).map(|j| (0..m).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut pivots = Vec::new();
    let mut k = 0;
    for row in 0..rows {
        if k == m {
            break;
        }
        loop {
            let best = (k..m)
                .filter(|&j| !cols[j][row].is_zero())
                .min_by(|&a, &b| cols[a][row].abs().cmp(&cols[b][row].abs()));
            let Some(j) = best else { break };
            cols.swap(k, j);
            u.swap(k, j);
            let mut done = true;
            for j in (k + 1)..m {
                if cols[j][row].is_zero() {
                    continue;
                }
                let q = cols[j][row].div_floor(&cols[k][row]);
                let (head, tail) = cols.split_at_mut(j);
                axpy(&mut tail[0], &q, &head[k]);
                let (uh, ut) = u.split_at_mut(j);
                axpy(&mut ut[0], &q, &uh[k]);
                if !cols[j][row].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if k == m || cols[k][row].is_zero() {
            continue;
        }
        if cols[k][row].is_negative() {
            for x in cols[k].iter_mut() {
                *x = -&*x;
            }
            for x in u[k].iter_mut() {
                *x = -&*x;
            }
        }
        for j in 0..k {
            let q = cols[j][row].div_floor(&cols[k][row]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = cols.split_at_mut(k);
            axpy(&mut head[j], &q, &tail[0]);
            let (uh, ut) = u.split_at_mut(k);
            axpy(&mut uh[j], &q, &ut[0]);
        }
        pivots.push(row);
        k += 1;
    }
    cols.truncate(k);
    ColumnHnf { columns: cols, pivots, transform: u }
}
