//! Hermite normal form for full-rank integer row lattices in Z^d, with the
//! membership test and lattice products that back ideal valuations.
//!
//! Canonical form: H is d x d, H[i][j] = 0 for j < i, H[i][i] > 0, and
//! 0 <= H[i'][i] < H[i][i] for i' < i. Two bases generate the same lattice
//! iff their canonical forms are identical.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<BigInt>>;

/// Canonical HNF basis of the row span. Panics if the rows do not span a
/// full-rank sublattice of Z^d.
pub fn hnf(mut rows: Mat) -> Mat {
    assert!(!rows.is_empty());
    let d = rows[0].len();
    let mut pivots: Mat = Vec::with_capacity(d);
    for col in 0..d {
        loop {
            let mut min_idx: Option<usize> = None;
            for (i, r) in rows.iter().enumerate() {
                if !r[col].is_zero()
                    && min_idx.is_none_or(|m| r[col].magnitude() < rows[m][col].magnitude())
                {
                    min_idx = Some(i);
                }
            }
            let mi = min_idx.expect("lattice is not full rank");
            let pivot = rows[mi].clone();
            let mut all_cleared = true;
            for (i, r) in rows.iter_mut().enumerate() {
                if i == mi || r[col].is_zero() {
                    continue;
                }
                let (q, rem) = r[col].div_mod_floor(&pivot[col]);
                for (rj, pj) in r.iter_mut().zip(pivot.iter()) {
                    *rj -= &q * pj;
                }
                debug_assert_eq!(r[col], rem);
                if !rem.is_zero() {
                    all_cleared = false;
                }
            }
            if all_cleared {
                let mut pr = rows.swap_remove(mi);
                if pr[col].is_negative() {
                    for c in pr.iter_mut() {
                        *c = -std::mem::take(c);
                    }
                }
                pivots.push(pr);
                break;
            }
        }
    }
    // reduce entries above each pivot
    for i in 0..d {
        let pivot = pivots[i].clone();
        for i2 in 0..i {
            let q = pivots[i2][i].div_floor(&pivot[i]);
            if !q.is_zero() {
                for (rj, pj) in pivots[i2].iter_mut().zip(pivot.iter()) {
                    *rj -= &q * pj;
                }
            }
        }
    }
    pivots
}

/// Whether `v` lies in the lattice with canonical basis `h`.
pub fn member(h: &Mat, v: &[BigInt]) -> bool {
    let d = h.len();
    let mut r = v.to_vec();
    for i in 0..d {
        if r[i].is_zero() {
            continue;
        }
        let (q, rem) = r[i].div_rem(&h[i][i]);
        if !rem.is_zero() {
            return false;
        }
        for (rj, hj) in r.iter_mut().zip(h[i].iter()) {
            *rj -= &q * hj;
        }
    }
    debug_assert!(r.iter().all(|c| c.is_zero()));
    true
}

/// Index [Z^d : L] = product of the pivots.
pub fn det(h: &Mat) -> BigInt {
    h.iter()
        .enumerate()
        .fold(BigInt::one(), |acc, (i, row)| acc * &row[i])
}

/// Product lattice: HNF of all pairwise products of basis vectors, where
/// `mul` multiplies two vectors in the ambient ring.
pub fn mul_lattices<F>(a: &Mat, b: &Mat, mul: F) -> Mat
where
    F: Fn(&[BigInt], &[BigInt]) -> Vec<BigInt>,
{
    let mut rows = Vec::with_capacity(a.len() * b.len());
    for ra in a {
        for rb in b {
            rows.push(mul(ra, rb));
        }
    }
    hnf(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Mat {
        rows.iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect()
    }

    #[test]
    fn canonical_form_is_unique() {
        // two bases of the same lattice 2Z x 3Z shifted
        let a = hnf(m(&[&[2, 1], &[0, 3]]));
        let b = hnf(m(&[&[2, 4], &[2, 7], &[4, 2]]));
        assert_eq!(a, b);
        assert_eq!(det(&a), BigInt::from(6));
    }

    #[test]
    fn membership() {
        let h = hnf(m(&[&[2, 1], &[0, 3]]));
        assert!(member(&h, &[BigInt::from(2), BigInt::from(1)]));
        assert!(member(&h, &[BigInt::from(2), BigInt::from(4)]));
        assert!(member(&h, &[BigInt::from(0), BigInt::from(0)]));
        assert!(!member(&h, &[BigInt::from(1), BigInt::from(0)]));
        assert!(!member(&h, &[BigInt::from(2), BigInt::from(2)]));
    }

    #[test]
    fn redundant_rows_are_fine() {
        let h = hnf(m(&[&[5, 0], &[0, 5], &[5, 5], &[10, 5]]));
        assert_eq!(det(&h), BigInt::from(25));
    }
}
