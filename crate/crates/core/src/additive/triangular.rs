//! Lower-triangular generators for finite-index subgroups of `Z_q^N`
//! (`q = 0` meaning `Z^N`).

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{closure, Subgroup};
use crate::error::{Error, Result};
use crate::ring::TabulatedRing;

/// Generators `g_0..g_{N-1}` with `support(g_i) ⊆ {0..i}`.
///
/// For `q > 0` the rows are reduced into `[0, q)`; `diagonal[i]` is the
/// positive lift `d_i` of `g_i(i)`, a divisor of `q`, so that
/// `[G : H] = ∏ d_i`. For `q = 0` rows are exact integers and
/// `diagonal[i] = |g_i(i)|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularBasis {
    pub q: u64,
    pub n: usize,
    pub rows: Vec<Vec<i128>>,
    pub diagonal: Vec<u128>,
    pub index: u128,
}

impl TriangularBasis {
    /// Coordinates `i` where `g_i(i)` is not a unit of `Z_q` (for `q = 0`: of `Z`).
    pub fn noninvertible(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.diagonal[i] > 1).collect()
    }

    /// The subgroup spanned by the rows inside the tabulated `Z_q^N`.
    pub fn span_in<'r>(&self, ring: &'r TabulatedRing) -> Result<Subgroup<'r>> {
        let gens = self
            .rows
            .iter()
            .map(|row| ring.encode(&row.iter().map(|&v| v as u32).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        Ok(closure(ring, &gens))
    }
}

fn checked(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow("triangularization entry"))
}

/// Row-reduces the generators to lower-triangular form.
///
/// Columns are eliminated from the last to the first by Euclidean steps; the
/// pivot is the row with the smallest nonzero entry, ties broken
/// lexicographically. For `q > 0` the rows `q * e_j` are adjoined first.
pub fn triangularize(q: u64, n: usize, gens: &[Vec<i64>]) -> Result<TriangularBasis> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    if q == 1 {
        return Err(Error::InvalidParameter("q must be 0 or at least 2".into()));
    }
    if let Some(g) = gens.iter().find(|g| g.len() != n) {
        return Err(Error::InvalidParameter(format!("generator {g:?} does not have {n} coordinates")));
    }
    let qi = q as i128;
    let mut active: Vec<Vec<i128>> = gens
        .iter()
        .map(|g| g.iter().map(|&v| if q > 0 { (v as i128).rem_euclid(qi) } else { v as i128 }).collect())
        .collect();
    if q > 0 {
        for j in 0..n {
            let mut e = vec![0i128; n];
            e[j] = qi;
            active.push(e);
        }
    }
    active.retain(|r| r.iter().any(|&v| v != 0));

    let mut pivots: Vec<Vec<i128>> = vec![Vec::new(); n];
    for c in (0..n).rev() {
        loop {
            let nonzero: Vec<usize> = (0..active.len()).filter(|&r| active[r][c] != 0).collect();
            if nonzero.is_empty() {
                return Err(Error::InfiniteIndex { column: c });
            }
            let p = *nonzero
                .iter()
                .min_by(|&&a, &&b| active[a][c].abs().cmp(&active[b][c].abs()).then_with(|| active[a].cmp(&active[b])))
                .expect("nonempty");
            if nonzero.len() == 1 {
                let mut row = active.swap_remove(p);
                if row[c] < 0 {
                    for v in row.iter_mut() {
                        *v = -*v;
                    }
                }
                pivots[c] = row;
                break;
            }
            let pivot = active[p].clone();
            for &r in &nonzero {
                if r == p {
                    continue;
                }
                let f = active[r][c] / pivot[c];
                for k in 0..n {
                    active[r][k] = checked(active[r][k].checked_sub(checked(f.checked_mul(pivot[k]))?))?;
                }
            }
            active.retain(|r| r.iter().any(|&v| v != 0));
        }
    }

    for i in 0..n {
        for j in (0..i).rev() {
            let d = pivots[j][j];
            let f = Integer::div_floor(&pivots[i][j], &d);
            if f != 0 {
                for k in 0..=j {
                    pivots[i][k] = checked(pivots[i][k].checked_sub(checked(f.checked_mul(pivots[j][k]))?))?;
                }
            }
        }
    }

    let diagonal: Vec<u128> = (0..n).map(|i| pivots[i][i].unsigned_abs()).collect();
    let index =
        diagonal.iter().try_fold(1u128, |acc, &d| acc.checked_mul(d)).ok_or(Error::Overflow("subgroup index"))?;
    if q > 0 {
        for row in pivots.iter_mut() {
            for v in row.iter_mut() {
                *v = v.rem_euclid(qi);
            }
        }
    }
    let basis = TriangularBasis { q, n, rows: pivots, diagonal, index };
    let bad = basis.noninvertible().len() as u128;
    assert!(bad < basis.index, "{bad} non-invertible diagonal entries but index {}", basis.index);
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_lattice_example() {
        let b = triangularize(0, 2, &[vec![2, 0], vec![1, 3]]).unwrap();
        assert_eq!(b.rows, vec![vec![2, 0], vec![1, 3]]);
        assert_eq!(b.index, 6);
    }

    #[test]
    fn standard_basis_mod_two() {
        let gens = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let b = triangularize(2, 3, &gens).unwrap();
        assert_eq!(b.rows, gens.iter().map(|g| g.iter().map(|&v| v as i128).collect::<Vec<_>>()).collect::<Vec<_>>());
        assert_eq!(b.index, 1);
        assert!(b.noninvertible().is_empty());
    }

    #[test]
    fn diagonal_mod_three() {
        let b = triangularize(3, 2, &[vec![1, 1]]).unwrap();
        assert_eq!(b.index, 3);
        assert_eq!(b.rows, vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(b.noninvertible(), vec![0]);
        let ring = TabulatedRing::zq_power(3, 2).unwrap();
        let span = b.span_in(&ring).unwrap();
        assert_eq!(span.index(), 3);
    }

    #[test]
    fn infinite_index_rejected() {
        assert_eq!(triangularize(0, 2, &[vec![1, 1]]), Err(Error::InfiniteIndex { column: 0 }));
        assert_eq!(triangularize(0, 2, &[vec![1, 0]]), Err(Error::InfiniteIndex { column: 1 }));
    }

    #[test]
    fn bad_shapes_rejected() {
        assert!(triangularize(2, 2, &[vec![1]]).is_err());
        assert!(triangularize(1, 2, &[]).is_err());
    }

    #[test]
    fn z4_mixed_diagonal() {
        let b = triangularize(4, 2, &[vec![2, 1], vec![0, 2]]).unwrap();
        // H = {(0,0),(2,1),(0,2),(2,3)} has index 4
        assert_eq!(b.index, 4);
        let ring = TabulatedRing::zq_power(4, 2).unwrap();
        let span = b.span_in(&ring).unwrap();
        let direct = closure(&ring, &[ring.encode(&[2, 1]).unwrap(), ring.encode(&[0, 2]).unwrap()]);
        assert_eq!(span.carrier(), direct.carrier());
    }
}
