//! Double description method over the integers.
//!
//! Computes the extreme rays of a pointed cone `{x : <a_i, x> >= 0}` by
//! inserting the constraints one at a time. Rays are kept primitive so the
//! arithmetic stays fraction-free.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{primitive_vector, rank_of, solve_square, IntVec};

struct Ray {
    vec: IntVec,
    /// indices of inserted constraints that vanish on this ray
    zeros: Vec<usize>,
}

/// Extreme rays of `{x in R^dim : <row, x> >= 0 for every row}`.
///
/// The rows must have rank `dim` (the cone is then pointed); otherwise
/// `Error::NotPointed` is returned. Output is sorted and primitive.
pub fn extreme_rays(rows: &[IntVec], dim: usize) -> Result<Vec<IntVec>> {
    if dim == 0 {
        return Ok(Vec::new());
    }
    for r in rows {
        if r.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: r.dim() });
        }
    }
    let rows: Vec<IntVec> = rows.iter().filter(|r| !r.is_zero()).cloned().collect();

    // greedy choice of `dim` independent rows
    let mut basis: Vec<usize> = Vec::new();
    let mut basis_rows: Vec<IntVec> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        basis_rows.push(r.clone());
        if rank_of(&basis_rows, dim) == basis_rows.len() {
            basis.push(i);
            if basis.len() == dim {
                break;
            }
        } else {
            basis_rows.pop();
        }
    }
    if basis.len() < dim {
        return Err(Error::NotPointed);
    }

    // initial simplicial cone: columns of the inverse of the basis matrix
    let a: Vec<Vec<BigRational>> = basis_rows
        .iter()
        .map(|r| r.entries().iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let mut rays: Vec<Ray> = Vec::with_capacity(dim);
    for k in 0..dim {
        let e: Vec<BigRational> = (0..dim)
            .map(|i| if i == k { BigRational::one() } else { BigRational::zero() })
            .collect();
        let col = solve_square(&a, &e).expect("basis rows are independent");
        let vec = crate::lattice::RatVec::new(col)
            .primitive_integer()
            .expect("nonzero column");
        let zeros = basis.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &i)| i).collect();
        rays.push(Ray { vec, zeros });
    }

    for (idx, row) in rows.iter().enumerate() {
        if basis.contains(&idx) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| row.dot(&r.vec)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if !vals[i].is_negative() {
                let mut zeros = r.zeros.clone();
                if vals[i].is_zero() {
                    zeros.push(idx);
                }
                next.push(Ray { vec: r.vec.clone(), zeros });
            }
        }
        for &p in &pos {
            for &q in &neg {
                let common: Vec<usize> = rays[p]
                    .zeros
                    .iter()
                    .filter(|z| rays[q].zeros.contains(z))
                    .copied()
                    .collect();
                if common.len() + 2 < dim {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(k, r)| {
                    k == p || k == q || !common.iter().all(|z| r.zeros.contains(z))
                });
                if !adjacent {
                    continue;
                }
                let combo = &rays[q].vec.scale(&vals[p]) - &rays[p].vec.scale(&vals[q]);
                let vec = primitive_vector(&combo).expect("adjacent rays are independent");
                let mut zeros = common;
                zeros.push(idx);
                next.push(Ray { vec, zeros });
            }
        }
        rays = next;
    }

    let mut out: Vec<IntVec> = rays.into_iter().map(|r| r.vec).collect();
    out.sort();
    out.dedup();
    Ok(out)
}
