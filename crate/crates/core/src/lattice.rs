//! Exact integer and rational vectors, matrices, and integer linear algebra.
//!
//! Everything here is arbitrary precision. The Hermite normal form is the
//! workhorse: kernels, ranks and lattice indices are all read off from it.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer vector of fixed dimension.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IntVec(Vec<BigInt>);

/// Rational vector; entries are kept in lowest terms by `BigRational`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RatVec(Vec<BigRational>);

impl IntVec {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVec(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVec(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        IntVec(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVec) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dot_rat(&self, other: &RatVec) -> BigRational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(other.entries())
            .map(|(a, b)| b * BigRational::from_integer(a.clone()))
            .sum()
    }

    pub fn scale(&self, k: &BigInt) -> IntVec {
        IntVec(self.0.iter().map(|a| a * k).collect())
    }

    /// gcd of the absolute values of the entries (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, a| g.gcd(a))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|a| !a.is_negative())
    }

    pub fn to_rat(&self) -> RatVec {
        RatVec(self.0.iter().cloned().map(BigRational::from_integer).collect())
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl Index<usize> for IntVec {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl Add for &IntVec {
    type Output = IntVec;
    fn add(self, rhs: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVec {
    type Output = IntVec;
    fn sub(self, rhs: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVec {
    type Output = IntVec;
    fn neg(self) -> IntVec {
        IntVec(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for IntVec {
    fn from(v: Vec<i64>) -> Self {
        IntVec::from_i64s(&v)
    }
}

impl RatVec {
    pub fn new(entries: Vec<BigRational>) -> Self {
        RatVec(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVec::from_i64s(entries).to_rat()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn dot(&self, other: &RatVec) -> BigRational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn has_zero_entry(&self) -> bool {
        self.0.iter().any(Zero::is_zero)
    }

    /// Clears denominators and divides by the content; `None` for the zero vector.
    pub fn primitive_integer(&self) -> Option<IntVec> {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let v = IntVec(
            self.0
                .iter()
                .map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer())
                .collect(),
        );
        primitive_vector(&v).ok()
    }
}

impl Index<usize> for RatVec {
    type Output = BigRational;
    fn index(&self, i: usize) -> &BigRational {
        &self.0[i]
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from equally long rows. An empty row list gives a
    /// `0 x cols` matrix.
    pub fn from_rows(rows: &[IntVec], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.dim() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.dim() });
            }
            data.extend(r.entries().iter().cloned());
        }
        Ok(IntMat { rows: rows.len(), cols, data })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<IntVec> = rows.iter().map(|r| IntVec::from_i64s(r)).collect();
        Self::from_rows(&rows, cols).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> IntVec {
        IntVec(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn row_vecs(&self) -> Vec<IntVec> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.get(k, j);
                    *out.get_mut(i, j) += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &IntVec) -> IntVec {
        assert_eq!(self.cols, v.dim());
        IntVec((0..self.rows).map(|i| self.row(i).dot(v)).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = self.get(src, j) * q;
            *self.get_mut(dst, j) -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = self.get_mut(i, j);
            *v = -std::mem::take(v);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    *a.get_mut(i, j) = v;
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `H = U * M`, `U`
/// unimodular, `H` in row echelon form with positive pivots and entries above
/// each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMat) -> (IntMat, IntMat) {
    let mut h = m.clone();
    let mut u = IntMat::identity(m.rows);
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        loop {
            // smallest nonzero |entry| at or below row r in column c
            let pivot = (r..m.rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&a, &b| h.get(a, c).abs().cmp(&h.get(b, c).abs()));
            let Some(p) = pivot else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m.rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c).div_floor(h.get(r, c));
                h.sub_row_multiple(i, r, &q);
                u.sub_row_multiple(i, r, &q);
                if !h.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h.get(i, c).div_floor(h.get(r, c));
            h.sub_row_multiple(i, r, &q);
            u.sub_row_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Rank over Q.
pub fn rank(m: &IntMat) -> usize {
    let (h, _) = hermite_normal_form(m);
    (0..h.rows()).filter(|&i| !h.row(i).is_zero()).count()
}

pub fn rank_of(vectors: &[IntVec], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&IntMat::from_rows(vectors, dim).expect("inconsistent dimensions"))
}

/// Index of the lattice spanned by the rows inside `Z^cols`, or `None` when
/// the rows do not have full column rank.
pub fn lattice_index(m: &IntMat) -> Option<BigInt> {
    let (h, _) = hermite_normal_form(m);
    let mut index = BigInt::one();
    let mut r = 0;
    for c in 0..h.cols() {
        if r < h.rows() && !h.get(r, c).is_zero() {
            index *= h.get(r, c);
            r += 1;
        } else {
            return None;
        }
    }
    Some(index)
}

/// Lattice basis of `{a in Z^cols : M a = 0}`, canonicalised so that each
/// basis vector ends (in its last nonzero coordinate) with a positive pivot.
pub fn kernel_lattice_basis(m: &IntMat) -> Vec<IntVec> {
    let (h, u) = hermite_normal_form(&m.transpose());
    let basis: Vec<IntVec> = (0..h.rows())
        .filter(|&i| h.row(i).is_zero())
        .map(|i| u.row(i))
        .collect();
    if basis.is_empty() {
        return basis;
    }
    // reduce with pivots taken from the right
    let reversed: Vec<IntVec> = basis
        .iter()
        .map(|v| IntVec(v.entries().iter().rev().cloned().collect()))
        .collect();
    let mat = IntMat::from_rows(&reversed, m.cols()).expect("kernel rows");
    let (hk, _) = hermite_normal_form(&mat);
    (0..hk.rows())
        .map(|i| hk.row(i))
        .filter(|v| !v.is_zero())
        .map(|v| IntVec(v.into_entries().into_iter().rev().collect()))
        .collect()
}

/// Divides out the gcd of the entries.
pub fn primitive_vector(v: &IntVec) -> Result<IntVec> {
    let g = v.content();
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(IntVec(v.entries().iter().map(|a| a / &g).collect()))
}

/// Basis (over Q, with integer entries) of the orthogonal complement of the
/// span of `vectors` in `Q^dim`.
pub fn orthogonal_complement(vectors: &[IntVec], dim: usize) -> Vec<IntVec> {
    if vectors.is_empty() {
        return (0..dim).map(|i| IntVec::unit(dim, i)).collect();
    }
    let m = IntMat::from_rows(vectors, dim).expect("inconsistent dimensions");
    kernel_lattice_basis(&m)
}

/// Solves `A x = b` for square nonsingular `A` over Q.
pub fn solve_square(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for v in m[c].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let t = &m[c][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det_is_unit(u: &IntMat) -> bool {
        u.determinant().abs().is_one()
    }

    fn is_row_hnf(h: &IntMat) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.rows() {
            let row = h.row(i);
            match (0..h.cols()).find(|&j| !row[j].is_zero()) {
                None => seen_zero = true,
                Some(p) => {
                    if seen_zero || last_pivot.is_some_and(|lp| p <= lp) {
                        return false;
                    }
                    if !row[p].is_positive() {
                        return false;
                    }
                    for k in 0..i {
                        let above = h.get(k, p);
                        if above.is_negative() || above >= &row[p] {
                            return false;
                        }
                    }
                    last_pivot = Some(p);
                }
            }
        }
        true
    }

    #[test]
    fn hnf_identity() {
        let id = IntMat::identity(2);
        let (h, u) = hermite_normal_form(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
    }

    #[test]
    fn hnf_two_by_two() {
        let m = IntMat::from_i64_rows(&[&[2, 4], &[1, 3]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(u.mul(&m), h);
        assert!(det_is_unit(&u));
        assert!(is_row_hnf(&h));
        assert!(h.get(1, 0).is_zero());
    }

    #[test]
    fn hnf_rank_two() {
        let m = IntMat::from_i64_rows(&[&[1, 1, 1], &[0, 1, 2]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(u.mul(&m), h);
        assert_eq!(rank(&m), 2);
        // brute-force: some 2x2 minor is nonzero
        let minor = m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0);
        assert!(!minor.is_zero());
    }

    #[test]
    fn kernel_of_conic_semigroup() {
        let m = IntMat::from_i64_rows(&[&[1, 1, 1], &[0, 1, 2]]);
        assert_eq!(kernel_lattice_basis(&m), vec![IntVec::from_i64s(&[1, -2, 1])]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(kernel_lattice_basis(&IntMat::identity(3)).is_empty());
    }

    #[test]
    fn kernel_of_cusp_family_semigroup() {
        let m = IntMat::from_i64_rows(&[&[1, 1, 3], &[3, 0, 5]]);
        assert_eq!(kernel_lattice_basis(&m), vec![IntVec::from_i64s(&[-5, -4, 3])]);
    }

    #[test]
    fn primitive_examples() {
        let p = |v: &[i64]| primitive_vector(&IntVec::from_i64s(v)).unwrap();
        assert_eq!(p(&[2, 4]), IntVec::from_i64s(&[1, 2]));
        assert_eq!(p(&[1, 1]), IntVec::from_i64s(&[1, 1]));
        assert_eq!(p(&[-6, 9, 3]), IntVec::from_i64s(&[-2, 3, 1]));
        assert_eq!(primitive_vector(&IntVec::zero(3)), Err(Error::ZeroVector));
    }

    #[test]
    fn index_of_even_lattice() {
        let m = IntMat::from_i64_rows(&[&[2, 0], &[0, 2]]);
        assert_eq!(lattice_index(&m), Some(BigInt::from(4)));
        let m = IntMat::from_i64_rows(&[&[1, 3], &[1, 0], &[3, 5]]);
        assert_eq!(lattice_index(&m), Some(BigInt::one()));
        let m = IntMat::from_i64_rows(&[&[1, 1], &[2, 2]]);
        assert_eq!(lattice_index(&m), None);
    }

    #[test]
    fn determinant_small() {
        let m = IntMat::from_i64_rows(&[&[2, 4, 1], &[1, 3, 0], &[0, 1, 5]]);
        // 2*(15-0) - 4*(5-0) + 1*(1-0) = 11
        assert_eq!(m.determinant(), BigInt::from(11));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = IntMat> {
            (1usize..4, 1usize..5).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-4i64..5, r * c).prop_map(move |v| {
                    let rows: Vec<IntVec> =
                        v.chunks(c).map(IntVec::from_i64s).collect();
                    IntMat::from_rows(&rows, c).unwrap()
                })
            })
        }

        fn all_vectors(dim: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
            let mut out = vec![vec![]];
            for _ in 0..dim {
                out = out
                    .into_iter()
                    .flat_map(|v| {
                        (lo..=hi).map(move |x| {
                            let mut w = v.clone();
                            w.push(x);
                            w
                        })
                    })
                    .collect();
            }
            out
        }

        /// Is `target` an integer combination of `basis`? Checked by rank and
        /// index comparison of the two lattices.
        fn in_lattice(basis: &[IntVec], target: &IntVec) -> bool {
            if target.is_zero() {
                return true;
            }
            let dim = target.dim();
            let r0 = rank_of(basis, dim);
            let mut ext = basis.to_vec();
            ext.push(target.clone());
            if rank_of(&ext, dim) != r0 {
                return false;
            }
            // same rank: compare gcd of maximal minors via HNF of both
            let (h0, _) = hermite_normal_form(&IntMat::from_rows(basis, dim).unwrap());
            let (h1, _) = hermite_normal_form(&IntMat::from_rows(&ext, dim).unwrap());
            h0.row_vecs().into_iter().filter(|v| !v.is_zero()).collect::<Vec<_>>()
                == h1.row_vecs().into_iter().filter(|v| !v.is_zero()).collect::<Vec<_>>()
        }

        proptest! {
            #[test]
            fn hnf_defining_equations(m in small_matrix()) {
                let (h, u) = hermite_normal_form(&m);
                prop_assert_eq!(u.mul(&m), h.clone());
                prop_assert!(det_is_unit(&u));
                prop_assert!(is_row_hnf(&h));
            }

            #[test]
            fn kernel_is_complete(m in small_matrix()) {
                prop_assume!(m.cols() <= 3);
                let basis = kernel_lattice_basis(&m);
                for b in &basis {
                    prop_assert!(m.mul_vec(b).is_zero());
                }
                for v in all_vectors(m.cols(), -5, 5) {
                    let v = IntVec::from_i64s(&v);
                    if m.mul_vec(&v).is_zero() {
                        prop_assert!(in_lattice(&basis, &v), "{} not in span", v);
                    }
                }
            }

            #[test]
            fn primitive_is_idempotent_and_scale_free(
                v in proptest::collection::vec(-20i64..21, 1..5),
                k in 1i64..7,
            ) {
                let v = IntVec::from_i64s(&v);
                prop_assume!(!v.is_zero());
                let p = primitive_vector(&v).unwrap();
                prop_assert_eq!(primitive_vector(&p).unwrap(), p.clone());
                prop_assert_eq!(primitive_vector(&v.scale(&BigInt::from(k))).unwrap(), p);
            }
        }
    }
}
