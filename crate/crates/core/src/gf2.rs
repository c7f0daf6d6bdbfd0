//! Bit-packed linear algebra over GF(2).
//!
//! Coordinates are numbered from 1 in the mathematics and from 0 in code:
//! bit `j` of a word is the coefficient of the basis element `a_{j+1}`, so
//! bit 0 always carries the coefficient of the unity `a_1`. Matrices are
//! stored column-major, one `u16` word per column, which caps the dimension
//! at [`MAX_DIM`].

use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use crate::error::{Error, Result};
use crate::poly::Gf2Poly;

/// Largest supported dimension (one 16-bit word per column).
pub const MAX_DIM: usize = 16;

#[inline]
pub(crate) fn mask(n: usize) -> u16 {
    if n >= 16 {
        u16::MAX
    } else {
        (1u16 << n) - 1
    }
}

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if n > MAX_DIM {
        Err(Error::DimensionTooLarge(n))
    } else {
        Ok(())
    }
}

/// An element of `F_2^n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    n: u8,
    bits: u16,
}

impl Gf2Vector {
    pub fn new(n: usize, bits: u16) -> Result<Self> {
        check_dim(n)?;
        if bits & !mask(n) != 0 {
            return Err(Error::BitsOutOfRange {
                n,
                bits: bits.into(),
            });
        }
        Ok(Self { n: n as u8, bits })
    }

    /// Masks `bits` down to the low `n` coordinates. Panics if `n > MAX_DIM`.
    pub(crate) fn truncated(n: usize, bits: u16) -> Self {
        assert!(n <= MAX_DIM);
        Self {
            n: n as u8,
            bits: bits & mask(n),
        }
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    /// The unit vector `e_{index+1}`.
    pub fn unit(n: usize, index: usize) -> Result<Self> {
        check_dim(n)?;
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
        Ok(Self {
            n: n as u8,
            bits: 1 << index,
        })
    }

    /// Parses a string of `0`/`1` characters, leftmost character first
    /// coordinate.
    pub fn from_bit_str(s: &str) -> Option<Self> {
        let n = s.chars().count();
        if n > MAX_DIM {
            return None;
        }
        let mut bits = 0u16;
        for (j, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << j,
                _ => return None,
            }
        }
        Some(Self { n: n as u8, bits })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn bits(&self) -> u16 {
        self.bits
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        index < self.dim() && self.bits >> index & 1 == 1
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Indices of the nonzero coordinates, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(j)
            }
        })
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(self ^ other)
    }

    /// Renders the vector as `n` characters, leftmost = first coordinate.
    pub fn to_bit_string(&self) -> String {
        (0..self.dim())
            .map(|j| if self.get(j) { '1' } else { '0' })
            .collect()
    }
}

impl BitXor for Gf2Vector {
    type Output = Gf2Vector;

    fn bitxor(self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "vector dimension mismatch");
        Self {
            n: self.n,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl BitXorAssign for Gf2Vector {
    fn bitxor_assign(&mut self, rhs: Self) {
        *self = *self ^ rhs;
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({})", self.to_bit_string())
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

pub(crate) fn same_dim(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

/// A square `n x n` matrix over GF(2), stored as `n` packed columns.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    n: u8,
    cols: [u16; MAX_DIM],
}

impl Gf2Matrix {
    pub fn zero(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self {
            n: n as u8,
            cols: [0; MAX_DIM],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zero(n)?;
        for j in 0..n {
            m.cols[j] = 1 << j;
        }
        Ok(m)
    }

    pub fn from_columns(columns: &[Gf2Vector]) -> Result<Self> {
        let n = columns.len();
        let mut m = Self::zero(n)?;
        for (j, c) in columns.iter().enumerate() {
            same_dim(n, c.dim())?;
            m.cols[j] = c.bits();
        }
        Ok(m)
    }

    /// Builds a matrix from raw column words; bit `k` of `cols[j]` is entry `(k, j)`.
    pub fn from_column_bits(n: usize, cols: &[u16]) -> Result<Self> {
        same_dim(n, cols.len())?;
        let mut m = Self::zero(n)?;
        for (j, &c) in cols.iter().enumerate() {
            if c & !mask(n) != 0 {
                return Err(Error::BitsOutOfRange { n, bits: c.into() });
            }
            m.cols[j] = c;
        }
        Ok(m)
    }

    /// Builds a matrix from raw row words; bit `j` of `rows[k]` is entry `(k, j)`.
    pub fn from_row_bits(n: usize, rows: &[u16]) -> Result<Self> {
        Ok(Self::from_column_bits(n, rows)?.transpose())
    }

    /// Parses `n` row strings in the printed layout (leftmost = column 1).
    pub fn from_row_strs<S: AsRef<str>>(rows: &[S]) -> Option<Self> {
        let n = rows.len();
        let mut words = Vec::with_capacity(n);
        for r in rows {
            let v = Gf2Vector::from_bit_str(r.as_ref())?;
            if v.dim() != n {
                return None;
            }
            words.push(v.bits());
        }
        Self::from_row_bits(n, &words).ok()
    }

    /// Companion matrix of a polynomial: multiplication by `x` on the basis
    /// `1, x, ..., x^{d-1}` of `F_2[x]/(p)`.
    pub fn companion(p: Gf2Poly) -> Result<Self> {
        let d = p
            .degree()
            .filter(|d| (1..=MAX_DIM).contains(d))
            .ok_or_else(|| Error::PolynomialDegree(p.to_string()))?;
        let mut m = Self::zero(d)?;
        for j in 0..d - 1 {
            m.cols[j] = 1 << (j + 1);
        }
        m.cols[d - 1] = (p.bits() as u16) & mask(d);
        Ok(m)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn column(&self, j: usize) -> Gf2Vector {
        assert!(j < self.dim(), "column {j} out of range");
        Gf2Vector {
            n: self.n,
            bits: self.cols[j],
        }
    }

    /// Raw column words, length `n`.
    #[inline]
    pub fn column_bits(&self) -> &[u16] {
        &self.cols[..self.dim()]
    }

    pub fn columns(&self) -> impl Iterator<Item = Gf2Vector> + '_ {
        (0..self.dim()).map(|j| self.column(j))
    }

    /// Row `k` as a vector whose coordinate `j` is entry `(k, j)`.
    pub fn row(&self, k: usize) -> Gf2Vector {
        assert!(k < self.dim(), "row {k} out of range");
        let mut bits = 0u16;
        for (j, &c) in self.column_bits().iter().enumerate() {
            bits |= (c >> k & 1) << j;
        }
        Gf2Vector { n: self.n, bits }
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.dim() && col < self.dim());
        self.cols[col] >> row & 1 == 1
    }

    /// Copy with column `j` replaced.
    pub fn with_column(&self, j: usize, v: Gf2Vector) -> Result<Self> {
        same_dim(self.dim(), v.dim())?;
        if j >= self.dim() {
            return Err(Error::IndexOutOfRange {
                index: j,
                n: self.dim(),
            });
        }
        let mut m = *self;
        m.cols[j] = v.bits();
        Ok(m)
    }

    pub fn is_zero(&self) -> bool {
        self.column_bits().iter().all(|&c| c == 0)
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim();
        let mut t = Self {
            n: self.n,
            cols: [0; MAX_DIM],
        };
        for k in 0..n {
            t.cols[k] = self.row(k).bits();
        }
        t
    }

    pub fn mat_vec(&self, v: Gf2Vector) -> Result<Gf2Vector> {
        same_dim(self.dim(), v.dim())?;
        Ok(self.apply(v))
    }

    #[inline]
    pub(crate) fn apply(&self, v: Gf2Vector) -> Gf2Vector {
        Gf2Vector {
            n: self.n,
            bits: self.apply_bits(v.bits),
        }
    }

    #[inline]
    pub(crate) fn apply_bits(&self, mut bits: u16) -> u16 {
        let mut acc = 0;
        while bits != 0 {
            acc ^= self.cols[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        acc
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        let mut out = *other;
        for c in out.cols[..self.dim()].iter_mut() {
            *c = self.apply_bits(*c);
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = *self;
        let mut acc = Self::identity(self.dim()).expect("dimension already checked");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mat_mul(&base).expect("same dimension");
            }
            base = base.mat_mul(&base).expect("same dimension");
            e >>= 1;
        }
        acc
    }

    /// Rank by elimination on the column words.
    pub fn rank(&self) -> usize {
        rank_of_words(self.column_bits())
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.dim()
    }

    /// Gauss-Jordan inverse; `None` when the matrix is singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.dim();
        // Row k of the augmented system: low 16 bits the row of `self`,
        // high 16 bits the row of the identity.
        let mut rows = [0u32; MAX_DIM];
        for (k, r) in rows.iter_mut().enumerate().take(n) {
            *r = u32::from(self.row(k).bits()) | (1u32 << (16 + k));
        }
        for col in 0..n {
            let pivot = (col..n).find(|&k| rows[k] >> col & 1 == 1)?;
            rows.swap(col, pivot);
            let p = rows[col];
            for (k, r) in rows.iter_mut().enumerate().take(n) {
                if k != col && *r >> col & 1 == 1 {
                    *r ^= p;
                }
            }
        }
        let inv_rows: Vec<u16> = rows[..n].iter().map(|r| (r >> 16) as u16).collect();
        Some(Self::from_row_bits(n, &inv_rows).expect("inverse rows fit"))
    }

    /// A nonzero `v` with `M v = 0`, or `None` if the matrix is invertible.
    /// The returned vector is the first dependency found among the columns
    /// taken in ascending order.
    pub fn kernel_vector(&self) -> Option<Gf2Vector> {
        let mut basis = [(0u16, 0u16); MAX_DIM];
        for (j, &c) in self.column_bits().iter().enumerate() {
            let (mut v, mut combo) = (c, 1u16 << j);
            while v != 0 {
                let lead = 15 - v.leading_zeros() as usize;
                if basis[lead].0 == 0 {
                    basis[lead] = (v, combo);
                    break;
                }
                v ^= basis[lead].0;
                combo ^= basis[lead].1;
            }
            if v == 0 {
                return Some(Gf2Vector {
                    n: self.n,
                    bits: combo,
                });
            }
        }
        None
    }

    /// Renders the matrix as `n` row strings in the printed layout.
    pub fn to_row_strings(&self) -> Vec<String> {
        (0..self.dim())
            .map(|k| self.row(k).to_bit_string())
            .collect()
    }
}

/// Rank of a set of packed vectors.
pub fn rank_of_words(words: &[u16]) -> usize {
    let mut basis = [0u16; MAX_DIM];
    let mut rank = 0;
    for &w in words {
        let mut v = w;
        while v != 0 {
            let lead = 15 - v.leading_zeros() as usize;
            if basis[lead] == 0 {
                basis[lead] = v;
                rank += 1;
                break;
            }
            v ^= basis[lead];
        }
    }
    rank
}

impl BitXor for Gf2Matrix {
    type Output = Gf2Matrix;

    fn bitxor(mut self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        for (a, b) in self.cols.iter_mut().zip(rhs.cols.iter()) {
            *a ^= b;
        }
        self
    }
}

impl BitXorAssign for Gf2Matrix {
    fn bitxor_assign(&mut self, rhs: Self) {
        *self = *self ^ rhs;
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_row_strings()).finish()
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.to_row_strings() {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn v(s: &str) -> Gf2Vector {
        Gf2Vector::from_bit_str(s).unwrap()
    }

    // Independent row-reduction on a dense boolean matrix.
    #[allow(clippy::needless_range_loop)]
    fn naive_rank(m: &Gf2Matrix) -> usize {
        let n = m.dim();
        let mut a: Vec<Vec<bool>> = (0..n)
            .map(|r| (0..n).map(|c| m.get(r, c)).collect())
            .collect();
        let mut rank = 0;
        for c in 0..n {
            let Some(p) = (rank..n).find(|&r| a[r][c]) else {
                continue;
            };
            a.swap(rank, p);
            for r in 0..n {
                if r != rank && a[r][c] {
                    for k in 0..n {
                        let x = a[rank][k];
                        a[r][k] ^= x;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = Gf2Matrix> {
        proptest::collection::vec(0u16..=mask(n), n)
            .prop_map(move |c| Gf2Matrix::from_column_bits(n, &c).unwrap())
    }

    #[test]
    fn vector_rejects_high_bits() {
        assert!(Gf2Vector::new(3, 0b1000).is_err());
        assert!(Gf2Vector::new(17, 0).is_err());
        assert_eq!(Gf2Vector::new(16, u16::MAX).unwrap().weight(), 16);
    }

    #[test]
    fn bit_string_convention() {
        let x = v("0100000");
        assert_eq!(x.bits(), 0b10);
        assert_eq!(x, Gf2Vector::unit(7, 1).unwrap());
        assert_eq!(x.to_bit_string(), "0100000");
        assert!(Gf2Vector::from_bit_str("01a").is_none());
    }

    #[test]
    fn mat_vec_examples() {
        let id = Gf2Matrix::identity(7).unwrap();
        let e2 = Gf2Vector::unit(7, 1).unwrap();
        assert_eq!(id.mat_vec(e2).unwrap(), e2);
        let b = fixtures::paper_example();
        assert_eq!(b.matrix(1).mat_vec(e2).unwrap(), v("0010000"));
        assert_eq!(b.matrix(3).mat_vec(e2).unwrap(), v("0000010"));
    }

    #[test]
    fn mat_vec_dimension_mismatch_names_both() {
        let id = Gf2Matrix::identity(7).unwrap();
        let err = id.mat_vec(Gf2Vector::unit(3, 0).unwrap()).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { left: 7, right: 3 });
        assert!(err.to_string().contains('7') && err.to_string().contains('3'));
        assert!(id.mat_mul(&Gf2Matrix::identity(3).unwrap()).is_err());
    }

    #[test]
    fn companion_square_is_a3_block() {
        let c = Gf2Matrix::companion("x^3+x+1".parse().unwrap()).unwrap();
        assert_eq!(c.to_row_strings(), ["001", "101", "010"]);
        let c2 = c.mat_mul(&c).unwrap();
        assert_eq!(c2.to_row_strings(), ["010", "011", "101"]);
        let id = Gf2Matrix::identity(3).unwrap();
        assert_eq!(id.mat_mul(&c).unwrap(), c);
        assert_eq!(c.pow(7), id);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Gf2Matrix::identity(7).unwrap().rank(), 7);
        assert_eq!(Gf2Matrix::zero(7).unwrap().rank(), 0);
        assert_eq!(fixtures::paper_example().matrix(1).rank(), 7);
        assert_eq!(Gf2Matrix::zero(0).unwrap().rank(), 0);
    }

    #[test]
    fn inverse_examples() {
        let id = Gf2Matrix::identity(7).unwrap();
        assert_eq!(id.inverse(), Some(id));
        let singular = id.with_column(3, Gf2Vector::zero(7).unwrap()).unwrap();
        assert_eq!(singular.inverse(), None);
        let a5 = *fixtures::paper_example().matrix(4);
        let inv = a5.inverse().unwrap();
        assert_eq!(inv.mat_mul(&a5).unwrap(), id);
        assert_eq!(a5.mat_mul(&inv).unwrap(), id);
    }

    #[test]
    fn kernel_vector_of_singular() {
        let m = Gf2Matrix::from_row_strs(&["110", "110", "001"]).unwrap();
        let k = m.kernel_vector().unwrap();
        assert!(!k.is_zero());
        assert!(m.mat_vec(k).unwrap().is_zero());
        assert_eq!(Gf2Matrix::identity(4).unwrap().kernel_vector(), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rank_matches_naive(m in (0usize..=16).prop_flat_map(arb_matrix)) {
            prop_assert_eq!(m.rank(), naive_rank(&m));
        }

        #[test]
        fn rank_matches_naive_7(m in arb_matrix(7)) {
            prop_assert_eq!(m.rank(), naive_rank(&m));
            prop_assert_eq!(m.transpose().rank(), m.rank());
        }

        #[test]
        fn inverse_both_sides(m in arb_matrix(9)) {
            let id = Gf2Matrix::identity(9).unwrap();
            match m.inverse() {
                Some(inv) => {
                    prop_assert_eq!(m.mat_mul(&inv).unwrap(), id);
                    prop_assert_eq!(inv.mat_mul(&m).unwrap(), id);
                }
                None => {
                    prop_assert!(naive_rank(&m) < 9);
                    let k = m.kernel_vector().unwrap();
                    prop_assert!(m.apply(k).is_zero() && !k.is_zero());
                }
            }
        }

        #[test]
        fn mat_vec_is_linear(m in arb_matrix(16), a in any::<u16>(), b in any::<u16>()) {
            let (x, y) = (Gf2Vector::new(16, a).unwrap(), Gf2Vector::new(16, b).unwrap());
            prop_assert_eq!(m.mat_vec(x ^ y).unwrap(), m.mat_vec(x).unwrap() ^ m.mat_vec(y).unwrap());
        }

        #[test]
        fn column_round_trip(m in arb_matrix(11)) {
            let cols: Vec<_> = m.columns().collect();
            prop_assert_eq!(Gf2Matrix::from_columns(&cols).unwrap(), m);
            let rows: Vec<_> = (0..11).map(|k| m.row(k).bits()).collect();
            prop_assert_eq!(Gf2Matrix::from_row_bits(11, &rows).unwrap(), m);
        }

        #[test]
        fn mat_mul_is_composition(a in arb_matrix(6), b in arb_matrix(6), x in 0u16..64) {
            let x = Gf2Vector::new(6, x).unwrap();
            let ab = a.mat_mul(&b).unwrap();
            prop_assert_eq!(ab.apply(x), a.apply(b.apply(x)));
        }
    }
}
