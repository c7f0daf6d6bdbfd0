//! Cubical arrays, standard bases and their verification.
//!
//! A cube of dimension `n` holds the structure constants of a bilinear
//! product on `F_2^n`: the product of basis elements `a_{i1+1} a_{i2+1}` is
//! the cube row at `(i1, i2)`. The matching standard basis is the list of
//! left-multiplication matrices, where column `i2` of matrix `i1` is that
//! same row.

use std::fmt;
use std::thread;

use crate::error::{Error, Result};
use crate::gf2::{check_dim, mask, same_dim, Gf2Matrix, Gf2Vector};

/// Structure constants `A_{i1 i2 i3}`, stored as `n^2` packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cube {
    n: u8,
    rows: Vec<u16>,
}

impl Cube {
    pub fn zero(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self {
            n: n as u8,
            rows: vec![0; n * n],
        })
    }

    /// Builds a cube from `n^2` packed rows in `(i1, i2)` row-major order.
    pub fn from_rows(n: usize, rows: Vec<u16>) -> Result<Self> {
        check_dim(n)?;
        same_dim(n * n, rows.len())?;
        if let Some(&bad) = rows.iter().find(|&&r| r & !mask(n) != 0) {
            return Err(Error::BitsOutOfRange {
                n,
                bits: bad.into(),
            });
        }
        Ok(Self { n: n as u8, rows })
    }

    pub fn from_basis(basis: &StandardBasis) -> Self {
        let n = basis.dim();
        let rows = basis
            .matrices()
            .iter()
            .flat_map(|m| m.column_bits().iter().copied())
            .collect();
        Self { n: n as u8, rows }
    }

    /// Inverse of [`Cube::from_basis`]; performs no validity check.
    pub fn to_basis(&self) -> StandardBasis {
        let n = self.dim();
        let mats = self
            .rows
            .chunks(n.max(1))
            .take(n)
            .map(|cols| Gf2Matrix::from_column_bits(n, cols).expect("rows fit dimension"))
            .collect();
        StandardBasis { n: self.n, mats }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n as usize
    }

    /// The product `a_{i1+1} a_{i2+1}` as a vector.
    pub fn row(&self, i1: usize, i2: usize) -> Gf2Vector {
        let n = self.dim();
        assert!(i1 < n && i2 < n, "cube index out of range");
        Gf2Vector::truncated(n, self.rows[i1 * n + i2])
    }

    /// Entry `A_{i1 i2 i3}` with 0-based indices.
    pub fn get(&self, i1: usize, i2: usize, i3: usize) -> Result<bool> {
        let n = self.dim();
        for index in [i1, i2, i3] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
        }
        Ok(self.rows[i1 * n + i2] >> i3 & 1 == 1)
    }

    /// Bilinear product of `x` and `y`.
    pub fn multiply(&self, x: Gf2Vector, y: Gf2Vector) -> Result<Gf2Vector> {
        same_dim(self.dim(), x.dim())?;
        same_dim(self.dim(), y.dim())?;
        Ok(Gf2Vector::truncated(
            self.dim(),
            self.mul_bits(x.bits(), y.bits()),
        ))
    }

    #[inline]
    pub(crate) fn mul_bits(&self, x: u16, y: u16) -> u16 {
        let n = self.dim();
        let mut acc = 0;
        let mut xs = x;
        while xs != 0 {
            let i1 = xs.trailing_zeros() as usize;
            xs &= xs - 1;
            let base = &self.rows[i1 * n..i1 * n + n];
            let mut ys = y;
            while ys != 0 {
                acc ^= base[ys.trailing_zeros() as usize];
                ys &= ys - 1;
            }
        }
        acc
    }

    /// `L_x`, the matrix of `y -> x y`.
    pub fn left_mul_matrix(&self, x: Gf2Vector) -> Result<Gf2Matrix> {
        same_dim(self.dim(), x.dim())?;
        let n = self.dim();
        let mut cols = vec![0u16; n];
        for i1 in x.support() {
            for (c, r) in cols.iter_mut().zip(&self.rows[i1 * n..i1 * n + n]) {
                *c ^= r;
            }
        }
        Gf2Matrix::from_column_bits(n, &cols)
    }

    /// `R_y`, the matrix of `x -> x y`.
    pub fn right_mul_matrix(&self, y: Gf2Vector) -> Result<Gf2Matrix> {
        same_dim(self.dim(), y.dim())?;
        let n = self.dim();
        let cols: Vec<u16> = (0..n).map(|i| self.mul_bits(1 << i, y.bits())).collect();
        Gf2Matrix::from_column_bits(n, &cols)
    }

    /// The cube of the opposite algebra: entry `(i1, i2, i3)` becomes
    /// entry `(i2, i1, i3)`.
    pub fn opposite(&self) -> Self {
        let n = self.dim();
        let mut rows = vec![0; n * n];
        for i1 in 0..n {
            for i2 in 0..n {
                rows[i2 * n + i1] = self.rows[i1 * n + i2];
            }
        }
        Self { n: self.n, rows }
    }

    /// First pair of nonzero elements with zero product, scanning `x` then
    /// `y` in increasing integer order.
    pub fn find_zero_divisor(&self) -> Option<(Gf2Vector, Gf2Vector)> {
        let n = self.dim();
        let top = 1u32 << n;
        for x in 1..top {
            let left = self
                .left_mul_matrix(Gf2Vector::truncated(n, x as u16))
                .expect("same dimension");
            for y in 1..top {
                if left.apply_bits(y as u16) == 0 {
                    return Some((
                        Gf2Vector::truncated(n, x as u16),
                        Gf2Vector::truncated(n, y as u16),
                    ));
                }
            }
        }
        None
    }

    /// True iff every product of two nonzero elements is nonzero.
    pub fn has_no_zero_divisors(&self) -> bool {
        self.find_zero_divisor().is_none()
    }

    /// The unity `a_1`; `None` in dimension 0.
    pub fn one(&self) -> Option<Gf2Vector> {
        (self.n > 0).then(|| Gf2Vector::truncated(self.dim(), 1))
    }
}

impl fmt::Debug for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cube")
            .field("n", &self.n)
            .field("basis", &self.to_basis())
            .finish()
    }
}

/// The ordered matrices `A_1..A_n`, with `A_i` the matrix of left
/// multiplication by `a_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StandardBasis {
    n: u8,
    mats: Vec<Gf2Matrix>,
}

impl StandardBasis {
    pub fn new(mats: Vec<Gf2Matrix>) -> Result<Self> {
        let n = mats.len();
        check_dim(n)?;
        for m in &mats {
            same_dim(n, m.dim())?;
        }
        Ok(Self { n: n as u8, mats })
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    pub fn matrices(&self) -> &[Gf2Matrix] {
        &self.mats
    }

    /// `A_{i+1}`.
    pub fn matrix(&self, i: usize) -> &Gf2Matrix {
        &self.mats[i]
    }

    /// `sum_i lambda_i A_i`.
    pub fn combination(&self, lambda: Gf2Vector) -> Result<Gf2Matrix> {
        same_dim(self.dim(), lambda.dim())?;
        let mut acc = Gf2Matrix::zero(self.dim())?;
        for i in lambda.support() {
            acc ^= self.mats[i];
        }
        Ok(acc)
    }

    pub fn to_cube(&self) -> Cube {
        Cube::from_basis(self)
    }

    /// Checks the three defining conditions: the first matrix is the
    /// identity, the first column of `A_i` is `e_i`, and every nonzero
    /// combination is invertible. On failure the report names the first
    /// offending matrix or the smallest failing combination.
    pub fn verify(&self) -> VerificationReport {
        if let Some(r) = self.check_shape() {
            return r;
        }
        let n = self.dim();
        let witness = singular_combination(self, 1, 1u32 << n);
        self.combination_report(witness)
    }

    /// Same result as [`StandardBasis::verify`], with the combination sweep
    /// split over `threads` workers.
    pub fn verify_parallel(&self, threads: usize) -> VerificationReport {
        if let Some(r) = self.check_shape() {
            return r;
        }
        let total = 1u32 << self.dim();
        let threads = threads.clamp(1, total as usize) as u32;
        let chunk = total.div_ceil(threads);
        let witness = thread::scope(|s| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    let lo = (t * chunk).max(1);
                    let hi = ((t + 1) * chunk).min(total);
                    s.spawn(move || singular_combination(self, lo, hi))
                })
                .collect();
            handles
                .into_iter()
                .filter_map(|h| h.join().expect("verification worker panicked"))
                .min()
        });
        self.combination_report(witness)
    }

    fn check_shape(&self) -> Option<VerificationReport> {
        let n = self.dim();
        if n == 0 {
            return None;
        }
        if self.mats[0] != Gf2Matrix::identity(n).expect("checked dimension") {
            return Some(VerificationReport::failed(
                Condition::IdentityMatrix,
                Witness::Matrix(0),
            ));
        }
        (0..n)
            .find(|&i| self.mats[i].column_bits()[0] != 1 << i)
            .map(|i| VerificationReport::failed(Condition::UnitColumn, Witness::Matrix(i)))
    }

    fn combination_report(&self, witness: Option<u16>) -> VerificationReport {
        match witness {
            None => VerificationReport::pass(),
            Some(lambda) => VerificationReport::failed(
                Condition::SingularCombination,
                Witness::Combination(Gf2Vector::truncated(self.dim(), lambda)),
            ),
        }
    }
}

/// Smallest `lambda` in `lo..hi` whose combination is singular. The range
/// is walked in Gray-code order (index `k` visits `k ^ (k >> 1)`), so each
/// step changes the running combination by a single matrix.
fn singular_combination(basis: &StandardBasis, lo: u32, hi: u32) -> Option<u16> {
    if lo >= hi {
        return None;
    }
    let n = basis.dim();
    let gray = |k: u32| (k ^ (k >> 1)) as u16;
    let mut current = basis
        .combination(Gf2Vector::truncated(n, gray(lo)))
        .expect("same dimension");
    let mut best: Option<u16> = None;
    for k in lo..hi {
        if k > lo {
            current ^= basis.mats[k.trailing_zeros() as usize];
        }
        let lambda = gray(k);
        if lambda != 0 && best.is_none_or(|b| lambda < b) && !current.is_invertible() {
            best = Some(lambda);
        }
    }
    best
}

/// Which defining condition a basis violates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Condition {
    IdentityMatrix,
    SingularCombination,
    UnitColumn,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::IdentityMatrix => "IdentityMatrix",
            Condition::SingularCombination => "SingularCombination",
            Condition::UnitColumn => "UnitColumn",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Witness {
    /// 0-based index of the offending matrix.
    Matrix(usize),
    /// Coefficient vector of a singular combination.
    Combination(Gf2Vector),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VerificationReport {
    failure: Option<(Condition, Witness)>,
}

impl VerificationReport {
    fn pass() -> Self {
        Self { failure: None }
    }

    fn failed(condition: Condition, witness: Witness) -> Self {
        Self {
            failure: Some((condition, witness)),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn failed_condition(&self) -> Option<Condition> {
        self.failure.map(|f| f.0)
    }

    pub fn witness(&self) -> Option<Witness> {
        self.failure.map(|f| f.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poly::Gf2Poly;
    use proptest::prelude::*;
    use proptest::strategy::ValueTree;

    fn v(s: &str) -> Gf2Vector {
        Gf2Vector::from_bit_str(s).unwrap()
    }

    fn e(n: usize, i: usize) -> Gf2Vector {
        Gf2Vector::unit(n, i).unwrap()
    }

    /// Verification by direct rank computation in plain integer order.
    fn brute_verify(b: &StandardBasis) -> Option<u16> {
        let n = b.dim();
        (1u32..1 << n)
            .map(|l| l as u16)
            .find(|&l| b.combination(Gf2Vector::new(n, l).unwrap()).unwrap().rank() < n)
    }

    fn arb_unit_column_basis(n: usize) -> impl Strategy<Value = StandardBasis> {
        proptest::collection::vec(0u16..=mask(n), (n - 1) * (n - 1)).prop_map(move |free| {
            let mut mats = vec![Gf2Matrix::identity(n).unwrap()];
            for i in 1..n {
                let mut cols = vec![1u16 << i];
                cols.extend_from_slice(&free[(i - 1) * (n - 1)..i * (n - 1)]);
                mats.push(Gf2Matrix::from_column_bits(n, &cols).unwrap());
            }
            StandardBasis::new(mats).unwrap()
        })
    }

    #[test]
    fn cube_from_basis_examples() {
        let id1 = StandardBasis::new(vec![Gf2Matrix::identity(1).unwrap()]).unwrap();
        let c = id1.to_cube();
        assert!(c.get(0, 0, 0).unwrap());
        let example = fixtures::paper_example().to_cube();
        // A_{2,2,3} = 1
        assert!(example.get(1, 1, 2).unwrap());
        assert!(example.get(7, 0, 0).is_err());
        assert_eq!(example.to_basis(), fixtures::paper_example());
    }

    #[test]
    fn cube_entries_are_matrix_entries_transposed() {
        let b = fixtures::paper_example();
        let c = b.to_cube();
        for i1 in 0..7 {
            for i2 in 0..7 {
                for i3 in 0..7 {
                    assert_eq!(c.get(i1, i2, i3).unwrap(), b.matrix(i1).get(i3, i2));
                }
            }
        }
    }

    #[test]
    fn zero_cube_gives_zero_matrices() {
        let b = Cube::zero(4).unwrap().to_basis();
        assert_eq!(b.dim(), 4);
        assert!(b.matrices().iter().all(Gf2Matrix::is_zero));
    }

    #[test]
    fn opposite_basis_reads_rows() {
        let b = fixtures::paper_example();
        let ob = b.to_cube().opposite().to_basis();
        // Column i2 of opposite A_{i1} is the product a_{i2} a_{i1}, that is
        // column i1 of A_{i2}.
        for i1 in 0..7 {
            for i2 in 0..7 {
                assert_eq!(ob.matrix(i1).column(i2), b.matrix(i2).column(i1));
            }
        }
    }

    #[test]
    fn multiply_examples() {
        let c = fixtures::paper_example().to_cube();
        assert_eq!(c.multiply(e(7, 1), e(7, 1)).unwrap(), e(7, 2));
        assert_eq!(c.multiply(e(7, 1), e(7, 2)).unwrap(), v("1100000"));
        assert_eq!(c.multiply(e(7, 1), e(7, 3)).unwrap(), v("0001100"));
        for y in 0..128 {
            let y = Gf2Vector::new(7, y).unwrap();
            assert_eq!(c.multiply(e(7, 0), y).unwrap(), y);
        }
        assert!(c.multiply(e(3, 0), e(7, 0)).is_err());
    }

    #[test]
    fn left_and_right_matrices() {
        let b = fixtures::paper_example();
        let c = b.to_cube();
        let id = Gf2Matrix::identity(7).unwrap();
        assert_eq!(c.left_mul_matrix(e(7, 0)).unwrap(), id);
        assert_eq!(
            c.left_mul_matrix(v("0110000")).unwrap(),
            *b.matrix(1) ^ *b.matrix(2)
        );
        assert!(c
            .left_mul_matrix(Gf2Vector::zero(7).unwrap())
            .unwrap()
            .is_zero());
        assert_eq!(c.right_mul_matrix(e(7, 0)).unwrap(), id);
        let r2 = c.right_mul_matrix(e(7, 1)).unwrap();
        assert_eq!(r2.column(3), e(7, 5));
        for i in 0..7 {
            assert_eq!(r2.column(i), c.multiply(e(7, i), e(7, 1)).unwrap());
        }
        assert!(c
            .right_mul_matrix(Gf2Vector::zero(7).unwrap())
            .unwrap()
            .is_zero());
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn left_mul_matches_full_table() {
        let c = fixtures::paper_example().to_cube();
        // Table built from basis products only, extended bilinearly by hand.
        let mut table = vec![vec![0u16; 128]; 128];
        for x in 0..128usize {
            for y in 0..128usize {
                let mut acc = 0;
                for i in 0..7 {
                    for j in 0..7 {
                        if x >> i & 1 == 1 && y >> j & 1 == 1 {
                            acc ^= c.row(i, j).bits();
                        }
                    }
                }
                table[x][y] = acc;
            }
        }
        for (x, row) in table.iter().enumerate() {
            let l = c
                .left_mul_matrix(Gf2Vector::new(7, x as u16).unwrap())
                .unwrap();
            for (y, &p) in row.iter().enumerate() {
                assert_eq!(l.apply_bits(y as u16), p);
            }
        }
    }

    #[test]
    fn verify_examples() {
        assert!(fixtures::paper_example().verify().passed());

        let mut mats = fixtures::paper_example().matrices().to_vec();
        mats[0] = mats[1];
        let r = StandardBasis::new(mats).unwrap().verify();
        assert_eq!(r.failed_condition(), Some(Condition::IdentityMatrix));
        assert_eq!(r.witness(), Some(Witness::Matrix(0)));

        assert!(fixtures::f128().verify().passed());

        let mut mats = fixtures::paper_example().matrices().to_vec();
        mats[6] = mats[6].with_column(4, Gf2Vector::zero(7).unwrap()).unwrap();
        let b = StandardBasis::new(mats).unwrap();
        let r = b.verify();
        assert_eq!(r.failed_condition(), Some(Condition::SingularCombination));
        assert_eq!(r.witness(), Some(Witness::Combination(e(7, 6))));
        assert_eq!(brute_verify(&b), Some(1 << 6));
    }

    #[test]
    fn verify_unit_column_failure() {
        let mut mats = fixtures::paper_example().matrices().to_vec();
        mats[3] = mats[3].with_column(0, e(7, 4)).unwrap();
        let r = StandardBasis::new(mats).unwrap().verify();
        assert_eq!(r.failed_condition(), Some(Condition::UnitColumn));
        assert_eq!(r.witness(), Some(Witness::Matrix(3)));
    }

    #[test]
    fn degenerate_dimensions() {
        let empty = StandardBasis::new(vec![]).unwrap();
        assert!(empty.verify().passed());
        assert_eq!(empty.to_cube().dim(), 0);
        assert_eq!(empty.to_cube().to_basis(), empty);
        assert!(empty.to_cube().has_no_zero_divisors());

        let f2 = StandardBasis::new(vec![Gf2Matrix::identity(1).unwrap()]).unwrap();
        assert!(f2.verify().passed());
        assert!(f2.to_cube().has_no_zero_divisors());
        let bad = StandardBasis::new(vec![Gf2Matrix::zero(1).unwrap()]).unwrap();
        assert_eq!(
            bad.verify().failed_condition(),
            Some(Condition::IdentityMatrix)
        );
    }

    #[test]
    fn zero_divisor_examples() {
        assert!(fixtures::paper_example().to_cube().has_no_zero_divisors());
        assert!(fixtures::f8().to_cube().has_no_zero_divisors());
        let singular = Gf2Matrix::from_row_strs(&["00", "10"]).unwrap();
        let b = StandardBasis::new(vec![Gf2Matrix::identity(2).unwrap(), singular]).unwrap();
        assert!(!b.to_cube().has_no_zero_divisors());
    }

    #[test]
    fn opposite_examples() {
        let c = fixtures::paper_example().to_cube();
        assert_eq!(c.opposite().opposite(), c);
        let o = c.opposite();
        assert_eq!(o.multiply(e(7, 1), e(7, 3)).unwrap(), e(7, 5));
        assert_eq!(c.multiply(e(7, 3), e(7, 1)).unwrap(), e(7, 5));
        let f8 = fixtures::f8().to_cube();
        assert_eq!(f8.opposite(), f8);
    }

    #[test]
    fn parallel_verification_matches_sequential() {
        let mut mats = fixtures::paper_example().matrices().to_vec();
        mats[5] = mats[5].with_column(2, mats[4].column(2)).unwrap();
        let b = StandardBasis::new(mats).unwrap();
        for t in [1, 2, 3, 7, 64, 500] {
            assert_eq!(b.verify_parallel(t), b.verify());
            assert_eq!(
                fixtures::paper_example().verify_parallel(t),
                fixtures::paper_example().verify()
            );
        }
    }

    #[test]
    fn field_bases_from_companion_powers() {
        for p in ["x^2+x+1", "x^3+x^2+1", "x^4+x+1", "x^5+x^2+1"] {
            let c = Gf2Matrix::companion(p.parse::<Gf2Poly>().unwrap()).unwrap();
            let n = c.dim();
            let b = StandardBasis::new((0..n as u32).map(|k| c.pow(k)).collect()).unwrap();
            assert!(b.verify().passed(), "{p}");
            assert_eq!(b.to_cube().opposite(), b.to_cube());
        }
        // reducible: x^4+x^2+1 = (x^2+x+1)^2 gives a zero divisor
        let c = Gf2Matrix::companion("x^4+x^2+1".parse().unwrap()).unwrap();
        let b = StandardBasis::new((0..4).map(|k| c.pow(k)).collect()).unwrap();
        assert_eq!(
            b.verify().failed_condition(),
            Some(Condition::SingularCombination)
        );
        assert!(!b.to_cube().has_no_zero_divisors());
    }

    /// Flips one random bit outside the first columns.
    fn perturb(b: &StandardBasis, i: usize, j: usize, k: usize) -> StandardBasis {
        let mut mats = b.matrices().to_vec();
        let col = mats[i].column(j);
        mats[i] = mats[i].with_column(j, col ^ e(b.dim(), k)).unwrap();
        StandardBasis::new(mats).unwrap()
    }

    fn check_equivalence(b: &StandardBasis) {
        let report = b.verify();
        let cube = b.to_cube();
        match report.failed_condition() {
            None => assert!(cube.has_no_zero_divisors()),
            Some(Condition::SingularCombination) => {
                let Some(Witness::Combination(lambda)) = report.witness() else {
                    panic!("missing combination witness");
                };
                let y = b.combination(lambda).unwrap().kernel_vector().unwrap();
                assert!(cube.multiply(lambda, y).unwrap().is_zero());
                assert!(!cube.has_no_zero_divisors());
            }
            Some(c) => panic!("unexpected failure {c}"),
        }
    }

    #[test]
    fn verification_agrees_with_zero_divisor_sweep() {
        check_equivalence(&fixtures::paper_example());
        check_equivalence(&fixtures::f128());
        check_equivalence(&fixtures::f8());
        let mut runner = proptest::test_runner::TestRunner::deterministic();
        let mut failing = 0;
        for _ in 0..100 {
            let (base, i, j, k) = (0..3usize, 1..7usize, 1..7usize, 0..7usize)
                .new_tree(&mut runner)
                .unwrap()
                .current();
            let b = match base {
                0 => fixtures::paper_example(),
                1 => fixtures::f128(),
                _ => fixtures::paper_example().to_cube().opposite().to_basis(),
            };
            let p = perturb(&b, i, j, k);
            if !p.verify().passed() {
                failing += 1;
            }
            check_equivalence(&p);
        }
        assert!(failing > 50, "perturbations should mostly break the basis");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn verify_matches_brute_force(b in (2usize..=5).prop_flat_map(arb_unit_column_basis)) {
            let report = b.verify();
            let expected = brute_verify(&b);
            match expected {
                None => prop_assert!(report.passed()),
                Some(l) => prop_assert_eq!(
                    report.witness(),
                    Some(Witness::Combination(Gf2Vector::new(b.dim(), l).unwrap()))
                ),
            }
            prop_assert_eq!(report.passed(), b.to_cube().has_no_zero_divisors());
        }

        #[test]
        fn bilinear(x in 0u16..128, x2 in 0u16..128, y in 0u16..128, y2 in 0u16..128) {
            let c = fixtures::paper_example().to_cube();
            let [x, x2, y, y2] = [x, x2, y, y2].map(|b| Gf2Vector::new(7, b).unwrap());
            let m = |a, b| c.multiply(a, b).unwrap();
            prop_assert_eq!(m(x ^ x2, y), m(x, y) ^ m(x2, y));
            prop_assert_eq!(m(x, y ^ y2), m(x, y) ^ m(x, y2));
            prop_assert_eq!(c.left_mul_matrix(x).unwrap().mat_vec(y).unwrap(), m(x, y));
            prop_assert_eq!(c.right_mul_matrix(y).unwrap().mat_vec(x).unwrap(), m(x, y));
        }

        #[test]
        fn unity_and_round_trips(b in (1usize..=6).prop_flat_map(arb_unit_column_basis), x in any::<u16>()) {
            let n = b.dim();
            let c = b.to_cube();
            let x = Gf2Vector::truncated(n, x);
            let one = c.one().unwrap();
            prop_assert_eq!(c.multiply(one, x).unwrap(), x);
            prop_assert_eq!(c.multiply(x, one).unwrap(), x);
            prop_assert_eq!(c.to_basis(), b.clone());
            prop_assert_eq!(Cube::from_basis(&c.to_basis()), c.clone());
            prop_assert_eq!(c.opposite().opposite(), c.clone());
            if b.verify().passed() {
                prop_assert!(c.opposite().to_basis().verify().passed());
            }
        }
    }
}
