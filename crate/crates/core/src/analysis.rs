//! Structural analysis: subsemifields, commutativity, associativity, field
//! identification and nuclei.
//!
//! Every check here runs over basis elements only. The product is bilinear,
//! so an identity that holds on all basis pairs (or triples) holds on the
//! whole space, and witnesses are reported as basis elements.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{check_dim, same_dim, Gf2Vector};
use crate::poly::Gf2Poly;
use crate::semifield::Cube;

/// Outcome of an identity check: holds everywhere, or the first failing
/// tuple of basis elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W: Copy> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<W> {
        match *self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// A subspace of `F_2^n` held in its canonical reduced echelon basis: each
/// row's pivot is its lowest set bit, rows are sorted by pivot, and no row
/// has a bit set at another row's pivot.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: u8,
    rows: Vec<u16>,
}

impl Subspace {
    pub fn span(n: usize, vectors: &[Gf2Vector]) -> Result<Self> {
        check_dim(n)?;
        let mut s = Self {
            n: n as u8,
            rows: Vec::new(),
        };
        for v in vectors {
            same_dim(n, v.dim())?;
            s.insert(v.bits());
        }
        Ok(s)
    }

    fn from_raw(n: usize, vectors: &[u16]) -> Self {
        let mut s = Self {
            n: n as u8,
            rows: Vec::new(),
        };
        for &v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn whole(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self {
            n: n as u8,
            rows: (0..n).map(|j| 1u16 << j).collect(),
        })
    }

    fn insert(&mut self, bits: u16) {
        let v = self.reduce(bits);
        if v == 0 {
            return;
        }
        let pivot = v.trailing_zeros();
        for r in self.rows.iter_mut() {
            if *r >> pivot & 1 == 1 {
                *r ^= v;
            }
        }
        let at = self.rows.partition_point(|r| r.trailing_zeros() < pivot);
        self.rows.insert(at, v);
    }

    #[inline]
    fn reduce(&self, mut bits: u16) -> u16 {
        for &r in &self.rows {
            if bits >> r.trailing_zeros() & 1 == 1 {
                bits ^= r;
            }
        }
        bits
    }

    pub fn ambient_dim(&self) -> usize {
        self.n as usize
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical basis.
    pub fn basis(&self) -> Vec<Gf2Vector> {
        self.rows
            .iter()
            .map(|&r| Gf2Vector::truncated(self.ambient_dim(), r))
            .collect()
    }

    pub fn contains(&self, v: Gf2Vector) -> bool {
        v.dim() == self.ambient_dim() && self.reduce(v.bits()) == 0
    }

    pub fn contains_one(&self) -> bool {
        self.n > 0 && self.reduce(1) == 0
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.n == other.n && self.rows.iter().all(|&r| other.reduce(r) == 0)
    }

    /// The `2^m` elements, indexed by coefficient vectors over the
    /// canonical basis in increasing integer order.
    pub fn elements(&self) -> impl Iterator<Item = Gf2Vector> + '_ {
        (0u32..1 << self.dim()).map(move |k| self.element(k))
    }

    fn element(&self, coeffs: u32) -> Gf2Vector {
        let mut bits = 0;
        for (i, &r) in self.rows.iter().enumerate() {
            if coeffs >> i & 1 == 1 {
                bits ^= r;
            }
        }
        Gf2Vector::truncated(self.ambient_dim(), bits)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span")?;
        f.debug_list().entries(self.basis()).finish()
    }
}

/// Number of `k`-dimensional subspaces of `F_2^n`.
pub fn gaussian_binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num *= (1u128 << (n - i)) - 1;
        den *= (1u128 << (i + 1)) - 1;
    }
    (num / den) as u64
}

/// Every `m`-dimensional subspace of `F_2^n` containing `e_1`, each once,
/// ordered by pivot set (lexicographic) and then by the free entries read
/// as a counter.
pub fn enumerate_subspaces_containing_one(n: usize, m: usize) -> Result<SubspacesContainingOne> {
    check_dim(n)?;
    if m == 0 || m > n {
        return Err(Error::SubspaceDimension { m, n });
    }
    let pivots: Vec<usize> = (1..m).collect();
    let mut it = SubspacesContainingOne {
        n,
        pivots: Some(pivots),
        free: Vec::new(),
        counter: 0,
    };
    it.layout();
    Ok(it)
}

/// Iterator returned by [`enumerate_subspaces_containing_one`].
#[derive(Clone, Debug)]
pub struct SubspacesContainingOne {
    n: usize,
    // Pivot positions of the rows after e_1; None when exhausted.
    pivots: Option<Vec<usize>>,
    // (row, bit position) of each free entry, counter bit order.
    free: Vec<(usize, usize)>,
    counter: u64,
}

impl SubspacesContainingOne {
    fn layout(&mut self) {
        self.free.clear();
        self.counter = 0;
        let Some(pivots) = &self.pivots else {
            return;
        };
        for (r, &p) in pivots.iter().enumerate() {
            for q in p + 1..self.n {
                if !pivots.contains(&q) {
                    self.free.push((r, q));
                }
            }
        }
    }

    fn advance_pivots(&mut self) {
        let n = self.n;
        let Some(p) = self.pivots.as_mut() else {
            return;
        };
        let k = p.len();
        // Next k-combination of {1..n-1} in lexicographic order.
        let Some(i) = (0..k).rev().find(|&i| p[i] < n - k + i) else {
            self.pivots = None;
            return;
        };
        p[i] += 1;
        for j in i + 1..k {
            p[j] = p[j - 1] + 1;
        }
        self.layout();
    }
}

impl Iterator for SubspacesContainingOne {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let pivots = self.pivots.as_ref()?;
        let mut rows = Vec::with_capacity(pivots.len() + 1);
        rows.push(1u16);
        rows.extend(pivots.iter().map(|&p| 1u16 << p));
        for (b, &(r, q)) in self.free.iter().enumerate() {
            if self.counter >> b & 1 == 1 {
                rows[r + 1] |= 1 << q;
            }
        }
        let s = Subspace {
            n: self.n as u8,
            rows,
        };
        self.counter += 1;
        if self.counter >> self.free.len() != 0 {
            self.advance_pivots();
        }
        Some(s)
    }
}

/// True iff the subspace is closed under the product.
pub fn check_closure(c: &Cube, s: &Subspace) -> Result<bool> {
    same_dim(c.dim(), s.ambient_dim())?;
    Ok(s.rows
        .iter()
        .all(|&x| s.rows.iter().all(|&y| s.reduce(c.mul_bits(x, y)) == 0)))
}

/// Commutativity of the whole algebra; the witness is the first pair of
/// basis elements `(a_i, a_j)`, `i < j`, that do not commute.
pub fn is_commutative(c: &Cube) -> Verdict<(Gf2Vector, Gf2Vector)> {
    let n = c.dim();
    for i in 0..n {
        for j in i + 1..n {
            if c.row(i, j) != c.row(j, i) {
                return Verdict::Fails((unit(n, i), unit(n, j)));
            }
        }
    }
    Verdict::Holds
}

/// Commutativity restricted to a subspace, checked on its canonical basis.
pub fn is_commutative_on(c: &Cube, s: &Subspace) -> Result<Verdict<(Gf2Vector, Gf2Vector)>> {
    same_dim(c.dim(), s.ambient_dim())?;
    let b = s.basis();
    for (i, &x) in b.iter().enumerate() {
        for &y in &b[i + 1..] {
            if c.mul_bits(x.bits(), y.bits()) != c.mul_bits(y.bits(), x.bits()) {
                return Ok(Verdict::Fails((x, y)));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Associativity over basis triples of `s` (or of the whole space), in
/// lexicographic order of the triple.
pub fn is_associative(
    c: &Cube,
    s: Option<&Subspace>,
) -> Result<Verdict<(Gf2Vector, Gf2Vector, Gf2Vector)>> {
    let whole;
    let s = match s {
        Some(s) => s,
        None => {
            whole = Subspace::whole(c.dim())?;
            &whole
        }
    };
    same_dim(c.dim(), s.ambient_dim())?;
    let b = &s.rows;
    for &x in b {
        for &y in b {
            let xy = c.mul_bits(x, y);
            for &z in b {
                if c.mul_bits(xy, z) != c.mul_bits(x, c.mul_bits(y, z)) {
                    let v = |w| Gf2Vector::truncated(c.dim(), w);
                    return Ok(Verdict::Fails((v(x), v(y), v(z))));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// A subalgebra recognised as the field `F_{2^degree}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldId {
    pub degree: usize,
    pub minimal_polynomial: Gf2Poly,
    pub generator: Gf2Vector,
}

/// Identifies a closed, associative and commutative subspace as a finite
/// field. The generator is the first canonical basis vector of full
/// multiplicative order `2^m - 1`; if no basis vector has full order, the
/// first such element of the subspace in enumeration order is used.
pub fn identify_field(c: &Cube, s: &Subspace) -> Result<Option<FieldId>> {
    same_dim(c.dim(), s.ambient_dim())?;
    if !s.contains_one()
        || !check_closure(c, s)?
        || !is_associative(c, Some(s))?.holds()
        || !is_commutative_on(c, s)?.holds()
    {
        return Ok(None);
    }
    let m = s.dim();
    let target = (1u64 << m) - 1;
    let generator = s
        .basis()
        .into_iter()
        .chain(s.elements())
        .find(|&g| multiplicative_order(c, g.bits()) == Some(target));
    let Some(generator) = generator else {
        // A finite commutative associative division algebra always has a
        // primitive element; reaching here means the input has zero divisors.
        return Ok(None);
    };
    Ok(Some(FieldId {
        degree: m,
        minimal_polynomial: minimal_polynomial(c, generator.bits()),
        generator,
    }))
}

fn multiplicative_order(c: &Cube, g: u16) -> Option<u64> {
    if g == 0 {
        return None;
    }
    let limit = 1u64 << c.dim();
    let mut p = g;
    let mut k = 1u64;
    while p != 1 {
        p = c.mul_bits(p, g);
        k += 1;
        if p == 0 || k >= limit {
            return None;
        }
    }
    Some(k)
}

/// Minimal polynomial of `g` found from the first linear dependency among
/// its powers `1, g, g^2, ...`.
fn minimal_polynomial(c: &Cube, g: u16) -> Gf2Poly {
    // Pivot table keyed by leading bit: (vector, combination of powers).
    let mut table = [(0u16, 0u64); 16];
    let mut power = 1u16;
    for k in 0..=c.dim() {
        let (mut v, mut combo) = (power, 1u64 << k);
        while v != 0 {
            let lead = 15 - v.leading_zeros() as usize;
            if table[lead].0 == 0 {
                table[lead] = (v, combo);
                break;
            }
            v ^= table[lead].0;
            combo ^= table[lead].1;
        }
        if v == 0 {
            return Gf2Poly::from_bits(combo);
        }
        power = c.mul_bits(power, g);
    }
    unreachable!("n+1 powers in dimension n are dependent")
}

/// Findings for one candidate subspace.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubalgebraReport {
    pub subspace: Subspace,
    pub closed: bool,
    pub associative: bool,
    pub commutative: bool,
    pub field: Option<FieldId>,
}

pub fn analyze_subspace(c: &Cube, s: &Subspace) -> Result<SubalgebraReport> {
    let closed = check_closure(c, s)?;
    let associative = is_associative(c, Some(s))?.holds();
    let commutative = is_commutative_on(c, s)?.holds();
    let field = if closed && associative && commutative {
        identify_field(c, s)?
    } else {
        None
    };
    Ok(SubalgebraReport {
        subspace: s.clone(),
        closed,
        associative,
        commutative,
        field,
    })
}

/// Result of scanning all `m`-dimensional subspaces containing the unity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubsemifieldScan {
    pub dimension: usize,
    pub candidates: u64,
    pub reports: Vec<SubalgebraReport>,
}

/// Closed `m`-dimensional subspaces containing `1`, in enumeration order.
pub fn find_subsemifields(c: &Cube, m: usize) -> Result<SubsemifieldScan> {
    let mut candidates = 0;
    let mut reports = Vec::new();
    for s in enumerate_subspaces_containing_one(c.dim(), m)? {
        candidates += 1;
        if check_closure(c, &s)? {
            reports.push(analyze_subspace(c, &s)?);
        }
    }
    Ok(SubsemifieldScan {
        dimension: m,
        candidates,
        reports,
    })
}

/// Left, middle and right nuclei and the center, as subspaces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Nuclei {
    pub left: Subspace,
    pub middle: Subspace,
    pub right: Subspace,
    pub center: Subspace,
}

impl Nuclei {
    pub fn dims(&self) -> (usize, usize, usize, usize) {
        (
            self.left.dim(),
            self.middle.dim(),
            self.right.dim(),
            self.center.dim(),
        )
    }
}

/// Each nucleus is the common kernel of the linear maps obtained by fixing
/// two basis elements in the associator.
pub fn nuclei(c: &Cube) -> Nuclei {
    let n = c.dim();
    let whole = Subspace::whole(n).expect("cube dimension");
    let m = |x, y| c.mul_bits(x, y);
    let assoc = |x, y, z| m(m(x, y), z) ^ m(x, m(y, z));
    let pairs: Vec<(u16, u16)> = (0..n)
        .flat_map(|j| (0..n).map(move |k| (1u16 << j, 1u16 << k)))
        .collect();

    let left = common_kernel(&whole, pairs.iter().map(|&(a, b)| move |x| assoc(x, a, b)));
    let middle = common_kernel(&whole, pairs.iter().map(|&(a, b)| move |x| assoc(a, x, b)));
    let right = common_kernel(&whole, pairs.iter().map(|&(a, b)| move |x| assoc(a, b, x)));
    let nucleus = intersect(&intersect(&left, &middle), &right);
    let center = common_kernel(
        &nucleus,
        (0..n).map(|j| move |x| m(x, 1 << j) ^ m(1 << j, x)),
    );
    Nuclei {
        left,
        middle,
        right,
        center,
    }
}

/// Largest subspace of `start` on which every map vanishes.
fn common_kernel<F: Fn(u16) -> u16>(
    start: &Subspace,
    maps: impl IntoIterator<Item = F>,
) -> Subspace {
    let mut space = start.rows.clone();
    for f in maps {
        if space.is_empty() {
            break;
        }
        space = kernel_within(&space, &f);
    }
    Subspace::from_raw(start.ambient_dim(), &space)
}

/// Basis of `{x in span(space) : f(x) = 0}` for linear `f`.
fn kernel_within(space: &[u16], f: &impl Fn(u16) -> u16) -> Vec<u16> {
    let mut table = [(0u16, 0u16); 16];
    let mut kernel = Vec::new();
    for &x in space {
        let (mut img, mut elt) = (f(x), x);
        while img != 0 {
            let lead = 15 - img.leading_zeros() as usize;
            if table[lead].0 == 0 {
                table[lead] = (img, elt);
                break;
            }
            img ^= table[lead].0;
            elt ^= table[lead].1;
        }
        if img == 0 {
            kernel.push(elt);
        }
    }
    kernel
}

/// Intersection of two subspaces of the same ambient space.
pub fn intersect(a: &Subspace, b: &Subspace) -> Subspace {
    // Reduction against b's canonical rows is linear with kernel b.
    common_kernel(a, [|x| b.reduce(x)])
}

fn unit(n: usize, i: usize) -> Gf2Vector {
    Gf2Vector::truncated(n, 1 << i)
}
