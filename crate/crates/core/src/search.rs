//! Backtracking search for standard bases.
//!
//! The unknowns are the columns of `A_2..A_n` that the constraints leave
//! open, filled matrix-major and by ascending column index. After every
//! assignment the search looks at each combination `sum lambda_i A_i` that
//! involves the matrix just touched: the columns of that combination that
//! are already fully known must stay linearly independent, otherwise no
//! completion can make the combination invertible and the branch is cut.
//!
//! Each combination keeps a small xor-basis of its known columns, indexed
//! by leading bit, so the independence test for a new column is a handful
//! of word operations. Entries are undone on backtrack from a log.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::error::Error;
use crate::gf2::{check_dim, mask, Gf2Matrix, Gf2Vector};
use crate::poly::Gf2Poly;
use crate::semifield::StandardBasis;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("inconsistent constraints: {0}")]
    InconsistentConstraints(String),

    #[error("split depth {depth} exceeds the {available} unassigned columns")]
    DepthOutOfRange { depth: usize, available: usize },

    #[error(transparent)]
    Core(#[from] Error),
}

/// Known bits of one column: `fixed_mask` marks pinned coordinates and
/// `fixed_bits` holds their values.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct ColumnPin {
    pub fixed_mask: u16,
    pub fixed_bits: u16,
}

/// What is pinned before the search starts. The identity first matrix and
/// the unit first columns are always part of the constraints.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchConstraints {
    n: usize,
    fixed_matrices: BTreeMap<usize, Gf2Matrix>,
    fixed_columns: BTreeMap<(usize, usize), Gf2Vector>,
    subfield_block: Option<(usize, Gf2Poly)>,
    pins: Vec<ColumnPin>,
    // Which constraint pinned each bit, for error messages.
    origins: Vec<Vec<(u16, String)>>,
}

impl SearchConstraints {
    pub fn new(n: usize) -> Result<Self, SearchError> {
        check_dim(n)?;
        if n == 0 {
            return Err(SearchError::InconsistentConstraints(
                "dimension must be at least 1".into(),
            ));
        }
        let mut c = Self {
            n,
            fixed_matrices: BTreeMap::new(),
            fixed_columns: BTreeMap::new(),
            subfield_block: None,
            pins: vec![ColumnPin::default(); n * n],
            origins: vec![Vec::new(); n * n],
        };
        for j in 0..n {
            c.pin(0, j, mask(n), 1 << j, "A_1 = identity")?;
        }
        for i in 1..n {
            c.pin(
                i,
                0,
                mask(n),
                1 << i,
                &format!("first column of A_{} = e_{}", i + 1, i + 1),
            )?;
        }
        Ok(c)
    }

    /// Pins matrix `index` (0-based) entirely.
    pub fn with_fixed_matrix(mut self, index: usize, m: Gf2Matrix) -> Result<Self, SearchError> {
        self.check_index(index)?;
        if m.dim() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: m.dim(),
            }
            .into());
        }
        let label = format!("fixed matrix A_{}", index + 1);
        for j in 0..self.n {
            self.pin(index, j, mask(self.n), m.column(j).bits(), &label)?;
        }
        self.fixed_matrices.insert(index, m);
        Ok(self)
    }

    /// Pins column `column` of matrix `index` (both 0-based).
    pub fn with_fixed_column(
        mut self,
        index: usize,
        column: usize,
        v: Gf2Vector,
    ) -> Result<Self, SearchError> {
        self.check_index(index)?;
        self.check_index(column)?;
        if v.dim() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: v.dim(),
            }
            .into());
        }
        let label = format!("fixed column {} of A_{}", column + 1, index + 1);
        self.pin(index, column, mask(self.n), v.bits(), &label)?;
        self.fixed_columns.insert((index, column), v);
        Ok(self)
    }

    /// Pins the upper-left `m x m` blocks of `A_1..A_m` to the powers
    /// `C^0..C^(m-1)` of the companion matrix of `p` (degree `m`,
    /// irreducible) and zeroes the off-diagonal blocks of those matrices.
    pub fn with_subfield_block(mut self, p: Gf2Poly) -> Result<Self, SearchError> {
        let n = self.n;
        let m = p.degree().unwrap_or(0);
        if m == 0 || m > n {
            return Err(SearchError::InconsistentConstraints(format!(
                "subfield block polynomial {p} must have degree 1..={n}"
            )));
        }
        if !p.is_irreducible() {
            return Err(SearchError::InconsistentConstraints(format!(
                "subfield block polynomial {p} is reducible"
            )));
        }
        if self.subfield_block.is_some() {
            return Err(SearchError::InconsistentConstraints(
                "subfield block given twice".into(),
            ));
        }
        let c = Gf2Matrix::companion(p)?;
        let label = format!("subfield block {p}");
        let top = mask(m);
        for i in 0..m {
            let power = c.pow(i as u32);
            for j in 0..n {
                if j < m {
                    self.pin(i, j, mask(n), power.column(j).bits(), &label)?;
                } else {
                    self.pin(i, j, top, 0, &label)?;
                }
            }
        }
        self.subfield_block = Some((m, p));
        Ok(self)
    }

    fn check_index(&self, index: usize) -> Result<(), SearchError> {
        if index >= self.n {
            return Err(Error::IndexOutOfRange { index, n: self.n }.into());
        }
        Ok(())
    }

    fn pin(
        &mut self,
        i: usize,
        j: usize,
        bits_mask: u16,
        value: u16,
        label: &str,
    ) -> Result<(), SearchError> {
        let slot = i * self.n + j;
        let pin = &mut self.pins[slot];
        let overlap = pin.fixed_mask & bits_mask;
        let clash = (pin.fixed_bits ^ value) & overlap;
        if clash != 0 {
            let previous: Vec<&str> = self.origins[slot]
                .iter()
                .filter(|(m, _)| m & clash != 0)
                .map(|(_, l)| l.as_str())
                .collect();
            return Err(SearchError::InconsistentConstraints(format!(
                "column {} of A_{}: {label} conflicts with {}",
                j + 1,
                i + 1,
                previous.join(", ")
            )));
        }
        pin.fixed_mask |= bits_mask;
        pin.fixed_bits = (pin.fixed_bits & !bits_mask) | (value & bits_mask);
        self.origins[slot].push((bits_mask, label.to_string()));
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn fixed_matrices(&self) -> &BTreeMap<usize, Gf2Matrix> {
        &self.fixed_matrices
    }

    pub fn fixed_columns(&self) -> &BTreeMap<(usize, usize), Gf2Vector> {
        &self.fixed_columns
    }

    pub fn subfield_block(&self) -> Option<(usize, Gf2Poly)> {
        self.subfield_block
    }

    /// Pinned bits of column `j` of matrix `i`.
    pub fn pin_of(&self, i: usize, j: usize) -> ColumnPin {
        self.pins[i * self.n + j]
    }

    /// Columns with at least one free bit, in search order, as
    /// `(matrix, column)` pairs.
    pub fn unassigned_columns(&self) -> Vec<(usize, usize)> {
        let full = mask(self.n);
        (0..self.n * self.n)
            .filter(|&s| self.pins[s].fixed_mask != full)
            .map(|s| (s / self.n, s % self.n))
            .collect()
    }

    /// Total number of free bits.
    pub fn free_bits(&self) -> u32 {
        let full = mask(self.n);
        self.pins
            .iter()
            .map(|p| (full & !p.fixed_mask).count_ones())
            .sum()
    }

    /// Candidate values of column `(i, j)` in search order.
    pub fn candidates(&self, i: usize, j: usize) -> impl Iterator<Item = u16> {
        let pin = self.pin_of(i, j);
        let free = mask(self.n) & !pin.fixed_mask;
        (0u32..1 << free.count_ones()).map(move |t| pin.fixed_bits | deposit(t as u16, free))
    }
}

/// Scatters the low bits of `src` into the set positions of `positions`.
#[inline]
fn deposit(src: u16, positions: u16) -> u16 {
    let mut out = 0;
    let mut rest = positions;
    let mut k = 0;
    while rest != 0 {
        let low = rest & rest.wrapping_neg();
        if src >> k & 1 == 1 {
            out |= low;
        }
        rest ^= low;
        k += 1;
    }
    out
}

/// Limits on a search run. `None` means unlimited.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct SearchBudget {
    pub max_solutions: Option<usize>,
    pub max_nodes: Option<u64>,
    pub wall_clock: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn is_bounded(&self) -> bool {
        self.max_solutions.is_some() || self.max_nodes.is_some() || self.wall_clock.is_some()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchOutcome {
    pub bases: Vec<StandardBasis>,
    pub nodes_visited: u64,
    pub prunes: u64,
    /// True when the whole tree was traversed.
    pub exhausted: bool,
    pub elapsed: Duration,
}

/// Progress notifications emitted during a search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SearchEvent {
    Progress {
        nodes: u64,
        prunes: u64,
    },
    Solution {
        index: usize,
        nodes: u64,
    },
    Finished {
        solutions: usize,
        nodes: u64,
        prunes: u64,
        exhausted: bool,
    },
}

impl fmt::Display for SearchEvent {
    /// One `key=value` line per event.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchEvent::Progress { nodes, prunes } => {
                write!(f, "event=progress nodes={nodes} prunes={prunes}")
            }
            SearchEvent::Solution { index, nodes } => {
                write!(f, "event=solution index={index} nodes={nodes}")
            }
            SearchEvent::Finished {
                solutions,
                nodes,
                prunes,
                exhausted,
            } => write!(
                f,
                "event=finished solutions={solutions} nodes={nodes} prunes={prunes} exhausted={exhausted}"
            ),
        }
    }
}

pub fn search_standard_bases(cons: &SearchConstraints, budget: SearchBudget) -> SearchOutcome {
    search_with_observer(cons, budget, 0, &mut |_| {})
}

/// Like [`search_standard_bases`], reporting events to `observer`; a
/// progress event is sent every `progress_every` nodes (never if zero).
pub fn search_with_observer(
    cons: &SearchConstraints,
    budget: SearchBudget,
    progress_every: u64,
    observer: &mut dyn FnMut(&SearchEvent),
) -> SearchOutcome {
    let start = Instant::now();
    let mut engine = Engine::new(cons, budget, start, progress_every, observer);
    let feasible = engine.seed();
    if feasible {
        engine.descend(0);
    }
    let exhausted = !engine.stopped;
    let outcome = SearchOutcome {
        bases: engine.solutions,
        nodes_visited: engine.nodes,
        prunes: engine.prunes,
        exhausted,
        elapsed: start.elapsed(),
    };
    (engine.observer)(&SearchEvent::Finished {
        solutions: outcome.bases.len(),
        nodes: outcome.nodes_visited,
        prunes: outcome.prunes,
        exhausted,
    });
    outcome
}

struct Engine<'a> {
    n: usize,
    cons: &'a SearchConstraints,
    budget: SearchBudget,
    start: Instant,
    progress_every: u64,
    observer: &'a mut dyn FnMut(&SearchEvent),
    order: Vec<(usize, usize)>,
    // Current value of every column, matrix-major.
    cols: Vec<u16>,
    // known[j]: matrices whose column j is fully known.
    known: Vec<u16>,
    // Per combination lambda, xor-basis of its known columns by leading bit.
    spans: Vec<u16>,
    undo: Vec<(u32, u8)>,
    nodes: u64,
    prunes: u64,
    stopped: bool,
    solutions: Vec<StandardBasis>,
}

impl<'a> Engine<'a> {
    fn new(
        cons: &'a SearchConstraints,
        budget: SearchBudget,
        start: Instant,
        progress_every: u64,
        observer: &'a mut dyn FnMut(&SearchEvent),
    ) -> Self {
        let n = cons.n;
        Self {
            n,
            cons,
            budget,
            start,
            progress_every,
            observer,
            order: cons.unassigned_columns(),
            cols: vec![0; n * n],
            known: vec![0; n],
            spans: vec![0; (1usize << n) * n],
            undo: Vec::new(),
            nodes: 0,
            prunes: 0,
            stopped: false,
            solutions: Vec::new(),
        }
    }

    /// Assigns every fully pinned column; false if they already force a
    /// singular combination.
    fn seed(&mut self) -> bool {
        let full = mask(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let pin = self.cons.pin_of(i, j);
                if pin.fixed_mask == full && !self.assign(i, j, pin.fixed_bits) {
                    return false;
                }
            }
        }
        true
    }

    /// Records column `j` of matrix `i` and extends every affected
    /// combination; on a dependency everything done here is rolled back.
    fn assign(&mut self, i: usize, j: usize, value: u16) -> bool {
        let n = self.n;
        let mark = self.undo.len();
        self.cols[i * n + j] = value;
        let others = self.known[j];
        // Positions of the other matrices whose column j is known.
        let mut partners = [0usize; 16];
        let mut k = 0;
        let mut rest = others;
        while rest != 0 {
            partners[k] = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            k += 1;
        }
        let mut lambda = 1u32 << i;
        let mut column = value;
        for g in 0u32..1 << k {
            if g > 0 {
                let l = partners[g.trailing_zeros() as usize];
                lambda ^= 1 << l;
                column ^= self.cols[l * n + j];
            }
            if !self.extend(lambda, column) {
                self.rollback(mark);
                return false;
            }
        }
        self.known[j] |= 1 << i;
        true
    }

    #[inline]
    fn extend(&mut self, lambda: u32, mut v: u16) -> bool {
        let base = lambda as usize * self.n;
        let span = &mut self.spans[base..base + self.n];
        while v != 0 {
            let lead = 15 - v.leading_zeros() as usize;
            if span[lead] == 0 {
                span[lead] = v;
                self.undo.push((lambda, lead as u8));
                return true;
            }
            v ^= span[lead];
        }
        false
    }

    fn rollback(&mut self, mark: usize) {
        for (lambda, lead) in self.undo.drain(mark..) {
            self.spans[lambda as usize * self.n + lead as usize] = 0;
        }
    }

    fn unassign(&mut self, i: usize, j: usize, mark: usize) {
        self.known[j] &= !(1 << i);
        self.rollback(mark);
    }

    fn out_of_budget(&self) -> bool {
        self.budget.max_nodes.is_some_and(|m| self.nodes >= m)
            || self
                .budget
                .wall_clock
                .is_some_and(|w| self.start.elapsed() >= w)
    }

    fn descend(&mut self, depth: usize) {
        if depth == self.order.len() {
            self.emit();
            return;
        }
        let (i, j) = self.order[depth];
        for value in self.cons.candidates(i, j) {
            if self.stopped {
                return;
            }
            if self.out_of_budget() {
                self.stopped = true;
                return;
            }
            self.nodes += 1;
            if self.progress_every > 0 && self.nodes.is_multiple_of(self.progress_every) {
                (self.observer)(&SearchEvent::Progress {
                    nodes: self.nodes,
                    prunes: self.prunes,
                });
            }
            let mark = self.undo.len();
            if self.assign(i, j, value) {
                self.descend(depth + 1);
                self.unassign(i, j, mark);
            } else {
                self.prunes += 1;
            }
        }
    }

    fn emit(&mut self) {
        let n = self.n;
        let mats = (0..n)
            .map(|i| Gf2Matrix::from_column_bits(n, &self.cols[i * n..i * n + n]))
            .collect::<Result<Vec<_>, _>>()
            .expect("columns within dimension");
        let basis = StandardBasis::new(mats).expect("n matrices of dimension n");
        // Independent confirmation of what the pruning established.
        if !basis.verify().passed() {
            debug_assert!(false, "pruning admitted an invalid basis");
            return;
        }
        self.solutions.push(basis);
        (self.observer)(&SearchEvent::Solution {
            index: self.solutions.len() - 1,
            nodes: self.nodes,
        });
        if self
            .budget
            .max_solutions
            .is_some_and(|m| self.solutions.len() >= m)
        {
            self.stopped = true;
        }
    }
}

/// Partitions the search tree by enumerating the first `depth` unassigned
/// columns. Shards come back in search order, so running them one after the
/// other and concatenating their solutions reproduces the unsplit search.
pub fn split_search_space(
    cons: &SearchConstraints,
    depth: usize,
) -> Result<Vec<SearchConstraints>, SearchError> {
    let order = cons.unassigned_columns();
    if depth > order.len() {
        return Err(SearchError::DepthOutOfRange {
            depth,
            available: order.len(),
        });
    }
    let mut shards = vec![cons.clone()];
    for &(i, j) in &order[..depth] {
        let mut next = Vec::with_capacity(shards.len() << 1);
        for shard in shards {
            for value in cons.candidates(i, j) {
                let v = Gf2Vector::new(cons.n, value)?;
                next.push(shard.clone().with_fixed_column(i, j, v)?);
            }
        }
        shards = next;
    }
    Ok(shards)
}

/// Runs shards on `threads` workers and merges the outcomes in shard order.
/// Each shard receives the full budget; the merged solution list is then
/// cut to `max_solutions`.
pub fn run_shards(
    shards: &[SearchConstraints],
    budget: SearchBudget,
    threads: usize,
) -> SearchOutcome {
    let start = Instant::now();
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<SearchOutcome>>> = Mutex::new(vec![None; shards.len()]);
    thread::scope(|s| {
        for _ in 0..threads.clamp(1, shards.len().max(1)) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(shard) = shards.get(k) else {
                    break;
                };
                let out = search_standard_bases(shard, budget);
                results.lock().expect("no poisoned workers")[k] = Some(out);
            });
        }
    });
    let mut merged = SearchOutcome {
        bases: Vec::new(),
        nodes_visited: 0,
        prunes: 0,
        exhausted: true,
        elapsed: Duration::ZERO,
    };
    for out in results
        .into_inner()
        .expect("no poisoned workers")
        .into_iter()
        .flatten()
    {
        merged.bases.extend(out.bases);
        merged.nodes_visited += out.nodes_visited;
        merged.prunes += out.prunes;
        merged.exhausted &= out.exhausted;
    }
    if let Some(m) = budget.max_solutions {
        if merged.bases.len() >= m {
            merged.exhausted = merged.exhausted && merged.bases.len() == m;
            merged.bases.truncate(m);
        }
    }
    merged.elapsed = start.elapsed();
    merged
}
