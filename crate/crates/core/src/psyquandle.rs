//! Finite psyquandles given by operation tables.
//!
//! Elements are `0..n` internally; everything user-facing (files, reports)
//! is 1-based. The four operations are written `ut`, `ot`, `ub`, `ob` for
//! under-triangle, over-triangle, under-dot and over-dot; `x op y` is stored
//! at row `x`, column `y`.

use std::fmt;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::report::AxiomReport;
use crate::ring::{FiniteRing, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    UnderTri,
    OverTri,
    UnderDot,
    OverDot,
}

impl Op {
    pub const ALL: [Op; 4] = [Op::UnderTri, Op::OverTri, Op::UnderDot, Op::OverDot];

    /// Block label used in the text format.
    pub fn label(self) -> &'static str {
        match self {
            Op::UnderTri => "ut",
            Op::OverTri => "ot",
            Op::UnderDot => "ub",
            Op::OverDot => "ob",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// An `n x n` operation table with entries in `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpTable {
    n: usize,
    entries: Vec<usize>,
}

impl OpTable {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v = f(x, y);
                if v >= n {
                    return Err(Error::Domain(format!(
                        "table entry ({}, {}) = {} is outside 1..{n}",
                        x + 1,
                        y + 1,
                        v + 1
                    )));
                }
                entries.push(v);
            }
        }
        Ok(OpTable { n, entries })
    }

    /// Builds a table from 1-based rows, as printed in the literature.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Domain("empty operation table".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Domain(format!("row {} has {} entries, expected {n}", i + 1, row.len())));
            }
            if let Some(&v) = row.iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::Domain(format!("entry {v} in row {} is outside 1..{n}", i + 1)));
            }
        }
        OpTable::from_fn(n, |x, y| rows[x][y] - 1)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.entries[x * self.n + y]
    }

    /// 1-based rows.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries.chunks(self.n).map(|r| r.iter().map(|v| v + 1).collect()).collect()
    }

    pub fn column_is_permutation(&self, y: usize) -> bool {
        let mut seen = vec![false; self.n];
        (0..self.n).all(|x| !std::mem::replace(&mut seen[self.get(x, y)], true))
    }

    /// The right-inverse table `(x op y) op^-1 y = x`, if every column is a permutation.
    pub fn right_inverse(&self) -> Option<OpTable> {
        let n = self.n;
        let mut entries = vec![usize::MAX; n * n];
        for y in 0..n {
            for x in 0..n {
                let slot = &mut entries[self.get(x, y) * n + y];
                if *slot != usize::MAX {
                    return None;
                }
                *slot = x;
            }
        }
        Some(OpTable { n, entries })
    }
}

/// Lookup access to the four operations and their right inverses. Returns
/// `None` for entries not (yet) known, which lets the same identity code run
/// on complete tables and on partial tables during search.
pub(crate) trait OpAccess {
    fn op(&self, op: Op, x: usize, y: usize) -> Option<usize>;
    fn inv(&self, op: Op, x: usize, y: usize) -> Option<usize>;
}

type PairIdentity = fn(&dyn OpAccess, usize, usize) -> Option<(usize, usize)>;
type TripleIdentity = fn(&dyn OpAccess, usize, usize, usize) -> Option<(usize, usize)>;

use Op::{OverDot as OB, OverTri as OT, UnderDot as UB, UnderTri as UT};

pub(crate) const PAIR_IDENTITIES: [(&str, PairIdentity); 2] = [
    ("iv.1", |t, x, y| {
        let a = t.inv(OB, t.op(OT, y, x)?, x)?;
        let b = t.inv(OB, t.op(UT, x, y)?, y)?;
        let c = t.inv(UB, t.op(OT, y, x)?, x)?;
        Some((t.op(UB, x, a)?, t.op(OT, b, c)?))
    }),
    ("iv.2", |t, x, y| {
        let a = t.inv(OB, t.op(UT, x, y)?, y)?;
        let b = t.inv(OB, t.op(OT, y, x)?, x)?;
        Some((t.op(UB, y, a)?, t.op(UT, b, a)?))
    }),
];

pub(crate) const TRIPLE_IDENTITIES: [(&str, TripleIdentity); 9] = [
    // exchange laws
    ("iii.1", |t, x, y, z| {
        let l = t.op(UT, t.op(UT, x, y)?, t.op(UT, z, y)?)?;
        let r = t.op(UT, t.op(UT, x, z)?, t.op(OT, y, z)?)?;
        Some((l, r))
    }),
    ("iii.2", |t, x, y, z| {
        let l = t.op(OT, t.op(UT, x, y)?, t.op(UT, z, y)?)?;
        let r = t.op(UT, t.op(OT, x, z)?, t.op(OT, y, z)?)?;
        Some((l, r))
    }),
    ("iii.3", |t, x, y, z| {
        let l = t.op(OT, t.op(OT, x, y)?, t.op(OT, z, y)?)?;
        let r = t.op(OT, t.op(OT, x, z)?, t.op(UT, y, z)?)?;
        Some((l, r))
    }),
    ("v.1", |t, x, y, z| {
        let l = t.op(OT, t.op(OT, x, y)?, t.op(OB, z, y)?)?;
        let r = t.op(OT, t.op(OT, x, z)?, t.op(UB, y, z)?)?;
        Some((l, r))
    }),
    ("v.2", |t, x, y, z| {
        let l = t.op(UT, t.op(UT, x, y)?, t.op(OB, z, y)?)?;
        let r = t.op(UT, t.op(UT, x, z)?, t.op(UB, y, z)?)?;
        Some((l, r))
    }),
    ("v.3", |t, x, y, z| {
        let l = t.op(OB, t.op(OT, x, y)?, t.op(OT, z, y)?)?;
        let r = t.op(OT, t.op(OB, x, z)?, t.op(UT, y, z)?)?;
        Some((l, r))
    }),
    ("v.4", |t, x, y, z| {
        let l = t.op(UB, t.op(UT, x, y)?, t.op(UT, z, y)?)?;
        let r = t.op(UT, t.op(UB, x, z)?, t.op(OT, y, z)?)?;
        Some((l, r))
    }),
    ("v.5", |t, x, y, z| {
        let l = t.op(UB, t.op(OT, x, y)?, t.op(OT, z, y)?)?;
        let r = t.op(OT, t.op(UB, x, z)?, t.op(UT, y, z)?)?;
        Some((l, r))
    }),
    ("v.6", |t, x, y, z| {
        let l = t.op(OB, t.op(UT, x, y)?, t.op(UT, z, y)?)?;
        let r = t.op(UT, t.op(OB, x, z)?, t.op(OT, y, z)?)?;
        Some((l, r))
    }),
];

struct Complete<'a> {
    tables: [&'a OpTable; 4],
    inverses: [Option<OpTable>; 4],
}

impl OpAccess for Complete<'_> {
    fn op(&self, op: Op, x: usize, y: usize) -> Option<usize> {
        Some(self.tables[op.index()].get(x, y))
    }

    fn inv(&self, op: Op, x: usize, y: usize) -> Option<usize> {
        self.inverses[op.index()].as_ref().map(|t| t.get(x, y))
    }
}

/// Exhaustively checks axioms (0) through (v) on candidate tables.
///
/// Identities needing an inverse table are skipped when that table failed
/// axiom (0); the report already records the (0) failure.
pub fn check_axioms(ut: &OpTable, ot: &OpTable, ub: &OpTable, ob: &OpTable) -> AxiomReport {
    let mut report = AxiomReport::default();
    let n = ut.size();
    let tables = [ut, ot, ub, ob];
    if tables.iter().any(|t| t.size() != n) {
        report.push("size", &[], "tables of unequal size", format!("size {n}"));
        return report;
    }

    for (op, t) in Op::ALL.iter().zip(tables) {
        for y in 0..n {
            if !t.column_is_permutation(y) {
                let col: Vec<String> = (0..n).map(|x| (t.get(x, y) + 1).to_string()).collect();
                report.push("0", &[y], format!("{} column [{}]", op.label(), col.join(" ")), "a permutation");
            }
        }
    }
    let access = Complete { tables, inverses: tables.map(|t| t.right_inverse()) };

    for x in 0..n {
        let (l, r) = (ut.get(x, x), ot.get(x, x));
        if l != r {
            report.push("i", &[x], l + 1, r + 1);
        }
    }

    for (name, first, second) in [("ii", ot, ut), ("ii'", ob, ub)] {
        // S(x,y) = (y first x, x second y); bijective iff all n^2 images are distinct
        let mut preimage: Vec<Option<(usize, usize)>> = vec![None; n * n];
        for x in 0..n {
            for y in 0..n {
                let img = first.get(y, x) * n + second.get(x, y);
                if let Some((px, py)) = preimage[img] {
                    report.push(
                        name,
                        &[px, py, x, y],
                        format!("{name}({},{})", px + 1, py + 1),
                        format!("{name}({},{}) collide", x + 1, y + 1),
                    );
                } else {
                    preimage[img] = Some((x, y));
                }
            }
        }
    }

    for &(id, f) in TRIPLE_IDENTITIES.iter() {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if let Some((l, r)) = f(&access, x, y, z) {
                        if l != r {
                            report.push(id, &[x, y, z], l + 1, r + 1);
                        }
                    }
                }
            }
        }
    }
    for &(id, f) in PAIR_IDENTITIES.iter() {
        for x in 0..n {
            for y in 0..n {
                if let Some((l, r)) = f(&access, x, y) {
                    if l != r {
                        report.push(id, &[x, y], l + 1, r + 1);
                    }
                }
            }
        }
    }
    report
}

/// A validated finite psyquandle with precomputed inverse data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Psyquandle {
    n: usize,
    tables: [OpTable; 4],
    inverses: [OpTable; 4],
    /// `s_inv[a*n+b]` is the pair `(x, y)` with `S(x,y) = (a,b)`.
    s_inv: Vec<(usize, usize)>,
    s_prime_inv: Vec<(usize, usize)>,
}

impl Psyquandle {
    pub fn from_tables(ut: OpTable, ot: OpTable, ub: OpTable, ob: OpTable) -> Result<Self> {
        let report = check_axioms(&ut, &ot, &ub, &ob);
        if !report.pass() {
            return Err(Error::PsyquandleAxioms(report));
        }
        let n = ut.size();
        let tables = [ut, ot, ub, ob];
        let inverses = tables.clone().map(|t| t.right_inverse().expect("axiom (0) checked"));
        let pair_inverse = |first: &OpTable, second: &OpTable| {
            let mut inv = vec![(0, 0); n * n];
            for x in 0..n {
                for y in 0..n {
                    inv[first.get(y, x) * n + second.get(x, y)] = (x, y);
                }
            }
            inv
        };
        let s_inv = pair_inverse(&tables[1], &tables[0]);
        let s_prime_inv = pair_inverse(&tables[3], &tables[2]);
        Ok(Psyquandle { n, tables, inverses, s_inv, s_prime_inv })
    }

    /// Builds from four lists of 1-based rows in the order `ut, ot, ub, ob`.
    pub fn from_rows(ut: &[Vec<usize>], ot: &[Vec<usize>], ub: &[Vec<usize>], ob: &[Vec<usize>]) -> Result<Self> {
        Psyquandle::from_tables(
            OpTable::from_rows(ut)?,
            OpTable::from_rows(ot)?,
            OpTable::from_rows(ub)?,
            OpTable::from_rows(ob)?,
        )
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn table(&self, op: Op) -> &OpTable {
        &self.tables[op.index()]
    }

    pub fn inverse_table(&self, op: Op) -> &OpTable {
        &self.inverses[op.index()]
    }

    #[inline]
    pub fn ut(&self, x: usize, y: usize) -> usize {
        self.tables[0].get(x, y)
    }

    #[inline]
    pub fn ot(&self, x: usize, y: usize) -> usize {
        self.tables[1].get(x, y)
    }

    #[inline]
    pub fn ub(&self, x: usize, y: usize) -> usize {
        self.tables[2].get(x, y)
    }

    #[inline]
    pub fn ob(&self, x: usize, y: usize) -> usize {
        self.tables[3].get(x, y)
    }

    /// `x ut^-1 y`, the unique `v` with `v ut y = x`.
    #[inline]
    pub fn ut_inv(&self, x: usize, y: usize) -> usize {
        self.inverses[0].get(x, y)
    }

    #[inline]
    pub fn ot_inv(&self, x: usize, y: usize) -> usize {
        self.inverses[1].get(x, y)
    }

    #[inline]
    pub fn ub_inv(&self, x: usize, y: usize) -> usize {
        self.inverses[2].get(x, y)
    }

    #[inline]
    pub fn ob_inv(&self, x: usize, y: usize) -> usize {
        self.inverses[3].get(x, y)
    }

    /// `S(x,y) = (y ot x, x ut y)`.
    pub fn s_map(&self, x: usize, y: usize) -> (usize, usize) {
        (self.ot(y, x), self.ut(x, y))
    }

    pub fn s_map_inv(&self, a: usize, b: usize) -> (usize, usize) {
        self.s_inv[a * self.n + b]
    }

    /// `S'(x,y) = (y ob x, x ub y)`.
    pub fn s_prime_map(&self, x: usize, y: usize) -> (usize, usize) {
        (self.ob(y, x), self.ub(x, y))
    }

    pub fn s_prime_map_inv(&self, a: usize, b: usize) -> (usize, usize) {
        self.s_prime_inv[a * self.n + b]
    }

    /// `x ub x = x ob x` for every `x`.
    pub fn is_pi_adequate(&self) -> bool {
        self.pi_witness().is_none()
    }

    /// First element (0-based) violating pI-adequacy.
    pub fn pi_witness(&self) -> Option<usize> {
        (0..self.n).find(|&x| self.ub(x, x) != self.ob(x, x))
    }

    /// Every `x` with `x ub x != x ob x`, under axiom id `pI`.
    pub fn pi_report(&self) -> AxiomReport {
        let mut report = AxiomReport::default();
        for x in 0..self.n {
            let (l, r) = (self.ub(x, x), self.ob(x, x));
            if l != r {
                report.push("pI", &[x], l + 1, r + 1);
            }
        }
        report
    }

    /// 1-based rows of all four tables in `ut, ot, ub, ob` order.
    pub fn rows(&self) -> [Vec<Vec<usize>>; 4] {
        [0, 1, 2, 3].map(|i| self.tables[i].rows())
    }
}

impl fmt::Display for Psyquandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::write_psyquandle(self))
    }
}

/// `f(x op y) = f(x) op f(y)` for all four operations.
pub fn is_homomorphism(map: &[usize], from: &Psyquandle, to: &Psyquandle) -> bool {
    let n = from.size();
    map.len() == n
        && map.iter().all(|&v| v < to.size())
        && Op::ALL.iter().all(|&op| {
            let (src, dst) = (from.table(op), to.table(op));
            (0..n).all(|x| (0..n).all(|y| map[src.get(x, y)] == dst.get(map[x], map[y])))
        })
}

/// All four operations are `(x, y) -> sigma(x)`; `sigma` is 0-based.
pub fn constant_action(n: usize, sigma: &[usize]) -> Result<Psyquandle> {
    let mut seen = vec![false; n];
    if sigma.len() != n || sigma.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(Error::Domain(format!("sigma {sigma:?} is not a permutation of {n} elements")));
    }
    let t = OpTable::from_fn(n, |x, _| sigma[x])?;
    Psyquandle::from_tables(t.clone(), t.clone(), t.clone(), t)
}

/// The Jablan psyquandle on `Z_m` with units `s, t`:
/// `x ut y = tx + (s-t)y`, `x ot y = sx`, `x ub y = x ob y = ((s+t)/2)x + ((s-t)/2)y`.
pub fn jablan(m: u32, s: i64, t: i64) -> Result<Psyquandle> {
    let ring = FiniteRing::new(m)?;
    let (s, t) = (ring.reduce(s), ring.reduce(t));
    for (name, v) in [("2", ring.reduce(2)), ("s", s), ("t", t)] {
        if !ring.is_unit(v) {
            return Err(Error::Domain(format!("{name} = {v} is not a unit mod {m}")));
        }
    }
    let half = ring.inverse(ring.reduce(2)).expect("checked unit");
    let st_sum = ring.mul(ring.add(s, t), half);
    let st_diff = ring.mul(ring.sub(s, t), half);
    let n = m as usize;
    let lin =
        |a: u32, b: u32| move |x: usize, y: usize| ring.add(ring.mul(a, x as u32), ring.mul(b, y as u32)) as usize;
    let ut = OpTable::from_fn(n, lin(t, ring.sub(s, t)))?;
    let ot = OpTable::from_fn(n, lin(s, 0))?;
    let dot = OpTable::from_fn(n, lin(st_sum, st_diff))?;
    Psyquandle::from_tables(ut, ot, dot.clone(), dot)
}

/// Partial tables during search. `usize::MAX` marks an unassigned entry.
struct Partial {
    n: usize,
    entries: [Vec<usize>; 4],
    inverses: [Vec<usize>; 4],
}

impl OpAccess for Partial {
    fn op(&self, op: Op, x: usize, y: usize) -> Option<usize> {
        let v = self.entries[op.index()][x * self.n + y];
        (v != usize::MAX).then_some(v)
    }

    fn inv(&self, op: Op, x: usize, y: usize) -> Option<usize> {
        let v = self.inverses[op.index()][x * self.n + y];
        (v != usize::MAX).then_some(v)
    }
}

impl Partial {
    fn consistent(&self, require_pi: bool) -> bool {
        let n = self.n;
        for x in 0..n {
            if let (Some(a), Some(b)) = (self.op(UT, x, x), self.op(OT, x, x)) {
                if a != b {
                    return false;
                }
            }
            if require_pi {
                if let (Some(a), Some(b)) = (self.op(UB, x, x), self.op(OB, x, x)) {
                    if a != b {
                        return false;
                    }
                }
            }
        }
        for &(_, f) in TRIPLE_IDENTITIES.iter() {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if let Some((l, r)) = f(self, x, y, z) {
                            if l != r {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        for &(_, f) in PAIR_IDENTITIES.iter() {
            for x in 0..n {
                for y in 0..n {
                    if let Some((l, r)) = f(self, x, y) {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn table(&self, i: usize) -> OpTable {
        OpTable { n: self.n, entries: self.entries[i].clone() }
    }
}

/// Enumerates every psyquandle structure on `n` elements in lexicographic
/// order of the flattened tables `ut, ot, ub, ob` (row-major, 1-based values
/// ascending), handing each to `visit` until it breaks.
pub fn for_each_psyquandle(n: usize, require_pi: bool, mut visit: impl FnMut(Psyquandle) -> ControlFlow<()>) {
    if n == 0 {
        return;
    }
    let empty = vec![usize::MAX; n * n];
    let mut partial = Partial {
        n,
        entries: [empty.clone(), empty.clone(), empty.clone(), empty.clone()],
        inverses: [empty.clone(), empty.clone(), empty.clone(), empty],
    };
    let _ = extend(&mut partial, 0, require_pi, &mut visit);
}

fn extend(
    p: &mut Partial,
    var: usize,
    require_pi: bool,
    visit: &mut impl FnMut(Psyquandle) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let n = p.n;
    if var == 4 * n * n {
        let [ut, ot, ub, ob] = [0, 1, 2, 3].map(|i| p.table(i));
        // the only axiom not enforced incrementally is (ii)
        if let Ok(q) = Psyquandle::from_tables(ut, ot, ub, ob) {
            return visit(q);
        }
        return ControlFlow::Continue(());
    }
    let (t, cell) = (var / (n * n), var % (n * n));
    let (x, y) = (cell / n, cell % n);
    for v in 0..n {
        // column-permutation constraint: v not yet used in column y
        if p.inverses[t][v * n + y] != usize::MAX {
            continue;
        }
        p.entries[t][cell] = v;
        p.inverses[t][v * n + y] = x;
        if p.consistent(require_pi) {
            extend(p, var + 1, require_pi, visit)?;
        }
        p.entries[t][cell] = usize::MAX;
        p.inverses[t][v * n + y] = usize::MAX;
    }
    ControlFlow::Continue(())
}

/// Up to `limit` psyquandles on `n` elements, in enumeration order.
pub fn search_psyquandles(n: usize, require_pi: bool, limit: usize) -> Vec<Psyquandle> {
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    for_each_psyquandle(n, require_pi, |q| {
        out.push(q);
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}
