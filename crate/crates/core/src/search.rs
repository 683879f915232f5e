//! Backtracking search for bracket structures over `Z_m`.
//!
//! Variables are the table entries in the order `A, B, P, S`, each table
//! row-major. `A` and `B` range over the units of `Z_m`, `P` and `S` over
//! all residues, ascending, so results come out in lexicographic order of
//! their flattened entries. Once `A_{1,1}` and `B_{1,1}` are set, `delta` and
//! `w` are fixed and every later `B` entry is checked against them; every
//! identity instance is checked as soon as the last entry it reads is set.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc::sync_channel;
use std::time::{Duration, Instant};

use crate::bracket::{compute_delta, compute_w, delta_of, w_of, Coef, Identity, PsyBracket};
use crate::error::{Error, Result};
use crate::psyquandle::Psyquandle;
use crate::ring::{FiniteRing, Ring};

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub psyquandle: Psyquandle,
    pub modulus: u32,
    /// Keep only brackets with `delta P_{x,x} + S_{x,x} = 1`.
    pub require_pi: bool,
    pub limit: usize,
    /// Emit only results after this flattened entry vector.
    pub resume: Option<Vec<u32>>,
}

impl SearchSpec {
    pub fn new(psyquandle: Psyquandle, modulus: u32) -> Self {
        SearchSpec { psyquandle, modulus, require_pi: false, limit: usize::MAX, resume: None }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Assignments tried, including pruned ones.
    pub nodes: u64,
    /// Pruned assignments per axiom id.
    pub prunes: BTreeMap<&'static str, u64>,
    pub results: usize,
    pub elapsed: Duration,
}

impl SearchStats {
    fn merge(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        for (k, v) in &other.prunes {
            *self.prunes.entry(k).or_insert(0) += v;
        }
    }
}

impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nodes {}", self.nodes)?;
        for (id, count) in &self.prunes {
            writeln!(f, "prune {id} {count}")?;
        }
        writeln!(f, "results {}", self.results)?;
        write!(f, "time {:.3}s", self.elapsed.as_secs_f64())
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub brackets: Vec<PsyBracket>,
    pub stats: SearchStats,
}

/// Flattened `A, B, P, S` entries of a bracket.
pub fn flatten(b: &PsyBracket) -> Vec<u32> {
    Coef::ALL.iter().flat_map(|&c| b.rows(c).into_iter().flatten()).collect()
}

/// Resume token of a bracket: its flattened entries joined by `.`.
pub fn resume_token(b: &PsyBracket) -> String {
    let parts: Vec<String> = flatten(b).iter().map(u32::to_string).collect();
    parts.join(".")
}

/// Parses a resume token for tables of size `n` over `Z_m`.
pub fn parse_token(token: &str, n: usize, m: u32) -> Result<Vec<u32>> {
    let token = token.trim();
    if token.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut column = 1;
    for part in token.split('.') {
        let v: u32 = part
            .parse()
            .ok()
            .filter(|&v| v < m)
            .ok_or_else(|| Error::parse(1, column, format!("`{part}` is not a residue mod {m}")))?;
        out.push(v);
        column += part.len() + 1;
    }
    if out.len() > 4 * n * n {
        return Err(Error::parse(1, 1, format!("token has {} entries, at most {} expected", out.len(), 4 * n * n)));
    }
    Ok(out)
}

type Instance = (Identity, (usize, usize, usize));

struct Plan {
    base: Psyquandle,
    ring: FiniteRing,
    n: usize,
    total: usize,
    units: Vec<u32>,
    residues: Vec<u32>,
    /// Identity instances keyed by the last variable they read.
    buckets: Vec<Vec<Instance>>,
    require_pi: bool,
}

impl Plan {
    fn new(base: Psyquandle, ring: FiniteRing, require_pi: bool) -> Self {
        let n = base.size();
        let nn = n * n;
        let total = 4 * nn;
        let mut buckets = vec![Vec::new(); total];
        for id in Identity::ALL {
            let zs = if id.is_pair() { 1 } else { n };
            for x in 0..n {
                for y in 0..n {
                    for z in 0..zs {
                        let touched = RefCell::new(0usize);
                        let trace = |c: Coef, a: usize, b: usize| {
                            let v = c as usize * nn + a * n + b;
                            let mut t = touched.borrow_mut();
                            *t = (*t).max(v);
                            Some(1)
                        };
                        id.eval(&base, &ring, &trace, 0, (x, y, z));
                        // delta is only known once B_{1,1} is set
                        let last = touched.into_inner().max(nn);
                        buckets[last].push((id, (x, y, z)));
                    }
                }
            }
        }
        Plan { units: ring.units(), residues: ring.elements().collect(), base, ring, n, total, buckets, require_pi }
    }

    fn domain(&self, v: usize) -> &[u32] {
        if v < 2 * self.n * self.n {
            &self.units
        } else {
            &self.residues
        }
    }
}

struct State<'a> {
    plan: &'a Plan,
    vals: Vec<u32>,
    delta: u32,
    w: u32,
    stats: SearchStats,
}

const UNSET: u32 = u32::MAX;

impl<'a> State<'a> {
    fn new(plan: &'a Plan) -> Self {
        State { plan, vals: vec![UNSET; plan.total], delta: 0, w: 0, stats: SearchStats::default() }
    }

    fn get(&self, c: Coef, x: usize, y: usize) -> u32 {
        let n = self.plan.n;
        self.vals[c as usize * n * n + x * n + y]
    }

    /// Sets variable `v`; on a violated constraint, unsets it and records the prune.
    fn assign(&mut self, v: usize, val: u32) -> bool {
        self.stats.nodes += 1;
        self.vals[v] = val;
        match self.violation(v) {
            None => true,
            Some(id) => {
                self.vals[v] = UNSET;
                *self.stats.prunes.entry(id).or_insert(0) += 1;
                false
            }
        }
    }

    fn violation(&mut self, v: usize) -> Option<&'static str> {
        let plan = self.plan;
        let (r, n) = (&plan.ring, plan.n);
        let nn = n * n;
        let (t, x, y) = (v / nn, v % nn / n, v % n);
        if t == 1 {
            let (a, b) = (self.get(Coef::A, x, y), self.get(Coef::B, x, y));
            if v == nn {
                self.delta = delta_of(r, a, b).expect("units");
                self.w = w_of(r, a, b).expect("units");
            } else {
                if delta_of(r, a, b) != Some(self.delta) {
                    return Some("b2");
                }
                if x == y && w_of(r, a, b) != Some(self.w) {
                    return Some("b1");
                }
            }
        }
        if t == 3 && x == y && plan.require_pi {
            let lhs = r.add(r.mul(self.delta, self.get(Coef::P, x, x)), self.get(Coef::S, x, x));
            if lhs != r.one() {
                return Some("bPI");
            }
        }
        let lookup = |c: Coef, a: usize, b: usize| {
            let v = self.get(c, a, b);
            (v != UNSET).then_some(v)
        };
        for &(id, xyz) in &plan.buckets[v] {
            let (l, rv) = id.eval(&plan.base, r, &lookup, self.delta, xyz).expect("all entries set");
            if l != rv {
                return Some(id.id());
            }
        }
        None
    }

    /// Depth-first search from variable `v`. `on_path` means the assigned
    /// prefix equals the token's prefix, so smaller values are skipped.
    fn run(
        &mut self,
        v: usize,
        token: &[u32],
        on_path: bool,
        sink: &mut dyn FnMut(&[u32]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if v == self.plan.total {
            if on_path && token.len() == v {
                return ControlFlow::Continue(());
            }
            return sink(&self.vals);
        }
        let bound = (on_path && v < token.len()).then(|| token[v]);
        for &val in self.plan.domain(v) {
            if bound.is_some_and(|b| val < b) {
                continue;
            }
            if self.assign(v, val) {
                let flow = self.run(v + 1, token, bound == Some(val), sink);
                self.vals[v] = UNSET;
                flow?;
            }
        }
        ControlFlow::Continue(())
    }

    /// Consistent prefixes of length `depth` in order, with their path flag.
    fn prefixes(&mut self, v: usize, depth: usize, token: &[u32], on_path: bool, out: &mut Vec<(Vec<u32>, bool)>) {
        if v == depth {
            out.push((self.vals[..depth].to_vec(), on_path));
            return;
        }
        let bound = (on_path && v < token.len()).then(|| token[v]);
        for &val in self.plan.domain(v) {
            if bound.is_some_and(|b| val < b) {
                continue;
            }
            if self.assign(v, val) {
                self.prefixes(v + 1, depth, token, bound == Some(val), out);
                self.vals[v] = UNSET;
            }
        }
    }
}

/// Results a worker hands over at a time.
const CHUNK: usize = 256;

enum Message {
    Results(Vec<Vec<u32>>),
    Done(SearchStats),
}

/// Streams the flattened `A, B, P, S` entries of every result, in order,
/// until `sink` breaks or `spec.limit` results have been delivered.
///
/// The tree is split on its first two variables. Worker threads take the
/// subtrees in order and run ahead of the consumer through bounded
/// channels, so output order never depends on scheduling. Statistics cover
/// the subtrees that were consumed to the end.
pub fn search_brackets_with(spec: &SearchSpec, mut sink: impl FnMut(&[u32]) -> ControlFlow<()>) -> Result<SearchStats> {
    let start = Instant::now();
    let ring = FiniteRing::new(spec.modulus)?;
    let plan = Plan::new(spec.psyquandle.clone(), ring, spec.require_pi);
    let token = spec.resume.clone().unwrap_or_default();
    if token.len() > plan.total || token.iter().any(|&v| v >= spec.modulus) {
        return Err(Error::Domain("resume token does not fit these tables".into()));
    }
    let mut stats = SearchStats::default();
    if spec.limit == 0 {
        stats.elapsed = start.elapsed();
        return Ok(stats);
    }
    let depth = 2.min(plan.total - 1);
    let mut root = State::new(&plan);
    let mut starts = Vec::new();
    root.prefixes(0, depth, &token, true, &mut starts);
    stats.merge(&root.stats);

    let (senders, receivers): (Vec<_>, Vec<_>) = starts.iter().map(|_| sync_channel::<Message>(4)).unzip();
    let next = AtomicUsize::new(0);
    let cancel = AtomicBool::new(false);
    let workers = rayon::current_num_threads().clamp(1, starts.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= starts.len() || cancel.load(Ordering::SeqCst) {
                    return;
                }
                let (prefix, on_path) = &starts[i];
                let tx = &senders[i];
                let mut st = State::new(&plan);
                for (v, &val) in prefix.iter().enumerate() {
                    let ok = st.assign(v, val);
                    debug_assert!(ok, "prefix was consistent");
                }
                st.stats = SearchStats::default();
                let mut buf = Vec::new();
                let flow = st.run(depth, &token, *on_path, &mut |vals| {
                    buf.push(vals.to_vec());
                    if buf.len() == CHUNK && tx.send(Message::Results(std::mem::take(&mut buf))).is_err() {
                        return ControlFlow::Break(());
                    }
                    if cancel.load(Ordering::Relaxed) {
                        return ControlFlow::Break(());
                    }
                    ControlFlow::Continue(())
                });
                if flow.is_break() {
                    return;
                }
                if (!buf.is_empty() && tx.send(Message::Results(buf)).is_err())
                    || tx.send(Message::Done(st.stats)).is_err()
                {
                    return;
                }
            });
        }

        let mut receivers = receivers;
        'subtrees: for rx in &receivers {
            while let Ok(msg) = rx.recv() {
                match msg {
                    Message::Results(chunk) => {
                        for vals in chunk {
                            stats.results += 1;
                            if sink(&vals).is_break() || stats.results >= spec.limit {
                                break 'subtrees;
                            }
                        }
                    }
                    Message::Done(s) => {
                        stats.merge(&s);
                        break;
                    }
                }
            }
        }
        cancel.store(true, Ordering::SeqCst);
        receivers.clear();
    });
    stats.elapsed = start.elapsed();
    Ok(stats)
}

/// Runs the search and validates every result into a [`PsyBracket`].
pub fn search_brackets(spec: &SearchSpec) -> Result<SearchResult> {
    let ring = FiniteRing::new(spec.modulus)?;
    let n = spec.psyquandle.size();
    let mut found = Vec::new();
    let mut stats = search_brackets_with(spec, |vals| {
        found.push(vals.to_vec());
        ControlFlow::Continue(())
    })?;
    let start = Instant::now();
    let mut brackets = Vec::with_capacity(found.len());
    for vals in found {
        let [a, b, p, s] = unflatten(&vals, n);
        brackets.push(PsyBracket::from_tables(spec.psyquandle.clone(), ring, a, b, p, s)?);
    }
    stats.elapsed += start.elapsed();
    Ok(SearchResult { brackets, stats })
}

/// Splits flattened entries back into `A, B, P, S` rows.
pub fn unflatten(vals: &[u32], n: usize) -> [Vec<Vec<u32>>; 4] {
    let t: Vec<Vec<Vec<u32>>> = vals.chunks(n * n).map(|c| c.chunks(n).map(<[u32]>::to_vec).collect()).collect();
    t.try_into().expect("four tables")
}

/// Largest table space the brute-force oracle will walk.
pub const BRUTE_FORCE_GUARD: u64 = 100_000_000;

/// Every bracket over `base` with values in `Z_m`, by walking the whole
/// table space and validating each candidate. `A, B` candidates failing the
/// unit, `delta` or `w` conditions are skipped before `P, S` are walked.
pub fn brute_force_brackets(base: &Psyquandle, m: u32) -> Result<Vec<PsyBracket>> {
    let ring = FiniteRing::new(m)?;
    let n = base.size();
    let nn = n * n;
    let space = (m as u64).checked_pow(4 * nn as u32).filter(|&s| s <= BRUTE_FORCE_GUARD);
    if space.is_none() {
        return Err(Error::Guard(format!("{m}^{} candidate tables exceed {BRUTE_FORCE_GUARD}", 4 * nn)));
    }
    let rows = |v: &[u32]| -> Vec<Vec<u32>> { v.chunks(n).map(<[u32]>::to_vec).collect() };
    let mut out = Vec::new();
    let mut ab = vec![0u32; 2 * nn];
    loop {
        if ab.iter().all(|&v| ring.is_unit(v)) {
            let (a, b) = (rows(&ab[..nn]), rows(&ab[nn..]));
            if compute_delta(&ring, &a, &b).is_ok() && compute_w(&ring, &a, &b).is_ok() {
                let mut ps = vec![0u32; 2 * nn];
                loop {
                    let (p, s) = (rows(&ps[..nn]), rows(&ps[nn..]));
                    if let Ok(br) = PsyBracket::from_tables(base.clone(), ring, a.clone(), b.clone(), p, s) {
                        out.push(br);
                    }
                    if !bump(&mut ps, m) {
                        break;
                    }
                }
            }
        }
        if !bump(&mut ab, m) {
            break;
        }
    }
    Ok(out)
}

fn bump(digits: &mut [u32], base: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}
