//! Psyquandle brackets: skein coefficient tables `A, B, P, S` over a ring.
//!
//! Identity ids are stable and used in reports, search statistics and tests:
//! `b0` units, `b1` common `w`, `b2` common `delta`, `b3.1`-`b3.5`,
//! `b4.1`-`b4.2`, `b5.1`-`b5.10` for the displayed identity blocks, and `bPI`
//! for pI-adequacy.

use std::fmt;

use crate::error::{Error, Result};
use crate::psyquandle::Psyquandle;
use crate::report::AxiomReport;
use crate::ring::{FiniteRing, Ring};

/// Which coefficient table an entry lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coef {
    A,
    B,
    P,
    S,
}

impl Coef {
    pub const ALL: [Coef; 4] = [Coef::A, Coef::B, Coef::P, Coef::S];

    pub fn label(self) -> &'static str {
        match self {
            Coef::A => "A",
            Coef::B => "B",
            Coef::P => "P",
            Coef::S => "S",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    B3(u8),
    B4(u8),
    B5(u8),
}

impl Identity {
    pub const ALL: [Identity; 17] = [
        Identity::B3(1),
        Identity::B3(2),
        Identity::B3(3),
        Identity::B3(4),
        Identity::B3(5),
        Identity::B4(1),
        Identity::B4(2),
        Identity::B5(1),
        Identity::B5(2),
        Identity::B5(3),
        Identity::B5(4),
        Identity::B5(5),
        Identity::B5(6),
        Identity::B5(7),
        Identity::B5(8),
        Identity::B5(9),
        Identity::B5(10),
    ];

    pub fn id(self) -> &'static str {
        const B3: [&str; 5] = ["b3.1", "b3.2", "b3.3", "b3.4", "b3.5"];
        const B4: [&str; 2] = ["b4.1", "b4.2"];
        const B5: [&str; 10] = ["b5.1", "b5.2", "b5.3", "b5.4", "b5.5", "b5.6", "b5.7", "b5.8", "b5.9", "b5.10"];
        match self {
            Identity::B3(k) => B3[k as usize - 1],
            Identity::B4(k) => B4[k as usize - 1],
            Identity::B5(k) => B5[k as usize - 1],
        }
    }

    /// Pair identities range over `(x, y)`, the rest over `(x, y, z)`.
    pub fn is_pair(self) -> bool {
        matches!(self, Identity::B4(_))
    }

    /// Evaluates both sides at `(x, y, z)` (`z` ignored for pair identities).
    /// Returns `None` if `coef` does not know some entry.
    pub(crate) fn eval<R: Ring>(
        self,
        q: &Psyquandle,
        r: &R,
        coef: &dyn Fn(Coef, usize, usize) -> Option<R::Elem>,
        delta: R::Elem,
        (x, y, z): (usize, usize, usize),
    ) -> Option<(R::Elem, R::Elem)> {
        use Coef::{A, B, P, S};
        let m2 = |a, b| r.mul(a, b);
        let m3 = |a, b, c| r.mul(r.mul(a, b), c);
        let c = |t, p: (usize, usize)| coef(t, p.0, p.1);

        match self {
            Identity::B3(k) => {
                let pa = (q.ut(x, y), q.ot(z, y));
                let pb = (q.ot(y, x), q.ot(z, x));
                let pc = (q.ut(x, z), q.ut(y, z));
                let (xy, yz, xz) = ((x, y), (y, z), (x, z));
                Some(match k {
                    1 => (m3(c(A, xy)?, c(A, yz)?, c(A, pa)?), m3(c(A, xz)?, c(A, pb)?, c(A, pc)?)),
                    2 => (m3(c(A, xy)?, c(B, yz)?, c(B, pa)?), m3(c(B, xz)?, c(B, pb)?, c(A, pc)?)),
                    3 => (m3(c(B, xy)?, c(A, yz)?, c(B, pa)?), m3(c(B, xz)?, c(A, pb)?, c(B, pc)?)),
                    4 => {
                        let lhs = m3(c(A, xy)?, c(A, yz)?, c(B, pa)?);
                        let (axz, bxz) = (c(A, xz)?, c(B, xz)?);
                        let (ab, bb) = (c(A, pb)?, c(B, pb)?);
                        let (ac, bc) = (c(A, pc)?, c(B, pc)?);
                        let rhs = [m3(axz, bb, ac), m3(axz, ab, bc), m2(delta, m3(axz, bb, bc)), m3(bxz, bb, bc)]
                            .into_iter()
                            .fold(r.zero(), |s, t| r.add(s, t));
                        (lhs, rhs)
                    }
                    5 => {
                        let (axy, bxy) = (c(A, xy)?, c(B, xy)?);
                        let (ayz, byz) = (c(A, yz)?, c(B, yz)?);
                        let (aa, ba) = (c(A, pa)?, c(B, pa)?);
                        let lhs = [m3(bxy, ayz, aa), m3(axy, byz, aa), m2(delta, m3(bxy, byz, aa)), m3(bxy, byz, ba)]
                            .into_iter()
                            .fold(r.zero(), |s, t| r.add(s, t));
                        (lhs, m3(c(B, xz)?, c(A, pb)?, c(A, pc)?))
                    }
                    _ => unreachable!(),
                })
            }
            Identity::B4(k) => {
                let u = q.ob_inv(q.ut(x, y), y);
                let v = q.ob_inv(q.ot(y, x), x);
                let (xy, yu, vu, xv) = ((x, y), (y, u), (v, u), (x, v));
                Some(match k {
                    1 => (m2(c(A, xy)?, c(P, yu)?), m2(c(A, vu)?, c(P, xv)?)),
                    2 => {
                        let (axy, bxy) = (c(A, xy)?, c(B, xy)?);
                        let (pyu, syu) = (c(P, yu)?, c(S, yu)?);
                        let (avu, bvu) = (c(A, vu)?, c(B, vu)?);
                        let (pxv, sxv) = (c(P, xv)?, c(S, xv)?);
                        let lhs = r.add(r.add(m2(axy, syu), m2(bxy, pyu)), m3(delta, bxy, syu));
                        let rhs = r.add(r.add(m2(bvu, pxv), m2(avu, sxv)), m3(delta, bvu, sxv));
                        (lhs, rhs)
                    }
                    _ => unreachable!(),
                })
            }
            Identity::B5(k) if k <= 5 => {
                let pa = (q.ut(x, y), q.ob(z, y));
                let pb = (q.ot(y, x), q.ot(z, x));
                let pc = (q.ut(x, z), q.ub(y, z));
                let (xy, yz, xz) = ((x, y), (y, z), (x, z));
                Some(match k {
                    1 => (m3(c(A, xy)?, c(P, yz)?, c(A, pa)?), m3(c(A, xz)?, c(P, pb)?, c(A, pc)?)),
                    2 => (m3(c(A, xy)?, c(S, yz)?, c(B, pa)?), m3(c(B, xz)?, c(S, pb)?, c(A, pc)?)),
                    3 => (m3(c(B, xy)?, c(P, yz)?, c(B, pa)?), m3(c(B, xz)?, c(P, pb)?, c(B, pc)?)),
                    4 => {
                        let lhs = m3(c(A, xy)?, c(P, yz)?, c(B, pa)?);
                        let (axz, bxz) = (c(A, xz)?, c(B, xz)?);
                        let (pb_, sb) = (c(P, pb)?, c(S, pb)?);
                        let (ac, bc) = (c(A, pc)?, c(B, pc)?);
                        let rhs = [m3(axz, sb, ac), m3(axz, pb_, bc), m2(delta, m3(axz, sb, bc)), m3(bxz, sb, bc)]
                            .into_iter()
                            .fold(r.zero(), |s, t| r.add(s, t));
                        (lhs, rhs)
                    }
                    5 => {
                        let (axy, bxy) = (c(A, xy)?, c(B, xy)?);
                        let (pyz, syz) = (c(P, yz)?, c(S, yz)?);
                        let (aa, ba) = (c(A, pa)?, c(B, pa)?);
                        let lhs = [m3(bxy, pyz, aa), m3(axy, syz, aa), m2(delta, m3(bxy, syz, aa)), m3(bxy, syz, ba)]
                            .into_iter()
                            .fold(r.zero(), |s, t| r.add(s, t));
                        (lhs, m3(c(B, xz)?, c(P, pb)?, c(A, pc)?))
                    }
                    _ => unreachable!(),
                })
            }
            Identity::B5(k) => {
                let pa = (q.ub(x, y), q.ot(z, y));
                let pb = (q.ob(y, x), q.ot(z, x));
                let pc = (q.ut(x, z), q.ut(y, z));
                let (xy, yz, xz) = ((x, y), (y, z), (x, z));
                Some(match k {
                    6 => (m3(c(P, xy)?, c(A, yz)?, c(A, pa)?), m3(c(A, xz)?, c(A, pb)?, c(P, pc)?)),
                    7 => (m3(c(S, xy)?, c(A, yz)?, c(B, pa)?), m3(c(B, xz)?, c(A, pb)?, c(S, pc)?)),
                    8 => (m3(c(P, xy)?, c(B, yz)?, c(B, pa)?), m3(c(B, xz)?, c(B, pb)?, c(P, pc)?)),
                    9 => {
                        let lhs = m3(c(P, xy)?, c(A, yz)?, c(B, pa)?);
                        let (axz, bxz) = (c(A, xz)?, c(B, xz)?);
                        let (ab, bb) = (c(A, pb)?, c(B, pb)?);
                        let (pc_, sc) = (c(P, pc)?, c(S, pc)?);
                        let rhs = [m3(axz, bb, pc_), m3(axz, ab, sc), m2(delta, m3(axz, bb, sc)), m3(bxz, bb, sc)]
                            .into_iter()
                            .fold(r.zero(), |s, t| r.add(s, t));
                        (lhs, rhs)
                    }
                    10 => {
                        let (pxy, sxy) = (c(P, xy)?, c(S, xy)?);
                        let (ayz, byz) = (c(A, yz)?, c(B, yz)?);
                        let (aa, ba) = (c(A, pa)?, c(B, pa)?);
                        let lhs = [m3(pxy, byz, aa), m3(sxy, ayz, aa), m2(delta, m3(sxy, byz, aa)), m3(sxy, byz, ba)]
                            .into_iter()
                            .fold(r.zero(), |s, t| r.add(s, t));
                        (lhs, m3(c(B, xz)?, c(A, pb)?, c(P, pc)?))
                    }
                    _ => unreachable!(),
                })
            }
        }
    }
}

/// `-a b^-1 - a^-1 b`, the circle value contributed by the pair `(a, b)`.
pub(crate) fn delta_of<R: Ring>(r: &R, a: R::Elem, b: R::Elem) -> Option<R::Elem> {
    let t1 = r.mul(a, r.inverse(b)?);
    let t2 = r.mul(r.inverse(a)?, b);
    Some(r.neg(r.add(t1, t2)))
}

/// `-a^2 b^-1`, the writhe correction contributed by a diagonal pair.
pub(crate) fn w_of<R: Ring>(r: &R, a: R::Elem, b: R::Elem) -> Option<R::Elem> {
    Some(r.neg(r.mul(r.mul(a, a), r.inverse(b)?)))
}

type PairFn<R> = fn(&R, <R as Ring>::Elem, <R as Ring>::Elem) -> Option<<R as Ring>::Elem>;

fn common_value<R: Ring>(
    r: &R,
    axiom: &'static str,
    cells: impl Iterator<Item = (usize, usize)>,
    a: &[Vec<R::Elem>],
    b: &[Vec<R::Elem>],
    f: PairFn<R>,
) -> Result<R::Elem> {
    let mut first: Option<((usize, usize), R::Elem)> = None;
    for (x, y) in cells {
        let Some(v) = f(r, a[x][y], b[x][y]) else {
            let mut report = AxiomReport::default();
            report.push("b0", &[x, y], format!("A={} B={}", r.render(a[x][y]), r.render(b[x][y])), "units");
            return Err(Error::BracketAxioms(report));
        };
        match first {
            None => first = Some(((x, y), v)),
            Some(((fx, fy), fv)) if fv != v => {
                let mut report = AxiomReport::default();
                report.push(axiom, &[fx, fy, x, y], r.render(fv), r.render(v));
                return Err(Error::BracketAxioms(report));
            }
            _ => {}
        }
    }
    first.map(|(_, v)| v).ok_or_else(|| Error::Domain("empty coefficient tables".into()))
}

/// The common value of `-A_{x,y} B_{x,y}^-1 - A_{x,y}^-1 B_{x,y}` over all pairs.
pub fn compute_delta<R: Ring>(r: &R, a: &[Vec<R::Elem>], b: &[Vec<R::Elem>]) -> Result<R::Elem> {
    let n = a.len();
    common_value(r, "b2", (0..n).flat_map(|x| (0..n).map(move |y| (x, y))), a, b, delta_of)
}

/// The common value of `-A_{x,x}^2 B_{x,x}^-1` over the diagonal.
pub fn compute_w<R: Ring>(r: &R, a: &[Vec<R::Elem>], b: &[Vec<R::Elem>]) -> Result<R::Elem> {
    common_value(r, "b1", (0..a.len()).map(|x| (x, x)), a, b, w_of)
}

/// Checks every bracket axiom, collecting all failures.
pub fn check_bracket<R: Ring>(base: &Psyquandle, r: &R, tables: [&[Vec<R::Elem>]; 4]) -> AxiomReport {
    let mut report = AxiomReport::default();
    let n = base.size();
    for (t, c) in tables.iter().zip(Coef::ALL) {
        if t.len() != n || t.iter().any(|row| row.len() != n) {
            report.push("size", &[], format!("{} table shape", c.label()), format!("{n}x{n}"));
            return report;
        }
    }
    let [a, b, p, s] = tables;

    for x in 0..n {
        for y in 0..n {
            for (c, t) in [(Coef::A, a), (Coef::B, b)] {
                if !r.is_unit(t[x][y]) {
                    report.push("b0", &[x, y], format!("{}={}", c.label(), r.render(t[x][y])), "a unit");
                }
            }
        }
    }

    let diag: Vec<_> = (0..n).filter_map(|x| w_of(r, a[x][x], b[x][x]).map(|v| (x, v))).collect();
    if let Some(&(x0, w0)) = diag.first() {
        for &(x, v) in &diag[1..] {
            if v != w0 {
                report.push("b1", &[x0, x], r.render(w0), r.render(v));
            }
        }
    }

    let pairs: Vec<_> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter_map(|(x, y)| delta_of(r, a[x][y], b[x][y]).map(|v| ((x, y), v)))
        .collect();
    let Some(&((x0, y0), delta)) = pairs.first() else {
        return report;
    };
    for &((x, y), v) in &pairs[1..] {
        if v != delta {
            report.push("b2", &[x0, y0, x, y], r.render(delta), r.render(v));
        }
    }

    let lookup = |c: Coef, x: usize, y: usize| {
        Some(match c {
            Coef::A => a[x][y],
            Coef::B => b[x][y],
            Coef::P => p[x][y],
            Coef::S => s[x][y],
        })
    };
    for id in Identity::ALL {
        for x in 0..n {
            for y in 0..n {
                let zs = if id.is_pair() { 0..1 } else { 0..n };
                for z in zs {
                    let (l, rv) = id.eval(base, r, &lookup, delta, (x, y, z)).expect("complete tables");
                    if l != rv {
                        let w: &[usize] = if id.is_pair() { &[x, y] } else { &[x, y, z] };
                        report.push(id.id(), w, r.render(l), r.render(rv));
                    }
                }
            }
        }
    }
    report
}

/// A validated psyquandle bracket with cached `delta` and `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct PsyBracket<R: Ring = FiniteRing> {
    base: Psyquandle,
    ring: R,
    n: usize,
    tables: [Vec<R::Elem>; 4],
    a_inv: Vec<R::Elem>,
    b_inv: Vec<R::Elem>,
    delta: R::Elem,
    w: R::Elem,
    w_inv: R::Elem,
}

impl<R: Ring> PsyBracket<R> {
    /// Validates `A, B, P, S` (rows indexed by the first argument) over `base`.
    pub fn from_tables(
        base: Psyquandle,
        ring: R,
        a: Vec<Vec<R::Elem>>,
        b: Vec<Vec<R::Elem>>,
        p: Vec<Vec<R::Elem>>,
        s: Vec<Vec<R::Elem>>,
    ) -> Result<Self> {
        let report = check_bracket(&base, &ring, [&a, &b, &p, &s]);
        if !report.pass() {
            return Err(Error::BracketAxioms(report));
        }
        let delta = compute_delta(&ring, &a, &b)?;
        let w = compute_w(&ring, &a, &b)?;
        let w_inv = ring.inverse(w).ok_or_else(|| Error::Domain("w is not a unit".into()))?;
        let flat = |t: Vec<Vec<R::Elem>>| t.into_iter().flatten().collect::<Vec<_>>();
        let tables = [flat(a), flat(b), flat(p), flat(s)];
        let inv = |t: &[R::Elem]| t.iter().map(|&v| ring.inverse(v).expect("axiom b0")).collect();
        let a_inv = inv(&tables[0]);
        let b_inv = inv(&tables[1]);
        Ok(PsyBracket { n: base.size(), base, ring, tables, a_inv, b_inv, delta, w, w_inv })
    }

    pub fn base(&self) -> &Psyquandle {
        &self.base
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn coef(&self, c: Coef, x: usize, y: usize) -> R::Elem {
        self.tables[c as usize][x * self.n + y]
    }

    #[inline]
    pub fn a(&self, x: usize, y: usize) -> R::Elem {
        self.coef(Coef::A, x, y)
    }

    #[inline]
    pub fn b(&self, x: usize, y: usize) -> R::Elem {
        self.coef(Coef::B, x, y)
    }

    #[inline]
    pub fn p(&self, x: usize, y: usize) -> R::Elem {
        self.coef(Coef::P, x, y)
    }

    #[inline]
    pub fn s(&self, x: usize, y: usize) -> R::Elem {
        self.coef(Coef::S, x, y)
    }

    #[inline]
    pub fn a_inv(&self, x: usize, y: usize) -> R::Elem {
        self.a_inv[x * self.n + y]
    }

    #[inline]
    pub fn b_inv(&self, x: usize, y: usize) -> R::Elem {
        self.b_inv[x * self.n + y]
    }

    pub fn delta(&self) -> R::Elem {
        self.delta
    }

    pub fn w(&self) -> R::Elem {
        self.w
    }

    pub fn w_inv(&self) -> R::Elem {
        self.w_inv
    }

    pub fn rows(&self, c: Coef) -> Vec<Vec<R::Elem>> {
        self.tables[c as usize].chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Re-runs the full axiom check on the stored tables.
    pub fn recheck(&self) -> AxiomReport {
        let t = Coef::ALL.map(|c| self.rows(c));
        check_bracket(&self.base, &self.ring, [&t[0], &t[1], &t[2], &t[3]])
    }

    /// First `x` (0-based) with `delta P_{x,x} + S_{x,x} != 1`.
    pub fn pi_witness(&self) -> Option<usize> {
        let r = &self.ring;
        (0..self.n).find(|&x| r.add(r.mul(self.delta, self.p(x, x)), self.s(x, x)) != r.one())
    }

    /// Every `x` with `delta P_{x,x} + S_{x,x} != 1`, under axiom id `bPI`.
    pub fn pi_report(&self) -> AxiomReport {
        let r = &self.ring;
        let mut report = AxiomReport::default();
        for x in 0..self.n {
            let v = r.add(r.mul(self.delta, self.p(x, x)), self.s(x, x));
            if v != r.one() {
                report.push("bPI", &[x], r.render(v), r.render(r.one()));
            }
        }
        report
    }

    /// pI-adequate base psyquandle and `delta P_{x,x} + S_{x,x} = 1` for all `x`.
    pub fn is_pi_adequate(&self) -> bool {
        self.base.is_pi_adequate() && self.pi_witness().is_none()
    }

    /// Kink identities implied by the axioms: `A_{x,x} delta + B_{x,x} = w`
    /// (`kink+`) and `A_{x,x}^-1 delta + B_{x,x}^-1 = w^-1` (`kink-`), plus
    /// `delta P_{x,x} + S_{x,x} = 1` (`bPI`) when the bracket is pI-adequate.
    pub fn kink_report(&self) -> AxiomReport {
        let r = &self.ring;
        let mut report = AxiomReport::default();
        for x in 0..self.n {
            let pos = r.add(r.mul(self.a(x, x), self.delta), self.b(x, x));
            if pos != self.w {
                report.push("kink+", &[x], r.render(pos), r.render(self.w));
            }
            let neg = r.add(r.mul(self.a_inv(x, x), self.delta), self.b_inv(x, x));
            if neg != self.w_inv {
                report.push("kink-", &[x], r.render(neg), r.render(self.w_inv));
            }
        }
        if self.is_pi_adequate() {
            for x in 0..self.n {
                let v = r.add(r.mul(self.delta, self.p(x, x)), self.s(x, x));
                if v != r.one() {
                    report.push("bPI", &[x], r.render(v), r.render(r.one()));
                }
            }
        }
        report
    }
}

impl fmt::Display for PsyBracket<FiniteRing> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::write_bracket(self))
    }
}
