//! Closed singular/pseudo braids and their semiarc graphs.
//!
//! A braid on `k` strands is read bottom to top. Generator `i` (1-based)
//! crosses the strands at positions `i-1` and `i` (0-based). Every crossing
//! is drawn with both strands pointing up, so its four ports are
//! `in_left` (SW), `in_right` (SE), `out_left` (NW) and `out_right` (NE); the
//! strand entering at SW leaves at NE and the one entering at SE leaves at NW.
//!
//! On a positive crossing the SW-NE strand passes under, on a negative
//! crossing it passes over. Singular crossings (rigid vertices, or
//! precrossings in pseudo mode) carry no over/under information.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Singular,
    Pseudo,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Singular => "singular",
            Mode::Pseudo => "pseudo",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "singular" => Ok(Mode::Singular),
            "pseudo" => Ok(Mode::Pseudo),
            other => Err(Error::parse(1, 1, format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossingKind {
    Positive,
    Negative,
    Singular,
}

/// One braid generator: `s<i>`, `s<i>-` or `t<i>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub kind: CrossingKind,
    /// 1-based generator index.
    pub index: usize,
}

impl Letter {
    pub fn pos(index: usize) -> Self {
        Letter { kind: CrossingKind::Positive, index }
    }

    pub fn neg(index: usize) -> Self {
        Letter { kind: CrossingKind::Negative, index }
    }

    pub fn sing(index: usize) -> Self {
        Letter { kind: CrossingKind::Singular, index }
    }

    pub fn shifted(self, by: usize) -> Self {
        Letter { index: self.index + by, ..self }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CrossingKind::Positive => write!(f, "s{}", self.index),
            CrossingKind::Negative => write!(f, "s{}-", self.index),
            CrossingKind::Singular => write!(f, "t{}", self.index),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
    mode: Mode,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>, mode: Mode) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Domain("a braid needs at least one strand".into()));
        }
        if let Some(l) = letters.iter().find(|l| l.index == 0 || l.index >= strands) {
            return Err(Error::Domain(format!("generator {l} out of range for {strands} strands")));
        }
        Ok(BraidWord { strands, letters, mode })
    }

    /// Parses whitespace-separated `s<i>`, `s<i>-`, `t<i>` tokens.
    pub fn parse(text: &str, strands: usize, mode: Mode) -> Result<Self> {
        if strands == 0 {
            return Err(Error::parse(1, 1, "a braid needs at least one strand"));
        }
        let mut letters = Vec::new();
        for (column, token) in tokens_with_columns(text) {
            let bad = |msg: String| Error::parse(1, column, msg);
            let (kind, digits) = if let Some(rest) = token.strip_prefix('t') {
                (CrossingKind::Singular, rest)
            } else if let Some(rest) = token.strip_prefix('s') {
                match rest.strip_suffix('-') {
                    Some(d) => (CrossingKind::Negative, d),
                    None => (CrossingKind::Positive, rest),
                }
            } else {
                return Err(bad(format!("unrecognized token `{token}`")));
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad(format!("unrecognized token `{token}`")));
            }
            let index: usize = digits.parse().map_err(|_| bad(format!("bad index in `{token}`")))?;
            if index == 0 || index >= strands {
                return Err(bad(format!("generator `{token}` out of range for {strands} strands")));
            }
            letters.push(Letter { kind, index });
        }
        Ok(BraidWord { strands, letters, mode })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(&self, mode: Mode) -> Self {
        BraidWord { mode, ..self.clone() }
    }

    /// Underlying permutation: `perm[j]` is the top position of the strand
    /// starting at bottom position `j`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            at.swap(l.index - 1, l.index);
        }
        let mut perm = vec![0; self.strands];
        for (top, &start) in at.iter().enumerate() {
            perm[start] = top;
        }
        perm
    }

    pub fn close(&self) -> Diagram {
        Diagram::close(self)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&tokens.join(" "))
    }
}

pub(crate) fn tokens_with_columns(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = text;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            return None;
        }
        let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let token = &trimmed[..end];
        let column = text[..offset].chars().count() + 1;
        offset += end;
        rest = &trimmed[end..];
        Some((column, token))
    })
}

pub type SemiarcId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PortRole {
    InLeft,
    InRight,
    OutLeft,
    OutRight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Port {
    pub crossing: usize,
    pub role: PortRole,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub kind: CrossingKind,
    pub in_left: SemiarcId,
    pub in_right: SemiarcId,
    pub out_left: SemiarcId,
    pub out_right: SemiarcId,
}

impl Crossing {
    pub fn semiarc(&self, role: PortRole) -> SemiarcId {
        match role {
            PortRole::InLeft => self.in_left,
            PortRole::InRight => self.in_right,
            PortRole::OutLeft => self.out_left,
            PortRole::OutRight => self.out_right,
        }
    }
}

/// A diagram segment between crossing points. `tail` is the out-port it
/// leaves, `head` the in-port it enters; both are `None` for a strand with
/// no crossings, which closes up into its own circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Semiarc {
    pub tail: Option<Port>,
    pub head: Option<Port>,
    /// Strand position this semiarc runs along.
    pub position: usize,
    /// Whether the semiarc passes through the closure arc at the bottom.
    pub closure: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diagram {
    word: BraidWord,
    crossings: Vec<Crossing>,
    semiarcs: Vec<Semiarc>,
    /// Semiarc crossing the bottom level at each strand position.
    bottom: Vec<SemiarcId>,
    components: usize,
    positive: usize,
    negative: usize,
}

impl Diagram {
    /// Trace closure of a braid word. Semiarcs are numbered by crossing
    /// outputs in word order (`out_left`, then `out_right`), followed by one
    /// circle per strand position no crossing touches.
    pub fn close(word: &BraidWord) -> Diagram {
        let k = word.strands;
        let letters = &word.letters;

        // Semiarc 2c is out_left of crossing c, 2c+1 its out_right.
        let mut last: Vec<Option<SemiarcId>> = vec![None; k];
        let mut first_port: Vec<Option<Port>> = vec![None; k];
        let mut pending = Vec::with_capacity(letters.len());
        for (c, l) in letters.iter().enumerate() {
            let (a, b) = (l.index - 1, l.index);
            pending.push((last[a], last[b]));
            if first_port[a].is_none() {
                first_port[a] = Some(Port { crossing: c, role: PortRole::InLeft });
            }
            if first_port[b].is_none() {
                first_port[b] = Some(Port { crossing: c, role: PortRole::InRight });
            }
            last[a] = Some(2 * c);
            last[b] = Some(2 * c + 1);
        }

        let mut semiarcs: Vec<Semiarc> = Vec::with_capacity(2 * letters.len() + k);
        for (c, l) in letters.iter().enumerate() {
            for (role, position) in [(PortRole::OutLeft, l.index - 1), (PortRole::OutRight, l.index)] {
                semiarcs.push(Semiarc { tail: Some(Port { crossing: c, role }), head: None, position, closure: false });
            }
        }
        let mut bottom = vec![0; k];
        for j in 0..k {
            bottom[j] = match last[j] {
                Some(id) => {
                    semiarcs[id].closure = true;
                    semiarcs[id].head = first_port[j];
                    id
                }
                None => {
                    semiarcs.push(Semiarc { tail: None, head: None, position: j, closure: true });
                    semiarcs.len() - 1
                }
            };
        }

        let mut crossings = Vec::with_capacity(letters.len());
        for (c, (l, &(below_left, below_right))) in letters.iter().zip(&pending).enumerate() {
            let (a, b) = (l.index - 1, l.index);
            let in_left = below_left.unwrap_or(bottom[a]);
            let in_right = below_right.unwrap_or(bottom[b]);
            if let Some(id) = below_left {
                semiarcs[id].head = Some(Port { crossing: c, role: PortRole::InLeft });
            }
            if let Some(id) = below_right {
                semiarcs[id].head = Some(Port { crossing: c, role: PortRole::InRight });
            }
            crossings.push(Crossing { kind: l.kind, in_left, in_right, out_left: 2 * c, out_right: 2 * c + 1 });
        }

        let perm = word.permutation();
        let mut seen = vec![false; k];
        let mut components = 0;
        for start in 0..k {
            if !seen[start] {
                components += 1;
                let mut j = start;
                while !seen[j] {
                    seen[j] = true;
                    j = perm[j];
                }
            }
        }

        let count = |kind| letters.iter().filter(|l| l.kind == kind).count();
        Diagram {
            word: word.clone(),
            crossings,
            semiarcs,
            bottom,
            components,
            positive: count(CrossingKind::Positive),
            negative: count(CrossingKind::Negative),
        }
    }

    pub fn word(&self) -> &BraidWord {
        &self.word
    }

    pub fn mode(&self) -> Mode {
        self.word.mode
    }

    pub fn strands(&self) -> usize {
        self.word.strands
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn semiarcs(&self) -> &[Semiarc] {
        &self.semiarcs
    }

    pub fn semiarc_count(&self) -> usize {
        self.semiarcs.len()
    }

    pub fn bottom(&self) -> &[SemiarcId] {
        &self.bottom
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    /// `(p, n)`: positive and negative classical crossings.
    pub fn writhe_counts(&self) -> (usize, usize) {
        (self.positive, self.negative)
    }

    pub fn singular_count(&self) -> usize {
        self.crossings.len() - self.positive - self.negative
    }
}

/// `(p, n)` for a diagram; singular crossings are not counted.
pub fn writhe_counts(d: &Diagram) -> (usize, usize) {
    d.writhe_counts()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(text: &str, strands: usize) -> BraidWord {
        BraidWord::parse(text, strands, Mode::Pseudo).unwrap()
    }

    #[test]
    fn parse_examples() {
        let w = word("s1 s1 t1", 2);
        assert_eq!(w.letters(), &[Letter::pos(1), Letter::pos(1), Letter::sing(1)]);
        let w = word("s1- t2", 3);
        assert_eq!(w.letters(), &[Letter::neg(1), Letter::sing(2)]);
        assert_eq!(w.to_string(), "s1- t2");
    }

    #[test]
    fn parse_errors_carry_columns() {
        match BraidWord::parse("s3", 2, Mode::Singular).unwrap_err() {
            Error::Parse { column, .. } => assert_eq!(column, 1),
            e => panic!("unexpected {e}"),
        }
        match BraidWord::parse("s1  x1", 2, Mode::Singular).unwrap_err() {
            Error::Parse { column, .. } => assert_eq!(column, 5),
            e => panic!("unexpected {e}"),
        }
        for bad in ["s0", "t", "s1--", "s-1", "q1", "t1x"] {
            assert!(BraidWord::parse(bad, 3, Mode::Pseudo).is_err(), "{bad}");
        }
    }

    #[test]
    fn closure_examples() {
        let d = word("s1 s1 t1", 2).close();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe_counts(), (2, 0));
        assert_eq!(d.semiarc_count(), 6);

        let d = word("", 1).close();
        assert_eq!(d.crossings().len(), 0);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.semiarc_count(), 1);

        let d = word("t1", 2).close();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe_counts(), (0, 0));
        assert_eq!(d.semiarc_count(), 2);
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(word("s1- s1-", 2).close().writhe_counts(), (0, 2));
        assert_eq!(word("t1 t1 t1", 2).close().writhe_counts(), (0, 0));
        let d = word("s1 s2- t1 t2 s1", 3).close();
        let (p, n) = d.writhe_counts();
        assert_eq!(p + n + d.singular_count(), 5);
    }

    #[test]
    fn untouched_strands_are_circles() {
        let d = word("s1", 4).close();
        assert_eq!(d.semiarc_count(), 2 + 2);
        assert_eq!(d.component_count(), 3);
    }

    #[test]
    fn ports_match_semiarcs() {
        let d = word("s1 t2 s1- s2 t1", 3).close();
        for (c, x) in d.crossings().iter().enumerate() {
            for role in [PortRole::InLeft, PortRole::InRight] {
                let s = d.semiarcs()[x.semiarc(role)];
                assert_eq!(s.head, Some(Port { crossing: c, role }));
            }
            for role in [PortRole::OutLeft, PortRole::OutRight] {
                let s = d.semiarcs()[x.semiarc(role)];
                assert_eq!(s.tail, Some(Port { crossing: c, role }));
            }
        }
    }
}
