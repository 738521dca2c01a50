//! Invariants that certify non-isomorphism: super-ranks of operators, rank
//! spectra of adjoint maps, and a fingerprint combining them with graded
//! dimensions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use gf2core::{BitMatrix, BitVector};
use liesuper::{center, derived_series, StructureConstants};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("operator is {got}x{got}, algebra has dimension {expected}")]
    Dimension { expected: usize, got: usize },
}

/// Superdimension of `V / Ker A`, i.e. of the image of `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperRank {
    pub even_rank: usize,
    pub odd_rank: usize,
}

impl SuperRank {
    pub fn total(self) -> usize {
        self.even_rank + self.odd_rank
    }
}

impl fmt::Display for SuperRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.even_rank, self.odd_rank)
    }
}

/// For a parity-homogeneous operator the image is graded, so its even part
/// has the dimension of the rows at even basis vectors.
pub fn super_rank(g: &StructureConstants, m: &BitMatrix) -> Result<SuperRank, InvariantError> {
    if m.rows() != g.dim() || m.cols() != g.dim() {
        return Err(InvariantError::Dimension { expected: g.dim(), got: m.rows() });
    }
    let rows = |idx: Vec<usize>| BitMatrix::from_rows(m.cols(), &idx.iter().map(|&i| m.row(i)).collect::<Vec<_>>()).rank();
    Ok(SuperRank { even_rank: rows(g.even_indices()), odd_rank: rows(g.odd_indices()) })
}

/// Sorted ranks of `ad_{e_i}` over the basis.
pub fn ad_rank_spectrum(g: &StructureConstants) -> Vec<usize> {
    let mut r: Vec<usize> = (0..g.dim()).map(|i| g.ad_basis(i).rank()).collect();
    r.sort_unstable();
    r
}

/// Sorted ranks of `ad_{e_i + e_j}` over all pairs `i < j`.
pub fn pair_rank_spectrum(g: &StructureConstants) -> Vec<usize> {
    let n = g.dim();
    let mut r = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let x = BitVector::from_indices(n, [i, j]);
            r.push(g.ad(&x).expect("same dimension").rank());
        }
    }
    r.sort_unstable();
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub sdim: (usize, usize),
    pub derived: Vec<usize>,
    pub center: usize,
    pub basis_ranks: Vec<usize>,
    pub pair_ranks: Vec<usize>,
}

impl Fingerprint {
    pub fn of(g: &StructureConstants) -> Self {
        Fingerprint {
            sdim: g.sdim(),
            derived: derived_series(g),
            center: center(g).dim(),
            basis_ranks: ad_rank_spectrum(g),
            pair_ranks: pair_rank_spectrum(g),
        }
    }

    /// One record per line: `sdim`, `derived`, `center`, `basis_ranks`,
    /// `pair_ranks`, the rank multisets written as `rank:count`.
    pub fn to_text(&self) -> String {
        let derived: Vec<String> = self.derived.iter().map(|d| d.to_string()).collect();
        format!(
            "sdim {}|{}\nderived {}\ncenter {}\nbasis_ranks {}\npair_ranks {}\n",
            self.sdim.0,
            self.sdim.1,
            derived.join(" "),
            self.center,
            multiset_text(&self.basis_ranks),
            multiset_text(&self.pair_ranks)
        )
    }

    pub fn from_text(text: &str) -> Result<Self, InvariantError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let mut field = |key: &str| -> Result<(usize, String), InvariantError> {
            let (i, line) = lines.next().ok_or(InvariantError::Parse { line: 0, reason: format!("missing {key}") })?;
            let rest = line.strip_prefix(key).and_then(|r| r.strip_prefix(' ').or(r.is_empty().then_some("")));
            rest.map(|r| (i + 1, r.trim().to_string())).ok_or(InvariantError::Parse { line: i + 1, reason: format!("expected {key}") })
        };
        let bad = |line: usize, what: &str| InvariantError::Parse { line, reason: format!("bad {what}") };
        let (l, s) = field("sdim")?;
        let (e, o) = s.split_once('|').ok_or_else(|| bad(l, "sdim"))?;
        let sdim = (e.parse().map_err(|_| bad(l, "sdim"))?, o.parse().map_err(|_| bad(l, "sdim"))?);
        let (l, s) = field("derived")?;
        let derived = s.split_whitespace().map(|t| t.parse().map_err(|_| bad(l, "derived"))).collect::<Result<_, _>>()?;
        let (l, s) = field("center")?;
        let center = s.parse().map_err(|_| bad(l, "center"))?;
        let (l, s) = field("basis_ranks")?;
        let basis_ranks = parse_multiset(&s).ok_or_else(|| bad(l, "basis_ranks"))?;
        let (l, s) = field("pair_ranks")?;
        let pair_ranks = parse_multiset(&s).ok_or_else(|| bad(l, "pair_ranks"))?;
        Ok(Fingerprint { sdim, derived, center, basis_ranks, pair_ranks })
    }
}

fn counts(v: &[usize]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &r in v {
        *m.entry(r).or_insert(0) += 1;
    }
    m
}

fn multiset_text(v: &[usize]) -> String {
    counts(v).iter().map(|(r, c)| format!("{r}:{c}")).collect::<Vec<_>>().join(" ")
}

fn parse_multiset(s: &str) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        let (r, c) = tok.split_once(':')?;
        let (r, c): (usize, usize) = (r.parse().ok()?, c.parse().ok()?);
        out.extend(std::iter::repeat(r).take(c));
    }
    out.windows(2).all(|w| w[0] <= w[1]).then_some(out)
}

/// Outcome of comparing two fingerprints. Equal fingerprints never prove
/// isomorphism, so there is no positive verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Evidence { component: &'static str, left: String, right: String, detail: String },
    Inconclusive,
}

impl Verdict {
    pub fn is_evidence(&self) -> bool {
        matches!(self, Verdict::Evidence { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Evidence { component, left, right, detail } => write!(f, "not isomorphic: {component} {left} vs {right} ({detail})"),
            Verdict::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

/// Largest dimension for which [`rank_set`] enumerates every element.
pub const EXHAUSTIVE_DIM: usize = 18;

/// How many elements `x` give each rank of `ad_x`. Exhaustive (every
/// element, a basis-independent invariant) up to [`EXHAUSTIVE_DIM`];
/// otherwise the basis and pair sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub exhaustive: bool,
    pub counts: BTreeMap<usize, u64>,
}

impl RankProfile {
    pub fn ranks(&self) -> BTreeSet<usize> {
        self.counts.keys().copied().collect()
    }
}

pub fn rank_profile(g: &StructureConstants) -> RankProfile {
    let n = g.dim();
    let mut counts = BTreeMap::new();
    if n > EXHAUSTIVE_DIM {
        for r in ad_rank_spectrum(g).into_iter().chain(pair_rank_spectrum(g)) {
            *counts.entry(r).or_insert(0) += 1;
        }
        return RankProfile { exhaustive: false, counts };
    }
    let ads: Vec<BitMatrix> = (0..n).map(|i| g.ad_basis(i)).collect();
    let mut cur = BitMatrix::zeros(n, n);
    counts.insert(0, 1);
    for step in 1u64..1 << n {
        let flip = step.trailing_zeros() as usize;
        cur = cur.add(&ads[flip]).expect("same shape");
        *counts.entry(cur.rank()).or_insert(0) += 1;
    }
    RankProfile { exhaustive: true, counts }
}

/// The first component that certifies non-isomorphism: superdimension,
/// derived series, center dimension, then a rank attained in one algebra and
/// by no element of the other, then (both exhaustive) the number of elements
/// of each rank. Rank multisets over a basis are not basis-independent, so a
/// sample only certifies against an exhaustive profile.
pub fn distinguish(g1: &StructureConstants, g2: &StructureConstants) -> Verdict {
    let (f1, f2) = (Fingerprint::of(g1), Fingerprint::of(g2));
    let ev = |component, left: String, right: String, detail: String| Verdict::Evidence { component, left, right, detail };
    if f1.sdim != f2.sdim {
        return ev("sdim", format!("{}|{}", f1.sdim.0, f1.sdim.1), format!("{}|{}", f2.sdim.0, f2.sdim.1), "superdimensions differ".into());
    }
    if f1.derived != f2.derived {
        return ev("derived", format!("{:?}", f1.derived), format!("{:?}", f2.derived), "derived series differ".into());
    }
    if f1.center != f2.center {
        return ev("center", f1.center.to_string(), f2.center.to_string(), "center dimensions differ".into());
    }
    let (p1, p2) = (rank_profile(g1), rank_profile(g2));
    let show = |p: &RankProfile| p.counts.iter().map(|(r, c)| format!("{r}:{c}")).collect::<Vec<_>>().join(" ");
    let (s1, s2) = (p1.ranks(), p2.ranks());
    if p2.exhaustive {
        if let Some(r) = s1.iter().find(|r| !s2.contains(r)) {
            return ev("ranks", show(&p1), show(&p2), format!("rank {r} is attained only in the first"));
        }
    }
    if p1.exhaustive {
        if let Some(r) = s2.iter().find(|r| !s1.contains(r)) {
            return ev("ranks", show(&p1), show(&p2), format!("rank {r} is attained only in the second"));
        }
    }
    if p1.exhaustive && p2.exhaustive {
        if let Some((r, c)) = p1.counts.iter().find(|(r, c)| p2.counts.get(r) != Some(c)) {
            let other = p2.counts.get(r).copied().unwrap_or(0);
            return ev("ranks", show(&p1), show(&p2), format!("rank {r} is attained by {c} elements vs {other}"));
        }
    }
    Verdict::Inconclusive
}
