use std::fmt;

use crate::StructureConstants;

const KEEP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotSymmetric { i: usize, j: usize },
    SelfBracket { i: usize },
    BracketParity { i: usize, j: usize, k: usize },
    MissingSquare { i: usize },
    SquareParity { i: usize, k: usize },
    Jacobi { i: usize, j: usize, k: usize },
    Jis { i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSymmetric { i, j } => write!(f, "[e{i},e{j}] != [e{j},e{i}]"),
            Violation::SelfBracket { i } => write!(f, "[e{i},e{i}] != 0"),
            Violation::BracketParity { i, j, k } => write!(f, "[e{i},e{j}] has a wrong-parity component e{k}"),
            Violation::MissingSquare { i } => write!(f, "odd e{i} has no square"),
            Violation::SquareParity { i, k } => write!(f, "s(e{i}) has odd component e{k}"),
            Violation::Jacobi { i, j, k } => write!(f, "Jacobi fails on (e{i},e{j},e{k})"),
            Violation::Jis { i, j } => write!(f, "[s(e{i}),e{j}] != [e{i},[e{i},e{j}]]"),
        }
    }
}

/// Outcome of an exhaustive axiom check. Keeps the first few violations and
/// counts all of them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
    pub total: usize,
    /// Count of [`Violation::Jis`] entries among `total`.
    pub jis: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.total == 0
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    fn push(&mut self, v: Violation) {
        if matches!(v, Violation::Jis { .. }) {
            self.jis += 1;
        }
        self.total += 1;
        if self.violations.len() < KEEP {
            self.violations.push(v);
        }
    }
}

/// Anticommutativity, parity, Jacobi over all basis triples, and the
/// squaring identity `[s(f), g] = [f, [f, g]]` on odd basis vectors.
///
/// Basis triples suffice: Jacobi and JIS on basis vectors imply JIS for
/// every odd vector, since the cross terms are Jacobi instances.
pub fn verify_axioms(g: &StructureConstants) -> AxiomReport {
    let n = g.dim();
    let mut rep = AxiomReport::default();
    for i in 0..n {
        for j in i..n {
            let c = g.bracket_basis(i, j);
            if c != g.bracket_basis(j, i) {
                rep.push(Violation::NotSymmetric { i, j });
            }
            if i == j && !c.is_zero() {
                rep.push(Violation::SelfBracket { i });
            }
            let p = g.parity(i) + g.parity(j);
            if let Some(k) = c.iter_ones().find(|&k| g.parity(k) != p) {
                rep.push(Violation::BracketParity { i, j, k });
            }
        }
    }
    for i in g.odd_indices() {
        match g.square_basis(i) {
            None => rep.push(Violation::MissingSquare { i }),
            Some(s) => {
                if let Some(k) = s.iter_ones().find(|&k| g.parity(k).is_odd()) {
                    rep.push(Violation::SquareParity { i, k });
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let cij = g.bracket_basis(i, j);
            for k in j + 1..n {
                let mut s = g.bracket_with_basis(i, g.bracket_basis(j, k));
                s.xor_assign(&g.bracket_with_basis(j, g.bracket_basis(k, i)));
                s.xor_assign(&g.bracket_with_basis(k, cij));
                if !s.is_zero() {
                    rep.push(Violation::Jacobi { i, j, k });
                }
            }
        }
    }
    for i in g.odd_indices() {
        let Some(si) = g.square_basis(i) else { continue };
        for j in 0..n {
            let mut lhs = g.zero_vector();
            for a in si.iter_ones() {
                lhs.xor_assign(g.bracket_basis(a, j));
            }
            let rhs = g.bracket_with_basis(i, g.bracket_basis(i, j));
            if lhs != rhs {
                rep.push(Violation::Jis { i, j });
            }
        }
    }
    rep
}

/// Checks that brackets and squares respect the `(degree, weight)` labels.
/// Returns the offending `(i, j, k)` triples (`j == i` marks a square).
pub fn verify_grading(g: &StructureConstants) -> Vec<(usize, usize, usize)> {
    let n = g.dim();
    let add = |a: &[i32], b: &[i32]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
    let mut bad = Vec::new();
    for i in 0..n {
        let gi = g.element(i).grade();
        for j in i..n {
            let want = add(&gi, &g.element(j).grade());
            for k in g.bracket_basis(i, j).iter_ones() {
                if g.element(k).grade() != want {
                    bad.push((i, j, k));
                }
            }
        }
        if let Some(s) = g.square_basis(i) {
            let want = add(&gi, &gi);
            for k in s.iter_ones() {
                if g.element(k).grade() != want {
                    bad.push((i, i, k));
                }
            }
        }
    }
    bad
}
