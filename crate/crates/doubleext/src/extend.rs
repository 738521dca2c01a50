use std::fmt;

use deriv::{is_derivation, preserves_nis, LinearMap};
use gf2core::{BitMatrix, BitVector, Combiner, RowSpace};
use liesuper::{center, verify_axioms, AxiomReport, BasisElement, BilinearFormTable, FamilyAlgebra, NisReport, Parity, StructureConstants};

use crate::DexError;

/// The parity case of a double extension: parity of the derivation, then of
/// the form on `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtensionCase {
    /// Even derivation, even form: needs a quadratic form `q`.
    DevBeven,
    /// Odd derivation, even form: needs `A` with `D² = ad_A`, `D(A) = 0`.
    DoddBeven,
    /// Even derivation, odd form: no extra data.
    DevBodd,
    /// Odd derivation, odd form: needs `q`, `A` and `m`.
    DoddBodd,
}

impl ExtensionCase {
    pub fn of(form: Parity, map: Parity) -> Self {
        match (map.is_odd(), form.is_odd()) {
            (false, false) => ExtensionCase::DevBeven,
            (true, false) => ExtensionCase::DoddBeven,
            (false, true) => ExtensionCase::DevBodd,
            (true, true) => ExtensionCase::DoddBodd,
        }
    }

    pub fn theorem(self) -> &'static str {
        match self {
            ExtensionCase::DevBeven => "MainTh",
            ExtensionCase::DoddBeven => "MainTh2",
            ExtensionCase::DevBodd => "MainTh4",
            ExtensionCase::DoddBodd => "MainTh3",
        }
    }

    pub fn needs_q(self) -> bool {
        matches!(self, ExtensionCase::DevBeven | ExtensionCase::DoddBodd)
    }

    pub fn needs_a(self) -> bool {
        matches!(self, ExtensionCase::DoddBeven | ExtensionCase::DoddBodd)
    }

    /// Parity of the new central element `c`.
    pub fn center_parity(self) -> Parity {
        match self {
            ExtensionCase::DevBeven | ExtensionCase::DoddBodd => Parity::Even,
            ExtensionCase::DoddBeven | ExtensionCase::DevBodd => Parity::Odd,
        }
    }
}

impl fmt::Display for ExtensionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExtensionCase::DevBeven => "Dev_Beven",
            ExtensionCase::DoddBeven => "Dodd_Beven",
            ExtensionCase::DevBodd => "Dev_Bodd",
            ExtensionCase::DoddBodd => "Dodd_Bodd",
        };
        f.write_str(s)
    }
}

/// The data `(D, q, A, m, B(D, D))` of a double extension. `q_diag` holds
/// the values `q(e_i)` on odd basis vectors; the rest of `q` is fixed by its
/// polar form `B(·, D ·)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionData {
    pub d: LinearMap,
    pub label: String,
    pub q_diag: Option<BitVector>,
    pub a: Option<BitVector>,
    pub m: bool,
    pub bdd: bool,
}

impl ExtensionData {
    pub fn new(d: LinearMap, label: impl Into<String>) -> Self {
        ExtensionData { d, label: label.into(), q_diag: None, a: None, m: false, bdd: false }
    }

    pub fn case(&self, form: &BilinearFormTable) -> ExtensionCase {
        ExtensionCase::of(form.parity, self.d.parity)
    }
}

/// `g = Kc ⊕ a ⊕ KD` with `c` at index 0, `a` at `1..=dim a` and `D` last.
#[derive(Clone, Debug)]
pub struct ExtendedAlgebra {
    pub alg: StructureConstants,
    pub form: BilinearFormTable,
    pub case: ExtensionCase,
    pub data: ExtensionData,
}

impl ExtendedAlgebra {
    pub fn c_index(&self) -> usize {
        0
    }

    pub fn d_index(&self) -> usize {
        self.alg.dim() - 1
    }

    /// The image of a vector of `a` in `g`.
    pub fn embed(&self, v: &BitVector) -> BitVector {
        embed(v, self.alg.dim())
    }

    pub fn verify(&self) -> (AxiomReport, NisReport) {
        (verify_axioms(&self.alg), self.form.nis_report(&self.alg))
    }

    /// One header line recording how the algebra was built.
    pub fn provenance(&self) -> String {
        let q = match &self.data.q_diag {
            Some(q) => q.to_bit_string(),
            None => "-".into(),
        };
        let a = match &self.data.a {
            Some(a) => a.to_bit_string(),
            None => "-".into(),
        };
        format!(
            "{} {} D={} q={} A={} m={} BDD={}",
            self.case.theorem(),
            self.case,
            self.data.label,
            q,
            a,
            u8::from(self.data.m),
            u8::from(self.data.bdd)
        )
    }
}

fn embed(v: &BitVector, len: usize) -> BitVector {
    BitVector::from_indices(len, v.iter_ones().map(|i| i + 1))
}

/// `B(e_i, D e_j)` on odd basis vectors must be symmetric with zero
/// diagonal; then `q` with zero diagonal has it as polar form.
pub fn find_q(a: &StructureConstants, b: &BilinearFormTable, d: &LinearMap) -> Option<BitVector> {
    let odd = a.odd_indices();
    let m = |i: usize, j: usize| b.eval(&a.unit(i), &d.column(j));
    for (x, &i) in odd.iter().enumerate() {
        if m(i, i) {
            return None;
        }
        for &j in &odd[x + 1..] {
            if m(i, j) != m(j, i) {
                return None;
            }
        }
    }
    Some(a.zero_vector())
}

/// Solves `ad_A = D²` for even `A`, then moves `A` along the even center
/// until `D(A) = 0`.
pub fn find_a(a: &StructureConstants, d: &LinearMap) -> Option<BitVector> {
    let n = a.dim();
    let even = a.even_indices();
    let ads = a.ad_vectors();
    let gens: Vec<BitVector> = even.iter().map(|&i| ads[i].clone()).collect();
    let square = LinearMap::from_matrix(a, d.matrix.mul(&d.matrix).ok()?).ok()?;
    let coeffs = Combiner::new(n * n, &gens).express(&square.flat())?;
    let a0 = BitVector::from_indices(n, coeffs.iter_ones().map(|k| even[k]));
    let da0 = d.apply(&a0);
    if da0.is_zero() {
        return Some(a0);
    }
    let evens = RowSpace::span(n, even.iter().map(|&i| a.unit(i)));
    let z_even = center(a).intersection(&evens);
    let images: Vec<BitVector> = z_even.basis().iter().map(|z| d.apply(z)).collect();
    let shift = Combiner::new(n, &images).express(&da0)?;
    let mut out = a0;
    for k in shift.iter_ones() {
        out.xor_assign(&z_even.basis()[k]);
    }
    Some(out)
}

/// Checks that `d` is admissible and fills in the data the case requires
/// with the canonical choices: zero diagonal for `q`, `m = 0`, `B(D, D) = 0`.
pub fn prepare(a: &StructureConstants, b: &BilinearFormTable, d: LinearMap, label: &str) -> Result<ExtensionData, DexError> {
    if !is_derivation(a, &d) {
        return Err(DexError::NotDerivation);
    }
    if !preserves_nis(&d, b, a) {
        return Err(DexError::NotPreserving);
    }
    let case = ExtensionCase::of(b.parity, d.parity);
    let mut data = ExtensionData::new(d, label);
    if case.needs_q() {
        data.q_diag = Some(find_q(a, b, &data.d).ok_or(DexError::Unbuildable("no quadratic form q"))?);
    }
    if case.needs_a() {
        data.a = Some(find_a(a, &data.d).ok_or(DexError::Unbuildable("no A with D^2 = ad_A and D(A) = 0"))?);
    }
    Ok(data)
}

/// The grade `G` with `B(x, y) ≠ 0 ⇒ grade x + grade y = G`.
fn form_grade(a: &StructureConstants, b: &BilinearFormTable) -> Result<Vec<i32>, DexError> {
    let mut grade: Option<Vec<i32>> = None;
    for i in 0..a.dim() {
        for j in b.gram.row(i).iter_ones() {
            let g: Vec<i32> = a.element(i).grade().iter().zip(a.element(j).grade()).map(|(x, y)| x + y).collect();
            match &grade {
                None => grade = Some(g),
                Some(prev) if *prev != g => return Err(DexError::FormGrade),
                Some(_) => {}
            }
        }
    }
    grade.ok_or(DexError::Degenerate)
}

fn check_data(case: ExtensionCase, a: &StructureConstants, b: &BilinearFormTable, data: &ExtensionData) -> Result<(), DexError> {
    let n = a.dim();
    let d = &data.d;
    if d.dim() != n || b.dim() != n {
        return Err(DexError::Dimension { expected: n, got: d.dim().min(b.dim()) });
    }
    if ExtensionCase::of(b.parity, d.parity) != case {
        return Err(DexError::ParityViolation { case, form: b.parity, map: d.parity });
    }
    match (case.needs_q(), &data.q_diag) {
        (true, None) => return Err(DexError::MissingData { case, what: "q" }),
        (false, Some(_)) => return Err(DexError::UnexpectedData { case, what: "q" }),
        _ => {}
    }
    match (case.needs_a(), &data.a) {
        (true, None) => return Err(DexError::MissingData { case, what: "A" }),
        (false, Some(_)) => return Err(DexError::UnexpectedData { case, what: "A" }),
        _ => {}
    }
    if data.m && case != ExtensionCase::DoddBodd {
        return Err(DexError::UnexpectedData { case, what: "m" });
    }
    if data.bdd && case != ExtensionCase::DevBeven {
        return Err(DexError::OddSelfPairing);
    }
    if !b.is_nondegenerate() {
        return Err(DexError::Degenerate);
    }
    if !is_derivation(a, d) {
        return Err(DexError::NotDerivation);
    }
    if !preserves_nis(d, b, a) {
        return Err(DexError::NotPreserving);
    }
    if let Some(i) = a.even_indices().into_iter().find(|&i| b.eval(&d.column(i), &a.unit(i))) {
        return Err(DexError::NotAlternating(i));
    }
    if let Some(q) = &data.q_diag {
        if q.len() != n {
            return Err(DexError::Dimension { expected: n, got: q.len() });
        }
        if q.iter_ones().any(|i| !a.parity(i).is_odd()) {
            return Err(DexError::QuadraticSupport);
        }
        if find_q(a, b, d).is_none() {
            return Err(DexError::NotPolar);
        }
    }
    if let Some(x) = &data.a {
        if x.len() != n {
            return Err(DexError::Dimension { expected: n, got: x.len() });
        }
        let square = d.matrix.mul(&d.matrix).map_err(|_| DexError::BadA)?;
        let ad = a.ad(x)?;
        if !a.is_even_vector(x) || square != ad || !d.apply(x).is_zero() {
            return Err(DexError::BadA);
        }
    }
    Ok(())
}

/// The double extension of `(a, b)` by `data` in the given case: bracket
/// `[x, y] + B(D x, y) c`, `[D, x] = D(x)`, `c` central, squaring per the
/// case, and the form extended by `B(D, c) = 1`, `B(D, D) = data.bdd`.
pub fn build(case: ExtensionCase, a: &StructureConstants, b: &BilinearFormTable, data: &ExtensionData) -> Result<ExtendedAlgebra, DexError> {
    check_data(case, a, b, data)?;
    let n = a.dim();
    let len = n + 2;
    let (c, dx) = (0, n + 1);
    let d = &data.d;
    let shift = d.key().shift;
    let total = form_grade(a, b)?;
    let c_grade: Vec<i32> = total.iter().zip(&shift).map(|(t, s)| t - s).collect();

    let mut basis = Vec::with_capacity(len);
    basis.push(BasisElement::new("c", case.center_parity(), c_grade[0], c_grade[1..].to_vec()));
    basis.extend(a.basis().iter().cloned());
    basis.push(BasisElement::new("D", d.parity, shift[0], shift[1..].to_vec()));
    let mut g = StructureConstants::abelian(basis);

    for i in 0..n {
        let di = d.column(i);
        for j in i..n {
            let mut v = embed(a.bracket_basis(i, j), len);
            if i != j && b.eval(&di, &a.unit(j)) {
                v.flip(c);
            }
            if !v.is_zero() {
                g.set_bracket(i + 1, j + 1, v);
            }
        }
        if !di.is_zero() {
            g.set_bracket(i + 1, dx, embed(&di, len));
        }
        if let Some(s) = a.square_basis(i) {
            let mut v = embed(s, len);
            if data.q_diag.as_ref().is_some_and(|q| q.get(i)) {
                v.flip(c);
            }
            g.set_square(i + 1, v);
        }
    }
    if d.parity.is_odd() {
        let mut v = embed(data.a.as_ref().expect("checked"), len);
        if data.m {
            v.flip(c);
        }
        g.set_square(dx, v);
    }

    let gram = BitMatrix::from_fn(len, len, |i, j| match (i, j) {
        (0, j) => j == dx,
        (i, 0) => i == dx,
        (i, j) if i == dx && j == dx => data.bdd,
        (i, j) if i == dx || j == dx => false,
        (i, j) => b.get(i - 1, j - 1),
    });
    let form = BilinearFormTable::new(gram, b.parity);
    Ok(ExtendedAlgebra { alg: g, form, case, data: data.clone() })
}

/// [`build`] for a family member, in the case fixed by the parities. For
/// `le` the new center must be odd, as in the Buttin algebra.
pub fn build_family(fa: &FamilyAlgebra, data: &ExtensionData) -> Result<ExtendedAlgebra, DexError> {
    let case = data.case(&fa.form);
    if fa.func.is_buttin() && !case.center_parity().is_odd() {
        return Err(DexError::LeParity);
    }
    build(case, &fa.alg, &fa.form, data)
}
