use std::fmt;

use deriv::{closed_form_generators, preserves_nis, ClosedForm};
use liesuper::{FamilyAlgebra, Parity};

use crate::{build_family, canonical_target, find_a, find_q, identify_canonical, nontrivial_cocycle, DexError, ExtensionCase, ExtensionData};

/// One row of an extension table: a closed-form outer derivation, the
/// auxiliary data its case needs, and what the extension turned out to be.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub label: String,
    pub parity: Parity,
    pub case: ExtensionCase,
    pub m: bool,
    pub preserves: bool,
    /// `Some(found)` when the case needs `q`.
    pub q: Option<bool>,
    /// `Some(found)` when the case needs `A`.
    pub a: Option<bool>,
    pub nontrivial: bool,
    /// `None` when the extension was built, otherwise why not.
    pub refusal: Option<String>,
    pub sdim: Option<(usize, usize)>,
    pub axioms: Option<bool>,
    /// Invariance, symmetry, parity and the odd-diagonal condition.
    pub invariance: Option<bool>,
    /// A verified canonical map onto po / b was found.
    pub canonical: Option<bool>,
}

impl TableRow {
    pub fn built(&self) -> bool {
        self.refusal.is_none()
    }
}

pub const TABLE_HEADER: &str = "D,parity,case,m,preserves,q,A,nontrivial,built,sdim,axioms,invariance,canonical";

fn yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sdim = self.sdim.map(|(e, o)| format!("{e}|{o}")).unwrap_or_else(|| "-".into());
        write!(
            f,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.label,
            if self.parity.is_odd() { "odd" } else { "even" },
            self.case,
            u8::from(self.m),
            yes_no(Some(self.preserves)),
            yes_no(self.q),
            yes_no(self.a),
            yes_no(Some(self.nontrivial)),
            self.refusal.as_deref().unwrap_or("yes"),
            sdim,
            yes_no(self.axioms),
            yes_no(self.invariance),
            yes_no(self.canonical)
        )
    }
}

fn row(fa: &FamilyAlgebra, target: &liesuper::StructureConstants, cf: &ClosedForm, m: bool) -> Result<TableRow, DexError> {
    let (a, b, d) = (&fa.alg, &fa.form, &cf.map);
    let case = ExtensionCase::of(b.parity, d.parity);
    let preserves = preserves_nis(d, b, a);
    let q = case.needs_q().then(|| find_q(a, b, d));
    let big_a = case.needs_a().then(|| find_a(a, d));
    let mut out = TableRow {
        label: cf.label.clone(),
        parity: d.parity,
        case,
        m,
        preserves,
        q: q.as_ref().map(Option::is_some),
        a: big_a.as_ref().map(Option::is_some),
        nontrivial: nontrivial_cocycle(a, b, d),
        refusal: None,
        sdim: None,
        axioms: None,
        invariance: None,
        canonical: None,
    };
    let mut data = ExtensionData::new(d.clone(), cf.label.clone());
    data.q_diag = q.flatten();
    data.a = big_a.flatten();
    data.m = m;
    if !preserves {
        out.refusal = Some("not preserving".into());
    } else if out.q == Some(false) {
        out.refusal = Some("no q".into());
    } else if out.a == Some(false) {
        out.refusal = Some("no A".into());
    } else {
        match build_family(fa, &data) {
            Ok(ext) => {
                let (ax, nis) = ext.verify();
                out.sdim = Some(ext.alg.sdim());
                out.axioms = Some(ax.passed());
                out.invariance = Some(nis.passed_invariance());
                out.canonical = Some(identify_canonical(&ext, target)?.is_some());
            }
            Err(e) => out.refusal = Some(short_reason(&e)),
        }
    }
    Ok(out)
}

fn short_reason(e: &DexError) -> String {
    match e {
        DexError::LeParity => "le parity".into(),
        DexError::NotAlternating(_) => "not alternating".into(),
        DexError::NotDerivation => "not a derivation".into(),
        other => other.to_string().replace(',', ";"),
    }
}

/// One row per closed-form outer derivation of the family, two rows
/// (`m = 0, 1`) in the odd-derivation, odd-form case.
pub fn extension_table(fa: &FamilyAlgebra) -> Result<Vec<TableRow>, DexError> {
    let (target, _) = canonical_target(&fa.func);
    let mut rows = Vec::new();
    for cf in closed_form_generators(fa)? {
        let case = ExtensionCase::of(fa.form.parity, cf.map.parity);
        rows.push(row(fa, &target, &cf, false)?);
        if case == ExtensionCase::DoddBodd {
            rows.push(row(fa, &target, &cf, true)?);
        }
    }
    Ok(rows)
}
