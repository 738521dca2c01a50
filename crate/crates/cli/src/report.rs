//! Report builders. Everything except the benchmark is a pure function of
//! its inputs, so reports are byte-identical across runs.

use std::collections::BTreeSet;
use std::fmt::Write;

use deriv::{bench_family, closed_form_generators, derivation_space_blocked, is_derivation, preserves_nis, BlockKey, ClosedForm, SolverPath};
use doubleext::{build_family, canonical_target, extension_table, identify_canonical, prepare, ExtendedAlgebra, ExtensionCase, TableRow, TABLE_HEADER};
use invariants::Fingerprint;
use liesuper::{restrictedness_check, verify_axioms, BilinearFormTable, FamilyAlgebra, Parity, StructureConstants};

use crate::{CliError, ScaFile};

/// Report text plus the checks that failed while producing it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub failures: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }
}

#[derive(Clone, Debug)]
pub struct DexOutput {
    pub report: Report,
    pub csv: String,
    /// `(file name, contents)` for every built extension.
    pub files: Vec<(String, ScaFile)>,
}

fn parity_name(p: Parity) -> &'static str {
    if p.is_odd() {
        "odd"
    } else {
        "even"
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn weight_text(w: &[i32]) -> String {
    let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// File-name-safe form of a label: runs of other characters become `_`.
pub fn slug(s: &str) -> String {
    let mut out = String::new();
    for ch in s.chars() {
        if ch.is_ascii_alphanumeric() {
            out.push(ch);
        } else if !out.ends_with('_') {
            out.push('_');
        }
    }
    out.trim_matches('_').to_string()
}

pub fn build_file(fa: &FamilyAlgebra) -> ScaFile {
    ScaFile {
        comments: vec![format!("family {}", fa.family.label()), format!("nis parity {}", parity_name(fa.form.parity))],
        alg: fa.alg.clone(),
        form: Some(fa.form.clone()),
    }
}

fn stage<T, E: std::fmt::Display>(name: &'static str, r: Result<T, E>) -> Result<T, CliError> {
    r.map_err(|e| CliError::stage(name, e))
}

fn key_text(k: &BlockKey) -> String {
    format!("{} {} {}", k.degree(), weight_text(k.weight()), parity_name(k.parity))
}

/// Outer representatives grouped by `(degree, weight, parity)`, and for
/// family members the closed-form generators with their status.
pub fn derivations_report(label: &str, g: &StructureConstants, form: Option<&BilinearFormTable>, closed: &[ClosedForm], parallel: bool) -> Result<Report, CliError> {
    let space = stage("derivations", derivation_space_blocked(g, parallel))?;
    let mut r = Report::default();
    let (e, o) = g.sdim();
    let t = &mut r.text;
    writeln!(t, "derivations {label}").unwrap();
    writeln!(t, "sdim {e}|{o}").unwrap();
    writeln!(t, "all {} inner {} outer {} inner_defect {}", space.dim_all(), space.dim_inner(), space.dim_outer(), space.inner_defect).unwrap();
    writeln!(t, "outer classes: degree weight parity count preserving").unwrap();
    for block in space.blocks.values().filter(|b| b.outer.dim() > 0) {
        let maps: Vec<_> = block.outer.basis().iter().map(|v| deriv::LinearMap::from_flat(g, v)).collect::<Result<_, _>>().map_err(|e| CliError::stage("derivations", e))?;
        let preserving = match form {
            Some(b) => maps.iter().filter(|d| preserves_nis(d, b, g)).count().to_string(),
            None => "-".into(),
        };
        writeln!(t, "  {} {} {}", key_text(&block.key), maps.len(), preserving).unwrap();
    }
    if !closed.is_empty() {
        writeln!(t, "closed forms: label degree weight parity derivation preserving outer").unwrap();
        for cf in closed {
            let d = &cf.map;
            let der = is_derivation(g, d);
            let pres = form.map_or("-", |b| yes(preserves_nis(d, b, g)));
            let outer = der && !space.is_inner(d);
            let note = if cf.extrapolated { " extrapolated" } else { "" };
            writeln!(t, "  {} {} {} {} {}{}", cf.label, key_text(&d.key()), yes(der), pres, yes(outer), note).unwrap();
            r.failures.extend((!der).then(|| format!("{} is not a derivation", cf.label)));
        }
    }
    let t = &mut r.text;
    if space.inner_defect > 0 {
        writeln!(t, "warning: {} inner maps are not derivations", space.inner_defect).unwrap();
    }
    r.check(space.inner_defect == 0, "inner maps are not all derivations");
    Ok(r)
}

pub fn family_derivations(fa: &FamilyAlgebra, parallel: bool) -> Result<Report, CliError> {
    let closed = stage("closed forms", closed_form_generators(fa))?;
    derivations_report(&fa.family.label(), &fa.alg, Some(&fa.form), &closed, parallel)
}

fn extension(fa: &FamilyAlgebra, cf: &ClosedForm, m: bool) -> Result<ExtendedAlgebra, doubleext::DexError> {
    let mut data = prepare(&fa.alg, &fa.form, cf.map.clone(), &cf.label)?;
    data.m = m;
    build_family(fa, &data)
}

fn de_cell(row: &TableRow) -> String {
    match &row.refusal {
        Some(why) => format!("- ({why})"),
        None => {
            let (e, o) = row.sdim.unwrap_or((0, 0));
            let flag = |b: Option<bool>| yes(b == Some(true));
            format!("{e}|{o} axioms {} invariance {} canonical {}", flag(row.axioms), flag(row.invariance), flag(row.canonical))
        }
    }
}

fn opt_cell(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

/// The extension table of a family, its CSV twin, and the SCA files of
/// every extension that was built.
pub fn dex_report(fa: &FamilyAlgebra, parallel: bool) -> Result<DexOutput, CliError> {
    let label = fa.family.label();
    let space = stage("derivations", derivation_space_blocked(&fa.alg, parallel))?;
    let rows = stage("dex", extension_table(fa))?;
    let closed = stage("closed forms", closed_form_generators(fa))?;

    let mut report = Report::default();
    let t = &mut report.text;
    writeln!(t, "dex {label}").unwrap();
    writeln!(t, "form {}", parity_name(fa.form.parity)).unwrap();
    writeln!(t, "outer classes {}", space.dim_outer()).unwrap();
    let width = rows.iter().map(|r| r.label.len()).max().unwrap_or(1).max(1);
    writeln!(t, "{:width$}  parity  case        m  pres  q    A    DE", "D").unwrap();
    let mut csv = format!("family,{TABLE_HEADER}\n");
    let mut files = Vec::new();
    for row in &rows {
        let m = if row.case == ExtensionCase::DoddBodd { u8::from(row.m).to_string() } else { "-".into() };
        writeln!(
            t,
            "{:width$}  {:6}  {:10}  {}  {:4}  {:3}  {:3}  {}",
            row.label,
            parity_name(row.parity),
            row.case.to_string(),
            m,
            yes(row.preserves),
            opt_cell(row.q),
            opt_cell(row.a),
            de_cell(row)
        )
        .unwrap();
        writeln!(csv, "{label},{row}").unwrap();
        if row.built() {
            if row.axioms != Some(true) || row.invariance != Some(true) {
                report.failures.push(format!("{}: built extension fails verification", row.label));
            }
            let cf = closed.iter().find(|c| c.label == row.label).expect("rows come from the closed forms");
            let ext = stage("dex", extension(fa, cf, row.m))?;
            let suffix = if row.case == ExtensionCase::DoddBodd { format!("_m{}", u8::from(row.m)) } else { String::new() };
            let name = format!("dex_{}_{}{}.sca", slug(&label), slug(&row.label), suffix);
            let comments = vec![format!("family {label}"), ext.provenance()];
            files.push((name, ScaFile { comments, alg: ext.alg, form: Some(ext.form) }));
        }
    }
    Ok(DexOutput { report, csv, files })
}

/// Builds `DE(a, D)` for the named closed form (by default the one of
/// highest degree) and looks for a verified map onto po or b.
pub fn identify_report(fa: &FamilyAlgebra, label: Option<&str>, m: bool) -> Result<Report, CliError> {
    let closed = stage("closed forms", closed_form_generators(fa))?;
    let cf = match label {
        Some(l) => closed.iter().find(|c| c.label == l).ok_or_else(|| {
            let known: Vec<&str> = closed.iter().map(|c| c.label.as_str()).collect();
            CliError::Usage(format!("unknown derivation {l:?}; known: {}", known.join(" ")))
        })?,
        None => closed.iter().max_by_key(|c| c.map.degree).ok_or_else(|| CliError::stage("identify", "no closed forms"))?,
    };
    let ext = stage("dex", extension(fa, cf, m))?;
    let (target, _) = canonical_target(&fa.func);
    let witness = stage("identify", identify_canonical(&ext, &target))?;
    let mut r = Report::default();
    let t = &mut r.text;
    writeln!(t, "identify {} {}", fa.family.label(), cf.label).unwrap();
    writeln!(t, "{}", ext.provenance()).unwrap();
    match witness {
        Some(w) => {
            writeln!(t, "witness found, verified on every bracket and square").unwrap();
            for j in 0..ext.alg.dim() {
                let image: Vec<&str> = w.matrix.column(j).iter_ones().map(|k| target.element(k).name.as_str()).collect();
                writeln!(t, "  {} -> {}", ext.alg.element(j).name, image.join(" + ")).unwrap();
            }
        }
        None => {
            writeln!(t, "no witness found").unwrap();
            r.failures.push("no witness found".into());
        }
    }
    Ok(r)
}

pub fn fingerprint_report(g: &StructureConstants) -> Report {
    Report { text: Fingerprint::of(g).to_text(), failures: Vec::new() }
}

/// Naive against blocked solving with timings; the only report that is not
/// deterministic.
pub fn bench_report(label: &str, g: &StructureConstants, parallel: bool) -> Result<Report, CliError> {
    let blocked_path = if parallel { SolverPath::BlockedParallel } else { SolverPath::Blocked };
    let (naive, s1) = stage("bench", bench_family(label, g, SolverPath::Naive))?;
    let (blocked, s2) = stage("bench", bench_family(label, g, blocked_path))?;
    let equal = s1.all_space() == s2.all_space() && s1.dim_inner() == s2.dim_inner();
    let labels: BTreeSet<Vec<i32>> = g.basis().iter().map(|b| b.grade()).collect();
    let mut r = Report::default();
    let t = &mut r.text;
    writeln!(t, "{}", deriv::BenchRecord::CSV_HEADER).unwrap();
    writeln!(t, "{naive}\n{blocked}").unwrap();
    writeln!(t, "equal {}", yes(equal)).unwrap();
    writeln!(t, "speedup {:.2}", naive.seconds / blocked.seconds.max(1e-9)).unwrap();
    writeln!(t, "grade labels {} blocks {} max_block {}", labels.len(), blocked.blocks, blocked.max_block).unwrap();
    r.check(equal, "naive and blocked derivation spaces differ");
    Ok(r)
}

/// Build summary, axiom, form and restrictedness checks, derivations and
/// the extension table in one document.
pub fn full_report(fa: &FamilyAlgebra, parallel: bool) -> Result<Report, CliError> {
    let mut r = Report::default();
    let label = fa.family.label();
    let (e, o) = fa.alg.sdim();
    let axioms = verify_axioms(&fa.alg);
    let nis = fa.form.nis_report(&fa.alg);
    let restricted = restrictedness_check(&fa.alg);
    let file = build_file(fa);
    let round_trip = crate::parse_sca(&crate::write_sca(&file)).is_ok_and(|back| back == file);
    {
        let t = &mut r.text;
        writeln!(t, "report {label}").unwrap();
        writeln!(t, "sdim {e}|{o}").unwrap();
        writeln!(t, "form {}", parity_name(fa.form.parity)).unwrap();
        writeln!(t, "round trip {}", yes(round_trip)).unwrap();
        writeln!(t, "axioms {} violations {} jis {}", yes(axioms.passed()), axioms.total, axioms.jis).unwrap();
        writeln!(t, "nis {} violations {} square_compat {}", yes(nis.passed()), nis.total, nis.square_compat).unwrap();
        let fails: Vec<String> = restricted.failures().iter().map(|&i| fa.alg.element(i).name.clone()).collect();
        writeln!(t, "restricted {} failures {}", yes(restricted.passed()), if fails.is_empty() { "-".into() } else { fails.join(" ") }).unwrap();
        writeln!(t).unwrap();
    }
    r.check(round_trip, "SCA round trip");
    r.check(axioms.passed(), "axioms");
    r.check(nis.passed(), "nis");
    r.check(restricted.passed(), "restrictedness");
    for part in [family_derivations(fa, parallel)?, dex_report(fa, parallel)?.report] {
        r.text.push_str(&part.text);
        r.text.push('\n');
        r.failures.extend(part.failures);
    }
    Ok(r)
}
