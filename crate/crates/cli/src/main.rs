use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cli::{bench_report, build_file, derivations_report, dex_report, family_derivations, fingerprint_report, full_report, identify_report, parse_sca, select_family, slug, write_sca, CliError, Report, ScaFile};
use liesuper::{build_algebra, verify_axioms, FamilyAlgebra};

#[derive(Parser)]
#[command(name = "superdex", about = "Double extensions of Lie superalgebras in characteristic 2", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct FamilyArgs {
    /// `h` or `le`.
    #[arg(value_name = "FAMILY")]
    kind: Option<String>,
    /// Same as the positional FAMILY.
    #[arg(long = "family")]
    family: Option<String>,
    /// Form tag: Pi, I, PiPi, PiI, IPi, II.
    #[arg(long)]
    form: Option<String>,
    #[arg(long)]
    even: Option<usize>,
    #[arg(long)]
    odd: Option<usize>,
    /// le(n|n).
    #[arg(long)]
    n: Option<usize>,
    /// Allow sizes outside 4 <= a+b <= 7 (h) and n <= 3 (le).
    #[arg(long)]
    override_size: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family member and write it as an SCA file.
    Build {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Outer derivations of a family member or of an SCA file.
    Derivations {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Double extensions by every closed-form outer derivation.
    Dex {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        parallel: bool,
        /// Directory for the report, its CSV twin and the extension files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Look for a verified isomorphism of an extension onto po or b.
    Identify {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Closed-form label, such as `D^(4)`; defaults to the top degree.
        #[arg(long)]
        derivation: Option<String>,
        #[arg(long)]
        m: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank invariants of a family member or of an SCA file.
    Fingerprint {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Naive against blocked derivation solving.
    Bench {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All checks, derivations and extensions of one family member.
    Report {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl FamilyArgs {
    fn given(&self) -> bool {
        self.kind.is_some() || self.family.is_some()
    }

    fn algebra(&self) -> Result<FamilyAlgebra, CliError> {
        let kind = match (&self.kind, &self.family) {
            (Some(_), Some(_)) => return Err(CliError::Usage("give the family once".into())),
            (Some(k), None) | (None, Some(k)) => k,
            (None, None) => return Err(CliError::Usage("missing family (h or le)".into())),
        };
        let family = select_family(kind, self.form.as_deref(), self.even, self.odd, self.n, self.override_size)?;
        build_algebra(family).map_err(|e| CliError::stage("build", e))
    }
}

fn read_input(path: &Path) -> Result<ScaFile, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    parse_sca(&text).map_err(|source| CliError::Parse { path: path.into(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

fn emit(report: &Report, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => write(p, &report.text)?,
        None => print!("{}", report.text),
    }
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Verification(report.failures.join("; ")))
    }
}

fn input_or_family(fam: &FamilyArgs, input: Option<&Path>) -> Result<Option<ScaFile>, CliError> {
    match (input, fam.given()) {
        (Some(_), true) => Err(CliError::Usage("give either a family or --input".into())),
        (Some(p), false) => read_input(p).map(Some),
        (None, _) => Ok(None),
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Build { fam, out } => {
            let fa = fam.algebra()?;
            let file = build_file(&fa);
            let text = write_sca(&file);
            if parse_sca(&text).ok().as_ref() != Some(&file) {
                return Err(CliError::Verification("SCA round trip".into()));
            }
            match &out {
                Some(p) => write(p, &text)?,
                None => print!("{text}"),
            }
            let (e, o) = fa.alg.sdim();
            let axioms = verify_axioms(&fa.alg).passed();
            eprintln!("{}: sdim {e}|{o}, dim {}, axioms {}", fa.family.label(), fa.alg.dim(), if axioms { "pass" } else { "fail" });
            Ok(())
        }
        Command::Derivations { fam, input, parallel, out } => {
            let report = match input_or_family(&fam, input.as_deref())? {
                Some(file) => {
                    let label = input.as_ref().map(|p| p.display().to_string()).unwrap_or_default();
                    derivations_report(&label, &file.alg, file.form.as_ref(), &[], parallel)?
                }
                None => family_derivations(&fam.algebra()?, parallel)?,
            };
            emit(&report, out.as_deref())
        }
        Command::Dex { fam, parallel, out } => {
            let fa = fam.algebra()?;
            let dex = dex_report(&fa, parallel)?;
            if let Some(dir) = &out {
                fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
                let base = slug(&fa.family.label());
                write(&dir.join(format!("dex_{base}.txt")), &dex.report.text)?;
                write(&dir.join(format!("dex_{base}.csv")), &dex.csv)?;
                for (name, file) in &dex.files {
                    write(&dir.join(name), &write_sca(file))?;
                }
            }
            emit(&dex.report, None)
        }
        Command::Identify { fam, derivation, m, out } => emit(&identify_report(&fam.algebra()?, derivation.as_deref(), m)?, out.as_deref()),
        Command::Fingerprint { fam, input, out } => {
            let report = match input_or_family(&fam, input.as_deref())? {
                Some(file) => fingerprint_report(&file.alg),
                None => fingerprint_report(&fam.algebra()?.alg),
            };
            emit(&report, out.as_deref())
        }
        Command::Bench { fam, parallel, out } => {
            let fa = fam.algebra()?;
            emit(&bench_report(&fa.family.label(), &fa.alg, parallel)?, out.as_deref())
        }
        Command::Report { fam, parallel, out } => emit(&full_report(&fam.algebra()?, parallel)?, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
