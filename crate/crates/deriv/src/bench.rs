use std::fmt;
use std::time::Instant;

use liesuper::StructureConstants;

use crate::{derivation_space_blocked, derivation_space_naive, DerivError, DerivationSpace, GradedBlocks};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverPath {
    Naive,
    Blocked,
    BlockedParallel,
}

impl fmt::Display for SolverPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverPath::Naive => "naive",
            SolverPath::Blocked => "blocked",
            SolverPath::BlockedParallel => "blocked-parallel",
        })
    }
}

/// One benchmark run.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub family: String,
    pub dim: usize,
    pub path: SolverPath,
    pub seconds: f64,
    /// Number of `(grade, parity)` classes of the basis.
    pub blocks: usize,
    pub max_block: usize,
    /// Number of shift systems solved (1 for the naive path).
    pub systems: usize,
    pub derivations: usize,
}

impl fmt::Display for BenchRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{:.3},{},{},{},{}",
            self.family, self.dim, self.path, self.seconds, self.blocks, self.max_block, self.systems, self.derivations
        )
    }
}

impl BenchRecord {
    pub const CSV_HEADER: &'static str = "family,dim,path,seconds,blocks,max_block,systems,derivations";
}

/// Runs one solver path and times it.
pub fn bench_family(label: &str, g: &StructureConstants, path: SolverPath) -> Result<(BenchRecord, DerivationSpace), DerivError> {
    let start = Instant::now();
    let space = match path {
        SolverPath::Naive => derivation_space_naive(g)?,
        SolverPath::Blocked => derivation_space_blocked(g, false)?,
        SolverPath::BlockedParallel => derivation_space_blocked(g, true)?,
    };
    let seconds = start.elapsed().as_secs_f64();
    let graded = GradedBlocks::new(g);
    let systems = match path {
        SolverPath::Naive => 1,
        _ => graded.shifts().len(),
    };
    let record = BenchRecord {
        family: label.to_string(),
        dim: g.dim(),
        path,
        seconds,
        blocks: graded.len(),
        max_block: graded.max_block(),
        systems,
        derivations: space.dim_all(),
    };
    Ok((record, space))
}
