//! The `hjlab` command line.
//!
//! Every subcommand prints a one-line summary. Exit status: 0 on success,
//! 2 when something fails to verify, 3 when a budget runs out, 64 on usage
//! errors and 1 on anything else (I/O and the like).

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use crate::blocks::BlockSystem;
use crate::certificate::{CertVerdict, Certificate};
use crate::chain::{verify_chain, ChainMode, ChainStatus};
use crate::cnf::{cnf_header, decode_cnf_model, export_cnf, parse_solver_output, Cnf, CnfOptions, SolverOutcome};
use crate::coloring::{Coloring, Ground};
use crate::db::{db_key, DbResult, Integrity, ResultsDb};
use crate::error::{Error, Result};
use crate::growth::{eval_e, ordering_symbol, tower_build, tower_compare, GrowthBudget, TowerSource};
use crate::kind::{Kind, KindSpec};
use crate::omega::OmegaPoint;
use crate::reduce::{
    blocks_embed, canonical_word, embed_lift_line, find_monochromatic_line_main, grid_flatten_map, grid_lift_witness,
    singleton_blocks, solve_oplus_via_gallai_witt, GwSource, OplusStrategy,
};
use crate::search::{compute_number, exists_bad_coloring, Budget, SearchOptions, SearchVerdict};
use crate::verify::verify_witness;
use crate::witness::Witness;
use crate::words::Word;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "hjlab", version, about = "Exact small values of Hales-Jewett type partition numbers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct KindArgs {
    /// hj, hjeq, f8, f9, f8s, f9s, f9sn, f13, vdw, gw or oplus.
    #[arg(long)]
    pub kind: String,
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Block size, for f9sn.
    #[arg(long)]
    pub n: Option<usize>,
    /// Alphabet size h (the grid dimension for gw).
    #[arg(long, default_value_t = 1)]
    pub alphabet: usize,
    #[arg(long, default_value_t = 2)]
    pub colors: usize,
}

impl KindArgs {
    fn spec(&self) -> Result<KindSpec> {
        KindSpec::new(Kind::from_parts(&self.kind, self.m, self.n)?, self.alphabet, self.colors)
    }
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Wall-clock limit per search, in seconds.
    #[arg(long)]
    pub budget: Option<f64>,
    /// Node limit per search.
    #[arg(long)]
    pub max_nodes: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub no_symmetry: bool,
    /// Allow sizes not divisible by h for the f8/f9 family.
    #[arg(long)]
    pub no_divisibility: bool,
}

impl SearchArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.max_nodes,
            max_seconds: self.budget,
        }
    }

    fn options(&self) -> SearchOptions {
        SearchOptions {
            symmetry: !self.no_symmetry,
            coord_symmetry: !self.no_symmetry,
            threads: self.threads.max(1),
            seed: self.seed,
            divisibility: !self.no_divisibility,
        }
    }
}

/// A coloring given as `<ground>:<digits>`, e.g. `cube(k=2,h=2):0110`.
#[derive(Args, Debug, Clone)]
pub struct ColoringArgs {
    #[arg(long)]
    pub coloring: String,
    #[arg(long, default_value_t = 2)]
    pub colors: usize,
}

impl ColoringArgs {
    fn load(&self) -> Result<Coloring> {
        let (ground, data) = self
            .coloring
            .rsplit_once(':')
            .ok_or_else(|| Error::Parse(format!("coloring {:?}: expected <ground>:<digits>", self.coloring)))?;
        Coloring::decode(ground.parse::<Ground>()?, self.colors, data)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Computes a partition number by scanning sizes upward.
    Compute {
        #[command(flatten)]
        kind: KindArgs,
        #[arg(long)]
        max_k: usize,
        /// Record the result here.
        #[arg(long)]
        db: Option<PathBuf>,
        /// Also write the certificates into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Looks for a coloring without a witness at one size.
    FindBad {
        #[command(flatten)]
        kind: KindArgs,
        #[arg(long)]
        k: usize,
        /// Certificate file to write.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Re-verifies a certificate, or checks a witness against its coloring.
    CheckWitness {
        cert: PathBuf,
        /// Require a bad coloring and confirm it has no witness.
        #[arg(long)]
        refute: bool,
        /// Witness as JSON, checked against the certificate's coloring.
        #[arg(long, conflicts_with = "refute")]
        witness: Option<String>,
        /// Rerun exhaustive searches.
        #[arg(long)]
        deep: bool,
    },
    /// Applies one reduction map and prints the result.
    Reduce {
        #[command(subcommand)]
        op: ReduceOp,
    },
    /// Finds a monochromatic line from an f8* witness.
    Pipeline {
        #[command(flatten)]
        coloring: ColoringArgs,
        /// The f8* witness, as block-system JSON.
        #[arg(long)]
        subspace: String,
        /// Go through a Gallai-Witt witness on the grid of this side.
        #[arg(long)]
        gw_side: Option<usize>,
        /// Trace file to write.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes the "bad coloring exists" instance as DIMACS CNF.
    ExportCnf {
        #[command(flatten)]
        kind: KindArgs,
        #[arg(long)]
        k: usize,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        max_clauses: Option<usize>,
        #[arg(long)]
        no_divisibility: bool,
    },
    /// Turns a SAT solver's output into a certificate.
    DecodeModel {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symbolic bounds and the fast-growing hierarchy.
    Bounds {
        /// Orders two bounds: shelah24, gowers:R,M, lit:N or an expression.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        compare: Option<Vec<String>>,
        /// Prints a bound as an expression.
        #[arg(long)]
        show: Option<String>,
        /// Evaluates E_N at the values given with --args.
        #[arg(long)]
        e: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        args: Vec<BigUint>,
        #[arg(long, default_value_t = 4096)]
        max_bits: u64,
        #[arg(long, default_value_t = 1_000_000)]
        max_steps: u64,
    },
    /// Audits the inequalities between stored values.
    VerifyChain {
        #[arg(long)]
        db: PathBuf,
        #[arg(long, default_value = "strict")]
        mode: ChainMode,
        /// Report file; defaults to `<db>.chain-<mode>.json`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit with status 2 when some relation is violated.
        #[arg(long)]
        fail_on_violation: bool,
    },
    /// Inspects the results database.
    Db {
        #[command(subcommand)]
        op: DbOp,
    },
}

#[derive(Subcommand, Debug)]
pub enum ReduceOp {
    /// Splits each letter over `h^m` into `m` letters over `h`.
    Flatten {
        #[arg(long)]
        eta: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        alphabet: usize,
    },
    /// Lifts a line of the pulled-back coloring to the `n*m`-cube.
    GridLift {
        #[command(flatten)]
        coloring: ColoringArgs,
        #[arg(long)]
        line: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Turns an f13 witness into a subspace with singleton blocks.
    Singleton {
        #[command(flatten)]
        coloring: ColoringArgs,
        #[arg(long)]
        witness: String,
    },
    /// Embeds a word of the `m`-cube into the subspace.
    Embed {
        #[arg(long)]
        subspace: String,
        #[arg(long)]
        eta: String,
        #[arg(long)]
        alphabet: usize,
    },
    /// Lifts a line of the embedded coloring through the subspace.
    EmbedLift {
        #[command(flatten)]
        coloring: ColoringArgs,
        #[arg(long)]
        subspace: String,
        #[arg(long)]
        line: String,
    },
    /// The sorted word with the given letter counts, e.g. `2,1,0`.
    CanonicalWord {
        #[arg(long, value_delimiter = ',')]
        counts: Vec<usize>,
    },
    /// Solves the bumped-composition property through Gallai-Witt.
    Oplus {
        #[command(flatten)]
        coloring: ColoringArgs,
        #[arg(long)]
        n: usize,
        /// Planted grid corner, comma separated.
        #[arg(long, value_delimiter = ',', requires = "step")]
        corner: Option<Vec<usize>>,
        #[arg(long, requires = "corner")]
        step: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum DbOp {
    /// Lists the stored results.
    Show {
        #[arg(long)]
        db: PathBuf,
    },
    /// Prints one stored result.
    Get {
        #[arg(long)]
        db: PathBuf,
        #[command(flatten)]
        kind: KindArgs,
        #[arg(long)]
        no_divisibility: bool,
    },
    /// Re-verifies every certificate.
    Check {
        #[arg(long)]
        db: PathBuf,
        #[arg(long)]
        deep: bool,
    },
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::RejectedResult(_)
        | Error::InvalidInputWitness(_)
        | Error::InconsistentModel(_)
        | Error::InvalidModel(_)
        | Error::PipelineStage { .. }
        | Error::NoWitnessAtN(_) => EXIT_VERIFY,
        Error::BudgetExceeded { .. } | Error::UnknownOrdering(_) => EXIT_BUDGET,
        Error::Io(_) | Error::Json(_) | Error::SizeLimit(_) => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

/// Parses `argv` (program name first) and runs it, writing the summary to
/// `out` and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Compute {
            kind,
            max_k,
            db,
            out: dir,
            search,
        } => compute(&kind.spec()?, max_k, db.as_deref(), dir.as_deref(), &search, out),
        Command::FindBad {
            kind,
            k,
            out: path,
            search,
        } => find_bad(&kind.spec()?, k, path.as_deref(), &search, out),
        Command::CheckWitness {
            cert,
            refute,
            witness,
            deep,
        } => check_witness(&cert, refute, witness.as_deref(), deep, out),
        Command::Reduce { op } => reduce(op, out),
        Command::Pipeline {
            coloring,
            subspace,
            gw_side,
            out: path,
        } => {
            let d = coloring.load()?;
            let s = parse_block_system(&subspace)?;
            let strategy = match gw_side {
                Some(n) => OplusStrategy::GallaiWitt {
                    n,
                    source: GwSource::Search,
                },
                None => OplusStrategy::Direct,
            };
            let trace = find_monochromatic_line_main(&d, &s, &strategy)?;
            if let Some(path) = path {
                crate::certificate::write_atomic(&path, serde_json::to_string_pretty(&trace)?.as_bytes())?;
            }
            writeln!(out, "line {} color {}", trace.line, trace.color)?;
            Ok(EXIT_OK)
        }
        Command::ExportCnf {
            kind,
            k,
            out: path,
            max_clauses,
            no_divisibility,
        } => {
            let spec = kind.spec()?;
            let mut opts = CnfOptions {
                divisibility: !no_divisibility,
                ..CnfOptions::default()
            };
            if let Some(max) = max_clauses {
                opts.max_clauses = max;
            }
            let cnf = export_cnf(&spec, k, &opts)?;
            match path {
                Some(path) => {
                    crate::certificate::write_atomic(&path, cnf.to_dimacs().as_bytes())?;
                    writeln!(
                        out,
                        "{spec} k={k}: {} variables, {} clauses -> {}",
                        cnf.vars,
                        cnf.clauses.len(),
                        path.display()
                    )?;
                }
                None => out.write_all(cnf.to_dimacs().as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::DecodeModel { cnf, model, out: path } => decode_model(&cnf, &model, path.as_deref(), out),
        Command::Bounds {
            compare,
            show,
            e,
            args,
            max_bits,
            max_steps,
        } => {
            let budget = GrowthBudget::new(max_bits, max_steps)?;
            let mut did = false;
            if let Some(pair) = compare {
                let a: TowerSource = pair[0].parse()?;
                let b: TowerSource = pair[1].parse()?;
                let o = tower_compare(&tower_build(&a), &tower_build(&b), budget)?;
                writeln!(out, "{a} {} {b}", ordering_symbol(o))?;
                did = true;
            }
            if let Some(s) = show {
                let s: TowerSource = s.parse()?;
                writeln!(out, "{s} = {}", tower_build(&s))?;
                did = true;
            }
            if let Some(n) = e {
                let v = eval_e(n, &args, budget)?;
                let shown: Vec<String> = args.iter().map(|a| a.to_string()).collect();
                writeln!(out, "E{n}({}) = {v}", shown.join(","))?;
                did = true;
            }
            if !did {
                return Err(Error::Parse("bounds: give --compare, --show or --e".into()));
            }
            Ok(EXIT_OK)
        }
        Command::VerifyChain {
            db,
            mode,
            out: path,
            fail_on_violation,
        } => {
            let store = ResultsDb::load(&db, Integrity::Certificates)?;
            let report = verify_chain(&store, mode)?;
            let path = path.unwrap_or_else(|| sibling(&db, &format!("chain-{mode}.json")));
            crate::certificate::write_atomic(&path, serde_json::to_string_pretty(&report)?.as_bytes())?;
            let violated = report.count(ChainStatus::Violated);
            writeln!(
                out,
                "chain ({mode}): {} holds, {violated} violated, {} not-comparable -> {}",
                report.count(ChainStatus::Holds),
                report.count(ChainStatus::NotComparable),
                path.display()
            )?;
            Ok(if fail_on_violation && violated > 0 { EXIT_VERIFY } else { EXIT_OK })
        }
        Command::Db { op } => db_op(op, out),
    }
}

/// `<path>.<suffix>` next to `path`.
fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".");
    name.push(suffix);
    path.with_file_name(name)
}

fn describe(r: &DbResult) -> String {
    match (r.value, r.upper) {
        (Some(v), _) => format!("{}={v}", r.spec),
        (None, Some(u)) => format!("{} in [{}, {u}]", r.spec, r.lower),
        (None, None) => format!("{}>={}", r.spec, r.lower),
    }
}

fn compute(
    spec: &KindSpec,
    max_k: usize,
    db: Option<&Path>,
    dir: Option<&Path>,
    search: &SearchArgs,
    out: &mut dyn Write,
) -> Result<i32> {
    let result = compute_number(spec, max_k, search.budget(), &search.options())?;
    let budget_hit = result.value.is_none() && result.lower <= max_k;
    let record = DbResult::from_number(&result);
    record.check(false)?;
    if let Some(dir) = dir {
        let stem = db_key(spec, result.divisibility).replace(';', "_").replace('=', "-");
        for (cert, suffix) in [(&record.lower_cert, "lower"), (&record.upper_cert, "upper")] {
            if let Some(cert) = cert {
                cert.save(&dir.join(format!("{stem}.{suffix}.json")))?;
            }
        }
    }
    if let Some(path) = db {
        let mut store = ResultsDb::open(path, Integrity::Off)?;
        store.record(&record)?;
        store.save()?;
    }
    let mut line = describe(&record);
    if budget_hit {
        line.push_str(&format!(" (budget exhausted at k={})", result.lower));
    } else if result.value.is_none() {
        line.push_str(&format!(" (no value up to k={max_k})"));
    }
    writeln!(out, "{line}")?;
    Ok(if budget_hit { EXIT_BUDGET } else { EXIT_OK })
}

fn find_bad(spec: &KindSpec, k: usize, path: Option<&Path>, search: &SearchArgs, out: &mut dyn Write) -> Result<i32> {
    let verdict = exists_bad_coloring(spec, k, search.budget(), &search.options())?;
    let stats = verdict.stats();
    let cert = Certificate::from_verdict(spec, k, &verdict);
    if let (Some(cert), Some(path)) = (&cert, path) {
        cert.save(path)?;
    }
    match &verdict {
        SearchVerdict::Bad { coloring, .. } => {
            writeln!(out, "bad {spec} k={k}: {} ({} nodes)", coloring.encode(), stats.nodes)?
        }
        SearchVerdict::NoneExists { .. } => writeln!(out, "none-exists {spec} k={k} ({} nodes)", stats.nodes)?,
        SearchVerdict::BudgetExceeded { .. } => {
            writeln!(out, "budget-exceeded {spec} k={k} ({} nodes)", stats.nodes)?;
            return Ok(EXIT_BUDGET);
        }
    }
    Ok(EXIT_OK)
}

fn check_witness(path: &Path, refute: bool, witness: Option<&str>, deep: bool, out: &mut dyn Write) -> Result<i32> {
    let cert = Certificate::load(path)?;
    let spec = cert.spec()?;
    if let Some(text) = witness {
        let w: Witness = serde_json::from_str(text)?;
        let d = cert
            .coloring()?
            .ok_or_else(|| Error::InvalidColoring("certificate carries no coloring".into()))?;
        let ok = verify_witness(&spec, cert.k, &d, &w)?;
        writeln!(out, "{} {spec} k={}: {w}", if ok { "witness" } else { "not-a-witness" }, cert.k)?;
        return Ok(if ok { EXIT_OK } else { EXIT_VERIFY });
    }
    if refute && cert.verdict != CertVerdict::Bad {
        return Err(Error::RejectedResult("--refute needs a bad-coloring certificate".into()));
    }
    cert.verify(deep)?;
    let what = match cert.verdict {
        CertVerdict::Bad => format!("{spec} > {}", cert.k),
        CertVerdict::NoneExists => format!("{spec} <= {}", cert.k),
    };
    writeln!(out, "verified {what}")?;
    Ok(EXIT_OK)
}

fn parse_block_system(text: &str) -> Result<BlockSystem> {
    let s: BlockSystem = serde_json::from_str(text)?;
    BlockSystem::new(s.k(), s.blocks().to_vec(), s.anchor().to_vec())
}

fn parse_witness(text: &str) -> Result<Witness> {
    Ok(match serde_json::from_str::<Witness>(text)? {
        Witness::Subspace(s) => Witness::Subspace(BlockSystem::new(s.k(), s.blocks().to_vec(), s.anchor().to_vec())?),
        w => w,
    })
}

fn print_witness(out: &mut dyn Write, w: &Witness) -> Result<i32> {
    writeln!(out, "{}", serde_json::to_string(w)?)?;
    Ok(EXIT_OK)
}

fn reduce(op: ReduceOp, out: &mut dyn Write) -> Result<i32> {
    match op {
        ReduceOp::Flatten { eta, m, alphabet } => {
            let eta = Word::parse(&eta, crate::words::cube_size(m, alphabet)?)?;
            writeln!(out, "{}", grid_flatten_map(&eta, m, alphabet)?)?;
            Ok(EXIT_OK)
        }
        ReduceOp::GridLift { coloring, line, n, m } => {
            let w = grid_lift_witness(&coloring.load()?, &parse_block_system(&line)?, n, m)?;
            print_witness(out, &w)
        }
        ReduceOp::Singleton { coloring, witness } => {
            let w = singleton_blocks(&coloring.load()?, &parse_witness(&witness)?)?;
            print_witness(out, &w)
        }
        ReduceOp::Embed { subspace, eta, alphabet } => {
            let s = parse_block_system(&subspace)?;
            writeln!(out, "{}", blocks_embed(&s, &Word::parse(&eta, alphabet)?)?)?;
            Ok(EXIT_OK)
        }
        ReduceOp::EmbedLift {
            coloring,
            subspace,
            line,
        } => {
            let w = embed_lift_line(&coloring.load()?, &parse_block_system(&subspace)?, &parse_block_system(&line)?)?;
            print_witness(out, &w)
        }
        ReduceOp::CanonicalWord { counts } => {
            let total = counts.iter().sum();
            writeln!(out, "{}", canonical_word(&OmegaPoint::new(counts, total)?))?;
            Ok(EXIT_OK)
        }
        ReduceOp::Oplus { coloring, n, corner, step } => {
            let source = match (corner, step) {
                (Some(corner), Some(step)) => GwSource::Planted { corner, step },
                _ => GwSource::Search,
            };
            let sol = solve_oplus_via_gallai_witt(&coloring.load()?, n, &source)?;
            writeln!(out, "{}", serde_json::to_string(&sol)?)?;
            Ok(EXIT_OK)
        }
    }
}

fn decode_model(cnf_path: &Path, model_path: &Path, path: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let cnf = Cnf::parse_dimacs(&std::fs::read_to_string(cnf_path)?)?;
    let (spec, k) = cnf_header(&cnf)?;
    match parse_solver_output(&std::fs::read_to_string(model_path)?)? {
        SolverOutcome::Sat(model) => {
            let cert = decode_cnf_model(&spec, k, &model)?;
            if let Some(path) = path {
                cert.save(path)?;
            }
            let data = cert.coloring.as_ref().map(|c| c.data.as_str()).unwrap_or_default();
            writeln!(out, "bad {spec} k={k}: {data}")?;
            Ok(EXIT_OK)
        }
        SolverOutcome::Unsat => {
            writeln!(out, "unsat {spec} k={k}: no bad coloring")?;
            Ok(EXIT_OK)
        }
        SolverOutcome::Unknown => {
            writeln!(out, "unknown {spec} k={k}")?;
            Ok(EXIT_BUDGET)
        }
    }
}

fn db_op(op: DbOp, out: &mut dyn Write) -> Result<i32> {
    match op {
        DbOp::Show { db } => {
            let store = ResultsDb::load(&db, Integrity::Off)?;
            for key in store.entries.keys() {
                let r = store.get_key(key)?.expect("listed key");
                writeln!(out, "{key}: {}", describe(&r))?;
            }
            Ok(EXIT_OK)
        }
        DbOp::Get {
            db,
            kind,
            no_divisibility,
        } => {
            let store = ResultsDb::load(&db, Integrity::Off)?;
            let spec = kind.spec()?;
            match store.get(&spec, !no_divisibility)? {
                Some(r) => writeln!(out, "{}", describe(&r))?,
                None => writeln!(out, "{spec}: not stored")?,
            }
            Ok(EXIT_OK)
        }
        DbOp::Check { db, deep } => {
            let integrity = if deep { Integrity::Deep } else { Integrity::Certificates };
            let store = ResultsDb::load(&db, integrity)?;
            writeln!(out, "ok: {} entries verified", store.entries.len())?;
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("hjlab").chain(args.iter().copied()), &mut out, &mut err);
        let mut text = String::from_utf8(out).unwrap();
        text.push_str(&String::from_utf8(err).unwrap());
        (code, text)
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["compute", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["nope"]).0, EXIT_USAGE);
        assert_eq!(call(&["compute", "--kind", "zz", "--max-k", "3"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn bounds() {
        let (code, text) = call(&["bounds", "--compare", "shelah24", "gowers:2,3"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(text.trim(), "shelah24 > gowers(2,3)");
        let (_, text) = call(&["bounds", "--e", "2", "--args", "3"]);
        assert_eq!(text.trim(), "E2(3) = 1446");
    }

    #[test]
    fn budget_exit() {
        let (code, text) = call(&[
            "find-bad", "--kind", "vdw", "--m", "3", "--colors", "3", "--k", "27", "--max-nodes", "5000",
        ]);
        assert_eq!(code, EXIT_BUDGET, "{text}");
    }

    #[test]
    fn reduce_ops() {
        let (code, text) = call(&["reduce", "canonical-word", "--counts", "2,1"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(text.trim(), "001");
        let (_, text) = call(&["reduce", "flatten", "--eta", "03", "--m", "2", "--alphabet", "2"]);
        assert_eq!(text.trim(), "0011");
    }
}
