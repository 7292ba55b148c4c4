//! Command-line surface for `hamming-terwilliger`.
//!
//! Exit status: 0 when every verification passes, 1 on a verification
//! failure, 2 on a usage error, 3 when the materialization cap is exceeded.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hamming_terwilliger::cgengine::{cg_summands, tensor_power_multiplicity};
use hamming_terwilliger::hamming::{
    self, binomial, distance_matrices, dual_idempotents, idempotents, q_polynomial_check, HammingGraph,
    SchemeMatrices,
};
use hamming_terwilliger::krawtchouk::{
    hopf_generator_checks, k_module, k_module_twisted, relation_check, u_sl2_module, RepTriple,
};
use hamming_terwilliger::report::Check;
use hamming_terwilliger::table::{dr_table, pk_table, q_sweep, report_json, sweep_json, sweep_table};
use hamming_terwilliger::terwilliger::{
    algebra_dimension, classify_pairwise, decompose_standard_module, split_standard_module, wedderburn_dimension,
    DecompositionReport,
};
use hamming_terwilliger::{Error, Matrix, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "htw", version, about = "Terwilliger algebra of the Hamming graph H(D, q), computed exactly")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Largest q^D for which full matrices may be built.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Worker threads for block-parallel work.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a scheme matrix in the sparse text format.
    Matrix(MatrixArgs),
    /// Print the generator matrices of an irreducible module.
    Module(ModuleArgs),
    /// Clebsch–Gordan decompositions.
    Cg(CgArgs),
    /// Decompose the standard module into irreducible modules.
    Decompose(DecomposeArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    #[value(name = "A")]
    A,
    #[value(name = "Astar")]
    Astar,
    #[value(name = "Ei")]
    Ei,
    #[value(name = "Eistar")]
    Eistar,
    #[value(name = "Ai")]
    Ai,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    /// Index for `Ei`, `Eistar` and `Ai`.
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long = "D")]
    pub dim: usize,
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ModuleArgs {
    #[arg(long)]
    pub n: i64,
    /// Exact rational such as `1/3`; not needed with `--sl2`.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub omega: Option<Rational>,
    /// Diagonal A, tridiagonal B.
    #[arg(long)]
    pub twisted: bool,
    /// Print E, F, H instead.
    #[arg(long)]
    pub sl2: bool,
}

#[derive(Debug, Args)]
pub struct CgArgs {
    #[arg(long, requires = "n", conflicts_with = "power")]
    pub m: Option<i64>,
    #[arg(long, requires = "m")]
    pub n: Option<i64>,
    /// Decompose the p-fold tensor power of L1.
    #[arg(long, required_unless_present = "m")]
    pub power: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Param {
    Pk,
    Dr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long = "D")]
    pub dim: usize,
    /// Required unless `--q-sweep` is given.
    #[arg(long, required_unless_present = "q_sweep")]
    pub q: Option<usize>,
    #[arg(long, value_enum, default_value = "pk")]
    pub param: Param,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Write every extracted basis as a matrix file into this directory.
    #[arg(long)]
    pub emit_bases: Option<PathBuf>,
    /// Fit multiplicities over q = 3, 4, 5 to c(q-2)^e.
    #[arg(long)]
    pub q_sweep: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Relations,
    Idempotents,
    Qpoly,
    Dimension,
    Decomposition,
    Classification,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long = "D")]
    pub dim: usize,
    #[arg(long)]
    pub q: usize,
    /// Replaces ω = 1 - 2/q in the relations suite.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub omega: Option<Rational>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

/// Failure of a command, carrying its exit status.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Resource(_) => EXIT_RESOURCE,
            Error::Domain(_) | Error::Parse(_) => EXIT_USAGE,
            _ => EXIT_VERIFICATION,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            code: EXIT_VERIFICATION,
            message: format!("i/o error: {e}"),
        }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CliResult<T> = Result<T, CliError>;

impl RunConfig {
    fn graph(&self, dim: usize, q: usize) -> CliResult<HammingGraph> {
        let g = HammingGraph::new(dim, q)?;
        Ok(match self.cap {
            Some(c) => g.with_cap(c),
            None => g,
        })
    }
}

/// Runs one command, writing its report to `out` and any error to `err`.
/// Returns the exit status.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Some(t) = config.threads {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let result = match &config.command {
        Command::Matrix(a) => run_matrix(config, a, out),
        Command::Module(a) => run_module(a, out),
        Command::Cg(a) => run_cg(a, out),
        Command::Decompose(a) => run_decompose(config, a, out),
        Command::Verify(a) => run_verify(config, a, out),
    };
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_VERIFICATION,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run_matrix(config: &RunConfig, a: &MatrixArgs, out: &mut dyn Write) -> CliResult<bool> {
    let g = config.graph(a.dim, a.q)?;
    let index = || -> CliResult<usize> {
        let i = a.i.ok_or_else(|| usage("--i is required for Ei, Eistar and Ai"))?;
        if i > a.dim {
            return Err(usage(format!("--i {i} exceeds D = {}", a.dim)));
        }
        Ok(i)
    };
    let m = match a.which {
        Which::A => hamming::adjacency(&g)?,
        Which::Astar => hamming::dual_adjacency(&g)?,
        Which::Ei => idempotents(&g)?.swap_remove(index()?),
        Which::Eistar => dual_idempotents(&g)?.swap_remove(index()?),
        Which::Ai => distance_matrices(&g)?.swap_remove(index()?),
    };
    emit(&m.to_text(), a.out.as_deref(), out)?;
    Ok(true)
}

fn write_named(out: &mut dyn Write, items: &[(&str, &Matrix)]) -> CliResult<()> {
    for (name, m) in items {
        writeln!(out, "# {name}")?;
        out.write_all(m.to_text().as_bytes())?;
    }
    Ok(())
}

fn run_module(a: &ModuleArgs, out: &mut dyn Write) -> CliResult<bool> {
    if a.sl2 {
        let t = u_sl2_module(a.n)?;
        write_named(out, &[("E", &t.e), ("F", &t.f), ("H", &t.h)])?;
        return Ok(true);
    }
    let omega = a.omega.clone().ok_or_else(|| usage("--omega is required unless --sl2 is given"))?;
    let r = if a.twisted {
        k_module_twisted(a.n, &omega)?
    } else {
        k_module(a.n, &omega)?
    };
    writeln!(out, "# omega = {}", r.omega)?;
    write_named(out, &[("A", &r.a), ("B", &r.b), ("C", &r.c)])?;
    Ok(true)
}

fn run_cg(a: &CgArgs, out: &mut dyn Write) -> CliResult<bool> {
    if let (Some(m), Some(n)) = (a.m, a.n) {
        writeln!(out, "{}", cg_summands(m, n)?)?;
        return Ok(true);
    }
    let p = a.power.expect("clap enforces --power or --m/--n");
    let mut total = 0u64;
    for k in 0..=p.max(0) / 2 {
        let m = tensor_power_multiplicity(p, k)?;
        let label = p - 2 * k;
        writeln!(out, "L{label}  {m}")?;
        total += m * (label as u64 + 1);
    }
    let expected = 1u64 << p;
    writeln!(out, "dimension {total} = 2^{p}: {}", if total == expected { "ok" } else { "MISMATCH" })?;
    Ok(total == expected)
}

fn write_failures(out: &mut dyn Write, failures: &[&Check]) -> CliResult<()> {
    for c in failures {
        writeln!(out, "FAIL {}: {}", c.name, c.detail.clone().unwrap_or_default())?;
    }
    Ok(())
}

fn emit_bases(report: &DecompositionReport, dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir)?;
    for class in &report.classes {
        let (p, k) = (class.descriptor.p, class.descriptor.k);
        for (j, copy) in class.copies.iter().enumerate() {
            fs::write(dir.join(format!("p{p}_k{k}_copy{j}.txt")), copy.basis.to_text())?;
            fs::write(dir.join(format!("p{p}_k{k}_copy{j}_twisted.txt")), copy.twisted_basis.to_text())?;
        }
    }
    Ok(())
}

fn run_decompose(config: &RunConfig, a: &DecomposeArgs, out: &mut dyn Write) -> CliResult<bool> {
    if a.q_sweep {
        if a.param != Param::Dr {
            return Err(usage("--q-sweep reports (d, r) rows; pass --param dr"));
        }
        if a.emit_bases.is_some() {
            return Err(usage("--emit-bases needs a single --q"));
        }
        HammingGraph::new(a.dim, 3)?;
        let sweep = q_sweep(a.dim)?;
        match a.format {
            Format::Table => out.write_all(sweep_table(&sweep).as_bytes())?,
            Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&sweep_json(&sweep)).unwrap())?,
        }
        for f in &sweep.failures {
            writeln!(out, "FAIL {f}")?;
        }
        return Ok(sweep.all_passed);
    }
    let q = a.q.expect("clap enforces --q without --q-sweep");
    let report = decompose_standard_module(&config.graph(a.dim, q)?)?;
    match (a.format, a.param) {
        (Format::Json, _) => writeln!(out, "{}", serde_json::to_string_pretty(&report_json(&report)).unwrap())?,
        (Format::Table, Param::Dr) => out.write_all(dr_table(&report).as_bytes())?,
        (Format::Table, Param::Pk) => out.write_all(pk_table(&report).as_bytes())?,
    }
    if let Some(dir) = &a.emit_bases {
        emit_bases(&report, dir)?;
    }
    write_failures(out, &report.failures())?;
    Ok(report.all_passed())
}

fn suite_checks(config: &RunConfig, a: &VerifyArgs) -> CliResult<Vec<Check>> {
    let g = config.graph(a.dim, a.q)?;
    let mut checks = Vec::new();
    match a.suite {
        Suite::Relations => {
            for block in split_standard_module(&g)? {
                let triple = RepTriple {
                    omega: a.omega.clone().unwrap_or_else(|| block.triple.omega.clone()),
                    ..block.triple
                };
                for c in relation_check(&triple)?.into_iter().chain(hopf_generator_checks(&triple)?) {
                    checks.push(Check {
                        name: format!("s = {:?}: {}", block.s, c.name),
                        ..c
                    });
                }
            }
        }
        Suite::Idempotents => {
            let scheme = SchemeMatrices::build(&g)?;
            checks.extend(scheme.check_invariants(&g)?);
            for (i, e) in scheme.idempotents.iter().enumerate() {
                let want = binomial(a.dim, i) * (a.q - 1).pow(i as u32);
                let rank = e.rank();
                checks.push(Check::expect(format!("rank E_{i} = C(D,{i})(q-1)^{i} = {want}"), rank == want, || {
                    format!("rank is {rank}")
                }));
            }
        }
        Suite::Qpoly => {
            let report = q_polynomial_check(&g, &idempotents(&g)?)?;
            for (i, &ok) in report.passed.iter().enumerate() {
                let f = report.first_failure.clone();
                checks.push(Check::expect(format!("E_1 ∘ E_{i} three-term recurrence"), ok, || {
                    let f = f.unwrap();
                    format!("first failure at i = {}, entry ({}, {})", f.i, f.row, f.col)
                }));
            }
        }
        Suite::Dimension => {
            let dim = algebra_dimension(&g)?;
            let formula = binomial(a.dim + 4, 4);
            checks.push(Check::expect(
                format!("dim T(D) = {dim} = C({}, 4)", a.dim + 4),
                dim == formula,
                || format!("closed form gives {formula}"),
            ));
            let wedderburn = wedderburn_dimension(a.dim);
            checks.push(Check::expect(
                format!("dim T(D) = sum of squared module dimensions = {wedderburn}"),
                dim == wedderburn,
                || format!("word closure gives {dim}"),
            ));
        }
        Suite::Decomposition => {
            let report = decompose_standard_module(&g)?;
            checks.extend(report.checks.iter().cloned());
            for class in &report.classes {
                let (p, k) = (class.descriptor.p, class.descriptor.k);
                for c in &class.checks {
                    checks.push(Check {
                        name: format!("(p, k) = ({p}, {k}): {}", c.name),
                        ..c.clone()
                    });
                }
            }
        }
        Suite::Classification => {
            let report = decompose_standard_module(&g)?;
            checks.extend(classify_pairwise(&report)?);
        }
    }
    Ok(checks)
}

fn run_verify(config: &RunConfig, a: &VerifyArgs, out: &mut dyn Write) -> CliResult<bool> {
    let checks = suite_checks(config, a)?;
    let passed = checks.iter().all(|c| c.passed);
    match a.format {
        Format::Json => {
            let v = serde_json::json!({
                "suite": format!("{:?}", a.suite).to_lowercase(),
                "D": a.dim,
                "q": a.q,
                "checks": checks,
                "all_passed": passed,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap())?;
        }
        Format::Table => {
            for c in &checks {
                match &c.detail {
                    None => writeln!(out, "PASS {}", c.name)?,
                    Some(d) => writeln!(out, "FAIL {}: {d}", c.name)?,
                }
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            writeln!(out, "{} checks, {failed} failed", checks.len())?;
        }
    }
    Ok(passed)
}
