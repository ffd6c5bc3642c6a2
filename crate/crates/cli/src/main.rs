use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use idealize::catalog::{
    builtin_module, builtin_semiring, dedup_up_to_isomorphism, enumerate_semimodules, enumerate_semirings, Structure,
};
use idealize::format::{
    classify_output, ideals_report, read_graph, read_json, read_semimodule, write_json, ExpectOutput, InstanceFile,
    OracleComparison, EXPECT_SCHEMA,
};
use idealize::numeric::{brute_force_total, expectation, forward_total, DEFAULT_PATH_LIMIT};
use idealize::tables::{
    semimodule_violations, semiring_violations, validate_semiring, AdditiveMonoid, Commutativity, FiniteSemimodule,
    FiniteSemiring, RawSemimodule, RawSemiring, Violation,
};
use idealize::theorems::{catalog_grid, verify_grid, Cell, Status, VerificationReport, VerifyOptions};
use idealize::{Error, ExpectationInstance};

/// Finite semirings, semimodules and their expectation semirings.
///
/// Wherever a semiring file is expected, a builtin name such as `zmod_4` or
/// `boolean` is accepted too; likewise a builtin module name (`self`,
/// `trivial`, `zmod_2`, ...) wherever a module file is expected.
#[derive(Parser)]
#[command(name = "idealize", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a semiring or semimodule file against every axiom.
    Validate(ValidateArgs),
    /// Build S ⊕̃ M and write it with its pairing block.
    ExpectationBuild(BuildArgs),
    /// List every ideal with its predicate vector and radical.
    Ideals(IdealsArgs),
    /// Distinguished elements and class flags of a semiring (and of S ⊕̃ M).
    Classify(ClassifyArgs),
    /// Enumerate all semirings or semimodules of a given order.
    Enumerate(EnumerateArgs),
    /// Verify the structural facts about S ⊕̃ M over an instance grid.
    VerifyTheorems(VerifyArgs),
    /// Total and expectation of an additive path feature over a weighted DAG.
    Expect(ExpectArgs),
}

#[derive(Args)]
struct Output {
    /// Write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the human summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ValidateArgs {
    file: PathBuf,
    /// Base semiring for a semimodule file (defaults to the builtin named in its `base` field).
    #[arg(long)]
    base: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long, alias = "instance")]
    semiring: String,
    #[arg(long)]
    module: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IdealsArgs {
    #[arg(long)]
    instance: String,
    #[arg(long, alias = "report")]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    instance: String,
    /// Also classify the module and S ⊕̃ M.
    #[arg(long)]
    module: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Semiring order, or module order with `--modules-over`.
    #[arg(long)]
    order: usize,
    #[arg(long)]
    modules_over: Option<String>,
    /// Include noncommutative semirings.
    #[arg(long)]
    noncommutative: bool,
    /// Keep one semiring per isomorphism class.
    #[arg(long)]
    dedup: bool,
    /// Directory receiving one JSON file per structure.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run over the enumerated and builtin grid.
    #[arg(long)]
    catalog: bool,
    #[arg(long, default_value_t = 3)]
    max_order: usize,
    /// Single semiring to verify (with `--module`) instead of the grid.
    #[arg(long)]
    instance: Option<String>,
    #[arg(long)]
    module: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    jobs: Option<usize>,
    /// Record per-check wall-clock times.
    #[arg(long)]
    timings: bool,
    /// Skip the randomized numeric checks.
    #[arg(long)]
    no_numeric: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ExpectArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Compare against explicit path enumeration.
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    output: Output,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Validate(args) => validate(args),
        Command::ExpectationBuild(args) => build(args),
        Command::Ideals(args) => ideals(args),
        Command::Classify(args) => classify(args),
        Command::Enumerate(args) => enumerate(args),
        Command::VerifyTheorems(args) => verify(args),
        Command::Expect(args) => expect(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// A semiring file, or a builtin name.
fn load_semiring(arg: &str) -> Result<(Arc<FiniteSemiring>, InstanceFile)> {
    let path = Path::new(arg);
    if path.exists() {
        let file: InstanceFile = read_json(path).with_context(|| format!("reading {arg}"))?;
        let s = validate_semiring(file.raw.clone()).with_context(|| format!("validating {arg}"))?;
        return Ok((Arc::new(s), file));
    }
    match builtin_semiring(arg) {
        Ok(s) => {
            let file = InstanceFile { raw: s.to_raw(), pairing: None };
            Ok((s, file))
        }
        Err(Error::UnknownName(_)) => bail!("`{arg}` is neither a file nor a builtin semiring"),
        Err(e) => Err(e.into()),
    }
}

/// A semimodule file over `base`, or a builtin module name.
fn load_module(arg: &str, base: &Arc<FiniteSemiring>) -> Result<Arc<FiniteSemimodule>> {
    let path = Path::new(arg);
    let module = if path.exists() {
        read_semimodule(path, base).with_context(|| format!("reading {arg}"))?
    } else {
        builtin_module(base, arg).with_context(|| format!("`{arg}` is neither a file nor a builtin module"))?
    };
    Ok(Arc::new(module))
}

fn emit(output: &Output, report: &impl serde::Serialize, summary: impl FnOnce()) -> Result<()> {
    if let Some(path) = &output.out {
        write_json(path, report)?;
    }
    if output.json {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else {
        summary();
    }
    Ok(())
}

fn describe_violations(violations: &[Violation]) -> Vec<Value> {
    violations
        .iter()
        .map(|v| json!({ "axiom": v.axiom, "law": v.axiom.description(), "witness": v.witness }))
        .collect()
}

fn validate(args: ValidateArgs) -> Result<bool> {
    let value: Value = read_json(&args.file)?;
    let (name, violations) = if value.get("action").is_some() {
        let raw: RawSemimodule = serde_json::from_value(value)?;
        let base_name = args.base.clone().unwrap_or_else(|| raw.base.clone());
        if base_name.is_empty() {
            bail!("semimodule file has no `base`; pass --base");
        }
        let (base, _) = load_semiring(&base_name)?;
        (raw.name.clone(), semimodule_violations(&base, &raw)?)
    } else {
        let raw: RawSemiring = serde_json::from_value(value)?;
        (raw.name.clone(), semiring_violations(&raw, Commutativity::Required)?)
    };
    let report = json!({
        "schema": "idealize.validate.v1",
        "name": name,
        "valid": violations.is_empty(),
        "violations": describe_violations(&violations),
    });
    emit(&args.output, &report, || {
        if violations.is_empty() {
            println!("{}: valid", args.file.display());
        } else {
            println!("{}: {} violation(s)", args.file.display(), violations.len());
            for v in &violations {
                println!("  {v}");
            }
        }
    })?;
    Ok(violations.is_empty())
}

fn build(args: BuildArgs) -> Result<bool> {
    let (s, _) = load_semiring(&args.semiring)?;
    let m = load_module(&args.module, &s)?;
    let inst = ExpectationInstance::build(&s, &m)?;
    let file = InstanceFile::from_instance(&inst);
    match &args.out {
        Some(path) => {
            write_json(path, &file)?;
            println!("{}: {} elements written to {}", inst.product().name(), inst.product().size(), path.display());
        }
        None => println!("{}", serde_json::to_string_pretty(&file)?),
    }
    Ok(true)
}

fn ideals(args: IdealsArgs) -> Result<bool> {
    let (s, file) = load_semiring(&args.instance)?;
    let report = ideals_report(&s, &file.labels())?;
    let output = Output { out: args.out, json: args.json };
    emit(&output, &report, || {
        println!("{}: {} ideals", report.instance, report.ideals.len());
        let flag = |b: Option<bool>, name: &str| match b {
            Some(true) => format!(" {name}"),
            _ => String::new(),
        };
        for ideal in &report.ideals {
            println!(
                "  {{{}}}{}{}{}{}{}",
                ideal.labels.join(","),
                if ideal.subtractive { " subtractive" } else { "" },
                flag(ideal.prime, "prime"),
                flag(ideal.maximal, "maximal"),
                flag(ideal.primary, "primary"),
                flag(ideal.weakly_prime, "weakly-prime"),
            );
        }
    })?;
    Ok(true)
}

fn classify(args: ClassifyArgs) -> Result<bool> {
    let (s, file) = load_semiring(&args.instance)?;
    let inst = match &args.module {
        Some(m) => Some(ExpectationInstance::build(&s, &load_module(m, &s)?)?),
        None => None,
    };
    let report = classify_output(&s, file.labels(), inst.as_ref());
    emit(&args.output, &report, || {
        let show = |r: &idealize::format::LabeledClassReport| {
            let set = |x: &idealize::Subset| x.iter().map(|i| r.labels[i].clone()).collect::<Vec<_>>().join(",");
            println!("{}", r.name);
            println!("  units         {{{}}}", set(&r.report.units));
            println!("  V             {{{}}}", set(&r.report.v_set));
            println!("  idempotents   {{{}}}", set(&r.report.idempotents));
            println!("  nilpotents    {{{}}}", set(&r.report.nilpotents));
            println!("  zero-divisors {{{}}}", set(&r.report.zero_divisors));
            println!("  flags         {}", serde_json::to_string(&r.report.flags).unwrap_or_default());
        };
        show(&report.semiring);
        if let Some(m) = &report.module {
            println!("{}", m.name);
            println!(
                "  présimplifiable {}, strongly associate {}, domainlike {}",
                m.presimplifiable, m.strongly_associate, m.domainlike
            );
        }
        if let Some(p) = &report.product {
            show(p);
        }
    })?;
    Ok(true)
}

fn enumerate(args: EnumerateArgs) -> Result<bool> {
    let mut entries = match &args.modules_over {
        Some(base) => enumerate_semimodules(&load_semiring(base)?.0, args.order)?,
        None => enumerate_semirings(args.order, !args.noncommutative)?,
    };
    if args.dedup && args.modules_over.is_none() {
        entries = dedup_up_to_isomorphism(entries);
    }
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
        for entry in &entries {
            let path = dir.join(format!("{}.json", entry.name.replace('/', "__")));
            match &entry.structure {
                Structure::Semiring(s) => write_json(&path, &s.to_raw())?,
                Structure::Semimodule(m) => write_json(&path, &m.to_raw())?,
            }
        }
    }
    println!("{} structure(s)", entries.len());
    for entry in &entries {
        println!("  {}", entry.name);
    }
    Ok(true)
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let cells = match (&args.instance, &args.module) {
        (Some(s), Some(m)) => {
            let (s, _) = load_semiring(s)?;
            let m = load_module(m, &s)?;
            vec![Cell::new(s, m)]
        }
        (Some(_), None) | (None, Some(_)) => bail!("--instance and --module go together"),
        (None, None) if args.catalog => catalog_grid(args.max_order)?,
        (None, None) => bail!("pass --catalog or --instance with --module"),
    };
    let options = VerifyOptions { jobs: args.jobs, seed: args.seed, timings: args.timings, numeric: !args.no_numeric };
    let report = verify_grid(&cells, &options)?;
    emit(&args.output, &report, || print_verification(&report))?;
    Ok(report.all_pass())
}

fn print_verification(report: &VerificationReport) {
    let mut table: BTreeMap<&str, [usize; 4]> = BTreeMap::new();
    let mut order = Vec::new();
    for r in &report.records {
        let counts = table.entry(&r.theorem).or_insert_with(|| {
            order.push(r.theorem.as_str());
            [0; 4]
        });
        counts[r.status as usize] += 1;
    }
    println!("{:<36} {:>6} {:>6} {:>6} {:>6}", "check", "pass", "fail", "n/a", "info");
    for id in order {
        let [p, f, n, i] = table[id];
        println!("{id:<36} {p:>6} {f:>6} {n:>6} {i:>6}");
    }
    for r in report.failures() {
        println!("FAIL {} on {}: {}", r.theorem, r.instance, r.witness.join("; "));
    }
    for r in report.records.iter().filter(|r| r.status == Status::Informational && !r.witness.is_empty()) {
        if r.theorem == "weakly-prime-converse-probe" {
            println!("INFO {} on {}: {}", r.theorem, r.instance, r.witness.join("; "));
        }
    }
    let s = &report.summary;
    println!(
        "{} cells, {} records: {} pass, {} fail, {} not applicable, {} informational",
        s.cells, s.records, s.pass, s.fail, s.not_applicable, s.informational
    );
}

fn expect(args: ExpectArgs) -> Result<bool> {
    let g = read_graph(&args.graph)?;
    let total = forward_total(&g)?;
    let expectation = match expectation(&g) {
        Ok(e) => Some(e),
        Err(Error::ZeroMass(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let oracle = if args.oracle {
        if g.path_count() > DEFAULT_PATH_LIMIT as u128 {
            bail!("oracle needs at most {DEFAULT_PATH_LIMIT} paths, graph has {}", g.path_count());
        }
        let brute = brute_force_total(&g)?;
        Some(OracleComparison { paths: g.path_count() as u64, agrees: brute.approx_eq(&total), total: brute })
    } else {
        None
    };
    let report = ExpectOutput { schema: EXPECT_SCHEMA, total, expectation, oracle };
    emit(&args.output, &report, || {
        println!("Z = {}", report.total.p);
        println!("r = {:?}", report.total.r);
        match &report.expectation {
            Some(e) => println!("E = {e:?}"),
            None => println!("E undefined (zero total mass)"),
        }
        if let Some(o) = &report.oracle {
            let verdict = if o.agrees { "agree" } else { "DISAGREE" };
            println!("oracle: {verdict} over {} path(s): Z = {}, r = {:?}", o.paths, o.total.p, o.total.r);
        }
    })?;
    Ok(report.oracle.as_ref().is_none_or(|o| o.agrees))
}
