//! `robust-hyper`: run programs, compile and back-translate contexts, and
//! check robust-preservation criteria over a corpus.
//!
//! Exit codes: 0 holds within bounds, 1 counterexample, 2 inconclusive,
//! 3 usage, parse, type, or I/O error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use robust_hyper::backtrans::backtranslate_context;
use robust_hyper::compile::{compile, CompilerId};
use robust_hyper::corpus::{load_program, load_property, Corpus, NamedProgram, NamedProperty};
use robust_hyper::criteria::{
    check_strong_rhp, run_experiment, Criterion, Experiment, PropertyClass, Report, Status, Verdict,
    WbProgram, Workbench,
};
use robust_hyper::srclang::syntax::parse_type_str;
use robust_hyper::srclang::{enumerate_src_contexts, print_term, SrcType, WholeSrc};
use robust_hyper::tgtlang::{enumerate_tgt_contexts, TgtContext, WholeTgt};
use robust_hyper::trace::syntax::PropertySpec;
use robust_hyper::trace::Hyperproperty;
use robust_hyper::{Bounds, Error};

#[derive(Parser)]
#[command(name = "robust-hyper", version, about = "Bounded robust-preservation workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a whole program on one input stream and print its observation.
    Run(RunArgs),
    /// Check a criterion and write a report.
    Check(CheckArgs),
    /// Print the bounded class memberships of a property file.
    Classify(ClassifyArgs),
    /// Back-translate a target context to a source context.
    Backtranslate(BacktranslateArgs),
    /// List the contexts of one side within a size bound.
    Enumerate(EnumerateArgs),
}

#[derive(Args, Clone, Default)]
struct BoundsArgs {
    /// JSON file with default values for the bound flags and `workers`.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    fuel: Option<u64>,
    #[arg(long)]
    stream_len: Option<usize>,
    #[arg(long)]
    val_cap: Option<u32>,
    #[arg(long)]
    event_bound: Option<usize>,
    #[arg(long)]
    max_ctx_size: Option<usize>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct ConfigFile {
    fuel: Option<u64>,
    stream_len: Option<usize>,
    val_cap: Option<u32>,
    event_bound: Option<usize>,
    max_ctx_size: Option<usize>,
    workers: Option<usize>,
}

impl BoundsArgs {
    /// Flags over config file over defaults.
    fn resolve(&self) -> Result<(Bounds, Option<usize>), Error> {
        let file = match &self.config {
            Some(path) => serde_json::from_str::<ConfigFile>(&read(path)?)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
            None => ConfigFile::default(),
        };
        let d = Bounds::default();
        let b = Bounds {
            fuel: self.fuel.or(file.fuel).unwrap_or(d.fuel),
            stream_len: self.stream_len.or(file.stream_len).unwrap_or(d.stream_len),
            val_cap: self.val_cap.or(file.val_cap).unwrap_or(d.val_cap),
            event_bound: self.event_bound.or(file.event_bound).unwrap_or(d.event_bound),
            ctx_size: self.max_ctx_size.or(file.max_ctx_size).unwrap_or(d.ctx_size),
        };
        b.validate()?;
        let workers = self.workers.or(file.workers);
        if workers == Some(0) {
            return Err(Error::Config("--workers must be positive".into()));
        }
        Ok((b, workers))
    }
}

#[derive(Args)]
struct RunArgs {
    /// Whole program file.
    #[arg(long)]
    whole: PathBuf,
    /// Comma-separated input values; may be empty.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    stream: String,
    /// Compile the source program first and run the result.
    #[arg(long)]
    compiler: Option<CompilerId>,
    /// Read the file as a target-language program.
    #[arg(long, conflicts_with = "compiler")]
    target: bool,
    #[command(flatten)]
    bounds: BoundsArgs,
}

#[derive(Args)]
struct CheckArgs {
    /// rsp, rtp, rhp, strong-rhp, preservation, or class.
    #[arg(long)]
    criterion: String,
    #[arg(long, default_value = "secure")]
    compiler: CompilerId,
    /// Program files; repeatable.
    #[arg(long)]
    program: Vec<PathBuf>,
    /// Corpus directory; its programs are checked too, and its properties
    /// are used when no `--property` is given.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Property files; repeatable.
    #[arg(long)]
    property: Vec<PathBuf>,
    /// Keep only programs of this type.
    #[arg(long)]
    export_type: Option<String>,
    /// Class for `--criterion class`.
    #[arg(long, value_enum)]
    class: Option<ClassArg>,
    /// k for `--class k-hypersafety`.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Report file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    bounds: BoundsArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Safety,
    TraceProperties,
    KHypersafety,
    SubsetClosed,
    All,
}

impl ClassArg {
    fn class(self, k: usize) -> PropertyClass {
        match self {
            ClassArg::Safety => PropertyClass::Safety,
            ClassArg::TraceProperties => PropertyClass::TraceProps,
            ClassArg::KHypersafety => PropertyClass::KHypersafety(k),
            ClassArg::SubsetClosed => PropertyClass::SubsetClosed,
            ClassArg::All => PropertyClass::AllHyper,
        }
    }
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    property: PathBuf,
    /// k for the k-hypersafety test.
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[command(flatten)]
    bounds: BoundsArgs,
}

#[derive(Args)]
struct BacktranslateArgs {
    /// Target context file.
    #[arg(long)]
    context: PathBuf,
    #[arg(long)]
    export_type: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Source,
    Target,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, value_enum)]
    side: SideArg,
    /// Hole type; required for source contexts.
    #[arg(long)]
    export_type: Option<String>,
    /// Print only the number of contexts.
    #[arg(long)]
    count: bool,
    #[command(flatten)]
    bounds: BoundsArgs,
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never see a partial report.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Error> {
    let io = |e: std::io::Error| Error::Config(format!("{}: {e}", path.display()));
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| Error::Config(format!("{}: not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(contents.as_bytes()).map_err(io)?;
    f.sync_all().map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

fn init_workers(workers: Option<usize>) {
    if let Some(n) = workers {
        // Fails only if a pool already exists, which is harmless here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn parse_stream(s: &str, b: &Bounds) -> Result<Vec<u32>, Error> {
    s.split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| {
            let n: u32 = v.parse().map_err(|_| Error::Parse(format!("bad stream value `{v}`")))?;
            if n > b.val_cap {
                return Err(Error::Config(format!("stream value {n} exceeds the value cap {}", b.val_cap)));
            }
            Ok(n)
        })
        .collect()
}

fn cmd_run(a: RunArgs) -> Result<ExitCode, Error> {
    let (b, _) = a.bounds.resolve()?;
    let src = read(&a.whole)?;
    let stream = parse_stream(&a.stream, &b)?;
    let run = if a.target {
        WholeTgt::parse(&src)?.run(&stream, &b)
    } else {
        let whole = WholeSrc::parse(&src)?;
        match a.compiler {
            Some(id) => {
                let p = robust_hyper::srclang::SrcProgram::parse(&src)?;
                WholeTgt::new(compile(&p, id).term().clone())?.run(&stream, &b)
            }
            None => whole.run(&stream, &b),
        }
    };
    println!("{}", run.obs);
    Ok(ExitCode::SUCCESS)
}

fn load_programs(a: &CheckArgs, val_cap: u32) -> Result<(Vec<NamedProgram>, Vec<NamedProperty>), Error> {
    let mut programs = Vec::new();
    let mut properties = Vec::new();
    for path in &a.program {
        programs.push(load_program(path)?);
    }
    for path in &a.property {
        properties.push(load_property(path, val_cap)?);
    }
    if let Some(dir) = &a.corpus {
        let c = Corpus::load(dir, val_cap)?;
        programs.extend(c.programs);
        if a.property.is_empty() {
            properties = c.properties;
        }
    }
    if let Some(t) = &a.export_type {
        let ty = parse_type_str(t)?;
        programs.retain(|p| p.program.ty().alpha_eq(&ty));
    }
    if programs.is_empty() {
        return Err(Error::Config("no programs to check".into()));
    }
    Ok((programs, properties))
}

fn cmd_check(a: CheckArgs) -> Result<ExitCode, Error> {
    let criterion: Criterion = a.criterion.parse()?;
    let (b, workers) = a.bounds.resolve()?;
    init_workers(workers);
    let (programs, properties) = load_programs(&a, b.val_cap)?;
    let wb = Workbench::new(a.compiler);
    let wbs: Vec<WbProgram> = programs.iter().map(|p| wb.program(p.name.clone(), p.program.clone())).collect();
    let refs: Vec<&WbProgram> = wbs.iter().collect();

    let mut used_properties: Vec<Hyperproperty> = Vec::new();
    let verdict = match criterion {
        Criterion::StrongRhp => {
            // One group per export type, in order of first appearance.
            let mut groups: Vec<(SrcType, Vec<&WbProgram>)> = Vec::new();
            for p in &refs {
                match groups.iter_mut().find(|(t, _)| t.alpha_eq(p.src().ty())) {
                    Some((_, g)) => g.push(p),
                    None => groups.push((p.src().ty().clone(), vec![p])),
                }
            }
            let mut parts = Vec::new();
            for (_, g) in groups {
                parts.push(check_strong_rhp(&wb, &g, &b)?);
            }
            Verdict::conjunction(parts)
        }
        Criterion::Rsp | Criterion::Rtp | Criterion::Rhp => {
            let exp = Experiment {
                rsp: criterion == Criterion::Rsp,
                rtp: criterion == Criterion::Rtp,
                rhp: criterion == Criterion::Rhp,
                ..Experiment::default()
            };
            let r = run_experiment(&wb, &refs, &exp, &b)?;
            Verdict::conjunction(r.programs.into_iter().map(|p| match criterion {
                Criterion::Rsp => p.rsp.expect("requested"),
                Criterion::Rtp => p.rtp.expect("requested"),
                _ => p.rhp.expect("requested"),
            }))
        }
        Criterion::Preservation | Criterion::Class => {
            used_properties = properties.iter().map(NamedProperty::hyper).collect();
            if criterion == Criterion::Class {
                let class = a
                    .class
                    .ok_or_else(|| Error::Config("--criterion class needs --class".into()))?
                    .class(a.k);
                if a.property.is_empty() {
                    // A corpus suite: the members admitted by the class.
                    let mut suite = Vec::new();
                    for h in used_properties {
                        if class.admits(&h, b.val_cap)? {
                            suite.push(h);
                        }
                    }
                    used_properties = suite;
                } else {
                    for h in &used_properties {
                        if !class.admits(h, b.val_cap)? {
                            return Err(Error::Config(format!(
                                "property `{}` is not in class {}",
                                h.name(),
                                class.name()
                            )));
                        }
                    }
                }
            }
            if used_properties.is_empty() {
                return Err(Error::Config("no properties to check".into()));
            }
            let exp = Experiment::default().with_properties(&used_properties);
            let r = run_experiment(&wb, &refs, &exp, &b)?;
            Verdict::conjunction(r.programs.into_iter().flat_map(|p| p.preservation))
        }
    };
    let report = Report {
        criterion,
        compiler: Some(a.compiler.to_string()),
        programs: programs.iter().map(|p| p.name.clone()).collect(),
        properties: used_properties.iter().map(|h| h.name().to_string()).collect(),
        bounds: b,
        verdict,
    };
    let json = report.to_json();
    match &a.out {
        Some(path) => {
            write_atomic(path, &format!("{json}\n"))?;
            println!("{}: {}", criterion, report.verdict.status);
        }
        None => println!("{json}"),
    }
    Ok(ExitCode::from(match report.verdict.status {
        Status::HoldsWithinBounds => 0,
        Status::Counterexample => 1,
        Status::Inconclusive => 2,
    }))
}

fn cmd_classify(a: ClassifyArgs) -> Result<ExitCode, Error> {
    let (b, _) = a.bounds.resolve()?;
    let spec = load_property(&a.property, b.val_cap)?;
    let lifted = matches!(spec.spec, PropertySpec::Trace(_));
    let h = spec.hyper();
    let mut out = String::new();
    out.push_str(&format!("trace-property: {lifted}\n"));
    for class in [
        PropertyClass::Safety,
        PropertyClass::KHypersafety(a.k),
        PropertyClass::SubsetClosed,
    ] {
        out.push_str(&format!("{}: {}\n", class.name(), class.admits(&h, b.val_cap)?));
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_backtranslate(a: BacktranslateArgs) -> Result<ExitCode, Error> {
    let ty = parse_type_str(&a.export_type)?;
    if !ty.is_closed() {
        return Err(Error::Config(format!("export type {ty} is not closed")));
    }
    let c = TgtContext::parse(&read(&a.context)?)?;
    println!("{}", print_term(backtranslate_context(&c, &ty).term()));
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(a: EnumerateArgs) -> Result<ExitCode, Error> {
    let (b, _) = a.bounds.resolve()?;
    let lines: Vec<String> = match a.side {
        SideArg::Target => enumerate_tgt_contexts(b.ctx_size, b.val_cap)
            .iter()
            .map(|c| c.to_string())
            .collect(),
        SideArg::Source => {
            let t = a
                .export_type
                .as_deref()
                .ok_or_else(|| Error::Config("source enumeration needs --export-type".into()))?;
            let ty = parse_type_str(t)?;
            if !ty.is_closed() {
                return Err(Error::Config(format!("export type {ty} is not closed")));
            }
            enumerate_src_contexts(&ty, b.ctx_size, b.val_cap)
                .iter()
                .map(|c| print_term(c.term()))
                .collect()
        }
    };
    let stdout = std::io::stdout();
    let mut w = std::io::BufWriter::new(stdout.lock());
    let res = if a.count {
        writeln!(w, "{}", lines.len())
    } else {
        lines.iter().try_for_each(|l| writeln!(w, "{l}"))
    };
    res.and_then(|_| w.flush()).map_err(|e| Error::Config(e.to_string()))?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Check(a) => cmd_check(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Backtranslate(a) => cmd_backtranslate(a),
        Command::Enumerate(a) => cmd_enumerate(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
