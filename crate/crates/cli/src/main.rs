//! `sofic`: analyze, compare and transform sofic shift presentations.
//!
//! Exit codes: 0 success or `karoubi_equivalent`, 1 distinguished,
//! 2 parse or validation error, 3 search budget exceeded.

use std::fmt::Write as _;
use std::io::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use sofic_core::corpus::{random_corpus, random_letter};
use sofic_core::covers::{cyclic_poset, fischer_cover, krieger_cover};
use sofic_core::invariants::{
    analyze_shift, compare_shifts, semigroup_report, CompareOptions, ComparisonVerdict, InvariantReport,
    PartialComparison, Row,
};
use sofic_core::karoubi::{decide_equivalence, karoubi_envelope, skeleton};
use sofic_core::presentation::{higher_block, higher_power, induced_shift, symbol_expansion};
use sofic_core::semigroup::DEFAULT_BUDGET;
use sofic_core::{Error, FinSemigroupZ, Presentation, ShiftHandle};

#[derive(Parser)]
#[command(name = "sofic", version, about = "Flow-equivalence invariants of sofic shifts")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Config {
    /// Node budget for each backtracking search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write Graphviz renderings into this directory.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    /// Read inputs as semigroup tables instead of edge lists.
    #[arg(long, global = true)]
    raw_semigroup: bool,
    /// Evaluate every comparison row even after a mismatch.
    #[arg(long, global = true)]
    exhaustive: bool,
    /// Seed for random choices (corpus generation, expansion letter).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Print the invariant report of a shift or semigroup table.
    Analyze { path: PathBuf },
    /// Compare two inputs, or every pair listed in a manifest.
    Compare {
        #[arg(required_unless_present = "batch", conflicts_with = "batch")]
        left: Option<PathBuf>,
        #[arg(required_unless_present = "batch")]
        right: Option<PathBuf>,
        /// Manifest with one `<left> <right>` pair per line, paths relative to the manifest.
        #[arg(long)]
        batch: Option<PathBuf>,
        /// Worker threads for batch mode (defaults to available parallelism).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Apply a shift transformation and print the canonical result.
    Transform {
        path: PathBuf,
        #[command(subcommand)]
        op: TransformOp,
        /// Write to this file instead of stdout.
        #[arg(long, short, global = true)]
        output: Option<PathBuf>,
    },
    /// Write a pseudo-random corpus of presentations into a directory.
    Corpus {
        dir: PathBuf,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum TransformOp {
    /// Replace a letter `a` by the word `a ◊`; picks a letter from the seed if omitted.
    Expand {
        letter: Option<String>,
        #[arg(long, default_value = "◊")]
        fresh: String,
    },
    /// n-block presentation.
    Block { n: usize },
    /// n-th power presentation.
    Power { n: usize },
    /// Shift induced by generators of a semigroup table (`.sgp` input).
    Induce {
        /// Generators as element names; defaults to every nonzero element.
        #[arg(long, value_delimiter = ',')]
        gens: Vec<String>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::BudgetExceeded(_)) { 3 } else { 2 };
        Failure { code, message: format!("{}: {e}", e.name()) }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 2, message: format!("IoError: {}: {e}", path.display()) }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "shift".into())
}

fn load_shift(path: &Path) -> Result<ShiftHandle, Failure> {
    Ok(ShiftHandle::parse(stem(path), &read(path)?)?)
}

fn load_table(path: &Path) -> Result<FinSemigroupZ, Failure> {
    Ok(FinSemigroupZ::parse(&read(path)?)?)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| io_failure(path, e))
}

fn write_dots(dir: &Path, files: &[(String, String)]) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
    for (name, body) in files {
        write_file(&dir.join(format!("{name}.dot")), body)?;
    }
    Ok(())
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn report_text(r: &InvariantReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "shift {}", r.name);
    let s = &r.semigroup;
    let _ = writeln!(
        out,
        "semigroup: order {}, {} idempotents, {} D-classes ({} regular), monoid {}",
        s.order, s.idempotents, s.d_classes, s.regular_d_classes, s.is_monoid
    );
    let k = &r.karoubi;
    let _ = writeln!(
        out,
        "karoubi: {} objects, {} morphisms; skeleton {} objects, {} morphisms, local monoid orders {:?}",
        k.objects,
        k.morphisms,
        k.skeleton_objects.len(),
        k.skeleton_morphisms,
        k.local_monoid_orders
    );
    let f = &r.flags;
    let _ = writeln!(
        out,
        "flags: aperiodic {}, irreducible {}, finite_type {}, almost_finite_type {}, synchronizing {}, property_a {}",
        f.class.aperiodic,
        f.class.irreducible,
        f.class.finite_type,
        f.class.almost_finite_type,
        f.class.synchronizing,
        f.property_a
    );
    if let Some(c) = &r.krieger_cover {
        let _ = writeln!(out, "krieger cover: {} states, {} edges", c.states, c.edges);
    }
    if let Some(c) = &r.fischer_cover {
        let _ = writeln!(out, "fischer cover: {} states, {} edges", c.states, c.edges);
    }
    if let Some(p) = &r.p {
        let _ = writeln!(out, "P: {} elements", p.len());
    }
    if let Some(kd) = &r.kd {
        let _ = writeln!(out, "KD: {} elements", kd.len());
    }
    if let Some(ks) = &r.krieger_semigroup {
        let _ = writeln!(out, "krieger semigroup: order {}", ks.order);
    }
    let _ = writeln!(out, "subs: {} elements", r.subs.len());
    out
}

fn analyze(path: &Path, cfg: &Config) -> Result<String, Failure> {
    let (report, dots) = if cfg.raw_semigroup {
        let s = load_table(path)?;
        let name = stem(path);
        let report = semigroup_report(&name, &s)?;
        let k = karoubi_envelope(&s);
        let dots = vec![
            (format!("{name}.karoubi"), k.to_dot(&name)),
            (format!("{name}.skeleton"), skeleton(&k).to_dot(&name)),
            (format!("{name}.subs"), report.subs.to_dot(&name)),
        ];
        (report, dots)
    } else {
        let h = load_shift(path)?;
        let report = analyze_shift(&h)?;
        let name = h.name.clone();
        let mut dots = vec![(name.clone(), h.presentation().to_dot(&name))];
        if cfg.dot.is_some() {
            let (kg, ka) = krieger_cover(&h)?;
            dots.push((format!("{name}.krieger"), kg.to_dot(&name)));
            dots.push((format!("{name}.p"), cyclic_poset(&ka).to_dot(&name)));
            if let Ok((fg, _)) = fischer_cover(&h) {
                dots.push((format!("{name}.fischer"), fg.to_dot(&name)));
            }
            dots.push((format!("{name}.skeleton"), skeleton(&karoubi_envelope(h.semigroup())).to_dot(&name)));
            if let Some(kd) = &report.kd {
                dots.push((format!("{name}.kd"), kd.to_dot(&name)));
            }
            dots.push((format!("{name}.subs"), report.subs.to_dot(&name)));
        }
        (report, dots)
    };
    if let Some(dir) = &cfg.dot {
        write_dots(dir, &dots)?;
    }
    Ok(match cfg.format {
        Format::Json => pretty(&report),
        Format::Text => report_text(&report),
    })
}

fn rows_text(rows: &[Row]) -> String {
    let mut out = String::new();
    for r in rows {
        let status = serde_json::to_value(r.status).expect("serializable");
        let _ = writeln!(out, "{:<20} {:<15} {} | {}", r.invariant, status.as_str().unwrap_or(""), r.left, r.right);
    }
    out
}

enum Compared {
    Verdict(ComparisonVerdict),
    Partial(PartialComparison),
    Raw(Value, bool),
}

impl Compared {
    fn code(&self) -> u8 {
        match self {
            Compared::Verdict(v) => u8::from(v.is_distinguished()),
            Compared::Partial(p) => Failure::from(p.error.clone()).code,
            Compared::Raw(_, equivalent) => u8::from(!equivalent),
        }
    }

    fn json(&self) -> Value {
        match self {
            Compared::Verdict(v) => serde_json::to_value(v).expect("serializable"),
            Compared::Partial(p) => json!({
                "error": p.error.name(),
                "message": p.error.to_string(),
                "rows": p.rows,
            }),
            Compared::Raw(v, _) => v.clone(),
        }
    }

    fn text(&self) -> String {
        match self {
            Compared::Verdict(v) => {
                let mut out = format!("verdict: {}\n", v.verdict);
                out.push_str(&rows_text(&v.rows));
                out
            }
            Compared::Partial(p) => {
                let mut out = format!("error: {}: {}\n", p.error.name(), p.error);
                out.push_str(&rows_text(&p.rows));
                out
            }
            Compared::Raw(v, _) => format!("verdict: {}\n", v["verdict"].as_str().unwrap_or("")),
        }
    }
}

fn compare_pair(left: &Path, right: &Path, cfg: &Config) -> Result<Compared, Failure> {
    if cfg.raw_semigroup {
        let (a, b) = (load_table(left)?, load_table(right)?);
        let witness = decide_equivalence(&karoubi_envelope(&a), &karoubi_envelope(&b), cfg.budget)?;
        let equivalent = witness.is_some();
        let verdict = if equivalent { "karoubi_equivalent" } else { "distinguished" };
        let outcome = match witness {
            Some(w) => json!({ "kind": "karoubi_equivalent", "witness": w }),
            None => json!({ "kind": "distinguished", "invariant": "karoubi", "left": "", "right": "" }),
        };
        return Ok(Compared::Raw(json!({ "verdict": verdict, "outcome": outcome }), equivalent));
    }
    let (a, b) = (load_shift(left)?, load_shift(right)?);
    let opts = CompareOptions { budget: cfg.budget, exhaustive: cfg.exhaustive };
    Ok(match compare_shifts(&a, &b, &opts) {
        Ok(v) => Compared::Verdict(v),
        Err(p) => Compared::Partial(p),
    })
}

fn compare(left: &Path, right: &Path, cfg: &Config) -> Result<(String, u8), Failure> {
    let c = compare_pair(left, right, cfg)?;
    let out = match cfg.format {
        Format::Json => pretty(&c.json()),
        Format::Text => c.text(),
    };
    Ok((out, c.code()))
}

fn parse_manifest(path: &Path) -> Result<Vec<(PathBuf, PathBuf)>, Failure> {
    let base = path.parent().unwrap_or(Path::new("."));
    let mut pairs = Vec::new();
    for (i, line) in read(path)?.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [a, b] = parts[..] else {
            return Err(Error::ParseError { line: i + 1, message: "expected `<left> <right>`".into() }.into());
        };
        pairs.push((base.join(a), base.join(b)));
    }
    Ok(pairs)
}

/// Runs every manifest pair on a worker pool; results are printed in
/// manifest order and the exit code is the most severe one seen.
fn compare_batch(manifest: &Path, jobs: Option<usize>, cfg: &Config) -> Result<(String, u8), Failure> {
    let pairs = parse_manifest(manifest)?;
    let workers = jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, usize::from))
        .clamp(1, pairs.len().max(1));
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<(Value, String, u8)>>> = Mutex::new(vec![None; pairs.len()]);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((a, b)) = pairs.get(i) else { break };
                let entry = match compare_pair(a, b, cfg) {
                    Ok(c) => (c.json(), c.text(), c.code()),
                    Err(f) => (json!({ "error": f.message }), format!("error: {}\n", f.message), f.code),
                };
                results.lock().expect("no poisoned workers")[i] = Some(entry);
            });
        }
    });
    let results = results.into_inner().expect("no poisoned workers");
    let mut out = String::new();
    let mut code = 0;
    for ((a, b), entry) in pairs.iter().zip(results) {
        let (value, text, c) = entry.expect("every pair evaluated");
        code = code.max(c);
        match cfg.format {
            Format::Json => {
                let line = json!({ "left": a.display().to_string(), "right": b.display().to_string(), "result": value });
                let _ = writeln!(out, "{line}");
            }
            Format::Text => {
                let _ = write!(out, "{} {}\n{text}", a.display(), b.display());
            }
        }
    }
    Ok((out.trim_end().to_string(), code))
}

fn transform(path: &Path, op: &TransformOp, cfg: &Config) -> Result<String, Failure> {
    let result = match op {
        TransformOp::Induce { gens } => {
            let s = load_table(path)?;
            let gens: Vec<(String, usize)> = if gens.is_empty() {
                s.nonzero().map(|x| (s.name(x).to_string(), x)).collect()
            } else {
                gens.iter()
                    .map(|g| {
                        s.element(g).map(|x| (g.clone(), x)).ok_or_else(|| Error::LetterNotInAlphabet(g.clone()))
                    })
                    .collect::<Result<_, _>>()?
            };
            induced_shift(&s, &gens)?
        }
        _ => {
            let p = Presentation::parse(&read(path)?)?;
            match op {
                TransformOp::Expand { letter, fresh } => {
                    let letter = match letter {
                        Some(l) => l.clone(),
                        None => random_letter(&mut ChaCha8Rng::seed_from_u64(cfg.seed), &p),
                    };
                    symbol_expansion(&p, &letter, fresh)?
                }
                TransformOp::Block { n } => higher_block(&p, *n)?,
                TransformOp::Power { n } => higher_power(&p, *n)?,
                TransformOp::Induce { .. } => unreachable!("handled above"),
            }
        }
    };
    if let Some(dir) = &cfg.dot {
        let name = stem(path);
        write_dots(dir, &[(format!("{name}.transformed"), result.to_dot(&name))])?;
    }
    Ok(result.serialize())
}

fn corpus(dir: &Path, count: usize, cfg: &Config) -> Result<String, Failure> {
    fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
    let width = count.max(1).to_string().len();
    for (i, p) in random_corpus(cfg.seed, count).iter().enumerate() {
        write_file(&dir.join(format!("x{i:0width$}.shift")), &p.serialize())?;
    }
    Ok(format!("wrote {count} presentations to {}", dir.display()))
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Analyze { path } => Ok((analyze(path, cfg)?, 0)),
        Command::Compare { batch: Some(manifest), jobs, .. } => compare_batch(manifest, *jobs, cfg),
        Command::Compare { left: Some(l), right: Some(r), .. } => compare(l, r, cfg),
        Command::Compare { .. } => Err(Failure { code: 2, message: "compare needs two inputs or --batch".into() }),
        Command::Transform { path, op, output } => {
            let text = transform(path, op, cfg)?;
            match output {
                Some(out) => {
                    write_file(out, &text)?;
                    Ok((String::new(), 0))
                }
                None => Ok((text.trim_end().to_string(), 0)),
            }
        }
        Command::Corpus { dir, count } => Ok((corpus(dir, *count, cfg)?, 0)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            if !out.is_empty() {
                // A closed pipe downstream is not an error of ours.
                let _ = writeln!(std::io::stdout().lock(), "{out}");
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
