//! `xcat` — build simple graded objects with exact arithmetic, emit
//! character tables, and run the theorem and identity verifiers.
//!
//! Exit codes: 0 success / all checks pass, 1 check failures,
//! 2 invalid request or hypothesis violation, 3 cache corruption.

mod table;

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use xcat_core::construct::{build_simple, BuildPolicy, BuildRequest};
use xcat_core::forms::{build_form, verify_adjointness, verify_nondegenerate, verify_symmetry};
use xcat_core::gspace::{verify_axioms, GradedObject};
use xcat_core::qarith::{FieldContext, IdentityRanges};
use xcat_core::roots::{RootSystem, Weight};
use xcat_core::theorems::{
    frobenius_pullback, isomorphism_check, steinberg_tensor, verify_decomposition,
    verify_divided_powers, verify_dominant_vanishing, verify_f1_cyclic, verify_serre_lusztig,
};
use xcat_core::Error;

use table::CharacterTable;

#[derive(Parser)]
#[command(
    name = "xcat",
    about = "Exact characters of simple graded spaces with operators",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ObjectArgs {
    /// Root system descriptor: A<n>, D<n>, E6, E7 or E8
    rs: String,
    /// Field descriptor: rational, fp:<p>, cyclo:<d>
    field: String,
    /// Distinguished invertible element: 1, -1, an integer residue
    /// (prime fields) or zeta^<k> (cyclotomic fields)
    #[arg(long, default_value = "1")]
    q: String,
    /// Highest weight, comma-separated fundamental-weight coordinates
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Truncation depth (required for non-dominant lambda)
    #[arg(long)]
    depth: Option<i64>,
    /// Cache directory (default: $XCAT_CACHE_DIR or ./.xcat-cache)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Do not read or write the cache
    #[arg(long)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build S(lambda) and print its character table
    Char {
        #[command(flatten)]
        object: ObjectArgs,
        /// Output format: text, json, csv or tex
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Build S(lambda) and run the full verifier battery
    Verify {
        #[command(flatten)]
        object: ObjectArgs,
        /// Degree bound for the sampled operator relations
        #[arg(long, default_value_t = 6)]
        bound: i64,
        /// Skip the contravariant-form checks
        #[arg(long)]
        skip_forms: bool,
    },
    /// Check the Steinberg tensor product against an independent build
    Steinberg {
        rs: String,
        field: String,
        #[arg(long, default_value = "1")]
        q: String,
        /// Restricted first factor
        #[arg(long, allow_hyphen_values = true)]
        lambda0: String,
        /// Second factor: S(ell*lambda1) is built from this weight
        #[arg(long, allow_hyphen_values = true)]
        lambda1: String,
        #[arg(long, default_value_t = 6)]
        bound: i64,
    },
    /// Check the Frobenius pull-back against an independent build
    Frobenius {
        rs: String,
        field: String,
        #[arg(long, default_value = "1")]
        q: String,
        /// Highest weight of the source object over (K, 1)
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 6)]
        bound: i64,
    },
    /// Run the quantum-binomial identity suite
    Identities {
        /// Headline bound for the identity boxes
        #[arg(long, default_value_t = 10)]
        range: u32,
        /// Fault-injection hook: corrupt one memoized binomial first
        #[arg(long, hide = true)]
        corrupt_table: bool,
    },
    /// Build a direct sum of simples and recover its decomposition
    Decompose {
        rs: String,
        field: String,
        #[arg(long, default_value = "1")]
        q: String,
        /// Summand highest weights (repeat the flag)
        #[arg(long = "lambda", required = true, allow_hyphen_values = true)]
        lambdas: Vec<String>,
    },
    /// Inspect or clear the on-disk object cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// List cached objects
    List {
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Remove all cached objects
    Clear {
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Print the cache directory path
    Path {
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::CacheFormat(_) => 3,
        Error::Io(_) => 3,
        Error::Internal(_) => 4,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Char { object, format } => cmd_char(&object, &format),
        Command::Verify {
            object,
            bound,
            skip_forms,
        } => cmd_verify(&object, bound, skip_forms),
        Command::Steinberg {
            rs,
            field,
            q,
            lambda0,
            lambda1,
            bound,
        } => cmd_steinberg(&rs, &field, &q, &lambda0, &lambda1, bound),
        Command::Frobenius {
            rs,
            field,
            q,
            lambda,
            bound,
        } => cmd_frobenius(&rs, &field, &q, &lambda, bound),
        Command::Identities {
            range,
            corrupt_table,
        } => cmd_identities(range, corrupt_table),
        Command::Decompose {
            rs,
            field,
            q,
            lambdas,
        } => cmd_decompose(&rs, &field, &q, &lambdas),
        Command::Cache { action } => cmd_cache(action),
    }
}

fn parse_request(args: &ObjectArgs) -> Result<BuildRequest, Error> {
    let rs = RootSystem::parse(&args.rs)?;
    let ctx = FieldContext::parse(&args.field, &args.q)?;
    let lambda = Weight::parse(&args.lambda, rs.rank())?;
    let policy = match args.depth {
        Some(h) => BuildPolicy::FixedDepth(h),
        None => {
            if !lambda.is_dominant() {
                return Err(Error::NonDominant(format!(
                    "{lambda} (pass --depth H to build a truncation)"
                )));
            }
            BuildPolicy::DominantAuto
        }
    };
    Ok(BuildRequest::new(rs, ctx, lambda, policy))
}

fn cache_dir(explicit: &Option<PathBuf>) -> PathBuf {
    if let Some(d) = explicit {
        return d.clone();
    }
    if let Ok(d) = std::env::var("XCAT_CACHE_DIR") {
        return PathBuf::from(d);
    }
    PathBuf::from(".xcat-cache")
}

fn cache_file(dir: &Path, req: &BuildRequest) -> PathBuf {
    let sanitized: String = req
        .cache_key()
        .chars()
        .map(|c| match c {
            'a'..='z' | 'A'..='Z' | '0'..='9' | '.' | '_' | '-' => c,
            ',' => '.',
            _ => '-',
        })
        .collect();
    dir.join(format!("{sanitized}.xc"))
}

/// Build the object, or load it from the cache; freshly built objects
/// are written back atomically (temp file, then rename).
fn load_or_build(args: &ObjectArgs, req: &BuildRequest) -> Result<GradedObject, Error> {
    if args.no_cache {
        return build_simple(req);
    }
    let dir = cache_dir(&args.cache_dir);
    let path = cache_file(&dir, req);
    if path.exists() {
        let file = fs::File::open(&path)?;
        let (obj, _) = xcat_core::cache::read_object(&mut BufReader::new(file))?;
        if obj.ctx() != &req.ctx || obj.root_system() != &req.rs {
            return Err(Error::CacheFormat(format!(
                "cache file {} does not match the request",
                path.display()
            )));
        }
        return Ok(obj);
    }
    let obj = build_simple(req)?;
    fs::create_dir_all(&dir)?;
    let tmp = dir.join(format!(
        ".tmp-{}-{}",
        std::process::id(),
        path.file_name().unwrap().to_string_lossy()
    ));
    {
        let mut file = fs::File::create(&tmp)?;
        xcat_core::cache::write_object(&mut file, &obj, None)?;
    }
    fs::rename(&tmp, &path)?;
    Ok(obj)
}

fn cmd_char(args: &ObjectArgs, format: &str) -> Result<ExitCode, Error> {
    let req = parse_request(args)?;
    let obj = load_or_build(args, &req)?;
    let table = CharacterTable::from_object(&req, &obj);
    print!("{}", table.render(format));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &ObjectArgs, bound: i64, skip_forms: bool) -> Result<ExitCode, Error> {
    let req = parse_request(args)?;
    let obj = load_or_build(args, &req)?;
    let mut all_pass = true;
    let mut emit = |report: &xcat_core::report::TheoremReport| {
        print!("{report}");
        all_pass &= report.pass();
    };

    let axioms = verify_axioms(&obj, bound);
    for r in axioms.reports() {
        emit(r);
    }
    emit(&verify_divided_powers(&obj, bound));
    emit(&verify_serre_lusztig(&obj, bound.min(4).max(2)));
    let ell = req.ctx.ell();
    if ell > 0 {
        emit(&verify_decomposition(&obj, 2 * ell as i64)?);
    }
    if req.lambda.is_dominant() && obj.lambda().is_some() {
        emit(&verify_dominant_vanishing(&obj)?);
    }
    if ell > 0 && req.lambda.0.iter().all(|&c| 0 <= c && c < ell as i64) {
        emit(&verify_f1_cyclic(&obj)?);
    }
    if !skip_forms {
        let form = build_form(&obj, &req.ctx.one())?;
        emit(&verify_symmetry(&form));
        emit(&verify_adjointness(&obj, &form, bound));
        emit(&verify_nondegenerate(&form));
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_steinberg(
    rs: &str,
    field: &str,
    q: &str,
    lambda0: &str,
    lambda1: &str,
    bound: i64,
) -> Result<ExitCode, Error> {
    let rs = RootSystem::parse(rs)?;
    let ctx = FieldContext::parse(field, q)?;
    let ell = ctx.ell();
    if ell == 0 {
        return Err(Error::HypothesisViolation(
            "the Steinberg theorem needs positive quantum characteristic".into(),
        ));
    }
    let l0 = Weight::parse(lambda0, rs.rank())?;
    let l1 = Weight::parse(lambda1, rs.rank())?;
    if !l0.0.iter().all(|&c| 0 <= c && c < ell as i64) {
        return Err(Error::HypothesisViolation(format!(
            "lambda0 = {l0} is not restricted for ell = {ell}"
        )));
    }
    let s0 = build_simple(&BuildRequest::new(
        rs.clone(),
        ctx.clone(),
        l0.clone(),
        BuildPolicy::DominantAuto,
    ))?;
    let stretched_l1 = l1.scaled(ell as i64);
    let sl1 = build_simple(&BuildRequest::new(
        rs.clone(),
        ctx.clone(),
        stretched_l1.clone(),
        BuildPolicy::DominantAuto,
    ))?;
    let product = steinberg_tensor(&s0, &sl1)?;
    let target = l0.add(&stretched_l1);
    let independent = build_simple(&BuildRequest::new(
        rs,
        ctx,
        target.clone(),
        BuildPolicy::DominantAuto,
    ))?;
    println!("product character:     {}", product.character());
    println!("independent character: {}", independent.character());
    let report = isomorphism_check(&product, &target, &independent, bound);
    print!("{report}");
    let decomp = product.decompose();
    let singleton = decomp.len() == 1 && decomp.get(&target) == Some(&1);
    println!(
        "{} | decompose(product) = {{{}}}",
        if singleton { "PASS" } else { "FAIL" },
        decomp
            .iter()
            .map(|(w, m)| format!("{w}×{m}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    Ok(if report.pass() && singleton {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_frobenius(
    rs: &str,
    field: &str,
    q: &str,
    lambda: &str,
    bound: i64,
) -> Result<ExitCode, Error> {
    let rs = RootSystem::parse(rs)?;
    let target_ctx = FieldContext::parse(field, q)?;
    let ell = target_ctx.ell();
    if ell == 0 {
        return Err(Error::HypothesisViolation(
            "the Frobenius pull-back needs positive quantum characteristic".into(),
        ));
    }
    let source_ctx = FieldContext::parse(field, "1")?;
    let l = Weight::parse(lambda, rs.rank())?;
    let source = build_simple(&BuildRequest::new(
        rs.clone(),
        source_ctx,
        l.clone(),
        BuildPolicy::DominantAuto,
    ))?;
    let stretched = frobenius_pullback(&source, ell, &target_ctx)?;
    let target = l.scaled(ell as i64);
    let independent = build_simple(&BuildRequest::new(
        rs,
        target_ctx,
        target.clone(),
        BuildPolicy::DominantAuto,
    ))?;
    println!("stretched character:   {}", stretched.character());
    println!("independent character: {}", independent.character());
    let report = isomorphism_check(&stretched, &target, &independent, bound);
    print!("{report}");
    Ok(if report.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_identities(range: u32, corrupt_table: bool) -> Result<ExitCode, Error> {
    if corrupt_table {
        // plant [2 over 1] = 1 (the true value is v + v^-1)
        xcat_core::qarith::poison_binomial_memo_for_tests(
            2,
            1,
            xcat_core::qarith::LaurentPoly::one(),
        );
    }
    let ranges = IdentityRanges::from_bound(range);
    let report = xcat_core::qarith::verify_identities(&ranges);
    for check in &report.checks {
        println!(
            "{} | {} | instances={} failures={}",
            if check.passed() { "PASS" } else { "FAIL" },
            check.name,
            check.instances,
            check.failures
        );
        for ce in &check.counterexamples {
            println!("  counterexample: {ce}");
        }
    }
    println!("total instances: {}", report.total_instances());
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_decompose(rs: &str, field: &str, q: &str, lambdas: &[String]) -> Result<ExitCode, Error> {
    let rs = RootSystem::parse(rs)?;
    let ctx = FieldContext::parse(field, q)?;
    let mut expected: std::collections::BTreeMap<Weight, usize> = Default::default();
    let mut sum: Option<GradedObject> = None;
    for l in lambdas {
        let lambda = Weight::parse(l, rs.rank())?;
        let s = build_simple(&BuildRequest::new(
            rs.clone(),
            ctx.clone(),
            lambda.clone(),
            BuildPolicy::DominantAuto,
        ))?;
        *expected.entry(lambda).or_insert(0) += 1;
        sum = Some(match sum {
            None => s,
            Some(acc) => acc.direct_sum(&s)?,
        });
    }
    let sum = sum.expect("at least one lambda is required");
    let found = sum.decompose();
    println!(
        "decompose(⊕) = {{{}}}",
        found
            .iter()
            .map(|(w, m)| format!("{w}×{m}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    let ok = found == expected;
    println!("{}", if ok { "PASS | multiset recovered" } else { "FAIL | multiset mismatch" });
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_cache(action: CacheAction) -> Result<ExitCode, Error> {
    match action {
        CacheAction::Path { cache_dir: dir } => {
            println!("{}", cache_dir(&dir).display());
        }
        CacheAction::List { cache_dir: dir } => {
            let dir = cache_dir(&dir);
            if dir.is_dir() {
                let mut entries: Vec<_> = fs::read_dir(&dir)?
                    .filter_map(|e| e.ok())
                    .filter(|e| e.path().extension().is_some_and(|x| x == "xc"))
                    .collect();
                entries.sort_by_key(|e| e.file_name());
                for e in entries {
                    let size = e.metadata().map(|m| m.len()).unwrap_or(0);
                    println!("{:>10}  {}", size, e.file_name().to_string_lossy());
                }
            }
        }
        CacheAction::Clear { cache_dir: dir } => {
            let dir = cache_dir(&dir);
            if dir.is_dir() {
                for e in fs::read_dir(&dir)?.filter_map(|e| e.ok()) {
                    if e.path().extension().is_some_and(|x| x == "xc") {
                        fs::remove_file(e.path())?;
                    }
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
