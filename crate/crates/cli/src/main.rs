use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use affinize::crystal::{b44_closed_form, b44_lambda, example_b44};
use affinize::decomp::{decompose, MultiplicityMap};
use affinize::limits::{convergence_report, standard_sequence};
use affinize::minaff::{kr_character, minaff_character, minaff_graded, positive_real_roots, rho_check};
use affinize::{build_algebra, selftest, AlgebraData, Error, FiniteChar, FiniteWeight, Kind};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Exit codes: 0 success, 2 input error, 3 internal consistency failure.
const EXIT_INPUT: u8 = 2;
const EXIT_CONSISTENCY: u8 = 3;

#[derive(Parser)]
#[command(name = "affinize", version, about = "Characters and decompositions of minimal affinizations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Cartan type: A, B or C.
    #[arg(long = "type")]
    kind: Kind,
    #[arg(long)]
    rank: usize,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    output: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Character of the minimal affinization with highest weight lambda.
    Char {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Comma-separated fundamental-weight coordinates.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        lambda: Vec<i64>,
        /// Split the character by the exponent of the null root.
        #[arg(long)]
        graded: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Irreducible decomposition of a minimal affinization, or of a
    /// character read from a JSON file.
    Decompose {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required_unless_present = "from_json", conflicts_with = "from_json")]
        lambda: Option<Vec<i64>>,
        /// A JSON array of {"weight": [...], "coeff": c} terms.
        #[arg(long)]
        from_json: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Kirillov-Reshetikhin module at node i with multiplicity m.
    Kr {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        i: usize,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compares normalized characters of k * (sum of fundamental weights off J)
    /// with the limit product, up to a height cap.
    LimitCheck {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long = "J", value_delimiter = ',')]
        j: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        height: usize,
        /// Last k in the sequence; defaults to height + 2.
        #[arg(long)]
        k_max: Option<i64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The B_n decomposition family with parameters m1, m2, m4, computed
    /// by crystals, by Demazure operators and in closed form.
    ExampleB44 {
        #[arg(long)]
        rank: usize,
        /// m1,m2,m4
        #[arg(long, value_delimiter = ',', num_args = 1, required = true)]
        m: Vec<i64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Checks the rho exponents against their closed forms for every positive
    /// real root up to a given null-root multiple.
    RhoCheck {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        lambda: Vec<i64>,
        #[arg(long, default_value_t = 2)]
        s_max: i64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Runs the invariant suites and prints per-suite timing.
    Selftest,
}

enum Failure {
    Lib(Error),
    Usage(String),
    Suite,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(), Failure>;

fn fmt_weight(w: &[i64]) -> String {
    let parts: Vec<String> = w.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn emit(out: &OutputArgs, value: Value, table: impl FnOnce() -> String) {
    match out.output {
        Format::Json => {
            let mut doc = json!({ "schema": "1" });
            doc.as_object_mut().unwrap().extend(value.as_object().cloned().unwrap_or_default());
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        Format::Table => print!("{}", table()),
    }
}

fn char_table(ch: &FiniteChar) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<24} coeff", "weight");
    for (w, c) in ch.sorted_terms() {
        let _ = writeln!(s, "{:<24} {c}", fmt_weight(&w.0));
    }
    s
}

fn mult_table(m: &MultiplicityMap) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<24} mult", "highest weight");
    for (w, k) in &m.entries {
        let _ = writeln!(s, "{:<24} {k}", fmt_weight(w));
    }
    s
}

fn algebra(args: &AlgebraArgs) -> Result<AlgebraData, Error> {
    build_algebra(args.kind, args.rank)
}

fn header(data: &AlgebraData) -> Value {
    json!({ "type": data.kind.to_string(), "rank": data.rank })
}

fn with(mut base: Value, extra: Value) -> Value {
    base.as_object_mut().unwrap().extend(extra.as_object().cloned().unwrap_or_default());
    base
}

fn run_char(algebra_args: &AlgebraArgs, lambda: &[i64], graded: bool, out: &OutputArgs) -> Outcome {
    let data = algebra(algebra_args)?;
    let ch = minaff_character(&data, lambda)?;
    let dim = ch.coefficient_sum()?;
    let name = format!("{}{} lambda = {}", data.kind, data.rank, fmt_weight(lambda));
    if graded {
        let slices = minaff_graded(&data, lambda)?;
        let value = with(
            header(&data),
            json!({
                "command": "char",
                "lambda": lambda,
                "graded": true,
                "dimension": dim,
                "slices": slices.iter().map(|(d, f)| json!({ "degree": d.to_string(), "terms": f.to_json() })).collect::<Vec<_>>(),
            }),
        );
        emit(out, value, || {
            let mut s = format!("{name}\n");
            for (d, f) in &slices {
                let _ = writeln!(s, "degree {d}");
                s.push_str(&char_table(f));
            }
            let _ = writeln!(s, "dimension {dim}");
            s
        });
    } else {
        let value = with(
            header(&data),
            json!({ "command": "char", "lambda": lambda, "dimension": dim, "terms": ch.to_json() }),
        );
        emit(out, value, || format!("{name}\n{}dimension {dim}\n", char_table(&ch)));
    }
    Ok(())
}

fn read_char(path: &PathBuf) -> Result<FiniteChar, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let bad = || Failure::Usage("expected an array of {\"weight\": [...], \"coeff\": c}".into());
    let terms = v
        .as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|t| {
            let w = t.get("weight")?.as_array()?.iter().map(Value::as_i64).collect::<Option<Vec<i64>>>()?;
            Some((FiniteWeight(w), t.get("coeff")?.as_i64()?))
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(bad)?;
    Ok(FiniteChar::from_terms(terms)?)
}

fn run_decompose(algebra_args: &AlgebraArgs, lambda: Option<&[i64]>, file: Option<&PathBuf>, out: &OutputArgs) -> Outcome {
    let data = algebra(algebra_args)?;
    let ch = match (lambda, file) {
        (Some(lam), _) => minaff_character(&data, lam)?,
        (None, Some(p)) => read_char(p)?,
        (None, None) => return Err(Failure::Usage("one of --lambda or --from-json is required".into())),
    };
    let m = decompose(&data, &ch)?;
    let value = with(
        header(&data),
        json!({ "command": "decompose", "lambda": lambda, "components": m.to_json(), "total": m.total() }),
    );
    emit(out, value, || mult_table(&m));
    Ok(())
}

fn run_kr(algebra_args: &AlgebraArgs, i: usize, m: i64, out: &OutputArgs) -> Outcome {
    let data = algebra(algebra_args)?;
    let ch = kr_character(&data, i, m)?;
    let mults = decompose(&data, &ch)?;
    let value = with(
        header(&data),
        json!({
            "command": "kr",
            "i": i,
            "m": m,
            "dimension": ch.coefficient_sum()?,
            "components": mults.to_json(),
        }),
    );
    emit(out, value, || format!("{}dimension {}\n", mult_table(&mults), ch.coefficient_sum().unwrap_or(0)));
    Ok(())
}

fn run_limit(algebra_args: &AlgebraArgs, j: &[usize], height: usize, k_max: Option<i64>, out: &OutputArgs) -> Outcome {
    let data = algebra(algebra_args)?;
    let j: BTreeSet<usize> = j.iter().copied().collect();
    let k_max = k_max.unwrap_or(height as i64 + 2);
    if k_max < 1 {
        return Err(Failure::Usage("--k-max must be positive".into()));
    }
    let report = convergence_report(&data, &j, &standard_sequence(&data, &j, k_max), height)?;
    let stable = report.stable_from(height);
    let value = with(
        header(&data),
        with(json!({ "command": "limit-check", "stable_from_height": stable }), report.to_json()),
    );
    emit(out, value, || {
        let mut s = format!("{:<16} {:>8}  per k\n", "beta", "product");
        for r in &report.rows {
            let per_k: Vec<String> = r.per_k.iter().map(i64::to_string).collect();
            let at = r.stabilized_at.map_or("-".to_string(), |k| k.to_string());
            let _ = writeln!(s, "{:<16} {:>8}  {}  stable from k = {at}", fmt_weight(&r.beta), r.product_coeff, per_k.join(" "));
        }
        let _ = writeln!(s, "stable for k >= {height}: {stable}");
        s
    });
    if stable {
        Ok(())
    } else {
        Err(Failure::Lib(Error::Consistency(format!("coefficients differ from the product at some k >= {height}"))))
    }
}

fn run_b44(rank: usize, m: &[i64], out: &OutputArgs) -> Outcome {
    let &[m1, m2, m4] = m else {
        return Err(Failure::Usage("--m takes three values m1,m2,m4".into()));
    };
    if rank < 3 {
        return Err(Failure::Lib(Error::Input(format!("rank {rank} < 3"))));
    }
    if m.iter().any(|&x| x < 0) {
        return Err(Failure::Lib(Error::Input("m1, m2, m4 must be nonnegative".into())));
    }
    let data = build_algebra(Kind::B, rank)?;
    let lambda = b44_lambda(rank, m1, m2, m4);
    let crystal = example_b44(rank, m1, m2, m4)?;
    let demazure = decompose(&data, &minaff_character(&data, &lambda)?)?;
    let closed = b44_closed_form(rank, m1, m2, m4)?;
    if crystal != demazure || closed != demazure {
        return Err(Failure::Lib(Error::Consistency("crystal, Demazure and closed-form counts differ".into())));
    }
    let value = with(
        header(&data),
        json!({ "command": "example-b44", "m": [m1, m2, m4], "lambda": lambda, "components": demazure.to_json() }),
    );
    emit(out, value, || format!("B{rank} lambda = {}\n{}", fmt_weight(&lambda), mult_table(&demazure)));
    Ok(())
}

fn run_rho(algebra_args: &AlgebraArgs, lambda: &[i64], s_max: i64, out: &OutputArgs) -> Outcome {
    let data = algebra(algebra_args)?;
    if s_max < 0 {
        return Err(Failure::Usage("--s-max must be nonnegative".into()));
    }
    let mut rows = Vec::new();
    for a in positive_real_roots(&data, s_max) {
        let rho = rho_check(&data, lambda, &a)?;
        rows.push((a, rho));
    }
    let value = with(
        header(&data),
        json!({
            "command": "rho-check",
            "lambda": lambda,
            "roots": rows.iter().map(|(a, r)| json!({ "beta": a.beta, "s": a.s, "rho": r })).collect::<Vec<_>>(),
        }),
    );
    emit(out, value, || {
        let mut s = format!("{:<20} {:>3} {:>5}\n", "beta", "s", "rho");
        for (a, r) in &rows {
            let _ = writeln!(s, "{:<20} {:>3} {:>5}", fmt_weight(&a.beta), a.s, r);
        }
        s
    });
    Ok(())
}

fn run_selftest() -> Outcome {
    let results = selftest::run();
    for r in &results {
        match &r.failure {
            None => println!("PASS {:<12} {:>7} checks {:>10.2?}", r.name, r.checks, r.elapsed),
            Some(e) => println!("FAIL {:<12} {e} {:>10.2?}", r.name, r.elapsed),
        }
    }
    if results.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(Failure::Suite)
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("AFFINIZE_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("AFFINIZE_THREADS={v:?} is not a nonnegative integer"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_INPUT);
    }
    let outcome = match &cli.command {
        Command::Char { algebra, lambda, graded, out } => run_char(algebra, lambda, *graded, out),
        Command::Decompose { algebra, lambda, from_json, out } => {
            run_decompose(algebra, lambda.as_deref(), from_json.as_ref(), out)
        }
        Command::Kr { algebra, i, m, out } => run_kr(algebra, *i, *m, out),
        Command::LimitCheck { algebra, j, height, k_max, out } => run_limit(algebra, j, *height, *k_max, out),
        Command::ExampleB44 { rank, m, out } => run_b44(*rank, m, out),
        Command::RhoCheck { algebra, lambda, s_max, out } => run_rho(algebra, lambda, *s_max, out),
        Command::Selftest => run_selftest(),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_consistency() { EXIT_CONSISTENCY } else { EXIT_INPUT })
        }
        Err(Failure::Suite) => ExitCode::from(EXIT_CONSISTENCY),
    }
}
