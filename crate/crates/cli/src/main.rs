use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use morphoword::oracle::{verify_classification, verify_language, verify_pushy, CrossCheck, OracleBounds};
use morphoword::{
    lower_mechanical_word, purely_morphic_language_upto, pushy_power_check, pushy_witness, Error, ExactNumber,
    InfiniteWord, Limits, Morphism, Periodicity, Word,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "morphoword", version, about = "Generate and analyse morphic and mechanical words")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print a prefix of an infinite word.
    Gen {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        length: u64,
    },
    /// Factor complexity p(n) for n = 0..=max-n.
    Complexity {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        /// Prefix length scanned for factors.
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        window: u64,
    },
    /// Mortal / bounded immortal / growing class of every letter.
    Classify {
        #[command(flatten)]
        morphism: MorphismArg,
        /// Cross-check against the brute-force oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Whether the purely morphic language of the axiom is pushy.
    Pushy {
        #[command(flatten)]
        morphism: MorphismArg,
        #[arg(long)]
        axiom: String,
        /// Also decide pushiness for the (p+1)-th power.
        #[arg(long)]
        power: Option<usize>,
        #[arg(long)]
        verify: bool,
    },
    /// Factors of length at most max-n of the purely morphic language.
    Language {
        #[command(flatten)]
        morphism: MorphismArg,
        #[arg(long)]
        axiom: String,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Iteration depth used for erasing morphisms.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        verify: bool,
    },
    /// Periodicity of a prefix.
    Period {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        max_period: u64,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        window: u64,
    },
}

#[derive(Args)]
struct MorphismArg {
    /// Rule file, or inline rules such as "a->a b; b->a".
    #[arg(long)]
    morphism: String,
}

#[derive(Args)]
struct Source {
    /// Rule file, or inline rules; use with --fix.
    #[arg(long, requires = "fix", conflicts_with_all = ["cycle", "alpha"])]
    morphism: Option<String>,
    /// Letter whose fixed point is generated.
    #[arg(long, requires = "morphism")]
    fix: Option<String>,
    /// Word repeated forever.
    #[arg(long, conflicts_with = "alpha")]
    cycle: Option<String>,
    /// Slope of a lower mechanical word: p, p/q or (a+b*sqrt(d))/c.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Intercept of the mechanical word.
    #[arg(long, requires = "alpha", allow_hyphen_values = true, default_value = "0")]
    beta: String,
}

enum Failure {
    Usage(String),
    Math(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::NumberLiteral(_)
            | Error::UnknownLetter(_)
            | Error::DuplicateLetter(_)
            | Error::EmptyAlphabet
            | Error::EmptyWord(_)
            | Error::ZeroDenominator
            | Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn load_morphism(arg: &str) -> Result<Morphism, Failure> {
    let text = if arg.contains("->") {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?
    };
    Ok(Morphism::parse(&text)?)
}

fn number(text: &str) -> Result<ExactNumber, Failure> {
    Ok(text.parse::<ExactNumber>()?)
}

impl Source {
    fn open(&self) -> Result<InfiniteWord, Failure> {
        if let (Some(m), Some(fix)) = (&self.morphism, &self.fix) {
            let f = load_morphism(m)?;
            let a = f.source().letter(fix)?;
            return Ok(InfiniteWord::fixed_point(&f, a)?);
        }
        if let Some(u) = &self.cycle {
            let alphabet = morphoword::Alphabet::from_chars(&dedup_chars(u))?;
            return Ok(InfiniteWord::cycle(&alphabet.parse_word(u)?)?);
        }
        if let Some(alpha) = &self.alpha {
            return Ok(lower_mechanical_word(&number(alpha)?, &number(&self.beta)?)?);
        }
        Err(Failure::Usage("one of --morphism/--fix, --cycle or --alpha is required".into()))
    }
}

/// Letters of `u` in order of first appearance.
fn dedup_chars(u: &str) -> String {
    let mut out = String::new();
    for c in u.chars().filter(|c| !c.is_whitespace()) {
        if !out.contains(c) {
            out.push(c);
        }
    }
    out
}

fn render_json(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("json value")
}

fn gen(source: &Source, length: u64, format: Format) -> Outcome {
    let w = source.open()?.take(length as usize)?;
    let names: Vec<&str> = w.letters().iter().map(|&l| w.alphabet().name(l)).collect();
    Ok(match format {
        Format::Text => w.dump(),
        Format::Csv => {
            let mut out = String::from("index,letter");
            for (i, name) in names.iter().enumerate() {
                write!(out, "\n{i},{name}").unwrap();
            }
            out
        }
        Format::Json => render_json(json!({ "length": names.len(), "letters": names })),
    })
}

fn complexity(source: &Source, max_n: usize, window: u64, format: Format) -> Outcome {
    let mut s = source.open()?;
    let window = (window as usize).max(max_n);
    let rows = (0..=max_n)
        .map(|n| s.factor_complexity(n, window).map(|c| (n, c.count, c.exact)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(match format {
        Format::Text => rows
            .iter()
            .map(|(n, p, exact)| format!("p({n}) = {p}{}", if *exact { "" } else { " (lower bound)" }))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Csv => std::iter::once("n,p,complete".to_string())
            .chain(rows.iter().map(|(n, p, exact)| format!("{n},{p},{exact}")))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => render_json(Value::Array(
            rows.iter()
                .map(|(n, p, exact)| json!({ "n": n, "p": p, "complete": exact }))
                .collect(),
        )),
    })
}

fn report_mismatch(checks: impl IntoIterator<Item = CrossCheck>, format: Format) -> Result<&'static str, Failure> {
    let mut inconclusive = false;
    for c in checks {
        match c {
            CrossCheck::Agree => {}
            CrossCheck::Inconclusive => inconclusive = true,
            CrossCheck::Disagree(report) => {
                return Err(Failure::Mismatch(match format {
                    Format::Json => report.to_json(),
                    _ => report.to_string(),
                }))
            }
        }
    }
    Ok(if inconclusive { "inconclusive" } else { "agree" })
}

fn classify(arg: &MorphismArg, verify: bool, format: Format) -> Outcome {
    let f = load_morphism(&arg.morphism)?;
    let classes = f.classify_letters()?;
    let oracle = if verify {
        Some(report_mismatch(verify_classification(&f, &OracleBounds::default())?, format)?)
    } else {
        None
    };
    let rows: Vec<(&str, &str)> = f.source().letters().map(|a| (f.source().name(a), classes.class(a).label())).collect();
    Ok(match format {
        Format::Text => {
            let mut out: Vec<String> = rows.iter().map(|(a, c)| format!("{a}: {c}")).collect();
            if let Some(o) = oracle {
                out.push(format!("oracle: {o}"));
            }
            out.join("\n")
        }
        Format::Csv => std::iter::once("letter,class".to_string())
            .chain(rows.iter().map(|(a, c)| format!("{a},{c}")))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => {
            let letters: Vec<Value> = rows.iter().map(|(a, c)| json!({ "letter": a, "class": c })).collect();
            let mut v = json!({ "letters": letters });
            if let Some(o) = oracle {
                v["oracle"] = json!(o);
            }
            render_json(v)
        }
    })
}

fn pushy(arg: &MorphismArg, axiom: &str, power: Option<usize>, verify: bool, format: Format) -> Outcome {
    let f = load_morphism(&arg.morphism)?;
    let axiom = f.source().parse_word(axiom)?;
    let witness = pushy_witness(&f, &axiom)?;
    let mut rows = vec![(1usize, witness.is_some())];
    if let Some(p) = power {
        let check = pushy_power_check(&f, &axiom, p)?;
        if let Some(report) = check.counterexample {
            return Err(Failure::Mismatch(report.to_string()));
        }
        rows.push((check.exponent, check.power));
    }
    let oracle = if verify {
        Some(report_mismatch([verify_pushy(&f, &axiom, &OracleBounds::default())?], format)?)
    } else {
        None
    };
    let label = |e: usize| if e == 1 { "pushy".to_string() } else { format!("pushy(f^{e})") };
    Ok(match format {
        Format::Text => {
            let mut out: Vec<String> = rows.iter().map(|(e, v)| format!("{}={v}", label(*e))).collect();
            if let Some(w) = &witness {
                out.push(format!("witness: {}", w.describe(f.source())));
            }
            if let Some(o) = oracle {
                out.push(format!("oracle: {o}"));
            }
            out.join("\n")
        }
        Format::Csv => std::iter::once("exponent,pushy".to_string())
            .chain(rows.iter().map(|(e, v)| format!("{e},{v}")))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => {
            let results: Vec<Value> = rows.iter().map(|(e, v)| json!({ "exponent": e, "pushy": v })).collect();
            let mut v = json!({ "results": results });
            if let Some(w) = &witness {
                v["witness"] = json!(w.describe(f.source()));
            }
            if let Some(o) = oracle {
                v["oracle"] = json!(o);
            }
            render_json(v)
        }
    })
}

fn language(arg: &MorphismArg, axiom: &str, max_n: usize, depth: Option<usize>, verify: bool, format: Format) -> Outcome {
    let f = load_morphism(&arg.morphism)?;
    let axiom = f.source().parse_word(axiom)?;
    let mut limits = Limits::from_env()?;
    if let Some(d) = depth {
        limits = limits.with_depth(d);
    }
    let sample = purely_morphic_language_upto(&f, &axiom, max_n, &limits)?;
    let oracle = if verify {
        Some(report_mismatch([verify_language(&f, &axiom, max_n, &OracleBounds::default())?], format)?)
    } else {
        None
    };
    let words: Vec<Word> = sample.sorted();
    Ok(match format {
        Format::Text => {
            let mut out = vec![format!("complete={} words={}", sample.is_complete(), words.len())];
            out.extend(words.iter().map(Word::to_string));
            if let Some(o) = oracle {
                out.push(format!("oracle: {o}"));
            }
            out.join("\n")
        }
        Format::Csv => std::iter::once("length,word,complete".to_string())
            .chain(words.iter().map(|w| format!("{},{},{}", w.len(), w, sample.is_complete())))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => {
            let list: Vec<String> = words.iter().map(Word::to_string).collect();
            let mut v = json!({ "complete": sample.is_complete(), "length_bound": max_n, "words": list });
            if let Some(o) = oracle {
                v["oracle"] = json!(o);
            }
            render_json(v)
        }
    })
}

fn period(source: &Source, max_period: u64, window: u64, format: Format) -> Outcome {
    let report = source.open()?.detect_periodicity(max_period as usize, window as usize)?;
    let (status, preperiod, period) = match report.status {
        Periodicity::PurelyPeriodic { period } => ("PurelyPeriodic", Some(0), Some(period)),
        Periodicity::EventuallyPeriodic { preperiod, period } => ("EventuallyPeriodic", Some(preperiod), Some(period)),
        Periodicity::NoPeriodFound { .. } => ("NoPeriodFound", None, None),
    };
    let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
    Ok(match format {
        Format::Text => report.to_string(),
        Format::Csv => format!("status,preperiod,period\n{status},{},{}", opt(preperiod), opt(period)),
        Format::Json => render_json(json!({ "status": status, "preperiod": preperiod, "period": period })),
    })
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match &cli.command {
        Command::Gen { source, length } => gen(source, *length, format),
        Command::Complexity { source, max_n, window } => complexity(source, *max_n, *window, format),
        Command::Classify { morphism, verify } => classify(morphism, *verify, format),
        Command::Pushy {
            morphism,
            axiom,
            power,
            verify,
        } => pushy(morphism, axiom, *power, *verify, format),
        Command::Language {
            morphism,
            axiom,
            max_n,
            depth,
            verify,
        } => language(morphism, axiom, *max_n, *depth, *verify, format),
        Command::Period {
            source,
            max_period,
            window,
        } => period(source, *max_period, *window, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(report)) => {
            eprintln!("{report}");
            ExitCode::from(3)
        }
    }
}
