mod langfile;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use vlcode::closure::{
    assert_no_closed_code, embed_delta_closed, er_completion, sigma_closed_completion,
    SearchGuards,
};
use vlcode::codes::{bernoulli_measure, is_code, BernoulliDist};
use vlcode::edit::{apply, closure_brute, sigma_star, EditKind, EditRelation};
use vlcode::indep::{closedness_violation, is_closed, is_independent};
use vlcode::langs::{FiniteLang, RegularLang};
use vlcode::words::{Alphabet, Word};

use langfile::{digest_of, load};
use report::Report;

/// Exit codes: 0 property holds / success, 1 property violated,
/// 2 usage or input error, 3 resource guard tripped.
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<vlcode::Error> for Failure {
    fn from(e: vlcode::Error) -> Self {
        let code = match e {
            vlcode::Error::GuardExceeded { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "vlcode",
    version,
    about = "Analyses of variable-length codes under word edit relations"
)]
struct Cli {
    /// emit the report as JSON
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test independence or closedness under an edit relation
    Check {
        file: PathBuf,
        /// relation as KIND:K (delta, iota, sigma, delta-upto, iota-upto,
        /// sigma-upto, lambda, lambda-strict)
        #[arg(long)]
        relation: String,
        /// test that the relation maps no codeword onto another
        #[arg(long)]
        independent: bool,
        /// test that the relation maps the set into itself
        #[arg(long)]
        closed: bool,
    },
    /// Decide whether the words form a code (unique decipherability)
    Code { file: PathBuf },
    /// Decide completeness: every word is a factor of some message
    Complete { file: PathBuf },
    /// Bernoulli measure of the word set
    Measure {
        file: PathBuf,
        /// "uniform" or comma-separated letter weights such as 1/2,1/4,1/4
        #[arg(long, default_value = "uniform")]
        dist: String,
    },
    /// Substitution orbit of a single word under sigma_k iteration
    Orbit {
        word: String,
        #[arg(long)]
        k: usize,
        /// alphabet symbols, e.g. "ab"; inferred from the word if omitted
        #[arg(long)]
        alphabet: Option<String>,
        /// list the orbit explicitly (guarded at 4096 words)
        #[arg(long)]
        expand: bool,
    },
    /// List the complete closed codes containing the input
    CompleteClosed {
        file: PathBuf,
        /// relation as KIND:K; delta and sigma kinds search, insertion kinds
        /// report why no closed code exists
        #[arg(long)]
        relation: String,
        /// search node budget
        #[arg(long)]
        max_nodes: Option<usize>,
    },
    /// Embed a non-complete code into a complete one
    ErComplete { file: PathBuf },
}

fn parse_relation(text: &str) -> Result<EditRelation, Failure> {
    let Some((name, num)) = text.split_once(':') else {
        return Err(Failure::usage(format!(
            "relation `{text}` must have the form KIND:K"
        )));
    };
    let kind = match name {
        "delta" => EditKind::Delete,
        "iota" => EditKind::Insert,
        "sigma" => EditKind::Substitute,
        "delta-upto" => EditKind::DeleteUpto,
        "iota-upto" => EditKind::InsertUpto,
        "sigma-upto" => EditKind::SubstituteUpto,
        "lambda" => EditKind::Levenshtein,
        "lambda-strict" => EditKind::LevenshteinStrict,
        _ => {
            return Err(Failure::usage(format!(
                "unknown relation kind `{name}`"
            )))
        }
    };
    let budget: usize = num
        .parse()
        .map_err(|_| Failure::usage(format!("relation budget `{num}` is not a number")))?;
    Ok(EditRelation::new(kind, budget)?)
}

fn parse_dist(text: &str, alphabet: &Alphabet) -> Result<BernoulliDist, Failure> {
    if text == "uniform" {
        return Ok(BernoulliDist::uniform(alphabet));
    }
    let weights = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<BigRational>()
                .map_err(|_| Failure::usage(format!("bad weight `{t}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BernoulliDist::new(alphabet, weights)?)
}

fn render_words(words: &[Word], alphabet: &Alphabet) -> Value {
    Value::Array(
        words
            .iter()
            .map(|w| json!(w.render(alphabet)))
            .collect(),
    )
}

fn render_word(w: &Word, alphabet: &Alphabet) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.render(alphabet)
    }
}

/// Witnesses never leave the process unchecked: the pair must really be
/// related and its membership status must match the claim.
fn validate_pair(
    lang: &FiniteLang,
    rel: EditRelation,
    x: &Word,
    y: &Word,
    y_in_lang: bool,
) -> Result<(), Failure> {
    let related = apply(rel, x, lang.alphabet()).contains(y);
    if !lang.contains(x) || !related || lang.contains(y) != y_in_lang {
        return Err(vlcode::Error::VerificationFailed("witness pair does not re-validate".into()).into());
    }
    Ok(())
}

fn cmd_check(
    file: &PathBuf,
    relation: &str,
    independent: bool,
    closed: bool,
    started: Instant,
    as_json: bool,
) -> Result<u8, Failure> {
    if independent == closed {
        return Err(Failure::usage(
            "pass exactly one of --independent / --closed",
        ));
    }
    let loaded = load(file)?;
    let rel = parse_relation(relation)?;
    let lang = &loaded.lang;
    let alphabet = lang.alphabet();
    let mut report = Report::new("check", &loaded.digest);
    report.set("relation", json!(rel.to_string()));
    report.set(
        "property",
        json!(if independent { "independent" } else { "closed" }),
    );
    let (verdict, witness) = if independent {
        let result = is_independent(lang, rel);
        (result.independent, result.violation)
    } else {
        (is_closed(lang, rel), closedness_violation(lang, rel))
    };
    report.set("verdict", json!(verdict));
    if !verdict {
        let (x, y) = witness.expect("violation carries a witness");
        validate_pair(lang, rel, &x, &y, independent)?;
        report.set("witness_from", json!(render_word(&x, alphabet)));
        report.set("witness_to", json!(render_word(&y, alphabet)));
    }
    report.print(started, as_json);
    Ok(if verdict { 0 } else { 1 })
}

fn cmd_code(file: &PathBuf, started: Instant, as_json: bool) -> Result<u8, Failure> {
    let loaded = load(file)?;
    let lang = &loaded.lang;
    let alphabet = lang.alphabet();
    let result = is_code(lang)?;
    let mut report = Report::new("code", &loaded.digest);
    report.set("verdict", json!(result.is_code));
    if let Some((left, right)) = &result.counterexample {
        let concat = |ws: &[Word]| ws.iter().fold(Word::empty(), |acc, w| acc.concat(w));
        let ok = concat(left) == concat(right)
            && left != right
            && left.iter().chain(right).all(|w| lang.contains(w));
        if !ok {
            return Err(
                vlcode::Error::VerificationFailed("counterexample does not re-validate".into())
                    .into(),
            );
        }
        report.set(
            "ambiguous_word",
            json!(render_word(&concat(left), alphabet)),
        );
        report.set("factorization_a", render_words(left, alphabet));
        report.set("factorization_b", render_words(right, alphabet));
    }
    report.print(started, as_json);
    Ok(if result.is_code { 0 } else { 1 })
}

fn cmd_complete(file: &PathBuf, started: Instant, as_json: bool) -> Result<u8, Failure> {
    let loaded = load(file)?;
    let regular = RegularLang::from_finite(&loaded.lang);
    let complete = regular.is_complete();
    let mut report = Report::new("complete", &loaded.digest);
    report.set("verdict", json!(complete));
    if !complete {
        let witness = regular.shortest_external_witness()?;
        if regular.star().factor_language().contains(&witness) {
            return Err(
                vlcode::Error::VerificationFailed("external witness does not re-validate".into())
                    .into(),
            );
        }
        report.set(
            "external_witness",
            json!(render_word(&witness, loaded.lang.alphabet())),
        );
    }
    report.print(started, as_json);
    Ok(if complete { 0 } else { 1 })
}

fn cmd_measure(
    file: &PathBuf,
    dist: &str,
    started: Instant,
    as_json: bool,
) -> Result<u8, Failure> {
    let loaded = load(file)?;
    let dist = parse_dist(dist, loaded.lang.alphabet())?;
    let measure = bernoulli_measure(&loaded.lang, &dist);
    let mut report = Report::new("measure", &loaded.digest);
    report.set("measure", json!(measure.to_string()));
    report.set("is_one", json!(measure.is_one()));
    report.print(started, as_json);
    Ok(0)
}

fn cmd_orbit(
    word: &str,
    k: usize,
    alphabet: &Option<String>,
    expand: bool,
    started: Instant,
    as_json: bool,
) -> Result<u8, Failure> {
    let symbols: Vec<char> = match alphabet {
        Some(s) => s.chars().collect(),
        None => {
            let mut seen: Vec<char> = word.chars().collect();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() < 2 {
                return Err(Failure::usage(
                    "cannot infer an alphabet from the word; pass --alphabet",
                ));
            }
            seen
        }
    };
    let alphabet = Alphabet::new(symbols)?;
    let w = Word::parse(word, &alphabet)?;
    let descriptor = sigma_star(&w, k, &alphabet)?;
    let cardinality = descriptor.cardinality(&alphabet);
    let mut report = Report::new("orbit", &digest_of(word.as_bytes()));
    report.set("word", json!(word));
    report.set("k", json!(k));
    report.set("descriptor", json!(descriptor.render(&alphabet)));
    report.set("cardinality", json!(cardinality.to_string()));
    if expand {
        if cardinality > 4096u32.into() {
            return Err(vlcode::Error::GuardExceeded {
                what: "orbit expansion",
                bound: 4096,
                actual: usize::MAX,
            }
            .into());
        }
        let expanded = descriptor.expand(&alphabet)?;
        // cross-check the symbolic orbit against the brute-force closure
        let rel = EditRelation::new(EditKind::Substitute, k)?;
        let brute = closure_brute(
            rel,
            &FiniteLang::new(alphabet.clone(), [w.clone()]),
            w.len(),
        )?;
        if expanded.render() != brute.words.render() {
            return Err(
                vlcode::Error::VerificationFailed("orbit expansion does not re-validate".into())
                    .into(),
            );
        }
        let words: Vec<Word> = expanded.words().cloned().collect();
        report.set("orbit", render_words(&words, &alphabet));
    }
    report.print(started, as_json);
    Ok(0)
}

fn cmd_complete_closed(
    file: &PathBuf,
    relation: &str,
    max_nodes: Option<usize>,
    started: Instant,
    as_json: bool,
) -> Result<u8, Failure> {
    let loaded = load(file)?;
    let rel = parse_relation(relation)?;
    let lang = &loaded.lang;
    let mut guards = SearchGuards::default();
    if let Some(n) = max_nodes {
        guards.max_nodes = n;
    }
    let mut report = Report::new("complete-closed", &loaded.digest);
    report.set("relation", json!(rel.to_string()));
    let candidates = match rel.kind {
        EditKind::Delete => embed_delta_closed(lang, rel.budget, guards)?,
        EditKind::Substitute => sigma_closed_completion(lang, rel.budget, guards)?,
        EditKind::Insert | EditKind::InsertUpto | EditKind::DeleteUpto => {
            let violation = assert_no_closed_code(lang, rel)?;
            report.set("candidates", json!([]));
            report.set("count", json!(0));
            report.set("impossible", json!(true));
            report.set(
                "witness",
                json!(render_word(&violation.witness, lang.alphabet())),
            );
            report.set("explanation", json!(violation.description));
            report.print(started, as_json);
            return Ok(0);
        }
        _ => {
            return Err(Failure::usage(format!(
                "relation `{rel}` has no closed-completion search"
            )))
        }
    };
    let uniform = BernoulliDist::uniform(lang.alphabet());
    for candidate in &candidates {
        let valid = is_code(candidate)?.is_code
            && is_closed(candidate, rel)
            && bernoulli_measure(candidate, &uniform).is_one()
            && lang.is_subset(candidate);
        if !valid {
            return Err(
                vlcode::Error::VerificationFailed("candidate does not re-validate".into()).into(),
            );
        }
    }
    report.set(
        "candidates",
        Value::Array(candidates.iter().map(|c| json!(c.render())).collect()),
    );
    report.set("count", json!(candidates.len()));
    report.print(started, as_json);
    Ok(0)
}

fn cmd_er_complete(file: &PathBuf, started: Instant, as_json: bool) -> Result<u8, Failure> {
    let loaded = load(file)?;
    let lang = &loaded.lang;
    let alphabet = lang.alphabet();
    let regular = RegularLang::from_finite(lang);
    let done = er_completion(&regular)?;
    let mut report = Report::new("er-complete", &loaded.digest);
    report.set("external_witness", json!(render_word(&done.witness, alphabet)));
    report.set("glue_word", json!(render_word(&done.y, alphabet)));
    let codewords: Vec<String> = lang.words().map(|w| w.render(alphabet)).collect();
    let y = done.y.render(alphabet);
    let expression = format!(
        "({})|{y}(({}){y})*",
        codewords.join("|"),
        done.u.to_regex(),
    );
    report.set("expression", json!(expression));
    report.set("is_code", json!(true));
    report.set("is_complete", json!(true));
    report.set("dot", json!(done.language.to_dot("completion")));
    report.print(started, as_json);
    Ok(0)
}

fn run(cli: &Cli, started: Instant) -> Result<u8, Failure> {
    match &cli.command {
        Command::Check {
            file,
            relation,
            independent,
            closed,
        } => cmd_check(file, relation, *independent, *closed, started, cli.json),
        Command::Code { file } => cmd_code(file, started, cli.json),
        Command::Complete { file } => cmd_complete(file, started, cli.json),
        Command::Measure { file, dist } => cmd_measure(file, dist, started, cli.json),
        Command::Orbit {
            word,
            k,
            alphabet,
            expand,
        } => cmd_orbit(word, *k, alphabet, *expand, started, cli.json),
        Command::CompleteClosed {
            file,
            relation,
            max_nodes,
        } => cmd_complete_closed(file, relation, *max_nodes, started, cli.json),
        Command::ErComplete { file } => cmd_er_complete(file, started, cli.json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli, started) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
