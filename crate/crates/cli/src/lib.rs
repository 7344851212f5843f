//! `fg`: batch commands over automaton files.
//!
//! Exit codes: 0 success, 1 malformed input, 2 precondition violation,
//! 3 verification mismatch.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use fg_core::automaton::{check_speciality, make_family, prepare, Automaton, AutomatonError, FamilySpec, SpecialKind};
use fg_core::decompose::{
    classify, decompose, monoid_generators, split_saturated, Classification, DecomposeError, PieceKind, ThickWitness,
};
use fg_core::freegroup::{Letter, Word};
use fg_core::measures::{
    cesaro_mu0, genfunc_algi, lambda_algii, lambda_by_pieces, lambda_eval, ratio_text, verify_fidelity,
    FrequencySeries, MeasureError,
};
use fg_core::oracle::{compare_series, Oracle, OracleError};
use fg_core::{RatFunc, Rational};
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

#[derive(Parser, Debug)]
#[command(name = "fg", version, about = "Asymptotic invariants of regular subsets of free groups")]
struct Cli {
    /// Print one JSON document on standard output instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Frequency generating function g(t).
    Genfunc { file: PathBuf },
    /// Cesaro density, minus the residue of g at t = 1.
    Mu0 { file: PathBuf },
    /// λ-measure of an exponentially negligible set.
    Lambda {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Eval)]
        method: Method,
    },
    /// Thick or exponentially negligible, with a witness for thick sets.
    Classify {
        file: PathBuf,
        /// Depth of the enumeration that confirms the witness.
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Pieces accepted by special automata.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// R = R1 ∘ R2, R2 = (R3)* for a special automaton.
    Split { file: PathBuf },
    /// Generators of the monoid of a special automaton, up to a length.
    Generators {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Build one of the standard families.
    Make {
        family: String,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long)]
        word: Option<String>,
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        handles: Option<Vec<String>>,
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Compare g with brute-force frequencies.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// Check the published closed forms against ground truth.
    Errata {
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Method {
    Eval,
    Chain,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Precondition(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Precondition(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Precondition(m) => m,
        }
    }
}

impl From<AutomatonError> for Failure {
    fn from(e: AutomatonError) -> Self {
        match e {
            AutomatonError::Malformed(_)
            | AutomatonError::Json(_)
            | AutomatonError::Word(_)
            | AutomatonError::InvalidSpec(_) => Failure::Input(e.to_string()),
            other => Failure::Precondition(other.to_string()),
        }
    }
}

impl From<MeasureError> for Failure {
    fn from(e: MeasureError) -> Self {
        match e {
            MeasureError::Automaton(a) => a.into(),
            other => Failure::Precondition(other.to_string()),
        }
    }
}

impl From<DecomposeError> for Failure {
    fn from(e: DecomposeError) -> Self {
        match e {
            DecomposeError::Automaton(a) => a.into(),
            DecomposeError::Measure(m) => m.into(),
            other => Failure::Precondition(other.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Measure(m) => m.into(),
            other => Failure::Precondition(other.to_string()),
        }
    }
}

struct Output {
    code: i32,
    text: String,
    json: Value,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { code: 0, text, json }
    }
}

/// Parse `argv` (including the program name) and execute the command.
pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return CommandResult { code, json: json!({ "error": text.trim_end() }), text };
        }
    };
    match execute(&cli.command) {
        Ok(out) => CommandResult { code: out.code, text: out.text, json: out.json },
        Err(f) => CommandResult {
            code: f.code(),
            text: format!("error: {}\n", f.message()),
            json: json!({ "error": f.message() }),
        },
    }
}

fn execute(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Genfunc { file } => {
            let g = series(&load(file)?)?;
            Ok(Output::ok(format!("{}\n", g.g), json!({ "g": g.g.to_string() })))
        }
        Command::Mu0 { file } => {
            let mu0 = cesaro_mu0(&series(&load(file)?)?)?;
            Ok(Output::ok(format!("{mu0}\n"), json!({ "mu0": ratio_text(&mu0) })))
        }
        Command::Lambda { file, method } => {
            let a = load(file)?;
            let lambda: Rational = match method {
                Method::Eval => lambda_eval(&series(&a)?)?,
                Method::Chain => lambda_chain(&a)?,
            };
            Ok(Output::ok(format!("{lambda}\n"), json!({ "lambda": ratio_text(&lambda) })))
        }
        Command::Classify { file, depth } => classify_cmd(&load(file)?, *depth),
        Command::Decompose { file, out } => decompose_cmd(&load(file)?, out.as_deref()),
        Command::Split { file } => split_cmd(&load(file)?),
        Command::Generators { file, depth } => generators_cmd(&load(file)?, *depth),
        Command::Make { family, m, word, handles, radius } => {
            let spec = family_spec(family, word.as_deref(), handles.as_deref(), *radius)?;
            let a = make_family(&spec, *m)?;
            let text = a.to_json();
            let json: Value = serde_json::from_str(&text).expect("automaton JSON is valid");
            Ok(Output::ok(format!("{text}\n"), json))
        }
        Command::Verify { file, depth } => verify_cmd(&load(file)?, *depth),
        Command::Errata { m, depth } => errata_cmd(*m, *depth),
    }
}

fn load(path: &Path) -> Result<Automaton, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Automaton::from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn series(a: &Automaton) -> Result<FrequencySeries<Rational>, Failure> {
    match prepare(a) {
        Ok(p) => Ok(genfunc_algi(&p)?),
        Err(AutomatonError::EmptyLanguage) if a.rank() >= 2 => Ok(FrequencySeries::zero(a.rank())),
        Err(AutomatonError::EmptyLanguage) => Err(MeasureError::RankTooSmall(a.rank()).into()),
        Err(e) => Err(e.into()),
    }
}

fn lambda_chain(a: &Automaton) -> Result<Rational, Failure> {
    if check_speciality(a).kind == SpecialKind::SpecialOverGroup {
        Ok(lambda_algii(a)?)
    } else {
        Ok(lambda_by_pieces(a)?)
    }
}

/// `a` itself when it is special over the group, else its prepared form.
fn special_form(a: &Automaton) -> Result<Automaton, Failure> {
    if check_speciality(a).kind == SpecialKind::SpecialOverGroup {
        return Ok(a.clone());
    }
    let p = prepare(a)?;
    match check_speciality(&p).kind {
        SpecialKind::SpecialOverGroup => Ok(p),
        kind => Err(Failure::Precondition(format!("the automaton is not special over the group ({kind:?})"))),
    }
}

fn genfunc_text(a: &Automaton) -> Result<String, Failure> {
    Ok(series(a)?.g.to_string())
}

fn classify_cmd(a: &Automaton, depth: usize) -> Result<Output, Failure> {
    match classify(a)? {
        Classification::ExponentiallyNegligible => {
            Ok(Output::ok("exponentially negligible\n".into(), json!({ "class": "exponentially negligible" })))
        }
        Classification::Thick(mu0) => {
            let ThickWitness::Witness { w, t, depth } = fg_core::decompose::witness_thick(a, depth)? else {
                return Err(Failure::Precondition("thick set without a witness".into()));
            };
            let monoid: Value = serde_json::from_str(&t.to_json()).expect("automaton JSON is valid");
            let text =
                format!("thick, mu0 = {mu0}\nwitness: {w} ∘ L(T) ⊆ L, checked to length {depth}\n{}\n", t.to_json());
            Ok(Output::ok(
                text,
                json!({
                    "class": "thick",
                    "mu0": ratio_text(&mu0),
                    "witness": { "w": w.to_string(), "monoid": monoid, "depth": depth },
                }),
            ))
        }
    }
}

fn kind_name(kind: PieceKind) -> &'static str {
    match kind {
        PieceKind::SpecialOverGroup => "special",
        PieceKind::SpecialMonoid => "special-monoid",
        PieceKind::TrivialIdentity => "identity",
    }
}

fn decompose_cmd(a: &Automaton, out: Option<&Path>) -> Result<Output, Failure> {
    let pieces = match decompose(a) {
        Ok(d) => d.pieces,
        Err(DecomposeError::EmptyLanguage) => Vec::new(),
        Err(e) => return Err(e.into()),
    };
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    }
    let mut sum = RatFunc::zero();
    let mut entries = Vec::new();
    let mut text = String::new();
    for (i, piece) in pieces.iter().enumerate() {
        let g = series(&piece.automaton)?.g;
        sum = &sum + &g;
        let file = format!("piece_{i:03}.json");
        if let Some(dir) = out {
            write(&dir.join(&file), &piece.automaton.to_json())?;
        }
        text.push_str(&format!(
            "piece {i}: {} ({} states), g = {g}\n",
            kind_name(piece.kind),
            piece.automaton.n_states()
        ));
        entries.push(json!({ "file": file, "kind": kind_name(piece.kind), "states": piece.automaton.n_states(), "g": g.to_string() }));
    }
    text.push_str(&format!("sum: {sum}\n"));
    let manifest = json!({ "pieces": entries, "g_sum": sum.to_string() });
    if let Some(dir) = out {
        write(&dir.join("manifest.json"), &serde_json::to_string_pretty(&manifest).expect("manifest serializes"))?;
    }
    Ok(Output::ok(text, manifest))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, format!("{contents}\n")).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn split_cmd(a: &Automaton) -> Result<Output, Failure> {
    let s = special_form(a)?;
    let split = split_saturated(&s)?;
    let g1 = genfunc_text(&split.a1)?;
    let mut text = format!("saturated: {}\nA1: g = {g1}\n", if split.saturated { "yes" } else { "no" });
    let mut json = json!({
        "saturated": split.saturated,
        "a1": { "g": g1, "automaton": automaton_value(&split.a1) },
    });
    if let (Some(a2), Some(a3)) = (&split.a2, &split.a3) {
        let g2 = series_of_monoid(a2)?;
        let g3 = genfunc_text(a3)?;
        text.push_str(&format!("A2: g = {g2}\nA3: g = {g3}\n"));
        json["a2"] = json!({ "g": g2, "automaton": automaton_value(a2) });
        json["a3"] = json!({ "g": g3, "automaton": automaton_value(a3) });
    }
    Ok(Output::ok(text, json))
}

/// The series of a monoid automaton counts the identity.
fn series_of_monoid(a2: &Automaton) -> Result<String, Failure> {
    Ok(genfunc_algi::<Rational>(a2)?.g.to_string())
}

fn automaton_value(a: &Automaton) -> Value {
    serde_json::from_str(&a.to_json()).expect("automaton JSON is valid")
}

fn generators_cmd(a: &Automaton, depth: usize) -> Result<Output, Failure> {
    let monoid = if check_speciality(a).kind == SpecialKind::SpecialMonoid {
        a.clone()
    } else {
        match split_saturated(&special_form(a)?)?.a2 {
            Some(a2) => a2,
            None => return Err(Failure::Precondition("the final state has no outgoing arrows".into())),
        }
    };
    let gens = monoid_generators(&monoid, depth)?;
    let words: Vec<String> = gens.iter().map(Word::to_string).collect();
    let mut text: String = words.iter().map(|w| format!("{w}\n")).collect();
    if text.is_empty() {
        text.push_str("(none)\n");
    }
    Ok(Output::ok(text, json!({ "depth": depth, "generators": words })))
}

fn verify_cmd(a: &Automaton, depth: usize) -> Result<Output, Failure> {
    let g = series(a)?;
    let fp = Oracle::default().frequencies(a, depth)?;
    let report = compare_series(&g, &fp)?;
    let freqs = serde_json::to_value(&fp).expect("frequencies serialize");
    match report.first_mismatch {
        None => Ok(Output::ok(
            format!("g = {} agrees with enumeration to k={depth}\n", g.g),
            json!({ "g": g.g.to_string(), "agrees": true, "oracle": freqs }),
        )),
        Some((k, series, oracle)) => Ok(Output {
            code: 3,
            text: format!("mismatch at k={k}: series {series}, enumeration {oracle}\n"),
            json: json!({
                "g": g.g.to_string(),
                "agrees": false,
                "first_mismatch": { "k": k, "series": ratio_text(&series), "oracle": ratio_text(&oracle) },
                "oracle": freqs,
            }),
        }),
    }
}

fn errata_families() -> Vec<FamilySpec> {
    let (x1, big_x1, x2) = (Letter::gen(1), Letter::inv(1), Letter::gen(2));
    let w = |ls: &[Letter]| Word::new(ls.to_vec()).expect("reduced");
    vec![
        FamilySpec::Full,
        FamilySpec::FullNontrivial,
        FamilySpec::Cone(w(&[x1, x2])),
        FamilySpec::BallComplement(2),
        FamilySpec::EvenSubgroup,
        FamilySpec::DoubleCone(w(&[x1]), w(&[x1])),
        FamilySpec::DoubleCone(w(&[x1]), w(&[big_x1])),
        FamilySpec::DoubleCone(w(&[x1]), w(&[x2])),
        FamilySpec::ThickMonoidM(x1),
    ]
}

fn errata_cmd(m: u32, depth: usize) -> Result<Output, Failure> {
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut first: Option<String> = None;
    for family in errata_families() {
        let r = verify_fidelity::<Rational>(&family, m, depth)?;
        text.push_str(&format!("{r}\n"));
        if first.is_none() {
            if let Some(mm) = &r.first_mismatch {
                first = Some(format!("{} at k={}", r.family, mm.k));
            }
        }
        rows.push(json!({
            "family": r.family,
            "agrees": r.agrees(),
            "first_mismatch": r.first_mismatch.as_ref().map(|mm| json!({
                "k": mm.k,
                "ground_truth": ratio_text(&mm.truth),
                "closed_form": ratio_text(&mm.closed_form),
            })),
            "mu0_ground_truth": ratio_text(&r.mu0_truth),
            "mu0_closed_form": ratio_text(&r.mu0_closed_form),
        }));
    }
    let code = if rows.iter().all(|r| r["agrees"] == true) { 0 } else { 3 };
    match &first {
        Some(f) => text.push_str(&format!("first mismatch: {f}\n")),
        None => text.push_str("all closed forms agree\n"),
    }
    Ok(Output { code, text, json: json!({ "m": m, "depth": depth, "families": rows, "first_mismatch": first }) })
}

fn parse_word(s: &str) -> Result<Word, Failure> {
    s.parse().map_err(|e| Failure::Input(format!("word `{s}`: {e}")))
}

fn family_spec(
    name: &str,
    word: Option<&str>,
    handles: Option<&[String]>,
    radius: Option<usize>,
) -> Result<FamilySpec, Failure> {
    let need_word = || word.ok_or_else(|| Failure::Input(format!("`{name}` needs --word")));
    let need_letter = || -> Result<Letter, Failure> {
        match parse_word(need_word()?)?.letters() {
            [l] => Ok(*l),
            _ => Err(Failure::Input(format!("`{name}` needs a one-letter --word"))),
        }
    };
    Ok(match name {
        "full" => FamilySpec::Full,
        "nontrivial" => FamilySpec::FullNontrivial,
        "cone" => FamilySpec::Cone(parse_word(need_word()?)?),
        "rcone" => FamilySpec::RightCone(parse_word(need_word()?)?),
        "singleton" => FamilySpec::Singleton(parse_word(need_word()?)?),
        "dcone" => match handles {
            Some([u, v]) => FamilySpec::DoubleCone(parse_word(u)?, parse_word(v)?),
            _ => return Err(Failure::Input("`dcone` needs --handles U V".into())),
        },
        "gcone" => FamilySpec::GeneralizedCone(need_letter()?),
        "thickmonoid" => FamilySpec::ThickMonoidM(need_letter()?),
        "ballcomp" => {
            FamilySpec::BallComplement(radius.ok_or_else(|| Failure::Input("`ballcomp` needs --radius".into()))?)
        }
        "even" => FamilySpec::EvenSubgroup,
        other => return Err(Failure::Input(format!("unknown family `{other}`"))),
    })
}
