use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use purecycle::bijection::{phi_labeled, psi_on, unique_labeling};
use purecycle::factorization::{
    count_by_cycle_index, count_factorizations, enumerate_factorizations, factorial,
    hurwitz_count_bruteforce, CountMethod, FactorizationType, HurwitzDatum, DEFAULT_FACTORIZATION_CAP,
    DEFAULT_HURWITZ_CAP,
};
use purecycle::graph::{graph_of_default, FactorizationGraph};
use purecycle::mnr::{enumerate_mnr, mnr_decode, mnr_encode, prufer_decode, RootedTree};
use num_bigint::BigUint;
use num_rational::BigRational;
use purecycle::{dot, json, verify, Cycle, Error, Factorization, LabeledMnr, MultiNodedRootedTree, PruferMatrix};

const EXIT_VERIFY: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "purecycle", version, about = "Pure-cycle factorizations of a long cycle and their tree bijection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count factorizations of (1 2 ... d) of a given type or cycle index.
    Count(CountArgs),
    /// Stream factorizations, graphs or multi-noded trees as JSON lines.
    Enumerate(EnumerateArgs),
    /// Convert between factorization, graph, labeled tree, tree and Prüfer matrix.
    Convert(ConvertArgs),
    /// Run the exhaustive verification suite.
    Verify(VerifyArgs),
    /// Render a graph or tree as Graphviz DOT.
    Export(ExportArgs),
    /// Encode or decode (generalized) Prüfer codes.
    Prufer(PruferArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    BruteForce,
    Formula,
    Bijection,
    All,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    d: usize,
    /// Factor lengths, e.g. 2,3,2.
    #[arg(long, value_delimiter = ',', conflicts_with = "cycle_index", required_unless_present = "cycle_index")]
    e: Vec<usize>,
    /// Factor-length multiplicities, e.g. 2:2,3:1.
    #[arg(long)]
    cycle_index: Option<String>,
    #[arg(long, value_enum, default_value = "formula")]
    method: MethodArg,
    /// Report h(d, r, 0; e, d) instead of the factorization count.
    #[arg(long)]
    hurwitz: bool,
    /// Largest d the enumerating methods accept.
    #[arg(long, env = "PURECYCLE_CAP")]
    cap: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnumKind {
    Factorization,
    Graph,
    Mnr,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, value_enum)]
    kind: EnumKind,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    e: Vec<usize>,
    /// (f0, f1, ..., fn) for --kind mnr.
    #[arg(long, value_delimiter = ',')]
    vertex_data: Vec<usize>,
    #[arg(long, env = "PURECYCLE_CAP")]
    cap: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, ValueEnum)]
enum Kind {
    Fac,
    Graph,
    Labeled,
    Mnr,
    Prufer,
}

#[derive(Args)]
struct ConvertArgs {
    /// Input kind; detected from the JSON keys when omitted.
    #[arg(long, value_enum)]
    from: Option<Kind>,
    #[arg(long, value_enum)]
    to: Kind,
    /// Input file, `-` for stdin.
    #[arg(long, default_value = "-")]
    input: String,
    /// Convert back and require the original object.
    #[arg(long)]
    roundtrip: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 6)]
    max_d: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated check names.
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long, value_enum)]
    from: Option<Kind>,
    #[arg(long, default_value = "-")]
    input: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PruferOp {
    Encode,
    Decode,
}

#[derive(Args)]
struct PruferArgs {
    #[arg(value_enum)]
    op: PruferOp,
    /// Tree JSON (encode) or matrix JSON (decode).
    #[arg(long, default_value = "-")]
    input: String,
    /// Classic decode: the code as values, e.g. 3,0.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    seq: Vec<i64>,
    /// Classic decode: the vertex set S.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    s: Vec<i64>,
}

/// Failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::CapExceeded { .. }) {
            EXIT_CAP
        } else {
            EXIT_INVALID
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        invalid(e.to_string())
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count(a) => cmd_count(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Convert(a) => cmd_convert(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Export(a) => cmd_export(a),
        Command::Prufer(a) => cmd_prufer(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn read_input(path: &str) -> io::Result<String> {
    if path == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path)
    }
}

fn parse_cycle_index(text: &str) -> Result<BTreeMap<usize, usize>, Failure> {
    let mut map = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (m, n) = item
            .split_once(':')
            .ok_or_else(|| invalid(format!("cycle-index entry {item:?} is not length:count")))?;
        let m: usize = m.trim().parse().map_err(|_| invalid(format!("bad length in {item:?}")))?;
        let n: usize = n.trim().parse().map_err(|_| invalid(format!("bad count in {item:?}")))?;
        *map.entry(m).or_insert(0) += n;
    }
    if map.is_empty() {
        return Err(invalid("empty cycle index"));
    }
    Ok(map)
}

/// Distinct orderings of a multiset of factor lengths, lexicographic.
fn orderings(index: &BTreeMap<usize, usize>) -> Vec<Vec<usize>> {
    fn go(counts: &mut BTreeMap<usize, usize>, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        let keys: Vec<usize> = counts.iter().filter(|(_, &c)| c > 0).map(|(&k, _)| k).collect();
        for k in keys {
            *counts.get_mut(&k).unwrap() -= 1;
            cur.push(k);
            go(counts, left - 1, cur, out);
            cur.pop();
            *counts.get_mut(&k).unwrap() += 1;
        }
    }
    let mut counts = index.clone();
    let total = counts.values().sum();
    let mut out = Vec::new();
    go(&mut counts, total, &mut Vec::new(), &mut out);
    out
}

fn factorization_space(d: usize, e: &[usize]) -> BigUint {
    e[..e.len().saturating_sub(1)]
        .iter()
        .map(|&k| factorial(d) / (factorial(d - k) * BigUint::from(k)))
        .product()
}

fn cmd_count(a: CountArgs) -> CliResult {
    if a.format == Format::Dot {
        return Err(invalid("count supports --format text or json"));
    }
    let types: Vec<Vec<usize>> = match &a.cycle_index {
        Some(text) => orderings(&parse_cycle_index(text)?),
        None => vec![a.e.clone()],
    };
    for e in &types {
        FactorizationType::new(a.d, e.clone())?;
    }
    let methods: Vec<CountMethod> = match a.method {
        MethodArg::All => CountMethod::ALL.to_vec(),
        MethodArg::BruteForce => vec![CountMethod::BruteForce],
        MethodArg::Formula => vec![CountMethod::Formula],
        MethodArg::Bijection => vec![CountMethod::Bijection],
    };
    let default_cap = if a.hurwitz {
        DEFAULT_HURWITZ_CAP
    } else {
        DEFAULT_FACTORIZATION_CAP
    };
    let cap = a.cap.unwrap_or(default_cap);
    if a.cap.is_some() && methods.iter().any(|&m| m != CountMethod::Formula) && a.d <= cap {
        let space: BigUint = types
            .iter()
            .map(|e| {
                if a.hurwitz {
                    factorization_space(a.d, &[e.as_slice(), &[a.d]].concat())
                } else {
                    factorization_space(a.d, e)
                }
            })
            .sum();
        eprintln!("cap overridden to {cap}; search space about {space} tuples");
    }

    let mut results: Vec<(CountMethod, Result<BigRational, Error>)> = Vec::new();
    for &method in &methods {
        let value = count_one(&a, &types, method, cap);
        results.push((method, value));
    }

    if methods.len() == 1 {
        let value = results.pop().unwrap().1?;
        match a.format {
            Format::Json => println!(
                "{}",
                serde_json::json!({
                    "d": a.d,
                    "method": methods[0].name(),
                    "quantity": if a.hurwitz { "hurwitz" } else { "factorizations" },
                    "count": value.to_string(),
                })
            ),
            _ => println!("{value}"),
        }
        return Ok(());
    }

    let legal: Vec<&BigRational> = results.iter().filter_map(|(_, r)| r.as_ref().ok()).collect();
    let verdict = if legal.windows(2).all(|w| w[0] == w[1]) {
        "MATCH"
    } else {
        "MISMATCH"
    };
    match a.format {
        Format::Json => {
            let counts: serde_json::Map<String, serde_json::Value> = results
                .iter()
                .map(|(m, r)| {
                    let v = match r {
                        Ok(x) => serde_json::Value::String(x.to_string()),
                        Err(e) => serde_json::json!({ "unavailable": e.to_string() }),
                    };
                    (m.name().to_string(), v)
                })
                .collect();
            println!("{}", serde_json::json!({ "d": a.d, "counts": counts, "verdict": verdict }));
        }
        _ => {
            for (m, r) in &results {
                match r {
                    Ok(x) => println!("{:<11} {x}", m.name()),
                    Err(e) => println!("{:<11} n/a ({e})", m.name()),
                }
            }
            println!("{verdict}");
        }
    }
    if legal.is_empty() {
        return Err(Failure {
            code: if results.iter().any(|(_, r)| matches!(r, Err(Error::CapExceeded { .. }))) {
                EXIT_CAP
            } else {
                EXIT_INVALID
            },
            message: "no method applies".into(),
        });
    }
    if verdict == "MISMATCH" {
        return Err(Failure {
            code: EXIT_VERIFY,
            message: String::new(),
        });
    }
    Ok(())
}

fn count_one(a: &CountArgs, types: &[Vec<usize>], method: CountMethod, cap: usize) -> Result<BigRational, Error> {
    let d_rat = BigRational::from_integer(a.d.into());
    if a.cycle_index.is_some() && method == CountMethod::Formula {
        let index = parse_cycle_index(a.cycle_index.as_deref().unwrap_or_default()).map_err(|f| Error::Parse(f.message))?;
        let fac = BigRational::from_integer(count_by_cycle_index(a.d, &index)?.into());
        return Ok(if a.hurwitz { fac / d_rat } else { fac });
    }
    let mut total = BigRational::from_integer(0.into());
    for e in types {
        total += if a.hurwitz && method == CountMethod::BruteForce {
            let full = [e.as_slice(), &[a.d]].concat();
            hurwitz_count_bruteforce(&HurwitzDatum::pure(a.d, &full)?, cap)?
        } else {
            let fac = BigRational::from_integer(count_factorizations(a.d, e, method, cap)?.into());
            if a.hurwitz {
                fac / d_rat.clone()
            } else {
                fac
            }
        };
    }
    Ok(total)
}

fn cmd_enumerate(a: EnumerateArgs) -> CliResult {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut count: u64 = 0;
    match a.kind {
        EnumKind::Factorization | EnumKind::Graph => {
            let d = a.d.ok_or_else(|| invalid("--d is required"))?;
            if a.e.is_empty() {
                return Err(invalid("--e is required"));
            }
            let cap = a.cap.unwrap_or(DEFAULT_FACTORIZATION_CAP);
            FactorizationType::new(d, a.e.clone())?;
            if d > cap {
                return Err(Error::CapExceeded { d, cap }.into());
            }
            if a.cap.is_some() {
                eprintln!("cap overridden to {cap}; search space about {} tuples", factorization_space(d, &a.e));
            }
            for f in enumerate_factorizations(&Cycle::standard(d), &a.e)? {
                let line = match (a.kind, a.format) {
                    (EnumKind::Factorization, Format::Json) => json::factorization_to_json(&f),
                    (EnumKind::Factorization, _) => format_factorization(&f),
                    (_, Format::Json) => json::graph_to_json(&graph_of_default(&f)?),
                    (_, _) => format!("{:?}\n", graph_of_default(&f)?.edges()),
                };
                out.write_all(line.as_bytes())?;
                count += 1;
            }
        }
        EnumKind::Mnr => {
            if a.vertex_data.len() < 2 {
                return Err(invalid("--vertex-data needs f0 and at least one more entry"));
            }
            let total: usize = a.vertex_data.iter().sum();
            let s: Vec<i64> = (1..a.vertex_data.len()).map(|j| (total + j) as i64).collect();
            for m in enumerate_mnr(&s, &a.vertex_data)? {
                let line = match a.format {
                    Format::Json => json::mnr_to_json(&m),
                    _ => format!("{:?}\n", m.edges()),
                };
                out.write_all(line.as_bytes())?;
                count += 1;
            }
        }
    }
    out.flush()?;
    eprintln!("{count} records");
    Ok(())
}

fn format_factorization(f: &Factorization) -> String {
    let parts: Vec<String> = f.sigmas().iter().map(ToString::to_string).collect();
    format!("{} = {}\n", f.tau(), parts.join(""))
}

/// A parsed wire object.
#[derive(Debug, PartialEq)]
enum Object {
    Fac(Factorization),
    Graph(FactorizationGraph),
    Labeled(LabeledMnr, Option<Cycle>),
    Mnr(MultiNodedRootedTree),
    Prufer(PruferMatrix),
}

impl Object {
    fn kind(&self) -> Kind {
        match self {
            Object::Fac(_) => Kind::Fac,
            Object::Graph(_) => Kind::Graph,
            Object::Labeled(..) => Kind::Labeled,
            Object::Mnr(_) => Kind::Mnr,
            Object::Prufer(_) => Kind::Prufer,
        }
    }

    fn to_json(&self) -> String {
        match self {
            Object::Fac(f) => json::factorization_to_json(f),
            Object::Graph(g) => json::graph_to_json(g),
            Object::Labeled(lm, tau) => json::labeled_to_json(lm, tau.as_ref()),
            Object::Mnr(m) => json::mnr_to_json(m),
            Object::Prufer(h) => json::prufer_to_json(h),
        }
    }

    fn to_dot(&self) -> Result<String, Failure> {
        Ok(match self {
            Object::Fac(f) => dot::graph_to_dot(&graph_of_default(f)?),
            Object::Graph(g) => dot::graph_to_dot(g),
            Object::Labeled(lm, _) => dot::labeled_to_dot(lm),
            Object::Mnr(m) => dot::mnr_to_dot(m),
            Object::Prufer(h) => dot::mnr_to_dot(&mnr_decode(h)?),
        })
    }

    /// One step along fac - graph - labeled - mnr - prufer toward `target`.
    fn step(self, target: Kind) -> Result<Object, Error> {
        let forward = target > self.kind();
        Ok(match (self, forward) {
            (Object::Fac(f), _) => Object::Graph(graph_of_default(&f)?),
            (Object::Graph(g), false) => Object::Fac(g.factorization_of()?),
            (Object::Graph(g), true) => {
                let tau = g.tau().clone();
                let standard = tau.len() == tau.degree() && tau == Cycle::standard(tau.degree());
                Object::Labeled(phi_labeled(&g)?, (!standard).then_some(tau))
            }
            (Object::Labeled(lm, tau), false) => {
                let tau = tau.unwrap_or_else(|| Cycle::standard(lm.d()));
                Object::Graph(psi_on(&lm, &tau)?)
            }
            (Object::Labeled(lm, _), true) => Object::Mnr(lm.into_mnr()),
            (Object::Mnr(m), false) => Object::Labeled(unique_labeling(&m)?.0, None),
            (Object::Mnr(m), true) => Object::Prufer(mnr_encode(&m)?),
            (Object::Prufer(h), _) => Object::Mnr(mnr_decode(&h)?),
        })
    }

    fn convert(mut self, target: Kind) -> Result<Object, Error> {
        while self.kind() != target {
            self = self.step(target)?;
        }
        Ok(self)
    }
}

fn detect_kind(text: &str) -> Result<Kind, Failure> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| invalid(format!("json: {e}")))?;
    let has = |k: &str| value.get(k).is_some();
    Ok(if has("sigmas") {
        Kind::Fac
    } else if has("matrix") {
        Kind::Prufer
    } else if has("labels") {
        Kind::Labeled
    } else if has("vertex_data") {
        Kind::Mnr
    } else if has("edges") && has("tau") {
        Kind::Graph
    } else {
        return Err(invalid("cannot tell which object the input describes; pass --from"));
    })
}

fn parse_object(text: &str, kind: Kind) -> Result<Object, Error> {
    Ok(match kind {
        Kind::Fac => {
            let f = json::factorization_from_json(text)?;
            if !f.validate() {
                return Err(Error::NotAFactorization);
            }
            Object::Fac(f)
        }
        Kind::Graph => Object::Graph(json::graph_from_json(text)?),
        Kind::Labeled => {
            let (lm, tau) = json::labeled_from_json(text)?;
            Object::Labeled(lm, tau)
        }
        Kind::Mnr => Object::Mnr(json::mnr_from_json(text)?),
        Kind::Prufer => Object::Prufer(json::prufer_from_json(text)?),
    })
}

fn read_object(input: &str, from: Option<Kind>) -> Result<Object, Failure> {
    let text = read_input(input)?;
    let kind = match from {
        Some(k) => k,
        None => detect_kind(&text)?,
    };
    Ok(parse_object(&text, kind)?)
}

fn cmd_convert(a: ConvertArgs) -> CliResult {
    let source = read_object(&a.input, a.from)?;
    let source_kind = source.kind();
    let source_json = source.to_json();
    let image = source.convert(a.to)?;
    if a.roundtrip {
        let back = parse_object(&image.to_json(), a.to)?.convert(source_kind)?;
        if back.to_json() != source_json {
            return Err(Failure {
                code: EXIT_VERIFY,
                message: format!("round trip changed the object:\n  in:  {source_json}  out: {}", back.to_json()),
            });
        }
    }
    match a.format {
        Format::Json => print!("{}", image.to_json()),
        Format::Dot => print!("{}", image.to_dot()?),
        Format::Text => print!("{}", text_form(&image)),
    }
    Ok(())
}

fn text_form(obj: &Object) -> String {
    match obj {
        Object::Fac(f) => format_factorization(f),
        Object::Prufer(h) => format!(
            "{}\n{}\n",
            h.top().iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
            h.bottom().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        ),
        other => other.to_json(),
    }
}

fn cmd_verify(a: VerifyArgs) -> CliResult {
    let opts = verify::VerifyOptions {
        max_d: a.max_d,
        seed: a.seed,
        only: (!a.only.is_empty()).then_some(a.only),
    };
    let outcomes = verify::run(&opts)?;
    print!("{}", verify::report(&outcomes));
    if verify::all_passed(&outcomes) {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VERIFY,
            message: String::new(),
        })
    }
}

fn cmd_export(a: ExportArgs) -> CliResult {
    let obj = read_object(&a.input, a.from)?;
    print!("{}", obj.to_dot()?);
    Ok(())
}

fn cmd_prufer(a: PruferArgs) -> CliResult {
    match a.op {
        PruferOp::Encode => {
            let m = match read_object(&a.input, None)? {
                Object::Mnr(m) => m,
                Object::Labeled(lm, _) => lm.into_mnr(),
                _ => return Err(invalid("encode expects a multi-noded tree")),
            };
            print!("{}", json::prufer_to_json(&mnr_encode(&m)?));
        }
        PruferOp::Decode if !a.seq.is_empty() => {
            let t: RootedTree = prufer_decode(&a.seq, &a.s)?;
            let m = MultiNodedRootedTree::new(t.clone(), vec![1; t.n() + 1], vec![1; t.n()])?;
            print!("{}", json::mnr_to_json(&m));
        }
        PruferOp::Decode => {
            let h = match read_object(&a.input, Some(Kind::Prufer))? {
                Object::Prufer(h) => h,
                _ => unreachable!(),
            };
            print!("{}", json::mnr_to_json(&mnr_decode(&h)?));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_index_orderings() {
        let index = parse_cycle_index("2:2,3:1").unwrap();
        assert_eq!(orderings(&index), vec![vec![2, 2, 3], vec![2, 3, 2], vec![3, 2, 2]]);
        assert!(parse_cycle_index("2-2").is_err());
    }

    #[test]
    fn search_space_estimate() {
        // 15 transpositions on 6 points, four free factors
        assert_eq!(factorization_space(6, &[2, 2, 2, 2, 2]), BigUint::from(15u32).pow(4));
    }
}
