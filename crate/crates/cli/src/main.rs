use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use chordgenus::framed_graph::RotatingCircuit;
use chordgenus::generate::{random_diagram, random_framed_graph, random_plane_graph};
use chordgenus::genus::{self, Splitting, DEFAULT_EXHAUSTIVE_LIMIT};
use chordgenus::harness::{self, CheckOptions, Suite};
use chordgenus::invariants::{self, Exponent, DEFAULT_ASSIGNMENT_CAP};
use chordgenus::{Error, FramedChordDiagram, FramedFourGraph, Poly};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "chordgenus", version, about = "Embedding spectra and invariants of framed 4-graphs and chord diagrams")]
struct Cli {
    /// Worker threads for enumeration (default: all cores)
    #[arg(long, global = true, env = "CHORDGENUS_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Is there a sphere embedding (d-diagram test)
    Planar(Input),
    /// Range of surfaces over all checkerboard embeddings
    Genus {
        #[command(flatten)]
        input: Input,
        /// Enumerate all splittings up to this many chords, branch and bound above
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
        exhaustive_limit: usize,
    },
    /// Embedding in the projective plane
    Rp2(Input),
    /// Embedding in the Klein bottle
    Klein(Input),
    /// Kauffman bracket in a
    Bracket(Input),
    /// Generating function f in x
    Genfun {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = ExponentArg::Circles)]
        exponent: ExponentArg,
    },
    /// Generating function over all endpoint assignments
    GenfunTilde {
        #[command(flatten)]
        input: Input,
        /// Largest number of chords for the 2^(2k) enumeration
        #[arg(long, default_value_t = DEFAULT_ASSIGNMENT_CAP)]
        cap: usize,
    },
    /// gl(n) weight system as a polynomial in n
    Weight {
        #[command(flatten)]
        input: Input,
        /// Largest number of chords for the 2^(2k) enumeration
        #[arg(long, default_value_t = DEFAULT_ASSIGNMENT_CAP)]
        cap: usize,
    },
    /// Graph to chord diagram (via the rotating circuit), or back
    Convert(Input),
    /// Run a property suite
    Check {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        max_k: usize,
        /// Sizes tested exhaustively; larger sizes are sampled
        #[arg(long, default_value_t = 5)]
        exhaustive_k: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Seeded random diagrams or graphs
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = RandomKind::Chord)]
        kind: RandomKind,
        /// Chords, graph vertices, or plane-graph edges
        #[arg(long, default_value_t = 6)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Probability that a chord is negative
        #[arg(long, default_value_t = 0.0)]
        negative: f64,
    },
}

#[derive(Args)]
struct Input {
    /// Inline chord diagram, e.g. "1 2 1 2 ; ++"
    #[arg(long, conflicts_with = "file")]
    chord: Option<String>,
    /// Input file (`-` for stdin): one diagram per line, or one graph
    #[arg(required_unless_present = "chord")]
    file: Option<PathBuf>,
    /// Input format (default: detected from the file)
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph,
    Chord,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExponentArg {
    Circles,
    Genus,
}

#[derive(Clone, Copy, ValueEnum)]
enum RandomKind {
    Chord,
    Graph,
    Plane,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// Failure modes, mapped to exit codes.
enum Failure {
    Input(String),
    Io(io::Error),
}

impl<E: Into<Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into().to_string())
    }
}

/// One parsed input item. Graph items keep the graph and its circuit.
struct Item {
    diagram: FramedChordDiagram,
    graph: Option<(FramedFourGraph, RotatingCircuit)>,
}

fn read_items(input: &Input) -> Result<Vec<Item>, Failure> {
    if let Some(text) = &input.chord {
        if input.format == Some(Format::Graph) {
            return Err(Failure::Input("--chord takes a chord diagram; use a file for graphs".into()));
        }
        return Ok(vec![Item { diagram: text.parse()?, graph: None }]);
    }
    let path = input.file.as_ref().expect("clap requires a file");
    let text = if path.as_os_str() == "-" {
        io::read_to_string(io::stdin()).map_err(Failure::Io)?
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    };
    match input.format.unwrap_or_else(|| sniff_format(&text)) {
        Format::Graph => {
            let g: FramedFourGraph = text.parse()?;
            let c = g.rotating_circuit()?;
            let diagram = g.chord_diagram_of(&c)?;
            Ok(vec![Item { diagram, graph: Some((g, c)) }])
        }
        Format::Chord => text
            .lines()
            .map(|l| l.split('#').next().unwrap().trim())
            .filter(|l| !l.is_empty())
            .map(|l| Ok(Item { diagram: l.parse()?, graph: None }))
            .collect(),
    }
}

/// Graph files start with a `v<id>:` or `e:` line; anything else is chord text.
fn sniff_format(text: &str) -> Format {
    let first = text.lines().map(|l| l.split('#').next().unwrap().trim()).find(|l| !l.is_empty());
    match first.and_then(|l| l.split_whitespace().next()) {
        Some(t) if t.ends_with(':') => Format::Graph,
        _ => Format::Chord,
    }
}

fn labels_json(d: &FramedChordDiagram, s: &Option<Splitting>) -> Value {
    match s {
        Some(s) => json!({ "first": s.first_labels(d), "second": s.second_labels(d) }),
        None => Value::Null,
    }
}

fn poly_record(name: &str, d: &FramedChordDiagram, p: &Poly) -> Value {
    json!({ "diagram": d.to_string(), name: p.to_json(), "text": p.to_string() })
}

/// Text and JSON for one item, and whether a boolean verb answered yes.
struct Answer {
    text: String,
    json: Value,
    ok: bool,
}

fn answer(text: String, json: Value) -> Answer {
    Answer { text, json, ok: true }
}

fn analyse(command: &Command, item: &Item) -> Result<Answer, Failure> {
    let d = &item.diagram;
    Ok(match command {
        Command::Planar(_) => {
            let split = d.is_d_diagram();
            let planar = split.is_some();
            let witness = split.map(|b| json!({ "first": b.left, "second": b.right })).unwrap_or(Value::Null);
            Answer {
                text: format!("planar: {planar}"),
                json: json!({ "diagram": d.to_string(), "planar": planar, "witness": witness }),
                ok: planar,
            }
        }
        Command::Genus { exhaustive_limit, .. } => {
            let r = genus::genus_spectrum_with(d, *exhaustive_limit)?;
            answer(r.to_string(), r.to_json())
        }
        Command::Rp2(_) | Command::Klein(_) => {
            let (name, w) = match command {
                Command::Rp2(_) => ("rp2", genus::embeds_in_rp2(d)?),
                _ => ("klein", genus::embeds_in_klein(d)?),
            };
            let text = match &w {
                Some(s) => format!("{name}: true (I = {:?}, J = {:?})", s.first_labels(d), s.second_labels(d)),
                None => format!("{name}: false"),
            };
            Answer {
                text,
                json: json!({ "diagram": d.to_string(), name: w.is_some(), "witness": labels_json(d, &w) }),
                ok: w.is_some(),
            }
        }
        Command::Bracket(_) => {
            let p: Poly = invariants::kauffman_bracket(d)?;
            answer(p.to_string(), poly_record("bracket", d, &p))
        }
        Command::Genfun { exponent, .. } => {
            let e = match exponent {
                ExponentArg::Circles => Exponent::Circles,
                ExponentArg::Genus => Exponent::Genus,
            };
            let p: Poly = invariants::gen_fun_f(d, e)?;
            answer(p.to_string(), poly_record("f", d, &p))
        }
        Command::GenfunTilde { cap, .. } => {
            let p: Poly = invariants::gen_fun_f_tilde(d, *cap)?;
            let extension = !d.is_all_positive();
            let mut record = poly_record("f_tilde", d, &p);
            record["extension"] = json!(extension);
            let text = if extension { format!("{p} (extension: negative chords)") } else { p.to_string() };
            answer(text, record)
        }
        Command::Weight { cap, .. } => {
            let p: Poly = invariants::weight_system_gl(d, *cap)?;
            answer(p.to_string(), poly_record("weight", d, &p))
        }
        Command::Convert(_) => match &item.graph {
            Some((_, circuit)) => {
                let steps: Vec<[usize; 2]> = circuit.steps().iter().map(|&(o, i)| [o, i]).collect();
                answer(d.to_string(), json!({ "diagram": d.to_string(), "circuit": steps }))
            }
            None => {
                if d.is_empty() {
                    return Err(Failure::Input("the empty diagram has no graph".into()));
                }
                let g = FramedFourGraph::from_chord_diagram(d);
                let text = g.to_text();
                answer(text.trim_end().to_string(), json!({ "graph": text }))
            }
        },
        Command::Check { .. } | Command::Random { .. } => unreachable!("handled separately"),
    })
}

fn input_of(command: &Command) -> &Input {
    match command {
        Command::Planar(i) | Command::Rp2(i) | Command::Klein(i) | Command::Bracket(i) | Command::Convert(i) => i,
        Command::Genus { input, .. }
        | Command::Genfun { input, .. }
        | Command::GenfunTilde { input, .. }
        | Command::Weight { input, .. } => input,
        Command::Check { .. } | Command::Random { .. } => unreachable!("no diagram input"),
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<bool, Failure> {
    match &cli.command {
        Command::Check { suite, max_k, exhaustive_k, samples, seed, json } => {
            let opts = CheckOptions { max_k: *max_k, exhaustive_k: *exhaustive_k, samples: *samples, seed: *seed };
            let report = harness::run(*suite, &opts);
            if *json {
                writeln!(out, "{}", report.to_json(*suite)).map_err(Failure::Io)?;
            } else {
                writeln!(out, "{suite}: {} cases, {} violations", report.cases, report.violations.len())
                    .map_err(Failure::Io)?;
                for v in &report.violations {
                    writeln!(out, "  {v}").map_err(Failure::Io)?;
                }
            }
            Ok(report.passed())
        }
        Command::Random { seed, kind, size, count, negative } => {
            if !(0.0..=1.0).contains(negative) {
                return Err(Failure::Input("--negative must be a probability".into()));
            }
            if *count != 1 && !matches!(kind, RandomKind::Chord) {
                return Err(Failure::Input("graph files hold one graph; use --count 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for _ in 0..*count {
                let text = match kind {
                    RandomKind::Chord => random_diagram(&mut rng, *size, *negative).to_string(),
                    RandomKind::Graph => random_framed_graph(&mut rng, *size).to_text(),
                    RandomKind::Plane => random_plane_graph(&mut rng, *size).medial()?.to_text(),
                };
                write!(out, "{}", text).map_err(Failure::Io)?;
                if matches!(kind, RandomKind::Chord) {
                    writeln!(out).map_err(Failure::Io)?;
                }
            }
            Ok(true)
        }
        command => {
            let input = input_of(command);
            let items = read_items(input)?;
            let mut all_ok = true;
            for item in &items {
                let a = analyse(command, item)?;
                all_ok &= a.ok;
                if input.json {
                    writeln!(out, "{}", a.json).map_err(Failure::Io)?;
                } else if items.len() > 1 {
                    writeln!(out, "{}\t{}", item.diagram, a.text.replace('\n', "; ")).map_err(Failure::Io)?;
                } else {
                    writeln!(out, "{}", a.text).map_err(Failure::Io)?;
                }
            }
            Ok(all_ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
