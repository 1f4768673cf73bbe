//! `parabolic`: command-line front end. Every command prints one JSON record
//! on stdout and a short human summary on stderr.
//!
//! Exit codes: 0 success, 1 domain error (the mathematics refused the input),
//! 2 usage error (bad flags or unreadable files).

mod records;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use parabolic::cone::{self, anticanonical_class, anticanonical_weight, canonical_git_class, effective_cone, weak_fano_report};
use parabolic::crossing::{classify, is_dominant};
use parabolic::quantum::gw_invariant;
use parabolic::schubert::{lr_coefficient, lr_product};
use parabolic::walls::{first_wall, is_bounded_search, scaling_walls, segment_walls, ScalingPath, Wall};
use parabolic::weights::{moduli_dimension, pauly_weight};
use parabolic::{rational, BigRational, DivisorClass, ParabolicWeight, Partition, SchubertIndex};
use serde_json::{json, Value};

use records::InputError;

#[derive(Parser)]
#[command(name = "parabolic", version, about = "Exact wall-crossing computations for parabolic bundles on the projective line")]
struct Cli {
    /// Cap on |d| in wall and facet searches; results then carry `bounded_search`.
    #[arg(long, global = true)]
    dmax: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the moduli space.
    Dim {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        points: usize,
    },
    /// Littlewood-Richardson coefficients.
    Lr {
        /// Partition as comma-separated parts, e.g. "2,1".
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        /// Single coefficient instead of the whole product.
        #[arg(long)]
        nu: Option<Partition>,
        /// Keep only partitions with at most this many rows.
        #[arg(long)]
        rows: Option<usize>,
    },
    /// Genus-zero Gromov-Witten invariant of a Grassmannian.
    Gw {
        /// `s,r` for Gr(s, r).
        #[arg(long)]
        grassmannian: String,
        /// Schubert classes separated by `;`, e.g. "(1);(1);(1)".
        #[arg(long)]
        classes: String,
        /// Degree of the curve class.
        #[arg(long)]
        degree: u32,
    },
    /// Walls crossed by the segment between two weights.
    Walls {
        /// Weight file for the start point.
        #[arg(long)]
        from: String,
        /// Weight file for the end point.
        #[arg(long)]
        to: String,
    },
    /// Walls met by c * base for 0 < c <= cmax.
    Scaling {
        /// Weight file for the base; entries may reach 1.
        #[arg(long)]
        weights: String,
        /// Largest scale factor, as "p/q".
        #[arg(long, value_parser = parse_rational)]
        cmax: BigRational,
        /// Only the first wall, checked against the two expected first walls.
        #[arg(long)]
        first: bool,
    },
    /// Classify crossing the wall (s, d, J) at a weight lying on it.
    Classify {
        /// Weight file for a point on the wall.
        #[arg(long)]
        weights: String,
        /// Rank s of the destabilizing subbundle.
        #[arg(long)]
        sub_rank: usize,
        /// Degree d of the subbundle.
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        /// One subset per point separated by `;`, elements by `,`: "1;1;2".
        #[arg(long)]
        subsets: String,
    },
    /// Picard-number trace along the scaling path to a weight.
    Dominant {
        /// Weight file for the end of the path.
        #[arg(long)]
        weights: String,
    },
    /// Effective cone inequalities, or membership of a divisor class.
    Effcone {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        points: usize,
        /// Test this divisor file instead of listing the cone.
        #[arg(long)]
        divisor: Option<String>,
        /// Interior test (all inequalities strict).
        #[arg(long)]
        strict: bool,
    },
    /// Projective model attached to a divisor class.
    Model {
        /// Divisor file.
        #[arg(long)]
        divisor: String,
    },
    /// Anticanonical and GIT canonical classes.
    Anticanonical {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        points: usize,
    },
    /// Dominance and no-blow-down evidence near the anticanonical weight.
    FanoReport {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        points: usize,
    },
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<parabolic::Error> for Failure {
    fn from(e: parabolic::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Io(m) => Failure::Usage(m),
            InputError::Malformed(m) => Failure::Domain(m),
        }
    }
}

struct Output {
    record: Value,
    summary: String,
}

fn load_rows(path: &str) -> Result<(usize, Vec<Vec<BigRational>>), Failure> {
    Ok(records::parse_weight_rows(&records::read_file(path)?)?)
}

fn load_weight(path: &str) -> Result<ParabolicWeight, Failure> {
    let (r, rows) = load_rows(path)?;
    Ok(ParabolicWeight::new(r, rows)?)
}

fn load_divisor(path: &str) -> Result<DivisorClass, Failure> {
    let (r, level, lambdas) = records::parse_divisor(&records::read_file(path)?)?;
    Ok(DivisorClass::new(r, level, lambdas)?)
}

fn parse_subsets(r: usize, text: &str) -> Result<Vec<SchubertIndex>, Failure> {
    text.split(';')
        .map(|part| {
            let elems: Result<Vec<usize>, _> = part.split(',').map(|x| x.trim().parse::<usize>()).collect();
            let elems = elems.map_err(|_| Failure::Usage(format!("bad subset `{part}`")))?;
            Ok(SchubertIndex::new(r, elems)?)
        })
        .collect()
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let dmax = cli.dmax;
    let out = match cli.command {
        Command::Dim { rank, points } => {
            let dim = moduli_dimension(rank, points);
            Output {
                record: records::envelope("dim", json!({ "r": rank, "n": points, "dimension": dim })),
                summary: format!("dim = {dim}"),
            }
        }
        Command::Lr { lambda, mu, nu, rows } => {
            if let Some(nu) = nu {
                let c = lr_coefficient(&lambda, &mu, &nu);
                Output {
                    record: records::envelope(
                        "lr",
                        json!({ "lambda": lambda.to_string(), "mu": mu.to_string(), "nu": nu.to_string(), "coefficient": c }),
                    ),
                    summary: format!("c = {c}"),
                }
            } else {
                let rows = rows.unwrap_or(lambda.len() + mu.len());
                let terms = lr_product(&lambda, &mu, rows);
                let list: Vec<Value> = terms.iter().map(|(p, c)| json!({ "nu": p.to_string(), "coefficient": c })).collect();
                Output {
                    record: records::envelope(
                        "lr",
                        json!({ "lambda": lambda.to_string(), "mu": mu.to_string(), "rows": rows, "terms": list }),
                    ),
                    summary: format!("{} terms", terms.len()),
                }
            }
        }
        Command::Gw { grassmannian, classes, degree } => {
            let sr: Vec<usize> = grassmannian
                .split(',')
                .map(|x| x.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::Usage(format!("bad Grassmannian `{grassmannian}`, expected s,r")))?;
            let [s, r] = sr[..] else {
                return Err(Failure::Usage(format!("bad Grassmannian `{grassmannian}`, expected s,r")));
            };
            let parts: Vec<Partition> = classes.split(';').map(str::parse).collect::<Result<_, parabolic::Error>>()?;
            let value = gw_invariant(&parts, degree, s, r)?;
            let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
            Output {
                record: records::envelope(
                    "gw",
                    json!({ "s": s, "r": r, "classes": names, "degree": degree, "invariant": value.to_string() }),
                ),
                summary: format!("<{}>_{} = {}", names.join(", "), degree, value),
            }
        }
        Command::Walls { from, to } => {
            let (w0, w1) = (load_weight(&from)?, load_weight(&to)?);
            let found = segment_walls(&w0, &w1, dmax)?;
            Output {
                summary: format!("{} crossing parameters", found.len()),
                record: records::envelope(
                    "walls",
                    json!({
                        "from": records::weight(&w0),
                        "to": records::weight(&w1),
                        "bounded_search": is_bounded_search(w0.r(), w0.n(), dmax),
                        "crossings": found.iter().map(records::crossing).collect::<Vec<_>>(),
                    }),
                ),
            }
        }
        Command::Scaling { weights, cmax, first } => {
            let (r, rows) = load_rows(&weights)?;
            let base = ParabolicWeight::formal(r, rows)?;
            let path = ScalingPath::new(base.clone(), cmax.clone())?;
            let head = json!({ "base": records::weight(&base), "cmax": records::rat(&cmax) });
            if first {
                let (c, wall) = first_wall(&path)?;
                let mut body = head;
                body["first"] = json!({ "param": records::rat(&c), "wall": records::wall(&wall) });
                Output { summary: format!("first wall {wall} at c = {}", rational::format(&c)), record: records::envelope("scaling", body) }
            } else {
                let found = scaling_walls(&path, dmax)?;
                let mut body = head;
                body["bounded_search"] = json!(is_bounded_search(base.r(), base.n(), dmax));
                body["crossings"] = json!(found.iter().map(records::crossing).collect::<Vec<_>>());
                let summary = found
                    .iter()
                    .map(|c| format!("c = {}: {} wall(s)", rational::format(&c.param), c.walls.len()))
                    .collect::<Vec<_>>()
                    .join("\n");
                Output { summary: if summary.is_empty() { "no walls".into() } else { summary }, record: records::envelope("scaling", body) }
            }
        }
        Command::Classify { weights, sub_rank, degree, subsets } => {
            let w = load_weight(&weights)?;
            let wall = Wall::new(w.r(), sub_rank, degree, parse_subsets(w.r(), &subsets)?)?;
            let rep = classify(&wall, &w, dmax)?;
            Output {
                summary: format!("{wall}: {} (ext- = {}, ext+ = {})", rep.kind, rep.ext_minus, rep.ext_plus),
                record: records::envelope("classify", json!({ "weight": records::weight(&w), "report": records::report(&rep) })),
            }
        }
        Command::Dominant { weights } => {
            let w = load_weight(&weights)?;
            let t = is_dominant(&w, dmax)?;
            Output {
                summary: format!("dominant = {}, rho {} -> {}, {} crossings", t.dominant, t.initial_rho, t.final_rho, t.steps.len()),
                record: records::envelope("dominant", json!({ "weight": records::weight(&w), "trace": records::trace(&t) })),
            }
        }
        Command::Effcone { rank, points, divisor, strict } => {
            let c = effective_cone(rank, points, dmax)?;
            match divisor {
                Some(path) => {
                    let d = load_divisor(&path)?;
                    let m = cone::contains(&d, &c, strict)?;
                    Output {
                        summary: format!("inside = {}", m.inside),
                        record: records::envelope(
                            "effcone",
                            json!({ "r": rank, "n": points, "strict": strict, "bounded_search": c.bounded, "divisor": records::divisor(&d), "membership": records::membership(&m) }),
                        ),
                    }
                }
                None => Output {
                    summary: format!("{} inequalities", c.inequalities.len()),
                    record: records::envelope(
                        "effcone",
                        json!({ "r": rank, "n": points, "bounded_search": c.bounded, "inequalities": c.inequalities.iter().map(records::inequality).collect::<Vec<_>>() }),
                    ),
                },
            }
        }
        Command::Model { divisor } => {
            let d = load_divisor(&divisor)?;
            let c = effective_cone(d.r(), d.n(), dmax)?;
            let m = cone::projective_model(&d, &c)?;
            let tight: Vec<Value> = c.inequalities.iter().filter(|i| i.evaluate(&d) == 0).map(records::inequality).collect();
            Output {
                summary: format!("model: {}", m.tag()),
                record: records::envelope(
                    "model",
                    json!({ "divisor": records::divisor(&d), "bounded_search": c.bounded, "tight": tight, "descriptor": records::model(&m) }),
                ),
            }
        }
        Command::Anticanonical { rank, points } => {
            let a = anticanonical_class(rank, points)?;
            let git = canonical_git_class(rank, points)?;
            let w = pauly_weight(&a)?;
            let consistent = w == anticanonical_weight(rank, points)?;
            Output {
                summary: format!("anticanonical level {}, weight {w}", a.level()),
                record: records::envelope(
                    "anticanonical",
                    json!({ "anticanonical": records::divisor(&a), "git_anticanonical": records::divisor(&git), "weight": records::weight(&w), "weight_matches": consistent }),
                ),
            }
        }
        Command::FanoReport { rank, points } => {
            let rep = weak_fano_report(rank, points)?;
            Output {
                summary: format!(
                    "passes = {}, rho = {} (expected {}), {} blow-downs, {} crossings",
                    rep.passes(),
                    rep.trace.final_rho,
                    rep.expected_rho,
                    rep.blow_downs,
                    rep.trace.steps.len()
                ),
                record: records::envelope("fano-report", records::fano(&rep)),
            }
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{}", serde_json::to_string(&out.record).expect("records serialize"));
            eprintln!("{}", out.summary);
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
    }
}
