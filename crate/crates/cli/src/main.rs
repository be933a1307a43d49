use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use toursid::classify::{classify_cycle, classify_path, Classification};
use toursid::construct::{certificate, named_kernel, sparse_non_tas, CertificateName, KernelName};
use toursid::hom::{hom_auto, t_kernel_2p3, t_kernel_cycle, t_kernel_path};
use toursid::scalar::{parse_rational, rational_string, rational_to_f64};
use toursid::search::{refute, Budget, Mode};
use toursid::signed::{cycle_counts, path_counts, walk_fractions};
use toursid::spectral::{certify_sign, eigenvalues, expand_path};
use toursid::stochastic::{
    fg_trajectory, localwalk_exhaustive, lyapunov_estimate, resolve_beta_star, sample_fg, LyapunovMode,
};
use toursid::tournament::with_half_loops;
use toursid::trees::{find_isomorphic_pair, orient_tree_tas, strong_tas_check};
use toursid::{Digraph, Error, Orientation, OrientedCycle, Pattern, Rational, Tournament, Tree, WeightedTournament};

mod cache;

#[derive(Parser)]
#[command(name = "toursid", version, about = "Sidorenko-type inequalities for oriented graphs in tournaments")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit JSON on stdout.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV on stdout (tabular subcommands only).
    #[arg(long, global = true)]
    csv: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Run the classifier outside its preconditions.
    #[arg(long, global = true)]
    best_effort: bool,
    /// Exact rational arithmetic (default).
    #[arg(long, global = true, conflicts_with = "float")]
    exact: bool,
    /// Double-precision arithmetic.
    #[arg(long, global = true)]
    float: bool,
    /// Read the main input from a file.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Local classification of an oriented path.
    ClassifyPath { orientation: String },
    /// Local classification of an oriented cycle.
    ClassifyCycle { orientation: String },
    /// Signed counts C(P3), C(P5), C(2P3) and the first nonzero longer path.
    Counts {
        orientation: String,
        #[arg(long)]
        cycle: bool,
    },
    /// Homomorphism count of a pattern in a host read from --file.
    Hom {
        #[arg(long)]
        pattern: String,
    },
    /// Moment expansion of an oriented path.
    Expand { orientation: String },
    /// Mechanical sign certificate for an oriented path.
    CertifySign { orientation: String },
    /// Named step kernels and their densities.
    Kernels {
        #[arg(long)]
        name: Option<String>,
    },
    /// The six-edge certificates.
    Certificate {
        #[arg(long, value_enum, default_value = "transitive")]
        name: CertKind,
        /// Perturbation for the cyclic host.
        #[arg(long, default_value = "1/100")]
        delta: String,
    },
    /// Search for a TAS or TS violation.
    Verify {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        pattern: String,
        /// Random restarts of the optimizer after the exhaustive stage.
        #[arg(long, default_value_t = 0)]
        restarts: usize,
        #[arg(long, default_value_t = 500)]
        max_iters: usize,
    },
    /// TAS orientation of a tree read from --file.
    OrientTree,
    /// Isomorphic pair of a tree read from --file.
    IsoPair,
    /// Strong TAS check of a digraph read from --file.
    StrongTas {
        /// Comma-separated independent set.
        #[arg(long, default_value = "")]
        independent: String,
    },
    /// Lyapunov exponent of the fg chain or the scalar recurrence.
    Lyapunov {
        #[arg(long, value_enum)]
        mode: LyapunovKind,
        #[arg(long, default_value = "1/8")]
        beta: String,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 100)]
        batches: usize,
    },
    /// Exact fg trajectory, sampled summary, or the measured beta*.
    Fg {
        orientation: Option<String>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1.0)]
        threshold: f64,
        /// Measure beta* over all orientations with at most this many edges.
        #[arg(long)]
        resolve_beta: Option<usize>,
    },
    /// Enumerated wedge-count distribution against the walk formula.
    Localwalk {
        #[arg(long)]
        edges: usize,
    },
    /// The sparse non-TAS construction.
    Sparse {
        /// Comma-separated part sizes.
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CertKind {
    Transitive,
    Perturbed,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Tas,
    Ts,
}

#[derive(Clone, Copy, ValueEnum)]
enum LyapunovKind {
    Fg,
    Recurrence,
}

#[derive(Clone, Copy, PartialEq)]
enum Format {
    Text,
    Json,
    Csv,
}

enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = std::result::Result<Output, Failure>;

/// One result in every format a subcommand supports.
struct Output {
    json: Value,
    text: String,
    csv: Option<String>,
}

impl Output {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Output { json, text: text.into(), csv: None }
    }

    fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn q(r: &Rational) -> String {
    rational_string(r)
}

fn rational_arg(text: &str) -> std::result::Result<Rational, Failure> {
    parse_rational(text).ok_or_else(|| usage(format!("not a rational number: `{text}`")))
}

fn list_arg(text: &str) -> std::result::Result<Vec<usize>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| usage(format!("not a vertex count: `{s}`"))))
        .collect()
}

fn read_input(g: &Global) -> std::result::Result<String, Failure> {
    let path = g.file.as_ref().ok_or_else(|| usage("this subcommand needs --file <path>"))?;
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn need_seed(g: &Global) -> std::result::Result<u64, Failure> {
    g.seed.ok_or_else(|| usage("this subcommand needs --seed <u64>"))
}

/// Path strings as they are; anything starting with `digraph` as a digraph.
fn pattern_arg(text: &str) -> std::result::Result<Pattern, Failure> {
    let text = text.trim();
    if text.starts_with("digraph") {
        return Ok(Pattern::Graph(Digraph::parse(text)?));
    }
    Ok(Pattern::parse(text)?)
}

fn host_from_text(text: &str) -> std::result::Result<WeightedTournament<Rational>, Failure> {
    let head = text.trim_start();
    if head.starts_with("wtournament") {
        Ok(WeightedTournament::parse(text)?)
    } else if head.starts_with("tournament") {
        Ok(with_half_loops(&Tournament::parse(text)?))
    } else {
        Err(Failure::Domain(Error::Parse("expected a `tournament` or `wtournament` header".into())))
    }
}

fn classification(c: Classification) -> Output {
    let text = format!("{} {}\n", c.verdict, c.rule);
    Output::new(serde_json::to_value(&c).expect("serialisable"), text)
}

fn run(cli: Cli) -> Outcome {
    let g = &cli.global;
    match cli.command {
        Command::ClassifyPath { orientation } => {
            Ok(classification(classify_path(&Orientation::parse(&orientation)?, g.best_effort)?))
        }
        Command::ClassifyCycle { orientation } => {
            Ok(classification(classify_cycle(&OrientedCycle::parse(&orientation)?, g.best_effort)?))
        }
        Command::Counts { orientation, cycle } => {
            let c = if cycle {
                cycle_counts(&OrientedCycle::parse(&orientation)?)
            } else {
                path_counts(&Orientation::parse(&orientation)?)
            };
            let text = format!("c_p3 {}\nc_p5 {}\nc_2p3 {}\n", c.c_p3, c.c_p5, c.c_2p3);
            Ok(Output::new(serde_json::to_value(&c).expect("serialisable"), text))
        }
        Command::Hom { pattern } => hom(g, &pattern),
        Command::Expand { orientation } => {
            let p = expand_path(&Orientation::parse(&orientation)?)?;
            let (s, x) = (p.to_string(), p.to_x_string());
            Ok(Output::new(json!({ "orientation": orientation, "s_form": s, "x_form": x }), format!("{s}\n{x}\n")))
        }
        Command::CertifySign { orientation } => {
            let c = certify_sign(&expand_path(&Orientation::parse(&orientation)?)?);
            let mut text = format!("{:?}\n", c.outcome);
            for line in &c.trace {
                text.push_str(&format!("  {line}\n"));
            }
            Ok(Output::new(serde_json::to_value(&c).expect("serialisable"), text))
        }
        Command::Kernels { name } => kernels(name.as_deref()),
        Command::Certificate { name, delta } => {
            let name = match name {
                CertKind::Transitive => CertificateName::TransitiveTriangle,
                CertKind::Perturbed => CertificateName::PerturbedCyclic(rational_arg(&delta)?),
            };
            let c = certificate(name)?;
            let text = format!(
                "{}# pattern {}\n# direction {:?}\n# value {} ({:.6})\n# threshold {}\n",
                c.host.to_text(),
                c.pattern,
                c.direction,
                q(&c.value),
                rational_to_f64(&c.value),
                q(&c.threshold)
            );
            Ok(Output::new(c.to_json(), text))
        }
        Command::Verify { mode, pattern, restarts, max_iters } => verify(g, mode, &pattern, restarts, max_iters),
        Command::OrientTree => {
            let t = Tree::parse(&read_input(g)?)?;
            let o = orient_tree_tas(&t);
            let json = json!({ "provenance": o.provenance, "arcs": o.arcs });
            Ok(Output::new(json, o.to_text()))
        }
        Command::IsoPair => {
            let t = Tree::parse(&read_input(g)?)?;
            let p = find_isomorphic_pair(&t);
            let text = match &p {
                Some(p) => format!("v {} w {} h1 {:?} h2 {:?}\n", p.v, p.w, p.h1, p.h2),
                None => "none\n".to_string(),
            };
            Ok(Output::new(json!({ "pair": p }), text))
        }
        Command::StrongTas { independent } => {
            let d = Digraph::parse(&read_input(g)?)?;
            let r = strong_tas_check(&d, &list_arg(&independent)?, g.max_n.unwrap_or(4))?;
            let text = format!("{} after {} hosts\n", if r.pass { "pass" } else { "fail" }, r.hosts_checked);
            Ok(Output::new(serde_json::to_value(&r).expect("serialisable"), text))
        }
        Command::Lyapunov { mode, beta, steps, batches } => {
            let seed = need_seed(g)?;
            let mode = match mode {
                LyapunovKind::Fg => LyapunovMode::Fg,
                LyapunovKind::Recurrence => LyapunovMode::Recurrence(rational_to_f64(&rational_arg(&beta)?)),
            };
            let e = lyapunov_estimate(mode, steps, seed, batches)?;
            let text = format!("lambda_hat {:.6e}\nci95 [{:.6e}, {:.6e}]\n", e.lambda_hat, e.ci95_low, e.ci95_high);
            let csv = e.to_csv();
            Ok(Output::new(serde_json::to_value(&e).expect("serialisable"), text).with_csv(csv))
        }
        Command::Fg { orientation, steps, trials, threshold, resolve_beta } => {
            fg(g, orientation.as_deref(), steps, trials, threshold, resolve_beta)
        }
        Command::Localwalk { edges } => {
            let got = localwalk_exhaustive(edges)?;
            let want = walk_fractions(edges - 1)?;
            let rows = [("zero", &got.p_zero, &want.p_zero), ("pos", &got.p_pos, &want.p_pos), ("neg", &got.p_neg, &want.p_neg)];
            let mut text = String::new();
            let mut csv = String::from("sign,enumerated,walk\n");
            for (k, a, b) in rows {
                text.push_str(&format!("{k} {} {}\n", q(a), q(b)));
                csv.push_str(&format!("{k},{},{}\n", q(a), q(b)));
            }
            let json = json!({ "edges": edges, "enumerated": got, "walk": want, "match": got == want });
            Ok(Output::new(json, text).with_csv(csv))
        }
        Command::Sparse { sizes, samples } => {
            let r = sparse_non_tas(&list_arg(&sizes)?)?;
            let quotient_ok = r.check_random_quotients(samples, g.seed.unwrap_or(0));
            let text = format!("m {} k {} e {} violates {} quotient {}\n", r.m, r.k, r.e, r.violates, quotient_ok);
            let mut json = serde_json::to_value(&r).expect("serialisable");
            json["quotient_homomorphism"] = json!(quotient_ok);
            Ok(Output::new(json, text))
        }
    }
}

fn hom(g: &Global, pattern: &str) -> Outcome {
    let p = pattern_arg(pattern)?;
    let host = host_from_text(&read_input(g)?)?;
    let d = p.to_digraph();
    if g.float {
        let h = hom_auto(&d, &host.to_f64())?;
        let json = json!({ "pattern": p.to_string(), "n": h.n, "raw": h.raw, "density": h.density() });
        return Ok(Output::new(json, format!("{:.12e} {:.12e}\n", h.raw, h.density())));
    }
    let h = hom_auto(&d, &host)?;
    let json = json!({ "pattern": p.to_string(), "n": h.n, "raw": q(&h.raw), "density": q(&h.density()) });
    Ok(Output::new(json, format!("{} {}\n", q(&h.raw), q(&h.density()))))
}

fn kernels(name: Option<&str>) -> Outcome {
    let names: Vec<KernelName> = match name {
        Some(n) => vec![n.parse()?],
        None => KernelName::ALL.to_vec(),
    };
    let mut list = Vec::new();
    let mut text = String::new();
    for k in names {
        let b = named_kernel(k).matrix;
        let lambdas = eigenvalues(&b.to_f64())?.lambdas;
        let rows: Vec<Vec<String>> = b.matrix().rows().map(|r| r.iter().map(q).collect()).collect();
        let dens = [
            ("t_p3", t_kernel_path(&b, 2)),
            ("t_p5", t_kernel_path(&b, 4)),
            ("t_2p3", t_kernel_2p3(&b)),
            ("t_c4", t_kernel_cycle(&b, 4)),
            ("t_c6", t_kernel_cycle(&b, 6)),
        ];
        let mut entry = json!({ "name": k.to_string(), "matrix": rows, "balanced": b.is_balanced(), "lambdas": lambdas });
        text.push_str(&format!("{k}\n"));
        for (key, v) in &dens {
            entry[*key] = json!(q(v));
            text.push_str(&format!("  {key} {}\n", q(v)));
        }
        text.push_str(&format!("  balanced {}\n", b.is_balanced()));
        list.push(entry);
    }
    Ok(Output::new(json!({ "kernels": list }), text))
}

fn verify(g: &Global, mode: ModeArg, pattern: &str, restarts: usize, max_iters: usize) -> Outcome {
    let p = pattern_arg(pattern)?;
    let mode = match mode {
        ModeArg::Tas => Mode::Tas,
        ModeArg::Ts => Mode::Ts,
    };
    let n_max = g.max_n.unwrap_or(4);
    let seed = if restarts > 0 { need_seed(g)? } else { g.seed.unwrap_or(0) };
    let cacheable = restarts == 0;
    let key = cache::key(&[&format!("{mode:?}"), &n_max.to_string(), &p.to_string()]);
    let json = match cacheable.then(|| cache::load(&key)).flatten() {
        Some(v) => v,
        None => {
            let report = refute(&p, mode, n_max, Budget { restarts, max_iters }, seed)?;
            let v = report.to_json();
            if cacheable {
                cache::store(&key, &v);
            }
            v
        }
    };
    let text = match json.get("violation").filter(|v| !v.is_null()) {
        Some(v) => format!("violation value {} threshold {}\n", v["value"], v["threshold"]),
        None => format!("no violation for n <= {n_max}\n"),
    };
    Ok(Output::new(json, text))
}

fn fg(
    g: &Global,
    orientation: Option<&str>,
    steps: Option<usize>,
    trials: usize,
    threshold: f64,
    resolve_beta: Option<usize>,
) -> Outcome {
    if let Some(max_e) = resolve_beta {
        let r = resolve_beta_star(max_e)?;
        let text = format!("beta* {} over {} orientations\n", q(&r.beta_star), r.orientations_checked);
        return Ok(Output::new(serde_json::to_value(&r).expect("serialisable"), text));
    }
    if let Some(o) = orientation {
        let o = Orientation::parse(o)?;
        let traj = fg_trajectory(o.dirs());
        let mut csv = String::from("step,f,g\n");
        for s in &traj {
            csv.push_str(&format!("{},{},{}\n", s.step, q(&s.f), q(&s.g)));
        }
        let last = traj.last().expect("nonempty");
        let text = format!("f {} g {} total {}\n", q(&last.f), q(&last.g), q(&last.total()));
        return Ok(Output::new(json!({ "orientation": o.to_string(), "trajectory": traj }), text).with_csv(csv));
    }
    let steps = steps.ok_or_else(|| usage("fg needs an orientation, --steps, or --resolve-beta"))?;
    let s = sample_fg(steps, trials, need_seed(g)?, threshold)?;
    let text = format!(
        "mean_total {:.6} median_log_rate {:.6e} fraction_at_least {:.6}\n",
        s.mean_total, s.median_log_rate, s.fraction_at_least
    );
    Ok(Output::new(serde_json::to_value(&s).expect("serialisable"), text))
}

fn emit(out: Output, format: Format) -> std::result::Result<(), Failure> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serialisable")),
        Format::Text => print!("{}", out.text),
        Format::Csv => print!("{}", out.csv.ok_or_else(|| usage("--csv is not supported by this subcommand"))?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.global.json {
        Format::Json
    } else if cli.global.csv {
        Format::Csv
    } else {
        Format::Text
    };
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("{}", json!({ "error": "UsageError", "message": e.to_string() }));
            return ExitCode::from(2);
        }
    }
    match run(cli).and_then(|out| emit(out, format)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("{}", json!({ "error": e.name(), "message": e.to_string() }));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("{}", json!({ "error": "UsageError", "message": msg }));
            ExitCode::from(2)
        }
    }
}
