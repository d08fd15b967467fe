use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tww_core::corpus::{grid, random_gnp, random_tree, rng};
use tww_core::lab::{
    audit_sequence, check_obs_red_edge, check_witness, find_step1_witness, pipeline_certify, PipelineOutcome,
    Step1Outcome,
};
use tww_core::structure::{
    gen_subdivided_wall, gen_tww3_family, treewidth_exact, tww3_family_sequence, verify_tree_decomposition,
    wall_to_mesh, MeshEmbedding, TreeDecomposition, Treewidth,
};
use tww_core::{
    decide_twinwidth_at_most, greedy_sequence, invert, quotient, apply_prefix, twinwidth_exact, verify_width,
    ContractionSequence, Decision, ExactTwinWidth, Graph, Trigraph, VertexPartition, DEFAULT_BUDGET,
};

#[derive(Parser)]
#[command(name = "tww", version, about = "Twin-width and tree-width toolkit")]
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
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph, sequence or mesh to stdout.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(short = 'N')]
        n: usize,
        /// Seed for random kinds.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge probability for `random`.
        #[arg(short, long, default_value_t = 0.3)]
        p: f64,
        /// Subdivision vertices per edge for `wall` and `mesh`.
        #[arg(long, default_value_t = 0)]
        subdivide: usize,
    },
    /// Replay a contraction sequence and report its width.
    Verify {
        /// Graph file; stdin when omitted or `-`.
        graph: Option<PathBuf>,
        #[arg(long)]
        seq: PathBuf,
        /// With `--format dot`, render the trigraph after this many steps.
        #[arg(long, default_value_t = 0)]
        prefix: usize,
    },
    /// Decide whether twin-width is at most `d`.
    Decide {
        #[arg(short)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        graph: Option<PathBuf>,
    },
    /// Exact twin-width, searched up to `cap`.
    Exact {
        #[arg(long)]
        cap: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        graph: Option<PathBuf>,
    },
    /// Greedy contraction sequence (upper bound).
    Greedy { graph: Option<PathBuf> },
    /// Exact tree-width with a PACE decomposition.
    Treewidth {
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        graph: Option<PathBuf>,
    },
    /// Check a PACE tree decomposition against a graph.
    VerifyTd { graph: PathBuf, td: PathBuf },
    /// Witness machinery.
    #[command(subcommand)]
    Lab(Lab),
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    /// Wall with N paths of N vertices.
    Wall,
    /// Cubic mesh JSON over `gen wall -N 2N+2`.
    Mesh,
    Tww3family,
    Tww3familySeq,
    /// N x N grid.
    Grid,
    /// G(N, p).
    Random,
    /// Uniform random tree on N vertices.
    Tree,
}

#[derive(Subcommand)]
enum Lab {
    /// Black quotient edges between parts of size at least t.
    Obs31 {
        graph: PathBuf,
        partition: PathBuf,
        #[arg(short)]
        t: usize,
    },
    /// Validate a four-part witness; parts are 1-indexed partition lines.
    Witness {
        graph: PathBuf,
        partition: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
        #[arg(short)]
        t: usize,
    },
    /// Run a witness at P^m through the rest of a sequence.
    Audit {
        graph: PathBuf,
        sequence: PathBuf,
        #[arg(long)]
        witness_at: usize,
        /// 1-indexed part ids of P^m.
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
        #[arg(short)]
        t: usize,
    },
    /// Search a sequence for a first witness over a cubic mesh.
    Step1 {
        graph: PathBuf,
        sequence: PathBuf,
        mesh: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(short, default_value_t = 1)]
        t: usize,
    },
    /// K_{t,t} subgraph, tree-width gate failure, or a certified sequence.
    Pipeline {
        graph: Option<PathBuf>,
        #[arg(short)]
        t: usize,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

/// Outcome of a subcommand: what to print and how to exit.
enum Answer {
    Definite(String),
    Unknown(String),
}

fn read_text(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("cannot read stdin")?;
            Ok(s)
        }
    }
}

fn load_graph(path: Option<&Path>) -> Result<Graph> {
    let name = path.map_or("<stdin>".to_string(), |p| p.display().to_string());
    Graph::parse_dimacs(&read_text(path)?).with_context(|| name)
}

fn load_sequence(path: &Path, g: &Graph) -> Result<ContractionSequence> {
    let seq = ContractionSequence::from_json(&read_text(Some(path))?)
        .with_context(|| format!("{}", path.display()))?;
    if seq.n() != g.n() {
        bail!("{}: sequence is for {} vertices, graph has {}", path.display(), seq.n(), g.n());
    }
    Ok(seq)
}

fn load_partition(path: &Path, n: usize) -> Result<VertexPartition> {
    VertexPartition::parse(&read_text(Some(path))?, n).with_context(|| format!("{}", path.display()))
}

fn part_ids(parts: &[usize], count: usize) -> Result<[usize; 4]> {
    let ids: Vec<usize> = parts
        .iter()
        .map(|&x| {
            if x == 0 || x > count {
                Err(anyhow!("part {x} outside 1..={count}"))
            } else {
                Ok(x - 1)
            }
        })
        .collect::<Result<_>>()?;
    ids.try_into().map_err(|_| anyhow!("--parts needs exactly four ids"))
}

fn certificate_value(s: &ContractionSequence) -> Value {
    serde_json::from_str(&s.to_json()).expect("certificate is valid json")
}

fn render(v: &Value) -> String {
    serde_json::to_string(v).expect("json value serializes")
}

fn no_dot(format: Format) -> Result<()> {
    if format == Format::Dot {
        bail!("dot output is only available for `gen` and `verify`");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Answer> {
    let format = cli.format;
    let json = format == Format::Json;
    match cli.command {
        Command::Gen { kind, n, seed, p, subdivide } => {
            if !(0.0..=1.0).contains(&p) {
                bail!("-p must lie in [0, 1]");
            }
            let graph_out = |g: &Graph, header: Option<String>| -> Result<Answer> {
                Ok(Answer::Definite(match format {
                    Format::Dot => Trigraph::from_graph(g).to_dot(),
                    Format::Json => render(&json!({
                        "n": g.n(),
                        "edges": g.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
                        "seed": header.as_ref().map(|_| seed),
                    })),
                    Format::Text => header.unwrap_or_default() + &g.to_dimacs(),
                }))
            };
            match kind {
                GenKind::Wall => graph_out(&gen_subdivided_wall(n, subdivide).0, None),
                GenKind::Mesh => {
                    no_dot(format)?;
                    if n == 0 {
                        bail!("-N must be positive");
                    }
                    let (g, wl) = gen_subdivided_wall(2 * n + 2, subdivide);
                    Ok(Answer::Definite(wall_to_mesh(&g, &wl, n)?.to_json()))
                }
                GenKind::Tww3family => {
                    if n == 0 {
                        bail!("-N must be positive");
                    }
                    graph_out(&gen_tww3_family(n).graph, None)
                }
                GenKind::Tww3familySeq => {
                    no_dot(format)?;
                    if n == 0 {
                        bail!("-N must be positive");
                    }
                    Ok(Answer::Definite(tww3_family_sequence(n).to_json()))
                }
                GenKind::Grid => graph_out(&grid(n, n), None),
                GenKind::Random => graph_out(&random_gnp(n, p, &mut rng(seed)), Some(format!("c seed {seed}\n"))),
                GenKind::Tree => graph_out(&random_tree(n, &mut rng(seed)), Some(format!("c seed {seed}\n"))),
            }
        }
        Command::Verify { graph, seq, prefix } => {
            let g = load_graph(graph.as_deref())?;
            let s = load_sequence(&seq, &g)?;
            if format == Format::Dot {
                return Ok(Answer::Definite(apply_prefix(&g, &s, prefix)?.to_dot()));
            }
            let report = verify_width(&g, &s)?;
            Ok(Answer::Definite(if json {
                render(&json!({"width": report.width, "trace": report.trace}))
            } else {
                format!("width: {}", report.width)
            }))
        }
        Command::Decide { d, budget, graph } => {
            no_dot(format)?;
            let g = load_graph(graph.as_deref())?;
            Ok(match decide_twinwidth_at_most(&g, d, budget)? {
                Decision::Yes(s) => Answer::Definite(if json {
                    render(&json!({"answer": "yes", "d": d, "certificate": certificate_value(&s)}))
                } else {
                    format!("yes: twin-width <= {d}\n{}", s.to_json())
                }),
                Decision::No => Answer::Definite(if json {
                    render(&json!({"answer": "no", "d": d}))
                } else {
                    format!("no: twin-width > {d}")
                }),
                Decision::Unknown { expanded } => Answer::Unknown(if json {
                    render(&json!({"answer": "unknown", "d": d, "expanded": expanded}))
                } else {
                    format!("unknown: budget exhausted after {expanded} states")
                }),
            })
        }
        Command::Exact { cap, budget, graph } => {
            no_dot(format)?;
            let g = load_graph(graph.as_deref())?;
            Ok(match twinwidth_exact(&g, cap, budget)? {
                ExactTwinWidth::Value { width, sequence } => Answer::Definite(if json {
                    render(&json!({"tww": width, "certificate": certificate_value(&sequence)}))
                } else {
                    format!("tww: {width}\n{}", sequence.to_json())
                }),
                ExactTwinWidth::AboveCap { cap } => Answer::Definite(if json {
                    render(&json!({"tww_above": cap}))
                } else {
                    format!("tww: > {cap}")
                }),
                ExactTwinWidth::Unknown { lower, expanded } => Answer::Unknown(if json {
                    render(&json!({"tww_at_least": lower, "expanded": expanded}))
                } else {
                    format!("tww: >= {lower} (budget exhausted after {expanded} states)")
                }),
            })
        }
        Command::Greedy { graph } => {
            no_dot(format)?;
            let g = load_graph(graph.as_deref())?;
            let (s, width) = greedy_sequence(&g)?;
            Ok(Answer::Definite(if json {
                render(&json!({"width": width, "certificate": certificate_value(&s)}))
            } else {
                format!("width: {width}\n{}", s.to_json())
            }))
        }
        Command::Treewidth { budget, graph } => {
            no_dot(format)?;
            let g = load_graph(graph.as_deref())?;
            Ok(match treewidth_exact(&g, budget) {
                Treewidth::Exact { width, decomposition } => Answer::Definite(if json {
                    render(&json!({"tw": width, "decomposition": decomposition.to_pace(g.n())}))
                } else {
                    format!("tw: {width}\n{}", decomposition.to_pace(g.n()).trim_end())
                }),
                Treewidth::Unknown { lower, upper, decomposition } => Answer::Unknown(if json {
                    render(&json!({"tw_lower": lower, "tw_upper": upper, "decomposition": decomposition.to_pace(g.n())}))
                } else {
                    format!("tw: {lower}..={upper} (budget exhausted)\n{}", decomposition.to_pace(g.n()).trim_end())
                }),
            })
        }
        Command::VerifyTd { graph, td } => {
            no_dot(format)?;
            let g = load_graph(Some(&graph))?;
            let (dec, n) =
                TreeDecomposition::parse_pace(&read_text(Some(&td))?).with_context(|| format!("{}", td.display()))?;
            if n != g.n() {
                bail!("{}: decomposition is for {n} vertices, graph has {}", td.display(), g.n());
            }
            let width = verify_tree_decomposition(&g, &dec).with_context(|| format!("{}", td.display()))?;
            Ok(Answer::Definite(if json {
                render(&json!({"width": width}))
            } else {
                format!("width: {width}")
            }))
        }
        Command::Lab(lab) => {
            no_dot(format)?;
            run_lab(lab, json)
        }
    }
}

fn run_lab(lab: Lab, json: bool) -> Result<Answer> {
    match lab {
        Lab::Obs31 { graph, partition, t } => {
            let g = load_graph(Some(&graph))?;
            let p = load_partition(&partition, g.n())?;
            let pt = quotient(&g, &p)?;
            let v: Vec<[usize; 2]> = check_obs_red_edge(&pt, t).into_iter().map(|(a, b)| [a + 1, b + 1]).collect();
            Ok(Answer::Definite(if json {
                render(&json!({"violations": v}))
            } else {
                let mut out = format!("violations: {}", v.len());
                for [a, b] in v {
                    out.push_str(&format!("\nblack edge between parts {a} and {b}"));
                }
                out
            }))
        }
        Lab::Witness { graph, partition, parts, t } => {
            let g = load_graph(Some(&graph))?;
            let p = load_partition(&partition, g.n())?;
            let ids = part_ids(&parts, p.len())?;
            Ok(Answer::Definite(match check_witness(&g, &p, ids, t) {
                Ok(w) if json => render(&json!({"valid": true, "s": w.s, "w2": w.w2, "w3": w.w3, "t": t})),
                Ok(w) => format!("witness: valid s={} w2={} w3={} (4t={})", w.s, w.w2, w.w3, 4 * t),
                Err(e) if json => render(&json!({"valid": false, "reason": e.to_string()})),
                Err(e) => format!("witness: invalid: {e}"),
            }))
        }
        Lab::Audit { graph, sequence, witness_at, parts, t } => {
            let g = load_graph(Some(&graph))?;
            let s = load_sequence(&sequence, &g)?;
            let pm = invert(&g, &s)?.partitions_at(witness_at)?;
            let ids = part_ids(&parts, pm.len())?;
            let verdict = audit_sequence(&g, &s, witness_at, ids, t)?;
            let v = serde_json::to_value(&verdict)?;
            Ok(Answer::Definite(if json {
                render(&v)
            } else {
                let mut out = format!("verdict: {}", v["verdict"].as_str().unwrap_or_default());
                if let Some(step) = v.get("step") {
                    out.push_str(&format!("\nstep: {step}"));
                }
                out.push_str(&format!("\nreason: {}", v["reason"].as_str().unwrap_or_default()));
                out
            }))
        }
        Lab::Step1 { graph, sequence, mesh, k, t } => {
            let g = load_graph(Some(&graph))?;
            let s = load_sequence(&sequence, &g)?;
            let me = MeshEmbedding::from_json(&read_text(Some(&mesh))?).with_context(|| format!("{}", mesh.display()))?;
            let u = invert(&g, &s)?;
            let out = find_step1_witness(&g, &u, &me, k, t)?;
            Ok(Answer::Definite(if json {
                render(&serde_json::to_value(&out)?)
            } else {
                match out {
                    Step1Outcome::Found(w) => format!(
                        "found at P^{}: parts {:?} s={} ({:?}, {:?})",
                        w.m,
                        w.witness.parts.map(|x| x + 1),
                        w.witness.s,
                        w.case,
                        w.lines
                    ),
                    Step1Outcome::NotFound { stage } => format!("not found: {stage}"),
                }
            }))
        }
        Lab::Pipeline { graph, t, k, budget } => {
            let g = load_graph(graph.as_deref())?;
            Ok(match pipeline_certify(&g, t, k, budget) {
                Ok(PipelineOutcome::Sequence { certificate, width }) => Answer::Definite(if json {
                    render(&json!({"outcome": "SEQUENCE", "width": width, "certificate": certificate_value(&certificate)}))
                } else {
                    format!("sequence: width {width}\n{}", certificate.to_json())
                }),
                Ok(PipelineOutcome::TwwExceeds2 { conditional }) => Answer::Definite(if json {
                    render(&json!({"outcome": "TWW_EXCEEDS_2", "conditional": conditional}))
                } else {
                    format!(
                        "tww > 2{}",
                        if conditional { " (conditional: tree-width gate below the theorem's threshold)" } else { "" }
                    )
                }),
                Ok(PipelineOutcome::NotApplicable { a, b }) => {
                    let (a1, b1): (Vec<usize>, Vec<usize>) =
                        (a.iter().map(|v| v + 1).collect(), b.iter().map(|v| v + 1).collect());
                    Answer::Definite(if json {
                        render(&json!({"outcome": "NOT_APPLICABLE", "a": a1, "b": b1}))
                    } else {
                        format!("not applicable: K_{{{t},{t}}} on {a1:?} x {b1:?}")
                    })
                }
                Err(e @ tww_core::lab::PipelineError::Undecided { .. }) => Answer::Unknown(if json {
                    render(&json!({"outcome": "UNKNOWN", "reason": e.to_string()}))
                } else {
                    format!("unknown: {e}")
                }),
                Err(e) => return Err(e.into()),
            })
        }
    }
}

fn emit(out: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{}", out.trim_end());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Answer::Definite(out)) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Ok(Answer::Unknown(out)) => {
            emit(&out);
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
