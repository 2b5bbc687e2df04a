use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use operads::bar::{
    alpha_p, beta, big_gamma_path, embed_relative, retract, usual_map, BarPath, EndLabel,
};
use operads::literal::{
    affine_tree_literal, bar_literal, closed_tree_literal, config_literal, parse_affine_tree,
    parse_bar_element, parse_closed_tree, parse_config, parse_pc_path, parse_tree,
    pc_path_literal, shape_literal, tree_literal,
};
use operads::moore::{Affine, MoorePath, TreePath};
use operads::operad_k::{
    comb_decompose, compose_act, compose_k, enumerate_faces, face_representative, length_l,
    length_li, ActPoint,
};
use operads::paths::{fn_loop, gamma, lambda, sigma, FamilyPath};
use operads::scalar::in_unit_interval;
use operads::swiss_cheese::{
    compose_closed, compose_open_closed, compose_open_open, rho_action, Config, PCPath,
};
use operads::tree::{Color, Tree};
use operads::{FiniteAction, Q};

use operads_cli::monoid_file::load_action;
use operads_cli::render::{config_svg, tree_svg};
use operads_cli::verify::{run as run_suite, Mutation, SUITES};

#[derive(Parser)]
#[command(
    name = "operads",
    about = "Exact computations with metric-tree operads, bar constructions and interval configurations",
    version
)]
struct Cli {
    /// Output format for structured results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Tree calculus: normal forms, grafting, shift and deshift.
    Tree {
        #[command(subcommand)]
        cmd: TreeCmd,
    },
    /// The associahedra: faces, lengths, comb decompositions.
    K {
        #[command(subcommand)]
        cmd: KCmd,
    },
    /// The path families σ, γ, λ and serialized path evaluation.
    Path {
        #[command(subcommand)]
        cmd: PathCmd,
    },
    /// The two-sided bar construction over a finite monoid file.
    Bar {
        #[command(subcommand)]
        cmd: BarCmd,
    },
    /// Interval configurations, θ and the loop algebra.
    Sc {
        #[command(subcommand)]
        cmd: ScCmd,
    },
    /// Run a verification suite.
    Verify {
        /// Suite name, or `all`.
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: u64,
        /// Plant a known defect to exercise the driver itself.
        #[arg(long, value_enum)]
        inject: Option<Inject>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Inject {
    LengthSign,
}

#[derive(Subcommand)]
enum TreeCmd {
    /// Print the canonical representative of the quotient class.
    Normalize(TreeArg),
    /// Graft a tree on a leaf, creating an edge with the given length.
    Graft {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        at: usize,
        #[arg(long)]
        label: String,
        #[arg(long)]
        with: String,
    },
    /// Re-root along the last leaf.
    Shift(TreeArg),
    /// Re-root along the first leaf.
    Deshift(TreeArg),
    /// Operadic composition at full length, normalized.
    Compose {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        at: usize,
        #[arg(long)]
        with: String,
    },
    /// Draw the tree.
    Render(TreeArg),
}

#[derive(Args)]
struct TreeArg {
    #[arg(long)]
    tree: String,
}

#[derive(Subcommand)]
enum KCmd {
    /// Enumerate the faces of the n-th associahedron with their f-vector.
    Faces {
        #[arg(long)]
        n: usize,
    },
    /// The length l(T), and the spine length lᵢ(T) with --spine.
    Length {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        spine: Option<usize>,
    },
    /// The comb decomposition into comb-irreducible factors.
    Comb {
        #[arg(long)]
        tree: String,
    },
}

#[derive(Subcommand)]
enum PathCmd {
    /// The loop path σ(T), of Moore length l(T).
    Sigma(PathArgs),
    /// The unit-length retraction path γ_T.
    Gamma(PathArgs),
    /// The equivariance path λ(T).
    Lambda(PathArgs),
    /// The loop skeleton of the higher structure maps of the usual map.
    FnLoop(PathArgs),
    /// Evaluate a serialized path at a time.
    Eval {
        /// JSON file with {"segments": [{"shape": .., "duration": ..}]}.
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        at: String,
    },
}

#[derive(Args)]
struct PathArgs {
    #[arg(long)]
    tree: String,
    /// Evaluate at this time instead of printing the whole path.
    #[arg(long)]
    at: Option<String>,
}

#[derive(Subcommand)]
enum BarCmd {
    /// Rewriting normal form of a bar element.
    Normalize {
        #[arg(long)]
        monoid: PathBuf,
        #[arg(long)]
        element: String,
    },
    /// The length-two loop of a monoid element in the classifying space.
    UsualMap {
        #[arg(long)]
        monoid: PathBuf,
        #[arg(long)]
        element: String,
        #[arg(long)]
        at: Option<String>,
    },
    /// Act with the whole word on the last slot.
    Retract {
        #[arg(long)]
        monoid: PathBuf,
        #[arg(long)]
        element: String,
    },
    /// The retraction homotopy Γ of an element of B(X,X,P).
    Gamma {
        #[arg(long)]
        monoid: PathBuf,
        #[arg(long)]
        element: String,
        #[arg(long)]
        at: Option<String>,
    },
    /// The projected path α_P into B(∗,X,P).
    Alpha {
        #[arg(long)]
        monoid: PathBuf,
        #[arg(long)]
        element: String,
        #[arg(long)]
        at: Option<String>,
    },
    /// The relative loop β from the apex into the orbit space.
    Beta {
        #[arg(long)]
        monoid: PathBuf,
        #[arg(long)]
        element: String,
        #[arg(long)]
        at: Option<String>,
    },
    /// The cone path γ_p of a module element.
    EmbedRelative {
        #[arg(long)]
        monoid: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long)]
        at: Option<String>,
    },
    /// Check the action-axiom conditions exhaustively.
    ValidateIm {
        #[arg(long)]
        monoid: PathBuf,
        #[arg(long, default_value_t = 5)]
        max_leaves: usize,
    },
}

#[derive(Subcommand)]
enum ScCmd {
    /// Compose configurations: closed into closed or open, open into open.
    Compose {
        #[arg(long)]
        config: String,
        /// Closed slot index; omit to glue an open configuration.
        #[arg(long)]
        at: Option<usize>,
        #[arg(long)]
        with: String,
    },
    /// The interval image of a colored tree.
    Theta {
        #[arg(long)]
        tree: String,
    },
    /// Run loops and a relative path through an open configuration.
    Rho {
        #[arg(long)]
        config: String,
        /// Value names, basepoint first, e.g. "*,b,a".
        #[arg(long)]
        space: String,
        /// One pc{...} literal per closed slot.
        #[arg(long = "loop")]
        loops: Vec<String>,
        #[arg(long)]
        rel: String,
    },
    /// Draw the configuration.
    Render {
        #[arg(long)]
        config: String,
        /// Draw an open configuration in the symmetric [-1,1] picture.
        #[arg(long)]
        symmetric: bool,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    VerificationFailed,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::VerificationFailed => write!(f, "verification failed"),
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn parse_rational(text: &str) -> Result<Q, CliError> {
    operads::literal::parse_rational::<Q>(text)
        .map_err(|_| CliError::Usage(format!("invalid rational `{text}`")))
}

fn parse_time(text: &str) -> Result<Q, CliError> {
    let t = parse_rational(text)?;
    Ok(t)
}

fn parse_unit_time(text: &str) -> Result<Q, CliError> {
    let t = parse_rational(text)?;
    if !in_unit_interval(&t) {
        return Err(CliError::Usage(format!("time `{text}` outside [0,1]")));
    }
    Ok(t)
}

fn closed_input(text: &str) -> Result<Tree<Q>, CliError> {
    parse_closed_tree::<Q>(text).map_err(usage)
}

fn print_tree(format: Format, t: &Tree<Q>, color: Color) {
    match format {
        Format::Text => println!("{}", tree_literal(t, color)),
        Format::Json => println!("{}", json!({ "tree": tree_literal(t, color) })),
        Format::Svg => print!("{}", tree_svg(t, color)),
    }
}

fn path_segments_json(p: &TreePath<Q>) -> serde_json::Value {
    let segments: Vec<_> = p
        .segments()
        .iter()
        .map(|(fam, dur)| {
            json!({
                "shape": affine_tree_literal(fam),
                "duration": dur.to_string(),
            })
        })
        .collect();
    json!({ "length": p.total_length().to_string(), "segments": segments })
}

fn print_tree_path(format: Format, fp: &FamilyPath<Q>, at: Option<Q>) -> Result<(), CliError> {
    match at {
        Some(t) => {
            let point = fp.path.eval(&t).map_err(usage)?;
            print_tree(
                if format == Format::Svg {
                    Format::Svg
                } else {
                    format
                },
                &point,
                Color::Closed,
            );
        }
        None => match format {
            Format::Text => {
                println!("length {}", fp.path.total_length());
                for (fam, dur) in fp.path.segments() {
                    println!("{} | {}", dur, affine_tree_literal(fam));
                }
            }
            Format::Json => println!("{}", path_segments_json(&fp.path)),
            Format::Svg => {
                return Err(CliError::Usage(
                    "svg output for paths needs --at <time>".into(),
                ))
            }
        },
    }
    Ok(())
}

fn bar_path_summary(format: Format, p: &BarPath<Q>, at: Option<Q>) -> Result<(), CliError> {
    match at {
        Some(t) => {
            let point = p.eval(&t).map_err(usage)?;
            match format {
                Format::Text => println!("{}", bar_literal(&point)),
                Format::Json => println!("{}", json!({ "element": bar_literal(&point) })),
                Format::Svg => print_tree(Format::Svg, &point.tree, Color::Closed),
            }
        }
        None => {
            let start = p.start();
            let end = p.end();
            match format {
                Format::Text => {
                    println!("length {}", p.total_length());
                    println!("start {}", bar_literal(&start));
                    println!("end   {}", bar_literal(&end));
                }
                Format::Json => println!(
                    "{}",
                    json!({
                        "length": p.total_length().to_string(),
                        "start": bar_literal(&start),
                        "end": bar_literal(&end),
                    })
                ),
                Format::Svg => {
                    return Err(CliError::Usage(
                        "svg output for paths needs --at <time>".into(),
                    ))
                }
            }
        }
    }
    Ok(())
}

fn load_monoid(path: &std::path::Path) -> Result<Arc<FiniteAction>, CliError> {
    Ok(Arc::new(load_action(path).map_err(usage)?))
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let format = cli.format;
    match cli.command {
        Command::Tree { cmd } => match cmd {
            TreeCmd::Normalize(a) => {
                let (t, color) = parse_tree::<Q>(&a.tree).map_err(usage)?;
                print_tree(format, &t.normalize(), color);
            }
            TreeCmd::Graft {
                tree,
                at,
                label,
                with,
            } => {
                let (t, tc) = parse_tree::<Q>(&tree).map_err(usage)?;
                let (s, sc) = parse_tree::<Q>(&with).map_err(usage)?;
                let r = parse_rational(&label)?;
                if !in_unit_interval(&r) {
                    return Err(CliError::Usage("edge length must lie in [0,1]".into()));
                }
                let a = ActPoint { tree: t, color: tc };
                let b = ActPoint { tree: s, color: sc };
                let out = compose_act(&a, at, r, &b).map_err(usage)?;
                print_tree(format, &out.tree, out.color);
            }
            TreeCmd::Shift(a) => {
                let t = closed_input(&a.tree)?;
                print_tree(format, &t.shift(), Color::Closed);
            }
            TreeCmd::Deshift(a) => {
                let t = closed_input(&a.tree)?;
                print_tree(format, &t.deshift(), Color::Closed);
            }
            TreeCmd::Compose { tree, at, with } => {
                let t = closed_input(&tree)?;
                let s = closed_input(&with)?;
                let out = compose_k(&t, at, &s).map_err(usage)?;
                print_tree(format, &out, Color::Closed);
            }
            TreeCmd::Render(a) => {
                let (t, color) = parse_tree::<Q>(&a.tree).map_err(usage)?;
                print!("{}", tree_svg(&t, color));
            }
        },
        Command::K { cmd } => match cmd {
            KCmd::Faces { n } => {
                let faces = enumerate_faces(n).map_err(usage)?;
                let mut counts = vec![0usize; n - 1];
                for f in &faces {
                    counts[f.dim] += 1;
                }
                let fv = counts
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                match format {
                    Format::Text => {
                        println!("f-vector {fv}");
                        for f in &faces {
                            println!(
                                "dim {} {}",
                                f.dim,
                                closed_tree_literal(&face_representative::<Q>(&f.shape))
                            );
                        }
                    }
                    Format::Json => {
                        let list: Vec<_> = faces
                            .iter()
                            .map(|f| json!({ "dim": f.dim, "shape": shape_literal(&f.shape) }))
                            .collect();
                        println!("{}", json!({ "f_vector": counts, "faces": list }));
                    }
                    Format::Svg => {
                        return Err(CliError::Usage("faces have no svg output".into()))
                    }
                }
            }
            KCmd::Length { tree, spine } => {
                let t = closed_input(&tree)?;
                match spine {
                    None => {
                        let l = length_l(&t).map_err(usage)?;
                        match format {
                            Format::Json => println!("{}", json!({ "length": l.to_string() })),
                            _ => println!("{l}"),
                        }
                    }
                    Some(i) => {
                        let l = length_li(&t, i).map_err(usage)?;
                        match format {
                            Format::Json => println!("{}", json!({ "length": l.to_string() })),
                            _ => println!("{l}"),
                        }
                    }
                }
            }
            KCmd::Comb { tree } => {
                let t = closed_input(&tree)?;
                let comb = comb_decompose(&t);
                match format {
                    Format::Json => {
                        let factors: Vec<_> = comb
                            .factors
                            .iter()
                            .map(closed_tree_literal)
                            .collect();
                        let labels: Vec<_> =
                            comb.labels.iter().map(|l| l.to_string()).collect();
                        println!("{}", json!({ "factors": factors, "labels": labels }));
                    }
                    _ => {
                        for (k, f) in comb.factors.iter().enumerate() {
                            println!("factor {} {}", k + 1, closed_tree_literal(f));
                        }
                        for (k, l) in comb.labels.iter().enumerate() {
                            println!("label u{} = {}", k + 1, l);
                        }
                    }
                }
            }
        },
        Command::Path { cmd } => match cmd {
            PathCmd::Sigma(a) => {
                let t = closed_input(&a.tree)?;
                let fp = sigma(&t).map_err(usage)?;
                let at = a.at.as_deref().map(parse_time).transpose()?;
                print_tree_path(format, &fp, at)?;
            }
            PathCmd::Gamma(a) => {
                let t = closed_input(&a.tree)?;
                let fp = gamma(&t).map_err(usage)?;
                let at = a.at.as_deref().map(parse_time).transpose()?;
                print_tree_path(format, &fp, at)?;
            }
            PathCmd::Lambda(a) => {
                let t = closed_input(&a.tree)?;
                let fp = lambda(&t).map_err(usage)?;
                let at = a.at.as_deref().map(parse_time).transpose()?;
                print_tree_path(format, &fp, at)?;
            }
            PathCmd::FnLoop(a) => {
                let t = closed_input(&a.tree)?;
                let fp = fn_loop(&t).map_err(usage)?;
                let at = a.at.as_deref().map(parse_time).transpose()?;
                print_tree_path(format, &fp, at)?;
            }
            PathCmd::Eval { file, at } => {
                let text = std::fs::read_to_string(&file)
                    .map_err(|e| CliError::Usage(format!("cannot read {file:?}: {e}")))?;
                let doc: serde_json::Value = serde_json::from_str(&text).map_err(usage)?;
                let segments = doc
                    .get("segments")
                    .and_then(|s| s.as_array())
                    .ok_or_else(|| CliError::Usage("missing `segments` array".into()))?;
                let mut parsed: Vec<(Tree<Affine<Q>>, Q)> = Vec::new();
                for seg in segments {
                    let shape = seg
                        .get("shape")
                        .and_then(|v| v.as_str())
                        .ok_or_else(|| CliError::Usage("segment without `shape`".into()))?;
                    let duration = seg
                        .get("duration")
                        .and_then(|v| v.as_str())
                        .ok_or_else(|| CliError::Usage("segment without `duration`".into()))?;
                    parsed.push((
                        parse_affine_tree::<Q>(shape).map_err(usage)?,
                        parse_rational(duration)?,
                    ));
                }
                let path: TreePath<Q> = MoorePath::new(parsed).map_err(usage)?;
                let t = parse_time(&at)?;
                let point = path.eval(&t).map_err(usage)?;
                print_tree(format, &point, Color::Closed);
            }
        },
        Command::Bar { cmd } => match cmd {
            BarCmd::Normalize { monoid, element } => {
                let action = load_monoid(&monoid)?;
                let el = parse_bar_element::<Q>(&element, &action).map_err(usage)?;
                let normal = el.normalize();
                match format {
                    Format::Json => println!("{}", json!({ "element": bar_literal(&normal) })),
                    _ => println!("{}", bar_literal(&normal)),
                }
            }
            BarCmd::UsualMap {
                monoid,
                element,
                at,
            } => {
                let action = load_monoid(&monoid)?;
                let x = action
                    .index(&element)
                    .ok_or_else(|| CliError::Usage(format!("unknown element `{element}`")))?;
                let p = usual_map::<Q>(&action, x).map_err(usage)?;
                let at = at.as_deref().map(parse_time).transpose()?;
                bar_path_summary(format, &p, at)?;
            }
            BarCmd::Retract { monoid, element } => {
                let action = load_monoid(&monoid)?;
                let el = parse_bar_element::<Q>(&element, &action).map_err(usage)?;
                let value = retract(&el).map_err(usage)?;
                let name = match value {
                    EndLabel::Set(i) => action.left_set().unwrap().names[i].clone(),
                    EndLabel::Monoid(x) => action.name(x).to_string(),
                    EndLabel::Star => "*".to_string(),
                    EndLabel::Cone { base, height } => {
                        format!("[{},{height}]", action.left_set().unwrap().names[base])
                    }
                    EndLabel::Apex => "apex".to_string(),
                };
                match format {
                    Format::Json => println!("{}", json!({ "point": name })),
                    _ => println!("{name}"),
                }
            }
            BarCmd::Gamma {
                monoid,
                element,
                at,
            } => {
                let action = load_monoid(&monoid)?;
                let el = parse_bar_element::<Q>(&element, &action).map_err(usage)?;
                let p = big_gamma_path(&el).map_err(usage)?;
                let at = at.as_deref().map(parse_unit_time).transpose()?;
                bar_path_summary(format, &p, at)?;
            }
            BarCmd::Alpha {
                monoid,
                element,
                at,
            } => {
                let action = load_monoid(&monoid)?;
                let el = parse_bar_element::<Q>(&element, &action).map_err(usage)?;
                let p = alpha_p(&el).map_err(usage)?;
                let at = at.as_deref().map(parse_unit_time).transpose()?;
                bar_path_summary(format, &p, at)?;
            }
            BarCmd::Beta {
                monoid,
                element,
                at,
            } => {
                let action = load_monoid(&monoid)?;
                let el = parse_bar_element::<Q>(&element, &action).map_err(usage)?;
                let p = beta(&el).map_err(usage)?;
                let at = at.as_deref().map(parse_time).transpose()?;
                bar_path_summary(format, &p, at)?;
            }
            BarCmd::EmbedRelative { monoid, point, at } => {
                let action = load_monoid(&monoid)?;
                let idx = action
                    .left_set()
                    .and_then(|s| s.names.iter().position(|n| *n == point))
                    .ok_or_else(|| CliError::Usage(format!("unknown module point `{point}`")))?;
                let p = embed_relative::<Q>(&action, idx).map_err(usage)?;
                let at = at.as_deref().map(parse_unit_time).transpose()?;
                bar_path_summary(format, &p, at)?;
            }
            BarCmd::ValidateIm { monoid, max_leaves } => {
                let action = load_monoid(&monoid)?;
                let report = operads::bar::validate_iwase_mimura(&action, max_leaves);
                match format {
                    Format::Json => {
                        let violations: Vec<_> = report
                            .violations
                            .iter()
                            .map(|v| json!({ "condition": v.condition, "detail": v.detail }))
                            .collect();
                        println!(
                            "{}",
                            json!({ "checked": report.checked, "violations": violations })
                        );
                    }
                    _ => {
                        println!("checked {}", report.checked);
                        for v in &report.violations {
                            println!("violated {}: {}", v.condition, v.detail);
                        }
                        if report.is_ok() {
                            println!("all conditions hold");
                        }
                    }
                }
                if !report.is_ok() {
                    return Err(CliError::VerificationFailed);
                }
            }
        },
        Command::Sc { cmd } => match cmd {
            ScCmd::Compose { config, at, with } => {
                let a = parse_config::<Q>(&config).map_err(usage)?;
                let b = parse_config::<Q>(&with).map_err(usage)?;
                let out = match (a, b, at) {
                    (Config::Closed(c), Config::Closed(d), Some(i)) => {
                        Config::Closed(compose_closed(&c, i, &d).map_err(usage)?)
                    }
                    (Config::Open(o), Config::Closed(d), Some(i)) => {
                        Config::Open(compose_open_closed(&o, i, &d).map_err(usage)?)
                    }
                    (Config::Open(o), Config::Open(d), None) => {
                        Config::Open(compose_open_open(&o, &d).map_err(usage)?)
                    }
                    (_, Config::Open(_), Some(_)) => {
                        return Err(CliError::Usage(
                            "open configurations glue into the distinguished interval; omit --at"
                                .into(),
                        ))
                    }
                    (_, Config::Closed(_), None) => {
                        return Err(CliError::Usage(
                            "closed configurations need a slot index --at".into(),
                        ))
                    }
                    (Config::Closed(_), Config::Open(_), None) => {
                        return Err(CliError::Usage(
                            "closed configurations have no open slot".into(),
                        ))
                    }
                };
                match format {
                    Format::Json => println!("{}", json!({ "config": config_literal(&out) })),
                    Format::Svg => print!("{}", config_svg(&out)),
                    Format::Text => println!("{}", config_literal(&out)),
                }
            }
            ScCmd::Theta { tree } => {
                let (t, color) = parse_tree::<Q>(&tree).map_err(usage)?;
                let image = operads::swiss_cheese::theta(&ActPoint { tree: t, color })
                    .map_err(usage)?;
                match format {
                    Format::Json => println!("{}", json!({ "config": config_literal(&image) })),
                    Format::Svg => print!("{}", config_svg(&image)),
                    Format::Text => println!("{}", config_literal(&image)),
                }
            }
            ScCmd::Rho {
                config,
                space,
                loops,
                rel,
            } => {
                let names: Vec<String> =
                    space.split(',').map(|s| s.trim().to_string()).collect();
                if names.is_empty() {
                    return Err(CliError::Usage("empty value space".into()));
                }
                let resolve = |n: &str| names.iter().position(|m| m == n);
                let cfg = parse_config::<Q>(&config).map_err(usage)?;
                let Config::Open(o) = cfg else {
                    return Err(CliError::Usage(
                        "the loop algebra acts through open configurations".into(),
                    ));
                };
                let loops: Vec<PCPath<Q>> = loops
                    .iter()
                    .map(|l| parse_pc_path::<Q>(l, &resolve))
                    .collect::<Result<_, _>>()
                    .map_err(usage)?;
                let rel = parse_pc_path::<Q>(&rel, &resolve).map_err(usage)?;
                let out = rho_action(&o, &loops, &rel, 0).map_err(usage)?;
                let namer = |i: usize| names[i].clone();
                match format {
                    Format::Json => {
                        println!("{}", json!({ "path": pc_path_literal(&out, &namer) }))
                    }
                    _ => println!("{}", pc_path_literal(&out, &namer)),
                }
            }
            ScCmd::Render { config, symmetric } => {
                let c = parse_config::<Q>(&config).map_err(usage)?;
                if symmetric {
                    let Config::Open(o) = &c else {
                        return Err(CliError::Usage(
                            "the symmetric picture exists for open configurations".into(),
                        ));
                    };
                    print!("{}", operads_cli::render::symmetric_svg(o));
                } else {
                    print!("{}", config_svg(&c));
                }
            }
        },
        Command::Verify {
            suite,
            seed,
            cases,
            inject,
        } => {
            let mutation = match inject {
                None => Mutation::None,
                Some(Inject::LengthSign) => Mutation::LengthSign,
            };
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let mut any_failed = false;
            for name in names {
                let Some(report) = run_suite(name, seed, cases, mutation) else {
                    return Err(CliError::Usage(format!(
                        "unknown suite `{name}`; known: {}",
                        SUITES.join(", ")
                    )));
                };
                eprintln!("suite {name}: {} ms", report.millis);
                match format {
                    Format::Json => {
                        let failures: Vec<_> = report
                            .failures
                            .iter()
                            .map(|f| {
                                json!({
                                    "case": f.case,
                                    "literal": f.literal,
                                    "message": f.message,
                                })
                            })
                            .collect();
                        println!(
                            "{}",
                            json!({
                                "suite": report.suite,
                                "seed": report.seed,
                                "cases": report.cases,
                                "failures": failures,
                            })
                        );
                    }
                    _ => {
                        println!(
                            "suite {} seed {} cases {}: {}",
                            report.suite,
                            report.seed,
                            report.cases,
                            if report.ok() {
                                "ok".to_string()
                            } else {
                                format!("{} failures", report.failures.len())
                            }
                        );
                        for f in &report.failures {
                            println!("  case {}: {} [{}]", f.case, f.message, f.literal);
                        }
                    }
                }
                any_failed |= !report.ok();
            }
            if any_failed {
                return Err(CliError::VerificationFailed);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::VerificationFailed) => ExitCode::from(1),
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
