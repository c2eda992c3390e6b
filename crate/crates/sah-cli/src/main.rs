//! Deterministic command-line front end for the spherical-polytope Hopf
//! algebra, the finite building homology, the step-function coalgebra, and
//! the Dehn-invariant calculator.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 precision/geometry error. Reports are byte-identical across runs with
//! the same command and flags; wall-clock timing goes to stderr only.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use exact_linalg::Vector;
use sah_cli::{parse::parse_vectors, suite, Config};
use serde::Serialize;
use serde_json::{json, Value};
use sharbly_hopf::{bialg_check, coassoc_check, cover_check, hopf_check, locate, Element};
use spherical_dehn::{
    cocomm_test, dehn_invariant, dihedral, edge_length, parse_angle, regular_tetra, Ctx,
    DehnError,
};
use step_complex::{
    apartment_cycle, build_complex, close_under_intersections, subset_lattice,
};

#[derive(Parser)]
#[command(name = "sah-cli", version, about = "spherical scissors-congruence toolkit")]
struct Cli {
    /// Seed for all randomized checks (logged in every report)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Working precision in bits for floating-point subcommands
    #[arg(long, global = true, default_value_t = 256)]
    bits: usize,
    /// Coefficient bound for integer-relation detection
    #[arg(long, global = true, default_value_t = 1_000_000)]
    height: u64,
    /// Largest ambient dimension exercised by randomized checks
    #[arg(long, global = true, default_value_t = 4)]
    max_dim: usize,
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Join product μ of the classes of two tuples
    Product {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Dehn coproduct δ of the class of a tuple
    Coproduct {
        #[arg(long)]
        vectors: String,
    },
    /// Antipode α (dual-tuple involution) of the class of a tuple
    Antipode {
        #[arg(long)]
        vectors: String,
    },
    /// Certify the Hopf identity μ(id⊗α)δ = ηε on the class of a basis
    HopfCheck {
        #[arg(long)]
        vectors: String,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
    },
    /// Certify that the 2ⁿ cones of a basis decompose the sphere
    CoverCheck {
        #[arg(long)]
        vectors: String,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
    },
    /// Bialgebra compatibility δμ = (μ⊗μ)(id⊗τ⊗id)(δ⊗δ) on two tuples
    BialgCheck {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Find the cone of a basis decomposition containing a point
    Locate {
        #[arg(long)]
        point: String,
        #[arg(long)]
        vectors: String,
    },
    /// Homology of the flag complex on the subspaces spanned by a tuple
    TitsHomology {
        #[arg(long)]
        vectors: String,
        #[arg(long)]
        degree: usize,
    },
    /// Apartment cycle of a basis and its homology-class coordinates
    Apartment {
        #[arg(long)]
        vectors: String,
    },
    /// Step-function coalgebra checks on seeded random instances
    StepCheck {
        #[arg(long, default_value_t = 100)]
        instances: usize,
    },
    /// Regular spherical tetrahedron: dihedral angle and Dehn invariant
    DehnTetra {
        /// Edge length, e.g. "pi/2", "1", "arccos(-1/3)"
        #[arg(long)]
        side: String,
    },
    /// Cocommutativity test for the Dehn invariant of a regular tetrahedron
    Cocomm {
        #[arg(long)]
        side: String,
    },
    /// Run the full acceptance battery with fixed documented seeds
    Suite,
}

/// Failures that abort a subcommand before it can produce a report. A
/// completed check that fails is not an error: it produces a report and
/// exit code 1.
enum CliError {
    Usage(String),
    Precision(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Precision(_) => "precision",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Precision(m) => m,
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Precision(_) => 3,
        }
    }
}

impl From<sharbly_hopf::HopfError> for CliError {
    fn from(e: sharbly_hopf::HopfError) -> CliError {
        CliError::Usage(e.to_string())
    }
}

impl From<step_complex::StepError> for CliError {
    fn from(e: step_complex::StepError) -> CliError {
        CliError::Usage(e.to_string())
    }
}

impl From<DehnError> for CliError {
    fn from(e: DehnError) -> CliError {
        match e {
            DehnError::Parse(m) => CliError::Usage(m),
            DehnError::Precision(m) | DehnError::Geometry(m) => CliError::Precision(m),
        }
    }
}

#[derive(Serialize)]
struct Report {
    command: String,
    config: Config,
    pass: bool,
    data: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = Config {
        seed: cli.seed,
        precision_bits: cli.bits,
        relation_height: cli.height,
        max_dim: cli.max_dim,
    };
    let output = cli.output;
    let start = Instant::now();
    let result = dispatch(&cli.command, &config);
    let elapsed = start.elapsed().as_millis();
    match result {
        Ok((pass, data, lines)) => {
            let report = Report {
                command: command_name(&cli.command).to_string(),
                config,
                pass,
                data,
            };
            match output {
                Output::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable report")
                ),
                Output::Text => {
                    for line in lines {
                        println!("{}", line);
                    }
                    println!("result: {}", if pass { "pass" } else { "FAIL" });
                }
            }
            eprintln!("elapsed_ms={}", elapsed);
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let payload = json!({ "error": { "kind": e.kind(), "message": e.message() } });
            match output {
                Output::Json => println!("{}", serde_json::to_string_pretty(&payload).unwrap()),
                Output::Text => eprintln!("error ({}): {}", e.kind(), e.message()),
            }
            ExitCode::from(e.code())
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Product { .. } => "product",
        Command::Coproduct { .. } => "coproduct",
        Command::Antipode { .. } => "antipode",
        Command::HopfCheck { .. } => "hopf-check",
        Command::CoverCheck { .. } => "cover-check",
        Command::BialgCheck { .. } => "bialg-check",
        Command::Locate { .. } => "locate",
        Command::TitsHomology { .. } => "tits-homology",
        Command::Apartment { .. } => "apartment",
        Command::StepCheck { .. } => "step-check",
        Command::DehnTetra { .. } => "dehn-tetra",
        Command::Cocomm { .. } => "cocomm",
        Command::Suite => "suite",
    }
}

type Outcome = Result<(bool, Value, Vec<String>), CliError>;

fn vectors(input: &str) -> Result<Vec<Vector>, CliError> {
    parse_vectors(input).map_err(CliError::Usage)
}

fn element(input: &str) -> Result<Element, CliError> {
    let t = vectors(input)?;
    Ok(Element::from_tuple(t[0].dim(), &t)?)
}

fn dispatch(cmd: &Command, config: &Config) -> Outcome {
    match cmd {
        Command::Product { left, right } => {
            let x = element(left)?;
            let y = element(right)?;
            if x.grading().ambient_dim() != y.grading().ambient_dim() {
                return Err(CliError::Usage(
                    "left and right tuples live in different ambient dimensions".into(),
                ));
            }
            let p = Element::mu(&x, &y)?;
            let text = format!("{}", p);
            Ok((true, json!({ "product": p, "text": text.clone() }), vec![text]))
        }
        Command::Coproduct { vectors: v } => {
            let x = element(v)?;
            let d = x.delta()?;
            let text = format!("{}", d);
            Ok((true, json!({ "coproduct": d, "text": text.clone() }), vec![text]))
        }
        Command::Antipode { vectors: v } => {
            let x = element(v)?;
            let a = x.antipode()?;
            let text = format!("{}", a);
            Ok((true, json!({ "antipode": a, "text": text.clone() }), vec![text]))
        }
        Command::HopfCheck { vectors: v, samples } => {
            let t = vectors(v)?;
            let rep = hopf_check(&t, *samples, config.seed)?;
            let lines = vec![
                format!("termwise cone decomposition: {}", verdict(rep.termwise_match)),
                format!("antipode transport: {}", verdict(rep.transport_match)),
                format!(
                    "cover certificate: {} ({} samples, {} unique, {} ties, seed {})",
                    verdict(rep.cover.pass),
                    rep.cover.samples,
                    rep.cover.unique,
                    rep.cover.ties,
                    rep.cover.seed
                ),
            ];
            Ok((rep.pass, serde_json::to_value(&rep).unwrap(), lines))
        }
        Command::CoverCheck { vectors: v, samples } => {
            let t = vectors(v)?;
            let rep = cover_check(&t, *samples, config.seed)?;
            let lines = vec![format!(
                "cover: {} ({} covered / {} samples, {} unique, {} ties, seed {})",
                verdict(rep.pass),
                rep.covered,
                rep.samples,
                rep.unique,
                rep.ties,
                rep.seed
            )];
            Ok((rep.pass, serde_json::to_value(&rep).unwrap(), lines))
        }
        Command::BialgCheck { left, right } => {
            let lt = vectors(left)?;
            let rt = vectors(right)?;
            if lt[0].dim() != rt[0].dim() {
                return Err(CliError::Usage(
                    "left and right tuples live in different ambient dimensions".into(),
                ));
            }
            let dim = lt[0].dim();
            let x = sharbly_hopf::normalize(dim, &lt)?
                .ok_or_else(|| CliError::Usage("left tuple is degenerate".into()))?
                .0;
            let y = sharbly_hopf::normalize(dim, &rt)?
                .ok_or_else(|| CliError::Usage("right tuple is degenerate".into()))?
                .0;
            let bialg = bialg_check(&x, &y)?;
            let combined: Vec<Vector> = lt.iter().chain(&rt).cloned().collect();
            let coassoc = coassoc_check(&combined)?;
            let pass = bialg && coassoc;
            let lines = vec![
                format!("bialgebra compatibility: {}", verdict(bialg)),
                format!("coassociativity: {}", verdict(coassoc)),
            ];
            Ok((pass, json!({ "bialg": bialg, "coassoc": coassoc }), lines))
        }
        Command::Locate { point, vectors: v } => {
            let p = sah_cli::parse::parse_vector(point).map_err(CliError::Usage)?;
            let t = vectors(v)?;
            if p.dim() != t[0].dim() {
                return Err(CliError::Usage(
                    "point and tuple live in different ambient dimensions".into(),
                ));
            }
            let loc = locate(&p, &t)?;
            let mut lines = Vec::new();
            match &loc.interior {
                Some(w) => lines.push(format!(
                    "interior of cone S = {:?} (all coefficients positive)",
                    w.subset
                )),
                None => lines.push("no strictly containing cone".into()),
            }
            for w in &loc.boundary {
                lines.push(format!("on the boundary of cone S = {:?}", w.subset));
            }
            Ok((true, serde_json::to_value(&loc).unwrap(), lines))
        }
        Command::TitsHomology { vectors: v, degree } => {
            let t = vectors(v)?;
            let dim = t[0].dim();
            let lattice = close_under_intersections(&subset_lattice(dim, &t)?)?;
            let complex = build_complex(&lattice)?;
            let (betti, torsion) = complex.homology(*degree);
            let torsion: Vec<String> = torsion.iter().map(|x| x.to_string()).collect();
            let mut desc = format!("Z^{}", betti);
            for d in &torsion {
                desc.push_str(&format!(" + Z/{}", d));
            }
            let lines = vec![format!("H_{} = {} (Betti {})", degree, desc, betti)];
            Ok((
                true,
                json!({ "degree": degree, "betti": betti, "torsion": torsion }),
                lines,
            ))
        }
        Command::Apartment { vectors: v } => {
            let t = vectors(v)?;
            let dim = t[0].dim();
            let complex = build_complex(&subset_lattice(dim, &t)?)?;
            let cycle = apartment_cycle(&t)?;
            let is_cycle = complex.boundary(&cycle)?.is_zero();
            let coords: Vec<String> = complex
                .class_coordinates(&cycle)?
                .iter()
                .map(|x| x.to_string())
                .collect();
            let lines = vec![
                format!("apartment chain is a cycle: {}", verdict(is_cycle)),
                format!("homology-class coordinates: [{}]", coords.join(", ")),
            ];
            Ok((
                is_cycle,
                json!({ "is_cycle": is_cycle, "class_coordinates": coords }),
                lines,
            ))
        }
        Command::StepCheck { instances } => step_check(config, *instances),
        Command::DehnTetra { side } => {
            let mut ctx = Ctx::new(config.precision_bits)?;
            let a = parse_angle(side, &mut ctx)?;
            let tetra = regular_tetra(&a, &mut ctx)?;
            let edge = edge_length(&tetra, (0, 1), &mut ctx)?;
            let d = dihedral(&tetra, (0, 1), &mut ctx)?;
            let inv = dehn_invariant(&tetra, &mut ctx)?;
            let reduced = spherical_dehn::reduce_tensor(&inv, config.relation_height, &mut ctx)?;
            let reduced_text = if reduced.is_zero() {
                "0 (reduced)".to_string()
            } else {
                format!("{}", reduced)
            };
            let lines = vec![
                format!("edge length: {}", edge),
                format!("dihedral angle: {}", d),
                format!("Dehn invariant: {}", inv),
                format!("reduced Dehn invariant: {}", reduced_text),
            ];
            Ok((
                true,
                json!({
                    "side": format!("{}", a),
                    "edge": edge,
                    "dihedral": d,
                    "tensor": inv,
                    "reduced": reduced,
                    "reduced_text": reduced_text,
                }),
                lines,
            ))
        }
        Command::Cocomm { side } => {
            let mut ctx = Ctx::new(config.precision_bits)?;
            let a = parse_angle(side, &mut ctx)?;
            let tetra = regular_tetra(&a, &mut ctx)?;
            let inv = dehn_invariant(&tetra, &mut ctx)?;
            let rep = cocomm_test(&inv, config.relation_height, &mut ctx)?;
            let mut lines = vec![format!(
                "cocommutative within bounds: {}",
                if rep.equal { "yes" } else { "no" }
            )];
            for n in &rep.notes {
                lines.push(format!("  {}", n));
            }
            Ok((true, serde_json::to_value(&rep).unwrap(), lines))
        }
        Command::Suite => {
            let results = suite::run_all();
            let pass = results.iter().all(|c| c.pass);
            let mut lines = vec![format!(
                "{:<3} {:<34} {:<6} details",
                "#", "criterion", "status"
            )];
            for c in &results {
                lines.push(format!(
                    "{:<3} {:<34} {:<6} {} (seed {})",
                    c.index,
                    c.name,
                    if c.pass { "pass" } else { "FAIL" },
                    c.details,
                    c.seed
                ));
                eprintln!("criterion {} elapsed_ms={}", c.index, c.millis);
            }
            // strip timing from the serialized report for byte determinism
            let data: Vec<Value> = results
                .iter()
                .map(|c| {
                    json!({
                        "index": c.index,
                        "name": c.name,
                        "seed": c.seed,
                        "pass": c.pass,
                        "details": c.details,
                    })
                })
                .collect();
            Ok((pass, json!({ "criteria": data }), lines))
        }
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn step_check(config: &Config, instances: usize) -> Outcome {
    use exact_linalg::Space;
    use rand::Rng;
    use sah_cli::gen::{orthogonal_pair, random_cut_system, random_stepfn};
    use sharbly_hopf::rng;
    use step_complex::{prod_coprod_check, theta};

    let max_dim = config.max_dim.clamp(2, 6);
    let mut r = rng::seeded(config.seed);
    let mut equivariance_ok = 0usize;
    for _ in 0..instances {
        let dim = r.gen_range(2..=max_dim);
        let basis = rng::random_basis(&mut r, dim);
        let phi = random_stepfn(&mut r, &Space::full(dim), &basis);
        let arity = r.gen_range(2..=3usize);
        let e = random_cut_system(&mut r, arity);
        let mut perm: Vec<usize> = (0..arity).collect();
        for k in (1..arity).rev() {
            perm.swap(k, r.gen_range(0..=k));
        }
        let direct = theta(&e, &phi)?;
        let permuted = theta(&e.permuted(&perm), &phi)?;
        let expect = direct.map(|v| perm.iter().map(|&k| v[k].clone()).collect::<Vec<_>>());
        if expect == permuted {
            equivariance_ok += 1;
        }
    }
    let mut prod_coprod_ok = 0usize;
    for _ in 0..instances {
        let dim = r.gen_range(2..=max_dim);
        let m = r.gen_range(1..dim);
        let n = r.gen_range(1..=(dim - m));
        let (a, b) = orthogonal_pair(&mut r, dim, m, n);
        let phi = random_stepfn(&mut r, &Space::span(dim, &a).unwrap(), &a);
        let psi = random_stepfn(&mut r, &Space::span(dim, &b).unwrap(), &b);
        let arity = r.gen_range(1..=3);
        let e = random_cut_system(&mut r, arity);
        if prod_coprod_check(&phi, &psi, &e)? {
            prod_coprod_ok += 1;
        }
    }
    let pass = equivariance_ok == instances && prod_coprod_ok == instances;
    let lines = vec![
        format!(
            "theta equivariance: {}/{} instances (seed {})",
            equivariance_ok, instances, config.seed
        ),
        format!(
            "product/coproduct compatibility: {}/{} instances",
            prod_coprod_ok, instances
        ),
    ];
    Ok((
        pass,
        json!({
            "instances": instances,
            "equivariance_ok": equivariance_ok,
            "prod_coprod_ok": prod_coprod_ok,
        }),
        lines,
    ))
}
