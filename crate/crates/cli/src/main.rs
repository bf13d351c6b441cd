//! Batch front end: reads a TOML job specification, runs one computation, and
//! writes a canonical JSON document. Exit codes classify failures so shell
//! pipelines can branch: 1 input error, 2 not-finite, 3 bound or resource
//! limit, 4 internal inconsistency.

mod output;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use nichols_core::braid::{gnk_def, gnk_factored};
use nichols_core::braided::{graded_ranks, BvsError, DEFAULT_TENSOR_CAP};
use nichols_core::groupoid::{
    evaluate_irreducibility, hull_lattice_points_of, run_algorithm, shapo_factor_for_root,
    GroupoidError,
};
use nichols_core::shapovalov::{classify_all_orbits, shapo_kernel, ShapoConfig, ShapoError};
use nichols_core::verify;

use output::{component_json, coords_json, cyc_json, diagram_json, factor_json, render};
use spec::JobSpec;

#[derive(Parser)]
#[command(
    name = "nichols",
    about = "Braided symmetrizers, Shapovalov kernels and Weyl-groupoid root data for Nichols algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Clone)]
enum Command {
    /// Reflections R_i(D) of the diagram at every node
    Reflect(CommonArgs),
    /// Cartan matrix, m-vector and per-node finiteness of the diagram
    Cartan(CommonArgs),
    /// Roots and positive roots from the groupoid sweep
    Roots(CommonArgs),
    /// Shapovalov factor list P and the determinant factors by positive root
    Shapovalov(CommonArgs),
    /// Irreducibility of the induced module at the given scalars r
    Irreducible(CommonArgs),
    /// Support vertices and (rank <= 3) the hull lattice points
    Support(CommonArgs),
    /// The shuffle elements g_{n,k} as explicit word sums, n <= max-degree
    Gnk(CommonArgs),
    /// Graded ranks of the Nichols components of the braided space
    #[command(name = "symmetrizer-rank")]
    SymmetrizerRank(CommonArgs),
    /// Per-degree kernels of the Shapovalov morphism on the space
    #[command(name = "shapo-kernel")]
    ShapoKernel(CommonArgs),
    /// Braiding orbits of basis pairs with their (m, q) classification
    Orbit(CommonArgs),
    /// Run the full property suite and report each invariant
    Verify(CommonArgs),
}

#[derive(clap::Args, Clone)]
struct CommonArgs {
    /// Path to the TOML job specification
    #[arg(long)]
    spec: PathBuf,
    /// Highest tensor degree to compute
    #[arg(long = "max-degree")]
    max_degree: Option<usize>,
    /// Cap on the number of groupoid automorphisms
    #[arg(long)]
    bound: Option<usize>,
    /// Comma-separated zeta-exponents of the scalars r
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    r: Option<Vec<i64>>,
    /// Write the JSON document here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

fn groupoid_failure(e: GroupoidError) -> Failure {
    let code = match &e {
        GroupoidError::NotIFinite { .. }
        | GroupoidError::InfiniteM { .. }
        | GroupoidError::InfiniteRootM(_) => 2,
        GroupoidError::BoundExceeded { .. } | GroupoidError::RankTooLarge(_) => 3,
    };
    Failure { code, message: e.to_string() }
}

fn shapo_failure(e: ShapoError) -> Failure {
    let code = match &e {
        ShapoError::Bvs(BvsError::ResourceExceeded { .. }) => 3,
        ShapoError::Bvs(BvsError::InvalidSpace(_)) => 1,
        ShapoError::Bvs(_) => 4,
        ShapoError::NoClosure { .. } => 3,
        _ => 1,
    };
    Failure { code, message: e.to_string() }
}

fn bvs_failure(e: BvsError) -> Failure {
    let code = match &e {
        BvsError::ResourceExceeded { .. } => 3,
        BvsError::InvalidSpace(_) => 1,
        _ => 4,
    };
    Failure { code, message: e.to_string() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, result) = dispatch(&cli.command);
    match result {
        Ok(doc) => {
            let text = render(&doc);
            if let Some(path) = &args.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{text}");
            }
            // verify reports a nonzero code when any invariant fails
            if let Command::Verify(_) = cli.command {
                if doc.get("all_passed") == Some(&Value::Bool(false)) {
                    return ExitCode::from(4);
                }
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(command: &Command) -> (CommonArgs, Result<Value, Failure>) {
    let args = match command {
        Command::Reflect(a)
        | Command::Cartan(a)
        | Command::Roots(a)
        | Command::Shapovalov(a)
        | Command::Irreducible(a)
        | Command::Support(a)
        | Command::Gnk(a)
        | Command::SymmetrizerRank(a)
        | Command::ShapoKernel(a)
        | Command::Orbit(a)
        | Command::Verify(a) => a.clone(),
    };
    let result = run_command(command, &args);
    (args, result)
}

fn load_spec(args: &CommonArgs) -> Result<JobSpec, Failure> {
    let text = std::fs::read_to_string(&args.spec)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", args.spec.display())))?;
    JobSpec::parse(&text).map_err(Failure::input)
}

fn run_command(command: &Command, args: &CommonArgs) -> Result<Value, Failure> {
    let spec = load_spec(args)?;
    match command {
        Command::Reflect(_) => cmd_reflect(&spec),
        Command::Cartan(_) => cmd_cartan(&spec),
        Command::Roots(_) => cmd_roots(&spec, args),
        Command::Shapovalov(_) => cmd_shapovalov(&spec, args),
        Command::Irreducible(_) => cmd_irreducible(&spec, args),
        Command::Support(_) => cmd_support(&spec, args),
        Command::Gnk(_) => cmd_gnk(&spec, args),
        Command::SymmetrizerRank(_) => cmd_symmetrizer_rank(&spec, args),
        Command::ShapoKernel(_) => cmd_shapo_kernel(&spec, args),
        Command::Orbit(_) => cmd_orbit(&spec),
        Command::Verify(_) => cmd_verify(),
    }
}

fn cmd_reflect(spec: &JobSpec) -> Result<Value, Failure> {
    let d = spec.dynkin_diagram().map_err(Failure::input)?;
    let mut reflections = Vec::new();
    for i in 1..=d.rank() {
        if d.is_i_finite(i) {
            let r = d.reflect(i).map_err(|e| Failure { code: 2, message: e.to_string() })?;
            reflections.push(json!({
                "node": i,
                "i_finite": true,
                "diagram": diagram_json(&r),
            }));
        } else {
            reflections.push(json!({ "node": i, "i_finite": false, "diagram": null }));
        }
    }
    Ok(json!({
        "command": "reflect",
        "diagram": diagram_json(&d),
        "reflections": reflections,
    }))
}

fn cmd_cartan(spec: &JobSpec) -> Result<Value, Failure> {
    let d = spec.dynkin_diagram().map_err(Failure::input)?;
    let theta = d.rank();
    let matrix: Vec<Vec<Value>> = (1..=theta)
        .map(|i| {
            (1..=theta)
                .map(|j| d.cartan(i, j).map_or(Value::Null, |a| json!(a)))
                .collect()
        })
        .collect();
    let m: Vec<Value> = (1..=theta)
        .map(|j| d.m(j).map_or(Value::Null, |v| json!(v)))
        .collect();
    let finite: Vec<bool> = (1..=theta).map(|i| d.is_i_finite(i)).collect();
    Ok(json!({
        "command": "cartan",
        "cartan_matrix": matrix,
        "m": m,
        "i_finite": finite,
    }))
}

fn cmd_roots(spec: &JobSpec, args: &CommonArgs) -> Result<Value, Failure> {
    let d = spec.dynkin_diagram().map_err(Failure::input)?;
    let state = run_algorithm(&d, spec.bound(args.bound)).map_err(groupoid_failure)?;
    Ok(json!({
        "command": "roots",
        "all_roots": state.sorted_roots(),
        "positive_roots": state.positive_roots(),
        "num_roots": state.roots.len(),
        "num_automorphisms": state.s_mats.len(),
    }))
}

fn cmd_shapovalov(spec: &JobSpec, args: &CommonArgs) -> Result<Value, Failure> {
    let d = spec.dynkin_diagram().map_err(Failure::input)?;
    let state = run_algorithm(&d, spec.bound(args.bound)).map_err(groupoid_failure)?;
    let factors: Vec<Value> = state.sorted_factors().iter().map(factor_json).collect();
    let mut by_root = Vec::new();
    for gamma in state.positive_roots() {
        let fs = shapo_factor_for_root(&d, &gamma).map_err(groupoid_failure)?;
        by_root.push(json!({
            "root": gamma,
            "factors": fs.iter().map(factor_json).collect::<Vec<_>>(),
        }));
    }
    Ok(json!({
        "command": "shapovalov",
        "factors": factors,
        "determinant_by_positive_root": by_root,
        "num_automorphisms": state.s_mats.len(),
    }))
}

fn cmd_irreducible(spec: &JobSpec, args: &CommonArgs) -> Result<Value, Failure> {
    let d = spec.dynkin_diagram().map_err(Failure::input)?;
    let r = spec.r_values(args.r.clone()).map_err(Failure::input)?;
    if r.len() != d.rank() {
        return Err(Failure::input(format!(
            "expected {} r-exponents, got {}",
            d.rank(),
            r.len()
        )));
    }
    let state = run_algorithm(&d, spec.bound(args.bound)).map_err(groupoid_failure)?;
    let (irreducible, witness) = evaluate_irreducibility(&state, &r).map_err(groupoid_failure)?;
    Ok(json!({
        "command": "irreducible",
        "r": r.iter().map(cyc_json).collect::<Vec<_>>(),
        "irreducible": irreducible,
        "witness": witness.map(|w| factor_json(&w)),
    }))
}

fn cmd_support(spec: &JobSpec, args: &CommonArgs) -> Result<Value, Failure> {
    let d = spec.dynkin_diagram().map_err(Failure::input)?;
    let state = run_algorithm(&d, spec.bound(args.bound)).map_err(groupoid_failure)?;
    let vertices = state.sorted_support();
    let lattice = if d.rank() <= 3 {
        Some(hull_lattice_points_of(&vertices).map_err(groupoid_failure)?)
    } else {
        None
    };
    Ok(json!({
        "command": "support",
        "vertices": vertices,
        "lattice_points": lattice,
    }))
}

fn cmd_gnk(spec: &JobSpec, args: &CommonArgs) -> Result<Value, Failure> {
    let n_max = spec.max_degree(args.max_degree);
    let mut table = Vec::new();
    for n in 0..=n_max {
        for k in 0..=n {
            let def_words: Vec<Vec<usize>> =
                gnk_def(n, k as i64).terms().map(|(w, _)| w.letters.clone()).collect();
            let factored_words: Vec<Vec<usize>> = gnk_factored(n, k)
                .map_err(Failure::input)?
                .terms()
                .map(|(w, _)| w.letters.clone())
                .collect();
            table.push(json!({
                "n": n,
                "k": k,
                "terms": def_words.len(),
                "def_words": def_words,
                "factored_words": factored_words,
            }));
        }
    }
    Ok(json!({ "command": "gnk", "table": table }))
}

fn cmd_symmetrizer_rank(spec: &JobSpec, args: &CommonArgs) -> Result<Value, Failure> {
    let space = spec.braided_space().map_err(Failure::input)?;
    let max_degree = spec.max_degree(args.max_degree);
    let ranks =
        graded_ranks(&space, max_degree, DEFAULT_TENSOR_CAP).map_err(bvs_failure)?;
    Ok(json!({
        "command": "symmetrizer-rank",
        "dim": space.dim(),
        "max_degree": max_degree,
        "ranks": ranks,
    }))
}

fn cmd_shapo_kernel(spec: &JobSpec, args: &CommonArgs) -> Result<Value, Failure> {
    let space = spec.braided_space().map_err(Failure::input)?;
    let lambda = spec.lambda().map_err(Failure::input)?;
    let max_degree = spec.max_degree(args.max_degree);
    let cfg = ShapoConfig::new(space, lambda.clone(), max_degree).map_err(shapo_failure)?;
    let graded = shapo_kernel(&cfg).map_err(shapo_failure)?;
    let kernels: Vec<Value> = graded
        .bases
        .iter()
        .map(|basis| Value::Array(basis.iter().map(|v| coords_json(v)).collect()))
        .collect();
    let components: Vec<Value> =
        graded.maps.iter().map(|m| component_json(&m.component)).collect();
    Ok(json!({
        "command": "shapo-kernel",
        "lambda": cyc_json(&lambda),
        "degrees": (1..=max_degree).collect::<Vec<_>>(),
        "dims": graded.dims,
        "kernels": kernels,
        "components": components,
    }))
}

fn cmd_orbit(spec: &JobSpec) -> Result<Value, Failure> {
    let space = spec.braided_space().map_err(Failure::input)?;
    let orbits = classify_all_orbits(&space).map_err(shapo_failure)?;
    Ok(json!({
        "command": "orbit",
        "orbits": orbits
            .iter()
            .map(|o| json!({
                "seed": [o.seed.0, o.seed.1],
                "m": o.m,
                "q": cyc_json(&o.q),
                "size": o.orbit_vectors.len(),
            }))
            .collect::<Vec<_>>(),
    }))
}

fn cmd_verify() -> Result<Value, Failure> {
    let results = verify::run_all();
    let all_passed = results.iter().all(|r| r.passed);
    Ok(json!({
        "command": "verify",
        "checks": results
            .iter()
            .map(|r| json!({ "name": r.name, "passed": r.passed, "detail": r.detail }))
            .collect::<Vec<_>>(),
        "all_passed": all_passed,
    }))
}
