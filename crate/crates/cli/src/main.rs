//! `hypertree`: JSON command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hypertree_core::constructions::{self, BicoloredTriangulation};
use hypertree_core::divisor::{self, hypertree_equation_at};
use hypertree_core::enumerate::{self, certificate_hash};
use hypertree_core::pullback;
use hypertree_core::realize::{self, DEFAULT_TOL_COL, DEFAULT_TOL_GEN};
use hypertree_core::{
    canonical_form, gieseker_stable, is_isomorphic, stable_model, Error, Hypertree, Result,
};

const SCHEMA: &str = "hypertree-cli/1";

#[derive(Parser)]
#[command(
    name = "hypertree",
    version,
    about = "Hypertrees, their divisors and realizations"
)]
struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Abort polynomial computations whose intermediate results exceed this
    /// many terms. Overrides HYPERTREE_BUDGET_TERMS.
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a hypertree and report valences, wheels and genericity.
    Check { file: PathBuf },
    /// List irreducible hypertrees on n points up to relabeling.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Write one JSON file per class plus index.json under DIR/n<K>.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build or split a bicolored sphere triangulation.
    Sphere(SphereArgs),
    /// Glue black and white hypertrees into a triangulation, if possible.
    Assemble { black: PathBuf, white: PathBuf },
    /// Add one vertex by the Fibonacci construction.
    Fib {
        file: PathBuf,
        /// Vertex of valence 2 to split.
        #[arg(long)]
        vertex: u32,
        /// Vertex outside both triples through `vertex`.
        #[arg(long)]
        partner: u32,
        /// Element of the modified triple kept next to the new vertex.
        #[arg(long)]
        role: Option<u32>,
    },
    /// Kapranov class coefficients of the pulled-back divisor.
    Class { file: PathBuf },
    /// Canonical determinantal equation.
    Equation {
        file: PathBuf,
        /// Row of A to delete (0-based, in sorted edge order).
        #[arg(long, default_value_t = 0)]
        row: usize,
    },
    /// Decide whether two hypertrees give the same divisor.
    Compare { a: PathBuf, b: PathBuf },
    /// Planar realization with verification.
    Realize {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 256)]
        bits: u32,
        #[arg(long, default_value_t = DEFAULT_TOL_COL)]
        tol_col: f64,
        #[arg(long, default_value_t = DEFAULT_TOL_GEN)]
        tol_gen: f64,
    },
    /// Classes of divisors given by explicit polynomials.
    Pullback {
        #[arg(long, value_enum)]
        example: Example,
        #[arg(long, value_enum, default_value_t = Emit::Class)]
        emit: Emit,
    },
    /// Gieseker stability of a multidegree on the stable hypertree curve.
    Stability {
        file: PathBuf,
        /// Comma-separated degrees per component, black then white
        /// (default: the dualizing multidegree).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        multidegree: Option<Vec<i64>>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SphereArgs {
    #[arg(long)]
    octahedron: bool,
    #[arg(long, value_name = "K")]
    bipyramid: Option<usize>,
    #[arg(long, value_name = "FILE")]
    quadruple: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    split: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Weierstrass,
    Bitangent,
    Trigonal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Poly,
    Table,
    Class,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Hypertree> {
    Hypertree::from_json(&read(path)?)
}

fn load_triangulation(path: &Path) -> Result<BicoloredTriangulation> {
    BicoloredTriangulation::from_json(&read(path)?)
}

fn budget(flag: Option<usize>) -> Result<Option<usize>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("HYPERTREE_BUDGET_TERMS") {
        Ok(v) => v
            .parse()
            .map(Some)
            .map_err(|_| Error::Input(format!("HYPERTREE_BUDGET_TERMS={v} is not a number"))),
        Err(_) => Ok(None),
    }
}

fn sphere_payload(t: &BicoloredTriangulation) -> Result<Value> {
    let report = constructions::validate_triangulation(t);
    let mut out = json!({ "triangulation": t, "validation": report });
    if report.valid {
        let (b, w) = constructions::black_white_hypertrees(t)?;
        out["black"] = json!({ "hypertree": b.to_json_value(), "irreducible": b.is_irreducible() });
        out["white"] = json!({ "hypertree": w.to_json_value(), "irreducible": w.is_irreducible() });
    }
    Ok(out)
}

fn run(cli: &Cli, diagnostics: &mut Vec<String>) -> Result<Value> {
    let budget = budget(cli.budget)?;
    match &cli.command {
        Command::Check { file } => {
            let h = load(file)?;
            let report = h.validate()?;
            let generic = if h.is_triples() && report.irreducible {
                Some(h.is_generic()?)
            } else {
                None
            };
            let canon = canonical_form(&h);
            Ok(json!({
                "hypertree": h.to_json_value(),
                "validation": report,
                "valences": h.valences(),
                "wheels": h.wheels(),
                "generic": generic,
                "automorphism_order": canon.automorphism_order,
                "certificate": certificate_hash(&canon.certificate),
            }))
        }
        Command::Enumerate { n, out } => {
            let classes = enumerate::enumerate_irreducible(*n)?;
            if let Some(dir) = out {
                enumerate::write_catalog(dir, *n, &classes)?;
                diagnostics.push(format!(
                    "catalog written to {}",
                    dir.join(format!("n{n}")).display()
                ));
            }
            let list: Vec<Value> = classes
                .iter()
                .map(|c| {
                    json!({
                        "edges": c.hypertree.edges(),
                        "automorphism_order": c.automorphism_order,
                        "certificate": certificate_hash(&c.certificate),
                    })
                })
                .collect();
            Ok(json!({ "n": n, "count": classes.len(), "classes": list }))
        }
        Command::Sphere(args) => {
            let t = if args.octahedron {
                constructions::octahedron()
            } else if let Some(k) = args.bipyramid {
                constructions::bipyramid(k)?
            } else if let Some(f) = &args.quadruple {
                constructions::quadruple(&load_triangulation(f)?)?
            } else if let Some(f) = &args.split {
                load_triangulation(f)?
            } else {
                unreachable!("clap requires one sphere source")
            };
            sphere_payload(&t)
        }
        Command::Assemble { black, white } => {
            let t = constructions::assemble_triangulation(&load(black)?, &load(white)?)?;
            Ok(json!({ "assembled": t.is_some(), "triangulation": t }))
        }
        Command::Fib {
            file,
            vertex,
            partner,
            role,
        } => {
            let h = constructions::fibonacci_extend(&load(file)?, *vertex, *partner, *role)?;
            Ok(json!({ "hypertree": h.to_json_value(), "validation": h.validate()? }))
        }
        Command::Class { file } => Ok(divisor::class_coefficients(&load(file)?)?.to_json()),
        Command::Equation { file, row } => {
            let p = hypertree_equation_at(&load(file)?, *row, budget)?;
            Ok(json!({
                "variables": p.context().names(),
                "terms": p.len(),
                "degree": p.total_degree(),
                "polynomial": p.to_string(),
            }))
        }
        Command::Compare { a, b } => {
            let (a, b) = (load(a)?, load(b)?);
            let same = divisor::same_divisor(&a, &b)?;
            Ok(json!({
                "verdict": same.verdict,
                "equations_equal": same.equations_equal,
                "isomorphic": is_isomorphic(&a, &b)?,
            }))
        }
        Command::Realize {
            file,
            seed,
            bits,
            tol_col,
            tol_gen,
        } => {
            let h = load(file)?;
            let r = realize::realize_with(&h, *seed, *bits, *tol_col, *tol_gen)?;
            let report = realize::verify_realization(&h, &r, *tol_col, *tol_gen);
            let mut out = r.to_json();
            out["verification"] = json!(report);
            if h.is_triples() {
                let eq = hypertree_equation_at(&h, 0, budget)?;
                out["equation_residual"] = json!(realize::equation_residual(&eq, &r.projected));
            }
            Ok(out)
        }
        Command::Pullback { example, emit } => {
            let (poly, marking) = match example {
                Example::Weierstrass => (pullback::weierstrass_polynomial()?, 7),
                Example::Bitangent => (pullback::bitangent_polynomial()?, 7),
                Example::Trigonal => {
                    let f = pullback::transversal_polynomial(budget)?;
                    (pullback::with_extra_marking(&f, "z")?, 11)
                }
            };
            let mut out = json!({
                "variables": poly.context().names(),
                "terms": poly.len(),
                "degree": poly.total_degree(),
            });
            match emit {
                Emit::Poly => out["polynomial"] = json!(poly.to_string()),
                Emit::Table => out["table"] = pullback::multiplicity_table(&poly)?.to_json(),
                Emit::Class => {
                    let table = pullback::multiplicity_table(&poly)?;
                    out["class"] = pullback::fm_to_kapranov(&table, marking)?.to_json();
                }
            }
            Ok(out)
        }
        Command::Stability { file, multidegree } => {
            let h = load(file)?;
            let g = stable_model(&h);
            let md = multidegree
                .clone()
                .unwrap_or_else(|| g.canonical_multidegree());
            let report = gieseker_stable(&g, &md)?;
            Ok(json!({
                "components": { "black": g.black_count(), "white": g.white_count() },
                "nodes": g.nodes.len(),
                "multidegree": md,
                "report": report,
            }))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Enumerate { .. } => "enumerate",
        Command::Sphere(_) => "sphere",
        Command::Assemble { .. } => "assemble",
        Command::Fib { .. } => "fib",
        Command::Class { .. } => "class",
        Command::Equation { .. } => "equation",
        Command::Compare { .. } => "compare",
        Command::Realize { .. } => "realize",
        Command::Pullback { .. } => "pullback",
        Command::Stability { .. } => "stability",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("could not configure thread pool: {e}");
        }
    }
    let mut diagnostics = Vec::new();
    let (status, payload, code) = match run(&cli, &mut diagnostics) {
        Ok(p) => ("ok", p, 0),
        Err(e) => {
            diagnostics.push(e.to_string());
            (
                "error",
                json!({ "kind": e.kind(), "message": e.to_string() }),
                e.exit_code(),
            )
        }
    };
    let out = json!({
        "schema": SCHEMA,
        "command": command_name(&cli.command),
        "status": status,
        "payload": payload,
        "diagnostics": diagnostics,
    });
    let text = serde_json::to_string_pretty(&out).expect("json values always serialize");
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(code as u8)
}
