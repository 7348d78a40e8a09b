//! `sponge`: checks and invariants of sponge face complexes from the command
//! line. Every command prints one JSON report on stdout.
//!
//! Exit status: 0 on success, 1 when a check fails, 2 on bad input.

mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use sponge_core::complexes::homology;
use sponge_core::cosheaf::{dihomology_check, CosheafError};
use sponge_core::enumerative::{
    betti_polynomial, betti_polynomial_alt, duality_check, fvector_of, hilbert_equivariant,
    hvector_of,
};
use sponge_core::format::{
    parse_document, Document, FVectorDocument, SimplicialDocument, SpongeDocument,
};
use sponge_core::generators::{
    builtin, gen_model_sponge, gen_polytope_skeleton, gen_simplex_skeleton, gen_trivalent_sponges,
    Builtin,
};
use sponge_core::poset::{check_cohen_macaulay, reduced_simplicial_homology};
use sponge_core::search::{scan, scan_fvector_space, FspaceConstraint, ScanItem, UNREALIZED_LABEL};
use sponge_core::sponge::{
    cellular_complex, check_acyclic, check_local_model, local_cohomology, validate_sponge,
};
use sponge_core::{Coefficients, ExtendedFVector, SpongeComplex, Strategy};

use report::{bigs, fvector, poly, profile, series};

/// Scanned sponges are combinatorial: acyclic per check-acyclic and passing
/// check-local-model. Realizability by a torus action is not checked.
const SCAN_CLASS: &str = "acyclic sponge = check-acyclic and check-local-model pass (combinatorial class; realizability not checked)";

#[derive(Parser)]
#[command(
    name = "sponge",
    version,
    about = "Exact checks and invariants of sponge face complexes"
)]
struct Cli {
    /// Process work items on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Print a human-readable summary on stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// JSON document, or `-` for stdin.
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    file: Option<PathBuf>,
    /// Use a named example instead of a file.
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coeff {
    Z,
    Q,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Equivariant,
    Betti,
    BettiAlt,
}

#[derive(Subcommand)]
enum Command {
    /// Check the diamond relation and interval structure.
    Validate(Input),
    /// Homology of the cellular chain complex, or of a simplicial complex.
    Homology {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "z")]
        coeff: Coeff,
        #[arg(long)]
        reduced: bool,
    },
    CheckAcyclic(Input),
    CheckCm(Input),
    CheckLocalModel(Input),
    LocalCohomology {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        face: String,
    },
    DihomologyCheck(Input),
    Fvector(Input),
    Hvector(Input),
    Hilbert {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "equivariant")]
        which: Which,
    },
    DualityCheck(Input),
    /// Print a generated document.
    #[command(subcommand)]
    Gen(Gen),
    Scan {
        #[arg(long, value_parser = ["trivalent"], conflicts_with = "fspace")]
        family: Option<String>,
        /// Largest vertex count for the trivalent family.
        #[arg(long, requires = "family")]
        max: Option<usize>,
        /// Scan raw f-vectors instead of sponges.
        #[arg(long, requires_all = ["n", "bound"])]
        fspace: bool,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        bound: Option<u64>,
        /// Restrict the f-vector grid to cubic-graph shapes.
        #[arg(long, requires = "fspace")]
        trivalent: bool,
        /// JSON-lines file of finished records; resumes from it if present.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Gen {
    Model {
        #[arg(long)]
        n: usize,
    },
    SimplexSkeleton {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
    },
    PolytopeSkeleton {
        file: PathBuf,
    },
    Trivalent {
        #[arg(long)]
        max: usize,
    },
    Builtin {
        name: String,
    },
}

/// Why a command stopped without a verdict.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<(Value, bool), InputError>;

struct Loaded {
    document: Document,
    digest: String,
}

fn load(input: &Input) -> Result<Loaded, InputError> {
    let (document, bytes) = if let Some(name) = &input.builtin {
        let document = match builtin(name)? {
            Builtin::Sponge(z) => Document::Sponge(SpongeDocument::from_sponge(&z)),
            Builtin::FVector(fv) => Document::FVector(FVectorDocument::from(&fv)),
        };
        let bytes = document.to_json().into_bytes();
        (document, bytes)
    } else {
        let path = input
            .file
            .as_ref()
            .expect("clap requires a file or --builtin");
        let mut bytes = Vec::new();
        if path.as_os_str() == "-" {
            io::stdin().read_to_end(&mut bytes)?;
        } else {
            bytes = fs::read(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        }
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| InputError("input is not UTF-8".into()))?;
        (parse_document(&text)?, bytes)
    };
    Ok(Loaded {
        document,
        digest: digest(&bytes),
    })
}

/// Scans have no input file; their digest covers the parameters.
fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

fn sponge_of(doc: &Document) -> Result<SpongeComplex, InputError> {
    match doc {
        Document::Sponge(d) => Ok(d.to_sponge()?),
        other => Err(InputError(format!(
            "expected a sponge document, found a {} document",
            other.kind()
        ))),
    }
}

fn fvector_input(doc: &Document) -> Result<ExtendedFVector, InputError> {
    match doc {
        Document::FVector(d) => Ok(d.to_fvector()?),
        Document::Sponge(d) => Ok(fvector_of(&d.to_sponge()?)?),
        other => Err(InputError(format!(
            "expected a sponge or f-vector document, found a {} document",
            other.kind()
        ))),
    }
}

fn coefficients(c: Coeff) -> Coefficients {
    match c {
        Coeff::Z => Coefficients::Integers,
        Coeff::Q => Coefficients::Rationals,
    }
}

fn run_on_input(
    input: &Input,
    f: impl FnOnce(&Document) -> Outcome,
) -> Result<(Value, bool, Option<String>), InputError> {
    let loaded = load(input)?;
    let (result, passed) = f(&loaded.document)?;
    Ok((result, passed, Some(loaded.digest)))
}

fn dispatch(
    command: &Command,
    strategy: Strategy,
) -> Result<(Value, bool, Option<String>), InputError> {
    match command {
        Command::Validate(input) => run_on_input(input, |doc| {
            let z = sponge_of(doc)?;
            let r = validate_sponge(&z);
            let value = json!({
                "valid": r.is_valid(),
                "diamond_violations": r.diamond_violations.iter().map(|v| json!({
                    "upper": v.upper, "lower": v.lower, "sum": v.sum,
                })).collect::<Vec<_>>(),
                "interval_violations": r.interval_violations.iter().map(|v| json!({
                    "upper": v.upper, "lower": v.lower, "middles": v.middles,
                })).collect::<Vec<_>>(),
                "faces_without_vertex": r.faces_without_vertex,
            });
            Ok((value, r.is_valid()))
        }),
        Command::Homology {
            input,
            coeff,
            reduced,
        } => run_on_input(input, |doc| {
            let c = coefficients(*coeff);
            let h = match doc {
                Document::Simplicial(d) => {
                    let k = d.to_complex()?;
                    if *reduced {
                        reduced_simplicial_homology(&k, c)
                    } else {
                        homology(&k.chain_complex().0, c)
                    }
                }
                other => homology(&cellular_complex(&sponge_of(other)?, *reduced)?, c),
            };
            Ok((
                json!({ "reduced": reduced, "homology": profile(&h), "text": h.to_string() }),
                true,
            ))
        }),
        Command::CheckAcyclic(input) => run_on_input(input, |doc| {
            let r = check_acyclic(&sponge_of(doc)?)?;
            let value = json!({
                "acyclic": r.acyclic,
                "faces_ok": r.faces_ok,
                "lower_interval_failures": r.lower_interval_failures.iter().map(|f| json!({
                    "face": f.face, "dim": f.dim, "reduced_homology": profile(&f.reduced_homology),
                })).collect::<Vec<_>>(),
                "skeleton_acyclic_up_to": r.skeleton_acyclic_up_to,
                "b": r.b_number,
                "reduced_cohomology": profile(&r.reduced_cohomology),
            });
            Ok((value, r.acyclic))
        }),
        Command::CheckCm(input) => run_on_input(input, |doc| {
            let p = match doc {
                Document::Polytope(d) => d.to_lattice()?.poset()?,
                other => sponge_of(other)?.faces().clone(),
            };
            let r = check_cohen_macaulay(&p, Coefficients::Integers, strategy);
            let value = json!({
                "is_cm": r.is_cm,
                "chains_checked": r.chains_checked,
                "torsion_only": r.torsion_only,
                "witnesses": r.witnesses.iter().map(|w| json!({
                    "chain": w.chain,
                    "link_dimension": w.link_dimension,
                    "degree": w.degree,
                    "free_rank": w.homology.free_rank,
                    "torsion": w.homology.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            Ok((value, r.is_cm))
        }),
        Command::CheckLocalModel(input) => run_on_input(input, |doc| {
            let v = check_local_model(&sponge_of(doc)?)?;
            let value = json!({
                "note": "cover counts only; necessary for the local model, possibly not sufficient",
                "violations": v.iter().map(|x| json!({
                    "face": x.face, "dim": x.dim, "cofaces": x.cofaces, "expected": x.expected,
                })).collect::<Vec<_>>(),
            });
            Ok((value, v.is_empty()))
        }),
        Command::LocalCohomology { input, face } => run_on_input(input, |doc| {
            let h = local_cohomology(&sponge_of(doc)?, face, Coefficients::Integers)?;
            Ok((
                json!({ "face": face, "cohomology": profile(&h), "text": h.to_string() }),
                true,
            ))
        }),
        Command::DihomologyCheck(input) => run_on_input(input, |doc| {
            let z = sponge_of(doc)?;
            match dihomology_check(&z, strategy) {
                Ok(r) => {
                    let value = json!({
                        "passed": r.passed,
                        "top_degree": r.top_degree,
                        "cosheaf_side": profile(&r.cosheaf_side),
                        "space_side": profile(&r.space_side),
                        "rank_mismatch": r.rank_mismatch,
                        "off_top_sections": r.off_top_sections.iter().map(|(f, d)| json!({ "face": f, "degree": d })).collect::<Vec<_>>(),
                        "integral": r.integral.as_ref().map(|i| json!({
                            "cosheaf_side": profile(&i.cosheaf_side),
                            "space_side": profile(&i.space_side),
                            "first_mismatch": i.first_mismatch,
                        })),
                    });
                    Ok((value, r.passed))
                }
                Err(CosheafError::NotCohenMacaulay { witnesses }) => Ok((
                    json!({ "passed": false, "not_cohen_macaulay": { "witnesses": witnesses } }),
                    false,
                )),
                Err(e) => Err(e.into()),
            }
        }),
        Command::Fvector(input) => run_on_input(input, |doc| {
            let fv = fvector_input(doc)?;
            Ok((
                json!({ "fvector": fvector(&fv), "euler_consistent": fv.satisfies_euler() }),
                true,
            ))
        }),
        Command::Hvector(input) => run_on_input(input, |doc| {
            let fv = fvector_input(doc)?;
            let h = hvector_of(&fv);
            let value = json!({
                "fvector": fvector(&fv),
                "h": bigs(&h.h),
                "symmetric": h.symmetric,
                "nonnegative": h.nonnegative,
            });
            Ok((value, true))
        }),
        Command::Hilbert { input, which } => run_on_input(input, |doc| {
            let fv = fvector_input(doc)?;
            let value = match which {
                Which::Equivariant => {
                    json!({ "which": "equivariant", "series": series(&hilbert_equivariant(&fv)) })
                }
                Which::Betti => {
                    json!({ "which": "betti", "polynomial": poly(&betti_polynomial(&fv)) })
                }
                Which::BettiAlt => {
                    json!({ "which": "betti-alt", "polynomial": poly(&betti_polynomial_alt(&fv)) })
                }
            };
            Ok((value, true))
        }),
        Command::DualityCheck(input) => run_on_input(input, |doc| {
            let fv = fvector_input(doc)?;
            let r = duality_check(&fv);
            let value = json!({
                "holds": r.holds,
                "betti": poly(&r.betti),
                "betti_alt": poly(&r.betti_alt),
                "reflected_alt": { "min_power": r.reflected_alt.min_power, "coefficients": bigs(&r.reflected_alt.coeffs) },
            });
            Ok((value, r.holds))
        }),
        Command::Gen(g) => gen(g).map(|v| (v, true, None)),
        Command::Scan {
            family,
            max,
            fspace,
            n,
            bound,
            trivalent,
            checkpoint,
        } => {
            if *fspace {
                let constraint = if *trivalent {
                    FspaceConstraint::Trivalent
                } else {
                    FspaceConstraint::None
                };
                let s = scan_fvector_space(n.unwrap(), bound.unwrap(), constraint)?;
                let point = |p: &sponge_core::search::FspacePoint| json!({ "fvector": fvector(&p.fvector), "h": p.h });
                let value = json!({
                    "mode": "fspace",
                    "label": UNREALIZED_LABEL,
                    "n": s.n,
                    "bound": s.bound,
                    "points": s.points,
                    "skipped_negative_b": s.skipped_negative_b,
                    "asymmetric": s.asymmetric.iter().map(point).collect::<Vec<_>>(),
                    "negative": s.negative.iter().map(point).collect::<Vec<_>>(),
                });
                return Ok((
                    value,
                    true,
                    Some(digest(
                        format!("fspace n={} bound={} trivalent={trivalent}", s.n, s.bound)
                            .as_bytes(),
                    )),
                ));
            }
            if family.is_none() {
                return Err(InputError(
                    "scan needs --family trivalent --max V or --fspace --n N --bound B".into(),
                ));
            }
            let max = max.ok_or_else(|| InputError("--family trivalent needs --max".into()))?;
            let items: Vec<ScanItem> = gen_trivalent_sponges(max)?
                .into_iter()
                .map(|(g, sponge)| ScanItem {
                    id: g.code(),
                    sponge,
                })
                .collect();
            let s = scan(&items, strategy, checkpoint.as_deref())?;
            let passed = s.ds_failures.is_empty() && s.nonneg_failures.is_empty();
            let mut value = serde_json::to_value(&s)?;
            value["mode"] = json!("family");
            value["family"] = json!("trivalent");
            value["max_vertices"] = json!(max);
            value["class"] = json!(SCAN_CLASS);
            Ok((
                value,
                passed,
                Some(digest(format!("family=trivalent max={max}").as_bytes())),
            ))
        }
    }
}

fn gen(g: &Gen) -> Result<Value, InputError> {
    let doc = match g {
        Gen::Model { n } => Document::Sponge(SpongeDocument::from_sponge(&gen_model_sponge(*n)?)),
        Gen::SimplexSkeleton { m, k } => Document::Simplicial(SimplicialDocument::from_complex(
            &gen_simplex_skeleton(*m, *k)?,
        )),
        Gen::PolytopeSkeleton { file } => {
            let text = fs::read_to_string(file)
                .map_err(|e| InputError(format!("{}: {e}", file.display())))?;
            let lattice = match parse_document(&text)? {
                Document::Polytope(d) => d.to_lattice()?,
                other => {
                    return Err(InputError(format!(
                        "expected a polytope document, found a {} document",
                        other.kind()
                    )))
                }
            };
            Document::Sponge(SpongeDocument::from_sponge(&gen_polytope_skeleton(
                &lattice,
            )?))
        }
        Gen::Trivalent { max } => {
            let graphs: Vec<Value> = gen_trivalent_sponges(*max)?
                .iter()
                .map(|(g, z)| json!({ "id": g.code(), "sponge": SpongeDocument::from_sponge(z) }))
                .collect();
            return Ok(json!({ "count": graphs.len(), "graphs": graphs }));
        }
        Gen::Builtin { name } => match builtin(name)? {
            Builtin::Sponge(z) => Document::Sponge(SpongeDocument::from_sponge(&z)),
            Builtin::FVector(fv) => Document::FVector(FVectorDocument::from(&fv)),
        },
    };
    Ok(serde_json::from_str(&doc.to_json())?)
}

fn command_echo() -> Vec<String> {
    std::env::args().skip(1).collect()
}

fn summary(value: &Value) -> String {
    let mut lines = Vec::new();
    if let Value::Object(map) = value {
        for (k, v) in map {
            let shown = match v {
                Value::Array(a) if a.len() > 8 => format!("[{} entries]", a.len()),
                Value::Object(_) => "{..}".to_string(),
                other => other.to_string(),
            };
            lines.push(format!("  {k}: {shown}"));
        }
    }
    lines.join("\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let strategy = if cli.sequential {
        Strategy::Sequential
    } else {
        Strategy::Parallel
    };
    let is_gen = matches!(cli.command, Command::Gen(_));
    let (body, code) = match dispatch(&cli.command, strategy) {
        Ok((result, passed, digest)) => {
            if is_gen {
                (result, 0)
            } else {
                let verbose = cli.verbose.then(|| summary(&result));
                let body = json!({
                    "command": command_echo(),
                    "input_digest": digest,
                    "passed": passed,
                    "result": result,
                });
                if let Some(text) = verbose {
                    eprintln!(
                        "{}: {}\n{text}",
                        command_echo().join(" "),
                        if passed { "pass" } else { "FAIL" }
                    );
                }
                (body, if passed { 0 } else { 1 })
            }
        }
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            (json!({ "command": command_echo(), "error": message }), 2)
        }
    };
    let mut out = io::stdout().lock();
    let text = serde_json::to_string_pretty(&body).expect("reports always serialize");
    // A closed pipe downstream is not worth a panic.
    let _ = writeln!(out, "{text}");
    ExitCode::from(code)
}
