//! Batch front end for the surlink library.
//!
//! Every subcommand reads JSON and writes JSON; output bytes are a pure
//! function of input bytes. Exit codes: 0 success, 1 bad input, 2 tracked
//! curve not null-homologous, 3 broken internal invariant.

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use surlink::diagram::{parse_diagram, BandSpec, Diagram};
use surlink::homlin::{
    h1_invariant_factors, linking_matrix, linking_vector, solve_integer_system, FramedLinkData,
    LinkingVector, H1,
};
use surlink::invariants::{
    alexander_polynomial, genus_bound, seifert_matrix_in_y, signature, BasisCurve, GenusBound,
    IntPolynomial, SeifertMatrix,
};
use surlink::slides::{
    apply_plan_diagram, apply_plan_ledger, lk_table, slide_plan, tracked_vectors, verify_ledger,
    Ledger, SlidePlan, VerifyOutcome,
};
use surlink::surgery::{extended_diagram_h1, framing_convert, lk_y, YLinkResult};

#[derive(Parser)]
#[command(
    name = "surlink",
    version,
    about = "Linking calculus for surgery presentations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct IoArgs {
    /// Input file; standard input when absent.
    #[arg(value_name = "INPUT")]
    input_pos: Option<PathBuf>,
    /// Input file (alternative to the positional form).
    #[arg(long, value_name = "PATH", conflicts_with = "input_pos")]
    input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Indent the JSON output.
    #[arg(long)]
    pretty: bool,
}

impl IoArgs {
    fn path(&self) -> Option<&PathBuf> {
        self.input_pos.as_ref().or(self.input.as_ref())
    }
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Tracked knot component.
    #[arg(long, value_name = "NAME")]
    curve: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a diagram file and print its canonical form.
    Validate(IoArgs),
    /// Linking matrix of the surgery components.
    Lkmatrix(IoArgs),
    /// First homology of the presented manifold.
    Homology(IoArgs),
    /// Solve M·X = V for a tracked curve.
    Solve(CurveArgs),
    /// Slide sequence realizing a solution vector.
    Plan(CurveArgs),
    /// Execute the slide plan on the diagram, with ledger verification.
    Slide {
        #[command(flatten)]
        args: CurveArgs,
        /// JSON list of band routes, one per slide step.
        #[arg(long, value_name = "PATH")]
        bands: Option<PathBuf>,
    },
    /// Linking number of two tracked curves in the surgered manifold.
    Lky {
        #[command(flatten)]
        io: IoArgs,
        /// Tracked knot component; give twice, first then second curve.
        #[arg(long, value_name = "NAME")]
        curve: Vec<String>,
    },
    /// Seifert matrix from basis-curve data.
    Seifert(IoArgs),
    /// Alexander polynomial and genus window of a Seifert matrix.
    Alexander(IoArgs),
    /// Signature of a Seifert matrix.
    Signature(IoArgs),
    /// S³ framing coefficient realizing a surgery coefficient downstairs.
    ConvertFraming(IoArgs),
    /// First homology of the extended presentation.
    ExtendH1(IoArgs),
    /// Full run: matrix, solve, plan, slide, verify, invariants.
    Pipeline(IoArgs),
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("input error: {0}")]
    Input(String),
    #[error("{0}")]
    Core(#[from] surlink::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(..) | CliError::Input(_) => 1,
            CliError::Core(e) => match e {
                surlink::Error::Parse(_)
                | surlink::Error::Validation(_)
                | surlink::Error::Dimension(_) => 1,
                surlink::Error::NotNullHomologous(_) => 2,
                surlink::Error::Internal(_) => 3,
            },
        }
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprintln!("{e}");
            return 1;
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn read_input(io: &IoArgs) -> Result<String, CliError> {
    match io.path() {
        Some(p) => fs::read_to_string(p).map_err(|e| CliError::Io(p.display().to_string(), e)),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io("<stdin>".into(), e))?;
            Ok(s)
        }
    }
}

fn emit_str(io: &IoArgs, body: String) -> Result<(), CliError> {
    let mut body = body;
    body.push('\n');
    match &io.output {
        Some(p) => fs::write(p, body).map_err(|e| CliError::Io(p.display().to_string(), e)),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn emit<T: Serialize>(io: &IoArgs, value: &T) -> Result<(), CliError> {
    let body = if io.pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .map_err(|e| CliError::Input(format!("serialization failed: {e}")))?;
    emit_str(io, body)
}

fn load_diagram(io: &IoArgs) -> Result<Diagram, CliError> {
    Ok(parse_diagram(&read_input(io)?)?)
}

/// Basis-curve input: the numerical surgery data plus the curve table.
#[derive(Deserialize)]
struct BasisFile {
    link: FramedLinkData,
    curves: Vec<BasisCurve>,
}

/// Accepts either a basis file or a bare Seifert matrix.
fn seifert_from_input(text: &str) -> Result<SeifertMatrix, CliError> {
    if let Ok(f) = serde_json::from_str::<BasisFile>(text) {
        return Ok(seifert_matrix_in_y(&f.curves, &f.link)?);
    }
    serde_json::from_str::<SeifertMatrix>(text).map_err(|e| {
        CliError::Input(format!(
            "expected {{\"link\", \"curves\"}} basis data or a bare integer matrix: {e}"
        ))
    })
}

fn warn_basis(a: &SeifertMatrix) {
    if !a.is_symplectic_basis() {
        eprintln!(
            "warning: basis intersection form is not unimodular, invariants may not be the knot's"
        );
    }
}

#[derive(Serialize)]
struct SolveReport {
    owner: String,
    #[serde(with = "surlink::jsonint::biglist")]
    v: Vec<BigInt>,
    #[serde(with = "surlink::jsonint::biglist")]
    x: Vec<BigInt>,
    #[serde(with = "surlink::jsonint::biglistlist")]
    kernel_basis: Vec<Vec<BigInt>>,
}

#[derive(Serialize)]
struct SlideReport {
    plan: SlidePlan,
    ledger: Ledger,
    verify: VerifyOutcome,
    diagram: Diagram,
}

#[derive(Serialize)]
struct SeifertReport {
    seifert_matrix: SeifertMatrix,
    symplectic_basis: bool,
}

#[derive(Serialize)]
struct AlexanderReport {
    alexander: IntPolynomial,
    display: String,
    symplectic_basis: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    genus: Option<GenusBound>,
}

#[derive(Serialize)]
struct SignatureReport {
    signature: i64,
    symplectic_basis: bool,
}

#[derive(Deserialize)]
struct ConvertFile {
    #[serde(with = "surlink::jsonint::big")]
    p: BigInt,
    #[serde(with = "surlink::jsonint::biglist")]
    x: Vec<BigInt>,
    #[serde(with = "surlink::jsonint::biglist")]
    v: Vec<BigInt>,
}

#[derive(Serialize)]
struct ConvertReport {
    #[serde(with = "surlink::jsonint::big")]
    p: BigInt,
    #[serde(with = "surlink::jsonint::big")]
    correction: BigInt,
    #[serde(with = "surlink::jsonint::big")]
    coefficient: BigInt,
}

#[derive(Deserialize)]
struct ExtendFile {
    link: FramedLinkData,
    curve: LinkingVector,
    #[serde(with = "surlink::jsonint::big")]
    coeff: BigInt,
}

#[derive(Serialize)]
struct ExtendReport {
    #[serde(with = "surlink::jsonint::big")]
    coefficient: BigInt,
    h1: H1,
}

#[derive(Deserialize)]
struct PipelineFile {
    diagram: Diagram,
    curve: String,
    #[serde(default)]
    basis: Option<Vec<BasisCurve>>,
    #[serde(default)]
    surgery_coefficient: Option<i64>,
    #[serde(default)]
    bands: Vec<BandSpec>,
}

#[derive(Serialize)]
struct SeifertSection {
    matrix: SeifertMatrix,
    symplectic_basis: bool,
    signature: i64,
    alexander: IntPolynomial,
    alexander_display: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    genus: Option<GenusBound>,
}

#[derive(Serialize)]
struct ExtensionSection {
    #[serde(with = "surlink::jsonint::big")]
    s3_coefficient: BigInt,
    h1: H1,
}

#[derive(Serialize)]
struct PipelineReport {
    link: FramedLinkData,
    homology: H1,
    curve: String,
    #[serde(with = "surlink::jsonint::biglist")]
    v: Vec<BigInt>,
    #[serde(with = "surlink::jsonint::biglist")]
    x: Vec<BigInt>,
    plan: SlidePlan,
    ledger: Ledger,
    verify: VerifyOutcome,
    slid_diagram: Diagram,
    #[serde(skip_serializing_if = "Option::is_none")]
    seifert: Option<SeifertSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extension: Option<ExtensionSection>,
}

fn solve_for(
    d: &Diagram,
    link: &FramedLinkData,
    curve: &str,
) -> Result<(LinkingVector, surlink::homlin::SolutionVector), CliError> {
    let c = d
        .component(curve)
        .ok_or_else(|| surlink::Error::validation(format!("unknown component {curve}")))?;
    if c.role != surlink::diagram::Role::Knot {
        return Err(surlink::Error::validation(format!(
            "component {curve} is a surgery component, not a tracked knot"
        ))
        .into());
    }
    let v = linking_vector(d, link, curve)?;
    let sol = solve_integer_system(&link.matrix, &v.v)?.ok_or_else(|| {
        surlink::Error::not_null_homologous(format!(
            "{curve} has no integer solution of MX = V in this presentation"
        ))
    })?;
    Ok((v, sol))
}

fn dispatch(cmd: Cmd) -> Result<i32, CliError> {
    match cmd {
        Cmd::Validate(io) => {
            let d = load_diagram(&io)?;
            emit_str(&io, d.to_canonical_string())?;
            Ok(0)
        }
        Cmd::Lkmatrix(io) => {
            let d = load_diagram(&io)?;
            emit(&io, &linking_matrix(&d)?)?;
            Ok(0)
        }
        Cmd::Homology(io) => {
            let d = load_diagram(&io)?;
            let link = linking_matrix(&d)?;
            emit(&io, &h1_invariant_factors(&link.matrix)?)?;
            Ok(0)
        }
        Cmd::Solve(args) => {
            let d = load_diagram(&args.io)?;
            let link = linking_matrix(&d)?;
            let (v, sol) = solve_for(&d, &link, &args.curve)?;
            emit(
                &args.io,
                &SolveReport {
                    owner: v.owner,
                    v: v.v,
                    x: sol.x,
                    kernel_basis: sol.kernel_basis,
                },
            )?;
            Ok(0)
        }
        Cmd::Plan(args) => {
            let d = load_diagram(&args.io)?;
            let link = linking_matrix(&d)?;
            let (_, sol) = solve_for(&d, &link, &args.curve)?;
            emit(&args.io, &slide_plan(&sol, &link.names)?)?;
            Ok(0)
        }
        Cmd::Slide { args, bands } => {
            let d = load_diagram(&args.io)?;
            let band_list: Vec<BandSpec> = match &bands {
                Some(p) => {
                    let text = fs::read_to_string(p)
                        .map_err(|e| CliError::Io(p.display().to_string(), e))?;
                    serde_json::from_str(&text)
                        .map_err(|e| CliError::Input(format!("band list: {e}")))?
                }
                None => Vec::new(),
            };
            let (report, code) = run_slides(&d, &args.curve, &band_list)?;
            emit(&args.io, &report)?;
            Ok(code)
        }
        Cmd::Lky { io, curve } => {
            if curve.len() != 2 {
                return Err(CliError::Input(format!(
                    "lky needs --curve twice (first and second curve), got {}",
                    curve.len()
                )));
            }
            let d = load_diagram(&io)?;
            let link = linking_matrix(&d)?;
            let (_, x1) = solve_for(&d, &link, &curve[0])?;
            let v2 = linking_vector(&d, &link, &curve[1])?;
            let lk_s3 = BigInt::from(surlink::diagram::linking_number_s3(
                &d, &curve[0], &curve[1],
            )?);
            let r: YLinkResult = lk_y(&link.matrix, &lk_s3, &x1, &v2)?;
            emit(&io, &r)?;
            Ok(0)
        }
        Cmd::Seifert(io) => {
            let a = seifert_from_input(&read_input(&io)?)?;
            warn_basis(&a);
            emit(
                &io,
                &SeifertReport {
                    symplectic_basis: a.is_symplectic_basis(),
                    seifert_matrix: a,
                },
            )?;
            Ok(0)
        }
        Cmd::Alexander(io) => {
            let a = seifert_from_input(&read_input(&io)?)?;
            warn_basis(&a);
            let delta = alexander_polynomial(&a)?;
            emit(
                &io,
                &AlexanderReport {
                    display: delta.to_string(),
                    symplectic_basis: a.is_symplectic_basis(),
                    genus: genus_bound(&delta, &a).ok(),
                    alexander: delta,
                },
            )?;
            Ok(0)
        }
        Cmd::Signature(io) => {
            let a = seifert_from_input(&read_input(&io)?)?;
            warn_basis(&a);
            emit(
                &io,
                &SignatureReport {
                    signature: signature(&a)?,
                    symplectic_basis: a.is_symplectic_basis(),
                },
            )?;
            Ok(0)
        }
        Cmd::ConvertFraming(io) => {
            let f: ConvertFile = serde_json::from_str(&read_input(&io)?)
                .map_err(|e| CliError::Input(format!("expected {{\"p\", \"x\", \"v\"}}: {e}")))?;
            let x = surlink::homlin::SolutionVector {
                x: f.x,
                kernel_basis: vec![],
            };
            let v = LinkingVector {
                owner: String::new(),
                v: f.v,
            };
            let coefficient = framing_convert(&f.p, &x, &v)?;
            emit(
                &io,
                &ConvertReport {
                    correction: &coefficient - &f.p,
                    p: f.p,
                    coefficient,
                },
            )?;
            Ok(0)
        }
        Cmd::ExtendH1(io) => {
            let f: ExtendFile = serde_json::from_str(&read_input(&io)?).map_err(|e| {
                CliError::Input(format!("expected {{\"link\", \"curve\", \"coeff\"}}: {e}"))
            })?;
            let h1 = extended_diagram_h1(&f.link, &f.curve, &f.coeff)?;
            emit(
                &io,
                &ExtendReport {
                    coefficient: f.coeff,
                    h1,
                },
            )?;
            Ok(0)
        }
        Cmd::Pipeline(io) => {
            let f: PipelineFile = serde_json::from_str(&read_input(&io)?).map_err(|e| {
                CliError::Input(format!(
                    "expected a pipeline file with \"diagram\" and \"curve\": {e}"
                ))
            })?;
            let mut d = f.diagram;
            d.validate()?;
            d.canonicalize();
            let link = linking_matrix(&d)?;
            let homology = h1_invariant_factors(&link.matrix)?;
            let (v, sol) = solve_for(&d, &link, &f.curve)?;
            let (slides, mut code) = run_slides_with(&d, &f.curve, &f.bands, &link, &v, &sol)?;

            let seifert = match &f.basis {
                Some(curves) => {
                    let a = seifert_matrix_in_y(curves, &link)?;
                    warn_basis(&a);
                    let delta = alexander_polynomial(&a)?;
                    Some(SeifertSection {
                        symplectic_basis: a.is_symplectic_basis(),
                        signature: signature(&a)?,
                        alexander_display: delta.to_string(),
                        genus: genus_bound(&delta, &a).ok(),
                        alexander: delta,
                        matrix: a,
                    })
                }
                None => None,
            };
            let extension = match f.surgery_coefficient {
                Some(p) => {
                    let coeff = framing_convert(&BigInt::from(p), &sol, &v)?;
                    let h1 = extended_diagram_h1(&link, &v, &coeff)?;
                    Some(ExtensionSection {
                        s3_coefficient: coeff,
                        h1,
                    })
                }
                None => None,
            };
            if !matches!(slides.verify, VerifyOutcome::Pass { .. }) {
                code = 3;
            }
            emit(
                &io,
                &PipelineReport {
                    link,
                    homology,
                    curve: f.curve,
                    v: v.v,
                    x: sol.x,
                    plan: slides.plan,
                    ledger: slides.ledger,
                    verify: slides.verify,
                    slid_diagram: slides.diagram,
                    seifert,
                    extension,
                },
            )?;
            Ok(code)
        }
    }
}

fn run_slides(
    d: &Diagram,
    curve: &str,
    bands: &[BandSpec],
) -> Result<(SlideReport, i32), CliError> {
    let link = linking_matrix(d)?;
    let (v, sol) = solve_for(d, &link, curve)?;
    run_slides_with(d, curve, bands, &link, &v, &sol)
}

fn run_slides_with(
    d: &Diagram,
    curve: &str,
    bands: &[BandSpec],
    link: &FramedLinkData,
    v: &LinkingVector,
    sol: &surlink::homlin::SolutionVector,
) -> Result<(SlideReport, i32), CliError> {
    let plan = slide_plan(sol, &link.names)?;
    let tracked = tracked_vectors(d, link, curve)?;
    let table = lk_table(d)?;
    let ledger = apply_plan_ledger(&plan, link, v, &tracked, table)?;
    let slid = apply_plan_diagram(&plan, d, curve, bands)?;
    let verify = verify_ledger(&slid, &ledger)?;
    let code = if matches!(verify, VerifyOutcome::Pass { .. }) {
        0
    } else {
        eprintln!("error: ledger and diagram disagree after sliding");
        3
    };
    Ok((
        SlideReport {
            plan,
            ledger,
            verify,
            diagram: slid,
        },
        code,
    ))
}
