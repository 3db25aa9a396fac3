//! Command-line front end. Results go to `--out` files; diagnostics go to
//! stderr. Exit codes: 0 success, 1 negative result, 2 invalid input,
//! 3 field too small or budget exhausted.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::csa::{
    adjoint_involution, quaternion_conjugation, seed_orthogonal, seed_symplectic, transpose_involution, Algebra,
    Involution,
};
use crate::error::Error;
use crate::etale::{etale_type, generate_etale};
use crate::exactalg::arith::{pi_degree, vp_factorial};
use crate::exactalg::{Field, Matrix, Scalar};
use crate::ideals::{splitting_idempotent, Flag, RightIdeal};
use crate::io;
use crate::pointcount::{enumerate_points, h_link_graph, CurveGenerator, DEFAULT_BUDGET};
use crate::witness::{
    connect_exp2, connect_flags, connect_ideals, connect_max_etale, connect_quadric_points, default_samples,
    verify_chain, WitnessChain, WitnessKind,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Retry budget for randomized constructions.
const RETRIES: usize = 50;

#[derive(Parser, Debug)]
#[command(name = "csa-witness", version, about = "Construct and verify rational-curve witnesses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    #[command(subcommand)]
    Ideal(IdealCmd),
    #[command(subcommand)]
    Involution(InvolutionCmd),
    #[command(subcommand)]
    Etale(EtaleCmd),
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Re-check a witness file.
    Verify {
        #[arg(long)]
        witness: PathBuf,
        #[command(flatten)]
        samples: SampleArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the closed points of degree dividing `--degree` of a model.
    Enumerate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Linkage graph on reduced cycles of degree `--n` of a quadric model.
    Hgraph {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [Generator::QuadricChains, Generator::DivisorPencils])]
        generators: Vec<Generator>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: PathBuf,
    },
    #[command(subcommand)]
    Arith(ArithCmd),
}

#[derive(Subcommand, Debug)]
enum AlgebraCmd {
    New {
        #[arg(long, value_enum)]
        preset: PresetArg,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        /// Tensor factors (algebra files).
        #[arg(long)]
        left: Option<PathBuf>,
        #[arg(long)]
        right: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    Show {
        #[arg(long)]
        algebra: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum IdealCmd {
    Random {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        rdim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// The right ideal generated by elements given as `;`-separated
    /// coordinate lists.
    Generate {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        elements: String,
        #[arg(long)]
        out: PathBuf,
    },
    Check {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum InvolutionCmd {
    New {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, value_enum)]
        kind: InvolutionArg,
        /// Gram matrix for `adjoint`, rows separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    Type {
        #[arg(long)]
        involution: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum EtaleCmd {
    Generate {
        #[arg(long)]
        algebra: PathBuf,
        /// Coordinates of the generator, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        generator: String,
        /// Factors of the minimal polynomial over `Q`, `;`-separated
        /// coefficient lists (lowest degree first).
        #[arg(long, allow_hyphen_values = true)]
        minpoly_factors: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    Type {
        #[arg(long)]
        subalgebra: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum WitnessCmd {
    ConnectIdeals(ConnectArgs),
    ConnectFlags(ConnectArgs),
    ConnectEtale(ConnectArgs),
    ConnectExp2(ConnectArgs),
    ConnectQuadric {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
struct ConnectArgs {
    #[arg(long)]
    algebra: Option<PathBuf>,
    #[arg(long)]
    from: PathBuf,
    #[arg(long)]
    to: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    #[arg(long, allow_hyphen_values = true)]
    samples: Option<String>,
}

#[derive(Subcommand, Debug)]
enum ArithCmd {
    /// `v_p(n!)`.
    Vp {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
    },
    /// `(nm)! / ((n!)^m m!)` and whether it is prime to `p`.
    Pidegree {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PresetArg {
    Matrix,
    Quaternion,
    Tensor,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InvolutionArg {
    Transpose,
    Adjoint,
    Conjugation,
    Orthogonal,
    Symplectic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Generator {
    QuadricChains,
    DivisorPencils,
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Generator::QuadricChains => "quadric-chains",
            Generator::DivisorPencils => "divisor-pencils",
        })
    }
}

/// Failure of a command, carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::FieldTooSmall(_) | Error::BudgetExceeded(_) | Error::ConstructionFailed(_) => EXIT_BUDGET,
            _ => EXIT_INVALID,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_INVALID, message: msg.into() }
}

fn read_json(path: &Path) -> std::result::Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    Ok(io::from_text(&text)?)
}

fn write_json(path: &Path, v: &Value) -> std::result::Result<(), Failure> {
    fs::write(path, io::to_text(v)).map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))
}

/// Splits on `sep` outside square brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(s[start..i].trim());
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out.into_iter().filter(|p| !p.is_empty()).collect()
}

fn parse_scalars(f: &Field, s: &str) -> std::result::Result<Vec<Scalar>, Failure> {
    Ok(split_top(s, ',').into_iter().map(|x| f.parse(x)).collect::<crate::Result<Vec<_>>>()?)
}

fn load_algebra(path: &Path) -> std::result::Result<Arc<Algebra>, Failure> {
    Ok(io::algebra_from_json(&read_json(path)?)?)
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command) -> CmdResult {
    match cmd {
        Command::Algebra(c) => algebra_cmd(c),
        Command::Ideal(c) => ideal_cmd(c),
        Command::Involution(c) => involution_cmd(c),
        Command::Etale(c) => etale_cmd(c),
        Command::Witness(c) => witness_cmd(c),
        Command::Verify { witness, samples, out } => verify_cmd(&witness, &samples, out.as_deref()),
        Command::Enumerate { model, degree, budget, out } => {
            let x = io::model_from_json(&read_json(&model)?)?;
            let pts = enumerate_points(&x, degree, budget)?;
            eprintln!("{} closed points of degree dividing {degree}", pts.len());
            write_json(&out, &json!({"degree": degree, "count": pts.len(), "points": io::closed_points_to_json(&pts)}))?;
            Ok(EXIT_OK)
        }
        Command::Hgraph { model, n, generators, seed, budget, out } => {
            let x = io::model_from_json(&read_json(&model)?)?;
            let gens: Vec<CurveGenerator> = generators
                .iter()
                .map(|g| match g {
                    Generator::QuadricChains => CurveGenerator::QuadricChains,
                    Generator::DivisorPencils => CurveGenerator::DivisorPencils,
                })
                .collect();
            let g = h_link_graph(&x, n, &gens, budget, seed)?;
            eprintln!("{} vertices, {} edges, {} components", g.vertices.len(), g.edges.len(), g.components);
            write_json(&out, &io::graph_to_json(&g))?;
            Ok(if g.is_connected() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Arith(ArithCmd::Vp { p, n }) => {
            println!("{}", vp_factorial(p, n)?);
            Ok(EXIT_OK)
        }
        Command::Arith(ArithCmd::Pidegree { p, n, m }) => {
            let d = pi_degree(p, n, m)?;
            println!("{} prime_to_p={}", d.degree, d.prime_to_p);
            Ok(EXIT_OK)
        }
    }
}

fn algebra_cmd(c: AlgebraCmd) -> CmdResult {
    match c {
        AlgebraCmd::New { preset, field, n, a, b, left, right, out } => {
            let field = || -> std::result::Result<Field, Failure> {
                Ok(io::parse_field_flag(field.as_deref().ok_or_else(|| invalid("--field is required"))?)?)
            };
            let alg = match preset {
                PresetArg::Matrix => Algebra::matrix(&field()?, n.ok_or_else(|| invalid("--n is required"))?)?,
                PresetArg::Quaternion => {
                    let f = field()?;
                    let a = f.parse(a.as_deref().ok_or_else(|| invalid("--a is required"))?)?;
                    let b = f.parse(b.as_deref().ok_or_else(|| invalid("--b is required"))?)?;
                    Algebra::quaternion(&f, &a, &b)?
                }
                PresetArg::Tensor => {
                    let l = load_algebra(&left.ok_or_else(|| invalid("--left is required"))?)?;
                    let r = load_algebra(&right.ok_or_else(|| invalid("--right is required"))?)?;
                    Algebra::tensor(&l, &r)?
                }
            };
            write_json(&out, &io::algebra_to_json(&alg))?;
            Ok(EXIT_OK)
        }
        AlgebraCmd::Show { algebra } => {
            let a = load_algebra(&algebra)?;
            println!("field {} dim {} degree {}", a.field(), a.dim(), a.degree());
            match a.module_presentation() {
                Ok(p) => println!("A = M_{}(D), deg D = {}", a.degree() / p.deg_d(), p.deg_d()),
                Err(e) => println!("no module presentation: {e}"),
            }
            println!("exponent two certified: {}", a.exponent_two_certified());
            Ok(EXIT_OK)
        }
    }
}

fn ideal_cmd(c: IdealCmd) -> CmdResult {
    match c {
        IdealCmd::Random { algebra, rdim, seed, out } => {
            let a = load_algebra(&algebra)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let i = RightIdeal::random(&a, rdim, &mut rng)?;
            write_json(&out, &io::ideal_to_json(&i))?;
            Ok(EXIT_OK)
        }
        IdealCmd::Generate { algebra, elements, out } => {
            let a = load_algebra(&algebra)?;
            let gens = split_top(&elements, ';')
                .into_iter()
                .map(|s| Ok(a.element(parse_scalars(a.field(), s)?)?))
                .collect::<std::result::Result<Vec<_>, Failure>>()?;
            let i = RightIdeal::generated(&a, &gens)?;
            eprintln!("rdim {}", i.rdim());
            write_json(&out, &io::ideal_to_json(&i))?;
            Ok(EXIT_OK)
        }
        IdealCmd::Check { ideal, out } => {
            let v = read_json(&ideal)?;
            let i = match io::ideal_from_json(&v, None) {
                Ok(i) => i,
                Err(e @ Error::InvalidInput(_)) => {
                    eprintln!("not a right ideal: {e}");
                    return Ok(EXIT_NEGATIVE);
                }
                Err(e) => return Err(e.into()),
            };
            let e = splitting_idempotent(&i)?;
            let ok = e.mul(&e) == e && RightIdeal::generated(i.algebra(), &[e.clone()])? == i;
            eprintln!("rdim {}, splitting idempotent {}", i.rdim(), if ok { "verified" } else { "FAILED" });
            if let Some(out) = out {
                write_json(&out, &json!({"rdim": i.rdim(), "idempotent": io::vec_to_json(e.coords()), "pass": ok}))?;
            }
            Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}

fn parse_matrix(f: &Field, s: &str) -> std::result::Result<Matrix, Failure> {
    let rows = split_top(s, ';').into_iter().map(|r| parse_scalars(f, r)).collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(f, rows)?)
}

fn involution_cmd(c: InvolutionCmd) -> CmdResult {
    match c {
        InvolutionCmd::New { algebra, kind, matrix, out } => {
            let a = load_algebra(&algebra)?;
            let s: Involution = match kind {
                InvolutionArg::Transpose => transpose_involution(&a)?,
                InvolutionArg::Adjoint => {
                    let m = parse_matrix(a.field(), matrix.as_deref().ok_or_else(|| invalid("--matrix is required"))?)?;
                    adjoint_involution(&a, &m)?
                }
                InvolutionArg::Conjugation => quaternion_conjugation(&a)?,
                InvolutionArg::Orthogonal => seed_orthogonal(&a)?,
                InvolutionArg::Symplectic => seed_symplectic(&a)?,
            };
            write_json(&out, &io::involution_to_json(&s))?;
            Ok(EXIT_OK)
        }
        InvolutionCmd::Type { involution } => {
            let s = io::involution_from_json(&read_json(&involution)?)?;
            println!("{}", s.kind().as_str());
            Ok(EXIT_OK)
        }
    }
}

fn etale_cmd(c: EtaleCmd) -> CmdResult {
    match c {
        EtaleCmd::Generate { algebra, generator, minpoly_factors, out } => {
            let a = load_algebra(&algebra)?;
            let g = a.element(parse_scalars(a.field(), &generator)?)?;
            let mut e = generate_etale(&g)?;
            if let Some(fs) = minpoly_factors {
                let factors = split_top(&fs, ';')
                    .into_iter()
                    .map(|p| Ok(crate::exactalg::Poly::from_coeffs(a.field(), parse_scalars(a.field(), p)?)))
                    .collect::<std::result::Result<Vec<_>, Failure>>()?;
                e = e.with_certificate(factors);
            }
            eprintln!("dimension {}", e.dim());
            write_json(&out, &io::etale_to_json(&e))?;
            Ok(EXIT_OK)
        }
        EtaleCmd::Type { subalgebra } => {
            let e = io::etale_from_json(&read_json(&subalgebra)?, None)?;
            println!("{}", etale_type(&e)?);
            Ok(EXIT_OK)
        }
    }
}

fn algebra_for(args: &ConnectArgs, from: &Value) -> std::result::Result<Arc<Algebra>, Failure> {
    match (&args.algebra, from.get("algebra")) {
        (Some(p), _) => load_algebra(p),
        (None, Some(a)) => Ok(io::algebra_from_json(a)?),
        (None, None) => Err(invalid("--algebra is required")),
    }
}

fn witness_cmd(c: WitnessCmd) -> CmdResult {
    let (chain, kind, out) = match c {
        WitnessCmd::ConnectIdeals(args) => {
            let (v1, v2) = (read_json(&args.from)?, read_json(&args.to)?);
            let a = algebra_for(&args, &v1)?;
            let (i, j) = (io::ideal_from_json(&v1, Some(&a))?, io::ideal_from_json(&v2, Some(&a))?);
            (WitnessChain::single(connect_ideals(&i, &j)?), WitnessKind::IdealPencil, args.out)
        }
        WitnessCmd::ConnectFlags(args) => {
            let (v1, v2) = (read_json(&args.from)?, read_json(&args.to)?);
            let a = algebra_for(&args, &v1)?;
            let (f1, f2): (Flag, Flag) = (io::flag_from_json(&v1, Some(&a))?, io::flag_from_json(&v2, Some(&a))?);
            (WitnessChain::single(connect_flags(&f1, &f2)?), WitnessKind::FlagPencil, args.out)
        }
        WitnessCmd::ConnectEtale(args) => {
            let (v1, v2) = (read_json(&args.from)?, read_json(&args.to)?);
            let a = algebra_for(&args, &v1)?;
            let (e1, e2) = (io::etale_from_json(&v1, Some(&a))?, io::etale_from_json(&v2, Some(&a))?);
            (WitnessChain::single(connect_max_etale(&e1, &e2, RETRIES, args.seed)?), WitnessKind::EtaleLine, args.out)
        }
        WitnessCmd::ConnectExp2(args) => {
            let (v1, v2) = (read_json(&args.from)?, read_json(&args.to)?);
            let a = algebra_for(&args, &v1)?;
            let (e1, e2) = (io::etale_from_json(&v1, Some(&a))?, io::etale_from_json(&v2, Some(&a))?);
            (connect_exp2(&e1, &e2, &|_| true, args.seed, RETRIES)?, WitnessKind::EtaleLine, args.out)
        }
        WitnessCmd::ConnectQuadric { model, from, to, seed, out } => {
            let x = io::model_from_json(&read_json(&model)?)?;
            let q = match x {
                crate::pointcount::VarietyModel::Quadric(q) => q,
                _ => return Err(invalid("connect-quadric needs a quadric model")),
            };
            let (p1, p2) = (parse_scalars(q.field(), &from)?, parse_scalars(q.field(), &to)?);
            (connect_quadric_points(&q, &p1, &p2, seed)?, WitnessKind::QuadricLine, out)
        }
    };
    eprintln!("{} segment(s)", chain.len());
    write_json(&out, &io::chain_to_json(&chain, kind))?;
    Ok(EXIT_OK)
}

fn verify_cmd(path: &Path, samples: &SampleArgs, out: Option<&Path>) -> CmdResult {
    let chain = io::chain_from_json(&read_json(path)?)?;
    let field = match chain.segments.first() {
        Some(s) => s.field.clone(),
        None => Field::rationals(),
    };
    let ts = match &samples.samples {
        Some(s) => parse_scalars(&field, s)?,
        None => default_samples(&field, samples.exhaustive),
    };
    let report = verify_chain(&chain, &ts);
    for c in report.failures() {
        eprintln!("FAILED {}: {}", c.name, c.detail);
    }
    eprintln!("{}", if report.pass { "verified" } else { "verification failed" });
    if let Some(out) = out {
        write_json(out, &io::report_to_json(&report))?;
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_NEGATIVE })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_level_split_respects_brackets() {
        assert_eq!(split_top("1,[0,1],2", ','), vec!["1", "[0,1]", "2"]);
        assert_eq!(split_top("1,0;0,1", ';'), vec!["1,0", "0,1"]);
    }

    #[test]
    fn unknown_flags_are_rejected() {
        assert_eq!(run(["csa-witness", "arith", "vp", "--p", "2", "--n", "8", "--bogus"]), EXIT_INVALID);
        assert_eq!(run(["csa-witness", "arith", "vp", "--p", "2", "--n", "8"]), EXIT_OK);
        assert_eq!(run(["csa-witness", "arith", "vp", "--p", "4", "--n", "8"]), EXIT_INVALID);
    }
}
