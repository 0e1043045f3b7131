//! The `vdtool` command line. Records go to stdout as JSON (or CSV), a short
//! human summary goes to stderr.
//!
//! Exit codes: 0 accept / probably zero / check passed, 1 reject / nonzero /
//! check failed, 2 usage, parse or runtime error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use crate::equivalence::{
    equiv_vd, equiv_vd_forms, factor_linear_forms, generate_instance, pit_gadget, pit_gadget_polynomial,
    schwartz_zippel_zero_test, EquivOptions, EquivReport, FactorError, InstanceMode, VerifyStrategy, ZeroTest,
    DEFAULT_LINE_BUDGET,
};
use crate::linalg::Matrix;
use crate::measures::{
    elementary_symmetric, fanin_lower_bound, pderiv_dim, power_symmetric, red, red_leading_monomial_bound,
    red_subadditivity_check, DEFAULT_PDERIV_CAP, DEFAULT_RED_CAP,
};
use crate::parse::{format_linear_forms, format_matrix, format_polynomial, parse_linear_forms, parse_matrix};
use crate::poly::{LinearForm, Polynomial};
use crate::scalar::{format_rational, parse_rational, Field, Rational};
use crate::sigma::{
    fischer_decomposition, poly_to_sigma_vd_aff, pow_sym_to_sigma_vd_proj, univariate_to_sigma_vd_proj,
    vd_degree_obstruction, NodeSet, SigmaVdDecomposition, DEFAULT_DEGREE_CAP, HOMO_OBSTRUCTION_NOTE,
};
use crate::symmetry::{
    decompose_symmetry, is_symmetry, lie_bracket, sample_symmetry, verify_lie_member, LieElement,
};

/// Environment overrides for enumeration caps.
pub const ENV_RED_CAP: &str = "VDTOOL_RED_CAP";
pub const ENV_PDERIV_CAP: &str = "VDTOOL_PDERIV_CAP";
pub const ENV_DEGREE_CAP: &str = "VDTOOL_DEGREE_CAP";

#[derive(Debug, Parser)]
#[command(name = "vdtool", version, about = "Vandermonde polynomial toolkit")]
pub struct Cli {
    /// Field for rank computations: `rational` or `prime:P`.
    #[arg(long, global = true, default_value = "rational")]
    pub field: Field,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Seed for every randomized stage.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyArg {
    Exact,
    Sz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Equivalent,
    Perturbed,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a polynomial or factor list is VD of independent forms.
    Equiv(EquivArgs),
    /// Factor a polynomial into linear forms.
    Factor {
        #[arg(long)]
        poly: PathBuf,
    },
    /// Print the gadget `x1^(C(n,2)+1) f + VD_n`.
    PitGadget {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Randomized zero test of a polynomial.
    PitTest(PitTestArgs),
    #[command(subcommand)]
    Sym(SymCommand),
    #[command(subcommand)]
    Lie(LieCommand),
    #[command(subcommand)]
    Decompose(DecomposeCommand),
    /// Restricted evaluation dimension on a subset of variables.
    Red {
        #[arg(long)]
        poly: PathBuf,
        /// 1-based variable indices, comma separated.
        #[arg(long)]
        subset: String,
    },
    /// Compare red(f + g) with red(f) + red(g).
    RedSubadd {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        subset: String,
    },
    /// Dimension of the order-k partial derivatives.
    PderivDim {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Top fan-in lower bound for Sym_{n,k}.
    FaninBound {
        #[arg(long)]
        k: u32,
    },
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Debug, Args)]
pub struct EquivArgs {
    /// One linear factor per line.
    #[arg(long, conflicts_with = "poly", required_unless_present = "poly")]
    pub forms: Option<PathBuf>,
    /// An expanded polynomial.
    #[arg(long)]
    pub poly: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = VerifyArg::Exact)]
    pub verify: VerifyArg,
    /// Number of ambient variables for `--forms` (default: largest used).
    #[arg(long)]
    pub vars: Option<usize>,
}

#[derive(Debug, Args)]
pub struct PitTestArgs {
    #[arg(long)]
    pub poly: PathBuf,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long)]
    pub range: u64,
    /// Test through the gadget black box on this many variables.
    #[arg(long)]
    pub via_gadget: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum SymCommand {
    /// Is `VD(x A) = VD(x)`?
    Check {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Split `A = P + v⊗1`.
    Decompose {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// A random group element.
    Sample {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum LieCommand {
    Check {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        n: usize,
    },
    Bracket {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum DecomposeCommand {
    Univariate {
        /// `a0,a1,...,ad`
        #[arg(long)]
        coeffs: String,
        #[arg(long)]
        nodes: Option<String>,
    },
    Powsym {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        nodes: Option<String>,
    },
    Fischer {
        #[arg(long)]
        d: usize,
    },
    Aff {
        #[arg(long)]
        poly: PathBuf,
        /// Also report why no homogeneous decomposition is attempted.
        #[arg(long)]
        explain: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Sym_{n,k}
    Sym {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Pow_{n,d}
    Powsym {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
    },
    /// VD of random forms, optionally perturbed.
    Instance {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Equivalent)]
        mode: ModeArg,
        /// Write the factor list here.
        #[arg(long)]
        forms_out: Option<PathBuf>,
        /// Write the expanded polynomial here.
        #[arg(long)]
        poly_out: Option<PathBuf>,
    },
}

/// Random sub-streams, one per stage, all derived from the CLI seed.
#[derive(Debug, Clone, Copy)]
enum Stage {
    Equiv = 1,
    Factor = 2,
    PitTest = 3,
    SymSample = 4,
}

fn stage_rng(seed: u64, stage: Stage) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stage as u64);
    rng
}

/// What a command produced.
pub struct Outcome {
    pub record: Json,
    /// Rows for CSV output; `None` falls back to `key,value` pairs.
    pub table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    pub summary: String,
    pub exit: u8,
}

impl Outcome {
    fn new(record: Json, summary: impl Into<String>, pass: bool) -> Self {
        Outcome {
            record,
            table: None,
            summary: summary.into(),
            exit: if pass { 0 } else { 1 },
        }
    }
}

type CliResult = Result<Outcome, String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_poly(path: &Path) -> Result<Polynomial, String> {
    crate::parse::parse_polynomial(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_forms(path: &Path) -> Result<Vec<LinearForm>, String> {
    parse_linear_forms(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_matrix(path: &Path) -> Result<Matrix, String> {
    parse_matrix(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_list(text: &str) -> Result<Vec<Rational>, String> {
    text.split(',')
        .map(|s| parse_rational(s.trim()).ok_or_else(|| format!("bad number `{}`", s.trim())))
        .collect()
}

fn parse_subset(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(|s| match s.trim().parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(format!("bad variable index `{}` (indices start at 1)", s.trim())),
        })
        .collect()
}

fn env_cap(var: &str, default: u64) -> Result<u64, String> {
    match std::env::var(var) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{var}: expected an integer, got `{v}`")),
        Err(_) => Ok(default),
    }
}

fn rational_only(field: Field, what: &str) -> Result<(), String> {
    match field {
        Field::Rational => Ok(()),
        Field::Prime(_) => Err(format!("{what} only runs over the rationals")),
    }
}

fn forms_json(forms: &[LinearForm]) -> Json {
    Json::Array(forms.iter().map(|f| Json::String(f.to_string())).collect())
}

fn matrix_json(m: &Matrix) -> Json {
    Json::Array(
        m.rows()
            .iter()
            .map(|row| Json::Array(row.iter().map(|x| Json::String(format_rational(x))).collect()))
            .collect(),
    )
}

fn field_json(field: Field) -> Json {
    match field {
        Field::Rational => json!("rational"),
        Field::Prime(p) => json!(format!("prime:{p}")),
    }
}

fn equiv_record(report: &EquivReport) -> Json {
    let w = report.witness.as_ref();
    json!({
        "status": report.verdict.as_str(),
        "n": report.n,
        "forms": w.map(|w| forms_json(&w.forms)),
        "scalar": w.map(|w| format_rational(&w.scalar)),
        "iterations": report.iterations,
        "verification_mode": w.map(|w| w.verification.as_str()),
        "reason": report.reason.as_ref().map(|r| r.code()),
        "detail": report.reason.as_ref().map(|r| r.to_string()),
    })
}

fn cmd_equiv(cli: &Cli, args: &EquivArgs) -> CliResult {
    rational_only(cli.field, "equiv")?;
    let opts = EquivOptions {
        verify: match args.verify {
            VerifyArg::Exact => VerifyStrategy::Exact,
            VerifyArg::Sz => VerifyStrategy::SchwartzZippel,
        },
        line_budget: DEFAULT_LINE_BUDGET,
    };
    let mut rng = stage_rng(cli.seed, Stage::Equiv);
    let report = if let Some(path) = &args.forms {
        let forms = read_forms(path)?;
        let used = forms.iter().map(|f| f.nvars()).max().unwrap_or(0);
        let ambient = args.vars.unwrap_or(used);
        if ambient < used {
            return Err(format!("--vars {ambient} is smaller than the {used} variables used"));
        }
        equiv_vd_forms(&forms, ambient, &opts, &mut rng)
    } else {
        let poly = read_poly(args.poly.as_deref().expect("clap group"))?;
        equiv_vd(&poly, &opts, &mut rng)
    }
    .map_err(|e| e.to_string())?;
    let summary = match (&report.witness, &report.reason) {
        (Some(w), _) => format!(
            "{}: n = {}, scalar {} ({})",
            report.verdict.as_str(),
            report.n.unwrap_or(0),
            format_rational(&w.scalar),
            w.verification.as_str()
        ),
        (None, Some(r)) => format!("reject: {r}"),
        (None, None) => "reject".into(),
    };
    let accepted = report.witness.is_some();
    Ok(Outcome::new(equiv_record(&report), summary, accepted))
}

fn cmd_factor(cli: &Cli, path: &Path) -> CliResult {
    rational_only(cli.field, "factor")?;
    let poly = read_poly(path)?;
    let mut rng = stage_rng(cli.seed, Stage::Factor);
    match factor_linear_forms(&poly, &mut rng, DEFAULT_LINE_BUDGET) {
        Ok(r) => Ok(Outcome::new(
            json!({
                "status": "factored",
                "constant": format_rational(&r.constant),
                "factors": forms_json(&r.factors),
            }),
            format!("{} linear factors, constant {}", r.factors.len(), format_rational(&r.constant)),
            true,
        )),
        Err(e @ (FactorError::NotProductOfLinearForms | FactorError::NotSquarefree)) => Ok(Outcome::new(
            json!({
                "status": match e {
                    FactorError::NotSquarefree => "not_squarefree",
                    _ => "not_product_of_linear_forms",
                },
            }),
            e.to_string(),
            false,
        )),
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_pit_gadget(cli: &Cli, path: &Path, n: usize) -> CliResult {
    rational_only(cli.field, "pit-gadget")?;
    let f = read_poly(path)?;
    if f.used_nvars() > n {
        return Err(format!("the polynomial uses {} variables, more than n = {n}", f.used_nvars()));
    }
    let g = pit_gadget_polynomial(&f, n).map_err(|e| e.to_string())?;
    Ok(Outcome::new(
        json!({
            "n": n,
            "gadget": format_polynomial(&g),
            "degree": g.degree(),
            "input_is_zero": f.is_zero(),
        }),
        format!("gadget of degree {} in {n} variables", g.degree()),
        true,
    ))
}

fn cmd_pit_test(cli: &Cli, args: &PitTestArgs) -> CliResult {
    rational_only(cli.field, "pit-test")?;
    let f = read_poly(&args.poly)?;
    let mut rng = stage_rng(cli.seed, Stage::PitTest);
    let n = f.used_nvars().max(args.via_gadget.unwrap_or(0)).max(1);
    let eval = |a: &[Rational]| f.evaluate(&a[..f.used_nvars().min(a.len())]).expect("arity checked");
    let (result, degree) = match args.via_gadget {
        None => {
            let degree = f.degree().max(0) as u64;
            (schwartz_zippel_zero_test(eval, n, degree, args.trials, args.range, &mut rng), degree)
        }
        Some(m) => {
            if f.used_nvars() > m {
                return Err(format!("the polynomial uses {} variables, more than {m}", f.used_nvars()));
            }
            let g = pit_gadget(eval, m).map_err(|e| e.to_string())?;
            // g - VD is x1^(C(m,2)+1) f.
            let degree = (crate::vandermonde::vd_degree(m) as u64 + 1) + f.degree().max(0) as u64;
            let diff = |a: &[Rational]| g(a) - crate::vandermonde::vd_evaluate(&a[..m]);
            (schwartz_zippel_zero_test(diff, m, degree, args.trials, args.range, &mut rng), degree)
        }
    };
    match result.map_err(|e| e.to_string())? {
        ZeroTest::ProbablyZero { error_bound } => Ok(Outcome::new(
            json!({
                "status": "probably_zero",
                "trials": args.trials,
                "range": args.range,
                "degree_bound": degree,
                "error_bound": error_bound,
            }),
            format!("probably zero after {} trials (error <= {error_bound:e})", args.trials),
            true,
        )),
        ZeroTest::NonzeroWitness { point, value, trial } => Ok(Outcome::new(
            json!({
                "status": "nonzero",
                "point": point.iter().map(format_rational).collect::<Vec<_>>(),
                "value": format_rational(&value),
                "trial": trial,
                "degree_bound": degree,
            }),
            format!("nonzero: value {} at trial {trial}", format_rational(&value)),
            false,
        )),
    }
}

fn cmd_sym(cli: &Cli, cmd: &SymCommand) -> CliResult {
    rational_only(cli.field, "sym")?;
    match cmd {
        SymCommand::Check { matrix, n } => {
            let a = read_matrix(matrix)?;
            let ok = is_symmetry(&a, *n).map_err(|e| e.to_string())?;
            Ok(Outcome::new(
                json!({ "n": n, "symmetry": ok }),
                if ok { "VD(x A) = VD(x)" } else { "not a symmetry" },
                ok,
            ))
        }
        SymCommand::Decompose { matrix } => {
            let a = read_matrix(matrix)?;
            match decompose_symmetry(&a).map_err(|e| e.to_string())? {
                Ok(d) => Ok(Outcome::new(
                    json!({
                        "member": true,
                        "v": d.v.iter().map(format_rational).collect::<Vec<_>>(),
                        "perm": d.perm.iter().map(|j| j + 1).collect::<Vec<_>>(),
                        "parity": d.parity,
                    }),
                    format!("P + v⊗1 with {} permutation", d.parity),
                    true,
                )),
                Err(reason) => Ok(Outcome::new(
                    json!({ "member": false, "reason": reason }),
                    format!("not in the group: {reason}"),
                    false,
                )),
            }
        }
        SymCommand::Sample { n } => {
            let mut rng = stage_rng(cli.seed, Stage::SymSample);
            let a = sample_symmetry(*n, &mut rng).map_err(|e| e.to_string())?;
            Ok(Outcome::new(
                json!({ "n": n, "matrix": matrix_json(&a), "text": format_matrix(&a) }),
                format!("sampled a {n}x{n} symmetry"),
                true,
            ))
        }
    }
}

fn cmd_lie(cli: &Cli, cmd: &LieCommand) -> CliResult {
    rational_only(cli.field, "lie")?;
    match cmd {
        LieCommand::Check { matrix, n } => {
            let a = read_matrix(matrix)?;
            let c = verify_lie_member(&a, *n).map_err(|e| e.to_string())?;
            if !c.agree() {
                return Err("structural and first-order checks disagree".into());
            }
            Ok(Outcome::new(
                json!({ "member": c.is_member(), "structural": c.structural, "first_order": c.first_order }),
                if c.is_member() { "member" } else { "not a member" },
                c.is_member(),
            ))
        }
        LieCommand::Bracket { a, b } => {
            let (a, b) = (read_matrix(a)?, read_matrix(b)?);
            let c = lie_bracket(&a, &b).map_err(|e| e.to_string())?;
            let v = LieElement::from_matrix(&c).map(|e| e.v.iter().map(format_rational).collect::<Vec<_>>());
            Ok(Outcome::new(
                json!({ "bracket": matrix_json(&c), "v": v, "text": format_matrix(&c) }),
                "[A, B] = AB - BA",
                true,
            ))
        }
    }
}

fn decomposition_json(d: &SigmaVdDecomposition, verified: bool) -> Json {
    json!({
        "class": d.class.to_string(),
        "terms": d.terms.len(),
        "alphas": d.terms.iter().map(|t| format_rational(&t.alpha)).collect::<Vec<_>>(),
        "descriptors": d.terms.iter().map(|t| t.descriptor.to_string()).collect::<Vec<_>>(),
        "verified": verified,
    })
}

fn nodes_arg(nodes: &Option<String>) -> Result<Option<NodeSet>, String> {
    nodes
        .as_deref()
        .map(|s| NodeSet::new(parse_list(s)?).map_err(|e| e.to_string()))
        .transpose()
}

fn cmd_decompose(cli: &Cli, cmd: &DecomposeCommand) -> CliResult {
    rational_only(cli.field, "decompose")?;
    let sigma_err = |e: crate::sigma::SigmaError| e.to_string();
    match cmd {
        DecomposeCommand::Univariate { coeffs, nodes } => {
            let coeffs = parse_list(coeffs)?;
            let nodes = nodes_arg(nodes)?;
            let d = univariate_to_sigma_vd_proj(&coeffs, nodes.as_ref(), 0).map_err(sigma_err)?;
            let target = Polynomial::from_terms(
                1,
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| (crate::poly::Monomial::var_pow(0, k as u16), c.clone())),
            );
            let ok = d.reconstructs(&target);
            Ok(Outcome::new(decomposition_json(&d, ok), format!("{} proj terms", d.len()), ok))
        }
        DecomposeCommand::Powsym { n, d, nodes } => {
            let nodes = nodes_arg(nodes)?;
            let dec = pow_sym_to_sigma_vd_proj(*n, *d, nodes.as_ref()).map_err(sigma_err)?;
            let ok = dec.reconstructs(&power_symmetric(*n, *d as u32));
            Ok(Outcome::new(decomposition_json(&dec, ok), format!("{} proj terms", dec.len()), ok))
        }
        DecomposeCommand::Fischer { d } => {
            let terms = fischer_decomposition(*d).map_err(sigma_err)?;
            let sum = terms.iter().fold(Polynomial::zero(*d), |acc, (c, l)| {
                &acc + &l.to_polynomial().pow(*d as u32).scale(c)
            });
            let product = Polynomial::from_terms(
                *d,
                [(crate::poly::Monomial::from_exponents(&vec![1; *d]), Rational::from_integer(1.into()))],
            );
            let ok = sum == product;
            Ok(Outcome::new(
                json!({
                    "d": d,
                    "coefficients": terms.iter().map(|(c, _)| format_rational(c)).collect::<Vec<_>>(),
                    "forms": terms.iter().map(|(_, l)| l.to_string()).collect::<Vec<_>>(),
                    "verified": ok,
                }),
                format!("{} powers of linear forms", terms.len()),
                ok,
            ))
        }
        DecomposeCommand::Aff { poly, explain } => {
            let f = read_poly(poly)?;
            let cap = env_cap(ENV_DEGREE_CAP, DEFAULT_DEGREE_CAP as u64)? as u32;
            let d = poly_to_sigma_vd_aff(&f, cap).map_err(sigma_err)?;
            let ok = d.reconstructs(&f);
            let mut record = decomposition_json(&d, ok);
            if *explain {
                record["homo_obstruction_degree"] = json!(vd_degree_obstruction(&f));
                record["homo_note"] = json!(HOMO_OBSTRUCTION_NOTE);
            }
            let mut summary = format!("{} aff terms", d.len());
            if *explain {
                summary.push('\n');
                summary.push_str(HOMO_OBSTRUCTION_NOTE);
            }
            Ok(Outcome::new(record, summary, ok))
        }
    }
}

const MEASURE_COLUMNS: [&str; 6] = ["n", "k", "measure", "value", "bound", "pass"];

fn measure_outcome(n: usize, k: usize, measure: &str, value: u128, bound: u128, pass: bool, extra: Json) -> Outcome {
    let mut record = json!({
        "n": n,
        "k": k,
        "measure": measure,
        "value": value,
        "bound": bound,
        "pass": pass,
    });
    if let (Json::Object(r), Json::Object(e)) = (&mut record, extra) {
        r.extend(e);
    }
    Outcome {
        record,
        table: Some((
            MEASURE_COLUMNS.to_vec(),
            vec![vec![
                n.to_string(),
                k.to_string(),
                measure.to_string(),
                value.to_string(),
                bound.to_string(),
                pass.to_string(),
            ]],
        )),
        summary: format!("{measure} = {value} (bound {bound})"),
        exit: if pass { 0 } else { 1 },
    }
}

fn universe(f: &Polynomial) -> usize {
    f.nvars().max(f.used_nvars())
}

fn cmd_red(cli: &Cli, path: &Path, subset: &str) -> CliResult {
    let f = read_poly(path)?;
    let subset = parse_subset(subset)?;
    let cap = env_cap(ENV_RED_CAP, DEFAULT_RED_CAP)?;
    let r = red(&f, &subset, cap, cli.field).map_err(|e| e.to_string())?;
    let lb = red_leading_monomial_bound(&f, &subset).map_err(|e| e.to_string())?;
    Ok(measure_outcome(
        universe(&f),
        subset.len(),
        "red",
        r.dimension as u128,
        lb as u128,
        r.dimension >= lb,
        json!({
            "field": field_json(cli.field),
            "assignments": r.assignments,
            "basis": r.basis.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        }),
    ))
}

fn cmd_red_subadd(cli: &Cli, f: &Path, g: &Path, subset: &str) -> CliResult {
    let (f, g) = (read_poly(f)?, read_poly(g)?);
    let subset = parse_subset(subset)?;
    let cap = env_cap(ENV_RED_CAP, DEFAULT_RED_CAP)?;
    let r = red_subadditivity_check(&f, &g, &subset, cap, cli.field).map_err(|e| e.to_string())?;
    Ok(measure_outcome(
        universe(&f).max(universe(&g)),
        subset.len(),
        "red_subadditivity",
        r.red_sum as u128,
        (r.red_f + r.red_g) as u128,
        r.holds(),
        json!({ "field": field_json(cli.field), "red_f": r.red_f, "red_g": r.red_g }),
    ))
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

fn cmd_pderiv(cli: &Cli, path: &Path, order: usize) -> CliResult {
    let f = read_poly(path)?;
    let cap = env_cap(ENV_PDERIV_CAP, DEFAULT_PDERIV_CAP)?;
    let dim = pderiv_dim(&f, order, cap, cli.field).map_err(|e| e.to_string())?;
    let n = universe(&f);
    // Number of distinct order-k derivatives.
    let bound = binomial((n + order).saturating_sub(1) as u128, order as u128).max(1);
    Ok(measure_outcome(
        n,
        order,
        "pderiv_dim",
        dim as u128,
        bound,
        dim as u128 <= bound,
        json!({ "field": field_json(cli.field) }),
    ))
}

fn cmd_fanin(k: u32) -> CliResult {
    let bound = fanin_lower_bound(k).map_err(|e| e.to_string())?;
    Ok(measure_outcome(
        0,
        k as usize,
        "fanin_lower_bound",
        bound,
        (1u128 << k) - 1,
        true,
        json!({ "red_upper_per_term": (k as u128 + 1).pow(2) }),
    ))
}

fn write_file(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_gen(cli: &Cli, cmd: &GenCommand) -> CliResult {
    match cmd {
        GenCommand::Sym { n, k } => {
            let p = elementary_symmetric(*n, *k).map_err(|e| e.to_string())?;
            Ok(Outcome::new(
                json!({ "n": n, "k": k, "polynomial": format_polynomial(&p) }),
                format!("Sym_{{{n},{k}}} with {} terms", p.num_terms()),
                true,
            ))
        }
        GenCommand::Powsym { n, d } => {
            let p = power_symmetric(*n, *d);
            Ok(Outcome::new(
                json!({ "n": n, "d": d, "polynomial": format_polynomial(&p) }),
                format!("Pow_{{{n},{d}}}"),
                true,
            ))
        }
        GenCommand::Instance {
            n,
            mode,
            forms_out,
            poly_out,
        } => {
            let mode = match mode {
                ModeArg::Equivalent => InstanceMode::Equivalent,
                ModeArg::Perturbed => InstanceMode::Perturbed,
            };
            let inst = generate_instance(*n, cli.seed, mode).map_err(|e| e.to_string())?;
            let forms_text = format_linear_forms(&inst.factors);
            if let Some(path) = forms_out {
                write_file(path, &forms_text)?;
            }
            let mut record = json!({
                "n": n,
                "mode": if mode == InstanceMode::Equivalent { "equivalent" } else { "perturbed" },
                "hidden": forms_json(&inst.hidden),
                "factors": forms_json(&inst.factors),
            });
            if let Some(path) = poly_out {
                let text = format_polynomial(&inst.polynomial());
                write_file(path, &format!("{text}\n"))?;
                record["polynomial_file"] = json!(path.display().to_string());
            }
            Ok(Outcome::new(record, format!("{} factors", inst.factors.len()), true))
        }
    }
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Equiv(args) => cmd_equiv(cli, args),
        Command::Factor { poly } => cmd_factor(cli, poly),
        Command::PitGadget { poly, n } => cmd_pit_gadget(cli, poly, *n),
        Command::PitTest(args) => cmd_pit_test(cli, args),
        Command::Sym(cmd) => cmd_sym(cli, cmd),
        Command::Lie(cmd) => cmd_lie(cli, cmd),
        Command::Decompose(cmd) => cmd_decompose(cli, cmd),
        Command::Red { poly, subset } => cmd_red(cli, poly, subset),
        Command::RedSubadd { f, g, subset } => cmd_red_subadd(cli, f, g, subset),
        Command::PderivDim { poly, order } => cmd_pderiv(cli, poly, *order),
        Command::FaninBound { k } => cmd_fanin(*k),
        Command::Gen(cmd) => cmd_gen(cli, cmd),
    }
}

fn json_cell(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        Json::Null => String::new(),
        other => other.to_string(),
    }
}

/// Renders an outcome in the chosen format, newline terminated.
pub fn render(outcome: &Outcome, format: OutputFormat) -> Result<String, String> {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.record).map_err(|e| e.to_string())?;
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| e.to_string();
            match &outcome.table {
                Some((header, rows)) => {
                    w.write_record(header).map_err(io)?;
                    for row in rows {
                        w.write_record(row).map_err(io)?;
                    }
                }
                None => {
                    w.write_record(["key", "value"]).map_err(io)?;
                    if let Json::Object(map) = &outcome.record {
                        for (k, v) in map {
                            w.write_record([k.as_str(), &json_cell(v)]).map_err(io)?;
                        }
                    }
                }
            }
            String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
        }
    }
}

/// Entry point for the binary.
pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = execute(&cli).and_then(|o| render(&o, cli.output).map(|text| (o, text)));
    match outcome {
        Ok((o, text)) => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            eprintln!("{}", o.summary);
            ExitCode::from(o.exit)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
