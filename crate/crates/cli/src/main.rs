//! `nct` — the command-line pipeline from continued-fraction period
//! matrices through local zeta factors to prime-by-prime comparison against
//! elliptic-curve and Dirichlet L-functions.
//!
//! Exit codes: 0 success, 1 usage error (bad flags or malformed grammar),
//! 2 domain error (rational theta, composite prime, singular curve, ...).

mod config;
mod json;

use clap::{Parser, Subcommand};
use config::{OutputFormat, RunConfig};
use json::JVal;
use nct_core::cfrac::{jacobi_perron, period_product, unit_matrix_for_theta};
use nct_core::elliptic::cm_catalog_with;
use nct_core::exact::{IntPoly, RootOfUnity};
use nct_core::grammar;
use nct_core::lfunc::{
    build_lp, build_lp_degenerate, compare_report, dirichlet_character_group,
    dirichlet_local_factor, euler_product, excluded_primes, local_zeta, torus_factor_at,
    CompareRow, DirichletCharacter, EulerEval, ExcludedPrimes, LocalFactor, LocalFrobenius,
};
use nct_core::teich::{functor_on_endo, normalize_complex_side, unit_index, EndoMatrix};
use nct_core::torus::{check_so_nn, is_symplectic, normal_form_numeric};
use nct_core::zlinalg::smith_normal_form;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "nct",
    version,
    about = "L-functions of even-dimensional noncommutative tori with real multiplication",
    disable_help_subcommand = true
)]
struct Cli {
    /// Config file (line-oriented key = value).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Working precision in bits (>= 64).
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for prime sweeps; never changes output bytes.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fundamental unit and the matrix with eigenvector (1, theta).
    Unit {
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Local zeta factor at one prime (torus mode or Dirichlet mode).
    Localzeta {
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long, default_value_t = 0)]
        char: usize,
        #[arg(long)]
        prime: u64,
    },
    /// Partial Euler product over primes up to a bound.
    Lfunction {
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long, default_value_t = 0)]
        char: usize,
        #[arg(long)]
        s: String,
        #[arg(long)]
        prime_bound: Option<u64>,
    },
    /// Prime-by-prime comparison of curve and torus local factors.
    Compare {
        /// Curve `a4,a6`, or `cm:INDEX` into the CM catalog.
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long)]
        prime_bound: Option<u64>,
    },
    /// Smith normal form with the unimodular transforms.
    Snf {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Jacobi-Perron expansion (heuristic period detection).
    Jp {
        /// `;`-separated values: quad forms, `root:m,k`, or `dec:x.y`.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        #[arg(long, default_value_t = 100)]
        max_iters: usize,
    },
    /// Normal form of a skew-symmetric parameter matrix.
    Normalform {
        /// Upper triangle, `;`-separated rows.
        #[arg(long, allow_hyphen_values = true)]
        skew: String,
    },
    /// Split-orthogonal membership test.
    SoCheck {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Symplectic membership test.
    SymplecticCheck {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Normalize an endomorphism and apply the lattice functor.
    Functor {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Minimal exponent g with epsilon^g in Z + (n theta) Z.
    UnitIndex {
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long)]
        n: u64,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<grammar::ParseError> for CliError {
    fn from(e: grammar::ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<nct_core::Error> for CliError {
    fn from(e: nct_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let kind = e.kind();
            if kind == ErrorKind::DisplayHelp || kind == ErrorKind::DisplayVersion {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let file_cfg = match &cli.config {
        None => None,
        Some(path) => match config::parse_config_file(path) {
            Ok(f) => Some(f),
            Err(msg) => {
                eprintln!("nct: {msg}");
                return ExitCode::from(1);
            }
        },
    };
    // prime_bound flags live on the subcommands; pick them up here.
    let flag_bound = match &cli.cmd {
        Command::Lfunction { prime_bound, .. } | Command::Compare { prime_bound, .. } => {
            *prime_bound
        }
        _ => None,
    };
    let cfg = match config::resolve(cli.precision, flag_bound, cli.format, cli.threads, file_cfg) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("nct: {msg}");
            return ExitCode::from(1);
        }
    };
    match run(&cli.cmd, &cfg) {
        Ok(output) => {
            let payload = format!("{output}\n");
            match &cli.out {
                None => print!("{payload}"),
                Some(path) => {
                    if let Err(e) = std::fs::write(path, payload) {
                        eprintln!("nct: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("nct: usage error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("nct: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: &Command, cfg: &RunConfig) -> Result<String, CliError> {
    match cmd {
        Command::Unit { theta } => cmd_unit(theta, cfg),
        Command::Localzeta {
            theta,
            modulus,
            char,
            prime,
        } => cmd_localzeta(theta.as_deref(), *modulus, *char, *prime, cfg),
        Command::Lfunction {
            theta,
            modulus,
            char,
            s,
            ..
        } => cmd_lfunction(theta.as_deref(), *modulus, *char, s, cfg),
        Command::Compare { curve, theta, .. } => cmd_compare(curve, theta, cfg),
        Command::Snf { matrix } => cmd_snf(matrix, cfg),
        Command::Jp { values, max_iters } => cmd_jp(values, *max_iters, cfg),
        Command::Normalform { skew } => cmd_normalform(skew, cfg),
        Command::SoCheck { matrix } => cmd_so_check(matrix, cfg),
        Command::SymplecticCheck { matrix } => cmd_symplectic_check(matrix, cfg),
        Command::Functor { matrix } => cmd_functor(matrix, cfg),
        Command::UnitIndex { theta, n } => cmd_unit_index(theta, *n, cfg),
    }
}

fn render(cfg: &RunConfig, v: &JVal, text_lines: Vec<String>) -> Result<String, CliError> {
    match cfg.format {
        OutputFormat::Json => Ok(v.render()),
        OutputFormat::Text => Ok(text_lines.join("\n")),
        OutputFormat::Csv => Err(CliError::Usage(
            "csv output is only available for `compare`".into(),
        )),
    }
}

fn poly_coeffs_json(p: &IntPoly) -> JVal {
    JVal::Arr(p.coeffs().iter().map(|c| JVal::Int(c.clone())).collect())
}

fn root_coeff_json(w: &RootOfUnity) -> JVal {
    match w.as_integer() {
        Some(i) => JVal::Int(i),
        None => JVal::Str(w.to_string()),
    }
}

fn factor_denominator_json(f: &LocalFactor) -> JVal {
    match f {
        LocalFactor::Poly { denominator, .. } => poly_coeffs_json(denominator),
        LocalFactor::Unit { value: None, .. } => JVal::Arr(vec![JVal::I64(1)]),
        LocalFactor::Unit { value: Some(w), .. } => {
            JVal::Arr(vec![JVal::I64(1), root_coeff_json(&w.neg())])
        }
    }
}

fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn cmd_unit(theta_spec: &str, cfg: &RunConfig) -> Result<String, CliError> {
    let theta = grammar::parse_quad(theta_spec)?;
    let um = unit_matrix_for_theta(&theta)?;
    let norm = um.unit.epsilon.norm();
    let v = JVal::Obj(vec![
        ("theta", JVal::Str(theta.spec_string())),
        ("epsilon", JVal::Str(um.unit.epsilon.spec_string())),
        ("epsilon_norm", JVal::Int(norm.numer().clone())),
        ("epsilon_conductor", JVal::Int(um.unit.order_index.clone())),
        (
            "epsilon_minpoly",
            poly_coeffs_json(&um.unit.epsilon.minimal_polynomial()),
        ),
        ("power", JVal::U64(um.power)),
        ("lambda", JVal::Str(um.lambda.spec_string())),
        ("matrix", JVal::Str(um.matrix.grammar_string())),
    ]);
    let text = vec![
        format!("theta   = {}", theta),
        format!("epsilon = {} (norm {})", um.unit.epsilon, rational_string(&norm)),
        format!("minimal polynomial: {}", um.unit.epsilon.minimal_polynomial()),
        format!("lambda  = epsilon^{} = {}", um.power, um.lambda),
        format!("matrix  = {}", um.matrix.grammar_string()),
    ];
    render(cfg, &v, text)
}

fn localzeta_mode(
    theta: Option<&str>,
    modulus: Option<u64>,
) -> Result<(), CliError> {
    match (theta, modulus) {
        (Some(_), None) | (None, Some(_)) => Ok(()),
        _ => Err(CliError::Usage(
            "exactly one of --theta or --modulus is required".into(),
        )),
    }
}

fn character_at(modulus: u64, index: usize) -> Result<DirichletCharacter, CliError> {
    let group = dirichlet_character_group(modulus)?;
    group.get(index).cloned().ok_or_else(|| {
        CliError::Usage(format!(
            "character index {index} out of range: modulus {modulus} has {} characters",
            group.len()
        ))
    })
}

fn cmd_localzeta(
    theta: Option<&str>,
    modulus: Option<u64>,
    char_index: usize,
    prime: u64,
    cfg: &RunConfig,
) -> Result<String, CliError> {
    localzeta_mode(theta, modulus)?;
    if let Some(spec) = theta {
        let theta = grammar::parse_quad(spec)?;
        let um = unit_matrix_for_theta(&theta)?;
        let lp = build_lp(&um.matrix, prime)?;
        let factor = local_zeta(&lp)?;
        let matrix = match &lp {
            LocalFrobenius::Matrix { matrix, .. } => matrix.clone(),
            _ => unreachable!("torus mode builds a matrix"),
        };
        let v = JVal::Obj(vec![
            ("p", JVal::U64(prime)),
            ("n", JVal::USize(lp.half_dimension())),
            ("theta", JVal::Str(theta.spec_string())),
            ("matrix", JVal::Str(matrix.grammar_string())),
            ("denominator", factor_denominator_json(&factor)),
        ]);
        let text = vec![
            format!("p = {prime}"),
            format!("L_p matrix: {}", matrix.grammar_string()),
            format!("denominator coefficients (ascending): {}", factor_denominator_json(&factor).render()),
        ];
        render(cfg, &v, text)
    } else {
        let chi = character_at(modulus.unwrap(), char_index)?;
        let zeta_n = RootOfUnity::new(BigInt::from(chi.modulus()), BigInt::from(1))
            .map_err(|e| CliError::Domain(e.to_string()))?;
        let _frob = build_lp_degenerate(&zeta_n, prime)?;
        let factor = dirichlet_local_factor(&chi, prime)?;
        let chi_p = match chi.at(prime) {
            None => JVal::I64(0),
            Some(w) => root_coeff_json(&w),
        };
        let v = JVal::Obj(vec![
            ("p", JVal::U64(prime)),
            ("n", JVal::USize(0)),
            ("modulus", JVal::U64(chi.modulus())),
            ("char", JVal::USize(chi.index())),
            ("chi_p", chi_p.clone()),
            ("denominator", factor_denominator_json(&factor)),
        ]);
        let text = vec![
            format!("p = {prime}, modulus {} character {}", chi.modulus(), chi.index()),
            format!("chi(p) = {}", chi_p.render()),
            format!("denominator coefficients (ascending): {}", factor_denominator_json(&factor).render()),
        ];
        render(cfg, &v, text)
    }
}

fn euler_eval_json(kind: &str, head: Vec<(&'static str, JVal)>, eval: &EulerEval) -> JVal {
    let mut fields = vec![("kind", JVal::Str(kind.into()))];
    fields.extend(head);
    let excluded = match &eval.excluded {
        ExcludedPrimes::All => JVal::Str("all".into()),
        ExcludedPrimes::List(v) => JVal::Arr(v.iter().map(|&p| JVal::U64(p)).collect()),
    };
    fields.extend([
        ("s", JVal::Str(rational_string(&eval.s))),
        ("prime_bound", JVal::U64(eval.prime_bound)),
        ("primes_used", JVal::USize(eval.primes_used)),
        ("excluded", excluded),
        ("precision", JVal::U64(eval.precision as u64)),
        ("value_re", JVal::real(eval.value.re.mid())),
        ("value_im", JVal::real(eval.value.im.mid())),
        (
            "radius",
            JVal::real(&eval.value.re.rad().add(eval.value.im.rad())),
        ),
    ]);
    JVal::Obj(fields)
}

fn cmd_lfunction(
    theta: Option<&str>,
    modulus: Option<u64>,
    char_index: usize,
    s_spec: &str,
    cfg: &RunConfig,
) -> Result<String, CliError> {
    localzeta_mode(theta, modulus)?;
    let s = grammar::parse_decimal(s_spec)?;
    if let Some(spec) = theta {
        let theta_q = grammar::parse_quad(spec)?;
        let um = unit_matrix_for_theta(&theta_q)?;
        let excluded = excluded_primes(&um.matrix, cfg.prime_bound)?;
        if excluded == ExcludedPrimes::All {
            eprintln!(
                "nct: warning: tr^2(A) = (n+1)^2 for theta = {}; every prime is excluded and the product is empty",
                theta_q
            );
            return Err(CliError::Domain(
                nct_core::Error::AllPrimesExcluded.to_string(),
            ));
        }
        let eval = euler_product(
            torus_factor_at(&um.matrix),
            &s,
            cfg.prime_bound,
            &excluded,
            cfg.precision,
            cfg.threads,
        )?;
        let head = vec![
            ("theta", JVal::Str(theta_q.spec_string())),
            ("matrix", JVal::Str(um.matrix.grammar_string())),
        ];
        let v = euler_eval_json("torus", head, &eval);
        let text = vec![
            format!("torus L-function, theta = {}", theta_q),
            format!("value = {} + {} i", eval.value.re.mid().to_decimal(20), eval.value.im.mid().to_decimal(20)),
            format!("primes used: {} up to {}", eval.primes_used, eval.prime_bound),
        ];
        render(cfg, &v, text)
    } else {
        let chi = character_at(modulus.unwrap(), char_index)?;
        let eval = euler_product(
            |p| dirichlet_local_factor(&chi, p),
            &s,
            cfg.prime_bound,
            &ExcludedPrimes::none(),
            cfg.precision,
            cfg.threads,
        )?;
        let head = vec![
            ("modulus", JVal::U64(chi.modulus())),
            ("char", JVal::USize(chi.index())),
        ];
        let v = euler_eval_json("dirichlet", head, &eval);
        let text = vec![
            format!("Dirichlet L-function, modulus {} character {}", chi.modulus(), chi.index()),
            format!("value = {} + {} i", eval.value.re.mid().to_decimal(20), eval.value.im.mid().to_decimal(20)),
            format!("primes used: {} up to {}", eval.primes_used, eval.prime_bound),
        ];
        render(cfg, &v, text)
    }
}

fn compare_rows_json(rows: &[CompareRow]) -> JVal {
    JVal::Arr(
        rows.iter()
            .map(|r| {
                JVal::Obj(vec![
                    ("p", JVal::U64(r.p)),
                    ("ap", JVal::I64(r.ap)),
                    ("trAp", JVal::Int(r.tr_ap.clone())),
                    ("curve_factor", poly_coeffs_json(&r.curve_factor)),
                    ("torus_factor", poly_coeffs_json(&r.torus_factor)),
                    ("excluded", JVal::Bool(r.excluded)),
                    ("equal", JVal::Bool(r.equal)),
                ])
            })
            .collect(),
    )
}

fn compare_rows_csv(rows: &[CompareRow]) -> String {
    let mut out = String::from("p,ap,trAp,curve_factor,torus_factor,excluded,equal");
    for r in rows {
        let cf = r
            .curve_factor
            .coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(";");
        let tf = r
            .torus_factor
            .coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(";");
        out.push_str(&format!(
            "\n{},{},{},{},{},{},{}",
            r.p, r.ap, r.tr_ap, cf, tf, r.excluded, r.equal
        ));
    }
    out
}

fn cmd_compare(curve_spec: &str, theta_spec: &str, cfg: &RunConfig) -> Result<String, CliError> {
    let curve = if let Some(rest) = curve_spec.trim().strip_prefix("cm:") {
        let idx: usize = rest
            .parse()
            .map_err(|_| CliError::Usage(format!("bad catalog index `{rest}`")))?;
        let catalog = cm_catalog_with(&cfg.extra_curves);
        catalog
            .get(idx)
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("catalog has {} models", catalog.len())))?
    } else {
        let (a4, a6) = grammar::parse_curve(curve_spec)?;
        nct_core::elliptic::CurveModel::new(a4, a6)?
    };
    let theta = grammar::parse_quad(theta_spec)?;
    let um = unit_matrix_for_theta(&theta)?;
    let rows = compare_report(&um.matrix, &curve, cfg.prime_bound, cfg.threads)?;
    match cfg.format {
        OutputFormat::Csv => Ok(compare_rows_csv(&rows)),
        OutputFormat::Json => Ok(compare_rows_json(&rows).render()),
        OutputFormat::Text => {
            let mut lines = vec![format!(
                "curve {} vs torus matrix {} (primes up to {})",
                curve,
                um.matrix.grammar_string(),
                cfg.prime_bound
            )];
            for r in &rows {
                lines.push(format!(
                    "p = {:<6} a_p = {:<6} tr(A^p) = {:<12} excluded = {:<5} equal = {}",
                    r.p, r.ap, r.tr_ap, r.excluded, r.equal
                ));
            }
            Ok(lines.join("\n"))
        }
    }
}

fn cmd_snf(matrix_spec: &str, cfg: &RunConfig) -> Result<String, CliError> {
    let m = grammar::parse_matrix(matrix_spec)?;
    let snf = smith_normal_form(&m);
    let check = snf.u.matmul(&m).and_then(|um| um.matmul(&snf.v)) == Ok(snf.s.clone());
    let v = JVal::Obj(vec![
        ("matrix", JVal::Str(m.grammar_string())),
        ("U", JVal::Str(snf.u.grammar_string())),
        ("S", JVal::Str(snf.s.grammar_string())),
        ("V", JVal::Str(snf.v.grammar_string())),
        ("check", JVal::Bool(check)),
    ]);
    let text = vec![
        format!("S = {}", snf.s.grammar_string()),
        format!("U = {}", snf.u.grammar_string()),
        format!("V = {}", snf.v.grammar_string()),
        format!("U*M*V = S: {check}"),
    ];
    render(cfg, &v, text)
}

fn cmd_jp(values_spec: &str, max_iters: usize, cfg: &RunConfig) -> Result<String, CliError> {
    let values = grammar::parse_value_list(values_spec, cfg.precision)?;
    let state = jacobi_perron(&values, max_iters, cfg.precision)?;
    let digits_json = JVal::Arr(
        state
            .digits
            .iter()
            .map(|d| JVal::Arr(d.iter().map(|x| JVal::Int(x.clone())).collect()))
            .collect(),
    );
    let (start_j, len_j, matrix_j) = match state.period_candidate {
        None => (JVal::Null, JVal::Null, JVal::Null),
        Some((s, l)) => {
            let m = period_product(&state)?;
            (
                JVal::USize(s),
                JVal::USize(l),
                JVal::Str(m.grammar_string()),
            )
        }
    };
    let v = JVal::Obj(vec![
        ("dimension", JVal::USize(state.dimension)),
        ("precision", JVal::U64(state.precision as u64)),
        ("iterations", JVal::USize(state.digits.len())),
        ("digits", digits_json),
        ("period_start", start_j.clone()),
        ("period_len", len_j.clone()),
        ("period_matrix", matrix_j.clone()),
        ("heuristic", JVal::Bool(true)),
        ("exhausted", JVal::Bool(state.exhausted)),
    ]);
    let text = vec![
        format!("dimension {} after {} iterations", state.dimension, state.digits.len()),
        format!("period candidate (heuristic): start={} len={}", start_j.render(), len_j.render()),
        format!("period matrix: {}", matrix_j.render()),
    ];
    render(cfg, &v, text)
}

fn cmd_normalform(skew_spec: &str, cfg: &RunConfig) -> Result<String, CliError> {
    let skew = grammar::parse_skew(skew_spec, cfg.precision)?;
    let numeric = skew.to_numeric(cfg.precision);
    let nf = normal_form_numeric(&numeric, cfg.precision)?;
    let v = JVal::Obj(vec![
        ("dimension", JVal::USize(numeric.rows())),
        (
            "thetas",
            JVal::Arr(nf.thetas.iter().map(JVal::real).collect()),
        ),
        ("residual", JVal::real(&nf.residual)),
        ("orthogonality", JVal::real(&nf.orthogonality)),
    ]);
    let text = vec![
        format!(
            "thetas: {}",
            nf.thetas
                .iter()
                .map(|t| t.to_decimal(20))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        format!("residual: {}", nf.residual.to_decimal(20)),
        format!("orthogonality: {}", nf.orthogonality.to_decimal(20)),
    ];
    render(cfg, &v, text)
}

fn cmd_so_check(matrix_spec: &str, cfg: &RunConfig) -> Result<String, CliError> {
    let m = grammar::parse_matrix(matrix_spec)?;
    let ok = check_so_nn(&m)?;
    let v = JVal::Obj(vec![
        ("matrix", JVal::Str(m.grammar_string())),
        ("dimension", JVal::USize(m.rows())),
        ("so_nn", JVal::Bool(ok)),
    ]);
    render(cfg, &v, vec![format!("so_nn: {ok}")])
}

fn cmd_symplectic_check(matrix_spec: &str, cfg: &RunConfig) -> Result<String, CliError> {
    let m = grammar::parse_matrix(matrix_spec)?;
    let ok = is_symplectic(&m)?;
    let v = JVal::Obj(vec![
        ("matrix", JVal::Str(m.grammar_string())),
        ("dimension", JVal::USize(m.rows())),
        ("symplectic", JVal::Bool(ok)),
    ]);
    render(cfg, &v, vec![format!("symplectic: {ok}")])
}

fn cmd_functor(matrix_spec: &str, cfg: &RunConfig) -> Result<String, CliError> {
    let m = grammar::parse_matrix(matrix_spec)?;
    let normalized = normalize_complex_side(&m)?;
    let image = functor_on_endo(&EndoMatrix::complex(normalized.clone())?)?;
    let v = JVal::Obj(vec![
        ("input", JVal::Str(m.grammar_string())),
        ("normalized", JVal::Str(normalized.grammar_string())),
        ("image", JVal::Str(image.m.grammar_string())),
    ]);
    let text = vec![
        format!("normalized: {}", normalized.grammar_string()),
        format!("image:      {}", image.m.grammar_string()),
    ];
    render(cfg, &v, text)
}

fn cmd_unit_index(theta_spec: &str, n: u64, cfg: &RunConfig) -> Result<String, CliError> {
    let theta = grammar::parse_quad(theta_spec)?;
    let data = unit_index(&theta, &BigInt::from(n))?;
    let v = JVal::Obj(vec![
        ("theta", JVal::Str(theta.spec_string())),
        ("n", JVal::U64(n)),
        ("epsilon", JVal::Str(data.epsilon.spec_string())),
        ("g", JVal::U64(data.g)),
        ("epsilon_pow_g", JVal::Str(data.power.spec_string())),
    ]);
    let text = vec![
        format!("epsilon = {}", data.epsilon),
        format!("g = {}", data.g),
        format!("epsilon^g = {}", data.power),
    ];
    render(cfg, &v, text)
}
