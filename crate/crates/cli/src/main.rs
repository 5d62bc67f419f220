//! Batch command-line front end: class-group data, conjugate orbits, minimal
//! polynomials of ray class invariants, numerical verifiers, and the
//! normal-basis exponent bound.
//!
//! Output is plain text by default or machine-readable JSON with `--format
//! json`. JSON uses decimal strings for every quantity that can exceed the
//! range of a 64-bit integer, keys are emitted in canonical (sorted) order,
//! and the exit code is zero exactly when every requested check passed.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::process::ExitCode;
use std::time::Instant;

use yclass_core::class_forms::{make_field, reduced_forms, theta_q, CMField};
use yclass_core::invariants::{
    conjugate_orbit, exceptional_invariant, field_degree, min_poly_invariant,
    normal_basis_exponent, required_exponent, singular_y, verify_inequality1, verify_inequality2,
    InequalityReport,
};
use yclass_core::numerics::{with_precision, BigComplex, PrecisionContext, DEFAULT_DIGITS};
use yclass_core::qseries::{delta, eta, g2, g3, wp, y_fn, IndexPair};
use yclass_core::Error;

/// Environment variable consulted when --precision is not given.
const PRECISION_ENV: &str = "YCLASS_PRECISION";

/// Decimal digits printed for numerical values in reports.
const REPORT_DIGITS: u32 = 50;

#[derive(Parser)]
#[command(
    name = "yclass",
    about = "Ray class field invariants from y-coordinates of CM elliptic curves",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Fundamental discriminant of the imaginary quadratic field (negative)
    #[arg(long = "disc", allow_hyphen_values = true)]
    disc: i64,
    /// Working precision in decimal digits (flag beats YCLASS_PRECISION)
    #[arg(long)]
    precision: Option<u32>,
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// List the reduced quadratic forms, CM points and class number
    ClassGroup {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Emit the integer minimal polynomial of the ray class invariant
    Minpoly {
        #[command(flatten)]
        common: CommonArgs,
        /// Level N of the ray class field K_(N)
        #[arg(long)]
        level: u32,
        /// Exponent e (a nonzero multiple of 12N/gcd(6,N))
        #[arg(long = "exp", allow_hyphen_values = true)]
        exponent: i64,
    },
    /// List every Galois conjugate of the invariant with its label
    Conjugates {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        level: u32,
        #[arg(long = "exp", allow_hyphen_values = true)]
        exponent: i64,
    },
    /// Run the numerical verifiers applicable to this field and level
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        level: u32,
    },
    /// Degree of K_(N)/K and the smallest normal-basis exponent
    NormalBasis {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        level: u32,
    },
}

struct Check {
    name: String,
    passed: bool,
    detail: String,
}

struct Report {
    inputs: Value,
    result: Value,
    checks: Vec<Check>,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let (format, outcome) = run(cli.command);
    match outcome {
        Ok(report) => {
            let all_passed = report.checks.iter().all(|c| c.passed);
            match format {
                Format::Text => {
                    print!("{}", report.text);
                    for c in &report.checks {
                        println!(
                            "[{}] {}: {}",
                            if c.passed { "PASS" } else { "FAIL" },
                            c.name,
                            c.detail
                        );
                    }
                }
                Format::Json => {
                    let checks: Vec<Value> = report
                        .checks
                        .iter()
                        .map(|c| {
                            json!({
                                "detail": c.detail,
                                "name": c.name,
                                "passed": c.passed,
                            })
                        })
                        .collect();
                    let doc = json!({
                        "checks": checks,
                        "inputs": report.inputs,
                        "result": report.result,
                        "timing_ms": started.elapsed().as_millis() as u64,
                    });
                    println!("{doc}");
                }
            }
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::IntegralityFailure { .. } = e {
                eprintln!("hint: rerun with a higher --precision");
            }
            ExitCode::FAILURE
        }
    }
}

fn run(cmd: Command) -> (Format, Result<Report, Error>) {
    match cmd {
        Command::ClassGroup { common } => (common.format, cmd_class_group(&common)),
        Command::Minpoly {
            common,
            level,
            exponent,
        } => (common.format, cmd_minpoly(&common, level, exponent)),
        Command::Conjugates {
            common,
            level,
            exponent,
        } => (common.format, cmd_conjugates(&common, level, exponent)),
        Command::Verify { common, level } => (common.format, cmd_verify(&common, level)),
        Command::NormalBasis { common, level } => {
            (common.format, cmd_normal_basis(&common, level))
        }
    }
}

fn resolve_context(common: &CommonArgs) -> Result<PrecisionContext, Error> {
    let digits = common
        .precision
        .or_else(|| {
            std::env::var(PRECISION_ENV)
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_DIGITS);
    with_precision(digits)
}

fn complex_string(z: &BigComplex) -> String {
    let re = z.re.to_decimal_string(REPORT_DIGITS);
    let im = z.im.to_decimal_string(REPORT_DIGITS);
    match im.strip_prefix('-') {
        Some(mag) => format!("{re} - {mag}i"),
        None => format!("{re} + {im}i"),
    }
}

fn complex_json(z: &BigComplex) -> Value {
    json!({
        "im": z.im.to_decimal_string(REPORT_DIGITS),
        "re": z.re.to_decimal_string(REPORT_DIGITS),
    })
}

fn cmd_class_group(common: &CommonArgs) -> Result<Report, Error> {
    let ctx = resolve_context(common)?;
    let forms = reduced_forms(common.disc)?;
    let mut text = format!(
        "discriminant: {}\nclass number: {}\n",
        common.disc,
        forms.len()
    );
    let mut json_forms = Vec::new();
    for f in &forms {
        let t = theta_q(f, &ctx);
        text.push_str(&format!("form {f}  theta_Q = {}\n", complex_string(&t)));
        json_forms.push(json!({
            "a": f.a,
            "b": f.b,
            "c": f.c,
            "theta_q": complex_json(&t),
        }));
    }
    Ok(Report {
        inputs: json!({ "discriminant": common.disc }),
        result: json!({
            "class_number": forms.len(),
            "forms": json_forms,
        }),
        checks: Vec::new(),
        text,
    })
}

fn require_theorem_range(field: &CMField, level: u32) -> Result<(), Error> {
    if field.discriminant() > -19 {
        return Err(Error::Hypothesis(format!(
            "the generation theorem requires d_K <= -19, got {}",
            field.discriminant()
        )));
    }
    if level < 3 {
        return Err(Error::UnsupportedLevel { got: level, min: 3 });
    }
    Ok(())
}

fn invariant_name(level: u32, exponent: i64, scale_power: u32) -> String {
    if scale_power == 0 {
        format!("y_(0,1/{level})^{exponent}(theta_K)")
    } else {
        format!("{level}^{scale_power} * y_(0,1/{level})^{exponent}(theta_K)")
    }
}

fn cmd_minpoly(common: &CommonArgs, level: u32, exponent: i64) -> Result<Report, Error> {
    let ctx = resolve_context(common)?;
    let field = make_field(common.disc, &ctx)?;
    require_theorem_range(&field, level)?;
    let outcome = min_poly_invariant(&field, level, exponent, &ctx)?;
    let coeffs: Vec<Value> = outcome
        .poly
        .coeffs()
        .iter()
        .map(|c| Value::String(c.to_string()))
        .collect();
    let name = invariant_name(level, exponent, outcome.scale_power);
    let text = format!(
        "invariant: {name}\ndegree: {}\n{}\n",
        outcome.poly.degree(),
        outcome.poly
    );
    Ok(Report {
        inputs: json!({
            "discriminant": common.disc,
            "exponent": exponent,
            "level": level,
            "precision": ctx.decimal_digits(),
        }),
        result: json!({
            "coefficients_ascending": coeffs,
            "degree": outcome.poly.degree(),
            "invariant": name,
            "polynomial": outcome.poly.to_string(),
            "scale_power": outcome.scale_power,
        }),
        checks: Vec::new(),
        text,
    })
}

fn cmd_conjugates(common: &CommonArgs, level: u32, exponent: i64) -> Result<Report, Error> {
    let ctx = resolve_context(common)?;
    let field = make_field(common.disc, &ctx)?;
    let orbit = conjugate_orbit(&field, level, exponent, &ctx)?;
    let mut text = format!(
        "discriminant: {}  level: {}  exponent: {}\nconjugates: {}\n",
        common.disc,
        level,
        exponent,
        orbit.values.len()
    );
    let mut rows = Vec::new();
    for (label, value) in orbit.labels.iter().zip(&orbit.values) {
        text.push_str(&format!(
            "alpha(s={}, t={})  Q = {}  value = {}\n",
            label.s,
            label.t,
            label.form,
            complex_string(value)
        ));
        rows.push(json!({
            "alpha_s": label.s,
            "alpha_t": label.t,
            "form": { "a": label.form.a, "b": label.form.b, "c": label.form.c },
            "value": complex_json(value),
        }));
    }
    Ok(Report {
        inputs: json!({
            "discriminant": common.disc,
            "exponent": exponent,
            "level": level,
            "precision": ctx.decimal_digits(),
        }),
        result: json!({
            "conjugates": rows,
            "count": orbit.values.len(),
        }),
        checks: Vec::new(),
        text,
    })
}

fn inequality_detail(r: &InequalityReport) -> String {
    format!(
        "max ratio {:.6} vs threshold {} over {} points",
        r.max_ratio,
        r.threshold,
        r.witnesses.len()
    )
}

fn cmd_verify(common: &CommonArgs, level: u32) -> Result<Report, Error> {
    let ctx = resolve_context(common)?;
    let d = common.disc;
    let mut checks = Vec::new();

    if d == -3 {
        // the exceptional field bypasses the W-matrix machinery entirely
        let rep = exceptional_invariant(level, &ctx)?;
        let tol = &ctx.tolerance() * &ctx.pow10(10);
        checks.push(Check {
            name: "exceptional_identity".into(),
            passed: rep.residual < tol,
            detail: format!(
                "sign {}: residual {:e} (rejected sign residual {:e})",
                if rep.sign > 0 { "+" } else { "-" },
                rep.residual.to_f64(),
                rep.rejected_residual.to_f64()
            ),
        });
        checks.push(Check {
            name: "g3_squared_over_delta".into(),
            passed: rep.g3_delta_residual < tol,
            detail: format!("|g3^2/Delta + 1/27| = {:e}", rep.g3_delta_residual.to_f64()),
        });
        checks.push(Check {
            name: "j_vanishes".into(),
            passed: rep.j_abs < tol,
            detail: format!("|j(theta)| = {:e}", rep.j_abs.to_f64()),
        });
    } else {
        let field = make_field(d, &ctx)?;
        let theta = field.theta_point();
        let tol = ctx.tolerance();

        // Delta by the eta-product versus the Eisenstein combination
        let lhs = delta(&theta, &ctx);
        let rhs = &g2(&theta, &ctx).powi(3) - &g3(&theta, &ctx).powi(2).scale_i64(27);
        let rel = (&(&lhs - &rhs).abs() / &rhs.abs()).to_f64();
        checks.push(Check {
            name: "delta_consistency".into(),
            passed: (&lhs - &rhs).abs() < &tol * &rhs.abs(),
            detail: format!("relative deviation {rel:e}"),
        });

        // y^2 eta^12 = 4 p^3 - g2 p - g3 at r = (0, 1/N)
        let r = IndexPair::new(0, 1, level);
        let y = y_fn(&r, &theta, &ctx)?;
        let w = wp(&r, &theta, &ctx)?;
        let lhs = &y.powi(2) * &eta(&theta, &ctx).powi(12);
        let rhs = &(&w.powi(3).scale_i64(4) - &(&g2(&theta, &ctx) * &w)) - &g3(&theta, &ctx);
        let rel = (&(&lhs - &rhs).abs() / &rhs.abs()).to_f64();
        checks.push(Check {
            name: "weierstrass_y_identity".into(),
            passed: (&lhs - &rhs).abs() < &tol * &rhs.abs(),
            detail: format!("relative deviation {rel:e}"),
        });

        if d <= -7 {
            let e = required_exponent(level);
            let sy = singular_y(&field, level, e, &ctx)?;
            checks.push(Check {
                name: "singular_value_real".into(),
                passed: sy.im.abs() < &tol * &sy.abs(),
                detail: format!("im/|y^e| = {:e}", (&sy.im.abs() / &sy.abs()).to_f64()),
            });
            let orbit = conjugate_orbit(&field, level, e, &ctx)?;
            let dev = (&(&orbit.values[0] - &sy).abs() / &sy.abs()).to_f64();
            checks.push(Check {
                name: "orbit_identity_consistency".into(),
                passed: (&orbit.values[0] - &sy).abs() < &tol * &sy.abs(),
                detail: format!("identity-label deviation {dev:e}"),
            });
        }

        if d <= -11 {
            let rep = verify_inequality2(&field, level, &ctx)?;
            checks.push(Check {
                name: "inequality_lemma_principal".into(),
                passed: rep.passed,
                detail: inequality_detail(&rep),
            });
        }
        if d <= -20 {
            let rep = verify_inequality1(&field, level, &ctx)?;
            checks.push(Check {
                name: "inequality_lemma_nonprincipal".into(),
                passed: rep.passed,
                detail: inequality_detail(&rep),
            });
        }
    }

    let passed: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "detail": c.detail,
                "name": c.name,
                "passed": c.passed,
            })
        })
        .collect();
    Ok(Report {
        inputs: json!({
            "discriminant": d,
            "level": level,
            "precision": ctx.decimal_digits(),
        }),
        result: json!({ "checks_run": passed.len() }),
        checks,
        text: format!("discriminant: {d}  level: {level}\n"),
    })
}

fn cmd_normal_basis(common: &CommonArgs, level: u32) -> Result<Report, Error> {
    let ctx = resolve_context(common)?;
    let field = make_field(common.disc, &ctx)?;
    let degree = field_degree(&field, level)?;
    let s = normal_basis_exponent(&field, level)?;
    let text = format!(
        "discriminant: {}  level: {}\n[K_({}):K] = {}\nsmallest normal-basis exponent s = {}\n\
         conjugates of y_(0,1/{})^({}s/gcd(4,{}))(theta_K) with s = {} form a normal basis\n",
        common.disc, level, level, degree, s, level, 4, level, s
    );
    Ok(Report {
        inputs: json!({
            "discriminant": common.disc,
            "level": level,
        }),
        result: json!({
            "degree": degree,
            "exponent": s,
        }),
        checks: Vec::new(),
        text,
    })
}
