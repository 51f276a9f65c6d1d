//! Command-line front end.
//!
//! Polynomials over `Q_p` are written in `T`; elements of `Q_p[T]/(P)` in
//! `alpha` (the class of `T`). Radii are given by exponent: `--radius-exp q`
//! means `|.| = p^(-q)`, and `inf` is radius zero. Norms are written
//! `torus:q1,q2,...` (weight exponents) or `additive:q` (ball radius exponent),
//! or as their JSON form.

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::arith::parse_exp;
use crate::berkovich::{eta, BerkPoint, BerkPointJson};
use crate::bt_tree::{find_moving_unit, galois_fixed_report, in_building, tau, WitnessJson};
use crate::error::{Error, Result};
use crate::hopf_norms::{
    convolve, envelope_check, norm_eval, theorem_conditions_torus, EnvelopeCheck, HopfFunction,
    MonomialNorm, Norm, NormJson, TheoremReport,
};
use crate::par::Execution;
use crate::poly::QPoly;
use crate::render::render_orbit;
use crate::sweep::{run_sweep, SweepMode, SweepSummary};
use crate::valued_field::{make_extension, AbsValue, ExtField, Field, FieldElt};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_SWEEP_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "btfix",
    version,
    about = "Galois-fixed points on the SL2 tree, apartment tests and Hopf seminorms, in exact arithmetic",
    after_help = "Polynomials over Q_p use the variable T; elements of Q_p[T]/(P) use alpha.\n\
                  --radius-exp q means |.| = p^(-q); 'inf' denotes radius 0.\n\
                  Norms: 'torus:q1,...,qn' (weights p^(-q_i)) or 'additive:q' (ball radius p^(-q))."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Galois fixed-point report of an Eisenstein polynomial.
    FixedPoints {
        #[arg(long)]
        p: u64,
        /// Eisenstein polynomial in T.
        #[arg(long)]
        poly: String,
        #[arg(long, conflicts_with = "ascii")]
        json: bool,
        /// Draw the conjugate paths and their meet.
        #[arg(long)]
        ascii: bool,
    },
    /// Retraction onto the rational tree.
    Tau(PointArgs),
    /// Whether a point lies on the rational tree.
    InBuilding(PointArgs),
    /// Value of a regular function at a torus or additive norm.
    NormEval {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        norm: String,
        /// Laurent polynomial in chi1..chin (chi at rank 1), or a polynomial in a.
        #[arg(long)]
        f: String,
        #[arg(long)]
        json: bool,
    },
    /// Convolution of two norms of one family.
    Convolve {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        json: bool,
    },
    /// Envelope-subgroup conditions of a norm.
    EnvelopeCheck {
        #[arg(long)]
        norm: String,
        #[arg(long)]
        json: bool,
    },
    /// Conditions (i)-(iv) for a monomial norm on a split torus.
    TheoremCheck {
        #[arg(long)]
        rank: usize,
        /// Comma-separated weight exponents.
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long)]
        json: bool,
    },
    /// Unit of the diagonal torus moving a base-field ball off the apartment.
    ApartmentTest {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        center: String,
        #[arg(long, allow_hyphen_values = true)]
        radius_exp: String,
        #[arg(long)]
        json: bool,
    },
    /// Seeded property sweep over random Eisenstein polynomials.
    Sweep {
        #[arg(long, value_parser = ["tame", "wild-prime", "equivalence"])]
        mode: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long)]
    pub p: u64,
    /// Defining polynomial of the field of the centre; Q_p when absent.
    #[arg(long)]
    pub poly: Option<String>,
    /// Centre, a polynomial in alpha.
    #[arg(long, allow_hyphen_values = true)]
    pub center: String,
    #[arg(long, allow_hyphen_values = true)]
    pub radius_exp: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InBuildingJson {
    pub point: BerkPointJson,
    pub in_building: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValueJson {
    pub value_exp: AbsValue,
}

/// What a command produced: text for stdout and the exit code.
#[derive(Debug, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            code: EXIT_OK,
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("report types serialize")
}

fn parse_radius(src: &str) -> Result<AbsValue> {
    match src.trim() {
        "inf" => Ok(AbsValue::ZERO),
        s => Ok(AbsValue::from_exp(parse_exp(s)?)),
    }
}

fn parse_field(p: u64, poly: Option<&str>) -> Result<Field> {
    match poly {
        None => ExtField::base(p),
        Some(src) => make_extension(p, QPoly::parse(src, &["T"])?),
    }
}

fn parse_point(a: &PointArgs) -> Result<BerkPoint> {
    let k = parse_field(a.p, a.poly.as_deref())?;
    Ok(eta(
        &FieldElt::parse(&k, &a.center)?,
        parse_radius(&a.radius_exp)?,
    ))
}

pub fn parse_weights(src: &str) -> Result<Vec<AbsValue>> {
    src.split(',')
        .map(|s| parse_exp(s.trim()).map(AbsValue::from_exp))
        .collect()
}

/// Parses `torus:q1,...`, `additive:q`, or a JSON norm.
pub fn parse_norm(src: &str) -> Result<Norm> {
    let src = src.trim();
    if src.starts_with('{') {
        let j: NormJson =
            serde_json::from_str(src).map_err(|e| Error::Parse(format!("norm JSON: {e}")))?;
        return Norm::from_json(&j);
    }
    match src.split_once(':') {
        Some(("torus", w)) => Ok(Norm::Torus(MonomialNorm::new(parse_weights(w)?)?)),
        Some(("additive", r)) => Ok(Norm::Additive(crate::hopf_norms::BallNorm::new(
            parse_radius(r)?,
        )?)),
        _ => Err(Error::Parse(format!(
            "expected 'torus:q1,...' or 'additive:q', got {src:?}"
        ))),
    }
}

fn display_norm(x: &Norm) -> String {
    let show = |r: &AbsValue| r.to_string();
    match x {
        Norm::Torus(t) => format!(
            "torus norm with weights [{}]",
            t.weights().iter().map(show).collect::<Vec<_>>().join(", ")
        ),
        Norm::Additive(b) => format!("Gauss norm of E(0, {})", show(&b.radius())),
    }
}

fn envelope_text(env: &EnvelopeCheck) -> String {
    let mut out = format!(
        "unit_ok: {}\ninv_ok: {}\nidem_ok: {}\nbounded_ok: {}\n",
        env.unit_ok, env.inv_ok, env.idem_ok, env.bounded_ok
    );
    for w in &env.witnesses {
        out.push_str(&format!(
            "witness ({}): f = {}, {} > {}\n",
            w.condition, w.function, w.lhs_value, w.x_value
        ));
    }
    out
}

fn theorem_text(rep: &TheoremReport) -> String {
    let mut out = format!(
        "(i) universal: {}\n(ii) x*x <= x and inv(x) <= x: {}\n(iii) o_T <= x: {}\n(iv) maximal ({}): {}\n",
        rep.universal,
        rep.group_conditions,
        rep.dominates_shilov_point,
        rep.maximality_scope,
        rep.maximal
    );
    for w in &rep.witnesses {
        out.push_str(&format!(
            "witness ({}): f = {}, {} > {}\n",
            w.condition, w.function, w.lhs_value, w.x_value
        ));
    }
    out
}

fn sweep_text(s: &SweepSummary) -> String {
    let mut out = format!(
        "sweep {} count={} seed={}: {} passed, {} failed\n",
        s.mode, s.count, s.seed, s.passed, s.failed
    );
    for f in &s.failures {
        out.push_str(&format!(
            "FAIL #{} p={} {}: {}\n",
            f.index,
            f.p,
            f.poly,
            f.failures.join("; ")
        ));
    }
    for d in &s.d_divergences {
        out.push_str(&format!(
            "note #{} p={} {}: p | e but the paths meet on the tree\n",
            d.index, d.p, d.poly
        ));
    }
    out
}

/// Runs a parsed command. Validation errors surface as `Err`.
pub fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::FixedPoints {
            p,
            poly,
            json,
            ascii,
        } => {
            let rep = galois_fixed_report(*p, &QPoly::parse(poly, &["T"])?)?;
            Ok(Outcome::ok(if *json {
                to_json(&rep)
            } else if *ascii {
                render_orbit(&rep)
            } else {
                let seg = match &rep.fixed_segment {
                    Some(s) => format!(
                        "[{}, {})",
                        s.from_exp.display_with(*p),
                        s.to_exp.display_with(*p)
                    ),
                    None => "empty".into(),
                };
                format!(
                    "P = {} over Q_{p}, e = {}\nr  = {}\nr' = {}\nfixed segment: {seg}\n\
                     Q(U) mod p = {}\n(a) paths meet outside the tree: {}\n\
                     (b) conjugates in D(alpha, |alpha|): {}\n(c) roots of Q in D(1,1): {}\n\
                     (d) p | e: {}\n",
                    rep.defining_poly,
                    rep.e,
                    rep.r.display_with(*p),
                    rep.r_prime.display_with(*p),
                    rep.q_reduction,
                    rep.cond_paths_outside,
                    rep.cond_open_ball,
                    rep.cond_q_roots,
                    rep.cond_e_vanishes
                )
            }))
        }
        Command::Tau(a) => {
            let y = tau(&parse_point(a)?)?;
            Ok(Outcome::ok(if a.json {
                to_json(&y.to_json())
            } else {
                format!("{y}\n")
            }))
        }
        Command::InBuilding(a) => {
            let x = parse_point(a)?;
            let b = in_building(&x)?;
            Ok(Outcome::ok(if a.json {
                to_json(&InBuildingJson {
                    point: x.to_json(),
                    in_building: b,
                })
            } else {
                format!(
                    "{x}: {}\n",
                    if b {
                        "in the building"
                    } else {
                        "off the building"
                    }
                )
            }))
        }
        Command::NormEval { p, norm, f, json } => {
            let x = parse_norm(norm)?;
            let f = match &x {
                Norm::Torus(t) => HopfFunction::parse_torus(f, t.rank())?,
                Norm::Additive(_) => HopfFunction::parse_additive(f)?,
            };
            let v = norm_eval(*p, &f, &x)?;
            Ok(Outcome::ok(if *json {
                to_json(&ValueJson { value_exp: v })
            } else {
                format!("{}\n", v.display_with(*p))
            }))
        }
        Command::Convolve { x, y, json } => {
            let z = convolve(&parse_norm(x)?, &parse_norm(y)?)?;
            Ok(Outcome::ok(if *json {
                to_json(&z.to_json())
            } else {
                format!("{}\n", display_norm(&z))
            }))
        }
        Command::EnvelopeCheck { norm, json } => {
            let env = envelope_check(&parse_norm(norm)?);
            Ok(Outcome::ok(if *json {
                to_json(&env)
            } else {
                envelope_text(&env)
            }))
        }
        Command::TheoremCheck {
            rank,
            weights,
            json,
        } => {
            let w = parse_weights(weights)?;
            if w.len() != *rank {
                return Err(Error::Degree {
                    expected: format!("{rank} weights"),
                    found: w.len(),
                });
            }
            let rep = theorem_conditions_torus(&MonomialNorm::new(w)?);
            Ok(Outcome::ok(if *json {
                to_json(&rep)
            } else {
                theorem_text(&rep)
            }))
        }
        Command::ApartmentTest {
            p,
            center,
            radius_exp,
            json,
        } => {
            let k = ExtField::base(*p)?;
            let x = eta(&FieldElt::parse(&k, center)?, parse_radius(radius_exp)?);
            let w = find_moving_unit(&x)?;
            Ok(Outcome::ok(if *json {
                to_json(&w.to_json())
            } else {
                let WitnessJson {
                    unit,
                    extension_used,
                    ..
                } = w.to_json();
                format!(
                    "{x} is moved by t = {unit} in {}: t.x = {}\n",
                    extension_used.unwrap_or_else(|| k.id()),
                    w.moved_to
                )
            }))
        }
        Command::Sweep {
            mode,
            count,
            seed,
            sequential,
            json,
        } => {
            let mode: SweepMode = mode.parse()?;
            let exec = if *sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            let s = run_sweep(mode, *count, *seed, exec);
            Ok(Outcome {
                stdout: if *json { to_json(&s) } else { sweep_text(&s) },
                code: if s.all_passed() {
                    EXIT_OK
                } else {
                    EXIT_SWEEP_FAILED
                },
            })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                (code, text, String::new())
            } else {
                (code, String::new(), text)
            };
        }
    };
    match execute(&cli.command) {
        Ok(o) => (o.code, o.stdout, String::new()),
        Err(e) => (EXIT_INVALID, String::new(), format!("error: {e}\n")),
    }
}

/// Inverse of `execute` for JSON outputs: parses and re-serializes.
pub fn reserialize(cmd: &str, json: &str) -> Result<String> {
    fn round<T: Serialize + for<'de> Deserialize<'de>>(s: &str) -> Result<String> {
        let v: T = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(to_json(&v))
    }
    match cmd {
        "fixed-points" => round::<crate::bt_tree::GaloisOrbitReport>(json),
        "tau" => round::<BerkPointJson>(json),
        "in-building" => round::<InBuildingJson>(json),
        "norm-eval" => round::<ValueJson>(json),
        "convolve" => round::<NormJson>(json),
        "envelope-check" => round::<EnvelopeCheck>(json),
        "theorem-check" => round::<TheoremReport>(json),
        "apartment-test" => round::<WitnessJson>(json),
        "sweep" => round::<SweepSummary>(json),
        _ => Err(Error::Parse(format!("unknown command {cmd:?}"))),
    }
}
