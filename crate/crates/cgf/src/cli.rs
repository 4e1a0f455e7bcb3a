//! The `cgf` command line.
//!
//! Exit status: 0 on success, 2 when the answer is mathematically negative
//! (not a CGF, not a polynomial, a conjecture violation), 1 on usage or
//! internal errors. Results go to standard output, diagnostics to
//! standard error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cgf_core::asymptotics::{judge, MultisetSeq, Thresholds};
use cgf_core::families::{bruteforce_oracle, family, hook_cgf, macmahon_box, Family, Oracle};
use cgf_core::forms::{
    cgf_check, classify_small, coeff_via_partitions, cyclo_to_rational, necessary_conditions,
    polynomiality_check, rational_to_cyclo, rational_to_poly, NotCgf, Polynomiality, Rejection,
    SmallCase,
};
use cgf_core::monoids::{cgf_graph_path, conjecture_scan, Catalog, Conjecture, MonoidClass};
use cgf_core::stats::{
    central_moment, central_moment_oracle, charfun_eval, cumulant, cyclo_cumulant,
    log_charfun_coeffs, moment, moment_oracle,
};
use cgf_core::{CycloForm, IntPoly, RationalForm};

use crate::cache;
use crate::output::{
    bfile_text, csv_text, cyclo_json, float_json, fmt_float, indexed_rat_json, json_text,
    necessary_json, poly_json, rat_str, rational_json, ubig_json,
};
use crate::parallel::{build_catalog, diagnostics_rows, generator_table};
use crate::parse::{parse_multiset, parse_partition, parse_poly, parse_ratform};
use crate::{CliError, Result};

#[derive(Parser, Debug)]
#[command(name = "cgf", version, about = "Exact tools for cyclotomic generating functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Bfile,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassArg {
    Lcc,
    Uni,
    Gale,
    Plus,
    Pm,
    All,
}

impl ClassArg {
    fn classes(self) -> Vec<MonoidClass> {
        match self {
            ClassArg::Lcc => vec![MonoidClass::Lcc],
            ClassArg::Uni => vec![MonoidClass::Uni],
            ClassArg::Gale => vec![MonoidClass::Gale],
            ClassArg::Plus => vec![MonoidClass::Plus],
            ClassArg::Pm => vec![MonoidClass::Pm],
            ClassArg::All => MonoidClass::ALL.to_vec(),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyName {
    Qbinomial,
    Qfactorial,
    Qmultinomial,
    Qcatalan,
    Macmahon,
    Hook,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanFamily {
    /// `[2k choose k]_q` at each point `k`
    QbinomialCentral,
    /// MacMahon box `k * k * k`
    MacmahonCube,
    Qfactorial,
    Qcatalan,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    PlanePartitions,
    SytMaj,
    BoxPartitions,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjectureArg {
    Majorization,
    UniPrimeFactor,
    NongaleCount,
}

/// One of `--poly`, `--ratform` or `--cyclo`.
#[derive(Args, Debug, Clone, Default)]
pub struct InputArgs {
    /// Polynomial coefficients, low degree first, e.g. `1,1,3,4`
    #[arg(long)]
    pub poly: Option<String>,
    /// Rational form `a1,a2,.../b1,b2,...`
    #[arg(long)]
    pub ratform: Option<String>,
    /// Cyclotomic indices, e.g. `4,5,5,6`
    #[arg(long)]
    pub cyclo: Option<String>,
    /// Scalar factor for `--ratform` and `--cyclo`
    #[arg(long, default_value_t = 1)]
    pub alpha: u64,
    /// Power of `q` for `--ratform` and `--cyclo`
    #[arg(long, default_value_t = 0)]
    pub beta: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether the input is a CGF and print its cyclotomic form
    Check(InputArgs),
    /// Both canonical forms with necessary conditions and small-case classification
    Forms(InputArgs),
    /// Series coefficients from the partition formula
    Coeffs {
        #[command(flatten)]
        input: InputArgs,
        /// Highest power of `q` (defaults to the degree)
        #[arg(long)]
        upto: Option<u64>,
    },
    /// Exact cumulants
    Cumulants {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 8)]
        max_d: u32,
        /// Cumulants of the single cyclotomic polynomial `Phi_n` instead
        #[arg(long)]
        phi: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Exact raw or central moments
    Moments {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 8)]
        max_d: u32,
        #[arg(long)]
        central: bool,
        /// Also compare with the coefficient-sum oracle
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Characteristic function on a grid, or log-charfun coefficients
    Charfun {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
        t_min: f64,
        #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
        t_max: f64,
        #[arg(long, default_value_t = 61)]
        steps: usize,
        #[arg(long)]
        standardized: bool,
        /// Print coefficients of `log phi*` up to this even order instead
        #[arg(long)]
        log_coeffs: Option<u32>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Normality diagnostics of one form
    Diagnose(InputArgs),
    /// Normality diagnostics along a family
    Scan {
        #[arg(long, value_enum)]
        family: ScanFamily,
        /// Parameter values, e.g. `5,10,20,40`
        #[arg(long)]
        points: String,
        /// Repeat the first point's form at every parameter
        #[arg(long)]
        fixed: bool,
        #[arg(long, default_value_t = 0.95)]
        ratio_max: f64,
        #[arg(long, default_value_t = 10.0)]
        quartic_min: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Rational form of a named family
    Family {
        #[arg(long, value_enum)]
        name: FamilyName,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        /// Composition for `qmultinomial`, e.g. `2,2,1`
        #[arg(long)]
        composition: Option<String>,
        /// Box sides `x,y,z` for `macmahon`
        #[arg(long = "box")]
        box_sides: Option<String>,
        /// Partition for `hook`, e.g. `4,2,1`
        #[arg(long)]
        partition: Option<String>,
    },
    /// Brute-force generating polynomial
    Oracle {
        #[arg(long, value_enum)]
        kind: OracleKind,
        #[arg(long = "box")]
        box_sides: Option<String>,
        #[arg(long)]
        partition: Option<String>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Monoid elements per degree
    Enumerate {
        #[arg(long, value_enum, default_value = "plus")]
        class: ClassArg,
        #[arg(long)]
        max_degree: u64,
        /// Restrict JSON output to one degree
        #[arg(long)]
        degree: Option<u64>,
        #[arg(long, value_enum, default_value = "bfile")]
        format: Format,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Irreducible monoid elements per degree
    Generators {
        #[arg(long, value_enum, default_value = "plus")]
        class: ClassArg,
        #[arg(long)]
        max_degree: u64,
        #[arg(long, value_enum, default_value = "bfile")]
        format: Format,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Exhaustive checks of conjectured properties
    Conjecture {
        #[arg(long, value_enum)]
        which: ConjectureArg,
        #[arg(long, default_value_t = 20)]
        max_degree: u64,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Path of CGF numerators over a fixed denominator
    Graphpath {
        #[arg(long)]
        denom: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
}

/// Text for standard output plus the exit status.
struct Reply {
    text: String,
    code: i32,
}

fn ok(v: Value) -> Result<Reply> {
    Ok(Reply {
        text: json_text(&v),
        code: 0,
    })
}

fn negative(v: Value) -> Result<Reply> {
    Ok(Reply {
        text: json_text(&v),
        code: 2,
    })
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| usage(format!("missing --{flag}")))
}

enum Input {
    Poly(IntPoly),
    Rational(RationalForm),
    Cyclo(CycloForm),
}

impl InputArgs {
    fn resolve(&self) -> Result<Input> {
        let given = [&self.poly, &self.ratform, &self.cyclo]
            .iter()
            .filter(|x| x.is_some())
            .count();
        if given != 1 {
            return Err(usage("give exactly one of --poly, --ratform, --cyclo"));
        }
        if let Some(s) = &self.poly {
            return Ok(Input::Poly(parse_poly(s)?));
        }
        if let Some(s) = &self.ratform {
            let rf = parse_ratform(s)?.with_scale(self.alpha.into(), self.beta)?;
            return Ok(Input::Rational(rf));
        }
        let ix = parse_multiset(self.cyclo.as_deref().unwrap_or_default())?;
        Ok(Input::Cyclo(CycloForm::new(self.alpha.into(), self.beta, ix)?))
    }
}

fn not_cgf_json(e: &NotCgf) -> Value {
    match e {
        NotCgf::NonCyclotomicResidue { residue } => {
            json!({"cgf": false, "reason": e.reason(), "residue": poly_json(residue)})
        }
        _ => json!({"cgf": false, "reason": e.reason()}),
    }
}

fn rejection_json(e: &Rejection) -> Value {
    match e {
        Rejection::NotPolynomial { witness } => {
            json!({"cgf": false, "reason": e.reason(), "witness": witness})
        }
        Rejection::NotNonnegative { expansion } => json!({
            "cgf": false,
            "reason": e.reason(),
            "expansion": poly_json(expansion),
            "pretty": expansion.pretty(),
        }),
    }
}

/// Cyclotomic form and expansion of a CGF input, or the negative answer.
fn as_cgf(input: Input) -> std::result::Result<(CycloForm, IntPoly), Value> {
    match input {
        Input::Poly(p) => cgf_check(&p).map(|cf| (cf, p)).map_err(|e| not_cgf_json(&e)),
        Input::Rational(rf) => {
            let p = rational_to_poly(&rf).map_err(|e| rejection_json(&e))?;
            let cf = rational_to_cyclo(&rf).map_err(|e| rejection_json(&e))?;
            Ok((cf, p))
        }
        Input::Cyclo(cf) => {
            let p = cf.to_poly();
            if p.is_nonnegative() {
                Ok((cf, p))
            } else {
                Err(json!({
                    "cgf": false,
                    "reason": NotCgf::NegativeCoefficient.reason(),
                    "expansion": poly_json(&p),
                }))
            }
        }
    }
}

/// Rational form of the input: as given for `--ratform`, converted from
/// the cyclotomic form otherwise.
fn as_rational(input: Input) -> std::result::Result<RationalForm, Value> {
    match input {
        Input::Rational(rf) => Ok(rf),
        Input::Cyclo(cf) => Ok(cyclo_to_rational(&cf)),
        other => as_cgf(other).map(|(cf, _)| cyclo_to_rational(&cf)),
    }
}

fn cmd_check(args: &InputArgs) -> Result<Reply> {
    match as_cgf(args.resolve()?) {
        Ok((cf, p)) => ok(json!({
            "cgf": true,
            "alpha": ubig_json(&cf.alpha),
            "beta": cf.beta,
            "indices": cf.indices,
            "poly": poly_json(&p),
            "rational": rational_json(&cyclo_to_rational(&cf)),
        })),
        Err(v) => negative(v),
    }
}

fn small_json(rf: &RationalForm) -> Value {
    match classify_small(rf) {
        Err(_) => Value::Null,
        Ok(c) => json!({
            "m": c.m,
            "case": c.divisibility.map(|d| match d {
                SmallCase::Constant => "constant",
                SmallCase::Divides => "divides",
                SmallCase::Case1 => "i",
                SmallCase::Case2 => "ii",
                SmallCase::Case3 => "iii",
                SmallCase::Case4 => "iv",
            }),
            "span": c.span_ok,
            "cgf": c.is_cgf,
        }),
    }
}

fn cmd_forms(args: &InputArgs) -> Result<Reply> {
    let rf = match as_rational(args.resolve()?) {
        Ok(rf) => rf,
        Err(v) => return negative(v),
    };
    let polynomiality = match polynomiality_check(&rf) {
        Polynomiality::Holds => json!("holds"),
        Polynomiality::Fails { witness } => json!({"fails": witness}),
    };
    let mut v = json!({
        "rational": rational_json(&rf),
        "reduced": rational_json(&rf.reduced()),
        "polynomiality": polynomiality,
        "necessary": necessary_json(&necessary_conditions(&rf)),
        "small": small_json(&rf),
    });
    let code = match rational_to_poly(&rf) {
        Ok(p) => {
            let cf = rational_to_cyclo(&rf).expect("expansion succeeded");
            v["cgf"] = json!(true);
            v["cyclo"] = cyclo_json(&cf);
            v["poly"] = poly_json(&p);
            0
        }
        Err(e) => {
            v["cgf"] = json!(false);
            v["rejection"] = rejection_json(&e);
            2
        }
    };
    Ok(Reply {
        text: json_text(&v),
        code,
    })
}

fn cmd_coeffs(args: &InputArgs, upto: Option<u64>) -> Result<Reply> {
    let rf = match as_rational(args.resolve()?) {
        Ok(rf) => rf,
        Err(v) => return negative(v),
    };
    let top = match upto {
        Some(k) => k,
        None => u64::try_from(rf.degree())
            .map_err(|_| usage("form has negative degree; pass --upto"))?,
    };
    let coeffs: Vec<Value> = (0..=top)
        .map(|k| crate::output::big_json(&coeff_via_partitions(&rf, k)))
        .collect();
    ok(json!({"rational": rational_json(&rf), "coeffs": coeffs}))
}

fn rat_rows(values: &[(u32, cgf_core::Rat)], format: Format) -> Result<Reply> {
    let text = match format {
        Format::Json => json_text(&Value::Array(
            values.iter().map(|(d, x)| indexed_rat_json(*d, x)).collect(),
        )),
        Format::Csv => csv_text(
            &["d", "value", "float"],
            &values
                .iter()
                .map(|(d, x)| vec![d.to_string(), rat_str(x), fmt_float(cgf_core::stats::rat_to_f64(x))])
                .collect::<Vec<_>>(),
        )?,
        Format::Text => values.iter().map(|(d, x)| format!("{d} {}\n", rat_str(x))).collect(),
        Format::Bfile => return Err(usage("b-file output is only for sequences of counts")),
    };
    Ok(Reply { text, code: 0 })
}

fn cmd_cumulants(args: &InputArgs, max_d: u32, phi: Option<u64>, format: Format) -> Result<Reply> {
    if max_d == 0 {
        return Err(usage("--max-d must be positive"));
    }
    let values = match phi {
        Some(n) => (1..=max_d)
            .map(|d| cyclo_cumulant(n, d).map(|x| (d, x)))
            .collect::<std::result::Result<Vec<_>, _>>()?,
        None => {
            let rf = match as_rational(args.resolve()?) {
                Ok(rf) => rf,
                Err(v) => return negative(v),
            };
            (1..=max_d).map(|d| (d, cumulant(&rf, d))).collect()
        }
    };
    rat_rows(&values, format)
}

fn cmd_moments(args: &InputArgs, max_d: u32, central: bool, oracle: bool, format: Format) -> Result<Reply> {
    let input = args.resolve()?;
    let (rf, poly) = match input {
        Input::Rational(rf) if !oracle => (rf, None),
        other => match as_cgf(other) {
            Ok((cf, p)) => (cyclo_to_rational(&cf), Some(p)),
            Err(v) => return negative(v),
        },
    };
    let f = if central { central_moment } else { moment };
    let values: Vec<(u32, cgf_core::Rat)> = (1..=max_d).map(|d| (d, f(&rf, d))).collect();
    if !oracle {
        return rat_rows(&values, format);
    }
    let p = poly.expect("oracle inputs are expanded");
    let mut rows = Vec::new();
    for (d, x) in &values {
        let o = if central {
            central_moment_oracle(&p, *d)?
        } else {
            moment_oracle(&p, *d)?
        };
        let mut v = indexed_rat_json(*d, x);
        v["oracle_agrees"] = json!(&o == x);
        rows.push(v);
    }
    if format != Format::Json {
        return Err(usage("--oracle output is JSON only"));
    }
    ok(Value::Array(rows))
}

#[allow(clippy::too_many_arguments)]
fn cmd_charfun(
    args: &InputArgs,
    t_min: f64,
    t_max: f64,
    steps: usize,
    standardized: bool,
    log_coeffs: Option<u32>,
    format: Format,
) -> Result<Reply> {
    let input = args.resolve()?;
    if let Some(order) = log_coeffs {
        let rf = match as_rational(input) {
            Ok(rf) => rf,
            Err(v) => return negative(v),
        };
        let terms: Vec<Value> = log_charfun_coeffs(&rf, order)?
            .iter()
            .map(|t| {
                json!({
                    "order": t.order,
                    "kappa": rat_str(&t.kappa),
                    "sigma_power": rat_str(&t.sigma_power),
                    "standardized": rat_str(&t.standardized),
                    "coefficient": rat_str(&t.coefficient),
                    "float": float_json(t.value),
                })
            })
            .collect();
        return ok(Value::Array(terms));
    }
    let p = match as_cgf(input) {
        Ok((_, p)) => p,
        Err(v) => return negative(v),
    };
    if steps == 0 {
        return Err(usage("--steps must be positive"));
    }
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let t = if steps == 1 {
            t_min
        } else {
            t_min + (t_max - t_min) * i as f64 / (steps - 1) as f64
        };
        let z = charfun_eval(&p, t, standardized)?;
        rows.push((t, z.re, z.im, z.norm(), (-t * t / 2.0).exp()));
    }
    let text = match format {
        Format::Csv => csv_text(
            &["t", "re", "im", "abs", "normal_re"],
            &rows
                .iter()
                .map(|r| [r.0, r.1, r.2, r.3, r.4].iter().map(|&x| fmt_float(x)).collect())
                .collect::<Vec<_>>(),
        )?,
        Format::Json => json_text(&Value::Array(
            rows.iter()
                .map(|r| {
                    json!({"t": float_json(r.0), "re": float_json(r.1), "im": float_json(r.2),
                           "abs": float_json(r.3), "normal_re": float_json(r.4)})
                })
                .collect(),
        )),
        _ => return Err(usage("charfun supports csv or json")),
    };
    Ok(Reply { text, code: 0 })
}

fn diagnostics_json(d: &cgf_core::asymptotics::Diagnostics) -> Value {
    json!({
        "ratio": float_json(d.ratio),
        "quartic": float_json(d.quartic),
        "std_k3": float_json(d.std_k3),
        "std_k4": float_json(d.std_k4),
        "std_k4_exact": rat_str(&d.std_k4_exact),
        "ms_bound": float_json(d.ms_bound),
        "sigma": float_json(d.sigma),
        "mu": float_json(d.mu),
    })
}

fn cmd_diagnose(args: &InputArgs) -> Result<Reply> {
    let rf = match as_rational(args.resolve()?) {
        Ok(rf) => rf,
        Err(v) => return negative(v),
    };
    let d = cgf_core::asymptotics::diaconis_diagnostics(&rf)?;
    ok(diagnostics_json(&d))
}

fn scan_point(fam: ScanFamily, k: u64) -> Result<RationalForm> {
    Ok(match fam {
        ScanFamily::QbinomialCentral => family(&Family::QBinomial { n: 2 * k, k })?,
        ScanFamily::MacmahonCube => macmahon_box(k, k, k)?,
        ScanFamily::Qfactorial => family(&Family::QFactorial { n: k })?,
        ScanFamily::Qcatalan => family(&Family::QCatalan { n: k })?,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    fam: ScanFamily,
    points: &str,
    fixed: bool,
    ratio_max: f64,
    quartic_min: f64,
    format: Format,
    threads: Option<usize>,
) -> Result<Reply> {
    let ks = parse_multiset(points)?;
    if ks.len() < 3 {
        return Err(usage("a scan needs at least three points"));
    }
    let mut pts = Vec::new();
    for &k in &ks {
        let at = if fixed { ks[0] } else { k };
        pts.push((k, scan_point(fam, at)?));
    }
    let label = fam
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let seq = MultisetSeq::new(label, pts)?;
    let rows = diagnostics_rows(&seq, threads)?;
    let report = judge(&seq, rows, Thresholds { ratio_max, quartic_min });
    let text = match format {
        Format::Csv => csv_text(
            &["N", "ratio", "quartic", "std_k3", "std_k4", "ms_bound", "sigma", "mu"],
            &report
                .rows
                .iter()
                .map(|(n, d)| {
                    let mut r = vec![n.to_string()];
                    r.extend(
                        [d.ratio, d.quartic, d.std_k3, d.std_k4, d.ms_bound, d.sigma, d.mu]
                            .iter()
                            .map(|&x| fmt_float(x)),
                    );
                    r
                })
                .collect::<Vec<_>>(),
        )?,
        Format::Json => json_text(&json!({
            "label": report.label,
            "rows": report.rows.iter().map(|(n, d)| {
                let mut v = json!({"N": n});
                v.as_object_mut()
                    .expect("object literal")
                    .extend(diagnostics_json(d).as_object().cloned().unwrap_or_default());
                v
            }).collect::<Vec<_>>(),
            "verdict": report.verdict.to_string(),
            "heuristic": true,
            "criteria": {
                "ratio_ok": report.ratio_ok,
                "quartic_increasing": report.quartic_increasing,
                "quartic_exceeds_min": report.quartic_exceeds_min,
                "std_k4_decreasing": report.std_k4_decreasing,
                "constant_from": report.constant_from,
            },
        })),
        _ => return Err(usage("scan supports csv or json")),
    };
    Ok(Reply { text, code: 0 })
}

fn sides3(s: &str) -> Result<(u64, u64, u64)> {
    match parse_multiset(s)?.as_slice() {
        &[x, y, z] => Ok((x, y, z)),
        _ => Err(usage("--box takes three sides x,y,z")),
    }
}

fn cmd_family(
    name: FamilyName,
    n: Option<u64>,
    k: Option<u64>,
    composition: Option<&str>,
    box_sides: Option<&str>,
    partition: Option<&str>,
) -> Result<Reply> {
    let rf = match name {
        FamilyName::Qbinomial => family(&Family::QBinomial {
            n: need(n, "n")?,
            k: need(k, "k")?,
        })?,
        FamilyName::Qfactorial => family(&Family::QFactorial { n: need(n, "n")? })?,
        FamilyName::Qcatalan => family(&Family::QCatalan { n: need(n, "n")? })?,
        FamilyName::Qmultinomial => family(&Family::QMultinomial {
            composition: parse_multiset(need(composition, "composition")?)?,
        })?,
        FamilyName::Macmahon => {
            let (x, y, z) = sides3(need(box_sides, "box")?)?;
            macmahon_box(x, y, z)?
        }
        FamilyName::Hook => hook_cgf(&parse_partition(need(partition, "partition")?)?)?,
    };
    let mut v = json!({
        "family": name.to_possible_value().map(|p| p.get_name().to_string()),
        "rational": rational_json(&rf),
        "reduced": rational_json(&rf.reduced()),
    });
    match rational_to_poly(&rf) {
        Ok(p) => {
            v["poly"] = poly_json(&p);
            v["cyclo"] = cyclo_json(&rational_to_cyclo(&rf).expect("expansion succeeded"));
            ok(v)
        }
        Err(e) => {
            v["rejection"] = rejection_json(&e);
            negative(v)
        }
    }
}

fn cmd_oracle(
    kind: OracleKind,
    box_sides: Option<&str>,
    partition: Option<&str>,
    n: Option<u64>,
    k: Option<u64>,
) -> Result<Reply> {
    let o = match kind {
        OracleKind::PlanePartitions => {
            let (x, y, z) = sides3(need(box_sides, "box")?)?;
            Oracle::PlanePartitions { x, y, z }
        }
        OracleKind::SytMaj => Oracle::SytMaj(parse_partition(need(partition, "partition")?)?),
        OracleKind::BoxPartitions => Oracle::BoxPartitions {
            n: need(n, "n")?,
            k: need(k, "k")?,
        },
    };
    let p = bruteforce_oracle(&o)?;
    ok(json!({
        "kind": kind.to_possible_value().map(|p| p.get_name().to_string()),
        "poly": poly_json(&p),
        "total": crate::output::big_json(&p.eval_one()),
    }))
}

fn one_class(class: ClassArg, format: Format) -> Result<MonoidClass> {
    match class.classes().as_slice() {
        [c] => Ok(*c),
        _ => Err(usage(format!("--class all is not available with {format:?} output"))),
    }
}

fn cmd_enumerate(
    class: ClassArg,
    max_degree: u64,
    degree: Option<u64>,
    format: Format,
    threads: Option<usize>,
) -> Result<Reply> {
    if max_degree == 0 {
        return Err(usage("--max-degree must be positive"));
    }
    let top = degree.map_or(max_degree, |d| d.max(max_degree));
    let cat = build_catalog(top, threads)?;
    let degrees: Vec<u64> = match degree {
        Some(d) => vec![d],
        None => (1..=max_degree).collect(),
    };
    let text = match format {
        Format::Bfile => {
            let c = one_class(class, format)?;
            let terms = degrees
                .iter()
                .map(|&n| cat.count(c, n).map(|k| (n, k)))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            bfile_text(&terms)
        }
        Format::Csv | Format::Text => {
            let classes = class.classes();
            let mut header = vec!["degree"];
            header.extend(classes.iter().map(|c| c.name()));
            let mut rows = Vec::new();
            for &n in &degrees {
                let mut r = vec![n.to_string()];
                for &c in &classes {
                    r.push(cat.count(c, n)?.to_string());
                }
                rows.push(r);
            }
            if format == Format::Csv {
                csv_text(&header, &rows)?
            } else {
                let mut s = header.join(" ") + "\n";
                for r in rows {
                    s += &(r.join(" ") + "\n");
                }
                s
            }
        }
        Format::Json => {
            let mut recs = Vec::new();
            for c in class.classes() {
                for &n in &degrees {
                    let r = cat.record(c, n)?;
                    recs.push(json!({
                        "degree": r.degree,
                        "class": c.name(),
                        "count": r.count(),
                        "elements": r.elements,
                        "generators": r.generators,
                    }));
                }
            }
            json_text(&Value::Array(recs))
        }
    };
    Ok(Reply { text, code: 0 })
}

fn cmd_generators(class: ClassArg, max_degree: u64, format: Format, threads: Option<usize>) -> Result<Reply> {
    if max_degree == 0 {
        return Err(usage("--max-degree must be positive"));
    }
    let cat = build_catalog(max_degree, threads)?;
    let text = match format {
        Format::Bfile => {
            let c = one_class(class, format)?;
            let table = generator_table(&cat, c, threads)?;
            let terms: Vec<(u64, usize)> = table.iter().enumerate().map(|(i, g)| (i as u64 + 1, g.len())).collect();
            bfile_text(&terms)
        }
        Format::Json => {
            let mut recs = Vec::new();
            for c in class.classes() {
                for (i, g) in generator_table(&cat, c, threads)?.into_iter().enumerate() {
                    recs.push(json!({
                        "degree": i + 1,
                        "class": c.name(),
                        "count": g.len(),
                        "generators": g,
                    }));
                }
            }
            json_text(&Value::Array(recs))
        }
        _ => return Err(usage("generators supports bfile or json")),
    };
    Ok(Reply { text, code: 0 })
}

fn cmd_conjecture(which: ConjectureArg, max_degree: u64, threads: Option<usize>) -> Result<Reply> {
    let conj = match which {
        ConjectureArg::Majorization => Conjecture::Majorization,
        ConjectureArg::UniPrimeFactor => Conjecture::UniPrimeFactor,
        ConjectureArg::NongaleCount => Conjecture::NongaleCount,
    };
    let cat: Catalog = build_catalog(max_degree, threads)?;
    let rep = conjecture_scan(&cat, conj)?;
    let name = which.to_possible_value().map(|p| p.get_name().to_string());
    let mut v = json!({
        "which": name,
        "max_degree": rep.max_degree,
        "checked": rep.checked,
    });
    if conj == Conjecture::NongaleCount {
        v["per_degree"] = json!(rep
            .per_degree
            .iter()
            .map(|(n, d)| json!({"degree": n, "nongale": d}))
            .collect::<Vec<_>>());
        v["nongale"] = json!(rep.violations);
        return ok(v);
    }
    v["violations"] = json!(rep.violations);
    if rep.violations.is_empty() {
        ok(v)
    } else {
        negative(v)
    }
}

fn cmd_graphpath(denom: &str, from: &str, to: &str) -> Result<Reply> {
    let b = parse_multiset(denom)?;
    let a = parse_multiset(from)?;
    let a2 = parse_multiset(to)?;
    match cgf_graph_path(&b, &a, &a2) {
        Ok(path) => ok(json!({"denom": b, "path": path, "length": path.len() - 1})),
        Err(cgf_core::Error::InvalidParameter(msg)) => negative(json!({"cgf": false, "reason": msg})),
        Err(e) => Err(e.into()),
    }
}

fn dispatch(cmd: &Command) -> Result<Reply> {
    match cmd {
        Command::Check(a) => cmd_check(a),
        Command::Forms(a) => cmd_forms(a),
        Command::Coeffs { input, upto } => cmd_coeffs(input, *upto),
        Command::Cumulants { input, max_d, phi, format } => cmd_cumulants(input, *max_d, *phi, *format),
        Command::Moments { input, max_d, central, oracle, format } => {
            cmd_moments(input, *max_d, *central, *oracle, *format)
        }
        Command::Charfun { input, t_min, t_max, steps, standardized, log_coeffs, format } => {
            cmd_charfun(input, *t_min, *t_max, *steps, *standardized, *log_coeffs, *format)
        }
        Command::Diagnose(a) => cmd_diagnose(a),
        Command::Scan { family, points, fixed, ratio_max, quartic_min, format, threads } => {
            cmd_scan(*family, points, *fixed, *ratio_max, *quartic_min, *format, *threads)
        }
        Command::Family { name, n, k, composition, box_sides, partition } => cmd_family(
            *name,
            *n,
            *k,
            composition.as_deref(),
            box_sides.as_deref(),
            partition.as_deref(),
        ),
        Command::Oracle { kind, box_sides, partition, n, k } => {
            cmd_oracle(*kind, box_sides.as_deref(), partition.as_deref(), *n, *k)
        }
        Command::Enumerate { class, max_degree, degree, format, threads } => {
            cmd_enumerate(*class, *max_degree, *degree, *format, *threads)
        }
        Command::Generators { class, max_degree, format, threads } => {
            cmd_generators(*class, *max_degree, *format, *threads)
        }
        Command::Conjecture { which, max_degree, threads } => cmd_conjecture(*which, *max_degree, *threads),
        Command::Graphpath { denom, from, to } => cmd_graphpath(denom, from, to),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    let dir = cache::cache_dir();
    if let Some(d) = &dir {
        if let Err(e) = cache::load(d) {
            let _ = writeln!(err, "warning: ignoring cyclotomic cache: {e}");
        }
    }
    let code = match dispatch(&cli.command) {
        Ok(reply) => {
            if out.write_all(reply.text.as_bytes()).is_err() {
                return 1;
            }
            reply.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    };
    if let Some(d) = &dir {
        if let Err(e) = cache::save(d) {
            let _ = writeln!(err, "warning: could not write cyclotomic cache: {e}");
        }
    }
    code
}
