//! Command execution behind the CLI surface.

use std::path::Path;

use enb_core::enb::{canonical_base_field, EnbParams, Overrides, SearchBudget};
use enb_core::field::Field;
use enb_core::poly;
use enb_core::tensor::{self, CyclicVector, MultiplicationTensor};
use serde_json::{json, Value};

use crate::formats;
use crate::table;
use crate::CliError;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Table,
}

impl std::str::FromStr for OutputFormat {
    type Err = CliError;
    fn from_str(s: &str) -> Result<OutputFormat, CliError> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "table" => Ok(OutputFormat::Table),
            other => Err(CliError::usage(format!("unknown format: {other}"))),
        }
    }
}

pub struct RunConfig {
    pub q: u64,
    pub n: u64,
    pub overrides_path: Option<String>,
    pub format: OutputFormat,
    pub budget: SearchBudget,
    pub seed: u64,
}

struct Prepared {
    base: Field,
    overrides: Overrides,
    reported_upper: Option<u64>,
}

fn prepare(config: &RunConfig) -> Result<Prepared, CliError> {
    validate_q(config.q)?;
    let mut parsed_base_modulus: Option<Vec<u64>> = None;
    let mut doc: Option<Value> = None;
    if let Some(path) = &config.overrides_path {
        let text = std::fs::read_to_string(Path::new(path))
            .map_err(|e| CliError::usage(format!("cannot read overrides: {e}")))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("malformed overrides JSON: {e}")))?;
        // a first pass only to find the base modulus; element parsing needs
        // the base field, which may itself be pinned by the document
        parsed_base_modulus = value
            .get("curve")
            .and_then(|c| c.get("q_modulus"))
            .and_then(Value::as_array)
            .map(|items| items.iter().filter_map(Value::as_u64).collect());
        doc = Some(value);
    }
    let base = base_field(config.q, parsed_base_modulus.as_deref())?;
    let (overrides, reported_upper) = match doc {
        None => (Overrides::default(), None),
        Some(value) => {
            let parsed = formats::overrides_from_json(&base, &value)?;
            if let Some(q) = parsed.q {
                if q != config.q {
                    return Err(CliError::usage(format!(
                        "overrides are for q = {q}, command line says q = {}",
                        config.q
                    )));
                }
            }
            if let Some(n) = parsed.n {
                if n != config.n {
                    return Err(CliError::usage(format!(
                        "overrides are for n = {n}, command line says n = {}",
                        config.n
                    )));
                }
            }
            (parsed.overrides, parsed.reported_upper)
        }
    };
    Ok(Prepared { base, overrides, reported_upper })
}

fn validate_q(q: u64) -> Result<(), CliError> {
    if poly::factorize(q).len() != 1 {
        return Err(CliError::usage("q must be a prime power"));
    }
    Ok(())
}

fn base_field(q: u64, modulus: Option<&[u64]>) -> Result<Field, CliError> {
    match modulus {
        None => canonical_base_field(q).map_err(CliError::from),
        Some(digits) => {
            let factors = poly::factorize(q);
            if factors.len() != 1 {
                return Err(CliError::usage("q must be a prime power"));
            }
            let (p, e) = factors[0];
            let prime = Field::prime(p)?;
            if digits.len() != e as usize + 1 {
                return Err(CliError::usage("q_modulus degree does not match q"));
            }
            let coeffs: Vec<_> = digits.iter().map(|&d| prime.from_u64(d)).collect();
            Field::extension(&prime, &coeffs).map_err(CliError::from)
        }
    }
}

/// Builds the parameter bundle a command operates on: base field from `q`
/// (honoring a pinned base modulus), overrides from the JSON file if any,
/// then the deterministic search.
pub fn load(config: &RunConfig) -> Result<(EnbParams, Option<u64>), CliError> {
    let prepared = prepare(config)?;
    let params =
        EnbParams::compute_in(&prepared.base, config.n, &prepared.overrides, &config.budget)?;
    Ok((params, prepared.reported_upper))
}

pub fn cmd_params(config: &RunConfig) -> Result<String, CliError> {
    let (params, reported_upper) = load(config)?;
    Ok(match config.format {
        OutputFormat::Json => {
            pretty(&formats::params_to_json(&params, reported_upper))
        }
        OutputFormat::Table => table::render_params(&params),
    })
}

pub fn cmd_bounds(config: &RunConfig) -> Result<String, CliError> {
    let (params, reported_upper) = load(config)?;
    let report = tensor::complexity_report(&params)?;
    Ok(match config.format {
        OutputFormat::Json => pretty(&formats::bounds_to_json(&report, reported_upper)),
        OutputFormat::Table => table::render_report(&report, reported_upper, false),
    })
}

pub fn cmd_exact(config: &RunConfig) -> Result<String, CliError> {
    let (params, reported_upper) = load(config)?;
    let report = tensor::complexity_report(&params)?;
    Ok(match config.format {
        OutputFormat::Json => pretty(&formats::report_to_json(&report, reported_upper)),
        OutputFormat::Table => table::render_report(&report, reported_upper, true),
    })
}

pub fn cmd_multiply(
    config: &RunConfig,
    x: Option<&str>,
    y: Option<&str>,
) -> Result<String, CliError> {
    let (params, _) = load(config)?;
    let base = params.base().clone();
    let n = params.n() as usize;
    let mut rng = SplitMix(config.seed);
    let parse = |text: Option<&str>, rng: &mut SplitMix| -> Result<CyclicVector, CliError> {
        match text {
            Some(t) => {
                let value: Value = serde_json::from_str(t)
                    .map_err(|e| CliError::usage(format!("malformed vector: {e}")))?;
                let v = formats::vector_from_json(&base, &value)?;
                if v.len() != n {
                    return Err(CliError::usage(format!(
                        "vector length {} does not match n = {n}",
                        v.len()
                    )));
                }
                Ok(v)
            }
            None => {
                let p = base.characteristic();
                let entries: Vec<u64> = (0..n).map(|_| rng.next() % p).collect();
                Ok(CyclicVector::from_u64(&base, &entries))
            }
        }
    };
    let xv = parse(x, &mut rng)?;
    let yv = parse(y, &mut rng)?;
    let tensor = MultiplicationTensor::new(&params)?;
    let product = tensor.multiply(&xv, &yv)?;
    // in-process oracle: direct field multiplication
    let xf = tensor::from_coordinates(&params, &xv)?;
    let yf = tensor::from_coordinates(&params, &yv)?;
    let expected = tensor::coordinates(&params, &(&xf * &yf))?;
    if product != expected {
        return Err(CliError {
            code: 3,
            message: "tensor product disagrees with field multiplication".into(),
        });
    }
    let doc = json!({
        "x": formats::vector_to_json(&xv),
        "y": formats::vector_to_json(&yv),
        "product": formats::vector_to_json(&product),
        "verified": true,
    });
    Ok(match config.format {
        OutputFormat::Json => pretty(&doc),
        OutputFormat::Table => format!(
            "x       = {:?}\ny       = {:?}\nproduct = {:?}\nverified: true\n",
            xv.entries(),
            yv.entries(),
            product.entries()
        ),
    })
}

pub struct SweepConfig {
    pub qs: Vec<u64>,
    pub n_max: Option<u64>,
    pub budget: SearchBudget,
}

/// One CSV row per feasible parameter set, deterministic order.
pub fn cmd_sweep(config: &SweepConfig) -> Result<String, CliError> {
    let mut out = String::from(
        "q,n,a1,a2,a3,a4,a6,tx,ty,Rx,Ry,lower,upper,exact,middle_sum\n",
    );
    for &q in &config.qs {
        validate_q(q)?;
        let base = canonical_base_field(q)?;
        let hasse_max = q + 1 + isqrt(4 * q) + 1;
        let n_max = config.n_max.unwrap_or(hasse_max).min(hasse_max);
        for n in 2..=n_max {
            let params = match EnbParams::compute_in(
                &base,
                n,
                &Overrides::default(),
                &config.budget,
            ) {
                Ok(p) => p,
                Err(enb_core::Error::ParameterSearchExhausted) => continue,
                Err(enb_core::Error::Consistency(m)) => {
                    return Err(CliError { code: 3, message: m })
                }
                Err(_) => continue,
            };
            let report = tensor::complexity_report(&params)?;
            let a = params.curve().coefficients();
            let (tx, ty) = point_cells(params.torsion());
            let (rx, ry) = point_cells(params.aux());
            out.push_str(&format!(
                "{q},{n},{},{},{},{},{},{tx},{ty},{rx},{ry},{},{},{},{}\n",
                formats::element_to_csv(&a[0]),
                formats::element_to_csv(&a[1]),
                formats::element_to_csv(&a[2]),
                formats::element_to_csv(&a[3]),
                formats::element_to_csv(&a[4]),
                report.lower,
                report.upper,
                report.exact,
                report.middle_sum,
            ));
        }
    }
    Ok(out)
}

fn point_cells(p: &enb_core::Point) -> (String, String) {
    match p {
        enb_core::Point::Infinity => ("O".into(), "O".into()),
        enb_core::Point::Affine(x, y) => {
            (formats::element_to_csv(x), formats::element_to_csv(y))
        }
    }
}

fn isqrt(v: u64) -> u64 {
    if v < 2 {
        return v;
    }
    let mut x = v;
    let mut y = (x + 1) / 2;
    while y < x {
        x = y;
        y = (x + v / x) / 2;
    }
    x
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialization cannot fail");
    s.push('\n');
    s
}

struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}
