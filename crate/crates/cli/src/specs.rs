//! Parsers for the compact function, measure and covariance arguments.

use rfseries::fgn::{CovarianceSequence, HurstParameter};
use rfseries::sampling::MeasureSpec;
use rfseries::series::{CoefficientSpec, Sides, TrigPolynomial};
use rfseries::{Complex64, Error, Result};

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

fn number(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Domain(format!("cannot parse {what} from '{s}'")))
}

fn integer(s: &str, what: &str) -> Result<i64> {
    s.trim()
        .parse::<i64>()
        .map_err(|_| Error::Domain(format!("cannot parse {what} from '{s}'")))
}

pub fn hurst(h: f64) -> Result<HurstParameter> {
    HurstParameter::new(h)
}

/// Coefficient families:
/// `power:ALPHA[:alt][:one]`, `char:N`, `const:C`, `terms:N/RE/IM,N/RE/IM,...`.
pub fn coefficients(spec: &str) -> Result<CoefficientSpec> {
    let mut parts = spec.split(':');
    let kind = parts.next().unwrap_or_default();
    match kind {
        "power" => {
            let alpha = number(parts.next().unwrap_or_default(), "power-law exponent")?;
            let mut alternating = false;
            let mut sides = Sides::Two;
            for flag in parts {
                match flag {
                    "alt" => alternating = true,
                    "one" => sides = Sides::One,
                    other => return invalid(format!("unknown power-law flag '{other}'")),
                }
            }
            CoefficientSpec::power_law_with(alpha, 1.0, alternating, sides)
        }
        "char" => {
            let n = integer(parts.next().unwrap_or_default(), "frequency")?;
            Ok(CoefficientSpec::monomial(n, Complex64::new(1.0, 0.0)))
        }
        "const" => {
            let c = number(parts.next().unwrap_or_default(), "constant")?;
            Ok(CoefficientSpec::monomial(0, Complex64::new(c, 0.0)))
        }
        "terms" => {
            let body = parts.next().unwrap_or_default();
            let terms = body
                .split(',')
                .map(|t| {
                    let f: Vec<&str> = t.split('/').collect();
                    if f.len() != 3 {
                        return invalid(format!("term '{t}' must be N/RE/IM"));
                    }
                    Ok((
                        integer(f[0], "frequency")?,
                        Complex64::new(number(f[1], "real part")?, number(f[2], "imaginary part")?),
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            if terms.is_empty() {
                return invalid("terms: needs at least one term");
            }
            Ok(CoefficientSpec::FiniteSupport { terms })
        }
        other => invalid(format!(
            "unknown function spec '{other}' (expected power:, char:, const: or terms:)"
        )),
    }
}

/// Trigonometric polynomial for a coefficient spec, truncating infinite families at `order`.
pub fn function(spec: &CoefficientSpec, order: usize) -> TrigPolynomial {
    match spec {
        CoefficientSpec::FiniteSupport { terms } => TrigPolynomial::new(terms.clone()),
        _ => spec.truncate(order),
    }
}

/// Measures: `lebesgue`, `fgn:H`, `atoms:T/W,T/W,...`.
pub fn measure(spec: &str) -> Result<MeasureSpec> {
    let (kind, body) = spec.split_once(':').unwrap_or((spec, ""));
    match kind {
        "lebesgue" => Ok(MeasureSpec::Lebesgue),
        "fgn" => MeasureSpec::fgn(hurst(number(body, "Hurst parameter")?)?),
        "atoms" => {
            let atoms = body
                .split(',')
                .map(|a| {
                    let (t, w) = a
                        .split_once('/')
                        .ok_or_else(|| Error::Domain(format!("atom '{a}' must be T/W")))?;
                    Ok((number(t, "atom location")?, number(w, "atom weight")?))
                })
                .collect::<Result<Vec<_>>>()?;
            MeasureSpec::atomic(atoms)
        }
        other => invalid(format!("unknown measure '{other}' (expected lebesgue, fgn:H or atoms:)")),
    }
}

/// Covariances: `white`, `fgn:H`, `power:A`.
pub fn covariance(spec: &str) -> Result<CovarianceSequence> {
    let (kind, body) = spec.split_once(':').unwrap_or((spec, ""));
    match kind {
        "white" => Ok(CovarianceSequence::White),
        "fgn" => Ok(CovarianceSequence::fgn(hurst(number(body, "Hurst parameter")?)?)),
        "power" => CovarianceSequence::power_law(number(body, "decay exponent")?),
        other => invalid(format!("unknown covariance '{other}' (expected white, fgn:H or power:A)")),
    }
}

/// Comma-separated list of positive integers.
pub fn ladder(spec: &str) -> Result<Vec<usize>> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Domain(format!("cannot parse ladder entry '{s}'")))
        })
        .collect()
}
