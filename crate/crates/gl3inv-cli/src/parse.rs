//! Parsers for flag values: rationals, complex numbers and comma-separated
//! pairs.

use num_complex::Complex64;
use num_rational::Ratio;

use crate::error::{CliError, CliResult};

fn usage(msg: String) -> CliError {
    CliError::Usage(msg)
}

/// Parses `"p/q"` exactly or falls back to a decimal float.
pub fn real(s: &str) -> CliResult<f64> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad numerator in {s:?}")))?;
        let q: i64 = q
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad denominator in {s:?}")))?;
        if q == 0 {
            return Err(usage(format!("zero denominator in {s:?}")));
        }
        let r = Ratio::new(p, q);
        return Ok(*r.numer() as f64 / *r.denom() as f64);
    }
    s.parse().map_err(|_| usage(format!("not a number: {s:?}")))
}

/// Parses `x`, `yi`, `x+yi` or `x-yi`, where each part may be a rational.
pub fn complex(s: &str) -> CliResult<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(real(&t)?, 0.0));
    };
    // the last sign that is not the leading one or part of an exponent
    let split = body
        .char_indices()
        .filter(|&(k, c)| (c == '+' || c == '-') && k > 0 && !body[..k].ends_with(['e', 'E']))
        .map(|(k, _)| k)
        .next_back();
    let (re, im) = match split {
        Some(k) => (real(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => real(x)?,
    };
    Ok(Complex64::new(re, im))
}

/// Parses `a,b` into two complex numbers.
pub fn complex_pair(s: &str) -> CliResult<[Complex64; 2]> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [a, b] => Ok([complex(a)?, complex(b)?]),
        _ => Err(usage(format!(
            "expected two comma-separated values, got {s:?}"
        ))),
    }
}

/// Parses `a,b` into two integers.
pub fn int_pair(s: &str) -> CliResult<[i64; 2]> {
    let parts: Vec<&str> = s.split(',').collect();
    let int = |x: &str| {
        x.trim()
            .parse()
            .map_err(|_| usage(format!("not an integer: {x:?}")))
    };
    match parts.as_slice() {
        [a, b] => Ok([int(a)?, int(b)?]),
        _ => Err(usage(format!(
            "expected two comma-separated integers, got {s:?}"
        ))),
    }
}

/// Parses `ID=VALUE` into a tolerance override.
pub fn tolerance_override(s: &str) -> CliResult<(String, f64)> {
    let (id, v) = s
        .split_once('=')
        .ok_or_else(|| usage(format!("expected ID=VALUE, got {s:?}")))?;
    let v = real(v)?;
    if v.is_nan() || v < 0.0 {
        return Err(usage(format!("tolerance must be nonnegative: {s:?}")));
    }
    Ok((id.to_string(), v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced_before_conversion() {
        assert_eq!(real("1/3").unwrap(), 1.0 / 3.0);
        assert_eq!(real("-2/6").unwrap(), -1.0 / 3.0);
        assert_eq!(real("0.25").unwrap(), 0.25);
        assert!(real("1/0").is_err());
        assert!(real("x").is_err());
    }

    #[test]
    fn complex_forms() {
        assert_eq!(complex("0.2").unwrap(), Complex64::new(0.2, 0.0));
        assert_eq!(complex("-0.1").unwrap(), Complex64::new(-0.1, 0.0));
        assert_eq!(complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(complex("0.5-2i").unwrap(), Complex64::new(0.5, -2.0));
        assert_eq!(complex("-1e-3+1e-2i").unwrap(), Complex64::new(-1e-3, 1e-2));
        assert_eq!(
            complex("1/3+2/3i").unwrap(),
            Complex64::new(1.0 / 3.0, 2.0 / 3.0)
        );
        assert!(complex("1+").is_err());
    }

    #[test]
    fn pairs_and_overrides() {
        assert_eq!(
            complex_pair("2,3").unwrap(),
            [Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0)]
        );
        assert!(complex_pair("2").is_err());
        assert_eq!(int_pair("1,-2").unwrap(), [1, -2]);
        assert_eq!(
            tolerance_override("MT1=1e-6").unwrap(),
            ("MT1".to_string(), 1e-6)
        );
        assert!(tolerance_override("MT1").is_err());
        assert!(tolerance_override("MT1=-1").is_err());
    }
}
