//! Text specs for test functions, domains and segments.
//!
//! ```text
//! powerbump:α,β   sinepower:α   besselprofile:ν,m[,λ]   smoothtent:k   zero
//! ball:n,R        box:s1xs2x...
//! ```

use super::domain::ConvexDomain;
use super::function::{bessel_profile, make_test_function, Family, TestFunction1D};
use crate::error::{Error, Result};

const FAMILIES: &str = "powerbump:a,b, sinepower:a, besselprofile:nu,m[,lambda], smoothtent:k, zero";
const DOMAINS: &str = "ball:n,R, box:s1xs2x...";

fn numbers(text: &str, sep: char, what: &str) -> Result<Vec<f64>> {
    text.split(sep)
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidInput(format!("cannot parse '{t}' as a number in {what}")))
        })
        .collect()
}

fn arity(v: &[f64], allowed: &[usize], what: &str) -> Result<()> {
    if allowed.contains(&v.len()) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{what} expects {allowed:?} parameters, got {}", v.len())))
    }
}

/// Parses a test function spec such as `powerbump:2,1`.
pub fn parse_function(spec: &str) -> Result<TestFunction1D> {
    let spec = spec.trim();
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let name = name.trim().to_ascii_lowercase();
    let v = if args.trim().is_empty() { Vec::new() } else { numbers(args, ',', spec)? };
    match name.as_str() {
        "powerbump" => {
            arity(&v, &[2], spec)?;
            make_test_function(Family::PowerBump { alpha: v[0], beta: v[1] })
        }
        "sinepower" => {
            arity(&v, &[1], spec)?;
            make_test_function(Family::SinePower { alpha: v[0] })
        }
        "smoothtent" => {
            arity(&v, &[1], spec)?;
            make_test_function(Family::SmoothTent { k: v[0] })
        }
        "besselprofile" => {
            arity(&v, &[2, 3], spec)?;
            let lambda = v.get(2).copied().unwrap_or(0.0);
            bessel_profile(v[0], v[1], lambda).map_err(|e| match e {
                Error::InvalidParams(m) => Error::InvalidInput(m),
                other => other,
            })
        }
        "zero" => {
            arity(&v, &[0], spec)?;
            make_test_function(Family::Zero)
        }
        _ => Err(Error::InvalidInput(format!("unknown function family '{name}'; valid: {FAMILIES}"))),
    }
}

/// Parses a domain spec such as `ball:2,1` or `box:2x1x1`.
pub fn make_domain(spec: &str) -> Result<ConvexDomain> {
    let spec = spec.trim();
    let (name, args) = spec
        .split_once(':')
        .ok_or_else(|| Error::InvalidInput(format!("domain spec '{spec}' needs parameters; valid: {DOMAINS}")))?;
    match name.trim().to_ascii_lowercase().as_str() {
        "ball" => {
            let v = numbers(args, ',', spec)?;
            arity(&v, &[2], spec)?;
            if v[0].fract() != 0.0 || v[0] < 1.0 {
                return Err(Error::InvalidInput(format!("ball dimension must be a positive integer, got {}", v[0])));
            }
            ConvexDomain::ball(v[0] as usize, v[1])
        }
        "box" => ConvexDomain::boxed(numbers(args, 'x', spec)?),
        other => Err(Error::InvalidInput(format!("unknown domain '{other}'; valid: {DOMAINS}"))),
    }
}

/// Parses `a,b` into a segment.
pub fn parse_segment(text: &str) -> Result<(f64, f64)> {
    let v = numbers(text, ',', "segment")?;
    arity(&v, &[2], "segment")?;
    if !(v[0] < v[1]) {
        return Err(Error::InvalidInput(format!("segment needs a < b, got {text}")));
    }
    Ok((v[0], v[1]))
}
