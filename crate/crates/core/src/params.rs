//! `name:key=value,key=value` identifiers and exact decimal parsing.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Splits `decay:alpha=0.5` into `("decay", [("alpha", "0.5")])`.
pub fn split_id(id: &str) -> Result<(&str, Vec<(&str, &str)>)> {
    let (name, rest) = match id.split_once(':') {
        Some((name, rest)) => (name, Some(rest)),
        None => (id, None),
    };
    let mut params = Vec::new();
    if let Some(rest) = rest {
        for part in rest.split(',') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::BadParameter(format!("`{part}` in `{id}` is not key=value")))?;
            params.push((k.trim(), v.trim()));
        }
    }
    Ok((name.trim(), params))
}

/// Looks up `key`, rejecting any key not in `allowed`.
pub fn lookup<'a>(params: &[(&str, &'a str)], key: &str, allowed: &[&str]) -> Result<Option<&'a str>> {
    if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(k)) {
        return Err(Error::BadParameter(format!("unknown parameter `{k}`")));
    }
    Ok(params.iter().find(|(k, _)| *k == key).map(|(_, v)| *v))
}

pub fn parse_f64(s: &str) -> Result<f64> {
    s.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::BadParameter(format!("`{s}` is not a number")))
}

/// Parses `3`, `-1.25`, `1/3` or `2.5e-3` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::BadParameter(format!("`{s}` is not a rational number"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let numer: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(numer);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -value } else { value })
}

/// Shortest text for a rational: integer, short decimal, or `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    // Terminating decimals have denominators of the form 2^i 5^j.
    let mut d = r.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let mut places = 0usize;
    let (mut twos, mut fives) = (0usize, 0usize);
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if d.is_one() {
        places = twos.max(fives);
    }
    if places == 0 || places > 12 {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let scaled = r * BigRational::from_integer(num_traits::pow(BigInt::from(10), places));
    let digits = scaled.to_integer();
    let neg = digits < BigInt::zero();
    let mut text = (if neg { -digits } else { digits }).to_string();
    while text.len() <= places {
        text.insert(0, '0');
    }
    text.insert(text.len() - places, '.');
    if neg {
        text.insert(0, '-');
    }
    text
}
