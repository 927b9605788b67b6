//! Exactly comparable centrality scores.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Relative tie tolerance for float keys.
pub const TIE_EPS: f64 = 1e-9;

/// A centrality score. Keys of one measure always share a variant, and only
/// such keys are compared. `Greater` always means "more central".
#[derive(Debug, Clone, PartialEq)]
pub enum ScoreKey {
    /// Exact integer; with `descending` a smaller raw value is more central
    /// (distance sums, maximum distances).
    Int { raw: i64, descending: bool },
    /// Exact nonnegative count.
    Big(BigUint),
    /// Exact rational.
    Ratio(BigRational),
    /// Float, tied within a relative tolerance.
    Float(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Comparison {
    pub ordering: Ordering,
    /// The float margin sat within a factor of ten of the tie threshold.
    pub fragile: bool,
}

pub(crate) fn float_compare(a: f64, b: f64, eps: f64) -> Comparison {
    let scale = 1f64.max(a.abs()).max(b.abs());
    let rel = (a - b).abs() / scale;
    let ordering = if rel <= eps { Ordering::Equal } else { a.total_cmp(&b) };
    Comparison { ordering, fragile: rel > eps / 10.0 && rel <= eps * 10.0 }
}

impl ScoreKey {
    pub fn int(raw: i64) -> Self {
        ScoreKey::Int { raw, descending: false }
    }

    pub fn int_desc(raw: i64) -> Self {
        ScoreKey::Int { raw, descending: true }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, ScoreKey::Float(_))
    }

    pub fn compare(&self, other: &ScoreKey, eps: f64) -> Comparison {
        use ScoreKey::*;
        let exact = |ordering| Comparison { ordering, fragile: false };
        match (self, other) {
            (Int { raw: a, descending: da }, Int { raw: b, descending: db }) => {
                assert_eq!(da, db, "keys of different orientation");
                exact(if *da { b.cmp(a) } else { a.cmp(b) })
            }
            (Big(a), Big(b)) => exact(a.cmp(b)),
            (Ratio(a), Ratio(b)) => exact(a.cmp(b)),
            (Float(a), Float(b)) => float_compare(*a, *b, eps),
            _ => panic!("comparing keys of different kinds: {self:?} vs {other:?}"),
        }
    }

    /// Ordering by centrality with the default tolerance.
    pub fn cmp_centrality(&self, other: &ScoreKey) -> Ordering {
        self.compare(other, TIE_EPS).ordering
    }

    /// The score as a float: `1/raw` for descending integers, `log2` of
    /// counts, the value itself otherwise.
    pub fn as_f64(&self) -> f64 {
        match self {
            ScoreKey::Int { raw, descending: true } => 1.0 / *raw as f64,
            ScoreKey::Int { raw, descending: false } => *raw as f64,
            ScoreKey::Big(c) => log2_big(c),
            ScoreKey::Ratio(r) => r.to_f64().unwrap_or(f64::NAN),
            ScoreKey::Float(x) => *x,
        }
    }

    /// Exact text for exact keys (`1/k` for descending integers, the count
    /// itself for `Big`), 12 significant digits for floats.
    pub fn render(&self) -> String {
        match self {
            ScoreKey::Int { raw, descending: true } => format!("1/{raw}"),
            ScoreKey::Int { raw, descending: false } => raw.to_string(),
            ScoreKey::Big(c) => c.to_string(),
            ScoreKey::Ratio(r) if r.denom() == &num_bigint::BigInt::from(1) => r.numer().to_string(),
            ScoreKey::Ratio(r) => format!("{}/{}", r.numer(), r.denom()),
            ScoreKey::Float(x) => format_sig(*x, 12),
        }
    }
}

/// Compares keys while counting fragile float decisions.
#[derive(Debug, Clone, Copy, Default)]
pub struct Tally {
    pub fragile: usize,
}

impl Tally {
    pub fn cmp(&mut self, a: &ScoreKey, b: &ScoreKey) -> Ordering {
        let c = a.compare(b, TIE_EPS);
        self.fragile += c.fragile as usize;
        c.ordering
    }

    /// Indices whose key ties the maximum.
    pub fn max_set(&mut self, keys: &[ScoreKey]) -> Vec<usize> {
        let Some(mut best) = keys.first() else { return Vec::new() };
        for k in &keys[1..] {
            if k.cmp_centrality(best).is_gt() {
                best = k;
            }
        }
        (0..keys.len()).filter(|&i| self.cmp(&keys[i], best).is_eq()).collect()
    }
}

impl fmt::Display for ScoreKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub(crate) fn log2_big(c: &BigUint) -> f64 {
    if c.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = c.bits();
    if bits <= 1000 {
        return c.to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    (c >> shift).to_f64().unwrap().log2() + shift as f64
}

/// Formats `x` with `digits` significant digits, trailing zeros trimmed.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = digits as i32 - 1 - magnitude;
    if (0..=17).contains(&decimals) && magnitude < 15 {
        let s = format!("{:.*}", decimals as usize, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{:.*e}", digits - 1, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation() {
        assert_eq!(ScoreKey::int_desc(2).cmp_centrality(&ScoreKey::int_desc(3)), Ordering::Greater);
        assert_eq!(ScoreKey::int(2).cmp_centrality(&ScoreKey::int(3)), Ordering::Less);
    }

    #[test]
    fn float_ties() {
        let a = ScoreKey::Float(0.5);
        assert_eq!(a.cmp_centrality(&ScoreKey::Float(0.5 + 1e-12)), Ordering::Equal);
        assert_eq!(a.cmp_centrality(&ScoreKey::Float(0.5 + 1e-6)), Ordering::Less);
        let c = a.compare(&ScoreKey::Float(0.5 + 5e-9), TIE_EPS);
        assert_eq!(c.ordering, Ordering::Less);
        assert!(c.fragile);
    }

    #[test]
    fn rendering() {
        assert_eq!(ScoreKey::int_desc(6).render(), "1/6");
        assert_eq!(ScoreKey::Float(1.0 / 3.0).render(), "0.333333333333");
        assert_eq!(ScoreKey::Float(2.0).render(), "2");
        assert_eq!(ScoreKey::Big(BigUint::from(32u32)).as_f64(), 5.0);
        assert_eq!(format_sig(123456.789, 4), "1.235e5");
        assert_eq!(format_sig(1.5e-20, 3), "1.50e-20");
    }
}
