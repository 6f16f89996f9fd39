//! Exact rational thresholds. Every comparison against a vertex or edge count
//! goes through these helpers so no floating point enters a decision.

use num_rational::Ratio;
use std::cmp::Ordering;

pub type Q = Ratio<i64>;

pub fn q(num: i64, den: i64) -> Q {
    Ratio::new(num, den)
}

pub fn int(v: i64) -> Q {
    Ratio::from_integer(v)
}

/// Compares `count` with `coef * scale` exactly.
pub fn cmp_scaled(count: i64, coef: Q, scale: i64) -> Ordering {
    let lhs = count as i128 * *coef.denom() as i128;
    let rhs = *coef.numer() as i128 * scale as i128;
    lhs.cmp(&rhs)
}

/// `count <= coef * scale`
pub fn le(count: usize, coef: Q, scale: usize) -> bool {
    cmp_scaled(count as i64, coef, scale as i64) != Ordering::Greater
}

/// `count < coef * scale`
pub fn lt(count: usize, coef: Q, scale: usize) -> bool {
    cmp_scaled(count as i64, coef, scale as i64) == Ordering::Less
}

/// `count >= coef * scale`
pub fn ge(count: usize, coef: Q, scale: usize) -> bool {
    !lt(count, coef, scale)
}

/// Largest integer `c` with `c <= coef * scale`.
pub fn floor_scaled(coef: Q, scale: usize) -> i64 {
    (coef * int(scale as i64)).floor().to_integer()
}

pub fn parse(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: i64 = a.trim().parse().ok()?;
        let b: i64 = b.trim().parse().ok()?;
        if b == 0 {
            return None;
        }
        return Some(q(a, b));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.starts_with('-');
        let w: i64 = if whole == "-" || whole.is_empty() { 0 } else { whole.parse().ok()? };
        if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let den = 10i64.pow(frac.len() as u32);
        let f: i64 = frac.parse().ok()?;
        let mag = w.abs() * den + f;
        return Some(q(if neg { -mag } else { mag }, den));
    }
    s.parse::<i64>().ok().map(int)
}

pub fn format(v: &Q) -> String {
    if *v.denom() == 1 {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Serde adapter storing rationals as `"a/b"` strings.
pub mod serde_q {
    use super::Q;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("1/3"), Some(q(1, 3)));
        assert_eq!(parse("0.02"), Some(q(1, 50)));
        assert_eq!(parse("-1.5"), Some(q(-3, 2)));
        assert_eq!(parse("7"), Some(int(7)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }

    #[test]
    fn scaled_comparisons() {
        assert!(le(3, q(1, 3), 9));
        assert!(!lt(3, q(1, 3), 9));
        assert!(lt(2, q(1, 3), 9));
        assert_eq!(floor_scaled(q(1, 3), 10), 3);
    }
}
