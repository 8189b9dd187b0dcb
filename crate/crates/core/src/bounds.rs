//! Moore-type lower bounds and known closed forms for cage orders and counts.

use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("arithmetic overflow")]
    Overflow,
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("closed form yields the non-integer {0}")]
    NonIntegral(Ratio<i64>),
}

type Result<T> = std::result::Result<T, BoundsError>;

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(BoundsError::Invalid(msg.into()))
}

fn check_k(k: u64) -> Result<()> {
    if k < 2 {
        return invalid(format!("degree {k} < 2"));
    }
    Ok(())
}

/// `sum_{i in idx} (k-1)^i`, checked.
fn power_sum(k: u64, idx: impl Iterator<Item = u32>) -> Result<u64> {
    let mut s: u64 = 0;
    for i in idx {
        let p = (k - 1).checked_pow(i).ok_or(BoundsError::Overflow)?;
        s = s.checked_add(p).ok_or(BoundsError::Overflow)?;
    }
    Ok(s)
}

fn mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or(BoundsError::Overflow)
}

fn add(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b).ok_or(BoundsError::Overflow)
}

/// Moore bound `M(k,g)`; zero for `g <= 0`.
pub fn moore_bound(k: u64, g: i64) -> Result<u64> {
    check_k(k)?;
    if g <= 0 {
        return Ok(0);
    }
    let t = (g / 2) as u32;
    let s = power_sum(k, 0..t)?;
    if g % 2 == 1 {
        add(1, mul(k, s)?)
    } else {
        mul(2, s)
    }
}

/// Split of the odd Moore tree by layer parity: `(M0, M1)`.
///
/// `M0` counts the root and the even-depth vertices, `M1` the odd-depth ones.
pub fn moore_split(k: u64, g: i64) -> Result<(u64, u64)> {
    check_k(k)?;
    if g < 1 || g % 2 == 0 {
        return invalid(format!("moore_split needs odd g >= 1, got {g}"));
    }
    let t = (g - 1) / 2;
    // floor division: an upper limit of -1 means an empty sum
    let hi0 = (t - 2).div_euclid(2);
    let hi1 = (t - 1).div_euclid(2);
    let s0 = power_sum(k, (0..=hi0).map(|i| (2 * i + 1) as u32))?;
    let s1 = power_sum(k, (0..=hi1).map(|i| (2 * i) as u32))?;
    Ok((add(1, mul(k, s0)?)?, mul(k, s1)?))
}

fn check_kgd(k: u64, g: u64, d: u64) -> Result<()> {
    check_k(k)?;
    if g < 3 {
        return invalid(format!("girth {g} < 3"));
    }
    if d < g / 2 {
        return invalid(format!("diameter {d} < floor(g/2) = {}", g / 2));
    }
    Ok(())
}

/// Tree-based lower bound `M'(k;g,d)`.
pub fn lower_bound_prime(k: u64, g: u64, d: u64) -> Result<u64> {
    check_kgd(k, g, d)?;
    let t = g / 2;
    let m = moore_bound(k, g as i64)?;
    if d <= 2 * t {
        return add(m, moore_bound(k, 2 * (d - t) as i64 - 1)?);
    }
    let rest = d - 2 * t - 1;
    let (r, s) = (rest / g, rest % g);
    add(mul(r + 2, m)?, moore_bound(k, s as i64)?)
}

/// Parity-based lower bound `M''(k;g,d)` for even `g` and `t <= d <= g`.
pub fn lower_bound_double_prime(k: u64, g: u64, d: u64) -> Result<u64> {
    check_kgd(k, g, d)?;
    if g % 2 == 1 || d > g {
        return invalid(format!("M'' needs even g and d <= g, got g={g}, d={d}"));
    }
    let t = g / 2;
    let m = moore_bound(k, g as i64)?;
    let h = 2 * d as i64 - 2 * t as i64 - 1;
    let extra = if h <= 0 {
        0
    } else {
        let (m0, m1) = moore_split(k, h)?;
        m0.max(m1)
    };
    add(m, mul(2, extra)?)
}

/// Best known lower bound `M(k;g,d)` on the order of a `(k;g,d)`-graph.
pub fn lower_bound(k: u64, g: u64, d: u64) -> Result<u64> {
    check_kgd(k, g, d)?;
    if g % 2 == 0 && d <= g {
        lower_bound_double_prime(k, g, d)
    } else {
        lower_bound_prime(k, g, d)
    }
}

/// Order `n(3;4,d)`.
pub fn exact_order_3_4(d: u64) -> Result<u64> {
    match d {
        0 | 1 => invalid(format!("n(3;4,d) needs d >= 2, got {d}")),
        2 => Ok(6),
        3 => Ok(8),
        4 => Ok(12),
        _ => {
            let (m, j) = ((d - 5) / 4, (d - 5) % 4);
            add(14 + 2 * j, mul(6, m)?)
        }
    }
}

/// Number of `(3;4,d)`-cages for `d >= 9`.
pub fn exact_count_3_4(d: u64) -> Result<u64> {
    if d < 9 {
        return invalid(format!("cage count formula for (3;4,d) needs d >= 9, got {d}"));
    }
    Ok(match d % 4 {
        1 => 1,
        2 => 4,
        3 => 17 + d / 8,
        _ => 27 + d + (d - 4) / 8,
    })
}

/// Order `n(3;5,d)`.
pub fn exact_order_3_5(d: u64) -> Result<u64> {
    match d {
        0 | 1 => invalid(format!("n(3;5,d) needs d >= 2, got {d}")),
        2..=4 => Ok(2 * d + 6),
        _ if d % 5 <= 1 => add(mul(2, d)?, 10),
        _ => add(mul(2, d)?, 8),
    }
}

/// Number of `(3;5,d)`-cages for `d >= 6`.
pub fn exact_count_3_5(d: u64) -> Result<u64> {
    if d < 6 {
        return invalid(format!("cage count formula for (3;5,d) needs d >= 6, got {d}"));
    }
    let di = i64::try_from(d).map_err(|_| BoundsError::Overflow)?;
    let slope = Ratio::new(113, 10);
    let value = match d % 10 {
        1 | 6 => Ratio::from_integer(di - di / 10),
        2 | 7 => Ratio::from_integer(1),
        3 | 8 => Ratio::from_integer(4),
        4 | 9 => Ratio::from_integer(10),
        0 => Ratio::from_integer(128) + slope * di,
        _ => Ratio::new(277, 2) + slope * di,
    };
    if !value.is_integer() {
        return Err(BoundsError::NonIntegral(value));
    }
    u64::try_from(value.to_integer()).map_err(|_| BoundsError::Overflow)
}

/// `n(k;3,3) = 2(k+1)`.
pub fn exact_order_k_3_3(k: u64) -> Result<u64> {
    if k < 3 {
        return invalid(format!("n(k;3,3) needs k >= 3, got {k}"));
    }
    mul(2, add(k, 1)?)
}

/// Exact order where a closed form applies.
pub fn known_order(k: u64, g: u64, d: u64) -> Option<u64> {
    match (k, g) {
        (3, 4) => exact_order_3_4(d).ok(),
        (3, 5) => exact_order_3_5(d).ok(),
        (_, 3) if d == 3 => exact_order_k_3_3(k).ok(),
        _ => None,
    }
}

/// Exact cage count where a closed form applies.
pub fn known_count(k: u64, g: u64, d: u64) -> Option<u64> {
    match (k, g) {
        (3, 4) => exact_count_3_4(d).ok(),
        (3, 5) => exact_count_3_5(d).ok(),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub k: u64,
    pub g: u64,
    pub d: u64,
    pub moore: u64,
    pub m_prime: u64,
    pub m_double_prime: Option<u64>,
    pub lower_bound: u64,
    pub exact_order: Option<u64>,
    pub exact_count: Option<u64>,
}

pub fn bounds_report(k: u64, g: u64, d: u64) -> Result<BoundsReport> {
    let lower_bound = lower_bound(k, g, d)?;
    Ok(BoundsReport {
        k,
        g,
        d,
        moore: moore_bound(k, g as i64)?,
        m_prime: lower_bound_prime(k, g, d)?,
        m_double_prime: lower_bound_double_prime(k, g, d).ok(),
        lower_bound,
        exact_order: known_order(k, g, d),
        exact_count: known_count(k, g, d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Moore tree order by growing the tree level by level.
    fn tree_order(k: u64, g: i64) -> u64 {
        if g <= 0 {
            return 0;
        }
        let t = g / 2;
        let (mut total, mut level) = if g % 2 == 1 { (1, 1) } else { (2, 2) };
        for depth in 1..=t - (g % 2 == 0) as i64 {
            level *= if depth == 1 && g % 2 == 1 { k } else { k - 1 };
            total += level;
        }
        total
    }

    #[test]
    fn moore_small_values() {
        assert_eq!(moore_bound(3, 5).unwrap(), 10);
        assert_eq!(moore_bound(3, 6).unwrap(), 14);
        assert_eq!(moore_bound(4, 5).unwrap(), 17);
        assert_eq!(moore_bound(3, 0).unwrap(), 0);
        assert_eq!(moore_bound(3, -3).unwrap(), 0);
        assert_eq!(moore_bound(3, 1).unwrap(), 1);
        assert_eq!(moore_bound(3, 2).unwrap(), 2);
    }

    #[test]
    fn moore_overflow_is_reported() {
        assert_eq!(moore_bound(1 << 20, 9), Err(BoundsError::Overflow));
    }

    #[test]
    fn split_values() {
        assert_eq!(moore_split(3, 5).unwrap(), (7, 3));
        assert_eq!(moore_split(3, 1).unwrap(), (1, 0));
        assert_eq!(moore_split(3, 3).unwrap(), (1, 3));
        assert!(moore_split(3, 4).is_err());
    }

    #[test]
    fn prime_and_double_prime() {
        assert_eq!(lower_bound_prime(3, 7, 7).unwrap(), 44);
        assert_eq!(lower_bound_prime(3, 4, 9).unwrap(), 18);
        assert_eq!(lower_bound_prime(3, 7, 8).unwrap(), 45);
        assert_eq!(lower_bound_double_prime(3, 6, 6).unwrap(), 28);
        assert_eq!(lower_bound_double_prime(3, 6, 5).unwrap(), 20);
        assert_eq!(lower_bound_double_prime(3, 6, 3).unwrap(), 14);
        assert_eq!(lower_bound(3, 6, 12).unwrap(), 38);
        assert_eq!(lower_bound(4, 5, 3).unwrap(), 18);
        assert_eq!(lower_bound(3, 8, 7).unwrap(), 44);
        assert!(lower_bound(3, 6, 2).is_err());
    }

    #[test]
    fn closed_forms() {
        let orders34: Vec<_> = (2..=13).map(|d| exact_order_3_4(d).unwrap()).collect();
        assert_eq!(orders34, [6, 8, 12, 14, 16, 18, 20, 20, 22, 24, 26, 26]);
        let counts34: Vec<_> = (9..=13).map(|d| exact_count_3_4(d).unwrap()).collect();
        assert_eq!(counts34, [1, 4, 18, 40, 1]);
        let counts35: Vec<_> = [6, 10, 11, 15, 20, 25].iter().map(|&d| exact_count_3_5(d).unwrap()).collect();
        assert_eq!(counts35, [6, 241, 10, 308, 354, 421]);
        assert_eq!(exact_order_3_5(13).unwrap(), 34);
        assert_eq!(exact_order_3_5(5).unwrap(), 20);
        assert_eq!(exact_order_k_3_3(3).unwrap(), 8);
        assert!(exact_count_3_4(8).is_err());
    }

    proptest! {
        #[test]
        fn moore_matches_tree_growth(k in 2u64..9, g in -2i64..12) {
            prop_assert_eq!(moore_bound(k, g).unwrap(), tree_order(k, g));
        }

        #[test]
        fn split_sums_to_moore(k in 2u64..9, t in 0i64..6) {
            let (m0, m1) = moore_split(k, 2 * t + 1).unwrap();
            prop_assert_eq!(m0 + m1, moore_bound(k, 2 * t + 1).unwrap());
        }

        #[test]
        fn bound_is_monotone_in_d(k in 2u64..6, g in 3u64..9, d in 0u64..20) {
            let d = d + g / 2;
            prop_assert!(lower_bound(k, g, d).unwrap() <= lower_bound(k, g, d + 1).unwrap());
            prop_assert!(lower_bound(k, g, d).unwrap() >= moore_bound(k, g as i64).unwrap());
        }

        #[test]
        fn closed_form_orders_respect_bound(d in 2u64..60) {
            prop_assert!(exact_order_3_4(d).unwrap() >= lower_bound(3, 4, d).unwrap());
            prop_assert!(exact_order_3_5(d).unwrap() >= lower_bound(3, 5, d).unwrap());
        }
    }
}
