//! Number and list syntax shared by flags and config files.
//!
//! A real is either a decimal (`0.001`, `1e-3`) or a power `b^e` (`2^-8`).
//! Lists are comma separated; an entry `2^-8..2^-12` expands to every
//! dyadic step between its ends, inclusive.

/// Parses `2^-8`, `10^3` or a plain decimal.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let value = match s.split_once('^') {
        Some((base, exp)) => {
            let base: f64 = base.trim().parse().map_err(|_| format!("bad base in `{s}`"))?;
            let exp: f64 = exp.trim().parse().map_err(|_| format!("bad exponent in `{s}`"))?;
            base.powf(exp)
        }
        None => s.parse().map_err(|_| format!("`{s}` is not a number"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

/// Comma-separated reals with `a..b` dyadic ranges.
pub fn parse_real_list(s: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        match item.split_once("..") {
            Some((a, b)) => out.extend(dyadic_range(parse_real(a)?, parse_real(b)?)?),
            None => out.push(parse_real(item)?),
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(out)
}

/// `a, a/2, a/4, .., b` (or doubling when `b > a`); `b/a` must be a power of two.
fn dyadic_range(a: f64, b: f64) -> Result<Vec<f64>, String> {
    if !(a > 0.0 && b > 0.0) {
        return Err(format!("range ends {a} and {b} must be positive"));
    }
    let steps = (b / a).log2();
    let count = steps.round();
    if (steps - count).abs() > 1e-9 {
        return Err(format!("{b}/{a} is not a power of two"));
    }
    let factor: f64 = if count < 0.0 { 0.5 } else { 2.0 };
    let mut out = vec![a];
    for i in 1..=count.abs() as i32 {
        out.push(a * factor.powi(i));
    }
    Ok(out)
}

pub fn parse_usize_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| format!("`{x}` is not a nonnegative integer")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals() {
        assert_eq!(parse_real("2^-8").unwrap(), 2f64.powi(-8));
        assert_eq!(parse_real(" 0.5 ").unwrap(), 0.5);
        assert_eq!(parse_real("1e-3").unwrap(), 1e-3);
        assert!(parse_real("two").is_err());
        assert!(parse_real("2^x").is_err());
    }

    #[test]
    fn ranges_and_lists() {
        let v = parse_real_list("2^-8..2^-12").unwrap();
        assert_eq!(v, (8..=12).map(|p| 2f64.powi(-p)).collect::<Vec<_>>());
        assert_eq!(parse_real_list("0.5,1,2").unwrap(), vec![0.5, 1.0, 2.0]);
        assert_eq!(parse_real_list("2^-2..2^-1").unwrap(), vec![0.25, 0.5]);
        assert_eq!(parse_real_list("0.1, 2^-3..2^-4").unwrap(), vec![0.1, 0.125, 0.0625]);
        assert!(parse_real_list("0.1..0.03").is_err());
        assert!(parse_real_list("").is_err());
    }
}
