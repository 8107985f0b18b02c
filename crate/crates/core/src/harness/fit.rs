/// Ordinary least-squares line `y = slope·x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    /// Standard error of the slope.
    pub slope_stderr: f64,
    pub points: usize,
}

impl LinearFit {
    /// NaN-valued fit for fewer than two usable points.
    pub fn degenerate(points: usize) -> Self {
        LinearFit { slope: f64::NAN, intercept: f64::NAN, r2: f64::NAN, slope_stderr: f64::NAN, points }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.slope.is_finite()
    }
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> LinearFit {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n < 2 {
        return LinearFit::degenerate(n);
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return LinearFit::degenerate(n);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let r2 = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    let slope_stderr = if n > 2 { (ss_res / (nf - 2.0) / sxx).sqrt() } else { f64::NAN };
    LinearFit { slope, intercept, r2, slope_stderr, points: n }
}

/// Fit of `log(err)` against `log(τ)`, skipping non-finite or non-positive errors.
pub fn loglog_fit(taus: &[f64], errors: &[f64]) -> LinearFit {
    let (xs, ys): (Vec<f64>, Vec<f64>) = taus
        .iter()
        .zip(errors)
        .filter(|(t, e)| e.is_finite() && **e > 0.0 && **t > 0.0)
        .map(|(t, e)| (t.ln(), e.ln()))
        .unzip();
    linear_fit(&xs, &ys)
}

/// Observed orders between consecutive points, `log(e_i/e_{i+1}) / log(τ_i/τ_{i+1})`.
pub fn pairwise_orders(taus: &[f64], errors: &[f64]) -> Vec<f64> {
    taus.windows(2)
        .zip(errors.windows(2))
        .map(|(t, e)| (e[0] / e[1]).ln() / (t[0] / t[1]).ln())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let taus: Vec<f64> = (8..=12).map(|p| 2f64.powi(-p)).collect();
        let errs: Vec<f64> = taus.iter().map(|t| 3.0 * t.powf(0.75)).collect();
        let fit = loglog_fit(&taus, &errs);
        assert!((fit.slope - 0.75).abs() < 1e-12);
        assert!((fit.intercept - 3f64.ln()).abs() < 1e-12);
        assert!((fit.r2 - 1.0).abs() < 1e-12);
        assert!(pairwise_orders(&taus, &errs).iter().all(|o| (o - 0.75).abs() < 1e-12));
    }

    #[test]
    fn zero_errors_are_degenerate() {
        let fit = loglog_fit(&[0.1, 0.05, 0.025], &[0.0, 0.0, 0.0]);
        assert!(fit.is_degenerate());
        assert_eq!(fit.points, 0);
    }

    #[test]
    fn slope_stderr_of_noisy_line() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys = [0.1, -0.1, 0.1, -0.1];
        let fit = linear_fit(&xs, &ys);
        assert!(fit.slope.abs() < 2.0 * fit.slope_stderr);
    }
}
