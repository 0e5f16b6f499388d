//! Penalized means over per-query times.

/// Seconds charged for a query that did not succeed.
pub const PENALTY_SECS: f64 = 3600.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Means {
    pub arithmetic: f64,
    /// n-th root of the product of the n times.
    pub geometric: f64,
}

/// Means over one time per query, with `None` (a failed query) replaced by
/// [`PENALTY_SECS`]. Returns `None` for an empty input.
pub fn penalized_means<I: IntoIterator<Item = Option<f64>>>(times: I) -> Option<Means> {
    let times: Vec<f64> = times.into_iter().map(|t| t.unwrap_or(PENALTY_SECS)).collect();
    if times.is_empty() {
        return None;
    }
    let n = times.len() as f64;
    let arithmetic = times.iter().sum::<f64>() / n;
    let product: f64 = times.iter().product();
    let geometric = if product.is_finite() && product > 0.0 {
        product.powf(1.0 / n)
    } else {
        // product over- or underflowed; the log form is equal in exact arithmetic
        (times.iter().map(|t| t.ln()).sum::<f64>() / n).exp()
    };
    Some(Means { arithmetic, geometric })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn equal_times() {
        let m = penalized_means(vec![Some(2.5); 17]).unwrap();
        assert!(rel(m.arithmetic, 2.5) < 1e-12);
        assert!(rel(m.geometric, 2.5) < 1e-12);
    }

    #[test]
    fn penalty_example() {
        let m = penalized_means([Some(1.0), Some(100.0), None]).unwrap();
        // (1 + 100 + 3600) / 3 and the cube root of 360000
        assert!(rel(m.arithmetic, 3701.0 / 3.0) < 1e-9);
        assert!(rel(m.geometric, 360_000f64.cbrt()) < 1e-9);
        assert!((m.arithmetic - 1233.67).abs() < 0.005);
        assert!((m.geometric - 71.14).abs() < 0.005);
    }

    #[test]
    fn geometric_moderates_outliers() {
        let mut times = vec![Some(0.1); 17];
        let base = penalized_means(times.clone()).unwrap();
        times[3] = None;
        let hit = penalized_means(times).unwrap();
        assert!(hit.geometric / base.geometric < hit.arithmetic / base.arithmetic);
    }

    #[test]
    fn extreme_products_fall_back_to_logs() {
        let m = penalized_means(vec![Some(1e-300); 17]).unwrap();
        assert!(rel(m.geometric, 1e-300) < 1e-9);
        assert!(penalized_means(Vec::new()).is_none());
    }
}
