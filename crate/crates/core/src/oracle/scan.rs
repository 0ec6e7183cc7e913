use crate::bounds::affine_objective;

/// Minimum of `sqrt(3) |(sigma0 - D) t + D|` over `n` equispaced samples of
/// `[lo, hi]`. Never below the true minimum, and above it by at most
/// [`scan_resolution`].
pub fn interval_scan_min(lo: f64, hi: f64, sigma0: f64, d: f64, n: usize) -> f64 {
    assert!(n >= 2, "scan needs at least two samples");
    assert!(lo <= hi, "empty interval [{lo}, {hi}]");
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| {
            let t = if i + 1 == n { hi } else { lo + step * i as f64 };
            affine_objective(t, sigma0, d).abs()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Worst-case gap between the grid minimum and the true minimum.
pub fn scan_resolution(lo: f64, hi: f64, sigma0: f64, d: f64, n: usize) -> f64 {
    3f64.sqrt() * (sigma0 - d).abs() * (hi - lo) / (n - 1) as f64
}
