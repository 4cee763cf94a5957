use alloc::vec::Vec;

/// Linear-interpolation quantile (R type 7) of sorted data.
pub(crate) fn quantile_sorted(sorted: &[u64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * q;
    let lo = libm::floor(h) as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    let frac = h - lo as f64;
    sorted[lo] as f64 + frac * (sorted[hi] as f64 - sorted[lo] as f64)
}

/// Mean and standard error of integer samples, accumulated exactly so the
/// result does not depend on summation order.
pub(crate) fn mean_and_std_error(samples: &[u64]) -> (f64, f64) {
    let n = samples.len() as u128;
    let sum: u128 = samples.iter().map(|&x| x as u128).sum();
    let sum_sq: u128 = samples.iter().map(|&x| (x as u128) * (x as u128)).sum();
    let mean = sum as f64 / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    // n * sum_sq - sum^2 = n^2 * (population variance), exact in integers
    let centered = n * sum_sq - sum * sum;
    let variance = centered as f64 / (n * (n - 1)) as f64;
    (mean, libm::sqrt(variance / n as f64))
}

pub(crate) fn sorted_copy(samples: &[u64]) -> Vec<u64> {
    let mut v = samples.to_vec();
    v.sort_unstable();
    v
}
