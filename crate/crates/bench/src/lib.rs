//! Shared inputs for the kernel benchmarks.

use fracwave_core::mlf::FractionalOrder;

pub const ORDERS: [f64; 3] = [0.5, 0.8, 1.0];

pub fn order(alpha: f64) -> FractionalOrder {
    FractionalOrder::new(alpha).expect("benchmark orders lie in (0, 1]")
}

/// Evenly spaced points on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let step = (hi - lo) / (count - 1) as f64;
    (0..count).map(|i| lo + step * i as f64).collect()
}
