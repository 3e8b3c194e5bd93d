//! Non-interacting energies of a band: the poles of its quantization function.

use std::collections::BTreeSet;

/// Pairs (l1, l2) with l1 ≥ l2 in shell `l1` that couple to `band` with a nonzero 3j.
pub(crate) fn shell_partners(band: u32, l1: u32) -> impl Iterator<Item = u32> {
    let lo = l1.abs_diff(band);
    (lo..=l1).step_by(2)
}

/// First `count` distinct values of l1(l1+1) + l2(l2+1) over pairs coupling to `band`.
pub fn poles(band: u32, count: usize) -> Vec<f64> {
    if count == 0 {
        return Vec::new();
    }
    let mut found = BTreeSet::new();
    let mut l1 = 0u64;
    loop {
        // Every pair in shell l1 lies at or above l1(l1+1).
        let floor = l1 * (l1 + 1);
        if found.len() >= count && found.iter().nth(count - 1).is_some_and(|&v| v < floor) {
            break;
        }
        for l2 in shell_partners(band, l1 as u32) {
            let l2 = l2 as u64;
            found.insert(floor + l2 * (l2 + 1));
        }
        l1 += 1;
    }
    found.into_iter().take(count).map(|v| v as f64).collect()
}
