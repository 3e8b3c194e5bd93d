//! Quantum-number bookkeeping for the bands a channel supports.

use serde::{Deserialize, Serialize};

use super::system::HaloSystem;
use crate::error::{Error, Result};

/// One rotational band of a channel with its parity and angular-momentum content.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllowedBand {
    pub l: u32,
    pub parity: i8,
    /// J of the nucleon pair, |L − S| ..= L + S.
    pub j_nn: Vec<u32>,
    /// 2J of the whole nucleus after coupling each J_NN to the core.
    pub two_j: Vec<u32>,
}

/// Bands L ≤ `l_max` of `channel`.
///
/// The contact interaction acts only between l₁ + l₂ + L even pairs, so
/// antisymmetry under exchange requires S + T odd.
pub fn allowed_bands(system: &HaloSystem, channel: usize, l_max: u32) -> Result<Vec<AllowedBand>> {
    let c = system
        .channels
        .get(channel)
        .ok_or_else(|| Error::Schema(format!("system {} has no channel {channel}", system.name)))?;
    if (c.s + c.t) % 2 == 0 {
        return Err(Error::SelectionRule { s: c.s, t: c.t });
    }
    let s = c.s as u32;
    Ok((0..=l_max)
        .map(|l| {
            let j_nn: Vec<u32> = (l.abs_diff(s)..=l + s).collect();
            let mut two_j: Vec<u32> = j_nn
                .iter()
                .flat_map(|&j| {
                    let lo = (2 * j).abs_diff(system.core_two_j);
                    (lo..=2 * j + system.core_two_j).step_by(2)
                })
                .collect();
            two_j.sort_unstable();
            two_j.dedup();
            let parity = if l % 2 == 0 { system.core_parity } else { -system.core_parity };
            AllowedBand { l, parity, j_nn, two_j }
        })
        .collect())
}

/// "1/2-", "3+" and so on.
pub fn format_j_pi(two_j: u32, parity: i8) -> String {
    let sign = if parity > 0 { '+' } else { '-' };
    if two_j.is_multiple_of(2) {
        format!("{}{sign}", two_j / 2)
    } else {
        format!("{two_j}/2{sign}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helium_bands() {
        let he6 = HaloSystem::builtin("he6").unwrap();
        let b = allowed_bands(&he6, 0, 2).unwrap();
        let summary: Vec<_> = b.iter().map(|b| (b.l, b.parity, b.j_nn.clone(), b.two_j.clone())).collect();
        assert_eq!(
            summary,
            [(0, 1, vec![0], vec![0]), (1, -1, vec![1], vec![2]), (2, 1, vec![2], vec![4])]
        );
    }

    #[test]
    fn lithium11_multiplet() {
        let li11 = HaloSystem::builtin("li11").unwrap();
        let b = &allowed_bands(&li11, 0, 2).unwrap()[2];
        assert_eq!(b.two_j, [1, 3, 5, 7]);
        assert_eq!(b.parity, -1);
        let labels: Vec<_> = b.two_j.iter().map(|&j| format_j_pi(j, b.parity)).collect();
        assert_eq!(labels, ["1/2-", "3/2-", "5/2-", "7/2-"]);
    }

    #[test]
    fn lithium6_triplet() {
        let li6 = HaloSystem::builtin("li6").unwrap();
        let b = &allowed_bands(&li6, 0, 2).unwrap()[2];
        assert_eq!(b.j_nn, [1, 2, 3]);
        assert!(b.two_j.contains(&6));
        assert_eq!(format_j_pi(6, b.parity), "3+");
    }

    #[test]
    fn rejects_symmetric_channels() {
        let mut he6 = HaloSystem::builtin("he6").unwrap();
        he6.channels[0].s = 1;
        assert!(matches!(allowed_bands(&he6, 0, 2), Err(Error::SelectionRule { s: 1, t: 1 })));
        assert!(allowed_bands(&he6, 5, 2).is_err());
    }
}
