//! Exhaustive ground truth for tiny hypergraphs.
//!
//! Subsets are enumerated as bitmasks in increasing order and a candidate
//! replaces the incumbent only when strictly better, so the witness is the
//! smallest optimal mask.

use crate::error::{Error, Result};
use crate::hypergraph::{omega_is_positive, Hypergraph};
use crate::nodeset::NodeSet;

pub const MAX_NODES: usize = 20;

/// Precomputed bitmask view of a hypergraph.
struct MaskView<'a> {
    h: &'a Hypergraph,
    edge_masks: Vec<u32>,
    degrees: Vec<f64>,
}

impl<'a> MaskView<'a> {
    fn new(h: &'a Hypergraph) -> Result<Self> {
        let n = h.num_nodes();
        if n > MAX_NODES {
            return Err(Error::OracleCapExceeded { n, cap: MAX_NODES });
        }
        let edge_masks = h
            .edges()
            .iter()
            .map(|e| e.iter().fold(0u32, |m, &v| m | 1 << v))
            .collect();
        let degrees = (0..n).map(|v| h.degree_unchecked(v)).collect();
        Ok(MaskView { h, edge_masks, degrees })
    }

    fn cut(&self, mask: u32) -> f64 {
        self.edge_masks
            .iter()
            .enumerate()
            .map(|(e, &em)| self.h.splitting(e).eval((em & mask).count_ones() as usize))
            .sum()
    }

    fn volume(&self, mask: u32) -> f64 {
        let mut vol = 0.0;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            vol += self.degrees[v];
            m &= m - 1;
        }
        vol
    }
}

fn set_mask(s: &NodeSet) -> u32 {
    s.iter().fold(0u32, |m, v| m | 1 << v)
}

/// Minimum of `num(S) / den(S)` over nonempty `S ⊆ {0..n}` with
/// `den(S) > 0`. `proper` additionally excludes the full set.
pub fn brute_min_ratio<N, D>(n: usize, proper: bool, num: N, den: D) -> Result<(f64, NodeSet)>
where
    N: Fn(u32) -> f64,
    D: Fn(u32) -> f64,
{
    if n > MAX_NODES {
        return Err(Error::OracleCapExceeded { n, cap: MAX_NODES });
    }
    let full: u32 = (1u32 << n) - 1;
    let mut best: Option<(f64, u32)> = None;
    for mask in 1..=full {
        if proper && mask == full {
            break;
        }
        let d = den(mask);
        if d <= 0.0 {
            continue;
        }
        let value = num(mask) / d;
        if best.is_none_or(|(b, _)| value < b) {
            best = Some((value, mask));
        }
    }
    best.map(|(v, m)| (v, NodeSet::from_mask(m as u64)))
        .ok_or(Error::NoFeasibleSet)
}

/// Minimum localized conductance over all nonempty `S` with positive
/// overlap denominator.
pub fn brute_min_hlc(h: &Hypergraph, r: &NodeSet, eps: f64) -> Result<(f64, NodeSet)> {
    let view = MaskView::new(h)?;
    h.check_set(r)?;
    let rm = set_mask(r);
    brute_min_ratio(
        h.num_nodes(),
        false,
        |m| view.cut(m),
        |m| {
            let inside = view.volume(m & rm);
            let om = inside - eps * view.volume(m & !rm);
            if omega_is_positive(om, inside) {
                om
            } else {
                0.0
            }
        },
    )
}

/// Minimum of `cut(S) + alpha vol(R \ S) + alpha eps vol(S \ R)` over every
/// `S ⊆ V`, the empty set included.
pub fn brute_min_st_cut(h: &Hypergraph, r: &NodeSet, eps: f64, alpha: f64) -> Result<(f64, NodeSet)> {
    let view = MaskView::new(h)?;
    h.check_set(r)?;
    let rm = set_mask(r);
    let full: u32 = (1u32 << h.num_nodes()) - 1;
    let mut best = (f64::INFINITY, 0u32);
    for mask in 0..=full {
        let value = view.cut(mask) + alpha * view.volume(rm & !mask) + alpha * eps * view.volume(mask & !rm);
        if value < best.0 {
            best = (value, mask);
        }
    }
    Ok((best.0, NodeSet::from_mask(best.1 as u64)))
}

/// Minimum conductance over nonempty proper subsets.
pub fn brute_min_conductance(h: &Hypergraph) -> Result<(f64, NodeSet)> {
    let view = MaskView::new(h)?;
    let total = h.total_volume();
    brute_min_ratio(
        h.num_nodes(),
        true,
        |m| view.cut(m),
        |m| {
            let v = view.volume(m);
            v.min(total - v)
        },
    )
}
