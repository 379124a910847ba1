//! Cardinality-based hyperedge splitting functions.
//!
//! A splitting function assigns a penalty to every way of bipartitioning a
//! hyperedge. Cardinality-based functions only look at the size of the
//! smaller side, so they are stored as a table `p[0..=k/2]`.

use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

const TABLE_TOL: f64 = 1e-12;
const EXHAUSTIVE_MAX_K: usize = 12;
const SAMPLED_PAIRS: usize = 10_000;

/// How a table was constructed. Informational; evaluation only uses the table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SplittingKind {
    DeltaLinear { delta: f64, scale: f64 },
    AllOrNothing { weight: f64 },
    Clique { weight: f64 },
    Table,
}

/// Parameters of a (scaled) delta-linear threshold function
/// `scale * min(delta, |A|, |e \ A|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaLinearForm {
    pub delta: f64,
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CardinalitySplitting {
    k: usize,
    table: Vec<f64>,
    kind: SplittingKind,
}

fn check_size(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidSplitting(format!(
            "hyperedge size must be at least 2, got {k}"
        )));
    }
    Ok(())
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::InvalidSplitting(format!(
            "{name} must be positive and finite, got {x}"
        )));
    }
    Ok(())
}

impl CardinalitySplitting {
    /// `scale * min(delta, i)` for smaller-side size `i`.
    pub fn delta_linear(k: usize, delta: f64, scale: f64) -> Result<Self> {
        check_size(k)?;
        check_positive("scale", scale)?;
        if !(delta.is_finite() && delta >= 1.0) {
            return Err(Error::InvalidSplitting(format!(
                "delta must be at least 1, got {delta}"
            )));
        }
        let table = (0..=k / 2).map(|i| scale * delta.min(i as f64)).collect();
        Ok(CardinalitySplitting {
            k,
            table,
            kind: SplittingKind::DeltaLinear { delta, scale },
        })
    }

    pub fn all_or_nothing(k: usize, weight: f64) -> Result<Self> {
        check_size(k)?;
        check_positive("weight", weight)?;
        let table = (0..=k / 2)
            .map(|i| if i == 0 { 0.0 } else { weight })
            .collect();
        Ok(CardinalitySplitting {
            k,
            table,
            kind: SplittingKind::AllOrNothing { weight },
        })
    }

    /// Clique-expansion penalty `(w / k) * i * (k - i)`.
    pub fn clique_penalty(k: usize, weight: f64) -> Result<Self> {
        check_size(k)?;
        check_positive("weight", weight)?;
        let table = (0..=k / 2)
            .map(|i| weight / k as f64 * (i * (k - i)) as f64)
            .collect();
        Ok(CardinalitySplitting {
            k,
            table,
            kind: SplittingKind::Clique { weight },
        })
    }

    pub fn from_table(k: usize, table: Vec<f64>) -> Result<Self> {
        check_size(k)?;
        if table.len() != k / 2 + 1 {
            return Err(Error::InvalidSplitting(format!(
                "table for edge size {k} needs {} entries, got {}",
                k / 2 + 1,
                table.len()
            )));
        }
        if table[0] != 0.0 {
            return Err(Error::InvalidSplitting(
                "penalty of an uncut edge must be 0".into(),
            ));
        }
        if let Some(p) = table.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
            return Err(Error::InvalidSplitting(format!(
                "penalties must be finite and nonnegative, got {p}"
            )));
        }
        Ok(CardinalitySplitting {
            k,
            table,
            kind: SplittingKind::Table,
        })
    }

    pub fn edge_size(&self) -> usize {
        self.k
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn kind(&self) -> SplittingKind {
        self.kind
    }

    /// Penalty when `side` of the `k` nodes sit on one side of the cut.
    #[inline]
    pub fn eval(&self, side: usize) -> f64 {
        debug_assert!(side <= self.k);
        self.table[side.min(self.k - side)]
    }

    /// Penalty of a singleton; this is the edge's contribution to a degree.
    #[inline]
    pub fn singleton(&self) -> f64 {
        self.table[1]
    }

    /// Smallest strictly positive penalty, if any.
    pub fn min_nonzero(&self) -> Option<f64> {
        self.table
            .iter()
            .copied()
            .filter(|&p| p > 0.0)
            .min_by(f64::total_cmp)
    }

    /// Recovers `(delta, scale)` if the table is a scaled delta-linear
    /// threshold function, which is the class the flow gadget supports.
    pub fn delta_linear_form(&self) -> Option<DeltaLinearForm> {
        match self.kind {
            SplittingKind::DeltaLinear { delta, scale } => {
                return Some(DeltaLinearForm { delta, scale })
            }
            SplittingKind::AllOrNothing { weight } => {
                return Some(DeltaLinearForm {
                    delta: 1.0,
                    scale: weight,
                })
            }
            _ => {}
        }
        let t = &self.table;
        let scale = t[1];
        let tol = TABLE_TOL * scale.max(1.0);
        if scale == 0.0 {
            return t
                .iter()
                .all(|&p| p == 0.0)
                .then_some(DeltaLinearForm { delta: 1.0, scale });
        }
        let bend = (1..t.len()).find(|&i| t[i] < scale * i as f64 - tol);
        let Some(i) = bend else {
            return Some(DeltaLinearForm {
                delta: (t.len() - 1) as f64,
                scale,
            });
        };
        let cap = t[i];
        if cap < scale * (i - 1) as f64 - tol {
            return None;
        }
        if t[i..].iter().any(|&p| (p - cap).abs() > tol) {
            return None;
        }
        Some(DeltaLinearForm {
            delta: cap / scale,
            scale,
        })
    }

    /// Checks submodularity of the induced set function.
    ///
    /// Exhaustive over all pairs of subsets for `k <= 12`; otherwise a
    /// deterministic sample of pairs. A `false` always comes with a violating
    /// pair, so it is definitive; a sampled `true` is not a proof.
    pub fn is_submodular(&self) -> bool {
        self.submodularity_witness().is_none()
    }

    /// A violating pair `(A, B)` as bitmask-free node index lists, if found.
    pub fn submodularity_witness(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let k = self.k;
        let violates = |a: usize, b: usize, both: usize, either: usize| {
            let lhs = self.eval(a) + self.eval(b);
            let rhs = self.eval(either) + self.eval(both);
            lhs < rhs - TABLE_TOL * rhs.abs().max(1.0)
        };
        if k <= EXHAUSTIVE_MAX_K {
            let full = 1u32 << k;
            for a in 0..full {
                for b in 0..full {
                    let sa = a.count_ones() as usize;
                    let sb = b.count_ones() as usize;
                    let both = (a & b).count_ones() as usize;
                    let either = (a | b).count_ones() as usize;
                    if violates(sa, sb, both, either) {
                        let bits = |m: u32| (0..k).filter(|i| m >> i & 1 == 1).collect();
                        return Some((bits(a), bits(b)));
                    }
                }
            }
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_5b0d);
        let mut nodes: Vec<usize> = (0..k).collect();
        for _ in 0..SAMPLED_PAIRS {
            nodes.shuffle(&mut rng);
            let size_a = rng.gen_range(0..=k);
            let a: Vec<usize> = nodes[..size_a].to_vec();
            nodes.shuffle(&mut rng);
            let size_b = rng.gen_range(0..=k);
            let b: Vec<usize> = nodes[..size_b].to_vec();
            let both = b.iter().filter(|v| a.contains(v)).count();
            let either = size_a + size_b - both;
            if violates(size_a, size_b, both, either) {
                return Some((a, b));
            }
        }
        None
    }
}

/// A splitting family, instantiated per edge size. This is the textual
/// form accepted on the command line: `aon:w`, `dlt:delta[:scale]`, `clique:w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SplittingSpec {
    AllOrNothing { weight: f64 },
    DeltaLinear { delta: f64, scale: f64 },
    Clique { weight: f64 },
}

impl SplittingSpec {
    /// Builds the table for an edge of size `k` carrying multiplicative
    /// edge weight `edge_weight`.
    pub fn build(&self, k: usize, edge_weight: f64) -> Result<CardinalitySplitting> {
        match *self {
            SplittingSpec::AllOrNothing { weight } => {
                CardinalitySplitting::all_or_nothing(k, weight * edge_weight)
            }
            SplittingSpec::DeltaLinear { delta, scale } => {
                CardinalitySplitting::delta_linear(k, delta, scale * edge_weight)
            }
            SplittingSpec::Clique { weight } => {
                CardinalitySplitting::clique_penalty(k, weight * edge_weight)
            }
        }
    }

    pub fn delta_linear(delta: f64) -> Self {
        SplittingSpec::DeltaLinear { delta, scale: 1.0 }
    }
}

impl fmt::Display for SplittingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SplittingSpec::AllOrNothing { weight } => write!(f, "aon:{weight}"),
            SplittingSpec::DeltaLinear { delta, scale } if scale == 1.0 => {
                write!(f, "dlt:{delta}")
            }
            SplittingSpec::DeltaLinear { delta, scale } => write!(f, "dlt:{delta}:{scale}"),
            SplittingSpec::Clique { weight } => write!(f, "clique:{weight}"),
        }
    }
}

impl FromStr for SplittingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSplitting(format!("cannot parse splitting spec {s:?}"));
        let mut parts = s.trim().split(':');
        let name = parts.next().ok_or_else(bad)?;
        let nums: Vec<f64> = parts
            .map(|p| p.parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let spec = match (name, nums.as_slice()) {
            ("aon", [w]) => SplittingSpec::AllOrNothing { weight: *w },
            ("dlt", [d]) => SplittingSpec::DeltaLinear {
                delta: *d,
                scale: 1.0,
            },
            ("dlt", [d, sc]) => SplittingSpec::DeltaLinear {
                delta: *d,
                scale: *sc,
            },
            ("clique", [w]) => SplittingSpec::Clique { weight: *w },
            _ => return Err(bad()),
        };
        // validate parameters on the smallest edge size
        spec.build(2, 1.0)?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Literal set-function form of the delta-linear threshold.
    fn literal_delta_linear(k: usize, delta: f64, mask: u32) -> f64 {
        let a = mask.count_ones() as f64;
        delta.min(a).min(k as f64 - a)
    }

    #[test]
    fn delta_linear_table() {
        let s = CardinalitySplitting::delta_linear(6, 2.0, 1.0).unwrap();
        assert_eq!(s.table(), &[0.0, 1.0, 2.0, 2.0]);
    }

    #[test]
    fn delta_one_is_all_or_nothing() {
        for k in 2..10 {
            let d = CardinalitySplitting::delta_linear(k, 1.0, 2.5).unwrap();
            let a = CardinalitySplitting::all_or_nothing(k, 2.5).unwrap();
            assert_eq!(d.table(), a.table());
        }
    }

    #[test]
    fn large_delta_is_star_penalty() {
        let k = 7;
        let s = CardinalitySplitting::delta_linear(k, 100.0, 1.0).unwrap();
        for a in 0..=k {
            assert_eq!(s.eval(a), a.min(k - a) as f64);
        }
    }

    #[test]
    fn all_or_nothing_table() {
        let s = CardinalitySplitting::all_or_nothing(4, 1.0).unwrap();
        assert_eq!(s.table(), &[0.0, 1.0, 1.0]);
        let w = CardinalitySplitting::all_or_nothing(5, 2.5).unwrap();
        assert!((1..5).all(|a| w.eval(a) == 2.5));
    }

    #[test]
    fn clique_table() {
        let s = CardinalitySplitting::clique_penalty(4, 4.0).unwrap();
        assert_eq!(s.table(), &[0.0, 3.0, 4.0]);
        let s = CardinalitySplitting::clique_penalty(2, 1.0).unwrap();
        assert_eq!(s.table(), &[0.0, 0.5]);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(CardinalitySplitting::delta_linear(4, 0.5, 1.0).is_err());
        assert!(CardinalitySplitting::delta_linear(4, 2.0, 0.0).is_err());
        assert!(CardinalitySplitting::delta_linear(4, -1.0, 1.0).is_err());
        assert!(CardinalitySplitting::all_or_nothing(4, 0.0).is_err());
        assert!(CardinalitySplitting::clique_penalty(4, -2.0).is_err());
        assert!(CardinalitySplitting::all_or_nothing(1, 1.0).is_err());
        assert!(CardinalitySplitting::from_table(4, vec![1.0, 1.0, 1.0]).is_err());
        assert!(CardinalitySplitting::from_table(4, vec![0.0, 1.0]).is_err());
        assert!(CardinalitySplitting::from_table(4, vec![0.0, -1.0, 1.0]).is_err());
    }

    #[test]
    fn table_matches_literal_set_function() {
        for k in 2..=12usize {
            for d in 1..=k {
                let s = CardinalitySplitting::delta_linear(k, d as f64, 1.0).unwrap();
                for mask in 0u32..(1 << k) {
                    let a = mask.count_ones() as usize;
                    assert_eq!(s.eval(a), literal_delta_linear(k, d as f64, mask));
                }
            }
        }
    }

    #[test]
    fn delta_linear_is_submodular_and_concave() {
        for k in 2..=12usize {
            for d in 1..=k {
                let s = CardinalitySplitting::delta_linear(k, d as f64, 1.0).unwrap();
                let t = s.table();
                assert!(t.windows(2).all(|w| w[1] >= w[0]));
                assert!(t.windows(3).all(|w| w[1] - w[0] >= w[2] - w[1]));
                assert!(s.is_submodular(), "k={k} delta={d}");
            }
        }
    }

    #[test]
    fn convex_jump_is_not_submodular() {
        let s = CardinalitySplitting::from_table(4, vec![0.0, 1.0, 3.0]).unwrap();
        let (a, b) = s.submodularity_witness().expect("witness");
        let ev = |m: &[usize]| s.eval(m.len());
        let both: Vec<usize> = a.iter().copied().filter(|v| b.contains(v)).collect();
        let mut either = a.clone();
        either.extend(b.iter().filter(|v| !a.contains(v)));
        assert!(ev(&a) + ev(&b) < ev(&either) + ev(&both));
    }

    #[test]
    fn zero_table_is_submodular() {
        let s = CardinalitySplitting::from_table(6, vec![0.0; 4]).unwrap();
        assert!(s.is_submodular());
    }

    #[test]
    fn sampled_check_for_large_edges() {
        let s = CardinalitySplitting::delta_linear(40, 5.0, 1.0).unwrap();
        assert!(s.is_submodular());
        let mut t = vec![0.0; 21];
        for (i, p) in t.iter_mut().enumerate() {
            *p = (i * i) as f64;
        }
        let bad = CardinalitySplitting::from_table(40, t).unwrap();
        assert!(!bad.is_submodular());
    }

    #[test]
    fn delta_linear_form_inference() {
        let t = CardinalitySplitting::from_table(6, vec![0.0, 2.0, 4.0, 4.0]).unwrap();
        assert_eq!(
            t.delta_linear_form(),
            Some(DeltaLinearForm {
                delta: 2.0,
                scale: 2.0
            })
        );
        let star = CardinalitySplitting::from_table(7, vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!(star.delta_linear_form().unwrap().delta, 3.0);
        let frac = CardinalitySplitting::from_table(8, vec![0.0, 1.0, 1.5, 1.5, 1.5]).unwrap();
        assert_eq!(frac.delta_linear_form().unwrap().delta, 1.5);
        // small cliques happen to be delta-linear with a fractional delta
        let clique = CardinalitySplitting::clique_penalty(4, 1.0).unwrap();
        let form = clique.delta_linear_form().unwrap();
        assert!((form.delta - 4.0 / 3.0).abs() < 1e-12);
        let clique = CardinalitySplitting::clique_penalty(6, 1.0).unwrap();
        assert_eq!(clique.delta_linear_form(), None);
        let pair = CardinalitySplitting::clique_penalty(2, 1.0).unwrap();
        assert_eq!(pair.delta_linear_form().unwrap().scale, 0.5);
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(
            "aon:2".parse::<SplittingSpec>().unwrap(),
            SplittingSpec::AllOrNothing { weight: 2.0 }
        );
        assert_eq!(
            "dlt:5000".parse::<SplittingSpec>().unwrap(),
            SplittingSpec::delta_linear(5000.0)
        );
        assert_eq!(
            "dlt:2:0.5".parse::<SplittingSpec>().unwrap(),
            SplittingSpec::DeltaLinear {
                delta: 2.0,
                scale: 0.5
            }
        );
        assert_eq!(
            "clique:1".parse::<SplittingSpec>().unwrap(),
            SplittingSpec::Clique { weight: 1.0 }
        );
        for bad in ["", "aon", "dlt:0.5", "foo:1", "aon:x", "dlt:1:2:3"] {
            assert!(bad.parse::<SplittingSpec>().is_err(), "{bad}");
        }
        for s in ["aon:1.5", "dlt:3", "dlt:2:0.25", "clique:4"] {
            assert_eq!(s.parse::<SplittingSpec>().unwrap().to_string(), s);
        }
    }
}
