use std::borrow::Cow;

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::rng;
use crate::strings::{validate_star, Amalgamator, IndexVector, StarConstraints};

/// Margin kept below `1/m` when a strategy reports its largest admissible Δ.
pub const DELTA_SLACK: f64 = 1e-9;

/// How the amalgamator `(Ω_k, w_k)` is chosen at step `k`.
#[derive(Clone, Debug, PartialEq)]
pub enum StrategyKind {
    /// One string `(1, …, m)` with weight one: cyclic projections.
    Sequential,
    /// `m` singleton strings with weights `1/m`.
    Simultaneous,
    /// The index order is rotated by `k` and cut into `blocks` contiguous
    /// strings of near-equal length, equally weighted.
    PartitionCyclic { blocks: usize },
    /// A fresh seeded shuffle of the indices each step, cut into a random
    /// number of strings between 1 and `max_blocks`, equally weighted.
    RandomPartition { seed: u64, max_blocks: usize },
    /// The same amalgamator every step (classic string averaging).
    FixedSap(Amalgamator),
    /// A user sequence, repeated cyclically.
    Custom(Vec<Amalgamator>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Strategy {
    kind: StrategyKind,
    star: StarConstraints,
    constant: Option<Amalgamator>,
}

impl Strategy {
    pub fn new(kind: StrategyKind, star: StarConstraints) -> Result<Self> {
        let m = star.m();
        let check_m = |a: &Amalgamator| {
            if a.m() == m {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "amalgamator is for m={} but the constraints are for m={m}",
                    a.m()
                )))
            }
        };
        let constant = match &kind {
            StrategyKind::Sequential => Some(Amalgamator::sequential(m)?),
            StrategyKind::Simultaneous => Some(Amalgamator::simultaneous(m)?),
            StrategyKind::PartitionCyclic { blocks } | StrategyKind::RandomPartition { max_blocks: blocks, .. } => {
                if *blocks == 0 || *blocks > m {
                    return Err(Error::InvalidArgument(format!("block count {blocks} must lie in 1..={m}")));
                }
                None
            }
            StrategyKind::FixedSap(a) => {
                check_m(a)?;
                Some(a.clone())
            }
            StrategyKind::Custom(seq) => {
                if seq.is_empty() {
                    return Err(Error::InvalidArgument("custom strategy needs at least one amalgamator".into()));
                }
                seq.iter().try_for_each(check_m)?;
                None
            }
        };
        Ok(Strategy { kind, star, constant })
    }

    pub fn kind(&self) -> &StrategyKind {
        &self.kind
    }

    pub fn star(&self) -> &StarConstraints {
        &self.star
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            StrategyKind::Sequential => "sequential",
            StrategyKind::Simultaneous => "simultaneous",
            StrategyKind::PartitionCyclic { .. } => "partition-cyclic",
            StrategyKind::RandomPartition { .. } => "random-partition",
            StrategyKind::FixedSap(_) => "fixed-sap",
            StrategyKind::Custom(_) => "custom",
        }
    }

    /// The amalgamator for step `step` (zero-based), without checking `M*`.
    pub fn emit(&self, step: usize) -> Cow<'_, Amalgamator> {
        if let Some(a) = &self.constant {
            return Cow::Borrowed(a);
        }
        let m = self.star.m();
        match &self.kind {
            StrategyKind::PartitionCyclic { blocks } => {
                let shift = step % m;
                let order: Vec<usize> = (0..m).map(|i| (i + shift) % m).collect();
                Cow::Owned(partition(m, &order, *blocks))
            }
            StrategyKind::RandomPartition { seed, max_blocks } => {
                let mut rng = rng::seeded(*seed, step as u64);
                let blocks = rng.random_range(1..=*max_blocks);
                let mut order: Vec<usize> = (0..m).collect();
                order.shuffle(&mut rng);
                Cow::Owned(partition(m, &order, blocks))
            }
            StrategyKind::Custom(seq) => Cow::Borrowed(&seq[step % seq.len()]),
            _ => unreachable!("constant strategies are cached"),
        }
    }

    /// The amalgamator for step `step`, checked against `M*(Δ, q̄)`.
    pub fn amalgamator(&self, step: usize) -> Result<Cow<'_, Amalgamator>> {
        let a = self.emit(step);
        let report = validate_star(&a, &self.star);
        if !report.is_valid() {
            return Err(Error::StarViolation { iteration: step + 1, report });
        }
        Ok(a)
    }

    /// Validates the first `steps` emissions.
    pub fn dry_run(&self, steps: usize) -> Result<()> {
        (0..steps).try_for_each(|k| self.amalgamator(k).map(drop))
    }

    /// Largest number of strings any emitted amalgamator can have.
    pub fn max_string_count(&self) -> usize {
        match &self.kind {
            StrategyKind::Sequential => 1,
            StrategyKind::Simultaneous => self.star.m(),
            StrategyKind::PartitionCyclic { blocks } => *blocks,
            StrategyKind::RandomPartition { max_blocks, .. } => *max_blocks,
            StrategyKind::FixedSap(a) => a.strings().len(),
            StrategyKind::Custom(seq) => seq.iter().map(|a| a.strings().len()).max().unwrap_or(1),
        }
    }

    /// Largest Δ for which every emitted amalgamator stays inside `M*`.
    pub fn max_admissible_delta(&self) -> f64 {
        let m = self.star.m() as f64;
        let generated = (1.0 / self.max_string_count() as f64).min(1.0 / m) - DELTA_SLACK;
        match &self.kind {
            StrategyKind::FixedSap(a) => generated.min(a.min_weight()),
            StrategyKind::Custom(seq) => seq.iter().map(Amalgamator::min_weight).fold(generated, f64::min),
            _ => generated,
        }
    }
}

/// Cuts `order` into `blocks` contiguous strings whose lengths differ by at
/// most one, with equal weights.
fn partition(m: usize, order: &[usize], blocks: usize) -> Amalgamator {
    let base = order.len() / blocks;
    let extra = order.len() % blocks;
    let mut strings = Vec::with_capacity(blocks);
    let mut start = 0;
    for b in 0..blocks {
        let len = base + usize::from(b < extra);
        strings.push(IndexVector::new(order[start..start + len].to_vec()).expect("blocks ≤ m"));
        start += len;
    }
    Amalgamator::uniform(m, strings).expect("a partition of 0..m is fit")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(m: usize) -> StarConstraints {
        StarConstraints::new(m, 0.9 / m as f64, m).unwrap()
    }

    #[test]
    fn partition_cyclic_rotates_and_covers() {
        let s = Strategy::new(StrategyKind::PartitionCyclic { blocks: 2 }, star(5)).unwrap();
        let a0 = s.amalgamator(0).unwrap();
        let a1 = s.amalgamator(1).unwrap();
        assert_eq!(a0.strings()[0].indices(), &[0, 1, 2]);
        assert_eq!(a0.strings()[1].indices(), &[3, 4]);
        assert_eq!(a1.strings()[0].indices(), &[1, 2, 3]);
        assert_eq!(a1.strings()[1].indices(), &[4, 0]);
        assert_eq!(s.amalgamator(5).unwrap(), a0);
    }

    #[test]
    fn random_partition_is_deterministic_and_valid() {
        let s = Strategy::new(StrategyKind::RandomPartition { seed: 11, max_blocks: 4 }, star(7)).unwrap();
        let t = s.clone();
        for k in 0..200 {
            assert_eq!(s.amalgamator(k).unwrap(), t.amalgamator(k).unwrap());
        }
        s.dry_run(500).unwrap();
        let counts: std::collections::BTreeSet<usize> = (0..200).map(|k| s.emit(k).strings().len()).collect();
        assert!(counts.len() > 1, "string count should vary: {counts:?}");
    }

    #[test]
    fn over_long_string_fails_at_first_iteration() {
        let sc = StarConstraints::new(2, 0.4, 2).unwrap();
        let long = Amalgamator::new(2, vec![IndexVector::new(vec![0, 1, 0]).unwrap()], vec![1.0]).unwrap();
        let s = Strategy::new(StrategyKind::FixedSap(long), sc).unwrap();
        let err = s.amalgamator(0).unwrap_err();
        assert!(matches!(err, Error::StarViolation { iteration: 1, .. }), "{err}");
    }

    #[test]
    fn custom_cycles() {
        let sc = StarConstraints::new(2, 0.3, 2).unwrap();
        let a = Amalgamator::sequential(2).unwrap();
        let b = Amalgamator::simultaneous(2).unwrap();
        let s = Strategy::new(StrategyKind::Custom(vec![a.clone(), b.clone()]), sc).unwrap();
        assert_eq!(*s.emit(0), a);
        assert_eq!(*s.emit(1), b);
        assert_eq!(*s.emit(2), a);
    }

    #[test]
    fn bad_parameters() {
        assert!(Strategy::new(StrategyKind::PartitionCyclic { blocks: 0 }, star(3)).is_err());
        assert!(Strategy::new(StrategyKind::PartitionCyclic { blocks: 4 }, star(3)).is_err());
        assert!(Strategy::new(StrategyKind::Custom(vec![]), star(3)).is_err());
        let a = Amalgamator::sequential(2).unwrap();
        assert!(Strategy::new(StrategyKind::FixedSap(a), star(3)).is_err());
    }

    #[test]
    fn admissible_delta_below_one_over_m() {
        for m in 1..10 {
            for kind in [StrategyKind::Sequential, StrategyKind::Simultaneous, StrategyKind::PartitionCyclic { blocks: m }] {
                let s = Strategy::new(kind, star(m)).unwrap();
                let d = s.max_admissible_delta();
                assert!(d < 1.0 / m as f64);
                let tight = Strategy::new(s.kind().clone(), StarConstraints::new(m, d, m).unwrap()).unwrap();
                tight.dry_run(3 * m).unwrap();
            }
        }
    }
}
