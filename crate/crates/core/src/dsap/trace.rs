use crate::point::Point;

/// Which optional columns a trace carries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TraceColumns {
    pub fejer_margin: bool,
    /// `beta_k`, `direction_norm` and `beta_sum`.
    pub perturbation: bool,
    pub objective: bool,
}

/// Scalar summary of iteration `k` (producing `x^k` from `x^{k-1}`).
#[derive(Clone, Debug, PartialEq)]
pub struct IterationRecord {
    pub k: usize,
    /// `max_i d(x^k, C_i)`
    pub proximity: f64,
    /// `Σ_{t∈Ω_k} φ[t]` at the point the amalgamator was applied to.
    pub phi_sum: f64,
    /// `‖x^k − x^{k−1}‖`
    pub step_norm: f64,
    /// `‖z − y‖² − ‖z − x^k‖² − Δ·phi_sum` where `y` is the amalgamator input.
    pub fejer_margin: Option<f64>,
    pub beta: Option<f64>,
    pub direction_norm: Option<f64>,
    /// `Σ_{j<k} β_j` including this step.
    pub beta_sum: Option<f64>,
    /// Objective value at `x^k`.
    pub objective: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterationTrace {
    pub columns: TraceColumns,
    pub initial_proximity: f64,
    pub initial_objective: Option<f64>,
    pub records: Vec<IterationRecord>,
    /// `x^0, x^1, …` when the run fit in the snapshot budget.
    pub snapshots: Option<Vec<Point>>,
}

impl IterationTrace {
    pub fn iterations(&self) -> usize {
        self.records.len()
    }

    /// First iteration `ℓ` with `Σ_{t∈Ω_ℓ} φ[t](x^{ℓ−1}) ≤ γ`.
    pub fn drop_index(&self, gamma: f64) -> Option<usize> {
        self.records.iter().find(|r| r.phi_sum <= gamma).map(|r| r.k)
    }

    pub fn min_fejer_margin(&self) -> Option<f64> {
        self.records.iter().filter_map(|r| r.fejer_margin).reduce(f64::min)
    }

    pub fn final_proximity(&self) -> f64 {
        self.records.last().map_or(self.initial_proximity, |r| r.proximity)
    }

    pub fn final_objective(&self) -> Option<f64> {
        match self.records.last() {
            Some(r) => r.objective,
            None => self.initial_objective,
        }
    }
}
