use thiserror::Error;

use super::{log_sum_exp, NORMALIZATION_SLACK};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum LossError {
    #[error("empty distribution")]
    Empty,
    #[error("gold index {gold} out of range for {k} columns")]
    GoldOutOfRange { gold: usize, k: usize },
    #[error("epsilon {0} outside [0, 1)")]
    Epsilon(f64),
    #[error("log-probs are not normalized (log-sum-exp {0})")]
    Unnormalized(f64),
}

/// Negated label-smoothed column objective
/// `(1 - eps) * log p(gold) + eps / K * sum_c log p(c)`.
pub fn column_label_smoothing_loss(logp: &[f64], gold: usize, epsilon: f64) -> Result<f64, LossError> {
    let k = logp.len();
    if k == 0 {
        return Err(LossError::Empty);
    }
    if gold >= k {
        return Err(LossError::GoldOutOfRange { gold, k });
    }
    if !(0.0..1.0).contains(&epsilon) {
        return Err(LossError::Epsilon(epsilon));
    }
    let total = log_sum_exp(logp);
    if total.is_nan() || total.abs() > NORMALIZATION_SLACK {
        return Err(LossError::Unnormalized(total));
    }
    let gold_term = -logp[gold];
    if epsilon == 0.0 {
        return Ok(gold_term);
    }
    let uniform_term = -logp.iter().sum::<f64>() / k as f64;
    Ok((1.0 - epsilon) * gold_term + epsilon * uniform_term)
}
