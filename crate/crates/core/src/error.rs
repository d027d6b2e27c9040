use thiserror::Error;

pub type Result<T, E = CoreError> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("invalid config: `{field}` {reason}")]
    InvalidConfig {
        field: &'static str,
        reason: &'static str,
    },
    #[error("no base station sampled after {attempts} attempts")]
    EmptyNetwork { attempts: u32 },
    #[error("UE {ue} was never scheduled")]
    NoActiveSlots { ue: usize },
    #[error("sample set is empty")]
    EmptySamples,
    #[error("percentile {0} is outside [0, 1]")]
    InvalidPercentile(f64),
    #[error("baseline percentile is zero")]
    ZeroBaseline,
}
