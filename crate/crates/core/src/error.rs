use thiserror::Error;

/// Errors raised by the moment solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-positive density M0 = {0:e}")]
    NonPositiveDensity(f64),

    #[error("non-positive pressure p = {0:e}")]
    NonPositivePressure(f64),

    #[error("moments are not realizable: {0}")]
    NonRealizable(Bound),

    #[error("state cannot be repaired: density {0:e} is not positive")]
    NonRecoverable(f64),

    #[error("degenerate state: {0}")]
    DegenerateState(&'static str),

    #[error("background charge incompatible with density: net charge {residual:e} (scale {scale:e})")]
    IncompatibleCharge { residual: f64, scale: f64 },

    #[error("unknown scenario '{0}'")]
    UnknownScenario(String),

    #[error("time step collapsed to {dt:e}; characteristic speed {speed:e}")]
    StepCollapse { dt: f64, speed: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("element {element}: {source}")]
    AtElement {
        element: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("step {step} (t = {time:e}): {source}")]
    AtStep {
        step: usize,
        time: f64,
        #[source]
        source: Box<Error>,
    },
}

/// The realizability bound that failed during a moment inversion.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum Bound {
    #[error("density must be positive")]
    Density,
    #[error("pressure must be positive")]
    Pressure,
    #[error("r is below its lower bound {lower:e} (r = {r:e})")]
    FourthMomentLow { r: f64, lower: f64 },
    #[error("q = 0 requires r <= {upper:e} (r = {r:e})")]
    FourthMomentHigh { r: f64, upper: f64 },
}

impl Error {
    pub fn at_element(self, element: usize) -> Self {
        Error::AtElement {
            element,
            source: Box::new(self),
        }
    }

    pub fn at_step(self, step: usize, time: f64) -> Self {
        Error::AtStep {
            step,
            time,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
