use serde_json::json;
use thiserror::Error;

use ltop_core::completion::boundary::BoundaryError;
use ltop_core::completion::floyd::FloydError;
use ltop_core::completion::lind::LindError;
use ltop_core::completion::nst::NstError;
use ltop_core::cyclespace::CycleError;
use ltop_core::generators::GenError;
use ltop_core::metric::MetricError;
use ltop_core::tours::TourError;
use ltop_core::GraphError;

/// Every failure the tool reports, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Generator(String),
    #[error("{0}")]
    Inconsistent(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Generator(_) => 4,
            CliError::Inconsistent(_) => 5,
            CliError::Compute(_) => 6,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io(_) => "io",
            CliError::Usage(_) => "usage",
            CliError::Parse(_) => "parse",
            CliError::Generator(_) => "generator",
            CliError::Inconsistent(_) => "inconsistent_flags",
            CliError::Compute(_) => "computation",
        }
    }

    pub fn to_json(&self) -> String {
        json!({ "error": { "kind": self.kind(), "code": self.code(), "message": self.to_string() } }).to_string()
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        match e {
            GenError::Io(m) => CliError::Io(m),
            other => CliError::Generator(other.to_string()),
        }
    }
}

/// Graph errors raised while reading input files; lookups of ids given on
/// the command line are mapped separately by the caller.
impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::UnknownVertex(_) | GraphError::UnknownEdge(_) => CliError::Inconsistent(e.to_string()),
            GraphError::Empty => CliError::Compute(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<MetricError> for CliError {
    fn from(e: MetricError) -> Self {
        match e {
            MetricError::Graph(g) => g.into(),
            MetricError::BadOffset { .. } => CliError::Inconsistent(e.to_string()),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<FloydError> for CliError {
    fn from(e: FloydError) -> Self {
        match e {
            FloydError::UnknownDecay(_) => CliError::Usage(e.to_string()),
            FloydError::HopDistancesInexact(_) | FloydError::MissingBasepoint(_) | FloydError::NoBasepoint => {
                CliError::Inconsistent(e.to_string())
            }
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<BoundaryError> for CliError {
    fn from(e: BoundaryError) -> Self {
        match e {
            BoundaryError::DepthTooSmall { .. } => CliError::Inconsistent(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<LindError> for CliError {
    fn from(e: LindError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<NstError> for CliError {
    fn from(e: NstError) -> Self {
        match e {
            NstError::Graph(g) => g.into(),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<CycleError> for CliError {
    fn from(e: CycleError) -> Self {
        match e {
            CycleError::Graph(g) => g.into(),
            CycleError::OddDegree { .. } => CliError::Inconsistent(e.to_string()),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<TourError> for CliError {
    fn from(e: TourError) -> Self {
        match e {
            TourError::Graph(g) => g.into(),
            other => CliError::Compute(other.to_string()),
        }
    }
}
