//! Age results and the engine-backed solver entry point.

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::charts::{build_noma_chart, build_oma_chart, Perspective};
use crate::error::ModelError;
use crate::params::{Scheme, SystemParams};

/// How an [`AgeReport`] was produced. Serialized as the lowercase tag:
/// `engine`, `theorem-matrices` (the hand-derived closed-form matrix route),
/// `limit-formula`, or `simulation`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Engine,
    TheoremMatrices,
    LimitFormula,
    Simulation,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Engine => "engine",
            Self::TheoremMatrices => "theorem-matrices",
            Self::LimitFormula => "limit-formula",
            Self::Simulation => "simulation",
        }
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Per-user and total average ages for one parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct AgeReport {
    pub age_user1: f64,
    pub age_user2: f64,
    /// Always the sum of the two per-user ages.
    pub age_total: f64,
    pub method: Method,
    pub params: SystemParams,
}

impl AgeReport {
    pub fn new(age_user1: f64, age_user2: f64, method: Method, params: SystemParams) -> Self {
        Self {
            age_user1,
            age_user2,
            age_total: age_user1 + age_user2,
            method,
            params,
        }
    }
}

/// Flat JSON object: the three ages plus the method tag. The parameters are
/// carried in memory but serialized separately by callers that need them.
impl Serialize for AgeReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("AgeReport", 4)?;
        s.serialize_field("age_user1", &self.age_user1)?;
        s.serialize_field("age_user2", &self.age_user2)?;
        s.serialize_field("age_total", &self.age_total)?;
        s.serialize_field("method", &self.method)?;
        s.end()
    }
}

/// Both users' average ages through the generic engine: build the chart for
/// each perspective, run the stationary/correlation pipeline, sum the
/// monitor components.
pub fn solve_engine(params: &SystemParams, scheme: Scheme) -> Result<AgeReport, ModelError> {
    let build = match scheme {
        Scheme::Noma => build_noma_chart,
        Scheme::Oma => build_oma_chart,
    };
    let chart1 = build(params, Perspective::User1)?;
    let chart2 = build(params, Perspective::User2)?;
    let age_user1 = shs_core::average_age(&chart1, &[0])?;
    let age_user2 = shs_core::average_age(&chart2, &[0])?;
    Ok(AgeReport::new(
        age_user1,
        age_user2,
        Method::Engine,
        params.clone(),
    ))
}
