//! JSON envelope shared by every command.

use serde::Serialize;
use serde_json::Value;

use crate::energy::Params;

pub const TOOL: &str = "pottsmeta";

pub fn version() -> String {
    format!("v{}", env!("CARGO_PKG_VERSION"))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelSummary {
    pub q: u8,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub h: f64,
    pub critical_length: usize,
    pub critical_size: usize,
    pub gamma: f64,
}

/// Which standing assumptions hold for the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Assumptions {
    /// `0 < h < 1`.
    pub field_in_unit_interval: bool,
    /// `2/h` is not an integer.
    pub two_over_h_not_integer: bool,
    /// `K ≥ 3ℓ*`, required by the large-lattice statements.
    pub lattice_at_least_three_critical: bool,
    /// Set when the run proceeded under `--unsafe-params` despite a violation.
    pub unsafe_params: bool,
}

impl Assumptions {
    pub fn of(p: &Params) -> Self {
        let r = 2.0 / p.h;
        Self {
            field_in_unit_interval: p.h > 0.0 && p.h < 1.0,
            two_over_h_not_integer: (r - r.round()).abs() >= 1e-9,
            lattice_at_least_three_critical: p.geom.rows() >= 3 * p.critical_length(),
            unsafe_params: p.assumption_violated,
        }
    }
}

impl ModelSummary {
    pub fn of(p: &Params) -> Self {
        Self {
            q: p.q,
            k: p.geom.rows(),
            l: p.geom.cols(),
            h: p.h,
            critical_length: p.critical_length(),
            critical_size: p.critical_size(),
            gamma: p.value(p.barrier()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Envelope {
    pub tool: &'static str,
    pub version: String,
    pub command: String,
    pub params: Option<ModelSummary>,
    pub assumptions: Option<Assumptions>,
    pub seed: Option<u64>,
    pub result: Value,
}

impl Envelope {
    pub fn new(command: &str, p: Option<&Params>, seed: Option<u64>, result: Value) -> Self {
        Self {
            tool: TOOL,
            version: version(),
            command: command.into(),
            params: p.map(ModelSummary::of),
            assumptions: p.map(Assumptions::of),
            seed,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assumption_flags() {
        let a = Assumptions::of(&Params::new(3, 9, 9, 0.9).unwrap());
        assert!(a.field_in_unit_interval && a.two_over_h_not_integer && a.lattice_at_least_three_critical);
        assert!(!a.unsafe_params);
        let a = Assumptions::of(&Params::unchecked(3, 5, 5, 0.5).unwrap());
        assert!(a.field_in_unit_interval && !a.two_over_h_not_integer && !a.lattice_at_least_three_critical);
        assert!(a.unsafe_params);
    }

    #[test]
    fn envelope_carries_version_and_params() {
        let p = Params::new(3, 3, 3, 0.9).unwrap();
        let e = Envelope::new("refpath", Some(&p), Some(7), Value::Null);
        let v: Value = serde_json::from_str(&e.to_json()).unwrap();
        assert_eq!(v["version"], version());
        assert_eq!(v["params"]["K"], 3);
        assert_eq!(v["params"]["gamma"], 5.7);
        assert_eq!(v["seed"], 7);
    }
}
