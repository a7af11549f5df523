use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stochastic Pauli + readout-flip noise.
///
/// After every gate each involved qubit independently receives a uniformly
/// random X, Y or Z with the gate's depolarizing probability (`depol_1q` for
/// uncontrolled gates, `depol_2q` for controlled ones). Every recorded
/// measurement bit is flipped with probability `readout_flip`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub readout_flip: f64,
    pub depol_1q: f64,
    pub depol_2q: f64,
}

impl NoiseModel {
    pub fn new(readout_flip: f64, depol_1q: f64, depol_2q: f64) -> Result<Self> {
        let model = NoiseModel {
            readout_flip,
            depol_1q,
            depol_2q,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn noiseless() -> Self {
        NoiseModel {
            readout_flip: 0.0,
            depol_1q: 0.0,
            depol_2q: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [
            ("readout_flip", self.readout_flip),
            ("depol_1q", self.depol_1q),
            ("depol_2q", self.depol_2q),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::domain(format!("{name} = {p} is not in [0, 1]")));
            }
        }
        Ok(())
    }

    pub fn is_noiseless(&self) -> bool {
        self.readout_flip == 0.0 && self.depol_1q == 0.0 && self.depol_2q == 0.0
    }

    pub fn depolarizing_for(&self, controlled: bool) -> f64 {
        if controlled {
            self.depol_2q
        } else {
            self.depol_1q
        }
    }
}

/// Rates of the order of a 2018-era five-qubit superconducting device.
impl Default for NoiseModel {
    fn default() -> Self {
        NoiseModel {
            readout_flip: 0.03,
            depol_1q: 0.001,
            depol_2q: 0.02,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_validation() {
        let d = NoiseModel::default();
        assert_eq!(
            (d.readout_flip, d.depol_1q, d.depol_2q),
            (0.03, 0.001, 0.02)
        );
        assert!(!d.is_noiseless());
        assert!(NoiseModel::noiseless().is_noiseless());
        assert!(NoiseModel::new(1.2, 0.0, 0.0).is_err());
        assert!(NoiseModel::new(0.0, -0.1, 0.0).is_err());
        assert!(NoiseModel::new(0.0, 0.0, f64::NAN).is_err());
        assert_eq!(d.depolarizing_for(true), 0.02);
    }
}
