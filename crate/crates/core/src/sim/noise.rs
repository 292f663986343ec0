//! Bit-flip noise model, serialized as key-value text
//! (`p_gate1=0.1` per line or whitespace-separated).

use super::SimError;

/// Per-event X-flip probabilities. `p_gate2` is the per-qubit rate
/// applied independently to both qubits of a two-qubit gate; when
/// absent it defaults to `p_gate1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseModel {
    pub p_gate1: f64,
    pub p_gate2: Option<f64>,
    pub p_reset: f64,
    pub p_meas: f64,
}

impl NoiseModel {
    pub fn uniform(p: f64) -> Self {
        Self { p_gate1: p, p_gate2: None, p_reset: p, p_meas: p }
    }

    pub fn noiseless() -> Self {
        Self::uniform(0.0)
    }

    pub fn two_qubit_rate(&self) -> f64 {
        self.p_gate2.unwrap_or(self.p_gate1)
    }

    pub fn is_noiseless(&self) -> bool {
        self.p_gate1 == 0.0
            && self.two_qubit_rate() == 0.0
            && self.p_reset == 0.0
            && self.p_meas == 0.0
    }

    pub fn validate(&self) -> Result<(), SimError> {
        for p in [self.p_gate1, self.two_qubit_rate(), self.p_reset, self.p_meas] {
            if !(0.0..=1.0).contains(&p) {
                return Err(SimError::BadProbability(p));
            }
        }
        Ok(())
    }
}

pub fn serialize_noise_model(n: &NoiseModel) -> String {
    let mut out = format!(
        "p_gate1={}\np_reset={}\np_meas={}\n",
        n.p_gate1, n.p_reset, n.p_meas
    );
    if let Some(p2) = n.p_gate2 {
        out.push_str(&format!("p_gate2={p2}\n"));
    }
    out
}

pub fn parse_noise_model(text: &str) -> Result<NoiseModel, SimError> {
    let mut model = NoiseModel::noiseless();
    for token in text.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| SimError::NoiseParse(format!("expected key=value, got {token:?}")))?;
        let p: f64 = value
            .parse()
            .map_err(|_| SimError::NoiseParse(format!("bad probability {value:?}")))?;
        match key {
            "p_gate1" => model.p_gate1 = p,
            "p_gate2" => model.p_gate2 = Some(p),
            "p_reset" => model.p_reset = p,
            "p_meas" => model.p_meas = p,
            other => return Err(SimError::NoiseParse(format!("unknown key {other:?}"))),
        }
    }
    model.validate()?;
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let n = NoiseModel { p_gate1: 0.1, p_gate2: Some(0.05), p_reset: 0.1, p_meas: 0.1 };
        let back = parse_noise_model(&serialize_noise_model(&n)).unwrap();
        assert_eq!(back, n);
    }

    #[test]
    fn gate2_defaults_to_gate1() {
        let n = parse_noise_model("p_gate1=0.2").unwrap();
        assert_eq!(n.two_qubit_rate(), 0.2);
        assert_eq!(parse_noise_model("p_gate1=0.2 p_gate2=0.0").unwrap().two_qubit_rate(), 0.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_noise_model("p_gate1=1.5").is_err());
        assert!(parse_noise_model("p_bogus=0.1").is_err());
        assert!(parse_noise_model("p_gate1").is_err());
    }

    #[test]
    fn empty_text_is_noiseless() {
        assert!(parse_noise_model("").unwrap().is_noiseless());
    }
}
