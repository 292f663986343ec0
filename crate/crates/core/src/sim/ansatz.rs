//! Hardware-efficient ansatz circuits and their text form.
//!
//! Serialization is one gate per line: `ry <qubit> <param_idx>` or
//! `cx <control> <target>`; `#` starts a comment.

use super::SimError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    Ry { qubit: usize, param: usize },
    Cx { control: usize, target: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnsatzSpec {
    q: usize,
    gates: Vec<Gate>,
    n_params: usize,
}

impl AnsatzSpec {
    /// Validates qubit indices and requires parameter indices to be
    /// contiguous from 0 in order of first appearance.
    pub fn new(q: usize, gates: Vec<Gate>) -> Result<Self, SimError> {
        let mut n_params = 0;
        for g in &gates {
            match *g {
                Gate::Ry { qubit, param } => {
                    if qubit >= q {
                        return Err(SimError::QubitOutOfRange { index: qubit, q });
                    }
                    if param > n_params {
                        return Err(SimError::ParamCountMismatch {
                            expected: n_params,
                            got: param,
                        });
                    }
                    if param == n_params {
                        n_params += 1;
                    }
                }
                Gate::Cx { control, target } => {
                    for idx in [control, target] {
                        if idx >= q {
                            return Err(SimError::QubitOutOfRange { index: idx, q });
                        }
                    }
                }
            }
        }
        Ok(Self { q, gates, n_params })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    pub fn count_ry(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::Ry { .. })).count()
    }

    pub fn count_cx(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::Cx { .. })).count()
    }
}

/// Hardware-efficient ansatz: a full Ry layer, then `layers` repetitions
/// of a linear CNOT chain followed by another full Ry layer. Each Ry
/// carries its own parameter.
pub fn hea(q: usize, layers: usize) -> AnsatzSpec {
    let mut gates = Vec::new();
    let mut param = 0;
    let ry_layer = |gates: &mut Vec<Gate>, param: &mut usize| {
        for qubit in 0..q {
            gates.push(Gate::Ry { qubit, param: *param });
            *param += 1;
        }
    };
    ry_layer(&mut gates, &mut param);
    for _ in 0..layers {
        for c in 0..q.saturating_sub(1) {
            gates.push(Gate::Cx { control: c, target: c + 1 });
        }
        ry_layer(&mut gates, &mut param);
    }
    AnsatzSpec { q, gates, n_params: param }
}

pub fn serialize_ansatz(spec: &AnsatzSpec) -> String {
    let mut out = String::new();
    for g in &spec.gates {
        match *g {
            Gate::Ry { qubit, param } => out.push_str(&format!("ry {qubit} {param}\n")),
            Gate::Cx { control, target } => {
                out.push_str(&format!("cx {control} {target}\n"))
            }
        }
    }
    out
}

pub fn parse_ansatz(q: usize, text: &str) -> Result<AnsatzSpec, SimError> {
    let mut gates = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| SimError::AnsatzParse { line: i + 1, msg: msg.to_string() };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [op, a, b] = tokens[..] else {
            return Err(err("expected `ry <qubit> <param>` or `cx <control> <target>`"));
        };
        let a: usize = a.parse().map_err(|_| err("bad index"))?;
        let b: usize = b.parse().map_err(|_| err("bad index"))?;
        gates.push(match op {
            "ry" => Gate::Ry { qubit: a, param: b },
            "cx" => Gate::Cx { control: a, target: b },
            other => return Err(err(&format!("unknown gate {other:?}"))),
        });
    }
    AnsatzSpec::new(q, gates)
}
