//! Boolean circuits over NOT / AND / OR and the MMSA instance built on them.
//!
//! Wires `0..n` are inputs; gate `j` writes wire `n + j`. The output is the
//! last gate's wire.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GateKind {
    Not,
    And,
    Or,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Not => 1,
            GateKind::And | GateKind::Or => 2,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GateKind::Not => "NOT",
            GateKind::And => "AND",
            GateKind::Or => "OR",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoolGate {
    pub kind: GateKind,
    #[serde(rename = "in")]
    pub inputs: Vec<usize>,
    pub out: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneCircuit {
    pub n: usize,
    pub gates: Vec<BoolGate>,
    pub output: usize,
}

impl MonotoneCircuit {
    pub fn new(n: usize, gates: Vec<BoolGate>) -> Result<Self> {
        let output = n + gates.len().saturating_sub(1);
        let c = MonotoneCircuit { n, gates, output };
        c.check()?;
        Ok(c)
    }

    pub fn check(&self) -> Result<()> {
        if self.gates.is_empty() {
            return Err(Error::InvalidCircuit(
                "monotone circuit has no gates".into(),
            ));
        }
        for (j, g) in self.gates.iter().enumerate() {
            let w = self.n + j;
            if g.out != w {
                return Err(Error::InvalidCircuit(format!(
                    "gate {j} writes wire {} but must write {w}",
                    g.out
                )));
            }
            if g.inputs.len() != g.kind.arity() {
                return Err(Error::InvalidCircuit(format!("gate {j} has wrong fan-in")));
            }
            if g.inputs.iter().any(|&i| i >= w) {
                return Err(Error::InvalidCircuit(format!(
                    "gate {j} reads a later wire"
                )));
            }
            if g.inputs.len() == 2 && g.inputs[0] == g.inputs[1] {
                return Err(Error::InvalidCircuit(format!("gate {j} repeats an input")));
            }
        }
        if self.output != self.n + self.gates.len() - 1 {
            return Err(Error::InvalidCircuit(
                "output must be the last gate's wire".into(),
            ));
        }
        Ok(())
    }

    /// Number of gates, `m`.
    pub fn m(&self) -> usize {
        self.gates.len()
    }

    /// All `n + m` wire values.
    pub fn wires(&self, input: &[bool]) -> Result<Vec<bool>> {
        if input.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: input.len(),
            });
        }
        let mut w = input.to_vec();
        for g in &self.gates {
            let v = match g.kind {
                GateKind::Not => !w[g.inputs[0]],
                GateKind::And => w[g.inputs[0]] && w[g.inputs[1]],
                GateKind::Or => w[g.inputs[0]] || w[g.inputs[1]],
            };
            w.push(v);
        }
        Ok(w)
    }

    pub fn eval(&self, input: &[bool]) -> Result<bool> {
        Ok(self.wires(input)?[self.output])
    }

    /// True when every gate is AND or OR.
    pub fn is_monotone(&self) -> bool {
        self.gates.iter().all(|g| g.kind != GateKind::Not)
    }
}

/// An MMSA instance: accept iff some input of weight `<= g` satisfies the
/// circuit; reject iff every accepted input has weight `>= g'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MmsaInstance {
    pub circuit: MonotoneCircuit,
    pub g: usize,
    pub gprime: usize,
}

impl MmsaInstance {
    pub fn new(circuit: MonotoneCircuit, g: usize, gprime: usize) -> Result<Self> {
        circuit.check()?;
        if g > gprime || gprime > circuit.n {
            return Err(Error::Domain(format!(
                "need g <= g' <= n, got g={g}, g'={gprime}, n={}",
                circuit.n
            )));
        }
        Ok(MmsaInstance { circuit, g, gprime })
    }

    /// Smallest Hamming weight of an accepted input, by enumeration.
    pub fn min_accepted_weight(&self) -> Result<Option<usize>> {
        let n = self.circuit.n;
        if n > 24 {
            return Err(Error::ResourceLimit {
                what: "input enumeration",
                qubits: n,
                limit: 24,
            });
        }
        let mut best: Option<usize> = None;
        for x in 0..1usize << n {
            let bits: Vec<bool> = (0..n).map(|i| (x >> i) & 1 == 1).collect();
            if self.circuit.eval(&bits)? {
                let w = x.count_ones() as usize;
                best = Some(best.map_or(w, |b| b.min(w)));
            }
        }
        Ok(best)
    }
}
