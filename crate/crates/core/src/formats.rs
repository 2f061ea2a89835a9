//! JSON documents, extended DIMACS, and the size/ratio report.
//!
//! Every JSON document carries a `kind` tag. Bit strings are written with
//! character `q` holding bit `q`. Matrices are row-major lists of `[re, im]`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::br::{BrInstance, BrLayout, VarRole};
use crate::circuit::{Gate, QuantumCircuit, Registers};
use crate::cnf::{Clause, Cnf, Lit};
use crate::error::{Error, Result};
use crate::gscon::{GsconInstance, GsconRegisters};
use crate::gse::{GseInstance, GseLayout};
use crate::hamiltonian::{LocalTerm, TermTag};
use crate::kitaev::{KitaevHamiltonian, Lemma1Bounds};
use crate::linalg::CMat;
use crate::monotone::MonotoneCircuit;
use crate::C64;

pub type MatrixDoc = Vec<Vec<[f64; 2]>>;

pub fn matrix_to_doc(m: &CMat) -> MatrixDoc {
    (0..m.nrows())
        .map(|r| {
            (0..m.ncols())
                .map(|c| [m[(r, c)].re, m[(r, c)].im])
                .collect()
        })
        .collect()
}

pub fn matrix_from_doc(d: &MatrixDoc) -> Result<CMat> {
    let n = d.len();
    if n == 0 || d.iter().any(|r| r.len() != n) {
        return Err(Error::Parse("matrix must be square and non-empty".into()));
    }
    Ok(CMat::from_fn(n, n, |r, c| C64::new(d[r][c][0], d[r][c][1])))
}

pub fn bits_to_string(b: &[bool]) -> String {
    b.iter().map(|&x| if x { '1' } else { '0' }).collect()
}

pub fn bits_from_string(s: &str) -> Result<Vec<bool>> {
    s.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Parse(format!("bad bit character {c:?}"))),
        })
        .collect()
}

/// A gate, either by explicit block or by name (`X`, `H`, `I`, `RY`,
/// `CNOT`, `XX`, `TOFFOLI`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateDoc {
    pub support: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block: Option<MatrixDoc>,
}

impl GateDoc {
    pub fn from_gate(g: &Gate) -> GateDoc {
        GateDoc {
            support: g.support.clone(),
            name: None,
            theta: None,
            block: Some(matrix_to_doc(&g.block)),
        }
    }

    pub fn to_gate(&self) -> Result<Gate> {
        if let Some(b) = &self.block {
            return Gate::new(self.support.clone(), matrix_from_doc(b)?);
        }
        let name = self
            .name
            .as_deref()
            .ok_or_else(|| Error::Parse("gate needs a block or a name".into()))?
            .to_ascii_uppercase();
        let s = &self.support;
        let want = |k: usize| -> Result<()> {
            if s.len() == k {
                Ok(())
            } else {
                Err(Error::Parse(format!("{name} needs {k} qubits")))
            }
        };
        Ok(match name.as_str() {
            "X" => {
                want(1)?;
                Gate::x(s[0])
            }
            "H" => {
                want(1)?;
                Gate::h(s[0])
            }
            "I" => {
                want(1)?;
                Gate::identity(s[0])
            }
            "RY" => {
                want(1)?;
                let t = self
                    .theta
                    .ok_or_else(|| Error::Parse("RY needs theta".into()))?;
                Gate::ry(s[0], t)
            }
            "CNOT" | "CX" => {
                want(2)?;
                Gate::cnot(s[0], s[1])
            }
            "XX" => {
                want(2)?;
                Gate::xx(s[0], s[1])
            }
            "TOFFOLI" | "CCX" => {
                want(3)?;
                Gate::toffoli(s[0], s[1], s[2])
            }
            _ => return Err(Error::Parse(format!("unknown gate name {name}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitDoc {
    pub width: usize,
    pub registers: Registers,
    pub gates: Vec<GateDoc>,
}

impl CircuitDoc {
    pub fn from_circuit(c: &QuantumCircuit) -> CircuitDoc {
        CircuitDoc {
            width: c.width,
            registers: c.registers.clone(),
            gates: c.gates.iter().map(GateDoc::from_gate).collect(),
        }
    }

    pub fn to_circuit(&self) -> Result<QuantumCircuit> {
        let gates = self
            .gates
            .iter()
            .map(GateDoc::to_gate)
            .collect::<Result<Vec<_>>>()?;
        QuantumCircuit::new(self.width, self.registers.clone(), gates)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub support: Vec<usize>,
    pub block: MatrixDoc,
    pub coeff: f64,
    pub tag: TermTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl TermDoc {
    pub fn from_term(t: &LocalTerm) -> TermDoc {
        TermDoc {
            support: t.support.clone(),
            block: matrix_to_doc(&t.block),
            coeff: t.coeff,
            tag: t.tag,
            label: t.label.clone(),
        }
    }

    pub fn to_term(&self) -> Result<LocalTerm> {
        let t = LocalTerm {
            support: self.support.clone(),
            block: matrix_from_doc(&self.block)?,
            coeff: self.coeff,
            tag: self.tag,
            label: self.label.clone(),
        };
        t.check()?;
        Ok(t)
    }
}

fn terms_to_doc(ts: &[LocalTerm]) -> Vec<TermDoc> {
    ts.iter().map(TermDoc::from_term).collect()
}

fn terms_from_doc(ts: &[TermDoc]) -> Result<Vec<LocalTerm>> {
    ts.iter().map(TermDoc::to_term).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianDoc {
    pub n_qubits: usize,
    pub terms: Vec<TermDoc>,
}

impl HamiltonianDoc {
    pub fn new(n_qubits: usize, terms: &[LocalTerm]) -> HamiltonianDoc {
        HamiltonianDoc {
            n_qubits,
            terms: terms_to_doc(terms),
        }
    }

    pub fn terms(&self) -> Result<Vec<LocalTerm>> {
        terms_from_doc(&self.terms)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KitaevDoc {
    pub circuit: CircuitDoc,
    pub clock: Range<usize>,
    pub n_qubits: usize,
    pub input: Vec<TermDoc>,
    pub prop: Vec<TermDoc>,
    pub output: Vec<TermDoc>,
    pub stab: Vec<TermDoc>,
    pub padded: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Lemma1Bounds>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
}

impl KitaevDoc {
    pub fn from_kitaev(k: &KitaevHamiltonian) -> KitaevDoc {
        KitaevDoc {
            circuit: CircuitDoc::from_circuit(&k.circuit),
            clock: k.clock.clone(),
            n_qubits: k.n_qubits,
            input: terms_to_doc(&k.input),
            prop: terms_to_doc(&k.prop),
            output: terms_to_doc(&k.output),
            stab: terms_to_doc(&k.stab),
            padded: k.padded,
            bounds: None,
            epsilon: None,
        }
    }

    pub fn to_kitaev(&self) -> Result<KitaevHamiltonian> {
        Ok(KitaevHamiltonian {
            circuit: self.circuit.to_circuit()?,
            clock: self.clock.clone(),
            n_qubits: self.n_qubits,
            input: terms_from_doc(&self.input)?,
            prop: terms_from_doc(&self.prop)?,
            output: terms_from_doc(&self.output)?,
            stab: terms_from_doc(&self.stab)?,
            padded: self.padded,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GsconDoc {
    pub n_qubits: usize,
    pub registers: BTreeMap<String, Range<usize>>,
    pub hamiltonian: Vec<TermDoc>,
    pub start: String,
    pub target: String,
    pub m: usize,
    pub mprime: usize,
    pub eta: [f64; 4],
    pub mu: f64,
    pub n: usize,
    pub g: usize,
    pub gprime: usize,
    pub epsilon: f64,
    pub alpha: f64,
    pub beta: f64,
    pub kitaev_t: usize,
    pub prep: CircuitDoc,
    /// The verifier the instance was compiled from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verifier: Option<CircuitDoc>,
}

impl GsconDoc {
    pub fn from_instance(i: &GsconInstance, verifier: Option<&QuantumCircuit>) -> GsconDoc {
        GsconDoc {
            n_qubits: i.n_qubits,
            registers: i
                .registers
                .named()
                .into_iter()
                .map(|(k, r)| (k.to_string(), r))
                .collect(),
            hamiltonian: terms_to_doc(&i.hamiltonian),
            start: bits_to_string(&i.start),
            target: bits_to_string(&i.target),
            m: i.m,
            mprime: i.mprime,
            eta: i.eta,
            mu: i.mu,
            n: i.n,
            g: i.g,
            gprime: i.gprime,
            epsilon: i.epsilon,
            alpha: i.alpha,
            beta: i.beta,
            kitaev_t: i.kitaev_t,
            prep: CircuitDoc::from_circuit(&i.prep),
            verifier: verifier.map(CircuitDoc::from_circuit),
        }
    }

    pub fn to_instance(&self) -> Result<GsconInstance> {
        let r = |k: &str| {
            self.registers
                .get(k)
                .cloned()
                .ok_or_else(|| Error::Parse(format!("missing register {k}")))
        };
        let registers = GsconRegisters {
            b: r("B")?,
            c: r("C")?,
            d: r("D")?,
            e: r("E")?,
            f: r("F")?,
            g: r("G")?,
            k: r("K")?,
            l: r("L")?,
            m: r("M")?,
        };
        let start = bits_from_string(&self.start)?;
        let target = bits_from_string(&self.target)?;
        if start.len() != self.n_qubits
            || target.len() != self.n_qubits
            || registers.total() != self.n_qubits
        {
            return Err(Error::Parse("register sizes disagree with n_qubits".into()));
        }
        Ok(GsconInstance {
            hamiltonian: terms_from_doc(&self.hamiltonian)?,
            registers,
            n_qubits: self.n_qubits,
            start,
            target,
            m: self.m,
            mprime: self.mprime,
            eta: self.eta,
            mu: self.mu,
            n: self.n,
            g: self.g,
            gprime: self.gprime,
            epsilon: self.epsilon,
            alpha: self.alpha,
            beta: self.beta,
            kitaev_t: self.kitaev_t,
            prep: self.prep.to_circuit()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GseDoc {
    pub n_qubits: usize,
    pub layout: BTreeMap<String, Range<usize>>,
    pub hamiltonian: Vec<TermDoc>,
    pub kitaev: KitaevDoc,
    pub w: CircuitDoc,
    pub partition_a: Vec<usize>,
    pub eta: [f64; 4],
    pub mu: f64,
    pub t_prime: usize,
    pub n: usize,
    pub g: usize,
    pub gprime: usize,
    pub epsilon: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl GseDoc {
    pub fn from_instance(i: &GseInstance) -> GseDoc {
        let l = &i.layout;
        let layout = [
            ("B", &l.b),
            ("C", &l.c),
            ("E", &l.e),
            ("E2", &l.e2),
            ("F", &l.f),
            ("F2", &l.f2),
            ("D", &l.d),
        ]
        .into_iter()
        .map(|(k, r)| (k.to_string(), r.clone()))
        .collect();
        GseDoc {
            n_qubits: i.n_qubits,
            layout,
            hamiltonian: terms_to_doc(&i.hamiltonian),
            kitaev: KitaevDoc::from_kitaev(&i.kitaev),
            w: CircuitDoc::from_circuit(&i.w),
            partition_a: i.partition_a.clone(),
            eta: i.eta,
            mu: i.mu,
            t_prime: i.t_prime,
            n: i.n,
            g: i.g,
            gprime: i.gprime,
            epsilon: i.epsilon,
            alpha: i.alpha,
            beta: i.beta,
        }
    }

    pub fn to_instance(&self) -> Result<GseInstance> {
        let r = |k: &str| {
            self.layout
                .get(k)
                .cloned()
                .ok_or_else(|| Error::Parse(format!("missing register {k}")))
        };
        Ok(GseInstance {
            hamiltonian: terms_from_doc(&self.hamiltonian)?,
            kitaev: self.kitaev.to_kitaev()?,
            w: self.w.to_circuit()?,
            layout: GseLayout {
                b: r("B")?,
                c: r("C")?,
                e: r("E")?,
                e2: r("E2")?,
                f: r("F")?,
                f2: r("F2")?,
                d: r("D")?,
            },
            partition_a: self.partition_a.clone(),
            eta: self.eta,
            mu: self.mu,
            t_prime: self.t_prime,
            n_qubits: self.n_qubits,
            n: self.n,
            g: self.g,
            gprime: self.gprime,
            epsilon: self.epsilon,
            alpha: self.alpha,
            beta: self.beta,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BrDoc {
    pub formula: Cnf,
    pub roles: Vec<VarRole>,
    pub start: String,
    pub target: String,
    pub h: usize,
    pub hprime: usize,
    pub g: usize,
    pub gprime: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuit: Option<MonotoneCircuit>,
}

impl BrDoc {
    pub fn from_instance(i: &BrInstance, circuit: Option<&MonotoneCircuit>) -> BrDoc {
        BrDoc {
            formula: i.formula.clone(),
            roles: i.roles.clone(),
            start: bits_to_string(&i.start),
            target: bits_to_string(&i.target),
            h: i.h,
            hprime: i.hprime,
            g: i.g,
            gprime: i.gprime,
            circuit: circuit.cloned(),
        }
    }

    pub fn to_instance(&self) -> Result<BrInstance> {
        self.formula.check()?;
        let layout = BrLayout::from_roles(&self.roles)?;
        let start = bits_from_string(&self.start)?;
        let target = bits_from_string(&self.target)?;
        if layout.total() != self.formula.n_vars
            || start.len() != layout.total()
            || target.len() != layout.total()
        {
            return Err(Error::Parse(
                "assignment length disagrees with the formula".into(),
            ));
        }
        let n = layout.f.len();
        let m = layout.y.len() - n;
        Ok(BrInstance {
            formula: self.formula.clone(),
            roles: self.roles.clone(),
            layout,
            start,
            target,
            h: self.h,
            hprime: self.hprime,
            n,
            m,
            g: self.g,
            gprime: self.gprime,
        })
    }
}

/// A gate path or a flip path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PathBody {
    Gates(Vec<GateDoc>),
    Flips(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathDoc {
    pub proof: String,
    pub length: usize,
    pub allowed: usize,
    pub path: PathBody,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Document {
    Circuit(CircuitDoc),
    Monotone(MonotoneCircuit),
    Hamiltonian(HamiltonianDoc),
    Kitaev(KitaevDoc),
    Gscon(GsconDoc),
    Gse(GseDoc),
    Br(BrDoc),
    Path(PathDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Circuit(_) => "circuit",
            Document::Monotone(_) => "monotone",
            Document::Hamiltonian(_) => "hamiltonian",
            Document::Kitaev(_) => "kitaev",
            Document::Gscon(_) => "gscon",
            Document::Gse(_) => "gse",
            Document::Br(_) => "br",
            Document::Path(_) => "path",
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Parse a JSON document or an extended DIMACS file.
pub fn parse_document(text: &str) -> Result<Document> {
    let t = text.trim_start();
    if t.starts_with('{') {
        return Ok(serde_json::from_str(t)?);
    }
    let d = parse_dimacs(text)?;
    Ok(Document::Br(d.to_br_doc()?))
}

/// DIMACS body plus the metadata carried in `c` lines.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Dimacs {
    pub cnf: Cnf,
    pub roles: Vec<(usize, VarRole)>,
    pub start: Option<Vec<bool>>,
    pub target: Option<Vec<bool>>,
    pub h: Option<usize>,
    pub hprime: Option<usize>,
    pub g: Option<usize>,
    pub gprime: Option<usize>,
    pub circuit: Option<MonotoneCircuit>,
}

impl Dimacs {
    pub fn to_br_doc(&self) -> Result<BrDoc> {
        let miss = |w: &str| Error::Parse(format!("DIMACS file lacks `c {w}`"));
        let mut roles = self.roles.clone();
        roles.sort_by_key(|r| r.0);
        if roles.iter().enumerate().any(|(i, r)| r.0 != i) || roles.len() != self.cnf.n_vars {
            return Err(Error::Parse(
                "role lines must cover every variable once".into(),
            ));
        }
        Ok(BrDoc {
            formula: self.cnf.clone(),
            roles: roles.into_iter().map(|r| r.1).collect(),
            start: bits_to_string(self.start.as_ref().ok_or_else(|| miss("start"))?),
            target: bits_to_string(self.target.as_ref().ok_or_else(|| miss("target"))?),
            h: self.h.ok_or_else(|| miss("h"))?,
            hprime: self.hprime.ok_or_else(|| miss("hprime"))?,
            g: self.g.ok_or_else(|| miss("g"))?,
            gprime: self.gprime.ok_or_else(|| miss("gprime"))?,
            circuit: self.circuit.clone(),
        })
    }
}

/// Canonical DIMACS body: the `p` line and one line per clause.
pub fn dimacs_body(f: &Cnf) -> String {
    let mut s = format!("p cnf {} {}\n", f.n_vars, f.clauses.len());
    for c in &f.clauses {
        for l in &c.lits {
            let _ = write!(s, "{} ", l.to_dimacs());
        }
        s.push_str("0\n");
    }
    s
}

pub fn write_dimacs(doc: &BrDoc) -> Result<String> {
    let mut s = String::from("c qreduce boolean reconfiguration\n");
    for (v, r) in doc.roles.iter().enumerate() {
        let _ = writeln!(s, "c role {} {} {}", v + 1, r.role.letter(), r.index);
    }
    let _ = writeln!(s, "c start {}", doc.start);
    let _ = writeln!(s, "c target {}", doc.target);
    let _ = writeln!(s, "c h {}", doc.h);
    let _ = writeln!(s, "c hprime {}", doc.hprime);
    let _ = writeln!(s, "c g {}", doc.g);
    let _ = writeln!(s, "c gprime {}", doc.gprime);
    if let Some(c) = &doc.circuit {
        let _ = writeln!(s, "c circuit {}", serde_json::to_string(c)?);
    }
    s.push_str(&dimacs_body(&doc.formula));
    Ok(s)
}

pub fn parse_dimacs(text: &str) -> Result<Dimacs> {
    let mut d = Dimacs::default();
    let mut header: Option<(usize, usize)> = None;
    let mut pending: Vec<Lit> = Vec::new();
    let mut clauses = Vec::new();
    let num = |w: Option<&str>, what: &str| -> Result<usize> {
        w.and_then(|x| x.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad {what} line")))
    };
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            let rest = rest.trim_start();
            let mut w = rest.split_whitespace();
            match w.next() {
                Some("role") => {
                    let v = num(w.next(), "role")?;
                    let letter = w.next().and_then(|x| x.chars().next());
                    let role = letter
                        .and_then(crate::br::Role::from_letter)
                        .ok_or_else(|| Error::Parse(format!("line {}: unknown role", ln + 1)))?;
                    let index = num(w.next(), "role")?;
                    if v == 0 {
                        return Err(Error::Parse("variables are 1-based".into()));
                    }
                    d.roles.push((v - 1, VarRole { role, index }));
                }
                Some("start") => d.start = Some(bits_from_string(w.next().unwrap_or(""))?),
                Some("target") => d.target = Some(bits_from_string(w.next().unwrap_or(""))?),
                Some("h") => d.h = Some(num(w.next(), "h")?),
                Some("hprime") => d.hprime = Some(num(w.next(), "hprime")?),
                Some("g") => d.g = Some(num(w.next(), "g")?),
                Some("gprime") => d.gprime = Some(num(w.next(), "gprime")?),
                Some("circuit") => {
                    let json = rest.trim_start_matches("circuit").trim();
                    d.circuit = Some(serde_json::from_str(json)?);
                }
                _ => {}
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let mut w = rest.split_whitespace();
            if w.next() != Some("cnf") {
                return Err(Error::Parse("expected `p cnf`".into()));
            }
            header = Some((num(w.next(), "p")?, num(w.next(), "p")?));
            continue;
        }
        let (nv, _) = header.ok_or_else(|| Error::Parse("clause before `p cnf` line".into()))?;
        for tok in line.split_whitespace() {
            let x: i64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad literal {tok}", ln + 1)))?;
            if x == 0 {
                let c = Clause::new(pending.drain(..))
                    .ok_or_else(|| Error::Parse(format!("line {}: tautological clause", ln + 1)))?;
                clauses.push(c);
            } else {
                let var = x.unsigned_abs() as usize - 1;
                if var >= nv {
                    return Err(Error::Parse(format!(
                        "line {}: variable {} out of range",
                        ln + 1,
                        var + 1
                    )));
                }
                pending.push(Lit {
                    var,
                    positive: x > 0,
                });
            }
        }
    }
    let (nv, nc) = header.ok_or_else(|| Error::Parse("missing `p cnf` line".into()))?;
    if !pending.is_empty() {
        return Err(Error::Parse("last clause is not terminated by 0".into()));
    }
    if clauses.len() != nc {
        return Err(Error::Parse(format!(
            "header declares {nc} clauses, found {}",
            clauses.len()
        )));
    }
    d.cnf = Cnf::new(nv, clauses)?;
    Ok(d)
}

/// One line of the approximation report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub source: String,
    pub kind: String,
    /// Byte size of the canonical constraint serialization.
    pub n_prime: usize,
    pub ratio_name: String,
    pub numerator: f64,
    pub denominator: f64,
    pub ratio: f64,
}

fn row(source: &str, kind: &str, n_prime: usize, name: &str, num: f64, den: f64) -> ReportRow {
    ReportRow {
        source: source.to_string(),
        kind: kind.to_string(),
        n_prime,
        ratio_name: name.to_string(),
        numerator: num,
        denominator: den,
        ratio: num / den,
    }
}

/// `N'` for a term list: bytes of its compact JSON.
pub fn terms_size(terms: &[TermDoc]) -> Result<usize> {
    Ok(serde_json::to_string(terms)?.len())
}

/// Size and gap ratio of a GSCON, GSE or BR document.
pub fn report_row(source: &str, doc: &Document) -> Result<ReportRow> {
    match doc {
        Document::Gscon(d) => Ok(row(
            source,
            "gscon",
            terms_size(&d.hamiltonian)?,
            "mprime/m",
            d.mprime as f64,
            d.m as f64,
        )),
        Document::Gse(d) => Ok(row(
            source,
            "gse",
            terms_size(&d.hamiltonian)?,
            "eta4/eta3",
            d.eta[3],
            d.eta[2],
        )),
        Document::Br(d) => Ok(row(
            source,
            "br",
            dimacs_body(&d.formula).len(),
            "hprime/h",
            d.hprime as f64,
            d.h as f64,
        )),
        other => Err(Error::Unsupported(format!(
            "no report for `{}` documents",
            other.kind()
        ))),
    }
}

#[cfg(test)]
mod tests;
