//! The `qreduce` command line.
//!
//! Exit status: 0 on success, 1 when a verification fails (the verdict is
//! still printed), 2 for usage errors, 3 for any other error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::br::{compile_br, honest_br_path, BrOptions};
use crate::circuit::{acceptance_probability, Gate, ProofInput, QmsaInstance, QuantumCircuit};
use crate::classical::{bfs_shortest_path, validate_br_path, xflip_lower_bound};
use crate::error::{Error, Result};
use crate::formats::*;
use crate::gscon::{compile_gscon, honest_gscon_path, GsconOptions};
use crate::gse::{compile_gse, GseOptions};
use crate::kitaev::{compile_kitaev, lemma1_bounds};
use crate::monotone::MmsaInstance;
use crate::verify::{ground_energy, verify_gscon_path, EigenOptions, PathOptions};

#[derive(Parser, Debug)]
#[command(
    name = "qreduce",
    version,
    about = "Compile and audit Hamiltonian and reconfiguration instances"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Io {
    /// Input document (JSON or extended DIMACS).
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Thresholds {
    #[arg(long)]
    g: usize,
    #[arg(long)]
    gprime: usize,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Circuit JSON to Kitaev Hamiltonian JSON.
    CompileKitaev {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Verifier circuit JSON to a GSCON instance.
    CompileGscon {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        th: Thresholds,
    },
    /// Verifier circuit JSON to a GSE instance.
    CompileGse {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        th: Thresholds,
    },
    /// Monotone circuit JSON to extended DIMACS (JSON when `--out` ends in .json).
    CompileBr {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        gprime: usize,
    },
    /// Completeness path for a GSCON or BR instance.
    HonestPath {
        #[command(flatten)]
        io: Io,
    },
    /// Check a path document against an instance.
    VerifyPath {
        #[command(flatten)]
        io: Io,
        /// Path document produced by `honest-path`.
        path: PathBuf,
    },
    /// Lowest eigenvalue of a Hamiltonian, Kitaev, GSCON or GSE document.
    GroundEnergy {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        dense_limit: Option<usize>,
    },
    /// Entanglement of GSE history states across `A = E u F`.
    Entropy {
        #[command(flatten)]
        io: Io,
    },
    /// Exact shortest reconfiguration length of a BR instance.
    Bfs {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = 10_000_000)]
        budget: usize,
    },
    /// Fewest X / XX gates to prepare a weight-g' proof in a GSCON instance.
    XflipBound {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = 10_000_000)]
        budget: usize,
    },
    /// Sizes and gap ratios of GSCON, GSE and BR documents (file or directory).
    Report {
        #[command(flatten)]
        io: Io,
    },
}

/// Run the command line on `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            3
        }
    }
}

fn read(p: &Path) -> Result<String> {
    Ok(fs::read_to_string(p)?)
}

fn load(p: &Path) -> Result<Document> {
    parse_document(&read(p)?)
}

fn emit(out: &mut dyn Write, dest: &Option<PathBuf>, text: &str) -> Result<()> {
    match dest {
        Some(p) => fs::write(p, text)?,
        None => {
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                out.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn emit_json<S: Serialize>(out: &mut dyn Write, dest: &Option<PathBuf>, v: &S) -> Result<()> {
    emit(out, dest, &serde_json::to_string_pretty(v)?)
}

fn circuit_from(doc: Document) -> Result<QuantumCircuit> {
    match doc {
        Document::Circuit(c) => c.to_circuit(),
        other => Err(Error::Parse(format!(
            "expected a circuit document, got `{}`",
            other.kind()
        ))),
    }
}

fn all_bits(n: usize) -> Result<impl Iterator<Item = Vec<bool>>> {
    if n > 20 {
        return Err(Error::ResourceLimit {
            what: "proof enumeration",
            qubits: n,
            limit: 20,
        });
    }
    Ok((0..1usize << n).map(move |x| (0..n).map(|i| (x >> i) & 1 == 1).collect()))
}

fn weight(b: &[bool]) -> usize {
    b.iter().filter(|&&x| x).count()
}

/// Best-accepted basis proof of weight at most `g`.
fn best_proof(v: &QuantumCircuit, g: usize) -> Result<Vec<bool>> {
    let mut best: Option<(f64, usize, Vec<bool>)> = None;
    for p in all_bits(v.proof_len())? {
        let w = weight(&p);
        if w > g {
            continue;
        }
        let a = acceptance_probability(v, &ProofInput::Basis(p.clone()))?;
        let better = match &best {
            None => true,
            Some((ba, bw, _)) => a > ba + 1e-12 || ((a - ba).abs() <= 1e-12 && w < *bw),
        };
        if better {
            best = Some((a, w, p));
        }
    }
    match best {
        Some((a, _, p)) if a > 0.5 => Ok(p),
        _ => Err(Error::Precondition(format!(
            "no proof of weight <= {g} is accepted"
        ))),
    }
}

fn dispatch(cmd: Cmd, out: &mut dyn Write) -> Result<bool> {
    match cmd {
        Cmd::CompileKitaev { io, eps } => {
            let c = circuit_from(load(&io.input)?)?;
            let k = compile_kitaev(&c)?;
            let eps = match eps {
                Some(e) => e,
                None => crate::circuit::measured_epsilon(&c)?,
            };
            let mut doc = KitaevDoc::from_kitaev(&k);
            doc.bounds = Some(lemma1_bounds(k.t(), eps)?);
            doc.epsilon = Some(eps);
            emit(out, &io.out, &Document::Kitaev(doc).to_json()?)?;
        }
        Cmd::CompileGscon { io, th } => {
            let c = circuit_from(load(&io.input)?)?;
            let q = QmsaInstance::new(c, th.g, th.gprime)?;
            let inst = compile_gscon(
                &q,
                &GsconOptions {
                    mu: th.mu,
                    epsilon: th.eps,
                },
            )?;
            let doc = GsconDoc::from_instance(&inst, Some(&q.verifier()?));
            emit(out, &io.out, &Document::Gscon(doc).to_json()?)?;
        }
        Cmd::CompileGse { io, th } => {
            let c = circuit_from(load(&io.input)?)?;
            let q = QmsaInstance::new(c, th.g, th.gprime)?;
            let inst = compile_gse(
                &q,
                &GseOptions {
                    mu: th.mu,
                    epsilon: th.eps,
                },
            )?;
            emit(
                out,
                &io.out,
                &Document::Gse(GseDoc::from_instance(&inst)).to_json()?,
            )?;
        }
        Cmd::CompileBr { io, g, gprime } => {
            let c = match load(&io.input)? {
                Document::Monotone(c) => c,
                other => {
                    return Err(Error::Parse(format!(
                        "expected a monotone circuit, got `{}`",
                        other.kind()
                    )))
                }
            };
            let q = MmsaInstance::new(c, g, gprime)?;
            let inst = compile_br(&q, &BrOptions::default())?;
            let doc = BrDoc::from_instance(&inst, Some(&q.circuit));
            let json = io
                .out
                .as_ref()
                .is_some_and(|p| p.extension().is_some_and(|e| e == "json"));
            let text = if json {
                Document::Br(doc).to_json()?
            } else {
                write_dimacs(&doc)?
            };
            emit(out, &io.out, &text)?;
        }
        Cmd::HonestPath { io } => {
            let doc = match load(&io.input)? {
                Document::Gscon(d) => {
                    let v = d
                        .verifier
                        .as_ref()
                        .ok_or_else(|| {
                            Error::Precondition("instance does not embed its verifier".into())
                        })?
                        .to_circuit()?;
                    let inst = d.to_instance()?;
                    let p = best_proof(&v, inst.g)?;
                    let gates = honest_gscon_path(&inst, &p)?;
                    PathDoc {
                        proof: bits_to_string(&p),
                        length: gates.len(),
                        allowed: inst.m,
                        path: PathBody::Gates(gates.iter().map(GateDoc::from_gate).collect()),
                    }
                }
                Document::Br(d) => {
                    let c = d.circuit.clone().ok_or_else(|| {
                        Error::Precondition("instance does not embed its circuit".into())
                    })?;
                    let inst = d.to_instance()?;
                    let x = all_bits(c.n)?
                        .filter(|x| weight(x) <= inst.g)
                        .filter(|x| c.eval(x).unwrap_or(false))
                        .min_by_key(|x| weight(x))
                        .ok_or_else(|| {
                            Error::Precondition(format!(
                                "no input of weight <= {} is accepted",
                                inst.g
                            ))
                        })?;
                    let flips = honest_br_path(&inst, &c, &x)?;
                    PathDoc {
                        proof: bits_to_string(&x),
                        length: flips.len(),
                        allowed: inst.h,
                        path: PathBody::Flips(flips),
                    }
                }
                other => {
                    return Err(Error::Unsupported(format!(
                        "no honest path for `{}`",
                        other.kind()
                    )))
                }
            };
            emit(out, &io.out, &Document::Path(doc).to_json()?)?;
        }
        Cmd::VerifyPath { io, path } => {
            let p = match load(&path)? {
                Document::Path(p) => p,
                other => {
                    return Err(Error::Parse(format!(
                        "expected a path document, got `{}`",
                        other.kind()
                    )))
                }
            };
            // an empty list parses as either kind
            let ok = match (load(&io.input)?, &p.path) {
                (Document::Gscon(d), body) => {
                    let inst = d.to_instance()?;
                    let gates = match body {
                        PathBody::Gates(gs) => gs
                            .iter()
                            .map(GateDoc::to_gate)
                            .collect::<Result<Vec<Gate>>>()?,
                        PathBody::Flips(f) if f.is_empty() => vec![],
                        PathBody::Flips(_) => {
                            return Err(Error::Parse("GSCON paths are gate lists".into()))
                        }
                    };
                    let mut v = verify_gscon_path(&inst, &gates, &PathOptions::default())?;
                    v.energies.clear();
                    emit_json(out, &io.out, &v)?;
                    v.ok
                }
                (Document::Br(d), body) => {
                    let flips = match body {
                        PathBody::Flips(f) => f.clone(),
                        PathBody::Gates(g) if g.is_empty() => vec![],
                        PathBody::Gates(_) => {
                            return Err(Error::Parse("BR paths are flip lists".into()))
                        }
                    };
                    let v = validate_br_path(&d.to_instance()?, &flips);
                    emit_json(out, &io.out, &v)?;
                    v.ok
                }
                (doc, _) => {
                    return Err(Error::Unsupported(format!(
                        "cannot check a path on `{}`",
                        doc.kind()
                    )))
                }
            };
            return Ok(ok);
        }
        Cmd::GroundEnergy {
            io,
            mu,
            seed,
            dense_limit,
        } => {
            let (terms, n) = match load(&io.input)? {
                Document::Hamiltonian(h) => (h.terms()?, h.n_qubits),
                Document::Kitaev(k) => {
                    let kh = k.to_kitaev()?;
                    let t = match mu {
                        Some(m) => kh.scaled(m),
                        None => kh.terms(),
                    };
                    (t, kh.n_qubits)
                }
                Document::Gscon(g) => {
                    let i = g.to_instance()?;
                    (i.hamiltonian, i.n_qubits)
                }
                Document::Gse(g) => {
                    let i = g.to_instance()?;
                    (i.hamiltonian, i.n_qubits)
                }
                other => {
                    return Err(Error::Unsupported(format!(
                        "no Hamiltonian in `{}`",
                        other.kind()
                    )))
                }
            };
            let mut opts = EigenOptions::default();
            if let Some(s) = seed {
                opts.seed = s;
            }
            if let Some(d) = dense_limit {
                opts.dense_limit = d;
            }
            let gs = ground_energy(&terms, n, &opts)?;
            emit_json(
                out,
                &io.out,
                &json!({"n_qubits": n, "value": gs.value, "residual": gs.residual, "mode": gs.mode}),
            )?;
        }
        Cmd::Entropy { io } => {
            let d = match load(&io.input)? {
                Document::Gse(d) => d,
                other => {
                    return Err(Error::Parse(format!(
                        "expected a gse document, got `{}`",
                        other.kind()
                    )))
                }
            };
            let inst = d.to_instance()?;
            let mut rows = Vec::new();
            for p in all_bits(inst.n)? {
                let st = inst.history_state(&ProofInput::Basis(p.clone()))?;
                let e = inst.entanglement(&st)?;
                let w = weight(&p);
                rows.push(json!({
                    "proof": bits_to_string(&p),
                    "weight": w,
                    "entropy": e.entropy,
                    "schmidt_rank": e.schmidt_rank,
                    "low_weight_entropy_bound": if w <= inst.g { Some(inst.g as f64 + 1.0) } else { None },
                    "low_weight_rank_bound": if w <= inst.g { Some((1usize << inst.g) + inst.g) } else { None },
                    "high_weight_entropy_floor": if w >= 1 { Some((w as f64 + 1.0) / 4.0) } else { None },
                }));
            }
            emit_json(
                out,
                &io.out,
                &json!({"n_qubits": inst.n_qubits, "g": inst.g, "gprime": inst.gprime, "proofs": rows}),
            )?;
        }
        Cmd::Bfs { io, budget } => {
            let inst = d_to_br(&load(&io.input)?)?;
            let r = bfs_shortest_path(&inst.formula, &inst.start, &inst.target, budget)?;
            emit_json(
                out,
                &io.out,
                &json!({"result": r, "h": inst.h, "hprime": inst.hprime}),
            )?;
        }
        Cmd::XflipBound { io, budget } => {
            let inst = match load(&io.input)? {
                Document::Gscon(d) => d.to_instance()?,
                other => {
                    return Err(Error::Parse(format!(
                        "expected a gscon document, got `{}`",
                        other.kind()
                    )))
                }
            };
            let r = xflip_lower_bound(&inst, budget)?;
            emit_json(out, &io.out, &r)?;
            return Ok(!r.complete || r.satisfied);
        }
        Cmd::Report { io } => {
            let mut files: Vec<PathBuf> = if io.input.is_dir() {
                fs::read_dir(&io.input)?
                    .map(|e| e.map(|e| e.path()))
                    .collect::<std::io::Result<Vec<_>>>()?
            } else {
                vec![io.input.clone()]
            };
            files.sort();
            let mut rows = Vec::new();
            for f in files {
                let doc = match load(&f) {
                    Ok(d) => d,
                    Err(_) if io.input.is_dir() => continue,
                    Err(e) => return Err(e),
                };
                match report_row(&f.display().to_string(), &doc) {
                    Ok(r) => rows.push(r),
                    Err(Error::Unsupported(_)) if io.input.is_dir() => {}
                    Err(e) => return Err(e),
                }
            }
            emit_json(out, &io.out, &rows)?;
        }
    }
    Ok(true)
}

fn d_to_br(doc: &Document) -> Result<crate::br::BrInstance> {
    match doc {
        Document::Br(d) => d.to_instance(),
        other => Err(Error::Parse(format!(
            "expected a br document, got `{}`",
            other.kind()
        ))),
    }
}
