//! Run reports.
//!
//! Every verb produces one `Report`: what ran, over which inputs (with
//! digests), the dimension vectors of each computation step, the verdicts,
//! and enough witness matrices to re-verify the claims offline. Reports are
//! rendered as pretty JSON with sorted representation keys and no
//! environment-dependent content, so the same config yields byte-identical
//! output. Timing is deliberately kept out of the report (it goes to
//! stderr) for exactly that reason.

use serde::Serialize;
use sha2::{Digest, Sha256};

use phyla::phylum::Phylum;
use phyla::rep::RepMorphism;
use phyla::Matrix;

use crate::formats::{to_json_string, MatrixFile, RepresentationFile};

#[derive(Serialize, Clone, Debug)]
pub struct InputRecord {
    /// Path of the file, or `fixture:<name>` for built-in inputs.
    pub source: String,
    pub sha256: String,
}

/// One computation step and the dimension vector (per vertex) it produced.
#[derive(Serialize, Clone, Debug)]
pub struct Step {
    pub name: String,
    pub dims: Vec<usize>,
}

#[derive(Serialize, Clone, Debug)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct Witness {
    pub name: String,
    pub matrix: MatrixFile,
}

#[derive(Serialize, Clone, Debug)]
pub struct Report {
    pub verb: String,
    pub prime: u64,
    pub seed: u64,
    pub max_dim: usize,
    pub fixture: Option<String>,
    pub inputs: Vec<InputRecord>,
    pub steps: Vec<Step>,
    pub verdicts: Vec<Verdict>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    /// Computed representations (values of functors, resolution terms,
    /// summands, catalogue members...) in the same file format the verbs
    /// accept, so a report can feed the next invocation.
    pub results: Vec<RepresentationFile>,
    /// True when every verdict passed. Drives the exit code.
    pub overall: bool,
}

impl Report {
    pub fn new(verb: &str, prime: u64, seed: u64, max_dim: usize, fixture: Option<String>) -> Report {
        Report {
            verb: verb.to_string(),
            prime,
            seed,
            max_dim,
            fixture,
            inputs: Vec::new(),
            steps: Vec::new(),
            verdicts: Vec::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
            results: Vec::new(),
            overall: true,
        }
    }

    pub fn input(&mut self, source: &str, bytes: &[u8]) {
        self.inputs.push(InputRecord { source: source.to_string(), sha256: sha256_hex(bytes) });
    }

    pub fn step(&mut self, name: &str, dims: Vec<usize>) {
        self.steps.push(Step { name: name.to_string(), dims });
    }

    pub fn verdict(&mut self, name: &str, pass: bool, detail: &str) {
        self.verdicts.push(Verdict { name: name.to_string(), pass, detail: detail.to_string() });
    }

    pub fn note(&mut self, text: String) {
        self.notes.push(text);
    }

    pub fn witness(&mut self, name: &str, m: &Matrix) {
        self.witnesses.push(Witness { name: name.to_string(), matrix: MatrixFile::of(m) });
    }

    /// Records a representation morphism as one witness per vertex.
    pub fn witness_morphism(&mut self, name: &str, ph: &Phylum, f: &RepMorphism) {
        for (v, m) in ph.shape().vertices.iter().zip(&f.maps) {
            self.witness(&format!("{name}[{v}]"), m);
        }
    }

    /// Settles `overall` from the recorded verdicts.
    pub fn finish(&mut self) {
        self.overall = self.verdicts.iter().all(|v| v.pass);
    }

    pub fn render(&self) -> String {
        to_json_string(self)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}
