//! JSON interchange formats.
//!
//! Matrices are row-major with explicit dimensions and entries reduced
//! modulo the ambient prime on load. Representation files key their modules
//! by vertex name and their structure maps by arrow name, so they stay
//! readable next to the phylum description and survive arrow reordering. A
//! representation file with a `back_maps` table is a pair (a module over
//! the preprojective extension); without one it is a plain representation,
//! and pair-level verbs treat the absent table as all-zero backward maps.
//!
//! Every loader reports the offending field in its error message; the
//! driver prefixes the file path, which is all the diagnostics a batch tool
//! needs.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use phyla::algebra::{check_bimodule, AlgebraView, Bimodule, LeftModule};
use phyla::phylum::{Phylum, ShapeArrow, ShapeQuiver};
use phyla::preproj::PiRepresentation;
use phyla::rep::Representation;
use phyla::{FieldSpec, Matrix};

/// A matrix with explicit shape. `entries` is row-major and must have
/// exactly `rows * cols` elements; values are reduced mod p on load.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u64>,
}

impl MatrixFile {
    pub fn of(m: &Matrix) -> MatrixFile {
        MatrixFile { rows: m.rows(), cols: m.cols(), entries: m.entries().to_vec() }
    }

    pub fn to_matrix(&self, p: u64, what: &str) -> Result<Matrix, String> {
        if self.entries.len() != self.rows * self.cols {
            return Err(format!(
                "{what}: a {}x{} matrix needs {} entries, found {}",
                self.rows,
                self.cols,
                self.rows * self.cols,
                self.entries.len()
            ));
        }
        Ok(Matrix::new(p, self.rows, self.cols, self.entries.clone()))
    }

    fn to_shaped(&self, p: u64, rows: usize, cols: usize, what: &str) -> Result<Matrix, String> {
        if self.rows != rows || self.cols != cols {
            return Err(format!(
                "{what}: expected a {rows}x{cols} matrix, found {}x{}",
                self.rows, self.cols
            ));
        }
        self.to_matrix(p, what)
    }
}

/// Structure-constant description of a vertex algebra: `left_mul[i]` is the
/// matrix of left multiplication by basis element `i`, `unit` the
/// coefficient column of 1, `idempotents` the basis indices of the
/// primitive orthogonal idempotents, `radical` the basis indices spanning
/// the radical. The loader re-verifies the algebra laws, so a file cannot
/// smuggle in a non-algebra.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub left_mul: Vec<MatrixFile>,
    pub unit: MatrixFile,
    pub idempotents: Vec<usize>,
    pub radical: Vec<usize>,
}

impl AlgebraFile {
    pub fn of(v: &AlgebraView) -> AlgebraFile {
        AlgebraFile {
            dim: v.dim,
            left_mul: v.left_mul.iter().map(MatrixFile::of).collect(),
            unit: MatrixFile::of(&v.unit),
            idempotents: v.idempotents.clone(),
            radical: v.radical.clone(),
        }
    }

    pub fn to_view(&self, p: u64, what: &str) -> Result<AlgebraView, String> {
        let d = self.dim;
        if self.left_mul.len() != d {
            return Err(format!(
                "{what}.left_mul: expected {d} matrices, found {}",
                self.left_mul.len()
            ));
        }
        let mut left_mul = Vec::with_capacity(d);
        for (i, m) in self.left_mul.iter().enumerate() {
            left_mul.push(m.to_shaped(p, d, d, &format!("{what}.left_mul[{i}]"))?);
        }
        let unit = self.unit.to_shaped(p, d, 1, &format!("{what}.unit"))?;
        for (name, list) in [("idempotents", &self.idempotents), ("radical", &self.radical)] {
            if let Some(&bad) = list.iter().find(|&&i| i >= d) {
                return Err(format!("{what}.{name}: index {bad} out of range for dim {d}"));
            }
        }
        let view = AlgebraView {
            p,
            dim: d,
            left_mul,
            unit,
            idempotents: self.idempotents.clone(),
            radical: self.radical.clone(),
        };
        check_algebra_laws(&view, what)?;
        Ok(view)
    }
}

/// The algebra laws a structure-constant file must satisfy. Mirrors what
/// the builder verifies for its own output: associativity as
/// L(x)L(y) = L(xy), both unit laws, idempotency and the unit
/// decomposition, and the radical being a nilpotent two-sided ideal.
fn check_algebra_laws(v: &AlgebraView, what: &str) -> Result<(), String> {
    let d = v.dim;
    let p = v.p;
    for i in 0..d {
        for j in 0..d {
            let mut expected = Matrix::zero(p, d, d);
            for k in 0..d {
                let c = v.left_mul[i].get(k, j);
                if c != 0 {
                    expected = expected.add(&v.left_mul[k].scale(c));
                }
            }
            if v.left_mul[i].mul(&v.left_mul[j]) != expected {
                return Err(format!("{what}: associativity fails on basis pair ({i}, {j})"));
            }
        }
    }
    if !v.left_mul_by(&v.unit).is_identity() {
        return Err(format!("{what}.unit: left unit law fails"));
    }
    for i in 0..d {
        if v.left_mul[i].mul(&v.unit) != elementary(p, d, i) {
            return Err(format!("{what}.unit: right unit law fails on basis element {i}"));
        }
    }
    let mut sum = Matrix::zero(p, d, d);
    for &t in &v.idempotents {
        if v.left_mul[t].mul(&v.left_mul[t]) != v.left_mul[t] {
            return Err(format!("{what}.idempotents: basis element {t} is not idempotent"));
        }
        sum = sum.add(&v.left_mul[t]);
    }
    if !sum.is_identity() {
        return Err(format!("{what}.idempotents: the listed elements do not sum to the unit"));
    }
    let in_radical_span = |col: &Matrix| -> bool {
        (0..d).all(|k| col.get(k, 0) == 0 || v.radical.contains(&k))
    };
    for &r in &v.radical {
        for i in 0..d {
            if !in_radical_span(&v.left_mul[i].column(r))
                || !in_radical_span(&v.left_mul[r].column(i))
            {
                return Err(format!("{what}.radical: not a two-sided ideal at element {r}"));
            }
        }
    }
    // Nilpotency: iterate radical products until they vanish.
    let mut span: Vec<Matrix> = v.radical.iter().map(|&r| elementary(p, d, r)).collect();
    for _ in 0..=d {
        if span.is_empty() {
            break;
        }
        let refs: Vec<&Matrix> = span.iter().collect();
        let joint = Matrix::hstack(p, d, &refs);
        if joint.rank() == 0 {
            span.clear();
            break;
        }
        let mut next = Vec::new();
        for &r in &v.radical {
            for col in &span {
                let prod = v.left_mul[r].mul(col);
                if !prod.is_zero() {
                    next.push(prod);
                }
            }
        }
        span = next;
    }
    if !span.is_empty() {
        let refs: Vec<&Matrix> = span.iter().collect();
        if Matrix::hstack(p, d, &refs).rank() != 0 {
            return Err(format!("{what}.radical: the listed span is not nilpotent"));
        }
    }
    Ok(())
}

fn elementary(p: u64, d: usize, i: usize) -> Matrix {
    let mut e = Matrix::zero(p, d, 1);
    e.set(i, 0, 1);
    e
}

/// An arrow bimodule: `left_action[i]` is the action of target-algebra
/// basis element `i`, `right_action[j]` of source-algebra basis element
/// `j`, both as matrices on the bimodule's coordinate space.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct BimoduleFile {
    pub dim: usize,
    pub left_action: Vec<MatrixFile>,
    pub right_action: Vec<MatrixFile>,
}

impl BimoduleFile {
    pub fn of(b: &Bimodule) -> BimoduleFile {
        BimoduleFile {
            dim: b.dim,
            left_action: b.left_action.iter().map(MatrixFile::of).collect(),
            right_action: b.right_action.iter().map(MatrixFile::of).collect(),
        }
    }

    pub fn to_bimodule(
        &self,
        p: u64,
        dst: &AlgebraView,
        src: &AlgebraView,
        what: &str,
    ) -> Result<Bimodule, String> {
        let d = self.dim;
        for (name, list, alg_dim) in [
            ("left_action", &self.left_action, dst.dim),
            ("right_action", &self.right_action, src.dim),
        ] {
            if list.len() != alg_dim {
                return Err(format!(
                    "{what}.{name}: expected {alg_dim} matrices, found {}",
                    list.len()
                ));
            }
        }
        let mut left_action = Vec::with_capacity(dst.dim);
        for (i, m) in self.left_action.iter().enumerate() {
            left_action.push(m.to_shaped(p, d, d, &format!("{what}.left_action[{i}]"))?);
        }
        let mut right_action = Vec::with_capacity(src.dim);
        for (j, m) in self.right_action.iter().enumerate() {
            right_action.push(m.to_shaped(p, d, d, &format!("{what}.right_action[{j}]"))?);
        }
        let b = Bimodule { p, dim: d, left_action, right_action };
        check_bimodule(dst, src, &b).map_err(|e| format!("{what}: {e:?}"))?;
        Ok(b)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct VertexFile {
    pub name: String,
    pub algebra: AlgebraFile,
}

/// Arrow endpoints refer to vertices by name, not index.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct ArrowFile {
    pub name: String,
    pub from: String,
    pub to: String,
    pub bimodule: BimoduleFile,
}

/// A phylum description: the prime, the vertex algebras, and the arrow
/// bimodules. Loading splits in two: [`PhylumFile::parts`] performs all
/// schema and algebra-law checks (failures are input errors), while the
/// subsequent `Phylum::new` runs the dualisability certificates (failures
/// there are mathematical verdicts).
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct PhylumFile {
    pub prime: u64,
    pub vertices: Vec<VertexFile>,
    pub arrows: Vec<ArrowFile>,
}

impl PhylumFile {
    pub fn from_parts(
        p: u64,
        shape: &ShapeQuiver,
        algebras: &[AlgebraView],
        bimodules: &[Bimodule],
    ) -> PhylumFile {
        PhylumFile {
            prime: p,
            vertices: shape
                .vertices
                .iter()
                .zip(algebras)
                .map(|(name, alg)| VertexFile { name: name.clone(), algebra: AlgebraFile::of(alg) })
                .collect(),
            arrows: shape
                .arrows
                .iter()
                .zip(bimodules)
                .map(|(a, b)| ArrowFile {
                    name: a.name.clone(),
                    from: shape.vertices[a.from].clone(),
                    to: shape.vertices[a.to].clone(),
                    bimodule: BimoduleFile::of(b),
                })
                .collect(),
        }
    }

    pub fn parts(&self) -> Result<(ShapeQuiver, Vec<AlgebraView>, Vec<Bimodule>), String> {
        let p = FieldSpec::new(self.prime).map_err(|e| format!("prime: {e:?}"))?.p();
        let mut names = Vec::with_capacity(self.vertices.len());
        let mut algebras = Vec::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            if names.contains(&v.name) {
                return Err(format!("vertices[{i}]: duplicate vertex name {:?}", v.name));
            }
            algebras.push(v.algebra.to_view(p, &format!("vertices[{i}].algebra"))?);
            names.push(v.name.clone());
        }
        let vertex_index = |name: &str, what: &str| -> Result<usize, String> {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| format!("{what}: unknown vertex {name:?}"))
        };
        let mut arrows = Vec::with_capacity(self.arrows.len());
        let mut bimodules = Vec::with_capacity(self.arrows.len());
        for (i, a) in self.arrows.iter().enumerate() {
            let from = vertex_index(&a.from, &format!("arrows[{i}].from"))?;
            let to = vertex_index(&a.to, &format!("arrows[{i}].to"))?;
            bimodules.push(a.bimodule.to_bimodule(
                p,
                &algebras[to],
                &algebras[from],
                &format!("arrows[{i}].bimodule"),
            )?);
            arrows.push(ShapeArrow { name: a.name.clone(), from, to });
        }
        Ok((ShapeQuiver { vertices: names, arrows }, algebras, bimodules))
    }
}

/// One vertex module: its dimension and the action matrix of every basis
/// element of that vertex's algebra (a dim 0 module still lists one 0x0
/// matrix per basis element).
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub dim: usize,
    pub action: Vec<MatrixFile>,
}

/// A representation (or a pair, when `back_maps` is present) over a phylum
/// given separately. `modules` is keyed by vertex name; `maps` and
/// `back_maps` by arrow name. `maps[a]` goes from the induced space
/// `F_a(M_from)` to `M_to`; `back_maps[a]` from the coinduced space
/// `G_a(M_to)` to `M_from`.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub modules: BTreeMap<String, ModuleFile>,
    pub maps: BTreeMap<String, MatrixFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub back_maps: BTreeMap<String, MatrixFile>,
}

impl RepresentationFile {
    pub fn of(ph: &Phylum, m: &Representation) -> RepresentationFile {
        let modules = ph
            .shape()
            .vertices
            .iter()
            .zip(&m.modules)
            .map(|(name, module)| {
                (
                    name.clone(),
                    ModuleFile {
                        dim: module.dim,
                        action: module.action.iter().map(MatrixFile::of).collect(),
                    },
                )
            })
            .collect();
        let maps = ph
            .shape()
            .arrows
            .iter()
            .zip(&m.maps)
            .map(|(a, map)| (a.name.clone(), MatrixFile::of(map)))
            .collect();
        RepresentationFile { modules, maps, back_maps: BTreeMap::new() }
    }

    pub fn of_pair(ph: &Phylum, pr: &PiRepresentation) -> RepresentationFile {
        let mut file = Self::of(ph, &pr.rep);
        file.back_maps = ph
            .shape()
            .arrows
            .iter()
            .zip(&pr.back_maps)
            .map(|(a, map)| (a.name.clone(), MatrixFile::of(map)))
            .collect();
        file
    }

    /// The underlying representation; a `back_maps` table, if present, is
    /// ignored here (that is the forgetful direction, not an error).
    pub fn to_representation(&self, ph: &Arc<Phylum>) -> Result<Representation, String> {
        let p = ph.p();
        for key in self.modules.keys() {
            if !ph.shape().vertices.contains(key) {
                return Err(format!("modules: unknown vertex {key:?}"));
            }
        }
        let mut modules = Vec::with_capacity(ph.vertex_count());
        for (v, name) in ph.shape().vertices.iter().enumerate() {
            let entry = self
                .modules
                .get(name)
                .ok_or_else(|| format!("modules: missing vertex {name:?}"))?;
            let alg = ph.algebra(v);
            let what = format!("modules[{name:?}]");
            if entry.action.len() != alg.dim {
                return Err(format!(
                    "{what}.action: expected {} matrices, found {}",
                    alg.dim,
                    entry.action.len()
                ));
            }
            let mut action = Vec::with_capacity(alg.dim);
            for (i, m) in entry.action.iter().enumerate() {
                action.push(m.to_shaped(p, entry.dim, entry.dim, &format!("{what}.action[{i}]"))?);
            }
            modules.push(LeftModule { p, dim: entry.dim, action });
        }
        for key in self.maps.keys() {
            if !ph.shape().arrows.iter().any(|a| &a.name == key) {
                return Err(format!("maps: unknown arrow {key:?}"));
            }
        }
        let mut maps = Vec::with_capacity(ph.shape().arrows.len());
        for (a, arrow) in ph.shape().arrows.iter().enumerate() {
            let entry = self
                .maps
                .get(&arrow.name)
                .ok_or_else(|| format!("maps: missing arrow {:?}", arrow.name))?;
            let rows = modules[arrow.to].dim;
            let cols = ph.f_arrow(a, &modules[arrow.from]).0.dim;
            maps.push(entry.to_shaped(p, rows, cols, &format!("maps[{:?}]", arrow.name))?);
        }
        Representation::new(ph.clone(), modules, maps).map_err(|e| format!("representation: {e:?}"))
    }

    /// The file as a pair. An absent `back_maps` table means all-zero
    /// backward maps (the canonical embedding of a plain representation).
    pub fn to_pair(&self, ph: &Arc<Phylum>) -> Result<PiRepresentation, String> {
        let rep = self.to_representation(ph)?;
        let p = ph.p();
        for key in self.back_maps.keys() {
            if !ph.shape().arrows.iter().any(|a| &a.name == key) {
                return Err(format!("back_maps: unknown arrow {key:?}"));
            }
        }
        let mut backs = Vec::with_capacity(ph.shape().arrows.len());
        for (a, arrow) in ph.shape().arrows.iter().enumerate() {
            let rows = rep.modules[arrow.from].dim;
            let cols = ph.g_arrow(a, &rep.modules[arrow.to]).0.dim;
            match self.back_maps.get(&arrow.name) {
                Some(entry) => backs.push(entry.to_shaped(
                    p,
                    rows,
                    cols,
                    &format!("back_maps[{:?}]", arrow.name),
                )?),
                None if self.back_maps.is_empty() => backs.push(Matrix::zero(p, rows, cols)),
                None => {
                    return Err(format!("back_maps: missing arrow {:?}", arrow.name));
                }
            }
        }
        PiRepresentation::new(rep, backs).map_err(|e| format!("pair: {e:?}"))
    }
}

/// Stable pretty JSON with a trailing newline, the shape every emitted file
/// and report uses.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

/// Reads and deserialises a JSON file, reporting the path and (for syntax
/// and schema errors) the line and column.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}
