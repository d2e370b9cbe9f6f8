//! Flattening a phylum into a single finite-dimensional algebra whose left
//! modules are exactly the representations.
//!
//! The underlying space is the direct sum, over every shape path `q`, of the
//! forward path functor applied to the regular module of the source vertex
//! algebra. Grouping the blocks by target vertex makes the flat algebra the
//! free representation on the regular family, so multiplication comes out of
//! machinery that already exists: right multiplication by a basis element is
//! the morphism adjoint to "send the unit there", and the product of two
//! basis elements reads off one column of that morphism.
//!
//! The constructor verifies associativity, the unit law, and nilpotency of
//! the declared radical on the finished table, so a [`FlatAlgebra`] that
//! exists at all is safe to compute over.

use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{check_module, AlgebraView, LeftModule};
use crate::error::Error;
use crate::matrix::Matrix;
use crate::nakayama::f_shriek;
use crate::phylum::{CMorphism, Phylum, VertexSum};
use crate::rep::{check_morphism, RepMorphism, Representation};

/// Where a flat basis element lives: the vertex whose block holds it, the
/// global index of its path summand, and its index inside that summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisTag {
    pub vertex: usize,
    pub path: usize,
    pub inner: usize,
}

/// The flattened algebra of a phylum, with enough layout bookkeeping to move
/// representations in and out of it.
pub struct FlatAlgebra {
    phylum: Arc<Phylum>,
    view: AlgebraView,
    /// Per vertex: the path-summand layout of that block.
    sums: Vec<VertexSum>,
    /// Per vertex: offset of its block in the concatenated basis.
    offsets: Vec<usize>,
    /// Per basis element: which block and summand it belongs to.
    tags: Vec<BasisTag>,
}

impl FlatAlgebra {
    pub fn view(&self) -> &AlgebraView {
        &self.view
    }

    pub fn phylum(&self) -> &Arc<Phylum> {
        &self.phylum
    }

    pub fn dim(&self) -> usize {
        self.view.dim
    }

    pub fn tags(&self) -> &[BasisTag] {
        &self.tags
    }

    /// Offset of the vertex block in the concatenated basis.
    pub fn vertex_offset(&self, v: usize) -> usize {
        self.offsets[v]
    }

    /// Dimension of the vertex block.
    pub fn vertex_dim(&self, v: usize) -> usize {
        let end = if v + 1 < self.offsets.len() {
            self.offsets[v + 1]
        } else {
            self.view.dim
        };
        end - self.offsets[v]
    }

    /// The coefficient vector of the idempotent `e_v` (the unit of the
    /// vertex algebra sitting in the trivial-path summand of block `v`).
    pub fn vertex_idempotent(&self, v: usize) -> Matrix {
        let p = self.view.p;
        let mut out = Matrix::zero(p, self.view.dim, 1);
        for &w in &self.view.idempotents {
            if self.tags[w].vertex == v && self.tags[w].path == v {
                out.set(w, 0, 1);
            }
        }
        out
    }
}

fn internal(msg: &str) -> Error {
    Error::InternalInconsistency(msg.to_string())
}

/// The map `Λ_u -> m_u` of left modules sending the unit to column `j`,
/// i.e. `λ -> λ · ξ_j`.
fn unit_to(m: &LeftModule, j: usize) -> Matrix {
    let cols: Vec<Matrix> = m.action.iter().map(|a| a.column(j)).collect();
    let refs: Vec<&Matrix> = cols.iter().collect();
    Matrix::hstack(m.p, m.dim, &refs)
}

/// Flattens the phylum: basis blocks are the path summands of the free
/// representation on the regular family, grouped per target vertex.
pub fn flatten(ph: &Arc<Phylum>) -> Result<FlatAlgebra, Error> {
    let p = ph.p();
    let nv = ph.vertex_count();
    let reg = ph.regular_cobject();
    let (free, sums) = f_shriek(ph, &reg)?;

    let mut offsets = Vec::with_capacity(nv);
    let mut dim = 0usize;
    for v in 0..nv {
        offsets.push(dim);
        dim += free.modules[v].dim;
    }

    let mut tags = Vec::with_capacity(dim);
    for v in 0..nv {
        for (pos, &key) in sums[v].keys.iter().enumerate() {
            for inner in 0..sums[v].inclusions[pos].cols() {
                tags.push(BasisTag { vertex: v, path: key, inner });
            }
        }
    }
    if tags.len() != dim {
        return Err(internal("flat basis tags do not cover the space"));
    }

    // Right multiplication by the basis element (v, j) is the morphism of
    // the free representation adjoint to the family that sends the unit of
    // Λ_v to that basis vector.
    let mut rights: Vec<crate::rep::RepMorphism> = Vec::with_capacity(dim);
    for v in 0..nv {
        for j in 0..free.modules[v].dim {
            let maps: Vec<Matrix> = (0..nv)
                .map(|u| {
                    if u == v {
                        unit_to(&free.modules[v], j)
                    } else {
                        Matrix::zero(p, free.modules[u].dim, ph.algebra(u).dim)
                    }
                })
                .collect();
            rights.push(crate::nakayama::from_f_shriek(&free, &reg, &CMorphism { maps })?);
        }
    }

    // left_mul[i] column j = x_i · x_j = (right multiplication by x_j)(x_i).
    let mut left_mul = Vec::with_capacity(dim);
    for i in 0..dim {
        let ti = tags[i];
        let mut col_blocks = Matrix::zero(p, dim, dim);
        for (j, rho) in rights.iter().enumerate() {
            let prod = rho.maps[ti.vertex].column(offsets_local(&offsets, i, ti.vertex));
            col_blocks.paste(offsets[ti.vertex], j, &prod);
        }
        left_mul.push(col_blocks);
    }

    // The unit is the sum of the vertex units placed in the trivial-path
    // summands; the idempotent list lifts each vertex algebra's list there.
    let mut unit = Matrix::zero(p, dim, 1);
    let mut idempotents = Vec::new();
    let mut radical = Vec::new();
    for v in 0..nv {
        let alg = ph.algebra(v);
        let pos = sums[v].position(v);
        let summand_offset: usize = (0..pos).map(|k| sums[v].inclusions[k].cols()).sum();
        let base = offsets[v] + summand_offset;
        for i in 0..alg.dim {
            let c = alg.unit.get(i, 0);
            if c != 0 {
                unit.set(base + i, 0, c);
            }
        }
        for &w in &alg.idempotents {
            if alg.unit.get(w, 0) != 1 {
                return Err(internal("vertex idempotent is not a unit basis coefficient"));
            }
            idempotents.push(base + w);
        }
        for &r in &alg.radical {
            radical.push(base + r);
        }
    }
    for (i, tag) in tags.iter().enumerate() {
        if tag.path != tag.vertex {
            radical.push(i);
        }
    }
    radical.sort_unstable();

    let view = AlgebraView { p, dim, left_mul, unit, idempotents, radical };
    verify_table(&view)?;

    Ok(FlatAlgebra { phylum: ph.clone(), view, sums, offsets, tags })
}

/// Local index of basis element `i` inside its vertex block.
fn offsets_local(offsets: &[usize], i: usize, vertex: usize) -> usize {
    i - offsets[vertex]
}

/// Associativity and unit on the finished table, plus nilpotency of the
/// declared radical span.
fn verify_table(view: &AlgebraView) -> Result<(), Error> {
    let d = view.dim;
    for i in 0..d {
        for j in 0..d {
            let expected = view.left_mul_by(&view.left_mul[i].column(j));
            if view.left_mul[i].mul(&view.left_mul[j]) != expected {
                return Err(internal(&format!(
                    "flat multiplication not associative on basis pair ({i}, {j})"
                )));
            }
        }
    }
    if !view.left_mul_by(&view.unit).is_identity() {
        return Err(internal("flat unit does not act as the identity"));
    }
    let mut span = Matrix::zero(view.p, d, view.radical.len());
    for (c, &r) in view.radical.iter().enumerate() {
        span.set(r, c, 1);
    }
    for _ in 0..=d {
        if span.is_zero() || span.cols() == 0 {
            return Ok(());
        }
        let products: Vec<Matrix> = view
            .radical
            .iter()
            .map(|&r| view.left_mul[r].mul(&span))
            .collect();
        let refs: Vec<&Matrix> = products.iter().collect();
        span = Matrix::hstack(view.p, d, &refs);
    }
    Err(internal("declared radical is not nilpotent"))
}

/// A representation as a left module over the flat algebra: the underlying
/// space is the vertex spaces concatenated in vertex order, and a basis
/// element indexed by a path acts through the forward transport of that
/// path.
pub fn flatten_rep(fa: &FlatAlgebra, m: &Representation) -> Result<LeftModule, Error> {
    let ph = &fa.phylum;
    if !Arc::ptr_eq(ph, m.phylum()) {
        return Err(Error::OwnerMismatch);
    }
    let p = ph.p();
    let nv = ph.vertex_count();
    let mut voff = Vec::with_capacity(nv);
    let mut dim = 0usize;
    for v in 0..nv {
        voff.push(dim);
        dim += m.modules[v].dim;
    }

    let mut action = vec![Matrix::zero(p, dim, dim); fa.dim()];
    for v in 0..nv {
        for (pos, &key) in fa.sums[v].keys.iter().enumerate() {
            let q = &ph.paths()[key];
            let u = q.source;
            let src = &m.modules[u];
            let lambda_q = ph.f_path(q, &ph.algebra(u).regular_module());
            let act_q = crate::nakayama::act_along(m, q);
            let summand_offset: usize =
                (0..pos).map(|k| fa.sums[v].inclusions[k].cols()).sum();
            for j in 0..src.dim {
                // Transport λ ↦ λ·ξ_j through the path functor, land in m_v.
                let t = act_q.mul(&ph.f_path_mor(
                    q,
                    &ph.algebra(u).regular_module(),
                    src,
                    &unit_to(src, j),
                ));
                for inner in 0..lambda_q.dim {
                    let b = fa.offsets[v] + summand_offset + inner;
                    let col = t.column(inner);
                    for r in 0..col.rows() {
                        let c = col.get(r, 0);
                        if c != 0 {
                            action[b].set(voff[v] + r, voff[u] + j, c);
                        }
                    }
                }
            }
        }
    }

    let out = LeftModule { p, dim, action };
    check_module(&fa.view, &out)
        .map_err(|_| internal("flattened representation violates the module laws"))?;
    Ok(out)
}

/// A representation morphism as a matrix between the flattened modules.
/// Flat module maps between flattened representations are block diagonal in
/// the vertex decomposition (they commute with the vertex idempotents), and
/// the `(v, v)` block is exactly the vertex component.
pub fn flatten_morphism(
    fa: &FlatAlgebra,
    m: &Representation,
    n: &Representation,
    f: &RepMorphism,
) -> Result<Matrix, Error> {
    let ph = &fa.phylum;
    if !Arc::ptr_eq(ph, m.phylum()) || !Arc::ptr_eq(ph, n.phylum()) {
        return Err(Error::OwnerMismatch);
    }
    check_morphism(m, n, f)?;
    let p = ph.p();
    let nv = ph.vertex_count();
    let mut moff = Vec::with_capacity(nv);
    let mut noff = Vec::with_capacity(nv);
    let (mut md, mut nd) = (0usize, 0usize);
    for v in 0..nv {
        moff.push(md);
        noff.push(nd);
        md += m.modules[v].dim;
        nd += n.modules[v].dim;
    }
    let mut out = Matrix::zero(p, nd, md);
    for v in 0..nv {
        out.paste(noff[v], moff[v], &f.maps[v]);
    }
    Ok(out)
}

/// A left module over the flat algebra as a representation: split the space
/// by the vertex idempotents, read vertex-algebra actions off the
/// trivial-path blocks, and solve each arrow's structure map through its
/// tensor surjection.
pub fn unflatten(fa: &FlatAlgebra, fm: &LeftModule) -> Result<Representation, Error> {
    unflatten_with_basis(fa, fm).map(|(rep, _)| rep)
}

/// [`unflatten`], but also returns the idempotent-adapted basis (columns:
/// vertex 0's piece first), so that flat-level morphisms can be transported
/// with [`unflatten_morphism`].
pub fn unflatten_with_basis(
    fa: &FlatAlgebra,
    fm: &LeftModule,
) -> Result<(Representation, Matrix), Error> {
    let ph = &fa.phylum;
    let p = ph.p();
    let nv = ph.vertex_count();
    check_module(&fa.view, fm)?;

    // Basis adapted to the idempotent decomposition.
    let mut pieces: Vec<Matrix> = Vec::with_capacity(nv);
    for v in 0..nv {
        let proj = fm.act(&fa.vertex_idempotent(v));
        let (_, pivots) = proj.rref();
        let cols: Vec<Matrix> = pivots.iter().map(|&c| proj.column(c)).collect();
        let refs: Vec<&Matrix> = cols.iter().collect();
        pieces.push(Matrix::hstack(p, fm.dim, &refs));
    }
    let refs: Vec<&Matrix> = pieces.iter().collect();
    let basis = Matrix::hstack(p, fm.dim, &refs);
    let basis_inv = basis
        .inverse()
        .ok_or_else(|| internal("vertex idempotents do not decompose the module"))?;
    let mut voff = Vec::with_capacity(nv);
    let mut acc = 0usize;
    for piece in &pieces {
        voff.push(acc);
        acc += piece.cols();
    }

    let conj = |coeffs: &Matrix| basis_inv.mul(&fm.act(coeffs)).mul(&basis);
    let block = |m: &Matrix, v: usize, u: usize| {
        let rows = pieces[v].cols();
        let cols = pieces[u].cols();
        let mut out = Matrix::zero(p, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, m.get(voff[v] + r, voff[u] + c));
            }
        }
        out
    };
    let off_block_zero = |m: &Matrix, v: usize, u: usize| -> bool {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let in_block = r >= voff[v]
                    && r < voff[v] + pieces[v].cols()
                    && c >= voff[u]
                    && c < voff[u] + pieces[u].cols();
                if !in_block && m.get(r, c) != 0 {
                    return false;
                }
            }
        }
        true
    };

    // Vertex modules from the trivial-path blocks.
    let mut modules = Vec::with_capacity(nv);
    for v in 0..nv {
        let alg = ph.algebra(v);
        let mut action = Vec::with_capacity(alg.dim);
        for i in 0..alg.dim {
            let g = flat_basis_vector(fa, v, v, i);
            let a = conj(&g);
            if !off_block_zero(&a, v, v) {
                return Err(internal("vertex algebra action leaks outside its block"));
            }
            action.push(block(&a, v, v));
        }
        modules.push(LeftModule { p, dim: pieces[v].cols(), action });
    }

    // Arrow structure maps: the flat action of the arrow block, pushed
    // through the evaluation surjection Λ_a ⊗ m_u -> F_a(m_u).
    let mut maps = Vec::with_capacity(ph.shape().arrows.len());
    for (a, arrow) in ph.shape().arrows.iter().enumerate() {
        let (u, v) = (arrow.from, arrow.to);
        let path_key = a_path_index(ph, a)?;
        let lambda_a = ph.f_path(&ph.paths()[path_key], &ph.algebra(u).regular_module());
        let (fam, _) = ph.f_arrow(a, &modules[u]);
        let cols = lambda_a.dim * modules[u].dim;
        let mut surj = Matrix::zero(p, fam.dim, cols);
        let mut img = Matrix::zero(p, pieces[v].cols(), cols);
        for j in 0..modules[u].dim {
            let t = ph.f_arrow_mor(
                a,
                &ph.algebra(u).regular_module(),
                &modules[u],
                &unit_to(&modules[u], j),
            );
            for inner in 0..lambda_a.dim {
                let g = flat_basis_vector(fa, v, path_key, inner);
                let act = conj(&g);
                if !off_block_zero(&act, v, u) {
                    return Err(internal("arrow action leaks outside its block"));
                }
                let c = inner * modules[u].dim + j;
                surj.paste(0, c, &t.column(inner));
                img.paste(0, c, &block(&act, v, u).column(j));
            }
        }
        let map = surj
            .transpose()
            .solve(&img.transpose())
            .ok_or_else(|| internal("arrow action does not descend through the surjection"))?
            .transpose();
        maps.push(map);
    }

    Representation::new(ph.clone(), modules, maps).map(|rep| (rep, basis))
}

/// The diagonal blocks of `h` in the row/column partition given by the two
/// dimension lists, or `None` when any off-diagonal entry is nonzero.
pub fn diagonal_blocks(
    h: &Matrix,
    row_dims: &[usize],
    col_dims: &[usize],
) -> Option<Vec<Matrix>> {
    let p = h.p();
    let mut blocks = Vec::with_capacity(row_dims.len());
    let (mut r0, mut c0) = (0usize, 0usize);
    for (&r, &c) in row_dims.iter().zip(col_dims) {
        blocks.push(h.block(r0, r, c0, c));
        r0 += r;
        c0 += c;
    }
    if r0 != h.rows() || c0 != h.cols() {
        return None;
    }
    let mut rebuilt = Matrix::zero(p, h.rows(), h.cols());
    let (mut r0, mut c0) = (0usize, 0usize);
    for (b, (&r, &c)) in blocks.iter().zip(row_dims.iter().zip(col_dims)) {
        rebuilt.paste(r0, c0, b);
        r0 += r;
        c0 += c;
    }
    if &rebuilt == h {
        Some(blocks)
    } else {
        None
    }
}

/// Transports a flat-module morphism `h: flatten(src) -> flatten(dst)` to
/// the vertexwise level through the adapted bases from
/// [`unflatten_with_basis`]: conjugation must come out block diagonal, and
/// the blocks must form an honest morphism of representations.
pub fn unflatten_morphism(
    src: &Representation,
    src_basis: &Matrix,
    dst: &Representation,
    dst_basis: &Matrix,
    h: &Matrix,
) -> Result<RepMorphism, Error> {
    let inv = dst_basis
        .inverse()
        .ok_or_else(|| internal("adapted basis is not invertible"))?;
    let conj = inv.mul(h).mul(src_basis);
    let maps = diagonal_blocks(&conj, &dst.dims(), &src.dims())
        .ok_or_else(|| internal("transported morphism mixes vertex blocks"))?;
    let f = RepMorphism { maps };
    check_morphism(src, dst, &f)?;
    Ok(f)
}

/// Coefficient vector of the flat basis element with the given tag.
fn flat_basis_vector(fa: &FlatAlgebra, vertex: usize, path: usize, inner: usize) -> Matrix {
    let idx = fa
        .tags
        .iter()
        .position(|t| t.vertex == vertex && t.path == path && t.inner == inner)
        .expect("tag names a basis element");
    let mut out = Matrix::zero(fa.view.p, fa.view.dim, 1);
    out.set(idx, 0, 1);
    out
}

/// Global path index of the length-one path along arrow `a`.
fn a_path_index(ph: &Arc<Phylum>, a: usize) -> Result<usize, Error> {
    let paths = ph.paths();
    let nv = ph.vertex_count();
    for (i, q) in paths.iter().enumerate().skip(nv) {
        if q.arrows.len() == 1 && q.arrows[0] == a {
            return Ok(i);
        }
        if q.arrows.len() > 1 {
            break;
        }
    }
    Err(internal("arrow has no length-one path"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, hom_over, PresArrow, PresentationQuiver};
    use crate::fixtures::fixture;
    use crate::rep::{find_isomorphism, hom_space};
    use crate::sample::Sampler;

    fn fx(name: &str) -> Arc<Phylum> {
        Arc::new(fixture(name, 101).unwrap().unwrap())
    }

    #[test]
    fn flat_dimensions_and_idempotents_on_the_fixtures() {
        for (name, dim, nv) in [("f1", 3, 2), ("f2", 6, 3), ("f3", 5, 3), ("f4", 5, 2)] {
            let fa = flatten(&fx(name)).unwrap();
            assert_eq!(fa.dim(), dim, "{name}");
            assert_eq!(fa.view().idempotents.len(), nv, "{name}");
        }
    }

    #[test]
    fn scalar_flattening_matches_the_presented_path_algebra() {
        // Independent construction of the same algebra: the two-vertex
        // one-arrow quiver presented directly.
        let quiver = PresentationQuiver {
            vertices: vec!["0".to_string(), "1".to_string()],
            arrows: vec![PresArrow { name: "a".to_string(), from: 0, to: 1 }],
        };
        let presented = build_algebra(101, &quiver, &[], 1).unwrap();
        let fa = flatten(&fx("f1")).unwrap();
        assert_eq!(fa.dim(), presented.dim());
        assert_eq!(fa.view().radical.len(), presented.view().radical.len());
        let tags = fa.tags();
        // Spot checks of the table: e0·a = 0, e1·a = a, a·e0 = a, a·a = 0.
        let e0 = fa.vertex_idempotent(0);
        let e1 = fa.vertex_idempotent(1);
        let a_idx = tags.iter().position(|t| t.path != t.vertex).unwrap();
        let a_vec = {
            let mut v = Matrix::zero(101, fa.dim(), 1);
            v.set(a_idx, 0, 1);
            v
        };
        let mul = |x: &Matrix, y: &Matrix| fa.view().left_mul_by(x).mul(y);
        assert!(mul(&e0, &a_vec).is_zero());
        assert_eq!(mul(&e1, &a_vec), a_vec);
        assert_eq!(mul(&a_vec, &e0), a_vec);
        assert!(mul(&a_vec, &a_vec).is_zero());
    }

    #[test]
    fn flatten_rep_and_unflatten_are_mutually_inverse() {
        for name in ["f1", "f2", "f4"] {
            let ph = fx(name);
            let fa = flatten(&ph).unwrap();
            let mut s = Sampler::new(13);
            for _ in 0..4 {
                let m = s.representation(&ph, 3).unwrap();
                let fm = flatten_rep(&fa, &m).unwrap();
                assert_eq!(fm.dim, m.total_dim());
                let back = unflatten(&fa, &fm).unwrap();
                assert_eq!(back.dims(), m.dims());
                for v in 0..ph.vertex_count() {
                    assert_eq!(back.modules[v], m.modules[v], "{name} vertex {v}");
                }
                for (a, map) in back.maps.iter().enumerate() {
                    assert_eq!(map.entries(), m.maps[a].entries(), "{name} arrow {a}");
                }
            }
        }
    }

    #[test]
    fn unflatten_recovers_a_representation_from_scrambled_coordinates() {
        let ph = fx("f4");
        let fa = flatten(&ph).unwrap();
        let mut s = Sampler::new(57);
        let m = loop {
            let cand = s.representation(&ph, 2).unwrap();
            if cand.total_dim() > 0 {
                break cand;
            }
        };
        let fm = flatten_rep(&fa, &m).unwrap();
        // Conjugate by a random invertible change of basis.
        let g = loop {
            let cand = s.matrix(101, fm.dim, fm.dim);
            if cand.inverse().is_some() {
                break cand;
            }
        };
        let g_inv = g.inverse().unwrap();
        let scrambled = LeftModule {
            p: fm.p,
            dim: fm.dim,
            action: fm.action.iter().map(|a| g_inv.mul(a).mul(&g)).collect(),
        };
        let back = unflatten(&fa, &scrambled).unwrap();
        assert_eq!(back.dims(), m.dims());
        assert!(find_isomorphism(&back, &m).unwrap().is_some());
    }

    #[test]
    fn hom_spaces_agree_across_flattening() {
        for name in ["f1", "f2", "f4"] {
            let ph = fx(name);
            let fa = flatten(&ph).unwrap();
            let mut s = Sampler::new(91);
            for _ in 0..3 {
                let m = s.representation(&ph, 2).unwrap();
                let n = s.representation(&ph, 2).unwrap();
                let reps = hom_space(&m, &n).unwrap().len();
                let mods = hom_over(
                    fa.view(),
                    &flatten_rep(&fa, &m).unwrap(),
                    &flatten_rep(&fa, &n).unwrap(),
                )
                .len();
                assert_eq!(reps, mods, "{name}");
            }
        }
    }

    #[test]
    fn flattened_morphisms_intertwine_the_flat_actions() {
        for name in ["f1", "f2", "f4"] {
            let ph = fx(name);
            let fa = flatten(&ph).unwrap();
            let mut s = Sampler::new(17);
            for _ in 0..3 {
                let m = s.representation(&ph, 2).unwrap();
                let n = s.representation(&ph, 2).unwrap();
                let f = s.morphism(&m, &n).unwrap();
                let fm = flatten_rep(&fa, &m).unwrap();
                let fn_ = flatten_rep(&fa, &n).unwrap();
                let phi = flatten_morphism(&fa, &m, &n, &f).unwrap();
                for i in 0..fa.dim() {
                    let mut e = Matrix::zero(101, fa.dim(), 1);
                    e.set(i, 0, 1);
                    assert_eq!(phi.mul(&fm.act(&e)), fn_.act(&e).mul(&phi), "{name}");
                }
            }
        }
    }

    #[test]
    fn morphisms_transport_through_adapted_bases_and_back() {
        for name in ["f1", "f2", "f4"] {
            let ph = fx(name);
            let fa = flatten(&ph).unwrap();
            let mut s = Sampler::new(23);
            for _ in 0..3 {
                let m = s.representation(&ph, 2).unwrap();
                let n = s.representation(&ph, 2).unwrap();
                let f = s.morphism(&m, &n).unwrap();
                let fm = flatten_rep(&fa, &m).unwrap();
                let fn_ = flatten_rep(&fa, &n).unwrap();
                let phi = flatten_morphism(&fa, &m, &n, &f).unwrap();
                let (um, mb) = unflatten_with_basis(&fa, &fm).unwrap();
                let (un, nb) = unflatten_with_basis(&fa, &fn_).unwrap();
                // Transport validates as a morphism internally; identity
                // transports to identity.
                let g = unflatten_morphism(&um, &mb, &un, &nb, &phi).unwrap();
                let id = Matrix::identity(101, fm.dim);
                assert!(
                    unflatten_morphism(&um, &mb, &um, &mb, &id).unwrap().is_identity(),
                    "{name}"
                );
                // Conjugating the transported blocks back recovers the flat
                // morphism exactly.
                let back = flatten_morphism(&fa, &um, &un, &g).unwrap();
                assert_eq!(nb.mul(&back), phi.mul(&mb), "{name}");
            }
        }
    }
}
