//! Pairs: representations carrying one backward structure map per arrow,
//! subject to a commutator relation — modules over the preprojective
//! extension of the phylum.
//!
//! The central fact made computable here is an equivalence of data: a pair
//! `(M, back)` satisfying the relation is the same thing as a morphism
//! `psi : M -> tau(M)` into the translate. [`to_tau_pair`] and
//! [`from_tau_pair`] realise both directions explicitly and are mutually
//! inverse on the nose, not just up to isomorphism. On shapes where every
//! vertex algebra and every arrow bimodule is one-dimensional, the
//! extension is an honest bound quiver algebra — the double quiver with one
//! commutator relation per vertex — and [`flatten_pi`]/[`unflatten_pi`]
//! move pairs in and out of it. [`nu_minus_gstar_sequence`] pushes a short
//! exact sequence of pairs through the backward Nakayama functor and
//! reports what became of it.

use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{
    build_algebra, check_module, AlgebraView, BoundQuiverAlgebra, LeftModule, PresArrow,
    PresentationQuiver, RelationTerm,
};
use crate::ar;
use crate::error::Error;
use crate::flat::{diagonal_blocks, flatten, flatten_morphism, flatten_rep};
use crate::matrix::Matrix;
use crate::nakayama::{into_f_star, nu_minus, nu_minus_on_morphism, standard_resolution, tau, TauValue};
use crate::phylum::{CMorphism, Phylum};
use crate::rep::{
    check_morphism, factor_through_injection, hom_space, rep_kernel, split_epi_section,
    split_mono_retraction, RepMorphism, Representation, ShortExactSequence,
};

fn internal(msg: &str) -> Error {
    Error::InternalInconsistency(msg.to_string())
}

/// A representation together with one backward map per arrow:
/// `back_maps[a] : G_a(M_target) -> M_source`, linear over the source vertex
/// algebra. The pair is a module over the preprojective extension exactly
/// when [`check_pi_relation`] reports true; candidate pairs that fail the
/// relation are still constructible, so the checker has something to judge.
#[derive(Debug, Clone)]
pub struct PiRepresentation {
    pub rep: Representation,
    pub back_maps: Vec<Matrix>,
}

impl PiRepresentation {
    /// Validates the count, shape, and linearity of the backward maps. The
    /// commutator relation is deliberately not enforced here.
    pub fn new(rep: Representation, back_maps: Vec<Matrix>) -> Result<PiRepresentation, Error> {
        let ph = rep.phylum().clone();
        let p = ph.p();
        if back_maps.len() != ph.shape().arrows.len() {
            return Err(Error::DimensionMismatch);
        }
        for (a, arrow) in ph.shape().arrows.iter().enumerate() {
            let g = ph.g_arrow(a, &rep.modules[arrow.to]).0;
            let h = &back_maps[a];
            if h.rows() != rep.modules[arrow.from].dim || h.cols() != g.dim {
                return Err(Error::DimensionMismatch);
            }
            let alg = ph.algebra(arrow.from);
            for i in 0..alg.dim {
                let mut coeffs = Matrix::zero(p, alg.dim, 1);
                coeffs.set(i, 0, 1);
                let lhs = h.mul(&g.act(&coeffs));
                let rhs = rep.modules[arrow.from].act(&coeffs).mul(h);
                if !lhs.sub(&rhs).is_zero() {
                    return Err(Error::BuildFailed(
                        "backward map is not linear over the source vertex algebra".to_string(),
                    ));
                }
            }
        }
        Ok(PiRepresentation { rep, back_maps })
    }

    pub fn phylum(&self) -> &Arc<Phylum> {
        self.rep.phylum()
    }
}

/// The induced pair: all backward maps zero. This is the embedding of plain
/// representations into pairs; the commutator relation holds trivially.
pub fn j_embed(rep: Representation) -> PiRepresentation {
    let ph = rep.phylum().clone();
    let p = ph.p();
    let back_maps = ph
        .shape()
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let g = ph.g_arrow(a, &rep.modules[arrow.to]).0;
            Matrix::zero(p, rep.modules[arrow.from].dim, g.dim)
        })
        .collect();
    PiRepresentation { rep, back_maps }
}

/// Evaluates the commutator relation at every vertex: the sum over outgoing
/// arrows of `back . G(forward) . unit` minus the sum over incoming arrows
/// of `forward . F(back) . unit` must vanish. Returns the verdict together
/// with the per-vertex residual family, which is zero exactly when the
/// verdict is true.
pub fn check_pi_relation(pr: &PiRepresentation) -> (bool, CMorphism) {
    let ph = pr.rep.phylum().clone();
    let p = ph.p();
    let m = &pr.rep;
    let mut maps = Vec::with_capacity(ph.vertex_count());
    for w in 0..ph.vertex_count() {
        let dw = m.modules[w].dim;
        let mut res = Matrix::zero(p, dw, dw);
        for a in ph.shape().arrows_from(w) {
            let v = ph.shape().arrows[a].to;
            let fmw = ph.f_arrow(a, &m.modules[w]).0;
            let g_of_fwd = ph.g_arrow_mor(a, &fmw, &m.modules[v], &m.maps[a]);
            let unit = ph.cert(a).eta_fg(&m.modules[w]);
            res = res.add(&pr.back_maps[a].mul(&g_of_fwd).mul(&unit));
        }
        for a in ph.shape().arrows_into(w) {
            let u = ph.shape().arrows[a].from;
            let gmw = ph.g_arrow(a, &m.modules[w]).0;
            let f_of_back = ph.f_arrow_mor(a, &gmw, &m.modules[u], &pr.back_maps[a]);
            let unit = ph.cert(a).eta_gf(&m.modules[w]);
            res = res.sub(&m.maps[a].mul(&f_of_back).mul(&unit));
        }
        maps.push(res);
    }
    let ok = maps.iter().all(Matrix::is_zero);
    (ok, CMorphism { maps })
}

/// A morphism into the translate: the underlying representation, the
/// translate it lands in (kept with its defining presentation), and
/// `psi : rep -> tau.value`.
#[derive(Debug, Clone)]
pub struct TauPair {
    pub rep: Representation,
    pub tau: TauValue,
    pub psi: RepMorphism,
}

impl TauPair {
    /// Recomputes the translate of `rep` and checks `psi` against it.
    pub fn new(rep: Representation, psi: RepMorphism) -> Result<TauPair, Error> {
        let t = tau(&rep)?;
        check_morphism(&rep, &t.value, &psi)?;
        Ok(TauPair { rep, tau: t, psi })
    }
}

/// Re-expresses a relation-satisfying pair as a morphism into the translate.
///
/// The backward family transposes, one arrow at a time, into a family
/// `M_v -> F_a(M_u)` landing in the incoming direct sum, which coinduction
/// assembles into `phi : M -> f_*(X f^* M)` — the source of the translate's
/// defining presentation. The relation says exactly that `phi` lands inside
/// the kernel, and `psi` is the unique factorisation through the kernel
/// inclusion.
///
/// Errors: [`Error::RelationViolated`] when the commutator relation fails,
/// [`Error::NoSolution`] if the factorisation solve fails anyway — the
/// relation is the solvability condition, so that would be a bug.
pub fn to_tau_pair(pr: &PiRepresentation) -> Result<TauPair, Error> {
    let (ok, _) = check_pi_relation(pr);
    if !ok {
        return Err(Error::RelationViolated);
    }
    let ph = pr.rep.phylum().clone();
    let p = ph.p();
    let m = &pr.rep;
    let c = m.cobject();
    let (xc, x_sums) = ph.x_object(&c);
    // Adjoint transpose of the backward family, vertex by vertex:
    // g_v = sum over arrows a : u -> v of include_a . F_a(back_a) . unit.
    let mut g_maps = Vec::with_capacity(ph.vertex_count());
    for v in 0..ph.vertex_count() {
        let mut out = Matrix::zero(p, xc.modules[v].dim, m.modules[v].dim);
        for a in ph.shape().arrows_into(v) {
            let u = ph.shape().arrows[a].from;
            let gmv = ph.g_arrow(a, &m.modules[v]).0;
            let f_of_back = ph.f_arrow_mor(a, &gmv, &m.modules[u], &pr.back_maps[a]);
            let unit = ph.cert(a).eta_gf(&m.modules[v]);
            let inc = &x_sums[v].inclusions[x_sums[v].position(a)];
            out = out.add(&inc.mul(&f_of_back).mul(&unit));
        }
        g_maps.push(out);
    }
    let phi = into_f_star(m, &xc, &CMorphism { maps: g_maps })?;
    let t = tau(m)?;
    let psi = factor_through_injection(&t.edge, &phi).ok_or(Error::NoSolution)?;
    check_morphism(m, &t.value, &psi)
        .map_err(|_| internal("factorisation through the kernel is not a morphism"))?;
    Ok(TauPair { rep: m.clone(), tau: t, psi })
}

/// The inverse re-expression: from `psi : M -> tau(M)`, composing with the
/// kernel inclusion and projecting onto the trivial-path summand gives a
/// family `M_v -> (X f^* M)_v`, whose arrow components transpose back into
/// backward maps. The commutator relation holds automatically and is
/// re-verified.
pub fn from_tau_pair(tp: &TauPair) -> Result<PiRepresentation, Error> {
    let ph = tp.rep.phylum().clone();
    let m = &tp.rep;
    check_morphism(m, &tp.tau.value, &tp.psi)?;
    let c = m.cobject();
    let (_, x_sums) = ph.x_object(&c);
    // At v: M_v -> tau_v -> (f_* X f^* M)_v -> (X f^* M)_v, the last step
    // projecting onto the trivial-path summand (global path index v).
    let src_sums = &tp.tau.presentation.source_sums;
    let mut w_maps = Vec::with_capacity(ph.vertex_count());
    for v in 0..ph.vertex_count() {
        let trivial = &src_sums[v].projections[src_sums[v].position(v)];
        w_maps.push(trivial.mul(&tp.tau.edge.maps[v]).mul(&tp.psi.maps[v]));
    }
    let mut back_maps = Vec::with_capacity(ph.shape().arrows.len());
    for (a, arrow) in ph.shape().arrows.iter().enumerate() {
        let (u, v) = (arrow.from, arrow.to);
        let proj = &x_sums[v].projections[x_sums[v].position(a)];
        let component = proj.mul(&w_maps[v]);
        let fmu = ph.f_arrow(a, &m.modules[u]).0;
        let g_of_component = ph.g_arrow_mor(a, &m.modules[v], &fmu, &component);
        back_maps.push(ph.cert(a).eps_gf(&m.modules[u]).mul(&g_of_component));
    }
    let out = PiRepresentation::new(m.clone(), back_maps)?;
    let (ok, _) = check_pi_relation(&out);
    if !ok {
        return Err(internal("recovered pair violates the commutator relation"));
    }
    Ok(out)
}

/// Basis of the space of pair morphisms `m -> n`: representation morphisms
/// that also intertwine the backward maps. Computed by slicing the plain hom
/// space by the per-arrow backward residual
/// `phi_source . back_m - back_n . G(phi_target)`.
pub fn pi_hom_space(
    m: &PiRepresentation,
    n: &PiRepresentation,
) -> Result<Vec<RepMorphism>, Error> {
    let ph = m.rep.phylum().clone();
    let p = ph.p();
    let base = hom_space(&m.rep, &n.rep)?;
    if base.is_empty() {
        return Ok(vec![]);
    }
    let mut cols = Vec::with_capacity(base.len());
    for phi in &base {
        let mut entries: Vec<u64> = Vec::new();
        for (a, arrow) in ph.shape().arrows.iter().enumerate() {
            let (u, v) = (arrow.from, arrow.to);
            let g_of_phi =
                ph.g_arrow_mor(a, &m.rep.modules[v], &n.rep.modules[v], &phi.maps[v]);
            let r = phi.maps[u].mul(&m.back_maps[a]).sub(&n.back_maps[a].mul(&g_of_phi));
            entries.extend_from_slice(r.entries());
        }
        cols.push(entries);
    }
    let rows = cols[0].len();
    let mut resid = Matrix::zero(p, rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, &e) in col.iter().enumerate() {
            resid.set(i, j, e);
        }
    }
    let combos = resid.kernel_basis();
    let mut out = Vec::with_capacity(combos.cols());
    for j in 0..combos.cols() {
        let mut f = m.rep.zero_morphism_to(&n.rep);
        for (i, b) in base.iter().enumerate() {
            let c = combos.get(i, j);
            if c != 0 {
                f = f.add(&b.scale(c));
            }
        }
        out.push(f);
    }
    Ok(out)
}

/// Does `phi` intertwine the backward maps of two pairs? (Its forward
/// compatibility should be checked separately via [`check_morphism`].)
fn intertwines_back_maps(m: &PiRepresentation, n: &PiRepresentation, phi: &RepMorphism) -> bool {
    let ph = m.rep.phylum();
    for (a, arrow) in ph.shape().arrows.iter().enumerate() {
        let (u, v) = (arrow.from, arrow.to);
        let g_of_phi = ph.g_arrow_mor(a, &m.rep.modules[v], &n.rep.modules[v], &phi.maps[v]);
        let r = phi.maps[u].mul(&m.back_maps[a]).sub(&n.back_maps[a].mul(&g_of_phi));
        if !r.is_zero() {
            return false;
        }
    }
    true
}

/// The preprojective extension of a scalar-shape phylum as a bound quiver
/// algebra: the double quiver with one commutator relation per vertex.
pub struct PiAlgebra {
    pub phylum: Arc<Phylum>,
    pub alg: BoundQuiverAlgebra,
    pub view: AlgebraView,
    /// For each shape arrow: the index of its forward copy in the
    /// extension's (name-sorted) arrow list.
    pub fwd: Vec<usize>,
    /// Likewise for the backward copy (shape name suffixed with `*`).
    pub bwd: Vec<usize>,
}

/// Builds the double-quiver extension. Only phyla whose vertex algebras and
/// arrow bimodules are all one-dimensional are accepted: for those, every
/// adjunction unit is the identity in the scalar identification, so the
/// categorical commutator relation is literally the quiver-algebra relation
/// `sum of forward-then-backward minus sum of backward-then-forward`.
/// `nilpotency_bound` is passed through to the rewriting construction and
/// must majorise the longest irreducible path of the extension.
pub fn pi_algebra(ph: &Arc<Phylum>, nilpotency_bound: usize) -> Result<PiAlgebra, Error> {
    for v in 0..ph.vertex_count() {
        if ph.algebra(v).dim != 1 {
            return Err(Error::Unsupported(
                "extension algebra needs one-dimensional vertex algebras".to_string(),
            ));
        }
    }
    let shape = ph.shape();
    let n_arrows = shape.arrows.len();
    for a in 0..n_arrows {
        if ph.cert(a).alpha.dim != 1 {
            return Err(Error::Unsupported(
                "extension algebra needs one-dimensional arrow bimodules".to_string(),
            ));
        }
    }
    // Double quiver: forward copies first (indices 0..n), then backward
    // copies (indices n..2n); build_algebra re-sorts by name and remaps the
    // relation words itself.
    let mut arrows = Vec::with_capacity(2 * n_arrows);
    for ar in &shape.arrows {
        arrows.push(PresArrow { name: ar.name.clone(), from: ar.from, to: ar.to });
    }
    for ar in &shape.arrows {
        let mut name = ar.name.clone();
        name.push('*');
        arrows.push(PresArrow { name, from: ar.to, to: ar.from });
    }
    let mut relations: Vec<Vec<RelationTerm>> = Vec::new();
    for w in 0..shape.vertices.len() {
        let mut terms: Vec<RelationTerm> = Vec::new();
        for (a, ar) in shape.arrows.iter().enumerate() {
            if ar.from == w {
                terms.push((vec![a, n_arrows + a], 1));
            }
            if ar.to == w {
                terms.push((vec![n_arrows + a, a], -1));
            }
        }
        if !terms.is_empty() {
            relations.push(terms);
        }
    }
    let quiver =
        PresentationQuiver { vertices: shape.vertices.clone(), arrows: arrows.clone() };
    let alg = build_algebra(ph.p(), &quiver, &relations, nilpotency_bound)?;
    // Recover where each copy landed after the name sort.
    let mut order: Vec<usize> = (0..arrows.len()).collect();
    order.sort_by(|&x, &y| arrows[x].name.cmp(&arrows[y].name));
    let mut remap = vec![0usize; arrows.len()];
    for (new, &old) in order.iter().enumerate() {
        remap[old] = new;
    }
    let fwd = (0..n_arrows).map(|a| remap[a]).collect();
    let bwd = (0..n_arrows).map(|a| remap[n_arrows + a]).collect();
    let view = alg.view();
    Ok(PiAlgebra { phylum: ph.clone(), alg, view, fwd, bwd })
}

/// A relation-satisfying pair as a left module over the extension algebra.
/// Coordinates are the vertex spaces concatenated in vertex order; the
/// forward copy of an arrow acts by the forward structure map and the
/// backward copy by the backward map, each through the scalar identification
/// of its rank-one tensor space.
pub fn flatten_pi(pa: &PiAlgebra, pr: &PiRepresentation) -> Result<LeftModule, Error> {
    if !Arc::ptr_eq(&pa.phylum, pr.rep.phylum()) {
        return Err(Error::OwnerMismatch);
    }
    let (ok, _) = check_pi_relation(pr);
    if !ok {
        return Err(Error::RelationViolated);
    }
    let ph = &pa.phylum;
    let p = ph.p();
    let nv = ph.vertex_count();
    let m = &pr.rep;
    let mut voff = Vec::with_capacity(nv);
    let mut dim = 0usize;
    for v in 0..nv {
        voff.push(dim);
        dim += m.modules[v].dim;
    }
    // Per sorted extension arrow, its action on the whole space.
    let n_arrows = ph.shape().arrows.len();
    let mut arrow_action = vec![Matrix::zero(p, dim, dim); 2 * n_arrows];
    for (a, arrow) in ph.shape().arrows.iter().enumerate() {
        let ts_f = ph.f_arrow(a, &m.modules[arrow.from]).1;
        let mut act = Matrix::zero(p, dim, dim);
        act.paste(voff[arrow.to], voff[arrow.from], &m.maps[a].mul(&ts_f.surj));
        arrow_action[pa.fwd[a]] = act;
        let ts_g = ph.g_arrow(a, &m.modules[arrow.to]).1;
        let mut act = Matrix::zero(p, dim, dim);
        act.paste(voff[arrow.from], voff[arrow.to], &pr.back_maps[a].mul(&ts_g.surj));
        arrow_action[pa.bwd[a]] = act;
    }
    let mut action = vec![Matrix::zero(p, dim, dim); pa.alg.basis().len()];
    for v in 0..nv {
        let b = pa.alg.idempotent(v);
        for r in 0..m.modules[v].dim {
            action[b].set(voff[v] + r, voff[v] + r, 1);
        }
    }
    for (i, path) in pa.alg.basis().iter().enumerate() {
        if path.arrows.is_empty() {
            continue;
        }
        // Traversal order: the first arrow of the word acts first.
        let mut acc = Matrix::identity(p, dim);
        for &x in &path.arrows {
            acc = arrow_action[x].mul(&acc);
        }
        action[i] = acc;
    }
    let out = LeftModule { p, dim, action };
    check_module(&pa.view, &out)
        .map_err(|_| internal("flattened pair violates the extension's module laws"))?;
    Ok(out)
}

/// Recovers a pair from a module over the extension algebra, together with
/// the change of basis that aligned the module's coordinates with the vertex
/// decomposition: a module map `phi` between flat modules transports to the
/// vertex blocks of `basis_n^-1 . phi . basis_m`.
pub fn unflatten_pi(
    pa: &PiAlgebra,
    fm: &LeftModule,
) -> Result<(PiRepresentation, Matrix), Error> {
    check_module(&pa.view, fm)?;
    let ph = pa.phylum.clone();
    let p = ph.p();
    let nv = ph.vertex_count();
    // Basis adapted to the vertex idempotents.
    let mut pieces: Vec<Matrix> = Vec::with_capacity(nv);
    for v in 0..nv {
        let mut coeffs = Matrix::zero(p, pa.view.dim, 1);
        coeffs.set(pa.alg.idempotent(v), 0, 1);
        let proj = fm.act(&coeffs);
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
    // Scalar vertex algebras: each vertex space is determined by its
    // dimension alone.
    let modules: Vec<LeftModule> = pieces
        .iter()
        .map(|piece| LeftModule {
            p,
            dim: piece.cols(),
            action: vec![Matrix::identity(p, piece.cols())],
        })
        .collect();
    let conj = |idx: usize| {
        let mut e = Matrix::zero(p, pa.view.dim, 1);
        e.set(idx, 0, 1);
        basis_inv.mul(&fm.act(&e)).mul(&basis)
    };
    let block = |m: &Matrix, v: usize, u: usize| {
        let mut out = Matrix::zero(p, pieces[v].cols(), pieces[u].cols());
        for r in 0..out.rows() {
            for c in 0..out.cols() {
                out.set(r, c, m.get(voff[v] + r, voff[u] + c));
            }
        }
        out
    };
    let mut maps = Vec::with_capacity(ph.shape().arrows.len());
    let mut back_maps = Vec::with_capacity(ph.shape().arrows.len());
    for (a, arrow) in ph.shape().arrows.iter().enumerate() {
        let (u, v) = (arrow.from, arrow.to);
        let bf = pa
            .alg
            .basis_index_of(&[pa.fwd[a]], u)
            .ok_or_else(|| internal("forward arrow path missing from the basis"))?;
        let ts_f = ph.f_arrow(a, &modules[u]).1;
        let unident = ts_f
            .surj
            .inverse()
            .ok_or_else(|| internal("scalar tensor identification is not invertible"))?;
        maps.push(block(&conj(bf), v, u).mul(&unident));
        let bg = pa
            .alg
            .basis_index_of(&[pa.bwd[a]], v)
            .ok_or_else(|| internal("backward arrow path missing from the basis"))?;
        let ts_g = ph.g_arrow(a, &modules[v]).1;
        let unident = ts_g
            .surj
            .inverse()
            .ok_or_else(|| internal("scalar tensor identification is not invertible"))?;
        back_maps.push(block(&conj(bg), u, v).mul(&unident));
    }
    let rep = Representation::new(ph, modules, maps)?;
    let pr = PiRepresentation::new(rep, back_maps)?;
    let (ok, _) = check_pi_relation(&pr);
    if !ok {
        return Err(internal("unflattened pair violates the commutator relation"));
    }
    Ok((pr, basis))
}

/// Transports an extension-algebra module morphism `h: flatten_pi(src) ->
/// flatten_pi(dst)` to the vertexwise level through the adapted bases from
/// [`unflatten_pi`]. The conjugated matrix must be block diagonal over the
/// vertex pieces, and the blocks must intertwine both the forward and the
/// backward structure maps.
pub fn pi_transport_morphism(
    src: &PiRepresentation,
    src_basis: &Matrix,
    dst: &PiRepresentation,
    dst_basis: &Matrix,
    h: &Matrix,
) -> Result<RepMorphism, Error> {
    let inv = dst_basis
        .inverse()
        .ok_or_else(|| internal("adapted basis is not invertible"))?;
    let conj = inv.mul(h).mul(src_basis);
    let maps = diagonal_blocks(&conj, &dst.rep.dims(), &src.rep.dims())
        .ok_or_else(|| internal("transported morphism mixes vertex blocks"))?;
    let f = RepMorphism { maps };
    check_morphism(&src.rep, &dst.rep, &f)?;
    if !intertwines_back_maps(src, dst, &f) {
        return Err(internal("transported morphism breaks the backward maps"));
    }
    Ok(f)
}

/// Complete catalogue of indecomposable pairs on a single-arrow scalar
/// shape, up to `bound` in each vertex dimension. Both composites of the
/// forward and backward maps vanish, so every pair is equivalent to one in
/// block normal form — forward map an identity block in the leading corner,
/// backward map an identity block in the trailing corner, the block ranks
/// summing to at most the smaller vertex dimension. Sweeping those normal
/// forms, splitting each into indecomposables over the extension algebra,
/// and deduplicating up to isomorphism therefore reaches every
/// indecomposable with dimensions in range.
pub fn pi_module_catalogue(
    pa: &PiAlgebra,
    bound: usize,
) -> Result<Vec<PiRepresentation>, Error> {
    let ph = pa.phylum.clone();
    if ph.shape().arrows.len() != 1 {
        return Err(Error::Unsupported(
            "pair catalogue is implemented for single-arrow shapes".to_string(),
        ));
    }
    let arrow = &ph.shape().arrows[0];
    let (u, v) = (arrow.from, arrow.to);
    let p = ph.p();
    let mut seen: Vec<LeftModule> = Vec::new();
    let mut out: Vec<PiRepresentation> = Vec::new();
    for d_u in 0..=bound {
        for d_v in 0..=bound {
            let min = d_u.min(d_v);
            for r in 0..=min {
                for rp in 0..=(min - r) {
                    let mut modules: Vec<LeftModule> =
                        (0..ph.vertex_count()).map(|w| LeftModule::zero(ph.algebra(w))).collect();
                    modules[u] = LeftModule {
                        p,
                        dim: d_u,
                        action: vec![Matrix::identity(p, d_u)],
                    };
                    modules[v] = LeftModule {
                        p,
                        dim: d_v,
                        action: vec![Matrix::identity(p, d_v)],
                    };
                    let fwd = Matrix::from_fn(p, d_v, d_u, |i, j| u64::from(i == j && i < r));
                    let back = Matrix::from_fn(p, d_u, d_v, |i, j| {
                        u64::from(d_u - i == d_v - j && d_u - i <= rp && d_u - i >= 1)
                    });
                    let rep = Representation::new(ph.clone(), modules, vec![fwd])?;
                    let pr = PiRepresentation::new(rep, vec![back])?;
                    let flat = flatten_pi(pa, &pr)?;
                    for (piece, _) in ar::decompose(&pa.view, &flat, 0x00ca_7a10)? {
                        let mut fresh = true;
                        for old in &seen {
                            if ar::find_module_isomorphism(&pa.view, &piece, old)?.is_some() {
                                fresh = false;
                                break;
                            }
                        }
                        if fresh {
                            let (ipr, _) = unflatten_pi(pa, &piece)?;
                            seen.push(piece);
                            out.push(ipr);
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(|pr| {
        (pr.rep.total_dim(), pr.rep.dims(), pr.rep.maps[0].rank(), pr.back_maps[0].rank())
    });
    Ok(out)
}

/// A short exact sequence of pairs: the underlying representations must form
/// a short exact sequence and both maps must intertwine the backward maps.
#[derive(Debug, Clone)]
pub struct PiSequence {
    pub sub: PiRepresentation,
    pub mid: PiRepresentation,
    pub quot: PiRepresentation,
    pub inc: RepMorphism,
    pub proj: RepMorphism,
}

/// What became of a sequence of pairs under "forget the backward maps, then
/// the backward Nakayama functor".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TheoremDVerdict {
    /// The image of the right-hand term is relatively projective, so the
    /// almost-split prediction does not apply to this sequence.
    HypothesisViolated,
    /// The hypothesis holds and the image sequence splits.
    Split,
    /// The hypothesis holds and the image does not split. When a catalogue
    /// of test representations was supplied, whether the image projection is
    /// right almost split over it.
    NonSplit { right_almost_split: Option<bool> },
}

/// The image sequence with its exactness profile and verdict.
#[derive(Debug, Clone)]
pub struct MonoReport {
    pub sub: Representation,
    pub mid: Representation,
    pub quot: Representation,
    pub inc: RepMorphism,
    pub proj: RepMorphism,
    /// Componentwise exactness of the image. Left exactness is automatic;
    /// surjectivity on the right can genuinely fail.
    pub exact: bool,
    /// Whether the image inclusion admits a retraction and the image
    /// projection a section.
    pub split: bool,
    pub verdict: TheoremDVerdict,
}

/// Does the counit of induction split off `m`? Equivalently: is `m` a direct
/// summand of an induced representation — relatively projective.
pub fn relatively_projective(m: &Representation) -> Result<bool, Error> {
    let res = standard_resolution(m)?;
    Ok(split_epi_section(&res.mid, &res.quot, &res.proj)?.is_some())
}

/// Right-almost-split test for `h : mid -> quot` over a list of test
/// representations: `h` admits no section, and every morphism from a test
/// object into `quot` that is not a split epimorphism factors through `h`.
/// Decided by flattening everything to the phylum's flat algebra and running
/// the module-level factorisation check there.
pub fn right_almost_split_over(
    catalogue: &[Representation],
    mid: &Representation,
    quot: &Representation,
    h: &RepMorphism,
) -> Result<bool, Error> {
    check_morphism(mid, quot, h)?;
    let ph = mid.phylum().clone();
    let fa = flatten(&ph)?;
    let (ker, inc) = rep_kernel(mid, quot, h)?;
    let ext = ar::ModuleExtension {
        sub: flatten_rep(&fa, &ker)?,
        mid: flatten_rep(&fa, mid)?,
        quot: flatten_rep(&fa, quot)?,
        inc: flatten_morphism(&fa, &ker, mid, &inc)?,
        proj: flatten_morphism(&fa, mid, quot, h)?,
    };
    let mut fcat = Vec::with_capacity(catalogue.len());
    for u in catalogue {
        fcat.push(flatten_rep(&fa, u)?);
    }
    ar::brute_force_right_almost_split_check(fa.view(), &ext, &fcat)
}

/// Pushes a short exact sequence of pairs through the backward Nakayama
/// functor (after forgetting the backward maps) and reports the image's
/// exactness, splitness, and almost-split verdict. The verdict guard fires
/// whenever the image of the right-hand term is relatively projective — on
/// every shape tested so far the backward Nakayama functor only ever
/// produces relatively projective values, so the guard is the expected
/// outcome and the `NonSplit` branch is kept for shapes that escape it.
pub fn nu_minus_gstar_sequence(
    s: &PiSequence,
    catalogue: Option<&[Representation]>,
) -> Result<MonoReport, Error> {
    for pr in [&s.sub, &s.mid, &s.quot] {
        let (ok, _) = check_pi_relation(pr);
        if !ok {
            return Err(Error::RelationViolated);
        }
    }
    let under = ShortExactSequence {
        sub: s.sub.rep.clone(),
        mid: s.mid.rep.clone(),
        quot: s.quot.rep.clone(),
        inc: s.inc.clone(),
        proj: s.proj.clone(),
    };
    under.check()?;
    if !intertwines_back_maps(&s.sub, &s.mid, &s.inc)
        || !intertwines_back_maps(&s.mid, &s.quot, &s.proj)
    {
        return Err(Error::BuildFailed(
            "sequence maps do not intertwine the backward maps".to_string(),
        ));
    }
    let nsub = nu_minus(&s.sub.rep)?;
    let nmid = nu_minus(&s.mid.rep)?;
    let nquot = nu_minus(&s.quot.rep)?;
    let inc = nu_minus_on_morphism(&s.sub.rep, &s.mid.rep, &s.inc)?;
    let proj = nu_minus_on_morphism(&s.mid.rep, &s.quot.rep, &s.proj)?;
    let ph = s.mid.rep.phylum().clone();
    let mut exact = true;
    for v in 0..ph.vertex_count() {
        let i = &inc.maps[v];
        let q = &proj.maps[v];
        exact &= q.mul(i).is_zero();
        exact &= i.kernel_basis().cols() == 0;
        exact &= q.rank() == nquot.value.modules[v].dim;
        exact &= i.rank() + q.rank() == nmid.value.modules[v].dim;
    }
    let split = split_mono_retraction(&nsub.value, &nmid.value, &inc)?.is_some()
        && split_epi_section(&nmid.value, &nquot.value, &proj)?.is_some();
    let verdict = if relatively_projective(&nquot.value)? {
        TheoremDVerdict::HypothesisViolated
    } else if split {
        TheoremDVerdict::Split
    } else {
        let right_almost_split = match catalogue {
            None => None,
            Some(cat) => {
                Some(right_almost_split_over(cat, &nmid.value, &nquot.value, &proj)?)
            }
        };
        TheoremDVerdict::NonSplit { right_almost_split }
    };
    Ok(MonoReport {
        sub: nsub.value,
        mid: nmid.value,
        quot: nquot.value,
        inc,
        proj,
        exact,
        split,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hom_over;
    use crate::fixtures::fixture;
    use crate::nakayama::{nu, tau_minus};
    use crate::rep::rep_direct_sum;
    use crate::sample::Sampler;

    fn fx(name: &str) -> Arc<Phylum> {
        Arc::new(fixture(name, 101).unwrap().unwrap())
    }

    /// A representation of a two-vertex scalar shape with the given vertex
    /// dimensions and structure map.
    fn rep2(ph: &Arc<Phylum>, d0: usize, d1: usize, map: Matrix) -> Representation {
        let p = ph.p();
        let modules = vec![
            LeftModule { p, dim: d0, action: vec![Matrix::identity(p, d0)] },
            LeftModule { p, dim: d1, action: vec![Matrix::identity(p, d1)] },
        ];
        Representation::new(ph.clone(), modules, vec![map]).unwrap()
    }

    /// A random relation-satisfying pair: sample a representation and a
    /// morphism into its translate, then pull the pair back through the
    /// equivalence.
    fn random_pair(ph: &Arc<Phylum>, s: &mut Sampler, max_dim: usize) -> PiRepresentation {
        let m = s.representation(ph, max_dim).unwrap();
        let t = tau(&m).unwrap();
        let psi = s.morphism(&m, &t.value).unwrap();
        from_tau_pair(&TauPair { rep: m, tau: t, psi }).unwrap()
    }

    #[test]
    fn backward_maps_are_validated() {
        let ph = fx("f1");
        let m = rep2(&ph, 1, 1, Matrix::identity(101, 1));
        // Wrong count.
        assert_eq!(
            PiRepresentation::new(m.clone(), vec![]).err(),
            Some(Error::DimensionMismatch)
        );
        // Wrong shape.
        assert_eq!(
            PiRepresentation::new(m.clone(), vec![Matrix::zero(101, 2, 1)]).err(),
            Some(Error::DimensionMismatch)
        );
        // Well-formed.
        assert!(PiRepresentation::new(m, vec![Matrix::identity(101, 1)]).is_ok());
    }

    #[test]
    fn relation_verdicts_on_the_two_vertex_line() {
        let ph = fx("f1");
        let m = rep2(&ph, 1, 1, Matrix::identity(101, 1));
        // Identity forward and backward: both composites are nonzero, so the
        // relation fails at both vertices and the residual shows it.
        let bad =
            PiRepresentation::new(m.clone(), vec![Matrix::identity(101, 1)]).unwrap();
        let (ok, residual) = check_pi_relation(&bad);
        assert!(!ok);
        assert!(!residual.maps[0].is_zero());
        assert!(!residual.maps[1].is_zero());
        // Zero backward map: the relation holds with zero residual.
        let (ok, residual) = check_pi_relation(&j_embed(m));
        assert!(ok);
        assert!(residual.maps.iter().all(Matrix::is_zero));
        // The zero representation satisfies everything vacuously.
        let zero = rep2(&ph, 0, 0, Matrix::zero(101, 0, 0));
        let (ok, _) = check_pi_relation(&j_embed(zero));
        assert!(ok);
        // Forward and backward rank-one blocks in complementary corners
        // annihilate each other in both orders, so the relation holds.
        let fwd = Matrix::from_fn(101, 2, 2, |i, j| u64::from(i == 0 && j == 0));
        let m = rep2(&ph, 2, 2, fwd);
        let back = Matrix::from_fn(101, 2, 2, |i, j| u64::from(i == 1 && j == 1));
        let pr = PiRepresentation::new(m, vec![back]).unwrap();
        let (ok, _) = check_pi_relation(&pr);
        assert!(ok);
    }

    #[test]
    fn induced_pairs_translate_to_zero() {
        for name in ["f1", "f2", "f4"] {
            let ph = fx(name);
            let mut s = Sampler::new(11);
            for _ in 0..5 {
                let m = s.representation(&ph, 2).unwrap();
                let tp = to_tau_pair(&j_embed(m)).unwrap();
                assert!(tp.psi.is_zero(), "{name}");
            }
        }
    }

    #[test]
    fn relation_violation_blocks_the_translate_functor() {
        let ph = fx("f1");
        let m = rep2(&ph, 1, 1, Matrix::identity(101, 1));
        let bad = PiRepresentation::new(m, vec![Matrix::identity(101, 1)]).unwrap();
        assert_eq!(to_tau_pair(&bad).err(), Some(Error::RelationViolated));
    }

    #[test]
    fn pairs_and_translate_morphisms_are_the_same_data() {
        // One hundred seeded round trips per fixture, both ways around, with
        // equality of matrices — the two functors are mutually inverse on
        // the nose, not just up to isomorphism.
        for name in ["f1", "f2", "f4"] {
            let ph = fx(name);
            let mut s = Sampler::new(23);
            for round in 0..100 {
                let m = s.representation(&ph, 2).unwrap();
                let t = tau(&m).unwrap();
                let psi = s.morphism(&m, &t.value).unwrap();
                let tp = TauPair::new(m, psi).unwrap();
                let pr = from_tau_pair(&tp).unwrap();
                let back = to_tau_pair(&pr).unwrap();
                for (x, y) in tp.psi.maps.iter().zip(&back.psi.maps) {
                    assert_eq!(x, y, "{name} round {round}");
                }
                let again = from_tau_pair(&back).unwrap();
                for (x, y) in pr.back_maps.iter().zip(&again.back_maps) {
                    assert_eq!(x, y, "{name} round {round}");
                }
            }
        }
    }

    #[test]
    fn extension_algebra_dimensions_and_guards() {
        // Double quiver of the two-vertex line: vertices, both arrow copies,
        // nothing else survives the commutator relations.
        let pa = pi_algebra(&fx("f1"), 2).unwrap();
        assert_eq!(pa.alg.basis().len(), 4);
        // The three-vertex line: 3 trivial + 4 arrows + the three
        // irreducible length-two words.
        let pa3 = pi_algebra(&fx("f2"), 2).unwrap();
        assert_eq!(pa3.alg.basis().len(), 10);
        // Dual numbers at a vertex: not a scalar shape.
        assert!(matches!(pi_algebra(&fx("f4"), 2), Err(Error::Unsupported(_))));
        // A bound too small to verify nilpotency is reported, not truncated.
        assert!(matches!(pi_algebra(&fx("f2"), 1), Err(Error::BuildFailed(_))));
    }

    #[test]
    fn flattening_pairs_round_trips_exactly() {
        for (name, bound) in [("f1", 2), ("f2", 2)] {
            let ph = fx(name);
            let pa = pi_algebra(&ph, bound).unwrap();
            let mut s = Sampler::new(31);
            for round in 0..10 {
                let pr = random_pair(&ph, &mut s, 2);
                let flat = flatten_pi(&pa, &pr).unwrap();
                assert_eq!(flat.dim, pr.rep.total_dim());
                // Flattened coordinates are already vertex-adapted, so the
                // round trip is exact and the basis change is trivial.
                let (back, basis) = unflatten_pi(&pa, &flat).unwrap();
                assert!(basis.is_identity(), "{name} round {round}");
                assert_eq!(back.rep.dims(), pr.rep.dims());
                for (x, y) in back.rep.maps.iter().zip(&pr.rep.maps) {
                    assert_eq!(x, y, "{name} round {round}");
                }
                for (x, y) in back.back_maps.iter().zip(&pr.back_maps) {
                    assert_eq!(x, y, "{name} round {round}");
                }
            }
        }
        // A relation violation is refused, not flattened.
        let ph = fx("f1");
        let pa = pi_algebra(&ph, 2).unwrap();
        let m = rep2(&ph, 1, 1, Matrix::identity(101, 1));
        let bad = PiRepresentation::new(m, vec![Matrix::identity(101, 1)]).unwrap();
        assert_eq!(flatten_pi(&pa, &bad).err(), Some(Error::RelationViolated));
    }

    #[test]
    fn pair_hom_spaces_match_the_extension_algebra() {
        let ph = fx("f1");
        let pa = pi_algebra(&ph, 2).unwrap();
        let mut s = Sampler::new(41);
        for _ in 0..10 {
            let a = random_pair(&ph, &mut s, 2);
            let b = random_pair(&ph, &mut s, 2);
            let pair_dim = pi_hom_space(&a, &b).unwrap().len();
            let flat_dim = hom_over(
                &pa.view,
                &flatten_pi(&pa, &a).unwrap(),
                &flatten_pi(&pa, &b).unwrap(),
            )
            .len();
            assert_eq!(pair_dim, flat_dim);
        }
    }

    #[test]
    fn single_arrow_pair_catalogue_is_complete() {
        let ph = fx("f1");
        let pa = pi_algebra(&ph, 2).unwrap();
        let cat = pi_module_catalogue(&pa, 2).unwrap();
        // The extension of the two-vertex line has exactly four
        // indecomposables: the two simples and the two rank-one pairs.
        assert_eq!(cat.len(), 4);
        let profile: Vec<(Vec<usize>, usize, usize)> = cat
            .iter()
            .map(|pr| (pr.rep.dims(), pr.rep.maps[0].rank(), pr.back_maps[0].rank()))
            .collect();
        assert_eq!(
            profile,
            vec![
                (vec![0, 1], 0, 0),
                (vec![1, 0], 0, 0),
                (vec![1, 1], 0, 1),
                (vec![1, 1], 1, 0),
            ]
        );
        // Completeness spot check: every summand of a random pair is
        // isomorphic to a catalogue member.
        let flat_cat: Vec<LeftModule> =
            cat.iter().map(|pr| flatten_pi(&pa, pr).unwrap()).collect();
        let mut s = Sampler::new(53);
        for _ in 0..10 {
            let pr = random_pair(&ph, &mut s, 2);
            let flat = flatten_pi(&pa, &pr).unwrap();
            for (piece, _) in ar::decompose(&pa.view, &flat, 7).unwrap() {
                let matched = flat_cat.iter().any(|c| {
                    ar::find_module_isomorphism(&pa.view, &piece, c).unwrap().is_some()
                });
                assert!(matched);
            }
        }
    }

    #[test]
    fn adjunction_dimension_counts() {
        // dim Hom(j nu a, b) = dim Hom(a, nu_minus b) and
        // dim Hom(tau_minus a, c) = dim Hom(a, tau c).
        for name in ["f1", "f2"] {
            let ph = fx(name);
            let mut s = Sampler::new(61);
            for _ in 0..8 {
                let a = s.representation(&ph, 2).unwrap();
                let b = random_pair(&ph, &mut s, 2);
                let lhs =
                    pi_hom_space(&j_embed(nu(&a).unwrap().value), &b).unwrap().len();
                let rhs = hom_space(&a, &nu_minus(&b.rep).unwrap().value).unwrap().len();
                assert_eq!(lhs, rhs, "{name}");

                let c = s.representation(&ph, 2).unwrap();
                let lhs =
                    hom_space(&tau_minus(&a).unwrap().value, &c).unwrap().len();
                let rhs = hom_space(&a, &tau(&c).unwrap().value).unwrap().len();
                assert_eq!(lhs, rhs, "{name}");
            }
        }
    }

    #[test]
    fn rep_level_right_almost_split_check() {
        // The knitted sequence 0 -> (0,1) -> (1,1) -> (1,0) -> 0 on the
        // two-vertex line is right almost split over the full catalogue; the
        // split projection from a direct sum is not.
        let ph = fx("f1");
        let fa = flatten(&ph).unwrap();
        let cat = ar::indecomposable_catalogue(&ph, &fa, 2).unwrap();
        let quot = rep2(&ph, 1, 0, Matrix::zero(101, 0, 1));
        let mid = rep2(&ph, 1, 1, Matrix::identity(101, 1));
        let proj = RepMorphism {
            maps: vec![Matrix::identity(101, 1), Matrix::zero(101, 0, 1)],
        };
        check_morphism(&mid, &quot, &proj).unwrap();
        assert!(right_almost_split_over(&cat, &mid, &quot, &proj).unwrap());

        let sub = rep2(&ph, 0, 1, Matrix::zero(101, 1, 0));
        let (sum, _, projections) = rep_direct_sum(&sub, &quot).unwrap();
        assert!(!right_almost_split_over(&cat, &sum, &quot, &projections[1]).unwrap());
    }

    #[test]
    fn image_sequences_under_the_backward_nakayama_functor() {
        let ph = fx("f1");
        let mut s = Sampler::new(71);
        // A split sequence of induced pairs: the image stays exact and
        // split, and the verdict records that the relative-projectivity
        // guard fired — the backward Nakayama functor lands in relatively
        // projective representations on this shape.
        let (a, b) = loop {
            let a = s.representation(&ph, 2).unwrap();
            let b = s.representation(&ph, 2).unwrap();
            if a.total_dim() > 0 && b.total_dim() > 0 {
                break (a, b);
            }
        };
        let (sum, inclusions, projections) = rep_direct_sum(&a, &b).unwrap();
        let seq = PiSequence {
            sub: j_embed(a.clone()),
            mid: j_embed(sum.clone()),
            quot: j_embed(b.clone()),
            inc: inclusions[0].clone(),
            proj: projections[1].clone(),
        };
        let fa = flatten(&ph).unwrap();
        let cat = ar::indecomposable_catalogue(&ph, &fa, 2).unwrap();
        let report = nu_minus_gstar_sequence(&seq, Some(&cat)).unwrap();
        assert!(report.exact);
        assert!(report.split);
        assert_eq!(report.verdict, TheoremDVerdict::HypothesisViolated);

        // A broken underlying sequence is rejected.
        let broken = PiSequence {
            sub: j_embed(a.clone()),
            mid: j_embed(a.clone()),
            quot: j_embed(b.clone()),
            inc: a.identity(),
            proj: a.zero_morphism_to(&b),
        };
        assert_eq!(nu_minus_gstar_sequence(&broken, None).err(), Some(Error::NotExact));

        // Maps that ignore the backward structure are rejected: identity on
        // the underlying representation between pairs with different
        // backward maps.
        let m = rep2(&ph, 1, 1, Matrix::zero(101, 1, 1));
        let withback =
            PiRepresentation::new(m.clone(), vec![Matrix::identity(101, 1)]).unwrap();
        let zero = rep2(&ph, 0, 0, Matrix::zero(101, 0, 0));
        let mismatched = PiSequence {
            sub: withback.clone(),
            mid: j_embed(m.clone()),
            quot: j_embed(zero.clone()),
            inc: m.identity(),
            proj: m.zero_morphism_to(&zero),
        };
        assert!(matches!(
            nu_minus_gstar_sequence(&mismatched, None),
            Err(Error::BuildFailed(_))
        ));
    }

    #[test]
    fn almost_split_pair_sequence_hits_the_guard() {
        // The almost split sequence of pairs over the two-vertex line's
        // extension ends at the source-vertex simple (the two rank-one
        // pairs are projective there): its middle is the forward rank-one
        // pair and its sub the other simple. The image under the backward
        // Nakayama functor falls under the guard — the image of the
        // right-hand term is relatively projective — which is exactly why
        // the almost-split prediction stays vacuous on this shape.
        let ph = fx("f1");
        let pa = pi_algebra(&ph, 2).unwrap();
        let cat = pi_module_catalogue(&pa, 2).unwrap();
        let flat_quot = flatten_pi(&pa, &cat[1]).unwrap(); // simple at the source
        let ass = ar::almost_split_sequence(&pa.view, &flat_quot).unwrap();
        assert!(ass.non_split && ass.ends_indecomposable);
        // Transport the three terms and both maps through the
        // vertex-adapted bases of the flat modules.
        let (sub, sub_basis) = unflatten_pi(&pa, &ass.seq.sub).unwrap();
        let (mid, mid_basis) = unflatten_pi(&pa, &ass.seq.mid).unwrap();
        let (quot, quot_basis) = unflatten_pi(&pa, &ass.seq.quot).unwrap();
        assert_eq!(sub.rep.dims(), vec![0, 1]);
        assert_eq!(mid.rep.dims(), vec![1, 1]);
        assert_eq!(quot.rep.dims(), vec![1, 0]);
        let inc = pi_transport_morphism(&sub, &sub_basis, &mid, &mid_basis, &ass.seq.inc).unwrap();
        let proj =
            pi_transport_morphism(&mid, &mid_basis, &quot, &quot_basis, &ass.seq.proj).unwrap();
        let seq = PiSequence { sub, mid, quot, inc, proj };
        let report = nu_minus_gstar_sequence(&seq, None).unwrap();
        assert_eq!(report.verdict, TheoremDVerdict::HypothesisViolated);
        // Known images on this shape: the sub vanishes, the middle loses its
        // source component, the quotient becomes the full invertible-map
        // representation — so the image is neither exact nor split.
        assert_eq!(report.sub.dims(), vec![0, 0]);
        assert_eq!(report.mid.dims(), vec![0, 1]);
        assert_eq!(report.quot.dims(), vec![1, 1]);
        assert!(!report.exact);
        assert!(!report.split);
    }
}
