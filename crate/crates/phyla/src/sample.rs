//! Seeded generation of modules, representations, and morphisms.
//!
//! Every entry point draws from a ChaCha stream keyed on a caller seed, so
//! identical seeds replay identical objects — any failure from a randomized
//! run can be reproduced exactly from its seed.
//!
//! Modules are assembled from structured pieces — an indecomposable
//! projective at a random vertex idempotent, optionally quotiented by the
//! action closure of one random radical vector — rather than from raw random
//! action matrices, which would almost never define a module. Over a
//! semisimple algebra the pieces are simples; over algebras with radical the
//! quotient branch also produces the non-projective quotients.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::algebra::{
    direct_sum_modules, hom_over, projective_at, quotient_module, AlgebraView, LeftModule,
};
use crate::error::Error;
use crate::matrix::Matrix;
use crate::phylum::Phylum;
use crate::rep::{hom_space, RepMorphism, Representation};

/// The smallest action-closed column span containing `seed`: repeatedly
/// adjoins the action of every algebra basis element until the rank is
/// stable. The result is a pivot-column basis suitable for `submodule` /
/// `quotient_module`.
pub fn action_closure(view: &AlgebraView, m: &LeftModule, seed: &Matrix) -> Matrix {
    let p = view.p;
    let mut span = seed.clone();
    let mut rank = span.rank();
    loop {
        let mut blocks = vec![span.clone()];
        for i in 0..view.dim {
            blocks.push(m.action[i].mul(&span));
        }
        let refs: Vec<&Matrix> = blocks.iter().collect();
        let wide = Matrix::hstack(p, m.dim, &refs);
        let (_, pivots) = wide.rref();
        let cols: Vec<Matrix> = pivots.iter().map(|&c| wide.column(c)).collect();
        let col_refs: Vec<&Matrix> = cols.iter().collect();
        span = Matrix::hstack(p, m.dim, &col_refs);
        if span.cols() == rank {
            return span;
        }
        rank = span.cols();
    }
}

/// Deterministic source of field elements, matrices, modules,
/// representations, and morphisms.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A field element. The modulo bias is below 2^-32 for every permitted
    /// prime, which is irrelevant for test generation.
    pub fn element(&mut self, p: u64) -> u64 {
        self.rng.next_u64() % p
    }

    /// A uniform index strictly below `n`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "empty range");
        (self.rng.next_u64() % n as u64) as usize
    }

    /// A matrix with independent uniform entries.
    pub fn matrix(&mut self, p: u64, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(p, rows, cols, |_, _| self.rng.next_u64() % p)
    }

    /// A module over `view` of dimension at most `max_dim`, assembled from
    /// projectives and their cyclic-radical quotients.
    pub fn module(&mut self, view: &AlgebraView, max_dim: usize) -> LeftModule {
        let target = self.below(max_dim + 1);
        let mut parts: Vec<LeftModule> = Vec::new();
        let mut dim = 0;
        for _ in 0..4 * max_dim.max(1) {
            if dim >= target {
                break;
            }
            let w = view.idempotents[self.below(view.idempotents.len())];
            let (proj, _) = projective_at(view, w);
            let piece = if proj.dim > 1 && self.below(2) == 1 {
                // Quotient by the closure of a random radical vector.
                let rad_blocks: Vec<Matrix> =
                    view.radical.iter().map(|&r| proj.action[r].clone()).collect();
                let refs: Vec<&Matrix> = rad_blocks.iter().collect();
                let rad = Matrix::hstack(view.p, proj.dim, &refs);
                let vector = rad.mul(&self.matrix(view.p, rad.cols(), 1));
                let span = action_closure(view, &proj, &vector);
                let (quot, _) = quotient_module(view, &proj, &span);
                quot
            } else {
                proj
            };
            if piece.dim == 0 || dim + piece.dim > target {
                continue;
            }
            dim += piece.dim;
            parts.push(piece);
        }
        let refs: Vec<&LeftModule> = parts.iter().collect();
        direct_sum_modules(view, &refs).0
    }

    /// A representation of the phylum with per-vertex dimension at most
    /// `max_dim` and structure maps drawn from the full hom space.
    pub fn representation(
        &mut self,
        ph: &Arc<Phylum>,
        max_dim: usize,
    ) -> Result<Representation, Error> {
        let p = ph.p();
        let modules: Vec<LeftModule> =
            (0..ph.vertex_count()).map(|v| self.module(ph.algebra(v), max_dim)).collect();
        let mut maps = Vec::new();
        for (a, arrow) in ph.shape().arrows.iter().enumerate() {
            let (fm, _) = ph.f_arrow(a, &modules[arrow.from]);
            let basis = hom_over(ph.algebra(arrow.to), &fm, &modules[arrow.to]);
            let mut map = Matrix::zero(p, modules[arrow.to].dim, fm.dim);
            for b in &basis {
                let c = self.element(p);
                if c != 0 {
                    map = map.add(&b.scale(c));
                }
            }
            maps.push(map);
        }
        Representation::new(ph.clone(), modules, maps)
    }

    /// A random element of the hom space between two representations.
    pub fn morphism(
        &mut self,
        m: &Representation,
        n: &Representation,
    ) -> Result<RepMorphism, Error> {
        let basis = hom_space(m, n)?;
        let p = m.phylum().p();
        let mut out = m.zero_morphism_to(n);
        for b in &basis {
            let c = self.element(p);
            if c != 0 {
                out = out.add(&b.scale(c));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;
    use crate::rep::check_morphism;

    #[test]
    fn same_seed_replays_the_same_representation() {
        let ph = Arc::new(fixture("f2", 101).unwrap().unwrap());
        let a = Sampler::new(9).representation(&ph, 3).unwrap();
        let b = Sampler::new(9).representation(&ph, 3).unwrap();
        assert_eq!(a.dims(), b.dims());
        for v in 0..ph.vertex_count() {
            assert_eq!(a.modules[v], b.modules[v]);
        }
        for (x, y) in a.maps.iter().zip(&b.maps) {
            assert_eq!(x.entries(), y.entries());
        }
    }

    #[test]
    fn sampled_representations_respect_the_dimension_bound() {
        let ph = Arc::new(fixture("f4", 101).unwrap().unwrap());
        let mut s = Sampler::new(1);
        for _ in 0..20 {
            let m = s.representation(&ph, 3).unwrap();
            assert!(m.dims().iter().all(|&d| d <= 3));
        }
    }

    #[test]
    fn dual_number_modules_cover_all_small_dimensions() {
        // Over k[l]/l^2 the pieces are the regular module (dim 2) and its
        // simple quotient (dim 1), so dims 0, 1, 2, 3 should all occur.
        let ph = Arc::new(fixture("f4", 101).unwrap().unwrap());
        let view = ph.algebra(1);
        let mut s = Sampler::new(5);
        let mut seen = [false; 4];
        for _ in 0..60 {
            let m = s.module(view, 3);
            assert!(m.dim <= 3);
            seen[m.dim] = true;
        }
        assert_eq!(seen, [true; 4]);
    }

    #[test]
    fn sampled_morphisms_are_valid() {
        let ph = Arc::new(fixture("f1", 101).unwrap().unwrap());
        let mut s = Sampler::new(3);
        for _ in 0..10 {
            let m = s.representation(&ph, 3).unwrap();
            let n = s.representation(&ph, 3).unwrap();
            let f = s.morphism(&m, &n).unwrap();
            check_morphism(&m, &n, &f).unwrap();
        }
    }

    #[test]
    fn closure_of_a_radical_vector_inside_the_dual_numbers() {
        let ph = Arc::new(fixture("f4", 101).unwrap().unwrap());
        let view = ph.algebra(1);
        let reg = view.regular_module();
        // The radical vector l generates the one-dimensional ideal (l).
        let mut seed = Matrix::zero(101, 2, 1);
        seed.set(view.radical[0], 0, 1);
        let span = action_closure(view, &reg, &seed);
        assert_eq!(span.cols(), 1);
        // The unit generates everything.
        let unit = view.unit.clone();
        assert_eq!(action_closure(view, &reg, &unit).cols(), 2);
    }
}
