//! Ready-made phyla with known invariants, shared by the test suite and the
//! command line tool.
//!
//! * `f1` — two vertices joined by one arrow, scalar data everywhere.
//! * `f2` — three vertices in a line, scalar data everywhere.
//! * `f3` — two sources feeding one sink, scalar data everywhere.
//! * `f4` — two vertices joined by one arrow; the target carries the dual
//!   numbers and the arrow carries them as a bimodule, free on both sides.
//! * `f4-broken` — like `f4` but the arrow carries the one-dimensional
//!   quotient of the dual numbers, which is not left projective; building
//!   this phylum fails and the failure is the point.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{build_algebra, AlgebraView, Bimodule, PresArrow, PresentationQuiver};
use crate::error::Error;
use crate::matrix::Matrix;
use crate::phylum::{Phylum, ShapeArrow, ShapeQuiver};

/// One-dimensional algebra (the field itself).
pub fn field_algebra(p: u64) -> AlgebraView {
    let q = PresentationQuiver { vertices: vec!["v".to_string()], arrows: vec![] };
    build_algebra(p, &q, &[], 0).expect("field algebra builds").view()
}

/// The dual numbers: one loop squaring to zero. Basis: trivial path, loop.
pub fn dual_numbers(p: u64) -> AlgebraView {
    let q = PresentationQuiver {
        vertices: vec!["v".to_string()],
        arrows: vec![PresArrow { name: "l".to_string(), from: 0, to: 0 }],
    };
    build_algebra(p, &q, &[vec![(vec![0, 0], 1)]], 1)
        .expect("dual numbers build")
        .view()
}

fn scalar_bimodule(p: u64) -> Bimodule {
    Bimodule {
        p,
        dim: 1,
        left_action: vec![Matrix::identity(p, 1)],
        right_action: vec![Matrix::identity(p, 1)],
    }
}

fn shape(vertices: &[&str], arrows: &[(&str, usize, usize)]) -> ShapeQuiver {
    ShapeQuiver {
        vertices: vertices.iter().map(|v| v.to_string()).collect(),
        arrows: arrows
            .iter()
            .map(|&(name, from, to)| ShapeArrow { name: name.to_string(), from, to })
            .collect(),
    }
}

/// The names of the fixtures that build successfully.
pub fn fixture_names() -> Vec<&'static str> {
    vec!["f1", "f2", "f3", "f4"]
}

/// The raw data of a fixture, or `None` for an unknown name.
pub fn fixture_data(
    name: &str,
    p: u64,
) -> Option<(ShapeQuiver, Vec<AlgebraView>, Vec<Bimodule>)> {
    let k = field_algebra(p);
    match name {
        "f1" => Some((
            shape(&["1", "2"], &[("a", 0, 1)]),
            vec![k.clone(), k],
            vec![scalar_bimodule(p)],
        )),
        "f2" => Some((
            shape(&["1", "2", "3"], &[("a", 0, 1), ("b", 1, 2)]),
            vec![k.clone(), k.clone(), k],
            vec![scalar_bimodule(p), scalar_bimodule(p)],
        )),
        "f3" => Some((
            shape(&["1", "2", "3"], &[("a", 0, 2), ("b", 1, 2)]),
            vec![k.clone(), k.clone(), k],
            vec![scalar_bimodule(p), scalar_bimodule(p)],
        )),
        "f4" => {
            let d = dual_numbers(p);
            let free = Bimodule {
                p,
                dim: 2,
                left_action: d.left_mul.clone(),
                right_action: vec![Matrix::identity(p, 2)],
            };
            Some((shape(&["1", "2"], &[("a", 0, 1)]), vec![k, d], vec![free]))
        }
        "f4-broken" => {
            let d = dual_numbers(p);
            let simple = Bimodule {
                p,
                dim: 1,
                left_action: vec![Matrix::identity(p, 1), Matrix::zero(p, 1, 1)],
                right_action: vec![Matrix::identity(p, 1)],
            };
            Some((shape(&["1", "2"], &[("a", 0, 1)]), vec![k, d], vec![simple]))
        }
        _ => None,
    }
}

/// Builds a fixture phylum. `None` for an unknown name; `Some(Err(..))` when
/// the fixture exists but its data fails certification (by design for
/// `f4-broken`).
pub fn fixture(name: &str, p: u64) -> Option<Result<Phylum, Error>> {
    let (shape, algebras, bimodules) = fixture_data(name, p)?;
    Some(Phylum::new(shape, algebras, bimodules))
}

/// Human-readable vertex name lookup used in reports.
pub fn vertex_name(ph: &Phylum, v: usize) -> String {
    ph.shape().vertices[v].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_listed_fixtures_build() {
        for name in fixture_names() {
            let ph = fixture(name, 101).unwrap().unwrap();
            assert!(ph.vertex_count() >= 2, "{name}");
        }
    }

    #[test]
    fn fixture_path_counts() {
        let counts = [("f1", 3), ("f2", 6), ("f3", 5), ("f4", 3)];
        for (name, expected) in counts {
            let ph = fixture(name, 101).unwrap().unwrap();
            assert_eq!(ph.paths().len(), expected, "{name}");
        }
    }

    #[test]
    fn f4_arrow_has_two_dimensional_dual() {
        let ph = fixture("f4", 101).unwrap().unwrap();
        assert_eq!(ph.cert(0).dual.dim, 2);
    }

    #[test]
    fn broken_fixture_fails_left_projectivity() {
        let got = fixture("f4-broken", 101).unwrap();
        assert!(matches!(got, Err(Error::NotProjectiveLeft)));
    }

    #[test]
    fn unknown_fixture_name_is_none() {
        assert!(fixture("f9", 101).is_none());
    }
}
