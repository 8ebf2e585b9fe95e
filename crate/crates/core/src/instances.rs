//! Small algebras used throughout the test suites and the command line examples.

use std::sync::Arc;

use crate::algebra::{
    algebra_from_structure_constants, path_algebra, species_algebra, AlgRef, Quiver, SpeciesArrow, SpeciesFq,
    SpeciesVertex,
};
use crate::gf::Field;

pub fn f2() -> Field {
    Field::new(2, 1).expect("F_2")
}

pub fn f4() -> Field {
    Field::new(2, 2).expect("F_4")
}

/// Path algebra of `1 → 2`.
pub fn a2(k: &Field) -> AlgRef {
    let q = Quiver::new(&["1", "2"], &[("a", 0, 1)]);
    Arc::new(path_algebra(k, &q, &[]).expect("A_2"))
}

/// Path algebra of `1 → 2 → 3` modulo the composite.
pub fn a3_rad2(k: &Field) -> AlgRef {
    let q = Quiver::new(&["1", "2", "3"], &[("a", 0, 1), ("b", 1, 2)]);
    Arc::new(path_algebra(k, &q, &[vec![(1, vec![0, 1])]]).expect("A_3/rad^2"))
}

/// `k[x]/(x²)`.
pub fn dual_numbers(k: &Field) -> AlgRef {
    let q = Quiver::new(&["1"], &[("x", 0, 0)]);
    Arc::new(path_algebra(k, &q, &[vec![(1, vec![0, 0])]]).expect("k[x]/(x^2)"))
}

/// Preprojective algebra of type A_2: the double quiver `1 ⇄ 2` with both composites zero.
pub fn preproj_a2(k: &Field) -> AlgRef {
    let q = Quiver::new(&["1", "2"], &[("a", 0, 1), ("b", 1, 0)]);
    Arc::new(path_algebra(k, &q, &[vec![(1, vec![0, 1])], vec![(1, vec![1, 0])]]).expect("preprojective A_2"))
}

/// The 4-dimensional local F_2-algebra `F_4 ⊕ F_4·x` with `x λ = λ² x` and `x² = 0`,
/// on the basis `1, ω, x, ωx`.
pub fn lambda_tw() -> AlgRef {
    let f = f2();
    let d = 4;
    let mut t = vec![0; d * d * d];
    let mut set = |i: usize, j: usize, ks: &[usize]| {
        for &k in ks {
            t[(i * d + j) * d + k] = 1;
        }
    };
    for j in 0..4 {
        set(0, j, &[j]);
        set(j, 0, &[j]);
    }
    set(1, 1, &[0, 1]);
    set(1, 2, &[3]);
    set(1, 3, &[2, 3]);
    set(2, 1, &[2, 3]);
    set(3, 1, &[2]);
    let names = ["1", "w", "x", "wx"].iter().map(|s| s.to_string()).collect();
    Arc::new(algebra_from_structure_constants(&f, names, t, vec![1, 0, 0, 0]).expect("twisted algebra"))
}

/// The same algebra as the tensor algebra of a species: one vertex with `D = F_4` and a
/// Frobenius-twisted loop, truncated at path length 2.
pub fn lambda_tw_species_data() -> SpeciesFq {
    SpeciesFq {
        vertices: vec![SpeciesVertex { name: "1".into(), degree: 2 }],
        arrows: vec![SpeciesArrow { name: "x".into(), source: 0, target: 0, degree: 2, twist: 1 }],
        rad_power: Some(2),
    }
}

pub fn lambda_tw_species() -> AlgRef {
    Arc::new(species_algebra(&f2(), &lambda_tw_species_data()).expect("twisted species"))
}

/// Species `F_2 → F_4` with bimodule `F_4`.
pub fn b2_species_data() -> SpeciesFq {
    SpeciesFq {
        vertices: vec![SpeciesVertex { name: "1".into(), degree: 1 }, SpeciesVertex { name: "2".into(), degree: 2 }],
        arrows: vec![SpeciesArrow { name: "a".into(), source: 0, target: 1, degree: 2, twist: 0 }],
        rad_power: None,
    }
}

pub fn b2_species() -> AlgRef {
    Arc::new(species_algebra(&f2(), &b2_species_data()).expect("B_2 species"))
}

/// `F_4` as a 2-dimensional F_2-algebra on the basis `1, ω`.
pub fn f4_over_f2() -> AlgRef {
    let table = vec![1, 0, 0, 1, 0, 1, 1, 1];
    Arc::new(
        algebra_from_structure_constants(&f2(), vec!["1".into(), "w".into()], table, vec![1, 0]).expect("F_4 over F_2"),
    )
}

/// Named desk instances over F_2.
pub fn desk_f2() -> Vec<(&'static str, AlgRef)> {
    let k = f2();
    vec![
        ("A2", a2(&k)),
        ("dual-numbers", dual_numbers(&k)),
        ("lambda-tw", lambda_tw()),
        ("preproj-A2", preproj_a2(&k)),
        ("B2-species", b2_species()),
        ("A3-rad2", a3_rad2(&k)),
    ]
}
