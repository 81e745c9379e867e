#![allow(dead_code)]

use tightspan::closure::{restrict_to_lower_set, ClosureSystem, ElementSet};
use tightspan::exactgeom::{face_lattice_closure, fan_closure, hull, normal_fan, rat, Encoding, Fan, PointConfig, Rational};
use tightspan::matroid::{corank_valuation, direct_sum, matroid_closure, matroid_polytope, Matroid, Valuation};
use tightspan::subdivision::{regular_subdivision, tight_span_closure, HeightFunction, Subdivision};

pub fn config(dim: usize, pts: &[&[i64]]) -> PointConfig {
    PointConfig::from_ints(dim, &pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn square() -> PointConfig {
    config(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]])
}

pub fn triangle() -> PointConfig {
    config(2, &[&[0, 0], &[1, 0], &[0, 1]])
}

pub fn pentagon() -> PointConfig {
    config(2, &[&[0, 0], &[2, 0], &[3, 2], &[1, 3], &[-1, 2]])
}

pub fn cube() -> PointConfig {
    let pts: Vec<Vec<i64>> = (0..8).map(|m| (0..3).map(|i| (m >> i & 1) as i64).collect()).collect();
    PointConfig::from_ints(3, &pts).unwrap()
}

pub fn prism() -> PointConfig {
    config(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 0, 1], &[0, 1, 1]])
}

pub fn pyramid() -> PointConfig {
    config(3, &[&[0, 0, 0], &[2, 0, 0], &[2, 2, 0], &[0, 2, 0], &[1, 1, 1]])
}

pub fn simplex3() -> PointConfig {
    config(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
}

/// Vertices `e_B` of `Δ(r, n)` in the basis order of `U_{r,n}`.
pub fn hypersimplex(r: usize, n: usize) -> PointConfig {
    matroid_polytope(&Matroid::uniform(r, n))
}

pub fn bent_segment() -> Subdivision {
    regular_subdivision(&config(1, &[&[-1], &[0], &[1]]), &HeightFunction::from_ints(&[1, 0, 1])).unwrap()
}

pub fn set(n: usize, xs: &[usize]) -> ElementSet {
    ElementSet::from_indices(n, xs.iter().copied())
}

pub fn fano() -> Matroid {
    let lines = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
    let mut bases = Vec::new();
    for a in 0..7 {
        for b in a + 1..7 {
            for c in b + 1..7 {
                if !lines.contains(&[a, b, c]) {
                    bases.push(vec![a, b, c]);
                }
            }
        }
    }
    Matroid::from_bases(7, &bases).unwrap()
}

pub fn blocks(k: usize) -> Matroid {
    let u12 = Matroid::uniform(1, 2);
    (1..k).fold(u12.clone(), |acc, _| direct_sum(&acc, &u12))
}

/// `v(B) = value` on the listed bases of `U_{r,n}`, 0 elsewhere.
pub fn uniform_valuation(r: usize, n: usize, high: &[&[usize]], value: i64) -> Valuation {
    let u = Matroid::uniform(r, n);
    let entries: Vec<(Vec<usize>, Rational)> = high.iter().map(|b| (b.to_vec(), rat(value))).collect();
    Valuation::from_entries(&u, &entries).unwrap()
}

pub fn quartet() -> Valuation {
    uniform_valuation(2, 4, &[&[2, 3]], 1)
}

pub fn subdivision_of(v: &Valuation) -> Subdivision {
    regular_subdivision(&matroid_polytope(v.matroid()), &HeightFunction(v.values().to_vec())).unwrap()
}

/// Point sets `{p : p_i = 0}` of a 0/1 configuration.
pub fn coordinate_faces(c: &PointConfig) -> Vec<ElementSet> {
    let n = c.len();
    (0..c.dim())
        .map(|i| ElementSet::from_indices(n, (0..n).filter(|&p| c.point(p)[i] == rat(0))))
        .filter(|s| !s.is_empty() && !s.is_full())
        .collect()
}

fn named(name: &str, s: ClosureSystem) -> (String, ClosureSystem) {
    (name.to_string(), s)
}

/// Closure systems with at most 15 elements.
pub fn corpus() -> Vec<(String, ClosureSystem)> {
    let mut out = Vec::new();
    for k in 1..=6 {
        out.push(named(&format!("identity {k}"), ClosureSystem::identity(k).unwrap()));
    }
    let polys: Vec<(&str, PointConfig)> = vec![
        ("triangle", triangle()),
        ("square", square()),
        ("pentagon", pentagon()),
        ("cube", cube()),
        ("prism", prism()),
        ("pyramid", pyramid()),
        ("simplex", simplex3()),
        ("hypersimplex 2 4", hypersimplex(2, 4)),
    ];
    for (name, c) in &polys {
        let h = hull(c);
        out.push(named(&format!("{name} vertices"), face_lattice_closure(&h, Encoding::Vertex)));
        out.push(named(&format!("{name} facets"), face_lattice_closure(&h, Encoding::Facet)));
    }
    for (name, c) in polys.iter().take(5) {
        out.push(named(&format!("{name} normal fan"), fan_closure(&normal_fan(c, &hull(c)).unwrap())));
    }
    let orthant = Fan::new(
        3,
        (0..3).map(|i| (0..3).map(|j| rat((i == j) as i64)).collect()).collect(),
        vec![vec![0, 1, 2]],
        vec![],
    )
    .unwrap();
    out.push(named("orthant", fan_closure(&orthant)));

    let u12 = Matroid::uniform(1, 2);
    let matroids = vec![
        ("U23", Matroid::uniform(2, 3)),
        ("U24", Matroid::uniform(2, 4)),
        ("U35", Matroid::uniform(3, 5)),
        ("fano", fano()),
        ("U12+U12", direct_sum(&u12, &u12)),
        ("loop", Matroid::from_bases(3, &[vec![0, 1]]).unwrap()),
        ("U12^4", blocks(4)),
    ];
    for (name, m) in &matroids {
        out.push(named(&format!("{name} flats"), matroid_closure(m)));
    }

    let fig = bent_segment();
    out.push(named("bent segment free", tight_span_closure(&fig, &[]).unwrap()));
    out.push(named("bent segment tight", tight_span_closure(&fig, fig.boundary_facets()).unwrap()));
    let sq = regular_subdivision(&square(), &HeightFunction::zero(4)).unwrap();
    out.push(named("square trivial span", tight_span_closure(&sq, &[]).unwrap()));
    let pyramids = subdivision_of(&corank_valuation(&blocks(2)));
    out.push(named("two pyramids span", tight_span_closure(&pyramids, &[]).unwrap()));
    let q = subdivision_of(&quartet());
    out.push(named("quartet loops span", tight_span_closure(&q, &coordinate_faces(q.config())).unwrap()));
    out.push(named("quartet tight", tight_span_closure(&q, q.boundary_facets()).unwrap()));

    // lower-set restrictions
    let sq_hull = hull(&square());
    let sq_faces = face_lattice_closure(&sq_hull, Encoding::Vertex);
    let edge = set(4, &[0, 1]);
    out.push(named("square bounded faces", restrict_to_lower_set(&sq_faces, move |f| f.is_disjoint(&edge))));
    let triangle_faces = face_lattice_closure(&hull(&triangle()), Encoding::Vertex);
    out.push(named("triangle 0-skeleton", restrict_to_lower_set(&triangle_faces, |f| f.count() <= 1)));
    let cube_faces = face_lattice_closure(&hull(&cube()), Encoding::Vertex);
    out.push(named("cube 1-skeleton", restrict_to_lower_set(&cube_faces, |f| f.count() <= 2)));
    out.push(named("cube 0-skeleton", restrict_to_lower_set(&cube_faces, |f| f.count() <= 1)));
    let fano_flats = matroid_closure(&fano());
    out.push(named("fano rank 1 flats", restrict_to_lower_set(&fano_flats, |f| f.count() <= 1)));
    out
}
