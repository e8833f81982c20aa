use proptest::prelude::*;

use bbg_core::homology::{
    connectivity_of, simplicial_homology, smith_normal_form, ChainComplex, Connectivity, SparseMatrix,
};
use bbg_core::params::{add_floors, canonical, nu, solution_types, symmetry_orbit, third_floor, Parameters};
use bbg_core::simplicial::{are_isomorphic, find_isomorphism, join, SimplicialComplex, VertexLabel};

fn complex_strategy(max_vertices: u32) -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(1..=max_vertices, 1..=4), 1..=5).prop_map(|faces| {
        SimplicialComplex::from_faces(faces.into_iter().map(|f| f.into_iter().map(VertexLabel::Point)))
    })
}

fn relabel(k: &SimplicialComplex, shift: u32) -> SimplicialComplex {
    k.map_labels(|l| match l {
        VertexLabel::Point(i) => VertexLabel::Point((i * 7 + shift) % 101 + 200),
        other => other.clone(),
    })
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// gcd of all `j x j` minors
fn minor_gcd(m: &[Vec<i64>], j: usize) -> i64 {
    let (rows, cols) = (m.len(), m[0].len());
    let mut g = 0;
    for rs in subsets(rows, j) {
        for cs in subsets(cols, j) {
            let sub: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
            g = gcd(g, det(&sub));
        }
    }
    g
}

proptest! {
    #[test]
    fn nu_is_symmetric_and_bounded(m in 0u32..=50, n in 0u32..=50) {
        prop_assert_eq!(nu(m, n), nu(n, m));
        prop_assert!(nu(m, n) <= m.min(n));
    }

    #[test]
    fn floors_add(p in -100i64..=1000, q in -100i64..=1000) {
        let sum = add_floors(p, q).unwrap();
        prop_assert_eq!(sum, third_floor(p) + third_floor(q));
    }

    #[test]
    fn solution_types_solve(r in 0u32..12, g in 0u32..12, n in 0u32..12) {
        prop_assume!(n <= r + g);
        let p = Parameters::new(r, g, n, r + g - n).unwrap();
        for t in solution_types(&p) {
            prop_assert!(t.a + t.b == r && t.a + t.c == n && t.b + t.d == p.right && t.c + t.d == g);
        }
    }

    #[test]
    fn one_canonical_form_per_orbit(r in 0u32..10, g in 0u32..10, n in 0u32..10) {
        prop_assume!(n <= r + g);
        let p = Parameters::new(r, g, n, r + g - n).unwrap();
        let (orbit, canon) = symmetry_orbit(&p);
        prop_assert!(orbit.iter().all(|q| canonical(q) == canon));
        prop_assert_eq!(canonical(&canon), canon);
    }

    #[test]
    fn smith_factors_are_minor_gcd_ratios(
        rows in 1usize..=4,
        cols in 1usize..=4,
        seed in prop::collection::vec(-6i64..=6, 16),
    ) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
        let form = smith_normal_form(&SparseMatrix::from_dense(&m)).unwrap();
        let f = &form.invariant_factors;
        prop_assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        let mut product = 1i64;
        for j in 1..=rows.min(cols).min(3) {
            let g = minor_gcd(&m, j);
            if j <= f.len() {
                product *= f[j - 1] as i64;
                prop_assert_eq!(product, g);
            } else {
                prop_assert_eq!(g, 0);
            }
        }
    }

    #[test]
    fn euler_characteristic_matches_betti_numbers(k in complex_strategy(7)) {
        let h = simplicial_homology(&k).unwrap();
        let f = k.f_vector();
        let chi: i64 = f.iter().enumerate().map(|(d, &x)| if d % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        prop_assert_eq!(chi - 1, h.reduced_euler_characteristic());
    }

    #[test]
    fn empty_complex_is_the_join_unit(k in complex_strategy(6)) {
        prop_assert_eq!(join(&SimplicialComplex::empty(), &k), k.clone());
        prop_assert_eq!(join(&k, &SimplicialComplex::empty()), k);
    }

    #[test]
    fn join_is_associative(a in complex_strategy(3), b in complex_strategy(3), c in complex_strategy(3)) {
        let left = join(&join(&a, &b), &c);
        let right = join(&a, &join(&b, &c));
        prop_assert!(are_isomorphic(&left, &right).unwrap());
    }

    #[test]
    fn isomorphism_is_an_equivalence(k in complex_strategy(6), l in complex_strategy(6), shift in 0u32..50) {
        let moved = relabel(&k, shift);
        prop_assert!(are_isomorphic(&k, &k).unwrap());
        prop_assert!(are_isomorphic(&k, &moved).unwrap());
        prop_assert!(are_isomorphic(&moved, &k).unwrap());
        prop_assert_eq!(are_isomorphic(&k, &l).unwrap(), are_isomorphic(&l, &k).unwrap());
        if are_isomorphic(&k, &l).unwrap() {
            prop_assert!(are_isomorphic(&moved, &l).unwrap());
        }
    }

    #[test]
    fn isomorphism_witness_maps_facets(k in complex_strategy(6), shift in 0u32..50) {
        let moved = relabel(&k, shift);
        let map = find_isomorphism(&k, &moved, 100_000).unwrap().expect("relabelled copy");
        let mut image: Vec<Vec<u32>> = k
            .facets()
            .iter()
            .map(|f| {
                let mut g: Vec<u32> = f.iter().map(|&v| map[v as usize]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        image.sort();
        prop_assert_eq!(image, moved.facets().to_vec());
    }

    #[test]
    fn homology_is_relabelling_invariant(k in complex_strategy(7), shift in 0u32..50) {
        prop_assert_eq!(simplicial_homology(&k).unwrap(), simplicial_homology(&relabel(&k, shift)).unwrap());
    }

    #[test]
    fn join_raises_connectivity(k in complex_strategy(4), l in complex_strategy(4)) {
        let (_, ck) = connectivity_of(&k).unwrap();
        let (_, cl) = connectivity_of(&l).unwrap();
        let (_, cj) = connectivity_of(&join(&k, &l)).unwrap();
        if let (Connectivity::Degree(p), Connectivity::Degree(q)) = (ck, cl) {
            prop_assert!(cj.at_least(p + q + 2));
        } else {
            prop_assert_eq!(cj, Connectivity::Acyclic);
        }
    }

    #[test]
    fn boundary_squares_to_zero(k in complex_strategy(7)) {
        // construction fails if it does not
        prop_assert!(ChainComplex::from_simplicial(&k).is_ok());
    }
}
