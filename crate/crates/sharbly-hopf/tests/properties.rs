use exact_linalg::Vector;
use rand::Rng;
use sharbly_hopf::{
    bialg_check, coassoc_check, counit_check, hopf_check, locate, normalize, rng, Element,
};

// Exact Gram–Schmidt on a random basis, split into groups: the group spans
// are pairwise orthogonal, and mixing within a group keeps them so.
fn orthogonal_groups(r: &mut impl Rng, dim: usize, sizes: &[usize]) -> Vec<Vec<Vector>> {
    assert!(sizes.iter().sum::<usize>() <= dim);
    let basis = rng::random_basis(r, dim);
    let mut ortho: Vec<Vector> = Vec::with_capacity(dim);
    for u in &basis {
        let mut w = u.clone();
        for o in &ortho {
            let c = u.dot(o) / o.dot(o);
            w = w.sub(&o.scale(&c));
        }
        ortho.push(w.primitive());
    }
    let mut groups = Vec::new();
    let mut offset = 0;
    for &k in sizes {
        let slice = &ortho[offset..offset + k];
        offset += k;
        // random unimodular-ish mix inside the group (reject if dependent)
        loop {
            let mixed: Vec<Vector> = (0..k)
                .map(|_| {
                    let mut v = Vector::zero(dim);
                    for s in slice {
                        let c: i64 = r.gen_range(-3..=3);
                        v = v.add(&s.scale(&exact_linalg::rat_from_i64(c, 1)));
                    }
                    v
                })
                .collect();
            if exact_linalg::Space::span(dim, &mixed)
                .map(|s| s.rank() == k)
                .unwrap_or(false)
            {
                groups.push(mixed);
                break;
            }
        }
    }
    groups
}

fn element(dim: usize, t: &[Vector]) -> Element {
    Element::from_tuple(dim, t).unwrap()
}

#[test]
fn mu_is_associative_and_commutative() {
    let mut r = rng::seeded(1);
    for _ in 0..25 {
        let dim = r.gen_range(3..=5);
        let a = r.gen_range(1..=(dim - 2));
        let b = r.gen_range(1..=(dim - a - 1));
        let c = r.gen_range(1..=(dim - a - b));
        let g = orthogonal_groups(&mut r, dim, &[a, b, c]);
        let (x, y, z) = (element(dim, &g[0]), element(dim, &g[1]), element(dim, &g[2]));
        let xy = Element::mu(&x, &y).unwrap();
        let yz = Element::mu(&y, &z).unwrap();
        assert_eq!(
            Element::mu(&xy, &z).unwrap(),
            Element::mu(&x, &yz).unwrap()
        );
        assert_eq!(xy, Element::mu(&y, &x).unwrap());
    }
}

#[test]
fn bialgebra_compatibility_random_orthogonal_pairs() {
    let mut r = rng::seeded(2);
    for _ in 0..100 {
        let m = r.gen_range(0..=3usize);
        let n = r.gen_range(0..=(3usize.min(6 - m)));
        let dim = (m + n).max(1) + r.gen_range(0..=1);
        let g = orthogonal_groups(&mut r, dim, &[m, n]);
        let x = normalize(dim, &g[0]).unwrap().unwrap().0;
        let y = normalize(dim, &g[1]).unwrap().unwrap().0;
        assert!(bialg_check(&x, &y).unwrap(), "x={} y={}", x, y);
    }
}

#[test]
fn coassociativity_and_counit_laws() {
    let mut r = rng::seeded(3);
    for _ in 0..40 {
        let n = r.gen_range(1..=4usize);
        let t = rng::random_basis(&mut r, n);
        assert!(coassoc_check(&t).unwrap(), "t={:?}", t);
        assert!(counit_check(&t).unwrap(), "t={:?}", t);
    }
    // one n = 5 instance to cover the top size
    let t = rng::random_basis(&mut r, 5);
    assert!(coassoc_check(&t).unwrap());
}

#[test]
fn antipode_laws() {
    let mut r = rng::seeded(4);
    for _ in 0..100 {
        let dim = r.gen_range(2..=5);
        let a = r.gen_range(1..=(dim - 1));
        let b = r.gen_range(1..=(dim - a));
        let g = orthogonal_groups(&mut r, dim, &[a, b]);
        let (x, y) = (element(dim, &g[0]), element(dim, &g[1]));
        // α² = id
        assert_eq!(x.antipode().unwrap().antipode().unwrap(), x);
        // α∘μ = μ∘(α⊗α) on orthogonal factors
        let lhs = Element::mu(&x, &y).unwrap().antipode().unwrap();
        let rhs = Element::mu(&x.antipode().unwrap(), &y.antipode().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn hopf_identity_random_bases() {
    let mut r = rng::seeded(5);
    for n in 1..=4usize {
        for _ in 0..3 {
            let t = rng::random_basis(&mut r, n);
            let rep = hopf_check(&t, 100, 0).unwrap();
            assert!(rep.pass, "t={:?} report={:?}", t, rep);
        }
    }
}

#[test]
fn locate_generic_points_are_uniquely_interior() {
    let mut r = rng::seeded(6);
    for _ in 0..20 {
        let n = r.gen_range(1..=4usize);
        let t = rng::random_basis(&mut r, n);
        let coords = rng::random_coords(&mut r, n);
        let mut x = Vector::zero(n);
        for (c, v) in coords.iter().zip(&t) {
            x = x.add(&v.scale(c));
        }
        let res = locate(&x, &t).unwrap();
        assert!(res.interior.is_some(), "t={:?} x={}", t, x);
        assert!(res.boundary.is_empty());
    }
}
