//! Seeded random instance generators shared by the `step-check` subcommand
//! and the acceptance battery.

use exact_linalg::{rat_from_i64, Rat, Space, Vector};
use rand::Rng;
use sharbly_hopf::rng;
use step_complex::{CutSystem, StepFn};

pub fn random_rat_in_unit(r: &mut impl Rng) -> Rat {
    let den: i64 = r.gen_range(2..=40);
    let num: i64 = r.gen_range(1..den);
    rat_from_i64(num, den)
}

/// A cut system of the given arity with distinct rational endpoints.
pub fn random_cut_system(r: &mut impl Rng, arity: usize) -> CutSystem {
    loop {
        let mut points: Vec<Rat> = (0..2 * arity).map(|_| random_rat_in_unit(r)).collect();
        points.sort();
        points.dedup();
        if points.len() < 2 * arity {
            continue;
        }
        let intervals: Vec<(Rat, Rat)> = points
            .chunks(2)
            .map(|c| (c[0].clone(), c[1].clone()))
            .collect();
        return CutSystem::new(intervals).unwrap();
    }
}

/// A step function running through the full flag of the given basis of the
/// ambient space, with random jump positions.
pub fn random_stepfn(r: &mut impl Rng, ambient: &Space, basis: &[Vector]) -> StepFn {
    let n = basis.len();
    let mut lengths: Vec<Rat> = Vec::new();
    let mut cuts: Vec<Rat> = (0..n).map(|_| random_rat_in_unit(r)).collect();
    cuts.sort();
    cuts.dedup();
    let mut prev = Rat::from_integer(0.into());
    for c in &cuts {
        lengths.push(c - &prev);
        prev = c.clone();
    }
    lengths.push(Rat::from_integer(1.into()) - &prev);
    let dim = ambient.ambient_dim();
    let mut steps = Vec::new();
    for (i, len) in lengths.iter().enumerate() {
        let span = Space::span(dim, &basis[..i.min(n)]).unwrap();
        steps.push((len.clone(), span));
    }
    let last = steps.len() - 1;
    steps[last].1 = ambient.clone();
    StepFn::new(ambient.clone(), steps).unwrap()
}

/// Exact Gram–Schmidt on a random basis, split into groups whose spans are
/// pairwise orthogonal; each group is remixed by a random integer change of
/// basis (rejected if it drops rank).
pub fn orthogonal_groups(r: &mut impl Rng, dim: usize, sizes: &[usize]) -> Vec<Vec<Vector>> {
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
        loop {
            let mixed: Vec<Vector> = (0..k)
                .map(|_| {
                    let mut v = Vector::zero(dim);
                    for s in slice {
                        let c: i64 = r.gen_range(-3..=3);
                        v = v.add(&s.scale(&rat_from_i64(c, 1)));
                    }
                    v
                })
                .collect();
            if Space::span(dim, &mixed)
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

/// A pair of tuples with orthogonal spans (no remixing).
pub fn orthogonal_pair(
    r: &mut impl Rng,
    dim: usize,
    m: usize,
    n: usize,
) -> (Vec<Vector>, Vec<Vector>) {
    assert!(m + n <= dim);
    let basis = rng::random_basis(r, dim);
    let mut ortho: Vec<Vector> = Vec::new();
    for u in &basis {
        let mut w = u.clone();
        for o in &ortho {
            let c = u.dot(o) / o.dot(o);
            w = w.sub(&o.scale(&c));
        }
        ortho.push(w.primitive());
    }
    (ortho[..m].to_vec(), ortho[m..m + n].to_vec())
}
