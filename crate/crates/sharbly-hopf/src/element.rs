use std::collections::BTreeMap;
use std::fmt;

use exact_linalg::{orientation_sign, LinAlgError, Space, Vector};
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::generator::{dualize, join, normalize, Generator};
use crate::{HopfError, Result};

/// An element of the reduced polytope group graded by one subspace: an
/// integer combination of normalized generators spanning that subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    grading: Space,
    terms: BTreeMap<Generator, i64>,
}

/// An element of the coproduct target in grading `V`: each term is a pair
/// of generators spanning orthogonal subspaces whose sum is `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    grading: Space,
    terms: BTreeMap<(Generator, Generator), i64>,
}

fn orthogonal(u: &Space, w: &Space) -> bool {
    u.basis()
        .iter()
        .all(|a| w.basis().iter().all(|b| a.dot(b).is_zero()))
}

impl Element {
    pub fn zero(grading: Space) -> Element {
        Element {
            grading,
            terms: BTreeMap::new(),
        }
    }

    /// `k` copies of the empty generator: the image of the unit map.
    pub fn unit(ambient_dim: usize, k: i64) -> Element {
        let mut e = Element::zero(Space::zero(ambient_dim));
        if k != 0 {
            e.terms.insert(Generator::empty(ambient_dim), k);
        }
        e
    }

    pub fn single(gen: Generator, coeff: i64) -> Element {
        let mut e = Element::zero(gen.ambient().clone());
        if coeff != 0 {
            e.terms.insert(gen, coeff);
        }
        e
    }

    /// The class of a raw tuple, graded by its span. A dependent tuple is
    /// zero (graded by the degenerate span).
    pub fn from_tuple(ambient_dim: usize, vectors: &[Vector]) -> Result<Element> {
        match normalize(ambient_dim, vectors)? {
            Some((gen, sign)) => Ok(Element::single(gen, sign)),
            None => Ok(Element::zero(Space::span(ambient_dim, vectors)?)),
        }
    }

    pub fn grading(&self) -> &Space {
        &self.grading
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, i64)> {
        self.terms.iter().map(|(g, &c)| (g, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, gen: Generator, coeff: i64) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        if gen.ambient() != &self.grading {
            return Err(HopfError::GradingMismatch);
        }
        let c = self.terms.entry(gen.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&gen);
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        if self.grading != other.grading {
            return Err(HopfError::GradingMismatch);
        }
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g.clone(), c)?;
        }
        Ok(out)
    }

    pub fn scaled(&self, k: i64) -> Element {
        if k == 0 {
            return Element::zero(self.grading.clone());
        }
        Element {
            grading: self.grading.clone(),
            terms: self.terms.iter().map(|(g, c)| (g.clone(), c * k)).collect(),
        }
    }

    /// Coefficient of the empty generator when graded by the zero space.
    pub fn counit(&self) -> i64 {
        if !self.grading.is_zero() {
            return 0;
        }
        self.terms
            .get(&Generator::empty(self.grading.ambient_dim()))
            .copied()
            .unwrap_or(0)
    }

    /// Join product: bilinear extension of concatenate-then-normalize.
    /// Defined only for orthogonal gradings.
    pub fn mu(x: &Element, y: &Element) -> Result<Element> {
        if !orthogonal(&x.grading, &y.grading) {
            return Err(HopfError::NotOrthogonal);
        }
        let mut out = Element::zero(x.grading.sum(&y.grading)?);
        for (gx, cx) in x.terms() {
            for (gy, cy) in y.terms() {
                let (g, s) = join(gx, gy)?;
                out.add_term(g, cx * cy * s)?;
            }
        }
        Ok(out)
    }

    /// The antipode: replace every tuple by its dual tuple.
    pub fn antipode(&self) -> Result<Element> {
        let mut out = Element::zero(self.grading.clone());
        for (g, c) in self.terms() {
            let (d, s) = dualize(g)?;
            out.add_term(d, c * s)?;
        }
        Ok(out)
    }

    /// The coproduct: for each generator, the sum over all subsets `S` of
    /// `[S] ⊗ [projection of the rest onto the orthogonal complement of S]`.
    pub fn delta(&self) -> Result<TensorElement> {
        let mut out = TensorElement::zero(self.grading.clone());
        for (g, c) in self.terms() {
            for ((l, r), s) in delta_gen(g)? {
                out.add_term(l, r, c * s)?;
            }
        }
        Ok(out)
    }

    /// Ordered-tuple view: each term re-expressed with the sign of its
    /// orientation relative to the canonical echelon basis of the grading.
    pub fn to_ls(&self) -> Result<Vec<(i64, Vec<Vector>)>> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (g, c) in self.terms() {
            let or = orientation_sign(g.vectors(), &self.grading)? as i64;
            out.push((c * or, g.vectors().to_vec()));
        }
        Ok(out)
    }

    /// Inverse of [`Element::to_ls`]: fold ordered signed tuples back into
    /// normalized terms.
    pub fn from_ls(grading: &Space, terms: &[(i64, Vec<Vector>)]) -> Result<Element> {
        let mut out = Element::zero(grading.clone());
        for (c, tuple) in terms {
            let or = orientation_sign(tuple, grading)? as i64;
            let (g, s) = normalize(grading.ambient_dim(), tuple)?
                .ok_or(LinAlgError::Degenerate)?;
            out.add_term(g, c * or * s)?;
        }
        Ok(out)
    }

    /// The simplicial boundary of an (n+1)-tuple in n-space, as an element:
    /// the alternating sum of its n-element faces, imported through the
    /// orientation convention of [`Element::to_ls`].
    pub fn boundary_relation(t: &[Vector]) -> Result<Element> {
        let n = t.first().map_or(0, |v| v.dim());
        if t.len() != n + 1 {
            return Err(LinAlgError::Degenerate.into());
        }
        let grading = Space::span(n, t)?;
        if grading.rank() != n {
            return Err(LinAlgError::Degenerate.into());
        }
        let mut terms = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let face: Vec<Vector> = t
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v.clone())
                .collect();
            // (−1)^(i+1) for 1-based i, i.e. (−1)^i at offset 0 is −1.
            let sign = if i % 2 == 0 { -1 } else { 1 };
            terms.push((sign, face));
        }
        Element::from_ls(&grading, &terms)
    }
}

fn delta_gen(g: &Generator) -> Result<Vec<((Generator, Generator), i64)>> {
    let dim = g.ambient().ambient_dim();
    let n = g.len();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0..(1u32 << n) {
        let s_vecs: Vec<Vector> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| g.vectors()[i].clone())
            .collect();
        let (left, sl) = normalize(dim, &s_vecs)?.ok_or(LinAlgError::Degenerate)?;
        let complement = g.ambient().complement_in(left.ambient())?;
        let projected: Vec<Vector> = (0..n)
            .filter(|i| mask >> i & 1 == 0)
            .map(|i| complement.project(&g.vectors()[i]))
            .collect::<exact_linalg::Result<_>>()?;
        let (right, sr) = normalize(dim, &projected)?.ok_or(LinAlgError::Degenerate)?;
        out.push(((left, right), sl * sr));
    }
    Ok(out)
}

impl TensorElement {
    pub fn zero(grading: Space) -> TensorElement {
        TensorElement {
            grading,
            terms: BTreeMap::new(),
        }
    }

    pub fn grading(&self) -> &Space {
        &self.grading
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &Generator, i64)> {
        self.terms.iter().map(|((l, r), &c)| (l, r, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, left: Generator, right: Generator, coeff: i64) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        if !orthogonal(left.ambient(), right.ambient())
            || left.ambient().sum(right.ambient())? != self.grading
        {
            return Err(HopfError::GradingMismatch);
        }
        let key = (left, right);
        let c = self.terms.entry(key.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&key);
        }
    Ok(())
    }

    /// Applies `mu ∘ (id ⊗ antipode)`.
    pub fn mu_id_alpha(&self) -> Result<Element> {
        let mut out = Element::zero(self.grading.clone());
        for (l, r, c) in self.terms() {
            let (rd, s1) = dualize(r)?;
            let (g, s2) = join(l, &rd)?;
            out.add_term(g, c * s1 * s2)?;
        }
        Ok(out)
    }

    /// Applies `mu ∘ (antipode ⊗ id)`.
    pub fn mu_alpha_id(&self) -> Result<Element> {
        let mut out = Element::zero(self.grading.clone());
        for (l, r, c) in self.terms() {
            let (ld, s1) = dualize(l)?;
            let (g, s2) = join(&ld, r)?;
            out.add_term(g, c * s1 * s2)?;
        }
        Ok(out)
    }

    /// Applies `counit ⊗ id`, landing back in the grading space.
    pub fn counit_left(&self) -> Result<Element> {
        let mut out = Element::zero(self.grading.clone());
        for (l, r, c) in self.terms() {
            if l.is_empty() && l.ambient().is_zero() {
                out.add_term(r.clone(), c)?;
            }
        }
        Ok(out)
    }

    /// Applies `id ⊗ counit`.
    pub fn counit_right(&self) -> Result<Element> {
        let mut out = Element::zero(self.grading.clone());
        for (l, r, c) in self.terms() {
            if r.is_empty() && r.ambient().is_zero() {
                out.add_term(l.clone(), c)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            if c.abs() != 1 {
                write!(f, "{}·", c.abs())?;
            }
            write!(f, "{}", g)?;
        }
        Ok(())
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (l, r, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            if c.abs() != 1 {
                write!(f, "{}·", c.abs())?;
            }
            write!(f, "{}⊗{}", l, r)?;
        }
        Ok(())
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            coefficient: i64,
            generator: &'a Generator,
        }
        let mut st = s.serialize_struct("Element", 2)?;
        st.serialize_field("grading", &self.grading)?;
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(g, &c)| Term {
                coefficient: c,
                generator: g,
            })
            .collect();
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl Serialize for TensorElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            coefficient: i64,
            left: &'a Generator,
            right: &'a Generator,
        }
        let mut st = s.serialize_struct("TensorElement", 2)?;
        st.serialize_field("grading", &self.grading)?;
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|((l, r), &c)| Term {
                coefficient: c,
                left: l,
                right: r,
            })
            .collect();
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> Vector {
        Vector::from_i64(c)
    }

    fn gen(dim: usize, vs: &[&[i64]]) -> (Generator, i64) {
        let tuple: Vec<Vector> = vs.iter().map(|c| v(c)).collect();
        normalize(dim, &tuple).unwrap().unwrap()
    }

    #[test]
    fn mu_concatenates() {
        let x = Element::from_tuple(2, &[v(&[1, 0])]).unwrap();
        let y = Element::from_tuple(2, &[v(&[0, 1])]).unwrap();
        let m = Element::mu(&x, &y).unwrap();
        let (expect, s) = gen(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(s, 1);
        assert_eq!(m, Element::single(expect, 1));
    }

    #[test]
    fn mu_unit_law() {
        let x = Element::from_tuple(3, &[v(&[1, 0, 0]), v(&[1, 1, 0])]).unwrap();
        let one = Element::unit(3, 1);
        assert_eq!(Element::mu(&one, &x).unwrap(), x);
        assert_eq!(Element::mu(&x, &one).unwrap(), x);
    }

    #[test]
    fn mu_normalizes_join() {
        let x = Element::from_tuple(3, &[v(&[1, 0, 0]), v(&[1, 1, 0])]).unwrap();
        let y = Element::from_tuple(3, &[v(&[0, 0, 1])]).unwrap();
        let m = Element::mu(&x, &y).unwrap();
        let expect =
            Element::from_tuple(3, &[v(&[1, 0, 0]), v(&[1, 1, 0]), v(&[0, 0, 1])]).unwrap();
        assert_eq!(m, expect);
    }

    #[test]
    fn mu_rejects_non_orthogonal() {
        let x = Element::from_tuple(2, &[v(&[1, 0])]).unwrap();
        let y = Element::from_tuple(2, &[v(&[1, 1])]).unwrap();
        assert_eq!(Element::mu(&x, &y), Err(HopfError::NotOrthogonal));
    }

    #[test]
    fn delta_degree_one_is_primitive() {
        let x = Element::from_tuple(2, &[v(&[2, 1])]).unwrap();
        let d = x.delta().unwrap();
        let terms: Vec<_> = d.terms().collect();
        assert_eq!(terms.len(), 2);
        let e = Generator::empty(2);
        let (g, _) = gen(2, &[&[2, 1]]);
        assert!(terms.contains(&(&e, &g, 1)));
        assert!(terms.contains(&(&g, &e, 1)));
    }

    #[test]
    fn delta_orthogonal_pair() {
        let x = Element::from_tuple(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        let d = x.delta().unwrap();
        assert_eq!(d.terms().count(), 4);
        let e1 = gen(2, &[&[1, 0]]).0;
        let e2 = gen(2, &[&[0, 1]]).0;
        let both = gen(2, &[&[1, 0], &[0, 1]]).0;
        let empty = Generator::empty(2);
        let expected = [
            (&empty, &both, 1),
            (&e1, &e2, 1),
            (&e2, &e1, 1),
            (&both, &empty, 1),
        ];
        for t in expected {
            assert!(d.terms().any(|u| u == t));
        }
    }

    #[test]
    fn delta_projects_second_factor() {
        let x = Element::from_tuple(2, &[v(&[1, 0]), v(&[1, 1])]).unwrap();
        let d = x.delta().unwrap();
        assert_eq!(d.terms().count(), 4);
        // the S = {(1,0)} term carries the projection of (1,1) off ⟨(1,0)⟩
        let l = gen(2, &[&[1, 0]]).0;
        let r = gen(2, &[&[0, 1]]).0;
        assert!(d.terms().any(|(a, b, c)| (a, b, c) == (&l, &r, 1)));
    }

    #[test]
    fn antipode_orthonormal_pair() {
        let x = Element::from_tuple(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        // duals are the negations; the two negation signs cancel
        assert_eq!(x.antipode().unwrap(), x);
    }

    #[test]
    fn antipode_is_involutive() {
        let x = Element::from_tuple(3, &[v(&[1, 0, 2]), v(&[1, 1, 0]), v(&[0, 3, 1])]).unwrap();
        assert_eq!(x.antipode().unwrap().antipode().unwrap(), x);
    }

    #[test]
    fn counit_and_unit() {
        assert_eq!(Element::unit(2, 3).counit(), 3);
        let x = Element::from_tuple(2, &[v(&[1, 1])]).unwrap();
        assert_eq!(x.counit(), 0);
        assert_eq!(Element::unit(2, 1), Element::single(Generator::empty(2), 1));
    }

    #[test]
    fn to_ls_round_trip() {
        let a = Element::from_tuple(2, &[v(&[0, 1]), v(&[1, 0])]).unwrap();
        let b = Element::from_tuple(2, &[v(&[1, 2]), v(&[-3, 1])]).unwrap();
        let x = a.add(&b.scaled(-2)).unwrap();
        let ls = x.to_ls().unwrap();
        assert_eq!(Element::from_ls(x.grading(), &ls).unwrap(), x);
    }

    #[test]
    fn to_ls_sign_tracks_orientation() {
        let x = Element::from_tuple(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        let ls = x.to_ls().unwrap();
        // stored order is sorted: (0,1),(1,0), which has orientation −1
        // relative to the canonical basis, so the sign rides along; this is
        // the same Ls element as +((1,0),(0,1)).
        assert_eq!(ls, vec![(-1, vec![v(&[0, 1]), v(&[1, 0])])]);
        let swapped = Element::from_ls(&Space::full(2), &[(1, vec![v(&[1, 0]), v(&[0, 1])])]);
        assert_eq!(swapped.unwrap(), x);
    }

    #[test]
    fn boundary_relation_collinear_points_cancel() {
        let b = Element::boundary_relation(&[v(&[1]), v(&[2])]).unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn boundary_relation_opposite_points_cancel() {
        // (−1) and (1) normalize to the same generator with opposite signs,
        // and the orientation signs flip too, so the faces cancel exactly.
        let b = Element::boundary_relation(&[v(&[1]), v(&[-1])]).unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn boundary_relation_triangle_is_nonzero() {
        let b = Element::boundary_relation(&[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap();
        assert_eq!(b.terms().count(), 3);
        let faces = [
            Element::from_ls(&Space::full(2), &[(-1, vec![v(&[0, 1]), v(&[1, 1])])]).unwrap(),
            Element::from_ls(&Space::full(2), &[(1, vec![v(&[1, 0]), v(&[1, 1])])]).unwrap(),
            Element::from_ls(&Space::full(2), &[(-1, vec![v(&[1, 0]), v(&[0, 1])])]).unwrap(),
        ];
        let mut sum = Element::zero(Space::full(2));
        for f in &faces {
            sum = sum.add(f).unwrap();
        }
        assert_eq!(b, sum);
    }

    #[test]
    fn boundary_relation_rejects_degenerate_faces() {
        assert!(Element::boundary_relation(&[v(&[1, 0]), v(&[0, 1]), v(&[1, 0])]).is_err());
    }
}
