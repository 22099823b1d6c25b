//! Built-in permutation groups and explicit matrix representations of them.

use std::collections::VecDeque;

use super::character::ComplexCharacter;
use super::perm::FiniteGroup;
use crate::exactalg::{CycloMatrix, CyclotomicNumber, Field};
use crate::error::{Error, Result};

fn build(gens: Vec<Vec<usize>>, degree: usize) -> FiniteGroup {
    FiniteGroup::from_permutations(&gens, degree).expect("built-in group")
}

fn shift(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

/// Z/n generated by an n-cycle.
pub fn cyclic(n: usize) -> FiniteGroup {
    build(vec![shift(n)], n)
}

/// Sym(k) generated by (0 1) and (0 1 … k−1).
pub fn symmetric(k: usize) -> FiniteGroup {
    let mut t: Vec<usize> = (0..k).collect();
    if k >= 2 {
        t.swap(0, 1);
    }
    build(vec![t, shift(k)], k)
}

/// Alt(k) generated by the 3-cycles (i i+1 i+2).
pub fn alternating(k: usize) -> FiniteGroup {
    let gens = (0..k.saturating_sub(2))
        .map(|i| {
            let mut p: Vec<usize> = (0..k).collect();
            p[i] = i + 1;
            p[i + 1] = i + 2;
            p[i + 2] = i;
            p
        })
        .collect();
    build(gens, k)
}

/// Dihedral group of order 2n acting on the n-gon: rotation, then reflection.
pub fn dihedral(n: usize) -> FiniteGroup {
    let reflection = (0..n).map(|i| (n - i) % n).collect();
    build(vec![shift(n), reflection], n)
}

/// Dicyclic group of order 4n ⟨x, y | x^{2n}, y² = x^n, y⁻¹xy = x⁻¹⟩ in its
/// left regular representation on the normal forms x^a y^b.
pub fn dicyclic(n: usize) -> FiniteGroup {
    let m = 2 * n;
    let idx = |a: usize, b: usize| a % m + m * b;
    let mut x = vec![0; 2 * m];
    let mut y = vec![0; 2 * m];
    for a in 0..m {
        for b in 0..2 {
            x[idx(a, b)] = idx(a + 1, b);
        }
        // y·x^a = x^{−a}·y and y² = x^n
        y[idx(a, 0)] = idx(m - a, 1);
        y[idx(a, 1)] = idx(n + m - a, 0);
    }
    build(vec![x, y], 2 * m)
}

/// Direct product on disjoint point sets; generators of `a` come first.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (da, db) = (a.degree(), b.degree());
    let mut gens = Vec::new();
    for &s in a.generators() {
        let mut p: Vec<usize> = a.element(s).iter().map(|&x| x as usize).collect();
        p.extend(da..da + db);
        gens.push(p);
    }
    for &s in b.generators() {
        let mut p: Vec<usize> = (0..da).collect();
        p.extend(b.element(s).iter().map(|&x| x as usize + da));
        gens.push(p);
    }
    build(gens, da + db)
}

/// Matrices for the generators of a group, in generator order.
#[derive(Clone, Debug)]
pub struct ExplicitRep {
    pub name: String,
    pub images: Vec<CycloMatrix>,
}

impl ExplicitRep {
    pub fn dim(&self) -> usize {
        self.images.first().map_or(0, |m| m.rows())
    }

    /// Matrix of every group element, checking the homomorphism property along
    /// every edge of the Cayley graph.
    pub fn element_matrices(&self, g: &FiniteGroup) -> Result<Vec<CycloMatrix>> {
        if self.images.len() != g.generators().len() {
            return Err(Error::InvalidHomomorphism(format!(
                "{}: {} generator images for {} generators",
                self.name,
                self.images.len(),
                g.generators().len()
            )));
        }
        let d = self.dim();
        let mut mats: Vec<Option<CycloMatrix>> = vec![None; g.order()];
        mats[0] = Some(CycloMatrix::identity(d));
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let mx = mats[x].clone().expect("visited");
            for (s, img) in g.generators().iter().zip(&self.images) {
                let y = g.mul(x, *s);
                let my = mx.mul(img);
                match &mats[y] {
                    Some(existing) if *existing != my => {
                        return Err(Error::InvalidHomomorphism(format!(
                            "{}: relation violated at element {y}",
                            self.name
                        )))
                    }
                    Some(_) => {}
                    None => {
                        mats[y] = Some(my);
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(mats.into_iter().map(|m| m.expect("group is generated")).collect())
    }

    pub fn character(&self, g: &FiniteGroup) -> Result<ComplexCharacter> {
        let mats = self.element_matrices(g)?;
        let values = (0..g.classes().len())
            .map(|c| mats[g.class_representative(c)].trace())
            .collect();
        Ok(ComplexCharacter { values })
    }

    /// Outer tensor product, a representation of the direct product.
    pub fn tensor(&self, other: &ExplicitRep) -> ExplicitRep {
        let ia = CycloMatrix::identity(self.dim());
        let ib = CycloMatrix::identity(other.dim());
        let mut images: Vec<CycloMatrix> = self.images.iter().map(|m| kronecker(m, &ib)).collect();
        images.extend(other.images.iter().map(|m| kronecker(&ia, m)));
        ExplicitRep {
            name: format!("{} x {}", self.name, other.name),
            images,
        }
    }
}

pub fn kronecker(a: &CycloMatrix, b: &CycloMatrix) -> CycloMatrix {
    CycloMatrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        a.get(i / b.rows(), j / b.cols())
            .mul(b.get(i % b.rows(), j % b.cols()))
    })
}

fn cyc(n: i64) -> CyclotomicNumber {
    CyclotomicNumber::from_int(n)
}

/// Standard (k−1)-dimensional representation of Sym(k) on the basis e_i − e_{k−1}.
pub fn standard_rep(k: usize) -> ExplicitRep {
    let g = symmetric(k);
    let images = g
        .generators()
        .iter()
        .map(|&s| {
            let sigma = g.element(s);
            let last = k - 1;
            let mut m = CycloMatrix::zeros(last, last);
            for i in 0..last {
                let si = sigma[i] as usize;
                let sl = sigma[last] as usize;
                if si != last {
                    m.set(si, i, m.get(si, i).add(&cyc(1)));
                }
                if sl != last {
                    m.set(sl, i, m.get(sl, i).sub(&cyc(1)));
                }
            }
            m
        })
        .collect();
    ExplicitRep {
        name: format!("Sym({k}) standard"),
        images,
    }
}

/// Faithful one-dimensional representation of Z/n: generator ↦ ζ_n.
pub fn cyclic_rep(n: usize) -> ExplicitRep {
    ExplicitRep {
        name: format!("Z/{n} faithful"),
        images: vec![CycloMatrix::from_rows(vec![vec![CyclotomicNumber::zeta(n as u32)]])],
    }
}

/// Two-dimensional representation of the dihedral group of order 2n.
pub fn dihedral_rep(n: usize) -> ExplicitRep {
    let z = CyclotomicNumber::zeta(n as u32);
    ExplicitRep {
        name: format!("Dih({}) two-dimensional", 2 * n),
        images: vec![
            CycloMatrix::from_rows(vec![vec![z.clone(), cyc(0)], vec![cyc(0), z.conj()]]),
            CycloMatrix::from_rows(vec![vec![cyc(0), cyc(1)], vec![cyc(1), cyc(0)]]),
        ],
    }
}

/// Faithful two-dimensional representation of the dicyclic group of order 4n.
pub fn dicyclic_rep(n: usize) -> ExplicitRep {
    let z = CyclotomicNumber::zeta(2 * n as u32);
    ExplicitRep {
        name: format!("Dic({}) faithful", 4 * n),
        images: vec![
            CycloMatrix::from_rows(vec![vec![z.clone(), cyc(0)], vec![cyc(0), z.conj()]]),
            CycloMatrix::from_rows(vec![vec![cyc(0), cyc(1)], vec![cyc(-1), cyc(0)]]),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(cyclic(7).order(), 7);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(4).order(), 12);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(dicyclic(2).order(), 8);
        assert_eq!(dicyclic(3).order(), 12);
        assert_eq!(direct_product(&alternating(4), &dihedral(3)).order(), 72);
    }

    #[test]
    fn dicyclic_has_unique_involution() {
        for n in 2..5 {
            let g = dicyclic(n);
            let involutions = (0..g.order()).filter(|&x| g.order_of(x) == 2).count();
            assert_eq!(involutions, 1);
        }
    }

    #[test]
    fn builtin_reps_are_homomorphisms() {
        for k in 3..6 {
            assert!(standard_rep(k).element_matrices(&symmetric(k)).is_ok());
        }
        for n in [3, 4, 5, 7] {
            assert!(cyclic_rep(n).element_matrices(&cyclic(n)).is_ok());
        }
        for n in 3..6 {
            assert!(dihedral_rep(n).element_matrices(&dihedral(n)).is_ok());
        }
        for n in 2..4 {
            assert!(dicyclic_rep(n).element_matrices(&dicyclic(n)).is_ok());
        }
    }

    #[test]
    fn wrong_images_are_rejected() {
        // the dihedral matrices do not satisfy the dicyclic relations
        let mut rep = dihedral_rep(4);
        rep.name = "bad".into();
        assert!(rep.element_matrices(&dicyclic(2)).is_err());
    }

    #[test]
    fn alt4_dih6_generated_by_two_pairs() {
        let a4 = alternating(4);
        let d6 = dihedral(3);
        let h = direct_product(&a4, &d6);
        // (δ, x) with δ = (1 2 3) and x a rotation; (γ, y) with γ = (0 1 2) and y a reflection
        let delta_x = h.index_of(&[0, 2, 3, 1, 5, 6, 4]).unwrap();
        let gamma_y = h.index_of(&[1, 2, 0, 3, 4, 6, 5]).unwrap();
        assert!(h.generates(&[delta_x, gamma_y]));
        assert!(!h.generates(&[delta_x]));
    }
}
