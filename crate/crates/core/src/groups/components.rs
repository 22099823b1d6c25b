use std::fmt;

use num_integer::Integer;

use super::algebra::GroupAlgebraElement;
use super::character::{fs_indicator, value_conductor, ComplexCharacter};
use super::perm::FiniteGroup;
use crate::exactalg::{euler_phi, int, rat, CyclotomicNumber, Field, QMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvolutionType {
    Orthogonal,
    Symplectic,
    Unitary,
}

/// Complexified type of the target group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TargetLabel {
    Sp,
    O,
    GL,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::First => "first",
            Kind::Second => "second",
        })
    }
}

impl fmt::Display for InvolutionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvolutionType::Orthogonal => "orthogonal",
            InvolutionType::Symplectic => "symplectic",
            InvolutionType::Unitary => "unitary",
        })
    }
}

impl fmt::Display for TargetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TargetLabel::Sp => "Sp",
            TargetLabel::O => "O",
            TargetLabel::GL => "GL",
        })
    }
}

/// One simple factor of Q[G], indexed by a Galois orbit of characters.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalComponent {
    /// Indices into the character table.
    pub orbit: Vec<usize>,
    pub idempotent: GroupAlgebraElement,
    /// Common degree χ(1).
    pub n: usize,
    pub fs_indicator: i8,
    pub center_conductor: u32,
    /// Units k mod the conductor with χ^k = χ; encodes the center L.
    pub center_stabilizer: Vec<u32>,
    pub kind: Kind,
    pub type_label: InvolutionType,
    pub target_label: TargetLabel,
    pub q_dimension: usize,
    /// Values of the first character of the orbit.
    pub values: Vec<CyclotomicNumber>,
}

impl RationalComponent {
    /// [L : Q].
    pub fn center_degree(&self) -> usize {
        euler_phi(self.center_conductor) as usize / self.center_stabilizer.len()
    }

    /// Units fixing the subfield K = L^τ: the stabilizer together with −1.
    pub fn fixed_field_stabilizer(&self) -> Vec<u32> {
        let n = self.center_conductor;
        if n <= 2 {
            return self.center_stabilizer.clone();
        }
        let mut out: Vec<u32> = self
            .center_stabilizer
            .iter()
            .flat_map(|&k| [k, n - k])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Whether −1 lies in the stabilizer, i.e. τ fixes the center.
    pub fn stabilizer_contains_minus_one(&self) -> bool {
        let n = self.center_conductor;
        n <= 2 || self.center_stabilizer.contains(&(n - 1))
    }
}

/// Wedderburn-type decomposition of Q[G] by rational character orbits.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub characters: Vec<ComplexCharacter>,
    pub trivial: RationalComponent,
    pub components: Vec<RationalComponent>,
}

impl Decomposition {
    /// Trivial component first, then the nontrivial ones in report order.
    pub fn all(&self) -> impl Iterator<Item = &RationalComponent> {
        std::iter::once(&self.trivial).chain(self.components.iter())
    }

    /// Component containing the given character index.
    pub fn component_of(&self, chi: usize) -> Option<&RationalComponent> {
        self.all().find(|c| c.orbit.contains(&chi))
    }
}

fn galois_orbit(table: &[ComplexCharacter], chi: usize, exponent: usize) -> Result<Vec<usize>> {
    let mut orbit = Vec::new();
    for k in 1..=exponent.max(1) {
        if k.gcd(&exponent) != 1 {
            continue;
        }
        let conj = table[chi].galois(k as i64)?;
        let idx = table
            .iter()
            .position(|c| *c == conj)
            .ok_or_else(|| Error::Decomposition("Galois conjugate missing from table".into()))?;
        if !orbit.contains(&idx) {
            orbit.push(idx);
        }
    }
    orbit.sort_unstable();
    Ok(orbit)
}

fn orbit_idempotent(
    g: &FiniteGroup,
    table: &[ComplexCharacter],
    orbit: &[usize],
) -> Result<GroupAlgebraElement> {
    // e = Σ_χ (χ(1)/|G|) Σ_h χ(h⁻¹) h, rational because the orbit is Galois-stable
    let r = g.classes().len();
    let mut class_sums = Vec::with_capacity(r);
    for k in 0..r {
        let mut acc = CyclotomicNumber::from_int(0);
        for &c in orbit {
            let chi = &table[c];
            acc = &acc + &chi.values[k].scale(&int(chi.degree() as i64));
        }
        let q = acc
            .to_rational()
            .ok_or_else(|| Error::Decomposition("orbit sum is not rational".into()))?;
        class_sums.push(q * rat(1, g.order() as i64));
    }
    Ok(GroupAlgebraElement::from_terms(
        (0..g.order()).map(|h| (h, class_sums[g.class_of(g.inv(h))].clone())),
    ))
}

/// dim_Q of e·Q[G] as the rank of right multiplication by e.
fn right_multiplication_rank(g: &FiniteGroup, e: &GroupAlgebraElement) -> usize {
    let n = g.order();
    let mut m = QMatrix::zeros(n, n);
    for j in 0..n {
        for (h, c) in e.terms() {
            let k = g.mul(j, h);
            let x = m.get(k, j).add(c);
            m.set(k, j, x);
        }
    }
    m.rank()
}

fn stabilizer(chi: &ComplexCharacter, conductor: u32) -> Result<Vec<u32>> {
    if conductor == 1 {
        return Ok(vec![1]);
    }
    let mut out = Vec::new();
    for k in 1..conductor {
        if k.gcd(&conductor) != 1 {
            continue;
        }
        if chi.galois(k as i64)? == *chi {
            out.push(k);
        }
    }
    Ok(out)
}

fn classify(
    g: &FiniteGroup,
    table: &[ComplexCharacter],
    orbit: Vec<usize>,
) -> Result<RationalComponent> {
    let chi = &table[orbit[0]];
    let fs = fs_indicator(g, chi)?;
    let center_conductor = value_conductor(chi);
    let center_stabilizer = stabilizer(chi, center_conductor)?;
    let idempotent = orbit_idempotent(g, table, &orbit)?;
    let q_dimension = right_multiplication_rank(g, &idempotent);
    let (type_label, target_label) = match fs {
        1 => (InvolutionType::Orthogonal, TargetLabel::Sp),
        -1 => (InvolutionType::Symplectic, TargetLabel::O),
        _ => (InvolutionType::Unitary, TargetLabel::GL),
    };
    let mut comp = RationalComponent {
        n: chi.degree(),
        values: chi.values.clone(),
        orbit,
        idempotent,
        fs_indicator: fs,
        center_conductor,
        center_stabilizer,
        kind: Kind::First,
        type_label,
        target_label,
        q_dimension,
    };
    comp.kind = if comp.stabilizer_contains_minus_one() {
        Kind::First
    } else {
        Kind::Second
    };
    if (comp.kind == Kind::First) != (fs != 0) {
        return Err(Error::Decomposition(format!(
            "kind {} disagrees with Frobenius-Schur indicator {fs}",
            comp.kind
        )));
    }
    Ok(comp)
}

/// All rational components of Q[G] from its character table.
pub fn rational_components(g: &FiniteGroup, table: Vec<ComplexCharacter>) -> Result<Decomposition> {
    let e = g.exponent();
    let mut seen = vec![false; table.len()];
    let mut comps = Vec::new();
    for chi in 0..table.len() {
        if seen[chi] {
            continue;
        }
        let orbit = galois_orbit(&table, chi, e)?;
        for &c in &orbit {
            seen[c] = true;
        }
        comps.push(classify(g, &table, orbit)?);
    }
    let trivial_pos = comps
        .iter()
        .position(|c| c.orbit == [0] && c.values.iter().all(|v| *v == CyclotomicNumber::from_int(1)))
        .ok_or_else(|| Error::Decomposition("trivial character missing".into()))?;
    let trivial = comps.remove(trivial_pos);
    comps.sort_by(|a, b| {
        a.n.cmp(&b.n)
            .then(a.center_conductor.cmp(&b.center_conductor))
            .then_with(|| a.values.cmp(&b.values))
    });
    Ok(Decomposition {
        characters: table,
        trivial,
        components: comps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{character_table, families};

    fn decompose(g: &FiniteGroup) -> Decomposition {
        rational_components(g, character_table(g)).unwrap()
    }

    #[test]
    fn z2_component() {
        let g = families::cyclic(2);
        let d = decompose(&g);
        assert_eq!(d.components.len(), 1);
        let c = &d.components[0];
        assert_eq!((c.n, c.fs_indicator, c.center_conductor), (1, 1, 1));
        assert_eq!(c.kind, Kind::First);
        assert_eq!(c.type_label, InvolutionType::Orthogonal);
        assert_eq!(c.target_label, TargetLabel::Sp);
        assert_eq!(c.q_dimension, 1);
        let h = g.generators()[0];
        let expected = GroupAlgebraElement::from_terms([(0, rat(1, 2)), (h, rat(-1, 2))]);
        assert_eq!(c.idempotent, expected);
    }

    #[test]
    fn cyclic_faithful_is_second_kind() {
        for n in [3usize, 4, 5, 7] {
            let g = families::cyclic(n);
            let d = decompose(&g);
            let c = d.components.iter().find(|c| c.center_conductor == n as u32).unwrap();
            assert_eq!(c.kind, Kind::Second);
            assert_eq!(c.type_label, InvolutionType::Unitary);
            assert_eq!(c.target_label, TargetLabel::GL);
            assert_eq!(c.q_dimension, euler_phi(n as u32) as usize);
            assert_eq!(c.center_stabilizer, vec![1]);
        }
    }

    #[test]
    fn symmetric_standard_is_matrix_algebra() {
        let g = families::symmetric(4);
        let d = decompose(&g);
        let c = d
            .components
            .iter()
            .find(|c| c.n == 3 && c.fs_indicator == 1)
            .unwrap();
        assert_eq!(c.center_conductor, 1);
        assert_eq!(c.q_dimension, 9);
        assert_eq!(c.target_label, TargetLabel::Sp);
    }

    #[test]
    fn idempotents_sum_to_one() {
        let g = families::dihedral(4);
        let d = decompose(&g);
        let total = d.all().fold(GroupAlgebraElement::zero(), |acc, c| acc.add(&c.idempotent));
        assert_eq!(total, GroupAlgebraElement::one());
        let dims: usize = d.all().map(|c| c.q_dimension).sum();
        assert_eq!(dims, g.order());
    }
}
