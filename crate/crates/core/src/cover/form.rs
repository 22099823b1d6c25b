use super::homology::CoverHomology;
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupAlgebraElement};

/// Gram matrix of the Q[H]-valued form on the homology basis.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantForm {
    pub gram: Vec<Vec<GroupAlgebraElement>>,
}

pub fn equivariant_form(hom: &CoverHomology, group: &FiniteGroup) -> Result<EquivariantForm> {
    let j = hom
        .sp_pairing()
        .ok_or_else(|| Error::Precondition("equivariant form needs a surface cover".into()))?;
    for &s in group.generators() {
        let a = hom.h_action(s);
        if a.transpose().mul(j).mul(a) != *j {
            return Err(Error::Convention(format!("group element {s} does not preserve J")));
        }
    }
    let n = hom.dimension();
    let blocks: Vec<_> = hom.h_actions().iter().map(|a| j.mul(a)).collect();
    let gram: Vec<Vec<GroupAlgebraElement>> = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| {
                    GroupAlgebraElement::from_terms(
                        blocks.iter().enumerate().map(|(h, m)| (h, m.get(u, v).clone())),
                    )
                })
                .collect()
        })
        .collect();
    for u in 0..n {
        for v in 0..=u {
            if gram[v][u] != gram[u][v].tau(group).neg() {
                return Err(Error::Convention(format!("form is not skew-Hermitian at ({u}, {v})")));
            }
        }
    }
    Ok(EquivariantForm { gram })
}
