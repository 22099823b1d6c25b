//! Intersection numbers of cellular 1-cycles on a surface cover.
//!
//! Each cycle is split into passages through vertices. Both cycles are pushed off
//! the edges to opposite sides, and each passage becomes a chord in a small disc
//! around the vertex. The intersection number is the signed count of interleaved
//! chord pairs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::complex::{CoverChainComplex, CoverKind};
use crate::error::{Error, Result};
use crate::exactalg::{QMatrix, Rational};
use crate::surface::SurfacePresentation;

/// Global orientation sign; fixed so that ⟨a₁, b₁⟩ = +1 on the base surface.
const ORIENTATION: i64 = 1;

/// Cyclic order of darts around each vertex, lifted from the base polygon.
#[derive(Clone, Debug)]
pub struct Rotation {
    /// Position of dart `2j` (start of generator j) and `2j + 1` (its end).
    position: Vec<usize>,
    dart_at: Vec<usize>,
}

impl Rotation {
    pub fn for_genus(genus: usize) -> Result<Self> {
        let pres = SurfacePresentation::new(genus)?;
        let r = pres.relator().letters();
        let m = r.len();
        let dart = |j: i32, end: bool| 2 * (j.unsigned_abs() as usize - 1) + end as usize;
        let departs = |l: i32| dart(l, l < 0);
        let arrives = |l: i32| dart(l, l > 0);
        // around each polygon corner, the arriving dart follows the departing one
        let mut next = vec![usize::MAX; m];
        for k in 0..m {
            next[departs(r[(k + 1) % m])] = arrives(r[k]);
        }
        let mut position = vec![usize::MAX; m];
        let mut d = 0;
        for pos in 0..m {
            if position[d] != usize::MAX {
                return Err(Error::Convention("polygon corners do not close up".into()));
            }
            position[d] = pos;
            d = next[d];
        }
        let mut dart_at = vec![0; m];
        for (d, &p) in position.iter().enumerate() {
            dart_at[p] = d;
        }
        Ok(Rotation { position, dart_at })
    }

    pub fn position(&self, dart: usize) -> usize {
        self.position[dart]
    }

    fn is_start(&self, pos: usize) -> bool {
        self.dart_at[pos].is_multiple_of(2)
    }

    /// Boundary point of the vertex disc where a pushed-off cycle meets the dart;
    /// the left copy sits counterclockwise of edge starts and clockwise of edge ends.
    fn slot(&self, pos: usize, left: bool) -> usize {
        if self.is_start(pos) == left {
            4 * pos + 3
        } else {
            4 * pos + 1
        }
    }

    fn slots(&self) -> usize {
        4 * self.position.len()
    }
}

struct Passage {
    arrive: usize,
    depart: usize,
    weight: BigInt,
}

fn integral(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let scale = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = v
        .iter()
        .map(|x| (x * Rational::from_integer(scale.clone())).to_integer())
        .collect();
    (ints, scale)
}

fn passages(cx: &CoverChainComplex, rot: &Rotation, v: &[BigInt]) -> Vec<Vec<Passage>> {
    let order = cx.group().order();
    let mut arrivals: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); order];
    let mut departures: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); order];
    for (e, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (h, j) = cx.edge_cell(e);
        let t = cx.edge_end(e);
        let (out, inn) = (rot.position(2 * j), rot.position(2 * j + 1));
        if c.is_positive() {
            departures[h].push((out, c.clone()));
            arrivals[t].push((inn, c.clone()));
        } else {
            departures[t].push((inn, c.abs()));
            arrivals[h].push((out, c.abs()));
        }
    }
    let mut out = Vec::with_capacity(order);
    for (mut arr, mut dep) in arrivals.into_iter().zip(departures) {
        arr.sort();
        dep.sort();
        // greedy matching, lowest dart position first
        let mut list = Vec::new();
        let (mut i, mut k) = (0, 0);
        while i < arr.len() && k < dep.len() {
            let w = arr[i].1.clone().min(dep[k].1.clone());
            list.push(Passage {
                arrive: arr[i].0,
                depart: dep[k].0,
                weight: w.clone(),
            });
            arr[i].1 -= &w;
            dep[k].1 -= &w;
            if arr[i].1.is_zero() {
                i += 1;
            }
            if dep[k].1.is_zero() {
                k += 1;
            }
        }
        out.push(list);
    }
    out
}

fn crossing(a: usize, b: usize, c: usize, d: usize, m: usize) -> i64 {
    let inside = |x: usize| (x + m - a) % m < (b + m - a) % m && x != a;
    match (inside(c), inside(d)) {
        (true, false) => 1,
        (false, true) => -1,
        _ => 0,
    }
}

fn check_surface(cx: &CoverChainComplex) -> Result<usize> {
    match cx.kind() {
        CoverKind::Surface { genus } => Ok(genus),
        CoverKind::Rose { .. } => Err(Error::Precondition("intersection pairing needs a surface cover".into())),
    }
}

/// ⟨u, v⟩ for two 1-cycles of a surface cover.
pub fn intersection_number(cx: &CoverChainComplex, u: &[Rational], v: &[Rational]) -> Result<Rational> {
    let rot = Rotation::for_genus(check_surface(cx)?)?;
    pair_with(cx, &rot, u, v)
}

fn pair_with(cx: &CoverChainComplex, rot: &Rotation, u: &[Rational], v: &[Rational]) -> Result<Rational> {
    if !cx.is_cycle(u) || !cx.is_cycle(v) {
        return Err(Error::NotACycle);
    }
    let (ui, us) = integral(u);
    let (vi, vs) = integral(v);
    let pu = passages(cx, rot, &ui);
    let pv = passages(cx, rot, &vi);
    let m = rot.slots();
    let mut total = BigInt::zero();
    for (qu, qv) in pu.iter().zip(&pv) {
        for x in qu {
            let a = rot.slot(x.arrive, true);
            let b = rot.slot(x.depart, true);
            for y in qv {
                let c = rot.slot(y.arrive, false);
                let d = rot.slot(y.depart, false);
                let s = crossing(a, b, c, d, m);
                if s != 0 {
                    total += &x.weight * &y.weight * BigInt::from(s * ORIENTATION);
                }
            }
        }
    }
    Ok(Rational::new(total, us * vs))
}

/// Gram matrix of the intersection pairing on the given cycles.
pub fn intersection_matrix(cx: &CoverChainComplex, cycles: &[Vec<Rational>]) -> Result<QMatrix> {
    let rot = Rotation::for_genus(check_surface(cx)?)?;
    let n = cycles.len();
    let mut m = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = pair_with(cx, &rot, &cycles[i], &cycles[j])?;
            m.set(j, i, -x.clone());
            m.set(i, j, x);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_rotation() {
        let rot = Rotation::for_genus(2).unwrap();
        // counterclockwise: b1 start, a1 end, b1 end, a1 start, b2 start, a2 end, b2 end, a2 start
        let order = [2, 1, 3, 0, 6, 5, 7, 4];
        let base = rot.position(order[0]);
        for (pos, &d) in order.iter().enumerate() {
            assert_eq!(rot.position(d), (base + pos) % 8);
        }
    }

    #[test]
    fn chord_crossings() {
        assert_eq!(crossing(0, 4, 2, 6, 8), 1);
        assert_eq!(crossing(0, 4, 6, 2, 8), -1);
        assert_eq!(crossing(0, 4, 1, 3, 8), 0);
        assert_eq!(crossing(0, 4, 5, 7, 8), 0);
    }
}
