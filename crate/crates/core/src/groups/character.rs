//! Character tables by the Dixon–Schneider method.
//!
//! Class sums act on the center of the group algebra through the structure
//! constants; their simultaneous eigenvectors over a prime field F_p with
//! p ≡ 1 mod exponent give the central characters, from which the ordinary
//! characters are recovered mod p and lifted to cyclotomic values through
//! eigenvalue multiplicities.

use num_integer::Integer;

use super::perm::FiniteGroup;
use crate::exactalg::{int, rat, CyclotomicNumber, Field, Rational};
use crate::error::{Error, Result};

/// An irreducible complex character, one value per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexCharacter {
    pub values: Vec<CyclotomicNumber>,
}

impl ComplexCharacter {
    pub fn degree(&self) -> usize {
        let d = self.values[0].to_rational().expect("degree is rational");
        d.to_integer().try_into().expect("degree fits in usize")
    }

    /// Value at an arbitrary element.
    pub fn at(&self, g: &FiniteGroup, x: usize) -> &CyclotomicNumber {
        &self.values[g.class_of(x)]
    }

    /// The Galois conjugate χ^k.
    pub fn galois(&self, k: i64) -> Result<Self> {
        Ok(ComplexCharacter {
            values: self
                .values
                .iter()
                .map(|v| v.galois(k))
                .collect::<Result<_>>()?,
        })
    }
}

struct Fp(u64);

impl Fp {
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }
    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
    fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.0));
        self.pow(a, self.0 - 2)
    }

    /// Kernel basis of a rows×cols matrix over F_p.
    fn kernel(&self, m: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
        let mut a: Vec<Vec<u64>> = m.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(p, r);
            let inv = self.inv(a[r][c]);
            for j in 0..cols {
                a[r][j] = self.mul(a[r][j], inv);
            }
            for i in 0..a.len() {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..cols {
                        let t = self.mul(f, a[r][j]);
                        a[i][j] = self.sub(a[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == a.len() {
                break;
            }
        }
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = vec![0; cols];
                v[f] = 1;
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = self.sub(0, a[row][f]);
                }
                v
            })
            .collect()
    }

    /// Solve B·x = y for x, where B (n×d) has independent columns and y ∈ col(B).
    fn coordinates(&self, basis: &[Vec<u64>], y: &[u64]) -> Vec<u64> {
        let n = y.len();
        let d = basis.len();
        let mut a: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut row: Vec<u64> = basis.iter().map(|b| b[i]).collect();
                row.push(y[i]);
                row
            })
            .collect();
        let mut r = 0;
        let mut pivots = Vec::new();
        for c in 0..d {
            let p = (r..n).find(|&i| a[i][c] != 0).expect("independent basis");
            a.swap(p, r);
            let inv = self.inv(a[r][c]);
            for j in 0..=d {
                a[r][j] = self.mul(a[r][j], inv);
            }
            for i in 0..n {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..=d {
                        let t = self.mul(f, a[r][j]);
                        a[i][j] = self.sub(a[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        debug_assert!(a[d..].iter().all(|row| row[d] == 0), "vector outside span");
        (0..d).map(|i| a[i][d]).collect()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime p ≡ 1 mod `exponent` with p > 2·sqrt(order).
pub fn dixon_prime(order: usize, exponent: usize) -> u64 {
    let e = exponent as u64;
    let mut p = e + 1;
    while !(is_prime(p) && p * p > 4 * order as u64) {
        p += e;
    }
    p
}

fn primitive_root(fp: &Fp) -> u64 {
    let p = fp.0;
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| fp.pow(g, (p - 1) / q) != 1))
        .expect("F_p^* is cyclic")
}

/// All irreducible complex characters, sorted by degree and then values.
pub fn character_table(g: &FiniteGroup) -> Vec<ComplexCharacter> {
    let n = g.order();
    let r = g.classes().len();
    let e = g.exponent();
    let fp = Fp(dixon_prime(n, e));
    let sizes: Vec<u64> = g.classes().iter().map(|c| c.len() as u64).collect();

    // structure constants: coeff[i][j][k] = #{x ∈ C_i : x⁻¹ z_k ∈ C_j}
    let mut coeff = vec![vec![vec![0u64; r]; r]; r];
    for k in 0..r {
        let z = g.class_representative(k);
        for x in 0..n {
            let y = g.mul(g.inv(x), z);
            coeff[g.class_of(x)][g.class_of(y)][k] += 1;
        }
    }

    // split F_p^r into simultaneous eigenspaces of the class-sum operators
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect()];
    for i in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let t = &coeff[i];
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let d = space.len();
            // restricted operator in the basis of the space
            let images: Vec<Vec<u64>> = space
                .iter()
                .map(|v| {
                    (0..r)
                        .map(|j| (0..r).fold(0, |acc, k| fp.add(acc, fp.mul(t[j][k] % fp.0, v[k]))))
                        .collect()
                })
                .collect();
            let restricted: Vec<Vec<u64>> = images.iter().map(|y| fp.coordinates(&space, y)).collect();
            // restricted[a] = coordinates of T·v_a, so the matrix is its transpose
            let mut found = 0;
            for lambda in 0..fp.0 {
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|row| {
                        (0..d)
                            .map(|col| {
                                let x = restricted[col][row];
                                if row == col {
                                    fp.sub(x, lambda)
                                } else {
                                    x
                                }
                            })
                            .collect()
                    })
                    .collect();
                let ker = fp.kernel(&shifted, d);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                next.push(
                    ker.iter()
                        .map(|u| {
                            (0..r)
                                .map(|j| {
                                    (0..d).fold(0, |acc, a| fp.add(acc, fp.mul(u[a], space[a][j])))
                                })
                                .collect()
                        })
                        .collect(),
                );
                if found == d {
                    break;
                }
            }
            assert_eq!(found, d, "class-sum operator does not split over F_p");
        }
        spaces = next;
    }
    assert!(
        spaces.iter().all(|s| s.len() == 1) && spaces.len() == r,
        "eigenspaces failed to separate the characters"
    );

    let inverse_class: Vec<usize> = (0..r)
        .map(|k| g.class_of(g.inv(g.class_representative(k))))
        .collect();
    let z = fp.pow(primitive_root(&fp), (fp.0 - 1) / e as u64);
    // power maps: powers[k][j] = class of (rep_k)^j
    let powers: Vec<Vec<usize>> = (0..r)
        .map(|k| {
            let x = g.class_representative(k);
            let mut acc = 0;
            (0..g.order_of(x))
                .map(|_| {
                    let c = g.class_of(acc);
                    acc = g.mul(acc, x);
                    c
                })
                .collect()
        })
        .collect();

    let mut table: Vec<ComplexCharacter> = spaces
        .into_iter()
        .map(|s| {
            let w = &s[0];
            let w0 = fp.inv(w[0]);
            let omega: Vec<u64> = w.iter().map(|&x| fp.mul(x, w0)).collect();
            let s = (0..r).fold(0, |acc, k| {
                let t = fp.mul(omega[k], omega[inverse_class[k]]);
                fp.add(acc, fp.mul(t, fp.inv(sizes[k] % fp.0)))
            });
            let d2 = fp.mul(n as u64 % fp.0, fp.inv(s));
            let degree = (1..=n as u64)
                .take_while(|d| d * d <= n as u64)
                .find(|d| (d * d) % fp.0 == d2)
                .expect("degree exists");
            let chi_mod: Vec<u64> = (0..r)
                .map(|k| fp.mul(fp.mul(omega[k], degree % fp.0), fp.inv(sizes[k] % fp.0)))
                .collect();
            lift_character(&fp, z, e, degree, &chi_mod, &powers)
        })
        .collect();
    table.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.values.cmp(&b.values)));
    table
}

fn lift_character(
    fp: &Fp,
    z: u64,
    exponent: usize,
    degree: u64,
    chi_mod: &[u64],
    powers: &[Vec<usize>],
) -> ComplexCharacter {
    let values = powers
        .iter()
        .map(|pw| {
            let o = pw.len();
            let zo = fp.pow(z, (exponent / o) as u64);
            let o_inv = fp.inv(o as u64 % fp.0);
            let mut by_exp = vec![<Rational as Field>::zero(); o];
            let mut total = 0;
            for (l, slot) in by_exp.iter_mut().enumerate() {
                // m_l = (1/o) Σ_j χ(g^j) ζ_o^{-jl}
                let mut acc = 0;
                for (j, &c) in pw.iter().enumerate() {
                    let root = fp.pow(zo, ((o - (j * l) % o) % o) as u64);
                    acc = fp.add(acc, fp.mul(chi_mod[c], root));
                }
                let m = fp.mul(acc, o_inv);
                assert!(m <= degree, "eigenvalue multiplicity out of range");
                total += m;
                *slot = int(m as i64);
            }
            assert_eq!(total, degree, "multiplicities must sum to the degree");
            CyclotomicNumber::from_exponents(o as u32, by_exp)
        })
        .collect();
    ComplexCharacter { values }
}

/// Frobenius–Schur indicator (1/|G|) Σ χ(h²).
pub fn fs_indicator(g: &FiniteGroup, chi: &ComplexCharacter) -> Result<i8> {
    let mut acc = CyclotomicNumber::from_int(0);
    for (k, class) in g.classes().iter().enumerate() {
        let x = g.class_representative(k);
        let sq = g.mul(x, x);
        let term = chi.at(g, sq).scale(&int(class.len() as i64));
        acc = &acc + &term;
    }
    let value = acc.scale(&rat(1, g.order() as i64));
    match value.to_rational() {
        Some(q) if q == int(1) => Ok(1),
        Some(q) if q == int(-1) => Ok(-1),
        Some(q) if Field::is_zero(&q) => Ok(0),
        _ => Err(Error::NonIrreducible(value.to_string())),
    }
}

/// Standard inner product (1/|G|) Σ χ(h)·conj(ψ(h)).
pub fn inner_product(g: &FiniteGroup, chi: &ComplexCharacter, psi: &ComplexCharacter) -> CyclotomicNumber {
    let mut acc = CyclotomicNumber::from_int(0);
    for (k, class) in g.classes().iter().enumerate() {
        let t = &chi.values[k] * &psi.values[k].conj();
        acc = &acc + &t.scale(&int(class.len() as i64));
    }
    acc.scale(&rat(1, g.order() as i64))
}

/// Smallest n with every value of `chi` in Q(ζ_n).
pub fn value_conductor(chi: &ComplexCharacter) -> u32 {
    chi.values.iter().fold(1, |acc, v| acc.lcm(&v.conductor()))
}
