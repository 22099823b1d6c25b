use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::QMatrix;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Data attached to one cyclotomic field Q(ζ_n).
struct FieldData {
    phi: usize,
    /// Reduced expansion of ζ^e for every e < n, stored sparsely.
    powers: Vec<Vec<(usize, i64)>>,
    /// Proper subfields Q(ζ_m) for the maximal divisors m of n.
    descents: Vec<Descent>,
}

struct Descent {
    m: u32,
    /// Images of ζ_m^j (j < φ(m)) as vectors in Q(ζ_n).
    embed: Vec<Vec<Rational>>,
    /// Rows of the embedding matrix forming an invertible square block.
    rows: Vec<usize>,
    inverse: QMatrix,
}

static FIELDS: LazyLock<RwLock<HashMap<u32, Arc<FieldData>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

fn field(n: u32) -> Arc<FieldData> {
    if let Some(f) = FIELDS.read().expect("field cache poisoned").get(&n) {
        return f.clone();
    }
    let data = Arc::new(build_field(n));
    FIELDS
        .write()
        .expect("field cache poisoned")
        .entry(n)
        .or_insert(data)
        .clone()
}

fn build_field(n: u32) -> FieldData {
    assert!(n >= 1 && n % 4 != 2, "conductor {n} is not normalized");
    let phi = euler_phi(n) as usize;
    let poly = cyclotomic_polynomial(n);
    let mut powers: Vec<Vec<(usize, i64)>> = Vec::with_capacity(n as usize);
    let mut dense = vec![0i64; phi];
    dense[0] = 1;
    for _ in 0..n {
        powers.push(
            dense
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i, c))
                .collect(),
        );
        // multiply by ζ and reduce with the monic relation
        let top = dense[phi - 1];
        for i in (1..phi).rev() {
            dense[i] = dense[i - 1];
        }
        dense[0] = 0;
        if top != 0 {
            for i in 0..phi {
                dense[i] = dense[i]
                    .checked_sub(top.checked_mul(poly[i]).expect("cyclotomic table overflow"))
                    .expect("cyclotomic table overflow");
            }
        }
    }
    let mut data = FieldData {
        phi,
        powers,
        descents: Vec::new(),
    };
    for p in prime_divisors(n) {
        let mut m = n / p;
        if m % 4 == 2 {
            m /= 2;
        }
        let phim = euler_phi(m) as usize;
        let step = (n / m) as usize;
        let embed: Vec<Vec<Rational>> = (0..phim)
            .map(|j| data.expand_power(j * step))
            .collect();
        // rows of E (phi x phim) that are independent: pivots of E^T
        let et = QMatrix::from_rows(embed.clone());
        let rows = et.rref().pivots;
        debug_assert_eq!(rows.len(), phim);
        let mut block = QMatrix::zeros(phim, phim);
        for (r, &row) in rows.iter().enumerate() {
            for (c, col) in embed.iter().enumerate() {
                block.set(r, c, col[row].clone());
            }
        }
        let inverse = block.inverse().expect("embedding block is invertible");
        data.descents.push(Descent {
            m,
            embed,
            rows,
            inverse,
        });
    }
    data
}

impl FieldData {
    fn expand_power(&self, e: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.phi];
        for &(i, c) in &self.powers[e % self.powers.len()] {
            v[i] = int(c);
        }
        v
    }

    /// Reduce a vector indexed by exponents mod n to the power basis.
    fn reduce(&self, by_exponent: Vec<Rational>) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.phi];
        for (e, c) in by_exponent.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e < self.phi {
                out[e] += c;
            } else {
                for &(i, k) in &self.powers[e] {
                    out[i] += &c * BigInt::from(k);
                }
            }
        }
        out
    }
}

/// Exact element of the cyclotomic field Q(ζ_n), stored at its minimal conductor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    conductor: u32,
    coeffs: Vec<Rational>,
}

fn normalized_conductor(n: u32) -> u32 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

impl CyclotomicNumber {
    pub fn from_rational(q: Rational) -> Self {
        CyclotomicNumber {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// The root of unity exp(2πi·exponent/order).
    pub fn root_of_unity(order: u32, exponent: i64) -> Self {
        assert!(order >= 1);
        let e = exponent.rem_euclid(order as i64) as u32;
        if order % 4 == 2 {
            // ζ_{2m} = -ζ_m^{(m+1)/2} for odd m
            let m = order / 2;
            let half = m.div_ceil(2) as i64;
            let base = Self::root_of_unity(m, e as i64 * half);
            return if e % 2 == 1 { -&base } else { base };
        }
        let mut by_exp = vec![Rational::zero(); order as usize];
        by_exp[e as usize] = Rational::one();
        Self::from_exponents(order, by_exp)
    }

    /// Σ c_e ζ_n^e from a vector indexed by exponents (any length, read mod n).
    pub fn from_exponents(n: u32, by_exponent: Vec<Rational>) -> Self {
        let n_norm = normalized_conductor(n);
        let by_exp = if n_norm != n {
            // rewrite ζ_{2m}^e through ζ_m
            let mut v = vec![Rational::zero(); n_norm as usize];
            let m = n_norm as i64;
            let half = (m + 1) / 2;
            for (e, c) in by_exponent.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let e = (e as i64).rem_euclid(n as i64);
                let target = (e * half).rem_euclid(m) as usize;
                if e % 2 == 1 {
                    v[target] -= c;
                } else {
                    v[target] += c;
                }
            }
            v
        } else {
            let mut v = vec![Rational::zero(); n as usize];
            for (e, c) in by_exponent.into_iter().enumerate() {
                v[e % n as usize] += c;
            }
            v
        };
        let coeffs = field(n_norm).reduce(by_exp);
        Self::normalize(n_norm, coeffs)
    }

    fn normalize(mut n: u32, mut coeffs: Vec<Rational>) -> Self {
        'descend: while n > 1 {
            if coeffs[1..].iter().all(|c| c.is_zero()) {
                return Self::from_rational(coeffs.swap_remove(0));
            }
            let data = field(n);
            for d in &data.descents {
                let x: Vec<Rational> = d.rows.iter().map(|&r| coeffs[r].clone()).collect();
                let y = d.inverse.mul_vec(&x);
                let mut image = vec![Rational::zero(); data.phi];
                for (yj, col) in y.iter().zip(&d.embed) {
                    if yj.is_zero() {
                        continue;
                    }
                    for (acc, c) in image.iter_mut().zip(col) {
                        if !c.is_zero() {
                            *acc += yj * c;
                        }
                    }
                }
                if image == coeffs {
                    n = d.m;
                    coeffs = y;
                    continue 'descend;
                }
            }
            break;
        }
        CyclotomicNumber {
            conductor: n,
            coeffs,
        }
    }

    pub fn zeta(n: u32) -> Self {
        Self::root_of_unity(n, 1)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coefficients in the power basis of Q(ζ_conductor).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Coefficients at a multiple `n` of the conductor (n not ≡ 2 mod 4).
    pub fn promote(&self, n: u32) -> Vec<Rational> {
        assert!(n.is_multiple_of(self.conductor) && n % 4 != 2, "cannot promote to {n}");
        let data = field(n);
        let step = (n / self.conductor) as usize;
        let mut by_exp = vec![Rational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            by_exp[j * step] = c.clone();
        }
        data.reduce(by_exp)
    }

    fn by_exponent_at(&self, n: u32) -> Vec<Rational> {
        let step = (n / self.conductor) as usize;
        let mut by_exp = vec![Rational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                by_exp[j * step] = c.clone();
            }
        }
        by_exp
    }

    /// Image under ζ ↦ ζ^k.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.conductor;
        if (k.rem_euclid(n as i64) as u32).gcd(&n) != 1 && n > 1 {
            return Err(Error::InvalidGaloisIndex { k, conductor: n });
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let k = k.rem_euclid(n as i64) as usize;
        let mut by_exp = vec![Rational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            by_exp[(j * k) % n as usize] = c.clone();
        }
        Ok(Self::normalize(n, field(n).reduce(by_exp)))
    }

    /// Complex conjugate, the Galois automorphism ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is always a unit")
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn binary(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        if self.conductor == other.conductor {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
            return Self::normalize(self.conductor, coeffs);
        }
        let n = self.conductor.lcm(&other.conductor);
        let a = self.promote(n);
        let b = other.promote(n);
        let coeffs = a.iter().zip(&b).map(|(x, y)| f(x, y)).collect();
        Self::normalize(n, coeffs)
    }

    fn product(&self, other: &Self) -> Self {
        if self.conductor == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.conductor == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let n = self.conductor.lcm(&other.conductor);
        let a = self.by_exponent_at(n);
        let b = other.by_exponent_at(n);
        let nz_b: Vec<(usize, &Rational)> = b
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut acc = vec![Rational::zero(); n as usize];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &(j, y) in &nz_b {
                acc[(i + j) % n as usize] += x * y;
            }
        }
        Self::normalize(n, field(n).reduce(acc))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::from_int(0);
        }
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero_value() {
            return None;
        }
        if self.conductor == 1 {
            return Some(Self::from_rational(self.coeffs[0].recip()));
        }
        // Solve x·y = 1 through the multiplication matrix of x.
        let n = self.conductor;
        let phi = self.coeffs.len();
        let mut m = QMatrix::zeros(phi, phi);
        for j in 0..phi {
            let col = self.product(&Self::root_of_unity(n, j as i64)).promote(n);
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        let mut rhs = vec![Rational::zero(); phi];
        rhs[0] = Rational::one();
        let y = m.solve_vec(&rhs)?;
        Some(Self::normalize(n, y))
    }

    fn is_zero_value(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl super::Field for CyclotomicNumber {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.conductor == 1 && Zero::is_zero(&self.coeffs[0])
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
    fn from_rational(q: &Rational) -> Self {
        CyclotomicNumber::from_rational(q.clone())
    }
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: Self) -> CyclotomicNumber {
        self.binary(rhs, |a, b| a + b)
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: Self) -> CyclotomicNumber {
        self.binary(rhs, |a, b| a - b)
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: Self) -> CyclotomicNumber {
        self.product(rhs)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: Self) -> CyclotomicNumber {
        &self + &rhs
    }
}

impl Sub for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: Self) -> CyclotomicNumber {
        &self - &rhs
    }
}

impl Mul for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: Self) -> CyclotomicNumber {
        &self * &rhs
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

/// Conductor ascending, then coefficients in descending order.
impl Ord for CyclotomicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.conductor.cmp(&other.conductor).then_with(|| {
            for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                match b.cmp(a) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for CyclotomicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let root = match k {
                0 => String::new(),
                1 => format!("z{}", self.conductor),
                _ => format!("z{}^{}", self.conductor, k),
            };
            if root.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{root}")?;
            } else {
                write!(f, "{abs}*{root}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({self})")
    }
}
