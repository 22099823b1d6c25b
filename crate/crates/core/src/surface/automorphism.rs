use std::fmt;
use std::str::FromStr;

use super::word::Word;
use crate::error::{Error, Result};
use crate::exactalg::{int, QMatrix};

/// Standard presentation of the closed genus-g surface group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePresentation {
    genus: usize,
    relator: Word,
}

impl SurfacePresentation {
    pub fn new(genus: usize) -> Result<Self> {
        if genus < 2 {
            return Err(Error::Precondition(format!("genus must be at least 2, got {genus}")));
        }
        let mut letters = Vec::with_capacity(4 * genus);
        for i in 1..=genus as i32 {
            let (a, b) = (2 * i - 1, 2 * i);
            letters.extend([a, b, -a, -b]);
        }
        Ok(SurfacePresentation {
            genus,
            relator: Word::new(letters),
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn num_generators(&self) -> usize {
        2 * self.genus
    }

    /// Π [a_i, b_i].
    pub fn relator(&self) -> &Word {
        &self.relator
    }

    pub fn a(i: usize) -> i32 {
        2 * i as i32 - 1
    }

    pub fn b(i: usize) -> i32 {
        2 * i as i32
    }
}

/// Endomorphism of the surface group given by generator images, together with
/// the data `r ↦ conjugator · r^sign · conjugator⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceAutomorphism {
    pub genus: usize,
    pub images: Vec<Word>,
    pub conjugator: Word,
    pub orientation_sign: i8,
}

fn rotate(w: &Word, k: usize) -> Word {
    let l = w.letters();
    let mut v = l[k..].to_vec();
    v.extend_from_slice(&l[..k]);
    Word::new(v)
}

pub fn validate_automorphism(pres: &SurfacePresentation, images: Vec<Word>) -> Result<SurfaceAutomorphism> {
    let n = pres.num_generators();
    if images.len() != n {
        return Err(Error::NotAutomorphism(format!("expected {n} images, got {}", images.len())));
    }
    if let Some(bad) = images
        .iter()
        .flat_map(|w| w.letters())
        .find(|l| l.unsigned_abs() as usize > n)
    {
        return Err(Error::NotAutomorphism(format!("letter {bad} out of range")));
    }
    let image = pres.relator().substitute(&images);
    let (outer, core) = image.cyclic_reduction();
    for sign in [1i8, -1] {
        let target = if sign == 1 {
            pres.relator().clone()
        } else {
            pres.relator().inverse()
        };
        if core.len() != target.len() {
            continue;
        }
        // target = u·v and core = v·u = u⁻¹·target·u
        for k in 0..target.len() {
            if rotate(&target, k) == core {
                let u = Word::new(target.letters()[..k].to_vec());
                return Ok(SurfaceAutomorphism {
                    genus: pres.genus(),
                    images,
                    conjugator: outer.mul(&u.inverse()),
                    orientation_sign: sign,
                });
            }
        }
    }
    Err(Error::NotAutomorphism(format!(
        "relator image {} is not conjugate to the relator or its inverse",
        image.display_surface()
    )))
}

impl SurfaceAutomorphism {
    pub fn identity(pres: &SurfacePresentation) -> Self {
        let images = (1..=pres.num_generators() as i32).map(Word::generator).collect();
        validate_automorphism(pres, images).expect("identity is an automorphism")
    }

    /// Inner automorphism x ↦ t·x·t⁻¹.
    pub fn inner(pres: &SurfacePresentation, t: &Word) -> Result<Self> {
        let ti = t.inverse();
        let images = (1..=pres.num_generators() as i32)
            .map(|i| t.mul(&Word::generator(i)).mul(&ti))
            .collect();
        validate_automorphism(pres, images)
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| *w == Word::generator(i as i32 + 1))
    }

    pub fn require_orientation_preserving(self) -> Result<Self> {
        if self.orientation_sign == 1 {
            Ok(self)
        } else {
            Err(Error::NotAutomorphism("orientation-reversing".into()))
        }
    }

    /// Action on H₁(Σ; Z) in the basis a_1, b_1, …; column j is the image of generator j.
    pub fn abelianization(&self) -> QMatrix {
        let n = self.images.len();
        let mut m = QMatrix::zeros(n, n);
        for (j, w) in self.images.iter().enumerate() {
            for (i, e) in w.exponent_sums(n).into_iter().enumerate() {
                m.set(i, j, int(e));
            }
        }
        m
    }
}

/// The composite `f ∘ g`: first `g`, then `f`.
pub fn compose(pres: &SurfacePresentation, f: &SurfaceAutomorphism, g: &SurfaceAutomorphism) -> Result<SurfaceAutomorphism> {
    let images = g.images.iter().map(|w| f.apply(w)).collect();
    validate_automorphism(pres, images)
}

/// Simple closed curves with built-in twists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Curve {
    A(usize),
    B(usize),
    /// Curve homologous to a_i + a_{i+1}, separating adjacent handles.
    C(usize),
}

impl FromStr for Curve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Curve> {
        let s = s.trim();
        let unknown = || Error::UnknownTwist(s.to_string());
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(unknown)?;
        let rest = chars.as_str().trim_start_matches('_');
        let i: usize = rest.parse().map_err(|_| unknown())?;
        if i == 0 {
            return Err(unknown());
        }
        match head {
            'a' => Ok(Curve::A(i)),
            'b' => Ok(Curve::B(i)),
            'c' => Ok(Curve::C(i)),
            _ => Err(unknown()),
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::A(i) => write!(f, "a{i}"),
            Curve::B(i) => write!(f, "b{i}"),
            Curve::C(i) => write!(f, "c{i}"),
        }
    }
}

impl Curve {
    /// Homology class in the basis a_1, b_1, …, a_g, b_g.
    pub fn homology_class(&self, genus: usize) -> Vec<i64> {
        let mut v = vec![0; 2 * genus];
        match *self {
            Curve::A(i) => v[2 * i - 2] = 1,
            Curve::B(i) => v[2 * i - 1] = 1,
            Curve::C(i) => {
                v[2 * i - 2] = 1;
                v[2 * i] = 1;
            }
        }
        v
    }

    fn check(&self, genus: usize) -> Result<()> {
        let ok = match *self {
            Curve::A(i) | Curve::B(i) => i <= genus,
            Curve::C(i) => i < genus,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnknownTwist(format!("{self} in genus {genus}")))
        }
    }
}

fn twist_images(pres: &SurfacePresentation, curve: Curve, inverse: bool) -> Vec<Word> {
    let mut images: Vec<Word> = (1..=pres.num_generators() as i32).map(Word::generator).collect();
    let g = |l: i32| Word::generator(l);
    match curve {
        Curve::A(i) => {
            let (a, b) = (SurfacePresentation::a(i), SurfacePresentation::b(i));
            let e = if inverse { a } else { -a };
            images[b as usize - 1] = Word::new(vec![b, e]);
        }
        Curve::B(i) => {
            let (a, b) = (SurfacePresentation::a(i), SurfacePresentation::b(i));
            let e = if inverse { -b } else { b };
            images[a as usize - 1] = Word::new(vec![a, e]);
        }
        Curve::C(i) => {
            let (a, b) = (SurfacePresentation::a(i), SurfacePresentation::b(i));
            let (a2, b2) = (SurfacePresentation::a(i + 1), SurfacePresentation::b(i + 1));
            let (pre_b, pre_b2) = if inverse {
                (g(a2).mul(&g(a)), g(a).mul(&g(a2)))
            } else {
                (g(-a).mul(&g(-a2)), g(-a2).mul(&g(-a)))
            };
            images[b as usize - 1] = pre_b.mul(&g(b));
            images[b2 as usize - 1] = pre_b2.mul(&g(b2));
            // the above sends [a,b][a2,b2] to γ⁻¹·[a,b][a2,b2]·γ with γ = a·a2;
            // conjugating the handle images by γ^{±1} fixes that product exactly
            let gamma = g(a).mul(&g(a2));
            let c = if inverse { gamma.inverse() } else { gamma };
            for l in [a, b, a2, b2] {
                let w = &images[l as usize - 1];
                images[l as usize - 1] = c.mul(w).mul(&c.inverse());
            }
        }
    }
    images
}

/// The Dehn twist `T_curve^power`.
pub fn twist(pres: &SurfacePresentation, curve: Curve, power: i64) -> Result<SurfaceAutomorphism> {
    curve.check(pres.genus())?;
    let step = validate_automorphism(pres, twist_images(pres, curve, power < 0))?;
    let mut out = SurfaceAutomorphism::identity(pres);
    for _ in 0..power.unsigned_abs() {
        out = compose(pres, &step, &out)?;
    }
    Ok(out)
}

/// Twist by name: a curve such as `a1`, `b2` or `c1`, optionally prefixed by
/// `T` and followed by a power, as in `Ta1^-1`.
pub fn builtin_twist(pres: &SurfacePresentation, name: &str) -> Result<SurfaceAutomorphism> {
    let body = name.trim();
    let body = body.strip_prefix('T').unwrap_or(body);
    let (curve, power) = match body.split_once('^') {
        Some((c, p)) => (
            c,
            p.parse::<i64>().map_err(|_| Error::UnknownTwist(name.to_string()))?,
        ),
        None => (body, 1),
    };
    twist(pres, curve.parse()?, power)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres2() -> SurfacePresentation {
        SurfacePresentation::new(2).unwrap()
    }

    #[test]
    fn relator_shape() {
        let p = pres2();
        assert_eq!(p.relator().len(), 8);
        assert_eq!(p.relator().display_surface(), "a1 b1 A1 B1 a2 b2 A2 B2");
        assert!(SurfacePresentation::new(1).is_err());
    }

    #[test]
    fn identity_validates() {
        let id = SurfaceAutomorphism::identity(&pres2());
        assert!(id.conjugator.is_empty());
        assert_eq!(id.orientation_sign, 1);
    }

    #[test]
    fn inverting_a1_is_rejected() {
        let p = pres2();
        let mut images: Vec<Word> = (1..=4).map(Word::generator).collect();
        images[0] = Word::generator(-1);
        assert!(matches!(validate_automorphism(&p, images), Err(Error::NotAutomorphism(_))));
    }

    #[test]
    fn reflection_has_negative_sign() {
        // a_i ↦ b_i, b_i ↦ a_i reverses orientation
        let p = pres2();
        let images = vec![
            Word::generator(2),
            Word::generator(1),
            Word::generator(4),
            Word::generator(3),
        ];
        let f = validate_automorphism(&p, images).unwrap();
        assert_eq!(f.orientation_sign, -1);
        let image = p.relator().substitute(&f.images);
        let expected = f.conjugator.mul(&p.relator().inverse()).mul(&f.conjugator.inverse());
        assert_eq!(image, expected);
        assert!(f.require_orientation_preserving().is_err());
    }

    #[test]
    fn twist_and_inverse_cancel() {
        let p = SurfacePresentation::new(3).unwrap();
        for name in ["a1", "b2", "c1", "c2"] {
            let c: Curve = name.parse().unwrap();
            let t = twist(&p, c, 1).unwrap();
            let ti = twist(&p, c, -1).unwrap();
            assert_eq!(t.orientation_sign, 1);
            assert!(compose(&p, &t, &ti).unwrap().is_identity());
            assert!(compose(&p, &ti, &t).unwrap().is_identity());
        }
    }

    #[test]
    fn unknown_curves() {
        let p = pres2();
        assert!(matches!(builtin_twist(&p, "d1"), Err(Error::UnknownTwist(_))));
        assert!(matches!(builtin_twist(&p, "c2"), Err(Error::UnknownTwist(_))));
        assert!(matches!(builtin_twist(&p, "a3"), Err(Error::UnknownTwist(_))));
        assert!(builtin_twist(&p, "a0").is_err());
        assert!(builtin_twist(&p, "Ta1^x").is_err());
    }

    #[test]
    fn twist_tokens() {
        let p = pres2();
        assert_eq!(builtin_twist(&p, "Ta1^-1").unwrap(), twist(&p, Curve::A(1), -1).unwrap());
        assert_eq!(builtin_twist(&p, "Tb2").unwrap(), twist(&p, Curve::B(2), 1).unwrap());
        assert_eq!(builtin_twist(&p, "c1^2").unwrap(), twist(&p, Curve::C(1), 2).unwrap());
    }

    #[test]
    fn inner_automorphism_conjugator() {
        let p = pres2();
        let t = Word::parse_surface("a1 b2").unwrap();
        let f = SurfaceAutomorphism::inner(&p, &t).unwrap();
        assert_eq!(f.orientation_sign, 1);
        assert_eq!(f.conjugator, t);
    }
}
