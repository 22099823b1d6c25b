//! Group, homomorphism and automorphism input files.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};

use coverhom_core::groups::{families, FiniteGroup};
use coverhom_core::surface::{
    builtin_twist, compose, validate_automorphism, GroupHom, HomDomain, SurfaceAutomorphism, SurfacePresentation, Word,
};

use crate::error::{CliError, CliResult};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    degree: usize,
    generators: Vec<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomFile {
    group: Option<String>,
    surface_genus: Option<usize>,
    rose_rank: Option<usize>,
    images: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AutFile {
    name: Option<String>,
    images: Vec<String>,
}

/// A permutation group together with the echo of how it was specified.
#[derive(Clone, Debug)]
pub struct GroupInput {
    pub group: Arc<FiniteGroup>,
    pub echo: Value,
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(format!("reading {}", path.display()), e))
}

fn parse_toml<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    toml::from_str(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn builtin_group(name: &str, n: usize) -> Option<FiniteGroup> {
    let ok = |min: usize| n >= min && n <= 64;
    Some(match name {
        "cyclic" if ok(1) => families::cyclic(n),
        "symmetric" if ok(1) && n <= 7 => families::symmetric(n),
        "alternating" if ok(3) && n <= 7 => families::alternating(n),
        "dihedral" if ok(3) => families::dihedral(n),
        "dicyclic" if ok(2) => families::dicyclic(n),
        _ => return None,
    })
}

/// Resolves a group reference: a TOML file `{degree, generators}` or a
/// built-in `family:n` such as `symmetric:4`, `cyclic:5`, `dihedral:4`
/// (order 8) or `dicyclic:2` (order 8).
pub fn load_group(reference: &str, base: Option<&Path>) -> CliResult<GroupInput> {
    let path = match base {
        Some(dir) => dir.join(reference),
        None => PathBuf::from(reference),
    };
    if path.is_file() {
        let file: GroupFile = parse_toml(&path)?;
        let group = FiniteGroup::from_permutations(&file.generators, file.degree)?;
        return Ok(GroupInput {
            group: Arc::new(group),
            echo: json!({
                "degree": file.degree,
                "generators": file.generators,
            }),
        });
    }
    let parsed = reference
        .split_once(':')
        .and_then(|(name, n)| Some((name, n.trim().parse::<usize>().ok()?)));
    match parsed {
        Some((name, n)) => {
            let group = builtin_group(name.trim(), n)
                .ok_or_else(|| CliError::Parse(format!("unknown built-in group `{reference}`")))?;
            Ok(GroupInput {
                group: Arc::new(group),
                echo: json!({ "builtin": reference }),
            })
        }
        None => Err(CliError::Parse(format!(
            "group `{reference}` is neither a file nor a built-in family:n"
        ))),
    }
}

/// Evaluates a word in the group generators (`g1 G2`, `1` for the identity).
pub fn eval_element(group: &FiniteGroup, text: &str) -> CliResult<usize> {
    let word = Word::parse_group(text)?;
    let gens = group.generators();
    word.letters().iter().try_fold(group.identity(), |acc, &l| {
        let s = *gens
            .get(l.unsigned_abs() as usize - 1)
            .ok_or_else(|| CliError::Parse(format!("`{text}` uses a generator beyond g{}", gens.len())))?;
        Ok(group.mul(acc, if l < 0 { group.inv(s) } else { s }))
    })
}

/// Domain of a parsed homomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Surface { genus: usize },
    Rose { rank: usize },
}

#[derive(Clone, Debug)]
pub struct HomInput {
    pub group: GroupInput,
    pub domain: Domain,
    pub words: Vec<String>,
    pub hom: GroupHom,
}

impl HomInput {
    /// Wraps an already constructed homomorphism; images are echoed as permutations.
    pub fn from_hom(group: GroupInput, hom: GroupHom) -> Self {
        let domain = match hom.domain {
            HomDomain::Surface { genus } => Domain::Surface { genus },
            HomDomain::Free { rank } => Domain::Rose { rank },
        };
        let words = hom
            .images
            .iter()
            .map(|&h| format!("{:?}", group.group.element(h)))
            .collect();
        HomInput {
            group,
            domain,
            words,
            hom,
        }
    }

    pub fn echo(&self) -> Value {
        let (kind, size) = match self.domain {
            Domain::Surface { genus } => ("surface", json!({ "surface_genus": genus })),
            Domain::Rose { rank } => ("rose", json!({ "rose_rank": rank })),
        };
        json!({
            "kind": kind,
            "size": size,
            "images": self.words,
            "element_indices": self.hom.images,
        })
    }

    /// Images of the free generators when b_i ↦ 1 for every i.
    pub fn handlebody_images(&self) -> Option<Vec<usize>> {
        match self.domain {
            Domain::Surface { .. } => {
                let id = self.hom.target.identity();
                let imgs = &self.hom.images;
                imgs.iter().skip(1).step_by(2).all(|&b| b == id).then(|| imgs.iter().step_by(2).copied().collect())
            }
            Domain::Rose { .. } => None,
        }
    }
}

/// Reads a homomorphism file. `group_override` replaces the file's group
/// reference; `genus` and `rose` must agree with the file when both are set.
pub fn load_hom(path: &Path, group_override: Option<&str>, genus: Option<usize>, rose: bool) -> CliResult<HomInput> {
    let file: HomFile = parse_toml(path)?;
    let group = match (group_override, &file.group) {
        (Some(r), _) => load_group(r, None)?,
        (None, Some(r)) => load_group(r, path.parent())?,
        (None, None) => return Err(CliError::Parse(format!("{}: no group given", path.display()))),
    };
    let domain = match (file.surface_genus, file.rose_rank, rose) {
        (Some(_), Some(_), _) => {
            return Err(CliError::Parse("set only one of surface_genus and rose_rank".into()));
        }
        (Some(_), None, true) => return Err(CliError::Parse("--rose given for a surface homomorphism".into())),
        (Some(g), None, false) => Domain::Surface { genus: g },
        (None, Some(r), _) => Domain::Rose { rank: r },
        (None, None, true) => Domain::Rose {
            rank: file.images.len(),
        },
        (None, None, false) => match genus {
            Some(g) => Domain::Surface { genus: g },
            None => return Err(CliError::Parse("no surface_genus, rose_rank or --genus".into())),
        },
    };
    if let (Domain::Surface { genus: g }, Some(cli)) = (domain, genus) {
        if g != cli {
            return Err(CliError::Parse(format!("--genus {cli} disagrees with surface_genus {g}")));
        }
    }
    if let Domain::Surface { genus: g } = domain {
        if g < 2 {
            return Err(CliError::Parse(format!("genus must be at least 2, got {g}")));
        }
    }
    let images = file
        .images
        .iter()
        .map(|w| eval_element(&group.group, w))
        .collect::<CliResult<Vec<_>>>()?;
    let hom = match domain {
        Domain::Surface { genus } => GroupHom::surface(group.group.clone(), genus, images)?,
        Domain::Rose { rank } => GroupHom::free(group.group.clone(), rank, images)?,
    };
    Ok(HomInput {
        group,
        domain,
        words: file.images,
        hom,
    })
}

/// A resolved automorphism with the name it is reported under.
#[derive(Clone, Debug)]
pub struct AutInput {
    pub name: String,
    pub automorphism: SurfaceAutomorphism,
    /// True for products of built-in twists; user-supplied images are only
    /// checked against the relator, so bijectivity is assumed.
    pub built_in: bool,
}

/// Resolves an automorphism specifier: a TOML file listing 2g image words,
/// `id`, or a `*`-separated product of built-in twists such as `Tb1*Ta1^-1`
/// (applied right to left, as composition).
pub fn load_aut(spec: &str, pres: &SurfacePresentation) -> CliResult<AutInput> {
    let path = Path::new(spec);
    if path.is_file() {
        let file: AutFile = parse_toml(path)?;
        let images = file
            .images
            .iter()
            .map(|w| Word::parse_surface(w))
            .collect::<Result<Vec<_>, _>>()?;
        let automorphism = validate_automorphism(pres, images)?;
        if automorphism.orientation_sign != 1 {
            return Err(CliError::Parse(format!("{spec}: automorphism reverses orientation")));
        }
        return Ok(AutInput {
            name: file.name.unwrap_or_else(|| spec.to_string()),
            automorphism,
            built_in: false,
        });
    }
    let mut automorphism = SurfaceAutomorphism::identity(pres);
    for token in spec.split('*').map(str::trim) {
        if token == "id" {
            continue;
        }
        automorphism = compose(pres, &automorphism, &builtin_twist(pres, token)?)?;
    }
    Ok(AutInput {
        name: spec.to_string(),
        automorphism,
        built_in: true,
    })
}

/// Name of surface generator `j` (0-based) in the `a1 b1 a2 …` order.
pub fn surface_generator_name(j: usize) -> String {
    format!("{}{}", if j.is_multiple_of(2) { 'a' } else { 'b' }, j / 2 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
        let p = dir.join(name);
        std::fs::File::create(&p).unwrap().write_all(text.as_bytes()).unwrap();
        p
    }

    #[test]
    fn group_files_and_builtins() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "s3.toml", "degree = 3\ngenerators = [[1, 0, 2], [1, 2, 0]]\n");
        assert_eq!(load_group(p.to_str().unwrap(), None).unwrap().group.order(), 6);
        assert_eq!(load_group("dicyclic:3", None).unwrap().group.order(), 12);
        assert!(matches!(load_group("nonsense", None), Err(CliError::Parse(_))));
        let bad = write(dir.path(), "bad.toml", "degree = 3\ngenerators = [[0, 0, 1]]\n");
        assert_eq!(load_group(bad.to_str().unwrap(), None).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn element_words() {
        let g = families::cyclic(5);
        let s = g.generators()[0];
        assert_eq!(eval_element(&g, "1").unwrap(), g.identity());
        assert_eq!(eval_element(&g, "g1 g1 G1").unwrap(), s);
        assert_eq!(eval_element(&g, "g2").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn hom_files() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            dir.path(),
            "h.toml",
            "group = \"cyclic:2\"\nsurface_genus = 2\nimages = [\"1\", \"1\", \"g1\", \"1\"]\n",
        );
        let h = load_hom(&p, None, None, false).unwrap();
        assert_eq!(h.domain, Domain::Surface { genus: 2 });
        assert_eq!(h.handlebody_images().unwrap().len(), 2);
        assert_eq!(load_hom(&p, None, Some(3), false).unwrap_err().exit_code(), 2);
        let bad = write(
            dir.path(),
            "bad.toml",
            "group = \"symmetric:3\"\nsurface_genus = 2\nimages = [\"g1\", \"g2\", \"1\", \"1\"]\n",
        );
        assert_eq!(load_hom(&bad, None, None, false).unwrap_err().exit_code(), 4);
        let rose = write(dir.path(), "r.toml", "group = \"cyclic:3\"\nimages = [\"g1\", \"1\"]\n");
        let r = load_hom(&rose, None, None, true).unwrap();
        assert_eq!(r.domain, Domain::Rose { rank: 2 });
    }

    #[test]
    fn automorphism_specifiers() {
        let pres = SurfacePresentation::new(2).unwrap();
        let f = load_aut("Tb1*Ta1^-1", &pres).unwrap();
        let expected = compose(
            &pres,
            &builtin_twist(&pres, "Tb1").unwrap(),
            &builtin_twist(&pres, "Ta1^-1").unwrap(),
        )
        .unwrap();
        assert_eq!(f.automorphism.images, expected.images);
        assert!(load_aut("id", &pres).unwrap().automorphism.is_identity());
        assert_eq!(load_aut("Tq1", &pres).unwrap_err().exit_code(), 2);
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "f.toml", "images = [\"a1\", \"b1 A1\", \"a2\", \"b2\"]\n");
        let g = load_aut(p.to_str().unwrap(), &pres).unwrap();
        assert_eq!(g.automorphism.images, builtin_twist(&pres, "Ta1").unwrap().images);
    }
}
