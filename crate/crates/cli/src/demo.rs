//! The self-contained demonstration run.

use serde_json::{json, Map, Value};

use coverhom_core::exactalg::QMatrix;
use coverhom_core::fixtures::{rose_fixtures, surface_fixtures};
use coverhom_core::groups::{families, fs_indicator, FiniteGroup, InvolutionType, Kind, TargetLabel};
use coverhom_core::rho::{induced_action, invariant_bilinear_forms, scalar_matrix, verify_unipotent_pair, FormClass};
use coverhom_core::surface::{builtin_twist, SurfacePresentation};

use crate::cache::TableCache;
use crate::config::{JobConfig, VerifyLevel};
use crate::error::{CliError, CliResult};
use crate::pipeline::{decompose, CoverJob};
use crate::report::{self, Checks, Report};
use crate::sweep::sweep;

/// Samples per fixture in the randomized sweep.
pub const SWEEP_SAMPLES: usize = 20;

/// One family member and the labels its distinguished component must carry.
#[derive(Clone, Debug)]
pub struct ClassificationCase {
    pub label: String,
    pub group: FiniteGroup,
    pub rep: families::ExplicitRep,
    pub kind: Kind,
    pub type_label: InvolutionType,
    pub target: TargetLabel,
    pub fs_indicator: i8,
    pub form: FormClass,
}

pub fn classification_cases() -> Vec<ClassificationCase> {
    let mut out = Vec::new();
    for m in [2, 3, 4] {
        out.push(ClassificationCase {
            label: format!("Sym({}) standard", m + 1),
            group: families::symmetric(m + 1),
            rep: families::standard_rep(m + 1),
            kind: Kind::First,
            type_label: InvolutionType::Orthogonal,
            target: TargetLabel::Sp,
            fs_indicator: 1,
            form: FormClass::Symmetric,
        });
    }
    for n in [3, 4, 5, 7] {
        out.push(ClassificationCase {
            label: format!("Z/{n} faithful"),
            group: families::cyclic(n),
            rep: families::cyclic_rep(n),
            kind: Kind::Second,
            type_label: InvolutionType::Unitary,
            target: TargetLabel::GL,
            fs_indicator: 0,
            form: FormClass::None,
        });
    }
    for n in [3, 4, 5] {
        out.push(ClassificationCase {
            label: format!("Dih({}) two-dimensional", 2 * n),
            group: families::dihedral(n),
            rep: families::dihedral_rep(n),
            kind: Kind::First,
            type_label: InvolutionType::Orthogonal,
            target: TargetLabel::Sp,
            fs_indicator: 1,
            form: FormClass::Symmetric,
        });
    }
    for n in [2, 3] {
        out.push(ClassificationCase {
            label: format!("Dic({}) faithful", 4 * n),
            group: families::dicyclic(n),
            rep: families::dicyclic_rep(n),
            kind: Kind::First,
            type_label: InvolutionType::Symplectic,
            target: TargetLabel::O,
            fs_indicator: -1,
            form: FormClass::Alternating,
        });
    }
    out
}

/// Computed labels for one case.
#[derive(Clone, Debug)]
pub struct Classification {
    pub component: Value,
    pub kind: Kind,
    pub type_label: InvolutionType,
    pub target: TargetLabel,
    pub fs_indicator: i8,
    pub character_indicator: i8,
    pub form: FormClass,
}

impl Classification {
    pub fn matches(&self, case: &ClassificationCase) -> bool {
        self.kind == case.kind
            && self.type_label == case.type_label
            && self.target == case.target
            && self.fs_indicator == case.fs_indicator
            && self.character_indicator == case.fs_indicator
            && self.form == case.form
            && self.form.indicator() == self.fs_indicator
    }
}

/// Locates the component containing the explicit representation's character.
pub fn classify(case: &ClassificationCase, cache: Option<&TableCache>) -> CliResult<Classification> {
    let g = &case.group;
    let d = decompose(g, cache)?;
    let chi = case.rep.character(g)?;
    let (index, comp) = d
        .all()
        .enumerate()
        .find(|(_, c)| c.orbit.iter().any(|&k| d.characters[k] == chi))
        .ok_or_else(|| CliError::Core(coverhom_core::Error::Decomposition(format!("{} not found", case.rep.name))))?;
    Ok(Classification {
        component: report::component(index, comp),
        kind: comp.kind,
        type_label: comp.type_label,
        target: comp.target_label,
        fs_indicator: comp.fs_indicator,
        character_indicator: fs_indicator(g, &chi)?,
        form: invariant_bilinear_forms(&case.rep.images)?,
    })
}

fn form_name(f: FormClass) -> &'static str {
    match f {
        FormClass::Symmetric => "symmetric",
        FormClass::Alternating => "alternating",
        FormClass::None => "none",
    }
}

/// Unipotent images of T_b1 and T_a1⁻¹ on the nontrivial component of the
/// genus-2 double cover, as rational 2×2 matrices.
pub fn double_cover_matrices(job: &CoverJob) -> CliResult<(Option<QMatrix>, Option<QMatrix>, bool)> {
    let hb = job
        .handlebody
        .as_ref()
        .ok_or_else(|| CliError::Parse("double cover is not a handlebody cover".into()))?;
    let setup = hb
        .setup
        .as_ref()
        .ok_or_else(|| CliError::Parse("double cover is not redundant".into()))?;
    let r = verify_unipotent_pair(&job.cx, &job.hom, setup, &job.modules[1], &hb.phat)?;
    let unit = &r.split.unit;
    Ok((scalar_matrix(&r.tb, unit), scalar_matrix(&r.ta_inv, unit), r.passed()))
}

pub fn run_demo(cfg: &JobConfig) -> CliResult<Report> {
    let cache = cfg.cache();
    let cache = cache.as_ref();
    let mut checks = Checks::default();
    let mut body = Map::new();

    let surfaces = surface_fixtures();
    let jobs = surfaces
        .iter()
        .map(|f| CoverJob::from_surface_fixture(f, cache))
        .collect::<CliResult<Vec<_>>>()?;

    // genus 2 over Z/2
    let job = &jobs[0];
    let mult: Vec<usize> = job.modules.iter().map(|m| m.dimension()).collect();
    checks.push("double cover: H1 has dimension 6", job.hom.dimension() == 6);
    checks.push("double cover: multiplicities (4, 2)", mult == [4, 2]);
    let (tb, ta_inv, pattern) = double_cover_matrices(job)?;
    let upper = QMatrix::from_i64(&[&[1, 1], &[0, 1]]);
    let lower = QMatrix::from_i64(&[&[1, 0], &[1, 1]]);
    checks.push("double cover: T_b1 acts as [[1,1],[0,1]]", tb.as_ref() == Some(&upper));
    checks.push("double cover: T_a1^-1 acts as [[1,0],[1,1]]", ta_inv.as_ref() == Some(&lower));
    checks.push("double cover: unipotent pattern", pattern);
    let pres = SurfacePresentation::new(2)?;
    let mut certified = true;
    for name in ["Tb1", "Ta1^-1"] {
        certified &= induced_action(&builtin_twist(&pres, name)?, &job.cx, &job.hom)?
            .certifications
            .all();
    }
    checks.push("double cover: both images certified", certified);
    body.insert(
        "double_cover".into(),
        json!({
            "homology_dimension": job.hom.dimension(),
            "multiplicities": mult,
            "tb1": tb.as_ref().map(report::matrix),
            "ta1_inverse": ta_inv.as_ref().map(report::matrix),
        }),
    );

    // classification of the family examples
    let mut classes = Vec::new();
    for case in classification_cases() {
        let c = classify(&case, cache)?;
        checks.push(format!("classification: {}", case.label), c.matches(&case));
        classes.push(json!({
            "case": case.label,
            "group_order": case.group.order(),
            "component": c.component,
            "invariant_form": form_name(c.form),
            "character_indicator": c.character_indicator,
        }));
    }
    body.insert("classification".into(), Value::Array(classes));

    // dimensions on every fixture
    let mut fixtures = Vec::new();
    for (f, job) in surfaces.iter().zip(&jobs) {
        let ok = job.hom.dimension() == job.expected_dimension()
            && job.multiplicities().iter().all(|(d, e)| d == e);
        checks.push(format!("fixture {}: dimensions", f.name), ok);
        fixtures.push(json!({
            "name": f.name,
            "dimension": job.hom.dimension(),
            "multiplicities": job.multiplicities().iter().map(|(d, _)| d).collect::<Vec<_>>(),
        }));
    }
    for f in rose_fixtures() {
        let job = CoverJob::from_rose_fixture(&f, cache)?;
        checks.push(
            format!("fixture {}: dimensions", f.name),
            job.hom.dimension() == job.expected_dimension(),
        );
        fixtures.push(json!({ "name": f.name, "dimension": job.hom.dimension() }));
    }
    body.insert("fixtures".into(), Value::Array(fixtures));

    if cfg.verify_level == VerifyLevel::Full {
        let mut sweeps = Map::new();
        for (k, (f, job)) in surfaces.iter().zip(&jobs).enumerate() {
            let r = sweep(job, SWEEP_SAMPLES, cfg.seed.wrapping_add(k as u64))?;
            checks.push(format!("sweep {}", f.name), r.passed());
            sweeps.insert(f.name.to_string(), r.to_json());
        }
        body.insert("sweeps".into(), Value::Object(sweeps));
    }
    body.insert(
        "input".into(),
        json!({
            "verify_level": match cfg.verify_level { VerifyLevel::Fast => "fast", VerifyLevel::Full => "full" },
            "seed": cfg.seed,
        }),
    );
    Ok(Report::new("demo", body, &checks))
}
