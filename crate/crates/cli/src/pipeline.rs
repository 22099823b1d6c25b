//! The decompose, cover and act pipelines.

use serde_json::{json, Map, Value};

use coverhom_core::cover::{
    all_isotypic, are_orthogonal, equivariant_form, expected_dimension, homology, isotropic_split, kernel_submodule,
    rose_cover_complex, special_vectors, surface_cover_complex, CoverChainComplex, CoverHomology, IsotropicSplit,
    IsotypicModule, KernelSubmodule,
};
use coverhom_core::exactalg::{QMatrix, Rational};
use coverhom_core::fixtures::{RoseFixture, SurfaceFixture};
use coverhom_core::groups::{
    character_table, rational_components, Decomposition, FiniteGroup, GroupAlgebraElement, Kind,
};
use coverhom_core::rho::{
    adjoint, gamma_violations, induced_action, norm_one_check, parabolic_check, project_action, scalar_matrix,
    verify_unipotent_pair, EndoContext, EndoElement,
};
use coverhom_core::surface::{redundant_setup, GroupHom, RedundantSetup, SurfacePresentation};

use crate::cache::TableCache;
use crate::config::{Command, JobConfig};
use crate::error::{CliError, CliResult};
use crate::input::{load_aut, load_group, load_hom, surface_generator_name, AutInput, Domain, GroupInput, HomInput};
use crate::report::{self, Checks, Report};

/// Character table (through the cache when one is configured) and the
/// rational components built from it.
pub fn decompose(g: &FiniteGroup, cache: Option<&TableCache>) -> CliResult<Decomposition> {
    let table = match cache {
        Some(c) => c.character_table(g)?,
        None => character_table(g),
    };
    Ok(rational_components(g, table)?)
}

pub fn component_table(d: &Decomposition) -> Value {
    Value::Array(d.all().enumerate().map(|(i, c)| report::component(i, c)).collect())
}

fn decomposition_checks(g: &FiniteGroup, d: &Decomposition) -> Checks {
    let mut checks = Checks::default();
    let total: usize = d.all().map(|c| c.q_dimension).sum();
    checks.push("component dimensions sum to the group order", total == g.order());
    checks.push(
        "kind is second exactly when the indicator vanishes",
        d.all().all(|c| (c.kind == Kind::Second) == (c.fs_indicator == 0)),
    );
    checks
}

pub fn run_decompose(cfg: &JobConfig) -> CliResult<Report> {
    cfg.validate()?;
    let input = load_group(cfg.group.as_deref().expect("validated"), None)?;
    let g = &input.group;
    let d = decompose(g, cfg.cache().as_ref())?;
    let checks = decomposition_checks(g, &d);
    let mut body = Map::new();
    body.insert("input".into(), json!({ "group": input.echo }));
    body.insert("group".into(), report::group_summary(g));
    body.insert("components".into(), component_table(&d));
    Ok(Report::new("decompose", body, &checks))
}

/// P̂ and, for a redundant p′, the normalized setup with x₁ ↦ 1.
#[derive(Clone, Debug)]
pub struct Handlebody {
    pub pprime: GroupHom,
    pub phat: KernelSubmodule,
    pub setup: Option<RedundantSetup>,
}

/// Everything computed for one cover.
#[derive(Clone, Debug)]
pub struct CoverJob {
    pub input: HomInput,
    pub decomposition: Decomposition,
    pub cx: CoverChainComplex,
    pub hom: CoverHomology,
    pub modules: Vec<IsotypicModule>,
    pub handlebody: Option<Handlebody>,
}

impl CoverJob {
    pub fn build(input: HomInput, cache: Option<&TableCache>) -> CliResult<Self> {
        let g = input.group.group.clone();
        let decomposition = decompose(&g, cache)?;
        let cx = match input.domain {
            Domain::Surface { .. } => surface_cover_complex(&input.hom)?,
            Domain::Rose { .. } => rose_cover_complex(&input.hom)?,
        };
        let hom = homology(&cx)?;
        let modules = all_isotypic(&cx, &hom, &decomposition)?;
        let handlebody = match (input.domain, input.handlebody_images()) {
            (Domain::Surface { genus }, Some(images)) => {
                let pprime = GroupHom::free(g.clone(), genus, images.clone())?;
                let phat = kernel_submodule(&cx, &hom, &input.hom, &pprime)?;
                let setup = if images[0] == g.identity() {
                    Some(redundant_setup(genus, g.clone(), images)?)
                } else {
                    None
                };
                Some(Handlebody { pprime, phat, setup })
            }
            _ => None,
        };
        Ok(CoverJob {
            input,
            decomposition,
            cx,
            hom,
            modules,
            handlebody,
        })
    }

    pub fn from_surface_fixture(f: &SurfaceFixture, cache: Option<&TableCache>) -> CliResult<Self> {
        let group = GroupInput {
            group: f.group.clone(),
            echo: json!({ "fixture": f.name }),
        };
        Self::build(HomInput::from_hom(group, f.hom()?), cache)
    }

    pub fn from_rose_fixture(f: &RoseFixture, cache: Option<&TableCache>) -> CliResult<Self> {
        let group = GroupInput {
            group: f.group.clone(),
            echo: json!({ "fixture": f.name }),
        };
        Self::build(HomInput::from_hom(group, f.hom()?), cache)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.input.group.group
    }

    pub fn genus(&self) -> Option<usize> {
        match self.input.domain {
            Domain::Surface { genus } => Some(genus),
            Domain::Rose { .. } => None,
        }
    }

    /// (2g − 2)|H| + 2 for surfaces, (n − 1)|H| + 1 for roses.
    pub fn expected_dimension(&self) -> usize {
        let order = self.group().order();
        match self.input.domain {
            Domain::Surface { genus } => (2 * genus - 2) * order + 2,
            Domain::Rose { rank } => (rank - 1) * order + 1,
        }
    }

    /// dim_Q of each isotypic module and its expected value, trivial first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        self.modules
            .iter()
            .enumerate()
            .map(|(i, m)| (m.dimension(), expected_dimension(&self.cx, &m.component, i == 0)))
            .collect()
    }

    /// Rank of P̂ projected to each module, with (g − 1)·q + [trivial].
    pub fn kernel_multiplicities(&self) -> Option<Vec<(usize, usize)>> {
        let hb = self.handlebody.as_ref()?;
        let genus = self.genus()?;
        let n = self.hom.dimension();
        Some(
            self.modules
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let projected: Vec<Vec<Rational>> = hb.phat.basis.iter().map(|v| m.projector.mul_vec(v)).collect();
                    let dim = QMatrix::from_rows_with_cols(projected, n).rank();
                    (dim, (genus - 1) * m.component.q_dimension + usize::from(i == 0))
                })
                .collect(),
        )
    }

    /// The split basis (m′, m″) of one module for a redundant p.
    pub fn split(&self, index: usize) -> CliResult<Option<IsotropicSplit>> {
        let Some(hb) = &self.handlebody else { return Ok(None) };
        let Some(setup) = &hb.setup else { return Ok(None) };
        let m = &self.modules[index];
        let (alpha, beta) = special_vectors(&self.cx, &self.hom, setup, m)?;
        Ok(Some(isotropic_split(&self.hom, self.group(), m, &hb.phat, &alpha, &beta)?))
    }

    /// ⟨[ã], [b̃]⟩ for the lifts of the special curves at the base vertex.
    pub fn special_pairing(&self) -> CliResult<Option<GroupAlgebraElement>> {
        let Some(setup) = self.handlebody.as_ref().and_then(|hb| hb.setup.as_ref()) else {
            return Ok(None);
        };
        let (a, _) = self.cx.chain_of_lift(&setup.a, 0);
        let (b, _) = self.cx.chain_of_lift(&setup.b, 0);
        let x = self.hom.coordinates(&a)?;
        let y = self.hom.coordinates(&b)?;
        Ok(Some(self.hom.form(&x, &y)?))
    }
}

/// Report body and checks shared by `cover`, `demo` and the acceptance suite.
pub fn cover_sections(job: &CoverJob) -> CliResult<(Map<String, Value>, Checks)> {
    let g = job.group();
    let mut checks = decomposition_checks(g, &job.decomposition);
    let mut body = Map::new();
    body.insert(
        "input".into(),
        json!({ "group": job.input.group.echo, "hom": job.input.echo() }),
    );
    body.insert("group".into(), report::group_summary(g));
    body.insert("components".into(), component_table(&job.decomposition));

    let (c2, c1, c0) = job.cx.rank_profile();
    let dim = job.hom.dimension();
    let expected = job.expected_dimension();
    checks.push("homology dimension", dim == expected);
    body.insert(
        "homology".into(),
        json!({ "dimension": dim, "expected": expected, "cells": [c0, c1, c2] }),
    );

    let mut mult = Vec::new();
    for (i, ((d, e), m)) in job.multiplicities().into_iter().zip(&job.modules).enumerate() {
        checks.push(format!("isotypic dimension of component {i}"), d == e);
        mult.push(json!({
            "component": i,
            "dimension": d,
            "expected": e,
            "rank_over_component": d / m.component.q_dimension,
        }));
    }
    body.insert("multiplicities".into(), Value::Array(mult));

    if let Some(j) = job.hom.sp_pairing() {
        checks.push("J is antisymmetric", j.transpose() == j.neg());
        checks.push("J is nondegenerate", j.rank() == dim);
        checks.push(
            "J is invariant under the deck group",
            job.hom.h_actions().iter().all(|a| a.transpose().mul(j).mul(a) == *j),
        );
        let form = equivariant_form(&job.hom, g);
        checks.push("equivariant form is skew-Hermitian", form.is_ok());
        let mut orthogonal = true;
        for (i, a) in job.modules.iter().enumerate() {
            for b in &job.modules[i + 1..] {
                orthogonal &= are_orthogonal(&job.hom, a, b)?;
            }
        }
        checks.push("isotypic modules are mutually orthogonal", orthogonal);
        let blocks: Vec<Value> = job
            .modules
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.sp_gram.as_ref().map(|s| json!({ "component": i, "matrix": report::matrix(s) })))
            .collect();
        let mut gram = Map::new();
        gram.insert("intersection".into(), report::matrix(j));
        gram.insert("components".into(), Value::Array(blocks));
        if let Ok(f) = &form {
            gram.insert("equivariant".into(), report::algebra_matrix(&f.gram));
        }
        body.insert("gram".into(), Value::Object(gram));
    }

    if let (Some(hb), Some(genus)) = (&job.handlebody, job.genus()) {
        let kdim = hb.phat.dimension();
        let kexpected = (genus - 1) * g.order() + 1;
        checks.push("kernel submodule dimension", kdim == kexpected);
        let isotropic = hb
            .phat
            .basis
            .iter()
            .all(|x| hb.phat.basis.iter().all(|y| job.hom.form(x, y).is_ok_and(|v| v.is_zero())));
        checks.push("kernel submodule is totally isotropic", isotropic);
        let mut kmult = Vec::new();
        for (i, (d, e)) in job.kernel_multiplicities().unwrap_or_default().into_iter().enumerate() {
            checks.push(format!("kernel multiplicity of component {i}"), d == e);
            kmult.push(json!({ "component": i, "dimension": d, "expected": e }));
        }
        let pairing = job.special_pairing()?;
        if let Some(p) = &pairing {
            checks.push("special classes pair to 1", *p == GroupAlgebraElement::one());
        }
        body.insert(
            "handlebody".into(),
            json!({
                "free_images": hb.pprime.images,
                "redundant": hb.setup.is_some(),
                "kernel": { "dimension": kdim, "expected": kexpected, "basis": hb.phat.basis.iter().map(|v| report::vector(v)).collect::<Vec<_>>() },
                "multiplicities": kmult,
                "special_pairing": pairing.as_ref().map(report::algebra_element),
            }),
        );
    }
    Ok((body, checks))
}

pub fn run_cover(cfg: &JobConfig) -> CliResult<Report> {
    cfg.validate()?;
    let input = load_hom(
        cfg.hom.as_deref().expect("validated"),
        cfg.group.as_deref(),
        cfg.genus,
        cfg.rose,
    )?;
    let job = CoverJob::build(input, cfg.cache().as_ref())?;
    let (body, checks) = cover_sections(&job)?;
    Ok(Report::new("cover", body, &checks))
}

/// Rejects automorphisms outside Γ, naming the generators whose image moves.
pub fn require_in_gamma(p: &GroupHom, aut: &AutInput) -> CliResult<()> {
    let bad = gamma_violations(p, &aut.automorphism);
    if bad.is_empty() {
        return Ok(());
    }
    Err(CliError::NotInGamma {
        name: aut.name.clone(),
        generators: bad
            .iter()
            .map(|&j| {
                format!(
                    "{} -> {}",
                    surface_generator_name(j),
                    aut.automorphism.images[j].display_surface()
                )
            })
            .collect(),
    })
}

/// Per-module data reused across automorphisms.
struct ModuleContext {
    index: usize,
    endo: EndoContext,
    split: Option<IsotropicSplit>,
}

fn act_entry(job: &CoverJob, aut: &AutInput, contexts: &[ModuleContext], checks: &mut Checks) -> CliResult<Value> {
    let rm = induced_action(&aut.automorphism, &job.cx, &job.hom)?;
    let certs = rm.certifications;
    checks.push(format!("{}: certifications", aut.name), certs.all());
    let mut components = Vec::new();
    for ctx in contexts {
        let m = &job.modules[ctx.index];
        let y = project_action(&rm, m)?;
        let gram = m
            .sp_gram
            .as_ref()
            .ok_or_else(|| CliError::Parse("act needs a surface cover".into()))?;
        let adjoint_ok = adjoint(&y, gram)?.mul(&y) == QMatrix::identity(m.dimension());
        checks.push(format!("{}: adjoint identity on component {}", aut.name, ctx.index), adjoint_ok);
        let e = EndoElement::new(&ctx.endo, y.clone())?;
        let trd = e.reduced_trace(&ctx.endo)?;
        let norm = norm_one_check(&ctx.endo, std::slice::from_ref(&e))?.remove(0);
        checks.push(format!("{}: reduced norm on component {}", aut.name, ctx.index), norm.passed());
        let mut entry = json!({
            "component": ctx.index,
            "matrix": report::matrix(&y),
            "adjoint_identity": adjoint_ok,
            "degree": ctx.endo.degree,
            "reduced_norm": report::cyclotomic(&norm.nrd),
            "reduced_trace": report::cyclotomic(&trd),
            "norm_check": {
                "in_center": norm.in_center,
                "root_of_unity": norm.root_of_unity,
                "norm_one": norm.norm_one,
            },
        });
        if let Some(split) = &ctx.split {
            let a = split.a_matrix(&job.hom, &rm.matrix)?;
            entry["split_basis_matrix"] = report::algebra_matrix(&a);
            entry["split_basis_rational"] = scalar_matrix(&a, &split.unit).map_or(Value::Null, |q| report::matrix(&q));
        }
        components.push(entry);
    }
    let parabolic = job.handlebody.as_ref().map(|hb| parabolic_check(&rm, &hb.phat));
    Ok(json!({
        "name": aut.name,
        "images": aut.automorphism.images.iter().map(|w| w.display_surface()).collect::<Vec<_>>(),
        "matrix": report::matrix(&rm.matrix),
        "certifications": {
            "equivariant": certs.equivariant,
            "form_preserving": certs.form_preserving,
            "integral_on_lattice": certs.integral_on_lattice,
        },
        "preserves_kernel": parabolic,
        "bijectivity": if aut.built_in { "built_in" } else { "assumed" },
        "components": components,
    }))
}

pub fn run_act(cfg: &JobConfig) -> CliResult<Report> {
    cfg.validate()?;
    let input = load_hom(
        cfg.hom.as_deref().expect("validated"),
        cfg.group.as_deref(),
        cfg.genus,
        false,
    )?;
    let Domain::Surface { genus } = input.domain else {
        return Err(CliError::Parse("act needs a surface homomorphism".into()));
    };
    let pres = SurfacePresentation::new(genus)?;
    let auts = cfg
        .auts
        .iter()
        .map(|s| load_aut(s, &pres))
        .collect::<CliResult<Vec<_>>>()?;
    for aut in &auts {
        require_in_gamma(&input.hom, aut)?;
    }
    let job = CoverJob::build(input, cfg.cache().as_ref())?;
    let selected = cfg.component.indices(job.modules.len())?;
    let contexts = selected
        .iter()
        .map(|&i| {
            Ok(ModuleContext {
                index: i,
                endo: EndoContext::new(&job.modules[i], &job.hom, job.group())?,
                split: job.split(i)?,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut checks = Checks::default();
    let entries = auts
        .iter()
        .map(|a| act_entry(&job, a, &contexts, &mut checks))
        .collect::<CliResult<Vec<_>>>()?;

    let mut unipotent = Vec::new();
    if let Some(Handlebody { phat, setup: Some(setup), .. }) = &job.handlebody {
        for &i in &selected {
            let r = verify_unipotent_pair(&job.cx, &job.hom, setup, &job.modules[i], phat)?;
            checks.push(format!("unipotent pair on component {i}"), r.passed());
            let unit = &r.split.unit;
            unipotent.push(json!({
                "component": i,
                "passed": r.passed(),
                "tb1": report::algebra_matrix(&r.tb),
                "ta1_inverse": report::algebra_matrix(&r.ta_inv),
                "tb1_rational": scalar_matrix(&r.tb, unit).map_or(Value::Null, |q| report::matrix(&q)),
                "ta1_inverse_rational": scalar_matrix(&r.ta_inv, unit).map_or(Value::Null, |q| report::matrix(&q)),
            }));
        }
    }

    let mut body = Map::new();
    body.insert(
        "input".into(),
        json!({
            "group": job.input.group.echo,
            "hom": job.input.echo(),
            "automorphisms": cfg.auts,
            "components": selected,
        }),
    );
    body.insert("group".into(), report::group_summary(job.group()));
    body.insert("components".into(), component_table(&job.decomposition));
    body.insert("homology".into(), json!({ "dimension": job.hom.dimension() }));
    body.insert("automorphisms".into(), Value::Array(entries));
    if !unipotent.is_empty() {
        body.insert("unipotent_pair".into(), Value::Array(unipotent));
    }
    Ok(Report::new("act", body, &checks))
}

/// Dispatches on the configured command.
pub fn run(cfg: &JobConfig) -> CliResult<Report> {
    match cfg.command {
        Command::Decompose => run_decompose(cfg),
        Command::Cover => run_cover(cfg),
        Command::Act => run_act(cfg),
        Command::Demo => crate::demo::run_demo(cfg),
    }
}
