//! Seeded randomized checks of the representation on products of twists.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use coverhom_core::exactalg::QMatrix;
use coverhom_core::rho::{
    adjoint, in_gamma, induced_action, norm_one_check, project_action, stabilizer_twists, EndoContext, EndoElement,
};
use coverhom_core::surface::{builtin_twist, compose, SurfaceAutomorphism, SurfacePresentation, Word};

use crate::error::{CliError, CliResult};
use crate::pipeline::CoverJob;

pub const PROPERTIES: [&str; 11] = [
    "in_gamma",
    "equivariance",
    "form_preservation",
    "integrality",
    "functoriality",
    "component_functoriality",
    "adjoint_identity",
    "nrd_multiplicativity",
    "trd_additivity",
    "nrd_norm_one",
    "inner_automorphism",
];

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub samples: usize,
    pub seed: u64,
    /// property → (passed, total)
    pub tallies: BTreeMap<&'static str, (usize, usize)>,
    pub first_failure: Option<String>,
}

impl SweepReport {
    fn record(&mut self, property: &'static str, ok: bool, sample: &str) {
        let t = self.tallies.entry(property).or_default();
        t.1 += 1;
        if ok {
            t.0 += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(format!("{property} failed for {sample}"));
        }
    }

    pub fn passed(&self) -> bool {
        PROPERTIES
            .iter()
            .all(|p| self.tallies.get(p).is_some_and(|&(ok, total)| total > 0 && ok == total))
    }

    pub fn to_json(&self) -> Value {
        let tallies: serde_json::Map<String, Value> = self
            .tallies
            .iter()
            .map(|(k, (ok, total))| (k.to_string(), json!({ "passed": ok, "total": total })))
            .collect();
        json!({
            "samples": self.samples,
            "seed": self.seed,
            "properties": tallies,
            "first_failure": self.first_failure,
            "passed": self.passed(),
        })
    }
}

/// Built-in twists lying in Γ (least powers) and their inverses.
pub fn twist_pool(job: &CoverJob) -> CliResult<Vec<(String, SurfaceAutomorphism)>> {
    let genus = job
        .genus()
        .ok_or_else(|| CliError::Parse("sweeps need a surface cover".into()))?;
    let pres = SurfacePresentation::new(genus)?;
    let mut pool = stabilizer_twists(&job.input.hom)?;
    let inverses = pool
        .iter()
        .map(|(name, _)| {
            let inv = match name.split_once('^') {
                Some((c, k)) => format!("{c}^-{k}"),
                None => format!("{name}^-1"),
            };
            Ok((inv.clone(), builtin_twist(&pres, &inv)?))
        })
        .collect::<CliResult<Vec<_>>>()?;
    pool.extend(inverses);
    Ok(pool)
}

fn random_product(
    pres: &SurfacePresentation,
    pool: &[(String, SurfaceAutomorphism)],
    rng: &mut ChaCha8Rng,
) -> CliResult<(String, SurfaceAutomorphism)> {
    let len = rng.gen_range(1..=3);
    let mut names = Vec::with_capacity(len);
    let mut f = SurfaceAutomorphism::identity(pres);
    for _ in 0..len {
        let (name, t) = &pool[rng.gen_range(0..pool.len())];
        names.push(name.as_str());
        f = compose(pres, &f, t)?;
    }
    Ok((names.join("*"), f))
}

/// Runs `samples` random pairs (f, g) of twist products through every exact
/// identity the representation must satisfy.
pub fn sweep(job: &CoverJob, samples: usize, seed: u64) -> CliResult<SweepReport> {
    let genus = job
        .genus()
        .ok_or_else(|| CliError::Parse("sweeps need a surface cover".into()))?;
    let pres = SurfacePresentation::new(genus)?;
    let pool = twist_pool(job)?;
    let p = &job.input.hom;
    let g = job.group();
    let contexts = job
        .modules
        .iter()
        .map(|m| EndoContext::new(m, &job.hom, g))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SweepReport {
        samples,
        seed,
        tallies: BTreeMap::new(),
        first_failure: None,
    };
    for s in 0..samples {
        let (fname, f) = random_product(&pres, &pool, &mut rng)?;
        let (gname, gg) = random_product(&pres, &pool, &mut rng)?;
        let sample = format!("sample {s} (f = {fname}, g = {gname})");
        let fg = compose(&pres, &f, &gg)?;
        out.record("in_gamma", [&f, &gg, &fg].iter().all(|x| in_gamma(p, x)), &sample);
        let rf = induced_action(&f, &job.cx, &job.hom)?;
        let rg = induced_action(&gg, &job.cx, &job.hom)?;
        let rfg = induced_action(&fg, &job.cx, &job.hom)?;
        let rs = [&rf, &rg, &rfg];
        out.record("equivariance", rs.iter().all(|r| r.certifications.equivariant), &sample);
        out.record("form_preservation", rs.iter().all(|r| r.certifications.form_preserving), &sample);
        out.record("integrality", rs.iter().all(|r| r.certifications.integral_on_lattice), &sample);
        out.record("functoriality", rfg.matrix == rf.matrix.mul(&rg.matrix), &sample);

        let (mut functorial, mut adjoint_ok, mut mult, mut additive, mut norm_ok) = (true, true, true, true, true);
        for (m, ctx) in job.modules.iter().zip(&contexts) {
            let pf = project_action(&rf, m)?;
            let pg = project_action(&rg, m)?;
            let pfg = project_action(&rfg, m)?;
            functorial &= pfg == pf.mul(&pg);
            let gram = m
                .sp_gram
                .as_ref()
                .ok_or_else(|| CliError::Parse("sweeps need a surface cover".into()))?;
            let id = QMatrix::identity(m.dimension());
            for x in [&pf, &pg, &pfg] {
                adjoint_ok &= adjoint(x, gram)?.mul(x) == id;
            }
            let ef = EndoElement::new(ctx, pf)?;
            let eg = EndoElement::new(ctx, pg)?;
            let efg = EndoElement::new(ctx, pfg)?;
            let nf = ef.reduced_norm(ctx)?;
            let ng = eg.reduced_norm(ctx)?;
            mult &= efg.reduced_norm(ctx)? == &nf * &ng;
            let sum = EndoElement::new(ctx, ef.matrix.add(&eg.matrix))?;
            additive &= sum.reduced_trace(ctx)? == &ef.reduced_trace(ctx)? + &eg.reduced_trace(ctx)?;
            norm_ok &= norm_one_check(ctx, &[ef, eg, efg])?.iter().all(|c| c.passed());
        }
        out.record("component_functoriality", functorial, &sample);
        out.record("adjoint_identity", adjoint_ok, &sample);
        out.record("nrd_multiplicativity", mult, &sample);
        out.record("trd_additivity", additive, &sample);
        out.record("nrd_norm_one", norm_ok, &sample);

        let rank = 2 * genus as i32;
        let len = rng.gen_range(0..6);
        let t = Word::new(
            (0..len)
                .map(|_| {
                    let l = rng.gen_range(1..=rank);
                    if rng.gen_bool(0.5) {
                        l
                    } else {
                        -l
                    }
                })
                .collect(),
        );
        let inner = SurfaceAutomorphism::inner(&pres, &t)?;
        let pt = p.eval(&t);
        let central = g.is_central(pt);
        let mut ok = in_gamma(p, &inner) == central;
        if ok && central {
            ok = induced_action(&inner, &job.cx, &job.hom)?.matrix == *job.hom.h_action(pt);
        }
        out.record("inner_automorphism", ok, &format!("{sample}, t = {}", t.display_surface()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use coverhom_core::fixtures::surface_fixtures;

    #[test]
    fn double_cover_sweep_passes_and_is_reproducible() {
        let f = &surface_fixtures()[0];
        let job = CoverJob::from_surface_fixture(f, None).unwrap();
        let a = sweep(&job, 4, 7).unwrap();
        assert!(a.passed(), "{:?}", a.first_failure);
        let b = sweep(&job, 4, 7).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
}
