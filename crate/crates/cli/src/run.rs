//! Dispatch of requests to the core and assembly of the report.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use multimult_core::hilbert::mixed_from_polynomial;
use multimult_core::koszul::{compare_methods, verify_chi_recursion};
use multimult_core::multiplicity::{
    samuel_vs_symbol, verify_base_case, verify_cor_filter_regular, verify_cor_height, verify_cor_sop,
    verify_cor_transition, verify_mixed_recursion, verify_rees_mprimary,
};
use multimult_core::reduction::{
    is_filter_regular, is_multiplicity_system, is_rees_superficial, is_system_of_parameters, search_joint_reduction,
};
use multimult_core::{
    interpolate_with_store, mult_symbol, verify_joint_reduction, BandPolicy, ContainmentCertificate, Dimension,
    Interpolation, JointReductionCandidate, MixedType, Monomial, PoolPolicy, ReesDatum, StabilizationPolicy,
    TableStore, Which,
};
use serde_json::{json, Value};

use crate::instance::{Instance, Request, RequestKind};
use crate::report::{rational, Report, RequestResult, VerdictRecord};

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Doublings of the interpolation base offset.
    pub window_cap: Option<u32>,
    /// Doublings of the strand band.
    pub band_cap: Option<u32>,
    pub jobs: usize,
}

impl RunOptions {
    pub fn stabilization(&self) -> StabilizationPolicy {
        let mut p = StabilizationPolicy::default();
        if let Some(c) = self.window_cap {
            p.max_doublings = c;
        }
        p
    }

    pub fn band(&self) -> BandPolicy {
        let mut b = BandPolicy::default();
        if let Some(c) = self.band_cap {
            b.max_doublings = c;
        }
        b
    }
}

struct Ctx<'a> {
    inst: &'a Instance,
    policy: StabilizationPolicy,
    band: BandPolicy,
    store: Option<&'a (dyn TableStore + Sync)>,
}

type Outcome = Result<(Value, Vec<VerdictRecord>), String>;

impl Ctx<'_> {
    fn names(&self) -> &[String] {
        self.inst.names()
    }

    fn mono(&self, u: &Monomial) -> String {
        u.render(self.names())
    }

    fn cand(&self, name: &str) -> &JointReductionCandidate {
        self.inst.candidate(name).expect("validated by the parser")
    }

    fn interp(&self, which: Which) -> Result<Interpolation, String> {
        let store = self.store.map(|s| s as &dyn TableStore);
        interpolate_with_store(&self.inst.family, which, &self.policy, store).map_err(|e| e.to_string())
    }

    fn certificate(&self, c: &ContainmentCertificate) -> Value {
        json!({
            "holds": c.holds(),
            "window_base": c.window_base,
            "window_points": c.window.len(),
            "witness": c.witness.as_ref().map(|w| json!({
                "degree": w.degree.axes(),
                "monomial": self.mono(&w.monomial),
            })),
        })
    }

    fn candidate_json(&self, cand: &JointReductionCandidate) -> Value {
        json!({
            "type": cand.ty().to_string(),
            "elements": cand.elements().iter().map(|(u, s)| format!("{}@{}", self.mono(u), self.source_name(*s))).collect::<Vec<_>>(),
        })
    }

    fn source_name(&self, s: multimult_core::Source) -> String {
        match s {
            multimult_core::Source::J => "J".to_string(),
            multimult_core::Source::I(i) => self.inst.ideal_names[i].clone(),
        }
    }

    fn run(&self, req: &Request) -> Outcome {
        match req.kind {
            RequestKind::Hilbert => self.hilbert(req),
            RequestKind::Mixed => self.mixed(req.ty().expect("required")),
            RequestKind::VerifyJr => self.verify_jr(req.candidate().expect("required")),
            RequestKind::ElementProps => self.element_props(req),
            RequestKind::MultSymbol => self.mult_symbol(req),
            RequestKind::Chi => self.chi(req.candidate().expect("required")),
            RequestKind::VerifyTheorem => {
                self.verify_theorem(req.candidate().expect("required"), req.ideal().expect("required"))
            }
            RequestKind::VerifyCorollaries => self.verify_corollaries(req.candidate().expect("required"), req.ideal()),
            RequestKind::SearchJr => self.search_jr(req),
        }
    }

    fn interp_json(interp: &Interpolation) -> Value {
        json!({
            "which": interp.which.to_string(),
            "total_degree": interp.polynomial.total_degree(),
            "degree_bound": interp.degree_bound,
            "coefficients": interp.polynomial.coeffs().iter()
                .map(|(idx, c)| json!({"index": idx, "value": rational(c)}))
                .collect::<Vec<_>>(),
            "window": interp.window.as_ref().map(|w| json!({
                "base": w.base.axes(),
                "extent": w.extent,
                "values": w.values,
            })),
            "band_points": interp.band.len(),
            "attempts": interp.attempts,
        })
    }

    fn hilbert(&self, req: &Request) -> Outcome {
        let whiches = match req.which() {
            Some(w) => vec![w],
            None => vec![Which::P, Which::F],
        };
        let mut out = Vec::new();
        for w in whiches {
            out.push(Self::interp_json(&self.interp(w)?));
        }
        Ok((json!({ "functions": out }), Vec::new()))
    }

    fn mixed(&self, ty: &MixedType) -> Outcome {
        let interp = self.interp(Which::P)?;
        let (value, defined) = mixed_from_polynomial(&interp.polynomial, ty);
        Ok((
            json!({
                "type": ty.to_string(),
                "value": rational(&value),
                "defined": defined,
                "total_degree": interp.polynomial.total_degree(),
                "window_base": interp.base().map(|b| b.axes()),
                "window_extent": interp.window.as_ref().map(|w| w.extent.clone()),
                "band_points": interp.band.len(),
                "attempts": interp.attempts,
            }),
            Vec::new(),
        ))
    }

    fn verify_jr(&self, name: &str) -> Outcome {
        let cand = self.cand(name);
        let cert = verify_joint_reduction(&self.inst.family, cand, &self.policy);
        Ok((
            json!({
                "candidate": name,
                "holds": cert.holds(),
                "elements": self.candidate_json(cand),
                "certificate": self.certificate(&cert),
            }),
            Vec::new(),
        ))
    }

    fn element_props(&self, req: &Request) -> Outcome {
        let u = req.monomials("element").expect("required")[0];
        let i = req.ideal().expect("required");
        let fam = &self.inst.family;
        let filter_regular = is_filter_regular(fam, &u);
        let superficial = is_rees_superficial(fam, &u, i, &self.policy).map_err(|e| e.to_string())?;
        Ok((
            json!({
                "element": self.mono(&u),
                "ideal": self.inst.ideal_names[i],
                "filter_regular": filter_regular,
                "rees_superficial": self.certificate(&superficial),
                "weak_fc": filter_regular && superficial.holds(),
            }),
            Vec::new(),
        ))
    }

    fn mult_symbol(&self, req: &Request) -> Outcome {
        let y: Vec<Monomial> = match (req.candidate(), req.monomials("elements")) {
            (Some(c), _) => self.cand(c).monomials(),
            (None, Some(y)) => y.to_vec(),
            _ => unreachable!("validated by the parser"),
        };
        let m = self.inst.family.module();
        let sop = is_system_of_parameters(m, &y);
        let msys = is_multiplicity_system(m, &y);
        let rendered: Vec<String> = y.iter().map(|u| self.mono(u)).collect();
        if !msys {
            return Err(format!(
                "({}) is not a multiplicity system of the module",
                rendered.join(", ")
            ));
        }
        let mut verdicts = Vec::new();
        let (symbol, samuel) = if sop {
            let (s, h) = samuel_vs_symbol(m, &y, &self.policy).map_err(|e| e.to_string())?;
            (s, Some(h))
        } else {
            (mult_symbol(m, &y).map_err(|e| e.to_string())?, None)
        };
        verdicts.push(VerdictRecord::equality(
            "symbol-equals-samuel",
            Some(symbol),
            samuel,
            ("multiplicity symbol recursion", "Hilbert-Samuel leading coefficient"),
            vec![("elements form a system of parameters".to_string(), sop)],
        ));
        verdicts.push(VerdictRecord::equality(
            "symbol-vanishes-off-sop",
            Some(symbol),
            Some(0),
            ("multiplicity symbol recursion", "zero"),
            vec![("more elements than the dimension".to_string(), !sop)],
        ));
        Ok((
            json!({
                "elements": rendered,
                "value": symbol,
                "system_of_parameters": sop,
                "hilbert_samuel": samuel,
            }),
            verdicts,
        ))
    }

    fn chi(&self, name: &str) -> Outcome {
        let fam = &self.inst.family;
        let cand = self.cand(name);
        let datum = ReesDatum::new(fam.clone(), cand.clone(), &self.policy);
        let cmp = compare_methods(&datum, &self.policy, &self.band).map_err(|e| e.to_string())?;
        let interp = self.interp(Which::P)?;
        let (mixed, _) = mixed_from_polynomial(&interp.polynomial, cand.ty());
        let mixed = multimult_core::koszul::value_as_i64(&mixed);
        let top_degree = matches!(fam.saturated_dim(), Dimension::Finite(q) if q == cand.ty().total() + 1);
        let mut verdicts = vec![VerdictRecord::equality(
            "chi-difference-equals-mixed",
            Some(cmp.difference.value),
            mixed,
            (
                "DIFFERENCE: constant of the difference table",
                "interpolated mixed multiplicity",
            ),
            vec![
                (
                    "candidate is a joint reduction (certified on window)".to_string(),
                    datum.certified(),
                ),
                ("type has total degree dim - 1".to_string(), top_degree),
            ],
        )];
        verdicts.push(VerdictRecord::equality(
            "chi-direct-equals-difference",
            Some(cmp.direct.value),
            Some(cmp.difference.value),
            (
                "DIRECT: strand homology summed over the band",
                "DIFFERENCE: constant of the difference table",
            ),
            vec![
                (
                    "candidate is a joint reduction (certified on window)".to_string(),
                    datum.certified(),
                ),
                ("strand band certified".to_string(), cmp.direct.certified),
            ],
        ));
        let value = |v: &multimult_core::EulerValue| {
            json!({
                "method": v.method.to_string(),
                "value": v.value,
                "certified": v.certified,
                "provenance": v.provenance,
            })
        };
        Ok((
            json!({
                "candidate": name,
                "type": cand.ty().to_string(),
                "joint_reduction": datum.certified(),
                "direct": value(&cmp.direct),
                "difference": value(&cmp.difference),
                "agree": cmp.agree,
                "evaluated_at": self.policy.initial_base_for(fam),
            }),
            verdicts,
        ))
    }

    fn verify_theorem(&self, name: &str, i: usize) -> Outcome {
        let fam = &self.inst.family;
        let cand = self.cand(name);
        let mixed = verify_mixed_recursion(fam, cand, i, &self.policy);
        let datum = ReesDatum::new(fam.clone(), cand.clone(), &self.policy);
        let chi = verify_chi_recursion(&datum, i, &self.policy);
        let verdicts: Vec<VerdictRecord> = [&mixed, &chi].into_iter().map(VerdictRecord::from).collect();
        Ok((
            json!({
                "candidate": name,
                "ideal": self.inst.ideal_names[i],
                "instance": mixed.instance,
            }),
            verdicts,
        ))
    }

    fn verify_corollaries(&self, name: &str, ideal: Option<usize>) -> Outcome {
        let fam = &self.inst.family;
        let cand = self.cand(name);
        let mut reports = Vec::new();
        let ideals: Vec<usize> = match ideal {
            Some(i) => vec![i],
            None => (0..fam.d()).filter(|&i| cand.ty().k[i] > 0).collect(),
        };
        for i in ideals {
            reports.extend(verify_cor_filter_regular(fam, cand, i, &self.policy));
        }
        reports.extend(verify_cor_transition(fam, cand, &self.policy));
        reports.extend(verify_cor_sop(fam, cand, &self.policy));
        reports.extend(verify_cor_height(fam, cand, &self.policy));
        reports.push(verify_rees_mprimary(fam, cand, &self.policy));
        reports.push(verify_base_case(fam, cand, &self.policy));
        let verdicts: Vec<VerdictRecord> = reports.iter().map(VerdictRecord::from).collect();
        Ok((json!({ "candidate": name, "checked": verdicts.len() }), verdicts))
    }

    fn search_jr(&self, req: &Request) -> Outcome {
        let ty = req.ty().expect("required");
        let mut pool = PoolPolicy::default();
        if let Some(b) = req.count("budget") {
            pool.budget = b;
        }
        if let Some(d) = req.count("max-degree") {
            pool.max_degree = d as u32;
        }
        let outcome = search_joint_reduction(&self.inst.family, ty, &pool, &self.policy).map_err(|e| e.to_string())?;
        Ok((
            json!({
                "type": ty.to_string(),
                "found": outcome.found.as_ref().map(|c| self.candidate_json(c)),
                "certificate": outcome.certificate.as_ref().map(|c| self.certificate(c)),
                "tried": outcome.tried,
                "exhausted": outcome.exhausted,
                "budget": pool.budget,
                "max_degree": pool.max_degree,
            }),
            Vec::new(),
        ))
    }
}

/// Run every request of `inst`, `opts.jobs` at a time; results keep request order.
pub fn run_instance(inst: &Instance, opts: &RunOptions, store: Option<&(dyn TableStore + Sync)>) -> Report {
    let start = Instant::now();
    let ctx = Ctx {
        inst,
        policy: opts.stabilization(),
        band: opts.band(),
        store,
    };
    let n = inst.requests.len();
    let slots: Mutex<Vec<Option<RequestResult>>> = Mutex::new(vec![None; n]);
    let next = AtomicUsize::new(0);
    let work = || loop {
        let idx = next.fetch_add(1, Ordering::Relaxed);
        let Some(req) = inst.requests.get(idx) else { break };
        log::debug!("request {idx}: {}", req.text);
        let (status, result, verdicts) = match ctx.run(req) {
            Ok((v, verdicts)) => ("ok", v, verdicts),
            Err(e) => ("error", json!({ "error": e }), Vec::new()),
        };
        let rr = RequestResult {
            index: idx,
            line: req.line,
            request: req.text.clone(),
            status,
            result,
            verdicts,
        };
        slots.lock().unwrap_or_else(|p| p.into_inner())[idx] = Some(rr);
    };
    let jobs = opts.jobs.clamp(1, n.max(1));
    if jobs == 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..jobs {
                s.spawn(work);
            }
        });
    }
    let results = slots
        .into_inner()
        .unwrap_or_else(|p| p.into_inner())
        .into_iter()
        .map(|r| r.expect("every request ran"))
        .collect();
    let policy = json!({
        "stabilization": ctx.policy,
        "band": ctx.band,
    });
    Report::new(inst.echo.clone(), policy, results, start.elapsed().as_millis())
}
