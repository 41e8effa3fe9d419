//! The full analysis pipeline for one (group, prime) pair.

use serde::{Deserialize, Serialize};

use super::load::LoadedGroup;
use crate::error::{Error, Result};
use crate::fusion::{
    abelian_type, EssentialInfo, FusionSystem, KappaBar, KappaInjCriteria, OutSource,
};
use crate::linking::{
    ker_mu_verdict, strictly_p_constrained, tameness_verdict, KerMuReport, TamenessVerdict,
};
use crate::permcore::{is_prime, normalizer};
use crate::plattice::{Extraspecial, DEFAULT_LATTICE_BOUND, TABLE_LIMIT};

/// Bumped whenever the report layout or any computed field changes meaning.
pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeOptions {
    /// Full subgroup enumeration only when `|S|` is at most this.
    pub max_lattice: u64,
    pub elementary_only: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            max_lattice: DEFAULT_LATTICE_BOUND,
            elementary_only: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Stage<T> {
    Done { value: T },
    Skipped { reason: String },
    Failed { message: String },
}

impl<T> Stage<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Stage::Done { value } => Some(value),
            _ => None,
        }
    }

    fn from_result(r: Result<T>) -> Stage<T> {
        match r {
            Ok(value) => Stage::Done { value },
            Err(Error::Bound(m)) => Stage::Skipped {
                reason: format!("bound: {}", m),
            },
            Err(Error::IndexBound { index, bound }) => Stage::Skipped {
                reason: format!("bound: coset index {} above {}", index, bound),
            },
            Err(e) => Stage::Failed { message: e.to_string() },
        }
    }

    fn skipped(reason: impl Into<String>) -> Stage<T> {
        Stage::Skipped { reason: reason.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupShape {
    pub order: u64,
    pub description: String,
    pub exponent: u64,
    pub rank: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowSummary {
    pub order: u64,
    pub description: String,
    pub abelian: bool,
    pub extraspecial: Extraspecial,
    pub center: SubgroupShape,
    pub second_center: SubgroupShape,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialRow {
    pub order: u64,
    pub index_in_s: u64,
    pub class_size: u64,
    pub out_g_order: u64,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZHatRow {
    pub order: u64,
    pub rank: u32,
    pub class_size: u64,
    pub centralizer_in_s_order: u64,
    pub aut_g_order: u64,
    pub is_second_center: bool,
    pub abelian_type: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutFSummary {
    pub aut_s_order: u64,
    pub aut_f_order: u64,
    pub aut_g_s_order: u64,
    pub out_f_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ControlSummary {
    pub normalizer_order: u64,
    pub normalizer_controls_fusion: bool,
    pub normalizer_strictly_constrained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub version: u32,
    pub library_version: String,
    pub group: String,
    pub prime: u64,
    pub group_order: String,
    pub options: AnalyzeOptions,
    pub sylow: SylowSummary,
    pub out_g_s_order: u64,
    pub essential_classes: Stage<Vec<EssentialRow>>,
    pub z_hat: Stage<Vec<ZHatRow>>,
    pub aut_f: Stage<OutFSummary>,
    pub control: Stage<ControlSummary>,
    pub constrained: Stage<bool>,
    pub kappa_bar: Stage<KappaBar>,
    pub kappa_injectivity: Stage<KappaInjCriteria>,
    pub ker_mu: Stage<KerMuReport>,
    pub tameness: TamenessVerdict,
    pub warnings: Vec<String>,
}

fn shape(f: &FusionSystem, b: &crate::plattice::Bits) -> SubgroupShape {
    let t = f.table();
    SubgroupShape {
        order: b.count() as u64,
        description: t.describe(b),
        exponent: t.exponent(b),
        rank: t.is_abelian(b).then(|| t.abelian_invariants(b).len() as u32),
    }
}

pub fn analyze(lg: &LoadedGroup, p: u64, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let g = &lg.group;
    if g.p_part(p) == 1 {
        return Err(Error::PrimeDoesNotDivide { p });
    }
    if g.p_part(p) > TABLE_LIMIT {
        return Err(Error::Bound(format!("|S| = {} above {}", g.p_part(p), TABLE_LIMIT)));
    }
    let mut warnings = Vec::new();
    let mut f = FusionSystem::new(g, p)?;
    f.set_lattice_bound(opts.max_lattice);
    let t = f.table();
    let full = t.full();
    let sylow = SylowSummary {
        order: t.size() as u64,
        description: t.describe(&full),
        abelian: t.is_abelian(&full),
        extraspecial: t.extraspecial(),
        center: shape(&f, &t.center()),
        second_center: shape(&f, &t.second_center()),
    };
    let out_g_s_order = f.out_g(&full)?.order_u64();
    if p != 2 {
        warnings.push("essential and Ẑ criteria are stated for p = 2; computed with the same definitions".into());
    }
    let lattice = if opts.elementary_only {
        Err("elementary-only mode".to_string())
    } else if t.size() as u64 > opts.max_lattice {
        Err(format!("bound: |S| = {} above lattice bound {}", t.size(), opts.max_lattice))
    } else {
        Ok(())
    };

    let z_hat_raw = f.z_hat();
    let second = t.second_center();
    let z_hat = Stage::from_result(z_hat_raw.as_ref().map_err(Clone::clone).map(|rows| {
        rows.iter()
            .map(|z| {
                let bits = z.bits.as_ref().expect("bits kept");
                let elems: Vec<_> = bits.iter().map(|x| t.element(x).clone()).collect();
                let ty = abelian_type(g, &elems, &lg.labeling);
                if let Err(e) = &ty {
                    warnings.push(format!("Ẑ member of order {}: {}", z.order, e));
                }
                ZHatRow {
                    order: z.order,
                    rank: z.rank,
                    class_size: z.class_size,
                    centralizer_in_s_order: z.centralizer_in_s_order,
                    aut_g_order: z.aut_g_order,
                    is_second_center: *bits == second,
                    abelian_type: ty.ok(),
                }
            })
            .collect::<Vec<_>>()
    }));
    let ker_mu = match &z_hat_raw {
        Ok(rows) => Stage::from_result(ker_mu_verdict(&f, rows)),
        Err(e) => Stage::Failed { message: e.to_string() },
    };

    let (essential_classes, aut_f, control, constrained, kappa_bar, kappa_injectivity) = match lattice {
        Err(reason) => (
            Stage::skipped(reason.clone()),
            Stage::skipped(reason.clone()),
            Stage::skipped(reason.clone()),
            Stage::skipped(reason.clone()),
            Stage::skipped(reason.clone()),
            Stage::skipped(reason),
        ),
        Ok(()) => {
            let ess = Stage::from_result(f.essential_classes().map(|v| v.iter().map(essential_row).collect()));
            let control = Stage::from_result((|| {
                let n = normalizer(g, f.s());
                Ok(ControlSummary {
                    normalizer_order: n.order_u64(),
                    normalizer_controls_fusion: f.controls_fusion(&n)?,
                    normalizer_strictly_constrained: strictly_p_constrained(&n, p)?,
                })
            })());
            let constrained = Stage::from_result(f.is_constrained());
            let (aut_f, kappa, inj) = out_stages(lg, &f, p, opts)?;
            (ess, aut_f, control, constrained, kappa, inj)
        }
    };
    if let Stage::Done { value } = &ker_mu {
        warnings.extend(value.notes.iter().cloned());
    }
    let tameness = tameness_verdict(p, kappa_bar.value(), ker_mu.value());
    Ok(AnalysisReport {
        version: REPORT_VERSION,
        library_version: env!("CARGO_PKG_VERSION").into(),
        group: lg.entry.name.clone(),
        prime: p,
        group_order: g.order().to_string(),
        options: *opts,
        sylow,
        out_g_s_order,
        essential_classes,
        z_hat,
        aut_f,
        control,
        constrained,
        kappa_bar,
        kappa_injectivity,
        ker_mu,
        tameness,
        warnings,
    })
}

fn essential_row(e: &EssentialInfo) -> EssentialRow {
    EssentialRow {
        order: e.order,
        index_in_s: e.index_in_s,
        class_size: e.class_size,
        out_g_order: e.out_g_order,
        description: e.description.clone(),
    }
}

type OutStages = (Stage<OutFSummary>, Stage<KappaBar>, Stage<KappaInjCriteria>);

/// `Aut(F)`, `κ̄` and the injectivity criteria. With an overgroup at another
/// degree these run on the embedded copy of `G`.
fn out_stages(lg: &LoadedGroup, f: &FusionSystem, p: u64, opts: &AnalyzeOptions) -> Result<OutStages> {
    let embedded;
    let fk: &FusionSystem = match &lg.out {
        Some(o) if o.base.degree() != lg.group.degree() => {
            let mut e = FusionSystem::new(&o.base, p)?;
            e.set_lattice_bound(opts.max_lattice);
            embedded = e;
            &embedded
        }
        _ => f,
    };
    let autf = match fk.aut_f() {
        Ok(a) => a,
        Err(e) => {
            let s = Stage::from_result(Err::<OutFSummary, _>(e.clone()));
            let k = Stage::from_result(Err::<KappaBar, _>(e.clone()));
            let i = Stage::from_result(Err::<KappaInjCriteria, _>(e));
            return Ok((s, k, i));
        }
    };
    let summary = OutFSummary {
        aut_s_order: autf.aut_s_order,
        aut_f_order: autf.aut_f_order,
        aut_g_s_order: autf.aut_g_s_order,
        out_f_order: autf.out_f_order,
    };
    let source = match &lg.out {
        None => None,
        Some(o) => match &o.overgroup {
            Some(h) if o.out_order > 1 => Some(OutSource::Overgroup(h.clone())),
            Some(_) => Some(OutSource::Trivial),
            None => None,
        },
    };
    let (kappa, inj) = match source {
        None => (
            Stage::skipped("no outer automorphism data"),
            Stage::skipped("no outer automorphism data"),
        ),
        Some(src) => (
            Stage::from_result(fk.kappa_bar(&src, &autf)),
            Stage::from_result(fk.kappa_inj_criteria(&src)),
        ),
    };
    Ok((Stage::Done { value: summary }, kappa, inj))
}

impl AnalysisReport {
    /// Plain-text rendering for the terminal.
    pub fn render_text(&self) -> String {
        use std::fmt::Write as _;
        let mut s = String::new();
        let _ = writeln!(s, "{} at p = {} (|G| = {})", self.group, self.prime, self.group_order);
        let _ = writeln!(s, "S: order {}, {}", self.sylow.order, self.sylow.description);
        let _ = writeln!(s, "  Z(S): {}   Z2(S): {}", self.sylow.center.description, self.sylow.second_center.description);
        if let Extraspecial::Yes { p, n, exponent, sign } = &self.sylow.extraspecial {
            let _ = writeln!(
                s,
                "  extraspecial {}^(1+{}){}, exponent {}",
                p,
                2 * n,
                sign.map(String::from).unwrap_or_default(),
                exponent
            );
        }
        let _ = writeln!(s, "|Out_G(S)| = {}", self.out_g_s_order);
        match &self.essential_classes {
            Stage::Done { value } => {
                let _ = writeln!(s, "essential classes: {}", value.len());
                for e in value {
                    let _ = writeln!(
                        s,
                        "  order {:>5}  index {:>3}  |Out_G| {:>5}  {}",
                        e.order, e.index_in_s, e.out_g_order, e.description
                    );
                }
            }
            other => {
                let _ = writeln!(s, "essential classes: {}", stage_note(other));
            }
        }
        match &self.z_hat {
            Stage::Done { value } => {
                let _ = writeln!(s, "Ẑ(F): {} classes", value.len());
                for z in value {
                    let _ = writeln!(
                        s,
                        "  rank {}  |C_S(W)| {:>5}  |Aut_G(W)| {:>5}  type {}{}",
                        z.rank,
                        z.centralizer_in_s_order,
                        z.aut_g_order,
                        z.abelian_type.as_deref().unwrap_or("?"),
                        if z.is_second_center { "  (= Z2(S))" } else { "" }
                    );
                }
            }
            other => {
                let _ = writeln!(s, "Ẑ(F): {}", stage_note(other));
            }
        }
        match &self.aut_f {
            Stage::Done { value } => {
                let _ = writeln!(
                    s,
                    "|Aut(S)| = {}  |Aut_G(S)| = {}  |Aut(F)| = {}  |Out(F)| = {}",
                    value.aut_s_order, value.aut_g_s_order, value.aut_f_order, value.out_f_order
                );
            }
            other => {
                let _ = writeln!(s, "Out(F): {}", stage_note(other));
            }
        }
        if let Stage::Done { value } = &self.control {
            let _ = writeln!(
                s,
                "N_G(S) of order {}: controls fusion {}, strictly constrained {}",
                value.normalizer_order, value.normalizer_controls_fusion, value.normalizer_strictly_constrained
            );
        }
        if let Stage::Done { value } = &self.constrained {
            let _ = writeln!(s, "constrained: {}", value);
        }
        match &self.kappa_bar {
            Stage::Done { value } => {
                let _ = writeln!(
                    s,
                    "κ̄: |Out(G)| = {}  image {}  kernel {}  {:?}",
                    value.out_g_order, value.image_order, value.kernel_order, value.verdict
                );
            }
            other => {
                let _ = writeln!(s, "κ̄: {}", stage_note(other));
            }
        }
        match &self.ker_mu {
            Stage::Done { value } => {
                let _ = writeln!(s, "Ker(μ): {:?}", value.verdict);
            }
            other => {
                let _ = writeln!(s, "Ker(μ): {}", stage_note(other));
            }
        }
        let _ = writeln!(s, "tameness: {}", self.tameness.summary);
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {}", w);
        }
        s
    }
}

fn stage_note<T>(s: &Stage<T>) -> String {
    match s {
        Stage::Done { .. } => "done".into(),
        Stage::Skipped { reason } => format!("skipped ({})", reason),
        Stage::Failed { message } => format!("failed: {}", message),
    }
}
