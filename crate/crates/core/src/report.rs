//! Per-knot reports assembling every module's output, with a route tag on
//! each numeric claim.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{
    component_count, genus_x, smoothness_certificate, ComponentCount, GenusReport, GeometryError, SmoothnessCertificate,
};
use crate::knotprops::{
    alexander, classify, commensurability_certificate, fibered_by_list, fourplat_sequence, is_fibered, knot_id,
    trace_field_degree_formula, trace_field_report, two_bridge_params, CommensurabilityCertificate, FourPlat,
    KnotClass, KnotError, KnotId, TraceFieldReport, TwoBridgeForm,
};
use crate::models::{c_model, d_model, d_split, expected_bidegree, ModelError, ModelState};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("routes disagree: {0}")]
    Disagreement(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Route {
    #[serde(rename = "formula")]
    Formula,
    #[serde(rename = "oracle")]
    Oracle,
    #[serde(rename = "both-agree")]
    BothAgree,
}

#[derive(Clone, Debug, Serialize)]
pub struct Routed<T> {
    pub value: T,
    pub route: Route,
}

fn both<T>(value: T) -> Routed<T> {
    Routed { value, route: Route::BothAgree }
}

fn oracle<T>(value: T) -> Routed<T> {
    Routed { value, route: Route::Oracle }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelsSection {
    pub c_equation: String,
    pub d_equation: String,
    pub d_state: ModelState,
    pub bidegree: Option<Routed<(usize, usize)>>,
    pub d0_equation: Option<String>,
    pub d1_equation: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SmoothnessSummary {
    pub smooth: bool,
    pub target: String,
    pub affine_singular_points: usize,
    pub infinity_transversal: bool,
    pub union_singular_points: Option<usize>,
    pub certificate: SmoothnessCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenusSection {
    pub y: Vec<Routed<i64>>,
    pub x: Vec<Routed<i64>>,
    pub odd_points: Vec<Routed<i64>>,
    pub details: GenusReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct KnotReport {
    pub schema: u32,
    pub input: (i64, i64),
    pub id: Option<KnotId>,
    pub normalization: Vec<String>,
    pub classification: KnotClass,
    pub two_bridge: Option<TwoBridgeForm>,
    pub fourplat: Option<FourPlat>,
    pub models: Option<ModelsSection>,
    pub smoothness: Option<SmoothnessSummary>,
    pub components: Option<Routed<ComponentCount>>,
    pub genus: Option<GenusSection>,
    pub alexander: Option<String>,
    pub fibered: Option<Routed<bool>>,
    pub trace_field: Option<TraceFieldReport>,
    pub trace_field_degree: Option<Routed<i64>>,
    pub commensurability: Option<CommensurabilityCertificate>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, f64>>,
}

struct Clock {
    on: bool,
    last: Instant,
    laps: BTreeMap<String, f64>,
}

impl Clock {
    fn new(on: bool) -> Self {
        Clock { on, last: Instant::now(), laps: BTreeMap::new() }
    }

    fn lap(&mut self, name: &str) {
        if self.on {
            let now = Instant::now();
            self.laps.insert(name.to_string(), (now - self.last).as_secs_f64() * 1e3);
            self.last = now;
        }
    }
}

/// Full pipeline for J(k,l). Degenerate knots give a partial report; an
/// error means an internal check failed.
pub fn analyze(k: i64, l: i64, timing: bool) -> Result<KnotReport, ReportError> {
    let mut clock = Clock::new(timing);
    let classification = classify(k, l);
    let mut rep = KnotReport {
        schema: SCHEMA_VERSION,
        input: (k, l),
        id: None,
        normalization: Vec::new(),
        classification,
        two_bridge: None,
        fourplat: None,
        models: None,
        smoothness: None,
        components: None,
        genus: None,
        alexander: None,
        fibered: None,
        trace_field: None,
        trace_field_degree: None,
        commensurability: None,
        notes: Vec::new(),
        timing_ms: None,
    };
    if classification == KnotClass::NotAKnot {
        rep.notes.push("k and l both odd: J(k,l) is a two-component link".to_string());
        return Ok(rep);
    }
    let id = knot_id(k, l)?;
    if id.swapped {
        rep.normalization.push(format!("(k,l) = ({k},{l}) -> ({},{}) so that l is even", id.k, id.l));
    }
    rep.id = Some(id);
    let (k, l) = (id.k, id.l);

    let fib = is_fibered(k, l)?;
    if fib != fibered_by_list(k, l)? {
        return Err(ReportError::Disagreement(format!("fiberedness of J({k},{l})")));
    }
    rep.fibered = Some(both(fib));
    rep.alexander = Some(alexander(k, l)?.to_string());
    clock.lap("alexander");

    if k * l == 0 {
        rep.notes.push("J(k,0) and J(0,l) are the unknot".to_string());
        rep.timing_ms = timing.then_some(clock.laps);
        return Ok(rep);
    }
    rep.two_bridge = Some(two_bridge_params(k, l)?);
    rep.fourplat = match fourplat_sequence(k, l) {
        Ok(f) => Some(f),
        Err(KnotError::NotCoveredByTable { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    clock.lap("two_bridge");

    let d = d_model(k, l)?;
    let bidegree = match (d.bidegree, expected_bidegree(k, l / 2)) {
        (Some(b), Some(e)) if b == e => Some(both(b)),
        (Some(b), Some(e)) => {
            return Err(ReportError::Disagreement(format!("bidegree of D({k},{l}): {b:?} vs {e:?}")));
        }
        (Some(b), None) => Some(oracle(b)),
        _ => None,
    };
    let (d0, d1) = if k == l {
        let (a, b) = d_split(l)?;
        (Some(a.equation.to_string()), Some(b.equation.to_string()))
    } else {
        (None, None)
    };
    rep.models = Some(ModelsSection {
        c_equation: c_model(k, l)?.equation.to_string(),
        d_equation: d.equation.to_string(),
        d_state: d.state,
        bidegree,
        d0_equation: d0,
        d1_equation: d1,
    });
    clock.lap("models");

    if classification != KnotClass::Hyperbolic {
        rep.notes.push(match classification {
            KnotClass::Trefoil => "trefoil: D(l,l) is a union of lines".to_string(),
            KnotClass::TorusNonHyperbolic => "torus knot: D(k,l) is a union of lines".to_string(),
            _ => "unknot".to_string(),
        });
        rep.components = Some(both(component_count(k, l)?));
        rep.timing_ms = timing.then_some(clock.laps);
        return Ok(rep);
    }

    let cert = smoothness_certificate(k, l)?;
    if !cert.smooth {
        return Err(ReportError::Disagreement(format!("D({k},{l}) not certified smooth")));
    }
    rep.smoothness = Some(SmoothnessSummary {
        smooth: cert.smooth,
        target: format!("{:?}", cert.target.kind),
        affine_singular_points: cert.affine_verdict.point_count(),
        infinity_transversal: cert.infinity.is_transversal(),
        union_singular_points: cert.union_singularities.as_ref().map(|u| u.count),
        certificate: cert,
    });
    clock.lap("smoothness");

    let cc = component_count(k, l)?;
    let expected = if k == l { ComponentCount::Two } else { ComponentCount::One };
    if cc != expected {
        return Err(ReportError::Disagreement(format!("component count of J({k},{l})")));
    }
    rep.components = Some(both(cc));

    let g = genus_x(k, l)?;
    if !g.all_agree {
        return Err(ReportError::Disagreement(format!("genus routes of J({k},{l})")));
    }
    rep.genus = Some(GenusSection {
        y: g.y.iter().map(|c| both(c.genus_formula)).collect(),
        x: g.x.iter().map(|c| both(c.genus_x_formula)).collect(),
        odd_points: g.x.iter().map(|c| both(c.odd_points.closed_form)).collect(),
        details: g,
    });
    clock.lap("genus");

    let tf = trace_field_report(k, l)?;
    if tf.degree as i64 != trace_field_degree_formula(k, l, true) {
        return Err(ReportError::Disagreement(format!("trace-field degree of J({k},{l})")));
    }
    rep.trace_field_degree = Some(both(tf.degree as i64));
    rep.trace_field = Some(tf);
    clock.lap("trace_field");

    let cert = commensurability_certificate(k, l)?;
    if let CommensurabilityCertificate::NotCommensurable { reverified: false, .. } = &cert {
        return Err(ReportError::Disagreement(format!("commensurability witness of J({k},{l}) does not re-verify")));
    }
    rep.commensurability = Some(cert);
    clock.lap("commensurability");

    rep.timing_ms = timing.then_some(clock.laps);
    Ok(rep)
}

/// One line of a grid sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub k: i64,
    pub l: i64,
    pub class: KnotClass,
    pub components: Option<u32>,
    pub genus_y: Vec<i64>,
    pub genus_x: Vec<i64>,
    pub odd_points: Vec<i64>,
    pub fibered: Option<bool>,
    pub trace_field_degree: Option<i64>,
    pub status: String,
}

pub fn sweep_row(k: i64, l: i64) -> SweepRow {
    let mut row = SweepRow {
        k,
        l,
        class: classify(k, l),
        components: None,
        genus_y: Vec::new(),
        genus_x: Vec::new(),
        odd_points: Vec::new(),
        fibered: None,
        trace_field_degree: None,
        status: "ok".to_string(),
    };
    match analyze(k, l, false) {
        Ok(rep) => {
            row.components = rep.components.as_ref().and_then(|c| c.value.as_number());
            if let Some(g) = &rep.genus {
                row.genus_y = g.y.iter().map(|r| r.value).collect();
                row.genus_x = g.x.iter().map(|r| r.value).collect();
                row.odd_points = g.odd_points.iter().map(|r| r.value).collect();
            }
            row.fibered = rep.fibered.map(|f| f.value);
            row.trace_field_degree = rep.trace_field_degree.map(|t| t.value);
        }
        Err(ReportError::Disagreement(msg)) => row.status = format!("disagreement: {msg}"),
        Err(e) => row.status = format!("error: {e}"),
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_eight_report() {
        let r = analyze(2, -2, false).unwrap();
        assert_eq!(r.classification, KnotClass::Hyperbolic);
        assert_eq!(r.genus.as_ref().unwrap().x[0].value, 1);
        assert!(r.fibered.as_ref().unwrap().value);
        assert!(r.timing_ms.is_none());
        assert!(analyze(2, -2, true).unwrap().timing_ms.is_some());
    }

    #[test]
    fn degenerate_reports() {
        let r = analyze(1, 6, false).unwrap();
        assert_eq!(r.classification, KnotClass::TorusNonHyperbolic);
        assert!(matches!(r.components.unwrap().value, ComponentCount::Degenerate(_)));
        assert!(r.genus.is_none());
        let r = analyze(3, 3, false).unwrap();
        assert_eq!(r.classification, KnotClass::NotAKnot);
        let r = analyze(4, 3, false).unwrap();
        assert!(r.id.unwrap().swapped);
    }

    #[test]
    fn two_components_row() {
        let row = sweep_row(4, 4);
        assert_eq!(row.components, Some(2));
        assert_eq!(row.genus_x, vec![1, 3]);
        assert_eq!(row.status, "ok");
    }
}
