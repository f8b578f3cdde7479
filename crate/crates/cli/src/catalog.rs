//! Resolve command-line potentials and find their closed-form states.

use lame_core::potential::on_parabola;
use lame_core::spectra::{lame_states, named_states, sort_states, table3_states, NamedCase};
use lame_core::{Error, Modulus, PotentialSpec, Result, StateSet};
use serde_json::{Map, Value};

use crate::args::{Num, PotentialArgs};
use crate::doc::num;

/// Largest m accepted on the command line.
pub const M_MAX: f64 = 0.999;

pub fn modulus(m: Num) -> Result<Modulus> {
    if !(0.0..=M_MAX).contains(&m.0) {
        return Err(Error::Domain(format!("m = {} outside [0, {M_MAX}]", m.0)));
    }
    Modulus::new(m.0)
}

/// Canonical potential (p >= q) with zero offset.
pub fn potential(args: &PotentialArgs, m: Num) -> Result<PotentialSpec> {
    let m = modulus(m)?;
    let ab = args.a.is_some() || args.b.is_some();
    let pq = args.p.is_some() || args.q.is_some();
    let zero = Num(0.0);
    let spec = match (ab, pq) {
        (true, true) => return Err(Error::Domain("give either --a/--b or --p/--q, not both".into())),
        (false, false) => return Err(Error::Domain("a potential needs --a/--b or --p/--q".into())),
        (true, false) => PotentialSpec::from_ab(args.a.unwrap_or(zero).0, args.b.unwrap_or(zero).0, m, 0.0)?,
        (false, true) => PotentialSpec::from_pq(args.p.unwrap_or(zero).0, args.q.unwrap_or(zero).0, m, 0.0)?,
    };
    Ok(spec.canonical())
}

fn same(x: f64, y: f64) -> bool {
    (x - y).abs() < 1e-9
}

/// Closed-form states of `spec`: the Lamé and special tables, otherwise the
/// union over every parabola of solvability through (p, q). `None` when the
/// potential has no closed-form states.
pub fn analytic_states(spec: &PotentialSpec) -> Result<Option<StateSet>> {
    let m = spec.elliptic().modulus();
    let (a, b) = (spec.a(), spec.b());
    if same(b, 0.0) {
        for k in 1..=3u32 {
            if same(a, k as f64) {
                return lame_states(k, m).map(Some);
            }
        }
    }
    for case in NamedCase::ALL {
        let (ra, rb) = case.roots::<f64>();
        if same(a, ra) && same(b, rb) {
            return named_states(case, m).map(Some);
        }
    }
    let mut states = Vec::new();
    for (n, root) in on_parabola(spec.p(), spec.q()) {
        for s in table3_states(root, n, m)?.states {
            if !states.iter().any(|t: &lame_core::AnalyticState| same(t.energy, s.energy) && t.nodes == s.nodes) {
                states.push(s);
            }
        }
    }
    if states.is_empty() {
        return Ok(None);
    }
    sort_states(&mut states);
    Ok(Some(StateSet { potential: *spec, states }))
}

/// Closed-form set whose lowest state is the nodeless ground state, shifted
/// so that it sits at zero.
pub fn ground_set(spec: &PotentialSpec) -> Result<StateSet> {
    let set = analytic_states(spec)?
        .ok_or_else(|| Error::Precondition(format!("({}, {}) has no closed-form states", spec.p(), spec.q())))?;
    if set.states.first().map(|s| s.nodes) != Some(0) {
        return Err(Error::Precondition(format!(
            "the ground state of ({}, {}) is not among its closed-form states",
            spec.p(),
            spec.q()
        )));
    }
    Ok(set.shifted_to_ground())
}

pub fn describe(spec: &PotentialSpec) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("p".into(), num(spec.p()));
    m.insert("q".into(), num(spec.q()));
    m.insert("a".into(), num(spec.a()));
    m.insert("b".into(), num(spec.b()));
    m.insert("m".into(), num(spec.m()));
    m.insert("offset".into(), num(spec.offset()));
    m.insert("period".into(), num(spec.period()));
    m.insert("swapped".into(), Value::Bool(spec.swapped()));
    m
}
