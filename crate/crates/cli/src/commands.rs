use lame_core::hill::{band_edges_numeric, discriminant, grid_min};
use lame_core::potential::{on_parabola, parabola_points, MAX_PARABOLA};
use lame_core::spectra::gap_delta2;
use lame_core::susy::{partner_pair, self_isospectral_deviation, shift_deviation, superpotential_from_form, PartnerPair};
use lame_core::{verify, Error, PotentialSpec, Result, StateSet, TOL};
use serde_json::{Map, Value};

use crate::args::{Command, Num, PotentialArgs, Quantity, Source};
use crate::catalog::{analytic_states, describe, ground_set, modulus, potential};
use crate::doc::{num, opt, Document};
use crate::record;

/// Result of a command and whether it counts as a verification failure.
pub struct Outcome {
    pub doc: Document,
    pub failed: bool,
}

fn meta(verb: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("tool".into(), "lame".into());
    m.insert("version".into(), env!("CARGO_PKG_VERSION").into());
    m.insert("verb".into(), verb.into());
    m.insert("tolerances".into(), tolerances());
    m
}

fn tolerances() -> Value {
    let t = TOL;
    let pairs = [
        ("kernel", t.kernel),
        ("identity", t.identity),
        ("residual", t.residual),
        ("period_class", t.period_class),
        ("ode_rtol", t.ode_rtol),
        ("ode_atol", t.ode_atol),
        ("wronskian", t.wronskian),
        ("edge_energy", t.edge_energy),
        ("tangency_value", t.tangency_value),
        ("self_iso_pass", t.self_iso_pass),
        ("self_iso_fail", t.self_iso_fail),
    ];
    Value::Object(pairs.iter().map(|(k, v)| (k.to_string(), num(*v))).collect())
}

fn grid(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::Domain("grid needs at least 2 points".into()));
    }
    Ok(n)
}

/// Default m grid: 0.02 to 0.98 in steps of 0.02, then 0.998.
pub fn default_m_grid() -> Vec<f64> {
    (1..=49).map(|i| i as f64 / 50.0).chain([0.998]).collect()
}

pub fn run(cmd: Command) -> Result<Outcome> {
    let doc = match cmd {
        Command::Profile { pot, m, grid: n, partner, .. } => profile(&pot, m, grid(n)?, partner)?,
        Command::Edges { pot, m, source, e_max, .. } => edges(&pot, m, source, e_max)?,
        Command::Partner { pot, m, grid: n, .. } => partner_cmd(&pot, m, grid(n)?)?,
        Command::Scan { pot, quantity, source, m_values, e_max, .. } => scan(&pot, quantity, source, m_values, e_max)?,
        Command::Dispersion { pot, m, e_min, e_max, grid: n, .. } => dispersion(&pot, m, e_min, e_max, grid(n)?)?,
        Command::Verify { criteria, .. } => return verify_cmd(criteria),
        Command::Parabolas { pot, a_min, a_max, grid: n, .. } => parabolas(&pot, a_min, a_max, grid(n)?)?,
    };
    Ok(Outcome { doc, failed: false })
}

fn pair_for(spec: &PotentialSpec) -> Result<(StateSet, PartnerPair<f64>)> {
    let set = ground_set(spec)?;
    let w = superpotential_from_form(set.ground(), *set.potential.elliptic())?;
    let pair = partner_pair(w, set.period());
    Ok((set, pair))
}

fn profile(pot: &PotentialArgs, m: Num, n: usize, partner: bool) -> Result<Document> {
    let spec = potential(pot, m)?;
    let mut meta = meta("profile");
    meta.insert("potential".into(), Value::Object(describe(&spec)));
    let pair = if partner {
        let (set, pair) = pair_for(&spec)?;
        meta.insert("ground_energy_shift".into(), num(set.potential.offset()));
        Some(pair)
    } else {
        None
    };
    let mut doc = Document::new(meta);
    let l = spec.period();
    for i in 0..n {
        let x = l * i as f64 / (n - 1) as f64;
        let mut r = record! { "x" => num(x), "V" => num(spec.eval(x)) };
        if let Some(p) = &pair {
            r.insert("W".into(), num(p.w.value(x)));
            r.insert("V_minus".into(), num((p.v_minus)(x)));
            r.insert("V_plus".into(), num((p.v_plus)(x)));
        }
        doc.records.push(r);
    }
    Ok(doc)
}

/// Potential the edges refer to: the table's own (with its energy offset)
/// when there is one.
fn edge_potential(spec: &PotentialSpec) -> Result<(PotentialSpec, Option<StateSet>)> {
    let set = analytic_states(spec)?;
    let pot = set.as_ref().map(|s| s.potential).unwrap_or(*spec);
    Ok((pot, set))
}

fn default_e_max(set: &Option<StateSet>, e_max: Option<Num>) -> Result<f64> {
    match (e_max, set) {
        (Some(e), _) => Ok(e.0),
        (None, Some(s)) => Ok(s.energies().last().copied().unwrap_or(0.0) + 0.5),
        (None, None) => Err(Error::Domain("numeric edges of a potential without closed forms need --e-max".into())),
    }
}

fn edges(pot: &PotentialArgs, m: Num, source: Source, e_max: Option<Num>) -> Result<Document> {
    let spec = potential(pot, m)?;
    let (pot, set) = edge_potential(&spec)?;
    let mut meta = meta("edges");
    meta.insert("potential".into(), Value::Object(describe(&pot)));
    let mut doc = Document::new(meta);
    if matches!(source, Source::Analytic | Source::Both) {
        let set = set.as_ref().ok_or_else(|| {
            Error::Precondition(format!("({}, {}) has no closed-form states", spec.p(), spec.q()))
        })?;
        for (i, s) in set.states.iter().enumerate() {
            doc.records.push(record! {
                "source" => "analytic",
                "index" => i,
                "energy" => num(s.energy),
                "nodes" => s.nodes,
                "kind" => if s.period_class.as_str() == "L" { "D=+2" } else { "D=-2" },
                "closed_gap" => Value::Null,
                "label" => s.provenance.id.clone(),
            });
        }
    }
    if matches!(source, Source::Numeric | Source::Both) {
        let top = default_e_max(&set, e_max)?;
        let bs = band_edges_numeric(&pot.evaluator(), pot.period(), top)?;
        doc.meta.insert("e_max".into(), num(top));
        doc.meta.insert("e_floor".into(), num(bs.e_floor));
        for e in &bs.edges {
            doc.records.push(record! {
                "source" => "numeric",
                "index" => e.index,
                "energy" => num(e.energy),
                "nodes" => e.nodes,
                "kind" => e.edge_type.as_str(),
                "closed_gap" => e.closed_gap,
                "label" => "",
            });
        }
    }
    Ok(doc)
}

fn partner_cmd(pot: &PotentialArgs, m: Num, n: usize) -> Result<Document> {
    let spec = potential(pot, m)?;
    let (set, pair) = pair_for(&spec)?;
    let mut meta = meta("partner");
    meta.insert("potential".into(), Value::Object(describe(&set.potential)));
    let dev = self_isospectral_deviation(&pair);
    meta.insert("deviation".into(), num(dev.value));
    meta.insert("deviation_grid".into(), dev.grid.into());
    meta.insert("verdict".into(), dev.verdict.as_str().into());
    if let Ok(d) = shift_deviation(&pair) {
        meta.insert("shift_identity_deviation".into(), num(d.value));
    }
    eprintln!("deviation {:.3e}: {}", dev.value, dev.verdict.as_str());
    let mut doc = Document::new(meta);
    let l = pair.period;
    for i in 0..n {
        let x = l * i as f64 / (n - 1) as f64;
        doc.records.push(record! {
            "x" => num(x),
            "W" => num(pair.w.value(x)),
            "V_minus" => num((pair.v_minus)(x)),
            "V_plus" => num((pair.v_plus)(x)),
            "V_minus_shifted" => num((pair.v_minus)(x - 0.5 * l)),
        });
    }
    Ok(doc)
}

fn scan(
    pot: &PotentialArgs,
    quantity: Quantity,
    source: Source,
    m_values: Option<Vec<Num>>,
    e_max: Option<Num>,
) -> Result<Document> {
    let ms: Vec<f64> = match m_values {
        Some(v) => v.into_iter().map(|x| x.0).collect(),
        None => default_m_grid(),
    };
    for &m in &ms {
        modulus(Num(m))?;
    }
    let mut meta = meta("scan");
    meta.insert("quantity".into(), format!("{quantity:?}").to_lowercase().into());
    let mut doc = Document::new(meta);
    match quantity {
        Quantity::GapDelta2 => {
            if pot.p.is_some() || pot.q.is_some() || pot.b.is_some() {
                return Err(Error::Domain("gap-delta2 takes --a only".into()));
            }
            let a = pot.a.ok_or_else(|| Error::Domain("gap-delta2 needs --a".into()))?.0;
            doc.meta.insert("a".into(), num(a));
            for m in ms {
                doc.records.push(record! { "m" => num(m), "delta2" => num(gap_delta2(a, modulus(Num(m))?)) });
            }
        }
        Quantity::Deviation => {
            for m in ms {
                let (_, pair) = pair_for(&potential(pot, Num(m))?)?;
                let d = self_isospectral_deviation(&pair);
                doc.records.push(record! { "m" => num(m), "deviation" => num(d.value), "verdict" => d.verdict.as_str() });
            }
        }
        Quantity::Edges => {
            if source == Source::Both {
                return Err(Error::Domain("scan edges takes --source analytic or numeric".into()));
            }
            for m in ms {
                let spec = potential(pot, Num(m))?;
                let (p, set) = edge_potential(&spec)?;
                let energies = if source == Source::Analytic {
                    set.ok_or_else(|| Error::Precondition("no closed-form states".into()))?.energies()
                } else {
                    let top = default_e_max(&set, e_max)?;
                    band_edges_numeric(&p.evaluator(), p.period(), top)?.energies()
                };
                for (i, e) in energies.into_iter().enumerate() {
                    doc.records.push(record! { "m" => num(m), "index" => i, "energy" => num(e) });
                }
            }
        }
    }
    Ok(doc)
}

fn dispersion(pot: &PotentialArgs, m: Num, e_min: Option<Num>, e_max: Num, n: usize) -> Result<Document> {
    let spec = potential(pot, m)?;
    let (p, _) = edge_potential(&spec)?;
    let v = p.evaluator();
    let l = p.period();
    let lo = e_min.map(|e| e.0).unwrap_or_else(|| grid_min(&v, l));
    if !(e_max.0 > lo) {
        return Err(Error::Domain(format!("e-max {} must exceed e-min {lo}", e_max.0)));
    }
    let mut meta = meta("dispersion");
    meta.insert("potential".into(), Value::Object(describe(&p)));
    let mut doc = Document::new(meta);
    for i in 0..n {
        let e = lo + (e_max.0 - lo) * i as f64 / (n - 1) as f64;
        let d = discriminant(&v, l, e)?.value;
        let k = if d.abs() <= 2.0 { Some((0.5 * d).acos() / l) } else { None };
        doc.records.push(record! { "E" => num(e), "D" => num(d), "k" => opt(k) });
    }
    Ok(doc)
}

fn verify_cmd(criteria: Option<Vec<usize>>) -> Result<Outcome> {
    let ids = criteria.unwrap_or_else(|| (1..=10).collect());
    if let Some(bad) = ids.iter().find(|i| !(1..=10).contains(*i)) {
        return Err(Error::Domain(format!("no criterion {bad}; they run from 1 to 10")));
    }
    let mut doc = Document::new(meta("verify"));
    let mut failed = false;
    for id in ids {
        let r = verify::run(id);
        eprintln!("criterion {:>2} {}: {}", r.id, if r.pass { "PASS" } else { "FAIL" }, r.title);
        failed |= !r.pass;
        doc.records.push(record! {
            "criterion" => r.id,
            "title" => r.title,
            "pass" => r.pass,
            "seconds" => num(r.seconds),
            "detail" => r.detail,
        });
    }
    doc.meta.insert("passed".into(), Value::Bool(!failed));
    Ok(Outcome { doc, failed })
}

fn parabolas(pot: &PotentialArgs, a_min: Num, a_max: Num, n: usize) -> Result<Document> {
    let mut doc = Document::new(meta("parabolas"));
    if pot.a.is_some() || pot.b.is_some() || pot.p.is_some() || pot.q.is_some() {
        // Membership needs only p and q; any m will do.
        let spec = potential(pot, Num(0.5))?;
        doc.meta.insert("p".into(), num(spec.p()));
        doc.meta.insert("q".into(), num(spec.q()));
        for (k, a) in on_parabola(spec.p(), spec.q()) {
            doc.records.push(record! { "n" => k, "a" => num(a), "p" => num(spec.p()), "q" => num(spec.q()) });
        }
        return Ok(doc);
    }
    if !(a_max.0 > a_min.0) {
        return Err(Error::Domain("a-max must exceed a-min".into()));
    }
    for k in 1..=MAX_PARABOLA {
        for (a, p, q) in parabola_points(k, a_min.0, a_max.0, n) {
            doc.records.push(record! { "n" => k, "a" => num(a), "p" => num(p), "q" => num(q) });
        }
    }
    Ok(doc)
}
