//! Command implementations behind the `fibersym` binary. Each command returns
//! a machine-readable [`CommandResult`] together with a human-readable report.

pub mod json;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use fibersym_core::exactla::{
    format_rational, image_basis, jordan_census, kernel_basis, parse_rational, rat, MatrixQ, Subspace,
};
use fibersym_core::fibration::{
    crossing_table, puncture_paths, relative_locations, table_rows, FibrationFrame,
};
use fibersym_core::graphlink::{
    delta_prime, failing_index, gcd_data, jordan_size2_data, p2_offsets, GraphLinkSpec,
};
use fibersym_core::surfaces::{evaluate_word, parse_word, SurfaceKind, SurfaceModel, CALIBRATED};
use fibersym_core::wang::{primitive_betti, torelli_product_check, EtaClass, FiberedFourManifold};

pub const FORMAT_VERSION: &str = "1.0.0";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandResult {
    pub command: String,
    pub format_version: String,
    pub inputs: Value,
    pub payload: Value,
}

impl CommandResult {
    fn new(command: &str, inputs: Value, payload: Value) -> Self {
        CommandResult { command: command.to_string(), format_version: FORMAT_VERSION.to_string(), inputs, payload }
    }

    /// Pretty JSON with sorted keys; identical inputs give identical bytes.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("plain data serializes");
        serde_json::to_string_pretty(&v).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub struct Output {
    pub result: CommandResult,
    pub human: String,
}

fn surface(name: &str) -> Result<SurfaceModel> {
    Ok(SurfaceModel::of_kind(name.parse::<SurfaceKind>()?))
}

fn indent_matrix(m: &MatrixQ) -> String {
    m.to_string().lines().map(|l| format!("  {l}\n")).collect()
}

fn fmt_vec(v: &[fibersym_core::exactla::Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

fn fmt_subspace(out: &mut String, name: &str, s: &Subspace) {
    let _ = writeln!(out, "{name}: dim {}", s.dim());
    for v in s.basis() {
        let _ = writeln!(out, "  {}", fmt_vec(v));
    }
}

fn evaluate(surface_name: &str, word: &str) -> Result<(SurfaceModel, fibersym_core::surfaces::HomologyAction)> {
    let s = surface(surface_name)?;
    let w = parse_word(word, &s).context("cannot parse word")?;
    let action = evaluate_word(&w)?;
    Ok((s, action))
}

/// Homology action, `f^* - 1`, its kernel, image and Jordan census, and the Torelli verdict.
pub fn cmd_mcg(surface_name: &str, word: &str) -> Result<Output> {
    let (s, action) = evaluate(surface_name, word)?;
    let w = parse_word(word, &s)?;
    let n = action.dual_minus_identity();
    let (ker, im) = (kernel_basis(&n), image_basis(&n));
    let census = jordan_census(&action.on_h1_dual, &rat(1))?;
    let torelli = action.on_h1.is_identity();
    let blocks: BTreeMap<String, usize> = census.blocks_of_size.iter().map(|(k, c)| (k.to_string(), *c)).collect();
    let payload = json!({
        "surface": s.kind().name(),
        "basis": s.basis_labels(),
        "word": w.to_string(),
        "letters": w.len(),
        "convention": { "twist_sign": CALIBRATED.sigma, "dual": CALIBRATED.dual.name() },
        "on_h1": json::matrix(&action.on_h1),
        "on_h1_dual": json::matrix(&action.on_h1_dual),
        "dual_minus_identity": json::matrix(&n),
        "kernel": json::subspace(&ker),
        "image": json::subspace(&im),
        "jordan": {
            "eigenvalue": "1",
            "filtration_dims": census.filtration_dims,
            "blocks_of_size": blocks,
            "nu2": census.nu2,
        },
        "torelli": torelli,
    });
    let mut h = String::new();
    let _ = writeln!(h, "surface: {} (basis {})", s.kind(), s.basis_labels().join(", "));
    let _ = writeln!(h, "word: {}", if w.is_empty() { "(empty)".to_string() } else { w.to_string() });
    let _ = writeln!(h, "convention: twist sign {:+}, dual frame {}", CALIBRATED.sigma, CALIBRATED.dual.name());
    let _ = write!(h, "f_* on H1:\n{}", indent_matrix(&action.on_h1));
    let _ = write!(h, "f^* on H^1:\n{}", indent_matrix(&action.on_h1_dual));
    let _ = write!(h, "f^* - 1:\n{}", indent_matrix(&n));
    fmt_subspace(&mut h, "ker(f^*-1)", &ker);
    fmt_subspace(&mut h, "Im(f^*-1)", &im);
    let sizes: Vec<String> = census.blocks_of_size.iter().map(|(k, c)| format!("{c} of size {k}")).collect();
    let _ = writeln!(h, "jordan blocks at 1: {}", if sizes.is_empty() { "none".into() } else { sizes.join(", ") });
    let _ = writeln!(h, "nu2: {}", census.nu2);
    let _ = writeln!(h, "torelli: {torelli}");
    let inputs = json!({ "surface": surface_name, "word": word });
    Ok(Output { result: CommandResult::new("mcg", inputs, payload), human: h })
}

/// Parses a comma-separated list of rationals such as `0,1/2,-1`.
pub fn parse_rational_list(text: &str) -> Result<Vec<fibersym_core::exactla::Rational>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|p| parse_rational(p).with_context(|| format!("not a rational number: '{}'", p.trim())))
        .collect()
}

/// Parses `a1,a2,a3`.
pub fn parse_triple(text: &str) -> Result<[i64; 3]> {
    let parts: Vec<i64> = text
        .split(',')
        .map(|p| p.trim().parse::<i64>().with_context(|| format!("not an integer: '{}'", p.trim())))
        .collect::<Result<_>>()?;
    match parts.as_slice() {
        [a, b, c] => Ok([*a, *b, *c]),
        _ => bail!("expected three comma-separated integers, got {}", parts.len()),
    }
}

/// Betti and primitive Betti numbers of `S^1 x Y_f`.
pub fn cmd_cohomology(surface_name: &str, word: &str, eta: Option<&str>) -> Result<Output> {
    let (s, action) = evaluate(surface_name, word)?;
    let m = FiberedFourManifold::from_action(s.clone(), &action)?;
    let eta_class = eta.map(parse_rational_list).transpose()?.map(EtaClass::new);
    let r = primitive_betti(&m, eta_class.as_ref())?;
    let sizes = &r.jordan_sizes;
    let s1 = sizes.iter().filter(|&&n| n == 1).count();
    let eta_case = match &eta_class {
        None => "none",
        Some(e) if e.lambdas[s1..].iter().any(|l| *l != rat(0)) => "nonzero_beyond_s",
        Some(_) => "zero_beyond_s",
    };
    let payload = json!({
        "surface": s.kind().name(),
        "b": r.b,
        "b_y": r.b_y,
        "p_plus": r.p_plus,
        "p_minus": r.p_minus,
        "nu2": r.nu2,
        "chi_p": r.chi_p,
        "jordan_sizes": r.jordan_sizes,
        "eta_case": eta_case,
        "torelli": torelli_product_check(&m),
    });
    let mut h = String::new();
    let _ = writeln!(h, "surface: {}", s.kind());
    let _ = writeln!(h, "b(Y_f) = {:?}", r.b_y);
    let _ = writeln!(h, "b(X)   = {:?}", r.b);
    let _ = writeln!(h, "jordan chains at 1 (census order): {:?}", r.jordan_sizes);
    let _ = writeln!(h, "nu2 = {}", r.nu2);
    let _ = writeln!(h, "eta: {eta_case}");
    let _ = writeln!(h, "p+ = {:?}", r.p_plus);
    let _ = writeln!(h, "p- = {:?}", r.p_minus);
    let _ = writeln!(h, "chi_p = {}", r.chi_p);
    let inputs = json!({
        "surface": surface_name,
        "word": word,
        "eta": eta_class.map(|e| e.lambdas.iter().map(json::rational).collect::<Vec<_>>()),
    });
    Ok(Output { result: CommandResult::new("cohomology", inputs, payload), human: h })
}

/// Puncture paths, relative locations and the ordered crossing table.
pub fn cmd_crossings(v1: [i64; 3]) -> Result<Output> {
    let frame = FibrationFrame::new(v1)?;
    let paths = puncture_paths(&frame)?;
    let events = crossing_table(&paths)?;
    let locations = relative_locations(&paths);
    let payload = json!({
        "determinant": frame.determinant(),
        "paths": paths.iter().map(|p| json!({
            "label": p.label,
            "start": [json::eps(&p.start[0]), json::eps(&p.start[1])],
            "velocity": p.velocity,
        })).collect::<Vec<_>>(),
        "relative_locations": locations.iter().map(|l| json!({
            "mover": l.mover,
            "anchor": l.anchor,
            "time": json::eps(&l.time),
            "gap": json::eps(&l.gap),
            "relation": l.relation.name(),
            "near": l.near,
        })).collect::<Vec<_>>(),
        "crossings": events.iter().map(|e| json!({
            "pair": [e.pair.0, e.pair.1],
            "times": [json::eps(&e.times.0), json::eps(&e.times.1)],
            "event_time": json::eps(&e.event_time),
            "over": e.over,
            "offset": [e.offset.0, e.offset.1],
            "start_incidence": e.start_incidence,
            "coincident_duplicate": e.coincident_duplicate,
        })).collect::<Vec<_>>(),
        "table_rows": table_rows(&events).len(),
    });
    let mut h = String::new();
    let _ = writeln!(h, "v1 = ({}, {}, {}), A = {}", v1[0], v1[1], v1[2], frame.determinant());
    let _ = writeln!(h, "paths:");
    for p in &paths {
        let _ = writeln!(h, "  y{}(t) = ({}, {}) + t({}, {})", p.label, p.start[0], p.start[1], p.velocity[0], p.velocity[1]);
    }
    let _ = writeln!(h, "relative locations:");
    for l in &locations {
        let near = if l.near { "near" } else { "far" };
        let _ = writeln!(h, "  y{} {} y{} start at t = {} ({near}, gap {})", l.mover, l.relation, l.anchor, l.time, l.gap);
    }
    let _ = writeln!(h, "crossings:");
    let _ = writeln!(h, "  {:<10} {:<10} {:<10} {:<10} over", "pair", "t_i", "t_j", "time");
    for e in table_rows(&events) {
        let pair = format!("(y{},y{})", e.pair.0, e.pair.1);
        let _ = writeln!(h, "  {pair:<10} {:<10} {:<10} {:<10} y{}", e.times.0.to_string(), e.times.1.to_string(), e.event_time.to_string(), e.over);
    }
    let flagged: Vec<_> = events.iter().filter(|e| e.is_flagged()).collect();
    if !flagged.is_empty() {
        let _ = writeln!(h, "flagged:");
        for e in flagged {
            let flag = if e.start_incidence { "start_incidence" } else { "coincident_duplicate" };
            let _ = writeln!(h, "  (y{},y{}) t = ({}, {}) over y{} [{flag}]", e.pair.0, e.pair.1, e.times.0, e.times.1, e.over);
        }
    }
    let inputs = json!({ "v1": v1 });
    Ok(Output { result: CommandResult::new("crossings", inputs, payload), human: h })
}

/// Validity, gcd weights, `Δ'(t)` and `p_2^±` offsets for `K^(2n)`.
pub fn cmd_graphlink(n: u32, m1: i64, m2: i64) -> Result<Output> {
    if let Some(i) = failing_index(n, m1, m2) {
        bail!("({m1}, {m2}) is not a fibration of K^({}): 3^{i}*m1 + 3^{}*m2 = 0 at i = {i}", 2 * n, 2 * n - i + 1);
    }
    let spec = GraphLinkSpec::new(n, m1, m2)?;
    let g = gcd_data(&spec)?;
    let dp = delta_prime(&spec)?;
    let expansion = dp.expand()?;
    let size2 = jordan_size2_data(&spec)?;
    let off = p2_offsets(&spec)?;
    let payload = json!({
        "valid": true,
        "d": spec.d(),
        "d_e": g.d_e,
        "d_v": g.d_v,
        "delta_prime": {
            "factors": dp.factors().iter().map(|(e, m)| json!({ "exponent": e, "multiplicity": m })).collect::<Vec<_>>(),
            "expansion": expansion.coeffs().iter().map(|&c| json::big_int(c)).collect::<Vec<_>>(),
            "text": expansion.to_string(),
            "degree": size2.degree,
            "cyclotomic": size2.root_multiplicities.iter().map(|(j, m)| (j.to_string(), *m)).collect::<BTreeMap<_, _>>(),
        },
        "offsets": { "p2_plus_minus_b2": off.plus, "p2_minus_minus_b2": off.minus },
        "theorem_case": off.case.map(|c| c.label()),
    });
    let mut h = String::new();
    let _ = writeln!(h, "K^({}) with (m1, m2) = ({m1}, {m2}): fibration", 2 * n);
    let _ = writeln!(h, "d = {}", spec.d());
    let _ = writeln!(h, "d_E = {:?}", g.d_e);
    let _ = writeln!(h, "d_V = {:?}", g.d_v);
    let _ = writeln!(h, "Delta'(t) = {dp}");
    let _ = writeln!(h, "          = {expansion}");
    let cyc: Vec<String> = size2.root_multiplicities.iter().map(|(j, m)| if *m == 1 { format!("Phi_{j}") } else { format!("Phi_{j}^{m}") }).collect();
    let _ = writeln!(h, "          = {}", if cyc.is_empty() { "1".to_string() } else { cyc.join(" ") });
    let _ = writeln!(h, "deg Delta' = {}", size2.degree);
    let _ = writeln!(h, "p2+ = b2 + {}, p2- = b2 + {}", off.plus, off.minus);
    if let Some(c) = off.case {
        let _ = writeln!(h, "case: {c}");
    }
    let inputs = json!({ "n": n, "m1": m1, "m2": m2 });
    Ok(Output { result: CommandResult::new("graphlink", inputs, payload), human: h })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triples_and_lists() {
        assert_eq!(parse_triple("-1, -1,1").unwrap(), [-1, -1, 1]);
        assert!(parse_triple("1,2").is_err());
        assert!(parse_triple("1,x,2").is_err());
        assert_eq!(parse_rational_list("0,1/2,-3").unwrap(), vec![rat(0), fibersym_core::exactla::ratio(1, 2), rat(-3)]);
        assert!(parse_rational_list("1,,2").is_err());
        assert!(parse_rational_list("").unwrap().is_empty());
    }

    #[test]
    fn results_round_trip_through_json() {
        let outputs = [
            cmd_mcg("torus4", fibersym_core::surfaces::TOROIDAL_WORD_F).unwrap(),
            cmd_cohomology("torus4", fibersym_core::surfaces::TOROIDAL_WORD_F, Some("0,1,0")).unwrap(),
            cmd_crossings([-1, 1, 1]).unwrap(),
            cmd_graphlink(2, 3, 1).unwrap(),
        ];
        for o in outputs {
            let text = o.result.to_json();
            let back = CommandResult::from_json(&text).unwrap();
            assert_eq!(back, o.result);
            assert_eq!(back.to_json(), text);
        }
    }
}
