//! Puncture paths in the torus fiber and the crossings between them.
//!
//! The four marked points start at distinct points `O(ε)` from the origin and
//! move linearly on `R^2 / Z^2` for `t ∈ [0, 1)`. All times and positions are
//! exact elements of `Q[ε]`; ε is never given a numeric value.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exactla::{rat, EpsNumber, MatrixQ, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibrationError {
    #[error("degenerate basis: a1 - a2 + a3 = 0")]
    DegenerateBasis,
    #[error("strands y{0} and y{1} run along a common line")]
    CommonLine(u8, u8),
    #[error("strands y{0} and y{1} collide at time {2}")]
    Collision(u8, u8, EpsNumber),
    #[error("path y{0} does not satisfy its defining system")]
    SystemMismatch(u8),
    #[error("crossing search box was too small for pair (y{0}, y{1})")]
    BoxTooSmall(u8, u8),
}

/// The basis choice `v1 = (a1, a2, a3)`, completed by `v2 = (1,1,0)` and `v3 = (0,1,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FibrationFrame {
    pub v1: [i64; 3],
}

impl FibrationFrame {
    pub fn new(v1: [i64; 3]) -> Result<Self, FibrationError> {
        let f = FibrationFrame { v1 };
        if f.determinant() == 0 {
            return Err(FibrationError::DegenerateBasis);
        }
        Ok(f)
    }

    /// `A = a1 - a2 + a3`
    pub fn determinant(&self) -> i64 {
        let [a1, a2, a3] = self.v1;
        a1 - a2 + a3
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuncturePath {
    /// 1..=4 in y-order.
    pub label: u8,
    pub start: [EpsNumber; 2],
    pub velocity: [i64; 2],
}

impl PuncturePath {
    pub fn new(label: u8, start: [EpsNumber; 2], velocity: [i64; 2]) -> Self {
        PuncturePath { label, start, velocity }
    }

    /// Position in the universal cover at time `t`.
    pub fn position(&self, t: &EpsNumber) -> [EpsNumber; 2] {
        [0, 1].map(|k| &self.start[k] + &t.scale(&rat(self.velocity[k])))
    }
}

fn em(k: i64) -> EpsNumber {
    EpsNumber::eps_multiple(k)
}

/// One of the linear systems `M (α, β) = c + t w` whose solution is a path.
struct LineSystem {
    label: u8,
    m: [[i64; 2]; 2],
    constant: [EpsNumber; 2],
    slope: [i64; 2],
}

fn line_systems(v1: [i64; 3]) -> [LineSystem; 4] {
    let [a1, a2, a3] = v1;
    [
        LineSystem { label: 1, m: [[1, 1], [0, 1]], constant: [em(-1), em(3)], slope: [-a2, -a3] },
        LineSystem { label: 4, m: [[1, 0], [0, 1]], constant: [em(1), em(-3)], slope: [-a1, -a3] },
        LineSystem { label: 2, m: [[1, 0], [1, 1]], constant: [em(-1), em(1)], slope: [-a1, -a2] },
        LineSystem { label: 3, m: [[0, -1], [1, -1]], constant: [em(0), em(0)], slope: [a2 - a1, a3 - a1] },
    ]
}

impl LineSystem {
    fn satisfied_by(&self, p: &PuncturePath) -> bool {
        (0..2).all(|r| {
            let [m0, m1] = self.m[r];
            let c = &p.start[0].scale(&rat(m0)) + &p.start[1].scale(&rat(m1));
            let w = m0 * p.velocity[0] + m1 * p.velocity[1];
            c == self.constant[r] && w == self.slope[r]
        })
    }
}

/// The four puncture paths, verified against the linear systems they solve.
pub fn puncture_paths(frame: &FibrationFrame) -> Result<[PuncturePath; 4], FibrationError> {
    if frame.determinant() == 0 {
        return Err(FibrationError::DegenerateBasis);
    }
    let [a1, a2, a3] = frame.v1;
    let paths = [
        PuncturePath::new(1, [em(-4), em(3)], [a3 - a2, -a3]),
        PuncturePath::new(2, [em(-1), em(2)], [-a1, a1 - a2]),
        PuncturePath::new(3, [em(0), em(0)], [a3 - a2, a1 - a2]),
        PuncturePath::new(4, [em(1), em(-3)], [-a1, -a3]),
    ];
    for sys in line_systems(frame.v1) {
        if !sys.satisfied_by(&paths[usize::from(sys.label) - 1]) {
            return Err(FibrationError::SystemMismatch(sys.label));
        }
    }
    Ok(paths)
}

fn in_unit(t: &EpsNumber) -> bool {
    *t >= EpsNumber::zero() && *t < EpsNumber::one()
}

fn norm_inf(v: [i64; 2]) -> i64 {
    v[0].abs().max(v[1].abs())
}

fn offset_box(a: &PuncturePath, b: &PuncturePath) -> i64 {
    norm_inf(a.velocity) + norm_inf(b.velocity) + 1
}

fn rhs(a: &PuncturePath, b: &PuncturePath, p: i64, q: i64) -> [EpsNumber; 2] {
    [&EpsNumber::integer(p) + &(&b.start[0] - &a.start[0]), &EpsNumber::integer(q) + &(&b.start[1] - &a.start[1])]
}

/// True iff no two strands occupy the same torus point at the same time.
pub fn verify_disjoint_strands(paths: &[PuncturePath]) -> bool {
    first_collision(paths).is_none()
}

fn first_collision(paths: &[PuncturePath]) -> Option<FibrationError> {
    for (i, a) in paths.iter().enumerate() {
        for b in &paths[i + 1..] {
            let dv = [a.velocity[0] - b.velocity[0], a.velocity[1] - b.velocity[1]];
            let bound = norm_inf(dv) + 1;
            for p in -bound..=bound {
                for q in -bound..=bound {
                    // (v_a - v_b) t = offset + s_b - s_a
                    let r = rhs(a, b, p, q);
                    let mut t: Option<EpsNumber> = None;
                    let mut consistent = true;
                    for k in 0..2 {
                        if dv[k] == 0 {
                            consistent &= r[k].is_zero();
                        } else {
                            let tk = r[k].div_rational(&rat(dv[k]));
                            match &t {
                                Some(t0) if *t0 != tk => consistent = false,
                                _ => t = Some(tk),
                            }
                        }
                    }
                    let t = t.unwrap_or_else(EpsNumber::zero);
                    if consistent && in_unit(&t) {
                        return Some(FibrationError::Collision(a.label, b.label, t));
                    }
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingEvent {
    pub pair: (u8, u8),
    pub times: (EpsNumber, EpsNumber),
    /// The strand with the later time.
    pub over: u8,
    pub event_time: EpsNumber,
    /// Lattice offset `(p, q)` of the solution.
    pub offset: (i64, i64),
    /// Crossing point reduced to the unit square.
    pub point: [EpsNumber; 2],
    pub start_incidence: bool,
    pub coincident_duplicate: bool,
}

impl CrossingEvent {
    pub fn is_flagged(&self) -> bool {
        self.start_incidence || self.coincident_duplicate
    }
}

fn solve_pair(a: &PuncturePath, b: &PuncturePath, bound: i64) -> Result<Vec<CrossingEvent>, FibrationError> {
    let (va, vb) = (a.velocity, b.velocity);
    // [va, -vb] (ta, tb)^T = r
    let det = -va[0] * vb[1] + vb[0] * va[1];
    let mut out = Vec::new();
    for p in -bound..=bound {
        for q in -bound..=bound {
            let r = rhs(a, b, p, q);
            if det == 0 {
                let w = if va != [0, 0] { va } else { vb };
                let normal = &r[0].scale(&rat(-w[1])) + &r[1].scale(&rat(w[0]));
                if normal.is_zero() {
                    return Err(FibrationError::CommonLine(a.label, b.label));
                }
                continue;
            }
            let d = rat(det);
            let ta = (&r[0].scale(&rat(-vb[1])) + &r[1].scale(&rat(vb[0]))).div_rational(&d);
            let tb = (&r[0].scale(&rat(-va[1])) + &r[1].scale(&rat(va[0]))).div_rational(&d);
            if !(in_unit(&ta) && in_unit(&tb)) {
                continue;
            }
            if ta == tb {
                return Err(FibrationError::Collision(a.label, b.label, ta));
            }
            let over = if ta > tb { a.label } else { b.label };
            let point = a.position(&ta).map(|x| x.fract());
            out.push(CrossingEvent {
                pair: (a.label, b.label),
                start_incidence: ta.is_zero() || tb.is_zero(),
                event_time: ta.clone().max(tb.clone()),
                times: (ta, tb),
                over,
                offset: (p, q),
                point,
                coincident_duplicate: false,
            });
        }
    }
    Ok(out)
}

fn sort_events(events: &mut [CrossingEvent]) {
    events.sort_by(|x, y| {
        (&x.event_time, x.pair, &x.times.0, &x.times.1).cmp(&(&y.event_time, y.pair, &y.times.0, &y.times.1))
    });
}

/// All crossings of distinct strands during `t ∈ [0, 1)`, sorted by event
/// time. Flagged events are kept in the list; [`table_rows`] drops them.
pub fn crossing_table(paths: &[PuncturePath]) -> Result<Vec<CrossingEvent>, FibrationError> {
    if let Some(e) = first_collision(paths) {
        return Err(e);
    }
    let mut events = Vec::new();
    for (i, a) in paths.iter().enumerate() {
        for b in &paths[i + 1..] {
            let bound = offset_box(a, b);
            let found = solve_pair(a, b, bound)?;
            if solve_pair(a, b, bound + 1)?.len() != found.len() {
                return Err(FibrationError::BoxTooSmall(a.label, b.label));
            }
            events.extend(found);
        }
    }
    sort_events(&mut events);
    for k in 0..events.len() {
        if events[k].start_incidence {
            continue;
        }
        let repeated = events[..k].iter().any(|e| {
            !e.is_flagged() && e.pair == events[k].pair && e.over == events[k].over && e.point == events[k].point
        });
        events[k].coincident_duplicate = repeated;
    }
    Ok(events)
}

/// The unflagged rows, in order.
pub fn table_rows(events: &[CrossingEvent]) -> Vec<&CrossingEvent> {
    events.iter().filter(|e| !e.is_flagged()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Above,
    Below,
    ThroughStart,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::Above => "above",
            Relation::Below => "below",
            Relation::ThroughStart => "through_start",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A pass of `mover` across the vertical line through `anchor`'s start point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeLocation {
    pub mover: u8,
    pub anchor: u8,
    pub time: EpsNumber,
    /// Vertical gap `mover - anchor start`, reduced to `[-1/2, 1/2)`.
    pub gap: EpsNumber,
    pub relation: Relation,
    /// True when the gap is infinitesimal, i.e. the pass is next to the start point.
    pub near: bool,
}

pub fn relative_locations(paths: &[PuncturePath]) -> Vec<RelativeLocation> {
    let half = EpsNumber::rational(Rational::new(1.into(), 2.into()));
    let mut out = Vec::new();
    for m in paths {
        let vx = m.velocity[0];
        if vx == 0 {
            continue;
        }
        for a in paths.iter().filter(|a| a.label != m.label) {
            let bound = vx.abs() + 1;
            for p in -bound..=bound {
                let t = (&EpsNumber::integer(p) + &(&a.start[0] - &m.start[0])).div_rational(&rat(vx));
                if !(t > EpsNumber::zero() && t < EpsNumber::one()) {
                    continue;
                }
                let raw = &m.position(&t)[1] - &a.start[1];
                let shift = EpsNumber::rational(Rational::from_integer((&raw + &half).floor()));
                let gap = &raw - &shift;
                let relation = match gap.signum() {
                    0 => Relation::ThroughStart,
                    1 => Relation::Above,
                    _ => Relation::Below,
                };
                out.push(RelativeLocation {
                    mover: m.label,
                    anchor: a.label,
                    near: gap.rational_part().is_zero(),
                    time: t,
                    gap,
                    relation,
                });
            }
        }
    }
    out.sort_by(|x, y| (x.mover, x.anchor, &x.time).cmp(&(y.mover, y.anchor, &y.time)));
    out
}

/// Solves `M x = rhs` for a 2x2 rational system; used as an independent
/// check of the closed-form paths.
pub fn solve_line_system(m: [[i64; 2]; 2], rhs: [Rational; 2]) -> Option<[Rational; 2]> {
    let mq = MatrixQ::from_i64(&m);
    let x = mq.inverse().ok()?.apply(&rhs).ok()?;
    Some([x[0].clone(), x[1].clone()])
}
