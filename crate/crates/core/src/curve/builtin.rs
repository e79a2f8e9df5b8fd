//! Closed-form curve families and the textual curve grammar.
//!
//! ```text
//! segment((x0,y0,…),(x1,y1,…))   (1-s)·p0 + s·p1
//! circle(r, turns)               r·(cos 2π·turns·s, sin 2π·turns·s), turns ∈ (0,1]
//! arch_spiral(a, b, turns)       (a + bθ)(cos θ, sin θ), θ = 2π·turns·s
//! lissajous(a, b, δ)             (sin(2πa·s + δ), sin(2πb·s))
//! helix3d(r, pitch, turns)       (r cos θ, r sin θ, pitch·turns·s), θ = 2π·turns·s
//! polyline(path)                 JSON or CSV polyline file
//! random(segments, seed)         seeded random open polyline in [0,1]²
//! ```
//!
//! Scalars accept `pi`/`π` and products or quotients such as `pi/2`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use super::{euclid, Curve};
use crate::error::{Error, Result};
use crate::fixtures;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Segment { from: Vec<f64>, to: Vec<f64> },
    Circle { radius: f64, turns: f64 },
    ArchSpiral { a: f64, b: f64, turns: f64 },
    Lissajous { a: f64, b: f64, delta: f64 },
    Helix { radius: f64, pitch: f64, turns: f64 },
}

impl Family {
    pub fn dim(&self) -> usize {
        match self {
            Family::Segment { from, .. } => from.len(),
            Family::Helix { .. } => 3,
            _ => 2,
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let bad = |token: &str, msg: &str| Err(Error::parse(token, msg));
        match self {
            Family::Segment { from, to } => {
                if from.is_empty() || from.len() != to.len() {
                    return bad("segment", "endpoints must have the same positive dimension");
                }
                if from.iter().chain(to).any(|c| !c.is_finite()) {
                    return bad("segment", "endpoint coordinates must be finite");
                }
            }
            Family::Circle { radius, turns } => {
                if !(*radius > 0.0 && radius.is_finite()) {
                    return bad(&radius.to_string(), "circle radius must be positive");
                }
                if !(*turns > 0.0 && *turns <= 1.0) {
                    return bad(&turns.to_string(), "circle turns must lie in (0, 1]");
                }
            }
            Family::ArchSpiral { a, b, turns } => {
                if !(a.is_finite() && b.is_finite()) || (*a == 0.0 && *b == 0.0) {
                    return bad("arch_spiral", "spiral needs finite a, b, not both zero");
                }
                if !(*turns > 0.0 && turns.is_finite()) {
                    return bad(&turns.to_string(), "spiral turns must be positive");
                }
            }
            Family::Lissajous { a, b, delta } => {
                if !(*a > 0.0 && *b > 0.0 && a.is_finite() && b.is_finite() && delta.is_finite()) {
                    return bad("lissajous", "lissajous frequencies must be positive");
                }
            }
            Family::Helix {
                radius,
                pitch,
                turns,
            } => {
                if !(*radius > 0.0 && radius.is_finite()) {
                    return bad(&radius.to_string(), "helix radius must be positive");
                }
                if !pitch.is_finite() {
                    return bad(&pitch.to_string(), "helix pitch must be finite");
                }
                if !(*turns > 0.0 && turns.is_finite()) {
                    return bad(&turns.to_string(), "helix turns must be positive");
                }
            }
        }
        Ok(())
    }

    fn eval_into(&self, s: f64, out: &mut [f64]) {
        match self {
            Family::Segment { from, to } => {
                for ((o, &p), &q) in out.iter_mut().zip(from).zip(to) {
                    *o = (1.0 - s) * p + s * q;
                }
            }
            Family::Circle { radius, turns } => {
                let (c, sn) = turn_cos_sin(turns * s);
                out[0] = radius * c;
                out[1] = radius * sn;
            }
            Family::ArchSpiral { a, b, turns } => {
                let (c, sn) = turn_cos_sin(turns * s);
                let r = a + b * TAU * turns * s;
                out[0] = r * c;
                out[1] = r * sn;
            }
            Family::Lissajous { a, b, delta } => {
                out[0] = (TAU * a * s + delta).sin();
                out[1] = (TAU * b * s).sin();
            }
            Family::Helix {
                radius,
                pitch,
                turns,
            } => {
                let (c, sn) = turn_cos_sin(turns * s);
                out[0] = radius * c;
                out[1] = radius * sn;
                out[2] = pitch * turns * s;
            }
        }
    }

    pub(crate) fn speed_bound(&self) -> f64 {
        match self {
            Family::Segment { from, to } => euclid(from, to),
            Family::Circle { radius, turns } => TAU * radius * turns,
            Family::ArchSpiral { a, b, turns } => {
                let rmax = a.abs() + b.abs() * TAU * turns;
                TAU * turns * b.hypot(rmax)
            }
            Family::Lissajous { a, b, .. } => TAU * a.hypot(*b),
            Family::Helix {
                radius,
                pitch,
                turns,
            } => (TAU * radius * turns).hypot(pitch * turns),
        }
    }

    pub(crate) fn diameter_bound(&self) -> f64 {
        match self {
            Family::Segment { from, to } => euclid(from, to),
            Family::Circle { radius, .. } => 2.0 * radius,
            Family::ArchSpiral { a, b, turns } => 2.0 * (a.abs() + b.abs() * TAU * turns),
            Family::Lissajous { .. } => 2.0 * 2f64.sqrt(),
            Family::Helix {
                radius,
                pitch,
                turns,
            } => (2.0 * radius).hypot(pitch * turns),
        }
    }
}

/// `(cos 2πx, sin 2πx)`, exact at every quarter turn.
fn turn_cos_sin(x: f64) -> (f64, f64) {
    let quarters = 4.0 * x.rem_euclid(1.0);
    let q = quarters.floor();
    let (s, c) = ((quarters - q) * FRAC_PI_2).sin_cos();
    match q as u8 {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Builtin {
    family: Family,
    reversed: bool,
}

impl Builtin {
    pub(crate) fn new(family: Family) -> Self {
        Builtin {
            family,
            reversed: false,
        }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    pub(crate) fn reversed(&self) -> Builtin {
        Builtin {
            family: self.family.clone(),
            reversed: !self.reversed,
        }
    }

    pub(crate) fn eval_into(&self, t: f64, out: &mut [f64]) {
        let s = if self.reversed { 1.0 - t } else { t };
        self.family.eval_into(s, out);
    }
}

/// Parses a curve description such as `circle(1, 0.75)`; see the module docs
/// for the grammar.
pub fn make_builtin_curve(spec: &str) -> Result<Curve> {
    let spec = spec.trim();
    let open = spec
        .find('(')
        .ok_or_else(|| Error::parse(spec, "expected `family(arguments)`"))?;
    let name = spec[..open].trim();
    if !spec.ends_with(')') {
        return Err(Error::parse(spec, "missing closing `)`"));
    }
    let body = &spec[open + 1..spec.len() - 1];
    if name == "polyline" {
        return super::io::read_polyline(body.trim());
    }
    let args = Parser::new(body).arguments()?;
    let scalars = |want: usize| -> Result<Vec<f64>> {
        if args.len() != want {
            return Err(Error::parse(
                name,
                format!("expected {want} arguments, found {}", args.len()),
            ));
        }
        args.iter()
            .map(|a| match a {
                Arg::Scalar(x) => Ok(*x),
                Arg::Tuple(_) => Err(Error::parse(name, "expected a scalar argument")),
            })
            .collect()
    };
    let family = match name {
        "segment" => match args.as_slice() {
            [Arg::Tuple(p), Arg::Tuple(q)] => Family::Segment {
                from: p.clone(),
                to: q.clone(),
            },
            _ => return Err(Error::parse(name, "expected two point tuples")),
        },
        "circle" => {
            let v = scalars(2)?;
            Family::Circle {
                radius: v[0],
                turns: v[1],
            }
        }
        "arch_spiral" => {
            let v = scalars(3)?;
            Family::ArchSpiral {
                a: v[0],
                b: v[1],
                turns: v[2],
            }
        }
        "lissajous" => {
            let v = scalars(3)?;
            Family::Lissajous {
                a: v[0],
                b: v[1],
                delta: v[2],
            }
        }
        "helix3d" => {
            let v = scalars(3)?;
            Family::Helix {
                radius: v[0],
                pitch: v[1],
                turns: v[2],
            }
        }
        "random" => {
            let v = scalars(2)?;
            let (segments, seed) = (v[0], v[1]);
            if !(segments >= 1.0 && segments.fract() == 0.0) {
                return Err(Error::parse(segments.to_string(), "segment count must be a positive integer"));
            }
            if !(seed >= 0.0 && seed.fract() == 0.0) {
                return Err(Error::parse(seed.to_string(), "seed must be a non-negative integer"));
            }
            return Ok(fixtures::random_open_polyline(seed as u64, segments as usize, 2));
        }
        other => {
            return Err(Error::parse(
                other,
                "unknown curve family (expected segment, circle, arch_spiral, lissajous, helix3d, polyline or random)",
            ))
        }
    };
    Curve::builtin(family)
}

#[derive(Debug)]
enum Arg {
    Scalar(f64),
    Tuple(Vec<f64>),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn bump(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn error_here(&self, message: &str) -> Error {
        let token: String = self
            .rest()
            .chars()
            .take_while(|c| !matches!(c, ',' | ')'))
            .collect();
        let token = if token.trim().is_empty() {
            "<end>".to_string()
        } else {
            token.trim().to_string()
        };
        Error::parse(token, message)
    }

    fn arguments(mut self) -> Result<Vec<Arg>> {
        let mut args = Vec::new();
        if self.peek().is_none() {
            return Ok(args);
        }
        loop {
            if self.bump('(') {
                let mut coords = vec![self.expr()?];
                while self.bump(',') {
                    coords.push(self.expr()?);
                }
                if !self.bump(')') {
                    return Err(self.error_here("expected `)` closing a point"));
                }
                args.push(Arg::Tuple(coords));
            } else {
                args.push(Arg::Scalar(self.expr()?));
            }
            if self.peek().is_none() {
                return Ok(args);
            }
            if !self.bump(',') {
                return Err(self.error_here("expected `,`"));
            }
        }
    }

    fn expr(&mut self) -> Result<f64> {
        let mut value = self.signed_atom()?;
        loop {
            if self.bump('*') {
                value *= self.signed_atom()?;
            } else if self.bump('/') {
                value /= self.signed_atom()?;
            } else {
                return Ok(value);
            }
        }
    }

    fn signed_atom(&mut self) -> Result<f64> {
        if self.bump('-') {
            return Ok(-self.signed_atom()?);
        }
        self.bump('+');
        self.skip_ws();
        let rest = self.rest();
        for name in ["pi", "π"] {
            if rest.starts_with(name) {
                self.pos += name.len();
                return Ok(PI);
            }
        }
        let mut end = 0;
        let bytes = rest.as_bytes();
        while end < bytes.len() {
            let c = bytes[end];
            let exp_sign =
                (c == b'-' || c == b'+') && end > 0 && matches!(bytes[end - 1], b'e' | b'E');
            if c.is_ascii_digit() || c == b'.' || c == b'e' || c == b'E' || exp_sign {
                end += 1;
            } else {
                break;
            }
        }
        let token = &rest[..end];
        match token.parse::<f64>() {
            Ok(v) if v.is_finite() => {
                self.pos += end;
                Ok(v)
            }
            _ => Err(self.error_here("expected a number")),
        }
    }
}
