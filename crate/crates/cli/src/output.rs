use equipart::{ChordEvaluator, Curve, OracleResult, Solution, Weights};
use serde::{Deserialize, Serialize};

/// Output document of `solve`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveDocument {
    pub status: String,
    pub method: Option<String>,
    pub iterations: usize,
    pub residual: f64,
    pub t: Vec<f64>,
    pub chords: Vec<f64>,
    pub alphas: Vec<f64>,
    pub zero_chain_witness: Option<Vec<f64>>,
}

impl SolveDocument {
    pub fn new(solution: &Solution, w: &Weights) -> Self {
        let r = &solution.report;
        SolveDocument {
            status: r.status.as_str().to_string(),
            method: r.method.map(|m| m.as_str().to_string()),
            iterations: r.iterations,
            residual: r.residual,
            t: solution.partition.t().to_vec(),
            chords: solution.partition.chords().to_vec(),
            alphas: w.alpha().to_vec(),
            zero_chain_witness: r.zero_chain_witness.clone(),
        }
    }
}

/// Output document of `oracle`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleDocument {
    pub t_star: Vec<f64>,
    pub t: Vec<f64>,
    pub chords: Vec<f64>,
    pub residual_star: f64,
    pub grid_m: usize,
    pub evaluated_count: u128,
    pub degenerate: bool,
    pub alphas: Vec<f64>,
}

impl OracleDocument {
    pub fn new(ev: &ChordEvaluator, r: &OracleResult, w: &Weights) -> Self {
        let t = r.t_star.breakpoints();
        let chords = t
            .windows(2)
            .map(|p| ev.chord_unchecked(p[0], p[1]))
            .collect();
        OracleDocument {
            t_star: r.t_star.as_slice().to_vec(),
            t,
            chords,
            residual_star: r.residual_star,
            grid_m: r.grid_m,
            evaluated_count: r.evaluated_count,
            degenerate: r.degenerate,
            alphas: w.alpha().to_vec(),
        }
    }
}

/// Output document of `check-zero-chain`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroChainDocument {
    pub found: bool,
    pub witness: Option<Vec<f64>>,
    pub n: usize,
    pub eps: f64,
    pub grid_m: usize,
}

#[derive(Debug, Clone, Serialize)]
pub(crate) struct LemmaRow {
    pub n: usize,
    pub tau: Vec<usize>,
    pub map: String,
    pub min_displacement: f64,
}

#[derive(Debug, Serialize)]
pub(crate) struct LemmaDocument {
    pub grid_density: usize,
    pub all_positive: bool,
    pub results: Vec<LemmaRow>,
}

pub(crate) fn to_json<T: Serialize>(doc: &T) -> Result<String, String> {
    let mut s = serde_json::to_string_pretty(doc).map_err(|e| e.to_string())?;
    s.push('\n');
    Ok(s)
}

fn csv_finish(w: csv::Writer<Vec<u8>>) -> Result<String, String> {
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

/// One row per breakpoint; `chord` is the chord ending at that breakpoint.
pub(crate) fn breakpoints_csv(t: &[f64], chords: &[f64]) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["index", "t", "chord"])
        .map_err(|e| e.to_string())?;
    for (i, ti) in t.iter().enumerate() {
        let chord = if i == 0 {
            String::new()
        } else {
            chords.get(i - 1).map(f64::to_string).unwrap_or_default()
        };
        w.write_record([i.to_string(), ti.to_string(), chord])
            .map_err(|e| e.to_string())?;
    }
    csv_finish(w)
}

pub(crate) fn lemma_csv(rows: &[LemmaRow]) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "tau", "map", "min_displacement"])
        .map_err(|e| e.to_string())?;
    for r in rows {
        let tau: Vec<String> = r.tau.iter().map(usize::to_string).collect();
        w.write_record([
            r.n.to_string(),
            tau.join(" "),
            r.map.clone(),
            r.min_displacement.to_string(),
        ])
        .map_err(|e| e.to_string())?;
    }
    csv_finish(w)
}

const SVG_SIZE: f64 = 512.0;
const SVG_MARGIN: f64 = 32.0;
const SVG_SAMPLES: usize = 512;

/// Planar drawing of the curve, its chords and breakpoints.
pub(crate) fn svg(curve: &Curve, t: &[f64], caption: &str) -> Result<String, String> {
    if curve.dim() != 2 {
        return Err(format!(
            "svg output needs a planar curve, this one has dimension {}",
            curve.dim()
        ));
    }
    let planar = |s: f64| {
        curve
            .eval(s)
            .map(|p| (p.coords()[0], p.coords()[1]))
            .map_err(|e| e.to_string())
    };
    let path: Vec<(f64, f64)> = (0..SVG_SAMPLES)
        .map(|j| planar(j as f64 / (SVG_SAMPLES - 1) as f64))
        .collect::<Result<_, _>>()?;
    let marks: Vec<(f64, f64)> = t.iter().map(|&s| planar(s)).collect::<Result<_, _>>()?;

    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in path.iter().chain(&marks) {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let k = (SVG_SIZE - 2.0 * SVG_MARGIN) / span;
    let map = |(x, y): (f64, f64)| {
        (
            SVG_MARGIN + (x - x0) * k,
            SVG_SIZE - SVG_MARGIN - (y - y0) * k,
        )
    };

    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n",
        s = SVG_SIZE
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    let pts: Vec<String> = path
        .iter()
        .map(|&p| {
            let (x, y) = map(p);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    out.push_str(&format!(
        "<polyline fill=\"none\" stroke=\"#888\" stroke-width=\"1.5\" points=\"{}\"/>\n",
        pts.join(" ")
    ));
    for pair in marks.windows(2) {
        let (ax, ay) = map(pair[0]);
        let (bx, by) = map(pair[1]);
        out.push_str(&format!(
            "<line x1=\"{ax:.3}\" y1=\"{ay:.3}\" x2=\"{bx:.3}\" y2=\"{by:.3}\" stroke=\"#c33\" stroke-width=\"1.5\"/>\n"
        ));
    }
    for &p in &marks {
        let (x, y) = map(p);
        out.push_str(&format!(
            "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"4\" fill=\"#24c\"/>\n"
        ));
    }
    out.push_str(&format!(
        "<text x=\"{m}\" y=\"{y}\" font-family=\"monospace\" font-size=\"12\">{}</text>\n",
        escape(caption),
        m = SVG_MARGIN,
        y = SVG_MARGIN / 2.0 + 4.0
    ));
    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use equipart::curve::make_builtin_curve;

    #[test]
    fn breakpoint_rows() {
        let s = breakpoints_csv(&[0.0, 0.25, 1.0], &[0.5, 1.5]).unwrap();
        assert_eq!(s, "index,t,chord\n0,0,\n1,0.25,0.5\n2,1,1.5\n");
    }

    #[test]
    fn caption_is_escaped() {
        let c = make_builtin_curve("segment((0,0),(1,1))").unwrap();
        let s = svg(&c, &[0.0, 1.0], "a<b & c").unwrap();
        assert!(s.contains("a&lt;b &amp; c"));
        assert!(s.ends_with("</svg>\n"));
    }

    #[test]
    fn json_ends_with_newline() {
        let doc = ZeroChainDocument {
            found: false,
            witness: None,
            n: 2,
            eps: 1e-9,
            grid_m: 101,
        };
        let s = to_json(&doc).unwrap();
        assert!(s.ends_with("}\n"));
        assert_eq!(serde_json::from_str::<ZeroChainDocument>(&s).unwrap(), doc);
    }
}
