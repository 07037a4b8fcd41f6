//! Deterministic SVG pictures of planar complexes.
//!
//! Geometry stays exact until the last step: cells are clipped to the viewport
//! box as rational polyhedra and only the resulting vertices become floats.

use std::fmt::Write as _;

use tropgrob::polyhedra::{PolyhedralComplex, QPolyhedron, Row};
use tropgrob::{Error, Rational};

const SIZE: f64 = 400.0;
const PALETTE: [&str; 8] = ["#9ecae1", "#fdae6b", "#a1d99b", "#bcbddc", "#fc9272", "#c7e9c0", "#fdd0a2", "#dadaeb"];

/// How a complex is turned into a picture.
#[derive(Clone, Debug)]
pub struct RenderSpec {
    /// Quotient directions applied in order before drawing.
    pub quotient: Vec<Vec<Rational>>,
    pub labels: bool,
}

/// Quotients `cx` by its whole lineality space, one direction at a time.
pub fn project_lineality(cx: &PolyhedralComplex) -> Result<(PolyhedralComplex, Vec<Vec<Rational>>), Error> {
    let mut cur = cx.clone();
    let mut dirs = Vec::new();
    while let Some(d) = cur.lineality.first().cloned() {
        cur = cur.project_quotient(&d)?;
        dirs.push(d);
    }
    Ok((cur, dirs))
}

/// Projects modulo lineality and renders; fails unless the result is planar.
pub fn render_complex(cx: &PolyhedralComplex, labels: bool) -> Result<String, Error> {
    if cx.is_empty() {
        return render_svg(&PolyhedralComplex::empty(2), &RenderSpec { quotient: Vec::new(), labels });
    }
    let (_, dirs) = project_lineality(cx)?;
    render_svg(cx, &RenderSpec { quotient: dirs, labels })
}

struct Viewport {
    lo: [Rational; 2],
    span: Rational,
}

impl Viewport {
    fn fit(cx: &PolyhedralComplex) -> Self {
        let pts: Vec<&Vec<Rational>> = cx.cells.iter().flat_map(|c| c.vertices.iter()).collect();
        let mut lo = [Rational::zero(), Rational::zero()];
        let mut hi = lo.clone();
        for (i, p) in pts.iter().enumerate() {
            for k in 0..2 {
                if i == 0 || p[k] < lo[k] {
                    lo[k] = p[k].clone();
                }
                if i == 0 || p[k] > hi[k] {
                    hi[k] = p[k].clone();
                }
            }
        }
        let span = std::cmp::max(&hi[0] - &lo[0], &hi[1] - &lo[1]);
        let pad = std::cmp::max(&span / &Rational::from_int(2), Rational::one());
        let span = &span + &(&pad * &Rational::from_int(2));
        // centre the shorter side
        let lo = [0, 1].map(|k| {
            let mid = (&lo[k] + &hi[k]) / Rational::from_int(2);
            &mid - &(&span / &Rational::from_int(2))
        });
        Viewport { lo, span }
    }

    fn box_rows(&self) -> Vec<Row> {
        let mut rows = Vec::new();
        for k in 0..2 {
            let mut a = vec![Rational::zero(); 3];
            a[k] = Rational::one();
            a[2] = &self.lo[k] + &self.span;
            rows.push(a);
            let mut b = vec![Rational::zero(); 3];
            b[k] = -Rational::one();
            b[2] = -self.lo[k].clone();
            rows.push(b);
        }
        rows
    }

    fn map(&self, p: &[Rational]) -> (f64, f64) {
        let s = self.span.to_f64();
        let x = (&p[0] - &self.lo[0]).to_f64() / s * SIZE;
        let y = SIZE - (&p[1] - &self.lo[1]).to_f64() / s * SIZE;
        (x, y)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Clipped vertices in drawing order (counter-clockwise for polygons).
fn clipped(vp: &Viewport, c: &QPolyhedron) -> Vec<(f64, f64)> {
    let clip = c.restrict(&vp.box_rows(), &[]);
    let mut pts: Vec<(f64, f64)> = clip.vertices.iter().map(|v| vp.map(v)).collect();
    if pts.len() > 2 {
        let n = pts.len() as f64;
        let cx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let cy = pts.iter().map(|p| p.1).sum::<f64>() / n;
        pts.sort_by(|a, b| (a.1 - cy).atan2(a.0 - cx).total_cmp(&(b.1 - cy).atan2(b.0 - cx)));
    }
    pts
}

fn centroid(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len().max(1) as f64;
    (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n)
}

/// Renders a complex after applying the quotients of `spec`.
pub fn render_svg(cx: &PolyhedralComplex, spec: &RenderSpec) -> Result<String, Error> {
    let mut cur = cx.clone();
    for d in &spec.quotient {
        cur = cur.project_quotient(d)?;
    }
    if cur.ambient != 2 {
        return Err(Error::NotRenderable(cur.ambient));
    }
    let vp = Viewport::fit(&cur);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    out.push_str(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">\
         <path d=\"M0,0 L10,5 L0,10 z\" fill=\"#222\"/></marker></defs>\n",
    );
    let _ = writeln!(out, "<rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>");
    let (ox, oy) = vp.map(&[Rational::zero(), Rational::zero()]);
    if (0.0..=SIZE).contains(&ox) {
        let _ = writeln!(out, "<line class=\"axis\" x1=\"{ox:.3}\" y1=\"0\" x2=\"{ox:.3}\" y2=\"{SIZE}\" stroke=\"#ccc\" stroke-dasharray=\"4 3\"/>");
    }
    if (0.0..=SIZE).contains(&oy) {
        let _ = writeln!(out, "<line class=\"axis\" x1=\"0\" y1=\"{oy:.3}\" x2=\"{SIZE}\" y2=\"{oy:.3}\" stroke=\"#ccc\" stroke-dasharray=\"4 3\"/>");
    }
    let mut text = String::new();
    let mut shade = 0;
    let maximal = cur.maximal_indices();
    for dim in [2isize, 1, 0] {
        for (i, c) in cur.cells.iter().enumerate().filter(|(_, c)| c.dim() == dim) {
            let pts = clipped(&vp, c);
            if pts.is_empty() {
                continue;
            }
            match dim {
                2 => {
                    let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
                    let _ = writeln!(
                        out,
                        "<polygon class=\"cell\" points=\"{}\" fill=\"{}\" fill-opacity=\"0.6\" stroke=\"none\"/>",
                        coords.join(" "),
                        PALETTE[shade % PALETTE.len()]
                    );
                    shade += 1;
                }
                1 => {
                    let (a, b) = if c.vertices.is_empty() {
                        (pts[0], pts[pts.len() - 1])
                    } else {
                        let v = vp.map(&c.vertices[0]);
                        let far = pts.iter().copied().max_by(|p, q| {
                            let dp = (p.0 - v.0).hypot(p.1 - v.1);
                            let dq = (q.0 - v.0).hypot(q.1 - v.1);
                            dp.total_cmp(&dq)
                        });
                        (v, far.unwrap())
                    };
                    let arrow = if c.rays.is_empty() { "" } else { " marker-end=\"url(#arrow)\"" };
                    let _ = writeln!(
                        out,
                        "<line class=\"wall\" x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#222\" stroke-width=\"2\"{arrow}/>",
                        a.0, a.1, b.0, b.1
                    );
                }
                _ => {
                    let (x, y) = pts[0];
                    let _ = writeln!(out, "<circle class=\"vertex\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3.5\" fill=\"#222\"/>");
                }
            }
            if spec.labels && maximal.contains(&i) {
                if let Some(l) = &cur.labels[i] {
                    let (x, y) = centroid(&pts);
                    let _ = writeln!(
                        text,
                        "<text x=\"{x:.3}\" y=\"{y:.3}\" font-family=\"serif\" font-size=\"13\" text-anchor=\"middle\">{}</text>",
                        escape(l)
                    );
                }
            }
        }
    }
    out.push_str(&text);
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tropgrob::polyhedra::{linearity_complex, nonlinearity_locus, TropicalAffineFamily};

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&a| Rational::from_int(a)).collect()
    }

    fn line_family() -> TropicalAffineFamily {
        TropicalAffineFamily::new(vec![
            (Rational::zero(), q(&[1, 0])),
            (Rational::zero(), q(&[0, 1])),
            (Rational::zero(), q(&[0, 0])),
        ])
    }

    #[test]
    fn tropical_line_has_three_arrows() {
        let svg = render_complex(&nonlinearity_locus(&line_family()), true).unwrap();
        assert_eq!(svg.matches("marker-end").count(), 3);
        assert_eq!(svg.matches("class=\"vertex\"").count(), 1);
        assert_eq!(svg.matches("class=\"cell\"").count(), 0);
    }

    #[test]
    fn regions_are_shaded_and_output_is_stable() {
        let cx = linearity_complex(&line_family());
        let a = render_complex(&cx, true).unwrap();
        assert_eq!(a.matches("class=\"cell\"").count(), 3);
        assert_eq!(a.matches("class=\"wall\"").count(), 3);
        assert_eq!(a.matches("<text").count(), 3);
        assert_eq!(a, render_complex(&cx, true).unwrap());
    }

    #[test]
    fn empty_complex_is_an_empty_canvas() {
        let svg = render_complex(&PolyhedralComplex::empty(5), true).unwrap();
        assert_eq!(svg.matches("class=\"axis\"").count(), 2);
        assert!(!svg.contains("<polygon"));
    }

    #[test]
    fn three_dimensional_is_not_renderable() {
        let orthant: Vec<Row> = (0..3)
            .map(|k| {
                let mut r = vec![Rational::zero(); 4];
                r[k] = -Rational::one();
                r
            })
            .collect();
        let cx = PolyhedralComplex::from_cells(3, vec![(QPolyhedron::from_constraints(3, &orthant, &[]), None)]);
        assert!(matches!(render_complex(&cx, false), Err(Error::NotRenderable(3))));
    }
}
