//! SVG 1.1 drawings. Coordinates are exact rationals printed as decimals
//! with 30 significant digits; the y axis is flipped so up is up.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use sepline_core::geometry::{rat, ConvexPolygon, DirectedLine, Point2, Rational};
use sepline_core::instances::{CertificateFile, Instance};
use sepline_core::Error;

const SIGNIFICANT_DIGITS: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderStyle {
    /// Stroke widths as fractions of the larger viewport side.
    pub set_stroke: Rational,
    pub cover_stroke: Rational,
    pub line_stroke: Rational,
    pub palette: Vec<&'static str>,
    /// Palette index for plain sets, the certified pair, separated sets,
    /// cover outlines and the witness line.
    pub plain: usize,
    pub pair: usize,
    pub separated: usize,
    pub cover: usize,
    pub witness: usize,
    /// Margin around the drawing as a fraction of its size; at least zero.
    pub padding: Rational,
}

impl Default for RenderStyle {
    fn default() -> Self {
        Self {
            set_stroke: Rational::new(1.into(), 500.into()),
            cover_stroke: Rational::new(1.into(), 800.into()),
            line_stroke: Rational::new(1.into(), 300.into()),
            palette: vec!["#9db4c0", "#e07a5f", "#81b29a", "#3d405b", "#c0392b"],
            plain: 0,
            pair: 1,
            separated: 2,
            cover: 3,
            witness: 4,
            padding: Rational::new(1.into(), 10.into()),
        }
    }
}

/// `r` in plain decimal notation, truncated to `digits` significant digits.
pub fn decimal(r: &Rational, digits: usize) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    if r.is_negative() {
        out.push('-');
    }
    let den = r.denom().clone();
    let mut rem = r.numer().abs();
    let int = &rem / &den;
    rem -= &int * &den;
    let mut left = digits;
    if int.is_zero() {
        out.push('0');
    } else {
        let s = int.to_string();
        left = left.saturating_sub(s.len());
        out.push_str(&s);
    }
    let mut frac = String::new();
    let mut started = !int.is_zero();
    while !rem.is_zero() && left > 0 {
        rem *= BigInt::from(10);
        let d = &rem / &den;
        rem -= &d * &den;
        let d = d.to_string();
        if started || d != "0" {
            started = true;
            left -= 1;
        }
        frac.push_str(&d);
    }
    let frac = frac.trim_end_matches('0');
    if !frac.is_empty() {
        out.push('.');
        out.push_str(frac);
    }
    if out == "-0" {
        out = "0".into();
    }
    out
}

struct View {
    x0: Rational,
    y0: Rational,
    x1: Rational,
    y1: Rational,
}

impl View {
    fn around(polys: &[&ConvexPolygon], padding: &Rational) -> Self {
        let mut pts = polys.iter().flat_map(|p| p.vertices().iter());
        let first = pts.next().cloned().unwrap_or_else(|| Point2::from_i64(0, 0));
        let (mut x0, mut y0, mut x1, mut y1) = (first.x.clone(), first.y.clone(), first.x.clone(), first.y);
        for p in pts {
            x0 = x0.min(p.x.clone());
            x1 = x1.max(p.x.clone());
            y0 = y0.min(p.y.clone());
            y1 = y1.max(p.y.clone());
        }
        let mut size = (&x1 - &x0).max(&y1 - &y0);
        if size.is_zero() {
            size = rat(1);
        }
        let pad = padding * &size;
        Self { x0: x0 - &pad, y0: y0 - &pad, x1: x1 + &pad, y1: y1 + pad }
    }

    fn size(&self) -> Rational {
        (&self.x1 - &self.x0).max(&self.y1 - &self.y0)
    }

    fn x(&self, x: &Rational) -> String {
        decimal(x, SIGNIFICANT_DIGITS)
    }

    fn y(&self, y: &Rational) -> String {
        decimal(&-y, SIGNIFICANT_DIGITS)
    }

    fn points(&self, p: &ConvexPolygon) -> String {
        p.vertices().iter().map(|v| format!("{},{}", self.x(&v.x), self.y(&v.y))).collect::<Vec<_>>().join(" ")
    }

    /// Endpoints of `l` on the borders of the view, in the direction it
    /// spans more steeply.
    fn chord(&self, l: &DirectedLine) -> (Point2, Point2) {
        let a = Rational::from_integer(l.a().clone());
        let b = Rational::from_integer(l.b().clone());
        let c = Rational::from_integer(l.c().clone());
        if b.abs() >= a.abs() {
            let y = |x: &Rational| (&c - &a * x) / &b;
            (Point2::new(self.x0.clone(), y(&self.x0)), Point2::new(self.x1.clone(), y(&self.x1)))
        } else {
            let x = |y: &Rational| (&c - &b * y) / &a;
            (Point2::new(x(&self.y0), self.y0.clone()), Point2::new(x(&self.y1), self.y1.clone()))
        }
    }
}

pub fn render_svg(
    inst: &Instance,
    cert: Option<&CertificateFile>,
    cover: &[ConvexPolygon],
    style: &RenderStyle,
) -> Result<String, Error> {
    if style.padding < rat(0) {
        return Err(Error::InvalidInput("padding must be non-negative".into()));
    }
    let colour = |k: usize| style.palette.get(k).copied().unwrap_or("#000000");
    let all: Vec<&ConvexPolygon> = inst.sets.iter().chain(cover).collect();
    let view = View::around(&all, &style.padding);
    let size = view.size();
    let width = |f: &Rational| decimal(&(f * &size), SIGNIFICANT_DIGITS);

    let (pair, separated, witness) = match cert {
        Some(c) => {
            let (a, b) = c.pair_indices(inst.len())?;
            (vec![a, b], c.separated.iter().map(|k| k - 1).collect::<Vec<_>>(), Some(c.witness_line.to_line()?))
        }
        None => (vec![], vec![], None),
    };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        view.x(&view.x0),
        view.y(&view.y1),
        decimal(&(&view.x1 - &view.x0), SIGNIFICANT_DIGITS),
        decimal(&(&view.y1 - &view.y0), SIGNIFICANT_DIGITS),
    );
    let _ = writeln!(s, "  <title>{}</title>", escape(&inst.label));
    let _ = writeln!(s, r#"  <g id="sets" stroke="{}" stroke-width="{}">"#, colour(style.cover), width(&style.set_stroke));
    for (k, p) in inst.sets.iter().enumerate() {
        let fill = if pair.contains(&k) {
            colour(style.pair)
        } else if separated.contains(&k) {
            colour(style.separated)
        } else {
            colour(style.plain)
        };
        let _ = writeln!(s, r#"    <polygon id="set-{}" points="{}" fill="{fill}"/>"#, k + 1, view.points(p));
    }
    let _ = writeln!(s, "  </g>");
    if !cover.is_empty() {
        let _ = writeln!(
            s,
            r#"  <g id="cover" fill="none" stroke="{}" stroke-width="{}" stroke-dasharray="{} {}">"#,
            colour(style.cover),
            width(&style.cover_stroke),
            width(&(&style.cover_stroke * rat(4))),
            width(&(&style.cover_stroke * rat(2))),
        );
        for (k, p) in cover.iter().enumerate() {
            let _ = writeln!(s, r#"    <polygon id="cover-{}" points="{}"/>"#, k + 1, view.points(p));
        }
        let _ = writeln!(s, "  </g>");
    }
    if let Some(l) = witness {
        let (p, q) = view.chord(&l);
        let _ = writeln!(
            s,
            r#"  <line id="witness" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="{}"/>"#,
            view.x(&p.x),
            view.y(&p.y),
            view.x(&q.x),
            view.y(&q.y),
            colour(style.witness),
            width(&style.line_stroke),
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
