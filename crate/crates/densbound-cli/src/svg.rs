//! SVG rendering of a planar body: boundary, the three radius circles and
//! probe points colored by normalized density.

use densbound::geometry::Piece2;
use densbound::{Body2, VerificationReport};

use std::fmt::Write;

fn fmt(v: f64) -> String {
    format!("{:.6}", v)
}

pub fn render(body: &Body2, verification: Option<&VerificationReport>) -> String {
    let radii = body.radii();
    let m = radii.outer() * 1.2;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="640" height="640">"#,
        fmt(-m),
        fmt(-m),
        fmt(2.0 * m),
        fmt(2.0 * m)
    );
    // Flip the y axis so the picture uses mathematical orientation.
    let _ = writeln!(svg, r#"<g transform="scale(1,-1)">"#);

    let stroke = radii.outer() / 150.0;
    // Outer and inner radius circles about the origin.
    let _ = writeln!(
        svg,
        r##"<circle cx="0" cy="0" r="{}" fill="none" stroke="#888888" stroke-width="{}" stroke-dasharray="{}"/>"##,
        fmt(radii.outer()),
        fmt(stroke),
        fmt(4.0 * stroke)
    );
    let _ = writeln!(
        svg,
        r##"<circle cx="0" cy="0" r="{}" fill="none" stroke="#bbaa44" stroke-width="{}" stroke-dasharray="{}"/>"##,
        fmt(radii.inner()),
        fmt(stroke),
        fmt(4.0 * stroke)
    );
    // One osculating circle of radius R_C at the first hull vertex.
    let v0 = body.generators()[0];
    let _ = writeln!(
        svg,
        r##"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="#88aadd" stroke-width="{}" stroke-dasharray="{}"/>"##,
        fmt(v0.x()),
        fmt(v0.y()),
        fmt(radii.curvature()),
        fmt(stroke),
        fmt(2.0 * stroke)
    );

    // Boundary as a sampled closed path (arcs flattened at ~1.5 degrees).
    let param = body.boundary_param();
    let mut d = String::new();
    let mut first = true;
    for piece in param.pieces() {
        match piece {
            Piece2::Seg { a, b, .. } => {
                if first {
                    let _ = write!(d, "M {} {} ", fmt(a.x()), fmt(a.y()));
                    first = false;
                }
                let _ = write!(d, "L {} {} ", fmt(b.x()), fmt(b.y()));
            }
            Piece2::Arc {
                center,
                start,
                sweep,
                ..
            } => {
                let r = param.rounding();
                let steps = (sweep / 0.026).ceil().max(2.0) as usize;
                for j in 0..=steps {
                    let theta = start + sweep * j as f64 / steps as f64;
                    let x = center.x() + r * theta.cos();
                    let y = center.y() + r * theta.sin();
                    if first {
                        let _ = write!(d, "M {} {} ", fmt(x), fmt(y));
                        first = false;
                    } else {
                        let _ = write!(d, "L {} {} ", fmt(x), fmt(y));
                    }
                }
            }
        }
    }
    d.push('Z');
    let _ = writeln!(
        svg,
        r##"<path d="{}" fill="#eef4fa" fill-opacity="0.6" stroke="#224466" stroke-width="{}"/>"##,
        d,
        fmt(1.5 * stroke)
    );

    // Origin marker.
    let _ = writeln!(
        svg,
        r##"<circle cx="0" cy="0" r="{}" fill="#224466"/>"##,
        fmt(1.5 * stroke)
    );

    // Probe points colored by normalized density.
    if let Some(rep) = verification {
        for p in &rep.probes {
            let normalized = p.density * rep.sphere_area;
            let color = if p.zero_hits {
                "#999999"
            } else if normalized < 1.0 {
                "#cc3333"
            } else {
                "#2e8b57"
            };
            let _ = writeln!(
                svg,
                r#"<circle cx="{}" cy="{}" r="{}" fill="{}"><title>normalized density {}</title></circle>"#,
                fmt(p.point[0]),
                fmt(p.point[1]),
                fmt(3.0 * stroke),
                color,
                fmt(normalized)
            );
        }
    }

    let _ = writeln!(svg, "</g>");
    let _ = writeln!(
        svg,
        r##"<text x="{}" y="{}" font-size="{}" fill="#333333">R_O {} | R_I {} | R_C {}</text>"##,
        fmt(-m * 0.98),
        fmt(-m * 0.92),
        fmt(m * 0.05),
        fmt(radii.outer()),
        fmt(radii.inner()),
        fmt(radii.curvature())
    );
    svg.push_str("</svg>\n");
    svg
}
