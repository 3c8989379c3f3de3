//! CSV and SVG emitters for tile clouds.

use std::fmt::Write as _;
use std::io::Write;

use crate::CliError;
use ratile_core::tiles::{PointSource, TileCloud, TileKind};

pub fn kind_label(kind: TileKind) -> &'static str {
    match kind {
        TileKind::F => "F",
        TileKind::G => "G",
        TileKind::Srs => "srs",
        TileKind::Slice => "slice",
    }
}

/// Address column: a digit word, or the SRS node coordinates joined by `;`.
pub fn address_label(source: &PointSource) -> String {
    match source {
        PointSource::Address(a) => a.encode(),
        PointSource::Srs(z) => z.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(";"),
    }
}

/// Writes `kind,translate,address,arch_1..arch_n,surrogate,radius`, one row per point.
pub fn write_csv<W: Write>(out: W, clouds: &[TileCloud], dim: usize) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::Internal(format!("writing CSV: {e}"));
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["kind".to_string(), "translate".to_string(), "address".to_string()];
    header.extend((1..=dim).map(|i| format!("arch_{i}")));
    header.push("surrogate".to_string());
    header.push("radius".to_string());
    w.write_record(&header).map_err(io)?;
    for cloud in clouds {
        let kind = kind_label(cloud.kind);
        let translate = cloud.translate_label();
        let radius = cloud.cell_radius.map_or(String::new(), |r| r.to_string());
        for p in &cloud.points {
            let mut row = Vec::with_capacity(dim + 5);
            row.push(kind.to_string());
            row.push(translate.clone());
            row.push(address_label(&p.source));
            row.extend(p.arch.iter().map(|v| v.to_string()));
            row.push(p.surrogate.to_string());
            row.push(radius.clone());
            w.write_record(&row).map_err(io)?;
        }
    }
    w.flush().map_err(|e| CliError::Internal(format!("writing CSV: {e}")))?;
    Ok(())
}

/// One point set drawn in a single color.
#[derive(Clone, Debug, PartialEq)]
pub struct Layer {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// Drawing extent `[x_min, x_max] × [y_min, y_max]`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Extent {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Extent {
    pub fn of(layers: &[Layer]) -> Option<Self> {
        let mut pts = layers.iter().flat_map(|l| l.points.iter());
        let &(x, y) = pts.next()?;
        let mut e = Extent { x_min: x, x_max: x, y_min: y, y_max: y };
        for &(x, y) in pts {
            e.x_min = e.x_min.min(x);
            e.x_max = e.x_max.max(x);
            e.y_min = e.y_min.min(y);
            e.y_max = e.y_max.max(y);
        }
        Some(e)
    }
}

/// The planar coordinates drawn for a cloud: `(arch, surrogate)` in degree one, else the
/// first two archimedean coordinates.
pub fn layer_of(cloud: &TileCloud) -> Layer {
    let points = cloud
        .points
        .iter()
        .map(|p| if p.arch.len() == 1 { (p.arch[0], p.surrogate) } else { (p.arch[0], p.arch[1]) })
        .collect();
    Layer { label: cloud.translate_label(), points }
}

/// Deterministic color for layer `i`: hues spaced by the golden angle.
pub fn layer_color(i: usize) -> String {
    let hue = (i as f64 * 137.507_764_050_037_85) % 360.0;
    format!("hsl({hue:.1},65%,45%)")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Renders layers as point clouds, one `<g>` per layer, in a 800-wide canvas.
pub fn render_svg(title: &str, layers: &[Layer]) -> String {
    let ext = Extent::of(layers).unwrap_or(Extent { x_min: -1.0, x_max: 1.0, y_min: -1.0, y_max: 1.0 });
    let pad = 0.05 * (ext.x_max - ext.x_min).max(ext.y_max - ext.y_min).max(1e-9);
    let (x0, x1) = (ext.x_min - pad, ext.x_max + pad);
    let (y0, y1) = (ext.y_min - pad, ext.y_max + pad);
    let width = 800.0;
    let height = (width * (y1 - y0) / (x1 - x0)).clamp(200.0, 1600.0);
    let sx = width / (x1 - x0);
    let sy = height / (y1 - y0);
    let dot = 1.2;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" data-extent="{} {} {} {}" data-layers="{}">"#,
        ext.x_min,
        ext.x_max,
        ext.y_min,
        ext.y_max,
        layers.len()
    );
    let _ = writeln!(s, "<title>{}</title>", escape(title));
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, layer) in layers.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<g class="tile" data-translate="{}" data-count="{}" fill="{}">"#,
            escape(&layer.label),
            layer.points.len(),
            layer_color(i)
        );
        for &(x, y) in &layer.points {
            let px = (x - x0) * sx;
            let py = height - (y - y0) * sy;
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{dot}" height="{dot}"/>"#,
                px - dot / 2.0,
                py - dot / 2.0
            );
        }
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}
