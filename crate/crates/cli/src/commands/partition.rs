//! `selmer partition`: draw the time-1 partition of B² into the cells
//! B(1)..B(k_max) and, beside it, the nested branch images S B(k).
//! Vertices are computed exactly; the SVG coordinates are correctly
//! rounded decimals of exact rationals, so output is deterministic.

use crate::{emit, CliError};
use selmer_core::geometry::Point2;
use selmer_core::maps::{msa_cylinder_image_vertices, msa_cylinder_vertices};
use selmer_core::rational::{decimal_string, format_rational, Rational};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

const PALETTE: [&str; 10] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac",
];

pub fn run(k_max: u64, out: &Path) -> Result<(), CliError> {
    if k_max < 1 {
        return Err(CliError::usage("k-max must be >= 1"));
    }
    let svg_path: PathBuf = out.with_extension("svg");
    let csv_path: PathBuf = out.with_extension("csv");
    emit(&Some(svg_path.clone()), &render_svg(k_max))?;
    emit(&Some(csv_path.clone()), &render_csv(k_max))?;
    println!("wrote {} and {}", svg_path.display(), csv_path.display());
    Ok(())
}

/// Cell vertices in drawing order (a simple quadrilateral; for k = 1 the
/// first and third vertices coincide and the path degenerates to the
/// triangle).
fn cell_polygon(k: u64) -> Vec<Point2> {
    let v = msa_cylinder_vertices(k, 2);
    // listed order: (1,1/k), (1,1/(k+1)), (1/k,1/k), (1/(k+1),1/(k+1));
    // drawing order: right-top, right-bottom, diag-bottom, diag-top
    vec![
        (v[0][0].clone(), v[0][1].clone()),
        (v[1][0].clone(), v[1][1].clone()),
        (v[3][0].clone(), v[3][1].clone()),
        (v[2][0].clone(), v[2][1].clone()),
    ]
}

fn image_polygon(k: u64) -> Vec<Point2> {
    let v = msa_cylinder_image_vertices(k);
    // (1/k,0), (1/(k+1),1/(k+1)), (1,0), (1,1) -> hull drawing order
    vec![v[0].clone(), v[2].clone(), v[3].clone(), v[1].clone()]
}

struct Panel {
    ox: Rational,
    oy: Rational,
    scale: Rational,
}

impl Panel {
    fn map(&self, p: &Point2) -> (String, String) {
        let x = &self.ox + &p.0 * &self.scale;
        let y = &self.oy + (Rational::from_integer(1.into()) - &p.1) * &self.scale;
        (decimal_string(&x, 2), decimal_string(&y, 2))
    }

    fn path(&self, pts: &[Point2]) -> String {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.map(p);
            let cmd = if i == 0 { 'M' } else { 'L' };
            write!(d, "{cmd}{x} {y} ").unwrap();
        }
        d.push('Z');
        d
    }

    fn centroid_label(&self, pts: &[Point2], label: &str, size: u32) -> String {
        let n = Rational::from_integer((pts.len() as i64).into());
        let cx: Rational = pts.iter().map(|p| p.0.clone()).sum::<Rational>() / n.clone();
        let cy: Rational = pts.iter().map(|p| p.1.clone()).sum::<Rational>() / n;
        let (x, y) = self.map(&(cx, cy));
        format!(
            "<text x=\"{x}\" y=\"{y}\" font-size=\"{size}\" text-anchor=\"middle\" \
             font-family=\"sans-serif\" fill=\"#333\">{label}</text>"
        )
    }
}

fn render_svg(k_max: u64) -> String {
    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1240\" height=\"680\" \
         viewBox=\"0 0 1240 680\">"
    )
    .unwrap();
    writeln!(svg, "<rect width=\"1240\" height=\"680\" fill=\"white\"/>").unwrap();

    let left = Panel {
        ox: Rational::from_integer(40.into()),
        oy: Rational::from_integer(60.into()),
        scale: Rational::from_integer(560.into()),
    };
    let right = Panel {
        ox: Rational::from_integer(660.into()),
        oy: Rational::from_integer(60.into()),
        scale: Rational::from_integer(560.into()),
    };

    writeln!(
        svg,
        "<text x=\"320\" y=\"40\" font-size=\"20\" text-anchor=\"middle\" \
         font-family=\"sans-serif\">time-1 partition of B^2 into cells B(k)</text>"
    )
    .unwrap();
    writeln!(
        svg,
        "<text x=\"940\" y=\"40\" font-size=\"20\" text-anchor=\"middle\" \
         font-family=\"sans-serif\">nested branch images S B(k)</text>"
    )
    .unwrap();

    let triangle: Vec<Point2> = vec![
        (Rational::from_integer(0.into()), Rational::from_integer(0.into())),
        (Rational::from_integer(1.into()), Rational::from_integer(0.into())),
        (Rational::from_integer(1.into()), Rational::from_integer(1.into())),
    ];

    // left panel: cells B(1)..B(k_max)
    for k in 1..=k_max {
        let pts = cell_polygon(k);
        let color = PALETTE[((k - 1) % PALETTE.len() as u64) as usize];
        writeln!(
            svg,
            "<path d=\"{}\" fill=\"{}\" fill-opacity=\"0.55\" stroke=\"#333\" \
             stroke-width=\"1\"/>",
            left.path(&pts),
            color
        )
        .unwrap();
        let size = if k <= 3 { 22 } else { 12 };
        writeln!(svg, "{}", left.centroid_label(&pts, &k.to_string(), size)).unwrap();
    }
    writeln!(
        svg,
        "<path d=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>",
        left.path(&triangle)
    )
    .unwrap();

    // right panel: images S B(k), largest first so smaller ones sit on top
    for k in (1..=k_max).rev() {
        let pts = image_polygon(k);
        let color = PALETTE[((k - 1) % PALETTE.len() as u64) as usize];
        writeln!(
            svg,
            "<path d=\"{}\" fill=\"{}\" fill-opacity=\"0.35\" stroke=\"{}\" \
             stroke-width=\"1.5\"/>",
            right.path(&pts),
            color,
            color
        )
        .unwrap();
    }
    writeln!(
        svg,
        "<path d=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>",
        right.path(&triangle)
    )
    .unwrap();
    writeln!(svg, "</svg>").unwrap();
    svg
}

fn render_csv(k_max: u64) -> String {
    let mut out = String::new();
    writeln!(out, "kind,k,vertex,x1,x2").unwrap();
    for k in 1..=k_max {
        for (i, v) in msa_cylinder_vertices(k, 2).iter().enumerate() {
            writeln!(
                out,
                "cell,{k},{i},{},{}",
                format_rational(&v[0]),
                format_rational(&v[1])
            )
            .unwrap();
        }
    }
    for k in 1..=k_max {
        for (i, (x, y)) in msa_cylinder_image_vertices(k).iter().enumerate() {
            writeln!(out, "image,{k},{i},{},{}", format_rational(x), format_rational(y)).unwrap();
        }
    }
    out
}
