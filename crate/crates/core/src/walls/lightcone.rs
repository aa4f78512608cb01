use std::fmt::Write as _;

use serde::Serialize;

use crate::chain::{DisorderRealization, HalfTime, Parity, PhaseVector};
use crate::error::Result;

/// Column resolution of a lightcone grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum GridMode {
    /// One column per site, cell 1 when the site vector is nonzero.
    Site,
    /// One column per qubit, cell `0..=3` for `I, X, Z, Y`.
    Qubit,
}

/// Support of `u` at every half-step `0..=t2max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LightconeGrid {
    pub mode: GridMode,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub rows: Vec<Vec<u8>>,
    /// Site supports per row, used for the extent table.
    pub supports: Vec<Vec<usize>>,
}

/// Smallest arc of the ring covering `support`, as `(left, right, width)` with the arc
/// running from `left` to `right` in increasing site order mod `L`.
#[must_use]
pub fn support_arc(support: &[usize], l: usize) -> Option<(usize, usize, usize)> {
    let first = *support.first()?;
    let last = *support.last()?;
    let mut gap = (first + l - last, first, last);
    for w in support.windows(2) {
        if w[1] - w[0] > gap.0 {
            gap = (w[1] - w[0], w[1], w[0]);
        }
    }
    let width = l + 1 - gap.0;
    Some((gap.1, gap.2, width))
}

pub fn lightcone_grid(realization: &DisorderRealization, u0: &PhaseVector, t2max: u32, mode: GridMode) -> Result<LightconeGrid> {
    let g = realization.geometry();
    let mut rows = Vec::with_capacity(t2max as usize + 1);
    let mut supports = Vec::with_capacity(t2max as usize + 1);
    let mut u = realization.evolve(u0, HalfTime(0))?;
    for step in 0..=t2max {
        if step > 0 {
            realization.half_step(Parity::of_step(step - 1), &mut u);
        }
        let row = match mode {
            GridMode::Site => (0..g.l()).map(|x| u8::from(!u.site_is_zero(x))).collect(),
            GridMode::Qubit => (0..g.dim() / 2)
                .map(|q| u8::from(u.bits().get(2 * q)) | u8::from(u.bits().get(2 * q + 1)) << 1)
                .collect(),
        };
        rows.push(row);
        supports.push(u.support());
    }
    Ok(LightconeGrid {
        mode,
        l: g.l(),
        n: g.n(),
        rows,
        supports,
    })
}

impl LightconeGrid {
    fn columns_per_site(&self) -> usize {
        match self.mode {
            GridMode::Site => 1,
            GridMode::Qubit => self.n,
        }
    }

    /// CSV with columns `t2,leftmost,rightmost,width`; empty fields for a zero row.
    #[must_use]
    pub fn extents_csv(&self) -> String {
        let mut s = String::from("t2,leftmost,rightmost,width\r\n");
        for (t2, sup) in self.supports.iter().enumerate() {
            match support_arc(sup, self.l) {
                Some((a, b, w)) => writeln!(s, "{t2},{a},{b},{w}\r").expect("string write"),
                None => writeln!(s, "{t2},,,0\r").expect("string write"),
            }
        }
        s
    }

    /// SVG 1.1 image: occupied cells black, wall bonds as red vertical rules.
    #[must_use]
    pub fn to_svg(&self, walls: &[usize]) -> String {
        const CELL: usize = 6;
        let cols = self.rows.first().map_or(0, Vec::len);
        let (w, h) = (cols * CELL, self.rows.len() * CELL);
        let mut s = String::new();
        writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).expect("string write");
        writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        )
        .expect("string write");
        writeln!(s, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#).expect("string write");
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    writeln!(
                        s,
                        r#"<rect x="{}" y="{}" width="{CELL}" height="{CELL}" fill="black"/>"#,
                        c * CELL,
                        r * CELL
                    )
                    .expect("string write");
                }
            }
        }
        let per = self.columns_per_site();
        for &x in walls {
            let xpos = (x + 1) * per * CELL;
            writeln!(s, r#"<line x1="{xpos}" y1="0" x2="{xpos}" y2="{h}" stroke="red" stroke-width="1"/>"#)
                .expect("string write");
        }
        s.push_str("</svg>\n");
        s
    }

    /// Plain PGM (P2): occupied 0, empty 255, empty cells right of a wall bond 128.
    #[must_use]
    pub fn to_pgm(&self, walls: &[usize]) -> String {
        let cols = self.rows.first().map_or(0, Vec::len);
        let per = self.columns_per_site();
        let rule: Vec<bool> = (0..cols).map(|c| c % per == 0 && walls.iter().any(|&x| (x + 1) % self.l == c / per)).collect();
        let mut s = format!("P2\n{cols} {}\n255\n", self.rows.len());
        for row in &self.rows {
            let line: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(c, &v)| match (v != 0, rule[c]) {
                    (true, _) => "0",
                    (false, true) => "128",
                    (false, false) => "255",
                })
                .map(str::to_string)
                .collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}
