//! Console summaries of CSV outputs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::stats::{linear_fit, median, power_law_fit};

struct Table {
    headers: Vec<String>,
    /// `(line number, fields)`.
    rows: Vec<(u64, Vec<String>)>,
}

impl Table {
    fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
        let at = |e: csv::Error| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            Error::Parse(format!("{}: line {line}: {e}", path.display()))
        };
        let headers = reader.headers().map_err(at)?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for rec in reader.records() {
            let rec = rec.map_err(at)?;
            let line = rec.position().map(|p| p.line()).unwrap_or(0);
            rows.push((line, rec.iter().map(str::to_string).collect()));
        }
        Ok(Self { headers, rows })
    }

    fn has(&self, name: &str) -> bool {
        self.headers.iter().any(|h| h == name)
    }

    fn column<T: FromStr>(&self, path: &Path, name: &str) -> Result<Vec<T>> {
        let i = self
            .headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Parse(format!("{}: missing column {name}", path.display())))?;
        self.rows
            .iter()
            .map(|(line, fields)| {
                fields[i].parse().map_err(|_| {
                    Error::Parse(format!("{}: line {line}: bad {name} value {:?}", path.display(), fields[i]))
                })
            })
            .collect()
    }
}

fn fmt_fit(label: &str, fit: Option<crate::stats::LinearFit>) -> String {
    match fit {
        Some(f) => format!("  {label} = {:.3} (R² = {:.3})\n", f.slope, f.r_squared),
        None => format!("  {label}: not enough sizes to fit\n"),
    }
}

/// Summary text for one CSV file.
pub fn summarize(path: &Path) -> Result<String> {
    let t = Table::read(path)?;
    let mut out = format!("{}: {} rows\n", path.display(), t.rows.len());
    if t.rows.is_empty() {
        return Ok(out);
    }
    if t.has("steps_to_clear") {
        let ls: Vec<usize> = t.column(path, "L")?;
        let dynamics: Vec<String> = t.column(path, "dynamics")?;
        let steps: Vec<f64> = t.column(path, "steps_to_clear")?;
        let mut groups: BTreeMap<(String, usize), Vec<f64>> = BTreeMap::new();
        for ((d, l), s) in dynamics.into_iter().zip(ls).zip(steps) {
            groups.entry((d, l)).or_default().push(s);
        }
        let mut fits: BTreeMap<String, (Vec<f64>, Vec<f64>)> = BTreeMap::new();
        for ((d, l), v) in &groups {
            let med = median(v).unwrap_or(0.0);
            let max = v.iter().cloned().fold(0.0, f64::max);
            writeln!(out, "  {d} L={l}: trials={} median={med} max={max} max/L={:.3}", v.len(), max / *l as f64).ok();
            let e = fits.entry(d.clone()).or_default();
            e.0.push(*l as f64);
            e.1.push(med);
        }
        for (d, (xs, ys)) in fits {
            let fit = if ys.iter().all(|&y| y > 0.0) { power_law_fit(&xs, &ys) } else { None };
            out.push_str(&fmt_fit(&format!("{d} median exponent"), fit));
        }
    } else if t.has("R_star") {
        let ls: Vec<f64> = t.column(path, "L")?;
        let rs: Vec<i64> = t.column(path, "R")?;
        let ok: Vec<bool> = t.column(path, "all_correctable")?;
        let stars: Vec<f64> = t.column(path, "R_star")?;
        let mut per_l: BTreeMap<i64, (f64, Vec<(i64, bool)>)> = BTreeMap::new();
        for i in 0..ls.len() {
            let e = per_l.entry(ls[i] as i64).or_insert((stars[i], Vec::new()));
            e.1.push((rs[i], ok[i]));
        }
        let mut violations = 0;
        for (l, (star, mut rows)) in per_l.clone() {
            rows.sort();
            violations += rows.windows(2).filter(|w| w[1].1 && !w[0].1).count();
            writeln!(out, "  L={l}: R*={star}").ok();
        }
        writeln!(out, "  monotonicity violations: {violations}").ok();
        let xs: Vec<f64> = per_l.keys().map(|&l| l as f64).collect();
        let ys: Vec<f64> = per_l.values().map(|v| v.0).collect();
        out.push_str(&fmt_fit("R* slope vs L", linear_fit(&xs, &ys)));
    } else if t.has("D_full") {
        let hits: Vec<bool> = t.column(path, "cone_hits_A")?;
        let d: Vec<i64> = t.column(path, "D_full")?;
        let violations = hits.iter().zip(&d).filter(|(h, d)| !**h && **d != 0).count();
        let encoded = d.iter().filter(|&&x| x == 2).count();
        writeln!(out, "  D_full = 2: {encoded}, cone misses A: {}", hits.iter().filter(|h| !**h).count()).ok();
        writeln!(out, "  dichotomy violations: {violations}").ok();
    } else if t.has("bound") {
        let h1: Vec<f64> = t.column(path, "H1")?;
        let h2: Vec<f64> = t.column(path, "H2")?;
        let bound: Vec<f64> = t.column(path, "bound")?;
        let eq5: Vec<f64> = t.column(path, "eq5_sum")?;
        let sums: Vec<f64> = h1.iter().zip(&h2).map(|(a, b)| a + b).collect();
        let mu = sums.iter().zip(&bound).filter(|(s, b)| **s < **b - 1e-9).count();
        let min = sums.iter().cloned().fold(f64::INFINITY, f64::min);
        let max5 = eq5.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        writeln!(out, "  min H1+H2 = {min:.6}, entropy bound violations: {mu}").ok();
        writeln!(out, "  max eq5_sum = {max5:.12}, violations: {}", eq5.iter().filter(|&&x| x > 1.0 + 1e-9).count())
            .ok();
    } else if t.has("mutual_info") {
        let disjoint: Vec<bool> = t.column(path, "cones_disjoint")?;
        let mi: Vec<f64> = t.column(path, "mutual_info")?;
        let violations = disjoint.iter().zip(&mi).filter(|(d, m)| **d && **m != 0.0).count();
        writeln!(
            out,
            "  disjoint cones: {}, max mutual_info = {}",
            disjoint.iter().filter(|d| **d).count(),
            mi.iter().cloned().fold(0.0, f64::max)
        )
        .ok();
        writeln!(out, "  correlated despite disjoint cones: {violations}").ok();
    }
    Ok(out)
}
