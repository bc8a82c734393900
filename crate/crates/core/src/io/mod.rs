//! CSV for point sets and JSON for reports.
//!
//! Point-set files carry their metadata as `# key: value` lines, then a
//! header and one row per point. Exact coordinates are written as decimal
//! integer pairs `a_i, b_i` (the value `a + b√d`); the float columns `x_i`
//! hold the physical embedding for plotting and are checked on load.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{GroupElem, HeisElem, QuadInt};
use crate::cutproject::{Geometry, PointSet, Provenance};
use crate::error::{Error, Result};

fn exact_coords(g: &GroupElem) -> Result<Vec<&QuadInt>> {
    match g {
        GroupElem::Euclid(v) => Ok(v.iter().collect()),
        GroupElem::Heis(h) => Ok(vec![&h.x, &h.y, &h.z]),
        other => Err(Error::VariantMismatch(format!(
            "{} elements are not stored in point-set files",
            other.kind()
        ))),
    }
}

/// Serializes a point set; the output is byte-stable.
pub fn pointset_to_csv(p: &PointSet) -> Result<String> {
    let prov = p.provenance();
    let dim = p.geometry().dim();
    let mut s = String::new();
    writeln!(s, "# family: {}", prov.family_tag()).ok();
    writeln!(s, "# d: {}", p.d()).ok();
    if let Provenance::ModelSet { window, .. } = prov {
        writeln!(s, "# window: {}", serde_json::to_string(window.intervals())?).ok();
    }
    writeln!(s, "# enumRadius: {}", p.enum_radius()).ok();
    writeln!(s, "# coreRadius: {}", p.core_radius()).ok();
    writeln!(s, "# boundaryPoints: {}", p.boundary_points()).ok();
    writeln!(s, "# provenance: {}", serde_json::to_string(prov)?).ok();
    let mut header: Vec<String> = Vec::new();
    for i in 0..dim {
        header.push(format!("a{i}"));
        header.push(format!("b{i}"));
    }
    header.extend((0..dim).map(|i| format!("x{i}")));
    writeln!(s, "{}", header.join(",")).ok();
    for g in p.points() {
        let mut row: Vec<String> = Vec::new();
        for c in exact_coords(g)? {
            row.push(c.a().to_string());
            row.push(c.b().to_string());
        }
        row.extend(g.physical()?.iter().map(|x| format!("{x}")));
        writeln!(s, "{}", row.join(",")).ok();
    }
    Ok(s)
}

pub fn save_pointset(p: &PointSet, path: &Path) -> Result<()> {
    fs::write(path, pointset_to_csv(p)?)?;
    Ok(())
}

pub fn load_pointset(path: &Path) -> Result<PointSet> {
    let text = fs::read_to_string(path)?;
    pointset_from_csv(&text, &path.display().to_string())
}

struct Meta {
    d: Option<u32>,
    enum_radius: Option<f64>,
    core_radius: Option<f64>,
    boundary: usize,
    provenance: Option<Provenance>,
}

/// Parses the CSV form; `origin` names the source in diagnostics.
pub fn pointset_from_csv(text: &str, origin: &str) -> Result<PointSet> {
    let err = |line: usize, column: usize, msg: String| Error::Parse {
        path: origin.to_string(),
        line,
        column,
        msg,
    };
    let mut meta = Meta {
        d: None,
        enum_radius: None,
        core_radius: None,
        boundary: 0,
        provenance: None,
    };
    let mut body_start = 0;
    let mut offset = 0usize;
    let mut core_line = (1, 1);
    for (i, line) in text.lines().enumerate() {
        let Some(rest) = line.strip_prefix('#') else {
            body_start = i;
            break;
        };
        offset += line.len() + 1;
        body_start = i + 1;
        let Some((key, value)) = rest.split_once(':') else {
            return Err(err(i + 1, 2, "metadata line needs `key: value`".into()));
        };
        let value = value.trim();
        let col = line.len() - value.len() + 1;
        let bad = |what: &str| err(i + 1, col, format!("invalid {what}: {value:?}"));
        match key.trim() {
            "d" => meta.d = Some(value.parse().map_err(|_| bad("ring parameter"))?),
            "enumRadius" => meta.enum_radius = Some(value.parse().map_err(|_| bad("radius"))?),
            "coreRadius" => {
                meta.core_radius = Some(value.parse().map_err(|_| bad("radius"))?);
                core_line = (i + 1, col);
            }
            "boundaryPoints" => meta.boundary = value.parse().map_err(|_| bad("count"))?,
            "provenance" => {
                meta.provenance = Some(
                    serde_json::from_str(value)
                        .map_err(|e| err(i + 1, col + e.column().saturating_sub(1), e.to_string()))?,
                )
            }
            // informational; the provenance line is authoritative
            "family" | "window" => {}
            other => return Err(err(i + 1, 3, format!("unknown metadata key {other:?}"))),
        }
    }
    let missing = |k: &str| err(body_start + 1, 1, format!("missing metadata line `# {k}: …`"));
    let d = meta.d.ok_or_else(|| missing("d"))?;
    let enum_radius = meta.enum_radius.ok_or_else(|| missing("enumRadius"))?;
    let core_radius = meta.core_radius.ok_or_else(|| missing("coreRadius"))?;
    let provenance = meta.provenance.ok_or_else(|| missing("provenance"))?;
    if core_radius > enum_radius {
        return Err(err(
            core_line.0,
            core_line.1,
            format!("core radius {core_radius} exceeds enumeration radius {enum_radius}"),
        ));
    }
    let geometry = provenance.geometry();
    let dim = geometry.dim();

    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text[offset.min(text.len())..].as_bytes());
    let header = rdr
        .headers()
        .map_err(|e| err(body_start + 1, 1, e.to_string()))?
        .clone();
    let mut expected: Vec<String> = Vec::new();
    for i in 0..dim {
        expected.push(format!("a{i}"));
        expected.push(format!("b{i}"));
    }
    expected.extend((0..dim).map(|i| format!("x{i}")));
    if header.iter().collect::<Vec<_>>() != expected {
        return Err(err(
            body_start + 1,
            1,
            format!("expected header {}", expected.join(",")),
        ));
    }
    let mut points = Vec::new();
    for (r, rec) in rdr.records().enumerate() {
        let line = body_start + 2 + r;
        let rec = rec.map_err(|e| err(line, 1, e.to_string()))?;
        if rec.len() != 3 * dim {
            return Err(err(line, 1, format!("expected {} fields, found {}", 3 * dim, rec.len())));
        }
        let mut coords = Vec::with_capacity(dim);
        for i in 0..dim {
            let int_at = |c: usize| -> Result<BigInt> {
                rec[c].trim().parse().map_err(|_| {
                    err(line, c + 1, format!("invalid integer {:?}", &rec[c]))
                })
            };
            let q = QuadInt::new(int_at(2 * i)?, int_at(2 * i + 1)?, d)
                .map_err(|e| err(line, 2 * i + 1, e.to_string()))?;
            coords.push(q);
        }
        let g = match geometry {
            Geometry::Euclid(_) => GroupElem::Euclid(coords),
            Geometry::Heis => {
                let mut it = coords.into_iter();
                let (x, y, z) = (it.next(), it.next(), it.next());
                match (x, y, z) {
                    (Some(x), Some(y), Some(z)) => GroupElem::Heis(
                        HeisElem::new(x, y, z).map_err(|e| err(line, 1, e.to_string()))?,
                    ),
                    _ => return Err(err(line, 1, "Heisenberg rows need three coordinates".into())),
                }
            }
        };
        let phys = g.physical()?;
        for (i, x) in phys.iter().enumerate() {
            let col = 2 * dim + i + 1;
            let v: f64 = rec[col - 1]
                .trim()
                .parse()
                .map_err(|_| err(line, col, format!("invalid float {:?}", &rec[col - 1])))?;
            if (v - x).abs() > 1e-9 * x.abs().max(1.0) {
                return Err(err(
                    line,
                    col,
                    format!("embedding {v} disagrees with exact coordinates ({x})"),
                ));
            }
        }
        points.push(g);
    }
    Ok(PointSet::new(provenance, d, points, enum_radius, core_radius)?.with_boundary_points(meta.boundary))
}

/// Structured result of one check, with the resolved configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub check: String,
    pub input_provenance: Value,
    pub core_radius: Option<f64>,
    pub result: Value,
    pub witnesses: Value,
    pub failures: Vec<String>,
    pub config: Value,
}

impl Report {
    pub fn new(check: &str, config: Value) -> Self {
        Report {
            check: check.to_string(),
            input_provenance: Value::Null,
            core_radius: None,
            result: Value::Null,
            witnesses: Value::Null,
            failures: Vec::new(),
            config,
        }
    }

    pub fn for_input(mut self, p: &PointSet) -> Result<Self> {
        self.input_provenance = serde_json::to_value(p.provenance())?;
        self.core_radius = Some(p.core_radius());
        Ok(self)
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

pub fn emit_report(report: &Report, path: &Path) -> Result<()> {
    fs::write(path, report.to_json()?)?;
    Ok(())
}

pub fn load_report(path: &Path) -> Result<Report> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutproject::{enumerate, fish_set, Scheme, SchemeFamily, Window};

    #[test]
    fn fish_round_trip() {
        let f = fish_set(5).unwrap();
        let s = pointset_to_csv(&f).unwrap();
        assert_eq!(pointset_from_csv(&s, "mem").unwrap(), f);
    }

    #[test]
    fn heisenberg_round_trip_is_byte_stable() {
        let s = Scheme::new(SchemeFamily::HeisQuadratic, 2, Window::symmetric(1.0, 3).unwrap()).unwrap();
        let p = enumerate(&s, 3.0).unwrap();
        let a = pointset_to_csv(&p).unwrap();
        let q = pointset_from_csv(&a, "mem").unwrap();
        assert_eq!(q, p);
        assert_eq!(pointset_to_csv(&q).unwrap(), a);
    }

    #[test]
    fn core_beyond_enum_is_rejected() {
        let f = fish_set(3).unwrap();
        let s = pointset_to_csv(&f).unwrap().replace("# coreRadius: 30", "# coreRadius: 31");
        assert!(matches!(pointset_from_csv(&s, "mem"), Err(Error::Parse { .. })));
    }

    #[test]
    fn diagnostics_point_at_the_field() {
        let f = fish_set(2).unwrap();
        let s = pointset_to_csv(&f).unwrap();
        let bad = s.replacen("\n0,0,0\n", "\n0,zz,0\n", 1);
        match pointset_from_csv(&bad, "mem") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (14, 2)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
