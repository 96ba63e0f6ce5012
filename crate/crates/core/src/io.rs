//! Tabular output. Every table is a header plus rows of numbers; CSV uses commas, a `.`
//! decimal point and the shortest representation that reads back to the same `f64`.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::StrengthField;
use crate::geom::{ConnectionField, CurvatureField};
use crate::grid::{Field, Grid};
use crate::mech::Trajectory;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Self { header, rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.header.len() {
            return Err(Error::DimensionMismatch {
                expected: self.header.len(),
                got: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let err = |e: csv::Error| Error::Output(e.to_string());
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header).map_err(err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| v.to_string())).map_err(err)?;
        }
        w.flush().map_err(|e| Error::Output(e.to_string()))
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Output(e.to_string()))
    }
}

fn axis_names(grid: &Grid) -> Vec<String> {
    grid.axes().iter().map(|a| a.name.clone()).collect()
}

/// Columns `t, x1..x3, v1..v3` then the four acceleration terms, three components each.
pub fn trajectory_table(traj: &Trajectory) -> Table {
    let mut header: Vec<String> = vec!["t".into()];
    for name in ["x", "v", "linear", "coriolis", "angular", "centripetal"] {
        header.extend((1..=3).map(|j| format!("{name}{j}")));
    }
    let mut table = Table::new(header);
    for i in 0..traj.t.len() {
        let d = &traj.diagnostics[i];
        let mut row = vec![traj.t[i]];
        for v in [&traj.x[i], &traj.v[i], &d.linear, &d.coriolis, &d.angular, &d.centripetal] {
            row.extend_from_slice(v);
        }
        table.rows.push(row);
    }
    table
}

/// Coordinates, then the three components of a vector field.
pub fn vector_field_table(field: &Field<[f64; 3]>, name: &str) -> Table {
    let mut header = axis_names(&field.grid);
    header.extend((1..=3).map(|j| format!("{name}{j}")));
    let mut table = Table::new(header);
    for (p, v) in field.values.iter().enumerate() {
        let mut row = field.grid.coords(p);
        row.extend_from_slice(v);
        table.rows.push(row);
    }
    table
}

/// Coordinates, then `omega_{xi,kn}` with indices in lexicographic order `(xi, k, n)`,
/// real part before imaginary part. Indices are one-based in the column names.
pub fn connection_table(conn: &ConnectionField) -> Table {
    let g = conn.grid.dim();
    let mut header = axis_names(&conn.grid);
    for xi in 0..g {
        for k in 0..3 {
            for n in 0..3 {
                for part in ["re", "im"] {
                    header.push(format!("omega_{}_{}{}_{part}", xi + 1, k + 1, n + 1));
                }
            }
        }
    }
    let mut table = Table::new(header);
    for (p, om) in conn.values.iter().enumerate() {
        let mut row = conn.grid.coords(p);
        for w in om {
            for k in 0..3 {
                for n in 0..3 {
                    row.push(w[(k, n)].re);
                    row.push(w[(k, n)].im);
                }
            }
        }
        table.rows.push(row);
    }
    table
}

/// Coordinates, then `r_{kn,ab}` in lexicographic order `(a, b, k, n)`.
pub fn curvature_table(curv: &CurvatureField) -> Table {
    let g = curv.grid.dim();
    let mut header = axis_names(&curv.grid);
    for a in 0..g {
        for b in 0..g {
            for k in 0..3 {
                for n in 0..3 {
                    for part in ["re", "im"] {
                        header.push(format!("r_{}{}_{}{}_{part}", k + 1, n + 1, a + 1, b + 1));
                    }
                }
            }
        }
    }
    let mut table = Table::new(header);
    for (p, rs) in curv.values.iter().enumerate() {
        let mut row = curv.grid.coords(p);
        for r in rs {
            for k in 0..3 {
                for n in 0..3 {
                    row.push(r[(k, n)].re);
                    row.push(r[(k, n)].im);
                }
            }
        }
        table.rows.push(row);
    }
    table
}

/// Coordinates, then `F_{k,ab}` in lexicographic order `(a, b, k)`.
pub fn strength_table(f: &StrengthField) -> Table {
    let g = f.grid.dim();
    let mut header = axis_names(&f.grid);
    for a in 0..g {
        for b in 0..g {
            for k in 0..3 {
                for part in ["re", "im"] {
                    header.push(format!("F_{}_{}{}_{part}", k + 1, a + 1, b + 1));
                }
            }
        }
    }
    let mut table = Table::new(header);
    for (p, fs) in f.values.iter().enumerate() {
        let mut row = f.grid.coords(p);
        for v in fs {
            for z in v {
                row.push(z.re);
                row.push(z.im);
            }
        }
        table.rows.push(row);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridAxis;

    #[test]
    fn csv_layout() {
        let mut t = Table::new(vec!["t".into(), "x".into()]);
        t.push(vec![0.0, 1.5]).unwrap();
        t.push(vec![0.1, -2e-20]).unwrap();
        assert!(t.push(vec![1.0]).is_err());
        assert_eq!(t.to_csv_string().unwrap(), "t,x\n0,1.5\n0.1,-0.00000000000000000002\n");
    }

    #[test]
    fn values_read_back_exactly() {
        let v = [0.1 + 0.2, std::f64::consts::PI, -1.0 / 3.0, 6.02e23];
        let mut t = Table::new(vec!["v".into()]);
        for x in v {
            t.push(vec![x]).unwrap();
        }
        let s = t.to_csv_string().unwrap();
        let back: Vec<f64> = s.lines().skip(1).map(|l| l.parse().unwrap()).collect();
        assert_eq!(back, v);
    }

    #[test]
    fn connection_columns_are_lexicographic() {
        let grid = Grid::new(vec![GridAxis::new("s", 0.0, 0.1, 5), GridAxis::new("u", 0.0, 0.1, 5)]).unwrap();
        let t = connection_table(&ConnectionField::zeros(grid));
        assert_eq!(t.header.len(), 2 + 2 * 9 * 2);
        assert_eq!(t.header[2], "omega_1_11_re");
        assert_eq!(t.header[3], "omega_1_11_im");
        assert_eq!(t.header[4], "omega_1_12_re");
        assert_eq!(t.header[20], "omega_2_11_re");
        assert_eq!(t.rows.len(), 25);
        assert_eq!(t.rows[1][..2], [0.0, 0.1]);
    }
}
