use crate::error::{Error, Result};

/// A dense grid table of operation values with bilinear interpolation
/// between nodes. Node `(i, j)` holds the value at `(i/n, j/n)`.
#[derive(Debug, Clone)]
pub struct TableOp {
    n: usize,
    values: Vec<f64>, // (n+1) * (n+1), row-major in x
}

impl TableOp {
    /// Parse the CSV interchange format: header `x,y,value`, one row per
    /// node, row-major (x outer, y inner), coordinates on a uniform grid.
    pub fn parse_csv(csv: &str) -> Result<Self> {
        let mut lines = csv.lines().filter(|l| !l.trim().is_empty());
        match lines.next() {
            Some(h) if h.trim().eq_ignore_ascii_case("x,y,value") => {}
            _ => return Err(Error::Parse("expected header `x,y,value`".to_string())),
        }
        let mut triples = Vec::new();
        for (idx, line) in lines.enumerate() {
            let mut parts = line.split(',');
            let parse = |s: Option<&str>| -> Result<f64> {
                s.ok_or_else(|| Error::Parse(format!("row {}: missing field", idx + 2)))?
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("row {}: {e}", idx + 2)))
            };
            let x = parse(parts.next())?;
            let y = parse(parts.next())?;
            let v = parse(parts.next())?;
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Parse(format!(
                    "row {}: value {v} outside [0, 1]",
                    idx + 2
                )));
            }
            triples.push((x, y, v));
        }
        let count = triples.len();
        let side = (count as f64).sqrt().round() as usize;
        if side < 2 || side * side != count {
            return Err(Error::Parse(format!(
                "expected a square (n+1)x(n+1) table, got {count} rows"
            )));
        }
        let n = side - 1;
        let mut values = vec![f64::NAN; count];
        for (x, y, v) in triples {
            let i = (x * n as f64).round() as usize;
            let j = (y * n as f64).round() as usize;
            if i > n || j > n || (x - i as f64 / n as f64).abs() > 1e-9 {
                return Err(Error::Parse(format!(
                    "coordinate ({x}, {y}) is not on the uniform {n}-grid"
                )));
            }
            values[i * side + j] = v;
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::Parse("table has missing grid nodes".to_string()));
        }
        Ok(TableOp { n, values })
    }

    pub fn resolution(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let n = self.n as f64;
        let x = x.clamp(0.0, 1.0) * n;
        let y = y.clamp(0.0, 1.0) * n;
        let i = (x.floor() as usize).min(self.n - 1);
        let j = (y.floor() as usize).min(self.n - 1);
        let fx = x - i as f64;
        let fy = y - j as f64;
        let side = self.n + 1;
        let v00 = self.values[i * side + j];
        let v01 = self.values[i * side + j + 1];
        let v10 = self.values[(i + 1) * side + j];
        let v11 = self.values[(i + 1) * side + j + 1];
        let a = v00 + (v01 - v00) * fy;
        let b = v10 + (v11 - v10) * fy;
        a + (b - a) * fx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn min_table(n: usize) -> String {
        let mut s = String::from("x,y,value\n");
        for i in 0..=n {
            for j in 0..=n {
                let (x, y) = (i as f64 / n as f64, j as f64 / n as f64);
                s.push_str(&format!("{x},{y},{}\n", x.min(y)));
            }
        }
        s
    }

    #[test]
    fn parses_and_interpolates() {
        let t = TableOp::parse_csv(&min_table(8)).unwrap();
        assert_eq!(t.resolution(), 8);
        assert_eq!(t.eval(0.5, 0.25), 0.25);
        // interpolated point, exact for min along a grid line
        assert!((t.eval(0.5, 0.3125) - 0.3125).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(TableOp::parse_csv("a,b,c\n0,0,0\n").is_err());
        assert!(TableOp::parse_csv("x,y,value\n0,0,2.0\n").is_err());
        assert!(TableOp::parse_csv("x,y,value\n0,0,0\n0,1,1\n1,0,0\n").is_err());
    }
}
