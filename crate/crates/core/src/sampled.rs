//! Functions given as samples on a uniform grid starting at t = 0.

use std::io::Read;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::order::Order;

#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction {
    step: f64,
    /// values at t_i = i * step, i = 0..len
    values: Vec<f64>,
}

#[derive(Deserialize)]
struct Row {
    t: f64,
    w: f64,
}

impl SampledFunction {
    pub fn new(step: f64, values: Vec<f64>) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::SampledData(format!("step {step} is not positive")));
        }
        if values.len() < 2 {
            return Err(Error::SampledData("need at least two samples".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::SampledData("non-finite sample".into()));
        }
        Ok(SampledFunction { step, values })
    }

    pub fn from_fn(step: f64, len: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(step, (0..len).map(|i| f(i as f64 * step)).collect())
    }

    /// Reads a `t,w` CSV with header. The grid must start at 0 and be uniform.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let rows: Vec<Row> = rdr.deserialize().collect::<std::result::Result<_, _>>()?;
        if rows.len() < 2 {
            return Err(Error::SampledData("need at least two rows".into()));
        }
        if rows[0].t.abs() > 1e-12 {
            return Err(Error::SampledData(format!(
                "grid must start at t = 0, found {}",
                rows[0].t
            )));
        }
        let end = rows[rows.len() - 1].t;
        let step = end / (rows.len() - 1) as f64;
        for (i, row) in rows.iter().enumerate() {
            let expected = i as f64 * step;
            if (row.t - expected).abs() > 1e-9 * end.abs().max(1.0) {
                return Err(Error::SampledData(format!(
                    "row {} has t = {}, expected {} on a uniform grid",
                    i + 1,
                    row.t,
                    expected
                )));
            }
        }
        Self::new(step, rows.into_iter().map(|r| r.w).collect())
    }

    pub fn read_csv_path(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::read_csv(file)
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn end(&self) -> f64 {
        self.step * (self.values.len() - 1) as f64
    }

    pub fn scale(&self, k: f64) -> Self {
        SampledFunction {
            step: self.step,
            values: self.values.iter().map(|v| v * k).collect(),
        }
    }

    /// Piecewise-linear interpolation on [0, end].
    pub fn eval(&self, t: f64) -> Result<f64> {
        let end = self.end();
        if !(0.0..=end * (1.0 + 1e-12)).contains(&t) {
            return Err(Error::SampledData(format!(
                "t = {t} is outside the sampled range [0, {end}]"
            )));
        }
        let x = t / self.step;
        let i = (x.floor() as usize).min(self.values.len() - 2);
        let frac = x - i as f64;
        Ok(self.values[i] * (1.0 - frac) + self.values[i + 1] * frac)
    }

    /// I^alpha of the piecewise-linear interpolant, evaluated on the same
    /// grid with exact product-trapezoidal weights.
    pub fn fractional_integral(&self, alpha: Order) -> Result<SampledFunction> {
        if alpha.is_negative() {
            return Err(Error::InvalidOrder(format!(
                "integral order {alpha} is negative"
            )));
        }
        if alpha.is_zero() {
            return Ok(self.clone());
        }
        let a = alpha.to_f64();
        let n = self.values.len();
        let p: Vec<f64> = (0..=n).map(|k| (k as f64).powf(a + 1.0)).collect();
        let scale = self.step.powf(a) / gamma(a + 2.0)?;
        let mut out = vec![0.0; n];
        for (i, slot) in out.iter_mut().enumerate().skip(1) {
            let fi = i as f64;
            let mut acc = (p[i - 1] - (fi - 1.0 - a) * fi.powf(a)) * self.values[0];
            for j in 1..i {
                let d = i - j;
                acc += (p[d + 1] - 2.0 * p[d] + p[d - 1]) * self.values[j];
            }
            acc += self.values[i];
            *slot = scale * acc;
        }
        SampledFunction::new(self.step, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_uniform_csv() {
        let data = "t,w\n0,1\n0.5,2\n1.0,4\n";
        let f = SampledFunction::read_csv(data.as_bytes()).unwrap();
        assert_eq!(f.step(), 0.5);
        assert_eq!(f.values(), &[1.0, 2.0, 4.0]);
        assert_eq!(f.eval(0.25).unwrap(), 1.5);
        assert_eq!(f.eval(1.0).unwrap(), 4.0);
        assert!(f.eval(1.5).is_err());
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(SampledFunction::read_csv("t,w\n0.1,1\n0.2,2\n".as_bytes()).is_err());
        assert!(SampledFunction::read_csv("t,w\n0,1\n0.2,2\n0.3,3\n".as_bytes()).is_err());
        assert!(SampledFunction::read_csv("t,w\n0,1\n".as_bytes()).is_err());
        assert!(SampledFunction::read_csv("t,w\n0,1\n0.5,x\n".as_bytes()).is_err());
    }

    #[test]
    fn integral_exact_on_linear_data() {
        // I^a t = t^{1+a} / Gamma(2+a), exact for the linear interpolant
        let f = SampledFunction::from_fn(0.01, 101, |t| t).unwrap();
        let alpha = Order::new(7, 3).unwrap();
        let a = alpha.to_f64();
        let g = f.fractional_integral(alpha).unwrap();
        let denom = gamma(2.0 + a).unwrap();
        for (i, v) in g.values().iter().enumerate() {
            let t = i as f64 * 0.01;
            assert!((v - t.powf(1.0 + a) / denom).abs() < 1e-13, "t = {t}");
        }
    }

    #[test]
    fn integral_of_smooth_data_converges() {
        // I^{1/2} t^2 = Gamma(3)/Gamma(3.5) t^{2.5}
        let alpha = Order::new(1, 2).unwrap();
        let exact = gamma(3.0).unwrap() / gamma(3.5).unwrap();
        let err = |n: usize| {
            let f = SampledFunction::from_fn(1.0 / n as f64, n + 1, |t| t * t).unwrap();
            let g = f.fractional_integral(alpha).unwrap();
            (g.values()[n] - exact).abs()
        };
        let (e1, e2) = (err(64), err(128));
        assert!(e2 < e1 / 3.0, "{e1} {e2}");
    }
}
