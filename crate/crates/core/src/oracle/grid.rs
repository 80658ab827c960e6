use crate::error::{QesError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    /// Equal steps in `r`.
    Uniform,
    /// Equal steps in `ln r`.
    Log,
}

/// Strictly increasing sample points on `[r_min, r_max]`, equally spaced in
/// `r` or in `ln r`. Both endpoints are included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    r_min: f64,
    r_max: f64,
    count: usize,
    spacing: Spacing,
}

impl RadialGrid {
    pub const MIN_POINTS: usize = 64;

    pub fn new(r_min: f64, r_max: f64, count: usize, spacing: Spacing) -> Result<Self> {
        if !(r_min > 0.0 && r_min.is_finite()) {
            return Err(QesError::InvalidGrid(format!("r_min must be > 0, got {r_min}")));
        }
        if !(r_max > r_min && r_max.is_finite()) {
            return Err(QesError::InvalidGrid(format!(
                "r_max must exceed r_min, got [{r_min}, {r_max}]"
            )));
        }
        if count < Self::MIN_POINTS {
            return Err(QesError::InvalidGrid(format!(
                "need at least {} points, got {count}",
                Self::MIN_POINTS
            )));
        }
        Ok(Self {
            r_min,
            r_max,
            count,
            spacing,
        })
    }

    pub fn uniform(r_min: f64, r_max: f64, count: usize) -> Result<Self> {
        Self::new(r_min, r_max, count, Spacing::Uniform)
    }

    pub fn log(r_min: f64, r_max: f64, count: usize) -> Result<Self> {
        Self::new(r_min, r_max, count, Spacing::Log)
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    /// Step in the integration variable (`r` or `ln r`).
    pub fn step(&self) -> f64 {
        let (a, b) = self.variable_range();
        (b - a) / (self.count - 1) as f64
    }

    fn variable_range(&self) -> (f64, f64) {
        match self.spacing {
            Spacing::Uniform => (self.r_min, self.r_max),
            Spacing::Log => (self.r_min.ln(), self.r_max.ln()),
        }
    }

    /// Point `i`; the last point is exactly `r_max`.
    pub fn point(&self, i: usize) -> f64 {
        if i == 0 {
            return self.r_min;
        }
        if i + 1 == self.count {
            return self.r_max;
        }
        let (a, _) = self.variable_range();
        let x = a + i as f64 * self.step();
        match self.spacing {
            Spacing::Uniform => x,
            Spacing::Log => x.exp(),
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.point(i)).collect()
    }

    /// Same interval with every step halved (`2·count - 1` points); every
    /// original point is kept.
    pub fn refined(&self) -> Self {
        Self {
            count: 2 * self.count - 1,
            ..*self
        }
    }
}
