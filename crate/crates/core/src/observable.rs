//! Chart-tagged scalar functions on phase space.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;

use crate::dual::DualScalar;
use crate::error::{Error, Result};
use crate::phase::{Chart, PhaseState};
use crate::scalar::Scalar;

/// A function of `(x1, x2, p1, p2)` written once for every [`Scalar`].
///
/// Returning `Err(reason)` flags a domain violation at the given point.
pub trait Kernel: Send + Sync + 'static {
    fn eval<S: Scalar>(&self, z: [S; 4]) -> core::result::Result<S, String>;
}

/// Object-safe face of a kernel; combinators implement it directly.
trait Erased: Send + Sync {
    fn plain(&self, z: [f64; 4]) -> core::result::Result<f64, String>;
    fn dual(&self, z: [DualScalar; 4]) -> core::result::Result<DualScalar, String>;
}

impl<K: Kernel> Erased for K {
    fn plain(&self, z: [f64; 4]) -> core::result::Result<f64, String> {
        self.eval(z)
    }

    fn dual(&self, z: [DualScalar; 4]) -> core::result::Result<DualScalar, String> {
        self.eval(z)
    }
}

#[derive(Clone, Copy)]
enum Op {
    Sum,
    Product,
}

struct Binary {
    op: Op,
    a: Arc<dyn Erased>,
    b: Arc<dyn Erased>,
}

impl Binary {
    fn apply<S: Scalar>(&self, a: S, b: S) -> S {
        match self.op {
            Op::Sum => a + b,
            Op::Product => a * b,
        }
    }
}

impl Erased for Binary {
    fn plain(&self, z: [f64; 4]) -> core::result::Result<f64, String> {
        Ok(self.apply(self.a.plain(z)?, self.b.plain(z)?))
    }

    fn dual(&self, z: [DualScalar; 4]) -> core::result::Result<DualScalar, String> {
        Ok(self.apply(self.a.dual(z)?, self.b.dual(z)?))
    }
}

struct Scaled(f64, Arc<dyn Erased>);

impl Erased for Scaled {
    fn plain(&self, z: [f64; 4]) -> core::result::Result<f64, String> {
        Ok(self.1.plain(z)? * self.0)
    }

    fn dual(&self, z: [DualScalar; 4]) -> core::result::Result<DualScalar, String> {
        Ok(self.1.dual(z)? * self.0)
    }
}

struct Coordinate(usize);

impl Kernel for Coordinate {
    fn eval<S: Scalar>(&self, z: [S; 4]) -> core::result::Result<S, String> {
        Ok(z[self.0])
    }
}

/// A named scalar function on the phase space of one chart.
#[derive(Clone)]
pub struct Observable {
    name: String,
    chart: Chart,
    source: String,
    kernel: Arc<dyn Erased>,
}

impl core::fmt::Debug for Observable {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Observable")
            .field("name", &self.name)
            .field("chart", &self.chart)
            .field("source", &self.source)
            .finish_non_exhaustive()
    }
}

impl Observable {
    pub fn new<K: Kernel>(name: impl Into<String>, chart: Chart, source: impl Into<String>, kernel: K) -> Self {
        Self { name: name.into(), chart, source: source.into(), kernel: Arc::new(kernel) }
    }

    /// The coordinate function `x1`, `x2`, `p1` or `p2` (slot 0..4).
    pub fn coordinate(chart: Chart, slot: usize) -> Self {
        assert!(slot < 4, "phase space has four coordinates");
        Self::new(chart.coordinate_names()[slot], chart, "coordinate", Coordinate(slot))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    /// Form identifier of the expression this observable transcribes.
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    fn check_chart(&self, s: &PhaseState) -> Result<()> {
        if s.chart != self.chart {
            return Err(Error::ChartMismatch { expected: self.chart, found: s.chart });
        }
        Ok(())
    }

    fn failure(&self, reason: impl Into<String>) -> Error {
        Error::Evaluation { observable: self.name.clone(), reason: reason.into() }
    }

    /// Plain evaluation on raw coordinates (no chart check).
    pub fn eval_raw(&self, z: [f64; 4]) -> Result<f64> {
        let v = self.kernel.plain(z).map_err(|r| self.failure(r))?;
        if !v.is_finite() {
            return Err(self.failure(format!("non-finite value {v} at {z:?}")));
        }
        Ok(v)
    }

    pub fn eval(&self, s: &PhaseState) -> Result<f64> {
        self.check_chart(s)?;
        self.eval_raw(s.to_array())
    }

    /// Value and gradient from one dual-number pass.
    pub fn eval_dual(&self, s: &PhaseState) -> Result<DualScalar> {
        self.check_chart(s)?;
        let z = s.to_array();
        let v = self.kernel.dual(DualScalar::seed(z)).map_err(|r| self.failure(r))?;
        if !v.is_finite() {
            return Err(self.failure(format!("non-finite value or derivative at {z:?}")));
        }
        Ok(v)
    }

    /// `(∂/∂x1, ∂/∂x2, ∂/∂p1, ∂/∂p2)`.
    pub fn gradient(&self, s: &PhaseState) -> Result<[f64; 4]> {
        Ok(self.eval_dual(s)?.derivative)
    }

    fn combine(&self, other: &Observable, op: Op, symbol: &str) -> Result<Observable> {
        if other.chart != self.chart {
            return Err(Error::ChartMismatch { expected: self.chart, found: other.chart });
        }
        Ok(Observable {
            name: format!("({}{symbol}{})", self.name, other.name),
            chart: self.chart,
            source: "composite".to_string(),
            kernel: Arc::new(Binary { op, a: self.kernel.clone(), b: other.kernel.clone() }),
        })
    }

    pub fn sum(&self, other: &Observable) -> Result<Observable> {
        self.combine(other, Op::Sum, " + ")
    }

    pub fn product(&self, other: &Observable) -> Result<Observable> {
        self.combine(other, Op::Product, "·")
    }

    pub fn scaled(&self, k: f64) -> Observable {
        Observable {
            name: format!("{k}·{}", self.name),
            chart: self.chart,
            source: self.source.clone(),
            kernel: Arc::new(Scaled(k, self.kernel.clone())),
        }
    }
}
