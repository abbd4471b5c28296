//! Charts and phase-space points.

/// Coordinate chart of the configuration space. The second coordinate of
/// every non-cartesian chart is the angle `φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Chart {
    ZetaPhi,
    UPhi,
    ThetaPhi,
    Cartesian,
}

impl Chart {
    pub fn name(self) -> &'static str {
        match self {
            Chart::ZetaPhi => "zeta-phi",
            Chart::UPhi => "u-phi",
            Chart::ThetaPhi => "theta-phi",
            Chart::Cartesian => "cartesian",
        }
    }

    /// Names of `(x1, x2, p1, p2)` in this chart.
    pub fn coordinate_names(self) -> [&'static str; 4] {
        match self {
            Chart::ZetaPhi => ["zeta", "phi", "p_zeta", "p_phi"],
            Chart::UPhi => ["u", "phi", "p_u", "p_phi"],
            Chart::ThetaPhi => ["theta", "phi", "p_theta", "p_phi"],
            Chart::Cartesian => ["x", "y", "p_x", "p_y"],
        }
    }

    /// True when `x2` is an angle, periodic with period 2π.
    pub fn angular_x2(self) -> bool {
        !matches!(self, Chart::Cartesian)
    }
}

impl core::fmt::Display for Chart {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for Chart {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zeta-phi" => Ok(Chart::ZetaPhi),
            "u-phi" => Ok(Chart::UPhi),
            "theta-phi" => Ok(Chart::ThetaPhi),
            "cartesian" => Ok(Chart::Cartesian),
            other => Err(crate::Error::Argument(alloc::format!("unknown chart `{other}`"))),
        }
    }
}

/// A point `(x1, x2, p1, p2)` of the cotangent bundle in a given chart.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PhaseState {
    pub chart: Chart,
    pub x1: f64,
    pub x2: f64,
    pub p1: f64,
    pub p2: f64,
}

impl PhaseState {
    pub const fn new(chart: Chart, x1: f64, x2: f64, p1: f64, p2: f64) -> Self {
        Self { chart, x1, x2, p1, p2 }
    }

    pub const fn from_array(chart: Chart, z: [f64; 4]) -> Self {
        Self::new(chart, z[0], z[1], z[2], z[3])
    }

    pub const fn to_array(&self) -> [f64; 4] {
        [self.x1, self.x2, self.p1, self.p2]
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}
