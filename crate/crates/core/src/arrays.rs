//! Interferometric array geometries and their path proper times.
//!
//! Photon 1 travels either path `γ1` (horizontal) or `γ2` (with a vertical
//! excursion of proper height `H`); photon 2 travels `γ1'` or `γ2'`. Proper
//! flight times are read by clocks at the detectors, where the potential is
//! zero.
//!
//! Flight times are ~1e-4 s while gravitational delays are ~1e-17 s, so lengths
//! and times are held in double-double precision. Pairwise delays are exact
//! differences of those values and are rounded to `f64` only when read.

use twofloat::TwoFloat;

use crate::{Error, GravityModel, Result};

/// Coincidence window used when none is given (s).
pub const DEFAULT_COINCIDENCE_WINDOW: f64 = 1e-18;

/// Tolerance for the indistinguishability condition (s).
pub const INDISTINGUISHABILITY_TOLERANCE: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArrayKind {
    Franson,
    /// Balanced, geometrically identical Franson array rotated so its arms
    /// sit at different potentials.
    FransonRotatedBalanced,
    Hugged,
    /// Balanced, geometrically identical Hugged array rotated in the vertical.
    HuggedRotatedBalanced,
}

impl ArrayKind {
    pub const ALL: [ArrayKind; 4] = [
        ArrayKind::Franson,
        ArrayKind::FransonRotatedBalanced,
        ArrayKind::Hugged,
        ArrayKind::HuggedRotatedBalanced,
    ];

    pub fn is_hugged(self) -> bool {
        matches!(self, ArrayKind::Hugged | ArrayKind::HuggedRotatedBalanced)
    }

    pub fn is_rotated(self) -> bool {
        matches!(
            self,
            ArrayKind::FransonRotatedBalanced | ArrayKind::HuggedRotatedBalanced
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            ArrayKind::Franson => "franson",
            ArrayKind::FransonRotatedBalanced => "franson-rotated",
            ArrayKind::Hugged => "hugged",
            ArrayKind::HuggedRotatedBalanced => "hugged-rotated",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Path {
    Gamma1,
    Gamma2,
    Gamma1Prime,
    Gamma2Prime,
}

impl Path {
    pub const ALL: [Path; 4] = [Path::Gamma1, Path::Gamma2, Path::Gamma1Prime, Path::Gamma2Prime];

    fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Path::Gamma1 => "g1",
            Path::Gamma2 => "g2",
            Path::Gamma1Prime => "g1p",
            Path::Gamma2Prime => "g2p",
        }
    }
}

/// A combination of one path per photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathPair {
    /// `(γ1, γ1')`
    FirstFirst,
    /// `(γ2, γ2')`
    SecondSecond,
    /// `(γ1, γ2')`
    FirstSecond,
    /// `(γ2, γ1')`
    SecondFirst,
}

impl PathPair {
    pub const ALL: [PathPair; 4] = [
        PathPair::FirstFirst,
        PathPair::SecondSecond,
        PathPair::FirstSecond,
        PathPair::SecondFirst,
    ];

    pub fn paths(self) -> (Path, Path) {
        match self {
            PathPair::FirstFirst => (Path::Gamma1, Path::Gamma1Prime),
            PathPair::SecondSecond => (Path::Gamma2, Path::Gamma2Prime),
            PathPair::FirstSecond => (Path::Gamma1, Path::Gamma2Prime),
            PathPair::SecondFirst => (Path::Gamma2, Path::Gamma1Prime),
        }
    }

    /// Pairs kept by the post-selection that yields the maximally entangled state.
    pub fn is_kept(self) -> bool {
        matches!(self, PathPair::FirstFirst | PathPair::SecondSecond)
    }
}

/// Proper lengths of the four paths plus the post-selection offset.
///
/// `l2`/`l2p` are the horizontal segments of `γ2`/`γ2'`; both vertical legs
/// of those paths have proper height `height`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayGeometry {
    kind: ArrayKind,
    l1: TwoFloat,
    l1p: TwoFloat,
    l2: TwoFloat,
    l2p: TwoFloat,
    height: TwoFloat,
    post_selection_offset: f64,
}

impl ArrayGeometry {
    /// Geometry from explicit lengths, with no balancing imposed.
    pub fn new(
        kind: ArrayKind,
        l1: f64,
        l1p: f64,
        l2: f64,
        l2p: f64,
        height: f64,
        post_selection_offset: f64,
    ) -> Result<Self> {
        for (name, v) in [
            ("l1", l1),
            ("l1p", l1p),
            ("l2", l2),
            ("l2p", l2p),
            ("height", height),
            ("post_selection_offset", post_selection_offset),
        ] {
            non_negative(name, v)?;
        }
        Ok(Self {
            kind,
            l1: l1.into(),
            l1p: l1p.into(),
            l2: l2.into(),
            l2p: l2p.into(),
            height: height.into(),
            post_selection_offset,
        })
    }

    pub fn kind(&self) -> ArrayKind {
        self.kind
    }
    pub fn l1(&self) -> f64 {
        self.l1.into()
    }
    pub fn l1p(&self) -> f64 {
        self.l1p.into()
    }
    pub fn l2(&self) -> f64 {
        self.l2.into()
    }
    pub fn l2p(&self) -> f64 {
        self.l2p.into()
    }
    pub fn height(&self) -> f64 {
        self.height.into()
    }
    pub fn post_selection_offset(&self) -> f64 {
        self.post_selection_offset
    }

    /// Proper area `L2' H` (m^2).
    pub fn area(&self) -> f64 {
        (self.l2p * self.height).into()
    }

    /// Optical path difference `L2 + 2H - L1` and `L2' + 2H - L1'` of the two interferometers.
    pub fn path_differences(&self) -> (f64, f64) {
        let two_h = self.height * 2.0;
        (
            (self.l2 + two_h - self.l1).into(),
            (self.l2p + two_h - self.l1p).into(),
        )
    }
}

/// Gravitational delay `g H L2' / c^3` of a balanced array.
pub fn gravitational_delay(l2p: f64, height: f64, model: &GravityModel) -> f64 {
    model.g * height * l2p / (model.c * model.c * model.c)
}

/// Per-path proper flight times with exact pairwise differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathDelaySet {
    kind: ArrayKind,
    tau: [TwoFloat; 4],
}

impl PathDelaySet {
    /// Builds a set directly from four proper times, ordered `γ1, γ2, γ1', γ2'`.
    pub fn from_proper_times(kind: ArrayKind, tau: [f64; 4]) -> Self {
        Self {
            kind,
            tau: tau.map(TwoFloat::from),
        }
    }

    pub fn kind(&self) -> ArrayKind {
        self.kind
    }

    pub fn proper_time(&self, path: Path) -> f64 {
        self.tau[path.index()].into()
    }

    pub fn delay_exact(&self, a: Path, b: Path) -> TwoFloat {
        self.tau[a.index()] - self.tau[b.index()]
    }

    /// `Δτ_ab = τ_a − τ_b` (s).
    pub fn delay(&self, a: Path, b: Path) -> f64 {
        self.delay_exact(a, b).into()
    }

    pub fn g1_g1p(&self) -> f64 {
        self.delay(Path::Gamma1, Path::Gamma1Prime)
    }
    pub fn g2_g2p(&self) -> f64 {
        self.delay(Path::Gamma2, Path::Gamma2Prime)
    }
    /// Single-photon delay across the arms seen by photon 1.
    pub fn g1_g2(&self) -> f64 {
        self.delay(Path::Gamma1, Path::Gamma2)
    }
    /// Single-photon delay across the arms seen by photon 2.
    pub fn g1p_g2p(&self) -> f64 {
        self.delay(Path::Gamma1Prime, Path::Gamma2Prime)
    }
    pub fn g1_g2p(&self) -> f64 {
        self.delay(Path::Gamma1, Path::Gamma2Prime)
    }
    pub fn g2_g1p(&self) -> f64 {
        self.delay(Path::Gamma2, Path::Gamma1Prime)
    }

    /// The six pairwise delays with their labels.
    pub fn pairwise(&self) -> [(&'static str, f64); 6] {
        [
            ("g1_g1p", self.g1_g1p()),
            ("g2_g2p", self.g2_g2p()),
            ("g1_g2", self.g1_g2()),
            ("g1p_g2p", self.g1p_g2p()),
            ("g1_g2p", self.g1_g2p()),
            ("g2_g1p", self.g2_g1p()),
        ]
    }

    /// Arrival-time difference between the two detections of a path pair.
    pub fn signature(&self, pair: PathPair) -> TwoFloat {
        let (a, b) = pair.paths();
        self.delay_exact(a, b)
    }

    /// `(Δτ_{11'} − Δτ_{22'}) − (Δτ_{12} − Δτ_{1'2'})`, evaluated in extended precision.
    pub fn constraint_residual(&self) -> f64 {
        use Path::*;
        let lhs = self.delay_exact(Gamma1, Gamma1Prime) - self.delay_exact(Gamma2, Gamma2Prime);
        let rhs = self.delay_exact(Gamma1, Gamma2) - self.delay_exact(Gamma1Prime, Gamma2Prime);
        (lhs - rhs).into()
    }

    /// Largest deviation of `Δτ_{11'}` and `Δτ_{22'}` from `offset`.
    pub fn indistinguishability_residual(&self, offset: f64) -> f64 {
        let a = f64::from((self.signature(PathPair::FirstFirst) - offset).abs());
        let b = f64::from((self.signature(PathPair::SecondSecond) - offset).abs());
        a.max(b)
    }
}

/// Proper flight times of every path, first order in `g H / c^2`.
pub fn path_proper_times(geometry: &ArrayGeometry, model: &GravityModel) -> Result<PathDelaySet> {
    let h: f64 = geometry.height.into();
    let r = model.reference_height;
    model.potential(r + h)?;
    if geometry.kind.is_hugged() {
        model.potential(r - h)?;
    }
    let c = model.c;
    let x = TwoFloat::from(model.g) * geometry.height / c / c;
    let one = TwoFloat::from(1.0);
    let vertical = geometry.height * 2.0;
    let tau1 = geometry.l1 / c;
    let tau1p = geometry.l1p / c;
    // γ2 of a Hugged array runs below the detectors, every other upper segment above
    let lower = if geometry.kind.is_hugged() {
        one + x
    } else {
        one - x
    };
    let tau2 = (lower * geometry.l2 + vertical) / c;
    let tau2p = ((one - x) * geometry.l2p + vertical) / c;
    Ok(PathDelaySet {
        kind: geometry.kind,
        tau: [tau1, tau2, tau1p, tau2p],
    })
}

/// Balanced geometry with `Δτ_{11'} = Δτ_{22'} = offset` and a purely
/// gravitational single-photon delay `g H L2' / c^3`.
///
/// The dependent lengths solve the first-order delay equations exactly, so
/// recomputed delays reproduce the request up to rounding.
pub fn balance_geometry(
    kind: ArrayKind,
    l2p: f64,
    height: f64,
    offset: f64,
    model: &GravityModel,
) -> Result<ArrayGeometry> {
    if kind.is_rotated() {
        return Err(Error::UnsupportedKind(kind));
    }
    non_negative("l2p", l2p)?;
    non_negative("height", height)?;
    non_negative("post_selection_offset", offset)?;
    model.potential(model.reference_height + height)?;
    model.potential(model.reference_height - height)?;

    let h = TwoFloat::from(height);
    let l2p_ = TwoFloat::from(l2p);
    let x = TwoFloat::from(model.g) * h / model.c / model.c;
    let one = TwoFloat::from(1.0);
    let shift = TwoFloat::from(model.c) * offset;
    let l1p = l2p_ + h * 2.0;
    let l1 = l1p + shift;
    let l2 = match kind {
        ArrayKind::Franson => l2p_ + dd_div(shift, one - x),
        ArrayKind::Hugged => dd_div((one - x) * l2p_ + shift, one + x),
        _ => unreachable!(),
    };
    Ok(ArrayGeometry {
        kind,
        l1,
        l1p,
        l2,
        l2p: l2p_,
        height: h,
        post_selection_offset: offset,
    })
}

/// Balanced, geometrically identical arrays rotated so the arms sit at
/// different potentials: `L1 = L1' = L2' + 2H`, `L2 = L2'`, zero offset.
pub fn rotated_balanced_geometry(
    kind: ArrayKind,
    l2p: f64,
    height: f64,
    model: &GravityModel,
) -> Result<ArrayGeometry> {
    if !kind.is_rotated() {
        return Err(Error::UnsupportedKind(kind));
    }
    non_negative("l2p", l2p)?;
    non_negative("height", height)?;
    model.potential(model.reference_height + height)?;
    model.potential(model.reference_height - height)?;
    let h = TwoFloat::from(height);
    let l2p_ = TwoFloat::from(l2p);
    let l1 = l2p_ + h * 2.0;
    Ok(ArrayGeometry {
        kind,
        l1,
        l1p: l1,
        l2: l2p_,
        l2p: l2p_,
        height: h,
        post_selection_offset: 0.0,
    })
}

/// Double-double quotient. The `Div` impl of `TwoFloat` for two-word
/// divisors only keeps about 53 bits, so two correction steps restore the rest.
fn dd_div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let mut q = TwoFloat::from(a.hi() / b.hi());
    for _ in 0..2 {
        let r = a - q * b;
        q += r.hi() / b.hi();
    }
    q
}

/// Balanced or rotated geometry for any kind, dispatching on the kind.
pub fn standard_geometry(
    kind: ArrayKind,
    l2p: f64,
    height: f64,
    offset: f64,
    model: &GravityModel,
) -> Result<ArrayGeometry> {
    if kind.is_rotated() {
        rotated_balanced_geometry(kind, l2p, height, model)
    } else {
        balance_geometry(kind, l2p, height, offset, model)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairComparison {
    pub first: PathPair,
    pub second: PathPair,
    /// Difference of the two arrival-time signatures (s).
    pub separation: f64,
    pub distinguishable: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistinguishabilityReport {
    pub window: f64,
    /// Arrival-time signature `τ_a − τ_b'` of each path pair.
    pub signatures: [(PathPair, f64); 4],
    pub comparisons: Vec<PairComparison>,
    /// The kept pairs coincide with each other and are separated from both cross pairs.
    pub timing_feasible: bool,
    /// Hugged arrays post-select locally (coalescing photons are discarded
    /// in each interferometer). Assumed from the array kind, not derived from delays.
    pub local_post_selection: bool,
}

impl DistinguishabilityReport {
    /// Whether the maximally entangled post-selection can be carried out.
    pub fn feasible(&self) -> bool {
        self.timing_feasible || self.local_post_selection
    }
}

/// Compares the arrival-time signatures of the four path pairs against a coincidence window.
pub fn classify_post_selection(delays: &PathDelaySet, window: f64) -> Result<DistinguishabilityReport> {
    non_negative("coincidence_window", window)?;
    let signatures = PathPair::ALL.map(|p| (p, f64::from(delays.signature(p))));
    let mut comparisons = Vec::with_capacity(6);
    for i in 0..4 {
        for j in i + 1..4 {
            let (a, b) = (PathPair::ALL[i], PathPair::ALL[j]);
            let separation: f64 = (delays.signature(a) - delays.signature(b)).into();
            comparisons.push(PairComparison {
                first: a,
                second: b,
                separation,
                distinguishable: separation.abs() > window,
            });
        }
    }
    let timing_feasible = comparisons.iter().all(|c| {
        if c.first.is_kept() == c.second.is_kept() {
            // kept pairs must coincide; the two cross pairs need not
            !c.first.is_kept() || !c.distinguishable
        } else {
            c.distinguishable
        }
    });
    Ok(DistinguishabilityReport {
        window,
        signatures,
        comparisons,
        timing_feasible,
        local_post_selection: delays.kind.is_hugged(),
    })
}

fn non_negative(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || value < 0.0 {
        return Err(Error::NegativeExtent { name, value });
    }
    Ok(())
}
