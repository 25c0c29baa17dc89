//! Closed form, quadrature and amplitude-level probabilities side by side.

use grav_bell::arrays::{path_proper_times, standard_geometry};
use grav_bell::quantum::{
    probability_amplitude_oracle, probability_gaussian, probability_quadrature, visibility, FrequencyGrid,
};
use grav_bell::{ArrayKind, GaussianSpectrum, GravityModel, JointSpectrum, PhasePair};

fn main() -> grav_bell::Result<()> {
    let model = GravityModel::earth();
    let left = GaussianSpectrum::from_bandwidth(806e-9, 644.2e-9, &model)?;
    let right = GaussianSpectrum::from_bandwidth(706e-9, 644.2e-9, &model)?;
    let spectrum = JointSpectrum::product(left, right);
    let grid = FrequencyGrid::for_spectrum(&spectrum)?;
    let phases = PhasePair::default();

    for kind in [ArrayKind::Franson, ArrayKind::HuggedRotatedBalanced] {
        let geometry = standard_geometry(kind, 1e4, 1e4, 1e-13, &model)?;
        let times = path_proper_times(&geometry, &model)?;
        let (d12, d1p2p) = (times.g1_g2(), times.g1p_g2p());
        println!(
            "{} (V = {:.6})",
            kind.name(),
            visibility(d12, d1p2p, left.sigma(), right.sigma())
        );
        let rows = [
            (
                "closed form",
                probability_gaussian(d12, d1p2p, &left, &right, phases),
            ),
            (
                "quadrature",
                probability_quadrature(d12, d1p2p, &spectrum, phases)?,
            ),
            (
                "amplitude",
                probability_amplitude_oracle(&times, geometry.post_selection_offset(), phases, &grid)?,
            ),
        ];
        for (name, p) in rows {
            println!(
                "  {name:<12} p++ {:.10}  p+- {:.10}  p-+ {:.10}  p-- {:.10}",
                p.p_pp, p.p_pm, p.p_mp, p.p_mm
            );
        }
    }
    Ok(())
}
