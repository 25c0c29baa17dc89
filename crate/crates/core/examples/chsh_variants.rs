//! The CHSH functional of a 10 km x 10 km array in each of its forms, and the critical area.

use grav_bell::arrays::gravitational_delay;
use grav_bell::chsh::{
    critical_area, sigma_balanced, sigma_classical, sigma_general, sigma_phase_compensated,
    sigma_rotated_hugged,
};
use grav_bell::{GaussianSpectrum, GravityModel, JointSpectrum, PhaseSettings};

fn main() -> grav_bell::Result<()> {
    let model = GravityModel::earth();
    let left = GaussianSpectrum::from_bandwidth(806e-9, 644.2e-9, &model)?;
    let right = GaussianSpectrum::from_bandwidth(706e-9, 644.2e-9, &model)?;
    let (s1, s2, w1, w2) = (left.sigma(), right.sigma(), left.omega_bar(), right.omega_bar());
    let d = gravitational_delay(1e4, 1e4, &model);

    let general = sigma_general(
        d,
        d,
        &JointSpectrum::product(left, right),
        &PhaseSettings::canonical(),
    )?;
    println!("delay               {d:.4e} s");
    println!(
        "general (signed)    {:.6}  E = {:.4?}",
        general.sigma, general.correlations
    );
    println!("balanced            {:.6}", sigma_balanced(d, s1, s2, w1, w2));
    println!(
        "rotated Hugged      {:.6}",
        sigma_rotated_hugged(d, s1, s2, w1, w2)
    );
    println!("phase compensated   {:.6}", sigma_phase_compensated(d, d, s1, s2));
    println!("classical light     {:.6}", sigma_classical(d, d, s1, s2, w1, w2));

    let a_star = critical_area(s1, s2, &model)?;
    let d_star = model.g * a_star / model.c.powi(3);
    println!("critical area       {a_star:.4e} m^2");
    println!(
        "compensated at A*   {:.15}",
        sigma_phase_compensated(d_star, d_star, s1, s2)
    );
    Ok(())
}
