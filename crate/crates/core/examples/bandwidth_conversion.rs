//! Spectral widths of the broadband and SPDC sources from their wavelength bands.

use grav_bell::spectra::{omega_from_wavelength, sigma_from_bandwidth};
use grav_bell::GravityModel;

fn main() -> grav_bell::Result<()> {
    let model = GravityModel::earth();
    let sources = [
        (806e-9, 161.2e-9),
        (706e-9, 161.2e-9),
        (806e-9, 322.4e-9),
        (706e-9, 322.4e-9),
        (806e-9, 644.2e-9),
        (706e-9, 644.2e-9),
        (3300e-9, 370e-9),
        (995e-9, 34e-9),
    ];
    println!(
        "{:>10} {:>10} {:>12} {:>12}",
        "lambda nm", "dlambda nm", "omega rad/s", "sigma rad/s"
    );
    for (lambda0, delta) in sources {
        println!(
            "{:>10.1} {:>10.1} {:>12.4e} {:>12.4e}",
            lambda0 * 1e9,
            delta * 1e9,
            omega_from_wavelength(lambda0, &model)?,
            sigma_from_bandwidth(lambda0, delta, &model)?
        );
    }
    Ok(())
}
