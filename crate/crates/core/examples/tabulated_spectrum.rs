//! Round trip through the tabulated spectrum format and quadrature on the table.

use grav_bell::chsh::{sigma_gaussian, sigma_general};
use grav_bell::{GaussianSpectrum, GravityModel, JointSpectrum, PhaseSettings, TabulatedSpectrum};

fn main() -> grav_bell::Result<()> {
    let model = GravityModel::earth();
    let left = GaussianSpectrum::from_bandwidth(806e-9, 322.4e-9, &model)?;
    let right = GaussianSpectrum::from_bandwidth(706e-9, 322.4e-9, &model)?;

    let dir = std::env::temp_dir().join("grav-bell-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("spectrum.txt");
    std::fs::write(
        &path,
        TabulatedSpectrum::sample_product(&left, &right, 121, 6.0)?.to_text(),
    )?;
    let table = TabulatedSpectrum::load(&path)?;
    println!(
        "loaded {} x {} nodes from {}",
        table.omega1().len(),
        table.omega2().len(),
        path.display()
    );

    let settings = PhaseSettings::canonical();
    for d in [0.0, 2e-16, 5e-16, 1e-15] {
        let tabulated = sigma_general(d, d, &JointSpectrum::Tabulated(table.clone()), &settings)?;
        let exact = sigma_gaussian(d, d, &left, &right, &settings);
        println!(
            "delay {d:.1e} s  table {:+.9}  Gaussian {:+.9}",
            tabulated.sigma, exact.sigma
        );
    }
    Ok(())
}
