//! Area sweep up to twice the critical area, printed as CSV.

use grav_bell::chsh::critical_area;
use grav_bell::sweep::{sweep_csv, SigmaVariant, SweepSpec};
use grav_bell::GravityModel;

fn main() -> grav_bell::Result<()> {
    let model = GravityModel::earth();
    let mut spec = SweepSpec::area(0.0, 1.0, 21);
    let (left, right) = spec.source.spectra(&model)?;
    spec.stop = 2.0 * critical_area(left.sigma(), right.sigma(), &model)?;
    spec.sigma_variant = SigmaVariant::Compensated;
    spec.quantities = "visibility,sigma".parse().expect("known quantities");
    print!("{}", sweep_csv(&spec, &model)?);
    Ok(())
}
