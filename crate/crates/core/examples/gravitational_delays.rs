//! Proper flight times and pairwise delays of every array kind at 10 km x 10 km.

use grav_bell::arrays::{gravitational_delay, path_proper_times, standard_geometry};
use grav_bell::{ArrayKind, GravityModel};

fn main() -> grav_bell::Result<()> {
    let model = GravityModel::earth();
    let (l2p, height) = (1e4, 1e4);
    println!(
        "g H L2' / c^3 = {:.4e} s\n",
        gravitational_delay(l2p, height, &model)
    );

    for kind in ArrayKind::ALL {
        let geometry = standard_geometry(kind, l2p, height, 0.0, &model)?;
        let times = path_proper_times(&geometry, &model)?;
        println!("{}", kind.name());
        for (label, delay) in times.pairwise() {
            println!("  delta_{label:<8} {delay:>12.4e} s");
        }
        println!("  constraint residual {:.1e} s\n", times.constraint_residual());
    }
    Ok(())
}
