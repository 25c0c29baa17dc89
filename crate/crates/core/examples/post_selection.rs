//! Which arrays allow the maximally entangled post-selection, for a few coincidence windows.

use grav_bell::arrays::{classify_post_selection, path_proper_times, standard_geometry};
use grav_bell::{ArrayKind, GravityModel};

fn main() -> grav_bell::Result<()> {
    for (label, model) in [
        ("earth", GravityModel::earth()),
        ("no gravity", GravityModel::flat()),
    ] {
        println!("{label}");
        for kind in ArrayKind::ALL {
            let geometry = standard_geometry(kind, 1e4, 1e4, 0.0, &model)?;
            let times = path_proper_times(&geometry, &model)?;
            let verdicts: Vec<String> = [1e-18, 1e-16]
                .iter()
                .map(|&w| {
                    let report = classify_post_selection(&times, w).unwrap();
                    let how = if report.timing_feasible {
                        "timing"
                    } else if report.local_post_selection {
                        "local"
                    } else {
                        "no"
                    };
                    format!("window {w:.0e}: {how}")
                })
                .collect();
            println!("  {:<16} {}", kind.name(), verdicts.join(", "));
        }
    }
    Ok(())
}
