//! Writes every figure table to a directory (default `figures/`).

use grav_bell::sweep::{figure_csv, Figure};
use grav_bell::GravityModel;

fn main() -> grav_bell::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "figures".into());
    std::fs::create_dir_all(&dir)?;
    let model = GravityModel::earth();
    for figure in Figure::ALL {
        let path = std::path::Path::new(&dir).join(format!("{}.csv", figure.name()));
        let csv = figure_csv(figure, &model)?;
        std::fs::write(&path, &csv)?;
        println!(
            "{:<6} {:>6} rows -> {}",
            figure.name(),
            csv.lines().count() - 1,
            path.display()
        );
    }
    Ok(())
}
