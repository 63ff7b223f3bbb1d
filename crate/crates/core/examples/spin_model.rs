//! The sign model `sign(cos(a, phi))` on the circle and on the sphere.

use qvars::experiments::{angle_between, lhv_correlation, spin_monte_carlo, SpinModel};
use qvars::rng::RngStream;

fn main() -> qvars::Result<()> {
    let n = 200_000;
    let rng = RngStream::new(3, 0);
    let models = [
        SpinModel::planar(&[0.0, 30.0, 90.0, 180.0]),
        SpinModel::spatial(vec![[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.6, 0.0, 0.8]])?,
    ];
    for model in &models {
        let stats = spin_monte_carlo(model, n, &rng, 0);
        println!("dimension {} ({n} trials)", model.dimension());
        for i in 0..model.directions().len() {
            println!(
                "  P(+1) along {:?}: {:.4}",
                model.directions()[i],
                stats.marginal(i)
            );
        }
        let d = model.directions();
        for j in 1..d.len() {
            let g = angle_between(&d[0], &d[j]);
            println!(
                "  E(0,{j}) at {:>5.1} deg: {:+.4} (1 - 2g/pi = {:+.4})",
                g.to_degrees(),
                stats.correlation(0, j),
                lhv_correlation(g)
            );
        }
    }
    Ok(())
}
