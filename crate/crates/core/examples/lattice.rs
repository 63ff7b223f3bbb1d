//! Variables on a four-point phi-space: ordering, accessibility, maximality.

use std::sync::Arc;

use qvars::varlattice::{
    is_maximal, less_or_equal, strictly_less, PhiSpace, Variable, VariableSystem,
};

fn main() -> qvars::Result<()> {
    let phi = Arc::new(PhiSpace::from_angles_deg(
        ["45", "135", "225", "315"],
        &[45.0, 135.0, 225.0, 315.0],
    )?);

    // spin components along x and y, read off the sign of each coordinate
    let x = Variable::from_fn("spin_x", &phi, |i, _| {
        let v = phi.embedding().unwrap()[i][0];
        (if v >= 0.0 { "+" } else { "-" }).to_owned()
    });
    let y = Variable::from_fn("spin_y", &phi, |i, _| {
        let v = phi.embedding().unwrap()[i][1];
        (if v >= 0.0 { "+" } else { "-" }).to_owned()
    });
    let both = Variable::from_fn("quadrant", &phi, |i, _| {
        format!("{}{}", x.value_at(i), y.value_at(i))
    });
    let product = both.map_values("xy", |q| {
        if q == "++" || q == "--" {
            "+".into()
        } else {
            "-".into()
        }
    });

    println!("{x}\n{y}\n{both}\n{product}");
    println!("spin_x <= quadrant: {}", less_or_equal(&x, &both)?);
    println!("spin_x <  quadrant: {}", strictly_less(&x, &both)?);
    println!("spin_x <= spin_y:   {}", less_or_equal(&x, &y)?);

    let system = VariableSystem::new(Arc::clone(&phi), vec![x.clone(), y.clone()], None)?;
    println!("\naccessible generators: spin_x, spin_y");
    for v in [&x, &y, &product] {
        println!("  {:<7} accessible={}", v.name(), system.is_accessible(v)?);
    }
    println!("  spin_x maximal: {}", is_maximal(&x, &system)?);
    println!("  quadrant accessible: {}", system.is_accessible(&both)?);
    println!(
        "  accessible partitions: {}",
        system.accessible_partitions()?.len()
    );
    Ok(())
}
