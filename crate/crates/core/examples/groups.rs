//! Finite permutation groups: verification, closure, orbits, isotropy.

use qvars::groupaction::{close_generators, counting_measure, verify_group, Permutation};

fn main() -> qvars::Result<()> {
    let quarter = Permutation::from_cycles(4, &[&[0, 1, 2, 3]])?;
    let rotations = close_generators(4, std::slice::from_ref(&quarter))?;
    println!("rotations of a square: order {}", rotations.order());
    for (i, k) in rotations.elements().iter().enumerate() {
        println!("  element {i}: {:?}", k.as_slice());
    }
    println!(
        "  transitive: {}, trivial isotropy: {}",
        rotations.is_transitive(),
        rotations.has_trivial_isotropy()
    );
    println!(
        "  counting measure invariant: {}",
        counting_measure(4).is_invariant_under(&rotations)
    );

    // a lone 3-cycle without its powers is not closed
    match verify_group(vec![vec![0, 1, 2], vec![1, 2, 0]]) {
        Ok(_) => println!("unexpected: accepted"),
        Err(e) => println!("\n{{id, (0 1 2)}} rejected: {e}"),
    }

    let split = close_generators(6, &[Permutation::from_cycles(6, &[&[0, 1, 2], &[3, 4]])?])?;
    println!(
        "\n<(0 1 2)(3 4)> on 6 points: order {}, orbits {:?}",
        split.order(),
        split.orbits()
    );

    let s4 = close_generators(4, &[quarter, Permutation::from_cycles(4, &[&[0, 1]])?])?;
    println!(
        "S4: order {}, |Stab(0)| = {}",
        s4.order(),
        s4.stabilizer(0).len()
    );
    Ok(())
}
