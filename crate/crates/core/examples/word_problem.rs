//! Normal forms, inversion sets and the hyperbolicity test for a few
//! Coxeter systems.

use buildings::coxeter::{CoxeterMatrix, CoxeterSystem, INFINITY};

fn main() -> buildings::Result<()> {
    let a2_tilde = CoxeterSystem::new(CoxeterMatrix::from_fn(3, |_, _| 3)?);
    for word in [&[0, 1, 0][..], &[1, 0, 1], &[0, 1, 2, 0, 1, 2], &[2, 2, 1]] {
        let w = a2_tilde.normal_form(word)?;
        let walls: Vec<String> = a2_tilde.inversion_set(&w).iter().map(|t| t.to_string()).collect();
        println!("{word:?} -> {w} (length {}), walls {{{}}}", w.len(), walls.join(", "));
    }
    println!(
        "ball sizes: {:?}",
        (0..=5)
            .map(|r| a2_tilde.ball(r).map(|b| b.len()))
            .collect::<Result<Vec<_>, _>>()?
    );

    let pentagon = CoxeterSystem::new(CoxeterMatrix::from_fn(5, |i, j| {
        if (i + 1) % 5 == j || (j + 1) % 5 == i {
            2
        } else {
            INFINITY
        }
    })?);
    for (name, w) in [("affine A2", &a2_tilde), ("right-angled pentagon", &pentagon)] {
        match w.hyperbolicity_witness()? {
            None => println!("{name}: hyperbolic"),
            Some(witness) => println!("{name}: not hyperbolic ({witness})"),
        }
    }
    Ok(())
}
