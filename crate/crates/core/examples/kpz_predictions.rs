//! Central charges and predicted exponents as the loop weight n varies,
//! for the fully packed and dense classes.

use fplmap::kpz::{self, CriticalData, Lattice, ModelClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("class\tn\tkappa\tc\tgamma\tgamma_L\tnu");
    for class in [ModelClass::Fpl, ModelClass::Dense] {
        for n in [-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0] {
            // the fully packed charge exceeds 1 beyond n = 1
            let Ok(d) = CriticalData::from_n(n, class) else {
                println!("{class}\t{n:+.1}\tc > 1");
                continue;
            };
            let nu = d.contact()?.nu;
            println!(
                "{class}\t{n:+.1}\t{:.4}\t{:+.4}\t{:+.4}\t{:.4}\t{nu:.6}",
                d.kappa, d.c, d.gamma, d.gamma_l
            );
        }
    }

    println!("\nkappa = 8 and its dual 16/kappa = 2 share h = 3/8:");
    println!(
        "  h_4(8) = {}, h_2(2) = {}",
        kpz::watermelon_h(8.0, 4)?,
        kpz::watermelon_h(2.0, 2)?
    );
    println!("  nu(c = -2) = {:.6}", kpz::predicted_nu(-2.0)?.nu);
    println!("  nu(c = -1) = {:.6}", kpz::predicted_nu(-1.0)?.nu);

    println!("\nfully packed watermelons at kappa = 8");
    println!("ell\thex\tsquare\tdense gravity");
    for ell in 1..=6 {
        println!(
            "{ell}\t{:.5}\t{:.5}\t{:.5}",
            kpz::fpl_watermelon_h(8.0, ell, Lattice::Hexagonal)?,
            kpz::fpl_watermelon_h(8.0, ell, Lattice::Square)?,
            kpz::dense_gravitational_watermelon(8.0, ell)?
        );
    }
    Ok(())
}
