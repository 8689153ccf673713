//! Configuration exponent from the bundled 3-regular series: the raw
//! b_N and both accelerated sequences, which tend to 2 - gamma.

use fplmap::analysis::{accel_bar, accel_tilde, b_series, to_f64, Precision};
use fplmap::cli::{reference_series, reference_table};
use fplmap::kpz::gamma_of_c;
use fplmap::transfer::Observable;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = Precision::default();
    let file = reference_series(&reference_table("regular3").expect("bundled table"));
    let z = p.series(&file.series(Observable::Z)?);

    let b = b_series(&z, &p)?;
    let tilde = accel_tilde(&b, &p)?;
    let bar = accel_bar(&b)?;
    println!("N\tb\tb_tilde\tb_bar");
    for (n, v) in b.iter() {
        let cell =
            |x: Option<&fplmap::analysis::Real>| x.map_or("-".to_string(), |x| format!("{:.6}", to_f64(x)));
        println!(
            "{n}\t{:.6}\t{}\t{}",
            to_f64(v),
            cell(tilde.get(n)),
            cell(bar.series.get(n))
        );
    }
    println!("2 - gamma(c = -1) = {:.6}", 2.0 - gamma_of_c(-1.0)?);
    Ok(())
}
