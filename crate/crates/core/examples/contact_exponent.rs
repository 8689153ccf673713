//! Contact exponent nu for every family with a y_N series, both parities,
//! with the shift fixed by stabilizing the last two estimates.

use fplmap::analysis::{k_series, solve_shift, Parity, Precision, RealSeries};
use fplmap::cli::{reference_series, reference_tables, theory_class};
use fplmap::exact::rigid4_k;
use fplmap::kpz::CriticalData;
use fplmap::transfer::Observable;

fn row(name: &str, k: &RealSeries, top: usize, predicted: f64, p: &Precision) {
    for parity in [Parity::Even, Parity::Odd] {
        let n = if Parity::of(top) == parity { top } else { top - 1 };
        match solve_shift(k, parity, n, p) {
            Ok(s) => println!(
                "{name}\t{parity}\t{n}\t{:.4}\t{:.5}\t{predicted:.6}",
                s.s_star, s.nu
            ),
            Err(e) => println!("{name}\t{parity}\t{n}\t{e}"),
        }
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = Precision::default();
    println!("family\tparity\tN_max\ts*\tnu\tpredicted");

    let rigid = RealSeries::contiguous(1, (1..=34u64).map(|n| p.rational(&rigid4_k(n))).collect());
    row("rigid:4", &rigid, 26, 0.5, &p);

    for table in reference_tables() {
        let file = reference_series(&table);
        let (Ok(z), Ok(y)) = (file.series(Observable::Z), file.series(Observable::Y)) else {
            continue;
        };
        let k = k_series(&z, &y, &p)?;
        let predicted = CriticalData::from_n(0.0, theory_class(&table.family))?
            .contact()?
            .nu;
        row(&table.family.to_string(), &k, z.len() - 8, predicted, &p);
    }
    Ok(())
}
