//! mu^2 for every bundled family, with the configuration exponent of the
//! family's universality class divided out.

use fplmap::analysis::{mu2_estimate, Precision};
use fplmap::cli::{reference_series, reference_tables, theory_class};
use fplmap::kpz::CriticalData;
use fplmap::transfer::Observable;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = Precision::default();
    println!("table\tfamily\tclass\tgamma\tN_max\tmu^2");
    for table in reference_tables() {
        let file = reference_series(&table);
        let z = file.series(Observable::Z)?;
        let class = theory_class(&table.family);
        let gamma = CriticalData::from_n(0.0, class)?.gamma;
        let n_max = z.len() - 1;
        let report = mu2_estimate(&p.series(&z), gamma, n_max, &p)?;
        println!(
            "{}\t{}\t{class}\t{gamma:.4}\t{n_max}\t{:.3}",
            table.id, table.family, report.final_value
        );
    }
    Ok(())
}
