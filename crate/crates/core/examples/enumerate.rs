//! Enumerate z_N and y_N for a family given on the command line.
//!
//! cargo run --release --example enumerate -- mixed:2=1,3=1 14

use fplmap::transfer::{EngineOptions, Propagator};
use fplmap::FamilySpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let family: FamilySpec = args.next().as_deref().unwrap_or("regular:3").parse()?;
    let n_max: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(12);

    let mut prop = Propagator::new(&family, EngineOptions::all_cores());
    println!("{family}\nN\tstates\tz_N\ty_N\tk_N");
    for _ in 0..n_max {
        let step = prop.advance()?;
        let k = step.y.to_string().parse::<f64>()? / step.z.to_string().parse::<f64>()?;
        println!("{}\t{}\t{}\t{}\t{k:.4}", step.n, step.states, step.z, step.y);
    }
    Ok(())
}
