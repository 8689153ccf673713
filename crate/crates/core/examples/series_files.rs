//! Write an enumeration as CSV and JSON, read the CSV back, and analyze it.

use fplmap::analysis::Precision;
use fplmap::cli::{cmd_analyze, cmd_enumerate, AnalysisKind, SeriesFile};
use fplmap::transfer::{EngineOptions, Observable};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let family = "rigid:4".parse()?;
    let run = cmd_enumerate(
        &family,
        40,
        &[Observable::Z, Observable::Y],
        EngineOptions::default(),
        true,
    )?;
    let csv = run.file.to_csv();
    println!("{}", csv.lines().take(8).collect::<Vec<_>>().join("\n"));
    let json = run.file.to_json();
    println!("...\n{} ...", &json[..json.len().min(160)]);

    let back = SeriesFile::from_csv(&csv)?;
    assert_eq!(back, run.file);
    print!(
        "{}",
        cmd_analyze(AnalysisKind::Nu, &back, Some(26), None, &Precision::default())?
    );
    Ok(())
}
