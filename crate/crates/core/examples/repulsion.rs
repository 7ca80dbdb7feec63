//! Locates the repulsive features of gold / bromobenzene / silica at 300 K
//! and prints them together with a coarse free-energy sweep.

use lifshitz::analysis::{features, sweep, CsvColumns, FeatureRequest};
use lifshitz::lifshitz::{QuadratureSpec, SumSpec, SystemConfig};
use lifshitz::materials::shipped;

fn main() -> lifshitz::Result<()> {
    let config = SystemConfig::at_room_temperature(
        shipped::gold().model,
        shipped::bromobenzene().model,
        shipped::silica().model,
    )?;
    let quad = QuadratureSpec::default();
    let sum = SumSpec::default();

    let request = FeatureRequest {
        sphere_radius: Some(20e-6),
        ..FeatureRequest::default()
    };
    let report = features(&config, &request, &quad, &sum)?;
    println!("{}", report.to_json());

    let table = sweep(&config, 1e-9, 100e-9, 8, &quad, &sum)?;
    print!("{}", table.to_csv(CsvColumns::ALL));
    Ok(())
}
