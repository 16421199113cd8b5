//! Runs the `check` suite on a bundled instance file, as the command line
//! tool does.

use buildings::harness::{cmd_check, Options};
use buildings::instance::InstanceSpec;
use std::path::Path;

fn main() -> buildings::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("instances/s3-loaded.inst");
    let spec = InstanceSpec::read(&path)?;
    let report = cmd_check(&spec, &Options::default())?;
    print!("{report}");
    println!("exit code {}", report.exit_code());
    Ok(())
}
