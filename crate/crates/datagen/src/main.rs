use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Parser;

/// Writes `<NAME>.json` generator files for the exceptional groups G4–G28.
#[derive(Parser)]
struct Args {
    /// Output directory.
    #[arg(long, default_value = "data/exceptional")]
    out: PathBuf,
    /// Only these groups (e.g. G4 G25); all when empty.
    names: Vec<String>,
}

fn main() -> Result<()> {
    let args = Args::parse();
    std::fs::create_dir_all(&args.out)?;
    for g in crg_datagen::all()? {
        if !args.names.is_empty() && !args.names.contains(&g.name) {
            continue;
        }
        let path = args.out.join(format!("{}.json", g.name));
        let text = serde_json::to_string_pretty(&g.record())?;
        std::fs::write(&path, text + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
        println!(
            "{}: order {}, {} generators",
            g.name,
            g.order,
            g.generators.len()
        );
    }
    Ok(())
}
