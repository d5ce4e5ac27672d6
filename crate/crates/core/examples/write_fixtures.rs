//! Regenerates the synthetic tracking files, the ROUTE lexicon and the
//! default place map under `fixtures/`.
//!
//! ```text
//! cargo run -p pdlsl --example write_fixtures -- fixtures
//! ```

use std::path::PathBuf;

use pdlsl::fixtures;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir)?;
    let files = [
        ("route.tracking.json", fixtures::route_tracking()),
        ("clean.tracking.json", fixtures::thirty_frames()),
        ("dropout.tracking.json", fixtures::route_tracking_right_dropout()),
        ("teleport.tracking.json", fixtures::route_tracking_teleport()),
        ("thrill.tracking.json", fixtures::thrill_sequence()),
    ];
    for (name, seq) in files {
        std::fs::write(dir.join(name), seq.to_json())?;
    }
    std::fs::write(dir.join("route.pdlsl"), fixtures::route_lexicon_text())?;
    std::fs::write(dir.join("placemap.toml"), pdlsl::PlaceMap::default().to_toml_string())?;
    Ok(())
}
