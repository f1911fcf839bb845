//! Serialize every bundled object to the JSON file formats: the catalog,
//! the tracker models, the restricted-root data and the involution
//! models. Useful as a reference for writing input files by hand.
//!
//!     cargo run -p polarweyl --example export_formats -- [out_dir]

use polarweyl::catalog::{bundled_entries, CatalogFile};
use polarweyl::io::{InvolutionModelFile, PolarModelFile, RootDatumFile};
use polarweyl::symspace::bundled_symmetric_spaces;
use polarweyl::tracker::{normal_crossings_model, quadric_model, symmetric_matrices_model};
use std::fs;
use std::path::Path;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "exported-data".to_string());
    let out = Path::new(&out);
    fs::create_dir_all(out.join("models"))?;
    fs::create_dir_all(out.join("symspace"))?;
    fs::create_dir_all(out.join("involution"))?;

    let entries = bundled_entries()?;
    let catalog = CatalogFile { entries: entries.iter().map(|e| e.to_file()).collect() };
    fs::write(out.join("catalog.json"), serde_json::to_string_pretty(&catalog)? + "\n")?;
    println!("catalog.json: {} entries", catalog.entries.len());

    for (name, model) in [
        ("quadric3", quadric_model(3)?),
        ("normal_crossings3", normal_crossings_model(3)?),
        ("symmetric_matrices3", symmetric_matrices_model()?),
    ] {
        let file = PolarModelFile::from_model(&model)?;
        let path = out.join("models").join(format!("{name}.json"));
        fs::write(&path, serde_json::to_string_pretty(&file)? + "\n")?;
        println!("{}", path.display());
    }

    for bundled in bundled_symmetric_spaces()? {
        let slug = bundled
            .datum
            .name
            .replace(['(', ')', ',', ' '], "")
            .replace('+', "-");
        let datum_file = RootDatumFile::from_datum(&bundled.datum);
        let path = out.join("symspace").join(format!("{slug}.json"));
        fs::write(&path, serde_json::to_string_pretty(&datum_file)? + "\n")?;
        let model_file = InvolutionModelFile::from_model(&bundled.model);
        let path = out.join("involution").join(format!("{slug}.json"));
        fs::write(&path, serde_json::to_string_pretty(&model_file)? + "\n")?;
        println!("symspace + involution: {slug}");
    }

    Ok(())
}
