//! Regenerates the shipped generator tables.

use twistkit::mapping::GeneratorTable;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = GeneratorTable::table_dir();
    std::fs::create_dir_all(&dir)?;
    for g in 2..=4 {
        for b in 0..=2 {
            for p in 1..=3 {
                let t = GeneratorTable::standard(g, b, p)?;
                t.validate()?;
                std::fs::write(dir.join(GeneratorTable::file_name(g, b, p)), t.to_json() + "\n")?;
            }
        }
    }
    println!("wrote tables to {}", dir.display());
    Ok(())
}
