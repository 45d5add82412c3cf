use std::fmt::Write as _;
use std::path::Path;
use std::{env, fs};

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog");
    println!("cargo:rerun-if-changed={}", root.display());
    let mut files = Vec::new();
    for dim in fs::read_dir(&root).expect("catalog directory") {
        let dim = dim.unwrap().path();
        if !dim.is_dir() {
            continue;
        }
        println!("cargo:rerun-if-changed={}", dim.display());
        for f in fs::read_dir(&dim).unwrap() {
            let f = f.unwrap().path();
            let name = f.file_name().unwrap().to_string_lossy().to_string();
            if let Some(stem) = name.strip_suffix(".cpa.json") {
                files.push((stem.to_string(), f.clone(), dim.join(format!("{stem}.expect.json"))));
            }
        }
    }
    files.sort();
    let mut out = String::from("pub(crate) static BUILTIN: &[(&str, &str, &str)] = &[\n");
    for (stem, pair, expect) in files {
        writeln!(
            out,
            "    ({stem:?}, include_str!({:?}), include_str!({:?})),",
            pair.display().to_string(),
            expect.display().to_string()
        )
        .unwrap();
    }
    out.push_str("];\n");
    fs::write(Path::new(&env::var("OUT_DIR").unwrap()).join("builtin.rs"), out).unwrap();
}
