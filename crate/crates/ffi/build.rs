use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap());
    let header = crate_dir.join("include").join("resparam.h");
    let config = cbindgen::Config {
        language: cbindgen::Language::C,
        include_guard: Some("RESPARAM_H".to_string()),
        cpp_compat: true,
        documentation: true,
        header: Some("/* C interface to the resparam solver. */".to_string()),
        ..Default::default()
    };
    match cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
    {
        Ok(bindings) => {
            bindings.write_to_file(&header);
        }
        // Keep builds alive while the source is mid-edit; rustc will report
        // the real error.
        Err(e) => println!("cargo:warning=cbindgen skipped: {e}"),
    }
    println!("cargo:rerun-if-changed=src/lib.rs");
}
