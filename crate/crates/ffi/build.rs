//! Regenerates include/approxcurve.h from the extern "C" surface. A
//! generation failure keeps the committed header and surfaces as a build
//! warning instead of breaking downstream consumers.

use std::path::Path;

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("cargo sets CARGO_MANIFEST_DIR");
    let header = Path::new(&crate_dir).join("include").join("approxcurve.h");
    match cbindgen::generate(&crate_dir) {
        Ok(bindings) => {
            bindings.write_to_file(&header);
        }
        Err(e) => {
            println!("cargo:warning=header generation failed: {e}; keeping the committed header");
        }
    }
}
