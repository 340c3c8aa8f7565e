fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("cargo sets the manifest dir");
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    let bindings = cbindgen::generate(&crate_dir).expect("C header generation");
    // `write_to_file` leaves the committed header untouched when nothing
    // changed, so rebuilds stay incremental.
    bindings.write_to_file(std::path::Path::new(&crate_dir).join("include/detrep.h"));
}
