use std::env;
use std::path::PathBuf;

use cbindgen::Language;

fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap());
    println!("cargo:rerun-if-changed=src/lib.rs");

    let config = cbindgen::Config {
        cpp_compat: true,
        usize_is_size_t: true,
        documentation: true,
        header: Some("/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */".into()),
        ..Default::default()
    };

    cbindgen::Builder::new()
        .with_config(config)
        .with_crate(&crate_dir)
        .with_language(Language::C)
        .with_include_guard("FASTDICE_H")
        .with_sys_include("stddef.h")
        .with_sys_include("stdint.h")
        .with_no_includes()
        .generate()
        .expect("unable to generate C bindings")
        .write_to_file(crate_dir.join("include").join("fastdice.h"));
}
