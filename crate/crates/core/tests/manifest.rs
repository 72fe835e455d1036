//! The shipped catalog manifest must match the catalog in code.

#[test]
fn shipped_catalog_manifest_is_fresh() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../catalog.json");
    let shipped = std::fs::read_to_string(path).expect("catalog.json at the workspace root");
    let expected = serde_json::to_string_pretty(&t2fuzz::scalar::catalog_manifest()).unwrap();
    assert_eq!(
        shipped.trim_end(),
        expected.trim_end(),
        "catalog.json is stale; regenerate with `t2fuzz catalog --write --out .`"
    );
}
