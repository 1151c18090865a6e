use twistkit::mapping::GeneratorTable;

#[test]
fn shipped_tables_load_and_match_builder() {
    for g in 2..=4 {
        for b in 0..=2 {
            for p in 1..=3 {
                let loaded = GeneratorTable::load(g, b, p).unwrap();
                assert_eq!(loaded, GeneratorTable::standard(g, b, p).unwrap(), "g={g} B={b} P={p}");
            }
        }
    }
}

#[test]
fn out_of_range_is_rejected() {
    assert!(GeneratorTable::load(5, 0, 1).is_err());
    assert!(GeneratorTable::load(2, 3, 1).is_err());
}

#[test]
fn corrupted_table_fails_validation() {
    let mut t = GeneratorTable::standard(2, 0, 1).unwrap();
    t.curves[0].homology.0[0] = 2;
    assert!(GeneratorTable::from_json(&t.to_json()).is_err());
}
