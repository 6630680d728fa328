use std::path::PathBuf;

use crg_core::group::DEFAULT_ORDER_BOUND;
use crg_core::{ExceptionalRecord, ReflectionGroup};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/exceptional")
}

#[test]
fn tetrahedral_orders() {
    let family = crg_datagen::tetrahedral_family().unwrap();
    let orders: Vec<(String, u64)> = family.iter().map(|g| (g.name.clone(), g.order)).collect();
    assert_eq!(
        orders,
        vec![
            ("G4".into(), 24),
            ("G5".into(), 72),
            ("G6".into(), 48),
            ("G7".into(), 144)
        ]
    );
    for g in &family {
        let built = ReflectionGroup::build_from_matrices(&g.record(), DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(built.order() as u64, g.order);
        assert!(g
            .generators
            .iter()
            .all(|m| built.is_reflection(built.index_of_matrix(m).unwrap())));
    }
}

#[test]
fn checked_in_data_is_reproducible() {
    for g in crg_datagen::all().unwrap() {
        let stored = ExceptionalRecord::load_named(&data_dir(), &g.name).unwrap();
        let fresh = g.record();
        assert_eq!(
            serde_json::to_value(&fresh.generators).unwrap(),
            serde_json::to_value(&stored.generators).unwrap(),
            "{}",
            g.name
        );
        assert_eq!(
            (fresh.declared_order, fresh.conductor),
            (stored.declared_order, stored.conductor)
        );
    }
}
