//! Closed-form classical invariants per type (Weyl group order, dual Coxeter
//! number, root counts, Coxeter number, Cartan determinant), kept as a data
//! file apart from anything the crate computes so it can serve as a check.

use serde::Deserialize;

use super::CartanType;

const DATA: &str = include_str!("../../data/classical_invariants.json");

#[derive(Clone, Debug, Deserialize)]
pub struct ClassicalRow {
    #[serde(rename = "type")]
    pub cartan_type: CartanType,
    pub weyl_order: u64,
    pub dual_coxeter: u64,
    pub positive_roots: u64,
    pub coxeter_number: u64,
    pub cartan_det: i64,
}

#[derive(Deserialize)]
struct Table {
    rows: Vec<ClassicalRow>,
}

pub fn classical() -> Vec<ClassicalRow> {
    let t: Table = serde_json::from_str(DATA).expect("embedded table is valid JSON");
    t.rows
}

pub fn lookup(t: CartanType) -> Option<ClassicalRow> {
    classical().into_iter().find(|r| r.cartan_type == t)
}
