//! Benchmark fixtures.

use std::sync::Arc;

use dccode::harness::{inject, ErrorKind, ErrorModel};
use dccode::{dcc_build, DoublyCyclicCode, FieldTable, SymbolStream};

pub fn code(q: u32, k: usize, m: usize) -> Arc<DoublyCyclicCode> {
    let field = match q {
        16 => FieldTable::new(2, 4, None),
        32 => FieldTable::new(2, 5, None),
        _ => FieldTable::prime(q),
    };
    Arc::new(dcc_build(Arc::new(field.expect("field")), k, m).expect("code"))
}

/// Encoded message of `len` blocks with window-capped errors at full budget.
pub fn corrupted_stream(code: &DoublyCyclicCode, len: usize, seed: u64) -> SymbolStream {
    let q = code.field().q();
    let symbols: Vec<u32> = (0..len * code.k()).map(|i| (i as u32 * 7 + 3) % q).collect();
    let msg = SymbolStream::from_flat(code.k(), &symbols).expect("whole blocks");
    let sent = code.encoder().encode(&msg).expect("encode");
    let model = ErrorModel {
        kind: ErrorKind::WindowCapped { cap: code.d_formula() / 2, depth: code.m() + 1, rate: 0.2 },
        seed,
    };
    inject(code.field(), &sent, &model).expect("valid model").0
}
