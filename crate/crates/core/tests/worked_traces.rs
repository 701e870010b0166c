use std::sync::Arc;

use dccode::windec::LevelUsed;
use dccode::{dcc_build, sliding_decode, DoublyCyclicCode, Elem, FieldTable, SymbolStream, WindecConfig, WindowBlockDecoder};

fn gf5_code() -> Arc<DoublyCyclicCode> {
    Arc::new(dcc_build(Arc::new(FieldTable::prime(5).unwrap()), 1, 2).unwrap())
}

fn stream(blocks: &[[Elem; 4]]) -> SymbolStream {
    SymbolStream::from_blocks(4, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
}

fn digits(s: &str) -> Vec<Elem> {
    s.chars().map(|c| c.to_digit(10).unwrap()).collect()
}

fn decode(code: &Arc<DoublyCyclicCode>, rx: &SymbolStream) -> dccode::DecodeReport<dccode::PartialDecodeOutcome> {
    let dec = WindowBlockDecoder::new(code.clone(), WindecConfig::default()).unwrap();
    sliding_decode(rx, &code.window_context(None), code.encoder(), &dec).unwrap()
}

#[test]
fn five_block_trace() {
    let code = gf5_code();
    let rx = stream(&[[4, 0, 3, 1], [1, 1, 3, 0], [3, 2, 1, 0], [3, 2, 1, 3], [0, 1, 0, 0]]);
    let rep = decode(&code, &rx);
    let states = ["000000000000", "232321340000", "122042130000", "421300000000", "000000000000"];
    // second word: (1130) - (2323) = (4312) in its first block
    let words = ["403111303210", "431211313213", "204040000100", "400001000000", "010000000000"];
    let levels = [LevelUsed::Level(1), LevelUsed::Level(0), LevelUsed::Level(1), LevelUsed::Level(2), LevelUsed::Level(2)];
    assert_eq!(rep.cycles.len(), 5);
    for (j, c) in rep.cycles.iter().enumerate() {
        assert_eq!(c.state, digits(states[j]), "state in cycle {j}");
        assert_eq!(c.word, digits(words[j]), "word in cycle {j}");
        assert_eq!(c.detail.level_used, levels[j], "level in cycle {j}");
        assert!(!c.best_effort);
    }
    let l1 = rep.cycles[1].detail.trace.iter().find(|r| r.level == 1).unwrap();
    assert_eq!(l1.distance, Some(5));
    assert_eq!(rep.cycles[0].detail.trace[1].distance, Some(2));
    assert_eq!(rep.cycles[2].detail.trace[1].distance, Some(3));
    assert_eq!(rep.cycles[3].detail.distance, 2);
    assert_eq!(rep.cycles[4].detail.distance, 1);
    assert_eq!(rep.messages.flat(), vec![1, 2, 0, 0, 0]);
    assert_eq!(rep.decoded, stream(&[[2, 4, 3, 1], [1, 1, 3, 0], [1, 2, 2, 0], [4, 2, 1, 3], [0, 0, 0, 0]]));
    assert_eq!(rep.overall_distance, 6);
    assert!(rep.window_distances.iter().all(|&w| w <= 4));
    assert!(!rep.any_detected());
}

#[test]
fn detection_on_second_window() {
    let code = gf5_code();
    let rx = stream(&[[2, 0, 0, 0], [4, 0, 0, 4], [4, 0, 0, 0], [0, 4, 3, 1]]);
    let rep = decode(&code, &rx);
    assert_eq!(rep.decoded.weight(), 0);
    assert_eq!(rep.window_distances[1], 6);
    assert_eq!(rep.flagged_windows(), vec![1]);
}

#[test]
fn closest_codeword_found_despite_bad_first_window() {
    let code = gf5_code();
    let rx = stream(&[
        [2, 4, 3, 1], [1, 1, 3, 0], [0, 0, 0, 0], [0, 2, 0, 0], [4, 1, 0, 0],
        [0, 0, 0, 4], [0, 0, 0, 3], [0, 0, 2, 0], [0, 0, 0, 4], [3, 4, 0, 0],
    ]);
    let rep = decode(&code, &rx);
    assert_eq!(rep.messages.flat(), vec![1, 2, 2, 1, 4, 3, 3, 4, 0, 0]);
    assert_eq!(
        rep.decoded,
        stream(&[
            [2, 4, 3, 1], [1, 1, 3, 0], [0, 0, 3, 2], [0, 2, 3, 0], [4, 1, 0, 0],
            [1, 0, 0, 4], [0, 0, 2, 3], [0, 3, 2, 0], [4, 0, 2, 4], [3, 4, 2, 1],
        ])
    );
    assert_eq!(rep.window_distances, vec![2, 3, 3, 2, 2, 3, 4, 5, 4, 2]);
    assert_eq!(rep.overall_distance, 10);
    assert_eq!(rep.flagged_windows(), vec![7]);
}

#[test]
fn window_condition_does_not_imply_closest() {
    let code = gf5_code();
    let rx = stream(&[
        [2, 4, 0, 0], [1, 1, 0, 0], [0, 0, 0, 0], [0, 2, 3, 0], [4, 1, 0, 0],
        [0, 0, 0, 0], [0, 0, 2, 3], [0, 3, 2, 0], [0, 0, 0, 0], [3, 4, 0, 0],
    ]);
    let rep = decode(&code, &rx);
    assert_eq!(rep.decoded.weight(), 0);
    // weight of the received word
    assert_eq!(rep.overall_distance, 14);
    let other = code.encoder().encode(&SymbolStream::from_flat(1, &[1, 2, 2, 1, 4, 3, 3, 4]).unwrap()).unwrap();
    assert_eq!(other.distance(&rx), 12);
    assert!(rep.window_distances.iter().all(|&w| w <= 4));
}
