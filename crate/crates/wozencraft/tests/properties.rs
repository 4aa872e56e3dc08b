//! Property-based invariants over randomly drawn inputs.

use proptest::prelude::*;

use wozencraft::cli::{parse_param_file, render_param_file};
use wozencraft::codec::{derive_params, encode};
use wozencraft::params::CodeParams;

fn params11() -> CodeParams {
    derive_params(2, 10, None).unwrap()
}

proptest! {
    // the code is linear: encoding commutes with coordinatewise addition
    #[test]
    fn encoding_is_linear(
        a in prop::collection::vec(0u64..2, 10),
        b in prop::collection::vec(0u64..2, 10),
        kept in 1usize..=10,
    ) {
        let mut p = params11();
        p.kept = kept;
        let sum: Vec<u64> = a.iter().zip(&b).map(|(x, y)| (x + y) % 2).collect();
        let ca = encode(&p, &a).unwrap();
        let cb = encode(&p, &b).unwrap();
        let csum = encode(&p, &sum).unwrap();
        let direct: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % 2).collect();
        prop_assert_eq!(csum, direct);
    }

    // parameter files survive a write/load cycle for every kept value
    #[test]
    fn param_files_round_trip(kept in 1usize..=10) {
        let mut p = params11();
        p.kept = kept;
        p.sidon.generator_code = None;
        let text = render_param_file(&p);
        let reloaded = parse_param_file(&text).unwrap();
        prop_assert_eq!(&reloaded, &p);
        prop_assert_eq!(render_param_file(&reloaded), text);
    }
}
