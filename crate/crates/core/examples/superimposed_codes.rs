//! Kautz-Singleton, parity and concatenated ("fast") superimposed codes:
//! parameters, exhaustive verification and decoding of small unions.

use apmc::codes::{ks_parameters, SuperimposedCode};

fn main() -> apmc::Result<()> {
    for (d, u) in [(1, 16), (2, 16), (3, 100), (3, 1 << 20)] {
        let (q, ell) = ks_parameters(d, u)?;
        println!(
            "d={d} u={u}: field {q}, {ell} coefficients, length {}",
            q * q
        );
    }
    let (d, u) = (3, 12);
    let ks = SuperimposedCode::kautz_singleton(d, u)?;
    let parity = SuperimposedCode::parity(u)?;
    let fast = SuperimposedCode::fast(d, u)?;
    for (name, code) in [
        ("kautz-singleton", &ks),
        ("parity", &parity),
        ("fast", &fast),
    ] {
        let order = if name == "parity" { 1 } else { d };
        println!(
            "{name}: length {}, {order}-superimposed: {}",
            code.len(),
            code.verify_superimposed(order)
        );
    }
    let x = [1, 7, 10];
    let word = fast.encode_set(&x);
    println!("fast code decodes {:?} -> {:?}", x, fast.decode(&word)?);
    Ok(())
}
