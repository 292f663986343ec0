// probe: fraction of sector strings with a unique codeword preimage
use qsci_core::chem::SpinOrbitalOrdering;
use qsci_core::decoder::LookupTable;
use qsci_core::encoder::{generate_encoder, Strategy};

fn main() {
    let a: Vec<String> = std::env::args().skip(1).collect();
    let (m, q, n): (usize, usize, usize) =
        (a[0].parse().unwrap(), a[1].parse().unwrap(), a[2].parse().unwrap());
    let seed: u64 = a.get(3).map(|s| s.parse().unwrap()).unwrap_or(0);
    let g = generate_encoder(m, q, Strategy::Chemical,
                             &SpinOrbitalOrdering::identity(m), None, seed, 1)
        .unwrap();
    let table = LookupTable::build(&g, n).unwrap();
    println!(
        "m={m} q={q} n={n} seed={seed}: injective={} image={} unique_frac={:.6}",
        table.is_injective(),
        table.image_size(),
        table.unique_fraction(),
    );
}
