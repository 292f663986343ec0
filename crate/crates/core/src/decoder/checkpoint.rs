//! Text checkpoints for trained decoder networks.
//!
//! ```text
//! NNFED v1
//! arch <q> <hidden> <m>
//! n <n_electrons>
//! fingerprint <hex>
//! <flat parameters, one per line: w1 row-major, b1, w2 row-major, b2>
//! ```

use std::path::Path;

use ndarray::{Array1, Array2};

use super::mlp::MlpDecoder;
use super::DecoderError;

pub fn save_checkpoint(net: &MlpDecoder, path: impl AsRef<Path>) -> Result<(), DecoderError> {
    let mut out = String::from("NNFED v1\n");
    out.push_str(&format!("arch {} {} {}\n", net.q(), net.hidden(), net.m()));
    out.push_str(&format!("n {}\n", net.n_electrons()));
    out.push_str(&format!("fingerprint {:016x}\n", net.fingerprint()));
    for &v in net
        .w1
        .iter()
        .chain(net.b1.iter())
        .chain(net.w2.iter())
        .chain(net.b2.iter())
    {
        // round-trip-exact decimal form
        out.push_str(&format!("{v:e}\n"));
    }
    std::fs::write(path.as_ref(), out).map_err(|e| DecoderError::Checkpoint(e.to_string()))
}

pub fn load_checkpoint(path: impl AsRef<Path>) -> Result<MlpDecoder, DecoderError> {
    let bad = |msg: &str| DecoderError::Checkpoint(msg.to_string());
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| DecoderError::Checkpoint(e.to_string()))?;
    let mut lines = text.lines();

    if lines.next() != Some("NNFED v1") {
        return Err(bad("not an NNFED v1 checkpoint"));
    }
    let arch: Vec<usize> = expect_prefixed(lines.next(), "arch")?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad("bad arch field")))
        .collect::<Result<_, _>>()?;
    let [q, hidden, m] = arch[..] else {
        return Err(bad("arch needs three sizes"));
    };
    let n: usize = expect_prefixed(lines.next(), "n")?
        .trim()
        .parse()
        .map_err(|_| bad("bad electron count"))?;
    let fingerprint = u64::from_str_radix(
        expect_prefixed(lines.next(), "fingerprint")?.trim(),
        16,
    )
    .map_err(|_| bad("bad fingerprint"))?;
    if n > m || q == 0 || hidden == 0 || m == 0 {
        return Err(bad("inconsistent header sizes"));
    }

    let want = hidden * q + hidden + m * hidden + m;
    let mut params = Vec::with_capacity(want);
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        params.push(line.trim().parse::<f64>().map_err(|_| bad("bad parameter"))?);
    }
    if params.len() != want {
        return Err(bad(&format!("expected {want} parameters, found {}", params.len())));
    }

    let mut it = params.into_iter();
    let w1 = Array2::from_shape_vec((hidden, q), it.by_ref().take(hidden * q).collect())
        .unwrap();
    let b1 = Array1::from_vec(it.by_ref().take(hidden).collect());
    let w2 = Array2::from_shape_vec((m, hidden), it.by_ref().take(m * hidden).collect())
        .unwrap();
    let b2 = Array1::from_vec(it.collect());
    Ok(MlpDecoder { w1, b1, w2, b2, n_electrons: n, fingerprint })
}

fn expect_prefixed<'a>(line: Option<&'a str>, key: &str) -> Result<&'a str, DecoderError> {
    line.and_then(|l| l.strip_prefix(key))
        .ok_or_else(|| DecoderError::Checkpoint(format!("missing {key:?} line")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chem::SpinOrbitalOrdering;
    use crate::decoder::{train_nn_fed, TrainConfig};
    use crate::encoder::{generate_encoder, Strategy};

    #[test]
    fn round_trip_is_bitwise_exact() {
        let g = generate_encoder(8, 5, Strategy::Chemical,
                                 &SpinOrbitalOrdering::identity(8), None, 2, 10)
            .unwrap();
        let cfg = TrainConfig { t_max: 50, eval_samples: 64, ..Default::default() };
        let (net, _) = train_nn_fed(&g, 2, &cfg).unwrap();

        let path = std::env::temp_dir().join("nnfed_roundtrip.txt");
        save_checkpoint(&net, &path).unwrap();
        let back = load_checkpoint(&path).unwrap();
        std::fs::remove_file(&path).ok();

        assert_eq!(net.w1, back.w1);
        assert_eq!(net.b1, back.b1);
        assert_eq!(net.w2, back.w2);
        assert_eq!(net.b2, back.b2);
        assert_eq!(net.n_electrons(), back.n_electrons());
        assert_eq!(net.fingerprint(), back.fingerprint());
        assert!(back.verify_encoder(&g).is_ok());
    }

    #[test]
    fn mismatched_encoder_is_refused() {
        let ord = SpinOrbitalOrdering::identity(8);
        let g1 = generate_encoder(8, 5, Strategy::Chemical, &ord, None, 2, 10).unwrap();
        let g2 = generate_encoder(8, 5, Strategy::Chemical, &ord, None, 3, 10).unwrap();
        let cfg = TrainConfig { t_max: 10, eval_samples: 32, ..Default::default() };
        let (net, _) = train_nn_fed(&g1, 2, &cfg).unwrap();
        assert!(matches!(
            net.verify_encoder(&g2),
            Err(DecoderError::FingerprintMismatch { .. })
        ));
    }

    #[test]
    fn truncated_file_is_rejected() {
        let path = std::env::temp_dir().join("nnfed_truncated.txt");
        std::fs::write(&path, "NNFED v1\narch 5 10 8\nn 2\nfingerprint 00ff\n1.0\n").unwrap();
        assert!(matches!(load_checkpoint(&path), Err(DecoderError::Checkpoint(_))));
        std::fs::remove_file(&path).ok();
    }
}
