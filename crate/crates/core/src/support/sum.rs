use crate::error::{Error, Result};
use crate::net::SimNet;
use crate::protocols::{sum_to_two, TwoShares};

fn reduce(values: &[Vec<i128>], q: u64) -> Result<Vec<Vec<u64>>> {
    if q < 2 {
        return Err(Error::Contract(format!("modulus {q} below 2")));
    }
    let q = i128::from(q);
    Ok(values
        .iter()
        .map(|v| v.iter().map(|&x| x.rem_euclid(q) as u64).collect())
        .collect())
}

/// Secure summation of signed per-player vectors in which `P_M` withholds
/// its final share: `P1` ends with `first`, `P_M` with `last`, and
/// `first + last ≡ Σ_m values_m (mod q)`.
pub fn secure_sum_withheld(
    net: &mut SimNet,
    values: &[Vec<i128>],
    q: u64,
    seed: u64,
) -> Result<TwoShares> {
    let reduced = reduce(values, q)?;
    sum_to_two(net, &reduced, q, seed, false)
}

/// Plain secure summation: `P1` learns `Σ_m values_m`, read back from
/// `Z_q` into `(-q/2, q/2)`.
pub fn secure_sum_revealed(
    net: &mut SimNet,
    values: &[Vec<i128>],
    q: u64,
    seed: u64,
) -> Result<Vec<i128>> {
    let reduced = reduce(values, q)?;
    let out = sum_to_two(net, &reduced, q, seed, true)?;
    Ok(out.first.values().iter().map(|&v| centered(v, q)).collect())
}

pub(crate) fn centered(v: u64, q: u64) -> i128 {
    if 2 * u128::from(v) < u128::from(q) {
        i128::from(v)
    } else {
        i128::from(v) - i128::from(q)
    }
}
