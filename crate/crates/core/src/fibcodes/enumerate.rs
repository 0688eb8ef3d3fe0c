use rayon::prelude::*;

use super::CyclicCode;
use crate::error::{Error, Result};

/// Default ceiling on the number of codewords any enumeration may visit.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// `p^k` if it does not exceed `cap`, otherwise a too-large error.
pub(crate) fn codeword_count(p: u32, k: usize, cap: u64) -> Result<u64> {
    let too_large = || Error::TooLarge {
        needed: format!("{p}^{k}"),
        cap,
    };
    let count = (p as u64).checked_pow(k as u32).ok_or_else(too_large)?;
    if count > cap {
        return Err(too_large());
    }
    Ok(count)
}

/// Folds over every codeword `u * G`, partitioning the message space across
/// rayon workers by the leading message digits.
///
/// Within a partition the low digits are stepped as an odometer: bumping digit
/// `j` adds row `j` once, and a digit wrapping from `p - 1` to `0` has then had
/// its row added `p` times, which cancels.
pub(crate) fn fold_codewords<T, Id, F, R>(
    c: &CyclicCode,
    cap: u64,
    identity: Id,
    fold: F,
    reduce: R,
) -> Result<T>
where
    T: Send,
    Id: Fn() -> T + Sync + Send,
    F: Fn(T, &[u32]) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    let p = c.modulus();
    let m = p.get();
    let k = c.dimension();
    let n = c.length();
    codeword_count(m, k, cap)?;
    let g = c.generator_matrix();

    // split on enough leading digits to give the pool some work
    let mut split = 0;
    let mut chunks = 1u64;
    while split < k && chunks < 256 {
        split += 1;
        chunks *= m as u64;
    }
    let low = k - split;

    let result = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut word = vec![0u32; n];
            let mut rest = chunk;
            for r in low..k {
                let digit = (rest % m as u64) as u32;
                rest /= m as u64;
                if digit != 0 {
                    for (w, &a) in word.iter_mut().zip(g.row(r)) {
                        *w = p.add(*w, p.mul(digit, a));
                    }
                }
            }
            let mut acc = identity();
            let mut digits = vec![0u32; low];
            loop {
                acc = fold(acc, &word);
                let mut j = 0;
                loop {
                    if j == low {
                        return acc;
                    }
                    for (w, &a) in word.iter_mut().zip(g.row(j)) {
                        *w = p.add(*w, a);
                    }
                    digits[j] += 1;
                    if digits[j] == m {
                        digits[j] = 0;
                        j += 1;
                    } else {
                        break;
                    }
                }
            }
        })
        .reduce(&identity, &reduce);
    Ok(result)
}

/// Every codeword, in message order with message digit 0 varying fastest.
pub(crate) fn all_codewords(c: &CyclicCode, cap: u64) -> Result<Vec<Vec<u32>>> {
    let m = c.modulus().get();
    let count = codeword_count(m, c.dimension(), cap)?;
    let mut out = Vec::with_capacity(count as usize);
    let mut message = vec![0u32; c.dimension()];
    for _ in 0..count {
        out.push(c.encode(&message)?);
        for d in message.iter_mut() {
            *d += 1;
            if *d == m {
                *d = 0;
            } else {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibcodes::build_cyclic_code;
    use crate::galois::{FieldModulus, PrimePoly};

    #[test]
    fn parallel_fold_visits_every_codeword_once() {
        let p = FieldModulus::new(3).unwrap();
        // x - 1 divides x^8 - 1: an [8, 7] code with 3^7 words
        let c = build_cyclic_code(p, 8, &PrimePoly::from_signed(p, &[-1, 1])).unwrap();
        let mut words = fold_codewords(
            &c,
            DEFAULT_ENUMERATION_CAP,
            Vec::new,
            |mut acc, w| {
                acc.push(w.to_vec());
                acc
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        )
        .unwrap();
        let mut expected = all_codewords(&c, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(words.len(), 2187);
        words.sort();
        expected.sort();
        assert_eq!(words, expected);
        assert!(words.iter().all(|w| c.contains(w)));
    }

    #[test]
    fn cap_is_enforced() {
        let p = FieldModulus::new(11).unwrap();
        let c = build_cyclic_code(p, 10, &PrimePoly::one(p)).unwrap();
        assert!(matches!(
            all_codewords(&c, 1 << 16),
            Err(Error::TooLarge { cap: 65536, .. })
        ));
    }
}
