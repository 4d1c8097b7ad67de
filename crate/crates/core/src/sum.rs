//! Deterministic pairwise reductions.
//!
//! Every integral in the crate is a weighted sum over quadrature nodes. The
//! sums are reduced pairwise in a fixed tree so results do not depend on how a
//! caller might split the work, and rounding error grows like `log n`.

const LEAF: usize = 8;

/// Pairwise sum of `f(0) + … + f(len - 1)` for vector-valued terms.
pub fn pairwise<const N: usize, F>(len: usize, f: F) -> [f64; N]
where
    F: Fn(usize) -> [f64; N],
{
    fn go<const N: usize, F: Fn(usize) -> [f64; N]>(lo: usize, hi: usize, f: &F) -> [f64; N] {
        if hi - lo <= LEAF {
            let mut acc = [0.0; N];
            for i in lo..hi {
                let t = f(i);
                for k in 0..N {
                    acc[k] += t[k];
                }
            }
            return acc;
        }
        let mid = lo + (hi - lo) / 2;
        let a = go(lo, mid, f);
        let b = go(mid, hi, f);
        let mut out = a;
        for k in 0..N {
            out[k] += b[k];
        }
        out
    }
    go(0, len, &f)
}

/// Scalar pairwise sum.
pub fn pairwise_scalar<F: Fn(usize) -> f64>(len: usize, f: F) -> f64 {
    pairwise::<1, _>(len, |i| [f(i)])[0]
}
