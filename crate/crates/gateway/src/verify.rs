use lightsout_core::{diagrange, Gf2Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    /// FNV-1a over every dimension and solution produced, in order.
    pub fingerprint: u64,
    pub failures: Vec<String>,
}

impl Report {
    pub fn render(&self) -> String {
        let mut out = format!("{} passed, {} failed\nfingerprint {:016x}\n", self.passed, self.failed, self.fingerprint);
        for f in &self.failures {
            out.push_str(f);
            out.push('\n');
        }
        out
    }
}

fn fnv(hash: u64, bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(hash, |h, &b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

pub fn random_symmetric(rng: &mut impl Rng, n: usize) -> Gf2Matrix {
    let mut a = Gf2Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let bit = rng.gen_bool(0.5);
            a.set(i, j, bit);
            a.set(j, i, bit);
        }
    }
    a
}

/// Solves `A x = diag(A)` for `trials` random symmetric matrices of size
/// `1..=max_dim` and checks every answer by multiplication.
pub fn verify_theorem(trials: usize, max_dim: usize, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report {
        trials,
        passed: 0,
        failed: 0,
        fingerprint: 0xcbf2_9ce4_8422_2325,
        failures: Vec::new(),
    };
    for t in 0..trials {
        let n = rng.gen_range(1..=max_dim);
        let a = random_symmetric(&mut rng, n);
        report.fingerprint = fnv(report.fingerprint, &(n as u64).to_le_bytes());
        let outcome = match diagrange::solve_diagonal(&a) {
            Ok(x) => {
                for w in x.words() {
                    report.fingerprint = fnv(report.fingerprint, &w.to_le_bytes());
                }
                match diagrange::certify_diagonal(&a, &x) {
                    Ok(true) => Ok(()),
                    Ok(false) => Err("A x differs from the diagonal".to_string()),
                    Err(e) => Err(e.to_string()),
                }
            }
            Err(e) => Err(e.to_string()),
        };
        match outcome {
            Ok(()) => report.passed += 1,
            Err(msg) => {
                report.failed += 1;
                report.failures.push(format!("trial {t} (n = {n}): {msg}"));
            }
        }
    }
    report
}
