use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use probmem::circuit::Circuit;
use probmem::compile::{compile_ucfg, l3_alphabet, Builtin};
use probmem::grammar::{normalize, parse_grammar, NormalizedCfg};
use probmem::oracle::{loglog_slope, random_dyadic_probword};
use probmem::probword::Alphabet;

#[derive(Args)]
pub struct BenchArgs {
    /// Builtin language to compile.
    #[arg(long, conflicts_with = "grammar", required_unless_present = "grammar")]
    builtin: Option<Builtin>,
    /// Unambiguous grammar to compile.
    #[arg(long)]
    grammar: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    from: usize,
    #[arg(long, default_value_t = 64)]
    to: usize,
    /// Additive step; lengths double when absent.
    #[arg(long)]
    step: Option<usize>,
    /// Alphabet letters for builtins.
    #[arg(long, default_value = "ab")]
    alphabet: String,
}

enum Target {
    Builtin(Builtin, Alphabet),
    Grammar(NormalizedCfg),
}

impl Target {
    fn compile(&self, n: usize) -> Result<Circuit> {
        Ok(match self {
            Target::Builtin(b, a) => b.compile(n, a)?,
            Target::Grammar(g) => compile_ucfg(g, n)?,
        })
    }
}

fn lengths(args: &BenchArgs) -> Result<Vec<usize>> {
    if args.from > args.to {
        bail!("--from {} exceeds --to {}", args.from, args.to);
    }
    let mut out = Vec::new();
    let mut n = args.from;
    while n <= args.to {
        out.push(n);
        n = match args.step {
            Some(0) => bail!("--step must be positive"),
            Some(s) => n + s,
            None => (2 * n).max(n + 1),
        };
    }
    Ok(out)
}

/// Prints one TSV row per length, then the log-log slopes of size and
/// total time against `n`.
pub fn run(args: &BenchArgs, seed: u64) -> Result<()> {
    let target = match (&args.builtin, &args.grammar) {
        (Some(b), _) => {
            let a = if *b == Builtin::L3 { l3_alphabet() } else { Alphabet::from_chars(&args.alphabet)? };
            Target::Builtin(*b, a)
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let cfg = parse_grammar(&text).with_context(|| format!("in grammar {}", path.display()))?;
            Target::Grammar(normalize(&cfg)?)
        }
        (None, None) => bail!("one of --builtin or --grammar is required"),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut size_points, mut time_points) = (Vec::new(), Vec::new());
    println!("n\tgates\twires\tsize\tcompile_ms\teval_ms");
    for n in lengths(args)? {
        let start = Instant::now();
        let c = target.compile(n)?;
        let compile = start.elapsed();
        let p = random_dyadic_probword(n, c.alphabet(), 4, &mut rng);
        let start = Instant::now();
        c.evaluate(&p)?;
        let eval = start.elapsed();
        let s = c.stats();
        let (compile_ms, eval_ms) = (compile.as_secs_f64() * 1e3, eval.as_secs_f64() * 1e3);
        println!("{n}\t{}\t{}\t{}\t{compile_ms:.3}\t{eval_ms:.3}", s.gates(), s.wires, s.size());
        if n > 0 {
            size_points.push((n as f64, s.size().max(1) as f64));
            time_points.push((n as f64, (compile_ms + eval_ms).max(1e-3)));
        }
    }
    if size_points.len() >= 2 {
        println!("# slope(size)\t{:.3}", loglog_slope(&size_points));
        println!("# slope(time)\t{:.3}", loglog_slope(&time_points));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(from: usize, to: usize, step: Option<usize>) -> BenchArgs {
        BenchArgs { builtin: Some(Builtin::Primitive), grammar: None, from, to, step, alphabet: "ab".into() }
    }

    #[test]
    fn doubling_and_stepping() {
        assert_eq!(lengths(&args(4, 40, None)).unwrap(), vec![4, 8, 16, 32]);
        assert_eq!(lengths(&args(0, 3, None)).unwrap(), vec![0, 1, 2]);
        assert_eq!(lengths(&args(2, 8, Some(3))).unwrap(), vec![2, 5, 8]);
        assert!(lengths(&args(5, 4, None)).is_err());
        assert!(lengths(&args(1, 4, Some(0))).is_err());
    }
}
