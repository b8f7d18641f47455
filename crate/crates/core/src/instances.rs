//! Instance families: cubes, simplices, cross-polytopes, transportation
//! polytopes, seeded random integral systems and files.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::polyhedron::Polyhedron;

/// Regeneration attempts for a full-rank random matrix.
const RANDOM_ATTEMPTS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceSpec {
    /// `[-1, 1]^n`.
    Cube { n: usize },
    /// `{x >= 0, sum x <= 1}`.
    Simplex { n: usize },
    /// `{sum |x_i| <= 1}` with one row per sign vector.
    Cross { n: usize },
    /// Nonnegative `r x s` matrices with the given row and column sums.
    Transport { row_sums: Vec<i64>, col_sums: Vec<i64> },
    /// `m` rows with entries uniform in `[-max_entry, max_entry]`.
    RandomInt { n: usize, m: usize, max_entry: i64, seed: u64 },
    File(PathBuf),
}

impl InstanceSpec {
    /// Transportation polytope whose row sums are `s` and column sums `r`.
    pub fn transport(r: usize, s: usize) -> Self {
        InstanceSpec::Transport { row_sums: vec![s as i64; r], col_sums: vec![r as i64; s] }
    }

    pub fn build(&self) -> Result<Polyhedron> {
        match self {
            InstanceSpec::Cube { n } => cube(*n),
            InstanceSpec::Simplex { n } => simplex(*n),
            InstanceSpec::Cross { n } => cross_polytope(*n),
            InstanceSpec::Transport { row_sums, col_sums } => transportation(row_sums, col_sums),
            InstanceSpec::RandomInt { n, m, max_entry, seed } => random_int(*n, *m, *max_entry, *seed),
            InstanceSpec::File(path) => Polyhedron::load(path),
        }
    }

    /// Text file contents for `gen`.
    pub fn generate(&self) -> Result<String> {
        Ok(self.build()?.to_text(Some(&self.to_string())))
    }
}

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::param(msg))
    }
}

fn unit(n: usize, i: usize, s: i64) -> Vec<i64> {
    let mut r = vec![0; n];
    r[i] = s;
    r
}

pub fn cube(n: usize) -> Result<Polyhedron> {
    need(n >= 1, "cube needs n >= 1")?;
    let a: Vec<Vec<i64>> = [1, -1].iter().flat_map(|&s| (0..n).map(move |i| unit(n, i, s))).collect();
    Polyhedron::from_i64(&a, &vec![1; 2 * n])
}

pub fn simplex(n: usize) -> Result<Polyhedron> {
    need(n >= 1, "simplex needs n >= 1")?;
    let mut a: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i, -1)).collect();
    a.push(vec![1; n]);
    let mut b = vec![0; n];
    b.push(1);
    Polyhedron::from_i64(&a, &b)
}

pub fn cross_polytope(n: usize) -> Result<Polyhedron> {
    need((1..=16).contains(&n), "cross-polytope needs 1 <= n <= 16")?;
    let a: Vec<Vec<i64>> = (0..1u32 << n)
        .map(|mask| (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
        .collect();
    Polyhedron::from_i64(&a, &vec![1; a.len()])
}

/// Variables `x_ij` in row-major order. Each margin equality becomes a pair
/// of opposite inequalities, followed by `x >= 0`.
pub fn transportation(row_sums: &[i64], col_sums: &[i64]) -> Result<Polyhedron> {
    let (r, s) = (row_sums.len(), col_sums.len());
    need(r >= 1 && s >= 1, "transportation polytope needs r, s >= 1")?;
    need(
        row_sums.iter().chain(col_sums).all(|&v| v >= 0),
        "margins must be nonnegative",
    )?;
    need(
        row_sums.iter().sum::<i64>() == col_sums.iter().sum::<i64>(),
        "row and column margins must have equal totals",
    )?;
    let n = r * s;
    let mut eq: Vec<(Vec<i64>, i64)> = Vec::new();
    for (i, &total) in row_sums.iter().enumerate() {
        let mut row = vec![0; n];
        (0..s).for_each(|j| row[i * s + j] = 1);
        eq.push((row, total));
    }
    for (j, &total) in col_sums.iter().enumerate() {
        let mut row = vec![0; n];
        (0..r).for_each(|i| row[i * s + j] = 1);
        eq.push((row, total));
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (row, total) in &eq {
        a.push(row.clone());
        b.push(*total);
    }
    for (row, total) in &eq {
        a.push(row.iter().map(|v| -v).collect());
        b.push(-total);
    }
    for k in 0..n {
        a.push(unit(n, k, -1));
        b.push(0);
    }
    Polyhedron::from_i64(&a, &b)
}

/// Random integral system with `0` in its interior: entries of `A` uniform in
/// `[-max_entry, max_entry]` (redrawn until `A` has full column rank) and
/// right-hand sides uniform in `[1, n max_entry]`.
pub fn random_int(n: usize, m: usize, max_entry: i64, seed: u64) -> Result<Polyhedron> {
    need(n >= 1, "random instance needs n >= 1")?;
    need(m >= n, "random instance needs m >= n for full column rank")?;
    need(max_entry >= 1, "largest entry must be at least 1")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_ATTEMPTS {
        let a: Vec<Vec<i64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.random_range(-max_entry..=max_entry)).collect())
            .collect();
        let b: Vec<i64> = (0..m).map(|_| rng.random_range(1..=n as i64 * max_entry)).collect();
        if RationalMatrix::from_i64_rows(&a)?.rank() == n {
            return Polyhedron::from_i64(&a, &b);
        }
    }
    Err(Error::param("could not draw a full-rank matrix"))
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        match self {
            InstanceSpec::Cube { n } => write!(f, "cube:{n}"),
            InstanceSpec::Simplex { n } => write!(f, "simplex:{n}"),
            InstanceSpec::Cross { n } => write!(f, "cross:{n}"),
            InstanceSpec::Transport { row_sums, col_sums } => {
                let (r, s) = (row_sums.len(), col_sums.len());
                if *self == InstanceSpec::transport(r, s) {
                    write!(f, "transport:{r}x{s}")
                } else {
                    write!(f, "transport:{}/{}", join(row_sums), join(col_sums))
                }
            }
            InstanceSpec::RandomInt { n, m, max_entry, seed } => write!(f, "random:{n},{m},{max_entry},{seed}"),
            InstanceSpec::File(p) => write!(f, "{}", p.display()),
        }
    }
}

fn num<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::param(format!("invalid {what} '{s}'")))
}

fn list(s: &str) -> Result<Vec<i64>> {
    s.split(',').map(|v| num(v, "margin")).collect()
}

/// `cube:N`, `simplex:N`, `cross:N`, `transport:RxS`,
/// `transport:R1,R2,.../C1,C2,...`, `random:N,M,ENTRY,SEED`, `file:PATH`,
/// or a bare path.
impl FromStr for InstanceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let Some((family, args)) = s.split_once(':') else {
            return Ok(InstanceSpec::File(PathBuf::from(s)));
        };
        match family {
            "cube" => Ok(InstanceSpec::Cube { n: num(args, "dimension")? }),
            "simplex" => Ok(InstanceSpec::Simplex { n: num(args, "dimension")? }),
            "cross" => Ok(InstanceSpec::Cross { n: num(args, "dimension")? }),
            "transport" => {
                if let Some((r, s)) = args.split_once('x') {
                    Ok(InstanceSpec::transport(num(r, "row count")?, num(s, "column count")?))
                } else if let Some((r, c)) = args.split_once('/') {
                    Ok(InstanceSpec::Transport { row_sums: list(r)?, col_sums: list(c)? })
                } else {
                    Err(Error::param(format!("transport expects RxS or margins, got '{args}'")))
                }
            }
            "random" => {
                let parts: Vec<&str> = args.split(',').collect();
                let [n, m, e, seed] = parts[..] else {
                    return Err(Error::param(format!("random expects N,M,ENTRY,SEED, got '{args}'")));
                };
                Ok(InstanceSpec::RandomInt {
                    n: num(n, "dimension")?,
                    m: num(m, "row count")?,
                    max_entry: num(e, "largest entry")?,
                    seed: num(seed, "seed")?,
                })
            }
            "file" => Ok(InstanceSpec::File(PathBuf::from(args))),
            // e.g. a Windows drive letter or a path containing ':'
            _ => Ok(InstanceSpec::File(PathBuf::from(s))),
        }
    }
}
