use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{fill_unit_vector, CounterRng};

const UNIT_TOLERANCE: f64 = 1e-12;
const LOAD_TOLERANCE: f64 = 1e-9;

/// `N` unit vectors in `R^{d+1}`, stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    d: usize,
    coords: Vec<f64>,
}

impl PointSet {
    pub fn new(d: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidPointSet("point set is empty".into()));
        }
        let dim = d + 1;
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::InvalidPointSet(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            let norm = p.iter().map(|v| v * v).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > UNIT_TOLERANCE {
                return Err(Error::InvalidPointSet(format!("point {i} has norm {norm}")));
            }
            coords.extend_from_slice(p);
        }
        Ok(Self { d, coords })
    }

    fn from_raw(d: usize, coords: Vec<f64>) -> Self {
        debug_assert_eq!(coords.len() % (d + 1), 0);
        Self { d, coords }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn ambient_dim(&self) -> usize {
        self.d + 1
    }

    pub fn len(&self) -> usize {
        self.coords.len() / (self.d + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        let dim = self.d + 1;
        &self.coords[i * dim..(i + 1) * dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.d + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    Random,
    Fibonacci,
    Equispaced,
}

impl FromStr for PointKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Self::Random),
            "fibonacci" => Ok(Self::Fibonacci),
            "equispaced" => Ok(Self::Equispaced),
            other => Err(Error::Parse(format!("unknown point set kind '{other}'"))),
        }
    }
}

/// Test-bed point sets.
///
/// `Random` draws i.i.d. uniform points (normalised Gaussians, point `i` on
/// stream `i`). `Fibonacci` is the spherical Fibonacci lattice on `S^2`.
/// `Equispaced` is the `N`-th roots of unity on `S^1`. The seed only
/// affects `Random`.
pub fn generate_pointset(kind: PointKind, n: usize, d: usize, seed: u64) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::InvalidPointSet("point set is empty".into()));
    }
    if d == 0 {
        return Err(Error::Domain("sphere dimension must be at least 1".into()));
    }
    let dim = d + 1;
    let mut coords = vec![0.0; n * dim];
    match kind {
        PointKind::Random => {
            let g = CounterRng::new(seed);
            for (i, p) in coords.chunks_exact_mut(dim).enumerate() {
                fill_unit_vector(&mut g.stream(i as u64), p);
            }
        }
        PointKind::Fibonacci => {
            if d != 2 {
                return Err(Error::Unsupported(format!("Fibonacci lattice needs d = 2, got {d}")));
            }
            let golden_angle = std::f64::consts::PI * (3.0 - 5f64.sqrt());
            for (i, p) in coords.chunks_exact_mut(3).enumerate() {
                let z = 1.0 - (2 * i + 1) as f64 / n as f64;
                let r = (1.0 - z * z).sqrt();
                let (s, c) = (golden_angle * i as f64).sin_cos();
                p.copy_from_slice(&[r * c, r * s, z]);
            }
        }
        PointKind::Equispaced => {
            if d != 1 {
                return Err(Error::Unsupported(format!("equispaced points need d = 1, got {d}")));
            }
            for (i, p) in coords.chunks_exact_mut(2).enumerate() {
                let (s, c) = (std::f64::consts::TAU * i as f64 / n as f64).sin_cos();
                p.copy_from_slice(&[c, s]);
            }
        }
    }
    Ok(PointSet::from_raw(d, coords))
}

/// Reads the text format: a header `d N`, then `N` lines of `d + 1` floats.
///
/// Vectors within `1e-9` of unit length are re-normalised; others are rejected.
pub fn read_pointset<R: BufRead>(reader: R) -> Result<PointSet> {
    let mut lines = reader.lines().enumerate().filter_map(|(i, l)| match l {
        Ok(l) if l.trim().is_empty() => None,
        other => Some((i + 1, other)),
    });
    let io = |e: std::io::Error| Error::Parse(e.to_string());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::InvalidPointSet("missing header".into()))?;
    let header = header.map_err(io)?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let [d, n] = head.as_slice() else {
        return Err(Error::Parse(format!("header must be 'd N', got '{header}'")));
    };
    let d: usize = d.parse().map_err(|_| Error::Parse(format!("bad dimension '{d}'")))?;
    let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad point count '{n}'")))?;
    if d == 0 {
        return Err(Error::Domain("sphere dimension must be at least 1".into()));
    }
    let mut coords = Vec::with_capacity(n * (d + 1));
    for _ in 0..n {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| Error::InvalidPointSet(format!("expected {n} points")))?;
        let line = line.map_err(io)?;
        let p = line
            .split_whitespace()
            .map(|v| v.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?;
        if p.len() != d + 1 {
            return Err(Error::InvalidPointSet(format!(
                "line {lineno}: {} coordinates, expected {}",
                p.len(),
                d + 1
            )));
        }
        let norm = p.iter().map(|v| v * v).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > LOAD_TOLERANCE {
            return Err(Error::InvalidPointSet(format!("line {lineno}: norm {norm}")));
        }
        coords.extend(p.iter().map(|v| v / norm));
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(Error::InvalidPointSet(format!("line {lineno}: more than {n} points")));
    }
    if n == 0 {
        return Err(Error::InvalidPointSet("point set is empty".into()));
    }
    Ok(PointSet::from_raw(d, coords))
}

/// Writes the format read by [`read_pointset`], with round-trip float formatting.
pub fn write_pointset<W: Write>(points: &PointSet, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", points.d(), points.len())?;
    let mut line = String::new();
    for p in points.iter() {
        line.clear();
        for (k, v) in p.iter().enumerate() {
            if k > 0 {
                line.push(' ');
            }
            write!(line, "{v:?}").expect("writing to a String");
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn angle(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>().clamp(-1.0, 1.0).acos()
    }

    #[test]
    fn random_points_are_unit_and_balanced() {
        let z = generate_pointset(PointKind::Random, 100, 2, 5).unwrap();
        assert_eq!(z.len(), 100);
        let mut sum = [0.0; 3];
        for p in z.iter() {
            assert!((p.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-14);
            sum.iter_mut().zip(p).for_each(|(s, v)| *s += v);
        }
        let norm = sum.iter().map(|v| v * v).sum::<f64>().sqrt();
        // |Σ z_i| is of order √N for independent uniform points
        assert!(norm < 4.0 * 10.0, "{norm}");
        assert_eq!(z, generate_pointset(PointKind::Random, 100, 2, 5).unwrap());
        assert_ne!(z, generate_pointset(PointKind::Random, 100, 2, 6).unwrap());
    }

    #[test]
    fn fibonacci_spacing_is_even() {
        let z = generate_pointset(PointKind::Fibonacci, 1000, 2, 0).unwrap();
        assert_eq!(z, generate_pointset(PointKind::Fibonacci, 1000, 2, 99).unwrap());
        let nn: Vec<f64> = (0..z.len())
            .map(|i| {
                (0..z.len())
                    .filter(|&j| j != i)
                    .map(|j| angle(z.point(i), z.point(j)))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        let lo = nn.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = nn.iter().copied().fold(0.0, f64::max);
        assert!(hi / lo < 3.0, "{lo} {hi}");
    }

    #[test]
    fn kind_restrictions() {
        assert!(matches!(
            generate_pointset(PointKind::Fibonacci, 10, 3, 0),
            Err(Error::Unsupported(_))
        ));
        assert!(generate_pointset(PointKind::Equispaced, 10, 2, 0).is_err());
        assert!(generate_pointset(PointKind::Random, 0, 2, 0).is_err());
        let z = generate_pointset(PointKind::Equispaced, 4, 1, 0).unwrap();
        assert!((z.point(1)[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn constructor_checks_norms() {
        assert!(PointSet::new(1, vec![vec![1.0, 0.0]]).is_ok());
        assert!(PointSet::new(1, vec![vec![1.0, 1e-5]]).is_err());
        assert!(PointSet::new(1, vec![vec![1.0, 0.0, 0.0]]).is_err());
        assert!(PointSet::new(1, vec![]).is_err());
    }

    #[test]
    fn file_round_trip() {
        let z = generate_pointset(PointKind::Random, 17, 3, 1).unwrap();
        let mut buf = Vec::new();
        write_pointset(&z, &mut buf).unwrap();
        let back = read_pointset(buf.as_slice()).unwrap();
        assert_eq!(back.d(), 3);
        for (a, b) in z.iter().zip(back.iter()) {
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn loader_renormalises_or_rejects() {
        let z = read_pointset("1 1\n1.0000000001 0\n".as_bytes()).unwrap();
        assert_eq!(z.point(0), &[1.0, 0.0]);
        assert!(read_pointset("1 1\n1.001 0\n".as_bytes()).is_err());
        assert!(read_pointset("1 2\n1 0\n".as_bytes()).is_err());
        assert!(read_pointset("1 1\n1 0\n0 1\n".as_bytes()).is_err());
        assert!(read_pointset("2 1\n1 0\n".as_bytes()).is_err());
        assert!(read_pointset("x 1\n1 0\n".as_bytes()).is_err());
        assert!(read_pointset("1 1\n1 zero\n".as_bytes()).is_err());
    }
}
