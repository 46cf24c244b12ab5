//! Plain-text instance files and the seeded instance generator.
//!
//! Grammar (one item per line, `#` starts a comment, blank lines are
//! ignored, tokens are separated by whitespace):
//!
//! ```text
//! instance   := "format: 1" prime dim [gram] gen+ [amplitude]
//! prime      := "prime:" INT
//! dim        := "dim:" INT
//! gram       := "gram" row{dim}
//! gen        := "gen" row{dim}
//! amplitude  := "amplitude" INT row{dim}
//! row        := INT{dim}
//! ```
//!
//! Residues must lie in `[0, prime)`. Without a `gram` section the form is the
//! standard one. Every generator must be a similitude of the form. The
//! optional amplitude section gives the degree `d` of `E = F_{p^d}` and the
//! image of the canonical generator of `E^×`.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::subspace::Subspace;
use crate::symplectic::SymplecticSpace;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmplitudeSection {
    pub degree: usize,
    pub image: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub prime: u32,
    pub dim: usize,
    pub gram: Option<Matrix>,
    pub generators: Vec<Matrix>,
    pub amplitude: Option<AmplitudeSection>,
}

impl Instance {
    pub fn space(&self) -> Result<SymplecticSpace> {
        match &self.gram {
            Some(g) => SymplecticSpace::with_gram(g.clone()),
            None => SymplecticSpace::standard(self.prime as u64, self.dim),
        }
    }

    /// Canonical text; also the bytes hashed into report digests.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "format: {FORMAT_VERSION}");
        let _ = writeln!(out, "prime: {}", self.prime);
        let _ = writeln!(out, "dim: {}", self.dim);
        let rows = |out: &mut String, m: &Matrix| {
            for r in m.rows() {
                let parts: Vec<String> = r.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "{}", parts.join(" "));
            }
        };
        if let Some(g) = &self.gram {
            out.push_str("gram\n");
            rows(&mut out, g);
        }
        for g in &self.generators {
            out.push_str("gen\n");
            rows(&mut out, g);
        }
        if let Some(a) = &self.amplitude {
            let _ = writeln!(out, "amplitude {}", a.degree);
            rows(&mut out, &a.image);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).instance()
    }
}

struct Parser<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(i, l)| {
                let content = l.split('#').next().unwrap_or("");
                let toks: Vec<&str> = content.split_whitespace().collect();
                (!toks.is_empty()).then_some((i + 1, toks))
            })
            .collect();
        Self { lines, pos: 0 }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.lines.get(self.pos)
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(1, |l| l.0)
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        match self.lines.get(self.pos) {
            Some(l) => {
                self.pos += 1;
                Ok(l.clone())
            }
            None => parse_err(self.last_line(), format!("unexpected end of input, expected {what}")),
        }
    }

    fn int<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
        tok.parse()
            .or_else(|_| parse_err(line, format!("expected {what}, found `{tok}`")))
    }

    fn header(&mut self, key: &str) -> Result<(usize, u64)> {
        let (line, toks) = self.next(key)?;
        match toks.as_slice() {
            [k, v] if *k == key => Ok((line, Self::int(line, v, "an integer")?)),
            _ => parse_err(line, format!("expected `{key} <n>`")),
        }
    }

    fn matrix(&mut self, p: u32, n: usize) -> Result<Matrix> {
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (line, toks) = self.next("a matrix row")?;
            if toks.len() != n {
                return parse_err(line, format!("matrix row has {} entries, expected {n}", toks.len()));
            }
            let mut row = Vec::with_capacity(n);
            for t in toks {
                let v: u32 = Self::int(line, t, "a residue")?;
                if v >= p {
                    return parse_err(line, format!("residue {v} is not below {p}"));
                }
                row.push(v);
            }
            rows.push(row);
        }
        Matrix::from_rows(p, &rows)
    }

    fn instance(mut self) -> Result<Instance> {
        let (line, version) = self.header("format:")?;
        if version != FORMAT_VERSION as u64 {
            return parse_err(line, format!("unsupported format version {version}"));
        }
        let (pline, prime) = self.header("prime:")?;
        let field = crate::field::PrimeField::new(prime).or_else(|e| parse_err(pline, e.to_string()))?;
        let p = field.modulus();
        let (dline, dim) = self.header("dim:")?;
        let n = dim as usize;
        if n == 0 || n % 2 == 1 {
            return parse_err(dline, format!("dimension {n} is not a positive even number"));
        }

        let mut gram = None;
        if let Some((gline, toks)) = self.peek().cloned() {
            if toks == ["gram"] {
                self.pos += 1;
                let g = self.matrix(p, n)?;
                SymplecticSpace::with_gram(g.clone()).or_else(|_| {
                    parse_err(gline, "gram matrix is not alternating and invertible")
                })?;
                gram = Some(g);
            }
        }
        let space = match &gram {
            Some(g) => SymplecticSpace::with_gram(g.clone())?,
            None => SymplecticSpace::standard(p as u64, n)?,
        };

        let mut generators = Vec::new();
        let mut amplitude = None;
        while let Some((line, toks)) = self.peek().cloned() {
            self.pos += 1;
            match toks.as_slice() {
                ["gen"] => {
                    let g = self.matrix(p, n)?;
                    if space.multiplier(&g).is_err() {
                        return parse_err(line, "generator is not a similitude of the form");
                    }
                    generators.push(g);
                }
                ["amplitude", d] => {
                    let degree: usize = Self::int(line, d, "a field degree")?;
                    if degree == 0 {
                        return parse_err(line, "field degree must be positive");
                    }
                    let image = self.matrix(p, n)?;
                    amplitude = Some(AmplitudeSection { degree, image });
                    if let Some((extra, _)) = self.peek() {
                        return parse_err(*extra, "nothing may follow the amplitude section");
                    }
                }
                ["gram"] => return parse_err(line, "gram must come before the generators"),
                _ => return parse_err(line, format!("unexpected `{}`", toks.join(" "))),
            }
        }
        if generators.is_empty() {
            return parse_err(self.last_line(), "no generators");
        }
        Ok(Instance {
            prime: p,
            dim: n,
            gram,
            generators,
            amplitude,
        })
    }
}

/// Parameters of [`generate_random`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomParams {
    pub blocks: usize,
    pub block_dim: usize,
    pub prime: u32,
    pub seed: u64,
    pub with_swap: bool,
    pub with_transvection: bool,
}

/// Largest `blocks · block_dim` accepted by [`generate_random`].
pub const MAX_RANDOM_DIM: usize = 6;

/// Coordinates of block `b` in `F_p^(s k)` with the standard form: the `x`
/// coordinates `b h .. b h + h` and the matching `y` coordinates, `h = k/2`.
pub fn block_coordinates(blocks: usize, block_dim: usize, b: usize) -> Vec<usize> {
    let h = block_dim / 2;
    let g = blocks * h;
    (0..h).map(|j| b * h + j).chain((0..h).map(|j| g + b * h + j)).collect()
}

/// The block `b` as a subspace, before any global conjugation.
pub fn standard_block(blocks: usize, block_dim: usize, b: usize, p: u32) -> Subspace {
    let n = blocks * block_dim;
    Subspace::span(
        n,
        p,
        block_coordinates(blocks, block_dim, b).into_iter().map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        }),
    )
}

/// Embeds a `k × k` matrix, written in the standard symplectic basis of the
/// block, as acting on block `b` and trivially elsewhere.
pub fn embed_block(a: &Matrix, blocks: usize, b: usize) -> Matrix {
    let k = a.dim();
    let n = blocks * k;
    let coords = block_coordinates(blocks, k, b);
    let mut out = Matrix::identity(n, a.modulus());
    for (i, &ci) in coords.iter().enumerate() {
        for (j, &cj) in coords.iter().enumerate() {
            out.set(ci, cj, a.get(i, j));
        }
    }
    out
}

/// The isometry sending block `b` to block `b + 1 mod s`, identifying the
/// standard bases.
pub fn block_cycle(blocks: usize, block_dim: usize, p: u32) -> Matrix {
    let n = blocks * block_dim;
    let mut out = Matrix::zeros(n, p);
    for b in 0..blocks {
        let src = block_coordinates(blocks, block_dim, b);
        let dst = block_coordinates(blocks, block_dim, (b + 1) % blocks);
        for (s, d) in src.iter().zip(&dst) {
            out.set(*d, *s, 1);
        }
    }
    out
}

fn random_nonzero_vector(rng: &mut ChaCha8Rng, n: usize, p: u32) -> Vector {
    loop {
        let v: Vector = (0..n).map(|_| rng.random_range(0..p)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// A product of random transvections, which lies in `Sp`.
fn random_isometry(rng: &mut ChaCha8Rng, space: &SymplecticSpace) -> Result<Matrix> {
    let (n, p) = (space.dim(), space.modulus());
    let mut g = space.identity();
    for _ in 0..3 * n {
        let u = random_nonzero_vector(rng, n, p);
        let lambda = rng.random_range(1..p);
        g = g.mul(space.make_transvection(&u, lambda)?.matrix());
    }
    Ok(g)
}

/// A random instance whose group is `∏ Sp(W_i)` over `blocks` orthogonal
/// blocks of dimension `block_dim`, optionally extended by the cyclic shift
/// of the blocks and by one more transvection in the first block, all
/// conjugated by a random element of `Sp`. Deterministic in the seed.
pub fn generate_random(params: RandomParams) -> Result<Instance> {
    let RandomParams {
        blocks: s,
        block_dim: k,
        prime,
        seed,
        with_swap,
        with_transvection,
    } = params;
    if k == 0 || k % 2 == 1 {
        return Err(Error::OddDimension(k));
    }
    if s == 0 || s * k > MAX_RANDOM_DIM {
        return Err(Error::ScaleExceeded {
            what: "instance dimension",
            size: (s * k) as u128,
            limit: MAX_RANDOM_DIM as u128,
        });
    }
    let n = s * k;
    let space = SymplecticSpace::standard(prime as u64, n)?;
    let block_space = SymplecticSpace::standard(prime as u64, k)?;
    let p = space.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut gens = Vec::new();
    for b in 0..s {
        let c = random_isometry(&mut rng, &block_space)?;
        let c_inv = c.inverse().expect("isometries are invertible");
        for t in block_space.sp_generators() {
            gens.push(embed_block(&c.mul(&t).mul(&c_inv), s, b));
        }
    }
    if with_swap && s > 1 {
        gens.push(block_cycle(s, k, p));
    }
    if with_transvection {
        let u = random_nonzero_vector(&mut rng, k, p);
        let lambda = rng.random_range(1..p);
        let t = block_space.make_transvection(&u, lambda)?;
        gens.push(embed_block(t.matrix(), s, 0));
    }
    let q = random_isometry(&mut rng, &space)?;
    let q_inv = q.inverse().expect("isometries are invertible");
    let generators = gens.iter().map(|g| q.mul(g).mul(&q_inv)).collect();
    Ok(Instance {
        prime: p,
        dim: n,
        gram: None,
        generators,
        amplitude: None,
    })
}
