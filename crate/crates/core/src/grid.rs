//! Categorical grid state: alphabets, dense 2D/3D cell grids, cursors,
//! histograms, distances, i.i.d. sampling, and the plain-text grid format.
//!
//! Cells are one byte each (alphabets are capped at 256 categories) and
//! stored row-major: for 2D `[w, h]` the linear index is `y*w + x`, for 3D
//! `[w, h, d]` it is `(z*h + y)*w + x`. All values are immutable in normal
//! use; mutation goes through explicit copy-and-edit helpers.

use crate::error::{PodError, Result};
use crate::tensor::Tensor;
use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

/// Hard cap on alphabet size; one byte per cell.
pub const MAX_CATEGORIES: usize = 256;

/// An ordered set of tile/block categories. Index 0 is always the designated
/// "empty/air" category. Each category carries a unique single-character
/// glyph for the text format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileAlphabet {
    names: Vec<String>,
    glyphs: Vec<char>,
}

impl TileAlphabet {
    pub fn new(entries: &[(&str, char)]) -> Result<Self> {
        if entries.len() < 2 {
            return Err(PodError::Config("alphabet needs at least 2 categories".into()));
        }
        if entries.len() > MAX_CATEGORIES {
            return Err(PodError::Config(format!(
                "alphabet has {} categories, max is {MAX_CATEGORIES}",
                entries.len()
            )));
        }
        let names: Vec<String> = entries.iter().map(|(n, _)| n.to_string()).collect();
        let glyphs: Vec<char> = entries.iter().map(|(_, g)| *g).collect();
        for i in 0..entries.len() {
            for j in (i + 1)..entries.len() {
                if names[i] == names[j] {
                    return Err(PodError::Config(format!("duplicate category name {:?}", names[i])));
                }
                if glyphs[i] == glyphs[j] {
                    return Err(PodError::Config(format!("duplicate glyph {:?}", glyphs[i])));
                }
            }
        }
        Ok(TileAlphabet { names, glyphs })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, index: u8) -> &str {
        &self.names[index as usize]
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(|s| s.as_str())
    }

    pub fn glyph(&self, index: u8) -> char {
        self.glyphs[index as usize]
    }

    pub fn index_of_name(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    pub fn index_of_glyph(&self, glyph: char) -> Option<u8> {
        self.glyphs.iter().position(|&g| g == glyph).map(|i| i as u8)
    }
}

/// A position in a grid, one coordinate per dimension, `[x, y]` or
/// `[x, y, z]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cursor(pub Vec<usize>);

impl Cursor {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }
}

/// Dense categorical grid, 2D or 3D.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellGrid {
    dims: Vec<usize>,
    cells: Vec<u8>,
}

impl CellGrid {
    /// A grid with every cell set to `value`.
    pub fn filled(dims: &[usize], value: u8) -> Result<Self> {
        Self::check_dims(dims)?;
        let n: usize = dims.iter().product();
        Ok(CellGrid { dims: dims.to_vec(), cells: vec![value; n] })
    }

    pub fn from_cells(dims: &[usize], cells: Vec<u8>) -> Result<Self> {
        Self::check_dims(dims)?;
        let n: usize = dims.iter().product();
        if cells.len() != n {
            return Err(PodError::Shape(format!(
                "cell count {} does not match dims {:?} (= {})",
                cells.len(),
                dims,
                n
            )));
        }
        Ok(CellGrid { dims: dims.to_vec(), cells })
    }

    fn check_dims(dims: &[usize]) -> Result<()> {
        if !(dims.len() == 2 || dims.len() == 3) {
            return Err(PodError::Shape(format!("grids are 2D or 3D, got {} dims", dims.len())));
        }
        if dims.iter().any(|&d| d == 0) {
            return Err(PodError::Shape(format!("zero extent in dims {dims:?}")));
        }
        Ok(())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn ndim(&self) -> usize {
        self.dims.len()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    /// Linear index of a coordinate tuple (x fastest).
    pub fn linear_index(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.dims.len());
        match self.dims.len() {
            2 => coords[1] * self.dims[0] + coords[0],
            _ => (coords[2] * self.dims[1] + coords[1]) * self.dims[0] + coords[0],
        }
    }

    /// Coordinate tuple of a linear index.
    pub fn coords_of(&self, index: usize) -> Cursor {
        let w = self.dims[0];
        match self.dims.len() {
            2 => Cursor(vec![index % w, index / w]),
            _ => {
                let h = self.dims[1];
                Cursor(vec![index % w, (index / w) % h, index / (w * h)])
            }
        }
    }

    pub fn in_bounds(&self, cursor: &Cursor) -> bool {
        cursor.0.len() == self.dims.len()
            && cursor.0.iter().zip(&self.dims).all(|(&c, &d)| c < d)
    }

    pub fn get(&self, cursor: &Cursor) -> u8 {
        self.cells[self.linear_index(cursor.coords())]
    }

    pub fn get_linear(&self, index: usize) -> u8 {
        self.cells[index]
    }

    pub fn set(&mut self, cursor: &Cursor, value: u8) {
        let i = self.linear_index(cursor.coords());
        self.cells[i] = value;
    }

    pub fn set_linear(&mut self, index: usize, value: u8) {
        self.cells[index] = value;
    }

    /// Copy with one cell replaced.
    pub fn with_cell(&self, cursor: &Cursor, value: u8) -> Self {
        let mut g = self.clone();
        g.set(cursor, value);
        g
    }

    pub fn validate_for(&self, alphabet: &TileAlphabet) -> Result<()> {
        let size = alphabet.size() as u16;
        if let Some(pos) = self.cells.iter().position(|&c| (c as u16) >= size) {
            return Err(PodError::InvalidGrid(format!(
                "cell {} holds category {} but the alphabet has {} categories",
                pos, self.cells[pos], size
            )));
        }
        Ok(())
    }
}

/// Per-category cell counts of one or more grids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileHistogram {
    counts: Vec<u64>,
    total: u64,
}

impl TileHistogram {
    pub fn new(counts: Vec<u64>) -> Self {
        let total = counts.iter().sum();
        TileHistogram { counts, total }
    }

    /// One count per category; a grid sampled from this is uniform.
    pub fn uniform(num_categories: usize) -> Self {
        TileHistogram::new(vec![1; num_categories])
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn num_categories(&self) -> usize {
        self.counts.len()
    }

    /// Accumulate another histogram over the same alphabet.
    pub fn merge(&mut self, other: &TileHistogram) -> Result<()> {
        if self.counts.len() != other.counts.len() {
            return Err(PodError::Shape(format!(
                "histogram category counts differ: {} vs {}",
                self.counts.len(),
                other.counts.len()
            )));
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.total += other.total;
        Ok(())
    }
}

/// One-hot encode a grid: channel-first tensor of shape
/// `[num_categories, ...spatial]` where the spatial axes are the grid dims
/// reversed (`[h, w]` / `[d, h, w]`), matching the row-major cell order.
pub fn one_hot_encode(grid: &CellGrid, alphabet: &TileAlphabet) -> Result<Tensor> {
    grid.validate_for(alphabet)?;
    let c = alphabet.size();
    let n = grid.cell_count();
    let mut shape = vec![c];
    shape.extend(grid.dims().iter().rev());
    let mut t = Tensor::zeros(&shape);
    let data = t.data_mut();
    for (i, &cell) in grid.cells().iter().enumerate() {
        data[cell as usize * n + i] = 1.0;
    }
    Ok(t)
}

/// Count and fraction of cells that differ between two same-shaped grids.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HammingDistance {
    pub count: usize,
    pub fraction: f64,
}

pub fn hamming_distance(a: &CellGrid, b: &CellGrid) -> Result<HammingDistance> {
    if a.dims() != b.dims() {
        return Err(PodError::Shape(format!(
            "hamming distance needs identical dims, got {:?} vs {:?}",
            a.dims(),
            b.dims()
        )));
    }
    let count = a.cells().iter().zip(b.cells()).filter(|(x, y)| x != y).count();
    Ok(HammingDistance { count, fraction: count as f64 / a.cell_count() as f64 })
}

/// Per-category cell counts of one grid.
pub fn tile_histogram(grid: &CellGrid, num_categories: usize) -> Result<TileHistogram> {
    let mut counts = vec![0u64; num_categories];
    for &cell in grid.cells() {
        let c = cell as usize;
        if c >= num_categories {
            return Err(PodError::InvalidGrid(format!(
                "cell category {c} out of range for {num_categories} categories"
            )));
        }
        counts[c] += 1;
    }
    Ok(TileHistogram::new(counts))
}

/// L1 distance between two histograms' normalized frequencies; in `[0, 2]`.
pub fn histogram_l1(a: &TileHistogram, b: &TileHistogram) -> Result<f64> {
    if a.num_categories() != b.num_categories() {
        return Err(PodError::Shape(format!(
            "histograms cover {} vs {} categories",
            a.num_categories(),
            b.num_categories()
        )));
    }
    if a.total() == 0 || b.total() == 0 {
        return Err(PodError::Degenerate("histogram with zero total".into()));
    }
    let (ta, tb) = (a.total() as f64, b.total() as f64);
    Ok(a.counts()
        .iter()
        .zip(b.counts())
        .map(|(&x, &y)| (x as f64 / ta - y as f64 / tb).abs())
        .sum())
}

/// Sample a grid with each cell drawn i.i.d. from the normalized
/// distribution. Deterministic for a fixed RNG state.
pub fn sample_iid_grid<R: Rng>(
    dist: &TileHistogram,
    dims: &[usize],
    rng: &mut R,
) -> Result<CellGrid> {
    if dist.total() == 0 {
        return Err(PodError::Degenerate("cannot sample from an empty histogram".into()));
    }
    let weighted = WeightedIndex::new(dist.counts())
        .map_err(|e| PodError::Degenerate(format!("bad sampling weights: {e}")))?;
    let n: usize = dims.iter().product();
    let cells = (0..n).map(|_| weighted.sample(rng) as u8).collect();
    CellGrid::from_cells(dims, cells)
}

// --- plain-text grid format -------------------------------------------------
//
// First line `dims: W H` or `dims: W H D`, then one glyph per cell per row;
// 3D grids are D blank-line-separated W x H slabs. Round trips bit-exactly.

pub fn emit_text(grid: &CellGrid, alphabet: &TileAlphabet) -> Result<String> {
    grid.validate_for(alphabet)?;
    let dims = grid.dims();
    let (w, h) = (dims[0], dims[1]);
    let depth = if dims.len() == 3 { dims[2] } else { 1 };
    let mut out = String::new();
    out.push_str("dims:");
    for d in dims {
        out.push_str(&format!(" {d}"));
    }
    out.push('\n');
    for z in 0..depth {
        if z > 0 {
            out.push('\n');
        }
        for y in 0..h {
            let row_start = (z * h + y) * w;
            for x in 0..w {
                out.push(alphabet.glyph(grid.get_linear(row_start + x)));
            }
            out.push('\n');
        }
    }
    Ok(out)
}

pub fn parse_text(text: &str, alphabet: &TileAlphabet) -> Result<CellGrid> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| PodError::Format("empty grid text".into()))?;
    let rest = header
        .strip_prefix("dims:")
        .ok_or_else(|| PodError::Format(format!("expected `dims:` header, got {header:?}")))?;
    let dims: Vec<usize> = rest
        .split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| PodError::Format(format!("bad extent {tok:?} in dims header")))
        })
        .collect::<Result<_>>()?;
    if !(dims.len() == 2 || dims.len() == 3) {
        return Err(PodError::Format(format!("dims header lists {} extents", dims.len())));
    }
    let (w, h) = (dims[0], dims[1]);
    let depth = if dims.len() == 3 { dims[2] } else { 1 };
    let mut cells = Vec::with_capacity(w * h * depth);
    for z in 0..depth {
        if z > 0 {
            match lines.next() {
                Some("") => {}
                other => {
                    return Err(PodError::Format(format!(
                        "expected blank line before slab {z}, got {other:?}"
                    )))
                }
            }
        }
        for y in 0..h {
            let line = lines.next().ok_or_else(|| {
                PodError::Format(format!("missing row {y} of slab {z}"))
            })?;
            let glyphs: Vec<char> = line.chars().collect();
            if glyphs.len() != w {
                return Err(PodError::Format(format!(
                    "row {y} of slab {z} has {} glyphs, expected {w}",
                    glyphs.len()
                )));
            }
            for g in glyphs {
                let idx = alphabet.index_of_glyph(g).ok_or_else(|| {
                    PodError::Format(format!("glyph {g:?} not in alphabet"))
                })?;
                cells.push(idx);
            }
        }
    }
    if lines.next().is_some() {
        return Err(PodError::Format("trailing content after grid rows".into()));
    }
    CellGrid::from_cells(&dims, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;
    use proptest::prelude::*;

    fn abc4() -> TileAlphabet {
        TileAlphabet::new(&[("a", '.'), ("b", '#'), ("c", 'c'), ("d", 'd')]).unwrap()
    }

    fn random_grid(dims: &[usize], categories: u8, seed: u64) -> CellGrid {
        let mut rng = rng_from_seed(seed);
        let cells = (0..dims.iter().product::<usize>())
            .map(|_| rng.gen_range(0..categories))
            .collect();
        CellGrid::from_cells(dims, cells).unwrap()
    }

    #[test]
    fn alphabet_rejects_bad_inputs() {
        assert!(TileAlphabet::new(&[("only", '.')]).is_err());
        assert!(TileAlphabet::new(&[("a", '.'), ("a", '#')]).is_err());
        assert!(TileAlphabet::new(&[("a", '.'), ("b", '.')]).is_err());
    }

    #[test]
    fn one_hot_single_cell() {
        let g = CellGrid::from_cells(&[1, 1], vec![2]).unwrap();
        let t = one_hot_encode(&g, &abc4()).unwrap();
        assert_eq!(t.shape(), &[4, 1, 1]);
        assert_eq!(t.data(), &[0.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn one_hot_all_zero_grid() {
        let g = CellGrid::filled(&[2, 2], 0).unwrap();
        let t = one_hot_encode(&g, &abc4()).unwrap();
        assert_eq!(&t.data()[0..4], &[1.0; 4]);
        assert!(t.data()[4..].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn one_hot_per_cell_sums_are_one() {
        let g = random_grid(&[19, 19], 4, 11);
        let t = one_hot_encode(&g, &abc4()).unwrap();
        let n = g.cell_count();
        for i in 0..n {
            let sum: f32 = (0..4).map(|c| t.data()[c * n + i]).sum();
            assert_eq!(sum, 1.0);
        }
    }

    #[test]
    fn one_hot_rejects_out_of_range_cells() {
        let g = CellGrid::from_cells(&[2, 1], vec![0, 7]).unwrap();
        assert!(matches!(one_hot_encode(&g, &abc4()), Err(PodError::InvalidGrid(_))));
    }

    #[test]
    fn hamming_examples() {
        let a = random_grid(&[19, 19], 4, 3);
        assert_eq!(hamming_distance(&a, &a).unwrap(), HammingDistance { count: 0, fraction: 0.0 });

        // flip exactly 36 cells
        let mut b = a.clone();
        for i in 0..36 {
            let idx = i * 10;
            b.set_linear(idx, (a.get_linear(idx) + 1) % 4);
        }
        let d = hamming_distance(&a, &b).unwrap();
        assert_eq!(d.count, 36);
        assert!((d.fraction - 36.0 / 361.0).abs() < 1e-12);

        // full relabel
        let full = CellGrid::from_cells(
            a.dims(),
            a.cells().iter().map(|&c| (c + 1) % 4).collect(),
        )
        .unwrap();
        assert_eq!(hamming_distance(&a, &full).unwrap().fraction, 1.0);

        let other = CellGrid::filled(&[3, 3], 0).unwrap();
        assert!(matches!(hamming_distance(&a, &other), Err(PodError::Shape(_))));
    }

    #[test]
    fn histogram_counts_and_total() {
        let g = CellGrid::filled(&[3, 3], 0).unwrap();
        let h = tile_histogram(&g, 4).unwrap();
        assert_eq!(h.counts(), &[9, 0, 0, 0]);
        assert_eq!(h.total(), 9);

        let g2 = g.with_cell(&Cursor(vec![1, 1]), 3);
        let h2 = tile_histogram(&g2, 4).unwrap();
        assert_eq!(h2.counts(), &[8, 0, 0, 1]);

        // recount oracle on a random grid
        let r = random_grid(&[7, 5], 4, 99);
        let hr = tile_histogram(&r, 4).unwrap();
        for c in 0..4u8 {
            let direct = r.cells().iter().filter(|&&v| v == c).count() as u64;
            assert_eq!(hr.counts()[c as usize], direct);
        }
        assert_eq!(hr.total(), 35);
    }

    #[test]
    fn histogram_l1_examples() {
        let a = TileHistogram::new(vec![5, 5, 0]);
        assert_eq!(histogram_l1(&a, &a).unwrap(), 0.0);

        let b = TileHistogram::new(vec![10, 0, 0]);
        let c = TileHistogram::new(vec![0, 7, 0]);
        assert_eq!(histogram_l1(&b, &c).unwrap(), 2.0);

        let zero = TileHistogram::new(vec![0, 0, 0]);
        assert!(matches!(histogram_l1(&a, &zero), Err(PodError::Degenerate(_))));

        // independent summation oracle on random pairs
        let mut rng = rng_from_seed(5);
        for _ in 0..20 {
            let x = TileHistogram::new((0..6).map(|_| rng.gen_range(0..50)).collect());
            let y = TileHistogram::new((0..6).map(|_| rng.gen_range(1..50)).collect());
            if x.total() == 0 {
                continue;
            }
            let mut expected = 0.0;
            for k in 0..6 {
                expected += (x.counts()[k] as f64 / x.total() as f64
                    - y.counts()[k] as f64 / y.total() as f64)
                    .abs();
            }
            let got = histogram_l1(&x, &y).unwrap();
            assert!((got - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn sample_point_mass_and_determinism() {
        let point = TileHistogram::new(vec![0, 9, 0, 0]);
        let g = sample_iid_grid(&point, &[4, 3], &mut rng_from_seed(1)).unwrap();
        assert!(g.cells().iter().all(|&c| c == 1));

        let dist = TileHistogram::new(vec![3, 1, 1, 2]);
        let a = sample_iid_grid(&dist, &[6, 6], &mut rng_from_seed(7)).unwrap();
        let b = sample_iid_grid(&dist, &[6, 6], &mut rng_from_seed(7)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sample_uniform_37_frequencies_within_3_sigma() {
        let dist = TileHistogram::uniform(37);
        // many 6x6x6 draws pooled
        let mut counts = vec![0u64; 37];
        let mut rng = rng_from_seed(123);
        let draws = 200;
        for _ in 0..draws {
            let g = sample_iid_grid(&dist, &[6, 6, 6], &mut rng).unwrap();
            for &c in g.cells() {
                counts[c as usize] += 1;
            }
        }
        let n = (draws * 216) as f64;
        let p = 1.0 / 37.0;
        let sigma = (n * p * (1.0 - p)).sqrt();
        for &c in &counts {
            assert!(
                (c as f64 - n * p).abs() <= 3.0 * sigma,
                "category count {c} outside 3 sigma of {}",
                n * p
            );
        }
    }

    #[test]
    fn sampled_histogram_l1_shrinks_toward_source() {
        let source = TileHistogram::new(vec![62, 28, 1, 1, 1, 4]);
        let mut rng = rng_from_seed(2024);
        let g = sample_iid_grid(&source, &[100, 100], &mut rng).unwrap();
        let h = tile_histogram(&g, 6).unwrap();
        let l1 = histogram_l1(&h, &source).unwrap();
        assert!(l1 < 0.05, "L1 {l1} too large for a 10k-cell sample");
    }

    #[test]
    fn text_format_round_trip_2d_and_3d() {
        let alpha = abc4();
        let g2 = random_grid(&[5, 3], 4, 8);
        let text = emit_text(&g2, &alpha).unwrap();
        assert!(text.starts_with("dims: 5 3\n"));
        assert_eq!(parse_text(&text, &alpha).unwrap(), g2);
        assert_eq!(emit_text(&parse_text(&text, &alpha).unwrap(), &alpha).unwrap(), text);

        let g3 = random_grid(&[4, 3, 2], 4, 9);
        let text3 = emit_text(&g3, &alpha).unwrap();
        assert_eq!(parse_text(&text3, &alpha).unwrap(), g3);
    }

    #[test]
    fn parse_rejects_malformed_text() {
        let alpha = abc4();
        assert!(parse_text("", &alpha).is_err());
        assert!(parse_text("5 3\n.....\n", &alpha).is_err());
        assert!(parse_text("dims: 2 2\n..\n.\n", &alpha).is_err());
        assert!(parse_text("dims: 2 2\n..\n..\nextra\n", &alpha).is_err());
        assert!(parse_text("dims: 2 2\n..\n.Z\n", &alpha).is_err());
    }

    #[test]
    fn one_hot_argmax_round_trip() {
        let g = random_grid(&[11, 7], 4, 21);
        let t = one_hot_encode(&g, &abc4()).unwrap();
        let n = g.cell_count();
        let mut rebuilt = vec![0u8; n];
        for i in 0..n {
            let mut best = 0;
            for c in 1..4 {
                if t.data()[c * n + i] > t.data()[best * n + i] {
                    best = c;
                }
            }
            rebuilt[i] = best as u8;
        }
        assert_eq!(rebuilt, g.cells());
    }

    proptest! {
        #[test]
        fn hamming_is_a_metric(seed_a in 0u64..500, seed_b in 500u64..1000, seed_c in 1000u64..1500) {
            let a = random_grid(&[6, 4], 4, seed_a);
            let b = random_grid(&[6, 4], 4, seed_b);
            let c = random_grid(&[6, 4], 4, seed_c);
            let dab = hamming_distance(&a, &b).unwrap().count;
            let dba = hamming_distance(&b, &a).unwrap().count;
            let dac = hamming_distance(&a, &c).unwrap().count;
            let dcb = hamming_distance(&c, &b).unwrap().count;
            prop_assert_eq!(dab, dba);
            prop_assert_eq!(hamming_distance(&a, &a).unwrap().count, 0);
            prop_assert!((dab == 0) == (a == b));
            prop_assert!(dab <= dac + dcb);
        }

        #[test]
        fn text_round_trip_is_bit_exact(seed in 0u64..200, w in 1usize..8, h in 1usize..8, d in 1usize..4) {
            let alpha = abc4();
            let dims = if d == 1 { vec![w, h] } else { vec![w, h, d] };
            let g = random_grid(&dims, 4, seed);
            let text = emit_text(&g, &alpha).unwrap();
            let back = parse_text(&text, &alpha).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(emit_text(&back, &alpha).unwrap(), text);
        }
    }
}
