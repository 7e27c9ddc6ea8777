//! Exhaustive penult enumeration up to the symmetries of the square.
//!
//! The search decides universe elements in ascending index order, each
//! either marked or unmarked. A branch is cut as soon as the decided marks
//! already have a winning move: every superset inherits it, so no penult
//! lies below. For Tak a branch is also cut once some window can no longer
//! reach its penult minimum (by default only the Cross, which needs one
//! token). The first few decisions form independent prefixes that
//! are searched in parallel and in ascending order, which is what the
//! checkpoint records.

use std::collections::{BTreeMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::board::{Board, RuleSet, SymTable};
use crate::bounds::WindowKind;
use crate::error::{Error, Result};
use crate::render::{from_json, to_json};
use crate::rules::Geometry;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;
pub const DEFAULT_PREFIX_CELLS: usize = 8;

/// Progress record written after each batch of completed prefixes.
///
/// `prefix_mask` holds the search-space marks of the last completed prefix
/// over the first `decided_count` universe elements; prefixes are completed
/// in ascending numeric order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub prefix_mask: Option<u64>,
    pub decided_count: usize,
    pub emitted_count: usize,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Checkpoint> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    fn store(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(self)?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}

/// The archive of emitted boards that accompanies a checkpoint file.
pub fn archive_path(checkpoint: &Path) -> PathBuf {
    let mut name = checkpoint.as_os_str().to_owned();
    name.push(".jsonl");
    PathBuf::from(name)
}

/// Writes boards as JSON lines.
pub fn write_archive(path: &Path, boards: &[Board]) -> Result<()> {
    let mut out = String::new();
    for b in boards {
        out.push_str(&to_json(b));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn read_archive(path: &Path) -> Result<Vec<Board>> {
    let file = File::open(path)?;
    let mut boards = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line?;
        if !line.trim().is_empty() {
            boards.push(from_json(&line)?);
        }
    }
    Ok(boards)
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    game: RuleSet,
    n: usize,
    workers: usize,
    prefix_cells: usize,
    node_budget: u64,
    max_tokens: Option<usize>,
    windows: Vec<WindowKind>,
    checkpoint: Option<PathBuf>,
    resume: bool,
}

/// Outcome of a finished search.
#[derive(Clone, Debug)]
pub struct Enumerated {
    pub boards: Vec<Board>,
    pub nodes: u64,
    pub seconds: f64,
}

impl Enumeration {
    pub fn new(game: RuleSet, n: usize) -> Self {
        Enumeration {
            game,
            n,
            workers: 0,
            prefix_cells: DEFAULT_PREFIX_CELLS,
            node_budget: DEFAULT_NODE_BUDGET,
            max_tokens: None,
            windows: vec![WindowKind::Cross],
            checkpoint: None,
            resume: false,
        }
    }

    /// Worker threads; 0 uses all cores.
    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn prefix_cells(mut self, k: usize) -> Self {
        self.prefix_cells = k;
        self
    }

    pub fn node_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }

    /// Only penults with at most this many tokens.
    pub fn max_tokens(mut self, t: usize) -> Self {
        self.max_tokens = Some(t);
        self
    }

    /// Tak windows whose penult minimum is enforced during the search.
    pub fn windows(mut self, windows: &[WindowKind]) -> Self {
        self.windows = windows.to_vec();
        self
    }

    pub fn checkpoint(mut self, path: impl Into<PathBuf>, resume: bool) -> Self {
        self.checkpoint = Some(path.into());
        self.resume = resume;
        self
    }

    pub fn run(&self) -> Result<Enumerated> {
        self.game.check_side(self.n)?;
        let len = self.game.universe_len(self.n);
        if len > 64 {
            return Err(Error::Unsupported(format!("enumeration of {} at n = {} ({len} elements)", self.game, self.n)));
        }
        let start = Instant::now();
        let search = Search::new(self.game, self.n, self.max_tokens, &self.windows, self.node_budget);
        let k = self.prefix_cells.min(len);

        let mut emitted: HashSet<u64> = HashSet::new();
        let mut done: Option<u64> = None;
        if let (Some(cp), true) = (&self.checkpoint, self.resume) {
            if cp.exists() {
                let state = Checkpoint::load(cp)?;
                if state.decided_count != k {
                    return Err(Error::Mismatch(format!(
                        "checkpoint splits on {} elements, this run on {k}",
                        state.decided_count
                    )));
                }
                let archived = read_archive(&archive_path(cp))?;
                for b in &archived {
                    if b.game() != self.game || b.n() != self.n {
                        return Err(Error::Mismatch(format!("archive holds a {} {} board", b.game(), b.n())));
                    }
                }
                emitted.extend(archived.iter().map(|b| b.mask().to_u64()));
                done = state.prefix_mask;
            }
        } else if let Some(cp) = &self.checkpoint {
            fs::write(archive_path(cp), "")?;
            let _ = fs::remove_file(cp);
        }

        let mut prefixes = Vec::new();
        search.prefixes(0, 0, k, &mut prefixes);
        prefixes.sort_unstable();
        prefixes.retain(|&p| done.is_none_or(|d| p > d));

        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::Unsupported(e.to_string()))?;
        let batch = pool.current_num_threads().max(1) * 4;
        for chunk in prefixes.chunks(batch) {
            let found: Vec<Result<Vec<u64>>> = pool.install(|| {
                chunk
                    .par_iter()
                    .map(|&p| {
                        let mut out = Vec::new();
                        search.dfs(k, p, &mut out)?;
                        Ok(out)
                    })
                    .collect()
            });
            let mut fresh = Vec::new();
            for r in found {
                for m in r? {
                    if emitted.insert(m) {
                        fresh.push(m);
                    }
                }
            }
            if let Some(cp) = &self.checkpoint {
                let mut file = OpenOptions::new().append(true).create(true).open(archive_path(cp))?;
                for &m in &fresh {
                    writeln!(file, "{}", to_json(&search.board(m)))?;
                }
                Checkpoint { prefix_mask: chunk.last().copied(), decided_count: k, emitted_count: emitted.len() }
                    .store(cp)?;
            }
        }

        let mut boards: Vec<Board> = emitted.into_iter().map(|m| search.board(m)).collect();
        boards.sort_by(Board::sort_key_cmp);
        if let Some(cp) = &self.checkpoint {
            write_archive(&archive_path(cp), &boards)?;
        }
        Ok(Enumerated { boards, nodes: search.nodes.load(Ordering::Relaxed), seconds: start.elapsed().as_secs_f64() })
    }
}

/// A weighted window: cells of weight 2 and of weight 1.
struct Window {
    heavy: u64,
    light: u64,
    minimum: u32,
}

impl Window {
    #[inline]
    fn best(&self, open: u64) -> u32 {
        2 * (self.heavy & open).count() + (self.light & open).count()
    }
}

struct Search {
    game: RuleSet,
    n: usize,
    len: usize,
    geo: Geometry<u64>,
    sym: SymTable,
    windows: Vec<Window>,
    /// Windows touching each index.
    windows_at: Vec<Vec<usize>>,
    /// Indices above each index.
    after: Vec<u64>,
    /// Most marks allowed, from a token cap.
    mark_cap: Option<u32>,
    /// Fewest marks allowed, from a token cap in the removal game.
    mark_floor: u32,
    budget: u64,
    nodes: AtomicU64,
    over: AtomicBool,
}

impl Search {
    fn new(game: RuleSet, n: usize, max_tokens: Option<usize>, kinds: &[WindowKind], budget: u64) -> Self {
        let len = game.universe_len(n);
        let mut windows = Vec::new();
        if game == RuleSet::Tak {
            for &kind in kinds {
                let s = kind.side();
                for top in 0..(n + 1).saturating_sub(s) {
                    for left in 0..=n - s {
                        let mut w = Window { heavy: 0, light: 0, minimum: kind.penult_minimum() };
                        for r in 0..s {
                            for c in 0..s {
                                let i = (top + r) * n + left + c;
                                match kind.weight(r, c) {
                                    2 => w.heavy |= 1 << i,
                                    1 => w.light |= 1 << i,
                                    _ => {}
                                }
                            }
                        }
                        windows.push(w);
                    }
                }
            }
        }
        let mut windows_at = vec![Vec::new(); len];
        for (k, w) in windows.iter().enumerate() {
            for i in (w.heavy | w.light).ones() {
                windows_at[i].push(k);
            }
        }
        let after = (0..len).map(|i| u64::low(len) & !u64::low(i + 1)).collect();
        let (mark_cap, mark_floor) = match (game, max_tokens) {
            (RuleSet::DualTic, Some(t)) => (None, len.saturating_sub(t) as u32),
            (_, Some(t)) => (Some(t as u32), 0),
            (_, None) => (None, 0),
        };
        Search {
            game,
            n,
            len,
            geo: Geometry::new(game, n),
            sym: SymTable::new(game, n),
            windows,
            windows_at,
            after,
            mark_cap,
            mark_floor,
            budget,
            nodes: AtomicU64::new(0),
            over: AtomicBool::new(false),
        }
    }

    fn board(&self, occupancy: u64) -> Board {
        Board::from_mask(self.game, self.n, occupancy).expect("mask inside universe")
    }

    /// Whether marking `i` on top of `marks` keeps the branch alive.
    #[inline]
    fn mark_ok(&self, marks: u64) -> bool {
        self.mark_cap.is_none_or(|cap| marks.count() <= cap)
            && self.geo.winning_moves(marks) == 0
            && !self.geo.is_won(marks)
    }

    /// Whether leaving `i` unmarked keeps the branch alive.
    #[inline]
    fn skip_ok(&self, i: usize, marks: u64) -> bool {
        let open = marks | self.after[i];
        if self.windows_at[i].iter().any(|&k| self.windows[k].best(open) < self.windows[k].minimum) {
            return false;
        }
        marks.count() as usize + (self.len - i - 1) >= self.mark_floor as usize
    }

    fn prefixes(&self, i: usize, marks: u64, k: usize, out: &mut Vec<u64>) {
        if i == k {
            out.push(marks);
            return;
        }
        if self.skip_ok(i, marks) {
            self.prefixes(i + 1, marks, k, out);
        }
        let m = marks.with(i);
        if self.mark_ok(m) {
            self.prefixes(i + 1, m, k, out);
        }
    }

    fn tick(&self, local: &mut u64) -> Result<()> {
        *local += 1;
        if *local == 4096 {
            let total = self.nodes.fetch_add(*local, Ordering::Relaxed) + *local;
            *local = 0;
            if total > self.budget {
                self.over.store(true, Ordering::Relaxed);
            }
            if self.over.load(Ordering::Relaxed) {
                return Err(Error::BudgetExceeded { budget: self.budget });
            }
        }
        Ok(())
    }

    /// Canonical occupancy masks of every penult below the prefix `marks`.
    fn dfs(&self, start: usize, marks: u64, out: &mut Vec<u64>) -> Result<()> {
        let mut local = 0;
        self.walk(start, marks, out, &mut local)?;
        if self.nodes.fetch_add(local, Ordering::Relaxed) + local > self.budget {
            self.over.store(true, Ordering::Relaxed);
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    fn walk(&self, i: usize, marks: u64, out: &mut Vec<u64>, local: &mut u64) -> Result<()> {
        self.tick(local)?;
        if i == self.len {
            if marks.count() >= self.mark_floor && self.geo.every_option_is_ult(marks) {
                let occupancy = self.geo.marks_of(marks);
                let canon = self.sym.canonical(occupancy);
                out.push(canon);
            }
            return Ok(());
        }
        if self.skip_ok(i, marks) {
            self.walk(i + 1, marks, out, local)?;
        }
        let m = marks.with(i);
        if self.mark_ok(m) {
            self.walk(i + 1, m, out, local)?;
        }
        Ok(())
    }
}

/// Every penult of `game` at side `n`, one canonical board per isometry
/// class, sorted by token count and then mask.
pub fn enumerate_penults(game: RuleSet, n: usize) -> Result<Vec<Board>> {
    Ok(Enumeration::new(game, n).run()?.boards)
}

/// Number of nonisometric penults per token count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub game: RuleSet,
    pub n: usize,
    pub classes: BTreeMap<usize, usize>,
    #[serde(skip)]
    pub representatives: Option<BTreeMap<usize, Vec<Board>>>,
}

impl Spectrum {
    pub fn from_boards(game: RuleSet, n: usize, boards: &[Board]) -> Spectrum {
        let mut classes = BTreeMap::new();
        let mut reps: BTreeMap<usize, Vec<Board>> = BTreeMap::new();
        for b in boards {
            *classes.entry(b.token_count()).or_insert(0) += 1;
            reps.entry(b.token_count()).or_default().push(*b);
        }
        Spectrum { game, n, classes, representatives: Some(reps) }
    }

    pub fn total(&self) -> usize {
        self.classes.values().sum()
    }

    /// Smallest and largest token counts.
    pub fn extremes(&self) -> Option<(usize, usize)> {
        Some((*self.classes.keys().next()?, *self.classes.keys().next_back()?))
    }
}

pub fn spectrum(game: RuleSet, n: usize) -> Result<Spectrum> {
    Ok(Spectrum::from_boards(game, n, &enumerate_penults(game, n)?))
}

/// `(L(n), U(n))`: the smallest and largest penult sizes.
pub fn extremes(game: RuleSet, n: usize) -> Result<(usize, usize)> {
    spectrum(game, n)?.extremes().ok_or_else(|| Error::Unsupported(format!("{game} has no penults at n = {n}")))
}

/// Whether the token counts form a gapless interval.
pub fn is_interval(s: &Spectrum) -> bool {
    match s.extremes() {
        Some((lo, hi)) => s.classes.len() == hi - lo + 1,
        None => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::is_penult;

    /// Filters every board of the universe and canonicalizes.
    fn naive(game: RuleSet, n: usize) -> Vec<Board> {
        let len = game.universe_len(n);
        let mut set = HashSet::new();
        for m in 0..1u64 << len {
            let b = Board::from_mask(game, n, m).unwrap();
            if is_penult(&b) {
                set.insert(b.canonical_form());
            }
        }
        let mut v: Vec<Board> = set.into_iter().collect();
        v.sort_by(Board::sort_key_cmp);
        v
    }

    #[test]
    fn matches_naive_filter_on_small_boards() {
        let cases = [
            (RuleSet::Tak, 1),
            (RuleSet::Tak, 2),
            (RuleSet::Tak, 3),
            (RuleSet::Tak, 4),
            (RuleSet::Tic, 2),
            (RuleSet::Tic, 3),
            (RuleSet::Tic, 4),
            (RuleSet::DualTic, 2),
            (RuleSet::DualTic, 3),
            (RuleSet::DualTic, 4),
            (RuleSet::DotsBoxes, 2),
            (RuleSet::DotsBoxes, 3),
        ];
        for (game, n) in cases {
            let fast = enumerate_penults(game, n).unwrap();
            assert_eq!(fast, naive(game, n), "{game} {n}");
        }
    }

    #[test]
    fn small_tak_counts() {
        assert_eq!(enumerate_penults(RuleSet::Tak, 2).unwrap().len(), 1);
        assert_eq!(enumerate_penults(RuleSet::Tak, 3).unwrap().len(), 2);
        assert_eq!(extremes(RuleSet::Tak, 2).unwrap(), (0, 0));
    }

    #[test]
    fn output_is_canonical_and_independent_of_workers() {
        let one = Enumeration::new(RuleSet::Tak, 4).workers(1).prefix_cells(3).run().unwrap().boards;
        let many = Enumeration::new(RuleSet::Tak, 4).workers(3).prefix_cells(10).run().unwrap().boards;
        assert_eq!(one, many);
        assert!(one.iter().all(|b| b.is_canonical() && is_penult(b)));
        assert!(one.windows(2).all(|w| w[0].sort_key_cmp(&w[1]).is_lt()));
    }

    #[test]
    fn token_cap_keeps_the_small_end() {
        let all = enumerate_penults(RuleSet::Tak, 4).unwrap();
        let capped = Enumeration::new(RuleSet::Tak, 4).max_tokens(7).run().unwrap().boards;
        let want: Vec<Board> = all.iter().copied().filter(|b| b.token_count() <= 7).collect();
        assert_eq!(capped, want);
        let dual = Enumeration::new(RuleSet::DualTic, 4).max_tokens(8).run().unwrap().boards;
        assert!(!dual.is_empty() && dual.iter().all(|b| b.token_count() == 8));
    }

    #[test]
    fn budget_is_enforced() {
        let r = Enumeration::new(RuleSet::Tak, 4).node_budget(5000).run();
        assert!(matches!(r, Err(Error::BudgetExceeded { budget: 5000 })));
    }

    #[test]
    fn resume_after_budget_stop() {
        let dir = tempfile::tempdir().unwrap();
        let cp = dir.path().join("tak4.json");
        let full = enumerate_penults(RuleSet::Tak, 4).unwrap();
        let first = Enumeration::new(RuleSet::Tak, 4)
            .workers(1)
            .prefix_cells(8)
            .node_budget(4_000)
            .checkpoint(&cp, false)
            .run();
        assert!(first.is_err());
        let state = Checkpoint::load(&cp).unwrap();
        assert_eq!(state.decided_count, 8);
        assert!(state.prefix_mask.is_some());
        let rest = Enumeration::new(RuleSet::Tak, 4).workers(1).prefix_cells(8).checkpoint(&cp, true).run().unwrap();
        assert_eq!(rest.boards, full);
        assert_eq!(read_archive(&archive_path(&cp)).unwrap(), full);
    }

    #[test]
    fn interval_check() {
        let s = |keys: &[usize]| Spectrum {
            game: RuleSet::Tak,
            n: 4,
            classes: keys.iter().map(|&k| (k, 1)).collect(),
            representatives: None,
        };
        assert!(is_interval(&s(&[6, 7, 8])));
        assert!(is_interval(&s(&[8, 9])));
        assert!(!is_interval(&s(&[4, 6])));
    }
}
