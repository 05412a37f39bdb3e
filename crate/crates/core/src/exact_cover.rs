//! Exact cover with primary and secondary items, solved by dancing links.
//!
//! Primary items must be covered exactly once, secondary items at most once.
//! The branching item is the primary item with the fewest remaining options
//! (lowest index on ties) and options are tried in insertion order, so the
//! first solution found is deterministic.

#[derive(Clone, Debug)]
pub struct ExactCover {
    n_primary: usize,
    n_items: usize,
    rows: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Search-tree nodes visited.
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// Row indices of the first solution, in increasing order.
    Found(Vec<usize>),
    Exhausted,
    /// The node limit was reached before the search finished.
    Aborted,
}

impl ExactCover {
    pub fn new(n_primary: usize, n_secondary: usize) -> Self {
        let n_items = n_primary + n_secondary;
        assert!(n_items < u32::MAX as usize);
        ExactCover { n_primary, n_items, rows: Vec::new() }
    }

    pub fn n_primary(&self) -> usize {
        self.n_primary
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    /// Adds an option covering `items`, at least one of them primary; returns its row index.
    pub fn add_row(&mut self, items: &[usize]) -> usize {
        assert!(!items.is_empty(), "empty option");
        let mut r: Vec<u32> = items
            .iter()
            .map(|&i| {
                assert!(i < self.n_items, "item out of range");
                i as u32
            })
            .collect();
        r.sort_unstable();
        assert!(r.windows(2).all(|w| w[0] != w[1]), "repeated item in option");
        assert!((r[0] as usize) < self.n_primary, "option covers no primary item");
        self.rows.push(r);
        self.rows.len() - 1
    }

    pub fn solve_first(&self, node_limit: Option<u64>) -> (SearchOutcome, SearchStats) {
        let mut dlx = Dlx::build(self);
        let mut chosen = Vec::new();
        let mut stats = SearchStats::default();
        let mut found = None;
        let limit = node_limit.unwrap_or(u64::MAX);
        let done = dlx.search(&mut chosen, &mut stats, limit, &mut |sol| {
            found = Some(sol.to_vec());
            true
        });
        let outcome = match (found, done) {
            (Some(mut s), _) => {
                s.sort_unstable();
                SearchOutcome::Found(s)
            }
            (None, Flow::Aborted) => SearchOutcome::Aborted,
            (None, _) => SearchOutcome::Exhausted,
        };
        (outcome, stats)
    }

    pub fn count_solutions(&self) -> u64 {
        let mut dlx = Dlx::build(self);
        let mut chosen = Vec::new();
        let mut stats = SearchStats::default();
        let mut count = 0u64;
        dlx.search(&mut chosen, &mut stats, u64::MAX, &mut |_| {
            count += 1;
            false
        });
        count
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
    Aborted,
}

/// Node arena: `0..n_items` are item headers, `root` follows, then option nodes.
struct Dlx {
    left: Vec<u32>,
    right: Vec<u32>,
    up: Vec<u32>,
    down: Vec<u32>,
    item: Vec<u32>,
    row: Vec<u32>,
    size: Vec<u32>,
    root: u32,
}

impl Dlx {
    fn build(p: &ExactCover) -> Dlx {
        let n = p.n_items;
        let total = n + 1 + p.rows.iter().map(Vec::len).sum::<usize>();
        let mut d = Dlx {
            left: Vec::with_capacity(total),
            right: Vec::with_capacity(total),
            up: Vec::with_capacity(total),
            down: Vec::with_capacity(total),
            item: Vec::with_capacity(total),
            row: Vec::with_capacity(total),
            size: vec![0; n],
            root: n as u32,
        };
        for i in 0..=n as u32 {
            d.left.push(i);
            d.right.push(i);
            d.up.push(i);
            d.down.push(i);
            d.item.push(i);
            d.row.push(u32::MAX);
        }
        let root = d.root;
        for i in 0..p.n_primary as u32 {
            let last = d.left[root as usize];
            d.right[last as usize] = i;
            d.left[i as usize] = last;
            d.right[i as usize] = root;
            d.left[root as usize] = i;
        }
        for (r, items) in p.rows.iter().enumerate() {
            let first = d.item.len() as u32;
            for (k, &c) in items.iter().enumerate() {
                let x = d.item.len() as u32;
                let above = d.up[c as usize];
                d.up.push(above);
                d.down.push(c);
                d.down[above as usize] = x;
                d.up[c as usize] = x;
                d.item.push(c);
                d.row.push(r as u32);
                d.size[c as usize] += 1;
                if k == 0 {
                    d.left.push(x);
                    d.right.push(x);
                } else {
                    let last = d.left[first as usize];
                    d.left.push(last);
                    d.right.push(first);
                    d.right[last as usize] = x;
                    d.left[first as usize] = x;
                }
            }
        }
        d
    }

    fn cover(&mut self, c: u32) {
        let (l, r) = (self.left[c as usize], self.right[c as usize]);
        self.right[l as usize] = r;
        self.left[r as usize] = l;
        let mut i = self.down[c as usize];
        while i != c {
            let mut j = self.right[i as usize];
            while j != i {
                let (u, dn) = (self.up[j as usize], self.down[j as usize]);
                self.down[u as usize] = dn;
                self.up[dn as usize] = u;
                self.size[self.item[j as usize] as usize] -= 1;
                j = self.right[j as usize];
            }
            i = self.down[i as usize];
        }
    }

    fn uncover(&mut self, c: u32) {
        let mut i = self.up[c as usize];
        while i != c {
            let mut j = self.left[i as usize];
            while j != i {
                let (u, dn) = (self.up[j as usize], self.down[j as usize]);
                self.down[u as usize] = j;
                self.up[dn as usize] = j;
                self.size[self.item[j as usize] as usize] += 1;
                j = self.left[j as usize];
            }
            i = self.up[i as usize];
        }
        let (l, r) = (self.left[c as usize], self.right[c as usize]);
        self.right[l as usize] = c;
        self.left[r as usize] = c;
    }

    fn search(
        &mut self,
        chosen: &mut Vec<usize>,
        stats: &mut SearchStats,
        limit: u64,
        on_solution: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Flow {
        if stats.nodes >= limit {
            return Flow::Aborted;
        }
        stats.nodes += 1;
        let root = self.root;
        if self.right[root as usize] == root {
            return if on_solution(chosen) { Flow::Stop } else { Flow::Continue };
        }
        let mut best = u32::MAX;
        let mut best_size = u32::MAX;
        let mut c = self.right[root as usize];
        while c != root {
            let s = self.size[c as usize];
            if s < best_size || (s == best_size && c < best) {
                best = c;
                best_size = s;
                if s == 0 {
                    break;
                }
            }
            c = self.right[c as usize];
        }
        if best_size == 0 {
            return Flow::Continue;
        }
        self.cover(best);
        let mut r = self.down[best as usize];
        let mut flow = Flow::Continue;
        while r != best {
            chosen.push(self.row[r as usize] as usize);
            let mut j = self.right[r as usize];
            while j != r {
                self.cover(self.item[j as usize]);
                j = self.right[j as usize];
            }
            flow = self.search(chosen, stats, limit, on_solution);
            let mut j = self.left[r as usize];
            while j != r {
                self.uncover(self.item[j as usize]);
                j = self.left[j as usize];
            }
            chosen.pop();
            if flow != Flow::Continue {
                break;
            }
            r = self.down[r as usize];
        }
        self.uncover(best);
        flow
    }
}
