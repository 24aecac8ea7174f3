//! Small integer max-flow used by the disjoint-path and important-cut code.
//!
//! Plain BFS augmentation (Edmonds–Karp). Every graph passed through here is
//! desk scale, so simplicity and determinism beat asymptotics.

pub(crate) const INF: u64 = u64::MAX / 4;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u64,
    rev: usize,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct FlowNetwork {
    adj: Vec<Vec<Arc>>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn add_node(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: u64) {
        let rev_from = self.adj[to].len();
        let rev_to = self.adj[from].len();
        self.adj[from].push(Arc {
            to,
            cap,
            rev: rev_from,
        });
        self.adj[to].push(Arc {
            to: from,
            cap: 0,
            rev: rev_to,
        });
    }

    fn bfs_augment(&mut self, source: usize, sink: usize) -> u64 {
        let n = self.adj.len();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        seen[source] = true;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for (i, arc) in self.adj[u].iter().enumerate() {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    prev[arc.to] = Some((u, i));
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[sink] {
            return 0;
        }
        let mut bottleneck = INF;
        let mut v = sink;
        while let Some((u, i)) = prev[v] {
            bottleneck = bottleneck.min(self.adj[u][i].cap);
            v = u;
        }
        let mut v = sink;
        while let Some((u, i)) = prev[v] {
            let rev = self.adj[u][i].rev;
            self.adj[u][i].cap -= bottleneck;
            self.adj[v][rev].cap += bottleneck;
            v = u;
        }
        bottleneck
    }

    /// Max flow value; stops early once `cap_limit` is exceeded.
    pub fn max_flow_capped(&mut self, source: usize, sink: usize, cap_limit: u64) -> u64 {
        let mut total = 0;
        loop {
            let pushed = self.bfs_augment(source, sink);
            if pushed == 0 {
                return total;
            }
            total += pushed;
            if total > cap_limit {
                return total;
            }
        }
    }

    pub fn max_flow(&mut self, source: usize, sink: usize) -> u64 {
        self.max_flow_capped(source, sink, INF)
    }

    /// Nodes with a residual path to `target`. After a max flow this is the
    /// sink side of the minimum cut closest to the sink.
    pub fn residual_coreachable(&self, target: usize) -> Vec<bool> {
        // Walk residual arcs backwards: u reaches target if some residual arc
        // u -> v exists with v already marked.
        let n = self.adj.len();
        let mut marked = vec![false; n];
        marked[target] = true;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(target);
        while let Some(v) = queue.pop_front() {
            // incoming residual arcs u -> v are the reverse entries stored at v
            for arc in &self.adj[v] {
                // arc v -> arc.to with cap > 0 on the *reverse* side means the
                // forward arc arc.to -> v still has residual capacity.
                let back = &self.adj[arc.to][arc.rev];
                if back.cap > 0 && !marked[arc.to] {
                    marked[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        marked
    }
}
