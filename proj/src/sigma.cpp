#include "cf3/sigma.hpp"

#include "cf3/config.hpp"
#include "cf3/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>

namespace cf3 {

namespace {

// ---- balanced words --------------------------------------------------------

// Depth-first enumeration of balanced words.  lo/hi track, per factor length,
// the extreme 'a'-counts seen among factors of the current prefix; a prefix
// dies as soon as some length's spread exceeds 1.  Factors of a longer prefix
// are exactly the old factors plus the suffixes ending at the new letter, so
// the incremental update is complete.
void balanced_dfs(std::string& cur, size_t m, std::vector<int>& acnt,
                  std::vector<int>& lo, std::vector<int>& hi,
                  std::vector<std::string>& out) {
    if (cur.size() == m) {
        out.push_back(cur);
        return;
    }
    for (char ch : {'a', 'b'}) {
        cur.push_back(ch);
        size_t p = cur.size();
        acnt[p] = acnt[p - 1] + (ch == 'a' ? 1 : 0);
        std::vector<std::pair<size_t, std::pair<int, int>>> undo;
        bool ok = true;
        for (size_t len = 1; len <= p; ++len) {
            int s = acnt[p] - acnt[p - len];
            int nl = std::min(lo[len], s);
            int nh = std::max(hi[len], s);
            if (nl != lo[len] || nh != hi[len]) {
                undo.push_back({len, {lo[len], hi[len]}});
                lo[len] = nl;
                hi[len] = nh;
            }
            if (nh - nl > 1) {
                ok = false;
                break;
            }
        }
        if (ok) balanced_dfs(cur, m, acnt, lo, hi, out);
        for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
            lo[it->first] = it->second.first;
            hi[it->first] = it->second.second;
        }
        cur.pop_back();
    }
}

// ---- exact Q(sqrt 3) helpers --------------------------------------------------

// Tail values of {1,2}-continued fractions fill [(1+sqrt3)/2, 1+sqrt3]; the
// endpoints are attained by the (1,2)- and (2,1)-periodic tails.
const quad& tail_lo() {
    static const quad q = quad::make(1, 1, 2, 3);
    return q;
}
const quad& tail_hi() {
    static const quad q = quad::make(1, 1, 1, 3);
    return q;
}

// [0; u_1, ..., u_k, continuation] where the continuation has value y >= 1.
quad moebius_tail(const Word& u, const quad& y) {
    if (u.empty()) return y.recip();
    convergent_table t = convergent_table::of(u);
    size_t k = t.order();
    quad num = y.mul_rat(Rat(t.p[k])).add_rat(Rat(t.p[k - 1]));
    quad den = y.mul_rat(Rat(t.q[k])).add_rat(Rat(t.q[k - 1]));
    return num / den;
}

quad min_side(const Word& u) {
    quad v1 = moebius_tail(u, tail_lo());
    quad v2 = moebius_tail(u, tail_hi());
    return v1.cmp(v2) <= 0 ? v1 : v2;
}

quad max_side(const Word& u) {
    quad v1 = moebius_tail(u, tail_lo());
    quad v2 = moebius_tail(u, tail_hi());
    return v1.cmp(v2) >= 0 ? v1 : v2;
}

// Exact value (a + b*sqrt(3)) / c with c > 0, not normalized (comparisons
// cross-multiply, so gcd reduction is unnecessary).
struct q3 {
    Int a, b, c;
};

// sign of a + b*sqrt(3)
int sign3(const Int& a, const Int& b) {
    int sa = sgn(a), sb = sgn(b);
    if (sa == 0 && sb == 0) return 0;
    if (sa >= 0 && sb >= 0) return 1;
    if (sa <= 0 && sb <= 0) return -1;
    Int d = a * a - 3 * b * b;
    return sa > 0 ? sgn(d) : -sgn(d);
}

int q3_cmp(const q3& x, const q3& y) {
    return sign3(x.a * y.c - y.a * x.c, x.b * y.c - y.b * x.c);
}

// (A y + B) / (C y + D) at y = (1 + sqrt 3) / k, rationalized.
q3 q3_eval(const Int& A, const Int& B, const Int& C, const Int& D, long k) {
    q3 v;
    Int CkD = C + k * D;
    v.a = (A + k * B) * CkD - 3 * A * C;
    v.b = k * (A * D - B * C);
    v.c = CkD * CkD - 3 * C * C;
    if (sgn(v.c) < 0) {
        v.a = -v.a;
        v.b = -v.b;
        v.c = -v.c;
    }
    return v;
}

// ---- per-node position scanning ------------------------------------------------

// Continuant tables of W used by every position's two Moebius sides.  With
// K(u) the continuant and using K's reversal invariance, the left tail at
// position p (the reversed prefix W[0..p)) has convergent data
//   (q_m, q_{m-1}, p_m, p_{m-1}) = (Pq[p], Pp[p], Pq[p-1], Pp[p-1])
// in terms of the *forward* prefix continuants Pq[k] = K(W[0..k)),
// Pp[k] = K(W[1..k)); the right tail at p reads the backward suffix
// continuants R[j] = K(W[j..n)), Dm[j] = K(W[j..n-1)).
struct node_tables {
    std::vector<Int> Pq, Pp, R, Dm;

    explicit node_tables(const Word& W) {
        size_t n = W.size();
        Pq.resize(n + 1);
        Pp.resize(n + 1);
        Pq[0] = 1;
        Pp[0] = 0;
        if (n >= 1) {
            Pq[1] = W[0];
            Pp[1] = 1;
        }
        for (size_t k = 2; k <= n; ++k) {
            Pq[k] = W[k - 1] * Pq[k - 1] + Pq[k - 2];
            Pp[k] = W[k - 1] * Pp[k - 1] + Pp[k - 2];
        }
        R.resize(n + 2);
        Dm.resize(n + 2);
        R[n + 1] = 0;
        R[n] = 1;
        Dm[n + 1] = 1;
        Dm[n] = 0;
        for (size_t j = n; j-- > 0;) {
            R[j] = W[j] * R[j + 1] + R[j + 2];
            Dm[j] = W[j] * Dm[j + 1] + Dm[j + 2];
        }
    }

    // rationalized [0; tail at p, endpoint k], endpoint k in {1, 2}
    q3 right(size_t p, long k) const {
        return q3_eval(R[p + 2], Dm[p + 2], R[p + 1], Dm[p + 1], k);
    }
    q3 left(size_t p, long k) const {
        if (p == 0) return q3_eval(0, 1, 1, 0, k);
        return q3_eval(Pq[p - 1], Pp[p - 1], Pq[p], Pp[p], k);
    }
};

struct side_range {
    q3 lo, hi;
};

side_range side_extremes(const q3& v1, const q3& v2) {
    return q3_cmp(v1, v2) <= 0 ? side_range{v1, v2} : side_range{v2, v1};
}

// Threshold in the fast path: rational tp/tq; irrational thresholds take the
// generic quad route.
struct thresh {
    bool fast = false;
    Int tp, tq;
    quad t;
};

thresh make_thresh(const quad& t) {
    thresh th;
    th.t = t;
    if (t.is_rational()) {
        th.fast = true;
        Rat r = t.rat_value();
        th.tp = r.get_num();
        th.tq = r.get_den();
    }
    return th;
}

// sign of (r + l + letter - t) where r, l are q3 side values
int total_vs_t(const q3& r, const q3& l, long letter, const thresh& th) {
    Int A = r.a * l.c * th.tq + l.a * r.c * th.tq +
            (letter * th.tq - th.tp) * r.c * l.c;
    Int B = (r.b * l.c + l.b * r.c) * th.tq;
    return sign3(A, B);
}

quad q3_to_quad(const q3& v) { return quad::make(v.a, v.b, v.c, 3); }

// Scan outcome for one node of the extension tree.
struct scan_result {
    bool killed = false;
    size_t kill_pos = 0;
    quad kill_bound;            // exact, only when killed
    std::vector<int> active;    // surviving undecided positions (when alive)
};

// Tests the given positions of W.  A position kills the node when its
// attainable lower bound exceeds t; it is retired (screened) when its upper
// bound is at most t, since bounds only tighten along extensions, so a
// retired position can never kill a descendant.
scan_result scan_node(const Word& W, const std::vector<int>& positions,
                      const thresh& th) {
    scan_result res;
    if (th.fast) {
        node_tables tab(W);
        for (int p : positions) {
            side_range r = side_extremes(tab.right(size_t(p), 2),
                                         tab.right(size_t(p), 1));
            side_range l = side_extremes(tab.left(size_t(p), 2),
                                         tab.left(size_t(p), 1));
            if (total_vs_t(r.lo, l.lo, W[size_t(p)], th) > 0) {
                res.killed = true;
                res.kill_pos = size_t(p);
                q3 sum;
                sum.a = r.lo.a * l.lo.c + l.lo.a * r.lo.c +
                        W[size_t(p)] * r.lo.c * l.lo.c;
                sum.b = r.lo.b * l.lo.c + l.lo.b * r.lo.c;
                sum.c = r.lo.c * l.lo.c;
                res.kill_bound = q3_to_quad(sum);
                return res;
            }
            if (total_vs_t(r.hi, l.hi, W[size_t(p)], th) > 0)
                res.active.push_back(p);
        }
        return res;
    }
    // generic threshold: exact quad route
    for (int p : positions) {
        Word right(W.begin() + p + 1, W.end());
        Word left(W.rbegin() + long(W.size()) - p, W.rend());
        quad lo = min_side(right) + min_side(left);
        lo = lo.add_rat(Rat(W[size_t(p)]));
        if (lo.cmp(th.t) > 0) {
            res.killed = true;
            res.kill_pos = size_t(p);
            res.kill_bound = lo;
            return res;
        }
        quad hi = max_side(right) + max_side(left);
        hi = hi.add_rat(Rat(W[size_t(p)]));
        if (hi.cmp(th.t) > 0) res.active.push_back(p);
    }
    return res;
}

std::vector<int> all_positions(size_t n) {
    std::vector<int> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = int(i);
    return v;
}

// ---- threshold / alphabet validation -------------------------------------------

void check_threshold(const quad& t) {
    if (t.cmp_rat(make_rat(11, 4)) < 0 || t.cmp_rat(make_rat(13, 4)) > 0)
        fail(errkind::unsupported_threshold,
             "membership threshold must lie in [11/4, 13/4]");
}

void check_alphabet(const Word& w) {
    if (w.empty()) fail(errkind::invalid_word, "word must be nonempty");
    for (long a : w)
        if (a != 1 && a != 2)
            fail(errkind::invalid_word, "letters must be 1 or 2");
}

// ---- caches --------------------------------------------------------------------

std::map<std::pair<std::string, long>, prune_graph> g_graph_cache;
std::mutex g_graph_mutex;

// verified periodic certificates, keyed by the threshold's canonical string
std::map<std::string, std::vector<std::pair<Word, radsum>>> g_period_cache;
std::mutex g_period_mutex;

// candidate periods already found to exceed the threshold
std::map<std::string, std::set<Word>> g_failed_period_cache;
std::mutex g_failed_mutex;

// memoized verdicts (inclusions and exclusions; undecided is never cached)
std::map<std::string, std::map<Word, membership_result>> g_member_cache;
std::mutex g_member_mutex;

// ---- prune graph ----------------------------------------------------------------

prune_graph build_prune_graph_uncached(const quad& t, long L) {
    check_threshold(t);
    if (L < 3 || L > 19 || L % 2 == 0)
        fail(errkind::invalid_input, "block length must be odd and in [3, 19]");
    prune_graph g;
    g.L = L;
    g.t = t;
    thresh th = make_thresh(t);
    size_t total = size_t(1) << L;
    std::vector<int> center = {int(L - 1) / 2};
    Word blk(static_cast<size_t>(L), 0L);
    for (size_t code = 0; code < total; ++code) {
        for (long i = 0; i < L; ++i) blk[size_t(i)] = 1 + long((code >> i) & 1u);
        if (scan_node(blk, center, th).killed)
            ++g.excluded_count;
        else
            g.nodes.push_back(blk);
    }
    std::sort(g.nodes.begin(), g.nodes.end());
    size_t n = g.nodes.size();
    g.out_edges.assign(n, {});
    g.in_edges.assign(n, {});
    auto find_node = [&](const Word& v) -> long {
        auto it = std::lower_bound(g.nodes.begin(), g.nodes.end(), v);
        if (it == g.nodes.end() || *it != v) return -1;
        return long(it - g.nodes.begin());
    };
    for (size_t i = 0; i < n; ++i) {
        Word v(g.nodes[i].begin() + 1, g.nodes[i].end());
        v.push_back(0);
        for (long c : {1L, 2L}) {
            v.back() = c;
            long j = find_node(v);
            if (j >= 0) {
                g.out_edges[i].push_back(size_t(j));
                g.in_edges[size_t(j)].push_back(i);
            }
        }
    }
    // core: keep nodes with both a live predecessor and a live successor
    g.in_core.assign(n, 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < n; ++i) {
            if (!g.in_core[i]) continue;
            bool has_out = false, has_in = false;
            for (size_t j : g.out_edges[i]) has_out = has_out || g.in_core[j];
            for (size_t j : g.in_edges[i]) has_in = has_in || g.in_core[j];
            if (!has_out || !has_in) {
                g.in_core[i] = 0;
                changed = true;
            }
        }
    }
    return g;
}

const prune_graph& graph_cached(const quad& t, long L) {
    std::lock_guard<std::mutex> lock(g_graph_mutex);
    auto key = std::make_pair(t.str(), L);
    auto it = g_graph_cache.find(key);
    if (it == g_graph_cache.end())
        it = g_graph_cache.emplace(key, build_prune_graph_uncached(t, L)).first;
    return it->second;
}

// ---- occurrence in a periodic word ------------------------------------------

std::optional<size_t> occurs_in_periodic(const Word& w, const Word& period) {
    if (period.empty()) return std::nullopt;
    for (size_t o = 0; o < period.size(); ++o) {
        bool ok = true;
        for (size_t k = 0; k < w.size() && ok; ++k)
            ok = (period[(o + k) % period.size()] == w[k]);
        if (ok) return o;
    }
    return std::nullopt;
}

// ---- exclusion engine --------------------------------------------------------

// Extension tree over both-sided one-letter extensions.  A node dies when some
// position's lower bound exceeds t; the word is excluded once the frontier
// empties, with the reported bound the minimum kill bound over the leaves.
// Positions whose upper bound has dropped to t or below are retired from the
// whole subtree (bounds only tighten), which keeps deep runs cheap.
struct exclusion_engine {
    Word w;
    thresh th;
    struct node {
        Word word;
        std::vector<int> active;
    };
    std::vector<node> frontier;
    long depth = 0;
    bool overflow = false;
    bool root_done = false;

    bool have_kill = false;
    quad best_bound;
    Word best_witness;
    size_t best_kill_pos = 0;

    exclusion_engine(const Word& w_, const quad& t_)
        : w(w_), th(make_thresh(t_)) {}

    void record(const Word& witness, size_t pos, const quad& bound) {
        if (!have_kill || bound.cmp(best_bound) < 0) {
            have_kill = true;
            best_bound = bound;
            best_witness = witness;
            best_kill_pos = pos;
        }
    }

    // Returns true once the tree has died.
    bool step(size_t cap) {
        if (overflow) return false;
        if (!root_done) {
            root_done = true;
            scan_result s = scan_node(w, all_positions(w.size()), th);
            if (s.killed) {
                record(w, s.kill_pos, s.kill_bound);
                return true;
            }
            frontier.push_back({w, std::move(s.active)});
            return false;
        }
        if (frontier.empty()) return have_kill;
        std::vector<node> next;
        next.reserve(frontier.size() * 4);
        for (const node& N : frontier) {
            std::vector<int> child_active;
            child_active.reserve(N.active.size() + 2);
            child_active.push_back(0);
            for (int p : N.active) child_active.push_back(p + 1);
            child_active.push_back(int(N.word.size()) + 1);
            for (long l : {1L, 2L}) {
                for (long r : {1L, 2L}) {
                    Word E;
                    E.reserve(N.word.size() + 2);
                    E.push_back(l);
                    E.insert(E.end(), N.word.begin(), N.word.end());
                    E.push_back(r);
                    scan_result s = scan_node(E, child_active, th);
                    if (s.killed)
                        record(E, s.kill_pos, s.kill_bound);
                    else
                        next.push_back({std::move(E), std::move(s.active)});
                }
            }
        }
        ++depth;
        frontier = std::move(next);
        if (frontier.size() > cap) {
            overflow = true;
            return false;
        }
        return frontier.empty();
    }

    exclusion_certificate certificate() const {
        exclusion_certificate c;
        c.base = w;
        c.base_offset = 0;
        c.witness = best_witness;
        c.base_in_witness = (best_witness.size() - w.size()) / 2;
        c.kill_pos = best_kill_pos;
        c.position = long(best_kill_pos) - long(c.base_in_witness);
        c.bound = best_bound;
        c.depth = depth;
        return c;
    }
};

// ---- inclusion search --------------------------------------------------------

std::optional<inclusion_certificate> try_period_cache(const Word& w,
                                                      const quad& t) {
    std::lock_guard<std::mutex> lock(g_period_mutex);
    auto it = g_period_cache.find(t.str());
    if (it == g_period_cache.end()) return std::nullopt;
    for (const auto& [period, value] : it->second) {
        if (auto off = occurs_in_periodic(w, period)) {
            inclusion_certificate c;
            c.period = period;
            c.offset = *off;
            c.value = value;
            return c;
        }
    }
    return std::nullopt;
}

void cache_period(const quad& t, const Word& period, const radsum& value) {
    std::lock_guard<std::mutex> lock(g_period_mutex);
    auto& vec = g_period_cache[t.str()];
    for (const auto& [p, v] : vec)
        if (p == period) return;
    vec.emplace_back(period, value);
}

// BFS distances (in edges) from every core node to `target`.
std::vector<long> core_dist_to(const prune_graph& g, size_t target) {
    std::vector<long> d(g.nodes.size(), -1);
    std::deque<size_t> q;
    d[target] = 0;
    q.push_back(target);
    while (!q.empty()) {
        size_t v = q.front();
        q.pop_front();
        for (size_t u : g.in_edges[v])
            if (g.in_core[u] && d[u] < 0) {
                d[u] = d[v] + 1;
                q.push_back(u);
            }
    }
    return d;
}

// Paths from -> ... -> to with at least one edge, at most max_len edges,
// within the core, shortest first (lexicographic successor order within each
// length), capped at max_count.  Paths stop at their first arrival at `to`.
std::vector<std::vector<size_t>> core_paths(const prune_graph& g, size_t from,
                                            size_t to, long max_len,
                                            size_t max_count) {
    std::vector<std::vector<size_t>> out;
    std::vector<long> d = core_dist_to(g, to);
    std::vector<size_t> path;
    for (long goal = 1; goal <= max_len && out.size() < max_count; ++goal) {
        std::function<void(size_t, long)> rec = [&](size_t cur, long len) {
            if (out.size() >= max_count) return;
            if (cur == to && len >= 1) {
                if (len == goal) out.push_back(path);
                return;
            }
            for (size_t nxt : g.out_edges[cur]) {
                if (!g.in_core[nxt]) continue;
                if (d[nxt] < 0 || len + 1 + d[nxt] > goal) continue;
                path.push_back(nxt);
                rec(nxt, len + 1);
                path.pop_back();
                if (out.size() >= max_count) return;
            }
        };
        rec(from, 0);
    }
    return out;
}

// Exact Markov value of the two-sided periodic sequence P^inf as a quad:
// every tail of a periodic sequence is periodic, and all rotations/reversals
// of P share one continuant trace, so every lambda_p lives in a single
// quadratic field.  Much cheaper than the generic radical-sum evaluator.
quad periodic_markov_quad(const Word& P) {
    size_t m = P.size();
    quad best;
    for (size_t p = 0; p < m; ++p) {
        Word right, left;
        right.reserve(m);
        left.reserve(m);
        for (size_t k = 1; k <= m; ++k) right.push_back(P[(p + k) % m]);
        for (size_t k = 1; k <= m; ++k) left.push_back(P[(p + m - k) % m]);
        quad lam =
            (eval_periodic(right) + eval_periodic(left)).add_rat(Rat(P[p]));
        if (p == 0 || lam.cmp(best) > 0) best = lam;
    }
    return best;
}

// Verifies a candidate period exactly; on success the period is rotated so
// that w occurs at offset 0, re-verified, and cached.  Screening uses the
// quad evaluator; only accepted periods pay for the certificate-grade
// radical-sum value.
std::optional<inclusion_certificate> verify_candidate(const Word& w,
                                                      const quad& t,
                                                      const Word& period) {
    auto off = occurs_in_periodic(w, period);
    if (!off) return std::nullopt;
    {
        std::lock_guard<std::mutex> lock(g_failed_mutex);
        auto it = g_failed_period_cache.find(t.str());
        if (it != g_failed_period_cache.end() && it->second.count(period))
            return std::nullopt;
    }
    if (quad_compare(periodic_markov_quad(period), t) > 0) {
        std::lock_guard<std::mutex> lock(g_failed_mutex);
        g_failed_period_cache[t.str()].insert(period);
        return std::nullopt;
    }
    radsum mv = markov_value(periodic_biword(period));
    if (mv.cmp_quad(t) > 0) return std::nullopt;
    Word rot(period.begin() + long(*off), period.end());
    rot.insert(rot.end(), period.begin(), period.begin() + long(*off));
    cache_period(t, rot, mv);
    inclusion_certificate c;
    c.period = rot;
    c.offset = 0;
    c.value = mv;
    return c;
}

// One inclusion round: periodic completions drawn from core cycles of the
// length-L transfer graph, each verified by exact Markov evaluation.
std::optional<inclusion_certificate> lasso_attempt(const Word& w, const quad& t,
                                                   long L,
                                                   std::set<Word>& tried) {
    const prune_graph& g = graph_cached(t, L);
    if (g.nodes.empty()) return std::nullopt;
    const size_t max_paths = 64;
    const long slack = 4;
    auto try_cycle = [&](const std::vector<size_t>& cycle_nodes)
        -> std::optional<inclusion_certificate> {
        Word period;
        period.reserve(cycle_nodes.size());
        for (size_t idx : cycle_nodes) period.push_back(g.nodes[idx][0]);
        if (!tried.insert(period).second) return std::nullopt;
        return verify_candidate(w, t, period);
    };

    if (w.size() >= size_t(L)) {
        // w spells a window path; any return path closes a periodic orbit
        std::vector<size_t> windows;
        for (size_t i = 0; i + size_t(L) <= w.size(); ++i) {
            Word blk(w.begin() + long(i), w.begin() + long(i) + L);
            auto it = std::lower_bound(g.nodes.begin(), g.nodes.end(), blk);
            if (it == g.nodes.end() || *it != blk) return std::nullopt;
            size_t idx = size_t(it - g.nodes.begin());
            if (!g.in_core[idx]) return std::nullopt;
            windows.push_back(idx);
        }
        size_t start = windows.front(), end = windows.back();
        std::vector<long> d = core_dist_to(g, start);
        long base = -1;
        for (size_t s : g.out_edges[end])
            if (g.in_core[s] && d[s] >= 0)
                base = base < 0 ? d[s] + 1 : std::min(base, d[s] + 1);
        if (base < 0) return std::nullopt;
        for (const auto& ret : core_paths(g, end, start, base + slack, max_paths)) {
            std::vector<size_t> cycle(windows);
            cycle.insert(cycle.end(), ret.begin(), ret.end() - 1);
            if (auto c = try_cycle(cycle)) return c;
        }
        return std::nullopt;
    }

    // short w: look for cycles through any core node containing w
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        if (!g.in_core[i]) continue;
        const Word& node = g.nodes[i];
        if (std::search(node.begin(), node.end(), w.begin(), w.end()) ==
            node.end())
            continue;
        std::vector<long> d = core_dist_to(g, i);
        long base = -1;
        for (size_t s : g.out_edges[i])
            if (g.in_core[s] && d[s] >= 0)
                base = base < 0 ? d[s] + 1 : std::min(base, d[s] + 1);
        if (base < 0) continue;
        for (const auto& ret : core_paths(g, i, i, base + slack, max_paths)) {
            std::vector<size_t> cycle;
            cycle.push_back(i);
            cycle.insert(cycle.end(), ret.begin(), ret.end() - 1);
            if (auto c = try_cycle(cycle)) return c;
        }
    }
    return std::nullopt;
}

// ---- memoized driver ------------------------------------------------------------

std::optional<membership_result> memo_lookup(const std::string& key,
                                             const Word& w) {
    std::lock_guard<std::mutex> lock(g_member_mutex);
    auto it = g_member_cache.find(key);
    if (it == g_member_cache.end()) return std::nullopt;
    auto jt = it->second.find(w);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

void memo_store(const std::string& key, const Word& w,
                const membership_result& r) {
    if (r.verdict == verdict_kind::undecided) return;
    std::lock_guard<std::mutex> lock(g_member_mutex);
    g_member_cache[key][w] = r;
}

membership_result membership_impl(const Word& w, const quad& t,
                                  long max_depth) {
    const std::string key = t.str();
    if (auto m = memo_lookup(key, w)) return *m;
    size_t cap = size_t(std::max<long>(config().cap, 1));
    const long max_L = 17;

    membership_result res;
    exclusion_engine ex(w, t);
    std::set<Word> tried;

    // round 0: root scan, cached periods, smallest transfer graph
    if (ex.step(cap)) {
        res.verdict = verdict_kind::excluded;
        res.depth_used = 0;
        res.exclusion = ex.certificate();
        memo_store(key, w, res);
        return res;
    }
    if (auto c = try_period_cache(w, t)) {
        res.verdict = verdict_kind::included;
        res.depth_used = 0;
        res.inclusion = std::move(c);
        return res;
    }
    if (auto c = lasso_attempt(w, t, 3, tried)) {
        res.verdict = verdict_kind::included;
        res.depth_used = 0;
        res.inclusion = std::move(c);
        memo_store(key, w, res);
        return res;
    }

    // one-letter trims: completions of w complete both trims, so an excluded
    // trim excludes w with the same exact bound
    if (w.size() >= 2) {
        Word trims[2] = {Word(w.begin() + 1, w.end()),
                         Word(w.begin(), w.end() - 1)};
        long off[2] = {1, 0};
        for (int i = 0; i < 2; ++i) {
            membership_result tr = membership_impl(trims[i], t, max_depth);
            if (tr.verdict == verdict_kind::excluded) {
                res.verdict = verdict_kind::excluded;
                res.depth_used = tr.exclusion->depth;
                res.exclusion = tr.exclusion;
                res.exclusion->base_offset += off[i];
                res.exclusion->position += off[i];
                memo_store(key, w, res);
                return res;
            }
        }
        // the trims may have verified fresh periods covering w
        if (auto c = try_period_cache(w, t)) {
            res.verdict = verdict_kind::included;
            res.depth_used = 0;
            res.inclusion = std::move(c);
            return res;
        }
    }

    // Exclusion rounds are cheap (integer scans over few active positions),
    // inclusion rounds are not (each candidate period costs an exact Markov
    // evaluation), so the lasso ladder lags the tree by three rounds: words
    // the tree kills quickly never reach a second lasso.
    for (long r = 1; r <= max_depth; ++r) {
        if (ex.step(cap)) {
            res.verdict = verdict_kind::excluded;
            res.depth_used = ex.depth;
            res.exclusion = ex.certificate();
            memo_store(key, w, res);
            return res;
        }
        long L = r >= 3 ? 2 * r - 1 : 0;
        if (L >= 5 && L <= max_L) {
            if (auto c = lasso_attempt(w, t, L, tried)) {
                res.verdict = verdict_kind::included;
                res.depth_used = r;
                res.inclusion = std::move(c);
                memo_store(key, w, res);
                return res;
            }
        }
        if (ex.overflow && L > max_L) break;
    }
    res.verdict = verdict_kind::undecided;
    res.depth_used = max_depth;
    return res;
}

} // namespace

// ---- public: balanced words and the enumeration route ------------------------

std::vector<std::string> balanced_words(size_t m) {
    if (m == 0) fail(errkind::invalid_input, "length must be >= 1");
    std::vector<std::string> out;
    std::string cur;
    cur.reserve(m);
    std::vector<int> acnt(m + 1, 0);
    std::vector<int> lo(m + 1, int(m) + 1), hi(m + 1, -1);
    balanced_dfs(cur, m, acnt, lo, hi, out);
    return out;
}

unsigned long long balanced_count_formula(size_t m) {
    if (m == 0) fail(errkind::invalid_input, "length must be >= 1");
    std::vector<unsigned long long> phi(m + 1);
    for (size_t i = 0; i <= m; ++i) phi[i] = i;
    for (size_t i = 2; i <= m; ++i)
        if (phi[i] == i)
            for (size_t j = i; j <= m; j += i) phi[j] -= phi[j] / i;
    unsigned long long total = 1;
    for (size_t i = 1; i <= m; ++i)
        total += (unsigned long long)(m - i + 1) * phi[i];
    return total;
}

Word substitution_image(const std::string& u) {
    Word img;
    img.reserve(2 * u.size());
    for (char c : u) {
        if (c != 'a' && c != 'b')
            fail(errkind::invalid_input, "balanced words use letters a and b");
        long d = (c == 'a') ? 2 : 1;
        img.push_back(d);
        img.push_back(d);
    }
    return img;
}

std::vector<Word> sigma3_words(size_t n) {
    if (n == 0) fail(errkind::invalid_input, "factor length must be >= 1");
    size_t m = n / 2 + 1;
    std::set<Word> out;
    for (const std::string& u : balanced_words(m)) {
        Word img = substitution_image(u);
        for (size_t off = 0; off + n <= img.size(); ++off)
            out.insert(Word(img.begin() + long(off), img.begin() + long(off + n)));
    }
    return {out.begin(), out.end()};
}

size_t count_sigma3(size_t n) {
    if (n == 0) fail(errkind::invalid_input, "factor length must be >= 1");
    size_t m = n / 2 + 1;
    std::unordered_set<std::string> seen;
    std::string buf;
    for (const std::string& u : balanced_words(m)) {
        buf.clear();
        for (char c : u) {
            char d = (c == 'a') ? '2' : '1';
            buf.push_back(d);
            buf.push_back(d);
        }
        for (size_t off = 0; off + n <= buf.size(); ++off)
            seen.insert(buf.substr(off, n));
    }
    return seen.size();
}

unsigned long long sigma3_count_formula(size_t n) {
    if (n == 0) fail(errkind::invalid_input, "factor length must be >= 1");
    if (n % 2 == 0)
        return balanced_count_formula(n / 2) + balanced_count_formula(n / 2 + 1);
    return 2 * balanced_count_formula((n + 1) / 2);
}

// ---- public: exact local bound ------------------------------------------------

quad center_min_bound(const Word& w, size_t pos) {
    check_alphabet(w);
    if (pos >= w.size()) fail(errkind::invalid_input, "position out of range");
    Word right(w.begin() + long(pos) + 1, w.end());
    Word left(w.rbegin() + long(w.size() - pos), w.rend());
    quad sum = min_side(right) + min_side(left);
    return sum.add_rat(Rat(w[pos]));
}

// ---- public: prune graph -------------------------------------------------------

prune_graph build_prune_graph(const quad& t, long L) {
    return graph_cached(t, L);
}

// ---- public: membership --------------------------------------------------------

membership_result prune_membership(const Word& w, const quad& t, long max_depth) {
    check_alphabet(w);
    check_threshold(t);
    if (max_depth < 0)
        max_depth = config().depth >= 0 ? config().depth : 3 * long(w.size()) + 9;
    return membership_impl(w, t, max_depth);
}

bool verify_membership(const Word& w, const quad& t, const membership_result& r) {
    switch (r.verdict) {
    case verdict_kind::undecided:
        return true;
    case verdict_kind::included: {
        if (!r.inclusion) return false;
        const inclusion_certificate& c = *r.inclusion;
        auto off = occurs_in_periodic(w, c.period);
        if (!off || *off != c.offset) return false;
        radsum mv = markov_value(periodic_biword(c.period));
        if (!(mv == c.value)) return false;
        return mv.cmp_quad(t) <= 0;
    }
    case verdict_kind::excluded: {
        if (!r.exclusion) return false;
        const exclusion_certificate& c = *r.exclusion;
        // base occurs in w where claimed
        if (c.base.empty() || c.base_offset < 0) return false;
        if (size_t(c.base_offset) + c.base.size() > w.size()) return false;
        if (!std::equal(c.base.begin(), c.base.end(),
                        w.begin() + c.base_offset))
            return false;
        // witness extends base and realizes the bound at kill_pos
        if (c.base_in_witness + c.base.size() > c.witness.size()) return false;
        if (!std::equal(c.base.begin(), c.base.end(),
                        c.witness.begin() + long(c.base_in_witness)))
            return false;
        if (c.kill_pos >= c.witness.size()) return false;
        if (c.position != c.base_offset + long(c.kill_pos) -
                              long(c.base_in_witness))
            return false;
        quad b = center_min_bound(c.witness, c.kill_pos);
        if (!(b == c.bound) || b.cmp(t) <= 0) return false;
        // independent re-run of the base word's extension tree
        exclusion_engine ex(c.base, t);
        size_t cap = size_t(std::max<long>(config().cap, 1));
        for (long r2 = 0; r2 <= c.depth; ++r2)
            if (ex.step(cap))
                return ex.depth == c.depth && ex.best_bound == c.bound &&
                       ex.best_witness == c.witness &&
                       ex.best_kill_pos == c.kill_pos;
        return false;
    }
    }
    return false;
}

void clear_sigma_caches() {
    {
        std::lock_guard<std::mutex> lock(g_graph_mutex);
        g_graph_cache.clear();
    }
    {
        std::lock_guard<std::mutex> lock(g_period_mutex);
        g_period_cache.clear();
    }
    {
        std::lock_guard<std::mutex> lock(g_failed_mutex);
        g_failed_period_cache.clear();
    }
    std::lock_guard<std::mutex> lock(g_member_mutex);
    g_member_cache.clear();
}

// ---- public: exhaustive scans ---------------------------------------------------

namespace {

Word word_of_code(size_t n, uint64_t code) {
    Word w(n);
    for (size_t i = 0; i < n; ++i)
        w[i] = 1 + long((code >> (n - 1 - i)) & 1u);
    return w;
}

} // namespace

pruning_enumeration sigma_by_pruning(size_t n, const quad& t, long max_depth) {
    if (n == 0 || n > 24)
        fail(errkind::invalid_input, "exhaustive scan supports 1 <= n <= 24");
    pruning_enumeration out;
    for (uint64_t code = 0; code < (uint64_t(1) << n); ++code) {
        Word w = word_of_code(n, code);
        membership_result r = prune_membership(w, t, max_depth);
        if (r.verdict == verdict_kind::included)
            out.included.push_back(w);
        else if (r.verdict == verdict_kind::undecided)
            out.undecided.push_back(w);
    }
    return out;
}

pruning_enumeration sigma3_by_pruning(size_t n, long max_depth) {
    return sigma_by_pruning(n, quad::of_rat(Rat(3)), max_depth);
}

stability_report stability_scan(size_t n, long max_depth) {
    if (n == 0 || n > 24)
        fail(errkind::invalid_input, "exhaustive scan supports 1 <= n <= 24");
    stability_report rep;
    rep.n = n;
    if (max_depth < 0) max_depth = 3 * long(n);
    rep.max_depth = max_depth;
    Rat eps = make_rat(Int(1), ipow(Int(6), 3 * (unsigned long)n));
    rep.t_minus = Rat(3) - eps;
    rep.t_plus = Rat(3) + eps;
    quad tm = quad::of_rat(rep.t_minus);
    quad t0 = quad::of_rat(Rat(3));
    quad tp = quad::of_rat(rep.t_plus);

    for (uint64_t code = 0; code < (uint64_t(1) << n); ++code) {
        Word w = word_of_code(n, code);
        membership_result a = prune_membership(w, tm, max_depth);
        membership_result b = prune_membership(w, t0, max_depth);
        membership_result c = prune_membership(w, tp, max_depth);
        if (!verify_membership(w, tm, a)) ++rep.verify_failures;
        if (!verify_membership(w, t0, b)) ++rep.verify_failures;
        if (!verify_membership(w, tp, c)) ++rep.verify_failures;
        rep.count_minus += a.verdict == verdict_kind::included;
        rep.count_mid += b.verdict == verdict_kind::included;
        rep.count_plus += c.verdict == verdict_kind::included;
        rep.undecided_minus += a.verdict == verdict_kind::undecided;
        rep.undecided_mid += b.verdict == verdict_kind::undecided;
        rep.undecided_plus += c.verdict == verdict_kind::undecided;
        bool ma = a.verdict == verdict_kind::included;
        bool mb = b.verdict == verdict_kind::included;
        bool mc = c.verdict == verdict_kind::included;
        if (!(ma == mb && mb == mc)) rep.diff_words.push_back(w);
    }
    rep.equal = rep.diff_words.empty() && rep.undecided_minus == 0 &&
                rep.undecided_mid == 0 && rep.undecided_plus == 0;
    return rep;
}

} // namespace cf3
