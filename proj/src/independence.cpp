#include "udb/independence.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace udb {
namespace {

using Clock = std::chrono::steady_clock;

// Relabelled search over a graph whose vertex p is the p-th vertex of `order`.
class CliqueSearch {
 public:
  CliqueSearch(const AdjacencyMatrix& g, std::vector<std::uint32_t> initial, const SearchOptions& options)
      : options_(options), start_(Clock::now()) {
    const std::size_t n = g.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0u);
    // High complement degree first, i.e. low degree in g.
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return g.degree(a) < g.degree(b); });
    h_ = std::make_unique<AdjacencyMatrix>(g.induced(order_));
    std::vector<std::uint32_t> position(n);
    for (std::size_t p = 0; p < n; ++p) position[order_[p]] = static_cast<std::uint32_t>(p);
    for (auto v : initial) best_.push_back(position[v]);
    best_size_ = best_.size();
    deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(
                             std::chrono::duration<double>(options.budget_seconds));
  }

  SearchResult run() {
    const std::size_t n = h_->size();
    const std::size_t w = h_->words();
    SearchResult out;
    if (n > 0) {
      std::vector<std::uint64_t> all(w, 0);
      for (std::size_t v = 0; v < n; ++v) all[v / 64] |= std::uint64_t{1} << (v % 64);
      std::vector<std::uint32_t> order, color;
      colour(all.data(), order, color);
      const auto branches = static_cast<std::ptrdiff_t>(order.size());

#pragma omp parallel if (options_.parallel)
      {
        Workspace ws(w);
#pragma omp for schedule(dynamic, 1)
        for (std::ptrdiff_t j = 0; j < branches; ++j) {
          const std::size_t idx = static_cast<std::size_t>(branches - 1 - j);
          if (stop_.load(std::memory_order_relaxed)) continue;
          if (1 + color[idx] <= best_size_.load(std::memory_order_relaxed)) continue;
          const std::uint32_t v = order[idx];
          auto& p = ws.level(1);
          std::fill(p.begin(), p.end(), 0);
          for (std::size_t k = 0; k < idx; ++k) p[order[k] / 64] |= std::uint64_t{1} << (order[k] % 64);
          const std::uint64_t* adj = h_->row(v);
          for (std::size_t k = 0; k < w; ++k) p[k] &= ~adj[k];
          ws.clique.assign(1, v);
          expand(ws, 1);
        }
#pragma omp atomic
        nodes_ += ws.nodes;
      }
    }
    out.complete = !stop_.load();
    out.nodes = nodes_;
    out.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    for (auto p : best_) out.best.push_back(order_[p]);
    std::sort(out.best.begin(), out.best.end());
    return out;
  }

 private:
  struct Workspace {
    explicit Workspace(std::size_t words) : words(words) {}
    std::vector<std::uint64_t>& level(std::size_t depth) {
      while (sets.size() <= depth) sets.emplace_back(words, 0);
      return sets[depth];
    }
    std::size_t words;
    std::vector<std::vector<std::uint64_t>> sets;
    std::vector<std::uint32_t> clique;
    std::uint64_t nodes = 0;
  };

  // Greedy colouring of the complement: each class is a clique of h_.
  void colour(const std::uint64_t* p, std::vector<std::uint32_t>& order, std::vector<std::uint32_t>& color) const {
    const std::size_t w = h_->words();
    std::vector<std::uint64_t> u(p, p + w), q(w);
    order.clear();
    color.clear();
    std::uint32_t k = 0;
    while (std::any_of(u.begin(), u.end(), [](std::uint64_t x) { return x != 0; })) {
      ++k;
      q = u;
      for (std::size_t word = 0; word < w; ++word) {
        while (q[word]) {
          const auto v = static_cast<std::uint32_t>(word * 64 + std::countr_zero(q[word]));
          u[word] &= ~(std::uint64_t{1} << (v % 64));
          const std::uint64_t* adj = h_->row(v);
          for (std::size_t x = word; x < w; ++x) q[x] &= adj[x];
          order.push_back(v);
          color.push_back(k);
        }
      }
    }
  }

  void expand(Workspace& ws, std::size_t depth) {
    if ((++ws.nodes & 1023) == 0 && Clock::now() > deadline_) stop_ = true;
    if (stop_.load(std::memory_order_relaxed)) return;
    const std::size_t w = h_->words();
    auto& p = ws.level(depth);
    if (std::all_of(p.begin(), p.end(), [](std::uint64_t x) { return x == 0; })) {
      record(ws.clique);
      return;
    }
    std::vector<std::uint32_t> order, color;
    colour(p.data(), order, color);
    for (std::size_t idx = order.size(); idx-- > 0;) {
      if (ws.clique.size() + color[idx] <= best_size_.load(std::memory_order_relaxed)) return;
      const std::uint32_t v = order[idx];
      auto& next = ws.level(depth + 1);
      auto& cur = ws.level(depth);  // level() may have reallocated
      const std::uint64_t* adj = h_->row(v);
      cur[v / 64] &= ~(std::uint64_t{1} << (v % 64));
      for (std::size_t k = 0; k < w; ++k) next[k] = cur[k] & ~adj[k];
      ws.clique.push_back(v);
      expand(ws, depth + 1);
      ws.clique.pop_back();
      if (stop_.load(std::memory_order_relaxed)) return;
    }
  }

  void record(const std::vector<std::uint32_t>& clique) {
    if (clique.size() <= best_size_.load()) return;
    std::lock_guard<std::mutex> lock(mutex_);
    if (clique.size() > best_size_.load()) {
      best_ = clique;
      best_size_ = clique.size();
    }
  }

  const SearchOptions& options_;
  Clock::time_point start_, deadline_;
  std::vector<std::uint32_t> order_;
  std::unique_ptr<AdjacencyMatrix> h_;
  std::mutex mutex_;
  std::vector<std::uint32_t> best_;
  std::atomic<std::size_t> best_size_{0};
  std::atomic<bool> stop_{false};
  std::uint64_t nodes_ = 0;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

}  // namespace

std::string to_string(AlphaKind kind) {
  switch (kind) {
    case AlphaKind::exact: return "exact";
    case AlphaKind::upper: return "upper";
    case AlphaKind::lower: return "lower";
  }
  return "?";
}

std::string to_string(AlphaSource source) {
  switch (source) {
    case AlphaSource::computed_exact: return "computed-exact";
    case AlphaSource::computed_greedy: return "computed-greedy";
    case AlphaSource::frankl_wilson: return "frankl-wilson";
    case AlphaSource::external: return "external";
  }
  return "?";
}

// ---- adjacency --------------------------------------------------------------

AdjacencyMatrix::AdjacencyMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

AdjacencyMatrix::AdjacencyMatrix(const UnitDistanceGraph& g) : AdjacencyMatrix(g.num_vertices()) {
  if (!g.edges_materialized())
    throw std::invalid_argument("graph " + to_string(g.source()) + " has no materialized edge list");
  for (const auto& [u, v] : g.edges()) add_edge(u, v);
}

void AdjacencyMatrix::add_edge(std::size_t u, std::size_t v) {
  if (u >= n_ || v >= n_ || u == v) throw std::invalid_argument("add_edge: bad vertex pair");
  bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
  bits_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
}

std::size_t AdjacencyMatrix::degree(std::size_t v) const {
  std::size_t d = 0;
  for (std::size_t k = 0; k < words_; ++k) d += static_cast<std::size_t>(std::popcount(row(v)[k]));
  return d;
}

AdjacencyMatrix AdjacencyMatrix::induced(const std::vector<std::uint32_t>& vertices) const {
  AdjacencyMatrix out(vertices.size());
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (adjacent(vertices[a], vertices[b])) out.add_edge(a, b);
  return out;
}

bool is_independent(const AdjacencyMatrix& g, const std::vector<std::uint32_t>& vertices) {
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    if (vertices[a] >= g.size()) return false;
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (vertices[a] == vertices[b] || g.adjacent(vertices[a], vertices[b])) return false;
  }
  return true;
}

std::vector<std::uint32_t> greedy_independent_set(const AdjacencyMatrix& g) {
  const std::size_t n = g.size();
  std::vector<char> alive(n, 1);
  std::vector<std::size_t> degree(n);
  for (std::size_t v = 0; v < n; ++v) degree[v] = g.degree(v);
  std::vector<std::uint32_t> out;
  while (true) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v)
      if (alive[v] && (pick == n || degree[v] < degree[pick])) pick = v;
    if (pick == n) break;
    out.push_back(static_cast<std::uint32_t>(pick));
    std::vector<std::size_t> removed{pick};
    for (std::size_t v = 0; v < n; ++v)
      if (alive[v] && g.adjacent(pick, v)) removed.push_back(v);
    for (auto r : removed) alive[r] = 0;
    for (auto r : removed)
      for (std::size_t v = 0; v < n; ++v)
        if (alive[v] && g.adjacent(r, v)) --degree[v];
  }
  std::sort(out.begin(), out.end());
  return out;
}

SearchResult independence_search(const AdjacencyMatrix& g, const SearchOptions& options) {
  if (!(options.budget_seconds > 0.0)) throw std::invalid_argument("search budget must be positive");
  if (options.vertex_transitive && g.size() > 0) {
    std::vector<std::uint32_t> rest;
    for (std::size_t v = 1; v < g.size(); ++v)
      if (!g.adjacent(0, v)) rest.push_back(static_cast<std::uint32_t>(v));
    SearchOptions inner = options;
    inner.vertex_transitive = false;
    SearchResult r = independence_search(g.induced(rest), inner);
    for (auto& v : r.best) v = rest[v];
    r.best.insert(r.best.begin(), 0);
    // Only the restricted search is exact; a greedy set of the whole graph may still be larger.
    if (!r.complete) {
      auto greedy = greedy_independent_set(g);
      if (greedy.size() > r.best.size()) r.best = std::move(greedy);
    }
    return r;
  }
  CliqueSearch search(g, greedy_independent_set(g), options);
  return search.run();
}

AlphaBound max_independent_set(const UnitDistanceGraph& g, const SearchOptions& options) {
  if (g.num_vertices() > kMaxGreedyVertices)
    throw std::invalid_argument("independence computations are limited to 10^5 vertices");
  const AdjacencyMatrix adj(g);
  AlphaBound out;
  out.graph_id = to_string(g.source());
  if (g.num_vertices() > kMaxSearchVertices) {
    out.witness = greedy_independent_set(adj);
    out.kind = AlphaKind::lower;
    out.source = AlphaSource::computed_greedy;
  } else {
    SearchResult r = independence_search(adj, options);
    out.witness = std::move(r.best);
    out.kind = r.complete ? AlphaKind::exact : AlphaKind::lower;
    out.source = r.complete ? AlphaSource::computed_exact : AlphaSource::computed_greedy;
  }
  if (!is_independent(adj, out.witness)) throw std::logic_error("independence search returned a dependent set");
  out.value = out.witness.size();
  return out;
}

// ---- Frankl-Wilson ----------------------------------------------------------

bool is_prime_power(long long q) {
  if (q < 2) return false;
  for (long long p = 2; p * p <= q; ++p)
    if (q % p == 0) {
      while (q % p == 0) q /= p;
      return q == 1;
    }
  return true;
}

AlphaBound frankl_wilson(int n, int q) {
  if (!is_prime_power(q)) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  if (n < 2 * q - 1) throw std::invalid_argument("frankl_wilson needs n >= 2q - 1");
  AlphaBound out;
  out.graph_id = to_string(GraphSpec{JohnsonSpec{n, 2 * q - 1, q - 1}});
  out.kind = AlphaKind::upper;
  out.source = AlphaSource::frankl_wilson;
  out.value = static_cast<std::uint64_t>(binomial(n, q - 1));
  return out;
}

// ---- registry -----------------------------------------------------------------

BoundsRegistry BoundsRegistry::parse(std::istream& in, const std::string& origin) {
  BoundsRegistry reg;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    std::istringstream row(line);
    std::string spec, kind;
    long long value = -1;
    auto fail = [&](const std::string& what) {
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": " + what);
    };
    if (!(row >> spec >> kind >> value) || value < 0) fail("expected 'spec kind value citation'");
    AlphaBound b;
    try {
      b.graph_id = to_string(parse_graph_spec(spec));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    if (kind == "exact")
      b.kind = AlphaKind::exact;
    else if (kind == "upper")
      b.kind = AlphaKind::upper;
    else if (kind == "lower")
      b.kind = AlphaKind::lower;
    else
      fail("kind must be exact, upper or lower");
    b.value = static_cast<std::uint64_t>(value);
    b.source = AlphaSource::external;
    std::string rest;
    std::getline(row, rest);
    b.citation = trim(rest);
    if (b.citation.empty()) fail("every registry entry needs a citation");
    reg.entries_.push_back(std::move(b));
  }
  return reg;
}

BoundsRegistry BoundsRegistry::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bounds registry '" + path + "'");
  return parse(in, path);
}

std::string BoundsRegistry::default_path() {
  if (const char* env = std::getenv("FD_REGISTRY"); env && *env) return env;
  return std::string(UDB_DEFAULT_DATA_DIR) + "/bounds.registry";
}

std::optional<AlphaBound> BoundsRegistry::lookup(const GraphSpec& spec) const {
  const std::string id = to_string(spec);
  std::optional<AlphaBound> best;
  for (const auto& e : entries_) {
    if (e.graph_id != id || e.kind == AlphaKind::lower) continue;
    if (!best || (e.kind == AlphaKind::exact && best->kind != AlphaKind::exact) ||
        (best->kind != AlphaKind::exact && e.value < best->value))
      best = e;
  }
  return best;
}

}  // namespace udb
