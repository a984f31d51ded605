#include "qwmix/graph.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

#include "qwmix/config.hpp"
#include "qwmix/error.hpp"
#include "qwmix/markov_chain.hpp"

namespace qwmix {

GraphFamily parse_graph_family(const std::string& name) {
  if (name == "cycle") return GraphFamily::Cycle;
  if (name == "path") return GraphFamily::Path;
  if (name == "complete") return GraphFamily::Complete;
  if (name == "hypercube") return GraphFamily::Hypercube;
  if (name == "lattice") return GraphFamily::Lattice;
  if (name == "custom") return GraphFamily::Custom;
  throw InvalidParameter("kind", "unknown graph family '" + name + "'");
}

std::string to_string(GraphFamily family) {
  switch (family) {
    case GraphFamily::Cycle: return "cycle";
    case GraphFamily::Path: return "path";
    case GraphFamily::Complete: return "complete";
    case GraphFamily::Hypercube: return "hypercube";
    case GraphFamily::Lattice: return "lattice";
    case GraphFamily::Custom: return "custom";
  }
  return "custom";
}

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges, GraphFamily family,
             std::vector<int> params)
    : n_(vertex_count), adj_(vertex_count), family_(family), params_(std::move(params)) {
  if (n_ == 0) throw InvalidParameter("N", "graph needs at least one vertex");
  for (auto& [u, v] : edges) {
    if (u >= n_ || v >= n_) {
      throw InvalidParameter("edge", "endpoint out of range in (" + std::to_string(u) + "," +
                                         std::to_string(v) + ")");
    }
    if (u == v) throw InvalidParameter("edge", "self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw InvalidParameter("edge", "duplicate edge (" + std::to_string(dup->first) + "," +
                                       std::to_string(dup->second) + ")");
  }
  edges_ = std::move(edges);
  for (const auto& [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  if (u >= n_ || v >= n_) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

bool Graph::is_connected() const {
  std::vector<char> seen(n_, 0);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = 1;
  std::size_t count = 1;
  while (!q.empty()) {
    auto v = q.front();
    q.pop();
    for (auto w : adj_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        q.push(w);
      }
    }
  }
  return count == n_;
}

bool Graph::is_regular() const {
  return std::all_of(adj_.begin(), adj_.end(),
                     [&](const auto& a) { return a.size() == adj_.front().size(); });
}

std::string Graph::label() const {
  std::ostringstream os;
  os << to_string(family_) << "(";
  if (family_ == GraphFamily::Custom) {
    os << n_;
  } else {
    for (std::size_t i = 0; i < params_.size(); ++i) os << (i ? "," : "") << params_[i];
  }
  os << ")";
  return os.str();
}

namespace {

void require_at_least(int value, int min, const char* field) {
  if (value < min) {
    throw InvalidParameter(field, "must be >= " + std::to_string(min) + ", got " +
                                      std::to_string(value));
  }
}

std::size_t checked_power(std::size_t base, int d) {
  std::size_t n = 1;
  for (int i = 0; i < d; ++i) {
    if (n > std::numeric_limits<std::size_t>::max() / base) {
      throw DimensionCap(std::numeric_limits<std::size_t>::max(), state_cap());
    }
    n *= base;
  }
  return n;
}

Graph retag(Graph g, GraphFamily family, std::vector<int> params) {
  auto n = g.vertex_count();
  return Graph(n, g.edges(), family, std::move(params));
}

}  // namespace

Graph cycle_graph(int n) {
  require_at_least(n, 2, "n");
  std::vector<Graph::Edge> edges;
  if (n == 2) {
    edges.emplace_back(0, 1);
  } else {
    for (int x = 0; x < n; ++x) edges.emplace_back(x, (x + 1) % n);
  }
  return Graph(static_cast<std::size_t>(n), std::move(edges), GraphFamily::Cycle, {n});
}

Graph path_graph(int n) {
  require_at_least(n, 2, "n");
  std::vector<Graph::Edge> edges;
  for (int x = 0; x + 1 < n; ++x) edges.emplace_back(x, x + 1);
  return Graph(static_cast<std::size_t>(n), std::move(edges), GraphFamily::Path, {n});
}

Graph complete_graph(int n) {
  require_at_least(n, 2, "N");
  check_cap(static_cast<std::size_t>(n));
  std::vector<Graph::Edge> edges;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) edges.emplace_back(x, y);
  return Graph(static_cast<std::size_t>(n), std::move(edges), GraphFamily::Complete, {n});
}

Graph hypercube_graph(int d) {
  require_at_least(d, 1, "d");
  return retag(cartesian_power(cycle_graph(2), d), GraphFamily::Hypercube, {d});
}

Graph lattice_graph(int n, int d) {
  require_at_least(n, 2, "n");
  require_at_least(d, 1, "d");
  return retag(cartesian_power(cycle_graph(n), d), GraphFamily::Lattice, {n, d});
}

Graph build_graph(GraphFamily kind, std::span<const int> params) {
  auto need = [&](std::size_t count) {
    if (params.size() != count) {
      throw InvalidParameter("params", to_string(kind) + " expects " + std::to_string(count) +
                                           " parameter(s), got " + std::to_string(params.size()));
    }
  };
  switch (kind) {
    case GraphFamily::Cycle: need(1); return cycle_graph(params[0]);
    case GraphFamily::Path: need(1); return path_graph(params[0]);
    case GraphFamily::Complete: need(1); return complete_graph(params[0]);
    case GraphFamily::Hypercube: need(1); return hypercube_graph(params[0]);
    case GraphFamily::Lattice: need(2); return lattice_graph(params[0], params[1]);
    case GraphFamily::Custom: break;
  }
  throw InvalidParameter("kind", "custom graphs are read from an edge list");
}

Graph cartesian_power(const Graph& g, int d) {
  require_at_least(d, 1, "d");
  if (d == 1) return g;
  const std::size_t base = g.vertex_count();
  const std::size_t n = checked_power(base, d);
  check_cap(n);
  std::vector<Graph::Edge> edges;
  edges.reserve(g.edge_count() * static_cast<std::size_t>(d) * (n / base));
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t stride = 1;
    for (int j = 0; j < d; ++j, stride *= base) {
      const std::size_t digit = (v / stride) % base;
      for (auto w : g.neighbors(digit)) {
        if (w > digit) edges.emplace_back(v, v + (w - digit) * stride);
      }
    }
  }
  std::vector<int> params = g.params();
  params.push_back(d);
  return Graph(n, std::move(edges), GraphFamily::Custom, std::move(params));
}

MarkovChain standard_chain(const Graph& g) {
  if (!g.is_connected()) {
    throw PreconditionViolated("standard_chain: graph " + g.label() + " is disconnected");
  }
  const auto n = g.vertex_count();
  check_cap(n);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t x = 0; x < n; ++x) {
    const double w = 1.0 / static_cast<double>(g.degree(x));
    for (auto y : g.neighbors(x)) p(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = w;
  }
  return MarkovChain(std::move(p), "P(" + g.label() + ")");
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  long long n = -1;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    if (ls >> n) break;
  }
  if (n <= 0) throw InvalidParameter("N", "edge list must start with a positive vertex count");
  std::vector<Graph::Edge> edges;
  long long u = 0, v = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    if (!(ls >> u)) continue;
    if (!(ls >> v)) throw InvalidParameter("edge", "incomplete pair in line '" + line + "'");
    if (u < 0 || v < 0) throw InvalidParameter("edge", "negative vertex index");
    edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  }
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << g.vertex_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace qwmix
