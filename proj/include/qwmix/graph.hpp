#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qwmix {

class MarkovChain;

enum class GraphFamily { Cycle, Path, Complete, Hypercube, Lattice, Custom };

/// Parses "cycle", "path", "complete", "hypercube", "lattice".
GraphFamily parse_graph_family(const std::string& name);
std::string to_string(GraphFamily family);

/// Simple undirected graph on vertices 0..N-1.
///
/// Vertex indexing for the named families:
///  - cycle(n): x is adjacent to x+1 and x-1 mod n (cycle(2) is a single edge).
///  - lattice(n,d): mixed radix, little endian: v = sum_j v_j n^j, so coordinate 0
///    is least significant. lattice(n,d) is cartesian_power(cycle(n), d).
///  - hypercube(d): bit strings, v = sum_j b_j 2^j.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  /// Rejects self-loops, duplicate edges and out-of-range endpoints.
  Graph(std::size_t vertex_count, std::vector<Edge> edges, GraphFamily family = GraphFamily::Custom,
        std::vector<int> params = {});

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  /// Edges with first < second, sorted.
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }
  std::size_t degree(std::size_t v) const { return adj_[v].size(); }
  bool has_edge(std::size_t u, std::size_t v) const;

  bool is_connected() const;
  /// True when every vertex has the same degree.
  bool is_regular() const;

  GraphFamily family() const { return family_; }
  const std::vector<int>& params() const { return params_; }
  /// e.g. "cycle(5)", "lattice(4,2)", "custom(7)".
  std::string label() const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
  GraphFamily family_;
  std::vector<int> params_;
};

/// Builds a named graph. Parameter lists: cycle [n], path [n], complete [N],
/// hypercube [d], lattice [n, d]. Throws InvalidParameter naming the bad field.
Graph build_graph(GraphFamily kind, std::span<const int> params);
inline Graph build_graph(GraphFamily kind, std::initializer_list<int> params) {
  return build_graph(kind, std::span<const int>(params.begin(), params.size()));
}

Graph cycle_graph(int n);
Graph path_graph(int n);
Graph complete_graph(int n);
Graph hypercube_graph(int d);
Graph lattice_graph(int n, int d);

/// d-th Cartesian power: d-tuples over V(G), adjacent iff they differ in one
/// coordinate by an edge of G. Throws DimensionCap when |V|^d > state_cap().
Graph cartesian_power(const Graph& g, int d);

/// Simple random walk: column x carries 1/deg(x) on every neighbour of x.
/// Throws PreconditionViolated for disconnected graphs.
MarkovChain standard_chain(const Graph& g);

/// Edge-list text format: first line "N", then one "u v" pair per line.
Graph read_edge_list(std::istream& in);
void write_edge_list(const Graph& g, std::ostream& out);

}  // namespace qwmix
