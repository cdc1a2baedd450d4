#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dlp/dlp.hpp"

namespace dlp {

struct Edge {
  int u = 0, v = 0;  // oriented u -> v
  double weight = 1.0;
};

struct WeightedGraph {
  int vertices = 0;
  std::vector<Edge> edges;
  std::vector<std::pair<double, double>> layout;  // optional vertex positions

  void validate() const;
  bool connected() const;
};

WeightedGraph grid_graph(int width, int height);
WeightedGraph complete_graph(int n);
WeightedGraph cycle_graph(int n);
// "grid:WxH", "complete:N" or "cycle:N".
WeightedGraph graph_from_spec(const std::string& spec);

enum class Group { Trivial, Orthogonal, Unitary, Symplectic };
Group parse_group(const std::string& name);
Field group_field(Group g);

struct Connection {
  int rank = 1;
  Field field = Field::Real;
  std::vector<Matrix> holonomy;  // one N x N isometry per edge, acting on the head vertex
};

Connection trivial_connection(const WeightedGraph& g, int n, Field f = Field::Real);
Connection sample_haar_connection(const WeightedGraph& g, Group group, int n, Rng& rng);

// Rows indexed by (edge, fibre), columns by (vertex, fibre):
// (d_h f)(e) = sqrt(w_e) (h_e f(v) - f(u)).
Matrix twisted_derivative(const WeightedGraph& g, const Connection& h);
Frame star_space(const WeightedGraph& g, const Connection& h);
DlpModel qsf_model(const WeightedGraph& g, const Connection& h);
DlpSample sample_qsf(const WeightedGraph& g, const Connection& h, Rng& rng);
// d (d* d)^+ d* for the trivial rank-one connection.
Kernel transfer_current(const WeightedGraph& g);

bool is_spanning_tree(const WeightedGraph& g, const std::vector<int>& edge_occupation);
std::string render_svg(const WeightedGraph& g, const std::vector<int>& edge_occupation, int rank);

}  // namespace dlp
