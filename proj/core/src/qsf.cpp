#include "dlp/qsf.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <regex>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace dlp {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

void WeightedGraph::validate() const {
  if (vertices <= 0) throw DomainError("graph needs at least one vertex");
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= vertices || e.v >= vertices) throw DomainError("edge endpoint out of range");
    if (e.u == e.v) throw DomainError("self-loops are not allowed");
    if (!(e.weight > 0)) throw DomainError("edge weights must be positive");
  }
  if (!layout.empty() && static_cast<int>(layout.size()) != vertices) throw DomainError("layout size mismatch");
}

bool WeightedGraph::connected() const {
  UnionFind uf(vertices);
  int comps = vertices;
  for (const Edge& e : edges) comps -= uf.unite(e.u, e.v);
  return comps == 1;
}

WeightedGraph grid_graph(int width, int height) {
  if (width < 1 || height < 1) throw DomainError("grid dimensions must be positive");
  WeightedGraph g;
  g.vertices = width * height;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      int v = y * width + x;
      g.layout.emplace_back(x, y);
      if (x + 1 < width) g.edges.push_back({v, v + 1, 1.0});
      if (y + 1 < height) g.edges.push_back({v, v + width, 1.0});
    }
  return g;
}

WeightedGraph complete_graph(int n) {
  WeightedGraph g;
  g.vertices = n;
  for (int i = 0; i < n; ++i) {
    double a = 2 * M_PI * i / n;
    g.layout.emplace_back(std::cos(a), std::sin(a));
    for (int j = i + 1; j < n; ++j) g.edges.push_back({i, j, 1.0});
  }
  return g;
}

WeightedGraph cycle_graph(int n) {
  WeightedGraph g;
  g.vertices = n;
  for (int i = 0; i < n; ++i) {
    double a = 2 * M_PI * i / n;
    g.layout.emplace_back(std::cos(a), std::sin(a));
    g.edges.push_back({i, (i + 1) % n, 1.0});
  }
  return g;
}

WeightedGraph graph_from_spec(const std::string& spec) {
  std::smatch m;
  if (std::regex_match(spec, m, std::regex(R"(grid:(\d+)x(\d+))"))) return grid_graph(std::stoi(m[1]), std::stoi(m[2]));
  if (std::regex_match(spec, m, std::regex(R"(complete:(\d+))"))) return complete_graph(std::stoi(m[1]));
  if (std::regex_match(spec, m, std::regex(R"(cycle:(\d+))"))) return cycle_graph(std::stoi(m[1]));
  throw DomainError("unknown graph spec '" + spec + "'");
}

Group parse_group(const std::string& name) {
  if (name == "trivial") return Group::Trivial;
  if (name == "orthogonal" || name == "O") return Group::Orthogonal;
  if (name == "unitary" || name == "U") return Group::Unitary;
  if (name == "symplectic" || name == "Sp") return Group::Symplectic;
  throw DomainError("unknown group '" + name + "'");
}

Field group_field(Group g) {
  switch (g) {
    case Group::Unitary: return Field::Complex;
    case Group::Symplectic: return Field::Quaternion;
    default: return Field::Real;
  }
}

Connection trivial_connection(const WeightedGraph& g, int n, Field f) {
  if (n < 1) throw DomainError("connection rank must be positive");
  return {n, f, std::vector<Matrix>(g.edges.size(), Matrix::identity(f, n))};
}

Connection sample_haar_connection(const WeightedGraph& g, Group group, int n, Rng& rng) {
  Field f = group_field(group);
  if (group == Group::Trivial) return trivial_connection(g, n, f);
  Connection c{n, f, {}};
  for (std::size_t e = 0; e < g.edges.size(); ++e) c.holonomy.push_back(haar_frame(n, n, f, rng));
  return c;
}

Matrix twisted_derivative(const WeightedGraph& g, const Connection& h) {
  g.validate();
  if (h.holonomy.size() != g.edges.size()) throw DomainError("one holonomy per edge expected");
  int n = h.rank;
  Matrix d = Matrix::zero(h.field, n * static_cast<int>(g.edges.size()), n * g.vertices);
  int w = field_width(h.field);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    double s = std::sqrt(e.weight);
    d.rep().block(i * n * w, e.v * n * w, n * w, n * w) += s * h.holonomy[i].rep();
    d.rep().block(i * n * w, e.u * n * w, n * w, n * w) -= s * CMatrix::Identity(n * w, n * w);
  }
  return d;
}

Frame star_space(const WeightedGraph& g, const Connection& h) {
  Matrix d = twisted_derivative(g, h);
  if (h.field == Field::Quaternion) {
    Matrix gram(h.field, d.rep() * d.rep().adjoint());
    Eigensystem es = hermitian_eig(gram);
    double top = es.values.size() ? es.values.maxCoeff() : 0.0;
    std::vector<int> rows(gram.rows()), keep;
    std::iota(rows.begin(), rows.end(), 0);
    for (Eigen::Index i = 0; i < es.values.size(); ++i)
      if (es.values[i] > 1e-10 * top) keep.push_back(static_cast<int>(i));
    return es.vectors.select(rows, keep);
  }
  if (h.field == Field::Real) {
    RMatrix a = d.rep().real();
    Eigen::ColPivHouseholderQR<RMatrix> qr(a);
    qr.setThreshold(1e-10);
    RMatrix q = qr.householderQ() * RMatrix::Identity(a.rows(), qr.rank());
    return Matrix::from_real(q);
  }
  Eigen::ColPivHouseholderQR<CMatrix> qr(d.rep());
  qr.setThreshold(1e-10);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d.rep().rows(), qr.rank());
  return Matrix::from_complex(q);
}

DlpModel qsf_model(const WeightedGraph& g, const Connection& h) {
  SplitSpace space(h.field, std::vector<int>(g.edges.size(), h.rank));
  return projection_model(space, star_space(g, h));
}

DlpSample sample_qsf(const WeightedGraph& g, const Connection& h, Rng& rng) {
  if (!g.connected()) throw DomainError("sample_qsf: graph must be connected");
  return sample(qsf_model(g, h), rng, {false});
}

Kernel transfer_current(const WeightedGraph& g) {
  if (!g.connected()) throw DomainError("transfer_current: graph must be connected");
  RMatrix d = twisted_derivative(g, trivial_connection(g, 1)).rep().real();
  RMatrix lap = d.transpose() * d;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(lap);
  double top = es.eigenvalues().maxCoeff();
  RVector inv = RVector::Zero(lap.rows());
  for (Eigen::Index i = 0; i < inv.size(); ++i)
    if (es.eigenvalues()[i] > 1e-10 * top) inv[i] = 1.0 / es.eigenvalues()[i];
  RMatrix pinv = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
  SplitSpace space = SplitSpace::lines(Field::Real, static_cast<int>(g.edges.size()));
  return Kernel::trusted(space, Matrix::from_real(d * pinv * d.transpose()));
}

bool is_spanning_tree(const WeightedGraph& g, const std::vector<int>& occ) {
  UnionFind uf(g.vertices);
  int used = 0;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (!occ[i]) continue;
    ++used;
    if (!uf.unite(g.edges[i].u, g.edges[i].v)) return false;
  }
  return used == g.vertices - 1;
}

std::string render_svg(const WeightedGraph& g, const std::vector<int>& occ, int rank) {
  if (g.layout.empty()) throw DomainError("render_svg: the graph has no layout");
  if (occ.size() != g.edges.size()) throw DomainError("render_svg: one occupation value per edge expected");
  double minx = g.layout[0].first, maxx = minx, miny = g.layout[0].second, maxy = miny;
  for (auto [x, y] : g.layout) {
    minx = std::min(minx, x);
    maxx = std::max(maxx, x);
    miny = std::min(miny, y);
    maxy = std::max(maxy, y);
  }
  // Unit spacing is scaled to the shortest edge so grids get 30px cells.
  double unit = std::numeric_limits<double>::max();
  for (const Edge& e : g.edges) {
    auto [x0, y0] = g.layout[e.u];
    auto [x1, y1] = g.layout[e.v];
    double len = std::hypot(x1 - x0, y1 - y0);
    if (len > 1e-12) unit = std::min(unit, len);
  }
  if (unit == std::numeric_limits<double>::max()) unit = 1.0;
  double scale = 30.0 / unit, margin = 20.0, legend = 24.0 * (rank + 1) + 10.0;
  double width = (maxx - minx) * scale + 2 * margin;
  double height = (maxy - miny) * scale + 2 * margin + legend;
  auto px = [&](double x) { return margin + (x - minx) * scale; };
  auto py = [&](double y) { return margin + (y - miny) * scale; };
  auto color = [&](int level) {
    double t = rank ? double(level) / rank : 1.0;
    int r = static_cast<int>(std::lround(214 + t * (31 - 214)));
    int gr = static_cast<int>(std::lround(214 + t * (59 - 214)));
    int b = static_cast<int>(std::lround(214 + t * (115 - 214)));
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, gr, b);
    return std::string(buf);
  };
  auto stroke = [&](int level) { return 1.0 + 4.0 * (rank ? double(level) / rank : 1.0); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(width) << "\" height=\""
     << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g stroke-linecap=\"round\">\n";
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    auto [x0, y0] = g.layout[g.edges[i].u];
    auto [x1, y1] = g.layout[g.edges[i].v];
    os << "<line x1=\"" << fmt(px(x0)) << "\" y1=\"" << fmt(py(y0)) << "\" x2=\"" << fmt(px(x1)) << "\" y2=\""
       << fmt(py(y1)) << "\" stroke=\"" << color(occ[i]) << "\" stroke-width=\"" << fmt(stroke(occ[i]))
       << "\" data-level=\"" << occ[i] << "\"/>\n";
  }
  os << "</g>\n<g fill=\"#333333\">\n";
  for (auto [x, y] : g.layout) os << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y)) << "\" r=\"2.00\"/>\n";
  os << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
  double ly = height - legend + 10.0;
  for (int level = 0; level <= rank; ++level) {
    double y = ly + 24.0 * level;
    os << "<line class=\"legend\" x1=\"" << fmt(margin) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(margin + 30)
       << "\" y2=\"" << fmt(y) << "\" stroke=\"" << color(level) << "\" stroke-width=\"" << fmt(stroke(level))
       << "\"/>\n<text x=\"" << fmt(margin + 40) << "\" y=\"" << fmt(y + 4) << "\">dim " << level << " / " << rank
       << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace dlp
