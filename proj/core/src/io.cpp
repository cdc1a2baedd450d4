#include "dlp/io.hpp"

#include <cmath>
#include <fstream>

namespace dlp::io {

json encode_scalar(const Scalar& s) {
  switch (s.field) {
    case Field::Real: return s.q.a;
    case Field::Complex: return json::array({s.q.a, s.q.b});
    case Field::Quaternion: return json::array({s.q.a, s.q.b, s.q.c, s.q.d});
  }
  return nullptr;
}

Scalar decode_scalar(const json& j, Field f) {
  if (j.is_number()) return {f, Quaternion(j.get<double>())};
  if (!j.is_array()) throw DomainError("scalar must be a number or an array");
  std::size_t want = f == Field::Real ? 1 : f == Field::Complex ? 2 : 4;
  if (j.size() > want || j.empty()) throw DomainError("scalar has too many components for field " + std::string(field_name(f)));
  double c[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < j.size(); ++i) c[i] = j[i].get<double>();
  return {f, Quaternion(c[0], c[1], c[2], c[3])};
}

json encode_matrix(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(encode_scalar(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Matrix decode_matrix(const json& j, Field f) {
  if (!j.is_array()) throw DomainError("matrix must be an array of rows");
  int r = static_cast<int>(j.size());
  int c = r ? static_cast<int>(j[0].size()) : 0;
  Matrix m = Matrix::zero(f, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(j[i].size()) != c) throw DomainError("ragged matrix");
    for (int k = 0; k < c; ++k) m.set(i, k, decode_scalar(j[i][k], f));
  }
  return m;
}

json encode_space(const SplitSpace& s) { return {{"field", field_name(s.field())}, {"blocks", s.blocks()}}; }

SplitSpace decode_space(const json& j) {
  return SplitSpace(parse_field(j.at("field").get<std::string>()), j.at("blocks").get<std::vector<int>>());
}

json encode_kernel(const Kernel& k) {
  json j = encode_space(k.space);
  j["matrix"] = encode_matrix(k.matrix);
  return j;
}

Kernel decode_kernel(const json& j) {
  SplitSpace s = decode_space(j);
  return Kernel(s, decode_matrix(j.at("matrix"), s.field()));
}

json encode_model(const DlpModel& m) { return {{"space", encode_space(m.space)}, {"kernel", encode_kernel(m.kernel)}}; }

DlpModel decode_model(const json& j) {
  SplitSpace s = decode_space(j.at("space"));
  const json& k = j.at("kernel");
  const json& mat = k.is_object() ? k.at("matrix") : k;
  if (k.is_object() && k.contains("field") && parse_field(k["field"].get<std::string>()) != s.field())
    throw DomainError("kernel field differs from the space field");
  if (k.is_object() && k.contains("blocks") && k["blocks"].get<std::vector<int>>() != s.blocks())
    throw DomainError("kernel splitting differs from the space splitting");
  return DlpModel(Kernel(s, decode_matrix(mat, s.field())));
}

json encode_subspace(const AdaptedSubspace& q) {
  json frames = json::array();
  for (const Frame& f : q.block_frames) frames.push_back(encode_matrix(f));
  return frames;
}

AdaptedSubspace decode_subspace(const json& j, const SplitSpace& space) {
  if (!j.is_array() || static_cast<int>(j.size()) != space.blocks_count()) throw DomainError("one frame per block expected");
  AdaptedSubspace q{space, {}};
  for (int b = 0; b < space.blocks_count(); ++b) {
    Matrix f = j[b].empty() ? Matrix::zero(space.field(), space.blocks()[b], 0) : decode_matrix(j[b], space.field());
    if (f.rows() != space.blocks()[b]) throw DomainError("block frame has the wrong number of rows");
    q.block_frames.push_back(f);
  }
  if (!is_valid(q, 1e-8)) throw DomainError("block frames are not orthonormal");
  return q;
}

json encode_sample(const DlpSample& s) {
  json j;
  j["stratum"] = split_dimension(s.subspace);
  j["block_frames"] = encode_subspace(s.subspace);
  j["density"] = std::isnan(s.density) ? json(nullptr) : json(s.density);
  return j;
}

json encode_graph(const WeightedGraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges) edges.push_back(json::array({e.u, e.v, e.weight}));
  json j = {{"vertices", g.vertices}, {"edges", edges}};
  if (!g.layout.empty()) {
    json lay = json::array();
    for (auto [x, y] : g.layout) lay.push_back(json::array({x, y}));
    j["layout"] = lay;
  }
  return j;
}

WeightedGraph decode_graph(const json& j) {
  WeightedGraph g;
  g.vertices = j.at("vertices").get<int>();
  for (const json& e : j.at("edges")) {
    if (e.size() < 2 || e.size() > 3) throw DomainError("edge must be [u, v] or [u, v, w]");
    g.edges.push_back({e[0].get<int>(), e[1].get<int>(), e.size() == 3 ? e[2].get<double>() : 1.0});
  }
  if (j.contains("layout"))
    for (const json& p : j["layout"]) g.layout.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  g.validate();
  return g;
}

json encode_connection(const Connection& c) {
  json hol = json::array();
  for (const Matrix& h : c.holonomy) hol.push_back(encode_matrix(h));
  return {{"rank", c.rank}, {"field", field_name(c.field)}, {"holonomy", hol}};
}

Connection decode_connection(const json& j) {
  Connection c;
  c.rank = j.at("rank").get<int>();
  c.field = parse_field(j.at("field").get<std::string>());
  for (const json& h : j.at("holonomy")) {
    Matrix m = decode_matrix(h, c.field);
    if (m.rows() != c.rank || m.cols() != c.rank) throw DomainError("holonomy has the wrong size");
    if (!is_orthonormal(m, 1e-9)) throw DomainError("holonomy is not an isometry");
    c.holonomy.push_back(m);
  }
  return c;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  return json::parse(in);
}

DlpModel load_model(const std::string& path) { return decode_model(read_json_file(path)); }

WeightedGraph load_graph(const std::string& spec_or_path) {
  if (spec_or_path.find(':') != std::string::npos && spec_or_path.find('/') == std::string::npos &&
      spec_or_path.find(".json") == std::string::npos)
    return graph_from_spec(spec_or_path);
  return decode_graph(read_json_file(spec_or_path));
}

}  // namespace dlp::io
