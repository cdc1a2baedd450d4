#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "dlp/dlp.hpp"
#include "dlp/qsf.hpp"

namespace dlp::io {

using nlohmann::json;

// real -> number, complex -> [re, im], quaternion -> [a, b, c, d]
json encode_scalar(const Scalar& s);
Scalar decode_scalar(const json& j, Field f);

json encode_matrix(const Matrix& m);
Matrix decode_matrix(const json& j, Field f);

json encode_space(const SplitSpace& s);
SplitSpace decode_space(const json& j);

json encode_kernel(const Kernel& k);
Kernel decode_kernel(const json& j);

json encode_model(const DlpModel& m);
DlpModel decode_model(const json& j);

json encode_subspace(const AdaptedSubspace& q);
AdaptedSubspace decode_subspace(const json& j, const SplitSpace& space);
json encode_sample(const DlpSample& s);

json encode_graph(const WeightedGraph& g);
WeightedGraph decode_graph(const json& j);

json encode_connection(const Connection& c);
Connection decode_connection(const json& j);

json read_json_file(const std::string& path);
DlpModel load_model(const std::string& path);
// "grid:WxH"-style spec or a path to graph JSON.
WeightedGraph load_graph(const std::string& spec_or_path);

}  // namespace dlp::io
