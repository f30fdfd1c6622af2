// SPDX-License-Identifier: Apache-2.0

#include "dsaddle/json_io.hpp"

#include <fstream>

#include "dsaddle/errors.hpp"

namespace dsaddle {

json to_json(const AnyMatrix& m) {
  json j;
  if (const SparseMatrix* s = m.sparse()) {
    j["format"] = "csr";
    j["rows"] = s->rows();
    j["cols"] = s->cols();
    j["row_offsets"] = s->row_offsets();
    j["col_indices"] = s->col_indices();
    j["values"] = s->values();
  } else {
    const DenseMatrix d = m.to_dense();
    j["format"] = "dense";
    j["rows"] = d.rows();
    j["cols"] = d.cols();
    j["data"] = d.data();
  }
  return j;
}

AnyMatrix any_matrix_from_json(const json& j) {
  const std::string format = j.at("format");
  const int rows = j.at("rows");
  const int cols = j.at("cols");
  if (format == "dense") {
    const auto data = j.at("data").get<std::vector<double>>();
    if (static_cast<int>(data.size()) != rows * cols)
      throw ValidationError("dense matrix payload has the wrong size");
    DenseMatrix m(rows, cols);
    m.data() = data;
    return AnyMatrix(std::move(m));
  }
  if (format == "csr") {
    const auto offsets = j.at("row_offsets").get<std::vector<int>>();
    const auto cols_idx = j.at("col_indices").get<std::vector<int>>();
    const auto values = j.at("values").get<std::vector<double>>();
    if (static_cast<int>(offsets.size()) != rows + 1 || cols_idx.size() != values.size())
      throw ValidationError("csr matrix payload is inconsistent");
    SparseMatrix::Builder b(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int k = offsets[i]; k < offsets[i + 1]; ++k) b.add(i, cols_idx[k], values[k]);
    return AnyMatrix(b.finalize());
  }
  throw ValidationError("unknown matrix format tag: " + format);
}

json to_json(const DoubleSaddleSystem& sys) {
  json j;
  j["n"] = sys.n;
  j["m"] = sys.m;
  j["p"] = sys.p;
  j["A"] = to_json(sys.A);
  j["B"] = to_json(sys.B);
  j["C"] = to_json(sys.C);
  j["E"] = to_json(sys.E);
  j["rhs"] = sys.rhs;
  return j;
}

DoubleSaddleSystem system_from_json(const json& j, bool validate) {
  DoubleSaddleSystem sys = make_system(
      any_matrix_from_json(j.at("A")), any_matrix_from_json(j.at("B")),
      any_matrix_from_json(j.at("C")), any_matrix_from_json(j.at("E")),
      j.at("rhs").get<Vector>(), validate);
  if (sys.n != j.at("n").get<int>() || sys.m != j.at("m").get<int>() ||
      sys.p != j.at("p").get<int>())
    throw ValidationError("declared dimensions disagree with the blocks");
  return sys;
}

json to_json(const GammaIndicators& g) {
  json j;
  j["gamma_A_min"] = g.gamma_A.first;
  j["gamma_A_max"] = g.gamma_A.second;
  j["gamma_R_min"] = g.gamma_R.first;
  j["gamma_R_max"] = g.gamma_R.second;
  j["gamma_X_min"] = g.gamma_X.first;
  j["gamma_X_max"] = g.gamma_X.second;
  j["gamma_E_min"] = g.gamma_E.first;
  j["gamma_E_max"] = g.gamma_E.second;
  j["gamma_K_min"] = g.gamma_K.first;
  j["gamma_K_max"] = g.gamma_K.second;
  j["flags"] = {{"straddle_A", g.straddle_A},
                {"one_in_R", g.one_in_R},
                {"one_in_X", g.one_in_X},
                {"a_max_below_2", g.a_max_below_2}};
  j["square_c"] = g.square_c;
  return j;
}

GammaIndicators indicators_from_json(const json& j) {
  GammaIndicators g;
  g.gamma_A = {j.at("gamma_A_min"), j.at("gamma_A_max")};
  g.gamma_R = {j.at("gamma_R_min"), j.at("gamma_R_max")};
  g.gamma_X = {j.value("gamma_X_min", j.at("gamma_K_min").get<double>()),
               j.value("gamma_X_max", j.at("gamma_K_max").get<double>())};
  g.gamma_E = {j.value("gamma_E_min", 0.0), j.value("gamma_E_max", 0.0)};
  g.gamma_K = {j.at("gamma_K_min"), j.at("gamma_K_max")};
  g.square_c = j.value("square_c", false);
  g.refresh_assumption_flags();
  return g;
}

json to_json(const SpectralBounds& b) {
  json j;
  j["neg_lo"] = b.negative.lo;
  j["neg_hi"] = b.negative.hi;
  j["pos_lo"] = b.positive.lo;
  j["pos_hi"] = b.positive.hi;
  j["variant"] = to_string(b.variant);
  j["indicators"] = to_json(b.inputs);
  return j;
}

void save_json(const json& j, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open for writing: " + path);
  os << j.dump(2) << "\n";
}

json load_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open for reading: " + path);
  json j;
  is >> j;
  return j;
}

}  // namespace dsaddle
