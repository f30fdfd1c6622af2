// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "dsaddle/bounds.hpp"
#include "dsaddle/saddle_system.hpp"

namespace dsaddle {

using nlohmann::json;

/// Matrices serialize with a format tag: "dense" carries row-major data,
/// "csr" the compressed-row triple.
json to_json(const AnyMatrix& m);
AnyMatrix any_matrix_from_json(const json& j);

json to_json(const DoubleSaddleSystem& sys);
DoubleSaddleSystem system_from_json(const json& j, bool validate = true);

json to_json(const GammaIndicators& g);
GammaIndicators indicators_from_json(const json& j);

json to_json(const SpectralBounds& b);

void save_json(const json& j, const std::string& path);
json load_json(const std::string& path);

}  // namespace dsaddle
