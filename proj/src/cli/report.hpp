#pragma once

#include <string>

#include <json.hpp>

#include "ctcsim/linalg.hpp"

namespace ctcsim::cli {

using Json = nlohmann::ordered_json;

// Key holding the wall-clock time. It is the only nondeterministic field and
// always renders on a line of its own.
inline constexpr const char* kTimestampKey = "generated_at";

Json to_json(Complex c);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Json to_json(const Eigen::MatrixXd& m);

std::string utc_timestamp();

// Indented key/value text with nested lists. Numbers use 17 significant
// digits; lists holding only numbers and lists render inline.
std::string render_text(const Json& report);

// Single-line JSON object.
std::string render_json(const Json& report);

}  // namespace ctcsim::cli
