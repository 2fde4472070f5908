#include "cli/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

namespace ctcsim::cli {

namespace {

std::string format_number(const Json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return j.dump();
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
  return buf;
}

bool is_inline(const Json& j) {
  if (!j.is_array()) return !j.is_object();
  for (const auto& e : j)
    if (!is_inline(e)) return false;
  return true;
}

std::string inline_value(const Json& j) {
  if (j.is_number()) return format_number(j);
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_null()) return "null";
  std::string out = "[";
  bool first = true;
  for (const auto& e : j) {
    if (!first) out += ", ";
    first = false;
    out += inline_value(e);
  }
  return out + "]";
}

void render(const Json& j, int indent, std::ostringstream& os);

void render_entry(const std::string& key, const Json& value, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (is_inline(value)) {
    os << pad << key << ": " << inline_value(value) << '\n';
  } else {
    os << pad << key << ":\n";
    render(value, indent + 2, os);
  }
}

void render(const Json& j, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) render_entry(it.key(), it.value(), indent, os);
    return;
  }
  // A list with at least one mapping: one "- " item per element.
  for (const auto& e : j) {
    if (is_inline(e)) {
      os << pad << "- " << inline_value(e) << '\n';
      continue;
    }
    std::ostringstream inner;
    render(e, indent + 2, inner);
    std::string text = inner.str();
    // Replace the first item's indentation with the list marker.
    os << pad << "- " << text.substr(static_cast<std::size_t>(indent) + 2);
  }
}

}  // namespace

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) out.push_back(to_json(Vector(m.row(r).transpose())));
  return out;
}

Json to_json(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string render_text(const Json& report) {
  std::ostringstream os;
  render(report, 0, os);
  return os.str();
}

std::string render_json(const Json& report) { return report.dump() + '\n'; }

}  // namespace ctcsim::cli
