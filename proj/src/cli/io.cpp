#include "io.hpp"

#include <fmt/format.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace uinf::cli {

namespace {

void dump(const Json& j, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_number(x) : "null";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad;
        dump(j[i], out, depth + 1);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += close + "]";
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (const auto& [key, value] : j.items()) {
        out += pad + Json(key).dump() + ": ";
        dump(value, out, depth + 1);
        out += ++i < j.size() ? ",\n" : "\n";
      }
      out += close + "}";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_number(double x) { return fmt::format("{:.17g}", x); }

std::string dump_json(const Json& j) {
  std::string out;
  dump(j, out, 0);
  out += "\n";
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) {
      f.close();
      fs::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Json field_to_json(const HarmonicField& f) {
  Json coeffs = Json::array();
  for (int l = 0; l <= f.l_max(); ++l) {
    for (int m = -l; m <= l; ++m) {
      const cplx c = f.coeff(l, m);
      if (c == cplx{}) continue;
      coeffs.push_back({{"l", l}, {"m", m}, {"re", c.real()}, {"im", c.imag()}});
    }
  }
  return {{"l_max", f.l_max()}, {"real", f.real()}, {"coeffs", coeffs}};
}

HarmonicField field_from_json(const Json& j) {
  try {
    const int l_max = j.at("l_max").get<int>();
    if (l_max < 0) throw ConfigError("field JSON: negative l_max");
    HarmonicField f(l_max, j.value("real", false));
    for (const auto& c : j.at("coeffs")) {
      const int l = c.at("l").get<int>();
      const int m = c.at("m").get<int>();
      if (l < 0 || l > l_max || m < -l || m > l) throw ConfigError("field JSON: coefficient index out of range");
      f.set(l, m, cplx(c.value("re", 0.0), c.value("im", 0.0)));
    }
    if (f.real() && f.reality_defect() > 1e-12) throw ConfigError("field JSON: flagged real but coefficients are not");
    return f;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("field JSON: ") + e.what());
  }
}

std::string Csv::str() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += format_number(row[i]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace uinf::cli
