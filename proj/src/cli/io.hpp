#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "uinf/harmonic_field.hpp"

namespace uinf::cli {

using Json = nlohmann::ordered_json;

/// Invalid flags, config files or input documents.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits; non-finite values become null in JSON.
std::string format_number(double x);

/// Two-space indented JSON with every float in full precision.
std::string dump_json(const Json& j);

/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

Json field_to_json(const HarmonicField& f);
HarmonicField field_from_json(const Json& j);

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string str() const;
};

}  // namespace uinf::cli
