#pragma once

#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

namespace pdemhe {

/// Shortest-form-independent decimal rendering with 17 significant digits,
/// which round-trips every double exactly.
std::string format_double(double value);

/// Minimal comma-separated writer used for all artifact files.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header);

  void row(std::initializer_list<double> values);
  void row(std::span<const double> values);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace pdemhe
