#include "lydeph/series_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "lydeph/error.hpp"

namespace lydeph {

namespace {

double parse_number(std::string_view field, std::size_t line) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw IoError("line " + std::to_string(line) + ": cannot parse number '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 64> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                                    std::chars_format::general, 12);
  return std::string(buffer.data(), result.ptr);
}

void write_csv(const ObservableSeries& series, std::ostream& out) {
  out << kSeriesHeader << '\n';
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_number(series.times[i]) << ',' << format_number(series.a_factor[i]) << ','
        << format_number(series.coherence[i]) << ',' << format_number(series.concurrence_rescaled[i]) << ','
        << format_number(series.xi2[i]) << ',' << format_number(series.xi2_prime[i]) << '\n';
  }
}

void emit_csv(const ObservableSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_csv(series, out);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

ObservableSeries parse_csv(std::istream& in) {
  ObservableSeries series;
  std::string line;
  if (!std::getline(in, line)) throw IoError("missing CSV header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSeriesHeader) throw IoError("unexpected CSV header '" + line + "'");

  std::size_t line_no = 1;
  std::array<std::vector<double>*, 6> columns{&series.times,       &series.a_factor,
                                              &series.coherence,   &series.concurrence_rescaled,
                                              &series.xi2,         &series.xi2_prime};
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::string_view rest(line);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto comma = rest.find(',');
      const bool last = c + 1 == columns.size();
      if (last != (comma == std::string_view::npos)) {
        throw IoError("line " + std::to_string(line_no) + ": expected 6 fields");
      }
      columns[c]->push_back(parse_number(rest.substr(0, comma), line_no));
      if (!last) rest.remove_prefix(comma + 1);
    }
  }
  return series;
}

ObservableSeries read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return parse_csv(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_zeros_csv(const LeeYangZeroSet& zeros, const PartitionPolynomial& poly, std::ostream& out) {
  out << kZerosHeader << '\n';
  const double total = poly.sum();
  for (double phi : zeros.phases) {
    out << format_number(phi) << ',' << format_number(std::abs(reduced_partition_sum(poly, phi)) / total) << '\n';
  }
}

}  // namespace lydeph
