#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lydeph/experiments.hpp"

namespace lydeph {

inline constexpr const char* kSeriesHeader = "t,a_factor,coherence,concurrence_rescaled,xi2,xi2_prime";
inline constexpr const char* kZerosHeader = "phase,modulus_residual";

// Same text as printf("%.12g") without the locale dependence.
std::string format_number(double value);

void write_csv(const ObservableSeries& series, std::ostream& out);
// Throws IoError naming the path on failure.
void emit_csv(const ObservableSeries& series, const std::filesystem::path& path);

ObservableSeries parse_csv(std::istream& in);
ObservableSeries read_csv(const std::filesystem::path& path);

// One row per zero: phase and |P(e^{i phi})| / P(1).
void write_zeros_csv(const LeeYangZeroSet& zeros, const PartitionPolynomial& poly, std::ostream& out);

}  // namespace lydeph
