#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mima/basis.hpp"

namespace mima {

/// Snapshot file, little-endian: "HMS1", u32 n, f64 time, n x f64 coefficients.
void write_snapshot(const SpectralField& f, const std::string& path);
SpectralField read_snapshot(const BasisSet& basis, const std::string& path);

/// Coefficient file for initial conditions: one coefficient per line, '#' comments.
std::vector<double> read_coeff_file(const std::string& path, int expected_n);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// FNV-1a over raw bytes, hex string.
std::string fnv1a_hex(const void* data, size_t len);
std::string file_checksum(const std::string& path);

}  // namespace mima
