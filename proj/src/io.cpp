#include "mima/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mima {

void write_snapshot(const SpectralField& f, const std::string& path) {
  FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw std::runtime_error("write_snapshot: cannot open " + path);
  const char magic[4] = {'H', 'M', 'S', '1'};
  const uint32_t n = static_cast<uint32_t>(f.c.size());
  std::fwrite(magic, 1, 4, fp);
  std::fwrite(&n, sizeof n, 1, fp);
  std::fwrite(&f.t, sizeof f.t, 1, fp);
  std::fwrite(f.c.data(), sizeof(double), f.c.size(), fp);
  std::fclose(fp);
}

SpectralField read_snapshot(const BasisSet& basis, const std::string& path) {
  FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw std::runtime_error("read_snapshot: cannot open " + path);
  char magic[4];
  uint32_t n = 0;
  SpectralField f;
  f.basis = &basis;
  if (std::fread(magic, 1, 4, fp) != 4 || std::string(magic, 4) != "HMS1" ||
      std::fread(&n, sizeof n, 1, fp) != 1 || static_cast<int>(n) != basis.size() ||
      std::fread(&f.t, sizeof f.t, 1, fp) != 1) {
    std::fclose(fp);
    throw std::runtime_error("read_snapshot: bad header in " + path);
  }
  f.c.resize(n);
  if (std::fread(f.c.data(), sizeof(double), n, fp) != n) {
    std::fclose(fp);
    throw std::runtime_error("read_snapshot: truncated file " + path);
  }
  std::fclose(fp);
  return f;
}

std::vector<double> read_coeff_file(const std::string& path, int expected_n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_coeff_file: cannot open " + path);
  std::vector<double> c;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double v;
    while (ss >> v) c.push_back(v);
  }
  if (expected_n >= 0 && static_cast<int>(c.size()) != expected_n)
    throw std::runtime_error("read_coeff_file: expected " + std::to_string(expected_n) +
                             " coefficients, got " + std::to_string(c.size()));
  return c;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_text_file: cannot open " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_text_file: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a_hex(const void* data, size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  uint64_t h = 1469598103934665603ull;
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string file_checksum(const std::string& path) {
  const std::string bytes = read_text_file(path);
  return fnv1a_hex(bytes.data(), bytes.size());
}

}  // namespace mima
