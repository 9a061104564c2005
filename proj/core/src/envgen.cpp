#include "swarmsim/envgen.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "swarmsim/errors.hpp"
#include "swarmsim/rng.hpp"

namespace swarmsim {

Environment flat_env(std::size_t n, double l) {
  if (!(l >= 0.0 && l <= 1.0))
    throw ConfigError("flat efficiency must lie in [0, 1]");
  return Environment::uniform(n, l);
}

Environment er_env(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ConfigError("link probability must lie in [0, 1]");
  Environment env = Environment::uniform(n, 0.0);
  RngStream rng(seed, 0, 0, StreamPurpose::kEnvGen);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.next_unit() < p) {
        env.link(i, j) = 1.0;
        env.link(j, i) = 1.0;
      }
    }
  }
  return env;
}

Environment load_env(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open environment file: " + path.string());

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        while (used < cell.size() &&
               std::isspace(static_cast<unsigned char>(cell[used])))
          ++used;
        if (used != cell.size()) throw std::invalid_argument(cell);
        row.push_back(v);
      } catch (const std::exception&) {
        throw ConfigError("environment row " + std::to_string(line_no) +
                          ", column " + std::to_string(row.size() + 1) +
                          ": cannot parse '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("environment file is empty");

  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw ConfigError("environment is not square: row " +
                        std::to_string(i + 1) + " has " +
                        std::to_string(rows[i].size()) + " columns, expected " +
                        std::to_string(n));
  }

  Environment env = Environment::uniform(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = rows[i][j];
      if (i == j) continue;  // diagonal unused, stored as 1
      if (!(v >= 0.0 && v <= 1.0))
        throw ConfigError("environment cell (row " + std::to_string(i + 1) +
                          ", column " + std::to_string(j + 1) + ") = " +
                          std::to_string(v) + " outside [0, 1]");
      env.link(i, j) = v;
    }
  }
  return env;
}

void save_env(const Environment& env, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write environment file: " + path.string());
  const std::size_t n = env.size();
  char buf[32];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", env.link(i, j));
      out << buf << (j + 1 < n ? "," : "\n");
    }
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace swarmsim
