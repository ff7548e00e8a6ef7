#ifndef DDELTA_OUTPUT_HPP
#define DDELTA_OUTPUT_HPP

// Tabular output shared by every CLI command. CSV files start with a
// "# ddelta <kind> v<version>" line ahead of the column header; numbers are
// written in the shortest form that round-trips to the same double.

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace ddelta {

std::string format_number(double v);

/// std::monostate is a missing value: an empty CSV field, null in JSON.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
  std::string kind;  // "spectrum", "curves", ...
  int version = 1;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);

/// splitmix64; fixed across platforms so seeded runs are byte-identical.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Log-uniform on [lo, hi), lo > 0.
  double log_uniform(double lo, double hi);

 private:
  std::uint64_t state_;
};

}  // namespace ddelta

#endif  // DDELTA_OUTPUT_HPP
