#pragma once

#include <charconv>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "lowreg/field.hpp"

namespace lowreg {

// LOWREG-FIELD v1 text format:
//   LOWREG-FIELD v1
//   <dim> <N1> [<N2>] <L1> [<L2>]
//   <re> <im>            one line per mode, storage order
inline constexpr const char* field_magic = "LOWREG-FIELD";
inline constexpr const char* field_version = "v1";

namespace detail {

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

template <typename T>
bool parse_number(const std::string& tok, T& value) {
  if constexpr (std::is_floating_point_v<T>) {
    // strtod accepts the full %.17g output including exponents.
    char* end = nullptr;
    value = std::strtod(tok.c_str(), &end);
    return end == tok.c_str() + tok.size() && !tok.empty();
  } else {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    return ec == std::errc{} && ptr == tok.data() + tok.size();
  }
}

} // namespace detail

inline void write_field(std::ostream& out, const Field& f) {
  const Grid& g = f.grid();
  out << field_magic << ' ' << field_version << '\n' << g.dim();
  for (int a = 0; a < g.dim(); ++a) out << ' ' << g.points(a);
  for (int a = 0; a < g.dim(); ++a) out << ' ' << detail::format_double(g.length(a));
  out << '\n';
  for (const auto& c : f.coeffs())
    out << detail::format_double(c.real()) << ' ' << detail::format_double(c.imag()) << '\n';
}

inline Field read_field(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next()) throw ParseError("empty field file", 1);
  const auto magic = detail::split_ws(line);
  if (magic.size() != 2 || magic[0] != field_magic)
    throw ParseError("not a LOWREG-FIELD file", lineno);
  if (magic[1] != field_version)
    throw ParseError("unsupported LOWREG-FIELD version '" + magic[1] + "'", lineno);

  if (!next()) throw ParseError("missing grid header", 2);
  const auto head = detail::split_ws(line);
  int dim = 0;
  if (head.empty() || !detail::parse_number(head[0], dim))
    throw ParseError("malformed grid header", lineno);
  if (dim < 1 || dim > Grid::max_dim)
    throw ParseError("unsupported dimension " + std::to_string(dim), lineno);
  if (head.size() != 1 + 2 * static_cast<std::size_t>(dim))
    throw ParseError("grid header needs " + std::to_string(1 + 2 * dim) + " fields", lineno);
  std::vector<std::size_t> points(dim);
  std::vector<double> lengths(dim);
  for (int a = 0; a < dim; ++a) {
    if (!detail::parse_number(head[1 + a], points[a]) ||
        !detail::parse_number(head[1 + dim + a], lengths[a]))
      throw ParseError("malformed grid header", lineno);
  }
  GridPtr grid;
  try {
    grid = make_grid(dim, points, lengths);
  } catch (const ConfigError& e) {
    throw ParseError(e.what(), lineno);
  }

  std::vector<Complex> coeffs;
  coeffs.reserve(grid->size());
  while (coeffs.size() < grid->size()) {
    if (!next())
      throw ParseError("truncated file: expected " + std::to_string(grid->size()) +
                           " mode lines, got " + std::to_string(coeffs.size()),
                       lineno + 1);
    const auto tok = detail::split_ws(line);
    double re = 0.0, im = 0.0;
    if (tok.size() != 2 || !detail::parse_number(tok[0], re) || !detail::parse_number(tok[1], im))
      throw ParseError("malformed mode line '" + line + "'", lineno);
    coeffs.emplace_back(re, im);
  }
  while (next()) {
    if (!detail::split_ws(line).empty())
      throw ParseError("unexpected trailing content", lineno);
  }
  Field f(grid, std::move(coeffs));
  if (!f.all_finite()) throw ParseError("non-finite coefficient in field file", 0);
  return f;
}

inline void save_field(const std::string& path, const Field& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_field(out, f);
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline Field load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_field(in);
}

} // namespace lowreg
