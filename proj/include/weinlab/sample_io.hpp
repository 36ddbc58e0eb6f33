#pragma once

// Sample files: a text header describing the grid, then little-endian
// float64 (re, im) pairs in node order.
//
//   WEINLAB-SAMPLES 1
//   kind space|frequency
//   d 1
//   alpha 0.5
//   euclid_extent 8
//   euclid_points 64
//   radial_extent 8
//   radial_points 48
//   radial_rule gauss_jacobi
//   rng <algorithm>
//   count 3072
//   end

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "weinlab/errors.hpp"
#include "weinlab/expression.hpp"
#include "weinlab/grid.hpp"
#include "weinlab/grid_function.hpp"
#include "weinlab/random.hpp"

namespace weinlab {

class SampleFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SampleFile {
  Domain domain = Domain::space;
  WeinsteinParams params{};
  GridSpec grid{};
  std::vector<Complex> values;
};

namespace detail {

inline void put_f64(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  char bytes[8];
  for (int k = 0; k < 8; ++k) bytes[k] = static_cast<char>((bits >> (8 * k)) & 0xff);
  out.write(bytes, 8);
}

inline double get_f64(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw SampleFileError("truncated sample data");
  std::uint64_t bits = 0;
  for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(bytes[k]) << (8 * k);
  return std::bit_cast<double>(bits);
}

}  // namespace detail

inline void write_samples(std::ostream& out, const SampleFile& s) {
  out << "WEINLAB-SAMPLES 1\n"
      << "kind " << to_string(s.domain) << '\n'
      << "d " << s.params.d << '\n'
      << "alpha " << format_number(s.params.alpha) << '\n'
      << "euclid_extent " << format_number(s.grid.euclid_extent) << '\n'
      << "euclid_points " << s.grid.euclid_points << '\n'
      << "radial_extent " << format_number(s.grid.radial_extent) << '\n'
      << "radial_points " << s.grid.radial_points << '\n'
      << "radial_rule " << to_string(s.grid.radial_rule) << '\n'
      << "rng " << kRngAlgorithm << '\n'
      << "count " << s.values.size() << '\n'
      << "end\n";
  for (const Complex& v : s.values) {
    detail::put_f64(out, v.real());
    detail::put_f64(out, v.imag());
  }
}

template <Domain D>
void write_samples(const std::filesystem::path& path, const Samples<D>& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SampleFileError("cannot write " + path.string());
  SampleFile s;
  s.domain = D;
  s.params = f.grid().params();
  s.grid = f.grid().spec();
  s.values.assign(f.values().begin(), f.values().end());
  write_samples(out, s);
}

/// Parses and validates a sample stream. Errors name the header line.
inline SampleFile read_samples(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) {
    throw SampleFileError("line " + std::to_string(lineno) + ": " + what);
  };
  if (!std::getline(in, line)) throw SampleFileError("empty sample file");
  ++lineno;
  if (line != "WEINLAB-SAMPLES 1") fail("expected 'WEINLAB-SAMPLES 1'");

  std::map<std::string, std::string> fields;
  bool ended = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line == "end") {
      ended = true;
      break;
    }
    const auto space = line.find(' ');
    if (space == std::string::npos) fail("expected 'key value'");
    const std::string key = line.substr(0, space);
    if (fields.count(key)) fail("duplicate key '" + key + "'");
    fields[key] = line.substr(space + 1);
  }
  if (!ended) fail("header not terminated by 'end'");

  auto get = [&](const std::string& key) -> const std::string& {
    auto it = fields.find(key);
    if (it == fields.end()) throw SampleFileError("header: missing '" + key + "'");
    return it->second;
  };
  auto number = [&](const std::string& key) {
    const std::string& v = get(key);
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != v.size()) throw SampleFileError("header: '" + key + "' is not a number");
    return x;
  };
  auto integer = [&](const std::string& key) {
    const double x = number(key);
    if (x != std::floor(x)) throw SampleFileError("header: '" + key + "' must be an integer");
    return static_cast<long long>(x);
  };

  SampleFile s;
  const std::string& kind = get("kind");
  if (kind == "space") {
    s.domain = Domain::space;
  } else if (kind == "frequency") {
    s.domain = Domain::frequency;
  } else {
    throw SampleFileError("header: unknown kind '" + kind + "'");
  }
  s.params.d = static_cast<int>(integer("d"));
  s.params.alpha = number("alpha");
  s.grid.euclid_extent = number("euclid_extent");
  s.grid.euclid_points = static_cast<int>(integer("euclid_points"));
  s.grid.radial_extent = number("radial_extent");
  s.grid.radial_points = static_cast<int>(integer("radial_points"));
  try {
    s.grid.radial_rule = parse_radial_rule(get("radial_rule"));
    s.params.validate();
    s.grid.validate();
  } catch (const SampleFileError&) {
    throw;
  } catch (const std::exception& e) {
    throw SampleFileError(std::string("header: ") + e.what());
  }
  const long long count = integer("count");
  const auto expected = static_cast<long long>(
      std::llround(std::pow(s.grid.euclid_points, s.params.d)) * s.grid.radial_points);
  if (count != expected) {
    throw SampleFileError("header: count " + std::to_string(count) + " does not match the grid (" +
                          std::to_string(expected) + ")");
  }
  s.values.resize(static_cast<std::size_t>(count));
  for (long long n = 0; n < count; ++n) {
    const double re = detail::get_f64(in);
    const double im = detail::get_f64(in);
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw SampleFileError("sample " + std::to_string(n) + " is not finite");
    }
    s.values[static_cast<std::size_t>(n)] = Complex(re, im);
  }
  if (in.peek() != std::char_traits<char>::eof()) throw SampleFileError("trailing data after samples");
  return s;
}

inline SampleFile read_samples(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SampleFileError("cannot open " + path.string());
  return read_samples(in);
}

}  // namespace weinlab
