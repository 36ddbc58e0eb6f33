#pragma once

// Test-function generators. Specs use the expression grammar:
//   gaussian(sigma [, c_1..c_d])      exp(-(|x' - c|^2 + x_{d+1}^2) / (2 sigma^2))
//   bump(rho [, c_1..c_d])            exp(1 - 1/(1 - |x - c|^2/rho^2)) inside the ball
//   indicator(<set>)                  chi of a set spec, e.g. indicator(ball(1))
//   modulated(sigma, w_1..w_d)        gaussian(sigma) * exp(i <w, x'>)
//   bandlimited(K, band)              K random Gaussian packets (unit width) in
//                                     frequency with centres inside [-band, band],
//                                     synthesized by the inverse transform
// "name:a,b" is accepted for "name(a,b)", e.g. gaussian:1.0.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "weinlab/expression.hpp"
#include "weinlab/grid_function.hpp"
#include "weinlab/random.hpp"
#include "weinlab/sets.hpp"
#include "weinlab/transform.hpp"

namespace weinlab {

class FunctionSpec {
 public:
  static FunctionSpec parse(const std::string& text) { return FunctionSpec(parse_expression(text)); }

  explicit FunctionSpec(Expr expr) : expr_(std::move(expr)) { validate(); }

  const std::string& kind() const noexcept { return expr_.name; }
  std::string to_string() const { return weinlab::to_string(expr_); }

  /// True when the generator needs the seed (random coefficients).
  bool is_random() const noexcept { return expr_.name == "bandlimited"; }

  GridFunction generate(const GridPtr& grid, std::uint64_t seed = 0) const {
    const int d = grid->dim();
    const std::string& k = expr_.name;
    if (k == "gaussian" || k == "modulated") {
      const double sigma = expr_.arg(0);
      std::vector<double> shift(d, 0.0), freq(d, 0.0);
      if (k == "gaussian") {
        shift = trailing(1, d);
      } else {
        freq = trailing(1, d);
      }
      return GridFunction::sample(grid, [&](const std::vector<double>& x) {
        double r2 = x[d] * x[d];
        double phase = 0.0;
        for (int i = 0; i < d; ++i) {
          r2 += (x[i] - shift[i]) * (x[i] - shift[i]);
          phase += freq[i] * x[i];
        }
        return std::exp(-r2 / (2.0 * sigma * sigma)) * Complex(std::cos(phase), std::sin(phase));
      });
    }
    if (k == "bump") {
      const double rho = expr_.arg(0);
      const std::vector<double> shift = trailing(1, d);
      return GridFunction::sample(grid, [&](const std::vector<double>& x) {
        double r2 = x[d] * x[d];
        for (int i = 0; i < d; ++i) r2 += (x[i] - shift[i]) * (x[i] - shift[i]);
        const double u = r2 / (rho * rho);
        return u < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u)) : 0.0;
      });
    }
    if (k == "indicator") {
      const SpatialSet set = SetSpec(expr_.args.at(0)).build<Domain::space>(grid);
      GridFunction out(grid);
      for (std::size_t n = 0; n < out.size(); ++n) out[n] = set.contains(n) ? 1.0 : 0.0;
      return out;
    }
    if (k == "bandlimited") return bandlimited(grid, seed);
    if (k == "zero") return GridFunction(grid);
    throw DomainError("unknown function kind '" + k + "'");
  }

 private:
  void validate() const {
    const std::string& k = expr_.name;
    if (expr_.is_number()) throw DomainError("function spec must be a name, not a number");
    auto positive_first = [&] {
      if (expr_.args.empty() || !(expr_.arg(0) > 0.0)) {
        throw DomainError("'" + k + "': first argument must be positive");
      }
    };
    if (k == "gaussian" || k == "bump" || k == "modulated") {
      positive_first();
      for (std::size_t i = 1; i < expr_.args.size(); ++i) expr_.arg(i);
    } else if (k == "indicator") {
      if (expr_.args.size() != 1) throw DomainError("indicator(<set>) takes one set spec");
      SetSpec{expr_.args[0]};
    } else if (k == "bandlimited") {
      if (expr_.args.size() != 2) throw DomainError("bandlimited(K, band) takes two arguments");
      const double count = expr_.arg(0);
      if (!(count >= 1.0) || count != std::floor(count))
        throw DomainError("bandlimited: K must be a positive integer");
      if (!(expr_.arg(1) >= 0.0)) throw DomainError("bandlimited: band must be >= 0");
    } else if (k != "zero") {
      throw DomainError("unknown function kind '" + k + "'");
    }
  }

  // Arguments first..first+d-1 (missing ones are zero).
  std::vector<double> trailing(std::size_t first, int d) const {
    std::vector<double> v(d, 0.0);
    const std::size_t extra = expr_.args.size() > first ? expr_.args.size() - first : 0;
    if (extra != 0 && extra != static_cast<std::size_t>(d)) {
      throw DomainError("'" + expr_.name + "': expected 0 or d = " + std::to_string(d) +
                        " coordinates after the first argument");
    }
    for (std::size_t i = 0; i < extra; ++i) v[i] = expr_.arg(first + i);
    return v;
  }

  // Spectrum sum_k c_k exp(-|l' - b_k|^2/2) (exp(-(l_r - beta_k)^2/2) + exp(-(l_r + beta_k)^2/2)),
  // even and smooth in l_r, then inverted on the grid.
  GridFunction bandlimited(const GridPtr& grid, std::uint64_t seed) const {
    const int d = grid->dim();
    const int count = static_cast<int>(expr_.arg(0));
    const double band = expr_.arg(1);
    Rng rng(seed);
    struct Packet {
      Complex c;
      std::vector<double> centre;
      double beta;
    };
    std::vector<Packet> packets(count);
    for (Packet& pk : packets) {
      pk.c = Complex(rng.normal(), rng.normal());
      pk.centre.resize(d);
      for (double& b : pk.centre) b = rng.uniform(-band, band);
      pk.beta = rng.uniform(0.0, band);
    }
    const auto tr = transform_for(grid);
    const SpectralFunction spectrum =
        SpectralFunction::sample(tr->frequency_grid(), [&](const std::vector<double>& l) {
          Complex acc{};
          for (const Packet& pk : packets) {
            double e2 = 0.0;
            for (int i = 0; i < d; ++i) e2 += (l[i] - pk.centre[i]) * (l[i] - pk.centre[i]);
            const double radial = std::exp(-0.5 * (l[d] - pk.beta) * (l[d] - pk.beta)) +
                                  std::exp(-0.5 * (l[d] + pk.beta) * (l[d] + pk.beta));
            acc += pk.c * std::exp(-0.5 * e2) * radial;
          }
          return acc;
        });
    return tr->inverse(spectrum);
  }

  Expr expr_;
};

inline GridFunction make_function(const std::string& spec, const GridPtr& grid,
                                  std::uint64_t seed = 0) {
  return FunctionSpec::parse(spec).generate(grid, seed);
}

}  // namespace weinlab
