#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "distfree/rng.hpp"

namespace distfree {

struct Atom {
  double z;
  double p;
};

/// Finitely supported distribution. Atoms are sorted by z and distinct;
/// probabilities are non-negative and sum to one within 1e-12.
class DiscreteDist {
 public:
  /// Throws ConstructionError on duplicates, negative or non-finite masses,
  /// or a total differing from one.
  explicit DiscreteDist(std::vector<Atom> atoms);

  static DiscreteDist point_mass(double z) { return DiscreteDist({{z, 1.0}}); }
  /// Uniform weights on the sample, duplicates merged. Throws InputError
  /// for an empty sample.
  static DiscreteDist empirical(std::span<const double> sample);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::vector<double> support() const;
  std::vector<double> weights() const;
  /// P(Z = z); zero off the support.
  double mass(double z) const;
  double cdf_le(double z) const;
  double cdf_lt(double z) const;

  double draw(RandomStream& rng) const;
  std::vector<double> sample(std::size_t n, RandomStream& rng) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
};

/// A distribution known through its CDF and quantile function; used for
/// the continuous samplers of the stationarity experiments.
struct CdfOracle {
  std::string name;
  std::function<double(double)> cdf_le;
  std::function<double(double)> cdf_lt;
  std::function<double(double)> quantile;

  double draw(RandomStream& rng) const { return quantile(rng.uniform()); }
  std::vector<double> sample(std::size_t n, RandomStream& rng) const;

  static CdfOracle uniform(double lo, double hi);
  static CdfOracle from_discrete(const DiscreteDist& dist);
};

}  // namespace distfree
