#include "distfree/distributions.hpp"

#include <algorithm>
#include <cmath>

#include "distfree/errors.hpp"
#include "distfree/ext_real.hpp"

namespace distfree {

DiscreteDist::DiscreteDist(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw ConstructionError("distribution with no atoms");
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.z < b.z; });
  double total = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const Atom& a = atoms_[i];
    if (!std::isfinite(a.z)) throw ConstructionError("distribution atoms must be finite");
    if (!(a.p >= 0.0) || !std::isfinite(a.p)) throw ConstructionError("probabilities must be finite and non-negative");
    if (i > 0 && atoms_[i - 1].z == a.z) throw ConstructionError("duplicate atom at " + ExtReal(a.z).to_string());
    total += a.p;
    cumulative_.push_back(total);
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ConstructionError("probabilities sum to " + ExtReal(total).to_string() + ", not 1");
  }
}

DiscreteDist DiscreteDist::empirical(std::span<const double> sample) {
  if (sample.empty()) throw InputError("empirical distribution of an empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double w = 1.0 / static_cast<double>(sorted.size());
  std::vector<Atom> atoms;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    atoms.push_back({sorted[i], static_cast<double>(j - i) * w});
    i = j;
  }
  // Absorb the rounding of the total into the largest atom.
  double total = 0.0;
  for (const auto& a : atoms) total += a.p;
  auto largest = std::max_element(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.p < b.p; });
  largest->p += 1.0 - total;
  return DiscreteDist(std::move(atoms));
}

std::vector<double> DiscreteDist::support() const {
  std::vector<double> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) out.push_back(a.z);
  return out;
}

std::vector<double> DiscreteDist::weights() const {
  std::vector<double> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) out.push_back(a.p);
  return out;
}

double DiscreteDist::mass(double z) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), z, [](const Atom& a, double v) { return a.z < v; });
  return it != atoms_.end() && it->z == z ? it->p : 0.0;
}

double DiscreteDist::cdf_le(double z) const {
  double total = 0.0;
  for (const auto& a : atoms_) {
    if (a.z > z) break;
    total += a.p;
  }
  return std::min(total, 1.0);
}

double DiscreteDist::cdf_lt(double z) const {
  double total = 0.0;
  for (const auto& a : atoms_) {
    if (a.z >= z) break;
    total += a.p;
  }
  return std::min(total, 1.0);
}

double DiscreteDist::draw(RandomStream& rng) const {
  const double u = rng.uniform() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return atoms_[static_cast<std::size_t>(it - cumulative_.begin())].z;
}

std::vector<double> DiscreteDist::sample(std::size_t n, RandomStream& rng) const {
  std::vector<double> out(n);
  for (auto& z : out) z = draw(rng);
  return out;
}

std::vector<double> CdfOracle::sample(std::size_t n, RandomStream& rng) const {
  std::vector<double> out(n);
  for (auto& z : out) z = draw(rng);
  return out;
}

CdfOracle CdfOracle::uniform(double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw ParameterError("uniform needs finite lo < hi");
  auto cdf = [lo, hi](double z) { return std::clamp((z - lo) / (hi - lo), 0.0, 1.0); };
  return {"uniform", cdf, cdf, [lo, hi](double u) { return lo + u * (hi - lo); }};
}

CdfOracle CdfOracle::from_discrete(const DiscreteDist& dist) {
  auto quantile = [dist](double u) {
    double total = 0.0;
    for (const auto& a : dist.atoms()) {
      total += a.p;
      if (u < total) return a.z;
    }
    return dist.atoms().back().z;
  };
  return {"discrete", [dist](double z) { return dist.cdf_le(z); }, [dist](double z) { return dist.cdf_lt(z); },
          quantile};
}

}  // namespace distfree
