#pragma once

#include <map>

#include "hurwitz/valued_field.hpp"

namespace hurwitz::field::detail {

// Cache of g^i for repeated composition with the same ratio series.
class PowerCache {
 public:
  explicit PowerCache(const BoundarySeries& g) : g_(g) {}

  const BoundarySeries& get(long i) {
    auto it = cache_.find(i);
    if (it != cache_.end()) return it->second;
    if (i == 0) {
      return cache_.emplace(0, BoundarySeries::constant(RamifiedElt::from_rational(g_.p(), g_.N(), 1), g_.lo(),
                                                        g_.hi(), g_.val_cutoff()))
          .first->second;
    }
    if (i == 1) return cache_.emplace(1, g_).first->second;
    if (i == -1) return cache_.emplace(-1, g_.inverse()).first->second;
    long step = i > 0 ? 1 : -1;
    BoundarySeries next = get(i - step) * get(step);
    return cache_.emplace(i, std::move(next)).first->second;
  }

 private:
  BoundarySeries g_;
  std::map<long, BoundarySeries> cache_;
};

BoundarySeries compose_cached(const BoundarySeries& f, const BoundarySeries& g, PowerCache& cache);

}  // namespace hurwitz::field::detail
