#pragma once

#include "pendsim/model.hpp"
#include "pendsim/rng.hpp"
#include "pendsim/types.hpp"

namespace pendsim::test {

// Random states inside the validated workspace.
inline Vector5d random_q(Rng& rng, double scale = 0.9) {
  Vector5d q;
  for (int i = 0; i < 5; ++i) q(i) = (rng.uniform() - 0.5) * scale;
  return q;
}

inline Vector5d random_dq(Rng& rng, double scale = 2.0) {
  Vector5d dq;
  for (int i = 0; i < 5; ++i) dq(i) = (rng.uniform() - 0.5) * scale;
  return dq;
}

inline Vector2d random_q2(Rng& rng, double scale = 1.2) {
  return Vector2d((rng.uniform() - 0.5) * scale, (rng.uniform() - 0.5) * scale);
}

inline Vector2d random_dq2(Rng& rng, double scale = 2.0) {
  return Vector2d((rng.uniform() - 0.5) * scale, (rng.uniform() - 0.5) * scale);
}

}  // namespace pendsim::test
