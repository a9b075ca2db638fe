#pragma once

#include <cstddef>
#include <string>

#include "duelbench/prefmat.hpp"
#include "duelbench/rng.hpp"

namespace duelbench {

struct ArmPair {
  Arm first = 0;
  Arm second = 0;

  friend bool operator==(const ArmPair&, const ArmPair&) = default;
};

// A dueling-bandit learner. Each step the harness calls decide() once and
// then update() once with the feedback for that pair; the learner never sees
// rewards, only the relative signal. New algorithms plug into the harness
// and the classical-bandit reduction by implementing this interface.
class DuelingPolicy {
 public:
  virtual ~DuelingPolicy() = default;

  virtual std::size_t arms() const = 0;
  virtual ArmPair decide(RandomStream& rng) = 0;
  virtual void update(ArmPair pair, double feedback) = 0;
  virtual std::string name() const = 0;
};

}  // namespace duelbench
