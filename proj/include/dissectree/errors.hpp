#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dissectree {

// A conditioned sampler ran out of attempts before hitting its target.
class SamplerCapExhausted : public std::runtime_error {
 public:
  SamplerCapExhausted(const std::string& what, std::uint64_t attempts)
      : std::runtime_error(what), attempts_(attempts) {}

  std::uint64_t attempts() const noexcept { return attempts_; }

 private:
  std::uint64_t attempts_;
};

// A structural identity that must hold exactly was observed to fail.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dissectree
