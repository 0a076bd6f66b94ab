#pragma once

#include <stdexcept>
#include <string>

namespace reuleaux {

enum class Errc {
  InvalidInput,      // non-finite coordinates, mismatched sizes
  InvalidPolygon,    // vertex set is not a valid disk-/Reuleaux polygon
  DegenerateCircles, // unit circles tangent, coincident or disjoint
  InvalidN,          // vertex count outside the admissible set
  OutOfRange,        // scalar argument outside the domain of a formula
  SingularArc,       // arc too short (or too long) for a sensitivity formula
  StepTooLarge,      // constrained perturbation left the feasible window
  TriangleImmovable, // single-vertex moves do not exist for n = 3
  CoincidentPoints,  // zero-length diameter in a constraint evaluation
  RankDeficient,     // multiplier system is degenerate
  InconsistentQ,     // critical-cone coefficients do not close around the cycle
  RedundantCenter,   // a disk contributes no boundary arc
  Stall,             // no feasible improving step
  NonOddReduction,   // merge produced an even vertex count
  Parse,             // malformed input file or generator spec
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace reuleaux
