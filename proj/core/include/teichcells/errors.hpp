#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace teichcells {

/// Broad class of a failure; the CLI maps it onto its exit code.
enum class ErrorClass {
  InvalidInput,  ///< the caller handed in something malformed
  Numerical,     ///< a solver or iteration could not finish
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), class_(cls) {}
  ErrorClass error_class() const noexcept { return class_; }

 private:
  ErrorClass class_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorClass::InvalidInput, what) {}
};

class InvalidGluing : public Error {
 public:
  explicit InvalidGluing(const std::string& what) : Error(ErrorClass::InvalidInput, what) {}
};

class SelfGluedEdge : public Error {
 public:
  explicit SelfGluedEdge(int edge)
      : Error(ErrorClass::InvalidInput,
              "edge " + std::to_string(edge) + " is glued to a single hexagon and cannot be flipped"),
        edge_(edge) {}
  int edge() const noexcept { return edge_; }

 private:
  int edge_;
};

class NonFillable : public Error {
 public:
  explicit NonFillable(const std::string& what) : Error(ErrorClass::InvalidInput, what) {}
};

class TooManyCycles : public Error {
 public:
  explicit TooManyCycles(const std::string& what) : Error(ErrorClass::Numerical, what) {}
};

class InvalidTarget : public Error {
 public:
  explicit InvalidTarget(const std::string& what) : Error(ErrorClass::InvalidInput, what) {}
};

class UnknownSuite : public Error {
 public:
  explicit UnknownSuite(const std::string& name)
      : Error(ErrorClass::InvalidInput, "unknown verification suite '" + name + "'") {}
};

class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what) : Error(ErrorClass::Numerical, what) {}
};

/// The three arc-side geodesics of a hexagon have no common tangent circle
/// (the equidistant locus is a hypercycle or a horocycle instead).
class NoIncircle : public NumericalFailure {
 public:
  explicit NoIncircle(const std::string& what) : NumericalFailure(what) {}
};

class DegenerateCellError : public NumericalFailure {
 public:
  explicit DegenerateCellError(const std::string& what) : NumericalFailure(what) {}
};

/// Newton iteration gave up. Carries the residual norm after every iteration
/// of the last attempt.
class NoConvergence : public NumericalFailure {
 public:
  NoConvergence(const std::string& what, std::vector<double> residuals)
      : NumericalFailure(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<double> residuals_;
};

/// Flip search exceeded its iteration cap. Carries the flipped edge indices.
class NonTermination : public NumericalFailure {
 public:
  NonTermination(const std::string& what, std::vector<int> flips)
      : NumericalFailure(what), flips_(std::move(flips)) {}
  const std::vector<int>& flips() const noexcept { return flips_; }

 private:
  std::vector<int> flips_;
};

}  // namespace teichcells
