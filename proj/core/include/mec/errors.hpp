#pragma once

#include <stdexcept>
#include <string>

namespace mec {

struct NotPrime : std::domain_error {
  explicit NotPrime(const std::string& what) : std::domain_error(what) {}
};

struct OrderUnavailable : std::domain_error {
  explicit OrderUnavailable(const std::string& what) : std::domain_error(what) {}
};

struct OrderTooSmall : std::domain_error {
  explicit OrderTooSmall(const std::string& what) : std::domain_error(what) {}
};

struct DivisionByZero : std::domain_error {
  explicit DivisionByZero(const std::string& what) : std::domain_error(what) {}
};

struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct ShapeMismatch : std::invalid_argument {
  explicit ShapeMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct IndexOutOfRange : std::out_of_range {
  explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

struct EmptyInput : std::invalid_argument {
  explicit EmptyInput(const std::string& what) : std::invalid_argument(what) {}
};

struct ZeroPolynomial : std::invalid_argument {
  explicit ZeroPolynomial(const std::string& what) : std::invalid_argument(what) {}
};

struct DuplicateExponent : std::invalid_argument {
  explicit DuplicateExponent(const std::string& what) : std::invalid_argument(what) {}
};

struct DuplicateEntry : std::invalid_argument {
  explicit DuplicateEntry(const std::string& what) : std::invalid_argument(what) {}
};

struct SingularSystem : std::domain_error {
  explicit SingularSystem(const std::string& what) : std::domain_error(what) {}
};

struct RankDeficient : std::domain_error {
  explicit RankDeficient(const std::string& what) : std::domain_error(what) {}
};

struct SingularInput : std::domain_error {
  explicit SingularInput(const std::string& what) : std::domain_error(what) {}
};

struct TooManyErrors : std::invalid_argument {
  explicit TooManyErrors(const std::string& what) : std::invalid_argument(what) {}
};

struct SingularDraw : std::runtime_error {
  explicit SingularDraw(const std::string& what) : std::runtime_error(what) {}
};

struct IOError : std::runtime_error {
  explicit IOError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mec
