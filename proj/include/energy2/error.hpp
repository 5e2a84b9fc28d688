#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace energy2 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data or arguments violate a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Standardization hit a coordinate with zero pooled variance.
class DegenerateCoordinate : public Error {
 public:
  explicit DegenerateCoordinate(std::size_t coordinate)
      : Error("coordinate " + std::to_string(coordinate) +
              " has zero pooled standard deviation"),
        coordinate_(coordinate) {}

  std::size_t coordinate() const noexcept { return coordinate_; }

 private:
  std::size_t coordinate_;
};

/// A kernel that is singular at r = 0 met two coincident observations.
class SingularDistance : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  SingularDistance()
      : Error("zero distance passed to a kernel that is singular at zero"),
        row_i_(npos),
        row_j_(npos) {}
  SingularDistance(std::size_t row_i, std::size_t row_j)
      : Error("observations " + std::to_string(row_i) + " and " +
              std::to_string(row_j) +
              " coincide; the kernel is singular at zero distance"),
        row_i_(row_i),
        row_j_(row_j) {}

  std::size_t row_i() const noexcept { return row_i_; }
  std::size_t row_j() const noexcept { return row_j_; }

 private:
  std::size_t row_i_;
  std::size_t row_j_;
};

class InsufficientSample : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class DomainError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Equal-probability binning collapsed because of tied pooled values.
class DegenerateBins : public Error {
 public:
  using Error::Error;
};

class InsufficientPermutations : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InvalidCovariance : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class MissingCell : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration document; the message names the field path.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Malformed CSV input; the message names the file and line.
class CsvError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace energy2
