#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace holo {

enum class ErrorKind {
  Validation,
  Precondition,
  Containment,
  Indeterminate,
  PoleProximity,
  Nonvanishing,
  Conditioning,
  MapDomain,
  NotInImage,
  Construction,
  Schema,
  Internal,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::optional<std::complex<double>> witness = std::nullopt)
      : std::runtime_error(what), kind_(kind), witness_(witness) {}

  ErrorKind kind() const { return kind_; }
  const std::optional<std::complex<double>>& witness() const { return witness_; }

 private:
  ErrorKind kind_;
  std::optional<std::complex<double>> witness_;
};

}  // namespace holo
