#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace egvqc {

/// Raised when a dataset file is malformed. Carries the offending file and
/// 1-based line number so messages can be acted on directly.
class parse_error : public std::runtime_error {
 public:
  parse_error(std::string file, std::size_t line, const std::string& what)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

/// Raised when an operation would exceed a configured memory/size cap,
/// e.g. materializing the diagonal of a Hamiltonian on too many qubits.
class resource_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a caller violates a normalization contract, e.g. feeding a
/// Hamiltonian with spectrum outside [-1, 1] into the probability map.
class contract_error : public std::logic_error {
  using std::logic_error::logic_error;
};

/// Raised when an encoded Hamiltonian has no terms left after merging;
/// such an operator carries no structure a classifier could use.
class degenerate_hamiltonian_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when optimization hits a non-recoverable numeric state
/// (non-finite gradients or parameters). Message includes the epoch.
class training_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace egvqc
