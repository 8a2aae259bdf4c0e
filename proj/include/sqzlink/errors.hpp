#pragma once

#include <stdexcept>
#include <string>

namespace sqzlink {

// Parameter outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Well-formed input the model deliberately does not cover (e.g. rotated squeezing).
class UnsupportedConfiguration : public DomainError {
 public:
  using DomainError::DomainError;
};

// Two or more alphabet symbols produce the same expected correlation.
class DegenerateAlphabet : public DomainError {
 public:
  using DomainError::DomainError;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace sqzlink
