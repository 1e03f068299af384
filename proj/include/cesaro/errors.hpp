#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cesaro {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A parameter (t, p, r, z, m, ...) lies outside the admissible range.
class domain_error : public error {
  public:
    using error::error;
};

class non_finite_coefficient : public error {
  public:
    explicit non_finite_coefficient(std::size_t index)
        : error("non-finite Taylor coefficient at index " + std::to_string(index)), index_(index) {}

    [[nodiscard]] std::size_t index() const noexcept { return index_; }

  private:
    std::size_t index_;
};

class no_convergence : public error {
  public:
    using error::error;
};

class empty_test_set : public error {
  public:
    empty_test_set() : error("operator-norm test set is empty") {}
};

class unsupported_kernel : public error {
  public:
    using error::error;
};

/// Malformed coefficient file or command-line value. `line()` is 0 when no line applies.
class parse_error : public error {
  public:
    parse_error(const std::string& what, std::size_t line)
        : error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

}  // namespace cesaro
