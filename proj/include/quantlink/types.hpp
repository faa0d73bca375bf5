#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace quantlink {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Thrown when an alternating-projection iterate has (numerically) dependent
// columns, so its polar factor is undefined.
class DegenerateIterateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when G G^* cannot be inverted for channel-inversion precoding.
class RankDeficientChannelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace quantlink
