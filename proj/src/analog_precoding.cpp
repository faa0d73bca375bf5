#include "quantlink/analog_precoding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace quantlink {

namespace {

// Smallest-to-largest singular value ratio below which the polar factor of a
// projected iterate is treated as undefined.
constexpr double kDegenerateRatio = 1e-12;

double orthogonality_error(const CMatrix& a) {
  const auto n = a.cols();
  return (a.adjoint() * a - CMatrix::Identity(n, n)).norm() / std::sqrt(static_cast<double>(n));
}

}  // namespace

double AnalogPrecoderPair::orthogonality_error_f() const { return orthogonality_error(f_rf); }
double AnalogPrecoderPair::orthogonality_error_w() const { return orthogonality_error(w_rf); }

CMatrix constant_modulus_projection(const CMatrix& m, double modulus) {
  CMatrix out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      // std::arg(0) is 0, which is the tie-break we want for zero entries.
      out(i, j) = std::polar(modulus, std::arg(z));
    }
  }
  return out;
}

CMatrix semi_unitary_projection(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (!(smax > 0.0) || smin <= kDegenerateRatio * smax || s.size() < m.cols()) {
    throw DegenerateIterateError("semi-unitary projection: iterate is rank deficient (sigma_min/sigma_max = " +
                                 std::to_string(smax > 0.0 ? smin / smax : 0.0) + ")");
  }
  return svd.matrixU() * svd.matrixV().adjoint();
}

AnalogPrecoderPair alternating_projection(const ChannelMatrix& h, int n_rf_tx, int n_rf_rx,
                                          const AlternatingProjectionOptions& options) {
  const auto n_tx = h.n_tx();
  const auto n_rx = h.n_rx();
  if (n_rf_tx < 1 || n_rf_tx > n_tx) throw std::invalid_argument("alternating_projection: need 1 <= n_rf_tx <= n_tx");
  if (n_rf_rx < 1 || n_rf_rx > n_rx) throw std::invalid_argument("alternating_projection: need 1 <= n_rf_rx <= n_rx");
  if (!(options.epsilon > 0.0)) throw std::invalid_argument("alternating_projection: epsilon must be positive");
  if (options.max_iter < 1) throw std::invalid_argument("alternating_projection: max_iter must be >= 1");

  const SvdResult svd = svd_of(h.entries(), /*full=*/true);
  CMatrix w_hat = svd.u.leftCols(n_rf_rx);
  CMatrix f_hat = svd.v.leftCols(n_rf_tx);

  const double w_modulus = 1.0 / std::sqrt(static_cast<double>(n_rx));
  const double f_modulus = 1.0 / std::sqrt(static_cast<double>(n_tx));
  const double w_norm = std::sqrt(static_cast<double>(n_rf_rx));
  const double f_norm = std::sqrt(static_cast<double>(n_rf_tx));

  AnalogPrecoderPair pair;
  pair.history_f.reserve(static_cast<std::size_t>(std::min(options.max_iter, 1024)));
  pair.history_w.reserve(pair.history_f.capacity());

  // The W and F sequences are independent; each side keeps its best iterate.
  CMatrix best_w, best_f;
  double best_residual_w = std::numeric_limits<double>::infinity();
  double best_residual_f = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= options.max_iter; ++k) {
    CMatrix w_tilde = constant_modulus_projection(w_hat, w_modulus);
    CMatrix f_tilde = constant_modulus_projection(f_hat, f_modulus);
    w_hat = semi_unitary_projection(w_tilde);
    f_hat = semi_unitary_projection(f_tilde);

    const double residual_w = (w_hat - w_tilde).norm() / w_norm;
    const double residual_f = (f_hat - f_tilde).norm() / f_norm;
    pair.history_w.push_back(residual_w);
    pair.history_f.push_back(residual_f);
    pair.iterations = k;
    if (residual_w <= best_residual_w) {
      best_residual_w = residual_w;
      best_w = std::move(w_tilde);
    }
    if (residual_f <= best_residual_f) {
      best_residual_f = residual_f;
      best_f = std::move(f_tilde);
    }
    if (residual_w < options.epsilon && residual_f < options.epsilon) {
      pair.converged = true;
      break;
    }
  }
  pair.w_rf = std::move(best_w);
  pair.f_rf = std::move(best_f);
  pair.residual_w = best_residual_w;
  pair.residual_f = best_residual_f;
  return pair;
}

EffectiveChannel::EffectiveChannel(CMatrix g) : g_(std::move(g)) {
  if (g_.size() == 0) throw std::invalid_argument("EffectiveChannel: empty matrix");
  if (!g_.allFinite()) throw std::invalid_argument("EffectiveChannel: non-finite entries");
  nu_ = Eigen::JacobiSVD<CMatrix>(g_).singularValues();
}

EffectiveChannel effective_channel(const ChannelMatrix& h, const CMatrix& w_rf, const CMatrix& f_rf) {
  if (w_rf.rows() != h.n_rx() || f_rf.rows() != h.n_tx())
    throw std::invalid_argument("effective_channel: analog stage does not match channel dimensions");
  return EffectiveChannel(w_rf.adjoint() * h.entries() * f_rf);
}

EffectiveChannel effective_channel(const ChannelMatrix& h, const AnalogPrecoderPair& pair) {
  return effective_channel(h, pair.w_rf, pair.f_rf);
}

}  // namespace quantlink
