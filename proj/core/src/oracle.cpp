#include "adaprox/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "adaprox/errors.hpp"

namespace adaprox {

StochasticOracle::StochasticOracle(std::shared_ptr<const VIProblem> base, NoiseSpec noise,
                                   std::uint64_t seed)
    : base_(std::move(base)),
      noise_(std::move(noise)),
      seed_(seed),
      rng_(mix_seed(seed, hash_name(base_ ? base_->name() : ""))) {
  if (!base_) throw InvalidConfigError("oracle needs a base problem");
  if (noise_.kind == NoiseSpec::Kind::GaussianAdditive &&
      noise_.sigma.size() != base_->domain().dim())
    throw InvalidConfigError("gaussian noise: sigma has wrong dimension");
}

Vec StochasticOracle::evaluate(const Vec& x) {
  switch (noise_.kind) {
    case NoiseSpec::Kind::None:
      return base_->field(x);
    case NoiseSpec::Kind::GaussianAdditive: {
      Vec v = base_->field(x);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += noise_.sigma[i] * rng_.normal();
      return v;
    }
    case NoiseSpec::Kind::MinibatchCovariance: {
      if (!base_->domain().contains(x, 1e-6))
        throw InvalidPointError("minibatch oracle: point outside domain");
      return sampler_(x, rng_);
    }
  }
  return base_->field(x);
}

namespace {

// row-major d x d views into the packed [V, W] point
struct PackedPoint {
  const double* v;
  const double* w;
  std::size_t d;
};

PackedPoint unpack(const Vec& x, std::size_t d) { return {x.data(), x.data() + d * d, d}; }

}  // namespace

VIProblem make_covariance_problem(std::size_t dim, const linalg::Matrix& covariance) {
  if (dim == 0) throw InvalidConfigError("covariance game needs dim >= 1");
  if (covariance.rows != dim || covariance.cols != dim)
    throw InvalidConfigError("covariance game: covariance has wrong shape");

  Eigen::MatrixXd sigma(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) sigma(i, j) = covariance(i, j);
  if (!sigma.isApprox(sigma.transpose(), 1e-12))
    throw InvalidConfigError("covariance game: covariance must be symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw InvalidConfigError("covariance game: covariance must be positive definite");

  const std::size_t d = dim;
  linalg::Matrix sigma_copy = covariance;

  // field = (d f / d V, -d f / d W) with f = tr(W Sigma) - tr(W V V^T):
  //   d f / d V = -(W + W^T) V,   d f / d W = Sigma - V V^T
  auto field = [sigma_copy, d](const Vec& x) {
    PackedPoint p = unpack(x, d);
    Vec out(2 * d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < d; ++k)
          s += (p.w[i * d + k] + p.w[k * d + i]) * p.v[k * d + j];
        out[i * d + j] = -s;
      }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        double vvt = 0.0;
        for (std::size_t k = 0; k < d; ++k) vvt += p.v[i * d + k] * p.v[j * d + k];
        out[d * d + i * d + j] = vvt - sigma_copy(i, j);
      }
    return out;
  };

  Regularity reg;
  reg.is_monotone = false;

  std::ostringstream name;
  name << "covariance-d" << dim;
  return VIProblem(name.str(), DomainSpec::unconstrained(2 * dim * dim), field, reg);
}

StochasticOracle make_covariance_game(std::size_t dim, const linalg::Matrix& covariance,
                                      std::size_t batch, std::uint64_t seed) {
  if (batch == 0) throw InvalidConfigError("covariance game needs batch >= 1");
  auto base = std::make_shared<VIProblem>(make_covariance_problem(dim, covariance));

  Eigen::MatrixXd sigma(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) sigma(i, j) = covariance(i, j);
  Eigen::MatrixXd chol = Eigen::LLT<Eigen::MatrixXd>(sigma).matrixL();

  const std::size_t d = dim;
  const std::size_t m = batch;

  // minibatch moments: Zhat = (1/m) sum z z^T with z ~ N(0, I), and
  // Xhat = (1/m) sum x x^T with x = chol * z'. Sigma -> Xhat and
  // V V^T -> V Zhat V^T in the W block of the field.
  auto sampler = [chol, d, m](const Vec& point, Rng& rng) {
    PackedPoint p = unpack(point, d);
    Eigen::MatrixXd zhat = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd xhat = Eigen::MatrixXd::Zero(d, d);
    Eigen::VectorXd z(d);
    for (std::size_t s = 0; s < m; ++s) {
      for (std::size_t i = 0; i < d; ++i) z(i) = rng.normal();
      zhat += z * z.transpose();
    }
    for (std::size_t s = 0; s < m; ++s) {
      for (std::size_t i = 0; i < d; ++i) z(i) = rng.normal();
      Eigen::VectorXd x = chol * z;
      xhat += x * x.transpose();
    }
    zhat /= double(m);
    xhat /= double(m);

    Eigen::MatrixXd v(d, d), w(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        v(i, j) = p.v[i * d + j];
        w(i, j) = p.w[i * d + j];
      }

    Eigen::MatrixXd dv = -(w + w.transpose()) * v;
    Eigen::MatrixXd dw_neg = v * zhat * v.transpose() - xhat;  // -(Xhat - V Zhat V^T)

    Vec out(2 * d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        out[i * d + j] = dv(i, j);
        out[d * d + i * d + j] = dw_neg(i, j);
      }
    return out;
  };

  NoiseSpec noise;
  noise.kind = NoiseSpec::Kind::MinibatchCovariance;
  noise.batch = batch;
  StochasticOracle oracle(base, noise, seed);
  oracle.set_sampler(sampler);
  return oracle;
}

}  // namespace adaprox
