#include "qcomp/dictionary.hpp"

#include <numbers>
#include <stdexcept>

namespace qcomp {

std::string scheme_name(InterpolationScheme s) {
  switch (s) {
    case InterpolationScheme::none: return "none";
    case InterpolationScheme::taylor1: return "taylor1";
    case InterpolationScheme::taylor2: return "taylor2";
  }
  return "none";
}

Grid Grid::uniform(double span, int n_bins) {
  if (n_bins < 1) {
    throw std::invalid_argument("Grid: n_bins must be >= 1");
  }
  Grid g;
  g.n_bins = n_bins;
  g.step = span / static_cast<double>(n_bins);
  g.bins.resize(static_cast<std::size_t>(n_bins));
  for (int n = 0; n < n_bins; ++n) {
    g.bins[static_cast<std::size_t>(n)] = -0.5 * span + g.step * n;
  }
  return g;
}

InterpolatedDictionary::InterpolatedDictionary(const RadarConfig& cfg,
                                               int n_bins,
                                               InterpolationScheme scheme)
    : grid_(Grid::uniform(cfg.span(), n_bins)),
      scheme_(scheme),
      m_samples_(cfg.m_samples),
      span_(cfg.span()) {
  const std::size_t m = static_cast<std::size_t>(m_samples_);
  atoms_.resize(static_cast<std::size_t>(n_bins) * m);
  atoms_re_.resize(atoms_.size());
  atoms_im_.resize(atoms_.size());
  for (int n = 0; n < n_bins; ++n) {
    const ComplexSignal a = steering_atom(cfg, grid_.bins[static_cast<std::size_t>(n)]);
    const std::size_t row = static_cast<std::size_t>(n) * m;
    for (std::size_t j = 0; j < m; ++j) {
      atoms_[row + j] = a[j];
      atoms_re_[row + j] = a[j].real();
      atoms_im_[row + j] = a[j].imag();
    }
  }

  const int order = interpolant_count();
  derivative_factors_.resize(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) {
    auto& factor = derivative_factors_[static_cast<std::size_t>(i)];
    factor.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
      const std::complex<double> w(0.0, -2.0 * std::numbers::pi *
                                            static_cast<double>(j) / span_);
      std::complex<double> p(1.0, 0.0);
      for (int q = 0; q < i; ++q) p *= w;
      factor[j] = p;
    }
  }
}

std::span<const std::complex<double>> InterpolatedDictionary::atom(
    int bin) const {
  assert(bin >= 0 && bin < grid_.n_bins);
  const std::size_t m = static_cast<std::size_t>(m_samples_);
  return {atoms_.data() + static_cast<std::size_t>(bin) * m, m};
}

void InterpolatedDictionary::fill_block(
    int bin, Eigen::Ref<Eigen::MatrixXcd> columns) const {
  const int order = interpolant_count();
  const auto a = atom(bin);
  for (int i = 0; i < order; ++i) {
    const auto& factor = derivative_factors_[static_cast<std::size_t>(i)];
    for (int j = 0; j < m_samples_; ++j) {
      columns(j, i) = factor[static_cast<std::size_t>(j)] *
                      a[static_cast<std::size_t>(j)];
    }
  }
}

Eigen::MatrixXcd InterpolatedDictionary::block(int bin) const {
  Eigen::MatrixXcd d(m_samples_, interpolant_count());
  fill_block(bin, d);
  return d;
}

ComplexSignal InterpolatedDictionary::interpolate_atom(int bin,
                                                       double t) const {
  // Valid only within half a step of the bin centre.
  assert(std::abs(t) <= 0.5 * grid_.step * (1.0 + 1e-12));
  const std::array<double, 3> coeff = mapping(scheme_, t, grid_.step);
  const int order = interpolant_count();
  const auto a = atom(bin);
  ComplexSignal out(static_cast<std::size_t>(m_samples_),
                    std::complex<double>(0.0, 0.0));
  for (int i = 0; i < order; ++i) {
    const auto& factor = derivative_factors_[static_cast<std::size_t>(i)];
    const double c = coeff[static_cast<std::size_t>(i)];
    if (c == 0.0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] += c * factor[j] * a[j];
    }
  }
  return out;
}

InterpolatedDictionary build_dictionary(const RadarConfig& cfg, int n_bins,
                                        InterpolationScheme scheme) {
  return InterpolatedDictionary(cfg, n_bins, scheme);
}

}  // namespace qcomp
