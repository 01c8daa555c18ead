#include <algorithm>
#include <cmath>
#include <sstream>

#include "kgtx/quadrature.hpp"
#include "kgtx/spectral.hpp"

namespace kgtx {

namespace {

// |Ff(q)| scaled back to q = Q under the assumed power decay, maximized over
// [Q/2, Q] so that zeros of an oscillating spectrum do not hide the envelope.
double spectral_envelope(const ProfileTransform& tr, double q_max, double power) {
  constexpr int kSamples = 64;
  double env = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    const double q = q_max * (0.5 + 0.5 * i / kSamples);
    env = std::max(env, std::abs(tr.fourier(q)) * std::pow(q / q_max, power));
  }
  return env;
}

double max_support_end(const InitialDatum& d) {
  double hi = 0.0;
  if (!d.f1.is_zero()) hi = std::max(hi, d.f1.support().second);
  if (!d.f2.is_zero()) hi = std::max(hi, d.f2.support().second);
  return hi;
}

double narrowest_width(const InitialDatum& d) {
  double w = 1.0;
  for (const Profile* f : {&d.f1, &d.f2})
    for (const Bump& b : f->bumps()) w = std::min(w, b.width);
  return w;
}

}  // namespace

SpectralSolver::SpectralSolver(const PhysicsParams& params, InitialDatum datum, SpectralConfig cfg)
    : params_(params), datum_(std::move(datum)), cfg_(cfg) {
  datum_.validate();
  if (!(cfg_.tolerance > 0.0)) throw ConfigError("spectral tolerance must be positive");
  if (!(cfg_.t_max >= 0.0) || !(cfg_.x_max > 0.0))
    throw ConfigError("spectral evaluation window must be nonnegative");
  if (cfg_.n_per_panel < 2) throw ConfigError("n_per_panel must be at least 2");
  if (!(cfg_.tail_decay_power > 1.0)) throw ConfigError("tail_decay_power must exceed 1");
  if (cfg_.q_max < 0.0) throw ConfigError("q_max must be nonnegative");

  const double c = params_.c();
  const double peak = datum_.f1.amplitude_bound() + datum_.f2.amplitude_bound();
  const double p = cfg_.tail_decay_power;
  if (peak == 0.0) return;  // zero data: every table stays empty

  // Cutoff: grow Q until the tail estimate of the wavenumber integrals is
  // below tolerance * peak.
  auto tail_at = [&](double q, ProfileTransform& t1, ProfileTransform& t2) {
    t1 = ProfileTransform(datum_.f1, q);
    t2 = ProfileTransform(datum_.f2, q);
    const double env = std::max(t1.empty() ? 0.0 : spectral_envelope(t1, q, p),
                                t2.empty() ? 0.0 : spectral_envelope(t2, q, p));
    return (2.0 / kPi) * env * q / (p - 1.0);
  };
  ProfileTransform tr1, tr2;
  if (cfg_.q_max > 0.0) {
    q_max_ = cfg_.q_max;
    tail_bound_ = tail_at(q_max_, tr1, tr2);
  } else {
    q_max_ = 8.0 * kPi / narrowest_width(datum_);
    for (;;) {
      tail_bound_ = tail_at(q_max_, tr1, tr2);
      if (tail_bound_ <= cfg_.tolerance * peak) break;
      q_max_ *= 1.5;
      if (q_max_ > cfg_.q_max_limit) {
        std::ostringstream msg;
        msg << "frequency cutoff exceeded " << cfg_.q_max_limit << " with tail estimate "
            << tail_bound_ << " > " << cfg_.tolerance * peak;
        throw QuadratureError(msg.str());
      }
    }
  }

  // Refinement check on the inner transforms at the top frequency.
  for (const auto& [f, tr] : {std::pair{&datum_.f1, &tr1}, std::pair{&datum_.f2, &tr2}}) {
    if (tr->empty()) continue;
    const ProfileTransform fine(*f, q_max_, 8);
    const double diff = std::abs(fine.fourier(q_max_) - tr->fourier(q_max_));
    if (diff > 1e-2 * cfg_.tolerance * peak) {
      std::ostringstream msg;
      msg << "inner transform not converged at q = " << q_max_ << ": refinement changed it by "
          << diff;
      throw QuadratureError(msg.str());
    }
  }

  const double reach = cfg_.x_max + max_support_end(datum_);
  QuadOptions opts;
  opts.n_per_panel = cfg_.n_per_panel;
  opts.tail_decay_power = p;

  // Wavenumber form.
  if (datum_.f2.is_zero()) {
    opts.max_panel_width = 6.0 / (reach + c * cfg_.t_max);
    const double kc = params_.cut_frequency();
    std::vector<double> breaks{0.0};
    if (kc > 0.0) breaks.push_back(kc);
    const QuadRule rule = panel_rule(breaks, q_max_, opts);
    const std::size_t n = rule.nodes.size();
    q_nodes_ = rule.nodes;
    q_weights_.resize(n);
    q_omega_.resize(n);
    q_refl_.resize(n);
    q_trans_.resize(n);
    q_sc_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double q = rule.nodes[i];
      const Complex A = tr1.fourier(q);
      q_weights_[i] = rule.weights[i] / kPi;
      q_omega_[i] = std::sqrt(params_.a1() + c * c * q * q);
      q_refl_[i] = A + reflection_coeff(q, params_) * std::conj(A);
      q_trans_[i] = transmission_coeff(q, params_) * std::conj(A);
      q_sc_[i] = s_composite(q, params_) / c;
    }
  }

  // Frequency form.
  {
    opts.max_panel_width = 6.0 / (reach / c + cfg_.t_max);
    const double a1 = params_.a1(), a2 = params_.a2();
    std::vector<double> breaks{std::sqrt(a1)};
    if (a2 > a1) breaks.push_back(std::sqrt(a2));
    const double w_top = std::sqrt(a1 + c * c * q_max_ * q_max_);
    const QuadRule rule = panel_rule(breaks, w_top, opts);
    const std::size_t n = rule.nodes.size();
    w_nodes_ = rule.nodes;
    w_weights_.resize(n);
    w_k1_.resize(n);
    w_direct_.resize(n);
    w_mirror_.resize(n);
    const double c2 = c * c;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = rule.nodes[i];
      const double w2 = w * w;
      const Complex K1(0.0, -std::sqrt(std::max(0.0, w2 - a1) / c2));
      const Complex K2 = w2 <= a2 ? Complex(std::sqrt((a2 - w2) / c2), 0.0)
                                  : Complex(0.0, -std::sqrt((w2 - a2) / c2));
      const Complex J1 = tr1.empty() ? Complex{} : tr1.laplace(K1);
      const Complex J2 = tr2.empty() ? Complex{} : tr2.laplace(K2);
      const Complex rho = (K1 - K2) / (K1 + K2);
      w_weights_[i] = rule.weights[i] / (2.0 * kPi * c2);
      w_k1_[i] = K1;
      w_direct_[i] = 2.0 * w / K1 * J1;
      w_mirror_[i] = rho * (2.0 * w / K1) * J1 + 4.0 * w / (K1 + K2) * J2;
    }
  }
}

void SpectralSolver::check_point(double t, double x) const {
  const double slack = 1.0 + 1e-12;
  if (!(t >= 0.0 && t <= cfg_.t_max * slack))
    throw ConfigError("time outside the spectral evaluation window [0, t_max]");
  if (!(x >= 0.0 && x <= cfg_.x_max * slack))
    throw ConfigError("position outside the spectral evaluation window [0, x_max]");
}

void SpectralSolver::require_no_f2() const {
  if (!datum_.f2.is_zero())
    throw ConfigError("the wavenumber representation requires f2 = 0; use u1_frequency");
}

double SpectralSolver::u1_frequency(double t, double x) const {
  check_point(t, x);
  double acc = 0.0;
  for (std::size_t i = 0; i < w_nodes_.size(); ++i) {
    const Complex e = std::exp(w_k1_[i] * x);  // unit modulus
    const Complex v = w_direct_[i] * e + w_mirror_[i] * std::conj(e);
    acc += w_weights_[i] * std::cos(w_nodes_[i] * t) * v.imag();
  }
  return acc;
}

double SpectralSolver::u1_wavenumber(double t, double x) const {
  check_point(t, x);
  require_no_f2();
  double acc = 0.0;
  for (std::size_t i = 0; i < q_nodes_.size(); ++i)
    acc += q_weights_[i] * std::cos(q_omega_[i] * t) *
           (q_refl_[i] * std::polar(1.0, q_nodes_[i] * x)).real();
  return acc;
}

double SpectralSolver::u2_wavenumber(double t, double x) const {
  check_point(t, x);
  require_no_f2();
  double acc = 0.0;
  const Complex I(0.0, 1.0);
  for (std::size_t i = 0; i < q_nodes_.size(); ++i)
    acc += q_weights_[i] * std::cos(q_omega_[i] * t) *
           (q_trans_[i] * std::exp(I * q_sc_[i] * x)).real();
  return acc;
}

BranchField SpectralSolver::sample(double t, const BranchGrid& grid) const {
  check_point(t, grid.extent());
  require_no_f2();
  BranchField out(grid);
  const std::size_t n = grid.n();
  const double h = grid.h();
  const Complex I(0.0, 1.0);
  constexpr std::size_t kBlock = 256;
  // Node-major with a phase recurrence along x, re-anchored every block.
  for (std::size_t m = 0; m < q_nodes_.size(); ++m) {
    const double wc = q_weights_[m] * std::cos(q_omega_[m] * t);
    const Complex k1 = I * q_nodes_[m];
    const Complex k2 = I * q_sc_[m];
    const Complex step1 = std::exp(k1 * h), step2 = std::exp(k2 * h);
    for (std::size_t i0 = 0; i0 < n; i0 += kBlock) {
      const double x0 = grid.x(i0);
      Complex e1 = q_refl_[m] * std::exp(k1 * x0);
      Complex e2 = q_trans_[m] * std::exp(k2 * x0);
      const std::size_t i1 = std::min(n, i0 + kBlock);
      for (std::size_t i = i0; i < i1; ++i) {
        out.u1[i] += wc * e1.real();
        out.u2[i] += wc * e2.real();
        e1 *= step1;
        e2 *= step2;
      }
    }
  }
  // Continuity holds analytically (1 + C_R = T); remove the rounding gap.
  const double node = 0.5 * (out.u1[0] + out.u2[0]);
  out.u1[0] = out.u2[0] = node;
  return out;
}

}  // namespace kgtx
