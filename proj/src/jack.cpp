#include "momcbe/jack.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "momcbe/errors.hpp"
#include "momcbe/weights.hpp"

namespace momcbe {

jack_evaluator::jack_evaluator(std::vector<std::complex<double>> points, rational delta,
                               uint64_t memo_cap)
    : points_(std::move(points)), delta_(std::move(delta)), memo_cap_(memo_cap) {
  if (delta_ <= 0) throw contract_error("jack_evaluator: delta must be positive");
}

std::complex<double> jack_evaluator::eval(const signature& la) {
  if (!is_signature(la)) throw contract_error("jack_evaluator: not a signature");
  if (la.size() > points_.size()) throw contract_error("jack_evaluator: more parts than points");
  if (powers_.empty()) {
    // powers_[m][e] = points_[m]^e, filled lazily up to the top row's largest part.
    const int max_part = la.empty() ? 0 : la.front();
    powers_.resize(points_.size());
    for (size_t m = 0; m < points_.size(); ++m) {
      powers_[m].resize(max_part + 1);
      powers_[m][0] = 1.0;
      for (int e = 1; e <= max_part; ++e) powers_[m][e] = powers_[m][e - 1] * points_[m];
    }
  }
  if (!la.empty() && powers_[0].size() < static_cast<size_t>(la.front()) + 1) {
    throw contract_error("jack_evaluator: session built for smaller parts");
  }
  return eval_rec(la);
}

std::complex<double> jack_evaluator::eval_rec(const signature& la) {
  const size_t m = la.size();
  if (m == 0) return 1.0;
  if (auto it = memo_.find(la); it != memo_.end()) return it->second;
  std::complex<double> acc = 0.0;
  const long total = sig_sum(la);
  for_each_shrink(la, std::nullopt, [&](const signature& nu) {
    const double coeff = to_double(psi(nu, la, delta_));
    const long drop = total - sig_sum(nu);
    acc += coeff * powers_[m - 1][drop] * eval_rec(nu);
  });
  if (memo_.size() >= memo_cap_) {
    throw resource_error("jack_evaluator: memo table exceeded cap " + std::to_string(memo_cap_));
  }
  memo_.emplace(la, acc);
  return acc;
}

std::complex<double> jack_eval(const signature& la, const std::vector<std::complex<double>>& points,
                               const rational& delta) {
  jack_evaluator session(points, delta);
  return session.eval(la);
}

std::complex<double> schur_eval(const signature& la, const std::vector<std::complex<double>>& points) {
  if (!is_signature(la)) throw contract_error("schur_eval: not a signature");
  if (la.size() > points.size()) throw contract_error("schur_eval: more parts than points");
  std::map<signature, std::complex<double>> memo;
  std::function<std::complex<double>(const signature&)> rec =
      [&](const signature& sig) -> std::complex<double> {
    const size_t m = sig.size();
    if (m == 0) return 1.0;
    if (auto it = memo.find(sig); it != memo.end()) return it->second;
    std::complex<double> acc = 0.0;
    const long total = sig_sum(sig);
    for_each_shrink(sig, std::nullopt, [&](const signature& nu) {
      acc += std::pow(points[m - 1], static_cast<double>(total - sig_sum(nu))) * rec(nu);
    });
    memo.emplace(sig, acc);
    return acc;
  };
  return rec(la);
}

double matsumoto_expectation(const repeated_point_spec& spec, const rational& delta) {
  if (spec.N < 0 || spec.k < 1 || spec.q < 1) {
    throw contract_error("matsumoto_expectation: need N >= 0, k >= 1, q >= 1");
  }
  if (static_cast<int>(spec.angles.size()) != spec.k) {
    throw contract_error("matsumoto_expectation: need one angle per factor");
  }
  const int kq = spec.k * spec.q;
  std::vector<std::complex<double>> points;
  points.reserve(2 * kq);
  for (double t : spec.angles) {
    const std::complex<double> z = std::polar(1.0, t);
    for (int r = 0; r < 2 * spec.q; ++r) points.push_back(z);
  }
  signature row(2 * kq, 0);
  std::fill(row.begin(), row.begin() + kq, spec.N);
  const std::complex<double> value = jack_eval(row, points, delta);
  // Divide out the reference phase exp(i N q sum t_j).
  double phase = 0.0;
  for (double t : spec.angles) phase += t;
  phase *= static_cast<double>(spec.N) * spec.q;
  const std::complex<double> normalized = value * std::polar(1.0, -phase);
  if (std::fabs(normalized.imag()) > 1e-9) {
    throw numeric_error("matsumoto_expectation: imaginary residue " +
                        std::to_string(normalized.imag()));
  }
  return normalized.real();
}

}  // namespace momcbe
