#pragma once
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "momcbe/rational.hpp"
#include "momcbe/signature.hpp"

namespace momcbe {

// Evaluates symmetric polynomials in a fixed point tuple by summing over
// interlacing chains. One session = fixed points and parameter; the memo table
// is single-writer and keyed by sub-signature (its length fixes which prefix
// of the points it uses).
class jack_evaluator {
 public:
  jack_evaluator(std::vector<std::complex<double>> points, rational delta,
                 uint64_t memo_cap = 4'000'000);

  // Branching sum with exact psi coefficients; points enter as floating
  // complex monomials. la.size() must not exceed the point count.
  std::complex<double> eval(const signature& la);

  size_t memo_size() const { return memo_.size(); }

 private:
  std::complex<double> eval_rec(const signature& la);

  std::vector<std::complex<double>> points_;
  std::vector<std::vector<std::complex<double>>> powers_;
  rational delta_;
  uint64_t memo_cap_;
  std::map<signature, std::complex<double>> memo_;
};

std::complex<double> jack_eval(const signature& la, const std::vector<std::complex<double>>& points,
                               const rational& delta);

// Independent oracle: same chain recursion with every weight literally 1
// (no psi code involved). Equals jack_eval at delta == 1.
std::complex<double> schur_eval(const signature& la, const std::vector<std::complex<double>>& points);

// Point layout for joint absolute-power expectations: each of the k angles is
// repeated 2q times and the row (N^(kq), 0^(kq)) is evaluated there.
struct repeated_point_spec {
  int N = 1;
  int k = 1;
  int q = 1;
  std::vector<double> angles;  // size k
};

// Real value of the joint expectation; throws numeric_error if the imaginary
// residue exceeds 1e-9.
double matsumoto_expectation(const repeated_point_spec& spec, const rational& delta);

}  // namespace momcbe
