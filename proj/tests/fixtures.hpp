#pragma once

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "symsys/coefficient_field.hpp"
#include "symsys/expression.hpp"
#include "symsys/system.hpp"

namespace symsys::testing {

inline CoefficientField field(const std::string& text, int n) { return parse_matrix_function(text, n); }

inline SymmetricSystem example13(Interval interval = Interval::real_line(), std::optional<double> x0 = 0.0) {
  return SymmetricSystem(interval, field("[[0,1],[-1,0]]", 2), field("[[0,0],[0,0]]", 2), field("[[1,0],[0,0]]", 2),
                         x0);
}

inline SymmetricSystem canonical_identity(Interval interval = Interval::real_line(), std::optional<double> x0 = 0.0) {
  return SymmetricSystem(interval, field("[[0,1],[-1,0]]", 2), field("[[0,0],[0,0]]", 2), field("[[1,0],[0,1]]", 2),
                         x0);
}

inline SymmetricSystem free_particle(Interval interval = Interval::real_line()) {
  return sl_embed(field("[[1]]", 1), field("[[0]]", 1), field("[[1]]", 1), interval);
}

inline SymmetricSystem oscillator(Interval interval = Interval::real_line()) {
  return sl_embed(field("[[1]]", 1), field("[[x^2]]", 1), field("[[1]]", 1), interval);
}

inline SquareSystemSpec free_particle_spec() {
  return sturm_liouville_spec(field("[[1]]", 1), field("[[0]]", 1), field("[[1]]", 1), field("[[1]]", 1),
                              Interval::real_line());
}

inline SquareSystemSpec oscillator_spec() {
  return sturm_liouville_spec(field("[[1]]", 1), field("[[x^2]]", 1), field("[[1]]", 1), field("[[1]]", 1),
                              Interval::real_line());
}

/// Literal with full precision for DSL text.
inline std::string lit(double v) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << v << ")";
  return os.str();
}

inline std::string clit(std::complex<double> z) { return "(" + lit(z.real()) + "+" + lit(z.imag()) + "*i)"; }

/// Random valid 2x2 system on the real line with x-dependent J = iK (K Hermitian,
/// indefinite, invertible), B = B_h + J'/2 and H >= 0. Every third system has a
/// rank-one H; every fourth is the non-definite family J constant, B = 0, H = diag(h, 0).
class RandomSystems {
 public:
  explicit RandomSystems(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  std::complex<double> cuniform(double r) { return {uniform(-r, r), uniform(-r, r)}; }

  SymmetricSystem next() {
    ++count_;
    if (count_ % 4 == 0) {
      const double s = uniform(0.2, 1.2), j = uniform(0.5, 2.0);
      std::ostringstream h, jt;
      h << "[[2 + sin(" << lit(s) << "*x)^2, 0], [0, 0]]";
      jt << "[[0, " << lit(j) << "], [" << lit(-j) << ", 0]]";
      return SymmetricSystem(Interval::real_line(), field(jt.str(), 2), CoefficientField::zero(2, 2),
                             field(h.str(), 2), 0.0);
    }
    const double a = uniform(0.3, 1.5), b = uniform(0.3, 1.5), c = uniform(0.3, 1.5);
    const std::complex<double> k2 = cuniform(0.3);
    std::ostringstream k;
    k << "[[1.5 + 0.5*sin(" << lit(a) << "*x), " << clit(k2) << "*sin(" << lit(c) << "*x)], [" << clit(std::conj(k2))
      << "*sin(" << lit(c) << "*x), -1.5 - 0.5*cos(" << lit(b) << "*x)]]";
    const CoefficientField K = field(k.str(), 2);
    const CoefficientField J = scaled(K, {0.0, 1.0});
    const CoefficientField dJ = J.differentiate();

    const double d1 = uniform(-1, 1), d2 = uniform(-1, 1), w = uniform(0.2, 1.0);
    const std::complex<double> e = cuniform(0.5);
    std::ostringstream bh;
    bh << "[[" << lit(d1) << "*cos(" << lit(w) << "*x), " << clit(e) << "], [" << clit(std::conj(e)) << ", "
       << lit(d2) << "]]";
    const CoefficientField Bh = field(bh.str(), 2);
    std::vector<Expression> be(4);
    for (int r = 0; r < 4; ++r) {
      be[r] = Bh.pieces()[0].entries[r] + Expression::constant(0.5) * dJ.pieces()[0].entries[r];
    }
    const CoefficientField B(2, 2, {{Interval::real_line(), be}});

    std::ostringstream h;
    const double s = uniform(0.2, 1.2), t = uniform(0.2, 1.2);
    const std::complex<double> off = cuniform(0.35);
    if (count_ % 3 == 0) {
      h << "[[2 + sin(" << lit(s) << "*x)^2, 0], [0, 0]]";
    } else {
      h << "[[2 + sin(" << lit(s) << "*x)^2, " << clit(off) << "*cos(x)], [" << clit(std::conj(off))
        << "*cos(x), 1 + cos(" << lit(t) << "*x)^2]]";
    }
    return SymmetricSystem(Interval::real_line(), J, B, field(h.str(), 2), 0.0);
  }

  /// Smooth, diagonally dominant (hence invertible) complex 2x2 path.
  CoefficientField gauge() {
    const double a = uniform(0.2, 1.5), b = uniform(0.2, 1.5), c = uniform(0.2, 1.5), d = uniform(0.2, 1.5);
    const std::complex<double> u = cuniform(0.35), v = cuniform(0.35);
    std::ostringstream os;
    os << "[[2 + sin(" << lit(a) << "*x), " << clit(u) << "*cos(" << lit(b) << "*x)], [" << clit(v) << "*sin("
       << lit(c) << "*x), 2 + cos(" << lit(d) << "*x)]]";
    return field(os.str(), 2);
  }

  static CoefficientField scaled(const CoefficientField& f, std::complex<double> s) {
    std::vector<FieldPiece> pieces = f.pieces();
    for (auto& p : pieces) {
      for (auto& e : p.entries) e = Expression::constant(s) * e;
    }
    return CoefficientField(f.rows(), f.cols(), std::move(pieces));
  }

 private:
  std::mt19937_64 rng_;
  int count_ = 0;
};

}  // namespace symsys::testing
