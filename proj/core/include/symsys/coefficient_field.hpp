#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "symsys/expression.hpp"
#include "symsys/linalg.hpp"

namespace symsys {

/// Interval with extended-real endpoints.
struct Interval {
  double left = 0.0;
  double right = 0.0;
  bool left_closed = true;
  bool right_closed = false;

  static Interval real_line();
  static Interval closed(double a, double b);
  static Interval half_open(double a, double b);  // [a, b)

  bool contains(double x) const;
  bool is_real_line() const;
  /// [a, b) with a finite: the half-closed case of the deficiency theory.
  bool is_half_closed() const;
  bool left_finite() const;
  bool right_finite() const;
  double length() const { return right - left; }
  std::string to_string() const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Parse "[a, b)", "(-inf, inf)", ... Throws SyntaxError.
Interval parse_interval(std::string_view text);

/// One piece of a CoefficientField: a subinterval and a rows x cols grid of expressions
/// (row-major).
struct FieldPiece {
  Interval span;
  std::vector<Expression> entries;
};

/// Matrix-valued function of x, piecewise over a partition of its domain.
class CoefficientField {
 public:
  CoefficientField() = default;

  /// Pieces must be sorted and partition their union without gaps or overlaps.
  CoefficientField(int rows, int cols, std::vector<FieldPiece> pieces);

  static CoefficientField constant(const CMatrix& value, Interval domain = Interval::real_line());
  static CoefficientField zero(int rows, int cols, Interval domain = Interval::real_line());
  static CoefficientField identity(int n, std::complex<double> scale = 1.0,
                                   Interval domain = Interval::real_line());

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<FieldPiece>& pieces() const { return pieces_; }
  Interval domain() const;

  /// Interior piece boundaries (ascending).
  std::vector<double> breakpoints() const;

  /// Index of the piece containing x (a point on a boundary belongs to the piece whose
  /// closed endpoint it is). Throws DomainError.
  std::size_t piece_index(double x) const;

  /// Evaluate the piece containing x. Throws DomainError or EvaluationError (with entry).
  CMatrix evaluate(double x) const;

  /// Evaluate piece `piece` at x (x may sit on the piece boundary).
  CMatrix evaluate_piece(std::size_t piece, double x) const;

  CoefficientField differentiate() const;
  bool has_kink() const;

  CoefficientField operator-() const;

  /// Restrict pieces to a common refinement with `breaks` and the interval `domain`.
  CoefficientField refined(const std::vector<double>& breaks, const Interval& domain) const;

  /// Assemble a block matrix field. All blocks in a block-row share a row count and all
  /// blocks in a block-column share a column count. Pieces use the common refinement of
  /// the blocks' breakpoints over the intersection of their domains.
  static CoefficientField block(const std::vector<std::vector<CoefficientField>>& blocks);

  /// DSL text; a single-piece field over the real line prints as a bare matrix.
  std::string to_string() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<FieldPiece> pieces_;
};

/// Parse either a matrix literal "[[..],[..]]" or a piecewise definition
/// "on [a,b): [[..]]; on [b,inf): [[..]]". A bare matrix is defined on the real line.
CoefficientField parse_matrix_function(std::string_view text, int rows, int cols);

inline CoefficientField parse_matrix_function(std::string_view text, int n) {
  return parse_matrix_function(text, n, n);
}

/// Parse with dimensions inferred from the text.
CoefficientField parse_matrix_function(std::string_view text);

/// Intersection of two intervals; throws InputError if empty.
Interval intersect(const Interval& a, const Interval& b);

}  // namespace symsys
