#include "symsys/coefficient_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "dsl_parser.hpp"
#include "symsys/errors.hpp"

namespace symsys {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_endpoint(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// A point strictly inside the interval, finite.
double interior_point(const Interval& s) {
  const bool lf = std::isfinite(s.left);
  const bool rf = std::isfinite(s.right);
  if (lf && rf) return 0.5 * (s.left + s.right);
  if (lf) return s.left + 1.0;
  if (rf) return s.right - 1.0;
  return 0.0;
}

}  // namespace

// Interval ------------------------------------------------------------------

Interval Interval::real_line() { return {-kInf, kInf, false, false}; }
Interval Interval::closed(double a, double b) { return {a, b, true, true}; }
Interval Interval::half_open(double a, double b) { return {a, b, true, false}; }

bool Interval::contains(double x) const {
  if (x < left || x > right) return false;
  if (x == left && !left_closed) return false;
  if (x == right && !right_closed) return false;
  return true;
}

bool Interval::is_real_line() const { return std::isinf(left) && std::isinf(right) && left < 0 && right > 0; }
bool Interval::is_half_closed() const { return std::isfinite(left) && left_closed && !right_closed; }
bool Interval::left_finite() const { return std::isfinite(left); }
bool Interval::right_finite() const { return std::isfinite(right); }

std::string Interval::to_string() const {
  return std::string(left_closed ? "[" : "(") + format_endpoint(left) + ", " + format_endpoint(right) +
         (right_closed ? "]" : ")");
}

Interval parse_interval(std::string_view text) {
  detail::DslParser p(text);
  Interval out = p.interval();
  if (!p.at_end()) p.fail("unexpected trailing input after interval");
  return out;
}

Interval intersect(const Interval& a, const Interval& b) {
  Interval out;
  if (a.left > b.left) {
    out.left = a.left;
    out.left_closed = a.left_closed;
  } else if (b.left > a.left) {
    out.left = b.left;
    out.left_closed = b.left_closed;
  } else {
    out.left = a.left;
    out.left_closed = a.left_closed && b.left_closed;
  }
  if (a.right < b.right) {
    out.right = a.right;
    out.right_closed = a.right_closed;
  } else if (b.right < a.right) {
    out.right = b.right;
    out.right_closed = b.right_closed;
  } else {
    out.right = a.right;
    out.right_closed = a.right_closed && b.right_closed;
  }
  if (!(out.left < out.right)) throw InputError("intervals " + a.to_string() + " and " + b.to_string() + " do not overlap");
  return out;
}

// CoefficientField ----------------------------------------------------------

CoefficientField::CoefficientField(int rows, int cols, std::vector<FieldPiece> pieces)
    : rows_(rows), cols_(cols), pieces_(std::move(pieces)) {
  if (rows_ < 1 || cols_ < 1) throw InputError("coefficient field must have positive dimensions");
  if (pieces_.empty()) throw InputError("coefficient field needs at least one piece");
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const FieldPiece& p = pieces_[k];
    if (p.entries.size() != static_cast<std::size_t>(rows_ * cols_))
      throw InputError("dimension mismatch: piece " + std::to_string(k) + " is not " + std::to_string(rows_) +
                       "x" + std::to_string(cols_));
    if (!(p.span.left < p.span.right)) throw InputError("empty piece interval " + p.span.to_string());
    if (k == 0) continue;
    const Interval& prev = pieces_[k - 1].span;
    if (prev.right < p.span.left)
      throw InputError("gap between pieces " + prev.to_string() + " and " + p.span.to_string());
    if (prev.right > p.span.left)
      throw InputError("overlapping pieces " + prev.to_string() + " and " + p.span.to_string());
    if (prev.right_closed && p.span.left_closed)
      throw InputError("overlapping pieces " + prev.to_string() + " and " + p.span.to_string());
    if (!prev.right_closed && !p.span.left_closed)
      throw InputError("gap at x=" + format_endpoint(p.span.left) + " between pieces");
  }
}

CoefficientField CoefficientField::constant(const CMatrix& value, Interval domain) {
  FieldPiece piece{domain, {}};
  for (Eigen::Index r = 0; r < value.rows(); ++r)
    for (Eigen::Index c = 0; c < value.cols(); ++c) piece.entries.push_back(Expression::constant(value(r, c)));
  return CoefficientField(static_cast<int>(value.rows()), static_cast<int>(value.cols()), {std::move(piece)});
}

CoefficientField CoefficientField::zero(int rows, int cols, Interval domain) {
  return constant(CMatrix::Zero(rows, cols), domain);
}

CoefficientField CoefficientField::identity(int n, std::complex<double> scale, Interval domain) {
  return constant(CMatrix::Identity(n, n) * scale, domain);
}

Interval CoefficientField::domain() const {
  Interval d = pieces_.front().span;
  d.right = pieces_.back().span.right;
  d.right_closed = pieces_.back().span.right_closed;
  return d;
}

std::vector<double> CoefficientField::breakpoints() const {
  std::vector<double> out;
  for (std::size_t k = 1; k < pieces_.size(); ++k) out.push_back(pieces_[k].span.left);
  return out;
}

std::size_t CoefficientField::piece_index(double x) const {
  // Last piece whose left end lies at or before x.
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const FieldPiece& p) { return v < p.span.left; });
  if (it != pieces_.begin()) {
    const std::size_t k = static_cast<std::size_t>(std::distance(pieces_.begin(), it)) - 1;
    if (pieces_[k].span.contains(x)) return k;
    if (k > 0 && pieces_[k - 1].span.contains(x)) return k - 1;
  }
  throw DomainError("x=" + format_endpoint(x) + " lies outside the field domain " + domain().to_string());
}

CMatrix CoefficientField::evaluate(double x) const { return evaluate_piece(piece_index(x), x); }

CMatrix CoefficientField::evaluate_piece(std::size_t piece, double x) const {
  const FieldPiece& p = pieces_.at(piece);
  CMatrix out(rows_, cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      try {
        out(r, c) = p.entries[static_cast<std::size_t>(r * cols_ + c)].evaluate(x);
      } catch (const EvaluationError& e) {
        throw EvaluationError(e.reason(), x, r, c);
      }
    }
  }
  return out;
}

CoefficientField CoefficientField::differentiate() const {
  std::vector<FieldPiece> out;
  out.reserve(pieces_.size());
  for (const FieldPiece& p : pieces_) {
    FieldPiece d{p.span, {}};
    d.entries.reserve(p.entries.size());
    for (const Expression& e : p.entries) d.entries.push_back(e.derivative());
    out.push_back(std::move(d));
  }
  return CoefficientField(rows_, cols_, std::move(out));
}

bool CoefficientField::has_kink() const {
  for (const FieldPiece& p : pieces_)
    for (const Expression& e : p.entries)
      if (e.has_kink()) return true;
  return false;
}

CoefficientField CoefficientField::operator-() const {
  std::vector<FieldPiece> out = pieces_;
  for (FieldPiece& p : out)
    for (Expression& e : p.entries) e = -e;
  return CoefficientField(rows_, cols_, std::move(out));
}

CoefficientField CoefficientField::refined(const std::vector<double>& breaks, const Interval& dom) const {
  std::vector<double> cuts;
  for (double b : breaks)
    if (b > dom.left && b < dom.right) cuts.push_back(b);
  for (double b : breakpoints())
    if (b > dom.left && b < dom.right) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<FieldPiece> out;
  double left = dom.left;
  for (std::size_t k = 0; k <= cuts.size(); ++k) {
    const double right = k < cuts.size() ? cuts[k] : dom.right;
    Interval span{left, right, k == 0 ? dom.left_closed : true, k == cuts.size() ? dom.right_closed : false};
    const std::size_t source = piece_index(interior_point(span));
    out.push_back({span, pieces_[source].entries});
    left = right;
  }
  return CoefficientField(rows_, cols_, std::move(out));
}

CoefficientField CoefficientField::block(const std::vector<std::vector<CoefficientField>>& blocks) {
  if (blocks.empty() || blocks.front().empty()) throw InputError("block: no blocks given");
  const std::size_t brows = blocks.size();
  const std::size_t bcols = blocks.front().size();
  Interval dom = blocks[0][0].domain();
  std::vector<double> breaks;
  std::vector<int> row_heights(brows), col_widths(bcols);
  for (std::size_t i = 0; i < brows; ++i) {
    if (blocks[i].size() != bcols) throw InputError("block: ragged block layout");
    for (std::size_t j = 0; j < bcols; ++j) {
      const CoefficientField& f = blocks[i][j];
      if (j == 0) row_heights[i] = f.rows();
      if (i == 0) col_widths[j] = f.cols();
      if (f.rows() != row_heights[i] || f.cols() != col_widths[j]) throw InputError("block: incompatible block sizes");
      dom = intersect(dom, f.domain());
      const auto b = f.breakpoints();
      breaks.insert(breaks.end(), b.begin(), b.end());
    }
  }
  int rows = 0, cols = 0;
  for (int h : row_heights) rows += h;
  for (int w : col_widths) cols += w;

  std::vector<std::vector<CoefficientField>> ref(brows);
  for (std::size_t i = 0; i < brows; ++i)
    for (std::size_t j = 0; j < bcols; ++j) ref[i].push_back(blocks[i][j].refined(breaks, dom));

  const std::size_t npieces = ref[0][0].pieces().size();
  std::vector<FieldPiece> out;
  for (std::size_t k = 0; k < npieces; ++k) {
    FieldPiece piece{ref[0][0].pieces()[k].span, std::vector<Expression>(static_cast<std::size_t>(rows * cols))};
    int r0 = 0;
    for (std::size_t i = 0; i < brows; ++i) {
      int c0 = 0;
      for (std::size_t j = 0; j < bcols; ++j) {
        const CoefficientField& f = ref[i][j];
        const FieldPiece& src = f.pieces()[k];
        for (int r = 0; r < f.rows(); ++r)
          for (int c = 0; c < f.cols(); ++c)
            piece.entries[static_cast<std::size_t>((r0 + r) * cols + c0 + c)] =
                src.entries[static_cast<std::size_t>(r * f.cols() + c)];
        c0 += col_widths[j];
      }
      r0 += row_heights[i];
    }
    out.push_back(std::move(piece));
  }
  return CoefficientField(rows, cols, std::move(out));
}

std::string CoefficientField::to_string() const {
  auto matrix_text = [&](const FieldPiece& p) {
    std::string s = "[";
    for (int r = 0; r < rows_; ++r) {
      s += r ? ", [" : "[";
      for (int c = 0; c < cols_; ++c) {
        if (c) s += ", ";
        s += p.entries[static_cast<std::size_t>(r * cols_ + c)].to_string();
      }
      s += "]";
    }
    return s + "]";
  };
  if (pieces_.size() == 1 && pieces_.front().span.is_real_line()) return matrix_text(pieces_.front());
  std::string out;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    if (k) out += ";\n";
    out += "on " + pieces_[k].span.to_string() + ": " + matrix_text(pieces_[k]);
  }
  return out + ";";
}

namespace {

CoefficientField parse_field(std::string_view text, int rows, int cols) {
  detail::DslParser p(text);
  std::vector<FieldPiece> pieces;
  auto to_piece = [&](const Interval& span, std::vector<std::vector<Expression>> m) {
    FieldPiece piece{span, {}};
    for (auto& row : m)
      for (auto& e : row) piece.entries.push_back(std::move(e));
    const int r = static_cast<int>(m.size());
    const int c = static_cast<int>(m.front().size());
    if (rows > 0 && (r != rows || c != cols))
      p.fail("dimension mismatch: expected " + std::to_string(rows) + "x" + std::to_string(cols) + ", got " +
             std::to_string(r) + "x" + std::to_string(c));
    rows = r;
    cols = c;
    pieces.push_back(std::move(piece));
  };

  if (p.consume_keyword("on")) {
    do {
      const Interval span = p.interval();
      p.expect(':');
      to_piece(span, p.matrix());
      p.consume(';');
    } while (p.consume_keyword("on"));
  } else {
    p.skip_space();
    if (p.at_end()) p.fail("empty matrix function");
    detail::DslParser probe(text);
    if (probe.consume('[')) {
      to_piece(Interval::real_line(), p.matrix());
    } else {
      // Scalar shorthand for 1x1 fields.
      to_piece(Interval::real_line(), {{p.expression()}});
    }
  }
  if (!p.at_end()) p.fail("unexpected trailing input");
  return CoefficientField(rows, cols, std::move(pieces));
}

}  // namespace

CoefficientField parse_matrix_function(std::string_view text, int rows, int cols) {
  if (rows < 1 || cols < 1) throw InputError("parse_matrix_function: dimensions must be positive");
  return parse_field(text, rows, cols);
}

CoefficientField parse_matrix_function(std::string_view text) { return parse_field(text, 0, 0); }

}  // namespace symsys
