#include "symsys/matrix_function.hpp"

#include <optional>

#include "symsys/errors.hpp"

namespace symsys {

struct MatrixFunction::Impl {
  int rows = 0;
  int cols = 0;
  Interval domain;
  std::vector<double> breaks;
  Eval value;
  Eval derivative;
  std::optional<CoefficientField> field;
  std::optional<CoefficientField> dfield;
};

MatrixFunction::MatrixFunction(CoefficientField field) {
  auto impl = std::make_shared<Impl>();
  impl->rows = field.rows();
  impl->cols = field.cols();
  impl->domain = field.domain();
  impl->breaks = field.breakpoints();
  impl->dfield = field.differentiate();
  impl->field = std::move(field);
  impl_ = std::move(impl);
}

MatrixFunction MatrixFunction::numeric(int rows, int cols, Interval domain, std::vector<double> breakpoints,
                                       Eval value, Eval derivative) {
  if (!value) throw InputError("MatrixFunction::numeric requires a value callable");
  auto impl = std::make_shared<Impl>();
  impl->rows = rows;
  impl->cols = cols;
  impl->domain = domain;
  impl->breaks = std::move(breakpoints);
  impl->value = std::move(value);
  impl->derivative = std::move(derivative);
  MatrixFunction out;
  out.impl_ = std::move(impl);
  return out;
}

int MatrixFunction::rows() const { return impl_ ? impl_->rows : 0; }
int MatrixFunction::cols() const { return impl_ ? impl_->cols : 0; }
Interval MatrixFunction::domain() const { return impl_->domain; }
std::vector<double> MatrixFunction::breakpoints() const { return impl_->breaks; }

CMatrix MatrixFunction::value(double x, double locator) const {
  if (impl_->field) {
    if (!impl_->domain.contains(x)) impl_->field->piece_index(x);  // throws DomainError
    return impl_->field->evaluate_piece(impl_->field->piece_index(locator), x);
  }
  return impl_->value(x, locator);
}

bool MatrixFunction::has_derivative() const { return impl_ && (impl_->dfield || impl_->derivative); }

CMatrix MatrixFunction::derivative(double x, double locator) const {
  if (impl_->dfield) {
    if (!impl_->domain.contains(x)) impl_->field->piece_index(x);
    return impl_->dfield->evaluate_piece(impl_->dfield->piece_index(locator), x);
  }
  if (!impl_->derivative) throw InputError("matrix function has no derivative");
  return impl_->derivative(x, locator);
}

const CoefficientField* MatrixFunction::symbolic() const {
  return impl_ && impl_->field ? &*impl_->field : nullptr;
}

}  // namespace symsys
