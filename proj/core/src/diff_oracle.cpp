#include "cmseq/diff_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cmseq/errors.hpp"

namespace cmseq {

std::string_view to_string(Property p) { return p == Property::CM ? "CM" : "CA"; }

namespace {

constexpr std::size_t kMaxInclusionExclusionSteps = 24;

bool violates(Property property, const Rational& value, std::uint64_t total_order) {
  if (property == Property::CM) return value.sign() < 0;
  return total_order >= 1 && value.sign() > 0;
}

}  // namespace

Rational forward_diff_1d(const SeqFn& phi, std::uint64_t order, std::uint64_t shift) {
  Rational acc;
  for (std::uint64_t i = 0; i <= order; ++i) {
    Rational term = Rational(binomial(order, i)) * phi(shift + i);
    if (i % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

Rational mixed_diff_2d(const NetFn& f, std::uint64_t j1, std::uint64_t j2, std::uint64_t m,
                       std::uint64_t n) {
  Rational acc;
  for (std::uint64_t i1 = 0; i1 <= j1; ++i1) {
    const Rational c1(binomial(j1, i1));
    for (std::uint64_t i2 = 0; i2 <= j2; ++i2) {
      Rational term = c1 * Rational(binomial(j2, i2)) * f(m + i1, n + i2);
      if ((i1 + i2) % 2 == 0)
        acc += term;
      else
        acc -= term;
    }
  }
  return acc;
}

Rational forward_diff_general(const SeqFn& phi, std::span<const std::uint64_t> steps,
                              std::uint64_t shift) {
  if (steps.empty()) throw InputError("forward_diff_general needs at least one step");
  if (steps.size() > kMaxInclusionExclusionSteps) throw BudgetError("too many difference steps");
  Rational acc;
  const std::uint64_t subsets = std::uint64_t{1} << steps.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::uint64_t s = shift;
    int parity = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        s += steps[i];
        parity ^= 1;
      }
    }
    if (parity)
      acc -= phi(s);
    else
      acc += phi(s);
  }
  return acc;
}

Rational forward_diff_general(const NetFn& f, std::span<const Point2> steps, Point2 shift) {
  if (steps.empty()) throw InputError("forward_diff_general needs at least one step");
  if (steps.size() > kMaxInclusionExclusionSteps) throw BudgetError("too many difference steps");
  Rational acc;
  const std::uint64_t subsets = std::uint64_t{1} << steps.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    Point2 s = shift;
    int parity = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        s[0] += steps[i][0];
        s[1] += steps[i][1];
        parity ^= 1;
      }
    }
    if (parity)
      acc -= f(s[0], s[1]);
    else
      acc += f(s[0], s[1]);
  }
  return acc;
}

DiffReport scan_1d(const SeqFn& phi, Property property, Budget1D budget) {
  if (budget.max_order < 1) throw BudgetError("scan_1d needs max_order >= 1");
  DiffReport report;
  report.property = property;
  report.max_order = {budget.max_order};
  report.max_shift = {budget.max_shift};

  // row[m] holds ∇^j φ(m); each pass shortens the row by one.
  std::vector<Rational> row;
  row.reserve(budget.max_shift + budget.max_order + 1);
  for (std::uint64_t m = 0; m <= budget.max_shift + budget.max_order; ++m) row.push_back(phi(m));

  for (std::uint64_t j = 0; j <= budget.max_order; ++j) {
    if (j > 0) {
      for (std::size_t m = 0; m + 1 < row.size(); ++m) row[m] -= row[m + 1];
      row.pop_back();
    }
    for (std::uint64_t m = 0; m <= budget.max_shift; ++m) {
      if (violates(property, row[m], j)) {
        report.verdict = Verdict::Violation;
        report.witness = DiffWitness{{j}, {m}, row[m]};
        return report;
      }
    }
  }
  return report;
}

DiffReport scan_2d(const NetFn& f, Property property, Budget2D budget) {
  if (budget.max_order_m + budget.max_order_n < 1)
    throw BudgetError("scan_2d needs a total order budget >= 1");
  DiffReport report;
  report.property = property;
  report.max_order = {budget.max_order_m, budget.max_order_n};
  report.max_shift = {budget.max_shift_m, budget.max_shift_n};

  const std::size_t rows = budget.max_shift_m + budget.max_order_m + 1;
  const std::size_t cols = budget.max_shift_n + budget.max_order_n + 1;
  // grid[m][n] holds ∇_{(1,0)}^{j1} f(m, n) for the current j1.
  std::vector<std::vector<Rational>> grid(rows, std::vector<Rational>(cols));
  for (std::size_t m = 0; m < rows; ++m)
    for (std::size_t n = 0; n < cols; ++n) grid[m][n] = f(m, n);

  for (std::uint64_t j1 = 0; j1 <= budget.max_order_m; ++j1) {
    if (j1 > 0) {
      for (std::size_t m = 0; m + 1 < grid.size(); ++m)
        for (std::size_t n = 0; n < cols; ++n) grid[m][n] -= grid[m + 1][n];
      grid.pop_back();
    }
    auto inner = std::vector<std::vector<Rational>>(grid.begin(),
                                                    grid.begin() + static_cast<std::ptrdiff_t>(budget.max_shift_m + 1));
    std::size_t width = cols;
    for (std::uint64_t j2 = 0; j2 <= budget.max_order_n; ++j2) {
      if (j2 > 0) {
        for (auto& line : inner)
          for (std::size_t n = 0; n + 1 < width; ++n) line[n] -= line[n + 1];
        --width;
      }
      for (std::uint64_t m = 0; m <= budget.max_shift_m; ++m) {
        for (std::uint64_t n = 0; n <= budget.max_shift_n; ++n) {
          if (violates(property, inner[m][n], j1 + j2)) {
            report.verdict = Verdict::Violation;
            report.witness = DiffWitness{{j1, j2}, {m, n}, inner[m][n]};
            return report;
          }
        }
      }
    }
  }
  return report;
}

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

DiffReport scan_1d_float(const FloatSeqFn& phi, Property property, Budget1D budget, double tol_rel) {
  if (budget.max_order < 1) throw BudgetError("scan_1d_float needs max_order >= 1");
  DiffReport report;
  report.property = property;
  report.max_order = {budget.max_order};
  report.max_shift = {budget.max_shift};
  report.float_mode = true;

  std::vector<double> values;
  for (std::uint64_t m = 0; m <= budget.max_shift + budget.max_order; ++m) {
    values.push_back(phi(m));
    if (!std::isfinite(values.back())) throw InputError("scan_1d_float: non-finite value at m = " + std::to_string(m));
  }

  for (std::uint64_t j = 0; j <= budget.max_order; ++j) {
    std::vector<double> binom(j + 1);
    for (std::uint64_t i = 0; i <= j; ++i) binom[i] = binomial(j, i).get_d();
    for (std::uint64_t m = 0; m <= budget.max_shift; ++m) {
      CompensatedSum sum;
      double max_term = 0.0;
      for (std::uint64_t i = 0; i <= j; ++i) {
        const double term = binom[i] * values[m + i];
        max_term = std::max(max_term, std::fabs(term));
        sum.add(i % 2 == 0 ? term : -term);
      }
      double value = sum.value();
      if (std::fabs(value) <= tol_rel * max_term) value = 0.0;
      const Rational exact = Rational::from_double(value);
      if (violates(property, exact, j)) {
        report.verdict = Verdict::Violation;
        report.witness = DiffWitness{{j}, {m}, exact};
        return report;
      }
    }
  }
  return report;
}

Rational reevaluate_witness(const SeqFn& phi, const DiffWitness& w) {
  if (w.orders.size() != 1 || w.shifts.size() != 1) throw InputError("not a 1-D witness");
  return forward_diff_1d(phi, w.orders[0], w.shifts[0]);
}

Rational reevaluate_witness(const NetFn& f, const DiffWitness& w) {
  if (w.orders.size() != 2 || w.shifts.size() != 2) throw InputError("not a 2-D witness");
  return mixed_diff_2d(f, w.orders[0], w.orders[1], w.shifts[0], w.shifts[1]);
}

}  // namespace cmseq
