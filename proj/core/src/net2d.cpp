#include "cmseq/net2d.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "cmseq/errors.hpp"

namespace cmseq {

std::string_view to_string(NetKind k) {
  switch (k) {
    case NetKind::CAJCM: return "CAJCM";
    case NetKind::BiPoly: return "BiPoly";
    case NetKind::BiPolyWeighted: return "BiPolyWeighted";
    case NetKind::BiCompI: return "BiCompI";
    case NetKind::BiCompII: return "BiCompII";
    case NetKind::BiCompIII: return "BiCompIII";
  }
  return "?";
}

Net2D::Net2D(NetKind kind, std::vector<Rational> params, std::optional<RationalSeq> psi, Rational alpha)
    : kind_(kind), params_(std::move(params)), psi_(std::move(psi)), alpha_(std::move(alpha)) {}

Net2D Net2D::cajcm(RationalSeq psi, Rational alpha) {
  if (alpha.sign() <= 0) throw InputError("CAJCM scale alpha must be positive");
  return Net2D(NetKind::CAJCM, {alpha}, std::move(psi), alpha);
}

Net2D Net2D::bipoly(Rational a, Rational b, Rational c, Rational d, bool weighted) {
  if (a.sign() <= 0) throw InputError("BiPoly needs a > 0");
  if (b.sign() < 0 || c.sign() < 0 || d.sign() < 0) throw InputError("BiPoly needs b, c, d >= 0");
  return Net2D(weighted ? NetKind::BiPolyWeighted : NetKind::BiPoly, {a, b, c, d}, std::nullopt, Rational(1));
}

namespace {

void require_positive(std::span<const Rational> v, const char* what) {
  for (const auto& x : v)
    if (x.sign() <= 0) throw InputError(std::string(what) + ": parameters must be positive");
}

}  // namespace

Net2D Net2D::bicomp_i(Rational a1, Rational b1) {
  std::vector<Rational> p{a1, b1};
  require_positive(p, "BiCompI");
  auto psi = RationalSeq::factored({b1}, {a1});
  return Net2D(NetKind::BiCompI, std::move(p), std::move(psi), Rational(1));
}

Net2D Net2D::bicomp_ii(Rational a1, Rational b1, Rational b2) {
  std::vector<Rational> p{a1, b1, b2};
  require_positive(p, "BiCompII");
  auto psi = RationalSeq::factored({b1, b2}, {a1});
  return Net2D(NetKind::BiCompII, std::move(p), std::move(psi), Rational(1));
}

Net2D Net2D::bicomp_iii(Rational a1, Rational a2, Rational b1, Rational b2) {
  std::vector<Rational> p{a1, a2, b1, b2};
  require_positive(p, "BiCompIII");
  auto psi = RationalSeq::factored({b1, b2}, {a1, a2});
  return Net2D(NetKind::BiCompIII, std::move(p), std::move(psi), Rational(1));
}

Rational Net2D::operator()(std::uint64_t m, std::uint64_t n) const {
  const Rational mm(m), nn(n);
  Rational num, den;
  switch (kind_) {
    case NetKind::CAJCM:
      num = 1;
      den = psi_->eval(mm) + alpha_ * nn;
      break;
    case NetKind::BiPoly:
    case NetKind::BiPolyWeighted: {
      const Rational &a = params_[0], &b = params_[1], &c = params_[2], &d = params_[3];
      num = kind_ == NetKind::BiPoly ? Rational(1) : c + d * mm;
      den = a + b * mm + c * nn + d * mm * nn;
      break;
    }
    case NetKind::BiCompI:
      num = mm + params_[0];
      den = (mm + params_[1]) + (mm + params_[0]) * nn;
      break;
    case NetKind::BiCompII:
      num = mm + params_[0];
      den = (mm + params_[1]) * (mm + params_[2]) + (mm + params_[0]) * nn;
      break;
    case NetKind::BiCompIII:
      num = (mm + params_[0]) * (mm + params_[1]);
      den = (mm + params_[2]) * (mm + params_[3]) + num * nn;
      break;
  }
  if (den.sign() <= 0)
    throw InputError("net denominator is not positive at (" + std::to_string(m) + ", " + std::to_string(n) + ")");
  return num / den;
}

NetFn Net2D::evaluator() const {
  return [self = *this](std::uint64_t m, std::uint64_t n) { return self(m, n); };
}

std::string Net2D::formula() const {
  std::ostringstream os;
  const auto& p = params_;
  switch (kind_) {
    case NetKind::CAJCM: os << "1/(psi(m) + " << alpha_ << "*n)"; break;
    case NetKind::BiPoly: os << "1/(" << p[0] << " + " << p[1] << "m + " << p[2] << "n + " << p[3] << "mn)"; break;
    case NetKind::BiPolyWeighted:
      os << "(" << p[2] << " + " << p[3] << "m)/(" << p[0] << " + " << p[1] << "m + " << p[2] << "n + " << p[3]
         << "mn)";
      break;
    case NetKind::BiCompI: os << "(m+" << p[0] << ")/((m+" << p[1] << ")+(m+" << p[0] << ")n)"; break;
    case NetKind::BiCompII:
      os << "(m+" << p[0] << ")/((m+" << p[1] << ")(m+" << p[2] << ")+(m+" << p[0] << ")n)";
      break;
    case NetKind::BiCompIII:
      os << "(m+" << p[0] << ")(m+" << p[1] << ")/((m+" << p[2] << ")(m+" << p[3] << ")+(m+" << p[0] << ")(m+"
         << p[1] << ")n)";
      break;
  }
  return os.str();
}

ConditionReport bicomp_iff(BiCompKind kind, std::span<const Rational> params) {
  const std::size_t arity = kind == BiCompKind::I ? 2 : kind == BiCompKind::II ? 3 : 4;
  if (params.size() != arity) throw InputError("bicomp_iff: wrong number of parameters");
  require_positive(params, "bicomp_iff");

  ConditionReport r;
  auto check = [&](std::string label, const Rational& lhs, const Rational& rhs) {
    r.detail.push_back(Inequality{std::move(label), lhs, Relation::LessEq, rhs, lhs <= rhs});
  };
  switch (kind) {
    case BiCompKind::I:
      r.criterion = Criterion::BiCompI;
      check("b1 <= a1", params[1], params[0]);
      break;
    case BiCompKind::II: {
      r.criterion = Criterion::BiCompII;
      const Rational b1 = std::min(params[1], params[2]), b2 = std::max(params[1], params[2]);
      check("b1 <= a1", b1, params[0]);
      check("a1 <= b2", params[0], b2);
      break;
    }
    case BiCompKind::III: {
      r.criterion = Criterion::BiCompIII;
      const Rational a1 = std::min(params[0], params[1]), a2 = std::max(params[0], params[1]);
      const Rational b1 = std::min(params[2], params[3]), b2 = std::max(params[2], params[3]);
      check("b1 <= a1", b1, a1);
      check("a1 <= b2", a1, b2);
      check("b1+b2 <= a1+a2", b1 + b2, a1 + a2);
      break;
    }
  }
  const bool ok = std::all_of(r.detail.begin(), r.detail.end(), [](const Inequality& q) { return q.holds; });
  r.status = ok ? Status::Holds : Status::Fails;
  return r;
}

ConditionReport bipoly_iff(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  if (a.sign() <= 0) throw InputError("bipoly_iff: need a > 0");
  if (b.sign() < 0 || c.sign() < 0 || d.sign() < 0) throw InputError("bipoly_iff: need b, c, d >= 0");
  ConditionReport r;
  r.criterion = Criterion::BiPoly;
  const Rational det = a * d - b * c;
  r.detail.push_back(Inequality{"ad - bc <= 0", det, Relation::LessEq, Rational(0), det.sign() <= 0});
  r.status = det.sign() <= 0 ? Status::Holds : Status::Fails;
  r.notes.push_back("applies to both 1/(a+bm+cn+dmn) and (c+dm)/(a+bm+cn+dmn)");
  return r;
}

namespace {

// Smallest-budget exact 1-D CA witness of ψ, escalating up to the oracle caps.
std::optional<DiffWitness> psi_ca_witness(const RationalSeq& psi, Budget1D start) {
  const SeqFn phi = [&](std::uint64_t m) { return psi(m); };
  for (const Budget1D b : {start, Budget1D{24, 200}, Budget1D{48, 600}, Budget1D{64, 2000}}) {
    if (b.max_order < start.max_order || b.max_shift < start.max_shift) continue;
    for (std::uint64_t m = 0; m <= b.max_shift + b.max_order; ++m)
      if (psi(m).sign() <= 0) return std::nullopt;
    auto scan = scan_1d(phi, Property::CA, b);
    if (scan.violated()) return scan.witness;
  }
  return std::nullopt;
}

std::optional<DiffWitness> targeted_net_witness(const Net2D& net, const DiffWitness& w1) {
  const std::uint64_t j = w1.orders[0], m = w1.shifts[0];
  const NetFn f = net.evaluator();
  for (std::uint64_t n = 0; n <= (std::uint64_t{1} << 62); n = n == 0 ? 1 : 2 * n) {
    const Rational v = mixed_diff_2d(f, j, 0, m, n);
    if (v.sign() < 0) return DiffWitness{{j, 0}, {m, n}, v};
  }
  return std::nullopt;
}

}  // namespace

CajcmResult cajcm_classify(const RationalSeq& psi, const Rational& alpha, Budget1D budget1d, Budget2D budget2d) {
  if (alpha.sign() <= 0) throw InputError("cajcm_classify: alpha must be positive");
  const std::uint64_t reach = std::max(budget1d.max_shift + budget1d.max_order, budget2d.max_shift_m + budget2d.max_order_m);
  for (std::uint64_t m = 0; m <= reach; ++m)
    if (psi(m).sign() <= 0)
      throw InputError("cajcm_classify: psi(" + std::to_string(m) + ") is not strictly positive; use a shift");

  CajcmResult out;
  std::optional<DiffWitness> psi_witness;
  auto iff = degree2_iff(psi);
  if (iff.status != Status::NotApplicable) {
    out.psi_is_ca = iff.status == Status::Holds;
    out.ca_verdict = std::move(iff);
  } else {
    auto scan = scan_1d([&](std::uint64_t m) { return psi(m); }, Property::CA, budget1d);
    out.psi_is_ca = !scan.violated();
    psi_witness = scan.witness;
    out.ca_verdict = std::move(scan);
  }

  const auto net = Net2D::cajcm(psi, alpha);
  out.cm2d_verdict = scan_2d(net.evaluator(), Property::CM, budget2d);
  out.net_is_cm = !out.cm2d_verdict.violated();
  if (!out.psi_is_ca && out.net_is_cm) {
    if (!psi_witness) psi_witness = psi_ca_witness(psi, budget1d);
    if (psi_witness) out.targeted_witness = targeted_net_witness(net, *psi_witness);
    out.net_is_cm = !out.targeted_witness;
  }
  out.consistent = out.psi_is_ca == out.net_is_cm;
  if (!out.consistent) {
    if (out.psi_is_ca)
      out.warning = "psi classified CA but the net shows an exact CM violation";
    else
      out.warning = "psi is not CA but no 2-D CM violation was found, including the targeted search";
  }
  return out;
}

}  // namespace cmseq
