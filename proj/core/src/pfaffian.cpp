#include "mzl/pfaffian.hpp"

#include <algorithm>
#include <cmath>

#include "mzl/error.hpp"
#include "mzl/hypergeometric.hpp"

namespace mzl {

MultiPoly::MultiPoly(int num_vars) : num_vars_(num_vars) {
  if (num_vars < 1) throw DomainError("MultiPoly: need at least the x variable");
}

MultiPoly& MultiPoly::add(double coeff, std::initializer_list<std::pair<int, int>> factors) {
  std::vector<int> e(num_vars_, 0);
  for (auto [var, power] : factors) {
    if (var < 0 || var >= num_vars_ || power < 0) throw DomainError("MultiPoly: bad factor");
    e[var] += power;
  }
  return add(coeff, e);
}

MultiPoly& MultiPoly::add(double coeff, const std::vector<int>& exponents) {
  if (static_cast<int>(exponents.size()) > num_vars_) throw DomainError("MultiPoly: too many exponents");
  std::vector<int> e(exponents);
  e.resize(num_vars_, 0);
  for (auto& t : terms_)
    if (t.exponents == e) {
      t.coeff += coeff;
      return *this;
    }
  terms_.push_back({coeff, std::move(e)});
  return *this;
}

int MultiPoly::total_degree() const noexcept {
  int d = 0;
  for (const auto& t : terms_) {
    if (t.coeff == 0.0) continue;
    int s = 0;
    for (int e : t.exponents) s += e;
    d = std::max(d, s);
  }
  return d;
}

int MultiPoly::highest_variable() const noexcept {
  int h = -1;
  for (const auto& t : terms_) {
    if (t.coeff == 0.0) continue;
    for (int v = num_vars_ - 1; v > h; --v)
      if (t.exponents[v] > 0) {
        h = v;
        break;
      }
  }
  return h;
}

double MultiPoly::evaluate(std::span<const double> vars) const {
  if (static_cast<int>(vars.size()) < num_vars_) throw DomainError("MultiPoly: too few values");
  double acc = 0.0;
  for (const auto& t : terms_) {
    double m = t.coeff;
    for (int v = 0; v < num_vars_; ++v)
      for (int k = 0; k < t.exponents[v]; ++k) m *= vars[v];
    acc += m;
  }
  return acc;
}

PfaffianChain::PfaffianChain(std::string name, double lo, double hi, std::vector<MultiPoly> rhs,
                             std::vector<Member> members)
    : name_(std::move(name)), lo_(lo), hi_(hi), rhs_(std::move(rhs)), members_(std::move(members)) {
  if (!(lo < hi)) throw DomainError("PfaffianChain: empty interval");
  if (rhs_.empty() || rhs_.size() != members_.size())
    throw DomainError("PfaffianChain: need one evaluator per rhs");
  for (std::size_t i = 0; i < rhs_.size(); ++i) {
    // rhs_i may use x and f_1..f_{i+1} only (1-based members).
    if (rhs_[i].highest_variable() > static_cast<int>(i) + 1)
      throw DomainError("PfaffianChain: rhs " + std::to_string(i + 1) + " is not triangular");
  }
}

int PfaffianChain::alpha() const noexcept {
  int a = 1;
  for (const auto& p : rhs_) a = std::max(a, p.total_degree());
  return a;
}

std::vector<double> PfaffianChain::point(double x) const {
  std::vector<double> v(members_.size() + 1);
  v[0] = x;
  for (std::size_t i = 0; i < members_.size(); ++i) v[i + 1] = members_[i](x);
  return v;
}

PfaffianChain PfaffianChain::corrupted(int member, int term, double delta) const {
  auto rhs = rhs_;
  auto& poly = rhs.at(member);
  if (term < 0 || term >= static_cast<int>(poly.terms().size()))
    throw DomainError("corrupted: no such term");
  poly.add(delta, poly.terms()[term].exponents);
  return {name_ + "-corrupted", lo_, hi_, std::move(rhs), members_};
}

PfaffianFunction::PfaffianFunction(PfaffianChain chain, MultiPoly outer)
    : chain_(std::move(chain)), outer_(std::move(outer)) {
  if (outer_.num_vars() > chain_.order() + 1)
    throw DomainError("PfaffianFunction: outer polynomial uses more variables than the chain has");
}

double PfaffianFunction::operator()(double x) const {
  auto p = chain_.point(x);
  return outer_.evaluate(p);
}

namespace {

const Hyp2f1Options kMemberOpts{1e-7, 1e-15};

double F(double a, double b, double c, double x) { return hyp2f1(a, b, c, x, kMemberOpts).real(); }

}  // namespace

PfaffianChain build_hypergeometric_chain(double a, double b, double c) {
  // Variables: 0 x, 1 1/x, 2 1/(1-x), 3 F/F(c+), 4 F(c+), 5 F, 6 1/F.
  constexpr int n = 7;
  const double k = (c - a) * (c - b) / c;
  const double s = a + b - c;
  std::vector<MultiPoly> rhs(6, MultiPoly(n));
  rhs[0].add(-1.0, {{1, 2}});
  rhs[1].add(1.0, {{2, 2}});
  rhs[2].add(k, {{2, 1}}).add(s, {{2, 1}, {3, 1}}).add(c, {{1, 1}, {3, 1}}).add(-c, {{1, 1}, {3, 2}});
  rhs[3].add(c, {{1, 1}, {4, 1}, {3, 1}}).add(-c, {{1, 1}, {4, 1}});
  rhs[4].add(k, {{2, 1}, {4, 1}}).add(s, {{2, 1}, {5, 1}});
  // (1/F)' = -F' / F^2, with F * (1/F) = 1 folded into the second term.
  rhs[5].add(-k, {{2, 1}, {4, 1}, {6, 2}}).add(-s, {{2, 1}, {6, 1}});

  std::vector<PfaffianChain::Member> members{
      [](double x) { return 1.0 / x; },
      [](double x) { return 1.0 / (1.0 - x); },
      [=](double x) { return F(a, b, c, x) / F(a, b, c + 1.0, x); },
      [=](double x) { return F(a, b, c + 1.0, x); },
      [=](double x) { return F(a, b, c, x); },
      [=](double x) { return 1.0 / F(a, b, c, x); },
  };
  return {"hypergeometric", 0.0, 1.0, std::move(rhs), std::move(members)};
}

PfaffianChain build_ratio_chain() {
  // Variables: 0 y, 1 1/u, 2 1/v with u = 1/2 + y/2, v = 1 - u; then
  // 3 F/F(c+) at u, 4 F(c+) at u, 5 F at u, 6 F/F(c+) at v, 7 F(c+) at v,
  // 8 F at v, 9 1/F at v. du/dy = 1/2, dv/dy = -1/2.
  constexpr double a = 1.0 / 6.0, b = 5.0 / 6.0, c = 1.0;
  constexpr int n = 10;
  const double k = (c - a) * (c - b) / c;
  const double s = a + b - c;
  std::vector<MultiPoly> rhs(9, MultiPoly(n));
  rhs[0].add(-0.5, {{1, 2}});
  rhs[1].add(0.5, {{2, 2}});
  // At u: 1/x -> var 1, 1/(1-x) -> var 2; factor +1/2.
  rhs[2].add(0.5 * k, {{2, 1}}).add(0.5 * s, {{2, 1}, {3, 1}}).add(0.5 * c, {{1, 1}, {3, 1}})
      .add(-0.5 * c, {{1, 1}, {3, 2}});
  rhs[3].add(0.5 * c, {{1, 1}, {4, 1}, {3, 1}}).add(-0.5 * c, {{1, 1}, {4, 1}});
  rhs[4].add(0.5 * k, {{2, 1}, {4, 1}}).add(0.5 * s, {{2, 1}, {5, 1}});
  // At v: 1/x -> var 2, 1/(1-x) -> var 1; factor -1/2.
  rhs[5].add(-0.5 * k, {{1, 1}}).add(-0.5 * s, {{1, 1}, {6, 1}}).add(-0.5 * c, {{2, 1}, {6, 1}})
      .add(0.5 * c, {{2, 1}, {6, 2}});
  rhs[6].add(-0.5 * c, {{2, 1}, {7, 1}, {6, 1}}).add(0.5 * c, {{2, 1}, {7, 1}});
  rhs[7].add(-0.5 * k, {{1, 1}, {7, 1}}).add(-0.5 * s, {{1, 1}, {8, 1}});
  rhs[8].add(0.5 * k, {{1, 1}, {7, 1}, {9, 2}}).add(0.5 * s, {{1, 1}, {9, 1}});

  auto u = [](double y) { return 0.5 + 0.5 * y; };
  auto v = [](double y) { return 0.5 - 0.5 * y; };
  std::vector<PfaffianChain::Member> members{
      [=](double y) { return 1.0 / u(y); },
      [=](double y) { return 1.0 / v(y); },
      [=](double y) { return F(a, b, c, u(y)) / F(a, b, c + 1.0, u(y)); },
      [=](double y) { return F(a, b, c + 1.0, u(y)); },
      [=](double y) { return F(a, b, c, u(y)); },
      [=](double y) { return F(a, b, c, v(y)) / F(a, b, c + 1.0, v(y)); },
      [=](double y) { return F(a, b, c + 1.0, v(y)); },
      [=](double y) { return F(a, b, c, v(y)); },
      [=](double y) { return 1.0 / F(a, b, c, v(y)); },
  };
  return {"ratio", 0.0, 1.0, std::move(rhs), std::move(members)};
}

PfaffianFunction build_ratio_function() {
  MultiPoly outer(10);
  outer.add(1.0, {{5, 1}, {9, 1}});
  return {build_ratio_chain(), std::move(outer)};
}

PfaffianChain build_reciprocal_chain(double lo, double hi) {
  if (!(lo > 0.0 || hi < 0.0)) throw DomainError("reciprocal chain: interval must avoid 0");
  std::vector<MultiPoly> rhs(1, MultiPoly(2));
  rhs[0].add(-1.0, {{1, 2}});
  return {"reciprocal", lo, hi, std::move(rhs), {[](double x) { return 1.0 / x; }}};
}

ChainResidual chain_residual(const PfaffianChain& chain, int n_samples,
                             const ChainResidualOptions& opts) {
  if (n_samples < 1) throw DomainError("chain_residual: need at least one sample");
  const double lo = chain.lo() + opts.endpoint_offset;
  const double hi = chain.hi() - opts.endpoint_offset;
  const double h = opts.step;
  ChainResidual out;
  for (int s = 0; s < n_samples; ++s) {
    const double x = n_samples == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * s / (n_samples - 1);
    std::vector<double> at;
    try {
      at = chain.point(x);
    } catch (const Error& e) {
      throw Error("chain_residual: evaluator failed at x = " + std::to_string(x) + ": " + e.what());
    }
    for (int i = 0; i < chain.order(); ++i) {
      const auto& f = chain.members()[i];
      double fd;
      try {
        fd = (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
      } catch (const Error& e) {
        throw Error("chain_residual: member " + std::to_string(i + 1) + " failed near x = " +
                    std::to_string(x) + ": " + e.what());
      }
      const double p = chain.rhs()[i].evaluate(at);
      const double r = std::abs(fd - p) / std::max(1.0, std::abs(p));
      if (r > out.max_residual) out = {r, i + 1, x};
    }
  }
  return out;
}

}  // namespace mzl
