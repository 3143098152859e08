#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "incidence/element.hpp"
#include "incidence/error.hpp"
#include "incidence/exactla.hpp"
#include "incidence/interchange.hpp"
#include "incidence/operator.hpp"
#include "incidence/preorder.hpp"
#include "incidence/random.hpp"
#include "incidence/scalar.hpp"
#include "incidence/spaces.hpp"
#include "incidence/suite.hpp"
#include "incidence/transitive.hpp"

namespace incidence {

struct CriterionResult {
  int number = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240601;
  double time_budget_seconds = 60.0;  // criterion 1
};

namespace detail {

struct SuiteCase {
  std::string name;
  PreorderPtr p;
};

inline std::vector<SuiteCase> suite_cases() {
  std::vector<SuiteCase> out;
  for (const auto& np : standard_suite()) out.push_back({np.name, parse_preorder(np.dsl)});
  return out;
}

/// Collects failures; the criterion passes when none were recorded.
class Ledger {
 public:
  void fail(const std::string& what) {
    if (failures_++ < 5) notes_ << (notes_.tellp() > 0 ? "; " : "") << what;
  }
  void note(const std::string& what) { info_ << (info_.tellp() > 0 ? ", " : "") << what; }
  bool ok() const noexcept { return failures_ == 0; }
  std::string detail() const {
    if (ok()) return info_.str();
    return std::to_string(failures_) + " failure(s): " + notes_.str();
  }

 private:
  std::size_t failures_ = 0;
  std::ostringstream notes_;
  std::ostringstream info_;
};

inline std::string case_name(const std::string& p, const RingDescriptor& r) { return p + "/" + r.to_string(); }

/// Rank by dense fraction Gaussian elimination, separate from the sparse engines.
inline std::size_t dense_rank(const ExactMatrix& m) {
  std::vector<std::vector<Scalar>> a;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<Scalar> row(m.cols(), Scalar::zero(m.ring()));
    for (const auto& [c, v] : m.row(r)) row[c] = v;
    a.push_back(std::move(row));
  }
  const bool over_z = m.ring().kind() == RingKind::integers;
  auto field = over_z ? RingDescriptor::rationals() : m.ring();
  for (auto& row : a) {
    for (auto& v : row) v = Scalar(field, v.value());
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c].is_zero()) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    auto inv = a[rank][c].inverse();
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c].is_zero()) continue;
      auto factor = a[r][c] * inv;
      for (std::size_t k = c; k < m.cols(); ++k) a[r][k] = a[r][k] - factor * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline bool annihilates(const ExactMatrix& m, const std::vector<Scalar>& v) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Scalar acc = Scalar::zero(m.ring());
    for (const auto& [c, x] : m.row(r)) acc = acc + x * v[c];
    if (!acc.is_zero()) return false;
  }
  return true;
}

template <class Rng>
ExactMatrix random_integer_matrix(const RingDescriptor& ring, Rng& rng, std::size_t rows, std::size_t cols) {
  ExactMatrix m(ring, cols);
  std::uniform_int_distribution<long> entry(-4, 4);
  std::bernoulli_distribution keep(0.6);
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<Scalar> row;
    for (std::size_t c = 0; c < cols; ++c) row.push_back(Scalar(ring, keep(rng) ? entry(rng) : 0L));
    m.add_dense_row(row);
  }
  return m;
}

/// An integer vector in the kernel of `m`: a random rational combination of the
/// rational kernel basis, scaled to clear denominators.
template <class Rng>
std::vector<Scalar> integer_kernel_sample(const SpanBasis& rational_kernel, Rng& rng) {
  const auto Z = RingDescriptor::integers();
  std::vector<mpq_class> v(rational_kernel.dim, 0);
  std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
  for (const auto& b : rational_kernel.vectors) {
    mpq_class coef(num(rng), den(rng));
    coef.canonicalize();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += coef * b[i].value();
  }
  mpz_class l = 1;
  for (auto& x : v) {
    x.canonicalize();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  }
  std::vector<Scalar> out;
  for (auto& x : v) out.push_back(Scalar(Z, mpq_class(x * l)));
  return out;
}

/// Single-entry perturbation of `d`: one random coefficient shifted by a nonzero amount.
template <class Rng>
LinearOperator perturb(const LinearOperator& d, Rng& rng) {
  const auto n = d.poset().basis_size();
  std::uniform_int_distribution<std::size_t> pos(0, n - 1);
  auto s = pos(rng), t = pos(rng);
  LinearOperator out = d;
  out.set(s, t, d.coefficient(s, t) + random_scalar(d.ring(), rng, true));
  return out;
}

template <class Rng>
LinearOperator random_combination(const OperatorSpace& space, Rng& rng) {
  LinearOperator out(space.preorder, space.ring);
  for (const auto& g : space.generators) out = out + random_scalar(space.ring, rng) * g;
  return out;
}

inline const std::vector<RingDescriptor>& exact_rings() {
  static const std::vector<RingDescriptor> rings = {RingDescriptor::rationals(), RingDescriptor::prime_field(3),
                                                    RingDescriptor::prime_field(5), RingDescriptor::integers()};
  return rings;
}

inline const std::vector<RingDescriptor>& q_f3() {
  static const std::vector<RingDescriptor> rings = {RingDescriptor::rationals(), RingDescriptor::prime_field(3)};
  return rings;
}

inline CriterionResult criterion_jordan_equals_derivation(const AcceptanceOptions& opt) {
  Ledger led;
  auto t0 = std::chrono::steady_clock::now();
  std::size_t cases = 0;
  for (const auto& c : suite_cases()) {
    for (const auto& r : exact_rings()) {
      auto der = derivation_space(c.p, r);
      auto jor = jordan_space(c.p, r);
      if (!span_equal(der.span, jor.span)) led.fail(case_name(c.name, r) + " Jordan span differs");
      for (const auto& g : jor.generators) {
        if (!is_derivation(g)) led.fail(case_name(c.name, r) + " Jordan generator is not a derivation");
      }
      ++cases;
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= opt.time_budget_seconds) led.fail("took " + std::to_string(secs) + " s");
  led.note(std::to_string(cases) + " cases");
  return {1, "Jordan derivations are derivations", led.ok(), led.detail(), secs};
}

inline CriterionResult criterion_derivation_form(const AcceptanceOptions& opt) {
  Ledger led;
  std::mt19937_64 rng(opt.seed + 2);
  std::size_t rejected = 0, total = 0;
  for (const auto& c : suite_cases()) {
    for (const auto& r : q_f3()) {
      auto der = derivation_space(c.p, r);
      for (const auto& g : der.generators) {
        if (!check_derivation_form(g).conforms) led.fail(case_name(c.name, r) + " generator violates the form");
      }
      std::uniform_int_distribution<std::size_t> pick(0, der.generators.empty() ? 0 : der.generators.size() - 1);
      for (int k = 0; k < 20; ++k) {
        LinearOperator base = der.generators.empty() ? LinearOperator(c.p, r) : der.generators[pick(rng)];
        auto d = perturb(base, rng);
        bool law = is_derivation(d);
        bool form = check_derivation_form(d).conforms;
        if (law != form) led.fail(case_name(c.name, r) + " law and form disagree on a perturbation");
        if (!law) ++rejected;
        ++total;
      }
    }
  }
  led.note(std::to_string(rejected) + "/" + std::to_string(total) + " perturbations rejected by both");
  return {2, "Derivation law agrees with the normal form", led.ok(), led.detail()};
}

inline CriterionResult criterion_decomposition(const AcceptanceOptions&) {
  Ledger led;
  std::size_t count = 0;
  for (const auto& c : suite_cases()) {
    for (const auto& r : {RingDescriptor::rationals(), RingDescriptor::integers()}) {
      for (const auto& d : derivation_space(c.p, r).generators) {
        auto dec = decompose(d);
        if (!(inner_operator(dec.g) + transitive_operator(dec.f) == d)) {
          led.fail(case_name(c.name, r) + " reconstruction differs");
        }
        ++count;
      }
    }
  }
  led.note(std::to_string(count) + " generators");
  return {3, "D = Inn_g + Delta_f reconstructs exactly", led.ok(), led.detail()};
}

inline CriterionResult criterion_inner_transitive(const AcceptanceOptions& opt) {
  Ledger led;
  const auto Q = RingDescriptor::rationals();
  auto crown = suite_preorder("K22");
  IncidenceElement fv(crown, Q);
  fv.set(crown->index_of("1"), crown->index_of("3"), Scalar::one(Q));
  TransitiveMap f(fv);
  if (trivial_witness(f).trivial()) led.fail("crown cocycle reported trivial");
  if (is_inner(transitive_operator(f))) led.fail("crown Delta_f reported inner");

  auto chain = suite_preorder("C3");
  std::mt19937_64 rng(opt.seed + 4);
  std::vector<IncidenceElement> cocycles;
  auto basis = transitive_space(chain, Q);
  for (const auto& v : basis.vectors) cocycles.push_back(IncidenceElement::from_vector(chain, Q, v));
  for (int k = 0; k < 10; ++k) {
    IncidenceElement g(chain, Q);
    for (const auto& b : cocycles) g = g + random_scalar(Q, rng) * b;
    cocycles.push_back(g);
  }
  for (const auto& v : cocycles) {
    TransitiveMap m(v);
    auto delta = transitive_operator(m);
    auto g = is_inner(delta);
    if (!g) {
      led.fail("chain cocycle without inner witness");
      continue;
    }
    if (!(inner_operator(*g) == delta)) led.fail("chain witness does not reproduce Delta_f");
    auto w = trivial_witness(m);
    if (!w.trivial()) {
      led.fail("chain cocycle reported nontrivial");
      continue;
    }
    IncidenceElement diag(chain, Q);
    for (std::size_t i = 0; i < chain->size(); ++i) diag.set(i, i, w.witness->sigma[i]);
    if (!(inner_operator(diag) == delta)) led.fail("sigma construction does not reproduce Delta_f");
  }
  led.note(std::to_string(cocycles.size()) + " chain cocycles");
  return {4, "Delta_f is inner exactly when f is trivial", led.ok(), led.detail()};
}

inline const std::map<std::string, std::size_t>& expected_cohomology() {
  static const std::map<std::string, std::size_t> m = {{"C1", 0}, {"C2", 0}, {"C3", 0}, {"C4", 0}, {"C5", 0}, {"A3", 0},
                                                       {"D4", 0}, {"K22", 1}, {"M2", 0}, {"M3", 0}, {"P6", 0}};
  return m;
}

inline CriterionResult criterion_cohomology(const AcceptanceOptions&) {
  Ledger led;
  const auto Q = RingDescriptor::rationals();
  for (const auto& c : suite_cases()) {
    auto rank = cohomology_rank(c.p, Q);
    bool all_inner = span_equal(derivation_space(c.p, Q).span, inner_space(c.p, Q).span);
    if ((rank == 0) != all_inner) led.fail(c.name + " cohomology rank and inner test disagree");
    if (rank != expected_cohomology().at(c.name)) {
      led.fail(c.name + " cohomology rank " + std::to_string(rank) + ", expected " +
               std::to_string(expected_cohomology().at(c.name)));
    }
  }
  return {5, "All derivations inner iff all transitive maps trivial", led.ok(), led.detail()};
}

inline const std::map<std::string, std::size_t>& expected_derivation_dims() {
  static const std::map<std::string, std::size_t> m = {{"C2", 2}, {"K22", 8}, {"M2", 3}, {"A3", 0}};
  return m;
}

inline CriterionResult criterion_dimension_identity(const AcceptanceOptions&) {
  Ledger led;
  const auto Q = RingDescriptor::rationals();
  for (const auto& c : suite_cases()) {
    auto der = derivation_space(c.p, Q).rank();
    auto rhs = (c.p->basis_size() - center(c.p, Q).size()) + transitive_space(c.p, Q).size() -
               trivial_space(c.p, Q).size();
    if (der != rhs) led.fail(c.name + " dim Der " + std::to_string(der) + " != " + std::to_string(rhs));
    auto it = expected_derivation_dims().find(c.name);
    if (it != expected_derivation_dims().end() && der != it->second) {
      led.fail(c.name + " dim Der " + std::to_string(der) + ", expected " + std::to_string(it->second));
    }
  }
  return {6, "dim Der = (|B| - dim center) + dim transitive - dim trivial", led.ok(), led.detail()};
}

inline CriterionResult criterion_herstein(const AcceptanceOptions& opt) {
  Ledger led;
  std::mt19937_64 rng(opt.seed + 7);
  std::size_t checks = 0;
  for (const auto& c : suite_cases()) {
    for (const auto& r : q_f3()) {
      auto jor = jordan_space(c.p, r);
      for (const auto& d : jor.generators) {
        for (int k = 0; k < 100; ++k) {
          auto a = random_element(c.p, r, rng), b = random_element(c.p, r, rng), e = random_element(c.p, r, rng);
          if (!herstein_check(d, a, b, e).all()) led.fail(case_name(c.name, r) + " identity fails");
          ++checks;
        }
      }
    }
  }
  led.note(std::to_string(checks) + " triples");
  return {7, "Herstein identities for Jordan derivations", led.ok(), led.detail()};
}

inline CriterionResult criterion_random_laws(const AcceptanceOptions& opt) {
  Ledger led;
  std::mt19937_64 rng(opt.seed + 8);
  std::size_t checks = 0;
  for (const auto& c : suite_cases()) {
    for (const auto& r : q_f3()) {
      auto der = derivation_space(c.p, r);
      std::vector<LinearOperator> ops = der.generators;
      ops.push_back(random_combination(der, rng));
      for (const auto& d : ops) {
        if (!is_derivation(d)) led.fail(case_name(c.name, r) + " operator fails the basis law");
        for (int k = 0; k < 50; ++k) {
          auto u = random_element(c.p, r, rng), v = random_element(c.p, r, rng);
          if (!(apply(d, u * v) == apply(d, u) * v + u * apply(d, v))) led.fail(case_name(c.name, r) + " D(uv)");
          ++checks;
        }
      }
      auto jor = jordan_space(c.p, r);
      std::vector<LinearOperator> jops = jor.generators;
      jops.push_back(random_combination(jor, rng));
      for (const auto& d : jops) {
        if (!is_jordan_derivation(d)) led.fail(case_name(c.name, r) + " operator fails the Jordan basis law");
        for (int k = 0; k < 100; ++k) {
          auto x = random_element(c.p, r, rng);
          if (!(apply(d, x * x) == apply(d, x) * x + x * apply(d, x))) led.fail(case_name(c.name, r) + " D(x^2)");
          ++checks;
        }
      }
    }
  }
  led.note(std::to_string(checks) + " random evaluations");
  return {8, "Basis laws agree with random evaluation", led.ok(), led.detail()};
}

inline CriterionResult criterion_algebra_laws(const AcceptanceOptions& opt) {
  Ledger led;
  std::mt19937_64 rng(opt.seed + 9);
  for (const auto& c : suite_cases()) {
    for (const auto& r : {RingDescriptor::rationals(), RingDescriptor::integers(), RingDescriptor::prime_field(3)}) {
      auto one = delta(c.p, r);
      for (int k = 0; k < 100; ++k) {
        auto f = random_element(c.p, r, rng), g = random_element(c.p, r, rng), h = random_element(c.p, r, rng);
        if (!((f * g) * h == f * (g * h))) led.fail(case_name(c.name, r) + " associativity");
        if (!(one * f == f && f * one == f)) led.fail(case_name(c.name, r) + " identity");
      }
      if (is_partial_order(*c.p)) {
        auto mu = mobius(c.p, r);
        auto z = zeta(c.p, r);
        if (!(mu * z == one && z * mu == one)) led.fail(case_name(c.name, r) + " mobius");
      }
    }
  }
  try {
    mobius(suite_preorder("M2"), RingDescriptor::rationals());
    led.fail("M2 zeta was inverted");
  } catch (const Error& e) {
    if (e.code() != ErrorCode::not_invertible) led.fail(std::string("M2 zeta raised ") + std::string(e.name()));
  }
  return {9, "Convolution laws and Mobius inversion", led.ok(), led.detail()};
}

}  // namespace detail

/// Ranks of the derivation and Jordan spaces over F2 on the suite. No relation
/// between them is implied.
inline Json f2_comparison_report() {
  const auto F2 = RingDescriptor::prime_field(2);
  Json cases = Json::array();
  for (const auto& c : detail::suite_cases()) {
    auto der = derivation_space(c.p, F2);
    auto jor = jordan_space(c.p, F2);
    cases.push_back({{"poset", c.name},
                     {"poset-hash", poset_hash(*c.p)},
                     {"derivation-rank", der.rank()},
                     {"jordan-rank", jor.rank()},
                     {"spans-equal", span_equal(der.span, jor.span)}});
  }
  return Json{{"ring", "F2"}, {"cases", std::move(cases)}};
}

namespace detail {

inline CriterionResult criterion_f2(const AcceptanceOptions&) {
  Ledger led;
  auto report = parse_record(dump_record(f2_comparison_report()));
  const auto& cases = report.at("cases");
  if (!cases.is_array() || cases.size() != standard_suite().size()) led.fail("wrong number of cases");
  std::size_t differing = 0;
  for (const auto& c : cases) {
    for (const char* key : {"derivation-rank", "jordan-rank"}) {
      if (!c.contains(key) || !c.at(key).is_number_unsigned()) led.fail(std::string("missing ") + key);
    }
    if (!c.contains("spans-equal") || !c.at("spans-equal").is_boolean()) {
      led.fail("missing spans-equal");
    } else if (!c.at("spans-equal").get<bool>()) {
      ++differing;
    }
  }
  led.note(std::to_string(differing) + " case(s) with differing spans");
  return {10, "F2 comparison report", led.ok(), led.detail()};
}

inline CriterionResult criterion_exactla(const AcceptanceOptions& opt) {
  Ledger led;
  std::mt19937_64 rng(opt.seed + 11);
  const auto Z = RingDescriptor::integers();
  const auto Q = RingDescriptor::rationals();

  auto saturation = [&](const ExactMatrix& mz, const std::string& label) {
    auto kz = kernel(mz);
    for (const auto& v : kz.vectors) {
      if (!annihilates(mz, v)) led.fail(label + " Z kernel vector not annihilated");
    }
    ExactMatrix mq(Q, mz.cols());
    for (std::size_t r = 0; r < mz.rows(); ++r) {
      ExactMatrix::Row row;
      for (const auto& [c, x] : mz.row(r)) row.emplace_back(c, Scalar(Q, x.value()));
      mq.add_row(std::move(row));
    }
    auto kq = kernel(mq);
    if (kq.size() != kz.size()) led.fail(label + " Z and Q kernels differ in rank");
    for (int k = 0; k < 20; ++k) {
      auto v = integer_kernel_sample(kq, rng);
      if (!annihilates(mz, v)) led.fail(label + " sample not in kernel");
      if (!in_span(v, kz)) led.fail(label + " integer solution outside the Z kernel");
    }
  };

  for (int k = 0; k < 10; ++k) {
    std::uniform_int_distribution<std::size_t> dim(1, 7);
    auto rows = dim(rng), cols = dim(rng) + 1;
    saturation(random_integer_matrix(Z, rng, rows, cols), "random " + std::to_string(k));
  }
  saturation(ExactMatrix::from_integers(Z, 2, {{2, 2}}), "[[2, 2]]");
  saturation(ExactMatrix::from_integers(Z, 3, {{2, 4, 6}, {0, 3, 9}}), "[[2,4,6],[0,3,9]]");

  for (const auto& r : {Q, RingDescriptor::prime_field(3), RingDescriptor::prime_field(5),
                        RingDescriptor::prime_field(2)}) {
    for (int k = 0; k < 20; ++k) {
      std::uniform_int_distribution<std::size_t> dim(1, 8);
      auto m = random_integer_matrix(r, rng, dim(rng), dim(rng));
      auto kv = kernel(m);
      for (const auto& v : kv.vectors) {
        if (!annihilates(m, v)) led.fail(r.to_string() + " kernel vector not annihilated");
      }
      if (dense_rank(m) + kv.size() != m.cols()) led.fail(r.to_string() + " rank-nullity fails");
      if (rank(m) != dense_rank(m)) led.fail(r.to_string() + " sparse and dense rank differ");
    }
  }
  return {11, "Exact kernels: saturation and rank-nullity", led.ok(), led.detail()};
}

}  // namespace detail

inline std::vector<std::function<CriterionResult(const AcceptanceOptions&)>> acceptance_criteria() {
  return {detail::criterion_jordan_equals_derivation, detail::criterion_derivation_form,
          detail::criterion_decomposition,            detail::criterion_inner_transitive,
          detail::criterion_cohomology,               detail::criterion_dimension_identity,
          detail::criterion_herstein,                 detail::criterion_random_laws,
          detail::criterion_algebra_laws,             detail::criterion_f2,
          detail::criterion_exactla};
}

/// Runs one criterion; library errors count as failures.
inline CriterionResult run_criterion(int number, const AcceptanceOptions& opt = {}) {
  auto all = acceptance_criteria();
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = all.at(static_cast<std::size_t>(number - 1))(opt);
  } catch (const std::exception& e) {
    r = {number, "criterion " + std::to_string(number), false, e.what()};
  }
  if (r.seconds == 0.0) r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {}) {
  std::vector<CriterionResult> out;
  for (int n = 1; n <= static_cast<int>(acceptance_criteria().size()); ++n) out.push_back(run_criterion(n, opt));
  return out;
}

inline std::string format_criterion(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  [" << r.number << "] " << r.title;
  if (!r.detail.empty()) os << " (" << r.detail << ")";
  return os.str();
}

}  // namespace incidence
