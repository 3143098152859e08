#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "incidence/incidence.hpp"

namespace {

using namespace incidence;

constexpr int kSuccess = 0;
constexpr int kPropertyFailure = 1;
constexpr int kInputError = 2;

struct Options {
  std::string poset_path;
  std::string ring = "Q";
  std::string operator_path;
  std::string map_path;
  std::string format = "json";
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void flatten(const Json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    if (j.empty()) out.emplace_back(path, "{}");
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    if (j.empty()) out.emplace_back(path, "[]");
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string()) {
    out.emplace_back(path, j.get<std::string>());
  } else {
    out.emplace_back(path, j.dump());
  }
}

/// One "path  value" line per leaf of the JSON report, values in one column.
std::string render_text(const Json& j) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) os << k << std::string(width - k.size() + 2, ' ') << v << "\n";
  return os.str();
}

void emit(const Options& opt, const Json& j) {
  if (opt.format == "text") {
    std::cout << render_text(j);
  } else {
    std::cout << dump_record(j);
  }
}

struct Inputs {
  PreorderPtr p;
  RingDescriptor ring;
};

Inputs load(const Options& opt) {
  return {parse_preorder(read_file(opt.poset_path)), ring_from_string(opt.ring)};
}

Json witness_json(const Preorder& p, const SigmaWitness& w) {
  Json sigma = Json::array();
  for (std::size_t i = 0; i < p.size(); ++i) sigma.push_back({{"x", p.label(i)}, {"c", w.sigma[i].to_string()}});
  return sigma;
}

Json violations_json(const FormReport& r) {
  Json out = Json::array();
  for (const auto& v : r.violations) {
    out.push_back({{"kind", v.kind == FormViolation::Kind::shape ? "shape" : "relation"}, {"description", v.description}});
  }
  return out;
}

int run_space(const Options& opt, SpaceKind kind) {
  auto in = load(opt);
  auto space = kind == SpaceKind::derivation ? derivation_space(in.p, in.ring) : jordan_space(in.p, in.ring);
  emit(opt, space_report(space, kind));
  return kSuccess;
}

int run_check(const Options& opt) {
  auto in = load(opt);
  auto d = operator_from_record(parse_record(read_file(opt.operator_path)), in.p, in.ring);
  bool der = is_derivation(d);
  auto der_form = check_derivation_form(d);
  auto jor_form = check_jordan_form(d);
  Json report = detail::record_header(*in.p, in.ring);
  report["is_derivation"] = der;
  report["is_jordan"] = is_jordan_derivation(d);
  report["conforms_derivation_form"] = der_form.conforms;
  report["conforms_jordan_form"] = jor_form.conforms;
  report["jordan_form_advisory"] = jor_form.advisory;
  report["derivation_form_violations"] = violations_json(der_form);
  Json back = Json::array();
  const auto& P = *in.p;
  for (const auto& [pos, c] : jor_form.back_coefficients) {
    auto [i, j] = P.basis()[pos];
    back.push_back({{"ij", {P.label(i), P.label(j)}}, {"c", c.to_string()}});
  }
  report["back_coefficients"] = std::move(back);
  report["inner_witness"] = nullptr;
  if (der) {
    if (auto g = is_inner(d)) report["inner_witness"] = element_record(*g);
  }
  emit(opt, report);
  return kSuccess;
}

int run_decompose(const Options& opt) {
  auto in = load(opt);
  auto d = operator_from_record(parse_record(read_file(opt.operator_path)), in.p, in.ring);
  auto dec = decompose(d);
  Json report = detail::record_header(*in.p, in.ring);
  report["g"] = element_record(dec.g);
  report["f"] = map_record(dec.f);
  report["reconstructs"] = inner_operator(dec.g) + transitive_operator(dec.f) == d;
  emit(opt, report);
  return kSuccess;
}

int run_transitive(const Options& opt) {
  auto in = load(opt);
  auto values = map_values_from_record(parse_record(read_file(opt.map_path)), in.p, in.ring);
  auto t = is_transitive(values);
  Json report = detail::record_header(*in.p, in.ring);
  report["is_transitive"] = t.transitive;
  Json violations = Json::array();
  for (auto [i, j, k] : t.violations) violations.push_back({in.p->label(i), in.p->label(j), in.p->label(k)});
  report["violations"] = std::move(violations);
  report["trivial_witness"] = nullptr;
  report["triviality_violation"] = nullptr;
  if (t.transitive) {
    auto w = trivial_witness(TransitiveMap(values));
    if (w.witness) report["trivial_witness"] = witness_json(*in.p, *w.witness);
    if (w.violation) report["triviality_violation"] = {in.p->label(w.violation->x), in.p->label(w.violation->y)};
  }
  emit(opt, report);
  return kSuccess;
}

int run_cohomology(const Options& opt) {
  auto in = load(opt);
  auto trans = transitive_space(in.p, in.ring).size();
  auto triv = trivial_space(in.p, in.ring).size();
  Json report = detail::record_header(*in.p, in.ring);
  report["transitive_rank"] = trans;
  report["trivial_rank"] = triv;
  report["cohomology_rank"] = trans - triv;
  report["derivation_rank"] = derivation_space(in.p, in.ring).rank();
  report["inner_rank"] = inner_space(in.p, in.ring).rank();
  report["center_rank"] = center(in.p, in.ring).size();
  emit(opt, report);
  return kSuccess;
}

int run_mobius(const Options& opt) {
  auto in = load(opt);
  emit(opt, element_record(mobius(in.p, in.ring)));
  return kSuccess;
}

int run_verify(const Options& opt) {
  auto results = run_acceptance();
  bool all = true;
  if (opt.format == "text") {
    for (const auto& r : results) {
      std::cout << format_criterion(r) << "\n";
      all = all && r.passed;
    }
    std::cout << (all ? "all criteria passed" : "some criteria failed") << "\n";
  } else {
    Json criteria = Json::array();
    for (const auto& r : results) {
      criteria.push_back({{"number", r.number}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
      all = all && r.passed;
    }
    emit(opt, Json{{"criteria", std::move(criteria)}, {"passed", all}, {"f2_comparison", f2_comparison_report()}});
  }
  return all ? kSuccess : kPropertyFailure;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_invertible:
    case ErrorCode::not_a_derivation:
    case ErrorCode::not_transitive: return kPropertyFailure;
    default: return kInputError;
  }
}

void report_error(const Options& opt, std::string_view name, const std::string& message) {
  std::cerr << message << "\n";
  if (opt.format == "text") {
    std::cout << "error  " << name << "\n";
  } else {
    std::cout << dump_record(Json{{"error", name}, {"message", message}});
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Exact computations in incidence algebras of finite preorders"};
  app.require_subcommand(1, 1);

  auto add_common = [&](CLI::App* sub, bool needs_poset) {
    auto* p = sub->add_option("--poset", opt.poset_path, "preorder DSL file")->check(CLI::ExistingFile);
    if (needs_poset) p->required();
    sub->add_option("--ring", opt.ring, "Z, Q, F<p> or Z<n>")->capture_default_str();
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
  };

  auto* der = app.add_subcommand("der-basis", "basis of the derivation space");
  auto* jor = app.add_subcommand("jordan-basis", "basis of the Jordan derivation space");
  auto* check = app.add_subcommand("check", "check an operator record");
  auto* dec = app.add_subcommand("decompose", "split a derivation as Inn_g + Delta_f");
  auto* trans = app.add_subcommand("transitive", "check a map record and decide triviality");
  auto* coh = app.add_subcommand("cohomology", "transitive, trivial and cohomology ranks");
  auto* mob = app.add_subcommand("mobius", "the Mobius function");
  auto* ver = app.add_subcommand("verify", "run the acceptance suite");
  for (auto* s : {der, jor, check, dec, trans, coh, mob}) add_common(s, true);
  add_common(ver, false);
  for (auto* s : {check, dec}) {
    s->add_option("--operator", opt.operator_path, "operator record")->required()->check(CLI::ExistingFile);
  }
  trans->add_option("--map", opt.map_path, "transitive map record")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (der->parsed()) return run_space(opt, SpaceKind::derivation);
    if (jor->parsed()) return run_space(opt, SpaceKind::jordan);
    if (check->parsed()) return run_check(opt);
    if (dec->parsed()) return run_decompose(opt);
    if (trans->parsed()) return run_transitive(opt);
    if (coh->parsed()) return run_cohomology(opt);
    if (mob->parsed()) return run_mobius(opt);
    if (ver->parsed()) return run_verify(opt);
  } catch (const Error& e) {
    report_error(opt, e.name(), e.what());
    return exit_code_for(e.code());
  } catch (const InputError& e) {
    report_error(opt, "InputError", e.what());
    return kInputError;
  }
  return kInputError;
}
