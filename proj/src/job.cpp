// SPDX-License-Identifier: Apache-2.0
#include "branchdual/job.hpp"

#include <cctype>
#include <chrono>
#include <functional>
#include <map>
#include <optional>

#include "branchdual/expression.hpp"
#include "branchdual/inverse_system.hpp"
#include "branchdual/semigroup.hpp"
#include "branchdual/subalgebra.hpp"

namespace branchdual {

using nlohmann::json;

int exit_code_for(int error_code) {
  switch (static_cast<ErrorCode>(error_code)) {
    case ErrorCode::Ok:
      return 0;
    case ErrorCode::InfiniteCodimension:
    case ErrorCode::Parse:
    case ErrorCode::NotAlgebraForming:
    case ErrorCode::PrecisionExhausted:
      return error_code;
    default:
      return 1;
  }
}

namespace {

json coefficient_map(std::span<const Rational> coeffs) {
  json m = json::object();
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!is_zero(coeffs[i])) m[std::to_string(i)] = to_string(coeffs[i]);
  return m;
}

json to_json(const Series& f) {
  return {{"expression", to_expression(f)}, {"coefficients", coefficient_map(f.coefficients())}};
}

json to_json(const DiffOp& g) {
  return {{"expression", to_expression(g)}, {"coefficients", coefficient_map(g.coefficients())}};
}

json to_json(const InverseSystem& v) {
  json basis = json::array();
  for (const auto& g : v.basis) basis.push_back(to_json(g));
  return basis;
}

json to_json(const Staircase& s) {
  json basis = json::array();
  for (const auto& f : s.basis) basis.push_back(to_json(f));
  return {{"delta", s.delta}, {"conductor", s.conductor}, {"e0", s.e0},
          {"gaps", s.gaps},   {"values", s.values},       {"basis", basis}};
}

json to_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const NumericalSemigroup& d) {
  const auto gc = gorenstein_check(d);
  return {{"generators", d.generators},
          {"minimal_generators", d.minimal_generators()},
          {"conductor", d.conductor},
          {"frobenius", d.conductor - 1},
          {"gaps", d.gaps},
          {"genus", d.genus()},
          {"e0", d.e0},
          {"small_elements", d.small_elements()},
          {"symmetric", gc.symmetric}};
}

class JobContext {
 public:
  explicit JobContext(const json& job) : job_(job) {
    if (!job.is_object()) throw InvalidArgument("a job must be a JSON object");
    if (!job.contains("command") || !job["command"].is_string()) throw InvalidArgument("job has no command");
    command_ = job["command"].get<std::string>();
    if (job.contains("options")) {
      if (!job["options"].is_object()) throw InvalidArgument("options must be an object");
      options_ = job["options"];
    }
    if (options_.contains("trunc")) {
      const int t = options_["trunc"].get<int>();
      if (t < 1) throw InvalidArgument("trunc must be positive");
      closure_.trunc_ceiling = t;
    }
  }

  const std::string& command() const { return command_; }
  const ClosureOptions& closure_options() const { return closure_; }
  int ceiling() const { return closure_.trunc_ceiling; }

  // Generator strings, each possibly a ','-separated list.
  std::vector<std::string> generator_texts() const {
    std::vector<std::string> out;
    if (!job_.contains("generators")) return out;
    const json& g = job_["generators"];
    if (g.is_string()) {
      out.push_back(g.get<std::string>());
    } else if (g.is_array()) {
      for (const auto& x : g) {
        if (x.is_string())
          out.push_back(x.get<std::string>());
        else if (x.is_number_integer())
          out.push_back(std::to_string(x.get<long long>()));
        else
          throw InvalidArgument("generators must be strings");
      }
    } else {
      throw InvalidArgument("generators must be a list of strings");
    }
    return out;
  }

  AlgebraInput generators() const {
    AlgebraInput a;
    for (const auto& text : generator_texts())
      for (auto& f : parse_series_list(text, ',', ceiling())) a.gens.push_back(std::move(f));
    if (a.gens.empty()) throw InvalidArgument("command '" + command_ + "' needs generators");
    return a;
  }

  bool has(const char* key) const { return options_.contains(key) && !options_[key].is_null(); }

  std::vector<DiffOp> operators() const {
    if (!has("v")) throw InvalidArgument("command '" + command_ + "' needs operators (option v)");
    const json& v = options_["v"];
    std::vector<DiffOp> out;
    if (v.is_string()) return parse_diffop_list(v.get<std::string>());
    if (!v.is_array()) throw InvalidArgument("option v must be a string or a list of strings");
    for (const auto& x : v)
      for (auto& g : parse_diffop_list(x.get<std::string>())) out.push_back(std::move(g));
    return out;
  }

  Series h() const {
    if (!has("h")) throw InvalidArgument("command '" + command_ + "' needs option h");
    return parse_series(options_["h"].get<std::string>(), ceiling());
  }

  std::optional<int> integer(const char* key) const {
    if (!has(key)) return std::nullopt;
    return options_[key].get<int>();
  }

  bool flag(const char* key) const { return has(key) && options_[key].get<bool>(); }

  Characteristic characteristic() const {
    if (!has("char")) throw InvalidArgument("command '" + command_ + "' needs option char");
    const json& c = options_["char"];
    Characteristic ch;
    if (c.is_object()) {
      ch.e0 = c.at("e0").get<int>();
      if (c.contains("betas")) ch.betas = c["betas"].get<std::vector<int>>();
      return ch;
    }
    const std::string text = c.get<std::string>();
    const auto semi = text.find(';');
    auto number = [&](std::string_view piece, std::size_t offset) {
      std::size_t b = 0;
      while (b < piece.size() && piece[b] == ' ') ++b;
      std::size_t e = piece.size();
      while (e > b && piece[e - 1] == ' ') --e;
      if (b == e) throw ParseError("expected an integer", offset + b);
      for (std::size_t i = b; i < e; ++i)
        if (!std::isdigit(static_cast<unsigned char>(piece[i]))) throw ParseError("expected an integer", offset + i);
      if (e - b > 6) throw ParseError("integer too large", offset + b);
      return std::stoi(std::string(piece.substr(b, e - b)));
    };
    const std::string_view all(text);
    ch.e0 = number(all.substr(0, semi), 0);
    if (semi == std::string::npos) return ch;
    std::size_t start = semi + 1;
    std::string_view rest = all.substr(start);
    if (rest.find_first_not_of(' ') == std::string_view::npos) return ch;
    while (true) {
      const auto comma = all.find(',', start);
      ch.betas.push_back(number(all.substr(start, comma == std::string::npos ? std::string::npos : comma - start), start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return ch;
  }

  json input() const {
    json in = {{"command", command_}, {"generators", generator_texts()}};
    if (!options_.empty()) in["options"] = options_;
    return in;
  }

 private:
  const json& job_;
  std::string command_;
  json options_ = json::object();
  ClosureOptions closure_;
};

std::vector<int> semigroup_exponents(const JobContext& ctx) {
  std::vector<int> out;
  for (const auto& text : ctx.generator_texts()) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto comma = text.find(',', start);
      const std::string piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      const auto b = piece.find_first_not_of(" \t");
      const bool integer =
          b != std::string::npos && piece.find_first_not_of("0123456789 \t", b) == std::string::npos;
      if (integer) {
        const auto e = piece.find_last_not_of(" \t");
        if (e - b > 6) throw ParseError("integer too large", start + b);
        out.push_back(std::stoi(piece.substr(b, e - b + 1)));
      } else {
        const Series f = parse_series(piece, ctx.ceiling());
        const auto o = f.order();
        if (!o || f.degree() != *o || f.coeff(*o) != 1)
          throw InvalidArgument("semigroup generators must be integers or monomials t^k");
        out.push_back(*o);
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  if (out.empty()) throw InvalidArgument("command 'semigroup' needs generators");
  return out;
}

json invariants_json(const InvariantsReport& r) {
  return {{"delta", r.delta},
          {"conductor", r.conductor},
          {"e0", r.e0},
          {"e1", r.e1},
          {"mu", r.mu},
          {"embedding_dimension", r.embedding_dimension},
          {"gorenstein", r.gorenstein_by_c},
          {"gaps", r.staircase.gaps},
          {"values", r.staircase.values},
          {"hilbert_function", r.hilbert.hf},
          {"hilbert_samuel", r.hilbert.hf1}};
}

json cut_json(const CuttingDerivation& cut) {
  json cot = json::array();
  for (std::size_t i = 0; i < cut.cotangent_basis.size(); ++i)
    cot.push_back({{"element", to_expression(cut.cotangent_basis[i])},
                   {"value", to_string(cut.cotangent_values[i])}});
  return {{"element", to_json(cut.element)}, {"functional", to_json(cut.functional)}, {"cotangent", cot}};
}

struct CommandResult {
  json result;
  int precision = 0;
  int exit_code = 0;
  std::string status = "ok";
};

using Handler = std::function<CommandResult(const JobContext&)>;

CommandResult cmd_analyze(const JobContext& ctx) {
  const auto r = invariants_report(ctx.generators(), ctx.closure_options());
  return {{{"invariants", invariants_json(r)}, {"staircase", to_json(r.staircase)}}, r.staircase.work_trunc};
}

CommandResult cmd_inverse_system(const JobContext& ctx) {
  const auto a = ctx.generators();
  const auto s = closure(a, ctx.closure_options());
  const auto v = inverse_system(a, s);
  return {{{"delta", s.delta}, {"conductor", s.conductor}, {"dimension", v.dim()}, {"inverse_system", to_json(v)}},
          s.work_trunc};
}

json certificate_json(const AFCertificate& cert) {
  json c = {{"verdict", cert.verdict},
            {"degree_bound", cert.degree_bound},
            {"natural_set_size", cert.generators},
            {"linear_solutions", cert.linear_solutions}};
  if (cert.witness) c["witness"] = to_json(*cert.witness);
  return c;
}

CommandResult cmd_check_af(const JobContext& ctx) {
  const auto a = ctx.generators();
  const auto s = closure(a, ctx.closure_options());
  const auto cert = is_algebra_forming(ctx.operators(), s, a);
  CommandResult out{{{"algebra_forming", cert.verdict}, {"certificate", certificate_json(cert)}}, s.work_trunc};
  if (!cert.verdict) {
    out.exit_code = exit_code_for(static_cast<int>(ErrorCode::NotAlgebraForming));
    out.status = "not_algebra_forming";
  }
  return out;
}

CommandResult cmd_annihilate(const JobContext& ctx) {
  const auto s = closure(ctx.generators(), ctx.closure_options());
  const auto ann = annihilator(ctx.operators(), s);
  return {{{"algebra", to_json(s)}, {"annihilator", to_json(ann)}}, s.work_trunc};
}

CommandResult cmd_filtration(const JobContext& ctx) {
  const auto f = standard_filtration(ctx.generators(), ctx.closure_options());
  json steps = json::array();
  for (const auto& st : f.steps)
    steps.push_back({{"adjoined", "t^" + std::to_string(st.gap_exponent)},
                     {"gap_exponent", st.gap_exponent},
                     {"algebra", to_json(st.algebra)},
                     {"cut", cut_json(st.cut)}});
  return {{{"base", to_json(f.base)}, {"steps", steps}}, f.base.work_trunc};
}

CommandResult cmd_derivations(const JobContext& ctx) {
  const auto s = closure(ctx.generators(), ctx.closure_options());
  const auto d = derivation_space(s);
  json basis = json::array();
  for (std::size_t j = 0; j < d.functionals.size(); ++j)
    basis.push_back({{"cotangent_element", to_json(d.cotangent_basis[j])}, {"functional", to_json(d.functionals[j])}});
  json result = {{"embedding_dimension", d.functionals.size()}, {"derivations", basis}};
  if (ctx.has("v")) {
    json checks = json::array();
    for (const auto& g : ctx.operators()) checks.push_back({{"operator", to_json(g)}, {"is_derivation", is_derivation(g, s)}});
    result["checks"] = checks;
  }
  return {result, s.work_trunc};
}

CommandResult cmd_gorenstein(const JobContext& ctx) {
  const auto s = closure(ctx.generators(), ctx.closure_options());
  const auto d = from_gaps(s.gaps);
  const auto g = gorenstein_check(d);
  return {{{"symmetric", g.symmetric},
           {"c_equals_2delta", g.c_equals_2delta},
           {"palindromic_inverse", g.palindromic_inverse},
           {"gorenstein", g.symmetric},
           {"delta", s.delta},
           {"conductor", s.conductor}},
          s.work_trunc};
}

CommandResult cmd_semigroup(const JobContext& ctx) {
  const auto d = from_generators(semigroup_exponents(ctx));
  const auto g = gorenstein_check(d);
  json r = to_json(d);
  r["gorenstein"] = {{"symmetric", g.symmetric},
                     {"c_equals_2delta", g.c_equals_2delta},
                     {"palindromic_inverse", g.palindromic_inverse}};
  r["inverse_system"] = to_json(monomial_inverse_system(d));
  return {r};
}

CommandResult cmd_saturation(const JobContext& ctx) {
  const auto ch = ctx.characteristic();
  const auto s = saturation_from_characteristic(ch);
  return {{{"e0", ch.e0},
           {"betas", ch.betas},
           {"m", s.pairs.m},
           {"n", s.pairs.n},
           {"exponents", s.exponents},
           {"semigroup", to_json(s.semigroup)}}};
}

CommandResult cmd_transport(const JobContext& ctx) {
  const Series h = ctx.h();
  std::optional<int> c = ctx.integer("c");
  std::optional<InverseSystem> v;
  int precision = 0;
  if (ctx.has("v")) v = make_inverse_system(ctx.operators(), c.value_or(0));
  if (!c || !v) {
    const auto a = ctx.generators();
    const auto s = closure(a, ctx.closure_options());
    precision = s.work_trunc;
    if (!c) c = s.conductor;
    if (!v) v = inverse_system(a, s);
  }
  const bool inverse = ctx.flag("inverse");
  const Transport t = inverse ? transport_dual_inverse(h, *c, *v) : transport_dual(h, *c, *v);
  return {{{"c", *c},
           {"direction", inverse ? "inverse" : "forward"},
           {"matrix", to_json(t.matrix)},
           {"source", to_json(*v)},
           {"image", to_json(t.image)}},
          precision};
}

CommandResult cmd_blowup_chain(const JobContext& ctx) {
  const auto chain = blowup_chain(ctx.generators(), ctx.closure_options());
  json steps = json::array();
  std::vector<int> mult;
  std::vector<int> e1;
  for (const auto& st : chain.steps) {
    steps.push_back({{"multiplicity", st.multiplicity}, {"e1", st.e1}, {"delta", st.delta}, {"conductor", st.conductor}});
    mult.push_back(st.multiplicity);
    e1.push_back(st.e1);
  }
  return {{{"steps", steps}, {"multiplicities", mult}, {"e1_sequence", e1}, {"e1_sum", chain.delta_check}}};
}

CommandResult cmd_canonical(const JobContext& ctx) {
  const auto a = ctx.generators();
  const auto s = closure(a, ctx.closure_options());
  const auto v = inverse_system(a, s);
  json tails = json::array();
  for (const auto& g : v.basis) {
    const auto alpha = rosenlicht(g, s.conductor);
    json coeffs = json::object();
    for (std::size_t i = 0; i < alpha.coeffs.size(); ++i)
      if (!is_zero(alpha.coeffs[i])) coeffs[std::to_string(-static_cast<int>(i) - 1)] = to_string(alpha.coeffs[i]);
    tails.push_back({{"operator", to_json(g)}, {"laurent", {{"expression", to_expression(alpha)}, {"coefficients", coeffs}}}});
  }
  return {{{"conductor", s.conductor}, {"delta", s.delta}, {"representatives", tails}}, s.work_trunc};
}

CommandResult cmd_verify(const JobContext& ctx) {
  const auto a = ctx.generators();
  const auto r = invariants_report(a, ctx.closure_options());
  const auto check = verify_duality(a, ctx.closure_options());
  CommandResult out{{{"dimension_matches", check.dimension_matches},
                     {"top_degree_matches", check.top_degree_matches},
                     {"round_trip", check.round_trip},
                     {"invariant_inequalities", true},
                     {"ok", check.ok()}},
                    r.staircase.work_trunc};
  if (!check.ok()) {
    out.exit_code = 1;
    out.status = "verification_failed";
  }
  return out;
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"analyze", cmd_analyze},         {"inverse-system", cmd_inverse_system},
      {"check-af", cmd_check_af},       {"annihilate", cmd_annihilate},
      {"filtration", cmd_filtration},   {"derivations", cmd_derivations},
      {"gorenstein", cmd_gorenstein},   {"semigroup", cmd_semigroup},
      {"saturation", cmd_saturation},   {"transport", cmd_transport},
      {"blowup-chain", cmd_blowup_chain}, {"canonical", cmd_canonical},
      {"verify", cmd_verify},
  };
  return table;
}

json error_json(const Error& e) {
  json err = {{"code", error_code_name(e.code())}, {"message", e.what()}};
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) err["position"] = p->position();
  if (const auto* p = dynamic_cast<const PrecisionExhausted*>(&e)) err["required_trunc"] = p->required_trunc();
  if (const auto* p = dynamic_cast<const InfiniteCodimension*>(&e)) err["value_gcd"] = p->value_gcd();
  if (const auto* p = dynamic_cast<const NotAlgebraForming*>(&e)) err["certificate"] = certificate_json(p->certificate());
  return err;
}

JobOutcome run_single(const json& job) {
  const auto start = std::chrono::steady_clock::now();
  json report = {{"schema_version", kReportSchemaVersion}};
  int exit = 0;
  CommandResult result;
  try {
    const JobContext ctx(job);
    report["command"] = ctx.command();
    report["input"] = ctx.input();
    const auto it = handlers().find(ctx.command());
    if (it == handlers().end()) throw InvalidArgument("unknown command '" + ctx.command() + "'");
    result = it->second(ctx);
    report["status"] = result.status;
    report["result"] = result.result;
    exit = result.exit_code;
  } catch (const Error& e) {
    exit = exit_code_for(static_cast<int>(e.code()));
    report["status"] = "error";
    report["error"] = error_json(e);
  } catch (const json::exception& e) {
    exit = 1;
    report["status"] = "error";
    report["error"] = {{"code", error_code_name(ErrorCode::InvalidArgument)}, {"message", e.what()}};
  }
  if (!report.contains("command")) report["command"] = nullptr;
  const auto micros =
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
  report["exit_code"] = exit;
  report["diagnostics"] = {{"precision", result.precision}, {"timings_us", {{"total", static_cast<long long>(micros)}}}};
  return {report, exit};
}

}  // namespace

JobOutcome run_job(const json& job) {
  if (!job.is_array()) return run_single(job);
  json reports = json::array();
  int exit = 0;
  for (const auto& j : job) {
    auto one = run_single(j);
    if (exit == 0) exit = one.exit_code;
    reports.push_back(std::move(one.report));
  }
  return {{{"schema_version", kReportSchemaVersion},
           {"status", exit == 0 ? "ok" : "error"},
           {"exit_code", exit},
           {"jobs", reports}},
          exit};
}

JobOutcome run_job_text(std::string_view text) {
  json job;
  try {
    job = json::parse(text);
  } catch (const json::parse_error& e) {
    const ParseError err(std::string("malformed job JSON: ") + e.what(), e.byte);
    json report = {{"schema_version", kReportSchemaVersion},
                   {"command", nullptr},
                   {"status", "error"},
                   {"exit_code", 3},
                   {"error", error_json(err)},
                   {"diagnostics", {{"precision", 0}, {"timings_us", {{"total", 0}}}}}};
    return {report, 3};
  }
  return run_job(job);
}

}  // namespace branchdual
