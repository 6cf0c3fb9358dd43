#include "tinv/report.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>

#include "tinv/errors.hpp"
#include "tinv/gl2.hpp"
#include "tinv/grgln.hpp"
#include "tinv/rootsys.hpp"

namespace tinv::report {

namespace {

// ---- parameter access ------------------------------------------------------

std::uint64_t uint_param(const json& params, const char* key) {
  if (!params.contains(key)) throw invalid_input(std::string("missing parameter '") + key + "'");
  const json& v = params.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw invalid_input(std::string("parameter '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::uint64_t uint_param(const json& params, const char* key, std::uint64_t fallback) {
  return params.contains(key) && !params.at(key).is_null() ? uint_param(params, key) : fallback;
}

std::string string_param(const json& params, const char* key, std::optional<std::string> fallback = {}) {
  if (!params.contains(key) || params.at(key).is_null()) {
    if (fallback) return *fallback;
    throw invalid_input(std::string("missing parameter '") + key + "'");
  }
  if (!params.at(key).is_string()) throw invalid_input(std::string("parameter '") + key + "' must be a string");
  return params.at(key).get<std::string>();
}

bool bool_param(const json& params, const char* key, bool fallback) {
  if (!params.contains(key) || params.at(key).is_null()) return fallback;
  if (!params.at(key).is_boolean()) throw invalid_input(std::string("parameter '") + key + "' must be a boolean");
  return params.at(key).get<bool>();
}

unsigned degree_param(const json& params, const char* key) {
  const auto d = uint_param(params, key);
  if (d > 10'000) throw invalid_input(std::string("parameter '") + key + "' is too large");
  return static_cast<unsigned>(d);
}

SeriesFilter filter_param(const json& params) {
  const std::string f = string_param(params, "filter", "invariant");
  if (f == "all") return SeriesFilter::all;
  if (f == "invariant") return SeriesFilter::invariant;
  if (f == "nilpotent" || f == "invariant_nilpotent") return SeriesFilter::invariant_nilpotent;
  throw invalid_input("filter must be all, invariant or nilpotent");
}

IntMatrix int_matrix(const json& j, const char* what) {
  if (!j.is_array()) throw invalid_input(std::string(what) + " must be an array of rows");
  IntMatrix m;
  for (const auto& row : j) {
    if (!row.is_array()) throw invalid_input(std::string(what) + " must be an array of rows");
    std::vector<std::int64_t> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw invalid_input(std::string(what) + " entries must be integers");
      r.push_back(v.get<std::int64_t>());
    }
    m.push_back(std::move(r));
  }
  return m;
}

// "adjoint", "sc", or {"cocharacter": [[..]], "character": [[..]]}.
LatticeSpec lattice_param(const RootSystem& rs, const json& params, bool cocharacter) {
  const json v = params.contains("lattice") ? params.at("lattice") : json("adjoint");
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    LatticeKind kind;
    if (s == "adjoint") {
      kind = LatticeKind::adjoint;
    } else if (s == "sc" || s == "simply_connected") {
      kind = LatticeKind::simply_connected;
    } else {
      throw invalid_input("lattice must be adjoint, sc or a basis object");
    }
    return cocharacter ? cocharacter_lattice(rs, kind) : character_lattice(rs, kind);
  }
  const char* key = cocharacter ? "cocharacter" : "character";
  if (!v.is_object() || !v.contains(key)) {
    throw invalid_input(std::string("custom lattice needs a '") + key + "' basis");
  }
  return custom_lattice(int_matrix(v.at(key), key));
}

const char* lattice_kind_name(LatticeKind k) {
  switch (k) {
    case LatticeKind::adjoint: return "adjoint";
    case LatticeKind::simply_connected: return "simply_connected";
    case LatticeKind::custom: return "custom";
  }
  return "custom";
}

json lattice_json(const LatticeSpec& l) { return {{"kind", lattice_kind_name(l.kind)}, {"basis", l.basis}}; }

// ---- value serialization ---------------------------------------------------

json field_json(const ffq::Field& f) {
  return {{"p", f.p()}, {"r", f.r()}, {"q", f.q()}, {"irreducible", f.modulus()}};
}

json series_json(const DimSeries& s) { return {{"dims", s.dims}}; }

json monomial_list(const AlgebraSpec& alg, const std::vector<Monomial>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(monomial_to_json(alg, m));
  return out;
}

json monomial_text(const AlgebraSpec& alg, const std::vector<Monomial>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(monomial_to_string(alg, m));
  return out;
}

json optional_monomial(const AlgebraSpec& alg, const std::optional<Monomial>& m) {
  return m ? json(monomial_to_string(alg, *m)) : json(nullptr);
}

json detection_json(const AlgebraSpec& alg, const DetectionResult& d) {
  return {{"degree", d.degree},
          {"invariant_dim", d.invariant_dim},
          {"kernel_dim", d.kernel_dim},
          {"cokernel_dim", d.cokernel_dim},
          {"kernel_basis", monomial_list(alg, d.kernel_basis)},
          {"kernel_basis_text", monomial_text(alg, d.kernel_basis)}};
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json envelope(const std::string& op, const json& params, json results, bool pass) {
  return {{"tool_version", kToolVersion},
          {"operation", op},
          {"params", params},
          {"results", std::move(results)},
          {"pass", pass}};
}

std::shared_ptr<const ffq::Field> make_field(const json& params) {
  return std::make_shared<const ffq::Field>(ffq::PrimePower::make(uint_param(params, "p"), uint_param(params, "r", 1)));
}

// ---- operations --------------------------------------------------------------

json op_field_info(const std::string& op, const json& params) {
  const auto field = make_field(params);
  const auto& g = field->multiplicative_generator();
  json results = {{"field", field_json(*field)},
                  {"multiplicative_generator", g.coeffs},
                  {"generator_order", field->multiplicative_order(g)}};
  return envelope(op, params, results, field->multiplicative_order(g) == field->q() - 1);
}

AlgebraSpec spec_param(const json& params) {
  if (!params.contains("spec")) throw invalid_input("missing parameter 'spec'");
  return algebra_from_json(params.at("spec"));
}

json op_invariants_run(const std::string& op, const json& params) {
  const AlgebraSpec alg = spec_param(params);
  const unsigned max_degree = degree_param(params, "max_degree");
  const SeriesFilter filter = filter_param(params);
  const bool oracle = bool_param(params, "oracle", false);
  const bool list = bool_param(params, "list", false);
  json results = {{"spec_hash", spec_hash(alg)},
                  {"filter", string_param(params, "filter", "invariant")},
                  {"series", series_json(dimension_series(alg, max_degree, filter))}};
  bool pass = true;
  if (list || oracle) {
    json basis = json::array();
    bool agree = true;
    for (unsigned d = 0; d <= max_degree; ++d) {
      std::vector<Monomial> ms = filter == SeriesFilter::all ? enumerate_monomials(alg, d) : invariant_monomials(alg, d);
      auto drop_pure = [&](std::vector<Monomial>& v) {
        std::erase_if(v, [&](const Monomial& m) {
          return std::none_of(m.exps.begin(), m.exps.end(),
                              [&](const auto& e) { return alg.generator(e.first).parity == Parity::exterior; });
        });
      };
      if (filter == SeriesFilter::invariant_nilpotent) drop_pure(ms);
      if (oracle && filter != SeriesFilter::all) {
        auto ref = invariant_monomials_oracle(alg, d);
        if (filter == SeriesFilter::invariant_nilpotent) drop_pure(ref);
        agree = agree && ref == ms;
      }
      if (list) basis.push_back({{"degree", d}, {"monomials", monomial_text(alg, ms)}});
    }
    if (list) results["basis"] = std::move(basis);
    if (oracle) {
      results["oracle_agrees"] = agree;
      pass = agree;
    }
  }
  return envelope(op, params, results, pass);
}

Monomial parse_monomial_text(const AlgebraSpec& alg, const std::string& text) {
  std::vector<std::pair<std::string, std::uint32_t>> exps;
  if (text != "1" && !text.empty()) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto end = std::min(text.find('*', start), text.size());
      const std::string factor = text.substr(start, end - start);
      const auto caret = factor.find('^');
      std::uint32_t e = 1;
      if (caret != std::string::npos) {
        try {
          e = static_cast<std::uint32_t>(std::stoul(factor.substr(caret + 1)));
        } catch (const std::exception&) {
          throw invalid_input("bad exponent in monomial factor '" + factor + "'");
        }
      }
      exps.emplace_back(factor.substr(0, caret), e);
      start = end + 1;
    }
  }
  return make_monomial(alg, exps);
}

json op_invariants_weight(const std::string& op, const json& params) {
  const AlgebraSpec alg = spec_param(params);
  if (!params.contains("monomial")) throw invalid_input("missing parameter 'monomial'");
  const json& mj = params.at("monomial");
  const Monomial m = mj.is_string() ? parse_monomial_text(alg, mj.get<std::string>()) : monomial_from_json(alg, mj);
  const TorusWeight w = monomial_weight(alg, m);
  const bool invariant = std::all_of(w.coords.begin(), w.coords.end(), [](auto c) { return c == 0; });
  json results = {{"spec_hash", spec_hash(alg)},
                  {"monomial", monomial_to_json(alg, m)},
                  {"degree", monomial_degree(alg, m)},
                  {"weight", w.coords},
                  {"invariant", invariant}};
  return envelope(op, params, results, true);
}

json op_invariants_detect(const std::string& op, const json& params) {
  const AlgebraSpec alg = spec_param(params);
  const unsigned degree = degree_param(params, "degree");
  if (!params.contains("family") || !params.at("family").is_array()) {
    throw invalid_input("parameter 'family' must be an array of generator-id arrays");
  }
  std::vector<std::vector<std::string>> family;
  for (const auto& member : params.at("family")) {
    if (!member.is_array()) throw invalid_input("family members must be arrays of ids");
    std::vector<std::string> ids;
    for (const auto& id : member) {
      if (!id.is_string()) throw invalid_input("family members must be arrays of ids");
      ids.push_back(id.get<std::string>());
    }
    family.push_back(std::move(ids));
  }
  json results = detection_json(alg, detection_kernel(alg, degree, family));
  results["spec_hash"] = spec_hash(alg);
  return envelope(op, params, results, true);
}

json op_check_quillen(const std::string& op, const json& params) {
  const QuillenReport q = quillen_verify(uint_param(params, "p"), uint_param(params, "r", 1));
  json results = {{"p", q.p},
                  {"r", q.r},
                  {"tuples_checked", q.tuples_checked},
                  {"equality_tuples", q.equality_tuples},
                  {"counterexample", optional_json(q.counterexample)}};
  return envelope(op, params, results, q.pass);
}

json op_check_exponent(const std::string& op, const json& params) {
  const auto samples = uint_param(params, "samples", 0);
  const auto mode = samples == 0 ? ffq::EnumerationMode::all()
                                 : ffq::EnumerationMode::sample(samples, uint_param(params, "seed", 0));
  const ExponentReport e = exponent_check(uint_param(params, "n"), uint_param(params, "p"), uint_param(params, "r", 1), mode);
  json results = {{"n", e.n},
                  {"p", e.p},
                  {"r", e.r},
                  {"mode", samples == 0 ? "all" : "sample"},
                  {"checked", e.checked},
                  {"exponent_p", e.exponent_p},
                  {"expected_exponent_p", e.expected_exponent_p},
                  {"witness", e.witness ? matrix_to_json(*e.witness) : json(nullptr)},
                  {"witness_order", optional_json(e.witness_order)}};
  if (samples != 0) results["seed"] = mode.seed;
  return envelope(op, params, results, e.pass);
}

json op_check_regular(const std::string& op, const json& params) {
  const auto field = make_field(params);
  const auto n = uint_param(params, "n", 3);
  ffq::FqMatrix m = ffq::FqMatrix::identity(field, n);
  if (params.contains("matrix") && !params.at("matrix").is_null()) {
    m = matrix_from_json(field, params.at("matrix"));
  } else {
    if (n < 1 || n > 64) throw invalid_input("n must lie in [1, 64]");
    for (std::size_t k = 0; k + 1 < n; ++k) m.set(k, k + 1, field->one());
  }
  json results = {{"field", field_json(*field)}, {"matrix", matrix_to_json(m)}, {"regular", regular_unipotent_check(m)}};
  return envelope(op, params, results, true);
}

json op_check_commuting(const std::string& op, const json& params) {
  const CommutingSubgroupReport c =
      commuting_regular_subgroup(uint_param(params, "n"), uint_param(params, "p"), uint_param(params, "r", 1));
  json gens = json::array();
  for (const auto& g : c.generators) gens.push_back(matrix_to_json(g));
  json results = {{"n", c.n},
                  {"p", c.p},
                  {"r", c.r},
                  {"generators", gens},
                  {"generators_commute", c.generators_commute},
                  {"generators_order_p", c.generators_order_p},
                  {"group_order", c.group_order},
                  {"nontrivial_elements", c.nontrivial_elements},
                  {"regular_elements", c.regular_elements},
                  {"closed", c.closed}};
  return envelope(op, params, results, c.pass);
}

json algebra_results(const AlgebraSpec& alg) {
  return {{"algebra", algebra_to_json(alg)}, {"spec_hash", spec_hash(alg)}, {"generator_count", alg.size()}};
}

json landmarks_json(const AlgebraSpec& alg, const Landmarks& lm) {
  json expected = {{"first_positive_degree", lm.expected_first_degree},
                   {"first_dim", 1},
                   {"witness", monomial_to_string(alg, lm.expected_witness)},
                   {"lowest_nonnilpotent_degree", optional_json(lm.expected_nonnilpotent_degree)},
                   {"nonnilpotent_witness", optional_monomial(alg, lm.expected_nonnilpotent_witness)}};
  return {{"spec_hash", spec_hash(alg)},
          {"searched_to", lm.searched_to},
          {"first_positive_degree", optional_json(lm.first_positive_degree)},
          {"first_dim", lm.first_dim},
          {"witness", optional_monomial(alg, lm.witness)},
          {"lowest_nonnilpotent_degree", optional_json(lm.lowest_nonnilpotent_degree)},
          {"nonnilpotent_witness", optional_monomial(alg, lm.nonnilpotent_witness)},
          {"square_free_check", optional_json(lm.square_free_check)},
          {"series", series_json(lm.invariant)},
          {"nilpotent_series", series_json(lm.nilpotent)},
          {"expected", expected},
          {"match", lm.match}};
}

template <bool Special>
json op_rank_one_algebra(const std::string& op, const json& params) {
  const auto p = uint_param(params, "p");
  const auto r = uint_param(params, "r", 1);
  return envelope(op, params, algebra_results(Special ? sl2_algebra(p, r) : gl2_algebra(p, r)), true);
}

template <bool Special>
json op_rank_one_landmarks(const std::string& op, const json& params) {
  const auto p = uint_param(params, "p");
  const auto r = uint_param(params, "r", 1);
  const Landmarks lm = Special ? sl2_landmarks(p, r) : gl2_landmarks(p, r);
  const AlgebraSpec alg = Special ? sl2_algebra(p, r) : gl2_algebra(p, r);
  return envelope(op, params, landmarks_json(alg, lm), lm.match);
}

template <bool Special>
json op_rank_one_series(const std::string& op, const json& params) {
  const auto p = uint_param(params, "p");
  const auto r = uint_param(params, "r", 1);
  const AlgebraSpec alg = Special ? sl2_algebra(p, r) : gl2_algebra(p, r);
  const unsigned max_degree = static_cast<unsigned>(uint_param(params, "max_degree", r * (2 * p - 2) + 1));
  if (max_degree > 10'000) throw invalid_input("max_degree is too large");
  json results = {{"spec_hash", spec_hash(alg)},
                  {"filter", string_param(params, "filter", "invariant")},
                  {"series", series_json(dimension_series(alg, max_degree, filter_param(params)))}};
  return envelope(op, params, results, true);
}

RootSystem root_system_param(const json& params) { return RootSystem(parse_components(string_param(params, "type"))); }

json root_json(const Root& root) {
  return {{"coords", root.coords},
          {"height", root.height()},
          {"component", root.component},
          {"length", root.length == LengthClass::long_root ? "long" : "short"}};
}

json op_rootsys_info(const std::string& op, const json& params) {
  const RootSystem rs = root_system_param(params);
  json roots = json::array();
  json heights = json::array();
  for (const auto& root : rs.positive_roots()) {
    roots.push_back(root_json(root));
    heights.push_back(root.height());
  }
  json witnesses = json::array();
  for (const auto& w : coweight_one_witness(rs)) {
    witnesses.push_back({{"component", w.component}, {"simple_index", optional_json(w.simple_index)}});
  }
  json highest = json::array();
  for (std::size_t c = 0; c < rs.components().size(); ++c) highest.push_back(rs.highest_root(c).coords);
  const LatticeSpec cochar = lattice_param(rs, params, true);
  json results = {{"components", components_to_string(rs.components())},
                  {"rank", rs.rank()},
                  {"cartan", rs.cartan()},
                  {"positive_roots", roots},
                  {"heights", heights},
                  {"positive_root_count", rs.positive_roots().size()},
                  {"highest_roots", highest},
                  {"coxeter_numbers", coxeter_numbers(rs)},
                  {"coweight_one_witness", witnesses},
                  {"cocharacter_lattice", lattice_json(cochar)},
                  {"cofundamental_exponent", cofundamental_exponent(rs, cochar)}};
  if (params.contains("p") && !params.at("p").is_null()) {
    const auto p = uint_param(params, "p");
    if (!ffq::is_prime(p)) throw invalid_input("p must be prime");
    results["good_prime"] = is_good_prime(rs, p);
    const auto h = coxeter_numbers(rs);
    results["coxeter_at_most_p"] = std::all_of(h.begin(), h.end(), [&](unsigned v) { return v <= p; });
  }
  return envelope(op, params, results, true);
}

json op_rootsys_bound(const std::string& op, const json& params) {
  const RootSystem rs = root_system_param(params);
  const LatticeSpec cochar = lattice_param(rs, params, true);
  const auto r = uint_param(params, "r", 1);
  const Char2Bound b = char2_vanishing_bound(rs, cochar, r);
  json results = {{"components", components_to_string(rs.components())},
                  {"cocharacter_lattice", lattice_json(cochar)},
                  {"exponent", b.exponent},
                  {"gcd", b.gcd},
                  {"bound", {{"num", b.bound.num}, {"den", b.bound.den}}}};
  bool pass = true;
  if (bool_param(params, "brute", false)) {
    // Degrees 0 < d < num/den.
    const auto top = static_cast<unsigned>((b.bound.num + b.bound.den - 1) / b.bound.den - 1);
    const AlgebraSpec alg = lie_gr_algebra(rs, cochar, 2, r);
    const DimSeries s = dimension_series(alg, top, SeriesFilter::invariant);
    const bool vanishing = std::all_of(s.dims.begin() + 1, s.dims.end(), [](auto d) { return d == 0; });
    results["spec_hash"] = spec_hash(alg);
    results["brute_series"] = series_json(s);
    results["brute_vanishing"] = vanishing;
    pass = vanishing;
  }
  return envelope(op, params, results, pass);
}

json op_rootsys_divisibility(const std::string& op, const json& params) {
  const RootSystem rs = root_system_param(params);
  const LatticeSpec chars = lattice_param(rs, params, false);
  const auto n = static_cast<std::int64_t>(uint_param(params, "n", 2));
  if (n < 1) throw invalid_input("divisor n must be positive");
  json roots = json::array();
  for (std::size_t i = 0; i < rs.positive_roots().size(); ++i) {
    json entry = root_json(rs.positive_roots()[i]);
    entry["lattice_coords"] = root_in_lattice(rs, chars, i);
    entry["divisible"] = root_divisibility(rs, chars, i, n);
    roots.push_back(std::move(entry));
  }
  json results = {{"components", components_to_string(rs.components())},
                  {"character_lattice", lattice_json(chars)},
                  {"divisor", n},
                  {"roots", roots}};
  return envelope(op, params, results, true);
}

json op_rootsys_action_index(const std::string& op, const json& params) {
  const RootSystem rs = root_system_param(params);
  const LatticeSpec chars = lattice_param(rs, params, false);
  const auto size = ffq::PrimePower::make(uint_param(params, "p"), uint_param(params, "r", 1));
  json roots = json::array();
  for (std::size_t i = 0; i < rs.positive_roots().size(); ++i) {
    json entry = root_json(rs.positive_roots()[i]);
    entry["index"] = root_action_index(rs, chars, i, size.q);
    roots.push_back(std::move(entry));
  }
  json results = {{"components", components_to_string(rs.components())},
                  {"character_lattice", lattice_json(chars)},
                  {"q", size.q},
                  {"roots", roots}};
  return envelope(op, params, results, true);
}

json op_rootsys_lie_gr(const std::string& op, const json& params) {
  const RootSystem rs = root_system_param(params);
  const LatticeSpec cochar = lattice_param(rs, params, true);
  const AlgebraSpec alg = lie_gr_algebra(rs, cochar, uint_param(params, "p"), uint_param(params, "r", 1));
  json results = algebra_results(alg);
  if (params.contains("max_degree") && !params.at("max_degree").is_null()) {
    results["series"] = series_json(dimension_series(alg, degree_param(params, "max_degree"), filter_param(params)));
  }
  return envelope(op, params, results, true);
}

GrUnSpec gr_param(const json& params) {
  return build_gr_un(uint_param(params, "n"), uint_param(params, "p"), uint_param(params, "r", 1));
}

json op_grun_build(const std::string& op, const json& params) {
  const GrUnSpec gr = gr_param(params);
  json results = algebra_results(gr.algebra);
  if (params.contains("max_degree") && !params.at("max_degree").is_null()) {
    results["series"] =
        series_json(dimension_series(gr.algebra, degree_param(params, "max_degree"), filter_param(params)));
  }
  return envelope(op, params, results, true);
}

json op_grun_support(const std::string& op, const json& params) {
  const GrUnSpec gr = gr_param(params);
  const std::string kind = string_param(params, "kind");
  const auto a = static_cast<unsigned>(uint_param(params, "a"));
  const auto b = static_cast<unsigned>(uint_param(params, "b", 0));
  SubgroupKind k;
  if (kind == "hook") {
    k = SubgroupKind::hook(a, b);
  } else if (kind == "edge" || kind == "edge_L") {
    k = SubgroupKind::edge(a);
  } else if (kind == "root") {
    k = SubgroupKind::root(a, b);
  } else if (kind == "superdiag") {
    k = SubgroupKind::superdiag(a);
  } else {
    throw invalid_input("kind must be hook, edge, root or superdiag");
  }
  const SubgroupSupport s = subgroup_support(gr, k);
  json positions = json::array();
  for (auto pos : s.positions) positions.push_back({pos.i, pos.j});
  json results = {{"spec_hash", spec_hash(gr.algebra)},
                  {"name", s.name},
                  {"positions", positions},
                  {"generator_ids", s.generator_ids}};
  return envelope(op, params, results, true);
}

json op_grun_detect(const std::string& op, const json& params) {
  const GrUnSpec gr = gr_param(params);
  const HookDetectionReport h = hook_detection(gr);
  json results = {{"spec_hash", spec_hash(gr.algebra)},
                  {"n", h.n},
                  {"p", h.p},
                  {"r", h.r},
                  {"degree", h.degree},
                  {"family_kind", h.family_kind},
                  {"family", h.family},
                  {"series", series_json(h.series)},
                  {"vanishing_below", h.vanishing_below},
                  {"detection", detection_json(gr.algebra, h.detection)},
                  {"kernel_dim", h.detection.kernel_dim},
                  {"dim_at_degree", h.detection.invariant_dim}};
  return envelope(op, params, results, h.pass);
}

json op_grun_essential(const std::string& op, const json& params) {
  if (uint_param(params, "r", 1) != 1) throw invalid_input("the essential kernel is defined for r = 1 only");
  const EssentialKernelReport e = essential_kernel(uint_param(params, "n"), uint_param(params, "p"));
  json results = {{"spec_hash", spec_hash(e.hook_algebra)},
                  {"n", e.n},
                  {"p", e.p},
                  {"degree", e.degree},
                  {"family", e.family},
                  {"detection", detection_json(e.hook_algebra, e.detection)},
                  {"kernel_dim", e.detection.kernel_dim},
                  {"kernel_basis", monomial_text(e.hook_algebra, e.detection.kernel_basis)},
                  {"expected_dim", e.expected_dim},
                  {"expected_witness", optional_monomial(e.hook_algebra, e.expected_witness)},
                  {"discrepancy", e.discrepancy},
                  {"caution", e.caution}};
  if (e.discrepancy) results["flag"] = "DISCREPANCY";
  return envelope(op, params, results, !e.discrepancy);
}

json op_grun_chern(const std::string& op, const json& params) {
  const auto n = uint_param(params, "n");
  const auto p = uint_param(params, "p");
  const auto terms = uint_param(params, "terms", n);
  if (terms > 4096) throw invalid_input("terms is too large");
  json coefficients = json::array();
  for (std::uint64_t j = 0; j <= terms; ++j) coefficients.push_back(chern_series_coefficient(n, p, j));
  const auto c = chern_coefficient(n, p);
  json results = {{"n", n}, {"p", p}, {"coefficient", c}, {"series_coefficients", coefficients}};
  return envelope(op, params, results, c == 1);
}

json op_grun_rank(const std::string& op, const json& params) {
  const auto n = uint_param(params, "n");
  const auto r = uint_param(params, "r", 1);
  return envelope(op, params, {{"n", n}, {"r", r}, {"max_rank", max_rank(n, r)}}, true);
}

json theorem_json(const TheoremReport& t) {
  return {{"theorem", t.theorem},
          {"n", t.n},
          {"p", t.p},
          {"r", t.r},
          {"degree", t.degree},
          {"dimension", t.dimension},
          {"lower_bound", t.lower_bound},
          {"upper_bound", t.upper_bound},
          {"kernel_basis", t.kernel_basis},
          {"discrepancy", t.discrepancy}};
}

json ingredients_json(const std::vector<Ingredient>& items) {
  json out = json::array();
  for (const auto& i : items) {
    json entry = {{"fact", i.fact}, {"status", i.status == Ingredient::Status::computed ? "computed" : "cited"}};
    if (i.status == Ingredient::Status::cited) entry["quote"] = i.quote;
    if (i.value) entry["value"] = *i.value;
    out.push_back(std::move(entry));
  }
  return out;
}

json theorem_envelope(const std::string& op, const json& params, const TheoremReport& t) {
  json results = theorem_json(t);
  if (t.discrepancy) results["flag"] = "DISCREPANCY";
  json out = envelope(op, params, std::move(results), !t.discrepancy);
  out["ingredients"] = ingredients_json(t.ingredients);
  return out;
}

json op_theorem_lowest_gl(const std::string& op, const json& params) {
  return theorem_envelope(op, params,
                          theorem_lowest_gl(uint_param(params, "n"), uint_param(params, "p"), uint_param(params, "r", 1)));
}

json op_theorem_borel2(const std::string& op, const json& params) {
  return theorem_envelope(op, params, theorem_borel_char2(uint_param(params, "n"), uint_param(params, "r", 1)));
}

bool expectations_hold(const json& report, const json& expect, json& mismatches) {
  bool ok = true;
  for (const auto& [pointer, want] : expect.items()) {
    json got = nullptr;
    try {
      got = report.at(json::json_pointer(pointer));
    } catch (const json::exception&) {
      got = nullptr;
    }
    if (got != want) {
      ok = false;
      mismatches.push_back({{"path", pointer}, {"expected", want}, {"actual", got}});
    }
  }
  return ok;
}

json op_verify_all(const std::string& op, const json& params) {
  const json grid = params.contains("grid") && !params.at("grid").is_null() ? params.at("grid") : default_grid();
  if (!grid.is_array()) throw invalid_input("grid must be an array of {operation, params, expect}");
  json points = json::array();
  std::uint64_t passed = 0;
  for (const auto& point : grid) {
    if (!point.is_object() || !point.contains("operation") || !point.at("operation").is_string()) {
      throw invalid_input("grid entries need an 'operation' string");
    }
    const std::string name = point.at("operation").get<std::string>();
    if (name == "verify.all") throw invalid_input("verify.all cannot be nested");
    const json point_params = point.value("params", json::object());
    json entry = {{"operation", name}, {"params", point_params}};
    bool ok = false;
    try {
      json rep = run_operation(name, point_params);
      if (point.contains("expect")) {
        json mismatches = json::array();
        ok = expectations_hold(rep, point.at("expect"), mismatches);
        entry["expect"] = point.at("expect");
        entry["mismatches"] = mismatches;
      } else {
        ok = rep.at("pass").get<bool>();
      }
      entry["report_pass"] = rep.at("pass");
      entry["results"] = rep.at("results");
    } catch (const invalid_input& e) {
      entry["error"] = std::string("invalid_input: ") + e.what();
    } catch (const resource_limit& e) {
      entry["error"] = std::string("resource_limit: ") + e.what();
    }
    entry["pass"] = ok;
    passed += ok ? 1 : 0;
    points.push_back(std::move(entry));
  }
  json results = {{"points", points}, {"total", points.size()}, {"passed", passed}, {"failed", points.size() - passed}};
  return envelope(op, params, results, passed == points.size());
}

using Handler = std::function<json(const std::string&, const json&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"field.info", op_field_info},
      {"invariants.run", op_invariants_run},
      {"invariants.weight", op_invariants_weight},
      {"invariants.detect", op_invariants_detect},
      {"check.quillen", op_check_quillen},
      {"check.exponent", op_check_exponent},
      {"check.regular", op_check_regular},
      {"check.commuting", op_check_commuting},
      {"gl2.algebra", op_rank_one_algebra<false>},
      {"gl2.landmarks", op_rank_one_landmarks<false>},
      {"gl2.series", op_rank_one_series<false>},
      {"sl2.algebra", op_rank_one_algebra<true>},
      {"sl2.landmarks", op_rank_one_landmarks<true>},
      {"sl2.series", op_rank_one_series<true>},
      {"rootsys.info", op_rootsys_info},
      {"rootsys.bound", op_rootsys_bound},
      {"rootsys.divisibility", op_rootsys_divisibility},
      {"rootsys.action-index", op_rootsys_action_index},
      {"rootsys.lie-gr", op_rootsys_lie_gr},
      {"grun.build", op_grun_build},
      {"grun.support", op_grun_support},
      {"grun.detect", op_grun_detect},
      {"grun.essential", op_grun_essential},
      {"grun.chern", op_grun_chern},
      {"grun.rank", op_grun_rank},
      {"theorem.lowest-gl", op_theorem_lowest_gl},
      {"theorem.borel2", op_theorem_borel2},
      {"verify.all", op_verify_all},
  };
  return table;
}

json point(const std::string& op, json params, json expect = nullptr) {
  json out = {{"operation", op}, {"params", std::move(params)}};
  if (!expect.is_null()) out["expect"] = std::move(expect);
  return out;
}

}  // namespace

// ---- public serialization ------------------------------------------------------

json algebra_to_json(const AlgebraSpec& alg) {
  json gens = json::array();
  for (const auto& g : alg.generators()) {
    gens.push_back({{"id", g.id},
                    {"parity", g.parity == Parity::exterior ? "exterior" : "polynomial"},
                    {"degree", g.degree},
                    {"weight", g.weight.coords},
                    {"tag", g.tag}});
  }
  return {{"field", {{"p", alg.field().p}, {"r", alg.field().r}}},
          {"torus_rank", alg.torus_rank()},
          {"moduli", alg.moduli()},
          {"char2_mode", alg.char2_mode()},
          {"generators", gens}};
}

AlgebraSpec algebra_from_json(const json& j) {
  try {
    if (!j.is_object()) throw invalid_input("algebra spec must be a JSON object");
    const json& f = j.at("field");
    const auto field = ffq::PrimePower::make(uint_param(f, "p"), uint_param(f, "r", 1));
    const auto rank = uint_param(j, "torus_rank");
    if (rank > 4096) throw invalid_input("torus_rank is too large");
    std::vector<std::int64_t> moduli;
    if (j.contains("moduli")) moduli = j.at("moduli").get<std::vector<std::int64_t>>();
    if (j.contains("char2_mode") && j.at("char2_mode").get<bool>() != (field.p == 2)) {
      throw invalid_input("char2_mode must equal (p == 2)");
    }
    std::vector<GeneratorSpec> gens;
    for (const auto& g : j.at("generators")) {
      GeneratorSpec spec;
      spec.id = g.at("id").get<std::string>();
      const auto parity = g.at("parity").get<std::string>();
      if (parity == "exterior") {
        spec.parity = Parity::exterior;
      } else if (parity == "polynomial") {
        spec.parity = Parity::polynomial;
      } else {
        throw invalid_input("parity must be exterior or polynomial");
      }
      spec.degree = g.contains("degree") ? static_cast<unsigned>(uint_param(g, "degree"))
                                         : (spec.parity == Parity::exterior || field.p == 2 ? 1 : 2);
      spec.weight.coords = g.at("weight").get<std::vector<std::int64_t>>();
      spec.tag = g.value("tag", "");
      gens.push_back(std::move(spec));
    }
    return AlgebraSpec(field, rank, std::move(moduli), std::move(gens));
  } catch (const json::exception& e) {
    throw invalid_input(std::string("malformed algebra spec: ") + e.what());
  }
}

std::string spec_hash(const AlgebraSpec& alg) {
  const std::string bytes = algebra_to_json(alg).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json monomial_to_json(const AlgebraSpec& alg, const Monomial& m) {
  json exps = json::object();
  for (const auto& [i, e] : m.exps) exps[alg.generator(i).id] = e;
  return {{"exps", exps}};
}

Monomial monomial_from_json(const AlgebraSpec& alg, const json& j) {
  if (!j.is_object() || !j.contains("exps") || !j.at("exps").is_object()) {
    throw invalid_input("monomial must look like {\"exps\": {id: e}}");
  }
  std::vector<std::pair<std::string, std::uint32_t>> exps;
  for (const auto& [id, e] : j.at("exps").items()) {
    if (!e.is_number_unsigned()) throw invalid_input("monomial exponents must be nonnegative integers");
    exps.emplace_back(id, e.get<std::uint32_t>());
  }
  return make_monomial(alg, exps);
}

json matrix_to_json(const ffq::FqMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m.field().lex_rank(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ffq::FqMatrix matrix_from_json(std::shared_ptr<const ffq::Field> field, const json& j) {
  if (!j.is_array() || j.empty() || j.size() > 64) throw invalid_input("matrix must be a nonempty square array");
  ffq::FqMatrix m(field, j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != j.size()) throw invalid_input("matrix must be square");
    for (std::size_t k = 0; k < j.size(); ++k) {
      if (!j[i][k].is_number_unsigned() || j[i][k].get<std::uint64_t>() >= field->q()) {
        throw invalid_input("matrix entries must be lex ranks in [0, q)");
      }
      m.set(i, k, field->from_lex_rank(j[i][k].get<std::uint64_t>()));
    }
  }
  return m;
}

json run_operation(const std::string& operation, const json& params) {
  const auto& table = handlers();
  const auto it = table.find(operation);
  if (it == table.end()) throw invalid_input("unknown operation '" + operation + "'");
  if (!params.is_object()) throw invalid_input("params must be a JSON object");
  try {
    return it->second(operation, params);
  } catch (const json::exception& e) {
    throw invalid_input(std::string("malformed parameters: ") + e.what());
  }
}

const std::vector<std::string>& operations() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, handler] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

json default_grid() {
  json grid = json::array();
  const std::vector<std::pair<unsigned, unsigned>> rank_one = {{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}, {7, 1}};
  for (auto [p, r] : rank_one) {
    json expect = {{"/results/first_positive_degree", r * (2 * p - 3)}, {"/results/first_dim", 1}, {"/results/match", true}};
    if (p != 2) expect["/results/lowest_nonnilpotent_degree"] = r * (2 * p - 2);
    grid.push_back(point("gl2.landmarks", {{"p", p}, {"r", r}}, expect));
  }
  for (auto [p, r] : std::vector<std::pair<unsigned, unsigned>>{{5, 1}, {7, 1}, {3, 2}}) {
    grid.push_back(point("sl2.landmarks", {{"p", p}, {"r", r}},
                         {{"/results/first_positive_degree", r * (p - 2)}, {"/results/first_dim", 1}}));
  }
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    for (unsigned r = 1; r <= (p == 2 ? 6u : 3u); ++r) grid.push_back(point("check.quillen", {{"p", p}, {"r", r}}));
  }
  const std::vector<std::tuple<unsigned, unsigned, unsigned>> gr_grid = {{3, 1, 5}, {5, 1, 4}, {3, 2, 3}, {2, 2, 4}, {2, 3, 3}};
  for (auto [p, r, top] : gr_grid) {
    for (unsigned n = 2; n <= top; ++n) {
      json expect = {{"/results/vanishing_below", true}, {"/results/kernel_dim", 0}};
      if (p == 2) expect["/results/dim_at_degree"] = n * (n - 1) / 2;
      grid.push_back(point("grun.detect", {{"n", n}, {"p", p}, {"r", r}}, expect));
    }
  }
  for (auto [n, p] : std::vector<std::pair<unsigned, unsigned>>{{4, 5}, {5, 5}, {4, 7}, {5, 7}, {6, 7}, {7, 7}}) {
    grid.push_back(point("grun.essential", {{"n", n}, {"p", p}}, {{"/results/kernel_dim", 1}, {"/results/discrepancy", false}}));
  }
  for (auto [n, p] : std::vector<std::pair<unsigned, unsigned>>{{4, 3}, {5, 3}, {6, 5}, {7, 5}, {8, 7}}) {
    grid.push_back(point("grun.essential", {{"n", n}, {"p", p}}, {{"/results/kernel_dim", 0}}));
  }
  for (unsigned p : {3u, 5u, 7u}) {
    grid.push_back(point("grun.essential", {{"n", 3}, {"p", p}}, {{"/results/discrepancy", true}}));
  }
  const std::vector<std::pair<std::string, unsigned>> coxeter = {
      {"A1", 2}, {"A2", 3}, {"A3", 4}, {"A4", 5}, {"A5", 6}, {"B2", 4}, {"B3", 6}, {"B4", 8}, {"C2", 4}, {"C3", 6},
      {"C4", 8}, {"D4", 6}, {"D5", 8}, {"E6", 12}, {"E7", 18}, {"E8", 30}, {"F4", 12}, {"G2", 6}};
  for (const auto& [type, h] : coxeter) {
    json expect = {{"/results/coxeter_numbers/0", h}};
    if (type == "E8" || type == "F4" || type == "G2") expect["/results/coweight_one_witness/0/simple_index"] = nullptr;
    grid.push_back(point("rootsys.info", {{"type", type}}, expect));
  }
  const std::vector<std::pair<unsigned, unsigned>> small_q = {{3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}};
  for (const char* type : {"A3", "B3", "C3"}) {
    const RootSystem rs(parse_components(type));
    for (auto [p, r] : small_q) {
      json expect = json::object();
      for (std::size_t i = 0; i < rs.positive_roots().size(); ++i) {
        expect["/results/roots/" + std::to_string(i) + "/index"] = 1;
      }
      grid.push_back(point("rootsys.action-index", {{"type", type}, {"lattice", "adjoint"}, {"p", p}, {"r", r}}, expect));
    }
  }
  for (const char* type : {"C2", "C3"}) {
    const RootSystem rs(parse_components(type));
    json divisible = json::object();
    for (std::size_t i = 0; i < rs.positive_roots().size(); ++i) {
      if (rs.positive_roots()[i].length == LengthClass::long_root) {
        divisible["/results/roots/" + std::to_string(i) + "/divisible"] = true;
      }
    }
    grid.push_back(point("rootsys.divisibility", {{"type", type}, {"lattice", "sc"}, {"n", 2}}, divisible));
    for (auto [p, r] : std::vector<std::pair<unsigned, unsigned>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {2, 1}, {2, 2}, {2, 3}}) {
      json expect = json::object();
      for (std::size_t i = 0; i < rs.positive_roots().size(); ++i) {
        if (rs.positive_roots()[i].length == LengthClass::long_root) {
          expect["/results/roots/" + std::to_string(i) + "/index"] = p == 2 ? 1 : 2;
        }
      }
      grid.push_back(point("rootsys.action-index", {{"type", type}, {"lattice", "sc"}, {"p", p}, {"r", r}}, expect));
    }
  }
  for (unsigned n = 2; n <= 6; ++n) {
    grid.push_back(point("rootsys.info", {{"type", "A" + std::to_string(n - 1)}, {"lattice", "sc"}},
                         {{"/results/cofundamental_exponent", n}}));
  }
  for (auto [type, e] : std::vector<std::pair<std::string, unsigned>>{{"B3", 2}, {"C3", 2}, {"D4", 2}, {"D5", 4}}) {
    grid.push_back(point("rootsys.info", {{"type", type}, {"lattice", "sc"}}, {{"/results/cofundamental_exponent", e}}));
  }
  for (const char* type : {"A2", "A3", "B2"}) {
    for (unsigned r = 1; r <= 3; ++r) {
      grid.push_back(point("rootsys.bound", {{"type", type}, {"lattice", "adjoint"}, {"r", r}, {"brute", true}},
                           {{"/results/exponent", 1}, {"/results/brute_vanishing", true}}));
    }
  }
  grid.push_back(point("check.exponent", {{"n", 3}, {"p", 3}, {"r", 1}}, {{"/results/exponent_p", true}, {"/results/checked", 27}}));
  grid.push_back(point("check.exponent", {{"n", 3}, {"p", 2}, {"r", 1}}, {{"/results/exponent_p", false}, {"/results/witness_order", 4}}));
  grid.push_back(point("check.exponent", {{"n", 4}, {"p", 5}, {"r", 1}, {"samples", 10000}, {"seed", 1}},
                       {{"/results/exponent_p", true}}));
  for (auto [n, p, r] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{3, 3, 1}, {3, 5, 2}, {5, 5, 1}}) {
    grid.push_back(point("check.commuting", {{"n", n}, {"p", p}, {"r", r}}));
  }
  const std::vector<std::tuple<unsigned, unsigned, unsigned, unsigned>> lowest = {
      {2, 3, 1, 1}, {3, 5, 1, 1}, {4, 5, 1, 1}, {2, 2, 3, 1}, {3, 2, 2, 1}, {4, 2, 1, 1},
      {5, 3, 1, 0}, {6, 5, 1, 0}, {3, 2, 1, 0}};
  for (auto [n, p, r, dim] : lowest) {
    grid.push_back(point("theorem.lowest-gl", {{"n", n}, {"p", p}, {"r", r}}, {{"/results/dimension", dim}}));
  }
  for (unsigned n = 2; n <= 5; ++n) {
    for (unsigned r = 1; r <= 3; ++r) {
      grid.push_back(point("theorem.borel2", {{"n", n}, {"r", r}}, {{"/results/dimension", n - 1}, {"/pass", true}}));
    }
  }
  for (auto [n, p] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {3, 3}, {2, 5}, {3, 5}, {2, 7}}) {
    grid.push_back(point("grun.chern", {{"n", n}, {"p", p}}, {{"/results/coefficient", 1}}));
  }
  return grid;
}

std::string canonical(const json& j) { return j.dump(2) + "\n"; }

}  // namespace tinv::report
