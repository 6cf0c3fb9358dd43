// Command-line front end over the tinv C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tinv/tinv.h"

using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitResource = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::optional<std::uint64_t> p, r, n, rank, degree, max_degree, seed, samples, terms, a, b;
  std::optional<std::string> type, lattice, spec, filter, monomial, family, matrix, kind, grid;
  bool oracle = false, list = false, brute = false;
  std::string format = "table";
  std::optional<std::string> out;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + " is not valid JSON: " + e.what());
  }
}

// "1 1 0; 0 1 1; 0 0 1" -> [[1,1,0],[0,1,1],[0,0,1]]
json parse_matrix(const std::string& text) {
  json rows = json::array();
  std::stringstream all(text);
  std::string row_text;
  while (std::getline(all, row_text, ';')) {
    std::stringstream row_stream(row_text);
    json row = json::array();
    long long v;
    while (row_stream >> v) {
      if (v < 0) throw std::invalid_argument("matrix entries must be nonnegative lex ranks");
      row.push_back(static_cast<std::uint64_t>(v));
    }
    if (!row_stream.eof()) throw std::invalid_argument("bad matrix entry in '" + row_text + "'");
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

json build_params(const std::string& op, const Flags& f) {
  json params = json::object();
  auto put = [&](const char* key, const auto& v) {
    if (v) params[key] = *v;
  };
  put("p", f.p);
  put("r", f.r);
  put("n", f.n);
  put("degree", f.degree);
  put("max_degree", f.max_degree);
  put("seed", f.seed);
  put("samples", f.samples);
  put("terms", f.terms);
  put("a", f.a);
  put("b", f.b);
  put("filter", f.filter);
  put("kind", f.kind);
  if (f.type) {
    params["type"] = f.rank ? *f.type + std::to_string(*f.rank) : *f.type;
  }
  if (f.lattice) {
    if (*f.lattice == "adjoint" || *f.lattice == "sc") {
      params["lattice"] = *f.lattice;
    } else {
      params["lattice"] = read_json_file(*f.lattice);
    }
  }
  if (f.spec) params["spec"] = read_json_file(*f.spec);
  if (f.family) params["family"] = read_json_file(*f.family);
  if (f.grid) params["grid"] = read_json_file(*f.grid);
  if (f.monomial) params["monomial"] = *f.monomial;
  if (f.matrix) params["matrix"] = parse_matrix(*f.matrix);
  if (f.oracle) params["oracle"] = true;
  if (f.list) params["list"] = true;
  if (f.brute) params["brute"] = true;
  if (op == "check.exponent" && !f.samples && f.seed) {
    throw std::invalid_argument("--seed needs --samples");
  }
  return params;
}

// ---- rendering -------------------------------------------------------------

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool compact(const json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v) {
    if (e.is_object()) return false;
    if (e.is_array() && !compact(e)) return false;
  }
  return v.dump().size() <= 100;
}

void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (v.is_object()) {
    for (const auto& [k, child] : v.items()) flatten(child, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (v.is_array() && !compact(v)) {
    std::size_t i = 0;
    for (const auto& child : v) flatten(child, prefix + "[" + std::to_string(i++) + "]", rows);
    if (v.empty()) rows.emplace_back(prefix, "[]");
  } else {
    rows.emplace_back(prefix, scalar_text(v));
  }
}

std::string aligned(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::string out;
  for (const auto& [k, v] : rows) out += k + std::string(width - k.size() + 2, ' ') + v + "\n";
  return out;
}

const json* series_of(const json& results) {
  if (results.contains("series") && results["series"].contains("dims")) return &results["series"]["dims"];
  if (results.contains("brute_series")) return &results["brute_series"]["dims"];
  return nullptr;
}

std::string render_table(const json& rep) {
  std::string out = rep["operation"].get<std::string>() + "  " + (rep["pass"].get<bool>() ? "PASS" : "FAIL") + "\n";
  const json& results = rep["results"];
  if (rep["operation"] == "verify.all") {
    for (const auto& pt : results["points"]) {
      out += std::string(pt["pass"].get<bool>() ? "PASS  " : "FAIL  ") + pt["operation"].get<std::string>() + " " +
             pt["params"].dump() + "\n";
    }
    out += "passed " + results["passed"].dump() + " of " + results["total"].dump() + "\n";
    return out;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(results, "", rows);
  out += aligned(rows);
  if (rep.contains("ingredients")) {
    out += "ingredients:\n";
    for (const auto& i : rep["ingredients"]) {
      out += "  [" + i["status"].get<std::string>() + "] " + i["fact"].get<std::string>();
      if (i.contains("value")) out += " = " + i["value"].dump();
      out += "\n";
      if (i.contains("quote")) out += "      \"" + i["quote"].get<std::string>() + "\"\n";
    }
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string render_csv(const json& rep) {
  const json& results = rep["results"];
  std::string out;
  if (rep["operation"] == "verify.all") {
    out = "operation,params,pass\n";
    for (const auto& pt : results["points"]) {
      out += csv_field(pt["operation"].get<std::string>()) + "," + csv_field(pt["params"].dump()) + "," +
             (pt["pass"].get<bool>() ? "true" : "false") + "\n";
    }
    return out;
  }
  if (const json* dims = series_of(results)) {
    out = "degree,dim\n";
    for (std::size_t d = 0; d < dims->size(); ++d) out += std::to_string(d) + "," + (*dims)[d].dump() + "\n";
    return out;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(results, "", rows);
  out = "key,value\n";
  for (const auto& [k, v] : rows) out += csv_field(k) + "," + csv_field(v) + "\n";
  return out;
}

void emit(const std::string& text, const std::optional<std::string>& path) {
  if (!path) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream out(*path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + *path + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing " + *path);
}

int execute(const std::string& op, const Flags& flags) {
  json params;
  try {
    params = build_params(op, flags);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  tinv_report* report = nullptr;
  const tinv_status status = tinv_run(op.c_str(), params.dump().c_str(), &report);
  if (status != TINV_OK) {
    std::cerr << "error: " << tinv_last_error() << "\n";
    switch (status) {
      case TINV_INVALID_INPUT: return kExitInvalid;
      case TINV_RESOURCE_LIMIT: return kExitResource;
      case TINV_IO_ERROR: return kExitIo;
      default: return kExitFailed;
    }
  }
  const std::string text = tinv_report_json(report);
  const bool passed = tinv_report_passed(report) != 0;
  tinv_report_free(report);
  try {
    if (flags.format == "json") {
      emit(text, flags.out);
    } else {
      const json rep = json::parse(text);
      emit(flags.format == "csv" ? render_csv(rep) : render_table(rep), flags.out);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  if (!passed) std::cerr << op << ": verification failed or discrepancy flagged\n";
  return passed ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Torus invariants of elementary abelian cohomology and root-system checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tinv_version()));
  Flags flags;
  std::string selected;

  auto group = [&](const std::string& name, const std::string& help) {
    auto* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };
  // Registers a leaf subcommand; `extra` adds its specific flags.
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& op, const std::string& help,
                  const std::function<void(CLI::App*)>& extra) {
    auto* sub = parent->add_subcommand(name, help);
    sub->add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"table", "json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", flags.out, "Write the report to this file");
    extra(sub);
    sub->callback([&selected, op] { selected = op; });
  };
  auto pr = [&](CLI::App* s) {
    s->add_option("--p", flags.p, "Prime p")->required();
    s->add_option("--r", flags.r, "Extension degree r (default 1)");
  };
  auto npr = [&](CLI::App* s) {
    s->add_option("--n", flags.n, "Matrix size n")->required();
    pr(s);
  };
  auto series_flags = [&](CLI::App* s) {
    s->add_option("--max-degree", flags.max_degree, "Highest degree of the series");
    s->add_option("--filter", flags.filter, "Series filter")->check(CLI::IsMember({"all", "invariant", "nilpotent"}));
  };
  auto root_flags = [&](CLI::App* s) {
    s->add_option("--type", flags.type, "Root system type, e.g. A3, or B with --rank, or A2+B3")->required();
    s->add_option("--rank", flags.rank, "Rank appended to --type");
    s->add_option("--lattice", flags.lattice, "adjoint, sc or a JSON file with cocharacter/character bases");
  };

  auto* field = group("field", "Finite field construction");
  leaf(field, "info", "field.info", "Modulus and multiplicative generator of F_{p^r}", pr);

  auto* inv = group("invariants", "Invariant monomials of an algebra spec");
  leaf(inv, "run", "invariants.run", "Dimension series of an algebra spec", [&](CLI::App* s) {
    s->add_option("--spec", flags.spec, "Algebra spec JSON file")->required();
    s->add_option("--max-degree", flags.max_degree, "Highest degree")->required();
    s->add_option("--filter", flags.filter, "Series filter")->check(CLI::IsMember({"all", "invariant", "nilpotent"}));
    s->add_flag("--oracle", flags.oracle, "Cross-check against the scalar-action oracle");
    s->add_flag("--list", flags.list, "List the monomials in each degree");
  });
  leaf(inv, "weight", "invariants.weight", "Torus weight of a monomial", [&](CLI::App* s) {
    s->add_option("--spec", flags.spec, "Algebra spec JSON file")->required();
    s->add_option("--monomial", flags.monomial, "Monomial such as x0*y0^2")->required();
  });
  leaf(inv, "detect", "invariants.detect", "Detection kernel against a family of generator sets", [&](CLI::App* s) {
    s->add_option("--spec", flags.spec, "Algebra spec JSON file")->required();
    s->add_option("--degree", flags.degree, "Degree")->required();
    s->add_option("--family", flags.family, "JSON file: array of generator-id arrays")->required();
  });

  auto* check = group("check", "Exhaustive and group-level checks");
  leaf(check, "quillen", "check.quillen", "Exhaustive Quillen divisibility check", pr);
  leaf(check, "exponent", "check.exponent", "Exponent-p check over U_n(F_q)", [&](CLI::App* s) {
    npr(s);
    s->add_option("--samples", flags.samples, "Sample this many elements instead of enumerating");
    s->add_option("--seed", flags.seed, "Sampling seed");
  });
  leaf(check, "regular", "check.regular", "Regular-unipotent test of a unitriangular matrix", [&](CLI::App* s) {
    pr(s);
    s->add_option("--n", flags.n, "Size of the default Jordan-block test matrix");
    s->add_option("--matrix", flags.matrix, "Rows separated by ';', entries as lex ranks");
  });
  leaf(check, "commuting", "check.commuting", "Elementary abelian subgroup of regular unipotents", npr);

  for (const std::string g : {"gl2", "sl2"}) {
    auto* sub = group(g, g == "gl2" ? "Scalar-torus invariants for GL_2" : "Square-torus invariants for SL_2");
    leaf(sub, "algebra", g + ".algebra", "The algebra spec", pr);
    leaf(sub, "landmarks", g + ".landmarks", "Lowest invariant degrees and witnesses", pr);
    leaf(sub, "series", g + ".series", "Invariant dimension series", [&](CLI::App* s) {
      pr(s);
      series_flags(s);
    });
  }

  auto* roots = group("rootsys", "Root systems and lattices");
  leaf(roots, "info", "rootsys.info", "Cartan data, positive roots, Coxeter numbers", [&](CLI::App* s) {
    root_flags(s);
    s->add_option("--p", flags.p, "Also test whether p is good and h <= p");
  });
  leaf(roots, "bound", "rootsys.bound", "Characteristic-2 vanishing bound r/gcd(e, 2^r-1)", [&](CLI::App* s) {
    root_flags(s);
    s->add_option("--r", flags.r, "Extension degree r");
    s->add_flag("--brute", flags.brute, "Confirm vanishing below the bound by enumeration");
  });
  leaf(roots, "divisibility", "rootsys.divisibility", "Divisibility of roots in the character lattice",
       [&](CLI::App* s) {
         root_flags(s);
         s->add_option("--n", flags.n, "Divisor (default 2)");
       });
  leaf(roots, "action-index", "rootsys.action-index", "Index of the torus image on each root subgroup",
       [&](CLI::App* s) {
         root_flags(s);
         pr(s);
       });
  leaf(roots, "lie-gr", "rootsys.lie-gr", "Associated graded algebra spec for a group of Lie type", [&](CLI::App* s) {
    root_flags(s);
    pr(s);
    series_flags(s);
  });

  auto* grun = group("grun", "Associated graded of the unitriangular group");
  leaf(grun, "build", "grun.build", "Algebra spec of gr U_n", [&](CLI::App* s) {
    npr(s);
    series_flags(s);
  });
  leaf(grun, "support", "grun.support", "Generator support of a subgroup", [&](CLI::App* s) {
    npr(s);
    s->add_option("--kind", flags.kind, "Subgroup kind")
        ->required()
        ->check(CLI::IsMember({"hook", "edge", "root", "superdiag"}));
    s->add_option("--a", flags.a, "First index (l, i or k)")->required();
    s->add_option("--b", flags.b, "Second index (m or j)");
  });
  leaf(grun, "detect", "grun.detect", "Hook or root-subgroup detection at degree r(2p-3)", npr);
  leaf(grun, "essential", "grun.essential", "Kernel against the edge subgroups (r = 1)", npr);
  leaf(grun, "chern", "grun.chern", "Top Chern class coefficients mod p", [&](CLI::App* s) {
    s->add_option("--n", flags.n, "Matrix size n")->required();
    s->add_option("--p", flags.p, "Prime p")->required();
    s->add_option("--terms", flags.terms, "Number of series coefficients");
  });
  leaf(grun, "rank", "grun.rank", "Maximal elementary abelian rank r*floor(n^2/4)", [&](CLI::App* s) {
    s->add_option("--n", flags.n, "Matrix size n")->required();
    s->add_option("--r", flags.r, "Extension degree r");
  });

  auto* thm = group("theorem", "Annotated dimension reporters");
  leaf(thm, "lowest-gl", "theorem.lowest-gl", "dim H^{r(2p-3)}(GL_n F_q; F_p)", npr);
  leaf(thm, "borel2", "theorem.borel2", "dim H^r(B_n F_{2^r}; F_2)", [&](CLI::App* s) {
    s->add_option("--n", flags.n, "Matrix size n")->required();
    s->add_option("--r", flags.r, "Extension degree r");
  });

  auto* verify = group("verify", "Run a verification grid");
  leaf(verify, "all", "verify.all", "Run the built-in grid or --grid FILE", [&](CLI::App* s) {
    s->add_option("--grid", flags.grid, "JSON array of {operation, params, expect}");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }
  return execute(selected, flags);
}
