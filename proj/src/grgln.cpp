#include "tinv/grgln.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "tinv/errors.hpp"
#include "tinv/gl2.hpp"

namespace tinv {

namespace {

std::string pos_id(char letter, Position pos, std::uint32_t k) {
  return std::string(1, letter) + "_" + std::to_string(pos.i) + "_" + std::to_string(pos.j) + "_" +
         std::to_string(k);
}

std::string tag(Position pos, std::uint32_t k) {
  return "(" + std::to_string(pos.i) + "," + std::to_string(pos.j) + "," + std::to_string(k) + ")";
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t b = 1;
  for (std::uint64_t i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Short verbatim statements backing the cited steps (whitespace collapsed).
namespace quote {
constexpr const char* gl2_equals_borel = R"(H^i(GL_2\F_{p^r};\F_p)=H^i(B_2\F_{p^r};\F_p))";
constexpr const char* gl2_dim_one = R"(\dim H^{r(2p-3)}(GL_2\F_{p^r};\F_p)=1.)";
constexpr const char* nonvanishing =
    R"(Suppose $2\leq n\leq p$. Then \[ H^{r(2p-3)}(GL_n\F_{p^r};\F_p)\neq0. \])";
constexpr const char* hook_detection_gl =
    R"(\[ H^{r(2p-3)}(GL_n\F_{p^r})\to\prod_{i<j} H^{r(2p-3)}(K_{ij}) \] is injective.)";
constexpr const char* small_hook = R"(is zero, unless $(i,j)=(1,n)$.)";
constexpr const char* big_hook = R"(\[ H^{r(2p-3)}(GL_n\F_{p^r})\to H^{r(2p-3)}(K) \] is injective.)";
constexpr const char* edge_vanishes =
    R"(restriction $H^{2p-3}(GL_n\F_p)\to H^{2p-3}(L_i)$ vanishes.)";
constexpr const char* edge_kernel_bound =
    R"(this shows that the kernel of \[ H^{2p-3}(GL_n\F_p)\to\prod_{1<i<n}H^{2p-3}(L_i) \] has dimension at most one, or zero when $n>p$.)";
constexpr const char* root_detection = R"(\[ H^r(U_n)^T\to\prod_{i<j}H^r(E_{ij})^T \] is injective.)";
constexpr const char* root_vanishing =
    R"(However, when $n>2$, restriction to each root subgroup vanishes by Corollary~\ref{rootsubgroup}, and this map is zero; consequently, $H^r(GL_n\F_{2^r})=0$.)";
constexpr const char* superdiag_retracts = R"(the $E_{k,k+1}$ are $T$-equivariant retracts of $U_n$)";
constexpr const char* nonadjacent_trivial =
    R"(Restriction $\displaystyle H^r(U_n)^T\to H^r(E_{ij})^T$ is trivial for $j>i+1$.)";
}  // namespace quote

Ingredient computed(std::string fact, std::int64_t value) {
  return {Ingredient::Status::computed, std::move(fact), "", value};
}

Ingredient cited(std::string fact, const char* q) {
  return {Ingredient::Status::cited, std::move(fact), q, std::nullopt};
}

}  // namespace

std::vector<std::string> GrUnSpec::ids_at(Position pos) const {
  std::vector<std::string> ids;
  const std::string letters = field.p == 2 ? "z" : "xy";
  for (char letter : letters) {
    for (std::uint32_t k = 0; k < field.r; ++k) ids.push_back(pos_id(letter, pos, k));
  }
  return ids;
}

GrUnSpec build_gr_un(std::uint64_t n, std::uint64_t p, std::uint64_t r) {
  if (n < 2) throw invalid_input("gr U_n needs n >= 2");
  if (n > 64) throw invalid_input("gr U_n supports n <= 64");
  const auto f = ffq::PrimePower::make(p, r);
  const std::int64_t group_order = std::int64_t{f.q} - 1;
  std::vector<Position> positions;
  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned j = i + 1; j <= n; ++j) positions.push_back({i, j});
  }
  auto weight = [&](Position pos, std::uint32_t k) {
    std::int64_t twist = 1;
    for (std::uint32_t t = 0; t < k; ++t) twist *= f.p;
    TorusWeight w{std::vector<std::int64_t>(n, 0)};
    w.coords[pos.i - 1] = twist;
    w.coords[pos.j - 1] = -twist;
    return w;
  };
  std::vector<GeneratorSpec> gens;
  if (f.p == 2) {
    for (auto pos : positions) {
      for (std::uint32_t k = 0; k < f.r; ++k) {
        gens.push_back({pos_id('z', pos, k), Parity::polynomial, 1, weight(pos, k), tag(pos, k)});
      }
    }
  } else {
    for (auto pos : positions) {
      for (std::uint32_t k = 0; k < f.r; ++k) {
        gens.push_back({pos_id('x', pos, k), Parity::exterior, 1, weight(pos, k), tag(pos, k)});
      }
    }
    for (auto pos : positions) {
      for (std::uint32_t k = 0; k < f.r; ++k) {
        gens.push_back({pos_id('y', pos, k), Parity::polynomial, 2, weight(pos, k),
                        tag(pos, k) + " y=beta(x)"});
      }
    }
  }
  AlgebraSpec alg(f, n, std::vector<std::int64_t>(n, group_order), std::move(gens));
  return GrUnSpec{static_cast<unsigned>(n), f, std::move(alg), std::move(positions)};
}

SubgroupSupport subgroup_support(const GrUnSpec& spec, SubgroupKind kind) {
  const unsigned n = spec.n;
  SubgroupSupport s;
  auto in_hook = [](Position pos, unsigned l, unsigned m) {
    return (pos.i == l && pos.j > l && pos.j <= m) || (pos.i >= l && pos.j == m);
  };
  const auto range = [](bool ok, const std::string& what) {
    if (!ok) throw invalid_input("index out of range for " + what);
  };
  switch (kind.type) {
    case SubgroupKind::Type::hook:
      range(kind.a >= 1 && kind.a < kind.b && kind.b <= n, "hook(l,m)");
      s.name = "K_" + std::to_string(kind.a) + "," + std::to_string(kind.b);
      for (auto pos : spec.positions) {
        if (in_hook(pos, kind.a, kind.b)) s.positions.push_back(pos);
      }
      break;
    case SubgroupKind::Type::edge_L:
      range(kind.a > 1 && kind.a < n, "edge_L(i), which needs 1 < i < n");
      s.name = "L_" + std::to_string(kind.a);
      for (auto pos : spec.positions) {
        if (!in_hook(pos, 1, n)) continue;
        if ((pos.i == 1 && pos.j == kind.a) || (pos.i == kind.a && pos.j == n)) continue;
        s.positions.push_back(pos);
      }
      break;
    case SubgroupKind::Type::root:
      range(kind.a >= 1 && kind.a < kind.b && kind.b <= n, "root(i,j)");
      s.name = "E_" + std::to_string(kind.a) + "," + std::to_string(kind.b);
      s.positions.push_back({kind.a, kind.b});
      break;
    case SubgroupKind::Type::superdiag:
      range(kind.a >= 1 && kind.a < n, "superdiag(k)");
      s.name = "E_" + std::to_string(kind.a) + "," + std::to_string(kind.a + 1);
      s.positions.push_back({kind.a, kind.a + 1});
      break;
  }
  for (auto pos : s.positions) {
    for (auto& id : spec.ids_at(pos)) s.generator_ids.push_back(std::move(id));
  }
  std::sort(s.generator_ids.begin(), s.generator_ids.end(), [&](const auto& a, const auto& b) {
    return spec.algebra.require_index(a) < spec.algebra.require_index(b);
  });
  return s;
}

HookDetectionReport hook_detection(const GrUnSpec& spec,
                                   const std::optional<std::vector<SubgroupSupport>>& family) {
  HookDetectionReport rep;
  rep.n = spec.n;
  rep.p = spec.field.p;
  rep.r = spec.field.r;
  rep.degree = spec.field.r * (2 * spec.field.p - 3);

  std::vector<SubgroupSupport> members;
  if (family) {
    rep.family_kind = "custom";
    members = *family;
  } else if (spec.field.p == 2) {
    rep.family_kind = "root";
    for (auto pos : spec.positions) members.push_back(subgroup_support(spec, SubgroupKind::root(pos.i, pos.j)));
  } else {
    rep.family_kind = "hook";
    for (unsigned l = 1; l <= spec.n; ++l) {
      for (unsigned m = l + 1; m <= spec.n; ++m) {
        members.push_back(subgroup_support(spec, SubgroupKind::hook(l, m)));
      }
    }
  }
  std::vector<std::vector<std::string>> ids;
  for (const auto& m : members) {
    rep.family.push_back(m.name);
    ids.push_back(m.generator_ids);
  }
  rep.series = dimension_series(spec.algebra, rep.degree, SeriesFilter::invariant);
  rep.vanishing_below = std::all_of(rep.series.dims.begin() + 1, rep.series.dims.end() - 1,
                                    [](auto d) { return d == 0; });
  rep.detection = detection_kernel(spec.algebra, rep.degree, ids);
  rep.pass = rep.vanishing_below && rep.detection.kernel_dim == 0;
  return rep;
}

EssentialKernelReport essential_kernel(std::uint64_t n, std::uint64_t p) {
  if (p == 2) throw invalid_input("the essential kernel needs odd p");
  const GrUnSpec gr = build_gr_un(n, p, 1);
  const SubgroupSupport hook = subgroup_support(gr, SubgroupKind::hook(1, gr.n));
  EssentialKernelReport rep{.n = gr.n,
                            .p = gr.field.p,
                            .degree = 2 * gr.field.p - 3,
                            .hook_algebra = gr.algebra.restricted_to(hook.generator_ids),
                            .family = {},
                            .detection = {},
                            .expected_dim = 0,
                            .expected_witness = std::nullopt};
  std::vector<std::vector<std::string>> family;
  for (unsigned i = 2; i < gr.n; ++i) {
    auto s = subgroup_support(gr, SubgroupKind::edge(i));
    rep.family.push_back(s.name);
    family.push_back(std::move(s.generator_ids));
  }
  rep.detection = detection_kernel(rep.hook_algebra, rep.degree, family);

  rep.expected_dim = gr.n <= gr.field.p ? 1 : 0;
  if (rep.expected_dim == 1) {
    std::vector<std::pair<std::string, std::uint32_t>> exps;
    for (unsigned i = 2; i < gr.n; ++i) {
      exps.emplace_back(pos_id('x', {1, i}, 0), 1);
      exps.emplace_back(pos_id('x', {i, gr.n}, 0), 1);
    }
    exps.emplace_back(pos_id('x', {1, gr.n}, 0), 1);
    if (gr.field.p > gr.n) exps.emplace_back(pos_id('y', {1, gr.n}, 0), gr.field.p - gr.n);
    rep.expected_witness = make_monomial(rep.hook_algebra, exps);
  }
  rep.discrepancy = rep.detection.kernel_dim != rep.expected_dim ||
                    (rep.expected_witness && rep.detection.kernel_basis.front() != *rep.expected_witness);
  rep.caution = gr.n == 3;
  return rep;
}

TheoremReport theorem_lowest_gl(std::uint64_t n, std::uint64_t p, std::uint64_t r) {
  const auto f = ffq::PrimePower::make(p, r);
  if (f.p != 2 && f.r != 1) {
    throw invalid_input("the lowest-degree dimension is only established for r = 1 or p = 2");
  }
  if (n < 2) throw invalid_input("n must be at least 2");
  TheoremReport rep;
  rep.theorem = "lowest-gl";
  rep.n = static_cast<unsigned>(n);
  rep.p = f.p;
  rep.r = f.r;
  rep.degree = f.r * (2 * f.p - 3);
  rep.dimension = n <= f.p ? 1 : 0;

  if (n == 2) {
    const Landmarks lm = gl2_landmarks(f.p, f.r);
    const std::uint64_t dim = lm.invariant.dims[rep.degree];
    rep.ingredients.push_back(computed("dim of the F_q^x-invariants of H^*(F_q) in degree r(2p-3)", dim));
    rep.ingredients.push_back(cited("GL_2 and its Borel subgroup have the same mod-p cohomology", quote::gl2_equals_borel));
    rep.ingredients.push_back(cited("dim H^{r(2p-3)}(GL_2 F_q; F_p) = 1", quote::gl2_dim_one));
    rep.lower_bound = rep.upper_bound = dim;
    rep.discrepancy = dim != rep.dimension || !lm.match;
    return rep;
  }

  const GrUnSpec gr = build_gr_un(n, f.p, f.r);
  const HookDetectionReport hooks = hook_detection(gr);
  rep.ingredients.push_back(computed("gr U_n invariants vanish in degrees 0 < d < r(2p-3) (1 = yes)",
                                     hooks.vanishing_below ? 1 : 0));
  rep.ingredients.push_back(computed("kernel of gr-level restriction to the " + hooks.family_kind +
                                         " family in degree r(2p-3)",
                                     static_cast<std::int64_t>(hooks.detection.kernel_dim)));
  bool gr_ok = hooks.pass;

  if (f.p == 2) {
    rep.ingredients.push_back(cited("H^r(U_n)^T injects into the product over root subgroups", quote::root_detection));
    rep.ingredients.push_back(cited("restriction from GL_n to every root subgroup vanishes for n > 2", quote::root_vanishing));
    rep.lower_bound = 0;
    rep.upper_bound = 0;
    rep.discrepancy = !gr_ok || rep.dimension != 0;
    return rep;
  }

  rep.ingredients.push_back(cited("restriction to the hook subgroups is injective", quote::hook_detection_gl));
  rep.ingredients.push_back(cited("restriction to every hook other than K_{1,n} vanishes", quote::small_hook));
  rep.ingredients.push_back(cited("restriction to the largest hook K = K_{1,n} is injective", quote::big_hook));
  rep.ingredients.push_back(cited("restriction from GL_n to each L_i vanishes", quote::edge_vanishes));

  const EssentialKernelReport ess = essential_kernel(n, f.p);
  rep.ingredients.push_back(computed("dim ker(H^{2p-3}(gr K)^T -> prod_i H^{2p-3}(gr L_i)^T)",
                                     static_cast<std::int64_t>(ess.detection.kernel_dim)));
  rep.ingredients.push_back(cited("the group-level kernel is bounded by the gr-level kernel", quote::edge_kernel_bound));
  for (const auto& m : ess.detection.kernel_basis) {
    rep.kernel_basis.push_back(monomial_to_string(ess.hook_algebra, m));
  }
  rep.upper_bound = ess.detection.kernel_dim;
  if (n <= f.p) {
    rep.ingredients.push_back(cited("a nonzero class exists in degree r(2p-3) for 2 <= n <= p", quote::nonvanishing));
    rep.lower_bound = 1;
  }
  // The computed bound must pin the claimed value; anything else is flagged.
  rep.discrepancy = !gr_ok || ess.discrepancy || rep.upper_bound != rep.dimension ||
                    rep.lower_bound > rep.upper_bound;
  return rep;
}

TheoremReport theorem_borel_char2(std::uint64_t n, std::uint64_t r) {
  if (n < 2) throw invalid_input("n must be at least 2");
  const GrUnSpec gr = build_gr_un(n, 2, r);
  TheoremReport rep;
  rep.theorem = "borel2";
  rep.n = gr.n;
  rep.p = 2;
  rep.r = gr.field.r;
  rep.degree = gr.field.r;
  rep.dimension = n - 1;

  const HookDetectionReport roots = hook_detection(gr);
  const std::uint64_t gr_dim = roots.series.dims[rep.degree];
  const std::uint64_t positions = binomial(n, 2);
  rep.ingredients.push_back(computed("dim H^r(gr U_n)^T", static_cast<std::int64_t>(gr_dim)));
  rep.ingredients.push_back(computed("kernel of gr-level restriction to the root subgroups in degree r",
                                     static_cast<std::int64_t>(roots.detection.kernel_dim)));
  const Landmarks b2 = gl2_landmarks(2, gr.field.r);
  const std::uint64_t b2_dim = b2.invariant.dims[rep.degree];
  rep.ingredients.push_back(computed("dim H^r(B_2 F_{2^r}; F_2) from the rank-one invariants",
                                     static_cast<std::int64_t>(b2_dim)));
  rep.ingredients.push_back(cited("H^r(U_n)^T injects into the product over root subgroups", quote::root_detection));
  rep.ingredients.push_back(cited("each superdiagonal root subgroup is a T-equivariant retract", quote::superdiag_retracts));
  rep.ingredients.push_back(cited("restriction to E_{ij} is trivial for j > i+1", quote::nonadjacent_trivial));
  rep.lower_bound = rep.upper_bound = (n - 1) * b2_dim;
  rep.discrepancy = gr_dim != positions || !roots.pass || rep.upper_bound != rep.dimension;
  return rep;
}

bool regular_unipotent_check(const ffq::FqMatrix& m) {
  if (!m.is_upper_unitriangular()) throw invalid_input("matrix is not upper unitriangular");
  for (std::size_t k = 0; k + 1 < m.dim(); ++k) {
    if (m.field().is_zero(m.at(k, k + 1))) return false;
  }
  return true;
}

ffq::FqMatrix jordan_nilpotent(std::shared_ptr<const ffq::Field> field, std::size_t n) {
  ffq::FqMatrix j(field, n);
  for (std::size_t k = 0; k + 1 < n; ++k) j.set(k, k + 1, field->one());
  return j;
}

namespace {

std::vector<std::uint64_t> matrix_key(const ffq::FqMatrix& m) {
  std::vector<std::uint64_t> key;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) key.push_back(m.field().lex_rank(m.at(i, j)));
  }
  return key;
}

ffq::FqMatrix scaled(const ffq::FqMatrix& m, const ffq::FqElement& s) {
  ffq::FqMatrix out(m.field_ptr(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) out.set(i, j, m.field().mul(s, m.at(i, j)));
  }
  return out;
}

ffq::FqMatrix plus_identity(const ffq::FqMatrix& m) {
  ffq::FqMatrix out = m;
  for (std::size_t i = 0; i < m.dim(); ++i) out.set(i, i, m.field().add(m.at(i, i), m.field().one()));
  return out;
}

}  // namespace

CommutingSubgroupReport commuting_regular_subgroup(std::uint64_t n, std::uint64_t p, std::uint64_t r) {
  const auto size = ffq::PrimePower::make(p, r);
  if (n < 2) throw invalid_input("n must be at least 2");
  if (n > size.p) {
    throw invalid_input("n > p: I + lambda J has order > p, so no elementary abelian subgroup arises");
  }
  if (size.q > 4096) throw resource_limit("commuting subgroup enumeration capped at q <= 4096");
  auto field = std::make_shared<const ffq::Field>(size);
  CommutingSubgroupReport rep;
  rep.n = static_cast<unsigned>(n);
  rep.p = size.p;
  rep.r = size.r;
  const ffq::FqMatrix jordan = jordan_nilpotent(field, n);
  for (std::uint32_t i = 0; i < size.r; ++i) {
    rep.generators.push_back(plus_identity(scaled(jordan, field->basis(i))));
  }

  rep.generators_commute = true;
  for (std::size_t a = 0; a < rep.generators.size(); ++a) {
    for (std::size_t b = a + 1; b < rep.generators.size(); ++b) {
      rep.generators_commute &= rep.generators[a] * rep.generators[b] == rep.generators[b] * rep.generators[a];
    }
  }
  rep.generators_order_p = std::all_of(rep.generators.begin(), rep.generators.end(), [&](const auto& g) {
    return !g.is_identity() && ffq::mat_pow(g, size.p).is_identity();
  });

  // Products g_0^{c_0} ... g_{r-1}^{c_{r-1}} over all exponent vectors.
  std::map<std::vector<std::uint64_t>, ffq::FqMatrix> group;
  std::vector<std::uint32_t> c(size.r, 0);
  for (std::uint64_t idx = 0; idx < size.q; ++idx) {
    std::uint64_t v = idx;
    for (auto& ci : c) {
      ci = static_cast<std::uint32_t>(v % size.p);
      v /= size.p;
    }
    ffq::FqMatrix g = ffq::FqMatrix::identity(field, n);
    for (std::uint32_t i = 0; i < size.r; ++i) g = g * ffq::mat_pow(rep.generators[i], c[i]);
    if (!g.is_identity()) {
      ++rep.nontrivial_elements;
      if (regular_unipotent_check(g)) ++rep.regular_elements;
    }
    group.emplace(matrix_key(g), std::move(g));
  }
  rep.group_order = group.size();
  rep.closed = true;
  for (const auto& [key, g] : group) {
    for (const auto& gen : rep.generators) rep.closed &= group.count(matrix_key(g * gen)) == 1;
  }
  rep.pass = rep.generators_commute && rep.generators_order_p && rep.group_order == size.q &&
             rep.regular_elements == size.q - 1 && rep.nontrivial_elements == size.q - 1 && rep.closed;
  return rep;
}

ExponentReport exponent_check(std::uint64_t n, std::uint64_t p, std::uint64_t r, ffq::EnumerationMode mode) {
  const auto size = ffq::PrimePower::make(p, r);
  if (n < 2) throw invalid_input("n must be at least 2");
  if (n > 64) throw invalid_input("n must be at most 64");
  if (mode.kind == ffq::EnumerationMode::Kind::sample && mode.count > 10'000'000) {
    throw resource_limit("sample count exceeds 10^7");
  }
  auto field = std::make_shared<const ffq::Field>(size);
  ExponentReport rep;
  rep.n = static_cast<unsigned>(n);
  rep.p = size.p;
  rep.r = size.r;
  rep.mode = mode;
  rep.expected_exponent_p = n <= size.p;
  rep.exponent_p = true;
  ffq::UnitriangularElements stream(field, n, mode);
  while (auto g = stream.next()) {
    ++rep.checked;
    if (ffq::mat_pow(*g, size.p).is_identity()) continue;
    if (rep.exponent_p) {
      rep.exponent_p = false;
      // Orders in U_n are powers of p bounded by p^ceil(log_p n) <= p * n.
      rep.witness_order = ffq::matrix_order(*g, std::uint64_t{size.p} * n);
      rep.witness = std::move(*g);
    }
  }
  const bool sampled = mode.kind == ffq::EnumerationMode::Kind::sample;
  rep.pass = rep.exponent_p == rep.expected_exponent_p || (sampled && !rep.expected_exponent_p);
  return rep;
}

std::uint32_t chern_series_coefficient(std::uint64_t n, std::uint64_t p, std::uint64_t j) {
  if (!ffq::is_prime(p)) throw invalid_input("p must be prime");
  if (n < 2) throw invalid_input("n must be at least 2");
  // p^{n-1} - 1 has n-1 base-p digits, all p-1.
  std::vector<std::uint64_t> top(n - 1, p - 1);
  std::vector<std::uint64_t> bottom;
  for (std::uint64_t v = j; v; v /= p) bottom.push_back(v % p);
  if (bottom.size() > top.size()) return 0;
  // Lucas: C(N, j) = prod C(N_i, j_i) mod p.
  std::uint64_t value = 1;
  for (std::size_t i = 0; i < bottom.size(); ++i) {
    std::uint64_t b = 1;
    for (std::uint64_t t = 0; t < bottom[i]; ++t) {
      b = b * ((top[i] - t) % p) % p;
      // divide by (t+1) via Fermat inverse
      std::uint64_t inv = 1, base = (t + 1) % p, e = p - 2;
      while (e) {
        if (e & 1) inv = inv * base % p;
        base = base * base % p;
        e >>= 1;
      }
      b = b * inv % p;
    }
    value = value * b % p;
  }
  if (j % 2 == 1) value = (p - value) % p;
  return static_cast<std::uint32_t>(value);
}

std::uint32_t chern_coefficient(std::uint64_t n, std::uint64_t p) { return chern_series_coefficient(n, p, 1); }

std::uint64_t max_rank(std::uint64_t n, std::uint64_t r) {
  if (n < 1) throw invalid_input("n must be positive");
  return r * (n * n / 4);
}

}  // namespace tinv
