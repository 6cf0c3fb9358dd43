#include "tinv/algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>

#include "tinv/errors.hpp"

namespace tinv {

namespace {

std::int64_t reduce(std::int64_t v, std::int64_t m) {
  const std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

}  // namespace

AlgebraSpec::AlgebraSpec(ffq::PrimePower field, std::size_t torus_rank,
                         std::vector<std::int64_t> moduli, std::vector<GeneratorSpec> generators)
    : field_(field), moduli_(std::move(moduli)), generators_(std::move(generators)) {
  const std::int64_t group_order = std::int64_t{field_.q} - 1;
  if (moduli_.empty() && torus_rank > 0) moduli_.assign(torus_rank, group_order);
  if (moduli_.size() != torus_rank) throw invalid_input("moduli length must equal torus_rank");
  for (auto m : moduli_) {
    if (m <= 0 || group_order % m != 0) {
      throw invalid_input("modulus " + std::to_string(m) + " does not divide q-1 = " +
                          std::to_string(group_order));
    }
  }
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    auto& g = generators_[i];
    if (g.id.empty()) throw invalid_input("generator id must be nonempty");
    if (!index_.emplace(g.id, i).second) throw invalid_input("duplicate generator id " + g.id);
    if (g.weight.coords.size() != torus_rank) {
      throw invalid_input("weight of " + g.id + " has wrong length");
    }
    if (g.parity == Parity::exterior) {
      if (char2_mode()) throw invalid_input("exterior generator " + g.id + " in characteristic 2");
      if (g.degree != 1) throw invalid_input("exterior generator " + g.id + " must have degree 1");
    } else {
      const unsigned expected = char2_mode() ? 1 : 2;
      if (g.degree != expected) {
        throw invalid_input("polynomial generator " + g.id + " must have degree " +
                            std::to_string(expected));
      }
    }
    for (std::size_t c = 0; c < torus_rank; ++c) {
      g.weight.coords[c] = reduce(g.weight.coords[c], moduli_[c]);
    }
  }
}

std::optional<std::size_t> AlgebraSpec::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t AlgebraSpec::require_index(const std::string& id) const {
  auto idx = index_of(id);
  if (!idx) throw invalid_input("unknown generator id " + id);
  return *idx;
}

AlgebraSpec AlgebraSpec::restricted_to(const std::vector<std::string>& ids) const {
  std::set<std::size_t> keep;
  for (const auto& id : ids) keep.insert(require_index(id));
  std::vector<GeneratorSpec> gens;
  for (auto i : keep) gens.push_back(generators_[i]);
  return AlgebraSpec(field_, torus_rank(), moduli_, std::move(gens));
}

Monomial Monomial::from_dense(const std::vector<std::uint32_t>& dense) {
  Monomial m;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i]) m.exps.emplace_back(i, dense[i]);
  }
  return m;
}

std::vector<std::uint32_t> Monomial::dense(std::size_t generator_count) const {
  std::vector<std::uint32_t> d(generator_count, 0);
  for (auto [i, e] : exps) d.at(i) = e;
  return d;
}

std::uint32_t Monomial::exponent(std::size_t index) const {
  for (auto [i, e] : exps) {
    if (i == index) return e;
  }
  return 0;
}

bool canonical_less(const Monomial& a, const Monomial& b) {
  const std::size_t n = std::min(a.exps.size(), b.exps.size());
  for (std::size_t k = 0; k < n; ++k) {
    const auto [ia, ea] = a.exps[k];
    const auto [ib, eb] = b.exps[k];
    // An earlier generator with positive exponent dominates.
    if (ia != ib) return ia < ib;
    if (ea != eb) return ea > eb;
  }
  return a.exps.size() > b.exps.size();
}

void sort_canonical(std::vector<Monomial>& ms) { std::sort(ms.begin(), ms.end(), canonical_less); }

Monomial make_monomial(const AlgebraSpec& alg,
                       const std::vector<std::pair<std::string, std::uint32_t>>& exps) {
  std::vector<std::uint32_t> dense(alg.size(), 0);
  for (const auto& [id, e] : exps) {
    const std::size_t i = alg.require_index(id);
    if (dense[i]) throw invalid_input("generator " + id + " listed twice");
    if (alg.generator(i).parity == Parity::exterior && e > 1) {
      throw invalid_input("exterior generator " + id + " has exponent > 1");
    }
    dense[i] = e;
  }
  return Monomial::from_dense(dense);
}

unsigned monomial_degree(const AlgebraSpec& alg, const Monomial& m) {
  unsigned d = 0;
  for (auto [i, e] : m.exps) d += e * alg.generator(i).degree;
  return d;
}

std::string monomial_to_string(const AlgebraSpec& alg, const Monomial& m) {
  if (m.empty()) return "1";
  std::string s;
  for (auto [i, e] : m.exps) {
    if (!s.empty()) s += '*';
    s += alg.generator(i).id;
    if (e > 1) s += '^' + std::to_string(e);
  }
  return s;
}

std::vector<std::size_t> support(const Monomial& m) {
  std::vector<std::size_t> s;
  for (auto [i, e] : m.exps) s.push_back(i);
  return s;
}

TorusWeight monomial_weight(const AlgebraSpec& alg, const Monomial& m) {
  TorusWeight w{std::vector<std::int64_t>(alg.torus_rank(), 0)};
  for (auto [i, e] : m.exps) {
    if (i >= alg.size()) throw invalid_input("monomial refers to an unknown generator");
    const auto& gw = alg.generator(i).weight.coords;
    for (std::size_t c = 0; c < w.coords.size(); ++c) {
      w.coords[c] = reduce(w.coords[c] + std::int64_t{e} * gw[c], alg.moduli()[c]);
    }
  }
  return w;
}

namespace {

// Depth-first descent over generators, exponents tried from largest to
// smallest, so leaves arrive in canonical order.
class Walker {
 public:
  using Visit = std::function<void(const std::vector<std::uint32_t>&)>;

  Walker(const AlgebraSpec& alg, bool invariant_only, const EnumerationOptions& opts)
      : alg_(alg), invariant_only_(invariant_only), opts_(opts) {
    const std::size_t n = alg.size();
    const std::size_t rank = alg.torus_rank();
    suffix_gcd_.assign((n + 1) * rank, 0);
    for (std::size_t c = 0; c < rank; ++c) suffix_gcd_[n * rank + c] = alg.moduli()[c];
    suffix_exterior_.assign(n + 1, 0);
    suffix_poly_gcd_.assign(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
      const auto& g = alg.generator(i);
      for (std::size_t c = 0; c < rank; ++c) {
        suffix_gcd_[i * rank + c] = std::gcd(suffix_gcd_[(i + 1) * rank + c], g.weight.coords[c]);
      }
      suffix_exterior_[i] = suffix_exterior_[i + 1] + (g.parity == Parity::exterior ? 1 : 0);
      suffix_poly_gcd_[i] = g.parity == Parity::polynomial
                                ? std::gcd(suffix_poly_gcd_[i + 1], g.degree)
                                : suffix_poly_gcd_[i + 1];
    }
    residues_.assign((n + 1) * rank, 0);
    exps_.assign(n, 0);
  }

  void run(unsigned degree, const Visit& visit) {
    visit_ = &visit;
    visited_ = 0;
    descend(0, degree);
  }

 private:
  bool degree_feasible(std::size_t i, unsigned rem) const {
    const unsigned ext = std::min<unsigned>(suffix_exterior_[i], rem);
    const unsigned g = suffix_poly_gcd_[i];
    for (unsigned t = 0; t <= ext; ++t) {
      const unsigned rest = rem - t;
      if (g == 0 ? rest == 0 : rest % g == 0) return true;
    }
    return false;
  }

  bool residue_feasible(std::size_t i) const {
    const std::size_t rank = alg_.torus_rank();
    for (std::size_t c = 0; c < rank; ++c) {
      if (residues_[i * rank + c] % suffix_gcd_[i * rank + c] != 0) return false;
    }
    return true;
  }

  void descend(std::size_t i, unsigned rem) {
    const std::size_t n = alg_.size();
    const std::size_t rank = alg_.torus_rank();
    if (i == n) {
      if (rem != 0) return;
      if (++visited_ > opts_.cap) {
        throw resource_limit("monomial enumeration exceeded the cap of " +
                             std::to_string(opts_.cap));
      }
      if (invariant_only_) {
        for (std::size_t c = 0; c < rank; ++c) {
          if (residues_[n * rank + c] != 0) return;
        }
      }
      (*visit_)(exps_);
      return;
    }
    if (opts_.prune) {
      if (!degree_feasible(i, rem)) return;
      if (invariant_only_ && !residue_feasible(i)) return;
    }
    const auto& g = alg_.generator(i);
    const unsigned max_e = g.parity == Parity::exterior ? std::min(1u, rem) : rem / g.degree;
    for (unsigned e = max_e + 1; e-- > 0;) {
      exps_[i] = e;
      for (std::size_t c = 0; c < rank; ++c) {
        residues_[(i + 1) * rank + c] =
            (residues_[i * rank + c] + std::int64_t{e} * g.weight.coords[c]) % alg_.moduli()[c];
      }
      descend(i + 1, rem - e * g.degree);
    }
    exps_[i] = 0;
  }

  const AlgebraSpec& alg_;
  bool invariant_only_;
  EnumerationOptions opts_;
  std::vector<std::int64_t> suffix_gcd_;
  std::vector<unsigned> suffix_exterior_;
  std::vector<unsigned> suffix_poly_gcd_;
  std::vector<std::int64_t> residues_;
  std::vector<std::uint32_t> exps_;
  const Visit* visit_ = nullptr;
  std::uint64_t visited_ = 0;
};

std::vector<Monomial> collect(const AlgebraSpec& alg, unsigned degree, bool invariant_only,
                              const EnumerationOptions& opts) {
  std::vector<Monomial> out;
  Walker walker(alg, invariant_only, opts);
  walker.run(degree, [&](const std::vector<std::uint32_t>& d) {
    out.push_back(Monomial::from_dense(d));
  });
  return out;
}

bool has_exterior_factor(const AlgebraSpec& alg, const std::vector<std::uint32_t>& dense) {
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] && alg.generator(i).parity == Parity::exterior) return true;
  }
  return false;
}

}  // namespace

std::vector<Monomial> enumerate_monomials(const AlgebraSpec& alg, unsigned degree,
                                          const EnumerationOptions& opts) {
  return collect(alg, degree, false, opts);
}

std::vector<Monomial> invariant_monomials(const AlgebraSpec& alg, unsigned degree,
                                          const EnumerationOptions& opts) {
  return collect(alg, degree, true, opts);
}

std::vector<Monomial> invariant_monomials_oracle(const AlgebraSpec& alg, unsigned degree,
                                                 std::uint64_t cap) {
  auto field = std::make_shared<const ffq::Field>(alg.field());
  const std::uint64_t group_order = field->q() - 1;
  const ffq::FqElement& gen = field->multiplicative_generator();

  // One scalar per torus coordinate, of order exactly that coordinate's modulus.
  std::vector<ffq::FqElement> scalars;
  for (auto m : alg.moduli()) scalars.push_back(field->pow(gen, group_order / m));

  // The torus is generated by one such scalar in each coordinate; a monomial
  // is invariant iff every generator fixes it.
  std::vector<std::vector<ffq::FqElement>> eigen(scalars.size());
  for (std::size_t c = 0; c < scalars.size(); ++c) {
    for (const auto& g : alg.generators()) {
      eigen[c].push_back(field->pow(scalars[c], static_cast<std::uint64_t>(g.weight.coords[c])));
    }
  }

  std::vector<Monomial> out;
  EnumerationOptions opts{false, cap};
  for (auto& m : enumerate_monomials(alg, degree, opts)) {
    bool fixed = true;
    for (std::size_t c = 0; c < scalars.size() && fixed; ++c) {
      ffq::FqElement value = field->one();
      for (auto [i, e] : m.exps) value = field->mul(value, field->pow(eigen[c][i], e));
      fixed = field->is_one(value);
    }
    if (fixed) out.push_back(std::move(m));
  }
  sort_canonical(out);
  return out;
}

DimSeries dimension_series(const AlgebraSpec& alg, unsigned max_degree, SeriesFilter filter,
                           const EnumerationOptions& opts) {
  DimSeries series;
  Walker walker(alg, filter != SeriesFilter::all, opts);
  for (unsigned d = 0; d <= max_degree; ++d) {
    std::uint64_t count = 0;
    walker.run(d, [&](const std::vector<std::uint32_t>& dense) {
      if (filter != SeriesFilter::invariant_nilpotent || has_exterior_factor(alg, dense)) ++count;
    });
    series.dims.push_back(count);
  }
  return series;
}

DetectionResult detection_kernel(const AlgebraSpec& alg, unsigned degree,
                                 const std::vector<std::vector<std::string>>& family,
                                 const EnumerationOptions& opts) {
  std::vector<std::vector<bool>> members;
  for (const auto& ids : family) {
    std::vector<bool> in(alg.size(), false);
    for (const auto& id : ids) in[alg.require_index(id)] = true;
    members.push_back(std::move(in));
  }
  DetectionResult result;
  result.degree = degree;
  for (auto& m : invariant_monomials(alg, degree, opts)) {
    ++result.invariant_dim;
    const bool detected = std::any_of(members.begin(), members.end(), [&](const auto& in) {
      return std::all_of(m.exps.begin(), m.exps.end(), [&](auto ie) { return in[ie.first]; });
    });
    if (!detected) result.kernel_basis.push_back(std::move(m));
  }
  result.kernel_dim = result.kernel_basis.size();
  result.cokernel_dim = result.kernel_dim;
  return result;
}

QuillenReport quillen_verify(std::uint64_t p, std::uint64_t r) {
  const ffq::PrimePower size = ffq::PrimePower::make(p, r);
  QuillenReport report;
  report.p = size.p;
  report.r = size.r;
  const std::uint64_t group_order = size.q - 1;
  const std::uint64_t bound = std::uint64_t{size.r} * (size.p - 1);
  std::vector<std::uint64_t> powers(size.r, 1);
  for (std::size_t k = 1; k < size.r; ++k) powers[k] = powers[k - 1] * size.p;

  std::vector<std::uint32_t> tuple(size.r, 0);
  std::function<void(std::size_t, std::uint64_t, std::uint64_t)> rec =
      [&](std::size_t k, std::uint64_t sum, std::uint64_t weighted) {
        if (k == size.r) {
          if (sum == 0) return;
          ++report.tuples_checked;
          if (weighted % group_order != 0) return;
          if (sum < bound) {
            if (!report.counterexample) report.counterexample = tuple;
          } else {
            report.equality_tuples.push_back(tuple);
          }
          return;
        }
        for (std::uint64_t a = 0; sum + a <= bound; ++a) {
          tuple[k] = static_cast<std::uint32_t>(a);
          rec(k + 1, sum + a, weighted + a * powers[k]);
        }
        tuple[k] = 0;
      };
  rec(0, 0, 0);

  const std::vector<std::uint32_t> expected(size.r, size.p - 1);
  for (const auto& t : report.equality_tuples) {
    if (t != expected && !report.counterexample) report.counterexample = t;
  }
  report.pass = !report.counterexample && report.equality_tuples.size() == 1 &&
                report.equality_tuples.front() == expected;
  return report;
}

}  // namespace tinv
