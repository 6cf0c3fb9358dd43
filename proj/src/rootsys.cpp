#include "tinv/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <boost/rational.hpp>

#include "tinv/errors.hpp"

namespace tinv {

std::vector<Component> parse_components(const std::string& text) {
  std::vector<Component> comps;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    const char type = static_cast<char>(std::toupper(static_cast<unsigned char>(token[0])));
    const std::string digits = token.substr(1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) ||
        digits.size() > 3) {
      throw invalid_input("bad root system component '" + token + "'");
    }
    const auto rank = static_cast<unsigned>(std::stoul(digits));
    const bool ok = (type == 'A' && rank >= 1) || ((type == 'B' || type == 'C') && rank >= 2) ||
                    (type == 'D' && rank >= 3) || (type == 'E' && rank >= 6 && rank <= 8) ||
                    (type == 'F' && rank == 4) || (type == 'G' && rank == 2);
    if (!ok) throw invalid_input("unknown root system '" + token + "'");
    comps.push_back({type, rank});
    token.clear();
  };
  for (char ch : text) {
    if (ch == '+' || ch == ',' || ch == ' ' || ch == 'x') {
      flush();
    } else {
      token += ch;
    }
  }
  flush();
  if (comps.empty()) throw invalid_input("empty root system");
  return comps;
}

std::string components_to_string(const std::vector<Component>& comps) {
  std::string s;
  for (const auto& c : comps) {
    if (!s.empty()) s += '+';
    s += c.type;
    s += std::to_string(c.rank);
  }
  return s;
}

unsigned Root::height() const {
  return static_cast<unsigned>(std::accumulate(coords.begin(), coords.end(), std::int64_t{0}));
}

IntMatrix cartan_matrix(const Component& c) {
  const unsigned n = c.rank;
  auto bad = [&] {
    return invalid_input(std::string("invalid root system type ") + c.type + std::to_string(n));
  };
  switch (c.type) {
    case 'A': if (n < 1) throw bad(); break;
    case 'B': case 'C': if (n < 2) throw bad(); break;
    case 'D': if (n < 3) throw bad(); break;
    case 'E': if (n < 6 || n > 8) throw bad(); break;
    case 'F': if (n != 4) throw bad(); break;
    case 'G': if (n != 2) throw bad(); break;
    default: throw bad();
  }
  IntMatrix a(n, std::vector<std::int64_t>(n, 0));
  for (unsigned i = 0; i < n; ++i) a[i][i] = 2;
  auto link = [&](unsigned i, unsigned j) {  // 1-based simple bond
    a[i - 1][j - 1] = -1;
    a[j - 1][i - 1] = -1;
  };
  switch (c.type) {
    case 'A':
      for (unsigned i = 1; i < n; ++i) link(i, i + 1);
      break;
    case 'B':
      for (unsigned i = 1; i < n; ++i) link(i, i + 1);
      a[n - 1][n - 2] = -2;  // alpha_n short
      break;
    case 'C':
      for (unsigned i = 1; i < n; ++i) link(i, i + 1);
      a[n - 2][n - 1] = -2;  // alpha_n long
      break;
    case 'D':
      for (unsigned i = 1; i + 2 < n; ++i) link(i, i + 1);
      link(n - 2, n - 1);
      link(n - 2, n);
      break;
    case 'E':
      link(1, 3);
      link(2, 4);
      for (unsigned i = 3; i < n; ++i) link(i, i + 1);
      break;
    case 'F':
      link(1, 2);
      link(2, 3);
      link(3, 4);
      a[2][1] = -2;  // alpha_1, alpha_2 long
      break;
    case 'G':
      link(1, 2);
      a[0][1] = -3;  // alpha_1 short
      break;
  }
  return a;
}

namespace {

bool is_positive(const std::vector<std::int64_t>& v) {
  bool nonzero = false;
  for (auto x : v) {
    if (x < 0) return false;
    nonzero |= x != 0;
  }
  return nonzero;
}

// Squared lengths d_i of the simple roots of one component with
// d_i a_ij = d_j a_ji, scaled to be coprime.
std::vector<std::int64_t> simple_lengths(const IntMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::int64_t> d(n, 0);
  d[0] = 6;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || a[i][j] == 0 || d[j] != 0) continue;
      d[j] = d[i] * a[i][j] / a[j][i];
      stack.push_back(j);
    }
  }
  std::int64_t g = 0;
  for (auto x : d) g = std::gcd(g, x);
  for (auto& x : d) x /= g;
  return d;
}

}  // namespace

RootSystem::RootSystem(std::vector<Component> components) : components_(std::move(components)) {
  if (components_.empty()) throw invalid_input("empty root system");
  std::vector<IntMatrix> blocks;
  std::size_t total = 0;
  for (const auto& c : components_) {
    offsets_.push_back(total);
    blocks.push_back(cartan_matrix(c));
    total += c.rank;
  }
  cartan_.assign(total, std::vector<std::int64_t>(total, 0));
  std::vector<std::int64_t> lengths(total, 0);
  for (std::size_t c = 0; c < blocks.size(); ++c) {
    const auto d = simple_lengths(blocks[c]);
    for (std::size_t i = 0; i < blocks[c].size(); ++i) {
      lengths[offsets_[c] + i] = d[i];
      for (std::size_t j = 0; j < blocks[c].size(); ++j) {
        cartan_[offsets_[c] + i][offsets_[c] + j] = blocks[c][i][j];
      }
    }
  }

  // Reflection closure of the simple roots, keeping positive vectors.
  std::set<std::vector<std::int64_t>> seen;
  std::vector<std::vector<std::int64_t>> frontier;
  for (std::size_t s = 0; s < total; ++s) {
    std::vector<std::int64_t> e(total, 0);
    e[s] = 1;
    seen.insert(e);
    frontier.push_back(e);
  }
  while (!frontier.empty()) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& beta : frontier) {
      for (std::size_t s = 0; s < total; ++s) {
        std::int64_t pairing = 0;  // <beta, alpha_s^vee>
        for (std::size_t j = 0; j < total; ++j) pairing += cartan_[s][j] * beta[j];
        if (pairing == 0) continue;
        auto img = beta;
        img[s] -= pairing;
        if (is_positive(img) && seen.insert(img).second) next.push_back(std::move(img));
      }
    }
    frontier = std::move(next);
  }

  for (const auto& v : seen) {
    Root root;
    root.coords = v;
    for (std::size_t c = 0; c < components_.size(); ++c) {
      const auto first = v.begin() + static_cast<std::ptrdiff_t>(offsets_[c]);
      if (std::any_of(first, first + components_[c].rank, [](auto x) { return x != 0; })) {
        root.component = c;
        break;
      }
    }
    roots_.push_back(std::move(root));
  }

  // Squared length: sum c_i c_j a_ij d_i / 2 (times 2 to stay integral).
  std::vector<std::int64_t> norms(roots_.size(), 0);
  std::vector<std::int64_t> longest(components_.size(), 0);
  for (std::size_t k = 0; k < roots_.size(); ++k) {
    const auto& c = roots_[k].coords;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < total; ++i) {
      if (!c[i]) continue;
      for (std::size_t j = 0; j < total; ++j) s += c[i] * c[j] * cartan_[i][j] * lengths[i];
    }
    norms[k] = s;
    longest[roots_[k].component] = std::max(longest[roots_[k].component], s);
  }
  for (std::size_t k = 0; k < roots_.size(); ++k) {
    roots_[k].length = norms[k] == longest[roots_[k].component] ? LengthClass::long_root
                                                                 : LengthClass::short_root;
  }
  std::sort(roots_.begin(), roots_.end(), [](const Root& a, const Root& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    return a.coords > b.coords;
  });
}

const Root& RootSystem::highest_root(std::size_t c) const {
  const Root* best = nullptr;
  for (const auto& r : roots_) {
    if (r.component == c && (!best || r.height() > best->height())) best = &r;
  }
  return *best;
}

std::vector<unsigned> coxeter_numbers(const RootSystem& rs) {
  std::vector<unsigned> out;
  for (std::size_t c = 0; c < rs.components().size(); ++c) {
    out.push_back(rs.highest_root(c).height() + 1);
  }
  return out;
}

bool is_good_prime(const RootSystem& rs, std::uint64_t p) {
  if (!ffq::is_prime(p)) throw invalid_input("p = " + std::to_string(p) + " is not prime");
  for (const auto& r : rs.positive_roots()) {
    for (auto c : r.coords) {
      if (c != 0 && static_cast<std::uint64_t>(c) % p == 0) return false;
    }
  }
  return true;
}

std::vector<CoweightWitness> coweight_one_witness(const RootSystem& rs) {
  std::vector<CoweightWitness> out;
  for (std::size_t c = 0; c < rs.components().size(); ++c) {
    CoweightWitness w{c, std::nullopt};
    const auto& top = rs.highest_root(c).coords;
    const std::size_t off = rs.component_offset(c);
    for (std::size_t s = 0; s < rs.components()[c].rank; ++s) {
      if (top[off + s] == 1) {
        w.simple_index = s + 1;
        break;
      }
    }
    out.push_back(w);
  }
  return out;
}

LatticeSpec cocharacter_lattice(const RootSystem& rs, LatticeKind kind) {
  const std::size_t n = rs.rank();
  LatticeSpec l{kind, IntMatrix(n, std::vector<std::int64_t>(n, 0))};
  switch (kind) {
    case LatticeKind::adjoint:
      for (std::size_t i = 0; i < n; ++i) l.basis[i][i] = 1;
      break;
    case LatticeKind::simply_connected:
      l.basis = rs.cartan();
      break;
    case LatticeKind::custom:
      throw invalid_input("custom lattices need an explicit basis");
  }
  return l;
}

LatticeSpec character_lattice(const RootSystem& rs, LatticeKind kind) {
  const std::size_t n = rs.rank();
  LatticeSpec l{kind, IntMatrix(n, std::vector<std::int64_t>(n, 0))};
  switch (kind) {
    case LatticeKind::adjoint:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) l.basis[i][j] = rs.cartan()[j][i];
      }
      break;
    case LatticeKind::simply_connected:
      for (std::size_t i = 0; i < n; ++i) l.basis[i][i] = 1;
      break;
    case LatticeKind::custom:
      throw invalid_input("custom lattices need an explicit basis");
  }
  return l;
}

LatticeSpec custom_lattice(IntMatrix basis) {
  const std::size_t n = basis.size();
  for (const auto& row : basis) {
    if (row.size() != n) throw invalid_input("lattice basis must be square");
  }
  return LatticeSpec{LatticeKind::custom, std::move(basis)};
}

namespace {

void check_lattice(const RootSystem& rs, const LatticeSpec& l) {
  if (l.basis.size() != rs.rank()) throw invalid_input("lattice rank differs from root system rank");
  for (const auto& row : l.basis) {
    if (row.size() != rs.rank()) throw invalid_input("lattice basis must be square");
  }
  if (determinant(l.basis) == 0) throw invalid_input("lattice basis is singular");
}

const Root& root_at(const RootSystem& rs, std::size_t index) {
  if (index >= rs.positive_roots().size()) throw invalid_input("root index out of range");
  return rs.positive_roots()[index];
}

}  // namespace

std::int64_t cofundamental_exponent(const RootSystem& rs, const LatticeSpec& cochar) {
  check_lattice(rs, cochar);
  const auto factors = invariant_factors(cochar.basis);
  return factors.back();
}

std::vector<std::int64_t> root_in_lattice(const RootSystem& rs, const LatticeSpec& chars,
                                          std::size_t root_index) {
  check_lattice(rs, chars);
  const auto& root = root_at(rs, root_index);
  const std::size_t n = rs.rank();
  // Fundamental-weight coordinates of the root: v_i = sum_j a_ij c_j.
  using Q = boost::rational<std::int64_t>;
  std::vector<std::vector<Q>> aug(n, std::vector<Q>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t v = 0;
    for (std::size_t j = 0; j < n; ++j) v += rs.cartan()[i][j] * root.coords[j];
    // Solve sum_k x_k basis[k][i] = v_i.
    for (std::size_t k = 0; k < n; ++k) aug[i][k] = chars.basis[k][i];
    aug[i][n] = v;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (aug[piv][c].numerator() == 0) ++piv;
    std::swap(aug[piv], aug[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || aug[i][c].numerator() == 0) continue;
      const Q f = aug[i][c] / aug[c][c];
      for (std::size_t j = c; j <= n; ++j) aug[i][j] -= f * aug[c][j];
    }
  }
  std::vector<std::int64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Q x = aug[i][n] / aug[i][i];
    if (x.denominator() != 1) throw invalid_input("root does not lie in the given character lattice");
    out[i] = x.numerator();
  }
  return out;
}

bool root_divisibility(const RootSystem& rs, const LatticeSpec& chars, std::size_t root_index,
                       std::int64_t n) {
  if (n < 1) throw invalid_input("divisor must be positive");
  const auto coords = root_in_lattice(rs, chars, root_index);
  return std::all_of(coords.begin(), coords.end(), [n](auto c) { return c % n == 0; });
}

std::int64_t root_action_index(const RootSystem& rs, const LatticeSpec& chars,
                               std::size_t root_index, std::uint64_t q) {
  if (q < 2) throw invalid_input("q must be a prime power");
  std::uint64_t p = 2;
  while (q % p) ++p;
  std::uint64_t rest = q;
  while (rest % p == 0) rest /= p;
  if (rest != 1) throw invalid_input("q = " + std::to_string(q) + " is not a prime power");
  std::int64_t g = 0;
  for (auto c : root_in_lattice(rs, chars, root_index)) g = std::gcd(g, c);
  return std::gcd(static_cast<std::int64_t>(q - 1), g);
}

Char2Bound char2_vanishing_bound(const RootSystem& rs, const LatticeSpec& cochar, std::uint64_t r) {
  for (const auto& c : rs.components()) {
    if ((c.type == 'E' && c.rank == 8) || c.type == 'F' || c.type == 'G') {
      throw invalid_input("the characteristic-2 bound excludes components of type E8, F4 and G2 (got " +
                          components_to_string({c}) + ")");
    }
  }
  if (r < 1 || r > 62) throw invalid_input("r must lie in [1, 62]");
  Char2Bound b;
  b.exponent = cofundamental_exponent(rs, cochar);
  const std::int64_t mersenne = (std::int64_t{1} << r) - 1;
  b.gcd = std::gcd(b.exponent, mersenne);
  const std::int64_t reduce = std::gcd(static_cast<std::int64_t>(r), b.gcd);
  b.bound = Rational{static_cast<std::int64_t>(r) / reduce, b.gcd / reduce};
  return b;
}

AlgebraSpec lie_gr_algebra(const RootSystem& rs, const LatticeSpec& cochar, std::uint64_t p,
                           std::uint64_t r) {
  const auto f = ffq::PrimePower::make(p, r);
  check_lattice(rs, cochar);
  const std::size_t rank = cochar.basis.size();
  const std::int64_t group_order = std::int64_t{f.q} - 1;

  struct Family {
    std::string key;
    std::string tag;
    TorusWeight weight;
  };
  std::vector<Family> families;
  for (const auto& root : rs.positive_roots()) {
    std::string coords, key;
    for (auto c : root.coords) {
      if (!coords.empty()) coords += ',';
      coords += std::to_string(c);
      key += std::to_string(c);
    }
    std::int64_t twist = 1;
    for (std::uint32_t k = 0; k < f.r; ++k) {
      TorusWeight w{std::vector<std::int64_t>(rank, 0)};
      for (std::size_t c = 0; c < rank; ++c) {
        std::int64_t pairing = 0;
        for (std::size_t i = 0; i < rs.rank(); ++i) pairing += root.coords[i] * cochar.basis[c][i];
        w.coords[c] = (twist % group_order) * (pairing % group_order) % group_order;
      }
      families.push_back({"_" + key + "_" + std::to_string(k),
                          "(alpha=[" + coords + "],k=" + std::to_string(k) + ")", w});
      twist = twist * f.p % group_order;
    }
  }

  std::vector<GeneratorSpec> gens;
  if (f.p == 2) {
    for (const auto& fam : families) gens.push_back({"z" + fam.key, Parity::polynomial, 1, fam.weight, fam.tag});
  } else {
    for (const auto& fam : families) gens.push_back({"x" + fam.key, Parity::exterior, 1, fam.weight, fam.tag});
    for (const auto& fam : families) gens.push_back({"y" + fam.key, Parity::polynomial, 2, fam.weight, fam.tag});
  }
  return AlgebraSpec(f, rank, std::vector<std::int64_t>(rank, group_order), std::move(gens));
}

}  // namespace tinv
