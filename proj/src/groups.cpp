#include "convolab/groups.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "convolab/config.hpp"
#include "convolab/error.hpp"

namespace convolab {

// ---------------------------------------------------------------------------
// GroupSpec

GroupSpec GroupSpec::cyclic(std::size_t n) {
  GroupSpec s;
  s.kind = GroupKind::Cyclic;
  s.n = n;
  return s;
}

GroupSpec GroupSpec::elementary_abelian_2(std::size_t k) {
  GroupSpec s;
  s.kind = GroupKind::ElementaryAbelian2;
  s.k = k;
  return s;
}

GroupSpec GroupSpec::dihedral(std::size_t n) {
  GroupSpec s;
  s.kind = GroupKind::Dihedral;
  s.n = n;
  return s;
}

GroupSpec GroupSpec::quaternion8() {
  GroupSpec s;
  s.kind = GroupKind::Quaternion8;
  return s;
}

GroupSpec GroupSpec::symmetric(std::size_t n) {
  GroupSpec s;
  s.kind = GroupKind::Symmetric;
  s.n = n;
  return s;
}

GroupSpec GroupSpec::product(std::vector<GroupSpec> factors) {
  GroupSpec s;
  s.kind = GroupKind::Product;
  s.factors = std::move(factors);
  return s;
}

GroupSpec GroupSpec::raw(CayleyTable table) {
  GroupSpec s;
  s.kind = GroupKind::Table;
  s.table = std::move(table);
  return s;
}

namespace {

// Saturating arithmetic so absurd parameters report SpecOutOfRange instead of overflowing.
constexpr std::size_t kHuge = std::size_t{1} << 40;

std::size_t sat_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > kHuge / a) return kHuge;
  return std::min(a * b, kHuge);
}

}  // namespace

std::size_t GroupSpec::expected_order() const {
  switch (kind) {
    case GroupKind::Cyclic: return n;
    case GroupKind::ElementaryAbelian2: return k >= 40 ? kHuge : (std::size_t{1} << k);
    case GroupKind::Dihedral: return sat_mul(2, n);
    case GroupKind::Quaternion8: return 8;
    case GroupKind::Symmetric: {
      std::size_t f = 1;
      for (std::size_t i = 2; i <= n; ++i) f = sat_mul(f, i);
      return f;
    }
    case GroupKind::Product: {
      std::size_t total = 1;
      for (const auto& f : factors) total = sat_mul(total, f.expected_order());
      return total;
    }
    case GroupKind::Table: return table.size();
  }
  return 0;
}

std::string GroupSpec::name() const {
  switch (kind) {
    case GroupKind::Cyclic: return "Z" + std::to_string(n);
    case GroupKind::ElementaryAbelian2: return "Z2^" + std::to_string(k);
    case GroupKind::Dihedral: return "D" + std::to_string(n);
    case GroupKind::Quaternion8: return "Q8";
    case GroupKind::Symmetric: return "S" + std::to_string(n);
    case GroupKind::Product: {
      std::string out;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out += "x";
        out += factors[i].name();
      }
      return out.empty() ? "Z1" : out;
    }
    case GroupKind::Table: return "table" + std::to_string(table.size());
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Table validation

void validate_table(const CayleyTable& t) {
  const std::size_t n = t.size();
  if (n == 0) throw Error(ErrorCode::TableInvalid, "empty table");
  for (std::size_t i = 0; i < n; ++i) {
    if (t[i].size() != n) {
      throw Error(ErrorCode::TableInvalid, "row " + std::to_string(i) + " has length " +
                                               std::to_string(t[i].size()) + ", expected " +
                                               std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (t[i][j] >= n) {
        throw Error(ErrorCode::TableInvalid, "entry (" + std::to_string(i) + "," +
                                                 std::to_string(j) + ") out of range");
      }
    }
  }
  std::vector<char> seen(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[t[i][j]]++) {
        throw Error(ErrorCode::TableInvalid, "row " + std::to_string(i) + " not a permutation");
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[t[i][j]]++) {
        throw Error(ErrorCode::TableInvalid, "column " + std::to_string(j) + " not a permutation");
      }
    }
  }
  std::size_t e = n;
  for (std::size_t c = 0; c < n && e == n; ++c) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) ok = t[c][j] == j && t[j][c] == j;
    if (ok) e = c;
  }
  if (e == n) throw Error(ErrorCode::TableInvalid, "no two-sided identity");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (t[t[i][j]][k] != t[i][t[j][k]]) {
          throw Error(ErrorCode::TableInvalid, "associativity fails at (" + std::to_string(i) +
                                                   "," + std::to_string(j) + "," +
                                                   std::to_string(k) + ")");
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Built-in constructions

namespace {

struct Built {
  CayleyTable table;
  std::vector<std::string> labels;
};

Built build_cyclic(std::size_t n) {
  Built b;
  b.table.assign(n, std::vector<Element>(n));
  for (std::size_t i = 0; i < n; ++i) {
    b.labels.push_back(std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) b.table[i][j] = (i + j) % n;
  }
  return b;
}

Built build_elementary_abelian_2(std::size_t k) {
  const std::size_t n = std::size_t{1} << k;
  Built b;
  b.table.assign(n, std::vector<Element>(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::string bits;
    for (std::size_t pos = k; pos-- > 0;) bits += ((i >> pos) & 1) ? '1' : '0';
    b.labels.push_back(k == 0 ? "e" : bits);
    for (std::size_t j = 0; j < n; ++j) b.table[i][j] = i ^ j;
  }
  return b;
}

// r^i s^j has index i + n*j; s r^c = r^{-c} s.
Built build_dihedral(std::size_t n) {
  const std::size_t m = 2 * n;
  Built b;
  b.table.assign(m, std::vector<Element>(m));
  for (std::size_t x = 0; x < m; ++x) {
    const std::size_t a = x % n, sa = x / n;
    std::string lbl = a == 0 && sa == 0 ? "e" : "";
    if (a != 0) lbl += a == 1 ? "r" : "r^" + std::to_string(a);
    if (sa) lbl += "s";
    b.labels.push_back(lbl);
    for (std::size_t y = 0; y < m; ++y) {
      const std::size_t c = y % n, sc = y / n;
      const std::size_t rot = sa ? (a + n - c) % n : (a + c) % n;
      b.table[x][y] = rot + n * ((sa + sc) % 2);
    }
  }
  return b;
}

// Quaternion units: 1,-1,i,-i,j,-j,k,-k. Unit u = sign * basis, basis in {1,i,j,k}.
Built build_quaternion8() {
  // basis product table: basis_mul[a][b] = (sign, basis)
  static const int sign_tab[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static const int basis_tab[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const char* names[4] = {"1", "i", "j", "k"};
  Built b;
  b.table.assign(8, std::vector<Element>(8));
  for (std::size_t x = 0; x < 8; ++x) {
    const int bx = static_cast<int>(x / 2), sx = x % 2 ? -1 : 1;
    b.labels.push_back(std::string(sx < 0 ? "-" : "") + names[bx]);
    for (std::size_t y = 0; y < 8; ++y) {
      const int by = static_cast<int>(y / 2), sy = y % 2 ? -1 : 1;
      const int s = sx * sy * sign_tab[bx][by];
      b.table[x][y] = static_cast<Element>(2 * basis_tab[bx][by] + (s < 0 ? 1 : 0));
    }
  }
  return b;
}

std::string cycle_notation(const std::vector<std::size_t>& p) {
  std::vector<char> done(p.size());
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (done[i] || p[i] == i) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = 1;
      if (!first) out += " ";
      out += std::to_string(j);
      first = false;
      j = p[j];
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

// Permutations in lexicographic order of one-line notation; product is composition
// (p*q)(x) = p(q(x)).
Built build_symmetric(std::size_t n) {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  Built b;
  const std::size_t m = perms.size();
  b.table.assign(m, std::vector<Element>(m));
  for (const auto& q : perms) b.labels.push_back(cycle_notation(q));
  std::vector<std::size_t> comp(n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t x = 0; x < n; ++x) comp[x] = perms[i][perms[j][x]];
      const auto it = std::lower_bound(perms.begin(), perms.end(), comp);
      b.table[i][j] = static_cast<Element>(it - perms.begin());
    }
  }
  return b;
}

Built build(const GroupSpec& spec);

// Element (i, j) of G x H has index i*|H| + j.
Built build_product(const std::vector<GroupSpec>& factors) {
  Built acc = build_cyclic(1);
  acc.labels = {""};
  for (const auto& f : factors) {
    const Built h = build(f);
    const std::size_t na = acc.table.size(), nh = h.table.size();
    Built next;
    next.table.assign(na * nh, std::vector<Element>(na * nh));
    for (std::size_t i = 0; i < na; ++i) {
      for (std::size_t j = 0; j < nh; ++j) {
        next.labels.push_back(acc.labels[i].empty() ? h.labels[j] : acc.labels[i] + "," + h.labels[j]);
        for (std::size_t i2 = 0; i2 < na; ++i2) {
          for (std::size_t j2 = 0; j2 < nh; ++j2) {
            next.table[i * nh + j][i2 * nh + j2] = acc.table[i][i2] * nh + h.table[j][j2];
          }
        }
      }
    }
    acc = std::move(next);
  }
  if (!factors.empty()) {
    for (auto& l : acc.labels) l = "(" + l + ")";
  } else {
    acc.labels = {"e"};
  }
  return acc;
}

Built build(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupKind::Cyclic: return build_cyclic(spec.n);
    case GroupKind::ElementaryAbelian2: return build_elementary_abelian_2(spec.k);
    case GroupKind::Dihedral: return build_dihedral(spec.n);
    case GroupKind::Quaternion8: return build_quaternion8();
    case GroupKind::Symmetric: return build_symmetric(spec.n);
    case GroupKind::Product: return build_product(spec.factors);
    case GroupKind::Table: {
      validate_table(spec.table);
      Built b;
      b.table = spec.table;
      for (std::size_t i = 0; i < b.table.size(); ++i) b.labels.push_back("g" + std::to_string(i));
      return b;
    }
  }
  throw Error(ErrorCode::SpecOutOfRange, "unknown group kind");
}

void check_parameters(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupKind::Cyclic:
    case GroupKind::Dihedral:
    case GroupKind::Symmetric:
      if (spec.n == 0) throw Error(ErrorCode::SpecOutOfRange, spec.name() + ": n must be positive");
      break;
    case GroupKind::ElementaryAbelian2:
      if (spec.k == 0) throw Error(ErrorCode::SpecOutOfRange, spec.name() + ": k must be positive");
      break;
    case GroupKind::Product:
      for (const auto& f : spec.factors) check_parameters(f);
      break;
    case GroupKind::Table:
      if (spec.table.empty()) throw Error(ErrorCode::TableInvalid, "empty table");
      break;
    case GroupKind::Quaternion8: break;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(GroupSpec spec, CayleyTable table, std::vector<std::string> labels)
    : spec_(std::move(spec)), cayley_(std::move(table)), label_(spec_.name()),
      element_labels_(std::move(labels)) {
  const std::size_t n = cayley_.size();
  for (std::size_t c = 0; c < n; ++c) {
    if (cayley_[c][c] == c) {  // the only idempotent of a group is the identity
      identity_ = c;
      break;
    }
  }
  inverse_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (cayley_[i][j] == identity_) inverse_[i] = j;
      if (cayley_[i][j] != cayley_[j][i]) abelian_ = false;
    }
    if (cayley_[i][i] != identity_) involutive_ = false;
  }
}

void FiniteGroup::check_element(Element a) const {
  if (a >= order()) {
    throw Error(ErrorCode::OutOfRange, "element " + std::to_string(a) + " not in " + label_ +
                                           " (order " + std::to_string(order()) + ")");
  }
}

GroupPtr make_group(const GroupSpec& spec) {
  check_parameters(spec);
  const std::size_t cap = config().limits.max_group_order;
  const std::size_t n = spec.expected_order();
  if (n > cap) {
    throw Error(ErrorCode::SpecOutOfRange, spec.name() + " has order " + std::to_string(n) +
                                               ", above the cap " + std::to_string(cap));
  }
  Built b = build(spec);
  return GroupPtr(new FiniteGroup(spec, std::move(b.table), std::move(b.labels)));
}

bool same_group(const FiniteGroup& a, const FiniteGroup& b) {
  return &a == &b || a.cayley() == b.cayley();
}

// ---------------------------------------------------------------------------
// Sets and subgroups

ElementSet::ElementSet(GroupPtr group, std::vector<Element> elements)
    : group_(std::move(group)), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  for (Element a : elements_) group_->check_element(a);
}

bool ElementSet::contains(Element a) const {
  return std::binary_search(elements_.begin(), elements_.end(), a);
}

bool is_subgroup(const ElementSet& set) {
  const FiniteGroup& g = *set.group();
  if (!set.contains(g.identity())) return false;
  for (Element a : set.elements()) {
    if (!set.contains(g.inverse(a))) return false;
    for (Element b : set.elements()) {
      if (!set.contains(g.mul(a, b))) return false;
    }
  }
  return true;
}

Subgroup::Subgroup(ElementSet set) : set_(std::move(set)) {
  if (!is_subgroup(set_)) throw Error(ErrorCode::SupportNotClosed, "set is not a subgroup");
}

std::size_t element_order(const FiniteGroup& group, Element g) {
  group.check_element(g);
  std::size_t k = 1;
  for (Element x = g; x != group.identity(); x = group.mul(x, g)) ++k;
  return k;
}

ElementSet set_product(const ElementSet& a, const ElementSet& b) {
  if (!same_group(*a.group(), *b.group())) {
    throw Error(ErrorCode::GroupMismatch, "set product across different groups");
  }
  const FiniteGroup& g = *a.group();
  std::vector<char> hit(g.order());
  for (Element x : a.elements()) {
    for (Element y : b.elements()) hit[g.mul(x, y)] = 1;
  }
  std::vector<Element> out;
  for (Element i = 0; i < g.order(); ++i) {
    if (hit[i]) out.push_back(i);
  }
  return ElementSet(a.group(), std::move(out));
}

ElementSet generated_subgroup(const GroupPtr& group, const std::vector<Element>& generators) {
  const FiniteGroup& g = *group;
  std::vector<char> in(g.order());
  std::vector<Element> members{g.identity()};
  in[g.identity()] = 1;
  // Breadth-first closure under right multiplication by generators; finite groups
  // need no explicit inverses.
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (Element s : generators) {
      g.check_element(s);
      const Element next = g.mul(members[head], s);
      if (!in[next]) {
        in[next] = 1;
        members.push_back(next);
      }
    }
  }
  return ElementSet(group, std::move(members));
}

std::vector<Subgroup> enumerate_subgroups(const GroupPtr& group) {
  const FiniteGroup& g = *group;
  const std::size_t cap = config().limits.max_subgroup_order;
  if (g.order() > cap) {
    throw Error(ErrorCode::SpecOutOfRange, "subgroup enumeration limited to order " +
                                               std::to_string(cap) + ", got " +
                                               std::to_string(g.order()));
  }
  std::set<std::vector<Element>> found;
  std::vector<std::vector<Element>> queue;
  auto trivial = generated_subgroup(group, {});
  found.insert(trivial.elements());
  queue.push_back(trivial.elements());
  // Every subgroup is reached by adjoining one element at a time to a smaller one.
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::vector<Element> current = queue[head];
    for (Element a = 0; a < g.order(); ++a) {
      if (std::binary_search(current.begin(), current.end(), a)) continue;
      std::vector<Element> gens = current;
      gens.push_back(a);
      auto next = generated_subgroup(group, gens);
      if (found.insert(next.elements()).second) queue.push_back(next.elements());
    }
  }
  std::vector<std::vector<Element>> sorted(found.begin(), found.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& x, const auto& y) { return x.size() < y.size(); });
  std::vector<Subgroup> out;
  for (auto& s : sorted) {
    if (g.order() % s.size() != 0) {
      throw Error(ErrorCode::TableInvalid, "subgroup violates Lagrange divisibility");
    }
    out.emplace_back(ElementSet(group, std::move(s)));
  }
  return out;
}

std::vector<GroupSpec> builtin_catalog(std::size_t max_order) {
  std::vector<GroupSpec> all;
  for (std::size_t n = 1; n <= max_order; ++n) all.push_back(GroupSpec::cyclic(n));
  for (std::size_t k = 2; (std::size_t{1} << k) <= max_order; ++k) {
    all.push_back(GroupSpec::elementary_abelian_2(k));
  }
  for (std::size_t n = 3; 2 * n <= max_order; ++n) all.push_back(GroupSpec::dihedral(n));
  if (max_order >= 8) all.push_back(GroupSpec::quaternion8());
  for (std::size_t n = 3; n <= 4; ++n) {
    if (GroupSpec::symmetric(n).expected_order() <= max_order) {
      all.push_back(GroupSpec::symmetric(n));
    }
  }
  const std::vector<GroupSpec> products = {
      GroupSpec::product({GroupSpec::cyclic(2), GroupSpec::cyclic(4)}),
      GroupSpec::product({GroupSpec::cyclic(3), GroupSpec::cyclic(3)}),
      GroupSpec::product({GroupSpec::cyclic(2), GroupSpec::symmetric(3)}),
      GroupSpec::product({GroupSpec::cyclic(4), GroupSpec::cyclic(4)}),
      GroupSpec::product({GroupSpec::cyclic(2), GroupSpec::dihedral(4)}),
      GroupSpec::product({GroupSpec::cyclic(2), GroupSpec::quaternion8()}),
      GroupSpec::product({GroupSpec::cyclic(3), GroupSpec::quaternion8()}),
  };
  for (const auto& p : products) {
    if (p.expected_order() <= max_order) all.push_back(p);
  }
  return all;
}

}  // namespace convolab
