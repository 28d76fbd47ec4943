#include "grkhs/groupoid.hpp"

namespace grkhs {

namespace {

// Index-resolved copy of GroupoidData. Resolution throws StructuralError;
// the axiom scan below works purely on indices.
struct ResolvedTables {
  std::vector<std::string> base_names;
  std::vector<std::string> arrow_names;
  std::unordered_map<std::string, int> base_index;
  std::unordered_map<std::string, int> arrow_index;
  std::vector<int> source;
  std::vector<int> range;
  std::vector<int> unit;
  std::vector<int> inverse;
  std::vector<int> product;  // -1 = undefined

  int n() const { return static_cast<int>(arrow_names.size()); }
  int prod(int i, int j) const { return product[i * n() + j]; }
};

ResolvedTables resolve(const GroupoidData& data) {
  ResolvedTables t;
  if (data.base_points.empty())
    throw StructuralError("groupoid: base point set is empty");
  if (data.arrows.empty())
    throw StructuralError("groupoid: arrow set is empty");

  for (const auto& b : data.base_points) {
    if (!t.base_index.emplace(b, static_cast<int>(t.base_names.size())).second)
      throw StructuralError("groupoid: duplicate base point '" + b + "'");
    t.base_names.push_back(b);
  }
  for (const auto& a : data.arrows) {
    if (!t.arrow_index.emplace(a.id, static_cast<int>(t.arrow_names.size())).second)
      throw StructuralError("groupoid: duplicate arrow '" + a.id + "'");
    t.arrow_names.push_back(a.id);
  }

  auto base_of = [&](const std::string& id, const std::string& where) {
    auto it = t.base_index.find(id);
    if (it == t.base_index.end())
      throw StructuralError("groupoid: " + where + " references unknown base point '" + id + "'");
    return it->second;
  };
  auto arrow_of = [&](const std::string& id, const std::string& where) {
    auto it = t.arrow_index.find(id);
    if (it == t.arrow_index.end())
      throw StructuralError("groupoid: " + where + " references unknown arrow '" + id + "'");
    return it->second;
  };

  for (const auto& a : data.arrows) {
    t.source.push_back(base_of(a.source, "arrow '" + a.id + "' source"));
    t.range.push_back(base_of(a.range, "arrow '" + a.id + "' range"));
  }

  t.unit.assign(t.base_names.size(), -1);
  for (const auto& [base, arrow] : data.units) {
    int b = base_of(base, "unit entry");
    t.unit[b] = arrow_of(arrow, "unit of '" + base + "'");
  }
  for (std::size_t b = 0; b < t.base_names.size(); ++b)
    if (t.unit[b] < 0)
      throw StructuralError("groupoid: base point '" + t.base_names[b] + "' has no unit arrow");

  t.inverse.assign(t.arrow_names.size(), -1);
  for (const auto& [arrow, inv] : data.inverse) {
    int a = arrow_of(arrow, "inverse entry");
    t.inverse[a] = arrow_of(inv, "inverse of '" + arrow + "'");
  }
  for (std::size_t a = 0; a < t.arrow_names.size(); ++a)
    if (t.inverse[a] < 0)
      throw StructuralError("groupoid: arrow '" + t.arrow_names[a] + "' has no inverse entry");

  const int n = t.n();
  t.product.assign(static_cast<std::size_t>(n) * n, -1);
  for (const auto& p : data.products) {
    int g1 = arrow_of(p.left, "product entry");
    int g2 = arrow_of(p.right, "product entry");
    int g12 = arrow_of(p.result, "product of ('" + p.left + "','" + p.right + "')");
    int& slot = t.product[g1 * n + g2];
    if (slot >= 0 && slot != g12)
      throw StructuralError("groupoid: conflicting product entries for ('" +
                            p.left + "','" + p.right + "')");
    slot = g12;
  }
  return t;
}

ValidationReport scan_axioms(const ResolvedTables& t) {
  ValidationReport report;
  const int n = t.n();
  auto add = [&](std::string rule, std::string witness) {
    report.violations.push_back({std::move(rule), std::move(witness), 0.0});
  };

  // Surjectivity of s and r.
  {
    std::vector<bool> s_hit(t.base_names.size(), false), r_hit(t.base_names.size(), false);
    for (int a = 0; a < n; ++a) {
      s_hit[t.source[a]] = true;
      r_hit[t.range[a]] = true;
    }
    for (std::size_t b = 0; b < t.base_names.size(); ++b) {
      if (!s_hit[b]) add("source-surjective", "base point '" + t.base_names[b] + "' is not a source");
      if (!r_hit[b]) add("range-surjective", "base point '" + t.base_names[b] + "' is not a range");
    }
  }

  // Unit arrows must be loops at their base point.
  for (std::size_t b = 0; b < t.base_names.size(); ++b) {
    int e = t.unit[b];
    if (t.source[e] != static_cast<int>(b) || t.range[e] != static_cast<int>(b))
      add("unit-endpoints", "unit of '" + t.base_names[b] + "' is '" + t.arrow_names[e] +
                                "' with s='" + t.base_names[t.source[e]] + "', r='" +
                                t.base_names[t.range[e]] + "'");
  }

  // Product defined exactly on composable pairs, with matching endpoints.
  for (int g1 = 0; g1 < n; ++g1) {
    for (int g2 = 0; g2 < n; ++g2) {
      bool comp = t.range[g2] == t.source[g1];
      int p = t.prod(g1, g2);
      if (comp && p < 0)
        add("product-domain", "composable pair ('" + t.arrow_names[g1] + "','" +
                                  t.arrow_names[g2] + "') has no product");
      if (!comp && p >= 0)
        add("product-domain", "non-composable pair ('" + t.arrow_names[g1] + "','" +
                                  t.arrow_names[g2] + "') has a product entry");
      if (comp && p >= 0) {
        if (t.source[p] != t.source[g2] || t.range[p] != t.range[g1])
          add("product-endpoints", "product ('" + t.arrow_names[g1] + "','" +
                                       t.arrow_names[g2] + "') = '" + t.arrow_names[p] +
                                       "' has wrong endpoints");
      }
    }
  }

  // Unit laws.
  for (int g = 0; g < n; ++g) {
    int left = t.prod(t.unit[t.range[g]], g);
    if (left != g)
      add("left-unit", "e(r(gamma)) * gamma != gamma for gamma='" + t.arrow_names[g] + "'");
    int right = t.prod(g, t.unit[t.source[g]]);
    if (right != g)
      add("right-unit", "gamma * e(s(gamma)) != gamma for gamma='" + t.arrow_names[g] + "'");
  }

  // Inverse laws.
  for (int g = 0; g < n; ++g) {
    int gi = t.inverse[g];
    if (t.prod(gi, g) != t.unit[t.source[g]])
      add("inverse-law", "inv(gamma) * gamma != e(s(gamma)) for gamma='" + t.arrow_names[g] + "'");
    if (t.prod(g, gi) != t.unit[t.range[g]])
      add("inverse-law", "gamma * inv(gamma) != e(r(gamma)) for gamma='" + t.arrow_names[g] + "'");
  }

  // Associativity over every composable triple.
  for (int g1 = 0; g1 < n; ++g1) {
    for (int g2 = 0; g2 < n; ++g2) {
      if (t.range[g2] != t.source[g1]) continue;
      int p12 = t.prod(g1, g2);
      for (int g3 = 0; g3 < n; ++g3) {
        if (t.range[g3] != t.source[g2]) continue;
        int p23 = t.prod(g2, g3);
        int lhs = (p12 >= 0 && t.range[g3] == t.source[p12]) ? t.prod(p12, g3) : -1;
        int rhs = (p23 >= 0 && t.range[p23] == t.source[g1]) ? t.prod(g1, p23) : -1;
        if (lhs < 0 || rhs < 0 || lhs != rhs)
          add("associativity", "triple ('" + t.arrow_names[g1] + "','" + t.arrow_names[g2] +
                                   "','" + t.arrow_names[g3] + "')");
      }
    }
  }

  return report;
}

}  // namespace

ValidationReport validate_groupoid(const GroupoidData& data) {
  return scan_axioms(resolve(data));
}

FiniteGroupoid FiniteGroupoid::from_data(const GroupoidData& data) {
  ResolvedTables t = resolve(data);
  ValidationReport report = scan_axioms(t);
  if (!report.passed())
    throw Error("groupoid axioms violated: " + report.summary());

  FiniteGroupoid g;
  g.base_names_ = std::move(t.base_names);
  g.arrow_names_ = std::move(t.arrow_names);
  g.base_index_ = std::move(t.base_index);
  g.arrow_index_ = std::move(t.arrow_index);
  g.source_ = std::move(t.source);
  g.range_ = std::move(t.range);
  g.unit_ = std::move(t.unit);
  g.inverse_ = std::move(t.inverse);
  g.product_ = std::move(t.product);

  g.arrows_by_range_.assign(g.base_names_.size(), {});
  for (int a = 0; a < g.arrow_count(); ++a)
    g.arrows_by_range_[g.range_[a]].push_back(a);
  return g;
}

int FiniteGroupoid::compose(int gamma1, int gamma2) const {
  if (!composable(gamma1, gamma2))
    throw ComposabilityError("arrows do not compose: r('" + arrow_names_[gamma2] + "') = '" +
                             base_names_[range_[gamma2]] + "' but s('" + arrow_names_[gamma1] +
                             "') = '" + base_names_[source_[gamma1]] + "'");
  return product_[gamma1 * arrow_count() + gamma2];
}

std::optional<int> FiniteGroupoid::try_compose(int gamma1, int gamma2) const {
  if (!composable(gamma1, gamma2)) return std::nullopt;
  return product_[gamma1 * arrow_count() + gamma2];
}

int FiniteGroupoid::arrow_index(const std::string& id) const {
  auto it = arrow_index_.find(id);
  if (it == arrow_index_.end()) throw LookupError("unknown arrow '" + id + "'");
  return it->second;
}

int FiniteGroupoid::base_index(const std::string& id) const {
  auto it = base_index_.find(id);
  if (it == base_index_.end()) throw LookupError("unknown base point '" + id + "'");
  return it->second;
}

bool FiniteGroupoid::has_arrow(const std::string& id) const {
  return arrow_index_.count(id) > 0;
}

FiberStructure FiniteGroupoid::fibers(int base) const {
  if (base < 0 || base >= base_count())
    throw LookupError("base point index " + std::to_string(base) + " out of range");
  FiberStructure f;
  f.base_point = base;
  f.hom_sets.assign(base_count(), {});
  std::vector<bool> in_orbit(base_count(), false);
  for (int a = 0; a < arrow_count(); ++a) {
    if (range_[a] == base) f.out_fiber.push_back(a);
    if (source_[a] == base) {
      f.in_fiber.push_back(a);
      f.hom_sets[range_[a]].push_back(a);
      if (range_[a] == base) f.isotropy.push_back(a);
      in_orbit[range_[a]] = true;
    }
  }
  for (int b = 0; b < base_count(); ++b)
    if (in_orbit[b]) f.orbit.push_back(b);
  return f;
}

FiberStructure FiniteGroupoid::fibers(const std::string& base_id) const {
  return fibers(base_index(base_id));
}

bool FiniteGroupoid::is_transitive() const {
  return static_cast<int>(fibers(0).orbit.size()) == base_count();
}

bool FiniteGroupoid::is_group() const {
  if (base_count() != 1) return false;
  return true;  // all arrows are loops at the unique base point
}

GroupoidData FiniteGroupoid::to_data() const {
  GroupoidData d;
  d.base_points = base_names_;
  for (int a = 0; a < arrow_count(); ++a)
    d.arrows.push_back({arrow_names_[a], base_names_[source_[a]], base_names_[range_[a]]});
  for (int b = 0; b < base_count(); ++b)
    d.units.emplace(base_names_[b], arrow_names_[unit_[b]]);
  for (int a = 0; a < arrow_count(); ++a)
    d.inverse.emplace(arrow_names_[a], arrow_names_[inverse_[a]]);
  for (int g1 = 0; g1 < arrow_count(); ++g1)
    for (int g2 = 0; g2 < arrow_count(); ++g2)
      if (int p = product_[g1 * arrow_count() + g2]; p >= 0)
        d.products.push_back({arrow_names_[g1], arrow_names_[g2], arrow_names_[p]});
  return d;
}

ValidationReport validate_group_table(const GroupTable& table) {
  ValidationReport report;
  const int n = static_cast<int>(table.elements.size());
  auto add = [&](std::string rule, std::string witness) {
    report.violations.push_back({std::move(rule), std::move(witness), 0.0});
  };

  if (n == 0) {
    add("nonempty", "element set is empty");
    return report;
  }
  if (static_cast<int>(table.product.size()) != n) {
    add("table-shape", "product table has wrong row count");
    return report;
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table.product[i].size()) != n) {
      add("table-shape", "row " + std::to_string(i) + " has wrong length");
      return report;
    }
    for (int j = 0; j < n; ++j)
      if (table.product[i][j] < 0 || table.product[i][j] >= n) {
        add("table-shape", "entry (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
        return report;
      }
  }

  int identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g)
      ok = table.product[e][g] == g && table.product[g][e] == g;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) {
    add("identity", "no two-sided identity element");
  } else {
    for (int g = 0; g < n; ++g) {
      bool has_inverse = false;
      for (int h = 0; h < n && !has_inverse; ++h)
        has_inverse = table.product[g][h] == identity && table.product[h][g] == identity;
      if (!has_inverse) add("inverses", "element '" + table.elements[g] + "' has no inverse");
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table.product[table.product[a][b]][c] != table.product[a][table.product[b][c]])
          add("associativity", "triple ('" + table.elements[a] + "','" + table.elements[b] +
                                   "','" + table.elements[c] + "')");
  return report;
}

GroupTable cyclic_group(int n) {
  if (n <= 0) throw ArgumentError("cyclic_group: order must be positive");
  GroupTable t;
  for (int i = 0; i < n; ++i) t.elements.push_back("g" + std::to_string(i));
  t.product.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.product[i][j] = (i + j) % n;
  return t;
}

FiniteGroupoid group_to_groupoid(const GroupTable& table, const std::string& base_name) {
  ValidationReport report = validate_group_table(table);
  if (!report.passed())
    throw Error("multiplication table is not a group: " + report.summary());

  const int n = static_cast<int>(table.elements.size());
  int identity = 0;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g)
      ok = table.product[e][g] == g && table.product[g][e] == g;
    if (ok) {
      identity = e;
      break;
    }
  }

  GroupoidData d;
  d.base_points = {base_name};
  for (const auto& e : table.elements) d.arrows.push_back({e, base_name, base_name});
  d.units.emplace(base_name, table.elements[identity]);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      if (table.product[g][h] == identity && table.product[h][g] == identity)
        d.inverse[table.elements[g]] = table.elements[h];
      d.products.push_back({table.elements[g], table.elements[h],
                            table.elements[table.product[g][h]]});
    }
  return FiniteGroupoid::from_data(d);
}

FiniteGroupoid pair_groupoid(const std::vector<std::string>& points) {
  if (points.empty()) throw ArgumentError("pair_groupoid: point set is empty");
  auto arrow_id = [](const std::string& y, const std::string& x) {
    return "(" + y + "," + x + ")";
  };

  GroupoidData d;
  d.base_points = points;
  for (const auto& y : points)
    for (const auto& x : points) d.arrows.push_back({arrow_id(y, x), x, y});
  for (const auto& x : points) d.units.emplace(x, arrow_id(x, x));
  for (const auto& y : points)
    for (const auto& x : points) d.inverse.emplace(arrow_id(y, x), arrow_id(x, y));
  // (z,y)(y,x) = (z,x)
  for (const auto& z : points)
    for (const auto& y : points)
      for (const auto& x : points)
        d.products.push_back({arrow_id(z, y), arrow_id(y, x), arrow_id(z, x)});
  return FiniteGroupoid::from_data(d);
}

FiniteGroupoid disjoint_union(const std::vector<FiniteGroupoid>& components) {
  if (components.empty()) throw ArgumentError("disjoint_union: no components");

  GroupoidData d;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const std::string prefix = std::to_string(i) + ":";
    GroupoidData part = components[i].to_data();
    for (const auto& b : part.base_points) d.base_points.push_back(prefix + b);
    for (const auto& a : part.arrows)
      d.arrows.push_back({prefix + a.id, prefix + a.source, prefix + a.range});
    for (const auto& [b, e] : part.units) d.units.emplace(prefix + b, prefix + e);
    for (const auto& [a, inv] : part.inverse) d.inverse.emplace(prefix + a, prefix + inv);
    for (const auto& p : part.products)
      d.products.push_back({prefix + p.left, prefix + p.right, prefix + p.result});
  }
  return FiniteGroupoid::from_data(d);
}

}  // namespace grkhs
