#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "grkhs/types.hpp"

namespace grkhs {

/// Raw septuple data prior to validation. Identifier-based; mirrors the
/// on-disk groupoid section exactly.
struct GroupoidData {
  struct Arrow {
    std::string id;
    std::string source;
    std::string range;
  };
  struct ProductEntry {
    std::string left;    // gamma_1
    std::string right;   // gamma_2
    std::string result;  // gamma_1 * gamma_2
  };

  std::vector<std::string> base_points;
  std::vector<Arrow> arrows;
  std::unordered_map<std::string, std::string> units;    // base point -> arrow
  std::unordered_map<std::string, std::string> inverse;  // arrow -> arrow
  std::vector<ProductEntry> products;
};

/// Fibers, hom-sets, isotropy group and orbit of a single base point.
/// All lists keep the canonical (declaration) order.
struct FiberStructure {
  int base_point = -1;
  std::vector<int> out_fiber;               // arrows with range == x
  std::vector<int> in_fiber;                // arrows with source == x
  std::vector<std::vector<int>> hom_sets;   // indexed by target y: source x, range y
  std::vector<int> isotropy;                // arrows from x to x
  std::vector<int> orbit;                   // base points reachable from x
};

/// Checks the groupoid axioms on raw data: surjectivity of source/range,
/// the product domain rule, unit and inverse laws, and associativity over
/// every composable triple. Dangling identifiers throw StructuralError;
/// axiom failures are listed in the report with their witnesses.
ValidationReport validate_groupoid(const GroupoidData& data);

/// A finite groupoid over a finite base set. Immutable after construction;
/// all arrows and base points are addressed by their canonical index
/// (declaration order). Identifiers are opaque strings.
class FiniteGroupoid {
public:
  /// Validates and builds. Throws StructuralError for malformed data and
  /// Error when an axiom fails (message carries the first witnesses).
  static FiniteGroupoid from_data(const GroupoidData& data);

  int arrow_count() const { return static_cast<int>(arrow_names_.size()); }
  int base_count() const { return static_cast<int>(base_names_.size()); }

  int source(int arrow) const { return source_[arrow]; }
  int range(int arrow) const { return range_[arrow]; }
  int unit(int base) const { return unit_[base]; }
  int inverse(int arrow) const { return inverse_[arrow]; }

  bool composable(int gamma1, int gamma2) const {
    return range_[gamma2] == source_[gamma1];
  }
  /// gamma1 * gamma2; throws ComposabilityError when r(gamma2) != s(gamma1).
  int compose(int gamma1, int gamma2) const;
  std::optional<int> try_compose(int gamma1, int gamma2) const;

  const std::string& arrow_name(int arrow) const { return arrow_names_[arrow]; }
  const std::string& base_name(int base) const { return base_names_[base]; }
  /// Throws LookupError for unknown identifiers.
  int arrow_index(const std::string& id) const;
  int base_index(const std::string& id) const;
  bool has_arrow(const std::string& id) const;

  FiberStructure fibers(int base) const;
  FiberStructure fibers(const std::string& base_id) const;

  /// Arrow indices grouped by range fiber (canonical order within each
  /// group); concatenated they give the stable sort of arrows by r-fiber.
  const std::vector<std::vector<int>>& arrows_by_range() const {
    return arrows_by_range_;
  }

  bool is_transitive() const;

  /// True when every arrow has source == range == the single base point.
  bool is_group() const;

  GroupoidData to_data() const;

private:
  FiniteGroupoid() = default;

  std::vector<std::string> base_names_;
  std::vector<std::string> arrow_names_;
  std::unordered_map<std::string, int> base_index_;
  std::unordered_map<std::string, int> arrow_index_;
  std::vector<int> source_;
  std::vector<int> range_;
  std::vector<int> unit_;
  std::vector<int> inverse_;
  std::vector<int> product_;  // dense |arrows|^2 table, -1 = undefined
  std::vector<std::vector<int>> arrows_by_range_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

/// Multiplication table of a finite group; product(i, j) = index of g_i g_j.
struct GroupTable {
  std::vector<std::string> elements;
  std::vector<std::vector<int>> product;
};

/// Identity, inverses and associativity; failures name the group axiom.
ValidationReport validate_group_table(const GroupTable& table);

/// The cyclic group of order n with elements g0 (identity), g1, ..., g{n-1}.
GroupTable cyclic_group(int n);

/// A group as a groupoid over the singleton base {base_name}.
/// Throws Error naming the failed group axiom when the table is not a group.
FiniteGroupoid group_to_groupoid(const GroupTable& table,
                                 const std::string& base_name = "x");

/// Arrows are ordered pairs "(y,x)" with s = x, r = y, enumerated y-major,
/// so the arrows with a common range form contiguous index blocks.
FiniteGroupoid pair_groupoid(const std::vector<std::string>& points);

/// Componentwise union; identifiers are namespaced as "<i>:<id>". Base
/// points and arrows are concatenated in component order, so component
/// index layouts embed contiguously.
FiniteGroupoid disjoint_union(const std::vector<FiniteGroupoid>& components);

}  // namespace grkhs
