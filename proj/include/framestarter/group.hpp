#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace framestarter {

/// Largest group order accepted anywhere in the library.
inline constexpr std::int64_t kMaxGroupOrder = std::int64_t{1} << 31;

/**
 * An element of Z_{m_1} x ... x Z_{m_k}. Coordinates are always stored
 * reduced to [0, m_i); use GroupSpec::element() to build one from arbitrary
 * integers.
 */
struct Element {
  std::vector<std::int64_t> coords;

  Element() = default;
  explicit Element(std::vector<std::int64_t> c) : coords(std::move(c)) {}
  Element(std::initializer_list<std::int64_t> c) : coords(c) {}

  /// The single coordinate of an element of a cyclic group.
  std::int64_t value() const { return coords.at(0); }

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element& a, const Element& b) {
    return a.coords <=> b.coords;
  }
};

/**
 * A finite abelian group presented as a direct product of cyclic factors.
 *
 * Every element also has a dense mixed-radix index in [0, order()), with the
 * last factor varying fastest; for cyclic groups the index is the value.
 */
class GroupSpec {
 public:
  explicit GroupSpec(std::vector<std::int64_t> factors);

  static GroupSpec cyclic(std::int64_t order) { return GroupSpec({order}); }

  const std::vector<std::int64_t>& factors() const noexcept { return factors_; }
  std::int64_t order() const noexcept { return order_; }
  std::size_t rank() const noexcept { return factors_.size(); }
  bool is_cyclic() const noexcept { return factors_.size() == 1; }

  /// Reduces arbitrary (possibly negative) coordinates into canonical range.
  Element element(const std::vector<std::int64_t>& coords) const;
  Element element(std::int64_t value) const { return element(std::vector<std::int64_t>{value}); }
  Element zero() const { return Element(std::vector<std::int64_t>(factors_.size(), 0)); }

  /// True when `e` has the right arity and canonical coordinates.
  bool contains(const Element& e) const noexcept;

  std::int64_t index(const Element& e) const;
  Element at(std::int64_t index) const;

  std::string to_string() const;
  std::string format(const Element& e) const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.factors_ == b.factors_; }

 private:
  std::vector<std::int64_t> factors_;
  std::int64_t order_ = 1;
};

Element add(const GroupSpec& spec, const Element& a, const Element& b);
Element neg(const GroupSpec& spec, const Element& a);
Element sub(const GroupSpec& spec, const Element& a, const Element& b);

/// The unique b with b + b = a. Only defined for groups of odd order.
Element halve(const GroupSpec& spec, const Element& a);

/// Image of a under Z_g -> Z_m, x -> x mod m. Requires a cyclic group and m | g.
std::int64_t reduce_mod(const GroupSpec& spec, const Element& a, std::int64_t m);

/**
 * A subgroup together with its materialized, sorted element list.
 */
class SubgroupSpec {
 public:
  SubgroupSpec(GroupSpec group, std::vector<Element> generators, std::vector<Element> elements);

  const GroupSpec& group() const noexcept { return group_; }
  const std::vector<Element>& generators() const noexcept { return generators_; }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  std::int64_t order() const noexcept { return static_cast<std::int64_t>(elements_.size()); }
  /// Index of the subgroup, g / h.
  std::int64_t index() const noexcept { return group_.order() / order(); }

  bool contains(const Element& e) const;
  bool contains_index(std::int64_t idx) const;

  friend bool operator==(const SubgroupSpec& a, const SubgroupSpec& b) {
    return a.group_ == b.group_ && a.indices_ == b.indices_;
  }

 private:
  GroupSpec group_;
  std::vector<Element> generators_;
  std::vector<Element> elements_;
  std::vector<std::int64_t> indices_;  // sorted dense indices
};

/// {0, r, 2r, ..., (h-1)r} with r = g/h in a cyclic group.
SubgroupSpec cyclic_subgroup(const GroupSpec& spec, std::int64_t h);

/// Closure of `gens` under addition.
SubgroupSpec generated_subgroup(const GroupSpec& spec, const std::vector<Element>& gens);

}  // namespace framestarter
